#include "apfree/enumeration.hpp"

#include <numeric>

namespace apfree {

Rational RationalStream::next() {
  if (!started_) {
    started_ = true;
    sum_ = 2;
    num_ = -1;
    return Rational(0);
  }
  for (;;) {
    if (num_ >= sum_) {
      ++sum_;
      num_ = -(sum_ - 1);
    }
    const std::int64_t n = num_++;
    if (n == 0) continue;
    const std::int64_t den = sum_ - (n < 0 ? -n : n);
    if (std::gcd(n < 0 ? -n : n, den) == 1) {
      return Rational(BigInt(n), BigInt(den));
    }
  }
}

Rational IntegerStream::next() {
  if (mag_ == 0) {
    mag_ = 1;
    at_negative_ = true;
    return Rational(0);
  }
  if (at_negative_) {
    at_negative_ = false;
    return Rational(BigInt(-mag_));
  }
  at_negative_ = true;
  return Rational(BigInt(mag_++));
}

Rational OddDenominatorStream::next() {
  for (;;) {
    Rational r = base_.next();
    if (has_odd_denominator(r)) return r;
  }
}

Rational canonical_rational(std::uint64_t index) {
  RationalStream s;
  Rational r = s.next();
  for (std::uint64_t i = 0; i < index; ++i) {
    r = s.next();
  }
  return r;
}

}  // namespace apfree
