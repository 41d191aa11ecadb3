#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include "apfree/errors.hpp"

namespace apfree {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational arithmetic over arbitrary-precision integers.
//
// Values are always kept reduced with a positive denominator; the
// numerator carries the sign. Equality and hashing therefore work on
// the representation directly.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(BigInt numerator)  // NOLINT: implicit by design, integers embed
      : num_(std::move(numerator)), den_(1) {}
  Rational(int numerator) : num_(numerator), den_(1) {}
  Rational(long numerator) : num_(numerator), den_(1) {}
  Rational(long long numerator) : num_(numerator), den_(1) {}

  Rational(BigInt numerator, BigInt denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) {
      throw PreconditionError("rational denominator must be nonzero");
    }
    reduce();
  }

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return num_.sign(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  Rational operator-() const {
    Rational r(*this);
    r.num_ = -r.num_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const BigInt lhs = a.num_ * b.den_;
    const BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Renders as "p/q", or just "p" for integers.
  std::string str() const;

  // Accepts the same forms str produces, with optional surrounding
  // whitespace and an optional leading sign on the numerator.
  static Rational parse(std::string_view text);

 private:
  void reduce();

  BigInt num_;
  BigInt den_;  // invariant: positive
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

struct RationalHash {
  std::size_t operator()(const Rational& r) const noexcept {
    std::size_t seed = hash_value(r.numerator());
    boost::hash_combine(seed, hash_value(r.denominator()));
    return seed;
  }
};

// Additive 2-adic valuation: a finite integer for nonzero inputs,
// infinite for zero. Infinity compares above every finite value.
class TwoAdicOrder {
 public:
  static TwoAdicOrder infinite() { return TwoAdicOrder(true, 0); }
  static TwoAdicOrder of(std::int64_t v) { return TwoAdicOrder(false, v); }

  bool is_infinite() const noexcept { return infinite_; }
  std::int64_t value() const {
    if (infinite_) {
      throw PreconditionError("infinite 2-adic valuation has no finite value");
    }
    return value_;
  }

  friend bool operator==(TwoAdicOrder a, TwoAdicOrder b) noexcept = default;
  friend std::strong_ordering operator<=>(TwoAdicOrder a,
                                          TwoAdicOrder b) noexcept {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }
  friend TwoAdicOrder operator+(TwoAdicOrder a, TwoAdicOrder b) noexcept {
    if (a.infinite_ || b.infinite_) return infinite();
    return of(a.value_ + b.value_);
  }

  std::string str() const {
    return infinite_ ? "inf" : std::to_string(value_);
  }

 private:
  TwoAdicOrder(bool inf, std::int64_t v) : infinite_(inf), value_(v) {}
  bool infinite_;
  std::int64_t value_;
};

std::ostream& operator<<(std::ostream& os, TwoAdicOrder v);

// ord2(p/q) for a reduced fraction is the number of trailing zero bits
// of p minus the number of trailing zero bits of q; ord2(0) is infinite.
TwoAdicOrder ord2(const Rational& q);

// Fast path for values known to be nonzero.
std::int64_t ord2_nonzero(const Rational& q);

// Membership in the subring of rationals with odd denominator, i.e.
// nonnegative 2-adic valuation.
bool has_odd_denominator(const Rational& q);

// (a + b) / 2, exact.
Rational midpoint(const Rational& a, const Rational& b);

// 2^e for any integer e, negative exponents included.
Rational pow2(std::int64_t e);

}  // namespace apfree
