#include "apfree/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <ostream>

namespace apfree {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ParseError("not a rational: \"" + std::string(whole) + "\"");
  }
  BigInt value{std::string(s)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

void Rational::reduce() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string Rational::str() const {
  std::string out = num_.str();
  if (den_ != 1) {
    out += '/';
    out += den_.str();
  }
  return out;
}

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  std::string_view s = trim(text);
  if (s.empty()) {
    throw ParseError("empty rational literal");
  }
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(s, whole));
  }
  std::string_view num = s.substr(0, slash);
  std::string_view den = s.substr(slash + 1);
  if (den.find('/') != std::string_view::npos) {
    throw ParseError("not a rational: \"" + std::string(whole) + "\"");
  }
  if (!all_digits(den)) {
    throw ParseError("rational denominator must be an unsigned integer: \"" +
                     std::string(whole) + "\"");
  }
  return Rational(parse_integer(num, whole), BigInt(std::string(den)));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

std::ostream& operator<<(std::ostream& os, TwoAdicOrder v) {
  return os << v.str();
}

TwoAdicOrder ord2(const Rational& q) {
  if (q.is_zero()) return TwoAdicOrder::infinite();
  return TwoAdicOrder::of(ord2_nonzero(q));
}

std::int64_t ord2_nonzero(const Rational& q) {
  // The fraction is reduced, so at most one of numerator and
  // denominator is even.
  const BigInt& n = q.numerator();
  const BigInt& d = q.denominator();
  if (n.is_zero()) {
    throw PreconditionError("ord2_nonzero applied to zero");
  }
  const std::int64_t num_tz =
      static_cast<std::int64_t>(boost::multiprecision::lsb(abs(n)));
  if (num_tz != 0) return num_tz;
  return -static_cast<std::int64_t>(boost::multiprecision::lsb(d));
}

bool has_odd_denominator(const Rational& q) {
  return bit_test(q.denominator(), 0);
}

Rational midpoint(const Rational& a, const Rational& b) {
  const Rational sum = a + b;
  return Rational(sum.numerator(), sum.denominator() * 2);
}

Rational pow2(std::int64_t e) {
  BigInt p(1);
  if (e >= 0) {
    p <<= static_cast<unsigned>(e);
    return Rational(p);
  }
  p <<= static_cast<unsigned>(-e);
  return Rational(1, p);
}

}  // namespace apfree
