#pragma once

#include <cstdint>
#include <vector>

#include "apfree/rational.hpp"

namespace apfree {

// Streams every reduced rational exactly once: 0 first, then blocks of
// increasing |numerator| + denominator, each block listed by ascending
// numerator. The first values are
//   0, -1, 1, -2, -1/2, 1/2, 2, -3, -1/3, 1/3, 3, -4, -3/2, ...
class RationalStream {
 public:
  Rational next();

 private:
  std::int64_t sum_ = 1;   // current |numerator| + denominator block
  std::int64_t num_ = 0;   // next numerator candidate within the block
  bool started_ = false;
};

// Streams the integers as 0, -1, 1, -2, 2, -3, 3, ...  This matches the
// canonical rational stream restricted to integers, but advances in
// constant time per item.
class IntegerStream {
 public:
  Rational next();

 private:
  std::int64_t mag_ = 0;
  bool at_negative_ = true;
};

// Canonical-stream restriction to odd denominators: the rationals with
// nonnegative 2-adic valuation, starting 0, -1, 1, -2, 2, -3, -1/3, ...
class OddDenominatorStream {
 public:
  Rational next();

 private:
  RationalStream base_;
};

// Random access into the canonical rational sequence. Stateless, costs
// O(index) per call; meant for tests and spot checks.
Rational canonical_rational(std::uint64_t index);

// Grow-on-demand random access over any stream with a next() method.
template <class Stream>
class CachedStream {
 public:
  const Rational& at(std::size_t index) {
    while (values_.size() <= index) {
      values_.push_back(stream_.next());
    }
    return values_[index];
  }

  std::size_t cached() const noexcept { return values_.size(); }

 private:
  Stream stream_;
  std::vector<Rational> values_;
};

}  // namespace apfree
