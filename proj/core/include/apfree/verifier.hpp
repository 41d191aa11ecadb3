#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "apfree/order.hpp"
#include "apfree/rational.hpp"

namespace apfree {

struct MapEntry {
  Rational domain;
  OrderPoint image;
};

// An injective finite map from rationals into a countable order,
// stored sorted ascending by image. Immutable snapshot; duplicate
// domain values, duplicate images, and images outside the order's
// carrier are rejected at construction.
class FiniteOrderedMap {
 public:
  FiniteOrderedMap(OrderPtr order, std::vector<MapEntry> entries);

  const std::vector<MapEntry>& entries() const noexcept { return entries_; }
  const OrderPtr& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return entries_.size(); }

  // Position in image order, when the value is in the domain.
  std::optional<std::size_t> domain_position(const Rational& value) const;
  bool domain_contains(const Rational& value) const;
  bool image_contains(const OrderPoint& p) const;

 private:
  OrderPtr order_;
  std::vector<MapEntry> entries_;
  std::unordered_map<Rational, std::size_t, RationalHash> position_;
  std::unordered_set<Rational, RationalHash> image_values_;
};

// Domain values of a witness triple, listed in ascending image order.
struct DomainTriple {
  Rational a;
  Rational b;
  Rational c;
  friend bool operator==(const DomainTriple&, const DomainTriple&) = default;
};

std::ostream& operator<<(std::ostream& os, const DomainTriple& t);

// First triple (by image positions i < j < k, lexicographically) whose
// domain values form an arithmetic progression: b - a = c - b.
// Scans position pairs (i, j) and hashes the forced third value, so the
// search is quadratic in the map size.
std::optional<DomainTriple> find_monotone_3ap(const FiniteOrderedMap& m);

// First triple (same ordering) with ord2(b - a) = ord2(c - b). The
// existence scan is quadratic (and optionally splits across threads
// without changing the result); the witness is then re-derived
// sequentially so output is deterministic.
std::optional<DomainTriple> find_binary_violation(const FiniteOrderedMap& m,
                                                  unsigned threads = 1);

// When the domain holds the exact midpoint of the domain values mapped
// to the least and greatest images, that midpoint completes a monotone
// progression no matter where it lands. Returns that triple.
std::optional<DomainTriple> check_maxmin_obstruction(const FiniteOrderedMap& m);

bool is_chaotic(const FiniteOrderedMap& m);
bool is_binary(const FiniteOrderedMap& m);

}  // namespace apfree
