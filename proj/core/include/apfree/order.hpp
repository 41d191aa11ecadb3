#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apfree/enumeration.hpp"
#include "apfree/errors.hpp"
#include "apfree/rational.hpp"

namespace apfree {

// Handle for an element of a countable order. Built-in and
// description-file orders all live on subsets of the rationals, so the
// handle carries the underlying value. Two handles are the same element
// exactly when the values are equal; relative position is a question
// for the order, not for the handle.
class OrderPoint {
 public:
  explicit OrderPoint(Rational value) : value_(std::move(value)) {}
  const Rational& value() const noexcept { return value_; }
  friend bool operator==(const OrderPoint&, const OrderPoint&) = default;

 private:
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const OrderPoint& p);

struct OrderPointHash {
  std::size_t operator()(const OrderPoint& p) const noexcept {
    return RationalHash{}(p.value());
  }
};

// Self-declared structural facts about an order. Searches never prove
// these; they gate which constructions are even attempted and label
// what negative evidence means.
struct OrderProperties {
  bool has_isolated_points = false;
  bool has_maximum = false;
  bool has_minimum = false;
};

enum class CarrierBase { Rationals, Integers };

struct IntervalEnd {
  Rational value;
  bool open = false;
};

// One interval piece of a carrier; either end may be absent (unbounded).
struct Interval {
  std::optional<IntervalEnd> lower;
  std::optional<IntervalEnd> upper;
  bool contains(const Rational& x) const;
  bool is_degenerate() const;  // a single point
};

// The underlying set: a base (all rationals, or just the integers)
// intersected with a finite union of intervals. No pieces means the
// whole base set.
struct Carrier {
  CarrierBase base = CarrierBase::Rationals;
  std::vector<Interval> pieces;
  bool contains(const Rational& x) const;
};

// A countably infinite totally ordered set with a documented
// enumeration. Immutable after construction; enumeration results are
// memoized internally and all reads are thread safe.
//
// The enumeration is the canonical rational stream (or the integer
// stream for integer-based carriers) filtered to the carrier.
// Comparison is the rational order, flipped when reversed() is set.
class CountableOrder {
 public:
  CountableOrder(std::string name, Carrier carrier, bool reversed,
                 OrderProperties properties);

  const std::string& name() const noexcept { return name_; }
  const Carrier& carrier() const noexcept { return carrier_; }
  bool reversed() const noexcept { return reversed_; }
  const OrderProperties& properties() const noexcept { return properties_; }

  // The enumeration g: index -> carrier element.
  OrderPoint point_at(std::uint64_t index) const;

  std::strong_ordering compare(const OrderPoint& a, const OrderPoint& b) const;
  bool less(const OrderPoint& a, const OrderPoint& b) const;
  bool contains(const OrderPoint& p) const { return carrier_.contains(p.value()); }

 private:
  std::string name_;
  Carrier carrier_;
  bool reversed_;
  OrderProperties properties_;

  mutable std::mutex mu_;
  mutable std::vector<Rational> memo_;
  mutable RationalStream rational_stream_;
  mutable IntegerStream integer_stream_;
};

using OrderPtr = std::shared_ptr<const CountableOrder>;

enum class BuiltinOrder {
  QStandard,      // all rationals, usual order
  QUnitClosed,    // rationals in [0, 1]
  QUnitHalfOpen,  // rationals in [0, 1)
  ZStandard,      // the integers
  QPlusIsolated,  // rationals in [0, 1] plus the single point 2
};

OrderPtr builtin_order(BuiltinOrder which);
OrderPtr builtin_order(std::string_view name);  // by catalog name
const std::vector<std::string>& builtin_order_names();

// Same carrier and enumeration, opposite comparisons; maximum and
// minimum declarations swap.
OrderPtr reversed_view(const OrderPtr& order);

// Order descriptions are JSON objects:
//   {"name": "...", "base": "Q"|"Z", "reversed": bool,
//    "intervals": [{"lower": "p/q", "lower_open": bool,
//                   "upper": "p/q", "upper_open": bool}, ...],
//    "properties": {"isolated_points": b, "maximum": b, "minimum": b}}
// Absent interval ends mean unbounded; absent fields default as above.
OrderPtr load_order_description(std::istream& in, std::string_view origin);
OrderPtr load_order_description_file(const std::string& path);

// Resolves a CLI-facing order argument: a catalog name, or a path to a
// description file when the argument names an existing file.
OrderPtr resolve_order(const std::string& name_or_path);

struct SearchBudget {
  std::uint64_t max_enumeration_steps = 1'000'000;
};

struct FoundPoint {
  OrderPoint point;
  std::uint64_t enumeration_index;
};

// Each search walks the enumeration from index 0 and returns the first
// point satisfying the constraints, so results are deterministic and
// minimal in enumeration order. The try_ forms return nullopt when the
// budget runs out; the plain forms throw BudgetExceededError.
std::optional<FoundPoint> try_find_strictly_between(
    const CountableOrder& order, const OrderPoint& lower,
    const OrderPoint& upper, std::span<const OrderPoint> exclude,
    const SearchBudget& budget = {});
std::optional<FoundPoint> try_find_strictly_above(
    const CountableOrder& order, const OrderPoint& lower,
    std::span<const OrderPoint> exclude, const SearchBudget& budget = {});
std::optional<FoundPoint> try_find_strictly_below(
    const CountableOrder& order, const OrderPoint& upper,
    std::span<const OrderPoint> exclude, const SearchBudget& budget = {});

OrderPoint find_strictly_between(const CountableOrder& order,
                                 const OrderPoint& lower,
                                 const OrderPoint& upper,
                                 std::span<const OrderPoint> exclude = {},
                                 const SearchBudget& budget = {});
OrderPoint find_strictly_above(const CountableOrder& order,
                               const OrderPoint& lower,
                               std::span<const OrderPoint> exclude = {},
                               const SearchBudget& budget = {});
OrderPoint find_strictly_below(const CountableOrder& order,
                               const OrderPoint& upper,
                               std::span<const OrderPoint> exclude = {},
                               const SearchBudget& budget = {});

enum class IsolationCase {
  OnlyBelow,  // p is the one element below some x0
  OnlyAbove,  // p is the one element above some x0
  Between,    // p is the one element strictly between x0 and x1
};

struct IsolationWitness {
  OrderPoint point;
  IsolationCase kind;
  std::optional<OrderPoint> x0;
  std::optional<OrderPoint> x1;
};

// Evidence search, not proof: take the first `depth` enumerated points,
// and for each in enumeration order test whether its sample
// neighborhood looks isolated, refuting candidates with bounded
// searches. A returned witness survived a probe that exhausted its
// budget; denser enumeration could still refute it.
std::optional<IsolationWitness> search_isolated_point(
    const CountableOrder& order, std::uint64_t depth,
    const SearchBudget& probe_budget = {});

const char* isolation_case_name(IsolationCase c);

}  // namespace apfree
