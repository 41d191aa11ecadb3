#include "apfree/order.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <filesystem>
#include <numeric>
#include <ostream>
#include <sstream>

namespace apfree {

namespace {

// Hard stop for carrier enumeration: after this many consecutive
// rejected candidates the carrier is declared too sparse to enumerate.
constexpr std::uint64_t kMaxConsecutiveRejects = 50'000'000;

}  // namespace

std::ostream& operator<<(std::ostream& os, const OrderPoint& p) {
  return os << p.value();
}

bool Interval::contains(const Rational& x) const {
  if (lower) {
    const auto c = x <=> lower->value;
    if (c == std::strong_ordering::less) return false;
    if (c == std::strong_ordering::equal && lower->open) return false;
  }
  if (upper) {
    const auto c = x <=> upper->value;
    if (c == std::strong_ordering::greater) return false;
    if (c == std::strong_ordering::equal && upper->open) return false;
  }
  return true;
}

bool Interval::is_degenerate() const {
  return lower && upper && !lower->open && !upper->open &&
         lower->value == upper->value;
}

bool Carrier::contains(const Rational& x) const {
  if (base == CarrierBase::Integers && !x.is_integer()) return false;
  if (pieces.empty()) return true;
  return std::any_of(pieces.begin(), pieces.end(),
                     [&](const Interval& i) { return i.contains(x); });
}

CountableOrder::CountableOrder(std::string name, Carrier carrier,
                               bool reversed, OrderProperties properties)
    : name_(std::move(name)),
      carrier_(std::move(carrier)),
      reversed_(reversed),
      properties_(properties) {
  if (!carrier_.pieces.empty() &&
      std::all_of(carrier_.pieces.begin(), carrier_.pieces.end(),
                  [](const Interval& i) { return i.is_degenerate(); })) {
    throw PreconditionError("order \"" + name_ +
                            "\": carrier is a finite set of points; a "
                            "countably infinite carrier is required");
  }
}

OrderPoint CountableOrder::point_at(std::uint64_t index) const {
  std::scoped_lock lock(mu_);
  std::uint64_t rejected = 0;
  while (memo_.size() <= index) {
    Rational candidate = carrier_.base == CarrierBase::Integers
                             ? integer_stream_.next()
                             : rational_stream_.next();
    if (carrier_.contains(candidate)) {
      memo_.push_back(std::move(candidate));
      rejected = 0;
    } else if (++rejected >= kMaxConsecutiveRejects) {
      throw BudgetExceededError(
          "enumerating carrier of order \"" + name_ + "\"", rejected);
    }
  }
  return OrderPoint(memo_[index]);
}

std::strong_ordering CountableOrder::compare(const OrderPoint& a,
                                             const OrderPoint& b) const {
  const auto c = a.value() <=> b.value();
  if (!reversed_) return c;
  if (c == std::strong_ordering::less) return std::strong_ordering::greater;
  if (c == std::strong_ordering::greater) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

bool CountableOrder::less(const OrderPoint& a, const OrderPoint& b) const {
  return compare(a, b) == std::strong_ordering::less;
}

namespace {

Interval closed_interval(Rational lo, Rational hi) {
  Interval i;
  i.lower = IntervalEnd{std::move(lo), false};
  i.upper = IntervalEnd{std::move(hi), false};
  return i;
}

OrderPtr make_builtin(BuiltinOrder which) {
  switch (which) {
    case BuiltinOrder::QStandard:
      return std::make_shared<CountableOrder>(
          "q-standard", Carrier{}, false, OrderProperties{false, false, false});
    case BuiltinOrder::QUnitClosed:
      return std::make_shared<CountableOrder>(
          "q-unit-closed",
          Carrier{CarrierBase::Rationals, {closed_interval(0, 1)}}, false,
          OrderProperties{false, true, true});
    case BuiltinOrder::QUnitHalfOpen: {
      Interval i = closed_interval(0, 1);
      i.upper->open = true;
      return std::make_shared<CountableOrder>(
          "q-unit-half-open", Carrier{CarrierBase::Rationals, {i}}, false,
          OrderProperties{false, false, true});
    }
    case BuiltinOrder::ZStandard:
      return std::make_shared<CountableOrder>(
          "z-standard", Carrier{CarrierBase::Integers, {}}, false,
          OrderProperties{true, false, false});
    case BuiltinOrder::QPlusIsolated:
      return std::make_shared<CountableOrder>(
          "q-plus-isolated",
          Carrier{CarrierBase::Rationals,
                  {closed_interval(0, 1), closed_interval(2, 2)}},
          false, OrderProperties{true, true, true});
  }
  throw PreconditionError("unknown built-in order");
}

const std::vector<std::pair<std::string, BuiltinOrder>>& builtin_catalog() {
  static const std::vector<std::pair<std::string, BuiltinOrder>> catalog = {
      {"q-standard", BuiltinOrder::QStandard},
      {"q-unit-closed", BuiltinOrder::QUnitClosed},
      {"q-unit-half-open", BuiltinOrder::QUnitHalfOpen},
      {"z-standard", BuiltinOrder::ZStandard},
      {"q-plus-isolated", BuiltinOrder::QPlusIsolated},
  };
  return catalog;
}

}  // namespace

OrderPtr builtin_order(BuiltinOrder which) { return make_builtin(which); }

OrderPtr builtin_order(std::string_view name) {
  for (const auto& [catalog_name, which] : builtin_catalog()) {
    if (catalog_name == name) return make_builtin(which);
  }
  throw PreconditionError("unknown order \"" + std::string(name) +
                          "\"; known orders: q-standard, q-unit-closed, "
                          "q-unit-half-open, z-standard, q-plus-isolated");
}

const std::vector<std::string>& builtin_order_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, which] : builtin_catalog()) out.push_back(name);
    return out;
  }();
  return names;
}

OrderPtr reversed_view(const OrderPtr& order) {
  OrderProperties props = order->properties();
  std::swap(props.has_maximum, props.has_minimum);
  return std::make_shared<CountableOrder>(order->name() + ":reversed",
                                          order->carrier(), !order->reversed(),
                                          props);
}

namespace {

Rational parse_json_rational(const nlohmann::json& j, const char* field) {
  if (!j.is_string()) {
    throw ParseError(std::string("order description: field \"") + field +
                     "\" must be a rational encoded as a string");
  }
  return Rational::parse(j.get<std::string>());
}

}  // namespace

OrderPtr load_order_description(std::istream& in, std::string_view origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("order description " + std::string(origin) + ": " +
                     e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("order description " + std::string(origin) +
                     ": top level must be an object");
  }

  std::string name = doc.value("name", std::string(origin));
  Carrier carrier;
  const std::string base = doc.value("base", std::string("Q"));
  if (base == "Q") {
    carrier.base = CarrierBase::Rationals;
  } else if (base == "Z") {
    carrier.base = CarrierBase::Integers;
  } else {
    throw ParseError("order description " + std::string(origin) +
                     ": base must be \"Q\" or \"Z\"");
  }
  if (doc.contains("intervals")) {
    if (!doc["intervals"].is_array()) {
      throw ParseError("order description " + std::string(origin) +
                       ": intervals must be an array");
    }
    for (const auto& item : doc["intervals"]) {
      Interval interval;
      if (item.contains("lower")) {
        interval.lower = IntervalEnd{parse_json_rational(item["lower"], "lower"),
                                     item.value("lower_open", false)};
      }
      if (item.contains("upper")) {
        interval.upper = IntervalEnd{parse_json_rational(item["upper"], "upper"),
                                     item.value("upper_open", false)};
      }
      carrier.pieces.push_back(std::move(interval));
    }
  }
  OrderProperties props;
  if (doc.contains("properties")) {
    const auto& p = doc["properties"];
    props.has_isolated_points = p.value("isolated_points", false);
    props.has_maximum = p.value("maximum", false);
    props.has_minimum = p.value("minimum", false);
  }
  const bool reversed = doc.value("reversed", false);
  return std::make_shared<CountableOrder>(std::move(name), std::move(carrier),
                                          reversed, props);
}

OrderPtr load_order_description_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open order description file \"" + path + "\"");
  }
  return load_order_description(in, path);
}

OrderPtr resolve_order(const std::string& name_or_path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) {
    return load_order_description_file(name_or_path);
  }
  return builtin_order(name_or_path);
}

namespace {

bool excluded(const OrderPoint& p, std::span<const OrderPoint> exclude) {
  return std::find(exclude.begin(), exclude.end(), p) != exclude.end();
}

template <class Pred>
std::optional<FoundPoint> scan(const CountableOrder& order,
                               std::span<const OrderPoint> exclude,
                               const SearchBudget& budget, Pred&& pred) {
  for (std::uint64_t i = 0; i < budget.max_enumeration_steps; ++i) {
    OrderPoint p = order.point_at(i);
    if (pred(p) && !excluded(p, exclude)) {
      return FoundPoint{std::move(p), i};
    }
  }
  return std::nullopt;
}

std::string point_text(const OrderPoint& p) { return p.value().str(); }

}  // namespace

std::optional<FoundPoint> try_find_strictly_between(
    const CountableOrder& order, const OrderPoint& lower,
    const OrderPoint& upper, std::span<const OrderPoint> exclude,
    const SearchBudget& budget) {
  return scan(order, exclude, budget, [&](const OrderPoint& p) {
    return order.less(lower, p) && order.less(p, upper);
  });
}

std::optional<FoundPoint> try_find_strictly_above(
    const CountableOrder& order, const OrderPoint& lower,
    std::span<const OrderPoint> exclude, const SearchBudget& budget) {
  return scan(order, exclude, budget,
              [&](const OrderPoint& p) { return order.less(lower, p); });
}

std::optional<FoundPoint> try_find_strictly_below(
    const CountableOrder& order, const OrderPoint& upper,
    std::span<const OrderPoint> exclude, const SearchBudget& budget) {
  return scan(order, exclude, budget,
              [&](const OrderPoint& p) { return order.less(p, upper); });
}

OrderPoint find_strictly_between(const CountableOrder& order,
                                 const OrderPoint& lower,
                                 const OrderPoint& upper,
                                 std::span<const OrderPoint> exclude,
                                 const SearchBudget& budget) {
  if (auto found = try_find_strictly_between(order, lower, upper, exclude,
                                             budget)) {
    return found->point;
  }
  throw BudgetExceededError("searching " + order.name() + " for a point in (" +
                                point_text(lower) + ", " + point_text(upper) +
                                ") with " + std::to_string(exclude.size()) +
                                " exclusions",
                            budget.max_enumeration_steps);
}

OrderPoint find_strictly_above(const CountableOrder& order,
                               const OrderPoint& lower,
                               std::span<const OrderPoint> exclude,
                               const SearchBudget& budget) {
  if (auto found = try_find_strictly_above(order, lower, exclude, budget)) {
    return found->point;
  }
  throw BudgetExceededError("searching " + order.name() +
                                " for a point above " + point_text(lower) +
                                " with " + std::to_string(exclude.size()) +
                                " exclusions",
                            budget.max_enumeration_steps);
}

OrderPoint find_strictly_below(const CountableOrder& order,
                               const OrderPoint& upper,
                               std::span<const OrderPoint> exclude,
                               const SearchBudget& budget) {
  if (auto found = try_find_strictly_below(order, upper, exclude, budget)) {
    return found->point;
  }
  throw BudgetExceededError("searching " + order.name() +
                                " for a point below " + point_text(upper) +
                                " with " + std::to_string(exclude.size()) +
                                " exclusions",
                            budget.max_enumeration_steps);
}

std::optional<IsolationWitness> search_isolated_point(
    const CountableOrder& order, std::uint64_t depth,
    const SearchBudget& probe_budget) {
  if (depth < 2) return std::nullopt;

  std::vector<OrderPoint> sample;
  sample.reserve(depth);
  for (std::uint64_t i = 0; i < depth; ++i) {
    sample.push_back(order.point_at(i));
  }
  std::vector<std::size_t> sorted(sample.size());
  std::iota(sorted.begin(), sorted.end(), std::size_t{0});
  std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
    return order.less(sample[a], sample[b]);
  });
  std::vector<std::size_t> rank(sample.size());
  for (std::size_t r = 0; r < sorted.size(); ++r) rank[sorted[r]] = r;

  for (std::size_t i = 0; i < sample.size(); ++i) {
    const OrderPoint& p = sample[i];
    const OrderPoint exclude[1] = {p};
    const std::size_t r = rank[i];
    if (r == 0) {
      const OrderPoint& x0 = sample[sorted[1]];
      if (!try_find_strictly_below(order, x0, exclude, probe_budget)) {
        return IsolationWitness{p, IsolationCase::OnlyBelow, x0, std::nullopt};
      }
    }
    if (r + 1 == sample.size()) {
      const OrderPoint& x0 = sample[sorted[r - 1]];
      if (!try_find_strictly_above(order, x0, exclude, probe_budget)) {
        return IsolationWitness{p, IsolationCase::OnlyAbove, x0, std::nullopt};
      }
    }
    if (r > 0 && r + 1 < sample.size()) {
      const OrderPoint& x0 = sample[sorted[r - 1]];
      const OrderPoint& x1 = sample[sorted[r + 1]];
      if (!try_find_strictly_between(order, x0, x1, exclude, probe_budget)) {
        return IsolationWitness{p, IsolationCase::Between, x0, x1};
      }
    }
  }
  return std::nullopt;
}

const char* isolation_case_name(IsolationCase c) {
  switch (c) {
    case IsolationCase::OnlyBelow:
      return "only-below";
    case IsolationCase::OnlyAbove:
      return "only-above";
    case IsolationCase::Between:
      return "between";
  }
  return "unknown";
}

}  // namespace apfree
