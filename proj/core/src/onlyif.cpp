#include "apfree/onlyif.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "apfree/errors.hpp"

namespace apfree {

OddMultipleReport check_odd_multiple_lemmas(const FiniteOrderedMap& m,
                                            std::uint64_t max_multiple) {
  std::vector<Rational> domain;
  domain.reserve(m.size());
  for (const MapEntry& e : m.entries()) domain.push_back(e.domain);
  std::sort(domain.begin(), domain.end());

  std::unordered_set<Rational, RationalHash> diff_set;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = i + 1; j < domain.size(); ++j) {
      diff_set.insert(domain[j] - domain[i]);
    }
  }
  std::vector<Rational> diffs(diff_set.begin(), diff_set.end());
  std::sort(diffs.begin(), diffs.end());

  OddMultipleReport report;
  std::vector<std::size_t> run;
  for (const Rational& d : diffs) {
    for (const Rational& a : domain) {
      if (m.domain_contains(a - d)) continue;  // not a maximal run start
      run.clear();
      for (Rational v = a; m.domain_contains(v); v += d) {
        run.push_back(*m.domain_position(v));
      }
      if (run.size() < 2) continue;
      const bool base = run[0] < run[1];
      const std::uint64_t limit =
          std::min<std::uint64_t>(max_multiple, run.size() - 1);
      for (std::uint64_t s = 0; s <= limit; s += 2) {
        for (std::uint64_t t = 1; t <= limit; t += 2) {
          ++report.comparisons;
          if ((run[s] < run[t]) != base) {
            report.violations.push_back({a, d, s, t});
          }
        }
      }
    }
  }
  return report;
}

PartialArrangement parse_pattern(std::string_view text) {
  PartialArrangement out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    std::uint64_t value = 0;
    auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(),
                                   value);
    if (ec != std::errc() || p != piece.data() + piece.size()) {
      throw ParseError("bad pattern entry '" + std::string(piece) + "'");
    }
    out.by_position.push_back(value);
    if (end == text.size()) break;
    start = end + 1;
  }
  if (out.by_position.empty()) throw ParseError("pattern is empty");
  return out;
}

FiniteOrderedMap pattern_map(const PartialArrangement& a) {
  std::vector<MapEntry> entries;
  entries.reserve(a.by_position.size());
  for (std::size_t p = 0; p < a.by_position.size(); ++p) {
    entries.push_back({Rational(BigInt(a.by_position[p])),
                       OrderPoint(Rational(BigInt(p)))});
  }
  return FiniteOrderedMap(builtin_order(BuiltinOrder::QStandard),
                          std::move(entries));
}

const char* extension_outcome_name(ExtensionOutcome o) {
  switch (o) {
    case ExtensionOutcome::Extended: return "extended";
    case ExtensionOutcome::Blocked: return "blocked";
    case ExtensionOutcome::NodeBudgetExceeded: return "node-budget-exceeded";
  }
  return "?";
}

namespace {

struct ExtensionDfs {
  std::vector<std::uint64_t> arr;  // domain values by image position
  std::vector<std::size_t> pos;    // image position by domain value
  std::size_t target;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::size_t deepest = 0;
  bool exceeded = false;
  std::optional<std::vector<std::uint64_t>> found;

  // arr holds size+1 values and v == size was just inserted; any new
  // monotone progression must use v as an endpoint in image order,
  // which pins the remaining value once a middle is chosen.
  bool conflicts(std::uint64_t v) const {
    const std::size_t pv = pos[v];
    for (std::uint64_t y = 0; y < v; ++y) {
      const std::int64_t z =
          2 * static_cast<std::int64_t>(y) - static_cast<std::int64_t>(v);
      if (z < 0 || static_cast<std::uint64_t>(z) >= v) continue;
      const std::size_t py = pos[y];
      const std::size_t pz = pos[static_cast<std::uint64_t>(z)];
      if (pv < py && py < pz) return true;  // v, y, z ascending by image
      if (pz < py && py < pv) return true;  // z, y, v ascending by image
    }
    return false;
  }

  bool dfs(std::size_t size) {
    deepest = std::max(deepest, size);
    if (size >= target) {
      found = arr;
      return true;
    }
    for (std::size_t g = 0; g <= size; ++g) {
      if (++nodes > budget) {
        exceeded = true;
        return false;
      }
      arr.insert(arr.begin() + static_cast<std::ptrdiff_t>(g), size);
      for (std::size_t p = g; p <= size; ++p) pos[arr[p]] = p;
      const bool ok = !conflicts(size) && dfs(size + 1);
      if (ok) return true;
      arr.erase(arr.begin() + static_cast<std::ptrdiff_t>(g));
      for (std::size_t p = g; p < size; ++p) pos[arr[p]] = p;
      if (exceeded) return false;
    }
    return false;
  }
};

}  // namespace

ExtensionResult extension_search(const PartialArrangement& base,
                                 std::size_t target_size,
                                 std::uint64_t node_budget) {
  const std::size_t n = base.by_position.size();
  {
    std::vector<std::uint64_t> check = base.by_position;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (check[i] != i) {
        throw PreconditionError(
            "extension base must hold the values 0.." + std::to_string(n - 1) +
            " exactly once");
      }
    }
  }
  for (std::size_t p1 = 0; p1 < n; ++p1) {
    for (std::size_t p2 = p1 + 1; p2 < n; ++p2) {
      for (std::size_t p3 = p2 + 1; p3 < n; ++p3) {
        const auto a = static_cast<std::int64_t>(base.by_position[p1]);
        const auto b = static_cast<std::int64_t>(base.by_position[p2]);
        const auto c = static_cast<std::int64_t>(base.by_position[p3]);
        if (b - a == c - b) {
          throw PreconditionError(
              "extension base already contains a monotone progression");
        }
      }
    }
  }

  ExtensionDfs dfs;
  dfs.arr = base.by_position;
  dfs.pos.resize(std::max(target_size, n));
  for (std::size_t p = 0; p < n; ++p) dfs.pos[dfs.arr[p]] = p;
  dfs.target = target_size;
  dfs.budget = node_budget;
  dfs.deepest = n;

  ExtensionResult result;
  if (target_size <= n) {
    result.outcome = ExtensionOutcome::Extended;
    result.witness = base;
    result.deepest_size = n;
    return result;
  }
  dfs.dfs(n);
  result.deepest_size = dfs.deepest;
  result.nodes_visited = dfs.nodes;
  if (dfs.found) {
    result.outcome = ExtensionOutcome::Extended;
    result.witness = PartialArrangement{std::move(*dfs.found)};
  } else if (dfs.exceeded) {
    result.outcome = ExtensionOutcome::NodeBudgetExceeded;
  } else {
    result.outcome = ExtensionOutcome::Blocked;
  }
  return result;
}

NegativeRunReport negative_isolated_run(SourceSet source, OrderPtr order,
                                        std::uint32_t depth,
                                        ConstructionOptions opts,
                                        std::uint64_t probe_depth) {
  NegativeRunReport report;
  ConstructionState st = begin_construction(source, std::move(order), opts);
  try {
    while (st.depth() < depth) st.advance();
  } catch (const BudgetExceededError& e) {
    report.budget_exceeded = true;
    report.failed_step = e.construction_step;
    report.blocking_context = e.context();
  }
  report.completed_depth = st.depth();
  report.isolated_witness =
      search_isolated_point(*st.working(), probe_depth, opts.search_budget);
  if (report.isolated_witness) {
    const Rational& w = report.isolated_witness->point.value();
    for (const MapEntry& e : st.entries()) {
      if (e.image.value() == w) {
        report.witness_covered = true;
        break;
      }
    }
  }
  return report;
}

}  // namespace apfree
