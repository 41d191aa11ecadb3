// Acceptance harness: one criterion per function, one [PASS]/[FAIL]
// line each, process exit code = number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "apfree/constructor.hpp"
#include "apfree/dyadic_basis.hpp"
#include "apfree/enumeration.hpp"
#include "apfree/errors.hpp"
#include "apfree/onlyif.hpp"
#include "apfree/order.hpp"
#include "apfree/rational.hpp"
#include "apfree/verifier.hpp"

using namespace apfree;

namespace {

struct CriterionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw CriterionFailure(what);
}

template <class T>
std::string str_of(const T& value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

// ---- 1: the two concrete example maps ------------------------------

void example_maps() {
  const FiniteOrderedMap doubling = pattern_map(parse_pattern("0,4,2,6,1,5,3,7"));
  check(is_binary(doubling), "doubling example has equal carry orders");
  check(is_chaotic(doubling), "doubling example has a monotone progression");

  const FiniteOrderedMap pattern = pattern_map(parse_pattern("2,3,0,1"));
  check(is_chaotic(pattern), "four-point pattern has a monotone progression");
  const auto violation = find_binary_violation(pattern);
  check(violation.has_value(), "four-point pattern shows no violation");
  check(*violation == DomainTriple{Rational(2), Rational(3), Rational(0)},
        "unexpected violation triple " + str_of(*violation));
  std::cout << "       pattern 2,3,0,1 carry-order violation: "
            << *violation << "\n";
}

// ---- 2: step invariants of the construction ------------------------

void construction_invariants() {
  ConstructionOptions opts;
  opts.verify_each_step = false;  // the checks below do it visibly
  for (const SourceSet source :
       {SourceSet::Naturals, SourceSet::Integers, SourceSet::Rationals}) {
    auto st = begin_construction(source, builtin_order(BuiltinOrder::QStandard),
                                 opts);
    std::vector<MapEntry> previous = st.entries();
    for (std::uint32_t n = 1; n <= 10; ++n) {
      st.advance();
      const FiniteOrderedMap m(st.working(), st.entries());
      const std::string tag = std::string(source_name(source)) + " depth " +
                              std::to_string(n);
      check(m.size() == (std::size_t{1} << n), tag + ": wrong size");
      check(!find_binary_violation(m).has_value(),
            tag + ": equal carry orders");

      // The previous prefix embeds unchanged.
      for (const MapEntry& e : previous) {
        const auto pos = m.domain_position(e.domain);
        check(pos.has_value() && m.entries()[*pos].image == e.image,
              tag + ": earlier assignment moved at " + e.domain.str());
      }
      previous = st.entries();

      // Coverage: each interleave step consumes one enumeration index,
      // so depth k covers g(0..k) directly (half that rate when the
      // steps alternate).
      const std::uint64_t covered =
          source == SourceSet::Rationals ? (n + 1) / 2 : n + 1;
      for (std::uint64_t i = 0; i < covered; ++i) {
        check(m.image_contains(st.working()->point_at(i)),
              tag + ": enumeration index " + std::to_string(i) +
                  " not covered");
      }
    }
  }
}

// ---- 3: closed forms of the constructed domains ---------------------

void domain_closed_forms() {
  ConstructionOptions opts;
  opts.verify_each_step = false;
  for (const SourceSet source : {SourceSet::Naturals, SourceSet::Integers}) {
    auto st = begin_construction(source, builtin_order(BuiltinOrder::QStandard),
                                 opts);
    for (std::uint32_t n = 0; n <= 10; ++n) {
      long long lo, hi;
      if (source == SourceSet::Naturals) {
        lo = 0;
        hi = (1LL << n) - 1;
      } else if (n % 2 == 0) {
        lo = -2 * ((1LL << n) - 1) / 3;
        hi = ((1LL << n) - 1) / 3;
      } else {
        lo = -2 * ((1LL << (n - 1)) - 1) / 3;
        hi = ((1LL << (n + 1)) - 1) / 3;
      }
      std::vector<Rational> expected;
      for (long long v = lo; v <= hi; ++v) expected.emplace_back(v);
      std::vector<Rational> got;
      for (const MapEntry& e : st.entries()) got.push_back(e.domain);
      std::sort(got.begin(), got.end());
      check(got == expected, std::string(source_name(source)) + " depth " +
                                 std::to_string(n) + ": domain is not [" +
                                 std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]");
      if (n < 10) st.advance();
    }
  }

  // The rationals domain is the set of subset sums of the shifts, and
  // the seed image is the first enumerated point.
  const auto st = construct_prefix(SourceSet::Rationals,
                                   builtin_order(BuiltinOrder::QStandard), 8,
                                   opts);
  std::vector<Rational> expected;
  for (const SubsetSum& s : subset_sums(st.shifts())) expected.push_back(s.value);
  std::vector<Rational> got;
  for (const MapEntry& e : st.entries()) got.push_back(e.domain);
  std::sort(got.begin(), got.end());
  check(got == expected, "Q domain differs from the shift subset sums");
  const auto zero = st.final_map().domain_position(Rational(0));
  check(zero.has_value() &&
            st.final_map().entries()[*zero].image ==
                st.working()->point_at(0),
        "seed no longer maps to the first enumerated point");
}

// ---- 4: representation oracle equivalence ---------------------------

void basis_oracle_equivalence() {
  std::mt19937 rng(679041);
  std::uniform_int_distribution<int> odd_part(-12, 12);
  std::uniform_int_distribution<int> odd_den(0, 8);
  std::uniform_int_distribution<std::size_t> length(1, 10);

  for (int instance = 0; instance < 100; ++instance) {
    const std::size_t m = length(rng);
    std::vector<Rational> prefix;
    for (std::size_t i = 0; i < m; ++i) {
      const int a = 2 * odd_part(rng) + 1;
      const int b = 2 * odd_den(rng) + 1;
      prefix.push_back(pow2(static_cast<std::int64_t>(i)) * Rational(a, b));
    }

    Rational target;
    if (instance % 2 == 0) {
      std::uniform_int_distribution<std::uint32_t> mask(
          0, (std::uint32_t{1} << m) - 1);
      const std::uint32_t bits = mask(rng);
      for (std::size_t i = 0; i < m; ++i) {
        if (bits & (1u << i)) target += prefix[i];
      }
    } else {
      target = Rational(2 * odd_part(rng) + 1, 2 * odd_den(rng) + 1);
    }

    // Exhaustive reference: distinct carry orders force at most one
    // matching subset.
    std::optional<IndexSubset> brute;
    std::size_t matches = 0;
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits) {
      Rational sum;
      IndexSubset subset;
      for (std::size_t i = 0; i < m; ++i) {
        if (bits & (1u << i)) {
          sum += prefix[i];
          subset.push_back(i);
        }
      }
      if (sum == target) {
        ++matches;
        brute = subset;
      }
    }
    check(matches <= 1, "subset representation is not unique");

    const auto rep = binary_representation(target, prefix);
    check(rep.has_value() == (matches == 1),
          "representation existence disagrees with exhaustive search");
    if (rep) {
      check(*rep == *brute, "representation subset disagrees");
    }
  }

  // Exact round trips over the generated shift sequence.
  const RSequence rs = build_r_sequence(build_canonical_q_sequence(64), 128);
  std::mt19937 rng2(144000);
  std::uniform_int_distribution<int> num(-10'000, 10'000);
  std::uniform_int_distribution<int> odd_half(0, 12);
  std::uniform_int_distribution<int> dyadic(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational x(num(rng2), (2 * odd_half(rng2) + 1) << dyadic(rng2));
    const auto picked = decompose(x, rs);
    check(picked.has_value(), "decompose failed for " + x.str());
    Rational sum;
    for (std::size_t i : *picked) sum += rs.terms[i];
    check(sum == x, "decompose round trip drifted for " + x.str());
  }
}

// ---- 5: shift comparison properties over the domains ----------------

void shift_comparison_lemma() {
  const RSequence rs = build_r_sequence(build_canonical_q_sequence(5), 9);

  auto natural_shift = [](std::uint32_t i) { return Rational(BigInt(1) << i); };
  auto integer_shift = [](std::uint32_t i) {
    const BigInt t = BigInt(1) << i;
    return Rational(i % 2 == 0 ? t : BigInt(-t));
  };
  auto rational_shift = [&rs](std::uint32_t i) { return rs.terms[i]; };

  struct Sequence {
    const char* label;
    std::function<Rational(std::uint32_t)> shift;
  };
  const Sequence sequences[] = {
      {"N", natural_shift}, {"Z", integer_shift}, {"Q", rational_shift}};

  for (const Sequence& seq : sequences) {
    for (std::uint32_t n = 0; n <= 8; ++n) {
      std::vector<Rational> used;
      for (std::uint32_t i = 0; i < n; ++i) used.push_back(seq.shift(i));
      std::vector<Rational> domain;
      for (const SubsetSum& s : subset_sums(used)) domain.push_back(s.value);
      const Rational r = seq.shift(n);

      const ShiftLemmaReport rep = check_shift_lemma(domain, r);
      const std::string tag =
          std::string(seq.label) + " step " + std::to_string(n);
      check(rep.hyp_all_different, tag + ": some pair matches the shift order");
      check(rep.disjoint_holds, tag + ": shifted copy is not disjoint");
      if (std::string(seq.label) == "Q" && n % 2 != 0) {
        check(rep.hyp_all_above, tag + ": expected all orders above");
        check(rep.above_conclusion_holds, tag + ": union order floor broken");
      } else {
        check(rep.hyp_all_below, tag + ": expected all orders below");
        check(rep.below_conclusion_holds, tag + ": union order cap broken");
      }
      check(rep.counterexamples.empty(), tag + ": counterexamples recorded");
    }
  }
}

// ---- 6: negative direction outcomes ---------------------------------

void negative_direction() {
  ConstructionOptions opts;
  opts.search_budget.max_enumeration_steps = 20'000;

  for (const SourceSet source : {SourceSet::Naturals, SourceSet::Integers}) {
    bool exceeded = false;
    try {
      construct_prefix(source, builtin_order(BuiltinOrder::ZStandard), 6, opts);
    } catch (const BudgetExceededError& e) {
      exceeded = true;
      check(e.construction_step.has_value() && *e.construction_step <= 6,
            "budget failure after depth 6");
    }
    check(exceeded, std::string(source_name(source)) +
                        " into the integers did not exhaust the budget");
  }

  bool rejected = false;
  try {
    begin_construction(SourceSet::Rationals,
                       builtin_order(BuiltinOrder::QUnitClosed));
  } catch (const PreconditionError&) {
    rejected = true;
  }
  check(rejected, "two-ended order was accepted for a rationals source");

  // Isolation evidence for the failures above.
  const auto z_report = negative_isolated_run(
      SourceSet::Naturals, builtin_order(BuiltinOrder::ZStandard), 6, opts);
  check(z_report.budget_exceeded, "integers run unexpectedly completed");
  check(z_report.isolated_witness.has_value() &&
            z_report.isolated_witness->point.value() == Rational(0) &&
            z_report.isolated_witness->kind == IsolationCase::Between,
        "no isolation witness between neighbors in the integers");

  ConstructionOptions plus_opts = opts;
  plus_opts.search_budget.max_enumeration_steps = 50'000;
  const auto plus_report = negative_isolated_run(
      SourceSet::Naturals, builtin_order(BuiltinOrder::QPlusIsolated), 8,
      plus_opts);
  check(plus_report.budget_exceeded, "isolated-point run completed");
  check(plus_report.isolated_witness.has_value() &&
            plus_report.isolated_witness->point.value() == Rational(2) &&
            plus_report.isolated_witness->kind == IsolationCase::OnlyAbove &&
            plus_report.witness_covered,
        "wrong witness for the isolated point");

  // Control runs succeed on the dense order.
  for (const SourceSet source :
       {SourceSet::Naturals, SourceSet::Integers, SourceSet::Rationals}) {
    const auto st =
        construct_prefix(source, builtin_order(BuiltinOrder::QStandard), 6);
    check(is_binary(st.final_map()),
          std::string(source_name(source)) + " control run not binary");
  }
}

// ---- 7: the four-point pattern blocks at a finite depth --------------

bool chaotic_perm(const std::vector<std::uint64_t>& arr) {
  for (std::size_t i = 0; i < arr.size(); ++i) {
    for (std::size_t j = i + 1; j < arr.size(); ++j) {
      for (std::size_t k = j + 1; k < arr.size(); ++k) {
        if (2 * arr[j] == arr[i] + arr[k]) return false;
      }
    }
  }
  return true;
}

void pattern_blocking_depth() {
  const PartialArrangement base = parse_pattern("2,3,0,1");
  const ExtensionResult res = extension_search(base, 64);
  check(res.outcome == ExtensionOutcome::Blocked,
        std::string("expected blocked, got ") +
            extension_outcome_name(res.outcome));
  check(res.deepest_size == 6,
        "regression: blocking depth moved to " +
            std::to_string(res.deepest_size));
  check(res.nodes_visited == 32, "regression: node count moved to " +
                                     std::to_string(res.nodes_visited));

  // Exhaustive cross-check at size 7: no progression-free arrangement
  // of 0..6 restricts to the pattern. (Restrictions stay
  // progression-free, so reachability equals existence.)
  std::vector<std::uint64_t> perm(7);
  std::iota(perm.begin(), perm.end(), std::uint64_t{0});
  std::size_t completions = 0;
  do {
    std::vector<std::uint64_t> small;
    for (std::uint64_t v : perm) {
      if (v < 4) small.push_back(v);
    }
    if (small == base.by_position && chaotic_perm(perm)) ++completions;
  } while (std::next_permutation(perm.begin(), perm.end()));
  check(completions == 0, "exhaustive search found " +
                              std::to_string(completions) + " completions");

  // One size below the block, extensions exist and verify.
  const ExtensionResult six = extension_search(base, 6);
  check(six.outcome == ExtensionOutcome::Extended, "size 6 did not extend");
  check(six.witness.has_value() && six.witness->by_position.size() == 6 &&
            is_chaotic(pattern_map(*six.witness)),
        "size-6 witness fails verification");
}

// ---- 8: odd-multiple comparisons on constructed prefixes -------------

void odd_multiple_consequences() {
  for (const SourceSet source :
       {SourceSet::Naturals, SourceSet::Integers, SourceSet::Rationals}) {
    const auto st =
        construct_prefix(source, builtin_order(BuiltinOrder::QStandard), 8);
    const OddMultipleReport report =
        check_odd_multiple_lemmas(st.final_map(), 1u << 8);
    const std::string tag(source_name(source));
    check(report.comparisons > 0, tag + ": nothing compared");
    check(report.violations.empty(),
          tag + ": " + std::to_string(report.violations.size()) +
              " violations, first at a=" +
              (report.violations.empty() ? std::string("-")
                                         : report.violations[0].a.str()));
  }

  // Control: the checker does fire on maps with equal carry orders.
  const auto pattern =
      check_odd_multiple_lemmas(pattern_map(parse_pattern("2,3,0,1")), 3);
  check(pattern.violations.size() == 1 &&
            pattern.violations[0].a == Rational(0) &&
            pattern.violations[0].d == Rational(1) &&
            pattern.violations[0].s == 0 && pattern.violations[0].t == 3,
        "pattern control violation moved");
  const auto identity =
      check_odd_multiple_lemmas(pattern_map(parse_pattern("0,1,2")), 3);
  check(!identity.violations.empty(), "identity control shows no violation");
}

struct Criterion {
  int number;
  const char* name;
  void (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "example-maps", example_maps},
      {2, "construction-invariants", construction_invariants},
      {3, "domain-closed-forms", domain_closed_forms},
      {4, "basis-oracle-equivalence", basis_oracle_equivalence},
      {5, "shift-comparison-lemma", shift_comparison_lemma},
      {6, "negative-direction", negative_direction},
      {7, "pattern-blocking-depth", pattern_blocking_depth},
      {8, "odd-multiple-consequences", odd_multiple_consequences},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    if (error.empty()) {
      line << "[PASS] " << c.number << " " << c.name << " (" << seconds
           << "s)";
    } else {
      ++failures;
      line << "[FAIL] " << c.number << " " << c.name << " (" << seconds
           << "s): " << error;
    }
    std::cout << line.str() << std::endl;
  }
  return failures;
}
