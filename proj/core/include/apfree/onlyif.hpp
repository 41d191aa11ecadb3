#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apfree/constructor.hpp"
#include "apfree/order.hpp"
#include "apfree/rational.hpp"
#include "apfree/verifier.hpp"

namespace apfree {

// One failed instance of the even/odd multiple comparison: with
// base = [f(a) below f(a+d)], the pair compared f(a+s*d) against
// f(a+t*d) for even s and odd t and disagreed with base.
struct OddMultipleViolation {
  Rational a;
  Rational d;
  std::uint64_t s;
  std::uint64_t t;
};

struct OddMultipleReport {
  std::uint64_t comparisons = 0;
  std::vector<OddMultipleViolation> violations;
};

// Sweeps every maximal run a, a+d, a+2d, ... inside the domain, for
// each positive difference d of domain values, and compares all pairs
// (even s, odd t) up to max_multiple against the run's base direction.
// Maps without equal carry orders pass with zero violations; the count
// of comparisons shows how much was actually exercised. Quadratic in
// the domain size before run walking even starts.
OddMultipleReport check_odd_multiple_lemmas(const FiniteOrderedMap& m,
                                            std::uint64_t max_multiple);

// A finite arrangement given by domain values listed in image order;
// for extension searches the values must be exactly 0..N-1.
struct PartialArrangement {
  std::vector<std::uint64_t> by_position;
};

// Comma-separated nonnegative integers, e.g. "2,3,0,1".
PartialArrangement parse_pattern(std::string_view text);

// The arrangement as a map into the standard rational order, with
// image p for the value at position p.
FiniteOrderedMap pattern_map(const PartialArrangement& a);

enum class ExtensionOutcome {
  Extended,            // target size reached; witness holds one way
  Blocked,             // every insertion sequence dies before the target
  NodeBudgetExceeded,  // undecided within the node budget
};

const char* extension_outcome_name(ExtensionOutcome o);

struct ExtensionResult {
  ExtensionOutcome outcome;
  std::optional<PartialArrangement> witness;
  std::size_t deepest_size = 0;
  std::uint64_t nodes_visited = 0;
};

// Depth-first search over arrangements that avoid monotone
// progressions, growing the base by inserting value N (the current
// size) into each gap left to right. Because values arrive in
// increasing order, the freshly inserted one is the extreme value and a
// linear scan per insertion rules out every new progression. The base
// must itself avoid monotone progressions.
ExtensionResult extension_search(const PartialArrangement& base,
                                 std::size_t target_size,
                                 std::uint64_t node_budget = 10'000'000);

// Outcome of running the construction against an order expected to
// defeat it, together with the isolation evidence explaining why.
struct NegativeRunReport {
  bool budget_exceeded = false;
  std::optional<std::uint32_t> failed_step;
  std::string blocking_context;
  std::uint32_t completed_depth = 0;
  std::optional<IsolationWitness> isolated_witness;
  bool witness_covered = false;  // witness point already had a preimage
};

// Runs construct_prefix, converts a budget failure into a report
// instead of an exception, and then looks for an isolated point near
// the front of the enumeration. On orders without isolated points the
// run normally completes and the witness search comes back empty.
NegativeRunReport negative_isolated_run(SourceSet source, OrderPtr order,
                                        std::uint32_t depth,
                                        ConstructionOptions opts = {},
                                        std::uint64_t probe_depth = 32);

}  // namespace apfree
