#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "apfree/rational.hpp"

namespace apfree {

using IndexSubset = std::vector<std::size_t>;

// Greedily built sequence with ord2(terms[n]) == n. terms[n] is the
// canonical residue of the first enumerated value whose reduction
// against terms[0..n-1] bottoms out at carry order exactly n;
// source_indices[n] records which enumeration index produced it.
struct QSequence {
  std::vector<Rational> terms;
  std::vector<std::uint64_t> source_indices;
};

struct QSequenceOptions {
  // Enumeration indices tried per term before giving up.
  std::uint64_t candidate_cap = 100'000;
};

// h must enumerate odd-denominator rationals; h(l) for l = 0, 1, ... is
// rescanned from the start for every term. Throws BudgetExceededError
// when no qualifying value appears within the candidate cap.
QSequence build_q_sequence(const std::function<Rational(std::uint64_t)>& h,
                           std::size_t count, QSequenceOptions opts = {});

// Same, over the canonical odd-denominator enumeration.
QSequence build_canonical_q_sequence(std::size_t count,
                                     QSequenceOptions opts = {});

// Outcome of digit-by-digit reduction of x against a prefix with
// ord2(prefix[i]) == i: subtract prefix[i] exactly when the running
// residue has carry order i. The final residue always has carry order
// >= prefix.size(), and indices lists the subtracted positions.
struct DigitReduction {
  IndexSubset indices;
  Rational residue;
};

// Requires ord2(x) >= 0 and a profile-valid prefix.
DigitReduction reduce_digits(const Rational& x,
                             std::span<const Rational> prefix);

// Subset of prefix indices summing to x exactly, when one exists.
// Such a subset is unique because the least index in it is forced by
// ord2 of the remaining sum.
std::optional<IndexSubset> binary_representation(
    const Rational& x, std::span<const Rational> prefix);

struct SubsetSum {
  Rational value;
  IndexSubset indices;
};

// All 2^n subset sums, sorted by value. Rejects term lists whose sums
// collide, and refuses more than 24 terms outright.
std::vector<SubsetSum> subset_sums(std::span<const Rational> terms);

// Interleaves a q-sequence with negative powers of two:
// terms[2m] = q[m], terms[2m+1] = 1 / 2^(m+1).
struct RSequence {
  std::vector<Rational> terms;
};

RSequence build_r_sequence(const QSequence& qs, std::size_t count);

// Writes x as a sum of distinct r-sequence terms: first clears the
// dyadic tail through the odd slots, then reduces the odd-denominator
// remainder through the even slots. nullopt means the prefix is too
// short to finish either phase.
std::optional<IndexSubset> decompose(const Rational& x, const RSequence& rs);

struct PairCounterexample {
  Rational u;
  Rational w;
};

// Compares the carry orders within a finite set S against ord2(r) and
// checks what that forces on S union (S + r):
//   - no pairwise order equals ord2(r)  => the union is disjoint;
//   - all pairwise orders below ord2(r) => union orders stay <= ord2(r),
//     hitting it exactly when the difference is +-r;
//   - all pairwise orders above         => union orders stay >= ord2(r),
//     hitting it exactly when one endpoint came from the shifted copy.
// Conclusions are brute-forced over the union; vacuous cases hold.
struct ShiftLemmaReport {
  TwoAdicOrder shift_order = TwoAdicOrder::infinite();
  bool hyp_all_different = false;
  bool hyp_all_below = false;
  bool hyp_all_above = false;
  bool disjoint_holds = true;
  bool below_conclusion_holds = true;
  bool above_conclusion_holds = true;
  std::vector<PairCounterexample> counterexamples;
};

ShiftLemmaReport check_shift_lemma(std::span<const Rational> s,
                                   const Rational& r);

}  // namespace apfree
