#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "apfree/dyadic_basis.hpp"
#include "apfree/enumeration.hpp"
#include "apfree/errors.hpp"

using namespace apfree;

namespace {

Rational sum_of(const IndexSubset& indices, std::span<const Rational> terms) {
  Rational total(0);
  for (std::size_t i : indices) total += terms[i];
  return total;
}

const std::vector<Rational>& canonical_q6() {
  static const std::vector<Rational> q = {Rational(-1),    Rational(2),
                                          Rational(-4),    Rational(8, 3),
                                          Rational(16, 3), Rational(-32, 3)};
  return q;
}

}  // namespace

TEST_CASE("digit reduction preconditions") {
  CHECK_THROWS_AS(reduce_digits(Rational(1, 2), canonical_q6()),
                  PreconditionError);
  CHECK_THROWS_AS(reduce_digits(Rational(7, 12), canonical_q6()),
                  PreconditionError);
  const std::vector<Rational> bad_profile = {Rational(2)};
  CHECK_THROWS_AS(reduce_digits(Rational(1), bad_profile), PreconditionError);
  const std::vector<Rational> gap = {Rational(1), Rational(4)};
  CHECK_THROWS_AS(reduce_digits(Rational(1), gap), PreconditionError);
}

TEST_CASE("digit reduction leaves a high-order residue") {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> num(-5000, 5000);
  std::uniform_int_distribution<int> odd(0, 12);
  for (int trial = 0; trial < 300; ++trial) {
    const Rational x(num(rng), 2 * odd(rng) + 1);
    const DigitReduction red = reduce_digits(x, canonical_q6());
    CHECK(x - sum_of(red.indices, canonical_q6()) == red.residue);
    CHECK(ord2(red.residue) >= TwoAdicOrder::of(6));
    CHECK(std::is_sorted(red.indices.begin(), red.indices.end()));
  }
}

TEST_CASE("binary representation recovers subsets") {
  const std::vector<Rational> prefix = {Rational(1), Rational(2, 3),
                                        Rational(4), Rational(8, 5)};
  const auto rep = binary_representation(Rational(5, 3), prefix);
  REQUIRE(rep.has_value());
  CHECK(*rep == IndexSubset{0, 1});
  CHECK(!binary_representation(Rational(7), prefix).has_value());

  // Exhaustive agreement with the subset-sum oracle on the canonical
  // prefix: every subset sum decodes to exactly its subset.
  for (const SubsetSum& s : subset_sums(canonical_q6())) {
    const auto decoded = binary_representation(s.value, canonical_q6());
    REQUIRE(decoded.has_value());
    CHECK(*decoded == s.indices);
    // Off-lattice values are rejected: no subset sum has a denominator
    // divisible by 5.
    CHECK(!binary_representation(s.value + Rational(1, 5), canonical_q6())
               .has_value());
  }
}

TEST_CASE("subset sums reject collisions and oversized inputs") {
  const std::vector<Rational> colliding = {Rational(1), Rational(2),
                                           Rational(3)};
  CHECK_THROWS_AS(subset_sums(colliding), PreconditionError);
  const std::vector<Rational> huge(25, Rational(1));
  CHECK_THROWS_AS(subset_sums(huge), PreconditionError);
  CHECK(subset_sums(std::vector<Rational>{}).size() == 1);
}

TEST_CASE("canonical q-sequence") {
  const QSequence qs = build_canonical_q_sequence(6);
  CHECK(qs.terms == canonical_q6());
  CHECK(qs.source_indices ==
        std::vector<std::uint64_t>{1, 2, 3, 6, 7, 10});
  for (std::size_t n = 0; n < qs.terms.size(); ++n) {
    CHECK(ord2(qs.terms[n]) == TwoAdicOrder::of(static_cast<std::int64_t>(n)));
  }
}

TEST_CASE("greedy choice is enumeration-minimal") {
  const QSequence qs = build_canonical_q_sequence(6);
  CachedStream<OddDenominatorStream> h;
  for (std::size_t n = 0; n < qs.terms.size(); ++n) {
    const std::span<const Rational> prefix(qs.terms.data(), n);
    const auto want = TwoAdicOrder::of(static_cast<std::int64_t>(n));
    for (std::uint64_t l = 0; l < qs.source_indices[n]; ++l) {
      CHECK(ord2(reduce_digits(h.at(l), prefix).residue) != want);
    }
    const DigitReduction red = reduce_digits(h.at(qs.source_indices[n]), prefix);
    CHECK(ord2(red.residue) == want);
    CHECK(red.residue == qs.terms[n]);
  }
}

TEST_CASE("q-sequence over a custom enumeration") {
  const QSequence qs = build_q_sequence(
      [](std::uint64_t l) { return Rational(static_cast<long long>(l)); }, 5);
  CHECK(qs.terms == std::vector<Rational>{Rational(1), Rational(2), Rational(4),
                                          Rational(8), Rational(16)});
  CHECK(qs.source_indices == std::vector<std::uint64_t>{1, 2, 4, 8, 16});
}

TEST_CASE("q-sequence failure modes") {
  try {
    build_q_sequence([](std::uint64_t) { return Rational(3); }, 2, {50});
    FAIL("expected BudgetExceededError");
  } catch (const BudgetExceededError& e) {
    CHECK(e.steps() == 50);
    CHECK(std::string(e.what()).find("term 1") != std::string::npos);
  }
  CHECK_THROWS_AS(
      build_q_sequence([](std::uint64_t) { return Rational(1, 2); }, 1),
      PreconditionError);
}

TEST_CASE("r-sequence interleaving") {
  const QSequence qs = build_canonical_q_sequence(4);
  const RSequence rs = build_r_sequence(qs, 8);
  CHECK(rs.terms == std::vector<Rational>{
                        Rational(-1), Rational(1, 2), Rational(2),
                        Rational(1, 4), Rational(-4), Rational(1, 8),
                        Rational(8, 3), Rational(1, 16)});
  CHECK(build_r_sequence(qs, 7).terms.size() == 7);
  CHECK_THROWS_AS(build_r_sequence(build_canonical_q_sequence(2), 5),
                  PreconditionError);
}

TEST_CASE("decompose writes values over the r-sequence") {
  const RSequence rs = build_r_sequence(build_canonical_q_sequence(5), 10);
  const auto picked = decompose(Rational(7, 12), rs);
  REQUIRE(picked.has_value());
  CHECK(*picked == IndexSubset{0, 3, 4, 8});
  CHECK(sum_of(*picked, rs.terms) == Rational(7, 12));

  CHECK(decompose(Rational(0), rs) == IndexSubset{});

  // Round trip: random subsets of a longer prefix come back exactly.
  const RSequence rs12 = build_r_sequence(build_canonical_q_sequence(6), 12);
  std::mt19937 rng(90210);
  std::uniform_int_distribution<unsigned> mask_dist(0, (1u << 12) - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned mask = mask_dist(rng);
    IndexSubset subset;
    for (std::size_t i = 0; i < 12; ++i) {
      if (mask & (1u << i)) subset.push_back(i);
    }
    const auto back = decompose(sum_of(subset, rs12.terms), rs12);
    REQUIRE(back.has_value());
    CHECK(*back == subset);
  }
}

TEST_CASE("decompose reaches every moderate denominator by depth 128") {
  const RSequence rs = build_r_sequence(build_canonical_q_sequence(64), 128);
  std::mt19937 rng(60601);
  std::uniform_int_distribution<int> num(-10'000, 10'000);
  std::uniform_int_distribution<int> odd_half(0, 12);   // odd part <= 25
  std::uniform_int_distribution<int> dyadic(0, 6);      // 2^a factor
  for (int trial = 0; trial < 60; ++trial) {
    const Rational x(num(rng), (2 * odd_half(rng) + 1) << dyadic(rng));
    const auto picked = decompose(x, rs);
    REQUIRE(picked.has_value());
    CHECK(sum_of(*picked, rs.terms) == x);
  }
}

TEST_CASE("decompose reports when the prefix is too short") {
  const RSequence rs = build_r_sequence(build_canonical_q_sequence(32), 64);
  CHECK(!decompose(Rational(1, 9973), rs).has_value());
  // A dyadic tail deeper than the prefix also fails cleanly.
  const RSequence shallow = build_r_sequence(build_canonical_q_sequence(2), 4);
  CHECK(!decompose(Rational(1, 64), shallow).has_value());
}

TEST_CASE("shift comparisons: all orders differ from the shift") {
  const std::vector<Rational> s = {Rational(0), Rational(1), Rational(4)};
  const auto rep = check_shift_lemma(s, Rational(2));
  CHECK(rep.shift_order == TwoAdicOrder::of(1));
  CHECK(rep.hyp_all_different);
  CHECK(!rep.hyp_all_below);
  CHECK(!rep.hyp_all_above);
  CHECK(rep.disjoint_holds);
  CHECK(rep.counterexamples.empty());
}

TEST_CASE("shift comparisons: all orders below the shift") {
  const std::vector<Rational> s = {Rational(0), Rational(1)};
  const auto rep = check_shift_lemma(s, Rational(4));
  CHECK(rep.hyp_all_below);
  CHECK(rep.hyp_all_different);
  CHECK(rep.disjoint_holds);
  CHECK(rep.below_conclusion_holds);
  CHECK(rep.counterexamples.empty());
}

TEST_CASE("shift comparisons: all orders above the shift") {
  const std::vector<Rational> s = {Rational(0), Rational(4)};
  const auto rep = check_shift_lemma(s, Rational(1));
  CHECK(rep.hyp_all_above);
  CHECK(rep.hyp_all_different);
  CHECK(rep.above_conclusion_holds);
  CHECK(rep.counterexamples.empty());
}

TEST_CASE("shift comparisons: degenerate inputs") {
  // A matching pairwise order knocks out every hypothesis.
  const std::vector<Rational> tie = {Rational(0), Rational(2)};
  const auto rep = check_shift_lemma(tie, Rational(2));
  CHECK(!rep.hyp_all_different);
  CHECK(!rep.hyp_all_below);
  CHECK(!rep.hyp_all_above);
  CHECK(rep.counterexamples.empty());

  // Singletons satisfy every hypothesis vacuously; conclusions still
  // get brute-checked against the two-point union.
  const std::vector<Rational> one = {Rational(0)};
  const auto vac = check_shift_lemma(one, Rational(4));
  CHECK(vac.hyp_all_different);
  CHECK(vac.hyp_all_below);
  CHECK(vac.hyp_all_above);
  CHECK(vac.disjoint_holds);
  CHECK(vac.below_conclusion_holds);
  CHECK(vac.above_conclusion_holds);

  CHECK_THROWS_AS(check_shift_lemma(one, Rational(0)), PreconditionError);
  const std::vector<Rational> dup = {Rational(1), Rational(1)};
  CHECK_THROWS_AS(check_shift_lemma(dup, Rational(1)), PreconditionError);
}

TEST_CASE("shift comparisons hold on random inputs") {
  std::mt19937 rng(171717);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 16);
  std::uniform_int_distribution<int> size(1, 8);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Rational> s;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) {
      const Rational candidate(num(rng), den(rng));
      if (std::find(s.begin(), s.end(), candidate) == s.end()) {
        s.push_back(candidate);
      }
    }
    Rational r(num(rng), den(rng));
    if (r.is_zero()) r = Rational(1, 3);
    const auto rep = check_shift_lemma(s, r);
    CHECK(rep.disjoint_holds);
    CHECK(rep.below_conclusion_holds);
    CHECK(rep.above_conclusion_holds);
    CHECK(rep.counterexamples.empty());
  }
}
