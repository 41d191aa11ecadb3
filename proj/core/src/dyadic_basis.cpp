#include "apfree/dyadic_basis.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <unordered_set>

#include "apfree/enumeration.hpp"
#include "apfree/errors.hpp"

namespace apfree {

namespace {

void require_profile(std::span<const Rational> prefix) {
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (ord2(prefix[i]) != TwoAdicOrder::of(static_cast<std::int64_t>(i))) {
      throw PreconditionError("prefix term " + std::to_string(i) +
                              " = " + prefix[i].str() +
                              " must have carry order " + std::to_string(i));
    }
  }
}

}  // namespace

DigitReduction reduce_digits(const Rational& x,
                             std::span<const Rational> prefix) {
  require_profile(prefix);
  if (!has_odd_denominator(x)) {
    throw PreconditionError("cannot reduce " + x.str() +
                            ": negative carry order");
  }
  DigitReduction out;
  out.residue = x;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (ord2(out.residue) == TwoAdicOrder::of(static_cast<std::int64_t>(i))) {
      out.residue -= prefix[i];
      out.indices.push_back(i);
    }
  }
  return out;
}

std::optional<IndexSubset> binary_representation(
    const Rational& x, std::span<const Rational> prefix) {
  DigitReduction red = reduce_digits(x, prefix);
  if (!red.residue.is_zero()) return std::nullopt;
  return std::move(red.indices);
}

QSequence build_q_sequence(const std::function<Rational(std::uint64_t)>& h,
                           std::size_t count, QSequenceOptions opts) {
  QSequence out;
  out.terms.reserve(count);
  out.source_indices.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    const auto want = TwoAdicOrder::of(static_cast<std::int64_t>(n));
    bool placed = false;
    for (std::uint64_t l = 0; l < opts.candidate_cap; ++l) {
      const Rational v = h(l);
      if (!has_odd_denominator(v)) {
        throw PreconditionError("enumeration value " + v.str() +
                                " has an even denominator");
      }
      DigitReduction red = reduce_digits(v, out.terms);
      if (ord2(red.residue) == want) {
        out.terms.push_back(std::move(red.residue));
        out.source_indices.push_back(l);
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw BudgetExceededError("building q-sequence term " + std::to_string(n),
                                opts.candidate_cap);
    }
  }
  return out;
}

QSequence build_canonical_q_sequence(std::size_t count, QSequenceOptions opts) {
  auto cache = std::make_shared<CachedStream<OddDenominatorStream>>();
  return build_q_sequence(
      [cache](std::uint64_t l) { return cache->at(l); }, count, opts);
}

std::vector<SubsetSum> subset_sums(std::span<const Rational> terms) {
  if (terms.size() > 24) {
    throw PreconditionError("refusing to enumerate 2^" +
                            std::to_string(terms.size()) + " subsets");
  }
  const std::size_t n = terms.size();
  std::vector<SubsetSum> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    SubsetSum s;
    s.value = Rational(0);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        s.value += terms[i];
        s.indices.push_back(i);
      }
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const SubsetSum& a, const SubsetSum& b) {
              return a.value < b.value;
            });
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    if (out[i].value == out[i + 1].value) {
      throw PreconditionError("subset sums collide at " + out[i].value.str());
    }
  }
  return out;
}

RSequence build_r_sequence(const QSequence& qs, std::size_t count) {
  const std::size_t needed = (count + 1) / 2;
  if (qs.terms.size() < needed) {
    throw PreconditionError("r-sequence of length " + std::to_string(count) +
                            " needs " + std::to_string(needed) +
                            " q-sequence terms, have " +
                            std::to_string(qs.terms.size()));
  }
  RSequence out;
  out.terms.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    if (n % 2 == 0) {
      out.terms.push_back(qs.terms[n / 2]);
    } else {
      out.terms.push_back(pow2(-static_cast<std::int64_t>(n + 1) / 2));
    }
  }
  return out;
}

std::optional<IndexSubset> decompose(const Rational& x, const RSequence& rs) {
  IndexSubset indices;
  Rational residue = x;
  while (!residue.is_zero() && !has_odd_denominator(residue)) {
    const std::int64_t j = -ord2_nonzero(residue);
    const std::size_t idx = 2 * static_cast<std::size_t>(j) - 1;
    if (idx >= rs.terms.size()) return std::nullopt;
    residue -= rs.terms[idx];
    indices.push_back(idx);
  }
  std::vector<Rational> q_prefix;
  q_prefix.reserve((rs.terms.size() + 1) / 2);
  for (std::size_t m = 0; 2 * m < rs.terms.size(); ++m) {
    q_prefix.push_back(rs.terms[2 * m]);
  }
  DigitReduction red = reduce_digits(residue, q_prefix);
  if (!red.residue.is_zero()) return std::nullopt;
  for (std::size_t m : red.indices) indices.push_back(2 * m);
  std::sort(indices.begin(), indices.end());
  return indices;
}

ShiftLemmaReport check_shift_lemma(std::span<const Rational> s,
                                   const Rational& r) {
  if (r.is_zero()) throw PreconditionError("shift must be nonzero");
  std::unordered_set<Rational, RationalHash> base(s.begin(), s.end());
  if (base.size() != s.size()) {
    throw PreconditionError("shift lemma input set has repeated values");
  }
  const std::int64_t ro = ord2_nonzero(r);
  ShiftLemmaReport rep;
  rep.shift_order = TwoAdicOrder::of(ro);
  rep.hyp_all_different = true;
  rep.hyp_all_below = true;
  rep.hyp_all_above = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const std::int64_t o = ord2_nonzero(s[i] - s[j]);
      if (o == ro) rep.hyp_all_different = false;
      if (o >= ro) rep.hyp_all_below = false;
      if (o <= ro) rep.hyp_all_above = false;
    }
  }

  if (rep.hyp_all_different) {
    for (const Rational& a : s) {
      if (base.count(a - r)) {
        rep.disjoint_holds = false;
        rep.counterexamples.push_back({a, a - r});
      }
    }
  }

  if (rep.hyp_all_below || rep.hyp_all_above) {
    std::unordered_set<Rational, RationalHash> shifted;
    std::vector<Rational> all(s.begin(), s.end());
    for (const Rational& a : s) {
      const Rational b = a + r;
      shifted.insert(b);
      if (!base.count(b)) all.push_back(b);
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        const Rational d = all[i] - all[j];
        const std::int64_t o = ord2_nonzero(d);
        if (rep.hyp_all_below) {
          const bool is_shift = (d == r) || (d == -r);
          if (o > ro || (o == ro) != is_shift) {
            rep.below_conclusion_holds = false;
            rep.counterexamples.push_back({all[i], all[j]});
          }
        }
        if (rep.hyp_all_above) {
          const bool one_shifted =
              (shifted.count(all[i]) != 0) != (shifted.count(all[j]) != 0);
          if (o < ro || (o == ro) != one_shifted) {
            rep.above_conclusion_holds = false;
            rep.counterexamples.push_back({all[i], all[j]});
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace apfree
