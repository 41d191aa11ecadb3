#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "apfree/dyadic_basis.hpp"
#include "apfree/order.hpp"
#include "apfree/rational.hpp"
#include "apfree/verifier.hpp"

namespace apfree {

enum class SourceSet { Naturals, Integers, Rationals };

SourceSet parse_source(std::string_view token);  // "N", "Z", or "Q"
const char* source_name(SourceSet s);

enum class StepKind {
  Interleave,   // images of the shifted copy woven between existing ones
  AppendAbove,  // images of the shifted copy stacked above everything
};

const char* step_kind_name(StepKind k);

struct ChosenPoint {
  Rational domain;
  OrderPoint image;
  // Enumeration index of the image in the working order: the search
  // index for searched points, the coverage index for the target.
  std::uint64_t enumeration_index;
  bool coverage_target;
};

struct AuditStep {
  std::uint32_t step;
  StepKind kind;
  Rational shift;
  // Coverage index consumed by this step, when it placed one.
  std::optional<std::uint64_t> coverage_index;
  std::vector<ChosenPoint> added;  // in image-sweep order
};

struct ConstructionOptions {
  SearchBudget search_budget;
  QSequenceOptions qseq;
  // Re-check the no-equal-carry-orders property after every step and
  // fail loudly if it ever breaks; quadratic in the map size.
  bool verify_each_step = true;
};

// Incrementally built injection. Step n doubles the domain by shifting
// it: the naturals use shifts 2^n, the integers (-2)^n, the rationals
// alternate q-sequence terms with negative powers of two. Every domain
// prefix is the set of subset sums of the shifts spent so far.
//
// Interleave steps also place one coverage target: the first enumerated
// carrier value missing from the image, inserted at the earliest sweep
// position whose bounds admit it. The coverage cursor consequently
// walks the carrier enumeration, which is what makes the limit map onto
// the whole order.
class ConstructionState {
 public:
  // Applies one extension step; throws BudgetExceededError (with
  // construction_step filled in) when a required point search exhausts
  // its budget, which is the expected outcome on orders that cannot
  // absorb the source.
  void advance();

  SourceSet source() const noexcept { return source_; }
  const OrderPtr& target() const noexcept { return target_; }
  const OrderPtr& working() const noexcept { return working_; }
  bool reversed_embedding() const noexcept { return reversed_; }
  std::uint32_t depth() const noexcept { return depth_; }
  const std::vector<MapEntry>& entries() const noexcept { return entries_; }
  const std::vector<Rational>& shifts() const noexcept { return shifts_; }
  std::uint64_t coverage_cursor() const noexcept { return cursor_; }
  const std::vector<AuditStep>& audit() const noexcept { return audit_; }
  const ConstructionOptions& options() const noexcept { return options_; }

  // The map into the original target order (undoing any reversal; the
  // defining property does not depend on direction).
  FiniteOrderedMap final_map() const;

 private:
  friend ConstructionState begin_construction(SourceSet source, OrderPtr order,
                                              ConstructionOptions opts);
  ConstructionState() = default;

  Rational shift_for(std::uint32_t n);
  void interleave_step(std::uint32_t n, const Rational& r, AuditStep& audit);
  void append_above_step(std::uint32_t n, const Rational& r, AuditStep& audit);
  void absorb(std::vector<ChosenPoint>&& added, AuditStep& audit);
  void advance_cursor();

  SourceSet source_ = SourceSet::Naturals;
  OrderPtr target_;
  OrderPtr working_;
  bool reversed_ = false;
  std::uint32_t depth_ = 0;
  ConstructionOptions options_;

  std::vector<MapEntry> entries_;  // ascending by working-order image
  std::unordered_set<Rational, RationalHash> domain_values_;
  std::unordered_set<Rational, RationalHash> image_values_;
  std::vector<Rational> shifts_;
  std::uint64_t cursor_ = 0;
  std::vector<AuditStep> audit_;
  QSequence qseq_;
};

// Maps 0 to the first enumerated carrier point. For a rationals source
// the order must not declare both a maximum and a minimum; when it
// declares only a maximum, construction runs against the reversed view.
ConstructionState begin_construction(SourceSet source, OrderPtr order,
                                     ConstructionOptions opts = {});

// begin_construction plus `depth` advances.
ConstructionState construct_prefix(SourceSet source, OrderPtr order,
                                   std::uint32_t depth,
                                   ConstructionOptions opts = {});

}  // namespace apfree
