#include "apfree/constructor.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "apfree/errors.hpp"

namespace apfree {

SourceSet parse_source(std::string_view token) {
  if (token == "N") return SourceSet::Naturals;
  if (token == "Z") return SourceSet::Integers;
  if (token == "Q") return SourceSet::Rationals;
  throw PreconditionError("unknown source set '" + std::string(token) +
                          "' (expected N, Z, or Q)");
}

const char* source_name(SourceSet s) {
  switch (s) {
    case SourceSet::Naturals: return "N";
    case SourceSet::Integers: return "Z";
    case SourceSet::Rationals: return "Q";
  }
  return "?";
}

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Interleave: return "interleave";
    case StepKind::AppendAbove: return "append-above";
  }
  return "?";
}

namespace {

std::string search_context(std::uint32_t step, const CountableOrder& order,
                           const OrderPoint* lower, const OrderPoint* upper,
                           std::size_t exclusions) {
  std::ostringstream os;
  os << "step " << step << ": searching " << order.name() << " for a point ";
  if (lower && upper) {
    os << "strictly between " << lower->value() << " and " << upper->value();
  } else if (lower) {
    os << "strictly above " << lower->value();
  } else {
    os << "strictly below " << upper->value();
  }
  if (exclusions > 0) {
    os << " (" << exclusions << " exclusion" << (exclusions == 1 ? "" : "s")
       << ")";
  }
  return os.str();
}

}  // namespace

Rational ConstructionState::shift_for(std::uint32_t n) {
  switch (source_) {
    case SourceSet::Naturals:
      return Rational(BigInt(1) << n);
    case SourceSet::Integers: {
      BigInt t = BigInt(1) << n;
      return Rational(n % 2 == 0 ? t : BigInt(-t));
    }
    case SourceSet::Rationals: {
      if (n % 2 != 0) return pow2(-static_cast<std::int64_t>((n + 1) / 2));
      const std::size_t k = n / 2;
      if (qseq_.terms.size() <= k) {
        qseq_ = build_canonical_q_sequence(k + 1, options_.qseq);
      }
      return qseq_.terms[k];
    }
  }
  throw std::logic_error("unhandled source set");
}

void ConstructionState::interleave_step(std::uint32_t n, const Rational& r,
                                        AuditStep& audit) {
  const std::size_t m = entries_.size();
  const OrderPoint target_value = working_->point_at(cursor_);
  bool pending = true;

  std::vector<ChosenPoint> added;
  added.reserve(m);
  const OrderPoint* prev_old = nullptr;
  const OrderPoint* prev_new = nullptr;
  for (std::size_t i = 0; i < m; ++i) {
    const MapEntry& cur = entries_[i];
    const OrderPoint* upper = (i + 1 < m) ? &entries_[i + 1].image : nullptr;
    const OrderPoint* lower = prev_old;
    if (prev_new && (!lower || working_->less(*lower, *prev_new))) {
      lower = prev_new;
    }
    const Rational domain = cur.domain + r;

    bool admit = pending;
    if (admit && lower && !working_->less(*lower, target_value)) admit = false;
    if (admit && upper && !working_->less(target_value, *upper)) admit = false;
    if (admit && target_value == cur.image) admit = false;
    if (admit) {
      added.push_back({domain, target_value, cursor_, true});
      audit.coverage_index = cursor_;
      pending = false;
    } else {
      std::vector<OrderPoint> exclude{cur.image};
      if (pending) exclude.push_back(target_value);
      std::optional<FoundPoint> fp;
      if (lower && upper) {
        fp = try_find_strictly_between(*working_, *lower, *upper, exclude,
                                       options_.search_budget);
      } else if (lower) {
        fp = try_find_strictly_above(*working_, *lower, exclude,
                                     options_.search_budget);
      } else if (upper) {
        fp = try_find_strictly_below(*working_, *upper, exclude,
                                     options_.search_budget);
      } else {
        throw std::logic_error("interleave sweep has no bounds yet no target");
      }
      if (!fp) {
        throw BudgetExceededError(
            search_context(n, *working_, lower, upper, exclude.size()),
            options_.search_budget.max_enumeration_steps);
      }
      added.push_back({domain, fp->point, fp->enumeration_index, false});
    }
    prev_old = &cur.image;
    prev_new = &added.back().image;
  }
  if (pending) {
    throw std::logic_error("coverage target " + target_value.value().str() +
                           " was admitted at no sweep position");
  }
  absorb(std::move(added), audit);
}

void ConstructionState::append_above_step(std::uint32_t n, const Rational& r,
                                          AuditStep& audit) {
  const std::size_t m = entries_.size();
  std::vector<ChosenPoint> added;
  added.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const OrderPoint& lower =
        added.empty() ? entries_.back().image : added.back().image;
    auto fp = try_find_strictly_above(*working_, lower, {},
                                      options_.search_budget);
    if (!fp) {
      throw BudgetExceededError(search_context(n, *working_, &lower, nullptr, 0),
                                options_.search_budget.max_enumeration_steps);
    }
    added.push_back(
        {entries_[i].domain + r, fp->point, fp->enumeration_index, false});
  }
  absorb(std::move(added), audit);
}

void ConstructionState::absorb(std::vector<ChosenPoint>&& added,
                               AuditStep& audit) {
  entries_.reserve(entries_.size() + added.size());
  for (const ChosenPoint& c : added) {
    if (!domain_values_.insert(c.domain).second) {
      throw std::logic_error("shifted domain value " + c.domain.str() +
                             " collides with an existing one");
    }
    if (!image_values_.insert(c.image.value()).second) {
      throw std::logic_error("image value " + c.image.value().str() +
                             " was assigned twice");
    }
    entries_.push_back({c.domain, c.image});
  }
  std::sort(entries_.begin(), entries_.end(),
            [this](const MapEntry& x, const MapEntry& y) {
              return working_->less(x.image, y.image);
            });
  advance_cursor();
  audit.added = std::move(added);
}

void ConstructionState::advance_cursor() {
  while (image_values_.count(working_->point_at(cursor_).value()) != 0) {
    ++cursor_;
  }
}

void ConstructionState::advance() {
  const std::uint32_t n = depth_;
  try {
    AuditStep audit;
    audit.step = n;
    audit.shift = shift_for(n);
    audit.kind = (source_ == SourceSet::Rationals && n % 2 != 0)
                     ? StepKind::AppendAbove
                     : StepKind::Interleave;
    if (audit.kind == StepKind::Interleave) {
      interleave_step(n, audit.shift, audit);
    } else {
      append_above_step(n, audit.shift, audit);
    }
    shifts_.push_back(audit.shift);
    ++depth_;
    if (options_.verify_each_step) {
      if (auto w = find_binary_violation(FiniteOrderedMap(working_, entries_))) {
        std::ostringstream os;
        os << "step " << n << " produced equal carry orders at " << *w;
        throw std::logic_error(os.str());
      }
    }
    audit_.push_back(std::move(audit));
  } catch (BudgetExceededError& e) {
    e.construction_step = n;
    throw;
  }
}

FiniteOrderedMap ConstructionState::final_map() const {
  return FiniteOrderedMap(target_, entries_);
}

ConstructionState begin_construction(SourceSet source, OrderPtr order,
                                     ConstructionOptions opts) {
  if (!order) throw PreconditionError("construction requires an order");
  ConstructionState st;
  st.source_ = source;
  st.target_ = std::move(order);
  st.working_ = st.target_;
  st.options_ = opts;
  if (source == SourceSet::Rationals) {
    const OrderProperties& p = st.target_->properties();
    if (p.has_maximum && p.has_minimum) {
      throw PreconditionError(
          "order " + st.target_->name() +
          " declares both a maximum and a minimum; a dense image of the "
          "rationals cannot have both ends");
    }
    if (p.has_maximum) {
      st.working_ = reversed_view(st.target_);
      st.reversed_ = true;
    }
  }
  const OrderPoint first = st.working_->point_at(0);
  st.entries_.push_back({Rational(0), first});
  st.domain_values_.insert(Rational(0));
  st.image_values_.insert(first.value());
  st.advance_cursor();
  return st;
}

ConstructionState construct_prefix(SourceSet source, OrderPtr order,
                                   std::uint32_t depth,
                                   ConstructionOptions opts) {
  ConstructionState st = begin_construction(source, std::move(order), opts);
  while (st.depth() < depth) st.advance();
  return st;
}

}  // namespace apfree
