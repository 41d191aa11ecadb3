#include "apfree/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <ostream>
#include <thread>
#include <utility>

#include "apfree/errors.hpp"

namespace apfree {

FiniteOrderedMap::FiniteOrderedMap(OrderPtr order, std::vector<MapEntry> entries)
    : order_(std::move(order)), entries_(std::move(entries)) {
  if (!order_) throw PreconditionError("map requires an order");
  for (const auto& e : entries_) {
    if (!order_->contains(e.image)) {
      throw PreconditionError("image value " + e.image.value().str() +
                              " lies outside the carrier of " + order_->name());
    }
  }
  std::sort(entries_.begin(), entries_.end(),
            [this](const MapEntry& x, const MapEntry& y) {
              return order_->less(x.image, y.image);
            });
  for (std::size_t i = 0; i + 1 < entries_.size(); ++i) {
    if (entries_[i].image == entries_[i + 1].image) {
      throw PreconditionError("duplicate image value " +
                              entries_[i].image.value().str());
    }
  }
  position_.reserve(entries_.size());
  image_values_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!position_.emplace(entries_[i].domain, i).second) {
      throw PreconditionError("duplicate domain value " +
                              entries_[i].domain.str());
    }
    image_values_.insert(entries_[i].image.value());
  }
}

std::optional<std::size_t> FiniteOrderedMap::domain_position(
    const Rational& value) const {
  auto it = position_.find(value);
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

bool FiniteOrderedMap::domain_contains(const Rational& value) const {
  return position_.count(value) != 0;
}

bool FiniteOrderedMap::image_contains(const OrderPoint& p) const {
  return image_values_.count(p.value()) != 0;
}

std::ostream& operator<<(std::ostream& os, const DomainTriple& t) {
  return os << "(" << t.a << ", " << t.b << ", " << t.c << ")";
}

std::optional<DomainTriple> find_monotone_3ap(const FiniteOrderedMap& m) {
  const auto& es = m.entries();
  const std::size_t n = es.size();
  // Positions (i, j) force the third domain value; a hash probe replaces
  // the inner loop. Ascending (i, j) yields the lexicographically first
  // witness because each pair admits at most one completion.
  for (std::size_t i = 0; i + 2 < n; ++i) {
    for (std::size_t j = i + 1; j + 1 < n; ++j) {
      const Rational c = es[j].domain + (es[j].domain - es[i].domain);
      auto pos = m.domain_position(c);
      if (pos && *pos > j) {
        return DomainTriple{es[i].domain, es[j].domain, c};
      }
    }
  }
  return std::nullopt;
}

namespace {

bool binary_violation_exists(const std::vector<MapEntry>& es, unsigned threads) {
  const std::size_t n = es.size();
  if (n < 3) return false;
  const unsigned stride = std::max(1u, threads);
  std::atomic<bool> found{false};
  auto scan_middles = [&](std::size_t first_j) {
    std::unordered_set<std::int64_t> before;
    for (std::size_t j = first_j; j < n; j += stride) {
      if (found.load(std::memory_order_relaxed)) return;
      before.clear();
      for (std::size_t i = 0; i < j; ++i) {
        before.insert(ord2_nonzero(es[j].domain - es[i].domain));
      }
      for (std::size_t k = j + 1; k < n; ++k) {
        if ((k & 1023u) == 0 && found.load(std::memory_order_relaxed)) return;
        if (before.count(ord2_nonzero(es[k].domain - es[j].domain))) {
          found.store(true, std::memory_order_relaxed);
          return;
        }
      }
    }
  };
  if (stride == 1) {
    scan_middles(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(stride);
    for (unsigned t = 0; t < stride; ++t) pool.emplace_back(scan_middles, t);
    for (auto& th : pool) th.join();
  }
  return found.load();
}

DomainTriple extract_first_binary_violation(const std::vector<MapEntry>& es) {
  const std::size_t n = es.size();
  // Smallest completion position per (middle, carry order), built by a
  // descending sweep so later finds overwrite earlier (larger) ones.
  std::vector<std::unordered_map<std::int64_t, std::size_t>> first_k(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = n; k-- > j + 1;) {
      first_k[j][ord2_nonzero(es[k].domain - es[j].domain)] = k;
    }
  }
  for (std::size_t i = 0; i + 2 < n; ++i) {
    for (std::size_t j = i + 1; j + 1 < n; ++j) {
      auto it = first_k[j].find(ord2_nonzero(es[j].domain - es[i].domain));
      if (it != first_k[j].end()) {
        return DomainTriple{es[i].domain, es[j].domain, es[it->second].domain};
      }
    }
  }
  throw std::logic_error("violation existence scan disagrees with extraction");
}

}  // namespace

std::optional<DomainTriple> find_binary_violation(const FiniteOrderedMap& m,
                                                  unsigned threads) {
  if (!binary_violation_exists(m.entries(), threads)) return std::nullopt;
  return extract_first_binary_violation(m.entries());
}

std::optional<DomainTriple> check_maxmin_obstruction(const FiniteOrderedMap& m) {
  if (m.size() < 2) return std::nullopt;
  const Rational& low = m.entries().front().domain;
  const Rational& high = m.entries().back().domain;
  const Rational mid = midpoint(low, high);
  if (!m.domain_contains(mid)) return std::nullopt;
  return DomainTriple{low, mid, high};
}

bool is_chaotic(const FiniteOrderedMap& m) {
  return !find_monotone_3ap(m).has_value();
}

bool is_binary(const FiniteOrderedMap& m) {
  return !find_binary_violation(m).has_value();
}

}  // namespace apfree
