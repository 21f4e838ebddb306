#include "garling/sparse_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace garling {

SparseVector::SparseVector(std::vector<Entry> entries) {
  entries_.reserve(entries.size());
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    if (e.index < 1) {
      throw std::invalid_argument("support index must be positive, got " +
                                  std::to_string(e.index));
    }
    if (e.index <= prev) {
      throw std::invalid_argument("support indices must be strictly increasing (violated at "
                                  "position " + std::to_string(i + 1) + ")");
    }
    if (!std::isfinite(e.value)) {
      throw std::invalid_argument("nonfinite value at index " + std::to_string(e.index));
    }
    prev = e.index;
    if (e.value != 0.0) entries_.push_back(e);
  }
}

SparseVector SparseVector::from_pairs(
    std::initializer_list<std::pair<std::int64_t, double>> pairs) {
  std::vector<Entry> entries;
  entries.reserve(pairs.size());
  for (const auto& [i, v] : pairs) entries.push_back(Entry{i, v});
  return SparseVector(std::move(entries));
}

std::int64_t SparseVector::first_index() const {
  if (entries_.empty()) throw std::out_of_range("empty vector has no support");
  return entries_.front().index;
}

std::int64_t SparseVector::last_index() const {
  if (entries_.empty()) throw std::out_of_range("empty vector has no support");
  return entries_.back().index;
}

double SparseVector::max_modulus() const {
  double m = 0.0;
  for (const Entry& e : entries_) m = std::max(m, std::abs(e.value));
  return m;
}

std::vector<double> SparseVector::values_in_order() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.value);
  return out;
}

std::vector<std::int64_t> SparseVector::support() const {
  std::vector<std::int64_t> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.index);
  return out;
}

SparseVector nonincreasing_rearrangement(const SparseVector& x) {
  std::vector<double> moduli;
  moduli.reserve(x.entries().size());
  for (const Entry& e : x.entries()) moduli.push_back(std::abs(e.value));
  std::stable_sort(moduli.begin(), moduli.end(), std::greater<double>());
  std::vector<Entry> out;
  out.reserve(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    out.push_back(Entry{static_cast<std::int64_t>(i + 1), moduli[i]});
  }
  return SparseVector(std::move(out));
}

SparseVector spread(const SparseVector& x, std::span<const std::int64_t> target_indices) {
  if (static_cast<std::int64_t>(target_indices.size()) != x.support_size()) {
    throw std::invalid_argument("spread target has " + std::to_string(target_indices.size()) +
                                " indices for support of size " +
                                std::to_string(x.support_size()));
  }
  std::vector<Entry> out;
  out.reserve(target_indices.size());
  for (std::size_t i = 0; i < target_indices.size(); ++i) {
    out.push_back(Entry{target_indices[i], x.entries()[i].value});
  }
  return SparseVector(std::move(out));
}

SparseVector scaled(const SparseVector& x, double factor) {
  std::vector<Entry> out;
  out.reserve(x.entries().size());
  for (const Entry& e : x.entries()) out.push_back(Entry{e.index, factor * e.value});
  return SparseVector(std::move(out));
}

SparseVector linear_combination(std::span<const SparseVector> vectors,
                                std::span<const double> coefficients) {
  if (vectors.size() != coefficients.size()) {
    throw std::invalid_argument("linear combination needs one coefficient per vector");
  }
  std::vector<Entry> pool;
  for (std::size_t n = 0; n < vectors.size(); ++n) {
    if (coefficients[n] == 0.0) continue;
    for (const Entry& e : vectors[n].entries()) {
      pool.push_back(Entry{e.index, coefficients[n] * e.value});
    }
  }
  std::sort(pool.begin(), pool.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  std::vector<Entry> merged;
  merged.reserve(pool.size());
  for (const Entry& e : pool) {
    if (!merged.empty() && merged.back().index == e.index) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  return SparseVector(std::move(merged));
}

SparseVector add(const SparseVector& a, const SparseVector& b) {
  const SparseVector vs[] = {a, b};
  const double cs[] = {1.0, 1.0};
  return linear_combination(vs, cs);
}

SparseVector subtract(const SparseVector& a, const SparseVector& b) {
  const SparseVector vs[] = {a, b};
  const double cs[] = {1.0, -1.0};
  return linear_combination(vs, cs);
}

}  // namespace garling
