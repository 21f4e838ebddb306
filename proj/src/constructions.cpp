#include "garling/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "garling/detail/compensated.hpp"
#include "garling/detail/rng.hpp"

namespace garling {

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

BlockBasis::BlockBasis(std::vector<SparseVector> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("block basis must contain at least one block");
  boundaries_.reserve(blocks_.size() + 1);
  std::int64_t prev_end = 0;
  for (std::size_t n = 0; n < blocks_.size(); ++n) {
    const SparseVector& b = blocks_[n];
    if (b.empty()) {
      throw std::invalid_argument("block " + std::to_string(n + 1) + " is zero");
    }
    if (b.first_index() <= prev_end) {
      throw std::invalid_argument("block supports must be strictly ordered and disjoint "
                                  "(block " + std::to_string(n + 1) + " starts at " +
                                  std::to_string(b.first_index()) + ", previous ends at " +
                                  std::to_string(prev_end) + ")");
    }
    boundaries_.push_back(b.first_index());
    prev_end = b.last_index();
  }
  boundaries_.push_back(prev_end + 1);
}

const SparseVector& BlockBasis::block(std::int64_t n) const {
  if (n < 1 || n > size()) {
    throw std::out_of_range("block index " + std::to_string(n) + " outside basis of size " +
                            std::to_string(size()));
  }
  return blocks_[static_cast<std::size_t>(n - 1)];
}

BlockBasis BlockBasis::normalized(NormParams params, const Weights& w) const {
  std::vector<SparseVector> out;
  out.reserve(blocks_.size());
  for (const SparseVector& b : blocks_) {
    out.push_back(scaled(b, 1.0 / garling_norm(b, params, w)));
  }
  return BlockBasis(std::move(out));
}

SparseVector superposition(const BlockBasis& basis, std::span<const double> coefficients) {
  if (static_cast<std::int64_t>(coefficients.size()) != basis.size()) {
    throw std::invalid_argument("superposition needs one coefficient per block");
  }
  return linear_combination(basis.blocks(), coefficients);
}

BlockBasis dyadic_block_basis(std::int64_t block_count, const Weights& w, NormParams params) {
  if (block_count < 1) throw std::invalid_argument("block count must be at least 1");
  const std::int64_t longest = std::int64_t{1} << (block_count - 1);
  if (longest > w.length()) {
    throw std::out_of_range("dyadic basis with " + std::to_string(block_count) +
                            " blocks needs weights of length " + std::to_string(longest) +
                            ", have " + std::to_string(w.length()));
  }
  std::vector<SparseVector> blocks;
  blocks.reserve(static_cast<std::size_t>(block_count));
  for (std::int64_t n = 1; n <= block_count; ++n) {
    const std::int64_t len = std::int64_t{1} << (n - 1);
    const double coef = 1.0 / detail::power_root(w.prefix_sum(len), params.p());
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(len));
    for (std::int64_t i = len; i < 2 * len; ++i) entries.push_back(Entry{i, coef});
    blocks.push_back(SparseVector(std::move(entries)));
  }
  return BlockBasis(std::move(blocks));
}

BlockBasis block_normal_form(const BlockBasis& basis, NormParams params, const Weights& w) {
  std::vector<SparseVector> repacked;
  repacked.reserve(static_cast<std::size_t>(basis.size()));
  std::int64_t next_start = 1;
  for (const SparseVector& b : basis.blocks()) {
    const Witness wit = garling_witness(b, params, w);
    std::vector<Entry> entries;
    entries.reserve(wit.selected.size());
    // Two-pointer walk: witness indices are a subsequence of the support.
    std::size_t pos = 0;
    for (const std::int64_t idx : wit.selected) {
      while (b.entries()[pos].index != idx) ++pos;
      entries.push_back(Entry{next_start + static_cast<std::int64_t>(entries.size()),
                              b.entries()[pos].value});
      ++pos;
    }
    next_start += static_cast<std::int64_t>(entries.size());
    repacked.push_back(SparseVector(std::move(entries)));
  }
  return BlockBasis(std::move(repacked));
}

std::pair<SparseVector, SparseVector> asymmetry_pair(double theta, NormParams params,
                                                     std::int64_t j, const Weights& w) {
  if (w.kind() != WeightKind::power || w.theta() != theta) {
    throw std::invalid_argument("asymmetry pair requires power weights with matching theta");
  }
  if (j < 1) throw std::invalid_argument("j must be at least 1");
  if (j > w.length()) {
    throw std::out_of_range("asymmetry pair at j=" + std::to_string(j) +
                            " needs weights of that length, have " + std::to_string(w.length()));
  }
  const double e = (1.0 - theta) / params.p();
  std::vector<double> descending(static_cast<std::size_t>(j));
  for (std::int64_t n = 1; n <= j; ++n) {
    descending[static_cast<std::size_t>(n - 1)] = std::pow(static_cast<double>(n), -e);
  }
  std::vector<Entry> ye(static_cast<std::size_t>(j));
  std::vector<Entry> ze(static_cast<std::size_t>(j));
  for (std::int64_t n = 1; n <= j; ++n) {
    ye[static_cast<std::size_t>(n - 1)] = Entry{n, descending[static_cast<std::size_t>(n - 1)]};
    ze[static_cast<std::size_t>(n - 1)] = Entry{n, descending[static_cast<std::size_t>(j - n)]};
  }
  return {SparseVector(std::move(ye)), SparseVector(std::move(ze))};
}

ConvexityPair convexity_pair(const Weights& w, NormParams params, std::int64_t j) {
  if (j < 1) throw std::invalid_argument("j must be at least 1");
  if (j + 2 > w.length()) {
    throw std::out_of_range("convexity pair at j=" + std::to_string(j) +
                            " needs weights of length " + std::to_string(j + 2) + ", have " +
                            std::to_string(w.length()));
  }
  const double alpha =
      detail::power_root((1.0 - w.at(j + 1)) / w.prefix_sum(j), params.p());
  std::vector<Entry> ue;
  std::vector<Entry> ve;
  ue.reserve(static_cast<std::size_t>(j + 1));
  ve.reserve(static_cast<std::size_t>(j + 1));
  for (std::int64_t n = 1; n <= j; ++n) {
    ue.push_back(Entry{n, alpha});
    ve.push_back(Entry{n, alpha});
  }
  ue.push_back(Entry{j + 1, 1.0});
  ve.push_back(Entry{j + 2, 1.0});
  return ConvexityPair{SparseVector(std::move(ue)), SparseVector(std::move(ve)), alpha};
}

std::vector<std::int64_t> admissible_j_subsequence(const Weights& w, NormParams params,
                                                   std::int64_t j_max) {
  if (j_max < 1) throw std::invalid_argument("j_max must be at least 1");
  if (j_max + 2 > w.length()) {
    throw std::out_of_range("admissible subsequence up to j_max=" + std::to_string(j_max) +
                            " needs weights of length " + std::to_string(j_max + 2) +
                            ", have " + std::to_string(w.length()));
  }
  std::vector<std::int64_t> out;
  double running_min = std::numeric_limits<double>::infinity();
  for (std::int64_t j = 1; j <= j_max; ++j) {
    const double alpha =
        detail::power_root((1.0 - w.at(j + 1)) / w.prefix_sum(j), params.p());
    if (alpha <= running_min) {
      out.push_back(j);
      running_min = alpha;
    }
  }
  return out;
}

PhiSelection::PhiSelection(double phi, std::vector<std::int64_t> window_starts,
                           std::vector<double> coefficients,
                           std::vector<std::int64_t> chosen_blocks,
                           std::vector<std::int64_t> source_starts, NormParams params,
                           const Weights& w)
    : phi_(phi),
      starts_(std::move(window_starts)),
      coeffs_(std::move(coefficients)),
      chosen_(std::move(chosen_blocks)),
      source_starts_(std::move(source_starts)) {
  if (!(phi_ > 0.0 && phi_ < 1.0)) {
    throw std::invalid_argument("phi must lie in (0,1), got " + fmt_g(phi_));
  }
  if (starts_.size() < 2 || starts_.front() != 1) {
    throw std::invalid_argument("window starts must begin at q_1 = 1");
  }
  for (std::size_t i = 1; i < starts_.size(); ++i) {
    if (starts_[i] <= starts_[i - 1]) {
      throw std::invalid_argument("window starts must be strictly increasing");
    }
  }
  const std::int64_t total = starts_.back() - 1;
  if (static_cast<std::int64_t>(coeffs_.size()) != total) {
    throw std::invalid_argument("selection needs one coefficient per position in [1, q_end)");
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0.0 || !std::isfinite(coeffs_[i])) {
      throw std::invalid_argument("window coefficients must be nonzero and finite (position " +
                                  std::to_string(i + 1) + ")");
    }
  }
  if (chosen_.size() + 1 != starts_.size() || source_starts_.size() != chosen_.size()) {
    throw std::invalid_argument("selection needs one chosen block and source start per window");
  }
  for (std::size_t k = 0; k < chosen_.size(); ++k) {
    if (chosen_[k] < 1 || (k > 0 && chosen_[k] <= chosen_[k - 1])) {
      throw std::invalid_argument("chosen block indices must be strictly increasing");
    }
    if (source_starts_[k] < 1 || (k > 0 && source_starts_[k] <= source_starts_[k - 1])) {
      throw std::invalid_argument("source starts must be strictly increasing");
    }
  }
  for (std::size_t k = 0; k + 1 < source_starts_.size(); ++k) {
    const std::int64_t len = starts_[k + 1] - starts_[k];
    if (source_starts_[k] + len > source_starts_[k + 1]) {
      throw std::invalid_argument("source runs must not overlap");
    }
  }
  if (total > w.length()) {
    throw std::out_of_range("selection spans positions up to " + std::to_string(total) +
                            ", weight prefix has " + std::to_string(w.length()));
  }
  masses_.resize(chosen_.size());
  for (std::size_t k = 0; k < chosen_.size(); ++k) {
    detail::CompensatedSum acc;
    for (std::int64_t l = starts_[k]; l < starts_[k + 1]; ++l) {
      acc.add(detail::modulus_power(std::abs(coefficient(l)), params.p()) * w.at(l));
    }
    masses_[k] = acc.value();
    if (masses_[k] + 1e-12 < phi_) {
      throw std::invalid_argument("window " + std::to_string(k + 1) + " mass " +
                                  fmt_g(masses_[k]) + " violates the phi lower bound " +
                                  fmt_g(phi_));
    }
  }
}

std::int64_t PhiSelection::window_start(std::int64_t k) const {
  return starts_[static_cast<std::size_t>(k - 1)];
}

std::int64_t PhiSelection::window_end(std::int64_t k) const {
  return starts_[static_cast<std::size_t>(k)];
}

std::int64_t PhiSelection::window_length(std::int64_t k) const {
  return window_end(k) - window_start(k);
}

std::int64_t PhiSelection::chosen_block(std::int64_t k) const {
  return chosen_[static_cast<std::size_t>(k - 1)];
}

std::int64_t PhiSelection::source_start(std::int64_t k) const {
  return source_starts_[static_cast<std::size_t>(k - 1)];
}

double PhiSelection::mass(std::int64_t k) const {
  return masses_[static_cast<std::size_t>(k - 1)];
}

SparseVector PhiSelection::window_vector(std::int64_t k, bool absolute) const {
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(window_length(k)));
  for (std::int64_t l = window_start(k); l < window_end(k); ++l) {
    const double b = coefficient(l);
    entries.push_back(Entry{l, absolute ? std::abs(b) : b});
  }
  return SparseVector(std::move(entries));
}

PhiSelection phi_block_selection(const BlockBasis& basis, double phi, NormParams params,
                                 const Weights& w) {
  if (!(phi > 0.0 && phi < 1.0)) {
    throw std::invalid_argument("phi must lie in (0,1), got " + fmt_g(phi));
  }
  // Normal form: contiguous supports packed from index 1.
  std::int64_t expect = 1;
  for (std::int64_t n = 1; n <= basis.size(); ++n) {
    const SparseVector& b = basis.block(n);
    if (b.first_index() != expect || b.last_index() - b.first_index() + 1 != b.support_size()) {
      throw std::invalid_argument("basis must be in normal form (block " + std::to_string(n) +
                                  " is not packed contiguously); run block_normal_form first");
    }
    expect = b.last_index() + 1;
  }
  for (std::int64_t n = 1; n <= basis.size(); ++n) {
    const double norm = garling_norm(basis.block(n), params, w);
    if (std::abs(norm - 1.0) > 1e-9) {
      throw std::invalid_argument("blocks must be normalized: block " + std::to_string(n) +
                                  " has Garling norm " + fmt_g(norm));
    }
  }

  std::vector<double> max_power(static_cast<std::size_t>(basis.size()));
  for (std::int64_t n = 1; n <= basis.size(); ++n) {
    max_power[static_cast<std::size_t>(n - 1)] =
        detail::modulus_power(basis.block(n).max_modulus(), params.p());
  }

  std::vector<std::int64_t> starts{1};
  std::vector<double> coeffs;
  std::vector<std::int64_t> chosen;
  std::vector<std::int64_t> source_starts;

  const double half_gap = (1.0 - phi) / 2.0;
  std::int64_t q = 1;
  std::int64_t h_prev = 0;
  std::int64_t last_required_length = -1;
  double last_threshold = -1.0;

  while (true) {
    std::int64_t j = 0;
    for (std::int64_t cand = 1; cand + q <= w.length(); ++cand) {
      if (w.prefix_sum(cand + q) - w.prefix_sum(cand) < half_gap) {
        j = cand;
        break;
      }
    }
    if (j == 0) break;  // weight prefix exhausted
    const double threshold = half_gap / static_cast<double>(j);
    last_required_length = j + q;
    last_threshold = threshold;

    std::int64_t h = 0;
    for (std::int64_t cand = h_prev + 1; cand <= basis.size(); ++cand) {
      const SparseVector& b = basis.block(cand);
      if (b.support_size() > j + q && max_power[static_cast<std::size_t>(cand - 1)] < threshold) {
        h = cand;
        break;
      }
    }
    if (h == 0) break;  // no admissible block remains

    const SparseVector& b = basis.block(h);
    const std::int64_t len = b.support_size();
    if (q + len - 1 > w.length()) break;  // mass not attestable within the prefix

    for (const Entry& e : b.entries()) coeffs.push_back(e.value);
    starts.push_back(q + len);
    chosen.push_back(h);
    source_starts.push_back(b.first_index());
    q += len;
    h_prev = h;
  }

  if (chosen.empty()) {
    std::string msg = "phi-selection exhausted before the first window";
    if (last_required_length >= 0) {
      msg += ": needs a block of length > " + std::to_string(last_required_length) +
             " with max |coefficient|^p < " + fmt_g(last_threshold);
    } else {
      msg += ": no j with a weight run below " + fmt_g(half_gap) +
             " fits the materialized prefix";
    }
    throw selection_exhausted(msg);
  }

  return PhiSelection(phi, std::move(starts), std::move(coeffs), std::move(chosen),
                      std::move(source_starts), params, w);
}

ProjectionOperator::ProjectionOperator(PhiSelection selection, NormParams params,
                                       const Weights& w)
    : selection_(std::move(selection)), p_(params.p()) {
  const std::int64_t total = selection_.window_end(selection_.window_count()) - 1;
  if (total > w.length()) {
    throw std::out_of_range("projection spans positions up to " + std::to_string(total) +
                            ", weight prefix has " + std::to_string(w.length()));
  }
  dual_.resize(static_cast<std::size_t>(total));
  znorms_.resize(static_cast<std::size_t>(selection_.window_count()));
  for (std::int64_t k = 1; k <= selection_.window_count(); ++k) {
    const double mass = selection_.mass(k);
    for (std::int64_t l = selection_.window_start(k); l < selection_.window_end(k); ++l) {
      const double b = std::abs(selection_.coefficient(l));
      dual_[static_cast<std::size_t>(l - 1)] =
          detail::modulus_power(b, p_ - 1.0) * w.at(l) / mass;
    }
    const std::span<const double> slice =
        selection_.coefficients().subspan(
            static_cast<std::size_t>(selection_.window_start(k) - 1),
            static_cast<std::size_t>(selection_.window_length(k)));
    znorms_[static_cast<std::size_t>(k - 1)] = garling_norm_values(slice, params, w);
  }
}

double ProjectionOperator::z_norm(std::int64_t k) const {
  return znorms_[static_cast<std::size_t>(k - 1)];
}

ProjectionOperator build_projection(PhiSelection selection, NormParams params,
                                    const Weights& w) {
  return ProjectionOperator(std::move(selection), params, w);
}

std::vector<double> projection_window_coefficients(const ProjectionOperator& proj,
                                                   const SparseVector& x, bool composed) {
  const PhiSelection& sel = proj.selection();
  const std::int64_t count = sel.window_count();
  std::vector<detail::CompensatedSum> acc(static_cast<std::size_t>(count));
  for (const Entry& e : x.entries()) {
    // Locate the window (plain) or source run (composed) holding this index.
    std::int64_t lo = 1;
    std::int64_t hi = count;
    std::int64_t k = 0;
    while (lo <= hi) {
      const std::int64_t mid = (lo + hi) / 2;
      const std::int64_t begin = composed ? sel.source_start(mid) : sel.window_start(mid);
      const std::int64_t end = begin + sel.window_length(mid);
      if (e.index < begin) {
        hi = mid - 1;
      } else if (e.index >= end) {
        lo = mid + 1;
      } else {
        k = mid;
        break;
      }
    }
    if (k == 0) continue;
    const std::int64_t offset =
        e.index - (composed ? sel.source_start(k) : sel.window_start(k));
    const std::int64_t l = sel.window_start(k) + offset;
    double term = e.value * proj.dual_coefficient(l);
    if (composed && sel.coefficient(l) < 0.0) term = -term;
    acc[static_cast<std::size_t>(k - 1)].add(term);
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = acc[static_cast<std::size_t>(k)].value();
  return out;
}

namespace {

SparseVector assemble_projection(const ProjectionOperator& proj, std::span<const double> c,
                                 bool composed) {
  const PhiSelection& sel = proj.selection();
  std::vector<Entry> entries;
  for (std::int64_t k = 1; k <= sel.window_count(); ++k) {
    const double ck = c[static_cast<std::size_t>(k - 1)];
    if (ck == 0.0) continue;
    const std::int64_t out_start = composed ? sel.source_start(k) : sel.window_start(k);
    for (std::int64_t off = 0; off < sel.window_length(k); ++off) {
      const double b = sel.coefficient(sel.window_start(k) + off);
      const double v = composed ? ck * b : ck * std::abs(b);
      entries.push_back(Entry{out_start + off, v});
    }
  }
  return SparseVector(std::move(entries));
}

}  // namespace

SparseVector apply_projection(const ProjectionOperator& proj, const SparseVector& x) {
  return assemble_projection(proj, projection_window_coefficients(proj, x, false), false);
}

SparseVector apply_projection_composed(const ProjectionOperator& proj, const SparseVector& x) {
  return assemble_projection(proj, projection_window_coefficients(proj, x, true), true);
}

ProjectionProbeReport probe_projection_norm(const ProjectionOperator& proj, NormParams params,
                                            const Weights& w, std::int64_t trials,
                                            std::uint64_t seed, std::int64_t index_limit,
                                            std::int64_t max_probe_support) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (max_probe_support < 1 || max_probe_support > w.length()) {
    throw std::invalid_argument("probe support must fit the weight prefix");
  }
  detail::Rng rng(seed);
  double best = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const std::int64_t want = rng.uniform_int(1, max_probe_support);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(want));
    for (auto& i : idx) i = rng.uniform_int(1, index_limit);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::vector<Entry> entries;
    entries.reserve(idx.size());
    for (const std::int64_t i : idx) entries.push_back(Entry{i, rng.uniform(-1.0, 1.0)});
    const SparseVector x(std::move(entries));
    if (x.empty()) continue;
    const double xnorm = garling_norm(x, params, w);
    if (xnorm == 0.0) continue;
    double pnorm;
    if (proj.window_count() == 1) {
      // Px = c_1 z~_1; homogeneity avoids materializing the window.
      const std::vector<double> c = projection_window_coefficients(proj, x, false);
      pnorm = std::abs(c[0]) * proj.z_norm(1);
    } else {
      pnorm = garling_norm(apply_projection(proj, x), params, w);
    }
    best = std::max(best, pnorm / xnorm);
  }
  return ProjectionProbeReport{best, 1.0 / proj.phi(), trials, seed};
}

LinfBlockFamily linf_block_vectors(std::int64_t n, std::int64_t k, const Weights& w,
                                   NormParams params) {
  if (n < 1 || k < 1) throw std::invalid_argument("window width and count must be positive");
  if (n * k > w.length()) {
    throw std::out_of_range("linf block vectors need weights of length " +
                            std::to_string(n * k) + ", have " + std::to_string(w.length()));
  }
  const double coef = 1.0 / detail::power_root(w.prefix_sum(n), params.p());
  LinfBlockFamily out;
  out.vectors.reserve(static_cast<std::size_t>(k));
  for (std::int64_t m = 1; m <= k; ++m) {
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = (m - 1) * n + 1; i <= m * n; ++i) entries.push_back(Entry{i, coef});
    out.vectors.push_back(SparseVector(std::move(entries)));
  }
  out.upper_factor = detail::power_root(w.prefix_sum(n * k) / w.prefix_sum(n), params.p());
  return out;
}

}  // namespace garling
