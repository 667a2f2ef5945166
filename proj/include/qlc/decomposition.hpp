/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlc/fock.hpp"

namespace qlc {

struct WeightedState {
  double probability;
  FockVector state;
};

// A finite mixture of pure states. Weights are positive and sum to 1; the
// states are unit norm but need not be orthogonal or distinct.
class Ensemble {
 public:
  explicit Ensemble(std::vector<WeightedState> items) : items_(std::move(items)) {
    if (items_.empty())
      throw std::invalid_argument("ensemble must contain at least one state");
    double total = 0;
    for (const auto& it : items_) {
      if (it.probability <= 0)
        throw std::invalid_argument("ensemble weights must be positive");
      if (!it.state.is_state())
        throw std::invalid_argument("ensemble states must be normalized");
      total += it.probability;
    }
    if (std::abs(total - 1.0) > kTolerance)
      throw std::invalid_argument("ensemble weights must sum to 1");
  }

  const std::vector<WeightedState>& items() const { return items_; }

 private:
  std::vector<WeightedState> items_;
};

// Finite-dimensional subspace held as an orthonormal basis. The default
// constructed value is the zero subspace.
class Subspace {
 public:
  Subspace() = default;

  /// Gram-Schmidt span; vectors with residual norm <= kTolerance are
  /// dependent and dropped.
  static Subspace span_of(const std::vector<FockVector>& vectors) {
    Subspace s;
    for (const auto& v : vectors) {
      FockVector r = v;
      for (const auto& b : s.basis_) r = r - b.scaled(inner_product(b, r));
      if (r.norm() > kTolerance) s.basis_.push_back(r.normalized());
    }
    return s;
  }

  static Subspace from_orthonormal(std::vector<FockVector> basis) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j) {
        double expected = i == j ? 1.0 : 0.0;
        if (std::abs(inner_product(basis[i], basis[j]) - expected) > kTolerance)
          throw std::invalid_argument("basis is not orthonormal");
      }
    Subspace s;
    s.basis_ = std::move(basis);
    return s;
  }

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<FockVector>& basis() const { return basis_; }

  FockVector project(const FockVector& v) const {
    FockVector p;
    for (const auto& b : basis_) p = p + b.scaled(inner_product(b, v));
    return p;
  }

 private:
  std::vector<FockVector> basis_;
};

inline bool lies_within(const FockVector& psi, const Subspace& x) {
  return (psi - x.project(psi)).norm() <= kTolerance;
}

/// P(X): total weight of ensemble members lying entirely within X.
inline double subspace_probability(const Ensemble& e, const Subspace& x) {
  double p = 0;
  for (const auto& it : e.items())
    if (lies_within(it.state, x)) p += it.probability;
  return p;
}

/// Pbar(X) = P(X) / dim X.
inline double average_probability(const Ensemble& e, const Subspace& x) {
  if (x.dim() == 0)
    throw std::invalid_argument("average probability needs a nonzero subspace");
  return subspace_probability(e, x) / x.dim();
}

namespace detail {

inline void require_orthogonal(const Subspace& x, const Subspace& y) {
  for (const auto& bx : x.basis())
    for (const auto& by : y.basis())
      if (std::abs(inner_product(bx, by)) > kTolerance)
        throw std::invalid_argument("subspaces are not orthogonal");
}

// Direct sum of orthogonal subspaces; the caller guarantees orthogonality.
inline Subspace direct_sum(const Subspace& x, const Subspace& y) {
  std::vector<FockVector> basis = x.basis();
  basis.insert(basis.end(), y.basis().begin(), y.basis().end());
  return Subspace::from_orthonormal(std::move(basis));
}

inline bool same_subspace(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& v : a.basis())
    if (!lies_within(v, b)) return false;
  return true;
}

}  // namespace detail

/// P(X : Y): weight of members inside X + Y but not inside Y. With Y the
/// zero subspace this reduces to subspace_probability.
inline double relative_probability(const Ensemble& e, const Subspace& x,
                                   const Subspace& y) {
  detail::require_orthogonal(x, y);
  Subspace joint = detail::direct_sum(y, x);
  double p = 0;
  for (const auto& it : e.items())
    if (lies_within(it.state, joint) && !lies_within(it.state, y))
      p += it.probability;
  return p;
}

inline double relative_average_probability(const Ensemble& e, const Subspace& x,
                                           const Subspace& y) {
  if (x.dim() == 0)
    throw std::invalid_argument("average probability needs a nonzero subspace");
  return relative_probability(e, x, y) / x.dim();
}

struct DecompositionPart {
  Subspace subspace;
  double cond_avg_prob;
};

// Ordered decomposition of the ensemble span into orthogonal parts of
// strictly decreasing conditional average probability. The parts define a
// density operator that is diagonal per part: eigenvalue cond_avg_prob with
// multiplicity dim.
struct Decomposition {
  std::vector<DecompositionPart> parts;
  bool tie_warning = false;

  std::vector<std::pair<double, int>> density_eigenvalues() const {
    std::vector<std::pair<double, int>> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back({p.cond_avg_prob, p.subspace.dim()});
    return out;
  }

  double trace() const {
    double t = 0;
    for (const auto& p : parts) t += p.cond_avg_prob * p.subspace.dim();
    return t;
  }
};

inline constexpr int kDefaultStateCap = 12;

/// Greedy decomposition: at each stage pick, among spans of residual subsets
/// of the ensemble, the subspace of maximal conditional average probability
/// relative to what is already taken. Strict maximality can fail when
/// distinct subspaces tie; ties resolve toward larger dimension, then
/// earliest subset order, and set tie_warning.
inline Decomposition decompose(const Ensemble& e, int max_states = kDefaultStateCap) {
  const int n = static_cast<int>(e.items().size());
  if (n > max_states)
    throw std::invalid_argument("decompose supports at most " +
                                std::to_string(max_states) + " ensemble states (got " +
                                std::to_string(n) + ")");

  Decomposition out;
  Subspace taken;

  auto candidate_span = [&](unsigned mask) {
    std::vector<FockVector> residuals;
    for (int j = 0; j < n; ++j)
      if (mask >> j & 1) {
        const FockVector& psi = e.items()[j].state;
        FockVector r = psi - taken.project(psi);
        if (r.norm() > kTolerance) residuals.push_back(std::move(r));
      }
    return Subspace::span_of(residuals);
  };

  while (true) {
    std::vector<char> inside(n);
    for (int j = 0; j < n; ++j)
      inside[j] = lies_within(e.items()[j].state, taken) ? 1 : 0;

    struct Scored {
      double score;
      int dim;
      unsigned mask;
    };
    std::vector<Scored> scored;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Subspace cand = candidate_span(mask);
      if (cand.dim() == 0) continue;
      Subspace joint = detail::direct_sum(taken, cand);
      double p = 0;
      for (int j = 0; j < n; ++j)
        if (!inside[j] && lies_within(e.items()[j].state, joint))
          p += e.items()[j].probability;
      scored.push_back({p / cand.dim(), cand.dim(), mask});
    }
    if (scored.empty()) break;

    double top_score = scored.front().score;
    for (const auto& s : scored) top_score = std::max(top_score, s.score);
    int top_dim = 0;
    for (const auto& s : scored)
      if (s.score >= top_score - kTolerance) top_dim = std::max(top_dim, s.dim);
    const Scored* winner = nullptr;
    for (const auto& s : scored)
      if (s.score >= top_score - kTolerance && s.dim == top_dim) {
        winner = &s;
        break;
      }

    Subspace winner_span = candidate_span(winner->mask);
    for (const auto& s : scored)
      if (s.score >= top_score - kTolerance && s.mask != winner->mask &&
          !detail::same_subspace(candidate_span(s.mask), winner_span)) {
        out.tie_warning = true;
        break;
      }

    out.parts.push_back({winner_span, winner->score});
    taken = detail::direct_sum(taken, winner_span);
  }

  // Merge adjacent parts with equal conditional probability into one
  // eigenspace (kept for completeness; the dimension preference above
  // already absorbs ties in practice).
  std::vector<DecompositionPart> merged;
  for (auto& part : out.parts) {
    if (!merged.empty() &&
        std::abs(merged.back().cond_avg_prob - part.cond_avg_prob) <= kTolerance) {
      DecompositionPart& prev = merged.back();
      double d1 = prev.subspace.dim(), d2 = part.subspace.dim();
      std::vector<FockVector> basis = prev.subspace.basis();
      basis.insert(basis.end(), part.subspace.basis().begin(),
                   part.subspace.basis().end());
      prev.cond_avg_prob =
          (prev.cond_avg_prob * d1 + part.cond_avg_prob * d2) / (d1 + d2);
      prev.subspace = Subspace::from_orthonormal(std::move(basis));
    } else {
      merged.push_back(std::move(part));
    }
  }
  out.parts = std::move(merged);

  for (const auto& it : e.items())
    if (!lies_within(it.state, taken))
      throw std::logic_error("decomposition failed to cover the ensemble span");
  return out;
}

/// S(rho) = -sum over parts of dim * p * log2 p; the entropy of the
/// decomposition's density operator.
inline double von_neumann_entropy(const Decomposition& d) {
  double s = 0;
  for (const auto& part : d.parts)
    if (part.cond_avg_prob > kTolerance)
      s -= part.subspace.dim() * part.cond_avg_prob * std::log2(part.cond_avg_prob);
  return s;
}

}  // namespace qlc
