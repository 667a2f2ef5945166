/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qlc/qlc.hpp"

namespace testutil {

inline qlc::FockVector vec(
    std::initializer_list<std::pair<const char*, qlc::Amplitude>> items) {
  std::vector<qlc::Term> terms;
  for (const auto& [s, a] : items) terms.push_back({qlc::BitString::parse(s), a});
  return qlc::FockVector::from_terms(terms);
}

inline qlc::FockVector state(
    std::initializer_list<std::pair<const char*, qlc::Amplitude>> items) {
  return vec(items).normalized();
}

inline qlc::FockVector ket(const char* s) {
  return qlc::FockVector::basis(qlc::BitString::parse(s));
}

inline std::string fixture_path(const std::string& name) {
  return std::string(QLC_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline qlc::Ensemble load_ensemble(const std::string& fixture) {
  std::ifstream in(fixture_path(fixture));
  return qlc::io::parse_ensemble(in);
}

// --- random generators -------------------------------------------------------

inline double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline qlc::Amplitude random_amplitude(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  return {gauss(rng), gauss(rng)};
}

inline qlc::BitString random_string(std::mt19937_64& rng, int min_len, int max_len) {
  int len = min_len + static_cast<int>(rng() % (max_len - min_len + 1));
  std::uint32_t bits = len == 0 ? 0u : static_cast<std::uint32_t>(rng()) &
                                           ((1u << len) - 1);
  return qlc::BitString(bits, len);
}

/// Distinct random strings, optionally including the empty string.
inline std::vector<qlc::BitString> random_support(std::mt19937_64& rng, int count,
                                                  int max_len, bool allow_eps = false) {
  std::set<qlc::BitString> support;
  while (static_cast<int>(support.size()) < count) {
    int min_len = allow_eps && support.empty() && uniform(rng) < 0.15 ? 0 : 1;
    support.insert(random_string(rng, min_len, max_len));
  }
  return {support.begin(), support.end()};
}

/// Random unit vector over the given support strings.
inline qlc::FockVector random_state_on(std::mt19937_64& rng,
                                       const std::vector<qlc::BitString>& support) {
  while (true) {
    std::vector<qlc::Term> terms;
    for (qlc::BitString s : support)
      if (uniform(rng) < 0.8) terms.push_back({s, random_amplitude(rng)});
    qlc::FockVector v = qlc::FockVector::from_terms(terms);
    if (!v.is_zero()) return v.normalized();
  }
}

struct EnsembleShape {
  int max_states = 5;
  int max_axes = 4;
  int max_len = 6;
  bool allow_eps = false;
};

/// Random mixture: a few support strings shared by all members, random
/// complex amplitudes, weights bounded away from zero.
inline qlc::Ensemble random_ensemble(std::mt19937_64& rng,
                                     const EnsembleShape& shape = {}) {
  int axes = 1 + static_cast<int>(rng() % shape.max_axes);
  auto support = random_support(rng, axes, shape.max_len, shape.allow_eps);
  int count = 1 + static_cast<int>(rng() % shape.max_states);
  std::vector<qlc::WeightedState> items;
  std::vector<double> weights(count);
  double total = 0;
  for (int i = 0; i < count; ++i) {
    weights[i] = 0.05 + uniform(rng);
    total += weights[i];
  }
  for (int i = 0; i < count; ++i)
    items.push_back({weights[i] / total, random_state_on(rng, support)});
  // Exactness of the weight sum is the parser's job; mirror it here.
  double sum = 0;
  for (auto& it : items) sum += it.probability;
  items.back().probability += 1.0 - sum;
  return qlc::Ensemble(std::move(items));
}

/// Random orthonormal rotation of a basis (Gaussian matrix + Gram-Schmidt).
inline std::vector<qlc::FockVector> random_rebasing(
    std::mt19937_64& rng, const std::vector<qlc::FockVector>& basis) {
  const int d = static_cast<int>(basis.size());
  std::vector<std::vector<qlc::Amplitude>> rows(d, std::vector<qlc::Amplitude>(d));
  for (auto& row : rows)
    for (auto& x : row) x = random_amplitude(rng);
  // Orthonormalize the rows.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      qlc::Amplitude dot{};
      for (int k = 0; k < d; ++k) dot += std::conj(rows[j][k]) * rows[i][k];
      for (int k = 0; k < d; ++k) rows[i][k] -= dot * rows[j][k];
    }
    double norm = 0;
    for (int k = 0; k < d; ++k) norm += std::norm(rows[i][k]);
    norm = std::sqrt(norm);
    for (int k = 0; k < d; ++k) rows[i][k] /= norm;
  }
  std::vector<qlc::FockVector> out;
  for (int i = 0; i < d; ++i) {
    qlc::FockVector v;
    for (int k = 0; k < d; ++k) v = v + basis[k].scaled(rows[i][k]);
    out.push_back(v);
  }
  return out;
}

}  // namespace testutil
