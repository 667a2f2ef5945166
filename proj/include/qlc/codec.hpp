/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qlc/decomposition.hpp"
#include "qlc/prefix.hpp"

namespace qlc {

/// Codeword length for a conditional average probability: ceil(-log2 p),
/// never shorter than 1 (there is no empty codeword). The small slack keeps
/// integer-valued logs from rounding up.
inline int code_length_for(double cond_avg_prob) {
  if (cond_avg_prob <= 0)
    throw std::invalid_argument("probability must be positive");
  return std::max(1, static_cast<int>(std::ceil(-std::log2(cond_avg_prob) - kTolerance)));
}

/// Canonical prefix code for a (length, multiplicity) profile: allocate in
/// order of ascending length, each codeword the numerically smallest one not
/// prefixed by an earlier choice. Output order matches the flattened input.
inline std::vector<BitString> assign_codewords(
    const std::vector<std::pair<int, int>>& profile) {
  std::vector<std::pair<int, std::size_t>> flat;  // (length, output position)
  std::size_t position = 0;
  int longest = 0;
  for (auto [len, mult] : profile) {
    if (len < 1 || len > kMaxStringLength)
      throw std::invalid_argument("codeword length out of range");
    if (mult < 0) throw std::invalid_argument("negative multiplicity");
    longest = std::max(longest, len);
    for (int k = 0; k < mult; ++k) flat.push_back({len, position++});
  }
  if (flat.empty()) throw std::invalid_argument("no codewords requested");

  std::uint64_t used = 0;
  for (auto [len, pos] : flat) used += std::uint64_t{1} << (longest - len);
  if (used > (std::uint64_t{1} << longest))
    throw std::invalid_argument("Kraft inequality violated");

  std::stable_sort(flat.begin(), flat.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<BitString> out(flat.size());
  std::uint32_t code = 0;
  int prev = flat.front().first;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (i > 0) {
      code = (code + 1) << (flat[i].first - prev);
      prev = flat[i].first;
    }
    out[flat[i].second] = BitString(code, prev);
  }
  return out;
}

// Unitary lossless code induced by a decomposition: each part of dimension d
// and conditional probability p contributes d basis vectors mapped to
// distinct codewords of length ceil(-log2 p). The image basis is classical,
// orthonormal and prefix free, hence condensable.
struct LosslessCode {
  std::vector<FockVector> source_basis;  // grouped by part
  std::vector<BitString> codewords;      // parallel to source_basis
  std::vector<int> part_index;           // part of each basis vector, 0-based
  std::vector<int> part_lengths;         // codeword length per part
};

inline LosslessCode build_code(const Decomposition& d) {
  std::vector<std::pair<int, int>> profile;
  profile.reserve(d.parts.size());
  for (const auto& part : d.parts)
    profile.push_back({code_length_for(part.cond_avg_prob), part.subspace.dim()});

  LosslessCode code;
  code.codewords = assign_codewords(profile);
  for (std::size_t p = 0; p < d.parts.size(); ++p) {
    code.part_lengths.push_back(profile[p].first);
    for (const auto& b : d.parts[p].subspace.basis()) {
      code.source_basis.push_back(b);
      code.part_index.push_back(static_cast<int>(p));
    }
  }
  return code;
}

namespace detail {

// Rewrites psi in an orthonormal basis, mapping basis vector k to the ket
// |codewords[k]>. psi must lie in the span of the basis.
inline FockVector apply_isometry(const std::vector<FockVector>& basis,
                                 const std::vector<BitString>& codewords,
                                 const FockVector& psi, const char* out_of_domain) {
  FockVector residual = psi;
  std::vector<Term> out;
  out.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Amplitude c = inner_product(basis[k], psi);
    residual = residual - basis[k].scaled(c);
    out.push_back({codewords[k], c});
  }
  if (residual.norm() > kTolerance) throw std::invalid_argument(out_of_domain);
  return FockVector::from_terms(out);
}

}  // namespace detail

inline FockVector encode(const LosslessCode& code, const FockVector& psi) {
  return detail::apply_isometry(code.source_basis, code.codewords, psi,
                                "state not in code domain");
}

inline FockVector decode(const LosslessCode& code, const FockVector& encoded) {
  FockVector out;
  for (const auto& t : encoded.terms()) {
    auto it = std::find(code.codewords.begin(), code.codewords.end(), t.str);
    if (it == code.codewords.end())
      throw std::invalid_argument("state not in code image");
    out = out + code.source_basis[it - code.codewords.begin()].scaled(t.amp);
  }
  return out;
}

inline double expected_base_length(const LosslessCode& code, const Ensemble& e) {
  double sum = 0;
  for (const auto& it : e.items())
    sum += it.probability * base_length(encode(code, it.state));
  return sum;
}

struct TheoremReport {
  double entropy;
  double expected_length;
  bool lower_bound_ok;  // S <= E[L]
  bool upper_bound_ok;  // E[L] <= S + 1
};

inline TheoremReport check_theorem_bounds(const LosslessCode& code,
                                          const Ensemble& e,
                                          const Decomposition& d) {
  TheoremReport r{};
  r.entropy = von_neumann_entropy(d);
  r.expected_length = expected_base_length(code, e);
  r.lower_bound_ok = r.entropy <= r.expected_length + kTolerance;
  r.upper_bound_ok = r.expected_length <= r.entropy + 1.0 + kTolerance;
  return r;
}

struct OptimalCodeSearch {
  double expected_length;
  std::vector<int> part_dims;
  std::vector<int> lengths;
};

/// Exhaustive search over all decompositions of the ensemble span into
/// orthogonal subset-span parts, and all Kraft-satisfying integer length
/// assignments up to length_cap, for the minimal expected base length. Only
/// feasible for small spans; the caps guard the search space.
inline OptimalCodeSearch brute_force_optimal(const Ensemble& e, int dim_cap = 3,
                                             int length_cap = 4) {
  const int n = static_cast<int>(e.items().size());
  if (n > kDefaultStateCap)
    throw std::invalid_argument("ensemble exceeds the brute force cap");
  std::vector<FockVector> states;
  states.reserve(n);
  for (const auto& it : e.items()) states.push_back(it.state);
  const int full_dim = Subspace::span_of(states).dim();
  if (full_dim > dim_cap)
    throw std::invalid_argument("ensemble span exceeds the brute force cap");

  std::optional<OptimalCodeSearch> best;
  std::vector<Subspace> parts;

  auto evaluate = [&]() {
    const int m = static_cast<int>(parts.size());
    // has_component[j][i]: state j overlaps part i.
    std::vector<std::vector<char>> has_component(n, std::vector<char>(m));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < m; ++i)
        has_component[j][i] =
            parts[i].project(e.items()[j].state).norm() > kTolerance ? 1 : 0;

    std::vector<int> lengths(m, 1);
    while (true) {
      std::uint64_t used = 0;
      for (int i = 0; i < m; ++i)
        used += static_cast<std::uint64_t>(parts[i].dim()) << (length_cap - lengths[i]);
      if (used <= (std::uint64_t{1} << length_cap)) {
        double expected = 0;
        for (int j = 0; j < n; ++j) {
          int longest = 0;
          for (int i = 0; i < m; ++i)
            if (has_component[j][i]) longest = std::max(longest, lengths[i]);
          expected += e.items()[j].probability * longest;
        }
        if (!best || expected < best->expected_length - 1e-12) {
          OptimalCodeSearch found;
          found.expected_length = expected;
          for (const auto& p : parts) found.part_dims.push_back(p.dim());
          found.lengths = lengths;
          best = std::move(found);
        }
      }
      int i = m - 1;
      while (i >= 0 && lengths[i] == length_cap) lengths[i--] = 1;
      if (i < 0) break;
      ++lengths[i];
    }
  };

  std::function<void(const Subspace&)> search = [&](const Subspace& taken) {
    if (taken.dim() == full_dim) {
      evaluate();
      return;
    }
    std::vector<Subspace> seen;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<FockVector> residuals;
      for (int j = 0; j < n; ++j)
        if (mask >> j & 1) {
          FockVector r = e.items()[j].state - taken.project(e.items()[j].state);
          if (r.norm() > kTolerance) residuals.push_back(std::move(r));
        }
      if (residuals.empty()) continue;
      Subspace cand = Subspace::span_of(residuals);
      bool duplicate = false;
      for (const auto& s : seen)
        if (detail::same_subspace(s, cand)) {
          duplicate = true;
          break;
        }
      if (duplicate) continue;
      seen.push_back(cand);
      parts.push_back(cand);
      search(detail::direct_sum(taken, cand));
      parts.pop_back();
    }
  };
  search(Subspace{});

  if (!best) throw std::logic_error("brute force search found no code");
  return *best;
}

// Side-channel message for a state of known identity: a classical
// self-delimiting header carrying the base length L, then the first L qubits
// of the zero-extended form. Header: k = ceil(log2 L) ones, a zero, then k
// bits holding L mod 2^k (a zero field means exactly 2^k; L = 1 gives the
// single bit "0").
struct SideChannelMessage {
  BitString header_bits;
  RegisterVector payload;
};

inline SideChannelMessage make_side_channel(const FockVector& psi) {
  int len = base_length(psi);
  if (len < 1)
    throw std::invalid_argument("side channel requires base length at least 1");
  int k = 0;
  while ((1 << k) < len) ++k;
  std::uint32_t field = static_cast<std::uint32_t>(len) & ((1u << k) - 1);
  std::uint32_t ones = k == 0 ? 0u : ((1u << k) - 1);
  BitString header(ones << (k + 1) | field, 2 * k + 1);
  return {header, zero_extended_form(psi, len)};
}

struct HeaderParse {
  int base_length;
  std::size_t bits_consumed;
};

/// Parses one length header starting at stream[pos]. Rejects non-canonical
/// encodings (a field value that would itself fit a shorter header).
inline HeaderParse parse_length_header(const std::vector<int>& stream,
                                       std::size_t pos = 0) {
  std::size_t k = 0;
  while (pos + k < stream.size() && stream[pos + k] == 1) ++k;
  if (k > 5 || pos + k >= stream.size() || pos + 2 * k + 1 > stream.size())
    throw std::runtime_error("malformed side-channel header");
  std::uint32_t field = 0;
  for (std::size_t i = 0; i < k; ++i)
    field = field << 1 | static_cast<std::uint32_t>(stream[pos + k + 1 + i] ? 1 : 0);
  if (k > 0 && field != 0 && (field >> (k - 1)) == 0)
    throw std::runtime_error("malformed side-channel header");
  int len = field == 0 ? (1 << k) : static_cast<int>(field);
  if (len > kMaxStringLength)
    throw std::runtime_error("malformed side-channel header");
  return {len, 2 * k + 1};
}

inline std::vector<int> to_bits(BitString s) {
  std::vector<int> bits(static_cast<std::size_t>(s.length()));
  for (int i = 0; i < s.length(); ++i) bits[i] = s.bit(i);
  return bits;
}

/// Validates the header against the payload width and returns the payload
/// contents (the zero-extended register state actually transmitted; the
/// unpadded original needs its length profile, which the header does not
/// carry).
inline FockVector parse_side_channel(const SideChannelMessage& msg) {
  HeaderParse parsed = parse_length_header(to_bits(msg.header_bits));
  if (parsed.bits_consumed != static_cast<std::size_t>(msg.header_bits.length()) ||
      parsed.base_length != msg.payload.width())
    throw std::runtime_error("malformed side-channel header");
  return msg.payload.vec();
}

}  // namespace qlc
