/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qlc/codec.hpp"

namespace qlc {

inline constexpr int kDefaultChannelQubitCap = 16;

// Joint register of the always-open swap channel, laid out as
// alice | cell | bob. Step i swaps alice[i] into the cell and the cell into
// bob[i], so the channel needs no end-of-message signal: base-length-l
// content arrives after l steps, padding zeros ride along for free.
struct ChannelState {
  int alice_width;
  int bob_width;
  int step;
  RegisterVector joint;
};

namespace detail {

inline RegisterVector swap_qubits(const RegisterVector& r, int i, int j) {
  std::vector<Term> out;
  out.reserve(r.vec().terms().size());
  for (const auto& t : r.vec().terms()) {
    int bi = t.str.bit(i), bj = t.str.bit(j);
    out.push_back({t.str.with_bit(i, bj).with_bit(j, bi), t.amp});
  }
  return RegisterVector(r.width(), FockVector::from_terms(out));
}

inline RegisterVector zero_register(int width) {
  return RegisterVector(width, FockVector::basis(BitString(0, width)));
}

// Re-pads register content to a new width; truncation is only valid when
// every branch is zero on the removed tail.
inline RegisterVector repad(const RegisterVector& r, int width) {
  std::vector<Term> out;
  out.reserve(r.vec().terms().size());
  for (const auto& t : r.vec().terms()) {
    if (width >= r.width()) {
      out.push_back({t.str.padded_to(width), t.amp});
    } else {
      if (t.str.substr(width, r.width() - width).bits() != 0)
        throw std::invalid_argument("register too small");
      out.push_back({t.str.substr(0, width), t.amp});
    }
  }
  return RegisterVector(width, FockVector::from_terms(out));
}

}  // namespace detail

inline ChannelState channel_init(const RegisterVector& message, int bob_width,
                                 int qubit_cap = kDefaultChannelQubitCap) {
  if (bob_width < 0) throw std::invalid_argument("bob register width negative");
  int total = message.width() + 1 + bob_width;
  if (total > qubit_cap)
    throw std::invalid_argument("channel register exceeds the qubit cap");
  RegisterVector joint =
      tensor(tensor(message, detail::zero_register(1)), detail::zero_register(bob_width));
  return {message.width(), bob_width, 0, joint};
}

inline ChannelState channel_step(const ChannelState& s) {
  if (s.step >= s.alice_width || s.step >= s.bob_width)
    throw std::invalid_argument("channel steps exhausted");
  int cell = s.alice_width;
  RegisterVector joint = detail::swap_qubits(s.joint, s.step, cell);
  joint = detail::swap_qubits(joint, cell, cell + 1 + s.step);
  return {s.alice_width, s.bob_width, s.step + 1, joint};
}

/// Appends another condensed message to Alice's untouched suffix
/// mid-transmission and grows Bob's register to match, without disturbing
/// qubits already sent.
inline ChannelState channel_append(const ChannelState& s, const RegisterVector& extra,
                                   int qubit_cap = kDefaultChannelQubitCap) {
  int total = s.joint.width() + 2 * extra.width();
  if (total > qubit_cap)
    throw std::invalid_argument("channel register exceeds the qubit cap");
  int a = s.alice_width, b = s.bob_width;
  std::vector<Term> out;
  out.reserve(s.joint.vec().terms().size() * extra.vec().terms().size());
  for (const auto& t : s.joint.vec().terms())
    for (const auto& x : extra.vec().terms()) {
      BitString alice = t.str.substr(0, a).concat(x.str);
      BitString rest = t.str.substr(a, 1 + b).concat(BitString(0, extra.width()));
      out.push_back({alice.concat(rest), t.amp * x.amp});
    }
  return {a + extra.width(), b + extra.width(), s.step,
          RegisterVector(total, FockVector::from_terms(out))};
}

struct TransmitResult {
  ChannelState final_state;
  bool complete;  // Alice's register and the cell are zero on every branch
  std::optional<RegisterVector> bob_state;
  std::optional<double> fidelity;
};

inline TransmitResult transmit(const RegisterVector& message, int steps,
                               int bob_width = -1,
                               int qubit_cap = kDefaultChannelQubitCap) {
  if (bob_width < 0) bob_width = message.width();
  if (steps < 0 || steps > message.width() || steps > bob_width)
    throw std::invalid_argument("step count exceeds register widths");
  ChannelState s = channel_init(message, bob_width, qubit_cap);
  for (int i = 0; i < steps; ++i) s = channel_step(s);

  for (const auto& t : s.joint.vec().terms())
    if (t.str.substr(0, s.alice_width + 1).bits() != 0)
      return {std::move(s), false, std::nullopt, std::nullopt};

  std::vector<Term> bob;
  for (const auto& t : s.joint.vec().terms())
    bob.push_back({t.str.substr(s.alice_width + 1, s.bob_width), t.amp});
  RegisterVector bob_state(s.bob_width, FockVector::from_terms(bob));
  RegisterVector expected = detail::repad(message, bob_width);
  // The channel only permutes classical strings; a transferred message is
  // reproduced amplitude for amplitude, so fidelity 1 is exact.
  double fidelity = bob_state == expected
                        ? 1.0
                        : std::abs(inner_product(bob_state.vec(), expected.vec()));
  return {std::move(s), true, std::move(bob_state), fidelity};
}

// Code that is diagonal in the eigenbasis of the ensemble density operator:
// eigenvector of eigenvalue lambda gets ideal length -log2(lambda),
// realized as the integer ceil(-log2 lambda) (at least 1). Minimizing
// average length wants this basis; minimizing base length generally wants a
// different, coarser decomposition.
struct DiagonalCode {
  std::vector<double> eigenvalues;       // descending
  std::vector<FockVector> eigenvectors;  // phase-canonical, parallel
  std::vector<double> ideal_lengths;     // -log2(eigenvalue)
  std::vector<int> lengths;              // realized integer lengths
  std::vector<BitString> codewords;
};

inline DiagonalCode average_length_code(const Ensemble& e,
                                        int max_dim = kDefaultStateCap) {
  std::vector<FockVector> states;
  states.reserve(e.items().size());
  for (const auto& it : e.items()) states.push_back(it.state);
  Subspace span = Subspace::span_of(states);
  const int d = span.dim();
  if (d > max_dim)
    throw std::invalid_argument("ensemble span exceeds the diagonalization cap");

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& it : e.items()) {
    Eigen::VectorXcd c(d);
    for (int k = 0; k < d; ++k) c(k) = inner_product(span.basis()[k], it.state);
    rho += it.probability * (c * c.adjoint());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("density operator diagonalization failed");

  struct Mode {
    double value;
    FockVector vec;
  };
  std::vector<Mode> modes;
  for (int k = d - 1; k >= 0; --k) {
    double lambda = solver.eigenvalues()(k);
    if (lambda <= kTolerance) continue;  // states never reach null modes
    FockVector v;
    for (int j = 0; j < d; ++j)
      v = v + span.basis()[j].scaled(solver.eigenvectors()(j, k));
    modes.push_back({lambda, phase_canonicalized(v.normalized())});
  }
  auto term_order = [](const std::vector<Term>& a, const std::vector<Term>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (a[i].str != b[i].str) return a[i].str < b[i].str;
      if (a[i].amp.real() != b[i].amp.real()) return a[i].amp.real() < b[i].amp.real();
      if (a[i].amp.imag() != b[i].amp.imag()) return a[i].amp.imag() < b[i].amp.imag();
    }
    return a.size() < b.size();
  };
  std::stable_sort(modes.begin(), modes.end(), [&](const Mode& a, const Mode& b) {
    if (a.value > b.value + kTolerance) return true;
    if (b.value > a.value + kTolerance) return false;
    return term_order(a.vec.terms(), b.vec.terms());
  });

  DiagonalCode code;
  std::vector<std::pair<int, int>> profile;
  for (const auto& m : modes) {
    code.eigenvalues.push_back(m.value);
    code.eigenvectors.push_back(m.vec);
    double ideal = -std::log2(m.value);
    code.ideal_lengths.push_back(ideal);
    int len = std::max(1, static_cast<int>(std::ceil(ideal - kTolerance)));
    code.lengths.push_back(len);
    profile.push_back({len, 1});
  }
  code.codewords = assign_codewords(profile);
  return code;
}

inline FockVector encode_diagonal(const DiagonalCode& code, const FockVector& psi) {
  return detail::apply_isometry(code.eigenvectors, code.codewords, psi,
                                "state not in code domain");
}

enum class NoiseModel { erasure_flag, bit_flip };

struct NoiseConfig {
  double per_qubit_prob = 0.0;
  NoiseModel model = NoiseModel::erasure_flag;
  std::uint64_t seed = 0;
  int monte_carlo_samples = 0;
};

struct DisturbanceRow {
  int state_index;
  double weight;
  int base_len;
  double avg_len;
  double touch_prob;        // 1 - (1-p)^base_len
  double untouched_weight;  // sum |alpha_b|^2 (1-p)^l(b)
};

// Per-qubit independent noise over encoded states, for a base-length code
// and the average-length (diagonal) code side by side. The probability that
// noise touches the message at all scales with the base length; the
// amplitude weight left untouched scales with the branch lengths, i.e. with
// the average length. Ideal (non-integer) lengths are reported for the
// diagonal code since integer codeword lengths only realize them up to
// rounding.
struct DisturbanceReport {
  double per_qubit_prob;
  std::vector<DisturbanceRow> base_arm;
  std::vector<DisturbanceRow> average_arm;
  double base_touch_expect = 0;
  double base_untouched_expect = 0;
  double average_touch_expect = 0;
  double average_untouched_expect = 0;
  std::vector<double> ideal_lengths;
  std::vector<double> ideal_branch_touch;  // 1 - (1-p)^ideal
  std::optional<double> mc_base_touch;
  std::optional<double> mc_average_touch;
};

namespace detail {

inline double touch_probability(double p, double len) {
  if (len == 1.0) return p;  // keep the single-qubit case exact
  return 1.0 - std::pow(1.0 - p, len);
}

inline DisturbanceRow noise_row(int index, double weight, const FockVector& encoded,
                                double p) {
  DisturbanceRow row{};
  row.state_index = index;
  row.weight = weight;
  row.base_len = base_length(encoded);
  row.avg_len = average_length(encoded);
  row.touch_prob = touch_probability(p, row.base_len);
  row.untouched_weight = 0;
  for (const auto& t : encoded.terms())
    row.untouched_weight += std::norm(t.amp) * std::pow(1.0 - p, t.str.length());
  return row;
}

// Deterministic uniform double in [0, 1); avoids distribution objects whose
// algorithms vary between standard library implementations.
inline double canonical_uniform(std::uint64_t raw) {
  return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

}  // namespace detail

inline DisturbanceReport disturbance_report(const LosslessCode& code,
                                            const Ensemble& e,
                                            const NoiseConfig& noise) {
  if (noise.per_qubit_prob < 0.0 || noise.per_qubit_prob > 1.0)
    throw std::invalid_argument("noise probability must lie in [0, 1]");
  const double p = noise.per_qubit_prob;

  DisturbanceReport report;
  report.per_qubit_prob = p;

  DiagonalCode diagonal = average_length_code(e);
  std::vector<FockVector> base_encoded, avg_encoded;
  for (std::size_t i = 0; i < e.items().size(); ++i) {
    const auto& it = e.items()[i];
    base_encoded.push_back(encode(code, it.state));
    avg_encoded.push_back(encode_diagonal(diagonal, it.state));
    report.base_arm.push_back(
        detail::noise_row(static_cast<int>(i), it.probability, base_encoded.back(), p));
    report.average_arm.push_back(
        detail::noise_row(static_cast<int>(i), it.probability, avg_encoded.back(), p));
  }
  for (std::size_t i = 0; i < e.items().size(); ++i) {
    report.base_touch_expect += report.base_arm[i].weight * report.base_arm[i].touch_prob;
    report.base_untouched_expect +=
        report.base_arm[i].weight * report.base_arm[i].untouched_weight;
    report.average_touch_expect +=
        report.average_arm[i].weight * report.average_arm[i].touch_prob;
    report.average_untouched_expect +=
        report.average_arm[i].weight * report.average_arm[i].untouched_weight;
  }
  report.ideal_lengths = diagonal.ideal_lengths;
  for (double ideal : diagonal.ideal_lengths)
    report.ideal_branch_touch.push_back(detail::touch_probability(p, ideal));

  if (noise.model == NoiseModel::bit_flip && noise.monte_carlo_samples > 0) {
    auto estimate = [&](const std::vector<FockVector>& encoded, std::uint64_t salt) {
      std::mt19937_64 rng(noise.seed ^ salt);
      long long touched = 0;
      for (int s = 0; s < noise.monte_carlo_samples; ++s) {
        double u = detail::canonical_uniform(rng());
        std::size_t pick = 0;
        double cdf = 0;
        for (; pick < e.items().size(); ++pick) {
          cdf += e.items()[pick].probability;
          if (u < cdf) break;
        }
        if (pick == e.items().size()) pick = e.items().size() - 1;
        const FockVector& enc = encoded[pick];
        double v = detail::canonical_uniform(rng());
        double mass = 0;
        BitString branch = enc.terms().back().str;
        for (const auto& t : enc.terms()) {
          mass += std::norm(t.amp);
          if (v < mass) {
            branch = t.str;
            break;
          }
        }
        for (int q = 0; q < branch.length(); ++q)
          if (detail::canonical_uniform(rng()) < p) {
            ++touched;
            break;
          }
      }
      return static_cast<double>(touched) / noise.monte_carlo_samples;
    };
    report.mc_base_touch = estimate(base_encoded, 0x9e3779b97f4a7c15ull);
    report.mc_average_touch = estimate(avg_encoded, 0xbf58476d1ce4e5b9ull);
  }
  return report;
}

struct LossyReport {
  int copies;
  double delta;
  double entropy;             // of the ensemble density operator
  int cut_qubits;             // ceil(copies * (entropy + delta))
  double success_probability; // weight of branches with payload <= cut
  double expected_fidelity;   // E sqrt(kept mass)
};

/// Lossy block coding: encode `copies` independent draws with the diagonal
/// code, condense, and keep only branches whose payload fits in cut_qubits.
/// At fixed copies the success probability grows with delta and reaches
/// exactly 1 once the cut admits the longest payload.
inline LossyReport lossy_truncate(const Ensemble& e, int copies, double delta) {
  if (copies < 1) throw std::invalid_argument("need at least one copy");
  if (delta < 0) throw std::invalid_argument("delta must be nonnegative");

  DiagonalCode diagonal = average_length_code(e);
  double entropy = 0;
  for (double lambda : diagonal.eigenvalues)
    if (lambda > kTolerance) entropy -= lambda * std::log2(lambda);

  int width = 0;
  for (int len : diagonal.lengths) width = std::max(width, len);
  if (copies * width > kMaxStringLength)
    throw std::invalid_argument("condensed register exceeds the 24-bit limit");
  double branch_budget = 1;
  for (int c = 0; c < copies; ++c) branch_budget *= static_cast<double>(e.items().size());
  if (branch_budget > 2e6)
    throw std::invalid_argument("too many product branches");

  int cut = static_cast<int>(std::ceil(copies * (entropy + delta) - kTolerance));
  if (cut < 0) cut = 0;

  std::vector<FockVector> codeword_kets;
  for (BitString c : diagonal.codewords) codeword_kets.push_back(FockVector::basis(c));
  PrefixFreeBasis basis = verify_prefix_free_space(codeword_kets);
  auto codewords = classical_codewords(basis);

  std::vector<FockVector> encoded;
  for (const auto& it : e.items())
    encoded.push_back(encode_diagonal(diagonal, it.state));

  const int n = static_cast<int>(e.items().size());
  std::vector<int> pick(copies, 0);
  double success = 0, fidelity = 0;
  while (true) {
    double prob = 1;
    std::vector<RegisterVector> messages;
    messages.reserve(copies);
    for (int c = 0; c < copies; ++c) {
      prob *= e.items()[pick[c]].probability;
      messages.push_back(zero_extended_form(encoded[pick[c]], width));
    }
    CondensedBlock block = condense(messages, basis);
    double kept = 0;
    for (const auto& t : block.register_state.vec().terms()) {
      auto [tuple, payload_len] =
          detail::parse_condensed_branch(t.str, codewords, copies);
      (void)tuple;
      if (payload_len <= cut) kept += std::norm(t.amp);
    }
    success += prob * kept;
    fidelity += prob * std::sqrt(kept);

    int c = copies - 1;
    while (c >= 0 && pick[c] == n - 1) pick[c--] = 0;
    if (c < 0) break;
    ++pick[c];
  }
  return {copies, delta, entropy, cut, success, fidelity};
}

}  // namespace qlc
