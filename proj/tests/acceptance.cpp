/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace qlc;

namespace {

struct Instance {
  Ensemble ensemble;
  Decomposition decomposition;
  LosslessCode code;
};

std::vector<Instance> make_instances(std::uint64_t seed, int count,
                                     const testutil::EnsembleShape& shape) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Ensemble e = testutil::random_ensemble(rng, shape);
    Decomposition d = decompose(e);
    LosslessCode code = build_code(d);
    out.push_back({std::move(e), std::move(d), std::move(code)});
  }
  return out;
}

bool losslessness(const std::vector<Instance>& instances) {
  for (const auto& inst : instances)
    for (const auto& it : inst.ensemble.items()) {
      FockVector round_trip = decode(inst.code, encode(inst.code, it.state));
      if ((round_trip - it.state).norm() > 1e-9) return false;
    }
  return true;
}

bool entropy_sandwich(const std::vector<Instance>& instances) {
  for (const auto& inst : instances) {
    TheoremReport r =
        check_theorem_bounds(inst.code, inst.ensemble, inst.decomposition);
    if (!r.lower_bound_ok || !r.upper_bound_ok) return false;
  }
  Ensemble fig2 = testutil::load_ensemble("fig2.ens");
  Decomposition d = decompose(fig2);
  TheoremReport r = check_theorem_bounds(build_code(d), fig2, d);
  return std::abs(r.entropy - 1.4185644431995963) <= 1e-6 &&
         std::abs(r.expected_length - 2.125) <= 1e-6;
}

bool optimality_gap() {
  std::mt19937_64 rng(3003);
  testutil::EnsembleShape shape;
  shape.max_axes = 3;  // keep the exhaustive search tractable
  for (int i = 0; i < 200; ++i) {
    Ensemble e = testutil::random_ensemble(rng, shape);
    double greedy = expected_base_length(build_code(decompose(e)), e);
    double optimal = brute_force_optimal(e).expected_length;
    double gap = greedy - optimal;
    if (gap < -1e-9 || gap > 1.0 + 1e-9) return false;
  }
  for (const char* fixture : {"fig2.ens", "enoise.ens", "classical3.ens"}) {
    Ensemble e = testutil::load_ensemble(fixture);
    double gap = expected_base_length(build_code(decompose(e)), e) -
                 brute_force_optimal(e).expected_length;
    if (gap < -1e-9 || gap > 1.0 + 1e-9) return false;
  }
  return true;
}

bool kraft(const std::vector<Instance>& instances) {
  for (const auto& inst : instances) {
    std::vector<FockVector> image;
    for (BitString c : inst.code.codewords) image.push_back(FockVector::basis(c));
    auto [base, avg] = kraft_sums(image);
    // Dyadic sums are exact in binary floating point: no tolerance needed.
    if (!(base <= avg && avg <= 1.0)) return false;
  }
  for (const char* fixture : {"enoise.ens", "classical3.ens"}) {
    Ensemble e = testutil::load_ensemble(fixture);
    LosslessCode code = build_code(decompose(e));
    std::vector<FockVector> image;
    for (BitString c : code.codewords) image.push_back(FockVector::basis(c));
    auto [base, avg] = kraft_sums(image);
    if (base != 1.0 || avg != 1.0) return false;  // complete classical codes
  }
  return true;
}

bool rebasing_lemma() {
  std::mt19937_64 rng(5005);
  const std::vector<std::vector<FockVector>> bases = {
      {testutil::ket("00"), testutil::ket("01"), testutil::ket("100")},
      {testutil::ket("0"), testutil::ket("10"), testutil::ket("110")},
      {testutil::ket("00"), testutil::ket("01"), testutil::ket("10"),
       testutil::ket("11")},
  };
  int verified = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto& basis = bases[trial % bases.size()];
    auto rotated = testutil::random_rebasing(rng, basis);
    try {
      if (verify_prefix_free_space(rotated).verified) ++verified;
    } catch (const std::exception&) {
      return false;
    }
  }
  return verified == 200;
}

bool self_prefix_facts() {
  FockVector halves = testutil::state({{"0", 1.0}, {"00", 1.0}});
  FockVector with_eps = testutil::state({{"eps", 0.6}, {"101", 0.8}});
  if (!is_prefix(halves, halves) || !is_prefix(with_eps, with_eps)) return false;
  for (const FockVector& v : {halves, with_eps}) {
    try {
      verify_prefix_free_space({v});
      return false;  // self-prefix states must be rejected from code images
    } catch (const std::runtime_error&) {
    }
  }
  return !is_prefix(testutil::ket("0"), testutil::ket("0"));
}

bool channel_protocol() {
  std::mt19937_64 rng(7007);
  for (int trial = 0; trial < 100; ++trial) {
    FockVector psi = testutil::random_state_on(
        rng, testutil::random_support(rng, 1 + static_cast<int>(rng() % 4), 6));
    RegisterVector message = zero_extended_form(psi, base_length(psi));
    TransmitResult r = transmit(message, base_length(psi));
    if (!r.complete || !r.fidelity || *r.fidelity != 1.0) return false;
    if (!(*r.bob_state == message)) return false;
  }

  // Encoded mixed-length messages from the worked mixture.
  Ensemble fig2 = testutil::load_ensemble("fig2.ens");
  LosslessCode code = build_code(decompose(fig2));
  for (const auto& it : fig2.items()) {
    FockVector enc = encode(code, it.state);
    RegisterVector message = zero_extended_form(enc, base_length(enc));
    TransmitResult r = transmit(message, base_length(enc));
    if (!r.complete || *r.fidelity != 1.0) return false;
  }

  // Mid-transmission append: the appended pair arrives as the tensor product.
  RegisterVector m1 =
      zero_extended_form(testutil::state({{"01", 1.0}, {"100", 1.0}}), 3);
  RegisterVector m2(2, testutil::ket("11"));
  ChannelState s = channel_init(m1, 3);
  s = channel_step(s);
  s = channel_append(s, m2);
  while (s.step < s.alice_width) s = channel_step(s);
  for (const auto& t : s.joint.vec().terms())
    if (t.str.substr(0, s.alice_width + 1).bits() != 0) return false;
  std::vector<Term> bob;
  for (const auto& t : s.joint.vec().terms())
    bob.push_back({t.str.substr(s.alice_width + 1, s.bob_width), t.amp});
  return RegisterVector(5, FockVector::from_terms(bob)) == tensor(m1, m2);
}

bool noise_example() {
  Ensemble e = testutil::load_ensemble("enoise.ens");
  LosslessCode code = build_code(decompose(e));
  double prev_touch[2] = {-1.0, -1.0};
  double prev_untouched[2] = {2.0, 2.0};
  for (double p : {0.0, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    NoiseConfig cfg;
    cfg.per_qubit_prob = p;
    DisturbanceReport rep = disturbance_report(code, e, cfg);
    for (const auto& row : rep.base_arm)
      if (row.touch_prob != p) return false;  // exact, not approximate
    if (rep.base_touch_expect != p) return false;
    double touch[2] = {rep.base_touch_expect, rep.average_touch_expect};
    double untouched[2] = {rep.base_untouched_expect, rep.average_untouched_expect};
    for (int arm = 0; arm < 2; ++arm) {
      if (touch[arm] < prev_touch[arm]) return false;
      if (untouched[arm] > prev_untouched[arm]) return false;
      prev_touch[arm] = touch[arm];
      prev_untouched[arm] = untouched[arm];
    }
  }
  return true;
}

bool lossy_truncation() {
  Ensemble e = testutil::load_ensemble("enoise.ens");
  DiagonalCode code = average_length_code(e);
  for (int copies = 1; copies <= 6; ++copies) {
    double prev = -1.0;
    for (double delta : {0.0, 0.1, 0.25, 0.5, 1.0}) {
      LossyReport rep = lossy_truncate(e, copies, delta);
      oracle::LossyOracle ref = oracle::lossy(e, code, copies, rep.cut_qubits);
      if (std::abs(rep.success_probability - ref.success) > 1e-9) return false;
      if (std::abs(rep.expected_fidelity - ref.fidelity) > 1e-9) return false;
      if (rep.success_probability < prev - 1e-12) return false;
      prev = rep.success_probability;
    }
    LossyReport all = lossy_truncate(e, copies, 2.0);  // cut beyond every payload
    if (std::abs(all.success_probability - 1.0) > 1e-12) return false;
  }
  return true;
}

bool decomposition_oracle() {
  std::mt19937_64 rng(1010);
  for (int trial = 0; trial < 1000; ++trial) {
    Ensemble e = testutil::random_ensemble(rng);
    Decomposition d = decompose(e);

    double trace = 0;
    std::vector<std::pair<double, int>> got;
    for (const auto& part : d.parts) {
      got.push_back({part.cond_avg_prob, part.subspace.dim()});
      trace += part.cond_avg_prob * part.subspace.dim();
    }
    if (std::abs(trace - 1.0) > 1e-9) return false;

    auto want = oracle::decompose(oracle::embed(e));
    if (got.size() != want.size()) return false;
    auto order = [](const std::pair<double, int>& a, const std::pair<double, int>& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    };
    std::sort(got.begin(), got.end(), order);
    std::sort(want.begin(), want.end(), order);
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (std::abs(got[i].first - want[i].first) > 1e-9) return false;
      if (got[i].second != want[i].second) return false;
    }
  }
  return true;
}

int g_failures = 0;

void report(int index, const char* label, bool ok) {
  std::printf("%s  %2d. %s\n", ok ? "PASS" : "FAIL", index, label);
  if (!ok) ++g_failures;
}

}  // namespace

int main() {
  testutil::EnsembleShape shape;  // ≤5 states, span ≤4, lengths ≤6
  std::vector<Instance> instances = make_instances(1001, 1000, shape);

  report(1, "losslessness on 1000 random ensembles", losslessness(instances));
  report(2, "entropy sandwich S <= E[L] <= S+1", entropy_sandwich(instances));
  report(3, "greedy within one qubit of the exhaustive optimum", optimality_gap());
  report(4, "Kraft sums bounded by 1, classical complete codes exact", kraft(instances));
  report(5, "prefix freeness survives 200 random rebasings", rebasing_lemma());
  report(6, "self-prefix states detected and rejected", self_prefix_facts());
  report(7, "swap channel: fidelity exactly 1 in L steps, append works",
         channel_protocol());
  report(8, "noise report exact at p and monotone", noise_example());
  report(9, "lossy truncation matches enumeration, saturates with delta",
         lossy_truncation());
  report(10, "greedy decomposition equals exhaustive oracle on 1000 ensembles",
         decomposition_oracle());

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
