/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qlc/qlc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitVerification = 3;

struct Options {
  std::string input;
  std::string output;
  std::string ensemble;
  std::uint64_t seed = 0;
  int cap_qubits = qlc::kDefaultChannelQubitCap;
  int cap_states = qlc::kDefaultStateCap;
  double delta = 0.0;
  double noise_p = 0.0;
  int copies = 1;
  int mc_samples = 0;
  int steps = -1;
  int bob_width = -1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qlc::io::ParseError(0, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw qlc::io::ParseError(0, "cannot open " + opt.output);
  out << text;
}

qlc::Ensemble load_ensemble(const std::string& path) {
  return qlc::io::parse_ensemble(read_file(path));
}

qlc::LosslessCode code_for(const qlc::Ensemble& e, int cap_states,
                           qlc::Decomposition* out_decomposition = nullptr) {
  qlc::Decomposition d = qlc::decompose(e, cap_states);
  if (out_decomposition) *out_decomposition = d;
  return qlc::build_code(d);
}

int run_inspect(const Options& opt) {
  std::string text = read_file(opt.input);
  std::string out;
  if (qlc::io::looks_like_ensemble(text)) {
    qlc::Ensemble e = qlc::io::parse_ensemble(text);
    out = "index\tweight\tbase_length\tavg_length\tself_prefix\n";
    std::vector<qlc::FockVector> states;
    for (std::size_t i = 0; i < e.items().size(); ++i) {
      const auto& it = e.items()[i];
      states.push_back(it.state);
      out += std::to_string(i) + "\t" + qlc::io::sig6(it.probability) + "\t" +
             std::to_string(qlc::base_length(it.state)) + "\t" +
             qlc::io::sig6(qlc::average_length(it.state)) + "\t" +
             (qlc::is_prefix(it.state, it.state) ? "yes" : "no") + "\n";
    }
    out += std::string("prefix_free_set\t") +
           (qlc::is_prefix_free_set(states) ? "yes" : "no") + "\n";
  } else {
    qlc::FockVector v = qlc::io::parse_state(text);
    out = "base_length\t" + std::to_string(qlc::base_length(v)) + "\n" +
          "avg_length\t" + qlc::io::sig6(qlc::average_length(v)) + "\n" +
          "self_prefix\t" + (qlc::is_prefix(v, v) ? "yes" : "no") + "\n";
  }
  write_output(opt, out);
  return kExitOk;
}

int run_decompose(const Options& opt) {
  qlc::Decomposition d = qlc::decompose(load_ensemble(opt.input), opt.cap_states);
  write_output(opt, qlc::io::format_decomposition_table(d));
  return kExitOk;
}

int run_build_code(const Options& opt) {
  qlc::LosslessCode code = code_for(load_ensemble(opt.input), opt.cap_states);
  write_output(opt, qlc::io::format_code_table(code));
  return kExitOk;
}

int run_encode(const Options& opt) {
  qlc::LosslessCode code = code_for(load_ensemble(opt.ensemble), opt.cap_states);
  qlc::FockVector psi = qlc::io::parse_state(read_file(opt.input));
  write_output(opt, qlc::io::format_state(qlc::encode(code, psi)));
  return kExitOk;
}

int run_decode(const Options& opt) {
  qlc::LosslessCode code = code_for(load_ensemble(opt.ensemble), opt.cap_states);
  qlc::FockVector encoded = qlc::io::parse_state(read_file(opt.input));
  write_output(opt, qlc::io::format_state(qlc::decode(code, encoded)));
  return kExitOk;
}

int run_verify(const Options& opt) {
  qlc::Ensemble e = load_ensemble(opt.input);
  qlc::Decomposition d;
  qlc::LosslessCode code = code_for(e, opt.cap_states, &d);
  qlc::TheoremReport bounds = qlc::check_theorem_bounds(code, e, d);

  bool failed = false;
  std::string out = "check\tvalue\tstatus\n";
  auto row = [&](const std::string& name, const std::string& value, bool ok) {
    out += name + "\t" + value + "\t" + (ok ? "PASS" : "FAIL") + "\n";
    failed = failed || !ok;
  };
  auto info = [&](const std::string& name, const std::string& value) {
    out += name + "\t" + value + "\t-\n";
  };

  info("entropy", qlc::io::sig6(bounds.entropy));
  info("expected_base_length", qlc::io::sig6(bounds.expected_length));
  row("lower_bound", "S<=E[L]", bounds.lower_bound_ok);
  row("upper_bound", "E[L]<=S+1", bounds.upper_bound_ok);

  std::vector<qlc::FockVector> image;
  for (qlc::BitString c : code.codewords) image.push_back(qlc::FockVector::basis(c));
  auto [kraft_base, kraft_avg] = qlc::kraft_sums(image);
  row("kraft_base_sum", qlc::io::sig6(kraft_base), kraft_base <= 1.0 + qlc::kTolerance);
  row("kraft_average_sum", qlc::io::sig6(kraft_avg), kraft_avg <= 1.0 + qlc::kTolerance);

  bool image_ok = true;
  try {
    qlc::verify_prefix_free_space(image);
  } catch (const std::exception&) {
    image_ok = false;
  }
  row("prefix_free_image", image_ok ? "ok" : "violation", image_ok);

  double max_residual = 0;
  for (const auto& it : e.items()) {
    qlc::FockVector round_trip = qlc::decode(code, qlc::encode(code, it.state));
    max_residual = std::max(max_residual, (round_trip - it.state).norm());
  }
  row("losslessness", qlc::io::sig6(max_residual), max_residual <= qlc::kTolerance);

  try {
    qlc::OptimalCodeSearch optimal = qlc::brute_force_optimal(e);
    double gap = bounds.expected_length - optimal.expected_length;
    info("optimal_expected_length", qlc::io::sig6(optimal.expected_length));
    row("optimal_gap", qlc::io::sig6(gap),
        gap >= -qlc::kTolerance && gap <= 1.0 + qlc::kTolerance);
  } catch (const std::invalid_argument&) {
    info("optimal_gap", "skipped");
  }

  write_output(opt, out);
  return failed ? kExitVerification : kExitOk;
}

int run_channel(const Options& opt) {
  qlc::FockVector psi = qlc::io::parse_state(read_file(opt.input));
  int base = qlc::base_length(psi);
  qlc::RegisterVector message = qlc::zero_extended_form(psi, base);
  int steps = opt.steps >= 0 ? opt.steps : base;
  int bob_width = opt.bob_width >= 0 ? opt.bob_width : message.width();

  std::string out = "step\tsupport\n";
  qlc::ChannelState state = qlc::channel_init(message, bob_width, opt.cap_qubits);
  out += "0\t" + std::to_string(state.joint.vec().terms().size()) + "\n";
  for (int i = 0; i < steps; ++i) {
    state = qlc::channel_step(state);
    out += std::to_string(i + 1) + "\t" +
           std::to_string(state.joint.vec().terms().size()) + "\n";
  }
  qlc::TransmitResult result =
      qlc::transmit(message, steps, bob_width, opt.cap_qubits);
  out += std::string("complete\t") + (result.complete ? "yes" : "no") + "\n";
  out += "fidelity\t" +
         (result.fidelity ? qlc::io::sig6(*result.fidelity) : std::string("-")) + "\n";
  if (result.bob_state) {
    out += "bob_width\t" + std::to_string(result.bob_state->width()) + "\n";
    out += qlc::io::format_register(*result.bob_state);
  }
  write_output(opt, out);
  return kExitOk;
}

int run_noise(const Options& opt) {
  qlc::Ensemble e = load_ensemble(opt.input);
  qlc::LosslessCode code = code_for(e, opt.cap_states);
  qlc::NoiseConfig config;
  config.per_qubit_prob = opt.noise_p;
  config.seed = opt.seed;
  config.monte_carlo_samples = opt.mc_samples;
  config.model = opt.mc_samples > 0 ? qlc::NoiseModel::bit_flip
                                    : qlc::NoiseModel::erasure_flag;
  write_output(opt, qlc::io::format_disturbance_report(
                        qlc::disturbance_report(code, e, config)));
  return kExitOk;
}

int run_lossy(const Options& opt) {
  qlc::Ensemble e = load_ensemble(opt.input);
  write_output(opt,
               qlc::io::format_lossy_report(qlc::lossy_truncate(e, opt.copies, opt.delta)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lossless coding for indeterminate-length quantum strings"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
    auto* in = cmd->add_option("--input", opt.input, "input file");
    if (needs_input) in->required();
    cmd->add_option("--output", opt.output, "output file (default stdout)");
    return cmd;
  };

  auto* inspect = add_common(app.add_subcommand("inspect", "lengths and prefix verdicts"));
  (void)inspect;
  auto* decompose = add_common(
      app.add_subcommand("decompose", "maximally probable subspace decomposition"));
  decompose->add_option("--cap-states", opt.cap_states, "exhaustive search cap");
  auto* build = add_common(app.add_subcommand("build-code", "code table for an ensemble"));
  build->add_option("--cap-states", opt.cap_states, "exhaustive search cap");
  auto* encode = add_common(app.add_subcommand("encode", "encode a state"));
  encode->add_option("--ensemble", opt.ensemble, "ensemble defining the code")->required();
  encode->add_option("--cap-states", opt.cap_states, "exhaustive search cap");
  auto* decode = add_common(app.add_subcommand("decode", "decode an encoded state"));
  decode->add_option("--ensemble", opt.ensemble, "ensemble defining the code")->required();
  decode->add_option("--cap-states", opt.cap_states, "exhaustive search cap");
  auto* verify = add_common(
      app.add_subcommand("verify", "entropy bounds, Kraft sums and losslessness"));
  verify->add_option("--cap-states", opt.cap_states, "exhaustive search cap");
  auto* channel = add_common(app.add_subcommand("channel", "swap-channel transmission"));
  channel->add_option("--steps", opt.steps, "steps to run (default: base length)");
  channel->add_option("--bob-width", opt.bob_width, "receiver width (default: message width)");
  channel->add_option("--cap-qubits", opt.cap_qubits, "joint register qubit cap");
  auto* noise = add_common(app.add_subcommand("noise", "per-qubit disturbance report"));
  noise->add_option("--noise-p", opt.noise_p, "per-qubit noise probability")->required();
  noise->add_option("--cap-states", opt.cap_states, "exhaustive search cap");
  noise->add_option("--seed", opt.seed, "Monte Carlo seed");
  noise->add_option("--mc-samples", opt.mc_samples, "bit-flip Monte Carlo samples");
  auto* lossy = add_common(app.add_subcommand("lossy", "block truncation report"));
  lossy->add_option("--copies", opt.copies, "independent copies")->required();
  lossy->add_option("--delta", opt.delta, "rate slack above the entropy")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("inspect")) return run_inspect(opt);
    if (app.got_subcommand("decompose")) return run_decompose(opt);
    if (app.got_subcommand("build-code")) return run_build_code(opt);
    if (app.got_subcommand("encode")) return run_encode(opt);
    if (app.got_subcommand("decode")) return run_decode(opt);
    if (app.got_subcommand("verify")) return run_verify(opt);
    if (app.got_subcommand("channel")) return run_channel(opt);
    if (app.got_subcommand("noise")) return run_noise(opt);
    if (app.got_subcommand("lossy")) return run_lossy(opt);
  } catch (const qlc::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
