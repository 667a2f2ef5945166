/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/channel.hpp"

namespace qlc::io {

// Parse failure with a 1-based line number; line 0 means the whole file.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::string strip(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  auto begin = line.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = line.find_last_not_of(" \t\r\n");
  return line.substr(begin, end - begin + 1);
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline double parse_double(const std::string& text, int line) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "bad number: " + text);
  }
  if (used != text.size()) throw ParseError(line, "bad number: " + text);
  return value;
}

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

// Raw term lines of one state block, without normalization policy applied.
struct StateBlock {
  std::vector<Term> terms;
  int first_line = 0;
};

inline FockVector finish_state(const StateBlock& block) {
  if (block.terms.empty()) throw ParseError(block.first_line, "no state terms found");
  FockVector v = FockVector::from_terms(block.terms);
  if (v.is_zero()) throw ParseError(block.first_line, "state is the zero vector");
  if (std::abs(v.norm() - 1.0) > 1e-6)
    throw ParseError(block.first_line, "state norm deviates from 1 by more than 1e-6");
  return v.normalized();
}

inline Term parse_term_line(const std::string& line, int lineno) {
  auto tok = tokens(line);
  if (tok.size() != 3)
    throw ParseError(lineno, "expected '<bitstring|eps> <re> <im>'");
  BitString s;
  try {
    s = BitString::parse(tok[0]);
  } catch (const std::invalid_argument& err) {
    throw ParseError(lineno, err.what());
  }
  return {s, Amplitude{parse_double(tok[1], lineno), parse_double(tok[2], lineno)}};
}

}  // namespace detail

/// Significant-digit formatting used by all reports.
inline std::string sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

// --- FockVector literals ---------------------------------------------------

/// One term per line: '<bitstring|eps> <re> <im>'. Blank lines and '#'
/// comments are ignored. States are canonicalized; norms more than 1e-6 away
/// from 1 are rejected, anything closer is renormalized exactly.
inline FockVector parse_state(std::istream& in) {
  detail::StateBlock block;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip(raw);
    if (line.empty()) continue;
    if (block.first_line == 0) block.first_line = lineno;
    block.terms.push_back(detail::parse_term_line(line, lineno));
  }
  return detail::finish_state(block);
}

inline FockVector parse_state(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_state(in);
}

inline std::string format_state(const FockVector& v) {
  std::string out;
  for (const auto& t : v.terms())
    out += t.str.str() + " " + detail::fmt(t.amp.real()) + " " +
           detail::fmt(t.amp.imag()) + "\n";
  return out;
}

// --- Ensembles ---------------------------------------------------------------

/// Blocks of the form 'state <weight>' followed by term lines, separated by
/// blank lines.
inline Ensemble parse_ensemble(std::istream& in) {
  std::vector<WeightedState> items;
  detail::StateBlock block;
  double weight = 0;
  bool open = false;

  auto close_block = [&]() {
    if (!open) return;
    items.push_back({weight, detail::finish_state(block)});
    block = {};
    open = false;
  };

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip(raw);
    if (line.empty()) {
      close_block();
      continue;
    }
    auto tok = detail::tokens(line);
    if (tok.front() == "state") {
      close_block();
      if (tok.size() != 2) throw ParseError(lineno, "expected 'state <weight>'");
      weight = detail::parse_double(tok[1], lineno);
      open = true;
      block.first_line = lineno;
      continue;
    }
    if (!open) throw ParseError(lineno, "term line outside a state block");
    block.terms.push_back(detail::parse_term_line(line, lineno));
  }
  close_block();
  if (items.empty()) throw ParseError(0, "no state blocks found");
  try {
    return Ensemble(std::move(items));
  } catch (const std::invalid_argument& err) {
    throw ParseError(0, err.what());
  }
}

inline Ensemble parse_ensemble(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_ensemble(in);
}

inline std::string format_ensemble(const Ensemble& e) {
  std::string out;
  for (const auto& it : e.items()) {
    if (!out.empty()) out += "\n";
    out += "state " + detail::fmt(it.probability) + "\n";
    out += format_state(it.state);
  }
  return out;
}

/// True when the text contains a 'state <weight>' header.
inline bool looks_like_ensemble(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    auto tok = detail::tokens(detail::strip(raw));
    if (!tok.empty() && tok.front() == "state") return true;
  }
  return false;
}

// --- Registers and condensed blocks -----------------------------------------

inline RegisterVector parse_register(std::istream& in, int expected_width = -1) {
  FockVector v = parse_state(in);
  int width = v.terms().front().str.length();
  for (const auto& t : v.terms())
    if (t.str.length() != width)
      throw ParseError(0, "register terms must share one width");
  if (expected_width >= 0 && width != expected_width)
    throw ParseError(0, "register width mismatch");
  return RegisterVector(width, std::move(v));
}

inline RegisterVector parse_register(std::string_view text, int expected_width = -1) {
  std::istringstream in{std::string(text)};
  return parse_register(in, expected_width);
}

inline std::string format_register(const RegisterVector& r) {
  return format_state(r.vec());
}

/// 'count=<n> widths=<w1,...,wn>' header line, then the register literal.
inline CondensedBlock parse_condensed_block(std::istream& in) {
  std::string raw;
  int lineno = 0;
  std::string header;
  while (std::getline(in, raw)) {
    ++lineno;
    header = detail::strip(raw);
    if (!header.empty()) break;
  }
  auto tok = detail::tokens(header);
  if (tok.size() != 2 || tok[0].rfind("count=", 0) != 0 ||
      tok[1].rfind("widths=", 0) != 0)
    throw ParseError(lineno, "expected 'count=<n> widths=<w1,...>'");
  int count = static_cast<int>(detail::parse_double(tok[0].substr(6), lineno));
  std::vector<int> widths;
  {
    std::istringstream csv(tok[1].substr(7));
    std::string field;
    while (std::getline(csv, field, ','))
      widths.push_back(static_cast<int>(detail::parse_double(field, lineno)));
  }
  if (count < 1 || static_cast<int>(widths.size()) != count)
    throw ParseError(lineno, "widths do not match the message count");
  int total = 0;
  for (int w : widths) total += w;
  RegisterVector reg = parse_register(in, total);
  return {std::move(reg), count, std::move(widths)};
}

inline CondensedBlock parse_condensed_block(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_condensed_block(in);
}

inline std::string format_condensed_block(const CondensedBlock& block) {
  std::string out = "count=" + std::to_string(block.message_count) + " widths=";
  for (std::size_t i = 0; i < block.widths.size(); ++i)
    out += (i ? "," : "") + std::to_string(block.widths[i]);
  out += "\n" + format_register(block.register_state);
  return out;
}

// --- Side-channel messages ---------------------------------------------------

/// Header bits in ASCII on the first line, then the payload register.
inline SideChannelMessage parse_side_channel_message(std::istream& in) {
  std::string raw;
  int lineno = 0;
  std::string header;
  while (std::getline(in, raw)) {
    ++lineno;
    header = detail::strip(raw);
    if (!header.empty()) break;
  }
  if (header.empty()) throw ParseError(0, "missing side-channel header");
  BitString bits;
  try {
    bits = BitString::parse(header);
  } catch (const std::invalid_argument& err) {
    throw ParseError(lineno, err.what());
  }
  RegisterVector payload = parse_register(in);
  SideChannelMessage msg{bits, std::move(payload)};
  try {
    parse_side_channel(msg);
  } catch (const std::runtime_error& err) {
    throw ParseError(lineno, err.what());
  }
  return msg;
}

inline SideChannelMessage parse_side_channel_message(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_side_channel_message(in);
}

inline std::string format_side_channel_message(const SideChannelMessage& msg) {
  return msg.header_bits.str() + "\n" + format_register(msg.payload);
}

// --- Reports -----------------------------------------------------------------

inline std::string format_decomposition_table(const Decomposition& d) {
  std::string out = "part\tdim\tcond_avg_prob\tlength\n";
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    const auto& part = d.parts[i];
    out += std::to_string(i + 1) + "\t" + std::to_string(part.subspace.dim()) +
           "\t" + sig6(part.cond_avg_prob) + "\t" +
           std::to_string(code_length_for(part.cond_avg_prob)) + "\n";
  }
  if (d.tie_warning)
    out += "# warning: tied maximal subspaces; dimension-then-order rule applied\n";
  return out;
}

inline std::string format_code_table(const LosslessCode& code) {
  std::string out = "basis_vector_index\tpart\tlength\tcodeword\n";
  for (std::size_t k = 0; k < code.source_basis.size(); ++k) {
    int part = code.part_index[k];
    out += std::to_string(k) + "\t" + std::to_string(part + 1) + "\t" +
           std::to_string(code.part_lengths[part]) + "\t" +
           code.codewords[k].str() + "\n";
  }
  return out;
}

inline std::string format_disturbance_report(const DisturbanceReport& r) {
  std::string out =
      "scheme\tindex\tweight\tbase_length\tavg_length\ttouch_prob\tuntouched_weight\n";
  auto rows = [&](const char* scheme, const std::vector<DisturbanceRow>& arm,
                  double touch_expect, double untouched_expect) {
    for (const auto& row : arm)
      out += std::string(scheme) + "\t" + std::to_string(row.state_index) + "\t" +
             sig6(row.weight) + "\t" + std::to_string(row.base_len) + "\t" +
             sig6(row.avg_len) + "\t" + sig6(row.touch_prob) + "\t" +
             sig6(row.untouched_weight) + "\n";
    out += std::string(scheme) + "\texpect\t1\t-\t-\t" + sig6(touch_expect) + "\t" +
           sig6(untouched_expect) + "\n";
  };
  rows("base", r.base_arm, r.base_touch_expect, r.base_untouched_expect);
  rows("average", r.average_arm, r.average_touch_expect, r.average_untouched_expect);
  for (std::size_t k = 0; k < r.ideal_lengths.size(); ++k)
    out += "ideal\t" + std::to_string(k) + "\t-\t-\t" + sig6(r.ideal_lengths[k]) +
           "\t" + sig6(r.ideal_branch_touch[k]) + "\t-\n";
  if (r.mc_base_touch)
    out += "mc_base\t-\t-\t-\t-\t" + sig6(*r.mc_base_touch) + "\t-\n";
  if (r.mc_average_touch)
    out += "mc_average\t-\t-\t-\t-\t" + sig6(*r.mc_average_touch) + "\t-\n";
  return out;
}

inline std::string format_lossy_report(const LossyReport& r) {
  return "copies\tdelta\tentropy\tcut_qubits\tsuccess_probability\texpected_fidelity\n" +
         std::to_string(r.copies) + "\t" + sig6(r.delta) + "\t" + sig6(r.entropy) +
         "\t" + std::to_string(r.cut_qubits) + "\t" + sig6(r.success_probability) +
         "\t" + sig6(r.expected_fidelity) + "\n";
}

}  // namespace qlc::io
