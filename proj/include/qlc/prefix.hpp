/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qlc/fock.hpp"

namespace qlc {

// phi is a prefix of psi when some suffix state chi with <eps|chi> = 0 makes
// |<phi.chi|psi>| > 0. The overlap is linear in chi, so it suffices to test
// the witness vector w with w_y = sum_x conj(phi_x) psi_{x.y} over nonempty
// suffixes y: phi prefixes psi iff ||w|| > 0. Note a state can be a prefix
// of itself, e.g. (|0> + |00>)/sqrt(2).
inline bool is_prefix(const FockVector& phi, const FockVector& psi) {
  std::map<BitString, Amplitude> witness;
  for (const auto& x : phi.terms())
    for (const auto& z : psi.terms())
      if (x.str.length() < z.str.length() && x.str.is_prefix_of(z.str))
        witness[z.str.suffix_after(x.str)] += std::conj(x.amp) * z.amp;
  double norm2 = 0;
  for (const auto& [y, a] : witness) norm2 += std::norm(a);
  return std::sqrt(norm2) > kTolerance;
}

/// True when no vector in the set (including itself) is a prefix of another.
inline bool is_prefix_free_set(const std::vector<FockVector>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (is_prefix(xs[i], xs[j])) return false;
  return true;
}

struct PrefixFreeBasis {
  std::vector<FockVector> vectors;
  bool verified = false;
};

/// Verifies that the given vectors form an orthonormal, pairwise prefix-free
/// basis. Checking one basis certifies the whole spanned space: prefix
/// freeness of a space is basis independent.
inline PrefixFreeBasis verify_prefix_free_space(const std::vector<FockVector>& basis) {
  if (basis.empty()) throw std::invalid_argument("basis must be nonempty");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) {
      double expected = i == j ? 1.0 : 0.0;
      if (std::abs(inner_product(basis[i], basis[j]) - expected) > kTolerance)
        throw std::invalid_argument("basis is not orthonormal");
    }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (is_prefix(basis[i], basis[j])) {
        if (i == j)
          throw std::runtime_error("prefix violation: vector " +
                                   std::to_string(i) + " is a prefix of itself");
        throw std::runtime_error("prefix violation: vector " + std::to_string(i) +
                                 " is a prefix of vector " + std::to_string(j));
      }
  return {basis, true};
}

/// Kraft sums for a condensable family: sum of 2^-L and of 2^-lbar.
/// For orthogonal condensable prefix-free states both sums are at most 1,
/// and the base sum never exceeds the average sum.
inline std::pair<double, double> kraft_sums(const std::vector<FockVector>& xs) {
  double base = 0, avg = 0;
  for (const auto& x : xs) {
    base += std::ldexp(1.0, -base_length(x));
    avg += std::exp2(-average_length(x));
  }
  return {base, avg};
}

struct CondensedBlock {
  RegisterVector register_state;
  int message_count;
  std::vector<int> widths;
};

/// Support strings of a verified basis as a sorted classical prefix code.
/// Condensation is implemented for bases supported on classical prefix
/// codewords, the only kind the coding pipeline produces; other verified
/// bases are rejected.
inline std::vector<BitString> classical_codewords(const PrefixFreeBasis& basis) {
  if (!basis.verified)
    throw std::invalid_argument("basis must be verified prefix free");
  std::set<BitString> support;
  for (const auto& v : basis.vectors)
    for (const auto& t : v.terms()) support.insert(t.str);
  std::vector<BitString> codewords(support.begin(), support.end());
  for (std::size_t i = 0; i < codewords.size(); ++i) {
    if (codewords[i].empty())
      throw std::invalid_argument("basis support is not a classical prefix code");
    for (std::size_t j = i + 1; j < codewords.size(); ++j)
      if (codewords[i].is_prefix_of(codewords[j]))
        throw std::invalid_argument("basis support is not a classical prefix code");
  }
  return codewords;
}

namespace detail {

// The unique codeword that prefixes a zero-extended branch with all padding
// bits zero, or nullopt when the branch is not of that shape.
inline std::optional<BitString> decode_zef_branch(
    BitString s, const std::vector<BitString>& codewords) {
  for (BitString c : codewords)
    if (c.is_prefix_of(s)) {
      if (s.suffix_after(c).bits() == 0) return c;
      return std::nullopt;
    }
  return std::nullopt;
}

// Branches of a message as (codeword, amplitude) pairs. Rejects registers
// that are not zero-extended combinations of codewords or that leave the
// span of the basis.
inline std::vector<Term> message_branches(const RegisterVector& message,
                                          const PrefixFreeBasis& basis,
                                          const std::vector<BitString>& codewords) {
  std::vector<Term> branches;
  for (const auto& t : message.vec().terms()) {
    auto c = decode_zef_branch(t.str, codewords);
    if (!c) throw std::runtime_error("not decodable by given basis");
    branches.push_back({*c, t.amp});
  }
  FockVector unpadded = FockVector::from_terms(branches);
  FockVector residual = unpadded;
  for (const auto& b : basis.vectors)
    residual = residual - b.scaled(inner_product(b, unpadded));
  if (residual.norm() > kTolerance)
    throw std::runtime_error("not decodable by given basis");
  return branches;
}

// Splits a condensed branch into its codeword tuple plus payload length;
// trailing padding must be zero.
inline std::pair<std::vector<BitString>, int> parse_condensed_branch(
    BitString branch, const std::vector<BitString>& codewords, int count) {
  std::vector<BitString> tuple;
  int pos = 0;
  for (int slot = 0; slot < count; ++slot) {
    std::optional<BitString> match;
    for (BitString c : codewords)
      if (c.length() <= branch.length() - pos &&
          branch.substr(pos, c.length()) == c) {
        match = c;
        break;
      }
    if (!match) throw std::runtime_error("undecodable register content");
    tuple.push_back(*match);
    pos += match->length();
  }
  if (branch.substr(pos, branch.length() - pos).bits() != 0)
    throw std::runtime_error("undecodable register content");
  return {std::move(tuple), pos};
}

}  // namespace detail

/// Packs zero-extended messages into one register: payload codewords move to
/// the left, padding to the right. Extends the classical permutation
/// c1 0..0 c2 0..0 ... -> c1 c2 ... 0..0 linearly, so it is unitary on the
/// valid subspace and preserves inner products.
inline CondensedBlock condense(const std::vector<RegisterVector>& messages,
                               const PrefixFreeBasis& basis) {
  if (messages.empty()) throw std::invalid_argument("need at least one message");
  auto codewords = classical_codewords(basis);
  std::vector<int> widths;
  int total = 0;
  for (const auto& m : messages) {
    widths.push_back(m.width());
    total += m.width();
  }
  if (total > kMaxStringLength)
    throw std::invalid_argument("condensed register exceeds the 24-bit limit");
  std::vector<Term> acc = {{BitString::epsilon(), Amplitude{1.0, 0.0}}};
  for (const auto& m : messages) {
    auto branches = detail::message_branches(m, basis, codewords);
    std::vector<Term> next;
    next.reserve(acc.size() * branches.size());
    for (const auto& a : acc)
      for (const auto& b : branches)
        next.push_back({a.str.concat(b.str), a.amp * b.amp});
    acc = std::move(next);
  }
  for (auto& t : acc) t.str = t.str.padded_to(total);
  return {RegisterVector(total, FockVector::from_terms(acc)),
          static_cast<int>(messages.size()), widths};
}

/// Inverse of condense. A product of messages determines its factors only up
/// to per-slot phases with unit product, so slots after the first are
/// phase-anchored (largest branch amplitude real positive, ties toward
/// canonical order) and the first slot absorbs the remaining scale and
/// phase; the tensor product of the outputs always reproduces the block
/// exactly.
inline std::vector<RegisterVector> expand(const CondensedBlock& block,
                                          const PrefixFreeBasis& basis) {
  auto codewords = classical_codewords(basis);
  const int count = block.message_count;
  if (count <= 0 || static_cast<int>(block.widths.size()) != count)
    throw std::invalid_argument("inconsistent message count");
  int total = 0;
  for (int w : block.widths) total += w;
  if (total != block.register_state.width())
    throw std::invalid_argument("widths do not match the register");

  std::map<std::vector<BitString>, Amplitude> joint;
  for (const auto& t : block.register_state.vec().terms()) {
    auto [tuple, payload_len] =
        detail::parse_condensed_branch(t.str, codewords, count);
    int pos = 0;
    for (int slot = 0; slot < count; ++slot) {
      if (tuple[slot].length() > block.widths[slot])
        throw std::runtime_error("undecodable register content");
      pos += tuple[slot].length();
    }
    (void)payload_len;
    joint[std::move(tuple)] = t.amp;
  }

  auto ref = joint.begin();
  for (auto it = joint.begin(); it != joint.end(); ++it)
    if (std::abs(it->second) > std::abs(ref->second) + kTolerance) ref = it;

  std::vector<std::set<BitString>> alphabet(count);
  for (const auto& [tuple, amp] : joint)
    for (int slot = 0; slot < count; ++slot) alphabet[slot].insert(tuple[slot]);

  auto cross_section = [&](int slot, BitString c) {
    auto key = ref->first;
    key[slot] = c;
    auto it = joint.find(key);
    if (it == joint.end())
      throw std::runtime_error("register is not a product of messages");
    return it->second;
  };

  std::vector<FockVector> slots(count);
  for (int slot = count - 1; slot >= 1; --slot) {
    std::vector<Term> raw;
    for (BitString c : alphabet[slot]) raw.push_back({c, cross_section(slot, c)});
    slots[slot] = phase_canonicalized(FockVector::from_terms(raw).normalized());
  }
  {
    Amplitude rest{1.0, 0.0};
    for (int slot = 1; slot < count; ++slot)
      rest *= slots[slot].amplitude(ref->first[slot]);
    std::vector<Term> raw;
    for (BitString c : alphabet[0]) raw.push_back({c, cross_section(0, c) / rest});
    slots[0] = FockVector::from_terms(raw);
  }

  // A valid block is a true product: every branch amplitude must factor.
  double joint_mass = 0;
  for (const auto& [tuple, amp] : joint) {
    Amplitude prod{1.0, 0.0};
    for (int slot = 0; slot < count; ++slot) prod *= slots[slot].amplitude(tuple[slot]);
    if (std::abs(prod - amp) > kTolerance)
      throw std::runtime_error("register is not a product of messages");
    joint_mass += std::norm(amp);
  }
  double product_mass = slots[0].norm_squared();
  if (std::abs(product_mass - joint_mass) > kTolerance)
    throw std::runtime_error("register is not a product of messages");

  std::vector<RegisterVector> out;
  out.reserve(count);
  for (int slot = 0; slot < count; ++slot)
    out.push_back(zero_extended_form(slots[slot], block.widths[slot]));
  return out;
}

}  // namespace qlc
