/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "qlc/bitstring.hpp"

namespace qlc {

using Amplitude = std::complex<double>;

struct Term {
  BitString str;
  Amplitude amp;
  friend bool operator==(const Term&, const Term&) = default;
};

// Sparse element of the variable-length string space: a finite complex
// combination of classical bit strings of possibly different lengths,
// with strings of different lengths orthogonal by construction.
//
// Canonical storage: terms sorted shortest first then lexicographic, and
// no stored amplitude has magnitude <= kTolerance.
class FockVector {
 public:
  FockVector() = default;  // the zero vector

  static FockVector basis(BitString s) {
    FockVector v;
    v.terms_.push_back({s, Amplitude{1.0, 0.0}});
    return v;
  }

  static FockVector from_terms(const std::vector<Term>& terms) {
    std::map<BitString, Amplitude> acc;
    for (const auto& t : terms) acc[t.str] += t.amp;
    FockVector v;
    for (const auto& [s, a] : acc)
      if (std::abs(a) > kTolerance) v.terms_.push_back({s, a});
    return v;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Amplitude amplitude(BitString s) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), s,
        [](const Term& t, BitString key) { return t.str < key; });
    return it != terms_.end() && it->str == s ? it->amp : Amplitude{};
  }

  double norm_squared() const {
    double n = 0;
    for (const auto& t : terms_) n += std::norm(t.amp);
    return n;
  }
  double norm() const { return std::sqrt(norm_squared()); }
  bool is_state() const {
    return !terms_.empty() && std::abs(norm() - 1.0) <= kTolerance;
  }

  FockVector scaled(Amplitude factor) const {
    std::vector<Term> out = terms_;
    for (auto& t : out) t.amp *= factor;
    return from_terms(out);
  }

  FockVector normalized() const {
    double n = norm();
    if (n <= kTolerance)
      throw std::invalid_argument("cannot normalize a zero vector");
    return scaled(1.0 / n);
  }

  friend FockVector operator+(const FockVector& a, const FockVector& b) {
    std::vector<Term> out = a.terms_;
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return from_terms(out);
  }
  friend FockVector operator-(const FockVector& a, const FockVector& b) {
    return a + b.scaled(Amplitude{-1.0, 0.0});
  }
  friend bool operator==(const FockVector&, const FockVector&) = default;

 private:
  std::vector<Term> terms_;
};

inline Amplitude inner_product(const FockVector& u, const FockVector& v) {
  Amplitude sum{};
  auto a = u.terms().begin();
  auto b = v.terms().begin();
  while (a != u.terms().end() && b != v.terms().end()) {
    if (a->str < b->str) {
      ++a;
    } else if (b->str < a->str) {
      ++b;
    } else {
      sum += std::conj(a->amp) * b->amp;
      ++a;
      ++b;
    }
  }
  return sum;
}

/// Base length: the longest string in the support. This is the number of
/// qubits needed to hold the vector in a fixed register.
inline int base_length(const FockVector& v) {
  if (v.is_zero()) throw std::domain_error("zero vector has no length");
  return v.terms().back().str.length();  // canonical order: longest last
}

/// Average length: support lengths weighted by |amplitude|^2.
inline double average_length(const FockVector& v) {
  if (v.is_zero()) throw std::domain_error("zero vector has no length");
  double sum = 0;
  for (const auto& t : v.terms()) sum += std::norm(t.amp) * t.str.length();
  return sum;
}

// Fixed-width register: a FockVector whose every support string has length
// exactly `width`.
class RegisterVector {
 public:
  RegisterVector(int width, FockVector vec) : width_(width), vec_(std::move(vec)) {
    if (width < 0 || width > kMaxStringLength)
      throw std::invalid_argument("register width out of range");
    if (vec_.is_zero())
      throw std::invalid_argument("register content must be nonzero");
    for (const auto& t : vec_.terms())
      if (t.str.length() != width)
        throw std::invalid_argument("register term width mismatch");
  }

  int width() const { return width_; }
  const FockVector& vec() const { return vec_; }
  friend bool operator==(const RegisterVector&, const RegisterVector&) = default;

 private:
  int width_;
  FockVector vec_;
};

/// Pads every support string with zeros on the right to the given width.
/// The inverse needs the original length profile: padding with zeros is not
/// self-delimiting, and strings that are zero extensions of one another
/// collide under this map.
inline RegisterVector zero_extended_form(const FockVector& v, int width) {
  if (v.is_zero()) throw std::domain_error("zero vector has no length");
  if (width < base_length(v)) throw std::invalid_argument("register too small");
  std::vector<Term> out;
  out.reserve(v.terms().size());
  for (const auto& t : v.terms()) out.push_back({t.str.padded_to(width), t.amp});
  return RegisterVector(width, FockVector::from_terms(out));
}

/// Bilinear concatenation; |eps> is a two-sided identity.
inline FockVector concatenate(const FockVector& u, const FockVector& v) {
  std::vector<Term> out;
  out.reserve(u.terms().size() * v.terms().size());
  for (const auto& a : u.terms())
    for (const auto& b : v.terms())
      out.push_back({a.str.concat(b.str), a.amp * b.amp});
  return FockVector::from_terms(out);
}

inline RegisterVector tensor(const RegisterVector& a, const RegisterVector& b) {
  return RegisterVector(a.width() + b.width(), concatenate(a.vec(), b.vec()));
}

/// Deterministic phase convention: rotate so the largest-magnitude amplitude
/// (ties resolved toward canonical term order) becomes real positive.
inline FockVector phase_canonicalized(const FockVector& v) {
  if (v.is_zero()) return v;
  const Term* anchor = &v.terms().front();
  for (const auto& t : v.terms())
    if (std::abs(t.amp) > std::abs(anchor->amp) + kTolerance) anchor = &t;
  return v.scaled(std::abs(anchor->amp) / anchor->amp);
}

}  // namespace qlc
