/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace qlc;
using testutil::ket;
using testutil::state;

namespace {

Subspace plane() { return Subspace::from_orthonormal({ket("0"), ket("1")}); }

}  // namespace

TEST_CASE("ensemble validation") {
  CHECK_THROWS_AS(Ensemble({}), std::invalid_argument);
  CHECK_THROWS_AS(Ensemble({{0.5, ket("0")}, {0.6, ket("1")}}), std::invalid_argument);
  CHECK_THROWS_AS(Ensemble({{1.0, ket("0").scaled(0.5)}}), std::invalid_argument);
  CHECK_THROWS_AS(Ensemble({{-0.5, ket("0")}, {1.5, ket("1")}}), std::invalid_argument);
  CHECK_NOTHROW(Ensemble({{0.5, ket("0")}, {0.5, ket("0")}}));  // duplicates fine
}

TEST_CASE("subspace span and projection") {
  Subspace s = Subspace::span_of({ket("0"), ket("1"), state({{"0", 1.0}, {"1", 1.0}})});
  CHECK(s.dim() == 2);

  FockVector v = state({{"0", 1.0}, {"00", 1.0}});
  FockVector p = s.project(v);
  CHECK(std::abs(p.amplitude(BitString::parse("0")) -
                 Amplitude{1.0 / std::sqrt(2.0), 0.0}) < 1e-12);
  CHECK(p.amplitude(BitString::parse("00")) == Amplitude{0.0, 0.0});

  CHECK(lies_within(ket("0"), s));
  CHECK(lies_within(state({{"0", 1.0}, {"1", {0.0, 1.0}}}), s));
  CHECK_FALSE(lies_within(v, s));
  CHECK_FALSE(lies_within(ket("0"), Subspace{}));

  CHECK_THROWS_AS(Subspace::from_orthonormal({ket("0"), ket("0")}),
                  std::invalid_argument);
}

TEST_CASE("subspace probabilities on the plane-heavy mixture") {
  Ensemble e = testutil::load_ensemble("fig2.ens");

  CHECK_THAT(subspace_probability(e, plane()),
             Catch::Matchers::WithinAbs(0.875, 1e-9));
  CHECK_THAT(average_probability(e, plane()),
             Catch::Matchers::WithinAbs(0.4375, 1e-9));

  Subspace deep = Subspace::from_orthonormal({ket("00")});
  CHECK_THAT(relative_probability(e, deep, plane()),
             Catch::Matchers::WithinAbs(0.125, 1e-9));

  // Against the zero subspace the relative form reduces to the plain one.
  CHECK_THAT(relative_probability(e, plane(), Subspace{}),
             Catch::Matchers::WithinAbs(subspace_probability(e, plane()), 1e-12));

  CHECK_THROWS_WITH(relative_probability(e, plane(), plane()),
                    "subspaces are not orthogonal");
  CHECK_THROWS_AS(average_probability(e, Subspace{}), std::invalid_argument);
}

TEST_CASE("decomposition of the plane-heavy mixture") {
  Ensemble e = testutil::load_ensemble("fig2.ens");
  Decomposition d = decompose(e);

  REQUIRE(d.parts.size() == 2);
  CHECK(d.parts[0].subspace.dim() == 2);
  CHECK_THAT(d.parts[0].cond_avg_prob, Catch::Matchers::WithinAbs(0.4375, 1e-9));
  CHECK(d.parts[1].subspace.dim() == 1);
  CHECK_THAT(d.parts[1].cond_avg_prob, Catch::Matchers::WithinAbs(0.125, 1e-9));
  CHECK_FALSE(d.tie_warning);

  CHECK_THAT(d.trace(), Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(von_neumann_entropy(d),
             Catch::Matchers::WithinAbs(1.4185644431995963, 1e-9));

  // Parts are orthogonal and ordered by strictly decreasing probability.
  for (const auto& bx : d.parts[0].subspace.basis())
    for (const auto& by : d.parts[1].subspace.basis())
      CHECK(std::abs(inner_product(bx, by)) < 1e-9);
}

TEST_CASE("decomposition of the overlap mixture prefers the plane") {
  Ensemble e = testutil::load_ensemble("enoise.ens");
  Decomposition d = decompose(e);

  REQUIRE(d.parts.size() == 1);
  CHECK(d.parts[0].subspace.dim() == 2);
  CHECK_THAT(d.parts[0].cond_avg_prob, Catch::Matchers::WithinAbs(0.5, 1e-9));
  // Single rays tie with the plane at 0.5; the larger subspace wins.
  CHECK(d.tie_warning);
}

TEST_CASE("decomposition of a classical source") {
  Ensemble e = testutil::load_ensemble("classical3.ens");
  Decomposition d = decompose(e);

  REQUIRE(d.parts.size() == 2);
  CHECK(d.parts[0].subspace.dim() == 1);
  CHECK_THAT(d.parts[0].cond_avg_prob, Catch::Matchers::WithinAbs(0.5, 1e-9));
  CHECK(d.parts[1].subspace.dim() == 2);
  CHECK_THAT(d.parts[1].cond_avg_prob, Catch::Matchers::WithinAbs(0.25, 1e-9));
  CHECK_THAT(von_neumann_entropy(d), Catch::Matchers::WithinAbs(1.5, 1e-9));
}

TEST_CASE("decomposition matches the dense brute-force oracle") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 150; ++trial) {
    Ensemble e = testutil::random_ensemble(rng);
    Decomposition d = decompose(e);
    auto expected = oracle::decompose(oracle::embed(e));

    auto got = d.density_eigenvalues();
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK_THAT(got[i].first, Catch::Matchers::WithinAbs(expected[i].first, 1e-9));
      CHECK(got[i].second == expected[i].second);
    }
    CHECK_THAT(d.trace(), Catch::Matchers::WithinAbs(1.0, 1e-9));

    // Eigenvalues strictly decrease after merging.
    for (std::size_t i = 1; i < got.size(); ++i)
      CHECK(got[i - 1].first > got[i].first + 1e-9);
  }
}

TEST_CASE("decompose enforces the exhaustive search cap") {
  std::vector<WeightedState> items;
  for (int i = 0; i < 13; ++i)
    items.push_back({i == 0 ? 1.0 - 0.01 * 12 : 0.01,
                     FockVector::basis(BitString(static_cast<std::uint32_t>(i), 4))});
  Ensemble e(std::move(items));
  CHECK_THROWS_WITH(decompose(e),
                    "decompose supports at most 12 ensemble states (got 13)");
  CHECK_NOTHROW(decompose(e, 13));
}
