#include <cmath>
#include <random>

#include "doctest.h"
#include "umbilic/errors.hpp"
#include "umbilic/lie_algebra.hpp"
#include "umbilic/oracles.hpp"

using namespace umbilic;

namespace {

AlgebraVector e(int i) {
  AlgebraVector v;
  v[static_cast<std::size_t>(i)] = 1.0;
  return v;
}

double max_diff(const AlgebraVector& a, const AlgebraVector& b) { return max_abs(a - b); }

Bracket unimodular_bracket(const StructureConstants& c) {
  return [c](const AlgebraVector& x, const AlgebraVector& y) { return bracket_unimodular(c, x, y); };
}

Bracket nonunimodular_bracket(const NonUnimodularParams& p) {
  return [p](const AlgebraVector& x, const AlgebraVector& y) {
    return bracket_nonunimodular(p, x, y);
  };
}

}  // namespace

TEST_CASE("mu triple from structure constants") {
  CHECK(mu_from_c({0, 0, 0}) == MuTriple{0, 0, 0});
  CHECK(mu_from_c({1, 1, 1}) == MuTriple{0.5, 0.5, 0.5});
  CHECK(mu_from_c({1, 0, -1}) == MuTriple{-1, 0, 1});
  const StructureConstants c{0.3, -1.7, 2.25};
  const StructureConstants back = c_from_mu(mu_from_c(c));
  CHECK(back.c1 == doctest::Approx(c.c1).epsilon(1e-15));
  CHECK(back.c2 == doctest::Approx(c.c2).epsilon(1e-15));
  CHECK(back.c3 == doctest::Approx(c.c3).epsilon(1e-15));
}

TEST_CASE("mu ordering is reversed relative to c ordering") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int n = 0; n < 200; ++n) {
    const StructureConstants c{u(rng), u(rng), u(rng)};
    const MuTriple m = mu_from_c(c);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (c[i] < c[j]) CHECK(m[j] < m[i]);
  }
}

TEST_CASE("unimodular bracket") {
  CHECK(bracket_unimodular({1, 0, -1}, e(0), e(1)) == AlgebraVector{0, 0, -1});
  CHECK(bracket_unimodular({1, 1, 1}, e(1), e(2)) == AlgebraVector{1, 0, 0});
  const AlgebraVector x{0.3, -2.0, 1.1};
  CHECK(max_abs(bracket_unimodular({2, 5, -3}, x, x)) == 0.0);
}

TEST_CASE("non-unimodular bracket") {
  const NonUnimodularParams p(0.5, 0.7);
  CHECK(max_abs(bracket_nonunimodular(p, e(0), e(1))) == 0.0);
  CHECK(max_diff(bracket_nonunimodular(p, e(2), e(0)), {1.5, 1.5 * 0.7, 0.0}) < 1e-15);
  CHECK(max_diff(bracket_nonunimodular(p, e(1), e(2)), {0.5 * 0.7, -0.5, 0.0}) < 1e-15);
  CHECK(max_abs(bracket_nonunimodular(p, e(2), e(2))) == 0.0);
  // trace of ad_{E3}
  const double trace = bracket_nonunimodular(p, e(2), e(0))[0] + bracket_nonunimodular(p, e(2), e(1))[1];
  CHECK(trace == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("parameters must be non-negative") {
  CHECK_THROWS_AS(NonUnimodularParams(-0.1, 0.0), ParameterOutOfRange);
  CHECK_THROWS_AS(NonUnimodularParams(0.0, -1.0), ParameterOutOfRange);
  CHECK_THROWS_AS(NonUnimodularParams(std::nan(""), 0.0), ParameterOutOfRange);
  CHECK_NOTHROW(NonUnimodularParams(0.0, 0.0));
}

TEST_CASE("unimodular connection table entries") {
  const ConnectionTable zero = connection_unimodular({0, 0, 0});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(zero(i, j, k) == 0.0);

  const ConnectionTable sol = connection_unimodular({1, 0, -1});
  CHECK(sol(0, 1, 2) == -1.0);
  CHECK(sol(1, 2, 0) == 0.0);
  CHECK(sol(2, 0, 1) == 1.0);

  const ConnectionTable su = connection_unimodular({1, 1, 1});
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) CHECK(su(i, i, k) == 0.0);
}

TEST_CASE("non-unimodular connection table entries") {
  const ConnectionTable h = connection_nonunimodular({0, 0});
  CHECK(h(0, 0, 2) == 1.0);
  CHECK(h(1, 1, 2) == 1.0);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) CHECK(h(2, j, k) == 0.0);
  CHECK(connection_nonunimodular({0.4, 1.3})(2, 0, 1) == 1.3);
  CHECK(connection_nonunimodular({1, 0})(1, 1, 2) == 0.0);
}

TEST_CASE("connection tables are metric and torsion free") {
  CHECK(verify_connection(connection_unimodular({1, 0, -1}), unimodular_bracket({1, 0, -1})).max() ==
        0.0);
  const NonUnimodularParams p(0.5, 0.7);
  CHECK(verify_connection(connection_nonunimodular(p), nonunimodular_bracket(p)).max() < 1e-14);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3), w(0, 3);
  for (int n = 0; n < 200; ++n) {
    const StructureConstants c{u(rng), u(rng), u(rng)};
    CHECK(verify_connection(connection_unimodular(c), unimodular_bracket(c)).max() < 1e-14);
    const NonUnimodularParams q(w(rng), w(rng));
    CHECK(verify_connection(connection_nonunimodular(q), nonunimodular_bracket(q)).max() < 1e-14);
  }
}

TEST_CASE("a corrupted table is detected") {
  const StructureConstants c{2, 1, -1};
  ConnectionTable t = connection_unimodular(c);
  t(1, 0, 2) += 1e-3;
  CHECK(verify_connection(t, unimodular_bracket(c)).max() >= 1e-3);
}

TEST_CASE("tables agree with the Koszul formula") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3), w(0, 3);
  for (int n = 0; n < 50; ++n) {
    const StructureConstants c{u(rng), u(rng), u(rng)};
    const ConnectionTable k = oracle::koszul_connection(tabulate(unimodular_bracket(c)));
    const ConnectionTable t = connection_unimodular(c);
    const NonUnimodularParams p(w(rng), w(rng));
    const ConnectionTable k2 = oracle::koszul_connection(tabulate(nonunimodular_bracket(p)));
    const ConnectionTable t2 = connection_nonunimodular(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
          CHECK(std::abs(k(i, j, l) - t(i, j, l)) < 1e-14);
          CHECK(std::abs(k2(i, j, l) - t2(i, j, l)) < 1e-14);
        }
  }
}

TEST_CASE("curvature examples") {
  const FamilyData sol = StructureConstants{1, 0, -1};
  CHECK(max_diff(curvature(sol, e(0), e(1), e(1)), {-1, 0, 0}) < 1e-15);
  const AlgebraVector x{0.2, 0.4, -1.0}, z{1, 2, 3};
  CHECK(max_abs(curvature(sol, x, x, z)) < 1e-15);
  CHECK(max_abs(curvature(FamilyData{NonUnimodularParams{0.7, 0.2}}, x, x, z)) < 1e-15);
  for (double b : {0.0, 0.5, 2.0}) {
    const FamilyData h = NonUnimodularParams{0.0, b};
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        CHECK(sectional_curvature(h, e(i), e(j)) == doctest::Approx(-1.0).epsilon(1e-14));
  }
}

TEST_CASE("curvature decomposition matches the brute-force oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3), w(0, 3);
  for (int n = 0; n < 200; ++n) {
    const StructureConstants c{u(rng), u(rng), u(rng)};
    const NonUnimodularParams p(w(rng), w(rng));
    const ConnectionTable tc = connection_unimodular(c);
    const BracketTable bc = tabulate(unimodular_bracket(c));
    const ConnectionTable tp = connection_nonunimodular(p);
    const BracketTable bp = tabulate(nonunimodular_bracket(p));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          CHECK(max_diff(curvature(FamilyData{c}, e(i), e(j), e(k)),
                         oracle::curvature_bruteforce(tc, bc, e(i), e(j), e(k))) < 1e-12);
          CHECK(max_diff(curvature(FamilyData{p}, e(i), e(j), e(k)),
                         oracle::curvature_bruteforce(tp, bp, e(i), e(j), e(k))) < 1e-12);
        }
  }
}

TEST_CASE("invariant scalars") {
  const InvariantScalars sol = invariant_scalars({1, 0, -1});
  CHECK(sol.beta == std::array<double, 3>{-1, 0, 1});
  CHECK(sol.delta == -2.0);
  CHECK(sol.rho == -2.0);
  REQUIRE(sol.grad_bound_a.has_value());
  CHECK(*sol.grad_bound_a == 1.0);

  CHECK(invariant_scalars({1, 1, 1}).beta == std::array<double, 3>{0, 0, 0});

  const InvariantScalars s = invariant_scalars({2, 1, -1});
  CHECK(mu_from_c({2, 1, -1}) == MuTriple{-1, 0, 2});
  CHECK(s.beta == std::array<double, 3>{-4, 2, 2});
  CHECK(s.delta == -12.0);
  CHECK(s.rho == -4.0);

  // mu = (0, 0, 1): the denominator vanishes
  CHECK_FALSE(invariant_scalars(c_from_mu({0, 0, 1})).grad_bound_a.has_value());
}

TEST_CASE("scalar curvature matches the double trace") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int n = 0; n < 200; ++n) {
    const StructureConstants c{u(rng), u(rng), u(rng)};
    CHECK(std::abs(scalar_curvature(FamilyData{c}) - invariant_scalars(c).rho) < 1e-12);
  }
}

TEST_CASE("beta sum vanishes and its zero set") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int n = 0; n < 10000; ++n) {
    const auto b = invariant_scalars(c_from_mu({u(rng), u(rng), u(rng)})).beta;
    CHECK(std::abs(b[0] + b[1] + b[2]) < 1e-14 * std::max(1.0, std::abs(b[0]) + std::abs(b[2])));
  }
  const double grid[] = {-2, -1, 0, 0.5, 1, 3};
  for (double m1 : grid)
    for (double m2 : grid)
      for (double m3 : grid) {
        const auto b = invariant_scalars(c_from_mu({m1, m2, m3})).beta;
        const bool all_zero = b[0] == 0.0 && b[1] == 0.0 && b[2] == 0.0;
        const int zeros = (m1 == 0.0) + (m2 == 0.0) + (m3 == 0.0);
        const bool expected = (m1 == m2 && m2 == m3) || zeros >= 2;
        CHECK(all_zero == expected);
      }
}

TEST_CASE("normalization keeps the bracket relations") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int n = 0; n < 200; ++n) {
    const StructureConstants c{u(rng), u(rng), u(rng)};
    const Normalization nz = normalize(c);
    CHECK(nz.constants.c3 <= nz.constants.c2);
    CHECK(nz.constants.c2 <= nz.constants.c1);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        // bracket of normalized frame vectors, computed in the original frame
        const AlgebraVector fi = nz.to_original(e(i));
        const AlgebraVector fj = nz.to_original(e(j));
        const AlgebraVector lhs = bracket_unimodular(c, fi, fj);
        const AlgebraVector rhs = nz.to_original(bracket_unimodular(nz.constants, e(i), e(j)));
        CHECK(max_diff(lhs, rhs) < 1e-14);
      }
  }
}

TEST_CASE("group identification") {
  CHECK(identify_unimodular_group({1, 1, 1}) == GroupLabel::SU2);
  CHECK(identify_unimodular_group({1, 1, -1}) == GroupLabel::SL2);
  CHECK(identify_unimodular_group({1, 1, 0}) == GroupLabel::E2);
  CHECK(identify_unimodular_group({1, 0, -1}) == GroupLabel::Sol3);
  CHECK(identify_unimodular_group({1, 0, 0}) == GroupLabel::Nil3);
  CHECK(identify_unimodular_group({0, 0, 0}) == GroupLabel::R3);

  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int n = 0; n < 300; ++n) {
    std::array<double, 3> v{u(rng), u(rng), u(rng)};
    // force some zeros so every row is exercised
    if (n % 3 == 0) v[static_cast<std::size_t>(pick(rng))] = 0.0;
    if (n % 5 == 0) v[static_cast<std::size_t>(pick(rng))] = 0.0;
    const GroupLabel g = identify_unimodular_group({v[0], v[1], v[2]});
    CHECK(identify_unimodular_group({-v[0], -v[1], -v[2]}) == g);
    CHECK(identify_unimodular_group({v[1], v[2], v[0]}) == g);
    CHECK(identify_unimodular_group({v[1], v[0], v[2]}) == g);
  }
}

TEST_CASE("E(kappa, tau) detection") {
  const auto kt = detect_ektau({1, 1, 2});
  REQUIRE(kt.has_value());
  CHECK(kt->tau == 1.0);
  CHECK(kt->kappa == 2.0);
  CHECK_FALSE(detect_ektau({1, 0, -1}).has_value());
  CHECK_FALSE(detect_ektau({1, 1, 0}).has_value());
  CHECK_FALSE(detect_ektau({1, 1, 1}).has_value());
}

TEST_CASE("branch tolerance") {
  const BranchTolerance loose;
  CHECK(loose.equal(1.0, 1.0 + 1e-12, 1.0));
  CHECK_FALSE(loose.equal(1.0, 1.0 + 1e-6, 1.0));
  const BranchTolerance exact{1e-9, true};
  CHECK_FALSE(exact.equal(1.0, 1.0 + 1e-12, 1.0));
  CHECK(exact.zero(0.0, 5.0));
}
