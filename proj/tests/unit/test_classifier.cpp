#include <cmath>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "umbilic/classifier.hpp"
#include "umbilic/errors.hpp"

using namespace umbilic;

TEST_CASE("unimodular cases") {
  CHECK(classify_unimodular({1, 1, 1}).case_tag == "unimodular.1");
  CHECK(classify_unimodular({1, 1, 1}).group_label == "SU(2)");
  CHECK(classify_unimodular({0, 0, 0}).case_tag == "unimodular.1");
  CHECK(classify_unimodular({1, 1, 0}).case_tag == "unimodular.1");
  CHECK(classify_unimodular({0, -1, -1}).case_tag == "unimodular.1");

  const ClassificationReport geo = classify_unimodular({2, 1, -1});
  CHECK(geo.case_tag == "unimodular.2.geodesic");
  CHECK(geo.surfaces.size() == 2);
  CHECK_FALSE(geo.locally_conformally_flat);

  const ClassificationReport sol = classify_unimodular({1, 0, -1});
  CHECK(sol.case_tag == "unimodular.2.sol3");
  CHECK(sol.group_label == "Sol3");
  REQUIRE(sol.surfaces.size() == 3);
  CHECK(sol.surfaces[2].kind == SurfaceKind::InvariantUmbilicProfile);
  CHECK_FALSE(sol.locally_conformally_flat);

  const ClassificationReport none = classify_unimodular({3, 1, -1});
  CHECK(none.case_tag == "unimodular.3");
  CHECK(none.surfaces.empty());
}

TEST_CASE("unimodular classification ignores sign and order") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(-3, 3);
  std::vector<StructureConstants> cs{{1, 1, 1}, {2, 1, -1}, {1, 0, -1}, {3, 1, -1}, {1, 1, 0}};
  for (int n = 0; n < 100; ++n) cs.push_back({u(rng), u(rng), u(rng)});
  for (const StructureConstants& c : cs) {
    const std::string tag = classify_unimodular(c).case_tag;
    CHECK(classify_unimodular({c.c2, c.c3, c.c1}).case_tag == tag);
    CHECK(classify_unimodular({c.c2, c.c1, c.c3}).case_tag == tag);
    CHECK(classify_unimodular({-c.c1, -c.c2, -c.c3}).case_tag == tag);
  }
}

TEST_CASE("non-existence evidence") {
  CHECK(nonexistence_evidence_unimodular({1, 1, 2}).criterion ==
        NonexistenceCriterion::PositiveScalarCurvature);
  CHECK(nonexistence_evidence_unimodular({1, 1, 2}).rho == doctest::Approx(2.0));
  CHECK(nonexistence_evidence_unimodular({2, 1, -1}).criterion == NonexistenceCriterion::None);
  const NonexistenceEvidence g = nonexistence_evidence_unimodular({3, 1, -1});
  CHECK(g.criterion == NonexistenceCriterion::GenericPolynomial);
  CHECK(g.delta != 0.0);
  CHECK(g.beta_norm > 0.0);
  const NonexistenceEvidence nil = nonexistence_evidence_unimodular({1, 0, 0});
  CHECK(nil.criterion == NonexistenceCriterion::DeltaZero);
  CHECK(nil.beta_norm > 0.0);

  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int n = 0; n < 1000; ++n) {
    const NonexistenceEvidence e = nonexistence_evidence_unimodular({u(rng), u(rng), u(rng)});
    if (e.grad_bound_a && *e.grad_bound_a < 0.0) CHECK(e.rho > 0.0);
  }
}

TEST_CASE("non-unimodular cases") {
  const ClassificationReport h = classify_nonunimodular({0, 0.7});
  CHECK(h.case_tag == "nonunimodular.1");
  CHECK(h.group_label == "H3");
  CHECK(h.locally_conformally_flat);
  CHECK(classify_nonunimodular({1, 0}).case_tag == "nonunimodular.2");
  CHECK(classify_nonunimodular({1, 0}).locally_conformally_flat);

  const ClassificationReport four = classify_nonunimodular({0.5, 0});
  CHECK(four.case_tag == "nonunimodular.3");
  CHECK(four.surfaces.size() == 4);
  CHECK_FALSE(four.locally_conformally_flat);

  const ClassificationReport none = classify_nonunimodular({0.5, 1});
  CHECK(none.case_tag == "nonunimodular.4");
  CHECK(none.surfaces.empty());
  const ClassificationReport ek = classify_nonunimodular({1, 2});
  CHECK(ek.case_tag == "nonunimodular.4");
  REQUIRE(ek.evidence.find("note") != nullptr);
  CHECK(std::get<std::string>(*ek.evidence.find("note")) == "none (E(kappa,tau), tau!=0)");
}

TEST_CASE("exact branch policy") {
  const BranchTolerance exact{1e-9, true};
  CHECK(classify_unimodular({1, 1 + 1e-12, 1}).case_tag == "unimodular.1");
  CHECK(classify_unimodular({1, 1 + 1e-12, 1}, exact).case_tag == "unimodular.3");
  CHECK(classify_nonunimodular({1e-12, 0.5}).case_tag == "nonunimodular.1");
  CHECK(classify_nonunimodular({1e-12, 0.5}, exact).case_tag == "nonunimodular.4");
}

TEST_CASE("P and Q polynomials") {
  const double a = 2, b = 1;
  const double y0 = std::sqrt(2 * a) / std::sqrt(a * a + 3 * a + 2);
  CHECK(std::abs(y0 - 1 / std::sqrt(3.0)) < 1e-15);
  for (double y : {y0, -y0}) {
    CHECK(std::abs(gauss_p({a, b}, 0, y)) < 1e-14);
    const double expected = 2 * a * a * b * (a * a + a + 2) / ((a + 2) * (a + 2));
    CHECK(std::abs(gauss_q({a, b}, 0, y) - expected) < 1e-12);
    CHECK(expected == 4.0);
  }
}

TEST_CASE("Gauss locus") {
  // roots of the resultant of P and Q in y, back-substituted (frozen oracle values)
  const GaussLocus g = gauss_locus({0.02, 0.106});
  REQUIRE(g.solutions.size() == 4);
  const double expected[4][2] = {{-0.05529373, -0.54690678},
                                 {-0.01134098, -0.20100046},
                                 {0.01134098, 0.20100046},
                                 {0.05529373, 0.54690678}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(g.solutions[i].x - expected[i][0]) < 1e-8);
    CHECK(std::abs(g.solutions[i].y - expected[i][1]) < 1e-8);
    CHECK(g.solutions[i].p_residual < 1e-9);
    CHECK(g.solutions[i].q_residual < 1e-9);
  }
  CHECK(g.finite);
  CHECK(gauss_locus({0.057, 0.013}).solutions.size() == 4);
  // the oracle finds no common zero in the disk here
  CHECK(gauss_locus({2, 1}).solutions.empty());
  CHECK(gauss_locus({2.904, 2.55}).solutions.empty());

  CHECK_THROWS_AS(gauss_locus({2, 0}), ParameterOutOfRange);
  CHECK_THROWS_AS(gauss_locus({1, 0.5}), ParameterOutOfRange);
  CHECK_THROWS_AS(gauss_locus({0, 0.5}), ParameterOutOfRange);

  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> ua(0.1, 3), ub(0.1, 3);
  for (int n = 0; n < 50; ++n) {
    double a = ua(rng);
    while (std::abs(a - 1) < 0.05) a = ua(rng);
    const GaussLocus locus = gauss_locus({a, ub(rng)});
    CHECK(locus.finite);
    for (const auto& s : locus.solutions) CHECK(s.constant_angle_violation >= 1e-3);
  }
}

TEST_CASE("report JSON") {
  const auto j = nlohmann::ordered_json::parse(to_json(classify_unimodular({1, 0, -1})));
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  CHECK(keys == std::vector<std::string>{"family", "params", "group_label", "case", "surfaces",
                                         "evidence", "lcf"});
  CHECK(j["case"] == "unimodular.2.sol3");
  CHECK(j["evidence"]["grad_bound_a"] == 1.0);
  CHECK(j["surfaces"][0]["kind"] == "totally-geodesic-distribution");

  const auto n = nlohmann::ordered_json::parse(to_json(classify_unimodular({1, 1, 0})));
  CHECK(n["evidence"]["grad_bound_a"].is_null());
  CHECK(to_json(classify_nonunimodular({0.5, 1.0}), -1).find("\"surfaces\":[]") !=
        std::string::npos);
  // shortest round-trip reals
  CHECK(to_json(classify_nonunimodular({0.1, 0.0}), -1).find("\"a\":0.1,") != std::string::npos);
}
