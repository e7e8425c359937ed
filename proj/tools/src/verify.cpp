#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "umbilic/classifier.hpp"
#include "umbilic/constructor.hpp"
#include "umbilic/oracles.hpp"
#include "umbilic/random.hpp"
#include "umbilic/surface.hpp"

namespace umbilic::cli {

namespace {

AlgebraVector basis(int i) {
  AlgebraVector e;
  e[static_cast<std::size_t>(i)] = 1.0;
  return e;
}

double max_diff(const AlgebraVector& a, const AlgebraVector& b) { return max_abs(a - b); }

struct Suite {
  const VerifyOptions& opt;
  SplitMix64 root;
  std::vector<PropertyResult> out;

  SplitMix64 stream(std::uint64_t k) const { return root.split(k); }
  bool corrupted(const std::string& name) const { return opt.corrupt == name; }

  void at_most(std::string name, double value, double bound) {
    out.push_back({std::move(name), value, bound, Bound::AtMost});
  }
  void at_least(std::string name, double value, double bound) {
    out.push_back({std::move(name), value, bound, Bound::AtLeast});
  }

  void connection() {
    SplitMix64 g = stream(1);
    double worst = 0.0;
    for (int n = 0; n < opt.samples; ++n) {
      const StructureConstants c{g.uniform(-3, 3), g.uniform(-3, 3), g.uniform(-3, 3)};
      const NonUnimodularParams p(g.uniform(0, 3), g.uniform(0, 3));
      ConnectionTable tc = connection_unimodular(c);
      ConnectionTable tp = connection_nonunimodular(p);
      if (corrupted("connection")) {
        tc(0, 1, 2) += 1e-3;
        tp(0, 1, 2) += 1e-3;
      }
      worst = std::max(worst, verify_connection(tc, [&](const auto& x, const auto& y) {
                                return bracket_unimodular(c, x, y);
                              }).max());
      worst = std::max(worst, verify_connection(tp, [&](const auto& x, const auto& y) {
                                return bracket_nonunimodular(p, x, y);
                              }).max());
    }
    at_most("connection", worst, 1e-14);
  }

  void christoffel() {
    SplitMix64 g = stream(2);
    double worst = 0.0;
    for (int n = 0; n < std::min(opt.samples, 50); ++n) {
      const NonUnimodularParams p(g.uniform(0, 3), g.uniform(0, 3));
      const Matrix2 a = nonunimodular_matrix(p);
      const GroupPoint q{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1) / std::max(1.0, a.frobenius())};
      const ConnectionTable fd = oracle::christoffel_frame(a, q);
      const ConnectionTable t = connection_nonunimodular(p);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(fd(i, j, k) - t(i, j, k)));
    }
    at_most("christoffel_from_metric", worst, 1e-6);
  }

  void curvature_checks() {
    SplitMix64 g = stream(3);
    double worst = 0.0;
    for (int n = 0; n < opt.samples; ++n) {
      const StructureConstants c{g.uniform(-3, 3), g.uniform(-3, 3), g.uniform(-3, 3)};
      const NonUnimodularParams p(g.uniform(0, 3), g.uniform(0, 3));
      const ConnectionTable tc = connection_unimodular(c), tp = connection_nonunimodular(p);
      const BracketTable bc = tabulate([&](const auto& x, const auto& y) {
        return bracket_unimodular(c, x, y);
      });
      const BracketTable bp = tabulate([&](const auto& x, const auto& y) {
        return bracket_nonunimodular(p, x, y);
      });
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) {
            worst = std::max(worst, max_diff(curvature(c, basis(i), basis(j), basis(k)),
                                             oracle::curvature_bruteforce(tc, bc, basis(i),
                                                                          basis(j), basis(k))));
            worst = std::max(worst, max_diff(curvature(p, basis(i), basis(j), basis(k)),
                                             oracle::curvature_bruteforce(tp, bp, basis(i),
                                                                          basis(j), basis(k))));
          }
    }
    at_most("curvature_decomposition", worst, 1e-12);

    double sec = 0.0;
    for (int n = 0; n < 100; ++n) {
      const NonUnimodularParams h(0.0, g.uniform(0, 3));
      const AlgebraVector x{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
      const AlgebraVector y{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
      sec = std::max(sec, std::abs(sectional_curvature(h, x, y) + 1.0));
    }
    at_most("hyperbolic_sectional_curvature", sec, 1e-9);
  }

  void scalars() {
    SplitMix64 g = stream(4);
    double worst = 0.0;
    for (int n = 0; n < 50 * opt.samples; ++n) {
      const MuTriple mu{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
      const auto b = invariant_scalars(c_from_mu(mu)).beta;
      worst = std::max(worst, std::abs(b[0] + b[1] + b[2]));
    }
    at_most("beta_sum", worst, 1e-14);

    const InvariantScalars s = invariant_scalars({1, 0, -1});
    double anchor = std::max({std::abs(s.beta[0] + 1), std::abs(s.beta[1]),
                              std::abs(s.beta[2] - 1), std::abs(s.delta + 2), std::abs(s.rho + 2)});
    anchor = std::max(anchor, s.grad_bound_a ? std::abs(*s.grad_bound_a - 1) : 1.0);
    at_most("sol3_anchor_values", anchor, 0.0);
  }

  void geodesic() {
    SplitMix64 g = stream(5);
    double worst = 0.0;
    for (int n = 0; n < std::max(1, opt.samples / 4); ++n) {
      const double c1 = g.uniform(0.01, 3), c3 = g.uniform(-3, -0.01);
      const StructureConstants c{c1, c1 + c3, c3};
      const auto ds = geodesic_distributions_unimodular(c);
      if (ds.size() != 2) worst = std::numeric_limits<double>::infinity();
      for (const auto& d : ds)
        worst = std::max({worst, algebraic_second_form(c, d).max_abs(), subalgebra_defect(c, d)});
      const NonUnimodularParams p(g.uniform(0, 3), 0.0);
      for (const auto& d : geodesic_distributions_nonunimodular(p))
        worst = std::max({worst, algebraic_second_form(p, d).max_abs(), subalgebra_defect(p, d)});
    }
    at_most("totally_geodesic_distributions", worst, 1e-12);

    double plane = 0.0;
    for (int n = 0; n < std::max(1, opt.samples / 4); ++n) {
      const AmbientModel m = AmbientModel::nonunimodular({g.uniform(0, 3), 0.0});
      const SurfacePatch s = coordinate_plane(m, n % 2, g.uniform(-1, 1), {-1, 1, -1, 1});
      const ShapeSample sh = shape_operator(s, g.uniform(-1, 1), g.uniform(-1, 1));
      plane = std::max({plane, sh.residual, std::abs(sh.lambda)});
    }
    at_most("coordinate_planes_geodesic", plane, 1e-10);
  }

  void profiles() {
    double drift = 0.0, zpp = 0.0, below = 0.0;
    for (double a : {0.5, 2.0, 3.0})
      for (double lam : {0.5, 1.0, 4.0}) {
        const UmbilicProfile p = solve_profile_closed(a, lam, 5.0, 1e-3);
        for (const ProfileSample& s : p.samples()) {
          drift = std::max(drift, std::abs(p.first_integral_drift(s)));
          below = std::max(below, p.theta() - s.z);
        }
        const double th = p.theta();
        const double expected = (3 * a - 1) * lam * lam * std::exp(2 * (3 * a - 1) * th) -
                                (a - 1) * std::exp(2 * (a - 1) * th);
        zpp = std::max(zpp, std::abs(p.samples()[p.samples().size() / 2].zpp - expected));
      }
    at_most("profile_first_integral", drift, 1e-6);
    at_most("profile_lower_bound", below, 0.0);
    at_most("profile_initial_curvature", zpp, 1e-10);

    double umb = 0.0, ids = 0.0;
    for (InvarianceDirection dir : {InvarianceDirection::X, InvarianceDirection::Y}) {
      const UmbilicProfile p = solve_profile_closed(2.0, 1.0, 5.0, 1e-3, dir);
      const SurfacePatch s = build_invariant_surface(p);
      for (int i = 1; i < 20; ++i)
        for (int j = 1; j < 5; ++j) {
          const double u = -1 + 2.0 * j / 5.0;
          const double v = p.y_min() + (p.y_max() - p.y_min()) * i / 20.0;
          umb = std::max(umb, shape_operator(s, u, v).relative_residual());
          ids = std::max(ids, grad_lambda_residual(s, u, v));
          for (double r : angle_gradient_residual(s, u, v)) ids = std::max(ids, r);
          for (const auto& r : pointwise_system_residuals(s, u, v, ResidualFamily::NonUnimodular))
            ids = std::max(ids, std::abs(r.value));
        }
    }
    at_most("invariant_surface_umbilicity", umb, 1e-5);
    at_most("invariant_surface_identities", ids, 1e-4);
  }

  void shooting() {
    const UmbilicProfile p = solve_profile_shooting(-1.0, 0.0, 1e-3, 5.0);
    const SurfacePatch s = build_invariant_surface(p);
    double umb = 0.0, ids = 0.0, lam = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 20; ++i) {
      const double v = p.y_min() + (p.y_max() - p.y_min()) * i / 20.0;
      const ShapeSample sh = shape_operator(s, 0.3, v);
      umb = std::max(umb, sh.relative_residual());
      lam = std::min(lam, std::abs(sh.lambda));
      ids = std::max(ids, grad_lambda_residual(s, 0.3, v));
      for (double r : angle_gradient_residual(s, 0.3, v)) ids = std::max(ids, r);
      for (const auto& r : pointwise_system_residuals(s, 0.3, v, ResidualFamily::Unimodular))
        ids = std::max(ids, std::abs(r.value));
    }
    at_most("sol3_shooting_umbilicity", umb, 1e-4);
    at_least("sol3_shooting_min_abs_lambda", lam, 0.1);
    at_most("sol3_shooting_identities", ids, 1e-4);

    const UmbilicProfile closed = solve_profile_closed(2.0, 1.0, 5.0, 1e-3);
    const UmbilicProfile shot = solve_profile_shooting(-1.0 / 3.0, 3.0 * closed.theta(), 1e-3, 5.0);
    at_most("shooting_matches_closed_form", rescaled_defect(shot, closed).max_distance, 1e-4);
  }

  void congruence() {
    const UmbilicProfile p1 = solve_profile_closed(2.0, 1.0, 5.0, 1e-3);
    const UmbilicProfile p2 = solve_profile_closed(2.0, std::exp(4.0), 5.0, 1e-3);
    const ProfileComparison c = congruence_defect(p1, p2, -1.0);
    at_most("congruence_profile_mapping",
            c.compared == p1.samples().size() ? c.max_distance : 1.0, 1e-6);
    SplitMix64 g = stream(6);
    double iso = 0.0;
    for (int n = 0; n < 10; ++n) {
      const GroupPoint q{g.uniform(-0.5, 0.5), g.uniform(-0.5, 0.5), g.uniform(-0.5, 0.5)};
      iso = std::max(iso, oracle::isometry_defect(nonunimodular_matrix({2.0, 0.0}),
                                                  congruence_map(2.0, -1.0), q));
    }
    at_most("congruence_isometry", iso, 1e-10);
  }

  void gauss() {
    SplitMix64 g = stream(7);
    double margin = std::numeric_limits<double>::infinity();
    double infinite = 0.0;
    for (int n = 0; n < std::max(1, opt.samples / 4); ++n) {
      double a = g.uniform(0.1, 3);
      while (std::abs(a - 1) < 0.05) a = g.uniform(0.1, 3);
      const GaussLocus locus = gauss_locus({a, g.uniform(0.1, 3)});
      if (!locus.finite) infinite += 1.0;
      for (const auto& s : locus.solutions) margin = std::min(margin, s.constant_angle_violation);
    }
    at_most("gauss_locus_not_finite", infinite, 0.0);
    at_least("gauss_locus_constant_angle_violation", margin, 1e-3);
    const double a = 2, b = 1, y = std::sqrt(2 * a) / std::sqrt(a * a + 3 * a + 2);
    const double expected = 2 * a * a * b * (a * a + a + 2) / ((a + 2) * (a + 2));
    at_most("gauss_q_anchor",
            std::max(std::abs(gauss_q({a, b}, 0, y) - expected),
                     std::abs(gauss_q({a, b}, 0, -y) - expected)),
            1e-12);
  }

  void classifier() {
    double wrong = 0.0;
    auto expect = [&](const ClassificationReport& r, const char* tag) {
      if (r.case_tag != tag) wrong += 1.0;
    };
    expect(classify_unimodular({1, 1, 1}), "unimodular.1");
    expect(classify_unimodular({2, 1, -1}), "unimodular.2.geodesic");
    expect(classify_unimodular({1, 0, -1}), "unimodular.2.sol3");
    expect(classify_nonunimodular({0, 0.7}), "nonunimodular.1");
    expect(classify_nonunimodular({0.5, 0}), "nonunimodular.3");
    expect(classify_nonunimodular({0.5, 1}), "nonunimodular.4");
    at_most("classifier_examples", wrong, 0.0);
  }
};

}  // namespace

const std::vector<std::string>& corruptible_properties() {
  static const std::vector<std::string> names{"connection"};
  return names;
}

std::vector<PropertyResult> run_property_suite(const VerifyOptions& options) {
  Suite s{options, SplitMix64(options.seed), {}};
  s.connection();
  s.christoffel();
  s.curvature_checks();
  s.scalars();
  s.geodesic();
  s.profiles();
  s.shooting();
  s.congruence();
  s.gauss();
  s.classifier();
  return s.out;
}

void write_table(std::ostream& out, const std::vector<PropertyResult>& results) {
  char buf[256];
  for (const PropertyResult& r : results) {
    std::snprintf(buf, sizeof buf, "%-38s %s %.3e  %s %.1e  %s\n", r.name.c_str(),
                  r.kind == Bound::AtMost ? "max" : "min", r.value,
                  r.kind == Bound::AtMost ? "<=" : ">=", r.bound, r.pass() ? "PASS" : "FAIL");
    out << buf;
  }
}

}  // namespace umbilic::cli
