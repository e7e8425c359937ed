#include "umbilic/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "umbilic/constructor.hpp"
#include "umbilic/errors.hpp"

namespace umbilic {

Record& Record::set(std::string key, RecordValue value) {
  for (auto& [k, v] : entries_)
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  entries_.emplace_back(std::move(key), std::move(value));
  return *this;
}

const RecordValue* Record::find(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

std::string_view to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::TotallyGeodesicDistribution: return "totally-geodesic-distribution";
    case SurfaceKind::InvariantUmbilicProfile: return "invariant-umbilic-profile";
    case SurfaceKind::ConstantCurvatureClassical: return "constant-curvature-classical";
    case SurfaceKind::None: break;
  }
  return "none";
}

std::string_view to_string(NonexistenceCriterion criterion) {
  switch (criterion) {
    case NonexistenceCriterion::PositiveScalarCurvature: return "positive-scalar-curvature";
    case NonexistenceCriterion::ZeroScalarCurvature: return "zero-scalar-curvature";
    case NonexistenceCriterion::DeltaZero: return "delta-zero";
    case NonexistenceCriterion::GenericPolynomial: return "generic-polynomial";
    case NonexistenceCriterion::None: break;
  }
  return "none";
}

namespace {

std::vector<double> components(const AlgebraVector& v) { return {v[0], v[1], v[2]}; }

SurfaceFamily distribution_family(const GeodesicDistribution& d) {
  Record r;
  r.set("normal", components(d.normal));
  r.set("span", std::vector<std::vector<double>>{components(d.span[0]), components(d.span[1])});
  return {SurfaceKind::TotallyGeodesicDistribution, std::move(r)};
}

SurfaceFamily classical_family(const std::string& space) {
  Record r;
  r.set("space", space);
  return {SurfaceKind::ConstantCurvatureClassical, std::move(r)};
}

bool is_case_one(const StructureConstants& k, double scale, const BranchTolerance& tol) {
  return tol.equal(k.c1, k.c2, scale) && (tol.equal(k.c2, k.c3, scale) || tol.zero(k.c3, scale));
}

bool is_case_two(const StructureConstants& k, double scale, const BranchTolerance& tol) {
  return k.c3 < 0.0 && k.c1 > 0.0 && !tol.zero(k.c3, scale) && !tol.zero(k.c1, scale) &&
         tol.equal(k.c2, k.c1 + k.c3, scale);
}

}  // namespace

NonexistenceEvidence nonexistence_evidence_unimodular(const StructureConstants& c,
                                                      const BranchTolerance& tol) {
  const InvariantScalars s = invariant_scalars(c);
  NonexistenceEvidence e;
  e.beta = s.beta;
  e.beta_norm = std::sqrt(s.beta[0] * s.beta[0] + s.beta[1] * s.beta[1] + s.beta[2] * s.beta[2]);
  e.delta = s.delta;
  e.rho = s.rho;
  e.grad_bound_a = s.grad_bound_a;

  const Normalization n = normalize(c, tol);
  const double scale = c.sup_norm();
  if (is_case_one(n.constants, scale, tol) || is_case_two(n.constants, scale, tol)) return e;
  const double scale2 = std::max(1.0, scale * scale);
  if (s.rho > 0.0 && !tol.zero(s.rho, scale2))
    e.criterion = NonexistenceCriterion::PositiveScalarCurvature;
  else if (tol.zero(s.rho, scale2))
    e.criterion = NonexistenceCriterion::ZeroScalarCurvature;
  else if (tol.zero(s.delta, std::max(1.0, scale2 * scale)))
    e.criterion = NonexistenceCriterion::DeltaZero;
  else
    e.criterion = NonexistenceCriterion::GenericPolynomial;
  return e;
}

ClassificationReport classify_unimodular(const StructureConstants& c, const BranchTolerance& tol) {
  const Normalization n = normalize(c, tol);
  const StructureConstants& k = n.constants;
  const double scale = c.sup_norm();

  ClassificationReport r;
  r.family = FamilyKind::Unimodular;
  r.params.set("c1", k.c1).set("c2", k.c2).set("c3", k.c3);
  r.group_label = std::string(to_string(identify_unimodular_group(c, tol)));

  if (is_case_one(k, scale, tol)) {
    r.case_tag = "unimodular.1";
    const bool sphere = k.c3 > 0.0 && !tol.zero(k.c3, scale);
    r.surfaces.push_back(classical_family(sphere ? "S3" : "R3"));
    r.locally_conformally_flat = true;
  } else if (is_case_two(k, scale, tol)) {
    for (const GeodesicDistribution& d : geodesic_distributions_unimodular(c, tol))
      r.surfaces.push_back(distribution_family(d));
    if (tol.zero(k.c2, scale)) {
      r.case_tag = "unimodular.2.sol3";
      Record profile;
      profile.set("model", std::string("diag(1,c)"))
          .set("c", -1.0)
          .set("homothety", k.c1)
          .set("direction", std::string("x-invariant"));
      r.surfaces.push_back({SurfaceKind::InvariantUmbilicProfile, std::move(profile)});
    } else {
      r.case_tag = "unimodular.2.geodesic";
    }
  } else {
    r.case_tag = "unimodular.3";
  }

  const NonexistenceEvidence e = nonexistence_evidence_unimodular(c, tol);
  r.evidence.set("beta", std::vector<double>(e.beta.begin(), e.beta.end()))
      .set("delta", e.delta)
      .set("rho", e.rho);
  if (e.grad_bound_a)
    r.evidence.set("grad_bound_a", *e.grad_bound_a);
  else
    r.evidence.set("grad_bound_a", nullptr);
  r.evidence.set("nonexistence", std::string(to_string(e.criterion)));
  return r;
}

ClassificationReport classify_nonunimodular(const NonUnimodularParams& p,
                                            const BranchTolerance& tol) {
  const double a = p.a(), b = p.b();
  const double scale = std::max(a, b);
  ClassificationReport r;
  r.family = FamilyKind::NonUnimodular;
  r.params.set("a", a).set("b", b);

  if (tol.zero(a, scale)) {
    r.group_label = "H3";
    r.case_tag = "nonunimodular.1";
    r.surfaces.push_back(classical_family("H3"));
    r.locally_conformally_flat = true;
  } else if (tol.equal(a, 1.0, scale) && tol.zero(b, scale)) {
    r.group_label = "H2xR";
    r.case_tag = "nonunimodular.2";
    r.surfaces.push_back(classical_family("H2xR"));
    r.locally_conformally_flat = true;
  } else if (tol.zero(b, scale)) {
    r.group_label = "R2 x_A R";
    r.case_tag = "nonunimodular.3";
    for (const GeodesicDistribution& d : geodesic_distributions_nonunimodular(p, tol))
      r.surfaces.push_back(distribution_family(d));
    for (const char* dir : {"x-invariant", "y-invariant"}) {
      Record profile;
      profile.set("model", std::string("A(a,0)")).set("a", a).set("direction", std::string(dir));
      r.surfaces.push_back({SurfaceKind::InvariantUmbilicProfile, std::move(profile)});
    }
  } else if (tol.equal(a, 1.0, scale)) {
    r.group_label = "E(kappa,tau)";
    r.case_tag = "nonunimodular.4";
    r.evidence.set("note", std::string("none (E(kappa,tau), tau!=0)"));
  } else {
    r.group_label = "R2 x_A R";
    r.case_tag = "nonunimodular.4";
    const GaussLocus locus = gauss_locus(p, 400, tol);
    std::vector<std::vector<double>> points;
    std::optional<double> violation;
    for (const GaussLocusSolution& s : locus.solutions) {
      points.push_back({s.x, s.y});
      violation = std::min(violation.value_or(s.constant_angle_violation), s.constant_angle_violation);
    }
    r.evidence.set("gauss_solutions", std::move(points)).set("finite", locus.finite);
    if (violation)
      r.evidence.set("min_constant_angle_violation", *violation);
    else
      r.evidence.set("min_constant_angle_violation", nullptr);
  }
  return r;
}

double gauss_p(const NonUnimodularParams& p, double x, double y) {
  const double a = p.a(), b = p.b();
  return ((a + 1) * (a + 2) * y * y - (a - 1) * (a - 2) * x * x - 2 * a) * b +
         2 * (a * a - 1) * x * y;
}

double gauss_q(const NonUnimodularParams& p, double x, double y) {
  const double a = p.a(), b = p.b();
  return 4 * b * x * x * y * y +
         a * b * ((1 - a) * x * x - (1 + a) * y * y + 2 * a) * (1 - x * x - y * y);
}

namespace {

struct Jacobian {
  double px, py, qx, qy;
};

Jacobian gauss_jacobian(const NonUnimodularParams& p, double x, double y) {
  const double a = p.a(), b = p.b();
  const double l = (1 - a) * x * x - (1 + a) * y * y + 2 * a;
  const double m = 1 - x * x - y * y;
  return {-2 * (a - 1) * (a - 2) * b * x + 2 * (a * a - 1) * y,
          2 * (a + 1) * (a + 2) * b * y + 2 * (a * a - 1) * x,
          8 * b * x * y * y + a * b * (2 * (1 - a) * x * m - 2 * x * l),
          8 * b * x * x * y + a * b * (-2 * (1 + a) * y * m - 2 * y * l)};
}

bool newton(const NonUnimodularParams& p, double& x, double& y) {
  auto merit = [&](double u, double v) {
    const double fp = gauss_p(p, u, v), fq = gauss_q(p, u, v);
    return fp * fp + fq * fq;
  };
  for (int it = 0; it < 100; ++it) {
    const double fp = gauss_p(p, x, y), fq = gauss_q(p, x, y);
    if (std::abs(fp) < 1e-14 && std::abs(fq) < 1e-14) return true;
    const Jacobian j = gauss_jacobian(p, x, y);
    const double det = j.px * j.qy - j.py * j.qx;
    if (det == 0.0 || !std::isfinite(det)) return false;
    const double dx = (fp * j.qy - fq * j.py) / det;
    const double dy = (j.px * fq - j.qx * fp) / det;
    const double m0 = merit(x, y);
    double t = 1.0;
    while (t > 1e-6 && !(merit(x - t * dx, y - t * dy) < m0)) t *= 0.5;
    if (t <= 1e-6) break;
    x -= t * dx;
    y -= t * dy;
    if (std::abs(dx) + std::abs(dy) < 1e-15) break;
  }
  return std::abs(gauss_p(p, x, y)) < 1e-9 && std::abs(gauss_q(p, x, y)) < 1e-9;
}

bool sign_change(double a, double b, double c, double d) {
  const double lo = std::min({a, b, c, d}), hi = std::max({a, b, c, d});
  return lo <= 0.0 && hi >= 0.0;
}

}  // namespace

GaussLocus gauss_locus(const NonUnimodularParams& p, int resolution, const BranchTolerance& tol) {
  const double a = p.a(), b = p.b();
  const double scale = std::max(a, b);
  if (tol.zero(a, scale) || tol.equal(a, 1.0, scale) || tol.zero(b, scale))
    throw ParameterOutOfRange("gauss_locus requires a not in {0, 1} and b != 0");
  if (resolution < 2) throw ParameterOutOfRange("resolution must be at least 2");

  const std::size_t n = static_cast<std::size_t>(resolution) + 1;
  const double h = 2.0 / resolution;
  std::vector<double> pv(n * n), qv(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = -1.0 + h * static_cast<double>(i), y = -1.0 + h * static_cast<double>(j);
      pv[i * n + j] = gauss_p(p, x, y);
      qv[i * n + j] = gauss_q(p, x, y);
    }

  GaussLocus out;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const std::size_t k00 = i * n + j, k01 = k00 + 1, k10 = k00 + n, k11 = k10 + 1;
      if (!sign_change(pv[k00], pv[k01], pv[k10], pv[k11]) ||
          !sign_change(qv[k00], qv[k01], qv[k10], qv[k11]))
        continue;
      ++out.candidate_cells;
      double x = -1.0 + h * (static_cast<double>(i) + 0.5);
      double y = -1.0 + h * (static_cast<double>(j) + 0.5);
      if (!newton(p, x, y) || x * x + y * y > 1.0 + 1e-12) continue;
      const bool seen = std::any_of(out.solutions.begin(), out.solutions.end(), [&](const auto& s) {
        return std::hypot(s.x - x, s.y - y) < 1e-6;
      });
      if (seen) continue;
      GaussLocusSolution s;
      s.x = x;
      s.y = y;
      s.p_residual = std::abs(gauss_p(p, x, y));
      s.q_residual = std::abs(gauss_q(p, x, y));
      const double nu3sq = std::max(0.0, 1.0 - x * x - y * y);
      s.constant_angle_violation =
          std::max(std::abs((a * nu3sq - y * y) * b), std::abs((a * nu3sq + x * x) * b));
      out.solutions.push_back(s);
    }
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const auto& l, const auto& r) { return l.x != r.x ? l.x < r.x : l.y < r.y; });
  // deg P * deg Q bounds the isolated solutions; each one touches a handful of cells
  out.finite = out.solutions.size() <= 8 && out.candidate_cells <= 64;
  return out;
}

namespace {

nlohmann::ordered_json record_json(const Record& r) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [key, value] : r.entries())
    std::visit([&, k = key](const auto& v) { j[k] = v; }, value);
  return j;
}

}  // namespace

std::string to_json(const ClassificationReport& report, int indent) {
  nlohmann::ordered_json j;
  j["family"] = report.family == FamilyKind::Unimodular ? "unimodular" : "non-unimodular";
  j["params"] = record_json(report.params);
  j["group_label"] = report.group_label;
  j["case"] = report.case_tag;
  j["surfaces"] = nlohmann::ordered_json::array();
  for (const SurfaceFamily& s : report.surfaces)
    j["surfaces"].push_back({{"kind", to_string(s.kind)}, {"descriptor", record_json(s.descriptor)}});
  j["evidence"] = record_json(report.evidence);
  j["lcf"] = report.locally_conformally_flat;
  return j.dump(indent);
}

}  // namespace umbilic
