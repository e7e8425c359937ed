#include "umbilic/surface.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

constexpr double kImmersionBound = 1e-8;

CoordinateVector difference(const GroupPoint& p, const GroupPoint& q) {
  return {p.x - q.x, p.y - q.y, p.z - q.z};
}

AlgebraVector row(const Matrix3& m, std::size_t i) { return {m(i, 0), m(i, 1), m(i, 2)}; }

// Chart-frame components of the tangent vectors and their coordinate derivatives.
// Frame components are T(z) phi' with T = diag(e^{-zA}, 1); derivatives pick up
// T'(z) = diag(-A e^{-zA}, 0).
struct FrameJet {
  AlgebraVector wu, wv;
  AlgebraVector wu_u, wu_v, wv_u, wv_v;
};

FrameJet frame_jet(const Matrix2& a, const ChartJet& j) {
  const Matrix2 t = matrix_exp(a, -j.p.z);
  const Matrix2 dt = -1.0 * (a * t);
  auto apply = [](const Matrix2& m, const CoordinateVector& v, double vz) {
    const auto xy = m.apply(v[0], v[1]);
    return AlgebraVector{xy[0], xy[1], vz};
  };
  auto tv = [&](const CoordinateVector& v) { return apply(t, v, v[2]); };
  auto dtv = [&](const CoordinateVector& v) { return apply(dt, v, 0.0); };

  FrameJet f;
  f.wu = tv(j.du);
  f.wv = tv(j.dv);
  const double zu = j.du[2];
  const double zv = j.dv[2];
  f.wu_u = tv(j.duu) + zu * dtv(j.du);
  f.wu_v = tv(j.duv) + zv * dtv(j.du);
  f.wv_u = tv(j.duv) + zu * dtv(j.dv);
  f.wv_v = tv(j.dvv) + zv * dtv(j.dv);
  return f;
}

double smallest_singular_value(const AlgebraVector& a, const AlgebraVector& b) {
  const double g11 = dot(a, a), g12 = dot(a, b), g22 = dot(b, b);
  const double mean = 0.5 * (g11 + g22);
  const double disc = std::sqrt(std::max(0.0, 0.25 * (g11 - g22) * (g11 - g22) + g12 * g12));
  return std::sqrt(std::max(0.0, mean - disc));
}

struct Geometry {
  GroupPoint point;
  FrameJet f;
  AlgebraVector normal;
  AlgebraVector shape_u;  // -nabla_{phi_u} N
  AlgebraVector shape_v;  // -nabla_{phi_v} N
};

Geometry geometry(const AmbientModel& ambient, const ChartJet& j) {
  Geometry g;
  g.point = j.p;
  g.f = frame_jet(ambient.matrix(), j);
  const FrameJet& f = g.f;
  if (smallest_singular_value(f.wu, f.wv) <= kImmersionBound)
    throw DegenerateImmersion("chart is not an immersion at the evaluation point");

  const AlgebraVector n = cross(f.wu, f.wv);
  const double len = norm(n);
  g.normal = n / len;
  const AlgebraVector n_u = cross(f.wu_u, f.wv) + cross(f.wu, f.wv_u);
  const AlgebraVector n_v = cross(f.wu_v, f.wv) + cross(f.wu, f.wv_v);
  const AlgebraVector dn_u = (n_u - dot(g.normal, n_u) * g.normal) / len;
  const AlgebraVector dn_v = (n_v - dot(g.normal, n_v) * g.normal) / len;
  const ConnectionTable& conn = ambient.connection();
  g.shape_u = -(dn_u + conn.covariant(f.wu, g.normal));
  g.shape_v = -(dn_v + conn.covariant(f.wv, g.normal));
  return g;
}

Geometry geometry(const SurfacePatch& s, double u, double v) {
  return geometry(s.ambient(), s.jet(u, v));
}

ShapeSample shape_from_geometry(const Geometry& g, double u, double v) {
  const FrameJet& f = g.f;
  // e1 = wu / |wu|, e2 = (wv - <wv,e1> e1) / L, written as alpha wu + beta wv.
  const double lu = norm(f.wu);
  const AlgebraVector e1 = f.wu / lu;
  const AlgebraVector perp = f.wv - dot(f.wv, e1) * e1;
  const double l2 = norm(perp);
  const AlgebraVector e2 = perp / l2;
  const double alpha2 = -dot(f.wv, f.wu) / (lu * lu * l2);
  const double beta2 = 1.0 / l2;

  const AlgebraVector s1 = g.shape_u / lu;
  const AlgebraVector s2 = alpha2 * g.shape_u + beta2 * g.shape_v;

  ShapeSample out;
  out.u = u;
  out.v = v;
  out.op = {dot(s1, e1), dot(s2, e1), dot(s1, e2), dot(s2, e2)};
  out.lambda = 0.5 * out.op.trace();
  out.residual = (out.op - out.lambda * Matrix2::identity()).frobenius();
  out.asymmetry = std::abs(out.op.m12 - out.op.m21);
  return out;
}

void require_umbilic(const ShapeSample& sample) {
  if (!(sample.relative_residual() <= kUmbilicGate))
    throw PreconditionViolation("surface is not umbilical at the evaluation point");
}

// Tangential gradient (chart-frame components) from coordinate partials.
AlgebraVector surface_gradient(const FrameJet& f, double du, double dv) {
  const double g11 = dot(f.wu, f.wu), g12 = dot(f.wu, f.wv), g22 = dot(f.wv, f.wv);
  const double det = g11 * g22 - g12 * g12;
  const double c1 = (g22 * du - g12 * dv) / det;
  const double c2 = (-g12 * du + g11 * dv) / det;
  return c1 * f.wu + c2 * f.wv;
}

template <class F>
std::pair<double, double> partials(const SurfacePatch& s, double u, double v, F&& f) {
  const double hu = s.fd_step() * std::max(1.0, std::abs(u));
  const double hv = s.fd_step() * std::max(1.0, std::abs(v));
  return {(f(u + hu, v) - f(u - hu, v)) / (2.0 * hu), (f(u, v + hv) - f(u, v - hv)) / (2.0 * hv)};
}

// Frame in which the family's identities are written, as rows in chart-frame components.
struct FamilyFrame {
  Matrix3 rows = Matrix3::identity();
};

FamilyFrame family_frame(const AmbientModel& m, ResidualFamily family) {
  if (family == ResidualFamily::NonUnimodular) {
    if (!m.nonunimodular_params())
      throw FamilyMismatch("ambient model carries no non-unimodular parameters");
    return {};
  }
  if (!m.unimodular_frame()) throw FamilyMismatch("ambient model carries no unimodular frame");
  return {m.unimodular_frame()->frame};
}

ResidualFamily ambient_family(const AmbientModel& m) {
  if (m.nonunimodular_params()) return ResidualFamily::NonUnimodular;
  if (m.unimodular_frame()) return ResidualFamily::Unimodular;
  throw FamilyMismatch("ambient model carries no family data");
}

std::array<double, 3> angles_in(const FamilyFrame& fr, const AlgebraVector& n) {
  return {dot(row(fr.rows, 0), n), dot(row(fr.rows, 1), n), dot(row(fr.rows, 2), n)};
}

}  // namespace

AmbientModel::AmbientModel(const Matrix2& a) : a_(a), connection_(connection_semidirect(a)) {}

AmbientModel AmbientModel::semidirect(const Matrix2& a) { return AmbientModel(a); }

AmbientModel AmbientModel::nonunimodular(const NonUnimodularParams& p) {
  AmbientModel m(nonunimodular_matrix(p));
  m.connection_ = connection_nonunimodular(p);
  m.params_ = p;
  return m;
}

AmbientModel AmbientModel::diagonal(double c) {
  AmbientModel m(Matrix2::diagonal(1.0, c));
  if (c == -1.0) {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix3 f;
    f(0, 0) = r;
    f(0, 1) = r;
    f(1, 2) = 1.0;
    f(2, 0) = r;
    f(2, 1) = -r;
    m.unimodular_ = UnimodularFrame{{1.0, 0.0, -1.0}, f};
  }
  return m;
}

SurfacePatch::SurfacePatch(AmbientModel ambient, Chart chart, Domain domain, double fd_step)
    : ambient_(std::move(ambient)), chart_(std::move(chart)), domain_(domain), fd_step_(fd_step) {
  if (!(fd_step > 0.0)) throw ParameterOutOfRange("fd_step must be positive");
}

SurfacePatch SurfacePatch::with_jet(JetHook jet) const {
  SurfacePatch s = *this;
  s.jet_ = std::move(jet);
  return s;
}

SurfacePatch SurfacePatch::with_fd_step(double h) const {
  if (!(h > 0.0)) throw ParameterOutOfRange("fd_step must be positive");
  SurfacePatch s = *this;
  s.fd_step_ = h;
  return s;
}

SurfacePatch SurfacePatch::with_second_step(double h) const {
  if (!(h > 0.0)) throw ParameterOutOfRange("second-derivative step must be positive");
  SurfacePatch s = *this;
  s.fd_step_second_ = h;
  return s;
}

ChartJet SurfacePatch::jet(double u, double v) const {
  if (jet_) return jet_(u, v);
  ChartJet j;
  j.p = chart_(u, v);
  const double hu = fd_step_ * std::max(1.0, std::abs(u));
  const double hv = fd_step_ * std::max(1.0, std::abs(v));
  j.du = difference(chart_(u + hu, v), chart_(u - hu, v)) / (2.0 * hu);
  j.dv = difference(chart_(u, v + hv), chart_(u, v - hv)) / (2.0 * hv);

  const double ku = fd_step_second_ * std::max(1.0, std::abs(u));
  const double kv = fd_step_second_ * std::max(1.0, std::abs(v));
  const CoordinateVector center{j.p.x, j.p.y, j.p.z};
  auto at = [&](double uu, double vv) {
    const GroupPoint q = chart_(uu, vv);
    return CoordinateVector{q.x, q.y, q.z};
  };
  j.duu = (at(u + ku, v) - 2.0 * center + at(u - ku, v)) / (ku * ku);
  j.dvv = (at(u, v + kv) - 2.0 * center + at(u, v - kv)) / (kv * kv);
  j.duv = (at(u + ku, v + kv) - at(u + ku, v - kv) - at(u - ku, v + kv) + at(u - ku, v - kv)) /
          (4.0 * ku * kv);
  return j;
}

AlgebraVector unit_normal(const SurfacePatch& s, double u, double v) {
  const FrameJet f = frame_jet(s.ambient().matrix(), s.jet(u, v));
  if (smallest_singular_value(f.wu, f.wv) <= kImmersionBound)
    throw DegenerateImmersion("chart is not an immersion at the evaluation point");
  const AlgebraVector n = cross(f.wu, f.wv);
  return n / norm(n);
}

AngleFunctions angle_functions(const SurfacePatch& s, double u, double v) {
  const AlgebraVector n = unit_normal(s, u, v);
  return {n[0], n[1], n[2]};
}

ShapeSample shape_operator(const SurfacePatch& s, double u, double v) {
  return shape_from_geometry(geometry(s, u, v), u, v);
}

ShapeSample shape_from_jet(const AmbientModel& ambient, const ChartJet& jet) {
  return shape_from_geometry(geometry(ambient, jet), 0.0, 0.0);
}

double grad_lambda_residual(const SurfacePatch& s, double u, double v) {
  const ResidualFamily family = ambient_family(s.ambient());
  const Geometry g = geometry(s, u, v);
  require_umbilic(shape_from_geometry(g, u, v));

  const auto [lu, lv] = partials(s, u, v, [&](double uu, double vv) {
    return shape_operator(s, uu, vv).lambda;
  });
  const AlgebraVector grad = surface_gradient(g.f, lu, lv);

  const FamilyFrame fr = family_frame(s.ambient(), family);
  const auto nu = angles_in(fr, g.normal);
  auto tangent = [&](std::size_t i) { return row(fr.rows, i) - nu[i] * g.normal; };

  AlgebraVector rhs;
  if (family == ResidualFamily::NonUnimodular) {
    const double a = s.ambient().nonunimodular_params()->a();
    const double b = s.ambient().nonunimodular_params()->b();
    rhs = 2.0 * a * (1.0 + b * b) * ((a - 1.0) * nu[0] * tangent(0) + (a + 1.0) * nu[1] * tangent(1));
  } else {
    const MuTriple mu = mu_from_c(s.ambient().unimodular_frame()->constants);
    rhs = 2.0 * mu.mu2 * (mu.mu3 - mu.mu1) * nu[0] * tangent(0) +
          2.0 * mu.mu1 * (mu.mu3 - mu.mu2) * nu[1] * tangent(1);
  }
  // lambda -> -lambda flips the measured gradient only
  return std::min(norm(grad - rhs), norm(grad + rhs));
}

std::array<double, 3> angle_gradient_residual(const SurfacePatch& s, double u, double v) {
  const ResidualFamily family = ambient_family(s.ambient());
  const Geometry g = geometry(s, u, v);
  const ShapeSample sample = shape_from_geometry(g, u, v);
  require_umbilic(sample);

  const FamilyFrame fr = family_frame(s.ambient(), family);
  const auto nu = angles_in(fr, g.normal);
  std::array<AlgebraVector, 3> t;
  for (std::size_t i = 0; i < 3; ++i) t[i] = row(fr.rows, i) - nu[i] * g.normal;

  std::array<AlgebraVector, 3> measured;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto [du, dv] = partials(s, u, v, [&](double uu, double vv) {
      return dot(row(fr.rows, i), unit_normal(s, uu, vv));
    });
    measured[i] = surface_gradient(g.f, du, dv);
  }

  auto closed_form = [&](double lambda) {
    std::array<AlgebraVector, 3> r;
    if (family == ResidualFamily::NonUnimodular) {
      const double a = s.ambient().nonunimodular_params()->a();
      const double b = s.ambient().nonunimodular_params()->b();
      r[0] = ((1 + a) * nu[2] - lambda) * t[0] + a * b * nu[2] * t[1] + b * nu[1] * t[2];
      r[1] = a * b * nu[2] * t[0] + ((1 - a) * nu[2] - lambda) * t[1] - b * nu[0] * t[2];
      r[2] = -((1 + a) * nu[0] + a * b * nu[1]) * t[0] - (a * b * nu[0] + (1 - a) * nu[1]) * t[1] -
             lambda * t[2];
    } else {
      const MuTriple mu = mu_from_c(s.ambient().unimodular_frame()->constants);
      r[0] = -lambda * t[0] - mu.mu2 * nu[2] * t[1] + mu.mu3 * nu[1] * t[2];
      r[1] = -lambda * t[1] + mu.mu1 * nu[2] * t[0] - mu.mu3 * nu[0] * t[2];
      r[2] = -lambda * t[2] + mu.mu2 * nu[0] * t[1] - mu.mu1 * nu[1] * t[0];
    }
    return r;
  };

  std::array<double, 3> best{};
  double best_max = -1.0;
  for (double sign : {1.0, -1.0}) {
    const auto r = closed_form(sign * sample.lambda);
    std::array<double, 3> res;
    for (std::size_t i = 0; i < 3; ++i) res[i] = norm(measured[i] - r[i]);
    const double m = std::max({res[0], res[1], res[2]});
    if (best_max < 0.0 || m < best_max) {
      best = res;
      best_max = m;
    }
  }
  return best;
}

std::vector<NamedResidual> pointwise_system_residuals(const SurfacePatch& s, double u, double v,
                                                      ResidualFamily family) {
  const FamilyFrame fr = family_frame(s.ambient(), family);
  const Geometry g = geometry(s, u, v);
  const ShapeSample sample = shape_from_geometry(g, u, v);
  require_umbilic(sample);
  const auto nu = angles_in(fr, g.normal);
  const double n1 = nu[0], n2 = nu[1], n3 = nu[2];
  const double lambda = sample.lambda;

  if (family == ResidualFamily::Unimodular) {
    const StructureConstants& c = s.ambient().unimodular_frame()->constants;
    const MuTriple mu = mu_from_c(c);
    const auto beta = invariant_scalars(c).beta;
    return {
        {"beta_quadric", beta[0] * n1 * n1 + beta[1] * n2 * n2 + beta[2] * n3 * n3},
        {"lambda_quadric", mu.mu2 * mu.mu3 * n1 * n1 + mu.mu1 * mu.mu3 * n2 * n2 +
                               mu.mu1 * mu.mu2 * n3 * n3 + lambda * lambda},
    };
  }

  const double a = s.ambient().nonunimodular_params()->a();
  const double b = s.ambient().nonunimodular_params()->b();
  const double p_identity =
      ((a + 1) * (a + 2) * n2 * n2 - (a - 1) * (a - 2) * n1 * n1 - 2 * a) * b +
      2 * (a * a - 1) * n1 * n2;
  auto lambda_relation = [&](double l) {
    return l * l - 2 * n3 * l - a * b * b * n1 * n1 + a * b * b * n2 * n2 -
           a * a * (1 + b * b) * n3 * n3 + n3 * n3 + 2 * a * b * n1 * n2;
  };
  const double l_plus = lambda_relation(lambda);
  const double l_minus = lambda_relation(-lambda);
  const double angle_relation =
      4 * b * n1 * n1 * n2 * n2 + ((1 - a) * n1 * n1 - (1 + a) * n2 * n2 + 2 * a) * a * b * n3 * n3;
  return {
      {"p_identity", p_identity},
      {"lambda_relation", std::abs(l_plus) <= std::abs(l_minus) ? l_plus : l_minus},
      {"angle_relation", angle_relation},
  };
}

std::vector<GridRow> sample_grid(const SurfacePatch& s, int nu, int nv) {
  if (nu < 2 || nv < 2) throw ParameterOutOfRange("grid needs at least 2 samples per direction");
  const Domain& d = s.domain();
  std::vector<GridRow> rows;
  rows.reserve(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
  for (int j = 0; j < nv; ++j) {
    const double v = d.v_min + (d.v_max - d.v_min) * j / (nv - 1);
    for (int i = 0; i < nu; ++i) {
      const double u = d.u_min + (d.u_max - d.u_min) * i / (nu - 1);
      const Geometry g = geometry(s, u, v);
      const ShapeSample sample = shape_from_geometry(g, u, v);
      rows.push_back({u, v, g.point, {g.normal[0], g.normal[1], g.normal[2]}, sample.lambda,
                      sample.residual});
    }
  }
  return rows;
}

void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows) {
  out << "u,v,x,y,z,nu1,nu2,nu3,lambda,residual\n";
  char buf[512];
  for (const GridRow& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e\n", r.u, r.v,
                  r.p.x, r.p.y, r.p.z, r.nu.nu1, r.nu.nu2, r.nu.nu3, r.lambda, r.residual);
    out << buf;
  }
}

SurfacePatch coordinate_plane(const AmbientModel& ambient, int axis, double offset,
                              const Domain& domain) {
  if (axis != 0 && axis != 1) throw ParameterOutOfRange("plane axis must be 0 (x) or 1 (y)");
  Chart chart = [axis, offset](double u, double v) {
    return axis == 0 ? GroupPoint{offset, u, v} : GroupPoint{u, offset, v};
  };
  JetHook jet = [axis, offset](double u, double v) {
    ChartJet j;
    j.p = axis == 0 ? GroupPoint{offset, u, v} : GroupPoint{u, offset, v};
    j.du = axis == 0 ? CoordinateVector{0, 1, 0} : CoordinateVector{1, 0, 0};
    j.dv = {0, 0, 1};
    return j;
  };
  return SurfacePatch(ambient, chart, domain).with_jet(jet);
}

}  // namespace umbilic
