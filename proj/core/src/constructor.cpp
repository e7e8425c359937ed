#include "umbilic/constructor.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <utility>

#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

ConnectionTable family_connection(const FamilyData& family) {
  if (const auto* c = std::get_if<StructureConstants>(&family)) return connection_unimodular(*c);
  return connection_nonunimodular(std::get<NonUnimodularParams>(family));
}

AlgebraVector family_bracket(const FamilyData& family, const AlgebraVector& x,
                             const AlgebraVector& y) {
  if (const auto* c = std::get_if<StructureConstants>(&family)) return bracket_unimodular(*c, x, y);
  return bracket_nonunimodular(std::get<NonUnimodularParams>(family), x, y);
}

GeodesicDistribution make_distribution(const AlgebraVector& s1, const AlgebraVector& s2) {
  const AlgebraVector e1 = s1 / norm(s1);
  const AlgebraVector e2 = s2 / norm(s2);
  const AlgebraVector n = cross(e1, e2);
  return {n / norm(n), {e1, e2}};
}

struct State {
  double z;
  double zp;
};

// Forward RK4 from y = 0, mirrored to negative y.
std::vector<ProfileSample> integrate_even(const Acceleration& f, double z0, double step,
                                          double y_max, double cap) {
  std::vector<ProfileSample> forward;
  State s{z0, 0.0};
  forward.push_back({0.0, s.z, s.zp, f(s.z, s.zp)});
  const long n = static_cast<long>(std::floor(y_max / step + 1e-9));
  for (long i = 1; i <= n; ++i) {
    const double k1z = s.zp, k1p = f(s.z, s.zp);
    const double k2z = s.zp + 0.5 * step * k1p, k2p = f(s.z + 0.5 * step * k1z, k2z);
    const double k3z = s.zp + 0.5 * step * k2p, k3p = f(s.z + 0.5 * step * k2z, k3z);
    const double k4z = s.zp + step * k3p, k4p = f(s.z + step * k3z, k4z);
    const State next{s.z + step / 6.0 * (k1z + 2 * k2z + 2 * k3z + k4z),
                     s.zp + step / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p)};
    if (!std::isfinite(next.z) || !std::isfinite(next.zp) || std::abs(next.zp) > cap) break;
    s = next;
    forward.push_back({static_cast<double>(i) * step, s.z, s.zp, f(s.z, s.zp)});
  }
  std::vector<ProfileSample> out;
  out.reserve(2 * forward.size() - 1);
  for (auto it = forward.rbegin(); it != forward.rend() - 1; ++it)
    out.push_back({-it->y, it->z, -it->zp, it->zpp});
  out.insert(out.end(), forward.begin(), forward.end());
  return out;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParameterOutOfRange(std::string(what) + " must be positive");
}

ChartJet profile_jet(InvarianceDirection dir, double u, double v, double z, double zp,
                     double zpp) {
  ChartJet j;
  if (dir == InvarianceDirection::X) {
    j.p = {u, v, z};
    j.du = {1, 0, 0};
    j.dv = {0, 1, zp};
  } else {
    j.p = {v, u, z};
    j.du = {0, 1, 0};
    j.dv = {1, 0, zp};
  }
  j.dvv = {0, 0, zpp};
  return j;
}

}  // namespace

std::vector<GeodesicDistribution> geodesic_distributions_unimodular(const StructureConstants& c,
                                                                    const BranchTolerance& tol) {
  const Normalization n = normalize(c, tol);
  const StructureConstants& k = n.constants;
  const double scale = k.sup_norm();
  if (!(k.c3 < 0.0 && k.c1 > 0.0) || tol.zero(k.c3, scale) || tol.zero(k.c1, scale) ||
      !tol.equal(k.c2, k.c1 + k.c3, scale))
    return {};
  const double p = std::sqrt(k.c1), q = std::sqrt(-k.c3);
  std::vector<GeodesicDistribution> out;
  for (double sign : {1.0, -1.0}) {
    const GeodesicDistribution d = make_distribution({p, 0, sign * q}, {0, 1, 0});
    out.push_back({n.to_original(d.normal), {n.to_original(d.span[0]), n.to_original(d.span[1])}});
  }
  return out;
}

std::vector<GeodesicDistribution> geodesic_distributions_nonunimodular(
    const NonUnimodularParams& p, const BranchTolerance& tol) {
  if (!tol.zero(p.b(), 1.0)) return {};
  return {make_distribution({1, 0, 0}, {0, 0, 1}), make_distribution({0, 1, 0}, {0, 0, 1})};
}

Matrix2 algebraic_second_form(const FamilyData& family, const GeodesicDistribution& d) {
  const ConnectionTable conn = family_connection(family);
  auto ii = [&](int i, int j) { return dot(conn.covariant(d.span[i], d.span[j]), d.normal); };
  return {ii(0, 0), ii(0, 1), ii(1, 0), ii(1, 1)};
}

double subalgebra_defect(const FamilyData& family, const GeodesicDistribution& d) {
  return std::abs(dot(family_bracket(family, d.span[0], d.span[1]), d.normal));
}

UmbilicProfile::UmbilicProfile(ProfileModel model, double parameter,
                               InvarianceDirection direction, double lambda, double theta,
                               double step, double y_max, std::vector<ProfileSample> samples,
                               Acceleration acceleration)
    : model_(model),
      parameter_(parameter),
      direction_(direction),
      lambda_(lambda),
      theta_(theta),
      step_(step),
      requested_(y_max),
      samples_(std::move(samples)),
      acceleration_(std::move(acceleration)) {
  if (samples_.empty()) throw ParameterOutOfRange("profile has no samples");
}

double UmbilicProfile::ode_a() const {
  return direction_ == InvarianceDirection::X ? parameter_ : -parameter_;
}

ProfileSample UmbilicProfile::evaluate(double y) const {
  const double lo = y_min(), hi = y_max();
  if (!(y >= lo && y <= hi)) throw ParameterOutOfRange("profile evaluated outside its range");
  if (samples_.size() == 1) return samples_.front();
  std::size_t i = static_cast<std::size_t>(std::floor((y - lo) / step_));
  i = std::min(i, samples_.size() - 2);
  const ProfileSample& p = samples_[i];
  const ProfileSample& q = samples_[i + 1];
  const double h = q.y - p.y;
  const double t = (y - p.y) / h;
  const double dz = q.z - p.z;
  const double c0 = p.z, c1 = h * p.zp, c2 = 0.5 * h * h * p.zpp;
  const double c3 = 10 * dz - h * (6 * p.zp + 4 * q.zp) - h * h * (1.5 * p.zpp - 0.5 * q.zpp);
  const double c4 = -15 * dz + h * (8 * p.zp + 7 * q.zp) + h * h * (1.5 * p.zpp - q.zpp);
  const double c5 = 6 * dz - 3 * h * (p.zp + q.zp) - h * h * (0.5 * p.zpp - 0.5 * q.zpp);
  ProfileSample s;
  s.y = y;
  s.z = c0 + t * (c1 + t * (c2 + t * (c3 + t * (c4 + t * c5))));
  s.zp = (c1 + t * (2 * c2 + t * (3 * c3 + t * (4 * c4 + t * 5 * c5)))) / h;
  s.zpp = acceleration_(s.z, s.zp);
  return s;
}

double UmbilicProfile::first_integral_drift(const ProfileSample& s) const {
  const double l2 = lambda_ * lambda_;
  if (model_ == ProfileModel::NonUnimodular) {
    const double a = ode_a();
    return s.zp * s.zp - l2 * std::exp(2 * (3 * a - 1) * s.z) + std::exp(2 * (a - 1) * s.z);
  }
  const double c = parameter_;
  return s.zp * s.zp - l2 * std::exp(2 * (1 - 2 * c) * s.z) + std::exp(-2 * c * s.z);
}

AmbientModel UmbilicProfile::ambient() const {
  if (model_ == ProfileModel::NonUnimodular)
    return AmbientModel::nonunimodular({parameter_, 0.0});
  return AmbientModel::diagonal(parameter_);
}

UmbilicProfile solve_profile_closed(double a, double lambda, double y_max, double step,
                                    InvarianceDirection direction, const ProfileOptions& options) {
  require_positive(a, "a");
  require_positive(lambda, "lambda");
  require_positive(y_max, "y_max");
  require_positive(step, "step");
  if (a == 1.0) throw ParameterOutOfRange("a = 1 admits no invariant umbilic profile");
  const double e = direction == InvarianceDirection::X ? a : -a;
  const double l2 = lambda * lambda;
  const double theta = -std::log(lambda) / (2 * e);
  const Acceleration f = [=](double z, double) {
    return (3 * e - 1) * l2 * std::exp(2 * (3 * e - 1) * z) - (e - 1) * std::exp(2 * (e - 1) * z);
  };
  return UmbilicProfile(ProfileModel::NonUnimodular, a, direction, lambda, theta, step, y_max,
                        integrate_even(f, theta, step, y_max, options.zprime_cap), f);
}

UmbilicProfile solve_profile_shooting(double c, double z0, double step, double y_max,
                                      const ProfileOptions& options) {
  if (!(c >= -1.0 && c < 1.0)) throw ParameterOutOfRange("c must lie in [-1, 1)");
  require_positive(y_max, "y_max");
  require_positive(step, "step");
  if (!std::isfinite(z0)) throw ParameterOutOfRange("z0 must be finite");
  const AmbientModel ambient = AmbientModel::diagonal(c);
  auto difference = [ambient](double z, double zp, double zpp) {
    const ShapeSample s =
        shape_from_jet(ambient, profile_jet(InvarianceDirection::X, 0.0, 0.0, z, zp, zpp));
    return s.op.m11 - s.op.m22;
  };
  const Acceleration f = [difference](double z, double zp) {
    double lo = -1.0, hi = 1.0;
    double flo = difference(z, zp, lo), fhi = difference(z, zp, hi);
    while (flo * fhi > 0.0) {
      if (hi >= 1e4) throw RootFindingFailure("no z'' equalizes the principal curvatures");
      lo *= 10.0;
      hi *= 10.0;
      flo = difference(z, zp, lo);
      fhi = difference(z, zp, hi);
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = difference(z, zp, mid);
      if (std::abs(fm) < 1e-10 || hi - lo < 1e-15 * std::max(1.0, std::abs(mid))) return mid;
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  // the first-integral constant is kept only to monitor drift
  const double lambda = std::exp((c - 1.0) * z0);
  return UmbilicProfile(ProfileModel::Diagonal, c, InvarianceDirection::X, lambda, z0, step, y_max,
                        integrate_even(f, z0, step, y_max, options.zprime_cap), f);
}

SurfacePatch build_invariant_surface(const UmbilicProfile& profile) {
  const InvarianceDirection dir = profile.direction();
  auto jet = [profile, dir](double u, double v) {
    const ProfileSample s = profile.evaluate(v);
    return profile_jet(dir, u, v, s.z, s.zp, s.zpp);
  };
  auto chart = [jet](double u, double v) { return jet(u, v).p; };
  const Domain domain{-1.0, 1.0, profile.y_min(), profile.y_max()};
  return SurfacePatch(profile.ambient(), chart, domain).with_jet(jet);
}

PointMap congruence_map(double a, double w) {
  const double sx = std::exp((1 + a) * w), sy = std::exp((1 - a) * w);
  return [=](const GroupPoint& p) { return GroupPoint{p.x * sx, p.y * sy, p.z + w}; };
}

ProfileComparison congruence_defect(const UmbilicProfile& from, const UmbilicProfile& to,
                                    double w) {
  const double scale = std::exp((1 - from.parameter()) * w);
  ProfileComparison out;
  for (const ProfileSample& s : from.samples()) {
    const double y = s.y * scale;
    if (y < to.y_min() || y > to.y_max()) continue;
    out.max_distance = std::max(out.max_distance, std::abs(to.evaluate(y).z - (s.z + w)));
    ++out.compared;
  }
  return out;
}

ProfileComparison rescaled_defect(const UmbilicProfile& diagonal, const UmbilicProfile& closed) {
  const double k = 1 + closed.parameter();
  ProfileComparison out;
  for (const ProfileSample& s : diagonal.samples()) {
    const double y = s.y / k;
    if (y < closed.y_min() || y > closed.y_max()) continue;
    out.max_distance = std::max(out.max_distance, std::abs(k * closed.evaluate(y).z - s.z));
    ++out.compared;
  }
  return out;
}

CoordinateVector lambda_level_direction(const SurfacePatch& s, double u, double v) {
  const double h = 1e-4;
  auto lam = [&](double uu, double vv) { return shape_operator(s, uu, vv).lambda; };
  const double lu = (lam(u + h, v) - lam(u - h, v)) / (2 * h);
  const double lv = (lam(u, v + h) - lam(u, v - h)) / (2 * h);
  const ChartJet j = s.jet(u, v);
  CoordinateVector d = lv * j.du - lu * j.dv;
  const double n = norm(d);
  if (!(n > 0.0)) throw PreconditionViolation("lambda is critical at the sample point");
  return d / n;
}

bool related_by_stabilizer(const CoordinateVector& d1, const CoordinateVector& d2, double tol) {
  for (double sx : {1.0, -1.0})
    for (double sy : {1.0, -1.0}) {
      const CoordinateVector m{sx * d1[0], sy * d1[1], d1[2]};
      if (max_abs(m - d2) < tol || max_abs(m + d2) < tol) return true;
    }
  return false;
}

void write_profile_csv(std::ostream& out, const UmbilicProfile& profile) {
  out << "y,z,zprime,first_integral_drift\n";
  char buf[128];
  for (const ProfileSample& s : profile.samples()) {
    std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e\n", s.y, s.z, s.zp,
                  profile.first_integral_drift(s));
    out << buf;
  }
}

}  // namespace umbilic
