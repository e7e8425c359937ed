#include "umbilic/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

AlgebraVector basis(int i) {
  AlgebraVector e;
  e[static_cast<std::size_t>(i)] = 1.0;
  return e;
}

}  // namespace

double StructureConstants::sup_norm() const {
  return std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
}

NonUnimodularParams::NonUnimodularParams(double a, double b) : a_(a), b_(b) {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw ParameterOutOfRange("non-unimodular parameters require a >= 0 and b >= 0");
}

bool BranchTolerance::equal(double x, double y, double scale) const {
  if (x == y) return true;
  if (exact) return false;
  return std::abs(x - y) <= relative * std::max(1.0, scale);
}

MuTriple mu_from_c(const StructureConstants& c) {
  return {0.5 * (-c.c1 + c.c2 + c.c3), 0.5 * (c.c1 - c.c2 + c.c3), 0.5 * (c.c1 + c.c2 - c.c3)};
}

StructureConstants c_from_mu(const MuTriple& mu) {
  return {mu.mu2 + mu.mu3, mu.mu1 + mu.mu3, mu.mu1 + mu.mu2};
}

Normalization normalize(const StructureConstants& c, const BranchTolerance& tol) {
  const double scale = c.sup_norm();
  int positive = 0;
  int negative = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (tol.zero(c[i], scale)) continue;
    (c[i] > 0.0 ? positive : negative) += 1;
  }
  const double lo = std::min({c.c1, c.c2, c.c3});
  const double hi = std::max({c.c1, c.c2, c.c3});
  const bool flip = negative > positive || (negative == positive && -lo > hi);
  const double sigma = flip ? -1.0 : 1.0;

  std::array<double, 3> v{sigma * c.c1, sigma * c.c2, sigma * c.c3};
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(j)];
  });

  // Parity of the permutation decides whether the frame vectors must also be
  // negated to keep the bracket relations in cyclic form.
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (order[static_cast<std::size_t>(i)] > order[static_cast<std::size_t>(j)]) ++inversions;
  const double parity = (inversions % 2 == 0) ? 1.0 : -1.0;
  const double s = sigma * parity;

  Normalization n;
  n.frame = Matrix3{};
  for (std::size_t i = 0; i < 3; ++i) n.frame(i, static_cast<std::size_t>(order[i])) = s;
  n.constants = {v[static_cast<std::size_t>(order[0])], v[static_cast<std::size_t>(order[1])],
                 v[static_cast<std::size_t>(order[2])]};
  n.order = order;
  n.sign_flipped = flip;
  return n;
}

AlgebraVector ConnectionTable::covariant(const AlgebraVector& x, const AlgebraVector& y) const {
  AlgebraVector r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double w = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
      if (w == 0.0) continue;
      for (int k = 0; k < 3; ++k) r[static_cast<std::size_t>(k)] += w * (*this)(i, j, k);
    }
  return r;
}

AlgebraVector BracketTable::operator()(const AlgebraVector& x, const AlgebraVector& y) const {
  AlgebraVector r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double w = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
      if (w == 0.0) continue;
      for (int k = 0; k < 3; ++k) r[static_cast<std::size_t>(k)] += w * (*this)(i, j, k);
    }
  return r;
}

AlgebraVector bracket_unimodular(const StructureConstants& c, const AlgebraVector& x,
                                 const AlgebraVector& y) {
  const AlgebraVector w = cross(x, y);
  return {c.c1 * w[0], c.c2 * w[1], c.c3 * w[2]};
}

AlgebraVector bracket_nonunimodular(const NonUnimodularParams& p, const AlgebraVector& x,
                                    const AlgebraVector& y) {
  const double a = p.a();
  const double b = p.b();
  // [E2,E3] = (1-a)b E1 - (1-a) E2,  [E3,E1] = (1+a) E1 + (1+a)b E2,  [E1,E2] = 0.
  const double w23 = x[1] * y[2] - x[2] * y[1];
  const double w31 = x[2] * y[0] - x[0] * y[2];
  return {w23 * (1.0 - a) * b + w31 * (1.0 + a), -w23 * (1.0 - a) + w31 * (1.0 + a) * b, 0.0};
}

BracketTable tabulate(const Bracket& bracket) {
  BracketTable t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const AlgebraVector v = bracket(basis(i), basis(j));
      for (int k = 0; k < 3; ++k) t(i, j, k) = v[static_cast<std::size_t>(k)];
    }
  return t;
}

ConnectionTable connection_unimodular(const StructureConstants& c) {
  const MuTriple mu = mu_from_c(c);
  ConnectionTable t;
  // nabla_{E1}E2 = mu1 E3, nabla_{E1}E3 = -mu1 E2
  t(0, 1, 2) = mu.mu1;
  t(0, 2, 1) = -mu.mu1;
  // nabla_{E2}E1 = -mu2 E3, nabla_{E2}E3 = mu2 E1
  t(1, 0, 2) = -mu.mu2;
  t(1, 2, 0) = mu.mu2;
  // nabla_{E3}E1 = mu3 E2, nabla_{E3}E2 = -mu3 E1
  t(2, 0, 1) = mu.mu3;
  t(2, 1, 0) = -mu.mu3;
  return t;
}

ConnectionTable connection_nonunimodular(const NonUnimodularParams& p) {
  const double a = p.a();
  const double b = p.b();
  ConnectionTable t;
  t(0, 0, 2) = 1.0 + a;
  t(0, 1, 2) = a * b;
  t(0, 2, 0) = -(1.0 + a);
  t(0, 2, 1) = -a * b;
  t(1, 0, 2) = a * b;
  t(1, 1, 2) = 1.0 - a;
  t(1, 2, 0) = -a * b;
  t(1, 2, 1) = -(1.0 - a);
  t(2, 0, 1) = b;
  t(2, 1, 0) = -b;
  return t;
}

ConnectionCheck verify_connection(const ConnectionTable& table, const Bracket& bracket) {
  ConnectionCheck r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const AlgebraVector br = bracket(basis(i), basis(j));
      for (int k = 0; k < 3; ++k) {
        r.metric_violation = std::max(r.metric_violation, std::abs(table(i, j, k) + table(i, k, j)));
        const double torsion = table(i, j, k) - table(j, i, k) - br[static_cast<std::size_t>(k)];
        r.torsion_violation = std::max(r.torsion_violation, std::abs(torsion));
      }
    }
  return r;
}

std::array<double, 3> curvature_coefficients(const StructureConstants& c) {
  const MuTriple mu = mu_from_c(c);
  return {mu.mu2 * mu.mu3 - c.c1 * mu.mu1, mu.mu1 * mu.mu3 - c.c2 * mu.mu2,
          mu.mu1 * mu.mu2 - c.c3 * mu.mu3};
}

std::array<double, 3> curvature_coefficients(const NonUnimodularParams& p) {
  const double a = p.a();
  const double bb = p.b() * p.b();
  return {(1.0 - a) * (1.0 - a) * (1.0 + bb) - bb, (1.0 + a) * (1.0 + a) * (1.0 + bb) - bb,
          (1.0 - a * a) * (1.0 + bb) - bb};
}

AlgebraVector curvature(const FamilyData& family, const AlgebraVector& x, const AlgebraVector& y,
                        const AlgebraVector& z) {
  const std::array<double, 3> k =
      std::visit([](const auto& f) { return curvature_coefficients(f); }, family);
  const double xz = dot(x, z);
  const double yz = dot(y, z);
  AlgebraVector r;
  for (std::size_t i = 0; i < 3; ++i) {
    if (k[i] == 0.0) continue;
    const double xi = x[i];
    const double yi = y[i];
    const double zi = z[i];
    // R_i(X,Y)Z = <X,Z>Y - <Y,Z>X - z_i x_i Y + z_i y_i X - y_i <X,Z> E_i + x_i <Y,Z> E_i
    AlgebraVector term = (xz - zi * xi) * y + (zi * yi - yz) * x;
    term[i] += xi * yz - yi * xz;
    r += k[i] * term;
  }
  return r;
}

double sectional_curvature(const FamilyData& family, const AlgebraVector& x,
                           const AlgebraVector& y) {
  const double area = dot(x, x) * dot(y, y) - dot(x, y) * dot(x, y);
  return dot(curvature(family, x, y, y), x) / area;
}

double scalar_curvature(const FamilyData& family) {
  double rho = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      rho += dot(curvature(family, basis(i), basis(j), basis(j)), basis(i));
  return rho;
}

InvariantScalars invariant_scalars(const StructureConstants& c) {
  const MuTriple m = mu_from_c(c);
  const double m1 = m.mu1, m2 = m.mu2, m3 = m.mu3;
  InvariantScalars s;
  s.beta = {m2 * m2 * (m1 - m3) + m3 * m3 * (m1 - m2), m3 * m3 * (m2 - m1) + m1 * m1 * (m2 - m3),
            m1 * m1 * (m3 - m2) + m2 * m2 * (m3 - m1)};
  const double sigma2 = m1 * m2 + m2 * m3 + m1 * m3;
  s.delta = (m1 - m2) * (m2 - m3) * (m3 - m1) * sigma2;
  s.rho = 2.0 * sigma2;
  if (sigma2 != 0.0)
    s.grad_bound_a = -(m1 * m1 * m2 * m2 + m2 * m2 * m3 * m3 + m1 * m1 * m3 * m3) / sigma2;
  return s;
}

std::string_view to_string(GroupLabel label) {
  switch (label) {
    case GroupLabel::SU2: return "SU(2)";
    case GroupLabel::SL2: return "~SL(2,R)";
    case GroupLabel::E2: return "~E(2)";
    case GroupLabel::Sol3: return "Sol3";
    case GroupLabel::Nil3: return "Nil3";
    case GroupLabel::R3: return "R3";
  }
  return "?";
}

GroupLabel identify_unimodular_group(const StructureConstants& c, const BranchTolerance& tol) {
  const Normalization n = normalize(c, tol);
  const double scale = c.sup_norm();
  int positive = 0, negative = 0, zero = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double v = n.constants[i];
    if (tol.zero(v, scale))
      ++zero;
    else if (v > 0.0)
      ++positive;
    else
      ++negative;
  }
  if (zero == 3) return GroupLabel::R3;
  if (positive == 3) return GroupLabel::SU2;
  if (positive == 2 && negative == 1) return GroupLabel::SL2;
  if (positive == 2 && zero == 1) return GroupLabel::E2;
  if (positive == 1 && negative == 1) return GroupLabel::Sol3;
  return GroupLabel::Nil3;  // one positive, two zero
}

std::optional<KappaTau> detect_ektau(const StructureConstants& c, const BranchTolerance& tol) {
  const double scale = c.sup_norm();
  const std::array<double, 3> v{c.c1, c.c2, c.c3};
  std::optional<KappaTau> found;
  int pairs = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3;
    const std::size_t third = (i + 2) % 3;
    if (!tol.equal(v[i], v[j], scale)) continue;
    ++pairs;
    const double pair = 0.5 * (v[i] + v[j]);
    if (tol.zero(v[third], scale) || tol.equal(v[third], pair, scale)) continue;
    const double tau = 0.5 * v[third];
    found = KappaTau{2.0 * tau * pair, tau};
  }
  if (pairs != 1) return std::nullopt;
  return found;
}

}  // namespace umbilic
