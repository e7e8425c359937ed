#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>

#include "umbilic/linalg.hpp"

namespace umbilic {

/// Structure constants of a unimodular metric Lie algebra in a frame with
/// [E1,E2] = c3 E3, [E2,E3] = c1 E1, [E3,E1] = c2 E2.
struct StructureConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? c1 : (i == 1 ? c2 : c3); }
  double sup_norm() const;
  friend constexpr bool operator==(const StructureConstants&, const StructureConstants&) = default;
};

struct MuTriple {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3 = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? mu1 : (i == 1 ? mu2 : mu3); }
  friend constexpr bool operator==(const MuTriple&, const MuTriple&) = default;
};

/// Parameters (a, b) of the non-unimodular semidirect product R^2 x_{A(a,b)} R.
/// Both must be non-negative; construction throws ParameterOutOfRange otherwise.
class NonUnimodularParams {
 public:
  NonUnimodularParams(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  friend bool operator==(const NonUnimodularParams&, const NonUnimodularParams&) = default;

 private:
  double a_;
  double b_;
};

using FamilyData = std::variant<StructureConstants, NonUnimodularParams>;

/// Comparison policy for the discrete branches of the classification.
/// Values compare equal when bitwise equal, or (unless `exact`) when they
/// differ by at most `relative * max(1, scale)`.
struct BranchTolerance {
  double relative = 1e-9;
  bool exact = false;

  bool equal(double x, double y, double scale) const;
  bool zero(double x, double scale) const { return equal(x, 0.0, scale); }
};

MuTriple mu_from_c(const StructureConstants& c);
StructureConstants c_from_mu(const MuTriple& mu);

/// Result of bringing structure constants to the form c3 <= c2 <= c1.
/// Row i of `frame` is the i-th normalized frame vector expressed in the
/// original frame; `frame` is a signed permutation matrix.
struct Normalization {
  StructureConstants constants;
  Matrix3 frame;
  std::array<int, 3> order{0, 1, 2};
  bool sign_flipped = false;

  /// Maps normalized-frame components back to the original frame.
  AlgebraVector to_original(const AlgebraVector& v) const { return frame.transposed().apply(v); }
};

/// Sorts into c3 <= c2 <= c1, flipping the global sign first when negative
/// constants outnumber positive ones (ties broken toward |c1| >= |c3|).
Normalization normalize(const StructureConstants& c, const BranchTolerance& tol = {});

/// Left-invariant Levi-Civita connection coefficients
/// gamma(i, j, k) = <nabla_{E_i} E_j, E_k>, zero-based indices.
class ConnectionTable {
 public:
  double& operator()(int i, int j, int k) { return g_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return g_[index(i, j, k)]; }

  /// nabla_X Y for left-invariant fields X, Y with constant frame components.
  AlgebraVector covariant(const AlgebraVector& x, const AlgebraVector& y) const;

 private:
  static constexpr std::size_t index(int i, int j, int k) {
    return static_cast<std::size_t>(9 * i + 3 * j + k);
  }
  std::array<double, 27> g_{};
};

/// Structure tensor C(i, j, k) = <[E_i, E_j], E_k>.
class BracketTable {
 public:
  double& operator()(int i, int j, int k) { return c_[static_cast<std::size_t>(9 * i + 3 * j + k)]; }
  double operator()(int i, int j, int k) const {
    return c_[static_cast<std::size_t>(9 * i + 3 * j + k)];
  }
  AlgebraVector operator()(const AlgebraVector& x, const AlgebraVector& y) const;

 private:
  std::array<double, 27> c_{};
};

using Bracket = std::function<AlgebraVector(const AlgebraVector&, const AlgebraVector&)>;

AlgebraVector bracket_unimodular(const StructureConstants& c, const AlgebraVector& x,
                                 const AlgebraVector& y);
AlgebraVector bracket_nonunimodular(const NonUnimodularParams& p, const AlgebraVector& x,
                                    const AlgebraVector& y);
/// Tabulates any bilinear bracket on the frame.
BracketTable tabulate(const Bracket& bracket);

ConnectionTable connection_unimodular(const StructureConstants& c);
ConnectionTable connection_nonunimodular(const NonUnimodularParams& p);

struct ConnectionCheck {
  double metric_violation = 0.0;   ///< max |gamma(i,j,k) + gamma(i,k,j)|
  double torsion_violation = 0.0;  ///< max |gamma(i,j,.) - gamma(j,i,.) - [E_i,E_j]|
  double max() const { return metric_violation > torsion_violation ? metric_violation : torsion_violation; }
};

ConnectionCheck verify_connection(const ConnectionTable& table, const Bracket& bracket);

/// Coefficients k_i with R = k1 R1 + k2 R2 + k3 R3.
std::array<double, 3> curvature_coefficients(const StructureConstants& c);
std::array<double, 3> curvature_coefficients(const NonUnimodularParams& p);

/// R(x, y) z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z, evaluated
/// through the R_i decomposition.
AlgebraVector curvature(const FamilyData& family, const AlgebraVector& x, const AlgebraVector& y,
                        const AlgebraVector& z);
/// <R(x,y)y, x> / (|x|^2 |y|^2 - <x,y>^2).
double sectional_curvature(const FamilyData& family, const AlgebraVector& x,
                           const AlgebraVector& y);
/// sum_{i,j} <R(E_i,E_j)E_j, E_i>.
double scalar_curvature(const FamilyData& family);

struct InvariantScalars {
  std::array<double, 3> beta{};
  double delta = 0.0;
  double rho = 0.0;
  /// Undefined when mu1 mu2 + mu2 mu3 + mu1 mu3 vanishes.
  std::optional<double> grad_bound_a;
};

InvariantScalars invariant_scalars(const StructureConstants& c);

enum class GroupLabel { SU2, SL2, E2, Sol3, Nil3, R3 };

std::string_view to_string(GroupLabel label);

GroupLabel identify_unimodular_group(const StructureConstants& c, const BranchTolerance& tol = {});

struct KappaTau {
  double kappa = 0.0;
  double tau = 0.0;
};

/// E(kappa, tau) parameters when exactly two constants coincide and the third
/// is non-zero: c_pair = kappa / (2 tau), c_third = 2 tau.
std::optional<KappaTau> detect_ektau(const StructureConstants& c, const BranchTolerance& tol = {});

}  // namespace umbilic
