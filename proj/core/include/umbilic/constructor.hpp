#pragma once

#include <array>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "umbilic/lie_algebra.hpp"
#include "umbilic/linalg.hpp"
#include "umbilic/semidirect.hpp"
#include "umbilic/surface.hpp"

namespace umbilic {

/// A left-invariant plane distribution: unit normal and an orthonormal spanning pair.
struct GeodesicDistribution {
  AlgebraVector normal;
  std::array<AlgebraVector, 2> span;
};

/// The two totally geodesic distributions of a unimodular group with
/// c3 < 0 < c1 and c2 = c1 + c3 (after normalization), in the caller's frame.
/// Empty otherwise.
std::vector<GeodesicDistribution> geodesic_distributions_unimodular(const StructureConstants& c,
                                                                    const BranchTolerance& tol = {});

/// {E1, E3} and {E2, E3} when b = 0, empty otherwise.
std::vector<GeodesicDistribution> geodesic_distributions_nonunimodular(
    const NonUnimodularParams& p, const BranchTolerance& tol = {});

/// II(S_i, S_j) = <nabla_{S_i} S_j, N>.
Matrix2 algebraic_second_form(const FamilyData& family, const GeodesicDistribution& d);

/// |<[S_1, S_2], N>|; zero exactly when the span is a subalgebra.
double subalgebra_defect(const FamilyData& family, const GeodesicDistribution& d);

enum class InvarianceDirection { X, Y };

struct ProfileSample {
  double y = 0.0;
  double z = 0.0;
  double zp = 0.0;
  double zpp = 0.0;
};

/// Which ambient an invariant profile lives in.
enum class ProfileModel {
  NonUnimodular,  ///< R^2 x_{A(a,0)} R, parameter a
  Diagonal,       ///< R^2 x_{diag(1,c)} R, parameter c
};

/// z'' as a function of (z, z') along the profile.
using Acceleration = std::function<double(double z, double zp)>;

struct ProfileOptions {
  /// Integration stops before |z'| would exceed this; the profile is then truncated.
  double zprime_cap = 3.0;
};

/// An even height function z(y) sampled on a uniform grid symmetric about 0.
/// X-invariant surfaces are (u, v) -> (u, v, z(v)); y-invariant ones (v, u, z(v)).
class UmbilicProfile {
 public:
  UmbilicProfile(ProfileModel model, double parameter, InvarianceDirection direction,
                 double lambda, double theta, double step, double y_max,
                 std::vector<ProfileSample> samples, Acceleration acceleration);

  ProfileModel model() const { return model_; }
  double parameter() const { return parameter_; }
  InvarianceDirection direction() const { return direction_; }
  double lambda() const { return lambda_; }
  double theta() const { return theta_; }
  double step() const { return step_; }
  double requested_y_max() const { return requested_; }
  const std::vector<ProfileSample>& samples() const { return samples_; }

  double y_min() const { return samples_.front().y; }
  double y_max() const { return samples_.back().y; }
  bool truncated() const { return y_max() < requested_ - 0.5 * step_; }

  /// Exponent a entering the ODE: a for x-invariant, -a for y-invariant.
  double ode_a() const;

  /// Quintic Hermite interpolation of (z, z') between samples; z'' from the ODE.
  /// Throws ParameterOutOfRange outside [y_min, y_max].
  ProfileSample evaluate(double y) const;

  /// Left-minus-right of the first integral at a sample.
  double first_integral_drift(const ProfileSample& s) const;

  AmbientModel ambient() const;

 private:
  ProfileModel model_;
  double parameter_;
  InvarianceDirection direction_;
  double lambda_;
  double theta_;
  double step_;
  double requested_;
  std::vector<ProfileSample> samples_;
  Acceleration acceleration_;
};

/// z'' = (3a-1) L^2 e^{2(3a-1)z} - (a-1) e^{2(a-1)z}, z(0) = -log(L)/(2a), z'(0) = 0,
/// with a replaced by -a for the y-invariant direction. Fixed-step RK4.
/// Requires a > 0, a != 1, lambda > 0, step > 0, y_max > 0.
UmbilicProfile solve_profile_closed(double a, double lambda, double y_max, double step,
                                    InvarianceDirection direction = InvarianceDirection::X,
                                    const ProfileOptions& options = {});

/// Profile of an x-invariant umbilical surface in R^2 x_{diag(1,c)} R with
/// z(0) = z0, z'(0) = 0. Each RK stage finds z'' by bisection so that the two
/// principal curvatures agree. Requires -1 <= c < 1, step > 0, y_max > 0.
UmbilicProfile solve_profile_shooting(double c, double z0, double step, double y_max,
                                      const ProfileOptions& options = {});

/// The invariant surface generated by the profile, with analytic jet from
/// the interpolant. Domain: u in [-1, 1], v over the profile's samples.
SurfacePatch build_invariant_surface(const UmbilicProfile& profile);

/// (x, y, z) -> (x e^{(1+a)w}, y e^{(1-a)w}, z + w).
PointMap congruence_map(double a, double w);

/// max |to(y e^{(1-a)w}) - (z + w)| over the samples of `from` whose image lies
/// in the range of `to`, together with the number of samples compared.
struct ProfileComparison {
  double max_distance = 0.0;
  std::size_t compared = 0;
};
ProfileComparison congruence_defect(const UmbilicProfile& from, const UmbilicProfile& to,
                                    double w);

/// Compares a diag(1, c) profile with an A(a, 0) profile, c = (1-a)/(1+a),
/// through Z(Y) = (1+a) z(Y / (1+a)).
ProfileComparison rescaled_defect(const UmbilicProfile& diagonal, const UmbilicProfile& closed);

/// Unit coordinate direction of the level line of lambda through (u, v).
CoordinateVector lambda_level_direction(const SurfacePatch& s, double u, double v);

/// Whether one of (x, y, z) -> (+-x, +-y, z) carries direction d1 to +-d2.
bool related_by_stabilizer(const CoordinateVector& d1, const CoordinateVector& d2,
                           double tol = 1e-6);

/// Columns y, z, zprime, first_integral_drift.
void write_profile_csv(std::ostream& out, const UmbilicProfile& profile);

}  // namespace umbilic
