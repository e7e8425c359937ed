#pragma once

#include <array>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "umbilic/lie_algebra.hpp"
#include "umbilic/linalg.hpp"
#include "umbilic/semidirect.hpp"

namespace umbilic {

/// Milnor frame of a unimodular chart: row i of `frame` is the i-th frame
/// vector with bracket constants `constants`, in chart-frame components.
struct UnimodularFrame {
  StructureConstants constants;
  Matrix3 frame;
};

/// The metric Lie group a patch lives in: the chart matrix A, the connection
/// of the chart frame, and whichever family data the chart realizes.
class AmbientModel {
 public:
  /// R^2 x_A R with no family identification.
  static AmbientModel semidirect(const Matrix2& a);
  /// R^2 x_{A(a,b)} R.
  static AmbientModel nonunimodular(const NonUnimodularParams& p);
  /// A = diag(1, c). For c = -1 this is Sol3 with Milnor frame
  /// ((E1+E2)/sqrt2, E3, (E1-E2)/sqrt2) and constants (1, 0, -1).
  static AmbientModel diagonal(double c);

  const Matrix2& matrix() const { return a_; }
  const ConnectionTable& connection() const { return connection_; }
  const std::optional<NonUnimodularParams>& nonunimodular_params() const { return params_; }
  const std::optional<UnimodularFrame>& unimodular_frame() const { return unimodular_; }

 private:
  explicit AmbientModel(const Matrix2& a);

  Matrix2 a_;
  ConnectionTable connection_;
  std::optional<NonUnimodularParams> params_;
  std::optional<UnimodularFrame> unimodular_;
};

struct Domain {
  double u_min = -1.0;
  double u_max = 1.0;
  double v_min = -1.0;
  double v_max = 1.0;

  bool contains(double u, double v) const {
    return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
  }
};

/// Chart value with first and second coordinate derivatives.
struct ChartJet {
  GroupPoint p;
  CoordinateVector du, dv, duu, duv, dvv;
};

using Chart = std::function<GroupPoint(double, double)>;
using JetHook = std::function<ChartJet(double, double)>;

/// A parametrized surface in a semidirect model. Chart derivatives come from
/// an attached analytic jet when present, otherwise from central differences
/// with step h * max(1, |coordinate|).
class SurfacePatch {
 public:
  SurfacePatch(AmbientModel ambient, Chart chart, Domain domain, double fd_step = 1e-5);

  SurfacePatch with_jet(JetHook jet) const;
  SurfacePatch with_fd_step(double h) const;
  SurfacePatch with_second_step(double h) const;

  const AmbientModel& ambient() const { return ambient_; }
  const Domain& domain() const { return domain_; }
  double fd_step() const { return fd_step_; }
  bool has_analytic_jet() const { return static_cast<bool>(jet_); }

  GroupPoint point(double u, double v) const { return chart_(u, v); }
  ChartJet jet(double u, double v) const;

 private:
  AmbientModel ambient_;
  Chart chart_;
  JetHook jet_;
  Domain domain_;
  double fd_step_;
  double fd_step_second_ = 1e-4;
};

struct AngleFunctions {
  double nu1 = 0.0;
  double nu2 = 0.0;
  double nu3 = 0.0;
};

struct ShapeSample {
  double u = 0.0;
  double v = 0.0;
  Matrix2 op;             ///< -nabla N in the Gram-Schmidt tangent basis
  double lambda = 0.0;    ///< half the trace
  double residual = 0.0;  ///< |op - lambda I|_F
  double asymmetry = 0.0; ///< |op12 - op21|

  double relative_residual() const { return residual / std::max(1.0, op.frobenius()); }
};

/// Relative umbilicity tolerance used by the residual evaluators' gate.
inline constexpr double kUmbilicGate = 1e-4;

/// Unit normal in chart-frame components, N ~ phi_u x phi_v.
/// Throws DegenerateImmersion when the tangents are (numerically) dependent.
AlgebraVector unit_normal(const SurfacePatch& s, double u, double v);
AngleFunctions angle_functions(const SurfacePatch& s, double u, double v);
ShapeSample shape_operator(const SurfacePatch& s, double u, double v);
/// Shape operator from a chart jet directly, without a patch.
ShapeSample shape_from_jet(const AmbientModel& ambient, const ChartJet& jet);

/// |grad lambda - closed form| for the ambient family; min over the sign of lambda.
/// Throws PreconditionViolation off the umbilic set, FamilyMismatch without family data.
double grad_lambda_residual(const SurfacePatch& s, double u, double v);

/// Per-angle-function |grad nu_i - closed form|, angles taken in the family's frame.
std::array<double, 3> angle_gradient_residual(const SurfacePatch& s, double u, double v);

enum class ResidualFamily { Unimodular, NonUnimodular };

struct NamedResidual {
  std::string name;
  double value = 0.0;
};

/// Left-minus-right of the pointwise identities satisfied by umbilical surfaces.
/// Unimodular: beta_quadric, lambda_quadric. Non-unimodular: p_identity,
/// lambda_relation, angle_relation.
std::vector<NamedResidual> pointwise_system_residuals(const SurfacePatch& s, double u, double v,
                                                      ResidualFamily family);

struct GridRow {
  double u, v;
  GroupPoint p;
  AngleFunctions nu;
  double lambda;
  double residual;
};

/// nu x nv samples on the closed domain rectangle, row-major in v then u.
std::vector<GridRow> sample_grid(const SurfacePatch& s, int nu, int nv);
void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows);

/// Plane {x = offset} (axis 0) or {y = offset} (axis 1) with analytic jet;
/// chart (u, v) -> point with the remaining horizontal coordinate u and z = v.
SurfacePatch coordinate_plane(const AmbientModel& ambient, int axis, double offset,
                              const Domain& domain);

}  // namespace umbilic
