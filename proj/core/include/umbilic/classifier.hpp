#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "umbilic/lie_algebra.hpp"

namespace umbilic {

using RecordValue = std::variant<std::nullptr_t, bool, long, double, std::string,
                                 std::vector<double>, std::vector<std::vector<double>>>;

/// Ordered key/value list; serializes as a JSON object in insertion order.
class Record {
 public:
  Record& set(std::string key, RecordValue value);
  const RecordValue* find(const std::string& key) const;
  const std::vector<std::pair<std::string, RecordValue>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, RecordValue>> entries_;
};

enum class SurfaceKind {
  TotallyGeodesicDistribution,
  InvariantUmbilicProfile,
  ConstantCurvatureClassical,
  None,
};

std::string_view to_string(SurfaceKind kind);

struct SurfaceFamily {
  SurfaceKind kind;
  Record descriptor;
};

enum class FamilyKind { Unimodular, NonUnimodular };

/// Case tags: unimodular.1, unimodular.2.geodesic, unimodular.2.sol3,
/// unimodular.3, nonunimodular.1 .. nonunimodular.4.
struct ClassificationReport {
  FamilyKind family;
  Record params;
  std::string group_label;
  std::string case_tag;
  std::vector<SurfaceFamily> surfaces;  ///< empty exactly for non-existence cases
  Record evidence;
  bool locally_conformally_flat = false;
};

ClassificationReport classify_unimodular(const StructureConstants& c,
                                         const BranchTolerance& tol = {});
ClassificationReport classify_nonunimodular(const NonUnimodularParams& p,
                                            const BranchTolerance& tol = {});

/// Which non-existence argument covers a unimodular group, if any.
enum class NonexistenceCriterion {
  None,  ///< existence case
  PositiveScalarCurvature,
  ZeroScalarCurvature,
  DeltaZero,
  GenericPolynomial,
};

std::string_view to_string(NonexistenceCriterion criterion);

struct NonexistenceEvidence {
  NonexistenceCriterion criterion = NonexistenceCriterion::None;
  std::array<double, 3> beta{};
  double beta_norm = 0.0;
  double delta = 0.0;
  double rho = 0.0;
  std::optional<double> grad_bound_a;
};

NonexistenceEvidence nonexistence_evidence_unimodular(const StructureConstants& c,
                                                      const BranchTolerance& tol = {});

/// P(x, y) = ((a+1)(a+2)y^2 - (a-1)(a-2)x^2 - 2a) b + 2(a^2-1) x y.
double gauss_p(const NonUnimodularParams& p, double x, double y);
/// Q(x, y) = 4b x^2 y^2 + ab((1-a)x^2 - (1+a)y^2 + 2a)(1 - x^2 - y^2).
double gauss_q(const NonUnimodularParams& p, double x, double y);

struct GaussLocusSolution {
  double x = 0.0;
  double y = 0.0;
  double p_residual = 0.0;
  double q_residual = 0.0;
  /// max(|(a nu3^2 - nu2^2) b|, |(a nu3^2 + nu1^2) b|) with nu3^2 = 1 - x^2 - y^2.
  double constant_angle_violation = 0.0;
};

struct GaussLocus {
  std::vector<GaussLocusSolution> solutions;  ///< lexicographic in (x, y)
  std::size_t candidate_cells = 0;
  /// No more isolated solutions than the degree bound and no run of candidate
  /// cells suggesting a solution curve.
  bool finite = true;
};

/// Common zeros of P and Q in the closed unit disk: sign-change scan on a
/// resolution x resolution grid over [-1, 1]^2, damped Newton polish,
/// deduplication at 1e-6. Requires a not in {0, 1} and b != 0.
GaussLocus gauss_locus(const NonUnimodularParams& p, int resolution = 400,
                       const BranchTolerance& tol = {});

std::string to_json(const ClassificationReport& report, int indent = 2);

}  // namespace umbilic
