#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dihedra/lp.hpp"
#include "dihedra/rational.hpp"
#include "dihedra/surface.hpp"

namespace dihedra {

// All angles are in units of pi.

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NoBoundary : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotADisk : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Prescribed dihedral angle per edge.
class AngleAssignment {
 public:
  AngleAssignment() = default;
  AngleAssignment(const TriangulatedSurface& surface, std::vector<Rational> delta);

  int size() const { return static_cast<int>(delta_.size()); }
  const Rational& operator[](int edge) const { return delta_[edge]; }
  const std::vector<Rational>& values() const { return delta_; }

  bool all_positive() const;
  // Every angle positive and every interior angle at most 1.
  bool is_delaunay(const TriangulatedSurface& surface) const;
  Rational total() const;

  Rational exterior(int edge) const { return 1 - delta_[edge]; }
  // Sum of exterior angles over edges at v, loops counted twice.
  Rational cone_angle(const TriangulatedSurface& surface, int vertex) const;
  Rational curvature(const TriangulatedSurface& surface, int vertex) const { return 2 - cone_angle(surface, vertex); }
  // Corner angle sum forced at v: the cone angle, less 1 on the boundary.
  Rational corner_sum(const TriangulatedSurface& surface, int vertex) const;

 private:
  std::vector<Rational> delta_;
};

// Corner angles indexed by corner (3 * face + slot). Corner i is opposite
// edge slot i, so the angle opposite dart d sits at index d.
struct FaceAngleSolution {
  std::vector<Rational> corner;
  Rational min_angle;

  // Face sums 1, edge sums matching, all angles positive.
  bool verify(const TriangulatedSurface& surface, const AngleAssignment& delta) const;
  Rational vertex_angle_sum(const TriangulatedSurface& surface, int vertex) const;
};

enum class Verdict { Feasible, Infeasible };
enum class Violation { None, NonPositiveAngle, TotalExcess, ProperSubset };

const char* to_string(Verdict verdict);
const char* to_string(Violation violation);

struct FeasibilityReport {
  Verdict verdict = Verdict::Infeasible;
  Violation violation = Violation::None;

  std::optional<FaceAngleSolution> angles;
  // Smallest excess over proper nonempty face sets, when the method computed it.
  std::optional<Rational> psi;

  int violating_edge = -1;
  std::optional<FaceSet> violating;
  Rational violating_excess;

  // (u, v) with u_t + v_e <= 0 for every corner, and nonnegative objective
  // sum u + sum delta v that is not attained at a uniform point.
  std::vector<Rational> dual_u;
  std::vector<Rational> dual_v;
  Rational dual_objective;

  bool feasible() const { return verdict == Verdict::Feasible; }
};

// sum of delta over E(F), minus |F|.
Rational excess(const TriangulatedSurface& surface, const FaceSet& faces, const AngleAssignment& delta);

// Enumerates all 2^|F| face sets. Throws OracleLimitExceeded above the limit.
FeasibilityReport check_conditions_bruteforce(const TriangulatedSurface& surface, const AngleAssignment& delta,
                                              int face_limit = kDefaultOracleLimit);
// Same verdict, enumerating simple subcomplexes only. Needs a connected surface.
FeasibilityReport check_conditions_simple(const TriangulatedSurface& surface, const AngleAssignment& delta,
                                          int face_limit = 30);

struct CurvatureTerms {
  Rational frontier_sum;  // sum over E'(F) of n_F(e) times the exterior angle
  int euler_characteristic = 0;
  Rational total_curvature;
  Rational slack;  // frontier_sum - (2 chi - K)
};

// Curvature form of the subcomplex inequality. Throws InvariantViolation when
// K(F) = 2 chi(F) + 2 (sum_{E(F)} delta - |F(F)|) - frontier_sum fails.
CurvatureTerms check_kappa(const TriangulatedSurface& surface, const ClosedSubcomplex& sub,
                           const AngleAssignment& delta);

// Feasible iff slack(T) = 0 and slack > 0 on every other closed subcomplex
// containing an edge. Minimizes over the edge choices for each face set.
FeasibilityReport check_kappa_all(const TriangulatedSurface& surface, const AngleAssignment& delta,
                                  int face_limit = kDefaultOracleLimit);

// Corner angles as beta + eps, beta >= 0, maximize eps.
GeneralProgram build_program_L(const TriangulatedSurface& surface, const AngleAssignment& delta);
// The program with eps dropped (all corner angles >= 0).
LinearProgram build_program_L1(const TriangulatedSurface& surface, const AngleAssignment& delta);

// Exact LP decision. Feasible iff the maximal minimum angle is positive; the
// returned angles attain it. Needs a connected surface.
FeasibilityReport decide_lp(const TriangulatedSurface& surface, const AngleAssignment& delta);

struct RelaxedReport {
  FeasibilityReport report;
  std::vector<Rational> boundary_slack;  // per edge, zero on interior edges
};

// Boundary edges may carry angles below their prescription, by a positive
// slack. Throws NoBoundary on a closed surface.
RelaxedReport decide_relaxed_boundary(const TriangulatedSurface& surface, const AngleAssignment& delta);

// Corner angles with prescribed sums at some vertices (cone angle at an
// interior vertex, polygon angle at a boundary vertex).
FeasibilityReport cone_angle_problem(const TriangulatedSurface& surface,
                                     const std::vector<std::optional<Rational>>& vertex_sum, bool delaunay_cap = true);

enum class AndreevClause { None, InteriorVertex, BoundaryVertex, ClosedCurve, BoundarySplit };

const char* to_string(AndreevClause clause);

struct AndreevReport {
  bool passed = false;
  AndreevClause clause = AndreevClause::None;
  int vertex = -1;
  std::vector<int> cutset;
  std::vector<bool> side;
};

// Direct check of the disk conditions. `boundary_angle` is indexed by vertex;
// entries at interior vertices are ignored. Throws NotADisk.
AndreevReport andreev_check(const TriangulatedSurface& surface, const AngleAssignment& delta,
                            const std::vector<Rational>& boundary_angle);
AndreevReport andreev_check(const TriangulatedSurface& surface, const std::vector<double>& delta,
                            const std::vector<double>& boundary_angle, double tolerance = 1e-6);

// decide_lp with polygon angles fixed at boundary vertices and cone angle 2 at
// interior vertices.
FeasibilityReport decide_planar_disk_lp(const TriangulatedSurface& surface, const AngleAssignment& delta,
                                        const std::vector<Rational>& boundary_angle);

}  // namespace dihedra
