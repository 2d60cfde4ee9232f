#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "dihedra/angles.hpp"
#include "dihedra/surface.hpp"

namespace dihedra {

using Point = std::complex<double>;

class DegenerateAngle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneratePosition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kAngleFloor = 1e-9;

// Angles in radians; side[k] is opposite corner k, longest side 1.
struct TriangleShape {
  std::array<double, 3> angle{};
  std::array<double, 3> side{};
};

// Corner angles in pi-units.
TriangleShape shape_from_angles(double a, double b, double c);
std::vector<TriangleShape> angles_to_shapes(const std::vector<double>& corner);
std::vector<TriangleShape> angles_to_shapes(const FaceAngleSolution& solution);

std::vector<double> to_doubles(const std::vector<Rational>& values);

// Corner angles (pi-units) with the same face and edge sums as `start` whose
// shapes agree on every edge length. This is the maximizer of the sum of
// Lobachevsky functions over the angle polytope. `start` must be strictly
// positive.
std::vector<double> euclidean_refinement(const TriangulatedSurface& surface, const std::vector<double>& delta,
                                         const std::vector<double>& start);
std::vector<double> euclidean_refinement(const TriangulatedSurface& surface, const AngleAssignment& delta,
                                         const FaceAngleSolution& start);

struct EdgeMismatch {
  int edge = -1;
  double length = 0;    // relative difference of the two copies
  double angle = 0;     // rotation from one copy to the other, in (-pi, pi]
  double position = 0;  // largest endpoint displacement
};

struct PlanarDevelopment {
  // corner positions per face
  std::vector<std::array<Point, 3>> face_points;
  // dart through which each face was reached, -1 for the root
  std::vector<int> parent_dart;
  int root = 0;
  // interior edges off the spanning tree
  std::vector<EdgeMismatch> mismatches;

  double max_length_mismatch() const;
  double max_position_mismatch() const;
  // One position per vertex, taken from its first corner.
  std::vector<Point> vertex_points(const TriangulatedSurface& surface) const;
};

PlanarDevelopment develop(const TriangulatedSurface& surface, const std::vector<double>& corner, int root = 0);
PlanarDevelopment develop(const TriangulatedSurface& surface, const FaceAngleSolution& solution, int root = 0);

struct HolonomyValue {
  double dilatation = 0;  // log of the scale factor
  double rotation = 0;    // summed turning, not reduced
};

// `cycle` lists darts crossed in order; each dart's mate must lie in the face
// of the next dart, and the last crossing must return to the first face.
HolonomyValue holonomy(const TriangulatedSurface& surface, const std::vector<double>& corner,
                       const std::vector<int>& cycle);
// Fundamental cycles of the BFS dual tree from `root`, one per non-tree
// interior edge.
std::vector<std::vector<int>> dual_cycle_basis(const TriangulatedSurface& surface, int root = 0);

struct ShearValue {
  int edge = -1;
  double r = 0;
};

// r = log(|AC| |BD| / (|BC| |AD|)) where the edge's first dart runs A -> B in
// t1 = ABC and t2 = BAD. Swapping the faces keeps the orientation-consistent
// labelling, so r is symmetric; swapping only C and D negates it.
std::vector<ShearValue> shear_coordinates(const TriangulatedSurface& surface, const std::vector<double>& corner);

struct PointTriangulation {
  TriangulatedSurface surface;
  std::vector<std::array<int, 3>> triangles;  // point indices, counterclockwise
  std::vector<int> point_of_vertex;
  std::vector<double> delta;           // pi-units, per surface edge
  std::vector<double> boundary_angle;  // pi-units, per vertex, 0 inside
  std::vector<double> corner;          // the actual angles, pi-units
};

PointTriangulation delaunay_of_points(const std::vector<Point>& points, double tolerance = 1e-9);

// Rounds each angle to `denominator`, then moves the rounding error of the
// total onto the largest angle so that the sum is |F| again.
AngleAssignment rationalize_delta(const TriangulatedSurface& surface, const std::vector<double>& delta,
                                  long denominator = 1L << 16);

// Interior edges whose angle exceeds pi.
std::vector<int> verify_delaunay(const TriangulatedSurface& surface, const AngleAssignment& delta);
std::vector<int> verify_delaunay(const TriangulatedSurface& surface, const std::vector<double>& corner,
                                 double tolerance = 1e-9);

// Least-squares similarity taking `from` onto `to`; returns the largest
// residual divided by the diameter of `to`.
double similarity_distance(const std::vector<Point>& from, const std::vector<Point>& to);

}  // namespace dihedra
