#pragma once

#include <stdexcept>
#include <vector>

#include "dihedra/angles.hpp"
#include "dihedra/surface.hpp"

namespace dihedra {

class NotASphere : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Each face ABC of T replaced by AOB, BOC, COA around a new vertex O. Face
// 3f + i of the result is [O, c_{i+1}, c_{i+2}] for corners c of face f, so its
// slot 0 is slot i of f and keeps the old gluing.
struct Stellation {
  TriangulatedSurface surface;
  std::vector<bool> is_new;       // per vertex of the stellation
  std::vector<int> source;        // T vertex for an old vertex, T face for a new one
  int old_count = 0;
  int new_count = 0;

  std::vector<int> old_vertices() const;
  std::vector<int> new_vertices() const;
};

Stellation stellate(const TriangulatedSurface& surface);

// Corner angles with every interior edge at most 1 (Delaunay) and every cone
// angle strictly below 2. Strictness by maximizing eps in
//   corner = beta + eps, cone angle + eps <= 2.
struct CurvedReport {
  FeasibilityReport report;
  Rational margin;                   // optimal eps; feasible iff positive
  std::vector<Rational> cone_angle;  // per vertex, when feasible
  std::vector<Rational> dual_w;      // vertex rows of the certificate
};

// Throws NotASphere unless the surface is a closed connected sphere.
CurvedReport positively_curved_realizability(const TriangulatedSurface& surface);

enum class AveragingStep { None, Delaunay, GaussBonnet, OldVersusNew, AverageBound, PositiveCurvature };

const char* to_string(AveragingStep step);

struct AveragingReport {
  bool delaunay = false;
  Rational cone_sum;         // over all vertices
  Rational gauss_bonnet;     // 2 (|V| - chi), i.e. 2(|V| - 2) on a sphere
  Rational old_sum;
  Rational new_sum;
  Rational old_lower_bound;  // |V| - chi
  Rational old_average;
  Rational average_bound;    // 3 - 6 / |V(T)|
  Rational max_old_cone;
  bool contradiction = false;  // average_bound >= 2
  // First link of the chain that does not hold. PositiveCurvature means some
  // old cone angle reaches 2, which is what the chain predicts once the bound
  // is at least 2.
  AveragingStep first_failure = AveragingStep::None;
};

AveragingReport averaging_bound_check(const Stellation& stellation, const AngleAssignment& delta);

}  // namespace dihedra
