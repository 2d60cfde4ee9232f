#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "dihedra/angles.hpp"
#include "dihedra/rational.hpp"
#include "dihedra/surface.hpp"

namespace dihedra {

class EpsilonOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MalformedCut : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FlowArc {
  int from = 0;
  int to = 0;
  Rational capacity;
  int level = 0;  // 1: source to face, 2: face to edge (one per dart), 3: edge to sink; 0 for free-form arcs
  int item = -1;  // face, dart or edge behind the arc
};

// Node 0 is the source, faces follow, then edges, and the sink is last.
struct FlowNetwork {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  int face_count = 0;
  int edge_count = 0;
  Rational epsilon;  // 0 for N1
  std::vector<FlowArc> arcs;

  int face_node(int face) const { return 1 + face; }
  int edge_node(int edge) const { return 1 + face_count + edge; }
};

FlowNetwork build_N1(const TriangulatedSurface& surface, const AngleAssignment& delta);
// Throws EpsilonOutOfRange unless 0 < eps <= 1/3 and every capacity is nonnegative.
FlowNetwork build_N2(const TriangulatedSurface& surface, const AngleAssignment& delta, const Rational& epsilon);

struct FlowOutcome {
  Rational value;
  std::vector<Rational> flow;      // per arc
  std::vector<bool> source_side;   // residual reachability from the source
  std::vector<int> cut_arcs;       // arcs leaving the source side
  Rational cut_capacity;
  bool integral_scaling = false;   // solved in int64 after scaling capacities
};

// Dinic blocking flows. Exact.
FlowOutcome max_flow(const FlowNetwork& network);

struct CutDecomposition {
  FaceSet f0;  // faces on the sink side: level-1 arc cut
  FaceSet f2;  // source-side faces with every edge on the sink side
  FaceSet f3;  // source-side faces with every edge on the source side
  Rational capacity;
};

// Partitions the faces by the cut and checks
// c = (1-3eps)|F0| + 3(1-eps)|F2| + sum over E(F3) of the level-3 capacities.
// Throws MalformedCut when a source-side face has edges on both sides.
CutDecomposition cut_capacity_decomposition(const FlowNetwork& network, const FlowOutcome& outcome);

enum class EpsilonPolicy { Auto, Lcm, Fixed };

struct FlowOptions {
  bool strict = true;
  EpsilonPolicy policy = EpsilonPolicy::Auto;
  Rational fixed_epsilon;
};

struct FlowReport {
  FeasibilityReport report;
  Rational epsilon;    // the eps of the last network solved
  Rational max_flow;
  Rational required;   // |F| (1 - 3 eps)
  std::optional<CutDecomposition> cut;
  int networks_solved = 0;
};

// Max-flow decision. Non-strict: max flow of N1 equals |F| and the angles sum
// to |F|; angles may be zero. Strict: additionally a positive minimum angle,
// found by parametric search over N2 (Auto), or tested at 1/lcm of the
// denominators (Lcm) or at a fixed value. Needs a connected surface.
FlowReport decide_flow(const TriangulatedSurface& surface, const AngleAssignment& delta,
                       const FlowOptions& options = {});

}  // namespace dihedra
