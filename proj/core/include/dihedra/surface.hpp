#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dihedra {

// A dart is one edge slot of one face. Darts and corners share the index
// 3 * face + slot; corner i of a face is opposite edge slot i, and edge slot i
// runs from corner i+1 to corner i+2 (mod 3) in the face's positive orientation.
struct Dart {
  int face = 0;
  int slot = 0;

  int index() const { return 3 * face + slot; }
  static Dart from_index(int index) { return {index / 3, index % 3}; }
  friend bool operator==(const Dart&, const Dart&) = default;
};

// Identifies two darts. `reversed` must be true: the two faces induce opposite
// directions on the shared edge, which is what keeps the surface oriented.
struct Gluing {
  Dart a;
  Dart b;
  bool reversed = true;
};

class SurfaceError : public std::runtime_error {
 public:
  enum class Kind { DuplicateGluing, NonOrientable, DanglingDart, NotSimplicial };

  SurfaceError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Oriented semi-simplicial triangulated surface, possibly with boundary.
// Immutable once built.
class TriangulatedSurface {
 public:
  static TriangulatedSurface build(int face_count, std::span<const Gluing> gluings);

  int face_count() const { return face_count_; }
  int dart_count() const { return 3 * face_count_; }
  int edge_count() const { return static_cast<int>(edge_darts_.size()); }
  int vertex_count() const { return static_cast<int>(vertex_corners_.size()); }

  // Glued partner of a dart, or -1 for a boundary dart.
  int mate(int dart) const { return mate_[dart]; }
  int edge_of(int dart) const { return edge_of_dart_[dart]; }
  // One dart for a boundary edge, two for an interior edge (lower index first).
  std::span<const int> edge_darts(int edge) const { return edge_darts_[edge]; }
  bool is_boundary_edge(int edge) const { return edge_darts_[edge].size() == 1; }
  int boundary_edge_count() const;
  int interior_edge_count() const { return edge_count() - boundary_edge_count(); }

  int vertex_of_corner(int corner) const { return vertex_of_corner_[corner]; }
  // Corners around a vertex in walk order; for a boundary vertex the walk starts
  // at one end of the half-disk link.
  std::span<const int> vertex_corners(int vertex) const { return vertex_corners_[vertex]; }
  bool is_boundary_vertex(int vertex) const { return boundary_vertex_[vertex]; }

  // Endpoints of an edge, read off its first dart (tail, head).
  std::array<int, 2> edge_endpoints(int edge) const;
  // Number of endpoints of `edge` at `vertex` (0, 1 or 2 for a loop).
  int endpoint_multiplicity(int vertex, int edge) const;
  // Degree in the 1-skeleton, loops counted twice.
  int vertex_degree(int vertex) const;
  // Edges incident to a vertex, each listed once.
  std::span<const int> vertex_edges(int vertex) const { return vertex_edges_[vertex]; }

  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }
  int boundary_component_count() const;
  bool is_closed() const { return boundary_edge_count() == 0; }
  bool is_connected() const;
  // Genuine simplicial complex: no loops, no multi-edges, no repeated faces,
  // no face glued to itself.
  bool is_simplicial() const;

  std::vector<Gluing> gluings() const;

 private:
  TriangulatedSurface() = default;

  int face_count_ = 0;
  std::vector<int> mate_;
  std::vector<int> edge_of_dart_;
  std::vector<std::vector<int>> edge_darts_;
  std::vector<int> vertex_of_corner_;
  std::vector<std::vector<int>> vertex_corners_;
  std::vector<std::vector<int>> vertex_edges_;
  std::vector<bool> boundary_vertex_;
};

// Builds a surface from faces given as vertex-label triples (corner order). Two
// faces sharing an edge must traverse it in opposite directions; an edge seen
// in the same direction twice is NonOrientable, more than twice DuplicateGluing.
// Labels only drive the gluing; vertex ids of the result are canonical.
TriangulatedSurface surface_from_triangles(std::span<const std::array<int, 3>> triangles);

// A subset of the faces of a surface.
class FaceSet {
 public:
  FaceSet() = default;
  explicit FaceSet(int universe) : member_(universe, false) {}
  static FaceSet all(int universe);
  static FaceSet from_mask(int universe, std::uint64_t mask);
  static FaceSet from_members(int universe, std::span<const int> faces);

  int universe() const { return static_cast<int>(member_.size()); }
  bool contains(int face) const { return member_[face]; }
  void insert(int face) { member_[face] = true; }
  void erase(int face) { member_[face] = false; }
  int size() const;
  bool empty() const { return size() == 0; }
  bool is_full() const { return size() == universe(); }
  std::vector<int> members() const;
  FaceSet complement() const;
  std::uint64_t mask() const;

  friend bool operator==(const FaceSet&, const FaceSet&) = default;

 private:
  std::vector<bool> member_;
};

// E(F): edges incident to at least one face of the set.
std::vector<int> incident_edges(const TriangulatedSurface& surface, const FaceSet& faces);
// Edges incident to the set on exactly one side that are not boundary edges of
// the surface.
std::vector<int> relative_boundary_edges(const TriangulatedSurface& surface, const FaceSet& faces);

// Closed subcomplex: faces, edges and vertices with every face of a member
// cell also a member.
struct ClosedSubcomplex {
  std::vector<bool> faces;
  std::vector<bool> edges;
  std::vector<bool> vertices;

  static ClosedSubcomplex closure_of(const TriangulatedSurface& surface, const FaceSet& faces);
  static ClosedSubcomplex whole(const TriangulatedSurface& surface);

  bool is_closed(const TriangulatedSurface& surface) const;
  bool empty() const;
  int face_count() const;
  int edge_count() const;
  int vertex_count() const;
  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }
  bool is_whole(const TriangulatedSurface& surface) const;

  // n_F(e): endpoints of `edge` lying in the subcomplex.
  int endpoint_count(const TriangulatedSurface& surface, int edge) const;
  // E'(F): edges outside the subcomplex with at least one endpoint in it.
  std::vector<int> frontier_edges(const TriangulatedSurface& surface) const;
};

// Visits every closed subcomplex (including the empty one). Exponential.
void for_each_closed_subcomplex(const TriangulatedSurface& surface,
                                const std::function<void(const ClosedSubcomplex&)>& visit);

// Poincare dual 1-skeleton: one vertex per face, one edge per interior edge.
struct DualGraph {
  int vertex_count = 0;
  std::vector<std::array<int, 2>> edges;  // face pairs
  std::vector<int> primal_edge;           // interior edge of the surface behind each dual edge
};

DualGraph poincare_dual(const TriangulatedSurface& surface);

// Faces reachable from one another across interior edges, restricted to `faces`.
bool is_dual_connected(const TriangulatedSurface& surface, const FaceSet& faces);

constexpr int kDefaultOracleLimit = 20;

class OracleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Nonempty proper face sets F such that F and its complement are both
// connected in the dual graph. Exponential; throws OracleLimitExceeded when the
// surface has more than `face_limit` faces.
void for_each_simple_subcomplex(const TriangulatedSurface& surface,
                                const std::function<void(const FaceSet&)>& visit,
                                int face_limit = 30);
std::vector<FaceSet> simple_subcomplexes(const TriangulatedSurface& surface, int face_limit = 30);

struct Cutset {
  std::vector<int> edges;        // sorted edge ids
  std::vector<bool> side;        // vertex bipartition the cut separates
  bool minimal = true;
  bool coterminous = false;
  bool closed_dual_curve = false;  // no boundary edge is cut
};

enum class CutsetMode { Strict, Lenient };

// Minimal non-coterminous edge cutsets of the 1-skeleton. Strict mode throws
// SurfaceError(NotSimplicial) on semi-simplicial input; lenient mode works on
// the multigraph. Exponential in the vertex count.
std::vector<Cutset> minimal_noncoterminous_cutsets(const TriangulatedSurface& surface,
                                                   CutsetMode mode = CutsetMode::Strict,
                                                   int vertex_limit = 24);

bool is_edge_cutset(const TriangulatedSurface& surface, std::span<const int> edges);
bool is_coterminous(const TriangulatedSurface& surface, std::span<const int> edges);

}  // namespace dihedra
