#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dihedra/angles.hpp"
#include "dihedra/rational.hpp"

namespace dihedra {

class InconsistentGluing : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnGluedFace : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Face `face` of `tet` (the face opposite that vertex) is glued to face
// `other_face` of `other_tet`; vertex i of `tet` goes to vertex perm[i].
struct FaceGluing3 {
  int tet = 0;
  int face = 0;
  int other_tet = 0;
  int other_face = 0;
  std::array<int, 4> perm{0, 1, 2, 3};
};

// Edge slots of a tetrahedron: 01 02 03 12 13 23. Opposite slots share a pair:
// {01,23} -> 0, {02,13} -> 1, {03,12} -> 2.
inline constexpr std::array<std::array<int, 2>, 6> kSlotVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
inline constexpr std::array<int, 6> kSlotPair{0, 1, 2, 2, 1, 0};
inline constexpr std::array<std::array<int, 2>, 3> kPairSlots{{{0, 5}, {1, 4}, {2, 3}}};
int slot_of(int a, int b);

struct EdgeSlot {
  int tet = 0;
  int slot = 0;
};

class IdealTriangulation3 {
 public:
  // Each gluing may be given from either side or both; both sides must agree.
  static IdealTriangulation3 build(int tet_count, std::span<const FaceGluing3> gluings, bool require_closed = true);

  int tet_count() const { return tet_count_; }
  int edge_count() const { return static_cast<int>(edge_slots_.size()); }
  int vertex_count() const { return static_cast<int>(vertex_members_.size()); }

  int edge_of(int tet, int slot) const { return edge_of_slot_[6 * tet + slot]; }
  std::span<const EdgeSlot> edge_slots(int edge) const { return edge_slots_[edge]; }
  int valence(int edge) const { return static_cast<int>(edge_slots_[edge].size()); }
  int vertex_of(int tet, int vertex) const { return vertex_class_[4 * tet + vertex]; }
  // (tet, vertex) pairs of an ideal vertex
  std::span<const std::array<int, 2>> vertex_members(int vertex) const { return vertex_members_[vertex]; }
  // Euler characteristic of the vertex link (0 for a torus or Klein bottle cusp).
  int vertex_link_euler(int vertex) const;
  std::optional<FaceGluing3> glued(int tet, int face) const;
  // One entry per glued face pair.
  std::vector<FaceGluing3> gluings() const;

 private:
  int tet_count_ = 0;
  std::vector<std::optional<FaceGluing3>> face_;
  std::vector<int> edge_of_slot_;
  std::vector<std::vector<EdgeSlot>> edge_slots_;
  std::vector<int> vertex_class_;
  std::vector<std::vector<std::array<int, 2>>> vertex_members_;
};

// Two tetrahedra, one torus cusp, two edges of valence 6.
IdealTriangulation3 two_tet_census();

// Per tetrahedron, one angle per opposite-edge pair (pi-units).
struct AngleStructure3 {
  std::vector<std::array<Rational, 3>> angle;

  // Sum 1 per tetrahedron and `edge_target` around every edge; nonnegative,
  // or positive when `strict`.
  bool verify(const IdealTriangulation3& m, bool strict, const Rational& edge_target = 2) const;
};

struct DualCertificate3 {
  std::vector<Rational> v_tet;
  std::vector<Rational> v_edge;
  // v_S + v_e1 + v_e2 per (tet, pair)
  std::vector<std::array<Rational, 3>> residual;
  Rational objective;  // sum v_S + target * sum v_e

  void recompute(const IdealTriangulation3& m, const Rational& edge_target = 2);
  bool constraints_hold() const;
};

enum class Structure3 { None, Weak, Strict };
const char* to_string(Structure3 kind);

struct HyperbolicReport {
  Structure3 kind = Structure3::None;
  std::optional<AngleStructure3> angles;
  Rational epsilon;  // maximal minimum angle when a structure exists
  // Farkas certificate when kind is None; optimal dual of the eps program
  // (objective 0) when strict was asked but only a weak structure exists.
  std::optional<DualCertificate3> certificate;
};

HyperbolicReport linear_hyperbolic_lp(const IdealTriangulation3& m, bool strict = true,
                                      const Rational& edge_target = 2);

struct NormalSurfaceVector {
  std::vector<std::array<long, 4>> tri;   // per tet, per vertex
  std::vector<std::array<long, 3>> quad;  // per tet, per opposite pair (the quad misses that pair)

  static NormalSurfaceVector zero(int tet_count);
  long u(int tet) const;
  bool quad_free() const;
};

// Points of the surface on one edge slot of a tetrahedron.
long slot_intersections(const NormalSurfaceVector& s, int tet, int slot);
// i_e per edge. Every slot of an edge must see the same count, otherwise the
// vector is not a surface and InvariantViolation is thrown.
std::vector<long> edge_intersections(const IdealTriangulation3& m, const NormalSurfaceVector& s);
Rational normal_chi(const IdealTriangulation3& m, const NormalSurfaceVector& s);
DualCertificate3 certificate_from_normal_surface(const IdealTriangulation3& m, const NormalSurfaceVector& s);
NormalSurfaceVector vertex_linking_surface(const IdealTriangulation3& m, int vertex);
// All vectors with entries in [0, max_count] whose edge counts are
// consistent, the zero vector excluded.
std::vector<NormalSurfaceVector> enumerate_normal_vectors(const IdealTriangulation3& m, int max_count);

struct HextEntry {
  Rational chi;
  bool boundary_parallel = false;  // quad free
  bool obstructs_weak = false;     // chi > 0
  bool obstructs_strict = false;   // chi >= 0 and not boundary parallel
};

struct HextReport {
  std::vector<HextEntry> entries;
  Structure3 lp = Structure3::None;
  bool consistent = true;
};

HextReport hext_check(const IdealTriangulation3& m, const std::vector<NormalSurfaceVector>& surfaces);

}  // namespace dihedra
