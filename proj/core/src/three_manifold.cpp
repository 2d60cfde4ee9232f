#include "dihedra/three_manifold.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dihedra/lp.hpp"

namespace dihedra {

int slot_of(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int s = 0; s < 6; ++s) {
    if (kSlotVertices[s][0] == a && kSlotVertices[s][1] == b) return s;
  }
  throw std::invalid_argument("not an edge of a tetrahedron");
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::array<int, 4> inverse(const std::array<int, 4>& p) {
  std::array<int, 4> q{};
  for (int i = 0; i < 4; ++i) q[p[i]] = i;
  return q;
}

bool same(const FaceGluing3& a, const FaceGluing3& b) {
  return a.tet == b.tet && a.face == b.face && a.other_tet == b.other_tet && a.other_face == b.other_face &&
         a.perm == b.perm;
}

std::string where(int tet, int face) { return "tet " + std::to_string(tet) + " face " + std::to_string(face); }

}  // namespace

// ==========================================================
// ================      Triangulation     ==================
// ==========================================================

IdealTriangulation3 IdealTriangulation3::build(int tet_count, std::span<const FaceGluing3> gluings,
                                               bool require_closed) {
  if (tet_count <= 0) throw InconsistentGluing("need at least one tetrahedron");
  IdealTriangulation3 m;
  m.tet_count_ = tet_count;
  m.face_.assign(4 * tet_count, std::nullopt);
  auto set = [&](const FaceGluing3& g) {
    auto& slot = m.face_[4 * g.tet + g.face];
    if (slot && !same(*slot, g)) throw InconsistentGluing(where(g.tet, g.face) + " glued twice");
    slot = g;
  };
  for (const auto& g : gluings) {
    if (g.tet < 0 || g.tet >= tet_count || g.other_tet < 0 || g.other_tet >= tet_count || g.face < 0 ||
        g.face > 3 || g.other_face < 0 || g.other_face > 3) {
      throw InconsistentGluing("gluing index out of range");
    }
    std::array<int, 4> sorted = g.perm;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 4>{0, 1, 2, 3}) throw InconsistentGluing("gluing map is not a permutation");
    if (g.perm[g.face] != g.other_face) throw InconsistentGluing(where(g.tet, g.face) + ": map does not send face to face");
    if (g.tet == g.other_tet && g.face == g.other_face) throw InconsistentGluing(where(g.tet, g.face) + " glued to itself");
    set(g);
    set({g.other_tet, g.other_face, g.tet, g.face, inverse(g.perm)});
  }
  if (require_closed) {
    for (int i = 0; i < 4 * tet_count; ++i) {
      if (!m.face_[i]) throw UnGluedFace(where(i / 4, i % 4) + " is not glued");
    }
  }

  UnionFind edges(6 * tet_count), verts(4 * tet_count);
  for (const auto& g : m.face_) {
    if (!g) continue;
    for (int a = 0; a < 4; ++a) {
      if (a == g->face) continue;
      verts.unite(4 * g->tet + a, 4 * g->other_tet + g->perm[a]);
      for (int b = a + 1; b < 4; ++b) {
        if (b == g->face) continue;
        edges.unite(6 * g->tet + slot_of(a, b), 6 * g->other_tet + slot_of(g->perm[a], g->perm[b]));
      }
    }
  }
  std::vector<int> label(6 * tet_count, -1);
  m.edge_of_slot_.resize(6 * tet_count);
  for (int i = 0; i < 6 * tet_count; ++i) {
    const int r = edges.find(i);
    if (label[r] < 0) {
      label[r] = static_cast<int>(m.edge_slots_.size());
      m.edge_slots_.emplace_back();
    }
    m.edge_of_slot_[i] = label[r];
    m.edge_slots_[label[r]].push_back({i / 6, i % 6});
  }
  std::vector<int> vlabel(4 * tet_count, -1);
  m.vertex_class_.resize(4 * tet_count);
  for (int i = 0; i < 4 * tet_count; ++i) {
    const int r = verts.find(i);
    if (vlabel[r] < 0) {
      vlabel[r] = static_cast<int>(m.vertex_members_.size());
      m.vertex_members_.emplace_back();
    }
    m.vertex_class_[i] = vlabel[r];
    m.vertex_members_[vlabel[r]].push_back({i / 4, i % 4});
  }
  return m;
}

int IdealTriangulation3::vertex_link_euler(int vertex) const {
  const int triangles = static_cast<int>(vertex_members_[vertex].size());
  int free_sides = 0;
  for (const auto& [t, v] : vertex_members_[vertex]) {
    for (int f = 0; f < 4; ++f) free_sides += f != v && !face_[4 * t + f];
  }
  int ends = 0;
  for (const auto& slots : edge_slots_) {
    const auto [t, s] = slots.front();
    ends += (vertex_of(t, kSlotVertices[s][0]) == vertex) + (vertex_of(t, kSlotVertices[s][1]) == vertex);
  }
  return ends - (3 * triangles + free_sides) / 2 + triangles;
}

std::optional<FaceGluing3> IdealTriangulation3::glued(int tet, int face) const { return face_.at(4 * tet + face); }

std::vector<FaceGluing3> IdealTriangulation3::gluings() const {
  std::vector<FaceGluing3> out;
  for (const auto& g : face_) {
    if (g && std::make_pair(g->tet, g->face) < std::make_pair(g->other_tet, g->other_face)) out.push_back(*g);
  }
  return out;
}

IdealTriangulation3 two_tet_census() {
  const std::vector<FaceGluing3> g{
      {0, 0, 1, 0, {0, 1, 3, 2}},
      {0, 1, 1, 1, {2, 1, 0, 3}},
      {0, 2, 1, 2, {0, 3, 2, 1}},
      {0, 3, 1, 3, {1, 0, 2, 3}},
  };
  return IdealTriangulation3::build(2, g);
}

// ==========================================================
// ================      Angle structures  ==================
// ==========================================================

bool AngleStructure3::verify(const IdealTriangulation3& m, bool strict, const Rational& edge_target) const {
  if (static_cast<int>(angle.size()) != m.tet_count()) return false;
  for (const auto& a : angle) {
    if (a[0] + a[1] + a[2] != 1) return false;
    for (const auto& x : a) {
      if (x < 0 || (strict && x == 0)) return false;
    }
  }
  for (int e = 0; e < m.edge_count(); ++e) {
    Rational sum = 0;
    for (const auto& [t, s] : m.edge_slots(e)) sum += angle[t][kSlotPair[s]];
    if (sum != edge_target) return false;
  }
  return true;
}

void DualCertificate3::recompute(const IdealTriangulation3& m, const Rational& edge_target) {
  residual.assign(m.tet_count(), {});
  for (int t = 0; t < m.tet_count(); ++t) {
    for (int p = 0; p < 3; ++p) {
      residual[t][p] = v_tet[t] + v_edge[m.edge_of(t, kPairSlots[p][0])] + v_edge[m.edge_of(t, kPairSlots[p][1])];
    }
  }
  objective = 0;
  for (const auto& v : v_tet) objective += v;
  for (const auto& v : v_edge) objective += edge_target * v;
}

bool DualCertificate3::constraints_hold() const {
  for (const auto& r : residual) {
    for (const auto& x : r) {
      if (x > 0) return false;
    }
  }
  return true;
}

const char* to_string(Structure3 kind) {
  switch (kind) {
    case Structure3::None: return "none";
    case Structure3::Weak: return "weak";
    case Structure3::Strict: return "strict";
  }
  return "?";
}

HyperbolicReport linear_hyperbolic_lp(const IdealTriangulation3& m, bool strict, const Rational& edge_target) {
  const int nt = m.tet_count(), ne = m.edge_count();
  const int eps = 3 * nt;
  LinearProgram lp;
  lp.c.assign(3 * nt + 1, 0);
  lp.c[eps] = -1;
  for (int t = 0; t < nt; ++t) {
    std::vector<Rational> row(3 * nt + 1, 0);
    for (int p = 0; p < 3; ++p) row[3 * t + p] = 1;
    row[eps] = 3;
    lp.A.push_back(row);
    lp.b.push_back(1);
  }
  for (int e = 0; e < ne; ++e) {
    std::vector<Rational> row(3 * nt + 1, 0);
    for (const auto& [t, s] : m.edge_slots(e)) row[3 * t + kSlotPair[s]] += 1;
    row[eps] = m.valence(e);
    lp.A.push_back(row);
    lp.b.push_back(edge_target);
  }
  const LpOutcome out = solve(lp);
  HyperbolicReport r;
  auto certificate = [&](const std::vector<Rational>& y) {
    DualCertificate3 c;
    c.v_tet.assign(y.begin(), y.begin() + nt);
    c.v_edge.assign(y.begin() + nt, y.end());
    c.recompute(m, edge_target);
    return c;
  };
  if (out.status == LpStatus::Infeasible) {
    r.certificate = certificate(out.farkas);
    return r;
  }
  if (out.status != LpStatus::Optimal) throw std::logic_error("angle program cannot be unbounded");
  r.epsilon = out.x[eps];
  AngleStructure3 a;
  for (int t = 0; t < nt; ++t) a.angle.push_back({out.x[3 * t] + r.epsilon, out.x[3 * t + 1] + r.epsilon, out.x[3 * t + 2] + r.epsilon});
  r.angles = a;
  r.kind = strict && r.epsilon > 0 ? Structure3::Strict : Structure3::Weak;
  if (strict && r.kind == Structure3::Weak) r.certificate = certificate(out.dual);
  return r;
}

// ==========================================================
// ================      Normal surfaces   ==================
// ==========================================================

NormalSurfaceVector NormalSurfaceVector::zero(int tet_count) {
  NormalSurfaceVector s;
  s.tri.assign(tet_count, {0, 0, 0, 0});
  s.quad.assign(tet_count, {0, 0, 0});
  return s;
}

long NormalSurfaceVector::u(int tet) const {
  return tri[tet][0] + tri[tet][1] + tri[tet][2] + tri[tet][3] + 2 * (quad[tet][0] + quad[tet][1] + quad[tet][2]);
}

bool NormalSurfaceVector::quad_free() const {
  for (const auto& q : quad) {
    if (q[0] || q[1] || q[2]) return false;
  }
  return true;
}

long slot_intersections(const NormalSurfaceVector& s, int tet, int slot) {
  long n = s.tri[tet][kSlotVertices[slot][0]] + s.tri[tet][kSlotVertices[slot][1]];
  for (int p = 0; p < 3; ++p) {
    if (p != kSlotPair[slot]) n += s.quad[tet][p];
  }
  return n;
}

std::vector<long> edge_intersections(const IdealTriangulation3& m, const NormalSurfaceVector& s) {
  if (static_cast<int>(s.tri.size()) != m.tet_count() || static_cast<int>(s.quad.size()) != m.tet_count()) {
    throw InvariantViolation("normal vector has the wrong number of tetrahedra");
  }
  for (int t = 0; t < m.tet_count(); ++t) {
    for (long x : s.tri[t]) {
      if (x < 0) throw InvariantViolation("negative triangle count");
    }
    for (long x : s.quad[t]) {
      if (x < 0) throw InvariantViolation("negative quad count");
    }
  }
  std::vector<long> out(m.edge_count());
  for (int e = 0; e < m.edge_count(); ++e) {
    const auto slots = m.edge_slots(e);
    out[e] = slot_intersections(s, slots[0].tet, slots[0].slot);
    for (const auto& [t, sl] : slots) {
      if (slot_intersections(s, t, sl) != out[e]) {
        throw InvariantViolation("edge " + std::to_string(e) + " is met a different number of times in different tetrahedra");
      }
    }
  }
  return out;
}

Rational normal_chi(const IdealTriangulation3& m, const NormalSurfaceVector& s) {
  const auto i = edge_intersections(m, s);
  long u = 0;
  for (int t = 0; t < m.tet_count(); ++t) u += s.u(t);
  return Rational(std::accumulate(i.begin(), i.end(), 0L)) - make_rational(u, 2);
}

DualCertificate3 certificate_from_normal_surface(const IdealTriangulation3& m, const NormalSurfaceVector& s) {
  const auto i = edge_intersections(m, s);
  DualCertificate3 c;
  for (int t = 0; t < m.tet_count(); ++t) c.v_tet.push_back(-s.u(t));
  for (long x : i) c.v_edge.push_back(x);
  c.recompute(m);
  if (!c.constraints_hold()) throw InvariantViolation("normal surface certificate violates a dual constraint");
  return c;
}

NormalSurfaceVector vertex_linking_surface(const IdealTriangulation3& m, int vertex) {
  auto s = NormalSurfaceVector::zero(m.tet_count());
  for (const auto& [t, v] : m.vertex_members(vertex)) s.tri[t][v] += 1;
  return s;
}

std::vector<NormalSurfaceVector> enumerate_normal_vectors(const IdealTriangulation3& m, int max_count) {
  const int nt = m.tet_count();
  std::vector<NormalSurfaceVector> out;
  auto s = NormalSurfaceVector::zero(nt);
  std::function<void(int)> rec = [&](int k) {
    if (k == 7 * nt) {
      bool nonzero = false;
      for (int t = 0; t < nt && !nonzero; ++t) nonzero = s.u(t) > 0;
      if (!nonzero) return;
      try {
        edge_intersections(m, s);
        out.push_back(s);
      } catch (const InvariantViolation&) {
      }
      return;
    }
    long& x = k % 7 < 4 ? s.tri[k / 7][k % 7] : s.quad[k / 7][k % 7 - 4];
    for (x = 0; x <= max_count; ++x) rec(k + 1);
    x = 0;
  };
  rec(0);
  return out;
}

HextReport hext_check(const IdealTriangulation3& m, const std::vector<NormalSurfaceVector>& surfaces) {
  HextReport r;
  r.lp = linear_hyperbolic_lp(m, true).kind;
  for (const auto& s : surfaces) {
    HextEntry e;
    e.chi = normal_chi(m, s);
    e.boundary_parallel = s.quad_free();
    e.obstructs_weak = e.chi > 0;
    e.obstructs_strict = e.chi >= 0 && !e.boundary_parallel;
    if (e.obstructs_weak && r.lp != Structure3::None) r.consistent = false;
    if (e.obstructs_strict && r.lp == Structure3::Strict) r.consistent = false;
    r.entries.push_back(e);
  }
  return r;
}

}  // namespace dihedra
