#include "dihedra/surface.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <map>
#include <set>

namespace dihedra {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

int next_slot(int slot) { return (slot + 1) % 3; }
int prev_slot(int slot) { return (slot + 2) % 3; }

std::string dart_name(Dart d) { return std::to_string(d.face) + ":" + std::to_string(d.slot); }

}  // namespace

// ==========================================================
// ================      Construction      ==================
// ==========================================================

TriangulatedSurface TriangulatedSurface::build(int face_count, std::span<const Gluing> gluings) {
  if (face_count < 0) throw std::invalid_argument("negative face count");
  TriangulatedSurface s;
  s.face_count_ = face_count;
  const int darts = 3 * face_count;
  s.mate_.assign(darts, -1);

  for (const auto& g : gluings) {
    for (const Dart& d : {g.a, g.b}) {
      if (d.face < 0 || d.face >= face_count || d.slot < 0 || d.slot > 2) {
        throw SurfaceError(SurfaceError::Kind::DanglingDart, "dart " + dart_name(d) + " out of range");
      }
    }
    if (!g.reversed) {
      throw SurfaceError(SurfaceError::Kind::NonOrientable,
                         "gluing " + dart_name(g.a) + " " + dart_name(g.b) + " preserves orientation");
    }
    const int a = g.a.index();
    const int b = g.b.index();
    if (a == b || s.mate_[a] != -1 || s.mate_[b] != -1) {
      throw SurfaceError(SurfaceError::Kind::DuplicateGluing,
                         "dart glued twice: " + dart_name(s.mate_[a] != -1 || a == b ? g.a : g.b));
    }
    s.mate_[a] = b;
    s.mate_[b] = a;
  }

  s.edge_of_dart_.assign(darts, -1);
  for (int d = 0; d < darts; ++d) {
    if (s.edge_of_dart_[d] != -1) continue;
    const int e = static_cast<int>(s.edge_darts_.size());
    s.edge_darts_.push_back({d});
    s.edge_of_dart_[d] = e;
    if (s.mate_[d] != -1) {
      s.edge_darts_.back().push_back(s.mate_[d]);
      s.edge_of_dart_[s.mate_[d]] = e;
    }
  }

  // Corner walk. Leaving corner k of face f through its outgoing edge slot k+2
  // lands on corner j+2 of the glued face, where j is the partner slot.
  auto forward = [&](int corner) -> int {
    const Dart c = Dart::from_index(corner);
    const int out = s.mate_[Dart{c.face, prev_slot(c.slot)}.index()];
    if (out == -1) return -1;
    const Dart o = Dart::from_index(out);
    return Dart{o.face, prev_slot(o.slot)}.index();
  };
  auto backward = [&](int corner) -> int {
    const Dart c = Dart::from_index(corner);
    const int in = s.mate_[Dart{c.face, next_slot(c.slot)}.index()];
    if (in == -1) return -1;
    const Dart i = Dart::from_index(in);
    return Dart{i.face, next_slot(i.slot)}.index();
  };

  s.vertex_of_corner_.assign(darts, -1);
  for (int corner = 0; corner < darts; ++corner) {
    if (s.vertex_of_corner_[corner] != -1) continue;
    int start = corner;
    bool boundary = false;
    for (int c = backward(corner); c != corner; c = backward(c)) {
      if (c == -1) {
        boundary = true;
        break;
      }
      start = c;
    }
    if (!boundary) start = corner;
    const int v = static_cast<int>(s.vertex_corners_.size());
    std::vector<int> walk;
    for (int c = start; c != -1;) {
      walk.push_back(c);
      s.vertex_of_corner_[c] = v;
      c = forward(c);
      if (c == start) break;
    }
    s.vertex_corners_.push_back(std::move(walk));
    s.boundary_vertex_.push_back(boundary);
  }

  s.vertex_edges_.resize(s.vertex_corners_.size());
  for (int corner = 0; corner < darts; ++corner) {
    const Dart c = Dart::from_index(corner);
    auto& list = s.vertex_edges_[s.vertex_of_corner_[corner]];
    list.push_back(s.edge_of_dart_[Dart{c.face, next_slot(c.slot)}.index()]);
    list.push_back(s.edge_of_dart_[Dart{c.face, prev_slot(c.slot)}.index()]);
  }
  for (auto& list : s.vertex_edges_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return s;
}

TriangulatedSurface surface_from_triangles(std::span<const std::array<int, 3>> triangles) {
  std::map<std::pair<int, int>, Dart> directed;
  std::vector<Gluing> gluings;
  for (int f = 0; f < static_cast<int>(triangles.size()); ++f) {
    for (int k = 0; k < 3; ++k) {
      const std::pair<int, int> key{triangles[f][(k + 1) % 3], triangles[f][(k + 2) % 3]};
      if (directed.count(key) != 0) {
        throw SurfaceError(SurfaceError::Kind::NonOrientable,
                           "edge " + std::to_string(key.first) + "-" + std::to_string(key.second) +
                               " traversed twice in the same direction");
      }
      directed.emplace(key, Dart{f, k});
    }
  }
  std::set<std::pair<int, int>> used;
  for (const auto& [key, dart] : directed) {
    const std::pair<int, int> rev{key.second, key.first};
    auto it = directed.find(rev);
    if (it == directed.end() || used.count(key) != 0) continue;
    used.insert(key);
    used.insert(rev);
    gluings.push_back({dart, it->second});
  }
  return TriangulatedSurface::build(static_cast<int>(triangles.size()), gluings);
}

// ==========================================================
// ================      Queries           ==================
// ==========================================================

int TriangulatedSurface::boundary_edge_count() const {
  return static_cast<int>(std::count_if(edge_darts_.begin(), edge_darts_.end(),
                                        [](const auto& d) { return d.size() == 1; }));
}

std::array<int, 2> TriangulatedSurface::edge_endpoints(int edge) const {
  const Dart d = Dart::from_index(edge_darts_[edge].front());
  return {vertex_of_corner_[Dart{d.face, next_slot(d.slot)}.index()],
          vertex_of_corner_[Dart{d.face, prev_slot(d.slot)}.index()]};
}

int TriangulatedSurface::endpoint_multiplicity(int vertex, int edge) const {
  const auto ends = edge_endpoints(edge);
  return (ends[0] == vertex) + (ends[1] == vertex);
}

int TriangulatedSurface::vertex_degree(int vertex) const {
  int degree = 0;
  for (int e : vertex_edges_[vertex]) degree += endpoint_multiplicity(vertex, e);
  return degree;
}

int TriangulatedSurface::boundary_component_count() const {
  DisjointSets sets(vertex_count());
  std::vector<bool> on_boundary(vertex_count(), false);
  for (int e = 0; e < edge_count(); ++e) {
    if (!is_boundary_edge(e)) continue;
    const auto ends = edge_endpoints(e);
    sets.unite(ends[0], ends[1]);
    on_boundary[ends[0]] = on_boundary[ends[1]] = true;
  }
  std::set<int> roots;
  for (int v = 0; v < vertex_count(); ++v) {
    if (on_boundary[v]) roots.insert(sets.find(v));
  }
  return static_cast<int>(roots.size());
}

bool TriangulatedSurface::is_connected() const {
  if (face_count_ == 0) return true;
  DisjointSets sets(face_count_);
  for (int d = 0; d < dart_count(); ++d) {
    if (mate_[d] != -1) sets.unite(d / 3, mate_[d] / 3);
  }
  const int root = sets.find(0);
  for (int f = 1; f < face_count_; ++f) {
    if (sets.find(f) != root) return false;
  }
  return true;
}

bool TriangulatedSurface::is_simplicial() const {
  std::set<std::array<int, 3>> triples;
  for (int f = 0; f < face_count_; ++f) {
    std::array<int, 3> t{vertex_of_corner_[3 * f], vertex_of_corner_[3 * f + 1], vertex_of_corner_[3 * f + 2]};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) return false;
    if (!triples.insert(t).second) return false;
    for (int k = 0; k < 3; ++k) {
      const int m = mate_[3 * f + k];
      if (m != -1 && m / 3 == f) return false;
    }
  }
  std::set<std::array<int, 2>> pairs;
  for (int e = 0; e < edge_count(); ++e) {
    auto ends = edge_endpoints(e);
    if (ends[0] == ends[1]) return false;
    if (ends[0] > ends[1]) std::swap(ends[0], ends[1]);
    if (!pairs.insert(ends).second) return false;
  }
  return true;
}

std::vector<Gluing> TriangulatedSurface::gluings() const {
  std::vector<Gluing> out;
  for (int d = 0; d < dart_count(); ++d) {
    if (mate_[d] > d) out.push_back({Dart::from_index(d), Dart::from_index(mate_[d])});
  }
  return out;
}

// ==========================================================
// ================      Face sets         ==================
// ==========================================================

FaceSet FaceSet::all(int universe) {
  FaceSet s(universe);
  s.member_.assign(universe, true);
  return s;
}

FaceSet FaceSet::from_mask(int universe, std::uint64_t mask) {
  FaceSet s(universe);
  for (int f = 0; f < universe; ++f) s.member_[f] = (mask >> f) & 1U;
  return s;
}

FaceSet FaceSet::from_members(int universe, std::span<const int> faces) {
  FaceSet s(universe);
  for (int f : faces) s.member_.at(f) = true;
  return s;
}

int FaceSet::size() const { return static_cast<int>(std::count(member_.begin(), member_.end(), true)); }

std::vector<int> FaceSet::members() const {
  std::vector<int> out;
  for (int f = 0; f < universe(); ++f) {
    if (member_[f]) out.push_back(f);
  }
  return out;
}

FaceSet FaceSet::complement() const {
  FaceSet c(universe());
  for (int f = 0; f < universe(); ++f) c.member_[f] = !member_[f];
  return c;
}

std::uint64_t FaceSet::mask() const {
  if (universe() > 64) throw std::length_error("face set too large for a mask");
  std::uint64_t m = 0;
  for (int f = 0; f < universe(); ++f) {
    if (member_[f]) m |= std::uint64_t{1} << f;
  }
  return m;
}

std::vector<int> incident_edges(const TriangulatedSurface& surface, const FaceSet& faces) {
  std::vector<bool> seen(surface.edge_count(), false);
  for (int f : faces.members()) {
    for (int k = 0; k < 3; ++k) seen[surface.edge_of(3 * f + k)] = true;
  }
  std::vector<int> out;
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (seen[e]) out.push_back(e);
  }
  return out;
}

std::vector<int> relative_boundary_edges(const TriangulatedSurface& surface, const FaceSet& faces) {
  std::vector<int> out;
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (surface.is_boundary_edge(e)) continue;
    const auto darts = surface.edge_darts(e);
    if (faces.contains(darts[0] / 3) != faces.contains(darts[1] / 3)) out.push_back(e);
  }
  return out;
}

// ==========================================================
// ================   Closed subcomplexes  ==================
// ==========================================================

ClosedSubcomplex ClosedSubcomplex::closure_of(const TriangulatedSurface& surface, const FaceSet& faces) {
  ClosedSubcomplex c;
  c.faces.assign(surface.face_count(), false);
  c.edges.assign(surface.edge_count(), false);
  c.vertices.assign(surface.vertex_count(), false);
  for (int f : faces.members()) {
    c.faces[f] = true;
    for (int k = 0; k < 3; ++k) {
      c.edges[surface.edge_of(3 * f + k)] = true;
      c.vertices[surface.vertex_of_corner(3 * f + k)] = true;
    }
  }
  return c;
}

ClosedSubcomplex ClosedSubcomplex::whole(const TriangulatedSurface& surface) {
  return closure_of(surface, FaceSet::all(surface.face_count()));
}

bool ClosedSubcomplex::is_closed(const TriangulatedSurface& surface) const {
  for (int f = 0; f < surface.face_count(); ++f) {
    if (!faces[f]) continue;
    for (int k = 0; k < 3; ++k) {
      if (!edges[surface.edge_of(3 * f + k)] || !vertices[surface.vertex_of_corner(3 * f + k)]) return false;
    }
  }
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (!edges[e]) continue;
    for (int v : surface.edge_endpoints(e)) {
      if (!vertices[v]) return false;
    }
  }
  return true;
}

bool ClosedSubcomplex::empty() const {
  return face_count() == 0 && edge_count() == 0 && vertex_count() == 0;
}

int ClosedSubcomplex::face_count() const { return static_cast<int>(std::count(faces.begin(), faces.end(), true)); }
int ClosedSubcomplex::edge_count() const { return static_cast<int>(std::count(edges.begin(), edges.end(), true)); }
int ClosedSubcomplex::vertex_count() const {
  return static_cast<int>(std::count(vertices.begin(), vertices.end(), true));
}

bool ClosedSubcomplex::is_whole(const TriangulatedSurface& surface) const {
  return face_count() == surface.face_count() && edge_count() == surface.edge_count() &&
         vertex_count() == surface.vertex_count();
}

int ClosedSubcomplex::endpoint_count(const TriangulatedSurface& surface, int edge) const {
  const auto ends = surface.edge_endpoints(edge);
  return static_cast<int>(vertices[ends[0]]) + static_cast<int>(vertices[ends[1]]);
}

std::vector<int> ClosedSubcomplex::frontier_edges(const TriangulatedSurface& surface) const {
  std::vector<int> out;
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (!edges[e] && endpoint_count(surface, e) > 0) out.push_back(e);
  }
  return out;
}

void for_each_closed_subcomplex(const TriangulatedSurface& surface,
                                const std::function<void(const ClosedSubcomplex&)>& visit) {
  const int nf = surface.face_count();
  if (nf > 24) throw OracleLimitExceeded("closed subcomplex enumeration limited to 24 faces");
  for (std::uint64_t fmask = 0; fmask < (std::uint64_t{1} << nf); ++fmask) {
    ClosedSubcomplex base = ClosedSubcomplex::closure_of(surface, FaceSet::from_mask(nf, fmask));
    std::vector<int> optional_edges;
    for (int e = 0; e < surface.edge_count(); ++e) {
      if (!base.edges[e]) optional_edges.push_back(e);
    }
    if (optional_edges.size() > 40) throw OracleLimitExceeded("too many optional edges");
    for (std::uint64_t emask = 0; emask < (std::uint64_t{1} << optional_edges.size()); ++emask) {
      ClosedSubcomplex with_edges = base;
      for (size_t i = 0; i < optional_edges.size(); ++i) {
        if (!((emask >> i) & 1U)) continue;
        const int e = optional_edges[i];
        with_edges.edges[e] = true;
        for (int v : surface.edge_endpoints(e)) with_edges.vertices[v] = true;
      }
      std::vector<int> optional_vertices;
      for (int v = 0; v < surface.vertex_count(); ++v) {
        if (!with_edges.vertices[v]) optional_vertices.push_back(v);
      }
      for (std::uint64_t vmask = 0; vmask < (std::uint64_t{1} << optional_vertices.size()); ++vmask) {
        ClosedSubcomplex c = with_edges;
        for (size_t i = 0; i < optional_vertices.size(); ++i) {
          if ((vmask >> i) & 1U) c.vertices[optional_vertices[i]] = true;
        }
        visit(c);
      }
    }
  }
}

// ==========================================================
// ================      Dual graph        ==================
// ==========================================================

DualGraph poincare_dual(const TriangulatedSurface& surface) {
  DualGraph g;
  g.vertex_count = surface.face_count();
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (surface.is_boundary_edge(e)) continue;
    const auto darts = surface.edge_darts(e);
    g.edges.push_back({darts[0] / 3, darts[1] / 3});
    g.primal_edge.push_back(e);
  }
  return g;
}

bool is_dual_connected(const TriangulatedSurface& surface, const FaceSet& faces) {
  const auto members = faces.members();
  if (members.empty()) return false;
  std::vector<bool> seen(surface.face_count(), false);
  std::vector<int> stack{members.front()};
  seen[members.front()] = true;
  int reached = 0;
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    ++reached;
    for (int k = 0; k < 3; ++k) {
      const int m = surface.mate(3 * f + k);
      if (m == -1) continue;
      const int g = m / 3;
      if (faces.contains(g) && !seen[g]) {
        seen[g] = true;
        stack.push_back(g);
      }
    }
  }
  return reached == static_cast<int>(members.size());
}

namespace {

bool mask_connected(std::uint64_t mask, std::span<const std::uint64_t> adjacency) {
  if (mask == 0) return false;
  std::uint64_t seen = mask & (~mask + 1);
  std::uint64_t frontier = seen;
  while (frontier != 0) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f != 0; f &= f - 1) next |= adjacency[std::countr_zero(f)];
    next &= mask & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == mask;
}

}  // namespace

void for_each_simple_subcomplex(const TriangulatedSurface& surface,
                                const std::function<void(const FaceSet&)>& visit, int face_limit) {
  const int nf = surface.face_count();
  if (nf > face_limit || nf > 62) {
    throw OracleLimitExceeded("simple subcomplex enumeration limited to " + std::to_string(face_limit) + " faces");
  }
  if (nf < 2) return;
  std::vector<std::uint64_t> adjacency(nf, 0);
  for (int d = 0; d < surface.dart_count(); ++d) {
    const int m = surface.mate(d);
    if (m != -1) adjacency[d / 3] |= std::uint64_t{1} << (m / 3);
  }
  const std::uint64_t full = (std::uint64_t{1} << nf) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    if (mask_connected(mask, adjacency) && mask_connected(full & ~mask, adjacency)) {
      visit(FaceSet::from_mask(nf, mask));
    }
  }
}

std::vector<FaceSet> simple_subcomplexes(const TriangulatedSurface& surface, int face_limit) {
  std::vector<FaceSet> out;
  for_each_simple_subcomplex(surface, [&](const FaceSet& f) { out.push_back(f); }, face_limit);
  return out;
}

// ==========================================================
// ================      Cutsets           ==================
// ==========================================================

bool is_edge_cutset(const TriangulatedSurface& surface, std::span<const int> edges) {
  const int nv = surface.vertex_count();
  if (nv == 0) return false;
  std::vector<bool> removed(surface.edge_count(), false);
  for (int e : edges) removed[e] = true;
  DisjointSets sets(nv);
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (removed[e]) continue;
    const auto ends = surface.edge_endpoints(e);
    sets.unite(ends[0], ends[1]);
  }
  const int root = sets.find(0);
  for (int v = 1; v < nv; ++v) {
    if (sets.find(v) != root) return true;
  }
  return false;
}

bool is_coterminous(const TriangulatedSurface& surface, std::span<const int> edges) {
  if (edges.empty()) return true;
  for (int v : surface.edge_endpoints(edges.front())) {
    bool shared = true;
    for (int e : edges) {
      if (surface.endpoint_multiplicity(v, e) == 0) {
        shared = false;
        break;
      }
    }
    if (shared) return true;
  }
  return false;
}

std::vector<Cutset> minimal_noncoterminous_cutsets(const TriangulatedSurface& surface, CutsetMode mode,
                                                   int vertex_limit) {
  if (mode == CutsetMode::Strict && !surface.is_simplicial()) {
    throw SurfaceError(SurfaceError::Kind::NotSimplicial, "cutset correspondence needs a simplicial complex");
  }
  const int nv = surface.vertex_count();
  if (nv > vertex_limit || nv > 62) {
    throw OracleLimitExceeded("cutset enumeration limited to " + std::to_string(vertex_limit) + " vertices");
  }
  std::vector<Cutset> out;
  if (nv < 2) return out;
  std::vector<std::uint64_t> adjacency(nv, 0);
  for (int e = 0; e < surface.edge_count(); ++e) {
    const auto ends = surface.edge_endpoints(e);
    if (ends[0] == ends[1]) continue;
    adjacency[ends[0]] |= std::uint64_t{1} << ends[1];
    adjacency[ends[1]] |= std::uint64_t{1} << ends[0];
  }
  const std::uint64_t full = (std::uint64_t{1} << nv) - 1;
  if (!mask_connected(full, adjacency)) return out;
  // A minimal cut of a connected graph is exactly the edge boundary of a vertex
  // bipartition with both sides connected. Vertex 0 is pinned to one side.
  for (std::uint64_t mask = 1; mask < full; mask += 2) {
    if (!mask_connected(mask, adjacency) || !mask_connected(full & ~mask, adjacency)) continue;
    Cutset cut;
    cut.side.assign(nv, false);
    for (int v = 0; v < nv; ++v) cut.side[v] = (mask >> v) & 1U;
    bool boundary_cut = false;
    for (int e = 0; e < surface.edge_count(); ++e) {
      const auto ends = surface.edge_endpoints(e);
      if (cut.side[ends[0]] != cut.side[ends[1]]) {
        cut.edges.push_back(e);
        boundary_cut = boundary_cut || surface.is_boundary_edge(e);
      }
    }
    cut.coterminous = is_coterminous(surface, cut.edges);
    if (cut.coterminous) continue;
    cut.closed_dual_curve = !boundary_cut;
    out.push_back(std::move(cut));
  }
  return out;
}

}  // namespace dihedra
