#include "catalog.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <functional>
#include <set>
#include <stdexcept>
#include <utility>

namespace dihedra::testing {

namespace {

TriangulatedSurface from(std::vector<std::array<int, 3>> triangles) { return surface_from_triangles(triangles); }

TriangulatedSurface glue(int faces, std::vector<std::array<int, 4>> pairs) {
  std::vector<Gluing> g;
  for (auto [f, i, h, j] : pairs) g.push_back({{f, i}, {h, j}});
  return TriangulatedSurface::build(faces, g);
}

}  // namespace

TriangulatedSurface single_triangle() { return glue(1, {}); }

TriangulatedSurface two_triangle_disk() { return from({{0, 1, 2}, {0, 2, 3}}); }

TriangulatedSurface pillowcase() { return glue(2, {{0, 0, 1, 0}, {0, 1, 1, 2}, {0, 2, 1, 1}}); }

TriangulatedSurface two_face_torus() { return glue(2, {{0, 0, 1, 0}, {0, 1, 1, 1}, {0, 2, 1, 2}}); }

TriangulatedSurface octahedron() {
  return from({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}, {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
}

TriangulatedSurface tetrahedron() { return from({{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}}); }

TriangulatedSurface wheel(int spokes) {
  std::vector<std::array<int, 3>> t;
  for (int i = 0; i < spokes; ++i) t.push_back({0, 1 + i, 1 + (i + 1) % spokes});
  return from(t);
}

TriangulatedSurface annulus(int segments) {
  // inner ring 0..n-1, outer ring n..2n-1
  std::vector<std::array<int, 3>> t;
  const int n = segments;
  for (int i = 0; i < n; ++i) {
    const int a = i, b = (i + 1) % n, c = n + i, d = n + (i + 1) % n;
    t.push_back({a, c, d});
    t.push_back({a, d, b});
  }
  return from(t);
}

TriangulatedSurface grid_torus(int rows, int cols) {
  std::vector<std::array<int, 3>> t;
  auto id = [&](int r, int c) { return ((r + rows) % rows) * cols + (c + cols) % cols; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      t.push_back({id(r, c), id(r, c + 1), id(r + 1, c + 1)});
      t.push_back({id(r, c), id(r + 1, c + 1), id(r + 1, c)});
    }
  }
  return from(t);
}

TriangulatedSurface strip_disk(int faces) {
  std::vector<std::array<int, 3>> t;
  for (int i = 0; i < faces; ++i) t.push_back({0, i + 1, i + 2});
  return from(t);
}

TriangulatedSurface bipyramid(int ring) {
  std::vector<std::array<int, 3>> t;
  for (int i = 0; i < ring; ++i) {
    const int a = 2 + i, b = 2 + (i + 1) % ring;
    t.push_back({0, a, b});
    t.push_back({1, b, a});
  }
  return from(t);
}

TriangulatedSurface icosahedron() {
  // apex 0, upper ring 1..5, lower ring 6..10, apex 11
  std::vector<std::array<int, 3>> t;
  for (int i = 0; i < 5; ++i) {
    const int u = 1 + i, u2 = 1 + (i + 1) % 5, l = 6 + i, l2 = 6 + (i + 1) % 5;
    t.push_back({0, u, u2});
    t.push_back({u, l, u2});
    t.push_back({u2, l, l2});
    t.push_back({11, l2, l});
  }
  return from(t);
}

TriangulatedSurface random_sphere(int faces, std::mt19937_64& rng, int flips_per_face) {
  if (faces < 4 || faces % 2 != 0) throw std::invalid_argument("sphere needs an even face count >= 4");
  std::vector<std::array<int, 3>> t = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  int vertices = 4;
  while (static_cast<int>(t.size()) < faces) {
    const size_t k = std::uniform_int_distribution<size_t>(0, t.size() - 1)(rng);
    const auto [a, b, c] = t[k];
    const int o = vertices++;
    t[k] = {a, b, o};
    t.push_back({b, c, o});
    t.push_back({c, a, o});
  }
  // directed edge -> face, and vertex degrees
  std::map<std::pair<int, int>, int> owner;
  std::vector<int> degree(vertices, 0);
  std::set<std::pair<int, int>> undirected;
  for (int k = 0; k < static_cast<int>(t.size()); ++k) {
    for (int i = 0; i < 3; ++i) {
      const int x = t[k][i], y = t[k][(i + 1) % 3];
      owner[{x, y}] = k;
      if (x < y) {
        undirected.insert({x, y});
        ++degree[x];
        ++degree[y];
      }
    }
  }
  std::uniform_int_distribution<int> pick_face(0, static_cast<int>(t.size()) - 1), pick_slot(0, 2);
  const long flips = static_cast<long>(flips_per_face) * faces;
  for (long n = 0; n < flips; ++n) {
    const int k1 = pick_face(rng);
    const int i = pick_slot(rng);
    const int a = t[k1][i], b = t[k1][(i + 1) % 3], c = t[k1][(i + 2) % 3];
    const int k2 = owner.at({b, a});
    int d = -1;
    for (int j = 0; j < 3; ++j) {
      if (t[k2][j] != a && t[k2][j] != b) d = t[k2][j];
    }
    if (c == d || undirected.count({std::min(c, d), std::max(c, d)}) || degree[a] <= 3 || degree[b] <= 3) continue;
    // (a,b,c) + (b,a,d) -> (a,d,c) + (d,b,c)
    for (auto e : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}, std::pair{b, a}, std::pair{a, d}, std::pair{d, b}}) {
      owner.erase(e);
    }
    t[k1] = {a, d, c};
    t[k2] = {d, b, c};
    for (int k : {k1, k2}) {
      for (int j = 0; j < 3; ++j) owner[{t[k][j], t[k][(j + 1) % 3]}] = k;
    }
    undirected.erase({std::min(a, b), std::max(a, b)});
    undirected.insert({std::min(c, d), std::max(c, d)});
    --degree[a];
    --degree[b];
    ++degree[c];
    ++degree[d];
  }
  return from(t);
}

namespace {

// Canonical string of a pairing relabelled by BFS from a root dart, rotating
// faces so the entry dart gets slot 0. Slots keep their cyclic order.
std::vector<int> canonical_from(const std::vector<int>& mate, int faces, int root) {
  std::vector<int> face_label(faces, -1);
  std::vector<int> rotation(faces, 0);
  std::vector<int> order;
  face_label[root / 3] = 0;
  rotation[root / 3] = root % 3;
  order.push_back(root / 3);
  for (size_t q = 0; q < order.size(); ++q) {
    const int f = order[q];
    for (int s = 0; s < 3; ++s) {
      const int d = 3 * f + (rotation[f] + s) % 3;
      const int m = mate[d];
      if (m == -1) continue;
      const int g = m / 3;
      if (face_label[g] == -1) {
        face_label[g] = static_cast<int>(order.size());
        rotation[g] = m % 3;
        order.push_back(g);
      }
    }
  }
  std::vector<int> code;
  for (int f : order) {
    for (int s = 0; s < 3; ++s) {
      const int m = mate[3 * f + (rotation[f] + s) % 3];
      if (m == -1) {
        code.push_back(-1);
      } else {
        const int g = m / 3;
        code.push_back(3 * face_label[g] + ((m % 3) - rotation[g] + 3) % 3);
      }
    }
  }
  return code;
}

std::vector<int> canonical(const std::vector<int>& mate, int faces) {
  std::vector<int> best;
  for (int root = 0; root < 3 * faces; ++root) {
    auto c = canonical_from(mate, faces, root);
    if (best.empty() || c < best) best = c;
  }
  return best;
}

TriangulatedSurface from_mates(const std::vector<int>& mate, int faces) {
  std::vector<Gluing> g;
  for (int d = 0; d < 3 * faces; ++d) {
    if (mate[d] > d) g.push_back({Dart::from_index(d), Dart::from_index(mate[d])});
  }
  return TriangulatedSurface::build(faces, g);
}

}  // namespace

std::vector<std::vector<TriangulatedSurface>> connected_surfaces_by_size(int max_faces) {
  // Every connected pattern arises from one with a face fewer by attaching a
  // face whose removal keeps the dual connected (a leaf of a spanning tree).
  std::vector<std::vector<TriangulatedSurface>> out(max_faces + 1);
  if (max_faces < 1) return out;
  std::vector<std::vector<std::vector<int>>> level(max_faces + 1);
  level[1] = {{-1, -1, -1}, {1, 0, -1}};
  for (int faces = 2; faces <= max_faces; ++faces) {
    std::set<std::vector<int>> seen;
    for (const auto& parent : level[faces - 1]) {
      std::vector<int> mate = parent;
      mate.resize(3 * faces, -2);
      const int base = 3 * (faces - 1);
      std::function<void(int, bool)> rec = [&](int k, bool attached) {
        if (k == 3) {
          if (!attached) return;
          if (seen.insert(canonical(mate, faces)).second) level[faces].push_back(mate);
          return;
        }
        const int d = base + k;
        if (mate[d] != -2) {
          rec(k + 1, attached);
          return;
        }
        mate[d] = -1;
        rec(k + 1, attached);
        for (int o = 0; o < base; ++o) {
          if (mate[o] != -1) continue;
          mate[d] = o;
          mate[o] = d;
          rec(k + 1, true);
          mate[o] = -1;
        }
        for (int o = d + 1; o < base + 3; ++o) {
          if (mate[o] != -2) continue;
          mate[d] = o;
          mate[o] = d;
          rec(k + 1, attached);
          mate[o] = -2;
        }
        mate[d] = -2;
      };
      rec(0, false);
    }
  }
  for (int f = 1; f <= max_faces; ++f) {
    for (const auto& m : level[f]) out[f].push_back(from_mates(m, f));
  }
  return out;
}

std::vector<TriangulatedSurface> all_connected_surfaces(int faces) {
  return std::move(connected_surfaces_by_size(faces)[faces]);
}

TriangulatedSurface random_surface(int faces, std::mt19937_64& rng, double extra_glue_probability) {
  std::vector<int> free_darts;
  std::vector<Gluing> g;
  std::vector<bool> used(3 * faces, false);
  auto take_free = [&](int face) {
    std::vector<int> slots;
    for (int s = 0; s < 3; ++s) {
      if (!used[3 * face + s]) slots.push_back(3 * face + s);
    }
    if (slots.empty()) return -1;
    return slots[std::uniform_int_distribution<size_t>(0, slots.size() - 1)(rng)];
  };
  // tree: attach face k to a random earlier face with a free dart
  for (int k = 1; k < faces; ++k) {
    int d = -1;
    for (int tries = 0; tries < 100 && d == -1; ++tries) {
      d = take_free(std::uniform_int_distribution<int>(0, k - 1)(rng));
    }
    if (d == -1) {
      for (int f = 0; f < k && d == -1; ++f) d = take_free(f);
    }
    const int e = take_free(k);
    used[d] = used[e] = true;
    g.push_back({Dart::from_index(d), Dart::from_index(e)});
  }
  std::vector<int> rest;
  for (int d = 0; d < 3 * faces; ++d) {
    if (!used[d]) rest.push_back(d);
  }
  std::shuffle(rest.begin(), rest.end(), rng);
  std::bernoulli_distribution coin(extra_glue_probability);
  for (size_t i = 0; i + 1 < rest.size(); i += 2) {
    if (coin(rng)) g.push_back({Dart::from_index(rest[i]), Dart::from_index(rest[i + 1])});
  }
  return TriangulatedSurface::build(faces, g);
}

std::vector<NamedSurface> curated_surfaces() {
  return {
      {"triangle", single_triangle()},     {"disk2", two_triangle_disk()},   {"pillowcase", pillowcase()},
      {"torus2", two_face_torus()},        {"tetrahedron", tetrahedron()},   {"octahedron", octahedron()},
      {"wheel5", wheel(5)},                {"wheel6", wheel(6)},             {"annulus3", annulus(3)},
      {"strip4", strip_disk(4)},           {"torus3x3", grid_torus(3, 3)},
  };
}

}  // namespace dihedra::testing

namespace dihedra::testing {

std::vector<Rational> random_corner_angles(const TriangulatedSurface& s, std::mt19937_64& rng, int denominator,
                                           bool delaunay) {
  std::uniform_int_distribution<int> cut(1, denominator - 1);
  std::vector<Rational> corners(s.dart_count());
  for (int attempt = 0; attempt < 200; ++attempt) {
    for (int f = 0; f < s.face_count(); ++f) {
      int a = cut(rng), b = cut(rng);
      while (a == b) b = cut(rng);
      if (a > b) std::swap(a, b);
      corners[3 * f] = make_rational(a, denominator);
      corners[3 * f + 1] = make_rational(b - a, denominator);
      corners[3 * f + 2] = make_rational(denominator - b, denominator);
    }
    if (!delaunay) return corners;
    bool ok = true;
    for (int e = 0; e < s.edge_count() && ok; ++e) {
      Rational sum = 0;
      for (int d : s.edge_darts(e)) sum += corners[d];
      ok = s.is_boundary_edge(e) || sum <= 1;
    }
    if (ok) return corners;
  }
  for (auto& c : corners) c = make_rational(1, 3);
  return corners;
}

std::vector<Rational> delta_from_corners(const TriangulatedSurface& s, const std::vector<Rational>& corners) {
  std::vector<Rational> delta(s.edge_count(), 0);
  for (int e = 0; e < s.edge_count(); ++e) {
    for (int d : s.edge_darts(e)) delta[e] += corners[d];
  }
  return delta;
}

std::vector<std::vector<Rational>> sample_deltas(const TriangulatedSurface& s, std::mt19937_64& rng, int count,
                                                 int denominator) {
  std::vector<std::vector<Rational>> out;
  const int ne = s.edge_count();
  std::uniform_int_distribution<int> pick_edge(0, ne - 1), pick_kind(0, 5), num(0, denominator);
  const Rational step = make_rational(1, denominator);
  for (int i = 0; i < count; ++i) {
    auto delta = delta_from_corners(s, random_corner_angles(s, rng, denominator, i % 2 == 0));
    const int kind = pick_kind(rng);
    if (kind == 1 || kind == 2) {
      // move angle between two edges, keeping the total
      const int a = pick_edge(rng), b = pick_edge(rng);
      Rational amount = step * (1 + kind);
      delta[a] -= amount;
      delta[b] += amount;
    } else if (kind == 3 && ne > 1) {
      const int a = pick_edge(rng);
      int b = pick_edge(rng);
      while (b == a) b = pick_edge(rng);
      delta[b] += delta[a];
      delta[a] = 0;
    } else if (kind == 4) {
      for (auto& d : delta) d = make_rational(num(rng), denominator);
    } else if (kind == 5) {
      // uniform shift between a face set's edges and the rest
      const int a = pick_edge(rng);
      delta[a] += step;
      delta[(a + 1) % ne] -= step;
    }
    out.push_back(std::move(delta));
  }
  return out;
}

}  // namespace dihedra::testing
