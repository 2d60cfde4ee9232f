#include "dihedra/realization.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

namespace dihedra {

namespace {

constexpr double kPi = std::numbers::pi;

int next(int k) { return (k + 1) % 3; }
int prev(int k) { return (k + 2) % 3; }

}  // namespace

// ==========================================================
// ================      Shapes            ==================
// ==========================================================

TriangleShape shape_from_angles(double a, double b, double c) {
  if (std::abs(a + b + c - 1) > 1e-9) throw std::invalid_argument("face angles do not sum to pi");
  TriangleShape s;
  s.angle = {a * kPi, b * kPi, c * kPi};
  for (double x : s.angle) {
    if (x < kAngleFloor) throw DegenerateAngle("angle " + std::to_string(x) + " rad below floor");
  }
  double longest = 0;
  for (int k = 0; k < 3; ++k) {
    s.side[k] = std::sin(s.angle[k]);
    longest = std::max(longest, s.side[k]);
  }
  for (double& x : s.side) x /= longest;
  return s;
}

std::vector<double> to_doubles(const std::vector<Rational>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_double(v));
  return out;
}

std::vector<TriangleShape> angles_to_shapes(const std::vector<double>& corner) {
  if (corner.size() % 3 != 0) throw std::invalid_argument("corner count is not a multiple of 3");
  std::vector<TriangleShape> out;
  for (std::size_t f = 0; f < corner.size(); f += 3) {
    out.push_back(shape_from_angles(corner[f], corner[f + 1], corner[f + 2]));
  }
  return out;
}

std::vector<TriangleShape> angles_to_shapes(const FaceAngleSolution& solution) {
  return angles_to_shapes(to_doubles(solution.corner));
}

// ==========================================================
// ================      Refinement        ==================
// ==========================================================

std::vector<double> euclidean_refinement(const TriangulatedSurface& surface, const std::vector<double>& delta,
                                         const std::vector<double>& start) {
  const int n = surface.dart_count();
  const int nf = surface.face_count();
  const int ne = surface.edge_count();
  if (static_cast<int>(start.size()) != n || static_cast<int>(delta.size()) != ne) {
    throw std::invalid_argument("size mismatch in euclidean_refinement");
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nf + ne, n);
  Eigen::VectorXd b(nf + ne);
  for (int f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) A(f, 3 * f + k) = 1;
    b(f) = 1;
  }
  for (int e = 0; e < ne; ++e) {
    for (int d : surface.edge_darts(e)) A(nf + e, d) = 1;
    b(nf + e) = delta[e];
  }
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(start.data(), n);
  x += A.completeOrthogonalDecomposition().solve(b - A * x);
  if (x.minCoeff() <= 0) throw DegenerateAngle("starting point is not strictly positive");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-10 * sv(0);
  const Eigen::MatrixXd N = svd.matrixV().rightCols(n - rank);
  if (N.cols() == 0) return {x.data(), x.data() + n};

  auto gradient = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g(i) = -kPi * std::log(2 * std::sin(kPi * y(i)));
    return g;
  };

  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::VectorXd g = gradient(x);
    const Eigen::VectorXd gr = N.transpose() * g;
    if (gr.lpNorm<Eigen::Infinity>() < 1e-13) break;
    Eigen::VectorXd h(n);
    for (int i = 0; i < n; ++i) h(i) = kPi * kPi / std::tan(kPi * x(i));
    // -Hessian restricted to the polytope's tangent space
    const Eigen::MatrixXd H = N.transpose() * h.asDiagonal() * N;
    const Eigen::VectorXd d = N * H.ldlt().solve(gr);
    double tmax = 1;
    for (int i = 0; i < n; ++i) {
      if (d(i) < 0) tmax = std::min(tmax, -0.99 * x(i) / d(i));
      if (d(i) > 0) tmax = std::min(tmax, 0.99 * (1 - x(i)) / d(i));
    }
    // exact line search on the concave slice
    double t = tmax;
    if (gradient(x + t * d).dot(d) < 0) {
      double lo = 0, hi = t;
      for (int k = 0; k < 80; ++k) {
        const double mid = (lo + hi) / 2;
        (gradient(x + mid * d).dot(d) >= 0 ? lo : hi) = mid;
      }
      t = lo;
    }
    x += t * d;
    if (t * d.lpNorm<Eigen::Infinity>() < 1e-16) break;
  }
  return {x.data(), x.data() + n};
}

std::vector<double> euclidean_refinement(const TriangulatedSurface& surface, const AngleAssignment& delta,
                                         const FaceAngleSolution& start) {
  return euclidean_refinement(surface, to_doubles(delta.values()), to_doubles(start.corner));
}

// ==========================================================
// ================      Development       ==================
// ==========================================================

namespace {

// Corner positions of `g` given the segment A -> B its corner j+2 -> j+1 must
// occupy.
std::array<Point, 3> place_across(const TriangleShape& s, int j, Point a, Point b) {
  std::array<Point, 3> p;
  p[prev(j)] = a;
  p[next(j)] = b;
  p[j] = b + (a - b) * (s.side[prev(j)] / s.side[j]) * std::polar(1.0, s.angle[next(j)]);
  return p;
}

std::array<Point, 3> place_root(const TriangleShape& s) {
  int k = 0;
  for (int i = 1; i < 3; ++i) {
    if (s.side[i] > s.side[k]) k = i;
  }
  // longest side from 0 to 1, apex above
  return place_across(s, k, Point(1, 0), Point(0, 0));
}

// Shape in its own frame: corner 1 at the origin, corner 2 on the positive axis.
std::array<Point, 3> local_frame(const TriangleShape& s) { return place_across(s, 0, Point(s.side[0], 0), Point(0, 0)); }

std::vector<int> bfs_parents(const TriangulatedSurface& surface, int root) {
  std::vector<int> parent(surface.face_count(), -2);
  parent[root] = -1;
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    const int f = q.front();
    q.pop();
    for (int i = 0; i < 3; ++i) {
      const int m = surface.mate(3 * f + i);
      if (m < 0 || parent[m / 3] != -2) continue;
      parent[m / 3] = m;
      q.push(m / 3);
    }
  }
  return parent;
}

}  // namespace

double PlanarDevelopment::max_length_mismatch() const {
  double m = 0;
  for (const auto& x : mismatches) m = std::max(m, x.length);
  return m;
}

double PlanarDevelopment::max_position_mismatch() const {
  double m = 0;
  for (const auto& x : mismatches) m = std::max(m, x.position);
  return m;
}

std::vector<Point> PlanarDevelopment::vertex_points(const TriangulatedSurface& surface) const {
  std::vector<Point> out(surface.vertex_count());
  for (int v = 0; v < surface.vertex_count(); ++v) {
    const int c = surface.vertex_corners(v).front();
    out[v] = face_points[c / 3][c % 3];
  }
  return out;
}

PlanarDevelopment develop(const TriangulatedSurface& surface, const std::vector<double>& corner, int root) {
  if (!surface.is_connected()) throw std::invalid_argument("surface must be connected");
  if (root < 0 || root >= surface.face_count()) throw std::out_of_range("root face out of range");
  const auto shapes = angles_to_shapes(corner);
  PlanarDevelopment dev;
  dev.root = root;
  dev.face_points.resize(surface.face_count());
  dev.parent_dart.assign(surface.face_count(), -1);
  std::vector<bool> placed(surface.face_count(), false);
  std::vector<bool> tree_edge(surface.edge_count(), false);
  dev.face_points[root] = place_root(shapes[root]);
  placed[root] = true;
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    const int f = q.front();
    q.pop();
    for (int i = 0; i < 3; ++i) {
      const int m = surface.mate(3 * f + i);
      if (m < 0 || placed[m / 3]) continue;
      const int g = m / 3;
      const auto& p = dev.face_points[f];
      dev.face_points[g] = place_across(shapes[g], m % 3, p[next(i)], p[prev(i)]);
      dev.parent_dart[g] = m;
      tree_edge[surface.edge_of(m)] = true;
      placed[g] = true;
      q.push(g);
    }
  }
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (surface.is_boundary_edge(e) || tree_edge[e]) continue;
    const int d1 = surface.edge_darts(e)[0], d2 = surface.edge_darts(e)[1];
    const auto& p = dev.face_points[d1 / 3];
    const auto& r = dev.face_points[d2 / 3];
    const int i = d1 % 3, j = d2 % 3;
    const Point a = p[next(i)], b = p[prev(i)];
    const Point a2 = r[prev(j)], b2 = r[next(j)];
    const Point v1 = b - a, v2 = b2 - a2;
    EdgeMismatch mm;
    mm.edge = e;
    mm.length = std::abs(std::abs(v1) - std::abs(v2)) / std::max(std::abs(v1), std::abs(v2));
    mm.angle = std::arg(v2 / v1);
    mm.position = std::max(std::abs(a - a2), std::abs(b - b2));
    dev.mismatches.push_back(mm);
  }
  return dev;
}

PlanarDevelopment develop(const TriangulatedSurface& surface, const FaceAngleSolution& solution, int root) {
  return develop(surface, to_doubles(solution.corner), root);
}

// ==========================================================
// ================      Holonomy          ==================
// ==========================================================

HolonomyValue holonomy(const TriangulatedSurface& surface, const std::vector<double>& corner,
                       const std::vector<int>& cycle) {
  if (cycle.empty()) return {};
  const auto shapes = angles_to_shapes(corner);
  const int len = static_cast<int>(cycle.size());
  for (int k = 0; k < len; ++k) {
    const int d = cycle[k];
    if (d < 0 || d >= surface.dart_count() || surface.mate(d) < 0) {
      throw std::invalid_argument("cycle crosses a boundary or invalid dart");
    }
    if (surface.mate(d) / 3 != cycle[(k + 1) % len] / 3) throw std::invalid_argument("cycle is not a closed walk");
  }
  HolonomyValue h;
  for (int k = 0; k < len; ++k) {
    const int d = cycle[k];
    const int m = surface.mate(d);
    const int out = cycle[(k + 1) % len];
    const auto& sf = shapes[d / 3];
    const auto& sg = shapes[m / 3];
    h.dilatation += std::log(sf.side[d % 3] / sg.side[m % 3]);
    const auto p = local_frame(sg);
    const int j = m % 3, i = out % 3;
    const Point in = p[next(j)] - p[prev(j)];
    const Point leave = p[prev(i)] - p[next(i)];
    h.rotation += std::arg(leave / in);
  }
  return h;
}

std::vector<std::vector<int>> dual_cycle_basis(const TriangulatedSurface& surface, int root) {
  const auto parent = bfs_parents(surface, root);
  auto path_from_root = [&](int f) {
    std::vector<int> path;
    while (parent[f] >= 0) {
      path.push_back(surface.mate(parent[f]));
      f = surface.mate(parent[f]) / 3;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  std::vector<std::vector<int>> basis;
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (surface.is_boundary_edge(e)) continue;
    const int d1 = surface.edge_darts(e)[0], d2 = surface.edge_darts(e)[1];
    if (parent[d1 / 3] == d1 || parent[d2 / 3] == d2) continue;  // tree edge
    auto p1 = path_from_root(d1 / 3);
    auto p2 = path_from_root(d2 / 3);
    std::size_t common = 0;
    while (common < p1.size() && common < p2.size() && p1[common] == p2[common]) ++common;
    std::vector<int> cycle(p1.begin() + common, p1.end());
    cycle.push_back(d1);
    for (std::size_t k = p2.size(); k > common; --k) cycle.push_back(surface.mate(p2[k - 1]));
    basis.push_back(std::move(cycle));
  }
  return basis;
}

std::vector<ShearValue> shear_coordinates(const TriangulatedSurface& surface, const std::vector<double>& corner) {
  const auto shapes = angles_to_shapes(corner);
  std::vector<ShearValue> out;
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (surface.is_boundary_edge(e)) continue;
    const int d1 = surface.edge_darts(e)[0], d2 = surface.edge_darts(e)[1];
    const auto& l1 = shapes[d1 / 3].side;
    const auto& l2 = shapes[d2 / 3].side;
    const int i = d1 % 3, j = d2 % 3;
    out.push_back({e, std::log(l1[prev(i)] * l2[prev(j)] / (l1[next(i)] * l2[next(j)]))});
  }
  return out;
}

// ==========================================================
// ================      Point sets        ==================
// ==========================================================

namespace {

double orient(Point a, Point b, Point c) { return (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real()); }

// Positive when d lies inside the circle through counterclockwise a, b, c.
double incircle(Point a, Point b, Point c, Point d) {
  const Point ad = a - d, bd = b - d, cd = c - d;
  const double a2 = std::norm(ad), b2 = std::norm(bd), c2 = std::norm(cd);
  return ad.real() * (bd.imag() * c2 - b2 * cd.imag()) - ad.imag() * (bd.real() * c2 - b2 * cd.real()) +
         a2 * (bd.real() * cd.imag() - bd.imag() * cd.real());
}

double corner_angle(Point at, Point u, Point v) {
  const Point x = (u - at) * std::conj(v - at);
  return std::abs(std::arg(x)) / kPi;
}

}  // namespace

PointTriangulation delaunay_of_points(const std::vector<Point>& raw, double tol) {
  const int n = static_cast<int>(raw.size());
  if (n < 3) throw DegeneratePosition("need at least 3 points");
  Point center = 0;
  for (auto p : raw) center += p;
  center /= static_cast<double>(n);
  double radius = 0;
  for (auto p : raw) radius = std::max(radius, std::abs(p - center));
  if (radius == 0) throw DegeneratePosition("all points coincide");
  std::vector<Point> pts;
  for (auto p : raw) pts.push_back((p - center) / radius);

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(pts[i] - pts[j]) <= tol) throw DegeneratePosition("repeated point");
      // hull pair: every other point weakly on one side
      bool left = true, right = true, flat = false;
      for (int l = 0; l < n; ++l) {
        if (l == i || l == j) continue;
        const double o = orient(pts[i], pts[j], pts[l]);
        left = left && o >= -tol;
        right = right && o <= tol;
        flat = flat || std::abs(o) <= tol;
      }
      if ((left || right) && flat) throw DegeneratePosition("three collinear points on the hull");
    }
  }

  PointTriangulation out{surface_from_triangles(std::vector<std::array<int, 3>>{{0, 1, 2}}), {}, {}, {}, {}, {}};
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        std::array<int, 3> t{i, j, k};
        const double o = orient(pts[i], pts[j], pts[k]);
        if (std::abs(o) <= tol) continue;
        if (o < 0) std::swap(t[1], t[2]);
        bool empty = true, close = false;
        for (int l = 0; l < n && empty; ++l) {
          if (l == i || l == j || l == k) continue;
          const double c = incircle(pts[t[0]], pts[t[1]], pts[t[2]], pts[l]);
          close = close || std::abs(c) <= tol;
          empty = c < tol;
        }
        // a circle with a point strictly inside is out regardless
        if (empty && close) throw DegeneratePosition("four points nearly cocircular");
        if (empty) tris.push_back(t);
      }
    }
  }
  int hull = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool edge = true;
      for (int l = 0; l < n && edge; ++l) {
        if (l != i && l != j) edge = orient(pts[i], pts[j], pts[l]) > 0;
      }
      hull += edge;
    }
  }
  if (static_cast<int>(tris.size()) != 2 * n - hull - 2) throw DegeneratePosition("triangle count does not match the hull");

  out.surface = surface_from_triangles(tris);
  out.triangles = tris;
  const auto& s = out.surface;
  out.point_of_vertex.assign(s.vertex_count(), -1);
  out.corner.resize(s.dart_count());
  for (int f = 0; f < s.face_count(); ++f) {
    for (int k = 0; k < 3; ++k) {
      out.point_of_vertex[s.vertex_of_corner(3 * f + k)] = tris[f][k];
      out.corner[3 * f + k] = corner_angle(raw[tris[f][k]], raw[tris[f][next(k)]], raw[tris[f][prev(k)]]);
    }
  }
  out.delta.assign(s.edge_count(), 0);
  for (int e = 0; e < s.edge_count(); ++e) {
    for (int d : s.edge_darts(e)) out.delta[e] += out.corner[d];
  }
  out.boundary_angle.assign(s.vertex_count(), 0);
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (!s.is_boundary_vertex(v)) continue;
    for (int c : s.vertex_corners(v)) out.boundary_angle[v] += out.corner[c];
  }
  return out;
}

AngleAssignment rationalize_delta(const TriangulatedSurface& surface, const std::vector<double>& delta,
                                  long denominator) {
  if (static_cast<int>(delta.size()) != surface.edge_count()) throw std::invalid_argument("one angle per edge");
  std::vector<Rational> out;
  Rational total = 0;
  int largest = 0;
  for (std::size_t e = 0; e < delta.size(); ++e) {
    out.push_back(round_to_denominator(delta[e], denominator));
    total += out.back();
    if (out.back() > out[largest]) largest = static_cast<int>(e);
  }
  out[largest] += surface.face_count() - total;
  return AngleAssignment(surface, out);
}

std::vector<int> verify_delaunay(const TriangulatedSurface& surface, const AngleAssignment& delta) {
  std::vector<int> bad;
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (!surface.is_boundary_edge(e) && delta[e] > 1) bad.push_back(e);
  }
  return bad;
}

std::vector<int> verify_delaunay(const TriangulatedSurface& surface, const std::vector<double>& corner,
                                 double tolerance) {
  std::vector<int> bad;
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (surface.is_boundary_edge(e)) continue;
    double sum = 0;
    for (int d : surface.edge_darts(e)) sum += corner[d];
    if (sum * kPi > kPi + tolerance) bad.push_back(e);
  }
  return bad;
}

double similarity_distance(const std::vector<Point>& from, const std::vector<Point>& to) {
  if (from.size() != to.size() || from.empty()) throw std::invalid_argument("point lists differ in size");
  const double m = static_cast<double>(from.size());
  Point pf = 0, pt = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    pf += from[i];
    pt += to[i];
  }
  pf /= m;
  pt /= m;
  Point num = 0;
  double den = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    num += std::conj(from[i] - pf) * (to[i] - pt);
    den += std::norm(from[i] - pf);
  }
  const Point a = den > 0 ? num / den : Point(1);
  double worst = 0, diameter = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    worst = std::max(worst, std::abs(a * (from[i] - pf) + pt - to[i]));
    for (std::size_t j = 0; j < i; ++j) diameter = std::max(diameter, std::abs(to[i] - to[j]));
  }
  return diameter > 0 ? worst / diameter : worst;
}

}  // namespace dihedra
