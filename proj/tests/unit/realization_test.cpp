#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "catalog.hpp"
#include "dihedra/flow.hpp"
#include "dihedra/realization.hpp"

using namespace dihedra;
using namespace dihedra::testing;

namespace {

constexpr double kPi = std::numbers::pi;

Rational q(long p, long d = 1) { return make_rational(p, d); }

// interior vertex corner gets `center`, the other two split the rest
std::vector<double> fan_corners(const TriangulatedSurface& s, double center) {
  std::vector<double> c(s.dart_count());
  for (int d = 0; d < s.dart_count(); ++d) {
    c[d] = s.is_boundary_vertex(s.vertex_of_corner(d)) ? (1 - center) / 2 : center;
  }
  return c;
}

std::vector<Point> random_points(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Point> p;
  for (int i = 0; i < n; ++i) p.emplace_back(u(rng), u(rng));
  return p;
}

std::vector<double> delta_of(const TriangulatedSurface& s, const std::vector<double>& corner) {
  std::vector<double> d(s.edge_count(), 0);
  for (int e = 0; e < s.edge_count(); ++e) {
    for (int x : s.edge_darts(e)) d[e] += corner[x];
  }
  return d;
}

}  // namespace

TEST(Realization, ShapeExamples) {
  auto eq = shape_from_angles(1.0 / 3, 1.0 / 3, 1.0 / 3);
  for (double x : eq.side) EXPECT_NEAR(x, 1, 1e-12);
  auto ri = shape_from_angles(0.5, 0.25, 0.25);
  EXPECT_NEAR(ri.side[0], 1, 1e-12);
  EXPECT_NEAR(ri.side[1], std::sqrt(2.0) / 2, 1e-12);
  EXPECT_NEAR(ri.side[2], std::sqrt(2.0) / 2, 1e-12);
  auto h = shape_from_angles(0.5, 1.0 / 3, 1.0 / 6);
  EXPECT_NEAR(h.side[1], std::sin(kPi / 3), 1e-12);
  EXPECT_NEAR(h.side[2], 0.5, 1e-12);
  EXPECT_NEAR(h.angle[0] + h.angle[1] + h.angle[2], kPi, 1e-12);
  EXPECT_THROW(shape_from_angles(1, 0, 0), DegenerateAngle);
  EXPECT_THROW(shape_from_angles(0.5, 0.5, 0.5), std::invalid_argument);
}

TEST(Realization, DevelopSquare) {
  auto s = two_triangle_disk();
  std::vector<Rational> d(s.edge_count(), q(1, 4));
  for (int e = 0; e < s.edge_count(); ++e) {
    if (!s.is_boundary_edge(e)) d[e] = 1;
  }
  AngleAssignment delta(s, d);
  auto lp = decide_lp(s, delta);
  ASSERT_TRUE(lp.feasible());
  auto dev = develop(s, *lp.angles);
  EXPECT_TRUE(dev.mismatches.empty());
  auto p = dev.vertex_points(s);
  ASSERT_EQ(p.size(), 4u);
  std::vector<double> dist;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) dist.push_back(std::abs(p[i] - p[j]));
  }
  std::sort(dist.begin(), dist.end());
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(dist[k], dist[0], 1e-12);
  EXPECT_NEAR(dist[4], dist[0] * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(dist[5], dist[4], 1e-12);
}

TEST(Realization, DevelopSingleTriangle) {
  auto s = single_triangle();
  auto dev = develop(s, std::vector<double>{0.5, 0.25, 0.25});
  const auto& p = dev.face_points[0];
  // longest side (opposite the right angle) on the unit segment
  EXPECT_NEAR(std::abs(p[1] - Point(0, 0)), 0, 1e-15);
  EXPECT_NEAR(std::abs(p[2] - Point(1, 0)), 0, 1e-15);
  EXPECT_NEAR(std::abs(p[0] - Point(0.5, 0.5)), 0, 1e-12);
}

TEST(Realization, ConePointMismatch) {
  auto s = wheel(3);
  auto dev = develop(s, fan_corners(s, 0.5));
  ASSERT_EQ(dev.mismatches.size(), 1u);
  EXPECT_NEAR(std::abs(dev.mismatches[0].angle), kPi / 2, 1e-12);
  EXPECT_NEAR(dev.mismatches[0].length, 0, 1e-12);
  // flat fan closes up
  auto flat = develop(s, fan_corners(s, 2.0 / 3));
  EXPECT_LT(flat.max_position_mismatch(), 1e-12);
}

TEST(Realization, HolonomyTrivialCycle) {
  auto s = two_triangle_disk();
  std::vector<double> c{0.5, 0.3, 0.2, 0.4, 0.35, 0.25};
  int d = -1;
  for (int x = 0; x < 3; ++x) {
    if (s.mate(x) >= 0) d = x;
  }
  auto h = holonomy(s, c, {d, s.mate(d)});
  EXPECT_NEAR(h.dilatation, 0, 1e-15);
  EXPECT_TRUE(dual_cycle_basis(s).empty());
  EXPECT_THROW(holonomy(s, c, {d}), std::invalid_argument);
}

TEST(Realization, TorusSimilarityHolonomy) {
  auto s = two_face_torus();
  std::vector<double> c{0.5, 0.25, 0.25, 1.0 / 3, 1.0 / 3, 1.0 / 3};
  ASSERT_EQ(s.mate(0), 3);
  ASSERT_EQ(s.mate(4), 1);
  // crossing edge 0 scales by sin(pi/2)/sin(pi/3), edge 1 back by sin(pi/3)/sin(pi/4)
  auto h = holonomy(s, c, {0, 4});
  EXPECT_NEAR(h.dilatation, 0.5 * std::log(2.0), 1e-12);
  auto basis = dual_cycle_basis(s);
  EXPECT_EQ(basis.size(), 2u);
  bool nonzero = false;
  for (const auto& cyc : basis) nonzero = nonzero || std::abs(holonomy(s, c, cyc).dilatation) > 1e-6;
  EXPECT_TRUE(nonzero);
  EXPECT_GT(develop(s, c).max_length_mismatch(), 1e-6);
}

TEST(Realization, Shears) {
  auto s = two_triangle_disk();
  auto sq = shear_coordinates(s, {0.25, 0.5, 0.25, 0.25, 0.25, 0.5});
  ASSERT_EQ(sq.size(), 1u);
  EXPECT_NEAR(sq[0].r, 0, 1e-12);
  // 30-60-90 triangle with hypotenuse on the diagonal against an equilateral:
  // legs sin(pi/3) and sin(pi/6), so |r| = log(sqrt 3)
  std::vector<double> c{1.0 / 3, 0.5, 1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 3};
  auto r = shear_coordinates(s, c);
  EXPECT_NEAR(std::abs(r[0].r), 0.5 * std::log(3.0), 1e-12);
  std::vector<double> flipped{1.0 / 6, 0.5, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3};
  EXPECT_NEAR(shear_coordinates(s, flipped)[0].r, -r[0].r, 1e-12);
}

TEST(Realization, DelaunayExamples) {
  auto tri = delaunay_of_points({{0, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(tri.surface.face_count(), 1);
  for (int e = 0; e < 3; ++e) EXPECT_NEAR(tri.delta[e], tri.corner[tri.surface.edge_darts(e)[0]], 1e-15);
  double sum = 0;
  for (double x : tri.corner) sum += x;
  EXPECT_NEAR(sum, 1, 1e-12);

  auto sq = delaunay_of_points({{0, 0}, {1, 0}, {1 + 1e-3, 1}, {0, 1}});
  EXPECT_EQ(sq.surface.face_count(), 2);
  for (int e = 0; e < sq.surface.edge_count(); ++e) {
    if (!sq.surface.is_boundary_edge(e)) EXPECT_NEAR(sq.delta[e] * kPi, kPi, 2e-3);
  }
  EXPECT_THROW(delaunay_of_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), DegeneratePosition);
  EXPECT_THROW(delaunay_of_points({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), DegeneratePosition);

  // regular pentagon and its center: spokes carry two base angles 3/10, rim the apex 2/5
  std::vector<Point> pent{{0, 0}};
  for (int k = 0; k < 5; ++k) pent.push_back(std::polar(1.0, 2 * kPi * k / 5));
  auto p = delaunay_of_points(pent);
  EXPECT_EQ(p.surface.face_count(), 5);
  for (int e = 0; e < p.surface.edge_count(); ++e) {
    EXPECT_NEAR(p.delta[e], p.surface.is_boundary_edge(e) ? 0.4 : 0.6, 1e-12);
  }
  for (int v = 0; v < p.surface.vertex_count(); ++v) {
    if (p.surface.is_boundary_vertex(v)) EXPECT_NEAR(p.boundary_angle[v], 0.6, 1e-12);
  }
}

TEST(Realization, EmptyCircumcircles) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto pts = random_points(rng, 4 + trial % 9);
    auto t = delaunay_of_points(pts);
    EXPECT_TRUE(verify_delaunay(t.surface, t.corner).empty());
    EXPECT_EQ(t.surface.euler_characteristic(), 1);
    EXPECT_EQ(t.surface.boundary_component_count(), 1);
  }
}

TEST(Realization, VerifyDelaunay) {
  auto s = two_triangle_disk();
  std::vector<Rational> d(s.edge_count(), q(1, 4));
  int diag = -1;
  for (int e = 0; e < s.edge_count(); ++e) {
    if (!s.is_boundary_edge(e)) d[diag = e] = 1;
  }
  EXPECT_TRUE(verify_delaunay(s, AngleAssignment(s, d)).empty());
  // kite (0,0),(2,-1),(3,0),(2,1) split along the long diagonal: the angles
  // at (2,-1) and (2,1) sum past pi
  auto bad = surface_from_triangles(std::vector<std::array<int, 3>>{{0, 1, 2}, {0, 2, 3}});
  std::vector<Point> kite{{0, 0}, {2, -1}, {3, 0}, {2, 1}};
  std::vector<double> corner;
  for (const auto& t : std::vector<std::array<int, 3>>{{0, 1, 2}, {0, 2, 3}}) {
    for (int k = 0; k < 3; ++k) {
      const Point at = kite[t[k]];
      corner.push_back(std::abs(std::arg((kite[t[(k + 1) % 3]] - at) * std::conj(kite[t[(k + 2) % 3]] - at))) / kPi);
    }
  }
  auto flagged = verify_delaunay(bad, corner);
  ASSERT_EQ(flagged.size(), 1u);
  EXPECT_FALSE(bad.is_boundary_edge(flagged[0]));
  EXPECT_TRUE(verify_delaunay(single_triangle(), std::vector<double>{0.2, 0.3, 0.5}).empty());
}

TEST(Realization, RoundTrip) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    auto pts = random_points(rng, 4 + trial % 9);
    auto t = delaunay_of_points(pts);
    const auto& s = t.surface;
    EXPECT_TRUE(andreev_check(s, t.delta, t.boundary_angle).passed);
    auto rational = rationalize_delta(s, t.delta);
    auto lp = decide_lp(s, rational);
    ASSERT_TRUE(lp.feasible());
    auto refined = euclidean_refinement(s, t.delta, to_doubles(lp.angles->corner));
    for (int d = 0; d < s.dart_count(); ++d) EXPECT_NEAR(refined[d], t.corner[d], 1e-8);
    auto dev = develop(s, refined);
    auto vp = dev.vertex_points(s);
    std::vector<Point> original;
    for (int v = 0; v < s.vertex_count(); ++v) original.push_back(pts[t.point_of_vertex[v]]);
    EXPECT_LT(similarity_distance(vp, original), 1e-6);
    EXPECT_LT(dev.max_position_mismatch(), 1e-9);
  }
}

TEST(Realization, ExcessFromOutsideCorners) {
  // excess of F = sum of corners outside F facing edges of F
  std::mt19937_64 rng(7);
  for (const auto& n : curated_surfaces()) {
    const auto& s = n.surface;
    auto corners = random_corner_angles(s, rng);
    AngleAssignment d(s, delta_from_corners(s, corners));
    auto fc = to_doubles(corners);
    std::uniform_int_distribution<std::uint64_t> pick(1, (1ULL << std::min(s.face_count(), 20)) - 1);
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint64_t mask = pick(rng);
      FaceSet f(s.face_count());
      for (int k = 0; k < std::min(s.face_count(), 20); ++k) {
        if (mask >> k & 1) f.insert(k);
      }
      double outside = 0;
      for (int e : incident_edges(s, f)) {
        for (int c : s.edge_darts(e)) {
          if (!f.contains(c / 3)) outside += fc[c];
        }
      }
      EXPECT_NEAR(to_double(excess(s, f, d)), outside, 1e-9) << n.name;
    }
  }
}

TEST(Realization, RefinementIsUnique) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto pts = random_points(rng, 6 + trial % 5);
    auto t = delaunay_of_points(pts);
    const auto& s = t.surface;
    auto rational = rationalize_delta(s, t.delta);
    auto lp = decide_lp(s, rational);
    ASSERT_TRUE(lp.feasible());
    FlowOptions weak;
    weak.strict = false;
    auto fw = decide_flow(s, rational, weak);
    ASSERT_TRUE(fw.report.feasible());
    auto a = to_doubles(lp.angles->corner);
    auto b = to_doubles(fw.report.angles->corner);
    std::vector<double> mix(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mix[i] = 0.6 * a[i] + 0.4 * b[i];
    auto r1 = euclidean_refinement(s, t.delta, a);
    auto r2 = euclidean_refinement(s, t.delta, mix);
    auto p1 = develop(s, r1).vertex_points(s);
    auto p2 = develop(s, r2).vertex_points(s);
    EXPECT_LT(similarity_distance(p1, p2), 1e-6);
  }
}

TEST(Realization, EuclideanCriterion) {
  std::mt19937_64 rng(19);
  std::vector<TriangulatedSurface> closed{grid_torus(3, 3), grid_torus(3, 4), octahedron(), tetrahedron(), two_face_torus()};
  for (const auto& s : closed) {
    for (int trial = 0; trial < 4; ++trial) {
      auto raw = to_doubles(random_corner_angles(s, rng, 12));
      bool positive = std::all_of(raw.begin(), raw.end(), [](double x) { return x > 0; });
      if (!positive) continue;
      auto delta = delta_of(s, raw);
      for (const auto& c : {raw, euclidean_refinement(s, delta, raw)}) {
        double hd = 0;
        for (const auto& cyc : dual_cycle_basis(s)) hd = std::max(hd, std::abs(holonomy(s, c, cyc).dilatation));
        const double len = develop(s, c).max_length_mismatch();
        EXPECT_EQ(hd < 1e-9, len < 1e-9);
      }
      auto refined = euclidean_refinement(s, delta, raw);
      EXPECT_LT(develop(s, refined).max_length_mismatch(), 1e-9);
      // same edge sums as the start
      auto rd = delta_of(s, refined);
      for (std::size_t e = 0; e < rd.size(); ++e) EXPECT_NEAR(rd[e], delta[e], 1e-12);
    }
  }
}

TEST(Realization, SmallSideSmallAngle) {
  // a/c and a/b below eps < 1/10 forces alpha < 2 eps
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0, 1);
  int hits = 0;
  for (int i = 0; i < 200000; ++i) {
    const double alpha = 0.2 * u(rng), beta = (1 - alpha) * u(rng), gamma = 1 - alpha - beta;
    if (beta <= 0 || gamma <= 0 || alpha <= 1e-6) continue;
    const double a = std::sin(alpha * kPi), b = std::sin(beta * kPi), c = std::sin(gamma * kPi);
    const double eps = std::max(a / b, a / c) * 1.0001;
    if (eps >= 0.1) continue;
    ++hits;
    EXPECT_LT(alpha * kPi, 2 * eps);
  }
  EXPECT_GT(hits, 1000);
}
