#include <gtest/gtest.h>

#include <random>

#include "catalog.hpp"
#include "dihedra/angles.hpp"

using namespace dihedra;
using namespace dihedra::testing;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

// Unit square as two triangles ABC, ACD; diagonal AC is the interior edge.
AngleAssignment square_delta(const TriangulatedSurface& s, Rational diagonal = 1, Rational side = q(1, 4)) {
  std::vector<Rational> d(s.edge_count(), side);
  for (int e = 0; e < s.edge_count(); ++e) {
    if (!s.is_boundary_edge(e)) d[e] = diagonal;
  }
  return AngleAssignment(s, d);
}

int interior_edge(const TriangulatedSurface& s) {
  for (int e = 0; e < s.edge_count(); ++e) {
    if (!s.is_boundary_edge(e)) return e;
  }
  return -1;
}

std::vector<TriangulatedSurface> agreement_catalog() {
  std::vector<TriangulatedSurface> all;
  for (int f = 1; f <= 3; ++f) {
    for (auto& s : all_connected_surfaces(f)) all.push_back(std::move(s));
  }
  std::mt19937_64 rng(11);
  for (int i = 0; i < 24; ++i) all.push_back(random_surface(4 + i % 5, rng));
  for (auto& n : curated_surfaces()) {
    if (n.surface.face_count() <= 12) all.push_back(std::move(n.surface));
  }
  return all;
}

}  // namespace

TEST(Angles, ExcessExamples) {
  auto s = two_triangle_disk();
  auto d = square_delta(s);
  EXPECT_EQ(excess(s, FaceSet::all(2), d), 0);
  EXPECT_EQ(excess(s, FaceSet(2), d), 0);
  EXPECT_EQ(excess(s, FaceSet::from_mask(2, 1), d), q(1, 2));
}

TEST(Angles, BruteForceExamples) {
  auto s = two_triangle_disk();
  auto r = check_conditions_bruteforce(s, square_delta(s));
  EXPECT_TRUE(r.feasible());
  EXPECT_EQ(*r.psi, q(1, 2));

  auto t = single_triangle();
  EXPECT_TRUE(check_conditions_bruteforce(t, AngleAssignment(t, {q(1, 2), q(1, 4), q(1, 4)})).feasible());
  auto bad = check_conditions_bruteforce(t, AngleAssignment(t, {q(1, 2), q(1, 4), q(1, 8)}));
  EXPECT_FALSE(bad.feasible());
  EXPECT_EQ(bad.violation, Violation::TotalExcess);
  EXPECT_EQ(bad.violating_excess, q(-1, 8));
}

TEST(Angles, SimpleExamples) {
  auto s = two_triangle_disk();
  EXPECT_TRUE(check_conditions_simple(s, square_delta(s)).feasible());
  auto t = single_triangle();
  EXPECT_TRUE(check_conditions_simple(t, AngleAssignment(t, {q(1, 3), q(1, 3), q(1, 3)})).feasible());
  // all edges flat on the octahedron: total 12 against 8 faces
  auto o = octahedron();
  AngleAssignment flat(o, std::vector<Rational>(o.edge_count(), 1));
  auto a = check_conditions_simple(o, flat);
  auto b = check_conditions_bruteforce(o, flat);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_FALSE(a.feasible());
}

TEST(Angles, DecideLpSquare) {
  auto s = two_triangle_disk();
  auto d = square_delta(s);
  auto r = decide_lp(s, d);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.angles->min_angle, q(1, 4));
  EXPECT_TRUE(r.angles->verify(s, d));
  // the square's triangles are right isosceles; the right angles face the diagonal
  const int diag = interior_edge(s);
  for (int dart : s.edge_darts(diag)) EXPECT_EQ(r.angles->corner[dart], q(1, 2));
  for (int c = 0; c < s.dart_count(); ++c) {
    if (s.edge_of(c) != diag) EXPECT_EQ(r.angles->corner[c], q(1, 4));
  }
}

TEST(Angles, DecideLpEquilateral) {
  auto t = single_triangle();
  auto r = decide_lp(t, AngleAssignment(t, {q(1, 3), q(1, 3), q(1, 3)}));
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.angles->min_angle, q(1, 3));
}

TEST(Angles, DecideLpTotalMismatch) {
  auto s = two_triangle_disk();
  auto r = decide_lp(s, square_delta(s, 1, q(1, 8)));
  EXPECT_FALSE(r.feasible());
  EXPECT_EQ(r.violation, Violation::TotalExcess);
  EXPECT_GT(r.dual_objective, 0);
}

TEST(Angles, DualizedL1OnDisk) {
  auto s = two_triangle_disk();
  auto d = dualize(build_program_L1(s, square_delta(s)));
  EXPECT_EQ(d.sense, Sense::Maximize);
  ASSERT_EQ(d.variable_count(), 2 + 5);
  EXPECT_EQ(d.objective[0], 1);
  EXPECT_EQ(d.objective[1], 1);
  for (int e = 0; e < 5; ++e) EXPECT_EQ(d.objective[2 + e], square_delta(s)[e]);
  ASSERT_EQ(d.rows.size(), 6U);
  for (int c = 0; c < 6; ++c) {
    const auto& row = d.rows[c];
    EXPECT_EQ(row.relation, Relation::LessEqual);
    EXPECT_EQ(row.rhs, 0);
    for (int k = 0; k < d.variable_count(); ++k) {
      const bool expected = k == c / 3 || k == 2 + s.edge_of(c);
      EXPECT_EQ(row.coeffs[k], expected ? 1 : 0);
    }
  }
}

TEST(Angles, RelaxedBoundary) {
  auto t = single_triangle();
  auto r = decide_relaxed_boundary(t, AngleAssignment(t, {q(1, 2), q(1, 2), q(1, 2)}));
  ASSERT_TRUE(r.report.feasible());
  for (int c = 0; c < 3; ++c) EXPECT_EQ(r.report.angles->corner[c], q(1, 3));
  for (int e = 0; e < 3; ++e) EXPECT_EQ(r.boundary_slack[e], q(1, 6));

  auto low = decide_relaxed_boundary(t, AngleAssignment(t, {q(1, 4), q(1, 4), q(1, 4)}));
  EXPECT_FALSE(low.report.feasible());
  ASSERT_TRUE(low.report.violating);
  EXPECT_TRUE(low.report.violating->is_full());
  EXPECT_EQ(low.report.violating_excess, q(-1, 4));

  auto s = two_triangle_disk();
  auto sq = decide_relaxed_boundary(s, square_delta(s));
  EXPECT_FALSE(sq.report.feasible());
  EXPECT_EQ(sq.report.violating_excess, 0);

  auto p = pillowcase();
  EXPECT_THROW(decide_relaxed_boundary(p, AngleAssignment(p, std::vector<Rational>(3, q(2, 3)))), NoBoundary);
}

TEST(Angles, RelaxedMatchesStrictExcessOracle) {
  std::mt19937_64 rng(3);
  for (const auto& s : agreement_catalog()) {
    if (s.is_closed()) continue;
    for (const auto& raw : sample_deltas(s, rng, 6)) {
      AngleAssignment d(s, raw);
      bool expected = d.all_positive();
      const std::uint64_t full = (std::uint64_t{1} << s.face_count()) - 1;
      for (std::uint64_t m = 1; m <= full && expected; ++m) {
        expected = excess(s, FaceSet::from_mask(s.face_count(), m), d) > 0;
      }
      auto r = decide_relaxed_boundary(s, d);
      ASSERT_EQ(r.report.feasible(), expected);
      if (r.report.feasible()) {
        const auto& a = *r.report.angles;
        for (int f = 0; f < s.face_count(); ++f) EXPECT_EQ(a.corner[3 * f] + a.corner[3 * f + 1] + a.corner[3 * f + 2], 1);
        for (int e = 0; e < s.edge_count(); ++e) {
          Rational sum = 0;
          for (int dart : s.edge_darts(e)) sum += a.corner[dart];
          if (s.is_boundary_edge(e)) {
            EXPECT_GT(r.boundary_slack[e], 0);
            EXPECT_EQ(sum + r.boundary_slack[e], d[e]);
          } else {
            EXPECT_EQ(sum, d[e]);
          }
        }
      } else if (r.report.violating) {
        EXPECT_LE(excess(s, *r.report.violating, d), 0);
      }
    }
  }
}

TEST(Angles, ConeAngleProblem) {
  auto p = pillowcase();
  std::vector<std::optional<Rational>> sums(3, q(2, 3));
  auto r = cone_angle_problem(p, sums);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.angles->min_angle, q(1, 3));

  sums[0] = q(0);
  sums[1] = q(1);
  EXPECT_FALSE(cone_angle_problem(p, sums).feasible());

  auto s = two_triangle_disk();
  std::vector<std::optional<Rational>> square(4, q(1, 2));
  auto sq = cone_angle_problem(s, square);
  ASSERT_TRUE(sq.feasible());
  for (int v = 0; v < 4; ++v) EXPECT_EQ(sq.angles->vertex_angle_sum(s, v), q(1, 2));
  EXPECT_TRUE(sq.angles->verify(s, square_delta(s)));
}

TEST(Angles, KappaExamples) {
  auto s = two_triangle_disk();
  auto d = square_delta(s);
  auto whole = check_kappa(s, ClosedSubcomplex::whole(s), d);
  EXPECT_EQ(whole.slack, 0);
  // Gauss-Bonnet for the whole complex
  EXPECT_EQ(whole.total_curvature, 2 * s.euler_characteristic() - whole.frontier_sum);
  auto one = check_kappa(s, ClosedSubcomplex::closure_of(s, FaceSet::from_mask(2, 1)), d);
  EXPECT_EQ(one.slack, 1);

  auto p = pillowcase();
  AngleAssignment eq(p, std::vector<Rational>(3, q(2, 3)));
  auto c = check_kappa(p, ClosedSubcomplex::closure_of(p, FaceSet::from_mask(2, 1)), eq);
  EXPECT_EQ(c.frontier_sum, 0);
  EXPECT_EQ(c.slack, 2 * excess(p, FaceSet::from_mask(2, 1), eq));
  auto closed_whole = check_kappa(p, ClosedSubcomplex::whole(p), eq);
  Rational total = 0;
  for (int v = 0; v < p.vertex_count(); ++v) total += eq.curvature(p, v);
  EXPECT_EQ(total, 2 * p.euler_characteristic());
  EXPECT_EQ(closed_whole.slack, 0);
}

TEST(Angles, KappaEnumerationMatchesMinimization) {
  std::mt19937_64 rng(17);
  for (const auto& s : {two_triangle_disk(), pillowcase(), wheel(3), two_face_torus(), strip_disk(3)}) {
    for (const auto& raw : sample_deltas(s, rng, 10)) {
      AngleAssignment d(s, raw);
      bool ok = true;
      for_each_closed_subcomplex(s, [&](const ClosedSubcomplex& c) {
        const Rational slack = check_kappa(s, c, d).slack;
        if (c.is_whole(s)) {
          ok = ok && slack == 0;
        } else if (c.edge_count() > 0) {
          ok = ok && slack > 0;
        }
      });
      EXPECT_EQ(check_kappa_all(s, d).feasible(), ok);
    }
  }
}

TEST(Angles, FourWayAgreement) {
  std::mt19937_64 rng(42);
  int feasible = 0, infeasible = 0;
  for (const auto& s : agreement_catalog()) {
    for (const auto& raw : sample_deltas(s, rng, 8)) {
      AngleAssignment d(s, raw);
      auto brute = check_conditions_bruteforce(s, d);
      auto simple = check_conditions_simple(s, d);
      auto kappa = check_kappa_all(s, d);
      auto lp = decide_lp(s, d);
      ASSERT_EQ(brute.verdict, simple.verdict);
      ASSERT_EQ(brute.verdict, kappa.verdict);
      ASSERT_EQ(brute.verdict, lp.verdict);
      if (lp.feasible()) {
        ++feasible;
        EXPECT_TRUE(lp.angles->verify(s, d));
        if (brute.psi) {
          Rational floor = *brute.psi;
          for (const auto& x : d.values()) floor = std::min(floor, x);
          EXPECT_GE(lp.angles->min_angle * s.edge_count(), floor);
        }
        EXPECT_EQ(d.total(), s.face_count());
        for (int v = 0; v < s.vertex_count(); ++v) {
          EXPECT_EQ(lp.angles->vertex_angle_sum(s, v), d.corner_sum(s, v));
        }
        EXPECT_EQ(brute.psi, simple.psi);
        EXPECT_EQ(brute.psi, kappa.psi);
      } else {
        ++infeasible;
        if (lp.violation == Violation::TotalExcess) {
          EXPECT_NE(excess(s, *lp.violating, d), 0);
        } else if (lp.violation == Violation::ProperSubset) {
          EXPECT_LE(excess(s, *lp.violating, d), 0);
        }
        EXPECT_TRUE(lp.violation != Violation::None);
        // the dual point is a valid certificate
        for (int c = 0; c < s.dart_count(); ++c) EXPECT_LE(lp.dual_u[c / 3] + lp.dual_v[s.edge_of(c)], 0);
        EXPECT_GE(lp.dual_objective, 0);
      }
    }
  }
  EXPECT_GT(feasible, 50);
  EXPECT_GT(infeasible, 50);
}

TEST(Angles, PsiOverEdgesIsNotALowerBound) {
  // An interior edge caps every angle at half its prescription, whatever the
  // excesses are. Here psi / |E| = 7/48 but no solution beats 1/8.
  auto s = tetrahedron();
  AngleAssignment d(s, {q(1, 2), q(7, 8), q(7, 8), q(3, 4), q(1, 4), q(3, 4)});
  ASSERT_TRUE(d.is_delaunay(s));
  auto brute = check_conditions_bruteforce(s, d);
  ASSERT_TRUE(brute.feasible());
  EXPECT_EQ(*brute.psi, q(7, 8));
  auto lp = decide_lp(s, d);
  ASSERT_TRUE(lp.feasible());
  EXPECT_EQ(lp.angles->min_angle, q(1, 8));
  EXPECT_LT(lp.angles->min_angle * s.edge_count(), *brute.psi);
}

TEST(Angles, ExcessDoubleBound) {
  std::mt19937_64 rng(8);
  for (const auto& s : agreement_catalog()) {
    if (s.face_count() < 2 || s.face_count() > 10) continue;
    AngleAssignment d(s, delta_from_corners(s, random_corner_angles(s, rng)));
    const std::uint64_t full = (std::uint64_t{1} << s.face_count()) - 1;
    for (std::uint64_t m = 1; m < full; ++m) {
      FaceSet f = FaceSet::from_mask(s.face_count(), m);
      Rational bound = 0;
      for (int e : relative_boundary_edges(s, f)) bound += d[e];
      const Rational x = excess(s, f, d);
      EXPECT_GT(x, 0);
      EXPECT_LT(x, bound);
    }
  }
}

TEST(Angles, DualNonPositiveOnFeasibleData) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> val(-4, 4);
  for (const auto& s : agreement_catalog()) {
    AngleAssignment d(s, delta_from_corners(s, random_corner_angles(s, rng)));
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Rational> u(s.face_count());
      for (auto& x : u) x = val(rng);
      Rational obj = 0;
      for (const auto& x : u) obj += x;
      for (int e = 0; e < s.edge_count(); ++e) {
        Rational top = u[s.edge_darts(e)[0] / 3];
        for (int dart : s.edge_darts(e)) top = std::max(top, u[dart / 3]);
        obj -= d[e] * top;
      }
      const bool uniform = std::all_of(u.begin(), u.end(), [&](const Rational& x) { return x == u[0]; });
      if (uniform) {
        EXPECT_EQ(obj, 0);
      } else {
        EXPECT_LT(obj, 0);
      }
    }
  }
}

TEST(Angles, AndreevSquare) {
  auto s = two_triangle_disk();
  auto d = square_delta(s);
  std::vector<Rational> lambda(4, q(1, 2));
  auto r = andreev_check(s, d, lambda);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(decide_planar_disk_lp(s, d, lambda).feasible());
  lambda[3] = q(3, 4);
  auto bad = andreev_check(s, d, lambda);
  EXPECT_FALSE(bad.passed);
  EXPECT_EQ(bad.clause, AndreevClause::BoundaryVertex);
  EXPECT_EQ(bad.vertex, 3);
  EXPECT_THROW(andreev_check(pillowcase(), AngleAssignment(pillowcase(), std::vector<Rational>(3, 1)),
                             std::vector<Rational>(3, 1)),
               NotADisk);
}

TEST(Angles, AndreevHexagonalWheel) {
  auto s = wheel(6);
  std::vector<Rational> d(s.edge_count());
  for (int e = 0; e < s.edge_count(); ++e) d[e] = s.is_boundary_edge(e) ? q(1, 3) : q(2, 3);
  AngleAssignment delta(s, d);
  std::vector<Rational> lambda(s.vertex_count(), q(2, 3));
  EXPECT_EQ(delta.cone_angle(s, 0), 2);
  auto r = andreev_check(s, delta, lambda);
  EXPECT_EQ(r.passed, decide_planar_disk_lp(s, delta, lambda).feasible());
  EXPECT_TRUE(r.passed);
}

TEST(Angles, AndreevMatchesPlanarLp) {
  std::mt19937_64 rng(21);
  int agree = 0, pass = 0;
  std::vector<TriangulatedSurface> disks{two_triangle_disk(), wheel(3), wheel(4), wheel(5), wheel(6), strip_disk(3),
                                         strip_disk(4)};
  for (const auto& s : disks) {
    for (int trial = 0; trial < 60; ++trial) {
      auto corners = random_corner_angles(s, rng, 12, true);
      auto raw = delta_from_corners(s, corners);
      std::vector<Rational> lambda(s.vertex_count(), 0);
      for (int v = 0; v < s.vertex_count(); ++v) {
        for (int c : s.vertex_corners(v)) lambda[v] += corners[c];
      }
      // perturb one datum half of the time
      if (trial % 2 == 1) {
        std::uniform_int_distribution<int> pick(0, s.edge_count() - 1);
        const int a = pick(rng), b = pick(rng);
        raw[a] -= q(1, 12);
        raw[b] += q(1, 12);
      }
      AngleAssignment d(s, raw);
      bool in_domain = d.all_positive();
      for (int e = 0; e < s.edge_count(); ++e) in_domain = in_domain && raw[e] <= 1;
      for (int v = 0; v < s.vertex_count(); ++v) {
        if (s.is_boundary_vertex(v)) in_domain = in_domain && lambda[v] > 0 && lambda[v] <= 1;
      }
      if (!in_domain) continue;
      const bool a = andreev_check(s, d, lambda).passed;
      const bool b = decide_planar_disk_lp(s, d, lambda).feasible();
      EXPECT_EQ(a, b) << "faces " << s.face_count() << " trial " << trial;
      agree += a == b;
      pass += a;
      std::vector<double> df, lf;
      for (const auto& x : raw) df.push_back(x.get_d());
      for (const auto& x : lambda) lf.push_back(x.get_d());
      EXPECT_EQ(andreev_check(s, df, lf).passed, a);
    }
  }
  EXPECT_GT(pass, 10);
  EXPECT_GT(agree, 40);
}
