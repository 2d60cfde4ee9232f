#include "dihedra/combgeo.hpp"

namespace dihedra {

std::vector<int> Stellation::old_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(is_new.size()); ++v) {
    if (!is_new[v]) out.push_back(v);
  }
  return out;
}

std::vector<int> Stellation::new_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(is_new.size()); ++v) {
    if (is_new[v]) out.push_back(v);
  }
  return out;
}

Stellation stellate(const TriangulatedSurface& surface) {
  const int nf = surface.face_count();
  std::vector<Gluing> g;
  for (int d = 0; d < surface.dart_count(); ++d) {
    const int m = surface.mate(d);
    if (m > d) g.push_back({{d, 0}, {m, 0}});
  }
  for (int f = 0; f < nf; ++f) {
    // slot 1 of [O, c_{i+1}, c_{i+2}] runs c_{i+2} -> O, slot 2 of the next face O -> c_{i+2}
    for (int i = 0; i < 3; ++i) g.push_back({{3 * f + i, 1}, {3 * f + (i + 1) % 3, 2}});
  }
  Stellation s{TriangulatedSurface::build(3 * nf, g), {}, {}, surface.vertex_count(), nf};
  const int nv = s.surface.vertex_count();
  s.is_new.assign(nv, false);
  s.source.assign(nv, -1);
  for (int f = 0; f < nf; ++f) {
    const int o = s.surface.vertex_of_corner(3 * (3 * f));
    s.is_new[o] = true;
    s.source[o] = f;
    for (int i = 0; i < 3; ++i) {
      // corner c_{i+1} sits at slot 1 of face 3f + i
      const int v = s.surface.vertex_of_corner(3 * (3 * f + i) + 1);
      s.source[v] = surface.vertex_of_corner(3 * f + (i + 1) % 3);
    }
  }
  if (nv != s.old_count + s.new_count) throw InvariantViolation("stellation vertex count");
  return s;
}

CurvedReport positively_curved_realizability(const TriangulatedSurface& surface) {
  if (!surface.is_closed() || !surface.is_connected() || surface.euler_characteristic() != 2) {
    throw NotASphere("positive curvature test needs a closed sphere");
  }
  const int nc = surface.dart_count();
  const int nf = surface.face_count();
  const int ne = surface.edge_count();
  const int nv = surface.vertex_count();
  // columns: beta per corner, eps, slack per edge row, slack per vertex row
  const int eps = nc;
  const int cols = nc + 1 + ne + nv;
  LinearProgram lp;
  lp.c.assign(cols, 0);
  lp.c[eps] = -1;
  for (int f = 0; f < nf; ++f) {
    std::vector<Rational> row(cols);
    for (int k = 0; k < 3; ++k) row[3 * f + k] = 1;
    row[eps] = 3;
    lp.A.push_back(std::move(row));
    lp.b.push_back(1);
  }
  for (int e = 0; e < ne; ++e) {
    std::vector<Rational> row(cols);
    for (int d : surface.edge_darts(e)) row[d] = 1;
    row[eps] = static_cast<int>(surface.edge_darts(e).size());
    row[nc + 1 + e] = 1;
    lp.A.push_back(std::move(row));
    lp.b.push_back(1);
  }
  for (int v = 0; v < nv; ++v) {
    std::vector<Rational> row(cols);
    for (int c : surface.vertex_corners(v)) {
      row[c] += 1;
      row[eps] += 1;
    }
    row[eps] += 1;
    row[nc + 1 + ne + v] = 1;
    lp.A.push_back(std::move(row));
    lp.b.push_back(2);
  }
  const LpOutcome out = solve(lp);

  CurvedReport cr;
  auto& r = cr.report;
  const auto& y = out.status == LpStatus::Infeasible ? out.farkas : out.dual;
  r.dual_u.assign(y.begin(), y.begin() + nf);
  r.dual_v.assign(y.begin() + nf, y.begin() + nf + ne);
  cr.dual_w.assign(y.begin() + nf + ne, y.end());
  r.dual_objective = 0;
  for (int k = 0; k < nf; ++k) r.dual_objective += y[k];
  for (int k = nf; k < nf + ne; ++k) r.dual_objective += y[k];
  for (int k = nf + ne; k < nf + ne + nv; ++k) r.dual_objective += 2 * y[k];
  if (out.status != LpStatus::Optimal) {
    r.verdict = Verdict::Infeasible;
    return cr;
  }
  cr.margin = out.x[eps];
  if (cr.margin <= 0) {
    r.verdict = Verdict::Infeasible;
    return cr;
  }
  r.verdict = Verdict::Feasible;
  FaceAngleSolution sol;
  sol.min_angle = cr.margin;
  for (int c = 0; c < nc; ++c) sol.corner.push_back(out.x[c] + cr.margin);
  cr.cone_angle.resize(nv);
  for (int v = 0; v < nv; ++v) cr.cone_angle[v] = sol.vertex_angle_sum(surface, v);
  r.angles = std::move(sol);
  return cr;
}

const char* to_string(AveragingStep step) {
  switch (step) {
    case AveragingStep::None: return "none";
    case AveragingStep::Delaunay: return "delaunay";
    case AveragingStep::GaussBonnet: return "gauss-bonnet";
    case AveragingStep::OldVersusNew: return "old-vs-new";
    case AveragingStep::AverageBound: return "average-bound";
    case AveragingStep::PositiveCurvature: return "positive-curvature";
  }
  return "?";
}

AveragingReport averaging_bound_check(const Stellation& stellation, const AngleAssignment& delta) {
  const auto& s = stellation.surface;
  AveragingReport r;
  r.delaunay = delta.is_delaunay(s);
  bool first_old = true;
  for (int v = 0; v < s.vertex_count(); ++v) {
    const Rational c = delta.cone_angle(s, v);
    r.cone_sum += c;
    if (stellation.is_new[v]) {
      r.new_sum += c;
    } else {
      r.old_sum += c;
      if (first_old || c > r.max_old_cone) r.max_old_cone = c;
      first_old = false;
    }
  }
  const int chi = s.euler_characteristic();
  r.gauss_bonnet = 2 * (s.vertex_count() - chi);
  r.old_lower_bound = s.vertex_count() - chi;
  if (stellation.old_count > 0) {
    r.old_average = r.old_sum / stellation.old_count;
    // (|V(s)| - chi) / |V(T)|, which is 3 - 6/|V(T)| on a sphere
    r.average_bound = r.old_lower_bound / stellation.old_count;
  }
  r.contradiction = r.average_bound >= 2;

  if (!r.delaunay) {
    r.first_failure = AveragingStep::Delaunay;
  } else if (r.cone_sum != r.gauss_bonnet) {
    r.first_failure = AveragingStep::GaussBonnet;
  } else if (r.old_sum < r.new_sum) {
    r.first_failure = AveragingStep::OldVersusNew;
  } else if (r.old_average < r.average_bound) {
    r.first_failure = AveragingStep::AverageBound;
  } else if (r.max_old_cone >= 2) {
    r.first_failure = AveragingStep::PositiveCurvature;
  }
  return r;
}

}  // namespace dihedra
