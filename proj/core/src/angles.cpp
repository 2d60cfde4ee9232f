#include "dihedra/angles.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>

namespace dihedra {

// ==========================================================
// ================   Angle assignment     ==================
// ==========================================================

AngleAssignment::AngleAssignment(const TriangulatedSurface& surface, std::vector<Rational> delta)
    : delta_(std::move(delta)) {
  if (size() != surface.edge_count()) {
    throw std::invalid_argument("angle assignment has " + std::to_string(size()) + " values for " +
                                std::to_string(surface.edge_count()) + " edges");
  }
}

bool AngleAssignment::all_positive() const {
  return std::all_of(delta_.begin(), delta_.end(), [](const Rational& d) { return d > 0; });
}

bool AngleAssignment::is_delaunay(const TriangulatedSurface& surface) const {
  if (!all_positive()) return false;
  for (int e = 0; e < size(); ++e) {
    if (!surface.is_boundary_edge(e) && delta_[e] > 1) return false;
  }
  return true;
}

Rational AngleAssignment::total() const {
  Rational s = 0;
  for (const auto& d : delta_) s += d;
  return s;
}

Rational AngleAssignment::cone_angle(const TriangulatedSurface& surface, int vertex) const {
  Rational s = 0;
  for (int e : surface.vertex_edges(vertex)) s += surface.endpoint_multiplicity(vertex, e) * exterior(e);
  return s;
}

Rational AngleAssignment::corner_sum(const TriangulatedSurface& surface, int vertex) const {
  Rational c = cone_angle(surface, vertex);
  if (surface.is_boundary_vertex(vertex)) c -= 1;
  return c;
}

bool FaceAngleSolution::verify(const TriangulatedSurface& surface, const AngleAssignment& delta) const {
  if (static_cast<int>(corner.size()) != surface.dart_count()) return false;
  for (const auto& a : corner) {
    if (a <= 0) return false;
  }
  for (int f = 0; f < surface.face_count(); ++f) {
    if (corner[3 * f] + corner[3 * f + 1] + corner[3 * f + 2] != 1) return false;
  }
  for (int e = 0; e < surface.edge_count(); ++e) {
    Rational s = 0;
    for (int d : surface.edge_darts(e)) s += corner[d];
    if (s != delta[e]) return false;
  }
  return true;
}

Rational FaceAngleSolution::vertex_angle_sum(const TriangulatedSurface& surface, int vertex) const {
  Rational s = 0;
  for (int c : surface.vertex_corners(vertex)) s += corner[c];
  return s;
}

const char* to_string(Verdict verdict) { return verdict == Verdict::Feasible ? "feasible" : "infeasible"; }

const char* to_string(Violation violation) {
  switch (violation) {
    case Violation::None: return "none";
    case Violation::NonPositiveAngle: return "nonpositive-angle";
    case Violation::TotalExcess: return "total-excess";
    case Violation::ProperSubset: return "proper-subset";
  }
  return "?";
}

const char* to_string(AndreevClause clause) {
  switch (clause) {
    case AndreevClause::None: return "none";
    case AndreevClause::InteriorVertex: return "interior-vertex";
    case AndreevClause::BoundaryVertex: return "boundary-vertex";
    case AndreevClause::ClosedCurve: return "closed-curve";
    case AndreevClause::BoundarySplit: return "boundary-split";
  }
  return "?";
}

Rational excess(const TriangulatedSurface& surface, const FaceSet& faces, const AngleAssignment& delta) {
  Rational s = 0;
  for (int e : incident_edges(surface, faces)) s += delta[e];
  return s - faces.size();
}

// ==========================================================
// ================   Subset enumeration   ==================
// ==========================================================

namespace {

using EdgeBits = std::array<std::uint64_t, 3>;

// Excess of face masks, in int64 after scaling by the common denominator when
// that cannot overflow, in exact rationals otherwise.
class MaskExcess {
 public:
  MaskExcess(const TriangulatedSurface& surface, const AngleAssignment& delta) : delta_(&delta) {
    const int nf = surface.face_count();
    if (surface.edge_count() > 192) throw OracleLimitExceeded("too many edges for mask enumeration");
    face_edges_.assign(nf, EdgeBits{});
    for (int f = 0; f < nf; ++f) {
      for (int k = 0; k < 3; ++k) {
        const int e = surface.edge_of(3 * f + k);
        face_edges_[f][e / 64] |= std::uint64_t{1} << (e % 64);
      }
    }
    const mpz_class denom = common_denominator(delta.values());
    mpz_class bound = denom * nf;
    for (const auto& d : delta.values()) bound += mpq_class(abs(d * denom)).get_num();
    scaled_ok_ = bound < mpz_class(std::numeric_limits<std::int64_t>::max() / 4);
    if (scaled_ok_) {
      denom_ = denom.get_si();
      for (const auto& d : delta.values()) scaled_.push_back(mpz_class(d * denom).get_si());
    }
  }

  // excess times the common denominator (exact), and the denominator.
  bool scaled() const { return scaled_ok_; }
  std::int64_t denominator() const { return denom_; }

  EdgeBits edges_of(std::uint64_t mask) const {
    EdgeBits bits{};
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      const auto& fe = face_edges_[std::countr_zero(m)];
      for (int w = 0; w < 3; ++w) bits[w] |= fe[w];
    }
    return bits;
  }

  std::int64_t scaled_excess(std::uint64_t mask) const {
    const EdgeBits bits = edges_of(mask);
    std::int64_t s = 0;
    for (int w = 0; w < 3; ++w) {
      for (std::uint64_t b = bits[w]; b != 0; b &= b - 1) s += scaled_[64 * w + std::countr_zero(b)];
    }
    return s - denom_ * std::popcount(mask);
  }

  Rational exact_excess(std::uint64_t mask) const {
    if (scaled_ok_) return make_rational(scaled_excess(mask), denom_);
    const EdgeBits bits = edges_of(mask);
    Rational s = 0;
    for (int w = 0; w < 3; ++w) {
      for (std::uint64_t b = bits[w]; b != 0; b &= b - 1) s += (*delta_)[64 * w + std::countr_zero(b)];
    }
    return s - std::popcount(mask);
  }

 private:
  const AngleAssignment* delta_;
  std::vector<EdgeBits> face_edges_;
  bool scaled_ok_ = false;
  std::int64_t denom_ = 1;
  std::vector<std::int64_t> scaled_;
};

// Tracks the minimal excess seen so far.
struct MinExcess {
  const MaskExcess& eval;
  bool any = false;
  std::uint64_t arg = 0;
  std::int64_t best_scaled = 0;
  Rational best_exact;

  void offer(std::uint64_t mask) {
    if (eval.scaled()) {
      const std::int64_t v = eval.scaled_excess(mask);
      if (!any || v < best_scaled) {
        any = true;
        best_scaled = v;
        arg = mask;
      }
    } else {
      Rational v = eval.exact_excess(mask);
      if (!any || v < best_exact) {
        any = true;
        best_exact = v;
        arg = mask;
      }
    }
  }

  Rational value() const { return eval.scaled() ? make_rational(best_scaled, eval.denominator()) : best_exact; }
};

// Positivity and the total equality, shared by every combinatorial check.
bool precheck(const TriangulatedSurface& surface, const AngleAssignment& delta, FeasibilityReport& report) {
  for (int e = 0; e < delta.size(); ++e) {
    if (delta[e] <= 0) {
      report.verdict = Verdict::Infeasible;
      report.violation = Violation::NonPositiveAngle;
      report.violating_edge = e;
      return false;
    }
  }
  const Rational total = delta.total() - surface.face_count();
  if (total != 0) {
    report.verdict = Verdict::Infeasible;
    report.violation = Violation::TotalExcess;
    report.violating = FaceSet::all(surface.face_count());
    report.violating_excess = total;
    return false;
  }
  return true;
}

void finish_from_min(const TriangulatedSurface& surface, const MinExcess& min, FeasibilityReport& report) {
  if (!min.any) {
    report.verdict = Verdict::Feasible;
    return;
  }
  const Rational worst = min.value();
  report.psi = worst;
  if (worst > 0) {
    report.verdict = Verdict::Feasible;
  } else {
    report.verdict = Verdict::Infeasible;
    report.violation = Violation::ProperSubset;
    report.violating = FaceSet::from_mask(surface.face_count(), min.arg);
    report.violating_excess = worst;
  }
}

void require_connected(const TriangulatedSurface& surface) {
  if (!surface.is_connected()) throw std::invalid_argument("surface must be connected");
}

}  // namespace

FeasibilityReport check_conditions_bruteforce(const TriangulatedSurface& surface, const AngleAssignment& delta,
                                              int face_limit) {
  const int nf = surface.face_count();
  if (nf > face_limit || nf > 62) {
    throw OracleLimitExceeded("brute-force check limited to " + std::to_string(face_limit) + " faces");
  }
  FeasibilityReport report;
  if (!precheck(surface, delta, report)) return report;
  MaskExcess eval(surface, delta);
  MinExcess min{eval, false, 0, 0, Rational(0)};
  const std::uint64_t full = (std::uint64_t{1} << nf) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) min.offer(mask);
  finish_from_min(surface, min, report);
  return report;
}

FeasibilityReport check_conditions_simple(const TriangulatedSurface& surface, const AngleAssignment& delta,
                                          int face_limit) {
  require_connected(surface);
  FeasibilityReport report;
  if (!precheck(surface, delta, report)) return report;
  MaskExcess eval(surface, delta);
  MinExcess min{eval, false, 0, 0, Rational(0)};
  for_each_simple_subcomplex(surface, [&](const FaceSet& f) { min.offer(f.mask()); }, face_limit);
  finish_from_min(surface, min, report);
  return report;
}

// ==========================================================
// ================   Curvature form       ==================
// ==========================================================

CurvatureTerms check_kappa(const TriangulatedSurface& surface, const ClosedSubcomplex& sub,
                           const AngleAssignment& delta) {
  if (!sub.is_closed(surface)) throw std::invalid_argument("subcomplex is not closed");
  CurvatureTerms t;
  Rational edge_sum = 0;
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (sub.edges[e]) {
      edge_sum += delta[e];
      continue;
    }
    const int n = sub.endpoint_count(surface, e);
    if (n > 0) t.frontier_sum += n * delta.exterior(e);
  }
  t.euler_characteristic = sub.euler_characteristic();
  for (int v = 0; v < surface.vertex_count(); ++v) {
    if (sub.vertices[v]) t.total_curvature += delta.curvature(surface, v);
  }
  t.slack = t.frontier_sum - (2 * t.euler_characteristic - t.total_curvature);
  const Rational rhs = 2 * t.euler_characteristic + 2 * (edge_sum - sub.face_count()) - t.frontier_sum;
  if (t.total_curvature != rhs) {
    throw InvariantViolation("curvature identity fails: K = " + to_string(Rational(t.total_curvature)) +
                             ", expected " + to_string(rhs));
  }
  return t;
}

namespace {

FeasibilityReport kappa_all_rational(const TriangulatedSurface& surface, const AngleAssignment& delta) {
  const int nf = surface.face_count();
  FeasibilityReport report;
  report.verdict = Verdict::Feasible;
  bool have_worst = false;
  Rational worst;
  const std::uint64_t full = (std::uint64_t{1} << nf) - 1;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    ClosedSubcomplex sub = ClosedSubcomplex::closure_of(surface, FaceSet::from_mask(nf, mask));
    // The slack grows by 2 delta(e) per extra edge, so the minimizing choice
    // takes exactly the nonpositive ones.
    std::vector<int> extra;
    int cheapest = -1;
    for (int e = 0; e < surface.edge_count(); ++e) {
      if (sub.edges[e]) continue;
      if (delta[e] <= 0) extra.push_back(e);
      if (cheapest == -1 || delta[e] < delta[cheapest]) cheapest = e;
    }
    if (mask == 0 && extra.empty()) {
      if (cheapest == -1) continue;
      extra.push_back(cheapest);
    }
    for (int e : extra) {
      sub.edges[e] = true;
      for (int v : surface.edge_endpoints(e)) sub.vertices[v] = true;
    }
    const Rational slack = check_kappa(surface, sub, delta).slack;
    if (sub.is_whole(surface)) {
      if (slack != 0) {
        report.verdict = Verdict::Infeasible;
        report.violation = Violation::TotalExcess;
        report.violating = FaceSet::all(nf);
        report.violating_excess = slack / 2;
        return report;
      }
      continue;
    }
    const Rational half = slack / 2;
    if (mask != 0 && extra.empty() && (!report.psi || half < *report.psi)) report.psi = half;
    if (slack > 0) continue;
    if (!have_worst || slack < worst) {
      have_worst = true;
      worst = slack;
      report.verdict = Verdict::Infeasible;
      if (!extra.empty() && delta[extra.front()] <= 0) {
        report.violation = Violation::NonPositiveAngle;
        report.violating_edge = extra.front();
        report.violating.reset();
      } else {
        report.violation = Violation::ProperSubset;
        report.violating = FaceSet::from_mask(nf, mask);
        report.violating_excess = half;
      }
    }
  }
  if (report.verdict == Verdict::Infeasible) report.psi.reset();
  return report;
}

// Same search with every angle scaled by the common denominator into int64.
FeasibilityReport kappa_all_scaled(const TriangulatedSurface& surface, const AngleAssignment& delta,
                                   std::int64_t denom) {
  const int nf = surface.face_count(), ne = surface.edge_count(), nv = surface.vertex_count();
  std::vector<std::int64_t> dl(ne), ext(ne), kap(nv, 2 * denom);
  for (int e = 0; e < ne; ++e) {
    dl[e] = mpz_class(delta[e] * Rational(denom)).get_si();
    ext[e] = denom - dl[e];
  }
  for (int v = 0; v < nv; ++v) {
    for (int e : surface.vertex_edges(v)) kap[v] -= surface.endpoint_multiplicity(v, e) * ext[e];
  }
  std::vector<std::array<int, 2>> ends(ne);
  for (int e = 0; e < ne; ++e) ends[e] = surface.edge_endpoints(e);
  int cheapest = 0;
  for (int e = 1; e < ne; ++e) {
    if (dl[e] < dl[cheapest]) cheapest = e;
  }

  FeasibilityReport report;
  report.verdict = Verdict::Feasible;
  bool have_worst = false, have_psi = false;
  std::int64_t worst = 0, psi = 0;
  std::vector<char> ein(ne), vin(nv);
  const std::uint64_t full = (std::uint64_t{1} << nf) - 1;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    std::fill(ein.begin(), ein.end(), 0);
    std::fill(vin.begin(), vin.end(), 0);
    int faces = 0;
    for (int f = 0; f < nf; ++f) {
      if (!(mask >> f & 1)) continue;
      ++faces;
      for (int k = 0; k < 3; ++k) ein[surface.edge_of(3 * f + k)] = 1;
    }
    int first_extra = -1, extra_count = 0;
    for (int e = 0; e < ne; ++e) {
      if (!ein[e] && dl[e] <= 0) {
        ein[e] = 2;
        if (first_extra < 0) first_extra = e;
        ++extra_count;
      }
    }
    if (mask == 0 && extra_count == 0) {
      if (ne == 0) continue;
      ein[cheapest] = 2;
      first_extra = cheapest;
      extra_count = 1;
    }
    int edges = 0;
    std::int64_t edge_sum = 0;
    for (int e = 0; e < ne; ++e) {
      if (!ein[e]) continue;
      ++edges;
      edge_sum += dl[e];
      vin[ends[e][0]] = vin[ends[e][1]] = 1;
    }
    int verts = 0;
    std::int64_t curvature = 0;
    for (int v = 0; v < nv; ++v) {
      if (!vin[v]) continue;
      ++verts;
      curvature += kap[v];
    }
    std::int64_t frontier = 0;
    for (int e = 0; e < ne; ++e) {
      if (!ein[e]) frontier += (vin[ends[e][0]] + vin[ends[e][1]]) * ext[e];
    }
    const int chi = verts - edges + faces;
    const std::int64_t slack = frontier - (2 * denom * chi - curvature);
    if (curvature != 2 * denom * chi + 2 * (edge_sum - denom * faces) - frontier) {
      throw InvariantViolation("curvature identity fails on face mask " + std::to_string(mask));
    }
    if (mask == full && edges == ne && verts == nv) {
      if (slack != 0) {
        report.verdict = Verdict::Infeasible;
        report.violation = Violation::TotalExcess;
        report.violating = FaceSet::all(nf);
        report.violating_excess = make_rational(slack, 2 * denom);
        return report;
      }
      continue;
    }
    if (mask != 0 && extra_count == 0 && (!have_psi || slack < psi)) {
      have_psi = true;
      psi = slack;
    }
    if (slack > 0) continue;
    if (!have_worst || slack < worst) {
      have_worst = true;
      worst = slack;
      report.verdict = Verdict::Infeasible;
      if (first_extra >= 0 && dl[first_extra] <= 0) {
        report.violation = Violation::NonPositiveAngle;
        report.violating_edge = first_extra;
        report.violating.reset();
      } else {
        report.violation = Violation::ProperSubset;
        report.violating = FaceSet::from_mask(nf, mask);
        report.violating_excess = make_rational(slack, 2 * denom);
      }
    }
  }
  if (report.verdict == Verdict::Feasible && have_psi) report.psi = make_rational(psi, 2 * denom);
  return report;
}

}  // namespace

FeasibilityReport check_kappa_all(const TriangulatedSurface& surface, const AngleAssignment& delta, int face_limit) {
  const int nf = surface.face_count();
  if (nf > face_limit || nf > 62) {
    throw OracleLimitExceeded("curvature check limited to " + std::to_string(face_limit) + " faces");
  }
  const mpz_class denom = common_denominator(delta.values());
  Rational largest = 0;
  for (const auto& d : delta.values()) largest = std::max(largest, Rational(abs(d)));
  if (denom < mpz_class(1L << 30) && largest < 1000) return kappa_all_scaled(surface, delta, denom.get_si());
  return kappa_all_rational(surface, delta);
}

// ==========================================================
// ================   Linear programs      ==================
// ==========================================================

namespace {

// Rows: one per face, then one per edge. Columns: beta per corner, eps, then
// `extra_columns` zero columns.
GeneralProgram angle_program(const TriangulatedSurface& surface, const AngleAssignment& delta) {
  GeneralProgram p;
  p.sense = Sense::Maximize;
  const int nc = surface.dart_count();
  for (int c = 0; c < nc; ++c) p.add_variable();
  const int eps = p.add_variable(VarKind::NonNegative, 1);
  for (int f = 0; f < surface.face_count(); ++f) {
    std::vector<Rational> row(eps + 1);
    for (int k = 0; k < 3; ++k) row[3 * f + k] = 1;
    row[eps] = 3;
    p.add_constraint(std::move(row), Relation::Equal, 1);
  }
  for (int e = 0; e < surface.edge_count(); ++e) {
    std::vector<Rational> row(eps + 1);
    for (int d : surface.edge_darts(e)) row[d] = 1;
    row[eps] = static_cast<int>(surface.edge_darts(e).size());
    p.add_constraint(std::move(row), Relation::Equal, delta[e]);
  }
  return p;
}

// The same program already in standard form: every column is nonnegative and
// every row an equation, so only the objective flips sign.
LinearProgram angle_program_standard(const TriangulatedSurface& surface, const AngleAssignment& delta) {
  LinearProgram lp;
  const int nc = surface.dart_count();
  const int nf = surface.face_count();
  const int ne = surface.edge_count();
  lp.A.assign(nf + ne, std::vector<Rational>(nc + 1));
  lp.b.resize(nf + ne);
  lp.c.resize(nc + 1);
  lp.c[nc] = -1;
  for (int f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) lp.A[f][3 * f + k] = 1;
    lp.A[f][nc] = 3;
    lp.b[f] = 1;
  }
  for (int e = 0; e < ne; ++e) {
    auto& row = lp.A[nf + e];
    for (int d : surface.edge_darts(e)) row[d] = 1;
    row[nc] = static_cast<int>(surface.edge_darts(e).size());
    lp.b[nf + e] = delta[e];
  }
  return lp;
}

FaceAngleSolution angles_from(const std::vector<Rational>& x, int corners) {
  FaceAngleSolution s;
  s.min_angle = x[corners];
  for (int c = 0; c < corners; ++c) s.corner.push_back(x[c] + x[corners]);
  return s;
}

// Level sets {t : u_t >= theta} of a dual certificate; the one of least
// excess. `include_full` also offers the whole face set.
void extract_violating(const TriangulatedSurface& surface, const AngleAssignment& delta, bool include_full,
                       FeasibilityReport& report) {
  const int nf = surface.face_count();
  std::set<Rational> levels(report.dual_u.begin(), report.dual_u.end());
  std::optional<FaceSet> best;
  Rational best_excess;
  auto offer = [&](const FaceSet& f) {
    if (f.empty() || (f.is_full() && !include_full)) return;
    Rational x = excess(surface, f, delta);
    if (!best || x < best_excess) {
      best = f;
      best_excess = x;
    }
  };
  for (const auto& theta : levels) {
    FaceSet f(nf);
    for (int t = 0; t < nf; ++t) {
      if (report.dual_u[t] >= theta) f.insert(t);
    }
    offer(f);
  }
  if (include_full) offer(FaceSet::all(nf));
  if ((!best || best_excess > 0) && nf <= 30 && surface.is_connected()) {
    // fall back on the combinatorial search
    for_each_simple_subcomplex(surface, offer, 30);
  }
  if (best && best_excess <= 0) {
    report.violation = best->is_full() ? Violation::TotalExcess : Violation::ProperSubset;
    report.violating = best;
    report.violating_excess = best_excess;
  }
}

void attach_certificate(const TriangulatedSurface& surface, const AngleAssignment& delta, const LpOutcome& out,
                        FeasibilityReport& report) {
  const auto& y = out.status == LpStatus::Infeasible ? out.farkas : out.dual;
  const int nf = surface.face_count();
  report.dual_u.assign(y.begin(), y.begin() + nf);
  report.dual_v.assign(y.begin() + nf, y.begin() + nf + surface.edge_count());
  report.dual_objective = 0;
  for (const auto& u : report.dual_u) report.dual_objective += u;
  for (int e = 0; e < surface.edge_count(); ++e) report.dual_objective += delta[e] * report.dual_v[e];
}

}  // namespace

GeneralProgram build_program_L(const TriangulatedSurface& surface, const AngleAssignment& delta) {
  return angle_program(surface, delta);
}

LinearProgram build_program_L1(const TriangulatedSurface& surface, const AngleAssignment& delta) {
  LinearProgram lp;
  const int nc = surface.dart_count();
  lp.c.assign(nc, 0);
  for (int f = 0; f < surface.face_count(); ++f) {
    std::vector<Rational> row(nc);
    for (int k = 0; k < 3; ++k) row[3 * f + k] = 1;
    lp.A.push_back(std::move(row));
    lp.b.push_back(1);
  }
  for (int e = 0; e < surface.edge_count(); ++e) {
    std::vector<Rational> row(nc);
    for (int d : surface.edge_darts(e)) row[d] = 1;
    lp.A.push_back(std::move(row));
    lp.b.push_back(delta[e]);
  }
  return lp;
}

FeasibilityReport decide_lp(const TriangulatedSurface& surface, const AngleAssignment& delta) {
  require_connected(surface);
  FeasibilityReport report;
  const LpOutcome out = solve(angle_program_standard(surface, delta));
  const int nc = surface.dart_count();
  if (out.status == LpStatus::Optimal && out.x[nc] > 0) {
    report.verdict = Verdict::Feasible;
    report.angles = angles_from(out.x, nc);
    return report;
  }
  report.verdict = Verdict::Infeasible;
  attach_certificate(surface, delta, out, report);
  FeasibilityReport pre;
  if (!precheck(surface, delta, pre)) {
    report.violation = pre.violation;
    report.violating_edge = pre.violating_edge;
    report.violating = pre.violating;
    report.violating_excess = pre.violating_excess;
    return report;
  }
  extract_violating(surface, delta, false, report);
  return report;
}

RelaxedReport decide_relaxed_boundary(const TriangulatedSurface& surface, const AngleAssignment& delta) {
  require_connected(surface);
  if (surface.is_closed()) throw NoBoundary("relaxed boundary mode needs boundary edges");
  GeneralProgram p = angle_program(surface, delta);
  const int nc = surface.dart_count();
  const int nf = surface.face_count();
  const int eps = nc;
  // boundary rows: beta + 2 eps + xi = delta, so the slack xi + eps stays above eps
  std::vector<int> xi(surface.edge_count(), -1);
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (!surface.is_boundary_edge(e)) continue;
    xi[e] = p.add_variable();
    auto& row = p.rows[nf + e].coeffs;
    row.resize(p.variable_count());
    row[eps] = 2;
    row[xi[e]] = 1;
  }
  RelaxedReport rr;
  rr.boundary_slack.assign(surface.edge_count(), 0);
  const StandardForm sf = to_standard_form(p);
  const LpOutcome out = solve(sf.lp);
  auto& report = rr.report;
  if (out.status == LpStatus::Optimal && out.x[eps] > 0) {
    report.verdict = Verdict::Feasible;
    report.angles = angles_from(out.x, nc);
    for (int e = 0; e < surface.edge_count(); ++e) {
      if (xi[e] != -1) rr.boundary_slack[e] = out.x[xi[e]] + out.x[eps];
    }
    return rr;
  }
  report.verdict = Verdict::Infeasible;
  attach_certificate(surface, delta, out, report);
  for (int e = 0; e < delta.size(); ++e) {
    if (delta[e] <= 0) {
      report.violation = Violation::NonPositiveAngle;
      report.violating_edge = e;
      return rr;
    }
  }
  extract_violating(surface, delta, true, report);
  return rr;
}

FeasibilityReport cone_angle_problem(const TriangulatedSurface& surface,
                                     const std::vector<std::optional<Rational>>& vertex_sum, bool delaunay_cap) {
  if (static_cast<int>(vertex_sum.size()) != surface.vertex_count()) {
    throw std::invalid_argument("one optional angle sum per vertex expected");
  }
  GeneralProgram p;
  p.sense = Sense::Maximize;
  const int nc = surface.dart_count();
  for (int c = 0; c < nc; ++c) p.add_variable();
  const int eps = p.add_variable(VarKind::NonNegative, 1);
  for (int f = 0; f < surface.face_count(); ++f) {
    std::vector<Rational> row(eps + 1);
    for (int k = 0; k < 3; ++k) row[3 * f + k] = 1;
    row[eps] = 3;
    p.add_constraint(std::move(row), Relation::Equal, 1);
  }
  for (int v = 0; v < surface.vertex_count(); ++v) {
    if (!vertex_sum[v]) continue;
    std::vector<Rational> row(eps + 1);
    for (int c : surface.vertex_corners(v)) row[c] += 1;
    row[eps] = static_cast<int>(surface.vertex_corners(v).size());
    p.add_constraint(std::move(row), Relation::Equal, *vertex_sum[v]);
  }
  if (delaunay_cap) {
    for (int e = 0; e < surface.edge_count(); ++e) {
      if (surface.is_boundary_edge(e)) continue;
      std::vector<Rational> row(eps + 1);
      for (int d : surface.edge_darts(e)) row[d] = 1;
      row[eps] = 2;
      p.add_constraint(std::move(row), Relation::LessEqual, 1);
    }
  }
  const StandardForm sf = to_standard_form(p);
  const LpOutcome out = solve(sf.lp);
  FeasibilityReport report;
  if (out.status == LpStatus::Optimal && out.x[eps] > 0) {
    report.verdict = Verdict::Feasible;
    report.angles = angles_from(out.x, nc);
    return report;
  }
  report.verdict = Verdict::Infeasible;
  const auto& y = out.status == LpStatus::Infeasible ? out.farkas : out.dual;
  report.dual_u.assign(y.begin(), y.begin() + surface.face_count());
  report.dual_v.assign(y.begin() + surface.face_count(), y.end());
  return report;
}

// ==========================================================
// ================   Disk conditions      ==================
// ==========================================================

namespace {

void require_disk(const TriangulatedSurface& surface) {
  if (!surface.is_connected() || surface.euler_characteristic() != 1 || surface.boundary_component_count() != 1) {
    throw NotADisk("triangulation is not a disk");
  }
}

template <typename Num, typename Eq, typename Gt>
AndreevReport andreev_generic(const TriangulatedSurface& surface, const std::vector<Num>& delta,
                              const std::vector<Num>& lambda, Eq equal, Gt greater) {
  require_disk(surface);
  if (static_cast<int>(delta.size()) != surface.edge_count() ||
      static_cast<int>(lambda.size()) != surface.vertex_count()) {
    throw std::invalid_argument("angle vectors do not match the triangulation");
  }
  AndreevReport r;
  for (int v = 0; v < surface.vertex_count(); ++v) {
    Num s = 0;
    for (int e : surface.vertex_edges(v)) s += surface.endpoint_multiplicity(v, e) * (1 - delta[e]);
    if (surface.is_boundary_vertex(v)) {
      s += 1 - lambda[v];
      if (!equal(s, Num(2))) {
        r.clause = AndreevClause::BoundaryVertex;
        r.vertex = v;
        return r;
      }
    } else if (!equal(s, Num(2))) {
      r.clause = AndreevClause::InteriorVertex;
      r.vertex = v;
      return r;
    }
  }
  for (const auto& cut : minimal_noncoterminous_cutsets(surface, CutsetMode::Lenient)) {
    Num s = 0;
    for (int e : cut.edges) s += 1 - delta[e];
    auto fail = [&](AndreevClause clause, std::vector<bool> side) {
      r.clause = clause;
      r.cutset = cut.edges;
      r.side = std::move(side);
    };
    if (cut.closed_dual_curve) {
      if (!greater(s, Num(2))) {
        fail(AndreevClause::ClosedCurve, cut.side);
        return r;
      }
      continue;
    }
    for (bool which : {true, false}) {
      Num t = s;
      for (int v = 0; v < surface.vertex_count(); ++v) {
        if (surface.is_boundary_vertex(v) && cut.side[v] == which) t += 1 - lambda[v];
      }
      if (!greater(t, Num(2))) {
        std::vector<bool> side = cut.side;
        if (!which) side.flip();
        fail(AndreevClause::BoundarySplit, side);
        return r;
      }
    }
  }
  r.passed = true;
  return r;
}

}  // namespace

AndreevReport andreev_check(const TriangulatedSurface& surface, const AngleAssignment& delta,
                            const std::vector<Rational>& boundary_angle) {
  return andreev_generic<Rational>(
      surface, delta.values(), boundary_angle, [](const Rational& a, const Rational& b) { return a == b; },
      [](const Rational& a, const Rational& b) { return a > b; });
}

AndreevReport andreev_check(const TriangulatedSurface& surface, const std::vector<double>& delta,
                            const std::vector<double>& boundary_angle, double tolerance) {
  return andreev_generic<double>(
      surface, delta, boundary_angle, [tolerance](double a, double b) { return std::abs(a - b) <= tolerance; },
      [tolerance](double a, double b) { return a > b + tolerance; });
}

FeasibilityReport decide_planar_disk_lp(const TriangulatedSurface& surface, const AngleAssignment& delta,
                                        const std::vector<Rational>& boundary_angle) {
  require_disk(surface);
  if (static_cast<int>(boundary_angle.size()) != surface.vertex_count()) {
    throw std::invalid_argument("one boundary angle slot per vertex expected");
  }
  GeneralProgram p = angle_program(surface, delta);
  const int nc = surface.dart_count();
  for (int v = 0; v < surface.vertex_count(); ++v) {
    std::vector<Rational> row(nc + 1);
    for (int c : surface.vertex_corners(v)) row[c] += 1;
    row[nc] = static_cast<int>(surface.vertex_corners(v).size());
    p.add_constraint(std::move(row), Relation::Equal, surface.is_boundary_vertex(v) ? boundary_angle[v] : Rational(2));
  }
  const StandardForm sf = to_standard_form(p);
  const LpOutcome out = solve(sf.lp);
  FeasibilityReport report;
  if (out.status == LpStatus::Optimal && out.x[nc] > 0) {
    report.verdict = Verdict::Feasible;
    report.angles = angles_from(out.x, nc);
  } else {
    report.verdict = Verdict::Infeasible;
  }
  return report;
}

}  // namespace dihedra
