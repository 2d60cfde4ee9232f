#include "dihedra/flow.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>

namespace dihedra {

// ==========================================================
// ================      Networks          ==================
// ==========================================================

namespace {

FlowNetwork build_network(const TriangulatedSurface& surface, const AngleAssignment& delta, const Rational& eps) {
  FlowNetwork net;
  net.face_count = surface.face_count();
  net.edge_count = surface.edge_count();
  net.node_count = 2 + net.face_count + net.edge_count;
  net.source = 0;
  net.sink = net.node_count - 1;
  net.epsilon = eps;
  for (int f = 0; f < net.face_count; ++f) net.arcs.push_back({net.source, net.face_node(f), 1 - 3 * eps, 1, f});
  for (int d = 0; d < surface.dart_count(); ++d) {
    net.arcs.push_back({net.face_node(d / 3), net.edge_node(surface.edge_of(d)), 1 - eps, 2, d});
  }
  for (int e = 0; e < net.edge_count; ++e) {
    const int n = static_cast<int>(surface.edge_darts(e).size());
    net.arcs.push_back({net.edge_node(e), net.sink, delta[e] - n * eps, 3, e});
  }
  return net;
}

}  // namespace

FlowNetwork build_N1(const TriangulatedSurface& surface, const AngleAssignment& delta) {
  return build_network(surface, delta, 0);
}

FlowNetwork build_N2(const TriangulatedSurface& surface, const AngleAssignment& delta, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > Rational(1, 3)) {
    throw EpsilonOutOfRange("epsilon " + to_string(epsilon) + " outside (0, 1/3]");
  }
  FlowNetwork net = build_network(surface, delta, epsilon);
  for (const auto& a : net.arcs) {
    if (a.capacity < 0) {
      throw EpsilonOutOfRange("epsilon " + to_string(epsilon) + " leaves a negative capacity on edge " +
                              std::to_string(a.item));
    }
  }
  return net;
}

// ==========================================================
// ================      Dinic             ==================
// ==========================================================

namespace {

template <typename Cap>
class Dinic {
 public:
  Dinic(int nodes, int source, int sink) : adj_(nodes), level_(nodes), next_(nodes), source_(source), sink_(sink) {}

  int add_arc(int from, int to, Cap cap) {
    adj_[from].push_back(static_cast<int>(to_.size()));
    to_.push_back(to);
    cap_.push_back(cap);
    adj_[to].push_back(static_cast<int>(to_.size()));
    to_.push_back(from);
    cap_.push_back(Cap(0));
    return static_cast<int>(to_.size()) - 2;
  }

  Cap run() {
    Cap total(0);
    while (bfs()) {
      std::fill(next_.begin(), next_.end(), 0);
      for (;;) {
        Cap pushed = augment();
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  // Flow on a forward arc = residual capacity of its reverse.
  const Cap& reverse_residual(int arc) const { return cap_[arc ^ 1]; }

  std::vector<bool> reachable() const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<int> stack{source_};
    seen[source_] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int a : adj_[u]) {
        if (cap_[a] > 0 && !seen[to_[a]]) {
          seen[to_[a]] = true;
          stack.push_back(to_[a]);
        }
      }
    }
    return seen;
  }

 private:
  bool bfs() {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[source_] = 0;
    q.push(source_);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int a : adj_[u]) {
        if (cap_[a] > 0 && level_[to_[a]] < 0) {
          level_[to_[a]] = level_[u] + 1;
          q.push(to_[a]);
        }
      }
    }
    return level_[sink_] >= 0;
  }

  // One augmenting path in the level graph, iterative to keep the stack flat.
  Cap augment() {
    std::vector<int> path;
    int u = source_;
    for (;;) {
      if (u == sink_) {
        Cap bottleneck = cap_[path.front()];
        for (int a : path) {
          if (cap_[a] < bottleneck) bottleneck = cap_[a];
        }
        for (int a : path) {
          cap_[a] -= bottleneck;
          cap_[a ^ 1] += bottleneck;
        }
        return bottleneck;
      }
      bool advanced = false;
      for (int& i = next_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
        const int a = adj_[u][i];
        const int v = to_[a];
        if (cap_[a] > 0 && level_[v] == level_[u] + 1) {
          path.push_back(a);
          u = v;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      if (u == source_) return Cap(0);
      level_[u] = -1;  // dead end
      const int a = path.back();
      path.pop_back();
      u = to_[a ^ 1];
      ++next_[u];
    }
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> to_;
  std::vector<Cap> cap_;
  std::vector<int> level_;
  std::vector<int> next_;
  int source_, sink_;
};

template <typename Cap, typename Convert, typename Back>
FlowOutcome run_dinic(const FlowNetwork& net, Convert convert, Back back) {
  Dinic<Cap> dinic(net.node_count, net.source, net.sink);
  std::vector<int> ids;
  ids.reserve(net.arcs.size());
  for (const auto& a : net.arcs) ids.push_back(dinic.add_arc(a.from, a.to, convert(a.capacity)));
  FlowOutcome out;
  out.value = back(dinic.run());
  for (int id : ids) out.flow.push_back(back(dinic.reverse_residual(id)));
  out.source_side = dinic.reachable();
  return out;
}

}  // namespace

FlowOutcome max_flow(const FlowNetwork& net) {
  std::vector<Rational> caps;
  for (const auto& a : net.arcs) {
    if (a.capacity < 0) throw std::invalid_argument("negative capacity");
    caps.push_back(a.capacity);
  }
  const mpz_class denom = common_denominator(caps);
  mpz_class total = 0;
  for (const auto& c : caps) total += mpz_class(c * denom);
  FlowOutcome out;
  if (total < mpz_class(std::numeric_limits<std::int64_t>::max() / 4)) {
    const long d = denom.get_si();
    out = run_dinic<std::int64_t>(
        net, [&](const Rational& c) { return static_cast<std::int64_t>(mpz_class(c * denom).get_si()); },
        [&](std::int64_t v) { return make_rational(v, d); });
    out.integral_scaling = true;
  } else {
    out = run_dinic<Rational>(net, [](const Rational& c) { return c; }, [](const Rational& v) { return v; });
  }
  out.cut_capacity = 0;
  for (int i = 0; i < static_cast<int>(net.arcs.size()); ++i) {
    const auto& a = net.arcs[i];
    if (out.source_side[a.from] && !out.source_side[a.to]) {
      out.cut_arcs.push_back(i);
      out.cut_capacity += a.capacity;
    }
  }
  if (out.cut_capacity != out.value) throw std::logic_error("max flow differs from residual cut capacity");
  return out;
}

// ==========================================================
// ================      Cuts              ==================
// ==========================================================

CutDecomposition cut_capacity_decomposition(const FlowNetwork& net, const FlowOutcome& outcome) {
  CutDecomposition cd{FaceSet(net.face_count), FaceSet(net.face_count), FaceSet(net.face_count), 0};
  std::vector<std::vector<int>> face_edges(net.face_count);
  std::vector<int> edge_darts(net.edge_count, 0);
  std::vector<Rational> sink_capacity(net.edge_count);
  for (const auto& a : net.arcs) {
    if (a.level == 2) {
      face_edges[a.from - 1].push_back(a.to - 1 - net.face_count);
    } else if (a.level == 3) {
      sink_capacity[a.item] = a.capacity;
    }
  }
  const auto& side = outcome.source_side;
  for (int f = 0; f < net.face_count; ++f) {
    if (!side[net.face_node(f)]) {
      cd.f0.insert(f);
      continue;
    }
    int inside = 0;
    for (int e : face_edges[f]) inside += side[net.edge_node(e)];
    if (inside == 0) {
      cd.f2.insert(f);
    } else if (inside == static_cast<int>(face_edges[f].size())) {
      cd.f3.insert(f);
    } else {
      throw MalformedCut("face " + std::to_string(f) + " has edges on both sides of the cut");
    }
  }
  for (int i : outcome.cut_arcs) cd.capacity += net.arcs[i].capacity;
  const Rational& eps = net.epsilon;
  Rational expected = (1 - 3 * eps) * cd.f0.size() + 3 * (1 - eps) * cd.f2.size();
  std::vector<bool> counted(net.edge_count, false);
  for (int f : cd.f3.members()) {
    for (int e : face_edges[f]) {
      if (!counted[e]) expected += sink_capacity[e];
      counted[e] = true;
    }
  }
  // edge nodes on the source side outside E(F3) would add capacity the formula ignores
  for (int e = 0; e < net.edge_count; ++e) {
    if (side[net.edge_node(e)] && !counted[e]) expected += sink_capacity[e];
  }
  if (expected != cd.capacity) {
    throw MalformedCut("cut capacity " + to_string(cd.capacity) + " differs from decomposition " +
                       to_string(expected));
  }
  return cd;
}

// ==========================================================
// ================      Decision          ==================
// ==========================================================

namespace {

// Moves every edge of a source-side face to the source side. With all angles
// at most 1 this never raises the capacity, so the cut stays minimal and no
// face is mixed.
void close_cut(const FlowNetwork& net, FlowOutcome& outcome) {
  for (const auto& a : net.arcs) {
    if (a.level == 2 && outcome.source_side[a.from]) outcome.source_side[a.to] = true;
  }
  outcome.cut_arcs.clear();
  outcome.cut_capacity = 0;
  for (int i = 0; i < static_cast<int>(net.arcs.size()); ++i) {
    const auto& a = net.arcs[i];
    if (outcome.source_side[a.from] && !outcome.source_side[a.to]) {
      outcome.cut_arcs.push_back(i);
      outcome.cut_capacity += a.capacity;
    }
  }
}

// Constant part and eps coefficient of the cut capacity, c = a - b eps.
std::pair<Rational, Rational> cut_line(const TriangulatedSurface& surface, const AngleAssignment& delta,
                                       const FlowNetwork& net, const FlowOutcome& outcome) {
  Rational a = 0, b = 0;
  for (int i : outcome.cut_arcs) {
    const auto& arc = net.arcs[i];
    switch (arc.level) {
      case 1: a += 1; b += 3; break;
      case 2: a += 1; b += 1; break;
      case 3:
        a += delta[arc.item];
        b += static_cast<int>(surface.edge_darts(arc.item).size());
        break;
      default: break;
    }
  }
  return {a, b};
}

FaceAngleSolution angles_from_flow(const FlowNetwork& net, const FlowOutcome& outcome, int darts) {
  FaceAngleSolution s;
  s.corner.assign(darts, net.epsilon);
  for (int i = 0; i < static_cast<int>(net.arcs.size()); ++i) {
    if (net.arcs[i].level == 2) s.corner[net.arcs[i].item] += outcome.flow[i];
  }
  s.min_angle = *std::min_element(s.corner.begin(), s.corner.end());
  return s;
}

// Violating face set from an infeasible cut: the source-side faces.
void attach_cut(const TriangulatedSurface& surface, const AngleAssignment& delta, const FlowNetwork& net,
                FlowOutcome& outcome, bool delaunay, FlowReport& fr) {
  if (delaunay) close_cut(net, outcome);
  try {
    fr.cut = cut_capacity_decomposition(net, outcome);
  } catch (const MalformedCut&) {
    fr.cut.reset();
  }
  FaceSet side(surface.face_count());
  for (int f = 0; f < surface.face_count(); ++f) {
    if (outcome.source_side[net.face_node(f)]) side.insert(f);
  }
  auto& r = fr.report;
  if (side.empty()) return;
  const Rational x = excess(surface, side, delta);
  if (side.is_full()) {
    if (x != 0) {
      r.violation = Violation::TotalExcess;
      r.violating = side;
      r.violating_excess = x;
    }
    return;
  }
  if (x <= 0) {
    r.violation = Violation::ProperSubset;
    r.violating = side;
    r.violating_excess = x;
  }
}

}  // namespace

FlowReport decide_flow(const TriangulatedSurface& surface, const AngleAssignment& delta, const FlowOptions& options) {
  if (!surface.is_connected()) throw std::invalid_argument("surface must be connected");
  FlowReport fr;
  auto& r = fr.report;
  r.verdict = Verdict::Infeasible;
  const int nf = surface.face_count();
  for (int e = 0; e < delta.size(); ++e) {
    if (delta[e] <= 0) {
      r.violation = Violation::NonPositiveAngle;
      r.violating_edge = e;
      return fr;
    }
  }
  bool delaunay = true;
  for (const auto& d : delta.values()) delaunay = delaunay && d <= 1;

  // N1: a weak solution exists iff the flow fills every face and the total is right
  FlowNetwork n1 = build_N1(surface, delta);
  FlowOutcome o1 = max_flow(n1);
  ++fr.networks_solved;
  fr.epsilon = 0;
  fr.max_flow = o1.value;
  fr.required = nf;
  const Rational total = delta.total();
  if (o1.value != nf || total != nf) {
    if (total != nf) {
      r.violation = Violation::TotalExcess;
      r.violating = FaceSet::all(nf);
      r.violating_excess = total - nf;
      if (delaunay) close_cut(n1, o1);
      try {
        fr.cut = cut_capacity_decomposition(n1, o1);
      } catch (const MalformedCut&) {
      }
    } else {
      attach_cut(surface, delta, n1, o1, delaunay, fr);
    }
    return fr;
  }
  if (!options.strict) {
    r.verdict = Verdict::Feasible;
    r.angles = angles_from_flow(n1, o1, surface.dart_count());
    return fr;
  }

  // largest eps for which N2 has nonnegative capacities
  Rational ceiling(1, 3);
  for (int e = 0; e < surface.edge_count(); ++e) {
    const int n = static_cast<int>(surface.edge_darts(e).size());
    ceiling = std::min(ceiling, Rational(delta[e] / n));
  }

  Rational eps;
  switch (options.policy) {
    case EpsilonPolicy::Auto: eps = ceiling; break;
    case EpsilonPolicy::Lcm: eps = Rational(1) / Rational(common_denominator(delta.values())); break;
    case EpsilonPolicy::Fixed: eps = options.fixed_epsilon; break;
  }
  if (eps <= 0 || eps > Rational(1, 3)) throw EpsilonOutOfRange("epsilon " + to_string(eps) + " outside (0, 1/3]");
  if (eps > ceiling) {
    // some edge cannot hold angles of size eps
    fr.epsilon = eps;
    return fr;
  }

  for (;;) {
    FlowNetwork n2 = build_N2(surface, delta, eps);
    FlowOutcome o2 = max_flow(n2);
    ++fr.networks_solved;
    fr.epsilon = eps;
    fr.max_flow = o2.value;
    fr.required = nf * (1 - 3 * eps);
    if (o2.value == fr.required) {
      r.verdict = Verdict::Feasible;
      r.angles = angles_from_flow(n2, o2, surface.dart_count());
      return fr;
    }
    if (options.policy != EpsilonPolicy::Auto) {
      attach_cut(surface, delta, n2, o2, delaunay, fr);
      return fr;
    }
    // the cut's capacity a - b eps must reach nf (1 - 3 eps); its root is the next eps
    const auto [a, b] = cut_line(surface, delta, n2, o2);
    const Rational next = (a - nf) / (b - 3 * nf);
    if (next >= eps) throw std::logic_error("parametric search failed to decrease epsilon");
    if (next <= 0) {
      // only eps = 0 works: the cut at eps -> 0 is a face set of zero excess
      FlowOutcome at_zero = o2;
      attach_cut(surface, delta, n1, at_zero, delaunay, fr);
      fr.epsilon = 0;
      if (!r.violating) {
        // cut was not normalizable (some angle above 1); ask the LP for a witness
        auto lp = decide_lp(surface, delta);
        r.violation = lp.violation;
        r.violating = lp.violating;
        r.violating_excess = lp.violating_excess;
      }
      return fr;
    }
    eps = next;
  }
}

}  // namespace dihedra
