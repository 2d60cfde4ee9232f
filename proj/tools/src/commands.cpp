#include "dihedra/cli/commands.hpp"

#include <cstdio>
#include <sstream>

#include "dihedra/combgeo.hpp"
#include "dihedra/flow.hpp"
#include "dihedra/realization.hpp"
#include "dihedra/three_manifold.hpp"

namespace dihedra::cli {

Json rational_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& value) { return parse_rational(value.get<std::string>()); }

double round12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

namespace {

Json rationals(const std::vector<Rational>& values) {
  Json a = Json::array();
  for (const auto& v : values) a.push_back(rational_json(v));
  return a;
}

std::vector<Rational> rationals_from(const Json& a) {
  std::vector<Rational> out;
  for (const auto& v : a) out.push_back(rational_from_json(v));
  return out;
}

Json faces_json(const FaceSet& f) {
  Json a = Json::array();
  for (int t : f.members()) a.push_back(t);
  return a;
}

Json per_face(const std::vector<Rational>& corner) {
  Json a = Json::array();
  for (size_t f = 0; 3 * f < corner.size(); ++f) {
    a.push_back({rational_json(corner[3 * f]), rational_json(corner[3 * f + 1]), rational_json(corner[3 * f + 2])});
  }
  return a;
}

Json per_face(const std::vector<double>& corner) {
  Json a = Json::array();
  for (size_t f = 0; 3 * f < corner.size(); ++f) {
    a.push_back({round12(corner[3 * f]), round12(corner[3 * f + 1]), round12(corner[3 * f + 2])});
  }
  return a;
}

}  // namespace

Json to_json(const FeasibilityReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["violation"] = to_string(r.violation);
  if (r.angles) {
    j["min_angle"] = rational_json(r.angles->min_angle);
    j["corners"] = per_face(r.angles->corner);
  }
  if (r.psi) j["psi"] = rational_json(*r.psi);
  if (r.violating_edge >= 0) j["violating_edge"] = r.violating_edge;
  if (r.violating) {
    j["violating_faces"] = faces_json(*r.violating);
    j["violating_excess"] = rational_json(r.violating_excess);
  }
  if (!r.dual_u.empty() || !r.dual_v.empty()) {
    j["dual_u"] = rationals(r.dual_u);
    j["dual_v"] = rationals(r.dual_v);
    j["dual_objective"] = rational_json(r.dual_objective);
  }
  return j;
}

FeasibilityReport feasibility_from_json(const Json& j, int face_count) {
  FeasibilityReport r;
  r.verdict = j.at("verdict") == "feasible" ? Verdict::Feasible : Verdict::Infeasible;
  const std::string v = j.at("violation");
  for (auto kind : {Violation::None, Violation::NonPositiveAngle, Violation::TotalExcess, Violation::ProperSubset}) {
    if (v == to_string(kind)) r.violation = kind;
  }
  if (j.contains("corners")) {
    FaceAngleSolution s;
    s.min_angle = rational_from_json(j["min_angle"]);
    for (const auto& face : j["corners"]) {
      for (const auto& c : face) s.corner.push_back(rational_from_json(c));
    }
    r.angles = std::move(s);
  }
  if (j.contains("psi")) r.psi = rational_from_json(j["psi"]);
  if (j.contains("violating_edge")) r.violating_edge = j["violating_edge"];
  if (j.contains("violating_faces")) {
    std::vector<int> m = j["violating_faces"].get<std::vector<int>>();
    r.violating = FaceSet::from_members(face_count, m);
    r.violating_excess = rational_from_json(j["violating_excess"]);
  }
  if (j.contains("dual_u")) {
    r.dual_u = rationals_from(j["dual_u"]);
    r.dual_v = rationals_from(j["dual_v"]);
    r.dual_objective = rational_from_json(j["dual_objective"]);
  }
  return r;
}

namespace {

const TriangulatedSurface& need_surface(const ProblemFile& p) {
  if (!p.surface) throw UsageError("this command needs a surface file");
  return *p.surface;
}

const IdealTriangulation3& need_manifold(const ProblemFile& p) {
  if (!p.manifold) throw UsageError("this command needs a manifold file");
  return *p.manifold;
}

FlowOptions flow_options(const Options& o) {
  FlowOptions f;
  f.strict = !o.weak;
  if (o.epsilon == "auto") {
    f.policy = EpsilonPolicy::Auto;
  } else if (o.epsilon == "lcm") {
    f.policy = EpsilonPolicy::Lcm;
  } else {
    f.policy = EpsilonPolicy::Fixed;
    try {
      f.fixed_epsilon = parse_rational(o.epsilon);
    } catch (const std::invalid_argument&) {
      throw UsageError("--epsilon takes auto, lcm or p/q, not '" + o.epsilon + "'");
    }
  }
  return f;
}

Json flow_json(const FlowReport& fr) {
  Json j;
  j["epsilon"] = rational_json(fr.epsilon);
  j["max_flow"] = rational_json(fr.max_flow);
  j["required"] = rational_json(fr.required);
  j["networks_solved"] = fr.networks_solved;
  if (fr.cut) {
    j["cut"] = {{"f0", faces_json(fr.cut->f0)},
                {"f2", faces_json(fr.cut->f2)},
                {"f3", faces_json(fr.cut->f3)},
                {"capacity", rational_json(fr.cut->capacity)}};
  }
  return j;
}

CommandResult finish(Json doc, const FeasibilityReport& r) {
  doc["verdict"] = to_string(r.verdict);
  doc["report"] = to_json(r);
  return {r.feasible() ? 0 : 1, std::move(doc)};
}

CommandResult describe(const ProblemFile& p) {
  Json doc;
  doc["command"] = "describe";
  if (p.manifold) {
    const auto& m = *p.manifold;
    doc["kind"] = "manifold";
    doc["tets"] = m.tet_count();
    Json edges = Json::array();
    for (int e = 0; e < m.edge_count(); ++e) {
      Json slots = Json::array();
      for (auto [t, s] : m.edge_slots(e)) {
        slots.push_back(p.names[t] + ":" + std::to_string(kSlotVertices[s][0]) + std::to_string(kSlotVertices[s][1]));
      }
      edges.push_back({{"id", e}, {"valence", m.valence(e)}, {"slots", slots}});
    }
    doc["edges"] = edges;
    Json cusps = Json::array();
    for (int v = 0; v < m.vertex_count(); ++v) {
      cusps.push_back({{"id", v}, {"link_euler", m.vertex_link_euler(v)}});
    }
    doc["vertices"] = cusps;
    return {0, doc};
  }
  const auto& s = *p.surface;
  auto dart = [&](int d) { return p.names[d / 3] + ":" + std::to_string(d % 3); };
  doc["kind"] = "surface";
  doc["faces"] = s.face_count();
  doc["edge_count"] = s.edge_count();
  doc["vertex_count"] = s.vertex_count();
  doc["euler_characteristic"] = s.euler_characteristic();
  doc["boundary_components"] = s.boundary_component_count();
  doc["connected"] = s.is_connected();
  doc["simplicial"] = s.is_simplicial();
  Json edges = Json::array();
  for (int e = 0; e < s.edge_count(); ++e) {
    Json darts = Json::array();
    for (int d : s.edge_darts(e)) darts.push_back(dart(d));
    auto [a, b] = s.edge_endpoints(e);
    Json row = {{"id", e}, {"darts", darts}, {"endpoints", {a, b}}, {"boundary", s.is_boundary_edge(e)}};
    if (p.edge_angle[e]) row["angle"] = rational_json(*p.edge_angle[e]);
    edges.push_back(row);
  }
  doc["edges"] = edges;
  Json vertices = Json::array();
  for (int v = 0; v < s.vertex_count(); ++v) {
    Json corners = Json::array();
    for (int c : s.vertex_corners(v)) corners.push_back(dart(c));
    Json row = {{"id", v}, {"corners", corners}, {"degree", s.vertex_degree(v)}, {"boundary", s.is_boundary_vertex(v)}};
    if (p.cone[v]) row["cone"] = rational_json(*p.cone[v]);
    if (p.boundary_angle[v]) row["bangle"] = rational_json(*p.boundary_angle[v]);
    vertices.push_back(row);
  }
  doc["vertices"] = vertices;
  if (p.has_edge_angles()) {
    bool complete = true;
    for (const auto& a : p.edge_angle) complete = complete && a.has_value();
    if (complete) {
      const auto delta = p.angles();
      doc["angle_total"] = rational_json(delta.total());
      doc["delaunay"] = delta.is_delaunay(s);
    }
  }
  return {0, doc};
}

CommandResult check(const Options& o, const ProblemFile& p, Engine engine) {
  const auto& s = need_surface(p);
  Json doc;
  doc["command"] = o.command;
  if (p.has_cones()) {
    if (engine == Engine::Flow || engine == Engine::Oracle) {
      throw UsageError("cone prescriptions are only handled by the lp engine");
    }
    doc["engine"] = "lp";
    doc["problem"] = "cone";
    return finish(doc, cone_angle_problem(s, p.cone));
  }
  const auto delta = p.angles();
  if (engine == Engine::Default) engine = Engine::Flow;
  if (engine == Engine::Flow) {
    doc["engine"] = "flow";
    const auto fr = decide_flow(s, delta, flow_options(o));
    doc["flow"] = flow_json(fr);
    return finish(doc, fr.report);
  }
  if (engine == Engine::Lp) {
    doc["engine"] = "lp";
    return finish(doc, decide_lp(s, delta));
  }
  doc["engine"] = "oracle";
  try {
    return finish(doc, check_conditions_bruteforce(s, delta));
  } catch (const OracleLimitExceeded& e) {
    throw UsageError(std::string("oracle: ") + e.what());
  }
}

CommandResult check_oracle(const Options& o, const ProblemFile& p) {
  const auto& s = need_surface(p);
  const auto delta = p.angles();
  Json doc;
  doc["command"] = o.command;
  try {
    const auto brute = check_conditions_bruteforce(s, delta);
    const auto simple = check_conditions_simple(s, delta);
    const auto kappa = check_kappa_all(s, delta);
    doc["oracles"] = {{"bruteforce", to_string(brute.verdict)},
                      {"simple", to_string(simple.verdict)},
                      {"curvature", to_string(kappa.verdict)}};
    doc["agree"] = brute.verdict == simple.verdict && brute.verdict == kappa.verdict;
    return finish(doc, brute);
  } catch (const OracleLimitExceeded& e) {
    throw UsageError(std::string("oracle: ") + e.what());
  }
}

CommandResult flow(const Options& o, const ProblemFile& p) {
  const auto& s = need_surface(p);
  Json doc;
  doc["command"] = o.command;
  doc["strict"] = !o.weak;
  const auto fr = decide_flow(s, p.angles(), flow_options(o));
  doc["flow"] = flow_json(fr);
  return finish(doc, fr.report);
}

CommandResult lp(const Options& o, const ProblemFile& p) {
  const auto& s = need_surface(p);
  Json doc;
  doc["command"] = o.command;
  if (p.has_cones()) return check(o, p, Engine::Lp);
  if (p.has_boundary_angles()) {
    doc["problem"] = "planar-disk";
    return finish(doc, decide_planar_disk_lp(s, p.angles(), p.boundary_angles()));
  }
  return finish(doc, decide_lp(s, p.angles()));
}

// Decides, then refines the LP angles to the Euclidean solution.
CommandResult geometric(const Options& o, const ProblemFile& p, bool shear) {
  const auto& s = need_surface(p);
  const auto delta = p.angles();
  Json doc;
  doc["command"] = o.command;
  const bool planar = p.has_boundary_angles();
  const auto r = planar ? decide_planar_disk_lp(s, delta, p.boundary_angles()) : decide_lp(s, delta);
  if (!r.feasible()) return finish(doc, r);
  const auto corner = euclidean_refinement(s, delta, *r.angles);
  doc["corners_refined"] = per_face(corner);
  if (shear) {
    Json rows = Json::array();
    for (const auto& v : shear_coordinates(s, corner)) rows.push_back({{"edge", v.edge}, {"r", round12(v.r)}});
    doc["shear"] = rows;
    return finish(doc, r);
  }
  const auto dev = develop(s, corner);
  Json faces = Json::array();
  for (const auto& pts : dev.face_points) {
    Json row = Json::array();
    for (const auto& q : pts) {
      row.push_back(round12(q.real()));
      row.push_back(round12(q.imag()));
    }
    faces.push_back(row);
  }
  doc["face_points"] = faces;
  Json verts = Json::array();
  for (const auto& q : dev.vertex_points(s)) verts.push_back({round12(q.real()), round12(q.imag())});
  doc["vertex_points"] = verts;
  doc["max_length_mismatch"] = round12(dev.max_length_mismatch());
  doc["max_position_mismatch"] = round12(dev.max_position_mismatch());
  Json hol = Json::array();
  for (const auto& cycle : dual_cycle_basis(s)) {
    const auto h = holonomy(s, corner, cycle);
    hol.push_back({{"darts", cycle}, {"dilatation", round12(h.dilatation)}, {"rotation", round12(h.rotation)}});
  }
  doc["holonomy"] = hol;
  return finish(doc, r);
}

CommandResult stellate_command(const Options& o, const ProblemFile& p) {
  const auto& s = need_surface(p);
  const auto st = stellate(s);
  Json doc;
  doc["command"] = o.command;
  doc["faces"] = st.surface.face_count();
  doc["vertices"] = st.surface.vertex_count();
  doc["old_vertices"] = st.old_count;
  doc["new_vertices"] = st.new_count;
  Json kinds = Json::array();
  for (int v = 0; v < st.surface.vertex_count(); ++v) {
    kinds.push_back({{"vertex", v}, {"kind", st.is_new[v] ? "new" : "old"}, {"source", st.source[v]}});
  }
  doc["classification"] = kinds;
  doc["stellated_file"] = write_problem(st.surface);
  const bool sphere = s.is_closed() && s.is_connected() && s.euler_characteristic() == 2;
  if (!sphere) return {0, doc};
  const auto cr = positively_curved_realizability(st.surface);
  Rational bound = Rational(st.surface.vertex_count() - 2) / st.old_count;
  doc["average_bound"] = rational_json(bound);
  doc["bound_contradiction"] = bound >= 2;
  doc["margin"] = rational_json(cr.margin);
  doc["verdict"] = to_string(cr.report.verdict);
  doc["report"] = to_json(cr.report);
  if (cr.report.feasible()) doc["cone_angles"] = rationals(cr.cone_angle);
  doc["dual_w"] = rationals(cr.dual_w);
  return {cr.report.feasible() ? 0 : 1, doc};
}

Json certificate_json(const DualCertificate3& c) {
  return {{"v_tet", rationals(c.v_tet)},
          {"v_edge", rationals(c.v_edge)},
          {"objective", rational_json(c.objective)},
          {"constraints_hold", c.constraints_hold()}};
}

CommandResult m3_check(const Options& o, const ProblemFile& p) {
  const auto& m = need_manifold(p);
  const auto hr = linear_hyperbolic_lp(m, true);
  Json doc;
  doc["command"] = o.command;
  doc["structure"] = to_string(hr.kind);
  doc["epsilon"] = rational_json(hr.epsilon);
  if (hr.angles) {
    Json a = Json::array();
    for (const auto& t : hr.angles->angle) a.push_back({rational_json(t[0]), rational_json(t[1]), rational_json(t[2])});
    doc["angles"] = a;
    doc["verified"] = hr.angles->verify(m, hr.kind == Structure3::Strict);
  }
  if (hr.certificate) doc["certificate"] = certificate_json(*hr.certificate);
  const bool pass = hr.kind == Structure3::Strict || (o.weak && hr.kind == Structure3::Weak);
  return {pass ? 0 : 1, doc};
}

CommandResult m3_normal(const Options& o, const ProblemFile& p) {
  const auto& m = need_manifold(p);
  Json doc;
  doc["command"] = o.command;
  Json cusps = Json::array();
  for (int v = 0; v < m.vertex_count(); ++v) {
    const auto ns = vertex_linking_surface(m, v);
    const auto cert = certificate_from_normal_surface(m, ns);
    bool tight = true;
    for (const auto& r : cert.residual) {
      for (const auto& x : r) tight = tight && x == 0;
    }
    Json row = {{"vertex", v}, {"chi", rational_json(normal_chi(m, ns))}, {"tight", tight}};
    row["certificate"] = certificate_json(cert);
    cusps.push_back(row);
  }
  doc["vertex_links"] = cusps;
  if (o.max_count < 1) throw UsageError("--max-count must be at least 1");
  const auto vectors = enumerate_normal_vectors(m, o.max_count);
  const auto hx = hext_check(m, vectors);
  doc["enumerated"] = vectors.size();
  int weak = 0, strict = 0;
  for (const auto& e : hx.entries) {
    weak += e.obstructs_weak;
    strict += e.obstructs_strict;
  }
  doc["obstruct_weak"] = weak;
  doc["obstruct_strict"] = strict;
  doc["lp"] = to_string(hx.lp);
  doc["consistent"] = hx.consistent;
  return {hx.consistent ? 0 : 1, doc};
}

Json error_json(const std::string& kind, const std::string& message, int line = 0, int column = 0) {
  Json e = {{"kind", kind}, {"message", message}};
  if (line > 0) {
    e["line"] = line;
    e["column"] = column;
  }
  return e;
}

}  // namespace

CommandResult run_command(const Options& o, const ProblemFile& p) {
  const auto& c = o.command;
  if (c == "describe") return describe(p);
  if (c == "check") return check(o, p, o.engine);
  if (c == "check-oracle") return check_oracle(o, p);
  if (c == "flow") return flow(o, p);
  if (c == "lp") return lp(o, p);
  if (c == "realize") return geometric(o, p, false);
  if (c == "shear") return geometric(o, p, true);
  if (c == "stellate") return stellate_command(o, p);
  if (c == "m3-check") return m3_check(o, p);
  if (c == "m3-normal") return m3_normal(o, p);
  throw UsageError("unknown command '" + c + "'");
}

CommandResult run_file(const Options& o, const std::string& path) {
  CommandResult r;
  try {
    r = run_command(o, parse_problem_file(path));
  } catch (const ParseError& e) {
    r = {2, {{"error", error_json(e.kind(), e.message(), e.line(), e.column())}}};
  } catch (const UsageError& e) {
    r = {2, {{"error", error_json("usage", e.what())}}};
  } catch (const MissingData& e) {
    r = {2, {{"error", error_json("missing", e.what())}}};
  } catch (const std::exception& e) {
    r = {2, {{"error", error_json("input", e.what())}}};
  }
  Json doc = {{"file", path}};
  doc.update(r.doc);
  r.doc = std::move(doc);
  return r;
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  return v.dump();
}

bool is_scalar(const Json& v) { return !v.is_array() && !v.is_object(); }

bool scalar_array(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v) {
    if (!is_scalar(x)) return false;
  }
  return true;
}

void render_object(std::ostringstream& out, const Json& obj, int indent);

void render_entry(std::ostringstream& out, const std::string& key, const Json& v, int indent) {
  const std::string pad(indent, ' ');
  if (is_scalar(v)) {
    out << pad << key << ": " << scalar_text(v) << "\n";
  } else if (scalar_array(v)) {
    out << pad << key << ":";
    if (v.empty()) out << " -";
    for (const auto& x : v) out << " " << scalar_text(x);
    out << "\n";
  } else if (v.is_array()) {
    out << pad << key << ":\n";
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_object()) {
        out << pad << "  [" << i << "]\n";
        render_object(out, v[i], indent + 4);
      } else {
        render_entry(out, std::to_string(i), v[i], indent + 2);
      }
    }
  } else {
    out << pad << key << ":\n";
    render_object(out, v, indent + 2);
  }
}

void render_object(std::ostringstream& out, const Json& obj, int indent) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (it.key() == "stellated_file" && it.value().is_string()) {
      // a whole problem file, printed as is
      out << std::string(indent, ' ') << "stellated_file:\n";
      std::istringstream lines(it.value().get<std::string>());
      std::string line;
      while (std::getline(lines, line)) out << std::string(indent + 2, ' ') << line << "\n";
      continue;
    }
    render_entry(out, it.key(), it.value(), indent);
  }
}

}  // namespace

std::string render_text(const Json& doc) {
  std::ostringstream out;
  render_object(out, doc, 0);
  return out.str();
}

std::string render(const CommandResult& result, Emit emit) {
  if (emit == Emit::Json) return result.doc.dump(2) + "\n";
  return render_text(result.doc);
}

}  // namespace dihedra::cli
