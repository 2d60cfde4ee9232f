#include "dihedra/cli/problem.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace dihedra::cli {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : "") +
                         ": " + what),
      message_(what),
      line_(line),
      column_(column) {}

bool ProblemFile::has_edge_angles() const {
  for (const auto& a : edge_angle) {
    if (a) return true;
  }
  return false;
}

bool ProblemFile::has_cones() const {
  for (const auto& a : cone) {
    if (a) return true;
  }
  return false;
}

bool ProblemFile::has_boundary_angles() const {
  for (const auto& a : boundary_angle) {
    if (a) return true;
  }
  return false;
}

AngleAssignment ProblemFile::angles() const {
  if (!surface) throw MissingData("not a surface problem");
  std::vector<Rational> d;
  for (int e = 0; e < surface->edge_count(); ++e) {
    if (!edge_angle[e]) {
      const int dart = surface->edge_darts(e)[0];
      throw MissingData("edge " + std::to_string(e) + " (" + names[dart / 3] + ":" + std::to_string(dart % 3) +
                        ") has no angle");
    }
    d.push_back(*edge_angle[e]);
  }
  return AngleAssignment(*surface, std::move(d));
}

std::vector<Rational> ProblemFile::boundary_angles() const {
  std::vector<Rational> out;
  for (const auto& a : boundary_angle) out.push_back(a.value_or(0));
  return out;
}

namespace {

struct Token {
  std::string text;
  int column = 0;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    Line line{number, {}};
    size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i == raw.size()) break;
      const size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

bool parse_int(const std::string& s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') return false;
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  ProblemFile run() {
    if (lines_.empty()) throw SyntaxError("missing header (surface 2 or manifold 3)", 1, 1);
    const auto& head = lines_[0];
    const std::string dim = head.tokens.size() > 1 ? head.tokens[1].text : "";
    if (head.tokens.size() == 2 && head.tokens[0].text == "surface" && dim == "2") {
      out_.kind = ProblemFile::Kind::Surface;
      surface();
    } else if (head.tokens.size() == 2 && head.tokens[0].text == "manifold" && dim == "3") {
      out_.kind = ProblemFile::Kind::Manifold;
      manifold();
    } else {
      throw SyntaxError("expected header 'surface 2' or 'manifold 3'", head.number, head.tokens[0].column);
    }
    return std::move(out_);
  }

 private:
  void arity(const Line& l, size_t n) {
    if (l.tokens.size() != n) {
      throw SyntaxError("'" + l.tokens[0].text + "' takes " + std::to_string(n - 1) + " arguments", l.number,
                        l.tokens[0].column);
    }
  }

  // Collects `keyword <id>` declarations before anything refers to them.
  void declare(const std::string& keyword) {
    for (size_t k = 1; k < lines_.size(); ++k) {
      const auto& l = lines_[k];
      if (l.tokens[0].text != keyword) continue;
      arity(l, 2);
      const auto& t = l.tokens[1];
      if (!valid_id(t.text)) throw SyntaxError("bad id '" + t.text + "'", l.number, t.column);
      if (!index_.emplace(t.text, static_cast<int>(out_.names.size())).second) {
        throw DuplicateDeclaration(keyword + " '" + t.text + "' declared twice", l.number, t.column);
      }
      out_.names.push_back(t.text);
    }
  }

  // <id>:<n> with n in [0, limit)
  std::pair<int, int> reference(const Line& l, const Token& t, int limit, const char* what) {
    const auto colon = t.text.find(':');
    if (colon == std::string::npos) throw SyntaxError("expected <id>:<" + std::string(what) + ">", l.number, t.column);
    const std::string id = t.text.substr(0, colon);
    int n = 0;
    if (!parse_int(t.text.substr(colon + 1), n)) {
      throw SyntaxError(std::string(what) + " must be an integer", l.number, t.column + static_cast<int>(colon) + 1);
    }
    auto it = index_.find(id);
    if (it == index_.end()) throw UnresolvedReference("unknown id '" + id + "'", l.number, t.column);
    if (n < 0 || n >= limit) {
      throw UnresolvedReference(std::string(what) + " " + std::to_string(n) + " out of range", l.number,
                                t.column + static_cast<int>(colon) + 1);
    }
    return {it->second, n};
  }

  Rational rational(const Line& l, const Token& t) {
    try {
      return parse_rational(t.text);
    } catch (const std::invalid_argument&) {
      throw SyntaxError("bad rational '" + t.text + "'", l.number, t.column);
    }
  }

  int vertex(const Line& l, const Token& t) {
    std::string s = t.text;
    if (!s.empty() && s[0] == 'v') s.erase(0, 1);
    int v = 0;
    if (!parse_int(s, v)) throw SyntaxError("bad vertex id '" + t.text + "'", l.number, t.column);
    if (v < 0 || v >= out_.surface->vertex_count()) {
      throw UnresolvedReference("vertex " + std::to_string(v) + " does not exist", l.number, t.column);
    }
    return v;
  }

  void set_once(std::optional<Rational>& slot, const Rational& value, const Line& l, const std::string& what) {
    if (slot && *slot != value) {
      throw DuplicateDeclaration(what + " already set to " + to_string(*slot), l.number, l.tokens[0].column);
    }
    slot = value;
  }

  void surface() {
    declare("face");
    const int nf = static_cast<int>(out_.names.size());
    std::vector<Gluing> gluings;
    std::vector<int> glued_at(3 * nf, 0);
    for (size_t k = 1; k < lines_.size(); ++k) {
      const auto& l = lines_[k];
      const auto& key = l.tokens[0].text;
      if (key == "face" || key == "angle" || key == "cone" || key == "bangle") continue;
      if (key != "glue") throw SyntaxError("unknown keyword '" + key + "'", l.number, l.tokens[0].column);
      arity(l, 3);
      auto [f, i] = reference(l, l.tokens[1], 3, "slot");
      auto [g, j] = reference(l, l.tokens[2], 3, "slot");
      const int a = 3 * f + i, b = 3 * g + j;
      if (a == b) throw SyntaxError("dart glued to itself", l.number, l.tokens[2].column);
      for (int d : {a, b}) {
        if (glued_at[d] != 0) {
          throw DuplicateDeclaration(out_.names[d / 3] + ":" + std::to_string(d % 3) + " already glued on line " +
                                         std::to_string(glued_at[d]),
                                     l.number, l.tokens[d == a ? 1 : 2].column);
        }
        glued_at[d] = l.number;
      }
      gluings.push_back({{f, i}, {g, j}});
    }
    out_.surface = TriangulatedSurface::build(nf, gluings);
    const auto& s = *out_.surface;
    out_.edge_angle.assign(s.edge_count(), std::nullopt);
    out_.cone.assign(s.vertex_count(), std::nullopt);
    out_.boundary_angle.assign(s.vertex_count(), std::nullopt);
    for (size_t k = 1; k < lines_.size(); ++k) {
      const auto& l = lines_[k];
      const auto& key = l.tokens[0].text;
      if (key == "angle") {
        arity(l, 3);
        auto [f, i] = reference(l, l.tokens[1], 3, "slot");
        const int e = s.edge_of(3 * f + i);
        set_once(out_.edge_angle[e], rational(l, l.tokens[2]), l, "angle of edge " + std::to_string(e));
      } else if (key == "cone" || key == "bangle") {
        arity(l, 3);
        const int v = vertex(l, l.tokens[1]);
        auto& slot = key == "cone" ? out_.cone[v] : out_.boundary_angle[v];
        set_once(slot, rational(l, l.tokens[2]), l, key + " of vertex " + std::to_string(v));
      }
    }
  }

  void manifold() {
    declare("tet");
    const int nt = static_cast<int>(out_.names.size());
    std::vector<FaceGluing3> gluings;
    std::vector<int> glued_at(4 * nt, 0);
    for (size_t k = 1; k < lines_.size(); ++k) {
      const auto& l = lines_[k];
      const auto& key = l.tokens[0].text;
      if (key == "tet") continue;
      if (key != "glueface") throw SyntaxError("unknown keyword '" + key + "'", l.number, l.tokens[0].column);
      arity(l, 5);
      if (l.tokens[3].text != "perm") throw SyntaxError("expected 'perm'", l.number, l.tokens[3].column);
      auto [t, f] = reference(l, l.tokens[1], 4, "face");
      auto [u, g] = reference(l, l.tokens[2], 4, "face");
      const auto& pt = l.tokens[4];
      // vertices of face f in increasing order go to the listed vertices of face g
      FaceGluing3 gl{t, f, u, g, {}};
      gl.perm[f] = g;
      std::vector<bool> seen(4, false);
      if (pt.text.size() != 3) throw SyntaxError("perm takes three vertex digits", l.number, pt.column);
      int pos = 0;
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        const char c = pt.text[pos];
        const int w = c - '0';
        if (c < '0' || c > '3' || w == g || seen[w]) {
          throw SyntaxError("perm must list the vertices of face " + std::to_string(g), l.number, pt.column + pos);
        }
        seen[w] = true;
        gl.perm[v] = w;
        ++pos;
      }
      for (int d : {4 * t + f, 4 * u + g}) {
        if (glued_at[d] != 0) {
          throw DuplicateDeclaration(out_.names[d / 4] + ":" + std::to_string(d % 4) + " already glued on line " +
                                         std::to_string(glued_at[d]),
                                     l.number, l.tokens[d == 4 * t + f ? 1 : 2].column);
        }
        glued_at[d] = l.number;
      }
      gluings.push_back(gl);
    }
    out_.manifold = IdealTriangulation3::build(nt, gluings);
  }

  std::vector<Line> lines_;
  std::map<std::string, int> index_;
  ProblemFile out_;
};

}  // namespace

ProblemFile parse_problem(std::istream& in) { return Parser(tokenize(in)).run(); }

ProblemFile parse_problem_text(const std::string& text) {
  std::istringstream in(text);
  return parse_problem(in);
}

ProblemFile parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_problem(in);
}

namespace {

std::string name_of(const std::vector<std::string>& names, int k, const char* prefix) {
  return k < static_cast<int>(names.size()) ? names[k] : prefix + std::to_string(k);
}

}  // namespace

std::string write_problem(const TriangulatedSurface& surface, const std::vector<std::optional<Rational>>& edge_angle,
                          const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "surface 2\n";
  for (int f = 0; f < surface.face_count(); ++f) out << "face " << name_of(names, f, "f") << "\n";
  auto dart = [&](int d) { return name_of(names, d / 3, "f") + ":" + std::to_string(d % 3); };
  for (int d = 0; d < surface.dart_count(); ++d) {
    const int m = surface.mate(d);
    if (m > d) out << "glue " << dart(d) << " " << dart(m) << "\n";
  }
  for (int e = 0; e < static_cast<int>(edge_angle.size()); ++e) {
    if (edge_angle[e]) out << "angle " << dart(surface.edge_darts(e)[0]) << " " << to_string(*edge_angle[e]) << "\n";
  }
  return out.str();
}

std::string write_problem(const IdealTriangulation3& manifold, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "manifold 3\n";
  for (int t = 0; t < manifold.tet_count(); ++t) out << "tet " << name_of(names, t, "t") << "\n";
  for (const auto& g : manifold.gluings()) {
    out << "glueface " << name_of(names, g.tet, "t") << ":" << g.face << " " << name_of(names, g.other_tet, "t") << ":"
        << g.other_face << " perm ";
    for (int v = 0; v < 4; ++v) {
      if (v != g.face) out << g.perm[v];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace dihedra::cli
