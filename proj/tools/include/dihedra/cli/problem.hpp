#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dihedra/angles.hpp"
#include "dihedra/surface.hpp"
#include "dihedra/three_manifold.hpp"

namespace dihedra::cli {

// Problem file errors carry a 1-based position; column 0 means the whole line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  virtual const char* kind() const = 0;

 private:
  std::string message_;
  int line_;
  int column_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
  const char* kind() const override { return "syntax"; }
};

class UnresolvedReference : public ParseError {
 public:
  using ParseError::ParseError;
  const char* kind() const override { return "unresolved"; }
};

class DuplicateDeclaration : public ParseError {
 public:
  using ParseError::ParseError;
  const char* kind() const override { return "duplicate"; }
};

// Data the command asked for is absent (e.g. an edge without an angle).
class MissingData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemFile {
  enum class Kind { Surface, Manifold };

  Kind kind = Kind::Surface;
  std::vector<std::string> names;  // face or tetrahedron ids, in declaration order
  std::optional<TriangulatedSurface> surface;
  std::optional<IdealTriangulation3> manifold;
  std::vector<std::optional<Rational>> edge_angle;      // per edge
  std::vector<std::optional<Rational>> cone;            // per vertex
  std::vector<std::optional<Rational>> boundary_angle;  // per vertex

  bool has_edge_angles() const;
  bool has_cones() const;
  bool has_boundary_angles() const;
  // Every edge must carry an angle; throws MissingData.
  AngleAssignment angles() const;
  std::vector<Rational> boundary_angles() const;
};

ProblemFile parse_problem(std::istream& in);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile parse_problem_file(const std::string& path);

// Text form accepted by parse_problem. Faces are written as f0, f1, ...
// unless names are given; each edge angle goes on its lowest dart.
std::string write_problem(const TriangulatedSurface& surface, const std::vector<std::optional<Rational>>& edge_angle = {},
                          const std::vector<std::string>& names = {});
std::string write_problem(const IdealTriangulation3& manifold, const std::vector<std::string>& names = {});

}  // namespace dihedra::cli
