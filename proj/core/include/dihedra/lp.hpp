#pragma once

#include <stdexcept>
#include <vector>

#include "dihedra/rational.hpp"

namespace dihedra {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Minimize c.x subject to A x = b, x >= 0.
struct LinearProgram {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  std::vector<Rational> c;

  int rows() const { return static_cast<int>(A.size()); }
  int cols() const { return static_cast<int>(c.size()); }
  // Throws DimensionMismatch.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status);

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;       // Optimal: primal vertex
  Rational value;                // Optimal: c.x
  std::vector<Rational> dual;    // Optimal: y with y^T A <= c and y.b = value
  std::vector<Rational> farkas;  // Infeasible: y^T A <= 0 and y.b > 0
  std::vector<Rational> ray;     // Unbounded: A d = 0, d >= 0, c.d < 0
  int pivots = 0;
};

// Two-phase dense tableau simplex with Bland's rule. Exact and deterministic.
LpOutcome solve(const LinearProgram& lp);

// Exact certificate checks, independent of the solver.
bool verify_primal(const LinearProgram& lp, const std::vector<Rational>& x);
bool verify_dual(const LinearProgram& lp, const std::vector<Rational>& y);
bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y);
bool verify_ray(const LinearProgram& lp, const std::vector<Rational>& d);
bool verify_outcome(const LinearProgram& lp, const LpOutcome& outcome);

enum class Relation { LessEqual, GreaterEqual, Equal };
enum class Sense { Minimize, Maximize };
enum class VarKind { NonNegative, Free };

// Program with mixed constraint relations and free variables.
struct GeneralProgram {
  struct Row {
    std::vector<Rational> coeffs;  // may be shorter than the variable count; missing entries are 0
    Relation relation = Relation::Equal;
    Rational rhs;
  };

  Sense sense = Sense::Minimize;
  std::vector<Rational> objective;
  std::vector<VarKind> kinds;
  std::vector<Row> rows;

  int variable_count() const { return static_cast<int>(kinds.size()); }
  int add_variable(VarKind kind = VarKind::NonNegative, Rational cost = 0);
  void add_constraint(std::vector<Rational> coeffs, Relation relation, Rational rhs);
};

// Standard form of a GeneralProgram. Free variables are split x = x+ - x-,
// inequalities get one slack column each, and maximization is negated.
struct StandardForm {
  LinearProgram lp;
  std::vector<int> plus;   // column of x+ for each original variable
  std::vector<int> minus;  // column of x- or -1
  std::vector<int> slack;  // slack column per row or -1
  bool negated = false;

  std::vector<Rational> recover(const std::vector<Rational>& standard_x) const;
  Rational original_value(const Rational& standard_value) const { return negated ? -standard_value : standard_value; }
};

StandardForm to_standard_form(const GeneralProgram& program);

struct GeneralOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;
  Rational value;
  // Rate of change of the optimal value per unit of each row's rhs.
  std::vector<Rational> duals;
  LpOutcome standard;
};

GeneralOutcome solve(const GeneralProgram& program);

// Dual of the standard form: maximize b.y subject to A^T y <= c, y free.
GeneralProgram dualize(const LinearProgram& lp);

}  // namespace dihedra
