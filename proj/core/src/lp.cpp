#include "dihedra/lp.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>

namespace dihedra {

void LinearProgram::validate() const {
  if (static_cast<int>(b.size()) != rows()) {
    throw DimensionMismatch("rhs has " + std::to_string(b.size()) + " entries for " + std::to_string(rows()) + " rows");
  }
  for (int i = 0; i < rows(); ++i) {
    if (static_cast<int>(A[i].size()) != cols()) {
      throw DimensionMismatch("row " + std::to_string(i) + " has " + std::to_string(A[i].size()) +
                              " entries, expected " + std::to_string(cols()));
    }
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

struct Overflow {};

// p/q in lowest terms, q > 0. Every operation throws Overflow rather than wrap.
struct Frac64 {
  std::int64_t p = 0;
  std::int64_t q = 1;

  Frac64() = default;
  Frac64(std::int64_t v) : p(v) {}

  static Frac64 reduce(__int128 p, __int128 q) {
    if (q < 0) {
      p = -p;
      q = -q;
    }
    __int128 a = p < 0 ? -p : p, b = q;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      p /= a;
      q /= a;
    }
    constexpr __int128 lim = std::numeric_limits<std::int64_t>::max();
    if (p > lim || p < -lim || q > lim) throw Overflow{};
    Frac64 r;
    r.p = static_cast<std::int64_t>(p);
    r.q = static_cast<std::int64_t>(q);
    return r;
  }

  static Frac64 from(const Rational& v) {
    if (!v.get_num().fits_slong_p() || !v.get_den().fits_slong_p()) throw Overflow{};
    Frac64 r;
    r.p = v.get_num().get_si();
    r.q = v.get_den().get_si();
    return r;
  }

  Rational to_rational() const {
    Rational r(static_cast<long>(p), static_cast<long>(q));
    return r;
  }
};

Frac64 operator*(const Frac64& a, const Frac64& b) {
  return Frac64::reduce(static_cast<__int128>(a.p) * b.p, static_cast<__int128>(a.q) * b.q);
}
Frac64 operator/(const Frac64& a, const Frac64& b) {
  return Frac64::reduce(static_cast<__int128>(a.p) * b.q, static_cast<__int128>(a.q) * b.p);
}
Frac64 operator-(const Frac64& a, const Frac64& b) {
  if (a.q == b.q) return Frac64::reduce(static_cast<__int128>(a.p) - b.p, a.q);
  return Frac64::reduce(static_cast<__int128>(a.p) * b.q - static_cast<__int128>(b.p) * a.q,
                        static_cast<__int128>(a.q) * b.q);
}
int sgn(const Frac64& a) { return (a.p > 0) - (a.p < 0); }
int cmp(const Frac64& a, const Frac64& b) {
  const __int128 l = static_cast<__int128>(a.p) * b.q, r = static_cast<__int128>(b.p) * a.q;
  return (l > r) - (l < r);
}

// Same operation set on mpq without temporaries.
void mul_sub(Rational& r, const Rational& f, const Rational& p, Rational& scratch) {
  mpq_mul(scratch.get_mpq_t(), f.get_mpq_t(), p.get_mpq_t());
  mpq_sub(r.get_mpq_t(), r.get_mpq_t(), scratch.get_mpq_t());
}
void mul_sub(Frac64& r, const Frac64& f, const Frac64& p, Frac64&) { r = r - f * p; }
void divide(Rational& out, const Rational& a, const Rational& b) {
  mpq_div(out.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
}
void divide(Frac64& out, const Frac64& a, const Frac64& b) { out = a / b; }

Rational to_exact(const Rational& v) { return v; }
Rational to_exact(const Frac64& v) { return v.to_rational(); }

template <class T>
T convert(const Rational& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return v;
  } else {
    return Frac64::from(v);
  }
}

template <class T>
class Tableau {
  static T signed_value(const Rational& v, int sign) {
    T t = convert<T>(v);
    return sign < 0 ? T(0) - t : t;
  }

 public:
  Tableau(const LinearProgram& lp) : m_(lp.rows()), n_(lp.cols()), width_(n_ + m_ + 1) {
    t_.assign(m_, std::vector<T>(width_));
    sign_.assign(m_, 1);
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      sign_[i] = lp.b[i] < 0 ? -1 : 1;
      for (int j = 0; j < n_; ++j) {
        if (sgn(lp.A[i][j]) != 0) t_[i][j] = signed_value(lp.A[i][j], sign_[i]);
      }
      t_[i][n_ + i] = T(1);
      t_[i][width_ - 1] = signed_value(lp.b[i], sign_[i]);
      basis_[i] = n_ + i;
    }
  }

  int rhs() const { return width_ - 1; }
  bool is_artificial(int col) const { return col >= n_ && col < n_ + m_; }

  // Loads a cost vector over all columns and rebuilds the reduced cost row.
  void set_cost(const std::vector<Rational>& cost) {
    cost_.assign(width_ - 1, T(0));
    for (int j = 0; j < width_ - 1; ++j) cost_[j] = convert<T>(cost[j]);
    z_.assign(width_, T(0));
    for (int j = 0; j < width_ - 1; ++j) z_[j] = cost_[j];
    for (int i = 0; i < m_; ++i) {
      const T cb = cost_[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (int j = 0; j < width_; ++j) {
        if (sgn(t_[i][j]) != 0) mul_sub(z_[j], cb, t_[i][j], scratch_);
      }
    }
  }

  // Runs Bland's rule. Returns the unbounded entering column or -1 at optimality.
  int optimize(int entering_limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < entering_limit; ++j) {
        if (sgn(z_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == -1) return -1;
      int leave = -1;
      for (int i = 0; i < m_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        divide(ratio_, t_[i][rhs()], t_[i][enter]);
        const int c = leave == -1 ? -1 : cmp(ratio_, best_);
        if (c < 0 || (c == 0 && basis_[i] < basis_[leave])) {
          leave = i;
          std::swap(best_, ratio_);
        }
      }
      if (leave == -1) return enter;
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    ++pivots_;
    auto& p = t_[row];
    T inv;
    divide(inv, T(1), p[col]);
    support_.clear();
    for (int j = 0; j < width_; ++j) {
      if (sgn(p[j]) != 0) {
        p[j] = p[j] * inv;
        support_.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<T>& r) {
      if (sgn(r[col]) == 0) return;
      factor_ = r[col];
      for (int j : support_) mul_sub(r[j], factor_, p[j], scratch_);
    };
    for (int i = 0; i < m_; ++i) {
      if (i != row) eliminate(t_[i]);
    }
    eliminate(z_);
    basis_[row] = col;
  }

  // Pivots basic artificials out where a structural column allows it.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (int j = 0; j < n_; ++j) {
        if (sgn(t_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  // y = c_B^T B^-1 in the row signs of the original program.
  std::vector<Rational> duals() const {
    std::vector<Rational> y(m_);
    for (int k = 0; k < m_; ++k) y[k] = sign_[k] * (to_exact(cost_[n_ + k]) - to_exact(z_[n_ + k]));
    return y;
  }

  std::vector<Rational> point() const {
    std::vector<Rational> x(n_);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = to_exact(t_[i][rhs()]);
    }
    return x;
  }

  std::vector<Rational> ray(int enter) const {
    std::vector<Rational> d(n_);
    d[enter] = 1;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) d[basis_[i]] = -to_exact(t_[i][enter]);
    }
    return d;
  }

  Rational objective() const { return -to_exact(z_[rhs()]); }
  int pivots() const { return pivots_; }

 private:
  int m_, n_, width_;
  std::vector<std::vector<T>> t_;
  std::vector<T> z_;
  std::vector<T> cost_;
  std::vector<int> sign_;
  std::vector<int> basis_;
  std::vector<int> support_;
  int pivots_ = 0;
  T factor_, scratch_, ratio_, best_;
};

template <class T>
LpOutcome run(const LinearProgram& lp) {
  LpOutcome out;
  Tableau<T> tab(lp);
  const int n = lp.cols();
  const int m = lp.rows();

  std::vector<Rational> phase1(n + m, 0);
  for (int k = 0; k < m; ++k) phase1[n + k] = 1;
  tab.set_cost(phase1);
  tab.optimize(n);
  if (tab.objective() > 0) {
    out.status = LpStatus::Infeasible;
    out.farkas = tab.duals();
    out.pivots = tab.pivots();
    return out;
  }
  tab.drive_out_artificials();

  std::vector<Rational> phase2(n + m, 0);
  for (int j = 0; j < n; ++j) phase2[j] = lp.c[j];
  tab.set_cost(phase2);
  const int unbounded = tab.optimize(n);
  out.pivots = tab.pivots();
  if (unbounded != -1) {
    out.status = LpStatus::Unbounded;
    out.ray = tab.ray(unbounded);
    return out;
  }
  out.status = LpStatus::Optimal;
  out.x = tab.point();
  out.value = tab.objective();
  out.dual = tab.duals();
  return out;
}

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
  lp.validate();
  // Pivot choices depend only on exact values, so both paths walk the same bases.
  try {
    return run<Frac64>(lp);
  } catch (const Overflow&) {
    return run<Rational>(lp);
  }
}

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

// y^T A, column by column.
std::vector<Rational> row_combination(const LinearProgram& lp, const std::vector<Rational>& y) {
  std::vector<Rational> out(lp.cols(), 0);
  for (int i = 0; i < lp.rows(); ++i) {
    if (y[i] == 0) continue;
    for (int j = 0; j < lp.cols(); ++j) {
      if (lp.A[i][j] != 0) out[j] += y[i] * lp.A[i][j];
    }
  }
  return out;
}

}  // namespace

bool verify_primal(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != lp.cols()) return false;
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (int i = 0; i < lp.rows(); ++i) {
    if (dot(lp.A[i], x) != lp.b[i]) return false;
  }
  return true;
}

bool verify_dual(const LinearProgram& lp, const std::vector<Rational>& y) {
  if (static_cast<int>(y.size()) != lp.rows()) return false;
  const auto combo = row_combination(lp, y);
  for (int j = 0; j < lp.cols(); ++j) {
    if (combo[j] > lp.c[j]) return false;
  }
  return true;
}

bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y) {
  if (static_cast<int>(y.size()) != lp.rows()) return false;
  const auto combo = row_combination(lp, y);
  for (const auto& v : combo) {
    if (v > 0) return false;
  }
  return dot(y, lp.b) > 0;
}

bool verify_ray(const LinearProgram& lp, const std::vector<Rational>& d) {
  if (static_cast<int>(d.size()) != lp.cols()) return false;
  for (const auto& v : d) {
    if (v < 0) return false;
  }
  for (int i = 0; i < lp.rows(); ++i) {
    if (dot(lp.A[i], d) != 0) return false;
  }
  return dot(lp.c, d) < 0;
}

bool verify_outcome(const LinearProgram& lp, const LpOutcome& outcome) {
  switch (outcome.status) {
    case LpStatus::Optimal:
      return verify_primal(lp, outcome.x) && verify_dual(lp, outcome.dual) && dot(lp.c, outcome.x) == outcome.value &&
             dot(outcome.dual, lp.b) == outcome.value;
    case LpStatus::Infeasible: return verify_farkas(lp, outcome.farkas);
    case LpStatus::Unbounded: return verify_ray(lp, outcome.ray);
  }
  return false;
}

// ==========================================================
// ================   General programs     ==================
// ==========================================================

int GeneralProgram::add_variable(VarKind kind, Rational cost) {
  kinds.push_back(kind);
  objective.push_back(std::move(cost));
  return variable_count() - 1;
}

void GeneralProgram::add_constraint(std::vector<Rational> coeffs, Relation relation, Rational rhs) {
  rows.push_back({std::move(coeffs), relation, std::move(rhs)});
}

StandardForm to_standard_form(const GeneralProgram& program) {
  const int nv = program.variable_count();
  if (static_cast<int>(program.objective.size()) != nv) throw DimensionMismatch("objective size differs from variable count");
  StandardForm sf;
  sf.negated = program.sense == Sense::Maximize;
  int col = 0;
  for (int v = 0; v < nv; ++v) {
    sf.plus.push_back(col++);
    sf.minus.push_back(program.kinds[v] == VarKind::Free ? col++ : -1);
  }
  for (const auto& row : program.rows) {
    if (static_cast<int>(row.coeffs.size()) > nv) throw DimensionMismatch("constraint longer than variable count");
    sf.slack.push_back(row.relation == Relation::Equal ? -1 : col++);
  }
  const int width = col;
  auto& lp = sf.lp;
  lp.c.assign(width, 0);
  for (int v = 0; v < nv; ++v) {
    const Rational cost = sf.negated ? Rational(-program.objective[v]) : program.objective[v];
    lp.c[sf.plus[v]] = cost;
    if (sf.minus[v] != -1) lp.c[sf.minus[v]] = -cost;
  }
  for (size_t r = 0; r < program.rows.size(); ++r) {
    const auto& row = program.rows[r];
    std::vector<Rational> a(width, 0);
    for (size_t v = 0; v < row.coeffs.size(); ++v) {
      a[sf.plus[v]] = row.coeffs[v];
      if (sf.minus[v] != -1) a[sf.minus[v]] = -row.coeffs[v];
    }
    if (sf.slack[r] != -1) a[sf.slack[r]] = row.relation == Relation::LessEqual ? 1 : -1;
    lp.A.push_back(std::move(a));
    lp.b.push_back(row.rhs);
  }
  return sf;
}

std::vector<Rational> StandardForm::recover(const std::vector<Rational>& standard_x) const {
  std::vector<Rational> x(plus.size());
  for (size_t v = 0; v < plus.size(); ++v) {
    x[v] = standard_x[plus[v]];
    if (minus[v] != -1) x[v] -= standard_x[minus[v]];
  }
  return x;
}

GeneralOutcome solve(const GeneralProgram& program) {
  GeneralOutcome out;
  const StandardForm sf = to_standard_form(program);
  out.standard = solve(sf.lp);
  out.status = out.standard.status;
  if (out.status == LpStatus::Optimal) {
    out.x = sf.recover(out.standard.x);
    out.value = sf.original_value(out.standard.value);
    for (const auto& y : out.standard.dual) out.duals.push_back(sf.negated ? Rational(-y) : y);
  }
  return out;
}

GeneralProgram dualize(const LinearProgram& lp) {
  lp.validate();
  GeneralProgram d;
  d.sense = Sense::Maximize;
  for (int i = 0; i < lp.rows(); ++i) d.add_variable(VarKind::Free, lp.b[i]);
  for (int j = 0; j < lp.cols(); ++j) {
    std::vector<Rational> coeffs(lp.rows());
    for (int i = 0; i < lp.rows(); ++i) coeffs[i] = lp.A[i][j];
    d.add_constraint(std::move(coeffs), Relation::LessEqual, lp.c[j]);
  }
  return d;
}

}  // namespace dihedra
