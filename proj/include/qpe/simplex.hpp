#pragma once

#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpe/constraints.hpp"
#include "qpe/eps.hpp"
#include "qpe/rational.hpp"

// Exact primal simplex over the ordered field of rational functions in eps.
// The constraint matrix is rational throughout (row operations keep it so);
// right-hand sides, objective and hence reduced costs are eps-polynomials,
// and every comparison is decided in the eps -> 0+ order. Two phases with
// Bland's rule, so termination is unconditional.

namespace qpe {

class IterationLimit : public std::runtime_error {
 public:
  explicit IterationLimit(const std::string& w) : std::runtime_error(w) {}
};

struct LpInstance {
  int num_vars = 0;                // all variables are >= 0
  std::vector<LinearRow> rows;
  std::vector<EpsPoly> objective;  // per variable
  bool maximize = true;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<EpsPoly> x;          // primal values, size num_vars
  /// Row multipliers of the problem as given: at optimality a <= row has
  /// dual >= 0, a >= row has dual <= 0, an equality is unrestricted, and
  /// objective_value == sum_r dual_r * rhs_r.
  std::vector<EpsPoly> duals;
  EpsPoly objective_value;
  int pivots = 0;
  std::vector<EpsPoly> objective_trace;  // per pivot, when requested
};

struct SimplexOptions {
  int max_pivots = 200000;
  bool trace_objective = false;
};

namespace detail {

class SimplexTableau {
 public:
  SimplexTableau(const LpInstance& lp, const SimplexOptions& opt)
      : nvars_(lp.num_vars), opt_(opt) {
    const int nrows = static_cast<int>(lp.rows.size());
    mat_.assign(static_cast<size_t>(nrows), {});
    rhs_.resize(static_cast<size_t>(nrows));
    basis_.assign(static_cast<size_t>(nrows), -1);
    active_.assign(static_cast<size_t>(nrows), true);
    flip_.assign(static_cast<size_t>(nrows), false);
    key_col_.assign(static_cast<size_t>(nrows), -1);

    // Variable columns, then one slack per inequality, then artificials.
    int ncols = nvars_;
    std::vector<int> slack_col(static_cast<size_t>(nrows), -1);
    for (int r = 0; r < nrows; ++r)
      if (lp.rows[static_cast<size_t>(r)].rel != Rel::kEq) slack_col[static_cast<size_t>(r)] = ncols++;
    int first_art = ncols;

    for (int r = 0; r < nrows; ++r) {
      const LinearRow& row = lp.rows[static_cast<size_t>(r)];
      std::vector<Rat> dense(static_cast<size_t>(first_art), Rat(0));
      for (const auto& [v, c] : row.coeffs) {
        if (v < 0 || v >= nvars_) throw std::invalid_argument("bad variable id in row");
        dense[static_cast<size_t>(v)] += c;
      }
      if (row.rel == Rel::kLe) dense[static_cast<size_t>(slack_col[static_cast<size_t>(r)])] = 1;
      if (row.rel == Rel::kGe) dense[static_cast<size_t>(slack_col[static_cast<size_t>(r)])] = -1;
      EpsPoly b = row.rhs;
      if (b.sign() < 0) {
        for (auto& c : dense) c = -c;
        b = -b;
        flip_[static_cast<size_t>(r)] = true;
      }
      mat_[static_cast<size_t>(r)] = std::move(dense);
      rhs_[static_cast<size_t>(r)] = std::move(b);
    }

    // Initial basis: the slack column when it survived normalization with a
    // +1 coefficient, otherwise a fresh artificial column.
    for (int r = 0; r < nrows; ++r) {
      int sc = slack_col[static_cast<size_t>(r)];
      if (sc >= 0 && mat_[static_cast<size_t>(r)][static_cast<size_t>(sc)] == 1) {
        basis_[static_cast<size_t>(r)] = sc;
        key_col_[static_cast<size_t>(r)] = sc;
      } else {
        int ac = ncols++;
        for (int i = 0; i < nrows; ++i)
          mat_[static_cast<size_t>(i)].push_back(Rat(i == r ? 1 : 0));
        basis_[static_cast<size_t>(r)] = ac;
        key_col_[static_cast<size_t>(r)] = ac;
        artificial_.push_back(ac);
      }
    }
    ncols_ = ncols;
    is_artificial_.assign(static_cast<size_t>(ncols_), false);
    for (int ac : artificial_) is_artificial_[static_cast<size_t>(ac)] = true;
  }

  /// Phase 1: maximize minus the sum of artificials; feasible iff optimum 0.
  bool make_feasible(LpSolution& out) {
    cost_.assign(static_cast<size_t>(ncols_), EpsPoly());
    objval_ = EpsPoly();
    for (int ac : artificial_) cost_[static_cast<size_t>(ac)] = EpsPoly(Rat(-1));
    price_out_basis();
    run(out, /*phase1=*/true);
    if (objval_.sign() < 0) return false;
    drive_out_artificials();
    return true;
  }

  void set_objective(const std::vector<EpsPoly>& c) {
    cost_.assign(static_cast<size_t>(ncols_), EpsPoly());
    for (int j = 0; j < nvars_; ++j) cost_[static_cast<size_t>(j)] = c[static_cast<size_t>(j)];
    objval_ = EpsPoly();
    price_out_basis();
  }

  void optimize(LpSolution& out) { run(out, /*phase1=*/false); }

  std::vector<EpsPoly> primal() const {
    std::vector<EpsPoly> x(static_cast<size_t>(nvars_));
    for (size_t r = 0; r < basis_.size(); ++r)
      if (active_[r] && basis_[r] < nvars_) x[static_cast<size_t>(basis_[r])] = rhs_[r];
    return x;
  }

  /// Multipliers of the rows as originally given; see LpSolution::duals.
  std::vector<EpsPoly> duals() const {
    std::vector<EpsPoly> pi(basis_.size());
    for (size_t r = 0; r < basis_.size(); ++r) {
      if (!active_[r]) continue;  // redundant row, multiplier 0
      EpsPoly v = -cost_[static_cast<size_t>(key_col_[r])];
      pi[r] = flip_[r] ? -v : v;
    }
    return pi;
  }

  const EpsPoly& objective_value() const { return objval_; }
  int pivots() const { return pivots_; }

 private:
  void price_out_basis() {
    // Restore reduced-cost form: zero cost on basic columns.
    for (size_t r = 0; r < basis_.size(); ++r) {
      if (!active_[r]) continue;
      const EpsPoly& cb = cost_[static_cast<size_t>(basis_[r])];
      if (cb.is_zero()) continue;
      EpsPoly factor = cb;  // basic column is e_r, so one row op suffices
      for (int j = 0; j < ncols_; ++j)
        if (mat_[r][static_cast<size_t>(j)] != 0)
          cost_[static_cast<size_t>(j)] -= factor * mat_[r][static_cast<size_t>(j)];
      objval_ += factor * rhs_[r];
    }
  }

  void run(LpSolution& out, bool phase1) {
    for (;;) {
      // Bland: smallest-index improving nonbasic column.
      int enter = -1;
      for (int j = 0; j < ncols_; ++j) {
        if (!phase1 && is_artificial_[static_cast<size_t>(j)]) continue;
        if (is_basic(j)) continue;
        if (cost_[static_cast<size_t>(j)].sign() > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;  // optimal

      int leave = -1;
      for (size_t r = 0; r < basis_.size(); ++r) {
        if (!active_[r]) continue;
        const Rat& a = mat_[r][static_cast<size_t>(enter)];
        if (a <= 0) continue;
        if (leave < 0 || ratio_less(static_cast<int>(r), leave, enter) ||
            (!ratio_less(leave, static_cast<int>(r), enter) &&
             basis_[r] < basis_[static_cast<size_t>(leave)]))
          leave = static_cast<int>(r);
      }
      if (leave < 0) {
        out.status = LpStatus::kUnbounded;
        return;
      }
      pivot(leave, enter);
      if (opt_.trace_objective && !phase1) out.objective_trace.push_back(objval_);
      if (++pivots_ > opt_.max_pivots)
        throw IterationLimit("simplex exceeded " + std::to_string(opt_.max_pivots) + " pivots");
    }
  }

  bool is_basic(int col) const {
    for (size_t r = 0; r < basis_.size(); ++r)
      if (active_[r] && basis_[r] == col) return true;
    return false;
  }

  // rhs_a / mat[a][e] < rhs_b / mat[b][e], both entries positive.
  bool ratio_less(int a, int b, int e) const {
    const Rat& pa = mat_[static_cast<size_t>(a)][static_cast<size_t>(e)];
    const Rat& pb = mat_[static_cast<size_t>(b)][static_cast<size_t>(e)];
    return (rhs_[static_cast<size_t>(a)] * pb) < (rhs_[static_cast<size_t>(b)] * pa);
  }

  void pivot(int row, int col) {
    auto& prow = mat_[static_cast<size_t>(row)];
    Rat p = prow[static_cast<size_t>(col)];
    assert(p != 0);
    for (auto& c : prow) c /= p;
    rhs_[static_cast<size_t>(row)] /= p;
    for (size_t r = 0; r < mat_.size(); ++r) {
      if (static_cast<int>(r) == row || !active_[r]) continue;
      Rat f = mat_[r][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (size_t j = 0; j < prow.size(); ++j)
        if (prow[j] != 0) mat_[r][j] -= f * prow[j];
      rhs_[r] -= rhs_[static_cast<size_t>(row)] * f;
    }
    EpsPoly cf = cost_[static_cast<size_t>(col)];
    if (!cf.is_zero()) {
      for (size_t j = 0; j < prow.size(); ++j)
        if (prow[j] != 0) cost_[j] -= cf * prow[j];
      objval_ += cf * rhs_[static_cast<size_t>(row)];
    }
    basis_[static_cast<size_t>(row)] = col;
  }

  /// Pivot zero-level artificials out of the basis; rows that cannot release
  /// theirs are linearly dependent and get deactivated.
  void drive_out_artificials() {
    for (size_t r = 0; r < basis_.size(); ++r) {
      if (!active_[r] || !is_artificial_[static_cast<size_t>(basis_[r])]) continue;
      assert(rhs_[r].is_zero());
      int col = -1;
      for (int j = 0; j < ncols_; ++j)
        if (!is_artificial_[static_cast<size_t>(j)] &&
            mat_[r][static_cast<size_t>(j)] != 0) {
          col = j;
          break;
        }
      if (col < 0)
        active_[r] = false;
      else
        pivot(static_cast<int>(r), col);
    }
  }

  int nvars_;
  int ncols_ = 0;
  SimplexOptions opt_;
  std::vector<std::vector<Rat>> mat_;
  std::vector<EpsPoly> rhs_;
  std::vector<EpsPoly> cost_;
  EpsPoly objval_;
  std::vector<int> basis_;
  std::vector<bool> active_;
  std::vector<bool> flip_;
  std::vector<int> key_col_;  // per row: column whose reduced cost prices it
  std::vector<int> artificial_;
  std::vector<bool> is_artificial_;
  int pivots_ = 0;
};

}  // namespace detail

inline LpSolution solve_lp(const LpInstance& lp, const SimplexOptions& opt = {}) {
  LpInstance work = lp;
  if (!lp.maximize)
    for (auto& c : work.objective) c = -c;

  LpSolution out;
  detail::SimplexTableau tab(work, opt);
  if (!tab.make_feasible(out)) {
    out.status = LpStatus::kInfeasible;
    out.pivots = tab.pivots();
    return out;
  }
  tab.set_objective(work.objective);
  out.status = LpStatus::kOptimal;  // may be overwritten with kUnbounded
  tab.optimize(out);
  out.pivots = tab.pivots();
  if (out.status == LpStatus::kUnbounded) return out;
  out.x = tab.primal();
  out.duals = tab.duals();
  out.objective_value = tab.objective_value();
  if (!lp.maximize) {
    out.objective_value = -out.objective_value;
    for (auto& d : out.duals) d = -d;
  }
  return out;
}

/// Feasibility of rows over nonnegative variables (phase 1 only).
inline std::optional<std::vector<EpsPoly>> lp_feasible_point(
    int num_vars, const std::vector<LinearRow>& rows,
    const SimplexOptions& opt = {}) {
  LpInstance lp;
  lp.num_vars = num_vars;
  lp.rows = rows;
  lp.objective.assign(static_cast<size_t>(num_vars), EpsPoly());
  LpSolution out;
  detail::SimplexTableau tab(lp, opt);
  if (!tab.make_feasible(out)) return std::nullopt;
  return tab.primal();
}

}  // namespace qpe
