#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpe/eps.hpp"
#include "qpe/rational.hpp"

// Lemke's complementary pivoting for w = M z + q, w, z >= 0, z^T w = 0,
// with a rational matrix M and eps-polynomial q, solved exactly in the
// eps -> 0+ order. The ratio test is fully lexicographic (right-hand side
// first, then the inverse-basis columns), so no basis ever repeats.

namespace qpe {

enum class VarTag { kPlan, kWire, kEqDualPos, kEqDualNeg, kSlackDual };

struct LcpInstance {
  std::vector<std::vector<Rat>> m;  // dense square
  std::vector<EpsPoly> q;
  std::vector<VarTag> tags;  // optional, aligned with z

  int dim() const { return static_cast<int>(q.size()); }
};

enum class LcpStatus { kSolved, kRay, kIterationLimit };

struct LcpRay {
  std::vector<EpsPoly> z_base;
  std::vector<Rat> z_dir;  // unbounded direction in z (including z0 slot last)
  Rat z0_dir = Rat(0);
  std::string note;
};

struct LcpResult {
  LcpStatus status = LcpStatus::kIterationLimit;
  std::vector<EpsPoly> z;
  std::vector<EpsPoly> w;
  int pivots = 0;
  LcpRay ray;  // populated on kRay
};

struct LemkeOptions {
  int max_pivots = 100000;
  bool check_residuals = true;  // verify the output symbolically
};

namespace detail {

class LemkeTableau {
 public:
  LemkeTableau(const LcpInstance& lcp, const std::vector<Rat>& d)
      : n_(lcp.dim()) {
    // Columns: w_0..w_{n-1}, z_0..z_{n-1}, z0. System [I | -M | -d] v = q.
    mat_.assign(static_cast<size_t>(n_), std::vector<Rat>(2 * static_cast<size_t>(n_) + 1, Rat(0)));
    rhs_ = lcp.q;
    basis_.resize(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      mat_[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
      for (int j = 0; j < n_; ++j)
        mat_[static_cast<size_t>(i)][static_cast<size_t>(n_ + j)] =
            -lcp.m[static_cast<size_t>(i)][static_cast<size_t>(j)];
      mat_[static_cast<size_t>(i)][static_cast<size_t>(2 * n_)] = -d[static_cast<size_t>(i)];
      basis_[static_cast<size_t>(i)] = i;
    }
  }

  int z0_col() const { return 2 * n_; }

  bool rhs_nonnegative() const {
    for (const auto& b : rhs_)
      if (b.sign() < 0) return false;
    return true;
  }

  /// Lexicographic ratio test over rows with a positive entry in `col`:
  /// minimize (rhs_i, w-columns of row i) / entry. Returns -1 when the
  /// column has no positive entry.
  int leaving_row(int col) const {
    int best = -1;
    for (int r = 0; r < n_; ++r) {
      if (mat_[static_cast<size_t>(r)][static_cast<size_t>(col)] <= 0) continue;
      if (best < 0 || lex_less(r, best, col)) best = r;
    }
    return best;
  }

  /// First leaving row when z0 enters: the z0 column holds -d, so pick the
  /// lexicographic minimum of (rhs_i, w-columns of row i) / d_i instead;
  /// pivoting there lifts every right-hand side to nonnegative.
  int init_leaving_row() const {
    int best = -1;
    for (int r = 0; r < n_; ++r) {
      if (best < 0) {
        best = r;
        continue;
      }
      Rat da = -mat_[static_cast<size_t>(r)][static_cast<size_t>(z0_col())];
      Rat db = -mat_[static_cast<size_t>(best)][static_cast<size_t>(z0_col())];
      EpsPoly lhs = rhs_[static_cast<size_t>(r)] * db;
      EpsPoly rhs2 = rhs_[static_cast<size_t>(best)] * da;
      int cmp = (rhs2 - lhs).sign();
      bool better = cmp > 0;
      if (cmp == 0) {
        for (int t = 0; t < n_ && cmp == 0; ++t) {
          Rat la = mat_[static_cast<size_t>(r)][static_cast<size_t>(t)] * db;
          Rat lb = mat_[static_cast<size_t>(best)][static_cast<size_t>(t)] * da;
          if (la != lb) cmp = la < lb ? 1 : -1;
        }
        better = cmp > 0;
      }
      if (better) best = r;
    }
    return best;
  }

  void pivot(int row, int col) {
    auto& prow = mat_[static_cast<size_t>(row)];
    Rat p = prow[static_cast<size_t>(col)];
    for (auto& c : prow) c /= p;
    rhs_[static_cast<size_t>(row)] /= p;
    for (int r = 0; r < n_; ++r) {
      if (r == row) continue;
      Rat f = mat_[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0) continue;
      auto& mrow = mat_[static_cast<size_t>(r)];
      for (size_t j = 0; j < mrow.size(); ++j)
        if (prow[j] != 0) mrow[j] -= f * prow[j];
      rhs_[static_cast<size_t>(r)] -= rhs_[static_cast<size_t>(row)] * f;
    }
    basis_[static_cast<size_t>(row)] = col;
  }

  const std::vector<int>& basis() const { return basis_; }
  const std::vector<EpsPoly>& rhs() const { return rhs_; }
  const std::vector<std::vector<Rat>>& mat() const { return mat_; }
  int basis_row_of(int col) const {
    for (int r = 0; r < n_; ++r)
      if (basis_[static_cast<size_t>(r)] == col) return r;
    return -1;
  }

 private:
  // (rhs_a, B^-1 row a) / pivot_a lexicographically below the same for b.
  // The w-columns hold the inverse basis, whose rows are independent, so
  // the comparison never ties for distinct rows.
  bool lex_less(int a, int b, int col) const {
    const Rat& pa = mat_[static_cast<size_t>(a)][static_cast<size_t>(col)];
    const Rat& pb = mat_[static_cast<size_t>(b)][static_cast<size_t>(col)];
    EpsPoly lhs = rhs_[static_cast<size_t>(a)] * pb;
    EpsPoly rhs = rhs_[static_cast<size_t>(b)] * pa;
    if (lhs != rhs) return (rhs - lhs).sign() > 0;
    for (int t = 0; t < n_; ++t) {
      const Rat la = mat_[static_cast<size_t>(a)][static_cast<size_t>(t)] * pb;
      const Rat lb = mat_[static_cast<size_t>(b)][static_cast<size_t>(t)] * pa;
      if (la != lb) return la < lb;
    }
    return false;
  }

  int n_;
  std::vector<std::vector<Rat>> mat_;
  std::vector<EpsPoly> rhs_;
  std::vector<int> basis_;
};

}  // namespace detail

inline std::vector<EpsPoly> lcp_w_of(const LcpInstance& lcp,
                                     const std::vector<EpsPoly>& z) {
  const int n = lcp.dim();
  std::vector<EpsPoly> w(lcp.q.begin(), lcp.q.end());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rat& mij = lcp.m[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (mij != 0) w[static_cast<size_t>(i)] += z[static_cast<size_t>(j)] * mij;
    }
  return w;
}

/// Exact feasibility + complementarity check in the eps-order.
inline bool lcp_solution_ok(const LcpInstance& lcp, const std::vector<EpsPoly>& z,
                            const std::vector<EpsPoly>& w) {
  for (int i = 0; i < lcp.dim(); ++i) {
    if (z[static_cast<size_t>(i)].sign() < 0) return false;
    if (w[static_cast<size_t>(i)].sign() < 0) return false;
    if (!(z[static_cast<size_t>(i)] * w[static_cast<size_t>(i)]).is_zero()) return false;
  }
  return true;
}

inline LcpResult lemke(const LcpInstance& lcp,
                       const std::vector<Rat>& covering = {},
                       const LemkeOptions& opt = {}) {
  const int n = lcp.dim();
  std::vector<Rat> d = covering;
  if (d.empty()) d.assign(static_cast<size_t>(n), Rat(1));
  for (const Rat& di : d)
    if (di <= 0) throw std::invalid_argument("covering vector must be positive");

  LcpResult out;
  detail::LemkeTableau tab(lcp, d);

  if (tab.rhs_nonnegative()) {
    out.status = LcpStatus::kSolved;
    out.z.assign(static_cast<size_t>(n), EpsPoly());
    out.w = lcp_w_of(lcp, out.z);
    return out;
  }

  std::set<std::vector<int>> seen_bases;
  seen_bases.insert(tab.basis());

  int row = tab.init_leaving_row();
  assert(row >= 0);
  int leaving = tab.basis()[static_cast<size_t>(row)];
  tab.pivot(row, tab.z0_col());
  out.pivots = 1;

  while (true) {
    // Complement of the variable that just left: w_i <-> z_i.
    int enter = leaving < n ? n + leaving : leaving - n;
    row = tab.leaving_row(enter);
    if (row < 0) {
      out.status = LcpStatus::kRay;
      out.ray.note = "secondary ray while entering column " + std::to_string(enter);
      out.ray.z_base.assign(static_cast<size_t>(n), EpsPoly());
      out.ray.z_dir.assign(static_cast<size_t>(n), Rat(0));
      for (int r = 0; r < n; ++r) {
        int b = tab.basis()[static_cast<size_t>(r)];
        if (b >= n && b < 2 * n)
          out.ray.z_base[static_cast<size_t>(b - n)] = tab.rhs()[static_cast<size_t>(r)];
        if (b == 2 * n) out.ray.z0_dir = -tab.mat()[static_cast<size_t>(r)][static_cast<size_t>(enter)];
        if (b >= n && b < 2 * n)
          out.ray.z_dir[static_cast<size_t>(b - n)] =
              -tab.mat()[static_cast<size_t>(r)][static_cast<size_t>(enter)];
      }
      if (enter >= n && enter < 2 * n) out.ray.z_dir[static_cast<size_t>(enter - n)] = 1;
      return out;
    }
    leaving = tab.basis()[static_cast<size_t>(row)];
    tab.pivot(row, enter);
    if (!seen_bases.insert(tab.basis()).second)
      throw std::logic_error("lemke revisited a basis; lexicographic rule broken");
    if (++out.pivots > opt.max_pivots) {
      out.status = LcpStatus::kIterationLimit;
      return out;
    }
    if (leaving == tab.z0_col()) break;
  }

  out.status = LcpStatus::kSolved;
  out.z.assign(static_cast<size_t>(n), EpsPoly());
  for (int r = 0; r < n; ++r) {
    int b = tab.basis()[static_cast<size_t>(r)];
    if (b >= n && b < 2 * n)
      out.z[static_cast<size_t>(b - n)] = tab.rhs()[static_cast<size_t>(r)];
  }
  out.w = lcp_w_of(lcp, out.z);
  if (opt.check_residuals && !lcp_solution_ok(lcp, out.z, out.w))
    throw std::logic_error("lemke produced an invalid solution");
  return out;
}

}  // namespace qpe
