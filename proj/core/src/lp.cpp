#include "vdm/lp.hpp"

#include <cassert>
#include <stdexcept>

namespace vdm::lp {

namespace {

// Dense simplex on  min c.z  s.t.  T z = rhs, z >= 0,  rhs kept nonnegative.
// Bland's rule throughout, so termination is unconditional.
class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), t_(rows, RatVec(cols + 1, Rat(0))), basis_(rows, -1) {}

  Rat& at(int i, int j) { return t_[i][j]; }
  Rat& rhs(int i) { return t_[i][cols_]; }
  int basis(int i) const { return basis_[i]; }
  void set_basis(int i, int j) { basis_[i] = j; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void pivot(int row, int col) {
    RatVec& pr = t_[row];
    const Rat p = pr[col];
    assert(sgn(p) != 0);
    for (Rat& v : pr) v /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const Rat f = t_[i][col];
      if (sgn(f) == 0) continue;
      for (int j = 0; j <= cols_; ++j) t_[i][j] -= f * pr[j];
    }
    basis_[row] = col;
  }

  // Minimizes cost.z over the current feasible basis. cost has cols_+1
  // entries; entry cols_ accumulates the (negated) objective value.
  // Returns false when unbounded.
  bool run(RatVec& cost, int restrict_cols = -1) {
    const int active = restrict_cols < 0 ? cols_ : restrict_cols;
    // Reduce the cost row against the basic columns.
    for (int i = 0; i < rows_; ++i) {
      const int b = basis_[i];
      if (b < 0 || sgn(cost[b]) == 0) continue;
      const Rat f = cost[b];
      for (int j = 0; j <= cols_; ++j) cost[j] -= f * t_[i][j];
    }
    while (true) {
      int enter = -1;
      for (int j = 0; j < active; ++j)
        if (sgn(cost[j]) < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < rows_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rat ratio = rhs(i) / t_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      const Rat f = cost[enter];
      pivot(leave, enter);
      if (sgn(f) != 0)
        for (int j = 0; j <= cols_; ++j) cost[j] -= f * t_[leave][j];
    }
  }

 private:
  int rows_, cols_;
  std::vector<RatVec> t_;
  std::vector<int> basis_;
};

}  // namespace

std::optional<StrictWitness> strict_feasible(int num_vars,
                                             const std::vector<LinearConstraint>& equalities,
                                             const std::vector<LinearConstraint>& inequalities) {
  if (num_vars < 0) throw std::invalid_argument("lp: negative variable count");
  for (const auto* group : {&equalities, &inequalities})
    for (const auto& c : *group)
      if (static_cast<int>(c.coeffs.size()) != num_vars)
        throw std::invalid_argument("lp: constraint width does not match variable count");

  const int ne = static_cast<int>(equalities.size());
  const int ni = static_cast<int>(inequalities.size());
  const int rows = ne + ni + 1;  // + the cap row t <= 1

  // Nonnegative variable layout: free x split as u - w, margin t split as
  // tp - tm, one surplus per inequality, one slack for the cap row.
  const int u0 = 0, w0 = num_vars, tp = 2 * num_vars, tm = tp + 1, s0 = tm + 1;
  const int scap = s0 + ni;
  const int ncols = scap + 1;

  Tableau tab(rows, ncols + rows);  // reserve space for phase-one artificials

  auto fill_row = [&](int r, const LinearConstraint& c, bool with_margin, int surplus_col) {
    for (int j = 0; j < num_vars; ++j) {
      tab.at(r, u0 + j) = c.coeffs[j];
      tab.at(r, w0 + j) = -c.coeffs[j];
    }
    if (with_margin) {
      tab.at(r, tp) = -1;
      tab.at(r, tm) = 1;
      tab.at(r, surplus_col) = -1;
    }
    tab.rhs(r) = c.rhs;
  };

  for (int i = 0; i < ne; ++i) fill_row(i, equalities[i], false, -1);
  for (int i = 0; i < ni; ++i) fill_row(ne + i, inequalities[i], true, s0 + i);
  {
    const int r = ne + ni;
    tab.at(r, tp) = 1;
    tab.at(r, tm) = -1;
    tab.at(r, scap) = 1;
    tab.rhs(r) = 1;
  }

  // Normalize rhs >= 0, then pick an initial basis: reuse a +1 unit column
  // (surplus/slack) where one exists, otherwise add an artificial.
  int nart = 0;
  RatVec phase1(ncols + rows + 1, Rat(0));
  for (int r = 0; r < rows; ++r) {
    if (sgn(tab.rhs(r)) < 0)
      for (int j = 0; j <= tab.cols(); ++j) {
        Rat& v = tab.at(r, j);
        if (sgn(v) != 0) v = -v;
      }
    int unit = -1;
    if (r == ne + ni && tab.at(r, scap) == 1) unit = scap;
    if (r >= ne && r < ne + ni && tab.at(r, s0 + (r - ne)) == 1) unit = s0 + (r - ne);
    if (unit >= 0) {
      tab.set_basis(r, unit);
    } else {
      const int acol = ncols + nart++;
      tab.at(r, acol) = 1;
      tab.set_basis(r, acol);
      phase1[acol] = 1;
    }
  }

  if (nart > 0) {
    bool bounded = tab.run(phase1);
    assert(bounded);
    if (sgn(phase1[tab.cols()]) != 0) return std::nullopt;  // equalities inconsistent
    // Drive any basic artificial (necessarily at value 0) out of the basis.
    for (int r = 0; r < rows; ++r) {
      if (tab.basis(r) < ncols) continue;
      int col = -1;
      for (int j = 0; j < ncols; ++j)
        if (sgn(tab.at(r, j)) != 0) {
          col = j;
          break;
        }
      if (col >= 0) tab.pivot(r, col);
      // A redundant all-zero row simply keeps its artificial at value 0.
    }
  }

  RatVec phase2(ncols + rows + 1, Rat(0));
  phase2[tp] = -1;  // maximize t
  phase2[tm] = 1;
  bool bounded = tab.run(phase2, ncols);
  assert(bounded);  // t <= 1 caps the objective

  RatVec z(ncols, Rat(0));
  for (int r = 0; r < rows; ++r)
    if (tab.basis(r) < ncols) z[tab.basis(r)] = tab.rhs(r);
  Rat margin = z[tp] - z[tm];
  if (sgn(margin) <= 0) return std::nullopt;

  StrictWitness w;
  w.point.resize(num_vars);
  for (int j = 0; j < num_vars; ++j) w.point[j] = z[u0 + j] - z[w0 + j];
  w.margin = margin;

  // Re-verify by direct substitution; a failure here is a solver bug.
  for (const auto& c : equalities) {
    Rat dot(0);
    for (int j = 0; j < num_vars; ++j) dot += c.coeffs[j] * w.point[j];
    if (dot != c.rhs) throw std::logic_error("lp: witness violates an equality");
  }
  for (const auto& c : inequalities) {
    Rat dot(0);
    for (int j = 0; j < num_vars; ++j) dot += c.coeffs[j] * w.point[j];
    if (dot < c.rhs + w.margin) throw std::logic_error("lp: witness violates an inequality");
  }
  return w;
}

}  // namespace vdm::lp
