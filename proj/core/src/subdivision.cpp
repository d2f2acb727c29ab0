#include "vdm/subdivision.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>

namespace vdm {

namespace {

void require_in_domain(const SubsetFunction& p, const std::vector<std::uint32_t>& v) {
  if (v.empty()) throw std::invalid_argument("is_face: empty vertex set");
  for (std::uint32_t s : v) {
    if (s >= p.table_size()) throw std::invalid_argument("is_face: vertex out of range");
    if (!p.at(s).is_finite()) throw std::invalid_argument("is_face: vertex outside dom p");
  }
}

}  // namespace

std::optional<FaceWitness> is_face(const SubsetFunction& p, const std::vector<std::uint32_t>& v) {
  require_in_domain(p, v);
  std::vector<std::uint32_t> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  const int n = p.n();
  const int nvars = n + 1;  // phi_1..phi_n, b
  std::vector<lp::LinearConstraint> eqs, ineqs;
  auto row_for = [&](std::uint32_t s) {
    lp::LinearConstraint c;
    c.coeffs.assign(nvars, Rat(0));
    for (int i = 0; i < n; ++i)
      if ((s >> i) & 1u) c.coeffs[i] = 1;
    c.coeffs[n] = -1;  // ... - b
    c.rhs = -p.at(s).finite_value();
    return c;
  };
  for (std::uint32_t s : sorted) eqs.push_back(row_for(s));
  for (std::uint32_t u : p.domain())
    if (!std::binary_search(sorted.begin(), sorted.end(), u)) ineqs.push_back(row_for(u));

  auto w = lp::strict_feasible(nvars, eqs, ineqs);
  if (!w) return std::nullopt;
  FaceWitness fw;
  fw.phi.assign(w->point.begin(), w->point.begin() + n);
  fw.b = w->point[n];
  fw.margin = w->margin;
  return fw;
}

bool pair_is_cell(const SubsetFunction& p, std::uint32_t s, std::uint32_t t) {
  require_in_domain(p, {s, t});
  if (s == t) throw std::invalid_argument("pair_is_cell: endpoints coincide");
  const std::uint32_t free = s ^ t;
  CubeFace face(p.n(), free, s & ~free);
  SubsetFunction q = p.restricted_to(face);
  const int m = face.dim();
  const std::uint32_t full = Subset::mask_all(m);
  const std::uint32_t sl = face.project(s);

  // A cell pair must strictly beat every other finite diagonal pair of its
  // subcube at the common midpoint (Proposition on cell characterization).
  const Rat own = q.at(sl).finite_value() + q.at(full ^ sl).finite_value();
  for (std::uint32_t u = 0; u < (1u << (m - 1)); ++u) {
    if (u == sl || u == (full ^ sl)) continue;
    if (!q.at(u).is_finite() || !q.at(full ^ u).is_finite()) continue;
    if (q.at(u).finite_value() + q.at(full ^ u).finite_value() <= own) return false;
  }
  return is_face(q, {sl, full ^ sl}).has_value();
}

std::vector<std::pair<Subset, Subset>> long_edges(const SubsetFunction& p, int min_len) {
  if (min_len < 1) throw std::invalid_argument("long_edges: min_len must be positive");
  std::vector<std::pair<Subset, Subset>> out;
  const auto dom = p.domain();
  for (size_t i = 0; i < dom.size(); ++i)
    for (size_t j = i + 1; j < dom.size(); ++j) {
      if (hamming(dom[i], dom[j]) < min_len) continue;
      if (pair_is_cell(p, dom[i], dom[j]))
        out.emplace_back(Subset(dom[i], p.n()), Subset(dom[j], p.n()));
    }
  return out;
}

Check3Result check3(const SubsetFunction& p3) {
  if (p3.n() != 3) throw std::invalid_argument("check3: function is not on a 3-face");
  const auto& p = p3;
  auto two = [&](std::uint32_t a) { return p.at(a) + p.at(a); };
  Check3Result r;
  r.quantities[0] = two(0b000) + two(0b111);
  r.quantities[1] = two(0b001) + two(0b110);
  r.quantities[2] = two(0b010) + two(0b101);
  r.quantities[3] = two(0b100) + two(0b011);
  r.quantities[4] = p.at(0b000) + p.at(0b011) + p.at(0b101) + p.at(0b110);
  r.quantities[5] = p.at(0b001) + p.at(0b010) + p.at(0b100) + p.at(0b111);

  Val min = r.quantities[0];
  for (const Val& q : r.quantities)
    if (q < min) min = q;
  if (!min.is_finite()) return r;  // everything infinite: nothing to separate

  int count = 0, argmin = -1;
  for (int i = 0; i < 6; ++i)
    if (r.quantities[i] == min) {
      ++count;
      if (argmin < 0) argmin = i;
    }
  if (count >= 2 || argmin >= 4) return r;

  r.pass = false;
  r.unique_argmin = argmin;
  static constexpr std::pair<std::uint32_t, std::uint32_t> kDiagonals[4] = {
      {0b000, 0b111}, {0b001, 0b110}, {0b010, 0b101}, {0b100, 0b011}};
  r.edge = kDiagonals[argmin];
  return r;
}

namespace {

const std::vector<ConvexCircuit>& center_circuits4() {
  static const std::vector<ConvexCircuit> circuits = center_circuits(4);
  return circuits;
}

}  // namespace

Check4Result check4(const SubsetFunction& p4) {
  if (p4.n() != 4) throw std::invalid_argument("check4: function is not on a 4-face");
  Check4Result r;
  // Condition on the centre: the minimum over all convex circuit
  // representations must be attained at least twice (all-infinite passes).
  const auto& circuits = center_circuits4();
  Val min = Val::infinity();
  int count = 0;
  const ConvexCircuit* argmin = nullptr;
  for (const ConvexCircuit& j : circuits) {
    Val value(Rat(0));
    for (size_t i = 0; i < j.support.size(); ++i)
      value += p4.at(j.support[i]).scaled(j.weights[i]);
    if (value < min) {
      min = value;
      count = 1;
      argmin = &j;
    } else if (value == min && min.is_finite()) {
      ++count;
    }
  }
  if (min.is_finite() && count < 2) {
    r.pass = false;
    r.circuit_failure = *argmin;
    return r;
  }
  // Condition on the facets.
  for (const CubeFace& facet : enumerate_faces(4, 3)) {
    Check3Result c3 = check3(p4.restricted_to(facet));
    if (!c3.pass) {
      r.pass = false;
      r.facet_failure = {facet, c3};
      return r;
    }
  }
  return r;
}

CheckerResult is_valuated_delta_matroid(const SubsetFunction& p) {
  CheckerResult res;
  const int n = p.n();
  if (n <= 2) return res;

  if (n == 3) {
    Check3Result c3 = check3(p);
    if (!c3.pass) {
      res.valuated = false;
      res.certificate = LongEdgeCert{Subset(c3.edge.first, 3), Subset(c3.edge.second, 3)};
    }
    return res;
  }

  const auto dom = p.domain();
  if (dom.empty()) return res;
  if (auto violation = delta_matroid_violation(BasisFamily(n, dom))) {
    res.valuated = false;
    res.certificate = *violation;
    return res;
  }
  // Faces of dimension <= 3 are covered: every 3-face of the cube lies in a
  // 4-face, and condition (1) of the 4-dimensional criterion recurses.
  for (const CubeFace& face : enumerate_faces(n, 4)) {
    Check4Result c4 = check4(p.restricted_to(face));
    if (c4.pass) continue;
    res.valuated = false;
    if (c4.facet_failure) {
      const auto& [facet, c3] = *c4.facet_failure;
      const std::uint32_t s = face.embed(facet.embed(c3.edge.first));
      const std::uint32_t t = face.embed(facet.embed(c3.edge.second));
      res.certificate = LongEdgeCert{Subset(s, n), Subset(t, n)};
    } else {
      const ConvexCircuit& j = *c4.circuit_failure;
      if (j.support.size() == 2) {
        res.certificate = LongEdgeCert{Subset(face.embed(j.support[0]), n),
                                       Subset(face.embed(j.support[1]), n)};
      } else {
        CircuitTieCert cert;
        cert.face = face;
        for (std::uint32_t s : j.support) cert.support.emplace_back(face.embed(s), n);
        cert.weights = j.weights;
        res.certificate = std::move(cert);
      }
    }
    return res;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Maximal cells
// ---------------------------------------------------------------------------

namespace {

std::vector<Cell> inclusion_maximal(std::set<std::vector<std::uint32_t>> cells) {
  std::vector<std::vector<std::uint32_t>> list(cells.begin(), cells.end());
  std::sort(list.begin(), list.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<std::vector<std::uint32_t>> kept;
  for (const auto& c : list) {
    bool dominated = false;
    for (const auto& k : kept)
      if (std::includes(k.begin(), k.end(), c.begin(), c.end())) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<Cell> out;
  for (auto& v : kept) out.push_back(Cell{std::move(v), 0});
  return out;
}

// Exhaustive mode: every cell is the minimizer closure of any of its affine
// bases, so enumerate affinely independent subsets of dom p, close them
// under the interpolating affine function, and confirm with the face LP.
std::vector<Cell> maximal_cells_exhaustive(const SubsetFunction& p) {
  const auto dom = p.domain();
  const int n = p.n();
  RatMat dom_points;
  for (std::uint32_t s : dom) dom_points.push_back(indicator_vector(s, n));

  std::set<std::vector<std::uint32_t>> candidates;
  std::vector<int> chosen;
  RatMat chosen_points;

  auto close_and_record = [&]() {
    RatMat base_pts;
    RatVec base_vals;
    for (int idx : chosen) {
      base_pts.push_back(dom_points[idx]);
      base_vals.push_back(p.at(dom[idx]).finite_value());
    }
    std::vector<std::uint32_t> closure;
    for (size_t u = 0; u < dom.size(); ++u) {
      auto mu = affine_coordinates(base_pts, dom_points[u]);
      if (!mu) continue;
      Rat interpolated(0);
      for (size_t i = 0; i < mu->size(); ++i) interpolated += (*mu)[i] * base_vals[i];
      const Rat& actual = p.at(dom[u]).finite_value();
      if (actual < interpolated) return;  // a lifted point below the span: not a face
      if (actual == interpolated) closure.push_back(dom[u]);
    }
    candidates.insert(std::move(closure));
  };

  auto recurse = [&](auto&& self, int first) -> void {
    if (!chosen.empty()) close_and_record();
    if (static_cast<int>(chosen.size()) == n + 1) return;
    for (int i = first; i < static_cast<int>(dom.size()); ++i) {
      chosen_points.push_back(dom_points[i]);
      if (affinely_independent(chosen_points)) {
        chosen.push_back(i);
        self(self, i + 1);
        chosen.pop_back();
      }
      chosen_points.pop_back();
    }
  };
  recurse(recurse, 0);

  std::set<std::vector<std::uint32_t>> cells;
  for (const auto& v : candidates)
    if (is_face(p, v)) cells.insert(v);

  std::vector<Cell> out = inclusion_maximal(std::move(cells));
  for (Cell& c : out) {
    RatMat pts;
    for (std::uint32_t s : c.vertices) pts.push_back(indicator_vector(s, n));
    c.dim = affine_rank(pts) - 1;
  }
  return out;
}

// --- BFS mode -------------------------------------------------------------
//
// Affine functions lying below the lifted points form a polyhedron whose
// vertices correspond to the full-dimensional cells of S_p; adjacent cells
// share a wall exactly when the vertices share an edge. We enumerate the
// vertices by pivoting with a lexicographic (symbolic epsilon) perturbation,
// inside an exact bounding box so the start corner is trivially feasible.

struct LexVec {
  RatVec c;  // c[0] main part, c[1+r] coefficient of the r-th epsilon

  LexVec() = default;
  explicit LexVec(size_t len) : c(len, Rat(0)) {}

  void sub_scaled(const LexVec& o, const Rat& f) {
    for (size_t i = 0; i < c.size(); ++i) c[i] -= f * o.c[i];
  }
  void divide(const Rat& f) {
    for (Rat& x : c) x /= f;
  }
  int lex_sign() const {
    for (const Rat& x : c)
      if (int s = sgn(x); s != 0) return s;
    return 0;
  }
  bool lex_less(const LexVec& o) const {
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] < o.c[i]) return true;
      if (c[i] > o.c[i]) return false;
    }
    return false;
  }
};

struct QuotientRow {
  RatVec a;  // coefficients over the d+1 quotient coordinates
  Rat rhs;
  bool original;          // false for bounding-box rows
  std::uint32_t vertex;   // dom mask when original
};

std::vector<Cell> maximal_cells_bfs(const SubsetFunction& p, long budget) {
  const auto dom = p.domain();
  const int n = p.n();
  RatMat dom_points;
  for (std::uint32_t s : dom) dom_points.push_back(indicator_vector(s, n));

  // Greedy affine basis of dom p; d is the dimension of conv(dom p).
  RatMat basis_pts;
  for (const RatVec& pt : dom_points) {
    basis_pts.push_back(pt);
    if (!affinely_independent(basis_pts)) basis_pts.pop_back();
  }
  const int d = static_cast<int>(basis_pts.size()) - 1;
  if (d == 0) return {Cell{{dom[0]}, 0}};
  const int width = d + 1;

  std::vector<QuotientRow> rows;
  Rat max_abs(1);
  for (size_t u = 0; u < dom.size(); ++u) {
    auto mu = affine_coordinates(basis_pts, dom_points[u]);
    assert(mu);
    QuotientRow r;
    r.a = *mu;
    r.rhs = p.at(dom[u]).finite_value();
    r.original = true;
    r.vertex = dom[u];
    for (const Rat& x : r.a) max_abs = std::max(max_abs, Rat(abs(x)));
    max_abs = std::max(max_abs, Rat(abs(r.rhs)));
    rows.push_back(std::move(r));
  }
  // Any vertex of the unbounded polyhedron solves a (d+1)x(d+1) subsystem,
  // so a Hadamard-style bound on the Cramer ratios gives a safe box size.
  Rat big(1);
  for (int i = 0; i < width + 1; ++i) big *= Rat(width + 1) * max_abs;
  // Denominators of the row entries rescale the Cramer bound; clearing them
  // multiplies each row by at most its denominator lcm.
  for (const QuotientRow& r : rows) {
    Rat dlcm(1);
    for (const Rat& x : r.a) dlcm *= x.get_den();
    dlcm *= r.rhs.get_den();
    big *= dlcm;
  }
  const Rat box = big + 1;

  for (int i = 0; i < width; ++i) {  // y_i <= box
    QuotientRow r;
    r.a.assign(width, Rat(0));
    r.a[i] = 1;
    r.rhs = box;
    r.original = false;
    rows.push_back(std::move(r));
  }
  for (int i = 0; i < width; ++i) {  // -y_i <= box
    QuotientRow r;
    r.a.assign(width, Rat(0));
    r.a[i] = -1;
    r.rhs = box;
    r.original = false;
    rows.push_back(std::move(r));
  }

  const int m = static_cast<int>(rows.size());
  const size_t lexlen = 1 + static_cast<size_t>(m);
  auto lex_rhs = [&](int r) {
    LexVec v(lexlen);
    v.c[0] = rows[r].rhs;
    v.c[1 + r] = 1;
    return v;
  };

  std::vector<int> start(width);
  for (int i = 0; i < width; ++i) start[i] = m - width + i;  // the lower box rows

  std::set<std::vector<int>> seen{start};
  std::queue<std::vector<int>> queue;
  queue.push(start);
  std::set<std::vector<std::uint32_t>> cells;
  long visited = 0;

  while (!queue.empty()) {
    const std::vector<int> basis = std::move(queue.front());
    queue.pop();
    if (++visited > budget)
      throw BfsBudgetExhausted("maximal_cells: BFS vertex budget exhausted");

    // Solve A_B y = rhs_B, tracking the inverse for the edge directions.
    RatMat a(width, RatVec(width));
    RatMat inv(width, RatVec(width, Rat(0)));
    std::vector<LexVec> y;
    for (int i = 0; i < width; ++i) {
      a[i] = rows[basis[i]].a;
      inv[i][i] = 1;
      y.push_back(lex_rhs(basis[i]));
    }
    for (int col = 0; col < width; ++col) {
      int piv = -1;
      for (int i = col; i < width; ++i)
        if (sgn(a[i][col]) != 0) {
          piv = i;
          break;
        }
      assert(piv >= 0);
      std::swap(a[col], a[piv]);
      std::swap(inv[col], inv[piv]);
      std::swap(y[col], y[piv]);
      const Rat pv = a[col][col];
      for (int j = 0; j < width; ++j) {
        a[col][j] /= pv;
        inv[col][j] /= pv;
      }
      y[col].divide(pv);
      for (int i = 0; i < width; ++i) {
        if (i == col) continue;
        const Rat f = a[i][col];
        if (sgn(f) == 0) continue;
        for (int j = 0; j < width; ++j) {
          a[i][j] -= f * a[col][j];
          inv[i][j] -= f * inv[col][j];
        }
        y[i].sub_scaled(y[col], f);
      }
    }

    // Original rows tight for the unperturbed functional form the cell.
    std::vector<std::uint32_t> tight;
    for (int r = 0; r < m; ++r) {
      if (!rows[r].original) continue;
      Rat slack = rows[r].rhs;
      for (int j = 0; j < width; ++j) slack -= rows[r].a[j] * y[j].c[0];
      if (sgn(slack) == 0) tight.push_back(rows[r].vertex);
    }
    {
      RatMat pts;
      for (std::uint32_t s : tight) pts.push_back(indicator_vector(s, n));
      if (affine_rank(pts) == width) {
        std::sort(tight.begin(), tight.end());
        cells.insert(std::move(tight));
      }
    }

    // Cross each wall: relax one basis row, walk the edge to the next vertex.
    for (int k = 0; k < width; ++k) {
      RatVec w(width);
      for (int j = 0; j < width; ++j) w[j] = -inv[j][k];
      int best_row = -1;
      LexVec best_t;
      for (int r = 0; r < m; ++r) {
        if (std::find(basis.begin(), basis.end(), r) != basis.end()) continue;
        Rat coef(0);
        for (int j = 0; j < width; ++j) coef += rows[r].a[j] * w[j];
        if (sgn(coef) <= 0) continue;
        LexVec slack = lex_rhs(r);
        for (int j = 0; j < width; ++j) slack.sub_scaled(y[j], rows[r].a[j]);
        slack.divide(coef);
        if (best_row < 0 || slack.lex_less(best_t)) {
          best_row = r;
          best_t = std::move(slack);
        }
      }
      assert(best_row >= 0);  // the box blocks every direction
      std::vector<int> next = basis;
      next[k] = best_row;
      std::sort(next.begin(), next.end());
      if (seen.insert(next).second) queue.push(next);
    }
  }

  std::vector<Cell> out;
  for (const auto& v : cells) out.push_back(Cell{v, d});
  return out;
}

}  // namespace

std::vector<Cell> maximal_cells(const SubsetFunction& p, const MaximalCellsOptions& opts) {
  if (!p.has_finite_value()) throw std::invalid_argument("maximal_cells: empty effective domain");
  if (opts.mode == CellMode::exhaustive) {
    if (p.n() > 4) throw std::invalid_argument("maximal_cells: exhaustive mode supports n <= 4");
    return maximal_cells_exhaustive(p);
  }
  if (p.n() > 6) throw std::invalid_argument("maximal_cells: BFS mode supports n <= 6");
  return maximal_cells_bfs(p, opts.bfs_vertex_budget);
}

int cone_dimension(const SubsetFunction& p, const MaximalCellsOptions& opts) {
  const int n = p.n();
  for (std::uint32_t s = 0; s < p.table_size(); ++s)
    if (!p.at(s).is_finite())
      throw std::invalid_argument("cone_dimension: requires finite values everywhere");
  const std::vector<Cell> cells = maximal_cells(p, opts);

  RowSpace equations(1 << n);
  for (const Cell& cell : cells) {
    RatMat basis_pts;
    std::vector<std::uint32_t> basis_verts;
    std::vector<std::uint32_t> rest;
    for (std::uint32_t s : cell.vertices) {
      basis_pts.push_back(indicator_vector(s, n));
      if (affinely_independent(basis_pts)) {
        basis_verts.push_back(s);
      } else {
        basis_pts.pop_back();
        rest.push_back(s);
      }
    }
    for (std::uint32_t u : rest) {
      auto mu = affine_coordinates(basis_pts, indicator_vector(u, n));
      assert(mu);
      RatVec row(1u << n, Rat(0));
      row[u] = 1;
      for (size_t i = 0; i < basis_verts.size(); ++i) row[basis_verts[i]] -= (*mu)[i];
      equations.add(std::move(row));
    }
  }
  return (1 << n) - equations.rank();
}

int cone_dimension(const SubsetFunction& p) {
  MaximalCellsOptions opts;
  opts.mode = p.n() <= 4 ? CellMode::exhaustive : CellMode::bfs;
  return cone_dimension(p, opts);
}

}  // namespace vdm
