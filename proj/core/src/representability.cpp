#include "vdm/representability.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <thread>

namespace vdm {

namespace {

using Grid = std::vector<std::vector<FieldElem>>;

Grid zero_grid(const FieldSpecPtr& spec, int rows, int cols) {
  return Grid(rows, std::vector<FieldElem>(cols, FieldElem::zero(spec)));
}

Grid conj_transpose(const Grid& g) {
  Grid out(g.empty() ? 0 : g[0].size(), std::vector<FieldElem>());
  for (size_t j = 0; g.size() && j < g[0].size(); ++j)
    for (size_t i = 0; i < g.size(); ++i) out[j].push_back(g[i][j].conj());
  return out;
}

Grid mat_mul(const FieldSpecPtr& spec, const Grid& a, const Grid& b) {
  const size_t rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  Grid out = zero_grid(spec, rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < cols; ++j) {
        if (b[k][j].is_zero()) continue;
        out[i][j] = out[i][j] + a[i][k] * b[k][j];
      }
    }
  return out;
}

int field_rank(const FieldSpecPtr& spec, Grid m) {
  (void)spec;
  const size_t rows = m.size();
  const size_t cols = rows == 0 ? 0 : m[0].size();
  int r = 0;
  for (size_t c = 0; c < cols && r < static_cast<int>(rows); ++c) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      FieldElem f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    ++r;
  }
  return r;
}

Grid field_inverse(const FieldSpecPtr& spec, Grid m) {
  const size_t k = m.size();
  Grid inv = zero_grid(spec, k, k);
  for (size_t i = 0; i < k; ++i) inv[i][i] = FieldElem::one(spec);
  for (size_t c = 0; c < k; ++c) {
    size_t piv = k;
    for (size_t i = c; i < k; ++i)
      if (!m[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv == k) throw std::invalid_argument("field_inverse: singular matrix");
    std::swap(m[c], m[piv]);
    std::swap(inv[c], inv[piv]);
    FieldElem d = m[c][c];
    for (size_t j = 0; j < k; ++j) {
      m[c][j] = m[c][j] / d;
      inv[c][j] = inv[c][j] / d;
    }
    for (size_t i = 0; i < k; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      FieldElem f = m[i][c];
      for (size_t j = 0; j < k; ++j) {
        m[i][j] = m[i][j] - f * m[c][j];
        inv[i][j] = inv[i][j] - f * inv[c][j];
      }
    }
  }
  return inv;
}

Grid submatrix_drop(const Grid& g, size_t drop_row, size_t drop_col) {
  Grid out;
  for (size_t i = 0; i < g.size(); ++i) {
    if (i == drop_row) continue;
    std::vector<FieldElem> row;
    for (size_t j = 0; j < g[i].size(); ++j)
      if (j != drop_col) row.push_back(g[i][j]);
    out.push_back(std::move(row));
  }
  return out;
}

// adj(M)_{ij} = (-1)^{i+j} det(M with row j and column i dropped).
Grid adjugate(const FieldSpecPtr& spec, const Grid& m) {
  const size_t k = m.size();
  Grid out = zero_grid(spec, k, k);
  if (k == 0) return out;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      FieldElem d = grid_det(spec, submatrix_drop(m, j, i));
      out[i][j] = ((i + j) % 2 == 0) ? d : -d;
    }
  return out;
}

Grid rank_one(const FieldSpecPtr& spec, const std::vector<FieldElem>& v, bool conjugated) {
  const size_t r = v.size();
  Grid out = zero_grid(spec, r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) out[i][j] = v[i] * (conjugated ? v[j].conj() : v[j]);
  return out;
}

// Moebius inversion of subset evaluations into multiaffine coefficients.
MultiAffinePoly moebius_coefficients(const FieldSpecPtr& spec, int n,
                                     std::vector<FieldElem> values) {
  for (int bit = 0; bit < n; ++bit)
    for (std::uint32_t t = 0; t < (1u << n); ++t)
      if ((t >> bit) & 1u) values[t] = values[t] - values[t ^ (1u << bit)];
  MultiAffinePoly f(spec, n);
  for (std::uint32_t t = 0; t < (1u << n); ++t) f.at(t) = std::move(values[t]);
  return f;
}

}  // namespace

SubsetFunction principal_minor_valuations(const FieldMatrix& a) {
  SubsetFunction p(a.size());
  for (std::uint32_t s = 0; s < p.table_size(); ++s) p.set(s, valuation(a.principal_minor(s)));
  return p;
}

MultiAffinePoly det_poly(const FieldMatrix& a, const std::vector<std::vector<FieldElem>>& vectors) {
  const FieldSpecPtr& spec = a.spec();
  const int r = a.size();
  const int n = static_cast<int>(vectors.size());
  if (n > kMaxGroundSet) throw std::invalid_argument("det_poly: too many vectors");
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != r) throw std::invalid_argument("det_poly: vector length != matrix size");

  std::vector<FieldElem> values;
  values.reserve(1u << n);
  for (std::uint32_t u = 0; u < (1u << n); ++u) {
    Grid m = zero_grid(spec, r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) m[i][j] = a.at(i, j);
    for (int k = 0; k < n; ++k) {
      if (!((u >> k) & 1u)) continue;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m[i][j] = m[i][j] + vectors[k][i] * vectors[k][j].conj();
    }
    values.push_back(grid_det(spec, m));
  }
  return moebius_coefficients(spec, n, std::move(values));
}

MultiAffinePoly partial(const MultiAffinePoly& f, int var) {
  if (var < 1 || var > f.n()) throw std::invalid_argument("partial: variable out of range");
  const std::uint32_t bit = Subset::bit_of(var);
  MultiAffinePoly out(f.spec(), f.n());
  for (std::uint32_t t = 0; t < f.table_size(); ++t)
    if (!(t & bit)) out.at(t) = f.at(t | bit);
  return out;
}

namespace {

SmallPoly negated(const SmallPoly& s) {
  SmallPoly out(s.spec(), s.n());
  for (const auto& [key, c] : s.terms()) out.add_term(key, -c);
  return out;
}

MultiAffinePoly scaled_by(const MultiAffinePoly& f, const FieldElem& c) {
  MultiAffinePoly out(f.spec(), f.n());
  for (std::uint32_t t = 0; t < f.table_size(); ++t)
    if (!f.at(t).is_zero()) out.at(t) = f.at(t) * c;
  return out;
}

}  // namespace

FactorizationReport verify_factorization(const FieldMatrix& a,
                                         const std::vector<std::vector<FieldElem>>& vectors,
                                         int i, int j) {
  const FieldSpecPtr& spec = a.spec();
  const int r = a.size();
  const int n = static_cast<int>(vectors.size());
  if (i == j || i < 1 || j < 1 || i > n || j > n)
    throw std::invalid_argument("verify_factorization: bad variable pair");

  int sigma;
  switch (a.tag()) {
    case MatrixTag::hermitian: sigma = 1; break;
    case MatrixTag::skew_hermitian: sigma = -1; break;
    case MatrixTag::symmetric:
    case MatrixTag::skew_symmetric:
      if (!spec->base.conj_is_identity() || spec->twist)
        throw std::invalid_argument(
            "verify_factorization: (skew-)symmetric tag needs a trivial involution");
      sigma = a.tag() == MatrixTag::symmetric ? 1 : -1;
      break;
    default:
      throw std::invalid_argument("verify_factorization: matrix carries no sigma-structure");
  }

  const MultiAffinePoly f = det_poly(a, vectors);
  const SmallPoly delta = rayleigh(f, i, j);

  FactorizationReport report{false, sigma, false, MultiAffinePoly(spec, n)};
  const std::vector<FieldElem>& vi = vectors[i - 1];
  const std::vector<FieldElem>& vj = vectors[j - 1];
  auto all_zero = [](const std::vector<FieldElem>& v) {
    return std::all_of(v.begin(), v.end(), [](const FieldElem& x) { return x.is_zero(); });
  };
  auto multiple_of = [&](const std::vector<FieldElem>& x,
                         const std::vector<FieldElem>& base) -> std::optional<FieldElem> {
    // x == lambda * base for a nonzero base.
    int lead = -1;
    for (int k = 0; k < r; ++k)
      if (!base[k].is_zero()) {
        lead = k;
        break;
      }
    assert(lead >= 0);
    FieldElem lambda = x[lead] / base[lead];
    for (int k = 0; k < r; ++k)
      if (!(x[k] == lambda * base[k])) return std::nullopt;
    return lambda;
  };

  if (all_zero(vi) && all_zero(vj)) {
    report.dependent_route = true;  // g = 0 and Delta = 0
  } else if (!all_zero(vj) && multiple_of(vi, vj)) {
    report.dependent_route = true;
    report.g = scaled_by(partial(f, j), *multiple_of(vi, vj));
  } else if (!all_zero(vi) && multiple_of(vj, vi)) {
    report.dependent_route = true;
    report.g = scaled_by(partial(f, i), *multiple_of(vj, vi));
  } else {
    // Independent columns: move v_i, v_j to e_1, e_2 by a congruence and read
    // g off as the (1,2) deletion determinant (Dodgson condensation).
    Grid u_cols = zero_grid(spec, r, 0);
    for (int k = 0; k < r; ++k) u_cols[k] = {vi[k], vj[k]};
    int rank = 2;
    for (int k = 0; k < r && rank < r; ++k) {
      for (int row = 0; row < r; ++row) u_cols[row].push_back(row == k ? FieldElem::one(spec)
                                                                       : FieldElem::zero(spec));
      if (field_rank(spec, u_cols) == rank + 1) {
        ++rank;
      } else {
        for (int row = 0; row < r; ++row) u_cols[row].pop_back();
      }
    }
    const Grid uinv = field_inverse(spec, u_cols);
    Grid a_grid = zero_grid(spec, r, r);
    for (int x = 0; x < r; ++x)
      for (int y = 0; y < r; ++y) a_grid[x][y] = a.at(x, y);
    const Grid a_prime = mat_mul(spec, mat_mul(spec, uinv, a_grid), conj_transpose(uinv));
    std::vector<std::vector<FieldElem>> v_prime;
    for (const auto& v : vectors) {
      Grid col(r, std::vector<FieldElem>(1, FieldElem::zero(spec)));
      for (int k = 0; k < r; ++k) col[k][0] = v[k];
      Grid image = mat_mul(spec, uinv, col);
      std::vector<FieldElem> out;
      for (int k = 0; k < r; ++k) out.push_back(image[k][0]);
      v_prime.push_back(std::move(out));
    }
    // The congruence preserves the sigma-structure; build it tagged so a
    // violation is caught immediately.
    FieldMatrix::from_entries(spec, a_prime,
                              sigma == 1 ? MatrixTag::hermitian : MatrixTag::skew_hermitian);

    std::vector<FieldElem> values;
    values.reserve(1u << n);
    for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
      Grid m = a_prime;
      for (int k = 0; k < n; ++k) {
        if (!((subset >> k) & 1u)) continue;
        const Grid vvt = rank_one(spec, v_prime[k], true);
        for (int x = 0; x < r; ++x)
          for (int y = 0; y < r; ++y) m[x][y] = m[x][y] + vvt[x][y];
      }
      values.push_back(grid_det(spec, submatrix_drop(m, 0, 1)));
    }
    MultiAffinePoly g_prime = moebius_coefficients(spec, n, std::move(values));
    FieldElem det_u = grid_det(spec, u_cols);
    report.g = scaled_by(g_prime, det_u * det_u.conj());
  }

  SmallPoly rhs = multiply_affine(report.g, conj_at_sigma(report.g, sigma));
  if (sigma == -1 && ((r - 1) % 2 == 1)) rhs = negated(rhs);
  report.pass = (delta == rhs);
  return report;
}

SkewPlusRankOneReport skew_plus_rank_one(const FieldMatrix& b, const FieldElem& alpha,
                                         const std::vector<FieldElem>& v) {
  if (b.tag() != MatrixTag::skew_symmetric)
    throw std::invalid_argument("skew_plus_rank_one: matrix must be tagged skew-symmetric");
  const FieldSpecPtr& spec = b.spec();
  const int n = b.size();
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("skew_plus_rank_one: vector length mismatch");

  Grid a = zero_grid(spec, n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) a[x][y] = b.at(x, y) + alpha * v[x] * v[y];

  SkewPlusRankOneReport report(n);
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const std::vector<int> elems = subset_elements(s);
    Grid sub(elems.size()), bsub(elems.size());
    for (size_t x = 0; x < elems.size(); ++x)
      for (size_t y = 0; y < elems.size(); ++y) {
        sub[x].push_back(a[elems[x] - 1][elems[y] - 1]);
        bsub[x].push_back(b.at(elems[x] - 1, elems[y] - 1));
      }
    report.p.set(s, valuation(grid_det(spec, sub)));

    if (elems.size() % 2 == 1) {
      if (!grid_det(spec, bsub).is_zero()) report.odd_minors_vanish = false;
    } else if (!elems.empty()) {
      const Grid adj = adjugate(spec, bsub);
      FieldElem quad = FieldElem::zero(spec);
      for (size_t x = 0; x < elems.size(); ++x)
        for (size_t y = 0; y < elems.size(); ++y)
          quad = quad + v[elems[x] - 1] * adj[x][y] * v[elems[y] - 1];
      if (!quad.is_zero()) report.even_quad_vanishes = false;
    }
  }
  report.verdict = is_valuated_delta_matroid(report.p);
  return report;
}

std::string form_name(FormKind kind) {
  switch (kind) {
    case FormKind::symplectic: return "symplectic";
    case FormKind::quadratic_even: return "quadratic-even";
    case FormKind::quadratic_odd: return "quadratic-odd";
    case FormKind::hermitian_even: return "hermitian-even";
  }
  throw std::logic_error("form_name: unreachable");
}

FormKind form_from_name(const std::string& name) {
  if (name == "symplectic") return FormKind::symplectic;
  if (name == "quadratic-even") return FormKind::quadratic_even;
  if (name == "quadratic-odd") return FormKind::quadratic_odd;
  if (name == "hermitian-even") return FormKind::hermitian_even;
  throw std::invalid_argument("unknown form kind: \"" + name + "\"");
}

IsotropicReport isotropic_rep(FormKind kind, const FieldMatrix& a_or_b,
                              const std::optional<FieldElem>& alpha,
                              const std::optional<std::vector<FieldElem>>& v) {
  const FieldSpecPtr& spec = a_or_b.spec();
  const int n = a_or_b.size();
  const bool trivial_involution = spec->base.conj_is_identity() && !spec->twist;

  Grid a = zero_grid(spec, n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) a[x][y] = a_or_b.at(x, y);

  switch (kind) {
    case FormKind::symplectic:
      if (a_or_b.tag() != MatrixTag::symmetric)
        throw std::invalid_argument("isotropic_rep: symplectic case needs a symmetric matrix");
      if (!trivial_involution)
        throw std::invalid_argument("isotropic_rep: symplectic case needs a trivial involution");
      break;
    case FormKind::quadratic_even:
      if (a_or_b.tag() != MatrixTag::skew_symmetric)
        throw std::invalid_argument("isotropic_rep: quadratic-even case needs a skew-symmetric matrix");
      if (!trivial_involution)
        throw std::invalid_argument("isotropic_rep: quadratic case needs a trivial involution");
      break;
    case FormKind::quadratic_odd: {
      if (a_or_b.tag() != MatrixTag::skew_symmetric)
        throw std::invalid_argument("isotropic_rep: quadratic-odd case takes skew-symmetric B");
      if (!trivial_involution)
        throw std::invalid_argument("isotropic_rep: quadratic case needs a trivial involution");
      if (!alpha || !v || static_cast<int>(v->size()) != n)
        throw std::invalid_argument("isotropic_rep: quadratic-odd case needs alpha and v");
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) a[x][y] = a[x][y] - *alpha * (*v)[x] * (*v)[y];
      break;
    }
    case FormKind::hermitian_even:
      if (a_or_b.tag() != MatrixTag::skew_hermitian)
        throw std::invalid_argument("isotropic_rep: hermitian case needs a skew-Hermitian matrix");
      if (trivial_involution)
        throw std::invalid_argument("isotropic_rep: hermitian case needs a nontrivial involution");
      break;
  }

  IsotropicReport report(n);
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    // Columns of M = (A | I | v) indexed by {e_i : i in S} then {f_i : i not in S}.
    Grid sel(n);
    for (int row = 0; row < n; ++row) {
      for (int col = 0; col < n; ++col)
        if ((s >> col) & 1u) sel[row].push_back(a[row][col]);
      for (int col = 0; col < n; ++col)
        if (!((s >> col) & 1u))
          sel[row].push_back(row == col ? FieldElem::one(spec) : FieldElem::zero(spec));
    }
    const FieldElem dsel = grid_det(spec, sel);

    const std::vector<int> elems = subset_elements(s);
    Grid sub(elems.size());
    for (size_t x = 0; x < elems.size(); ++x)
      for (size_t y = 0; y < elems.size(); ++y) sub[x].push_back(a[elems[x] - 1][elems[y] - 1]);
    const FieldElem a_s = s == 0 ? FieldElem::one(spec) : grid_det(spec, sub);

    if (!(dsel == a_s || dsel == -a_s)) report.minors_agree = false;
    report.p.set(s, valuation(dsel));
  }
  report.verdict = is_valuated_delta_matroid(report.p);
  return report;
}

FieldElem hypdet(const std::vector<FieldElem>& a) {
  if (a.size() != 8) throw std::invalid_argument("hypdet: need all 8 values for n = 3");
  const FieldElem &a0 = a[0b000], &a1 = a[0b001], &a2 = a[0b010], &a3 = a[0b100];
  const FieldElem &a12 = a[0b011], &a13 = a[0b101], &a23 = a[0b110], &a123 = a[0b111];
  const FieldSpecPtr& spec = a0.spec();
  const FieldElem two = FieldElem::from_rat(spec, Rat(2));
  const FieldElem four = FieldElem::from_rat(spec, Rat(4));
  return a0 * a0 * a123 * a123 + a1 * a1 * a23 * a23 + a2 * a2 * a13 * a13 + a3 * a3 * a12 * a12 -
         two * a0 * a1 * a23 * a123 - two * a0 * a2 * a13 * a123 - two * a0 * a3 * a12 * a123 -
         two * a1 * a2 * a13 * a23 - two * a1 * a3 * a12 * a23 - two * a2 * a3 * a12 * a13 +
         four * a0 * a12 * a13 * a23 + four * a1 * a2 * a3 * a123;
}

namespace {

Rat lcm_of_denominators(const SubsetFunction& p) {
  mpz_class l(1);
  for (std::uint32_t s = 0; s < p.table_size(); ++s) {
    mpz_class d = p.at(s).finite_value().get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return Rat(l);
}

FieldSpecPtr ordered_t_adic_spec() {
  static const FieldSpecPtr spec = [] {
    FieldSpec s;
    s.base = BaseFieldCtx::rationals();
    s.vkind = ValuationKind::t_adic;
    return make_field_spec(std::move(s));
  }();
  return spec;
}

}  // namespace

Realize3Report realize3(const SubsetFunction& p) {
  Realize3Report report;
  if (p.n() != 3) {
    report.failure = "p must live on the 3-cube";
    return report;
  }
  for (std::uint32_t s = 0; s < 8; ++s)
    if (!p.at(s).is_finite()) {
      report.failure = "p must be finite everywhere";
      return report;
    }
  if (!(p.at(0) == Val(Rat(0)))) {
    report.failure = "p of the empty set must be 0";
    return report;
  }
  const Check3Result c3 = check3(p);
  if (!c3.pass) {
    report.failure = "p is not a valuated Delta-matroid: unique minimum on the diagonal (" +
                     Subset(c3.edge.first, 3).to_string() + "," +
                     Subset(c3.edge.second, 3).to_string() + ")";
    return report;
  }

  // Clear denominators; positive scaling does not change the subdivision.
  report.scale = lcm_of_denominators(p);
  std::vector<long> q(8);
  for (std::uint32_t s = 0; s < 8; ++s) {
    Rat scaled = p.at(s).finite_value() * report.scale;
    assert(scaled.get_den() == 1);
    q[s] = static_cast<long>(mpz_class(scaled.get_num()).get_si());
  }

  const FieldSpecPtr spec = ordered_t_adic_spec();
  const FieldElem t = FieldElem::t(spec);
  report.assignment.assign(8, FieldElem::zero(spec));
  report.assignment[0] = FieldElem::one(spec);
  for (std::uint32_t s = 1; s < 8; ++s) {
    FieldElem power = t.pow(q[s]);
    report.assignment[s] = (s == 0b111) ? power : -power;
  }

  report.valuations_match = true;
  for (std::uint32_t s = 0; s < 8; ++s)
    if (!(valuation(report.assignment[s]) == Val(Rat(q[s])))) report.valuations_match = false;

  const auto& a = report.assignment;
  report.pair_inequalities = true;
  static constexpr std::uint32_t kSingles[3] = {0b001, 0b010, 0b100};
  for (int x = 0; x < 3; ++x)
    for (int y = x + 1; y < 3; ++y) {
      if (field_sign(a[kSingles[x]] * a[kSingles[y]] - a[kSingles[x] | kSingles[y]]) < 0)
        report.pair_inequalities = false;
    }
  for (int k = 0; k < 3; ++k) {
    const std::uint32_t bk = kSingles[k];
    const std::uint32_t bi = kSingles[(k + 1) % 3], bj = kSingles[(k + 2) % 3];
    if (field_sign(a[bi | bk] * a[bj | bk] - a[bk] * a[0b111]) < 0)
      report.pair_inequalities = false;
  }
  report.hypdet_nonpositive = field_sign(hypdet(report.assignment)) <= 0;
  report.ok = report.valuations_match && report.pair_inequalities && report.hypdet_nonpositive;
  if (!report.ok) report.failure = "verification failed";
  return report;
}

// ---------------------------------------------------------------------------
// Samplers and the conjecture search
// ---------------------------------------------------------------------------

BaseElem random_base_elem(const BaseFieldCtx& ctx, Rng& rng, bool nonzero) {
  while (true) {
    Rat re, al(0);
    if (ctx.characteristic == 0) {
      re = Rat(rng.int_in(-4, 4));
      if (ctx.quadratic) al = Rat(rng.int_in(-4, 4));
    } else {
      re = Rat(static_cast<long>(rng.below(ctx.characteristic)));
      if (ctx.quadratic) al = Rat(static_cast<long>(rng.below(ctx.characteristic)));
    }
    BaseElem x = b_make(ctx, re, al);
    if (!nonzero || !b_is_zero(x)) return x;
  }
}

FieldElem random_field_elem(const FieldSpecPtr& spec, Rng& rng, bool nonzero) {
  if (!nonzero && rng.chance(15)) return FieldElem::zero(spec);
  const long k = rng.int_in(-2, 3);
  switch (spec->vkind) {
    case ValuationKind::trivial:
      return FieldElem::from_base(spec, random_base_elem(spec->base, rng, true));
    case ValuationKind::t_adic: {
      FieldElem unit = FieldElem::from_base(spec, random_base_elem(spec->base, rng, true));
      if (rng.chance(40))
        unit = unit + FieldElem::t(spec) *
                          FieldElem::from_base(spec, random_base_elem(spec->base, rng, false));
      return unit * FieldElem::t(spec).pow(k);
    }
    case ValuationKind::p_adic: {
      const long p = spec->prime;
      long u;
      do {
        u = rng.int_in(-7, 7);
      } while (u == 0 || u % p == 0);
      BaseElem base = b_make(spec->base, Rat(u),
                             spec->base.quadratic ? Rat(rng.int_in(-7, 7)) : Rat(0));
      Rat pk(1);
      for (long c = 0; c < (k >= 0 ? k : -k); ++c) pk *= p;
      if (k < 0) pk = 1 / pk;
      return FieldElem::from_base(spec, base) * FieldElem::from_rat(spec, pk);
    }
  }
  throw std::logic_error("random_field_elem: unreachable");
}

std::vector<FieldElem> random_vector(const FieldSpecPtr& spec, int len, Rng& rng) {
  std::vector<FieldElem> out;
  for (int i = 0; i < len; ++i) out.push_back(random_field_elem(spec, rng));
  return out;
}

FieldElem random_fixed_scalar(const FieldSpecPtr& spec, Rng& rng) {
  if (rng.chance(50)) return FieldElem::from_rat(spec, Rat(rng.int_in(-4, 4)));
  FieldElem y = random_field_elem(spec, rng);
  return y + y.conj();
}

FieldMatrix random_structured_matrix(const FieldSpecPtr& spec, int n, MatrixTag tag, Rng& rng) {
  FieldMatrix m(spec, n, tag);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (i == j) {
        switch (tag) {
          case MatrixTag::symmetric:
          case MatrixTag::general:
            m.at(i, i) = random_field_elem(spec, rng);
            break;
          case MatrixTag::skew_symmetric:
            break;  // alternating: zero diagonal
          case MatrixTag::hermitian: {
            if (rng.chance(30)) break;
            FieldElem y = random_field_elem(spec, rng);
            m.at(i, i) = y + y.conj();
            break;
          }
          case MatrixTag::skew_hermitian: {
            if (rng.chance(30)) break;
            FieldElem y = random_field_elem(spec, rng);
            m.at(i, i) = y - y.conj();
            break;
          }
        }
        continue;
      }
      FieldElem x = random_field_elem(spec, rng);
      m.at(i, j) = x;
      switch (tag) {
        case MatrixTag::general: m.at(j, i) = random_field_elem(spec, rng); break;
        case MatrixTag::symmetric: m.at(j, i) = x; break;
        case MatrixTag::skew_symmetric: m.at(j, i) = -x; break;
        case MatrixTag::hermitian: m.at(j, i) = x.conj(); break;
        case MatrixTag::skew_hermitian: m.at(j, i) = -x.conj(); break;
      }
    }
  m.verify_tag();
  return m;
}

ConjectureSearchReport conjecture_search(const ConjectureSearchConfig& config) {
  if (!config.spec) throw std::invalid_argument("conjecture_search: missing field spec");
  if (config.n < 1 || config.n > 6) throw std::invalid_argument("conjecture_search: n out of range");
  if (config.shape == ConjectureShape::char2_omega_rank_one) {
    const BaseFieldCtx& b = config.spec->base;
    if (b.characteristic != 2 || !b.quadratic || !(b.min_c == 1) || !(b.conj_e == 1) ||
        !(b.conj_f == 1))
      throw std::invalid_argument(
          "conjecture_search: char-2 shape needs K = F[w], w^2 + w + beta = 0, conj(w) = w + 1");
  }

  ConjectureSearchReport report;
  report.config = config;

  auto run_trial = [&config](int trial) -> std::optional<ConjectureCounterexample> {
    // Per-trial seed derivation keeps trials independent of the job count.
    Rng rng(config.seed * 0x9E3779B97F4A7C15ull + 0xBF58476D1CE4E5B9ull * (trial + 1));
    const FieldSpecPtr& spec = config.spec;
    const int n = config.n;
    FieldMatrix a(spec, n, MatrixTag::general);
    if (config.shape == ConjectureShape::skew_hermitian_plus_rank_one) {
      FieldMatrix b = random_structured_matrix(spec, n, MatrixTag::skew_hermitian, rng);
      FieldElem gamma = random_fixed_scalar(spec, rng);
      while (gamma.is_zero()) gamma = random_fixed_scalar(spec, rng);
      std::vector<FieldElem> v = random_vector(spec, n, rng);
      v[rng.below(n)] = random_field_elem(spec, rng, true);  // keep C of rank exactly one
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) a.at(x, y) = b.at(x, y) + gamma * v[x] * v[y].conj();
    } else {
      FieldMatrix b = random_structured_matrix(spec, n, MatrixTag::hermitian, rng);
      FieldElem gamma = random_fixed_scalar(spec, rng);
      while (gamma.is_zero()) gamma = random_fixed_scalar(spec, rng);
      std::vector<FieldElem> w = random_vector(spec, n, rng);
      w[rng.below(n)] = random_field_elem(spec, rng, true);
      const FieldElem omega = FieldElem::alpha(spec);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          a.at(x, y) = b.at(x, y) + omega * gamma * w[x] * w[y].conj();
    }
    SubsetFunction p = principal_minor_valuations(a);
    CheckerResult verdict = is_valuated_delta_matroid(p);
    if (verdict.valuated) return std::nullopt;
    return ConjectureCounterexample{trial, std::move(a), std::move(p), *verdict.certificate};
  };

  const int jobs = std::max(1, config.jobs);
  std::vector<std::optional<ConjectureCounterexample>> slots(config.trials);
  if (jobs == 1) {
    for (int trial = 0; trial < config.trials; ++trial) slots[trial] = run_trial(trial);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        while (true) {
          const int trial = next.fetch_add(1);
          if (trial >= config.trials) return;
          slots[trial] = run_trial(trial);
        }
      });
    for (auto& th : pool) th.join();
  }
  report.trials_run = config.trials;
  for (auto& slot : slots)
    if (slot) report.counterexamples.push_back(std::move(*slot));
  return report;
}

}  // namespace vdm
