#include "toric/zlinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace toric {

namespace {

struct Pos {
  std::size_t r, c;
};

// Smallest |entry| among nonzero entries with row, col >= t; first in row-major order on ties.
std::optional<Pos> smallest_entry(const IntMatrix& s, std::size_t t) {
  std::optional<Pos> best;
  Integer best_abs;
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      Integer a = abs(s(i, j));
      if (!best || a < best_abs) {
        best = Pos{i, j};
        best_abs = a;
      }
    }
  return best;
}

Integer tdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer mod(const Integer& a, const Integer& d) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return r;
}

std::vector<std::vector<Rational>> to_rational(const IntMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

// Reduces row t (mod d) against Hermite rows f so that each pivot entry of t is minimal.
void shear_reduce(Vec& t, const IntMatrix& f, const Integer& d) {
  for (std::size_t k = 0; k < f.rows(); ++k) {
    std::size_t p = 0;
    while (p < f.cols() && f(k, p) == 0) ++p;
    if (p == f.cols()) continue;
    Integer g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), f(k, p).get_mpz_t(), d.get_mpz_t());
    Integer target = mod(t[p], g);
    Integer c = x * ((target - t[p]) / g);
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = mod(t[j] + c * f(k, j), d);
  }
}

}  // namespace

SnfDecomposition snf(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(R);
  IntMatrix v = IntMatrix::identity(C);
  std::size_t t = 0;
  while (t < std::min(R, C)) {
    auto p = smallest_entry(s, t);
    if (!p) break;
    s.swap_rows(t, p->r);
    u.swap_rows(t, p->r);
    s.swap_cols(t, p->c);
    v.swap_cols(t, p->c);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (s(i, t) == 0) continue;
        Integer q = tdiv(s(i, t), s(t, t));
        s.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (s(t, j) == 0) continue;
        Integer q = tdiv(s(t, j), s(t, t));
        s.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A nonzero remainder is smaller than the pivot; move the smallest one in.
        std::optional<Pos> best;
        Integer best_abs;
        for (std::size_t i = t + 1; i < R; ++i)
          if (s(i, t) != 0 && (!best || abs(s(i, t)) < best_abs)) {
            best = Pos{i, t};
            best_abs = abs(s(i, t));
          }
        for (std::size_t j = t + 1; j < C; ++j)
          if (s(t, j) != 0 && (!best || abs(s(t, j)) < best_abs)) {
            best = Pos{t, j};
            best_abs = abs(s(t, j));
          }
        if (best->c == t) {
          s.swap_rows(t, best->r);
          u.swap_rows(t, best->r);
        } else {
          s.swap_cols(t, best->c);
          v.swap_cols(t, best->c);
        }
        continue;
      }
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < R && !bad_row; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      s.add_row(t, *bad_row, 1);
      u.add_row(t, *bad_row, 1);
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
    ++t;
  }
  SnfDecomposition out{s, u, v, {}};
  for (std::size_t i = 0; i < std::min(R, C) && s(i, i) != 0; ++i) out.invariant_factors.push_back(s(i, i));
  return out;
}

std::size_t rank(const IntMatrix& m) {
  auto a = to_rational(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  auto a = to_rational(m);
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det.get_num();
}

IntMatrix inverse_unimodular(const IntMatrix& u) {
  const std::size_t n = u.rows();
  if (u.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  auto a = to_rational(u);
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::invalid_argument("matrix is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (inv[i][j].get_den() != 1) throw std::invalid_argument("matrix is not unimodular");
      out(i, j) = inv[i][j].get_num();
    }
  return out;
}

IntMatrix row_hermite_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t R = a.rows(), C = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    for (;;) {
      std::optional<std::size_t> p;
      for (std::size_t i = r; i < R; ++i)
        if (a(i, c) != 0 && (!p || abs(a(i, c)) < abs(a(*p, c)))) p = i;
      if (!p) break;
      a.swap_rows(r, *p);
      bool clean = true;
      for (std::size_t i = r + 1; i < R; ++i) {
        if (a(i, c) == 0) continue;
        a.add_row(i, r, -tdiv(a(i, c), a(r, c)));
        if (a(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) a.add_row(i, r, -fdiv(a(i, c), a(r, c)));
    ++r;
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < r; ++i) keep.push_back(i);
  return a.select_rows(keep);
}

IntMatrix lattice_basis(const IntMatrix& m) {
  IntMatrix h = row_hermite_form(m.transpose());
  if (h.rows() == 0) return IntMatrix(m.rows(), 0);
  return h.transpose();
}

IntMatrix kernel_basis(const IntMatrix& m) {
  auto d = snf(m);
  std::vector<std::size_t> idx;
  for (std::size_t j = d.rank(); j < m.cols(); ++j) idx.push_back(j);
  return lattice_basis(d.V.select_columns(idx));
}

std::optional<Vec> solve_integer(const IntMatrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_integer: length mismatch");
  auto d = snf(m);
  Vec c = d.U * b;
  Vec y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < d.rank()) {
      if (c[i] % d.invariant_factors[i] != 0) return std::nullopt;
      y[i] = c[i] / d.invariant_factors[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return d.V * y;
}

IntMatrix saturate(const IntMatrix& m) {
  IntMatrix ann = kernel_basis(m.transpose());
  return kernel_basis(ann.transpose());
}

IntMatrix complement_basis(const IntMatrix& saturated) {
  auto d = snf(saturated);
  for (const auto& f : d.invariant_factors)
    if (f != 1) throw std::invalid_argument("complement_basis: lattice is not saturated");
  if (d.rank() != saturated.cols()) throw std::invalid_argument("complement_basis: columns are dependent");
  IntMatrix w = inverse_unimodular(d.U);
  std::vector<std::size_t> idx;
  for (std::size_t j = d.rank(); j < saturated.rows(); ++j) idx.push_back(j);
  return w.select_columns(idx);
}

Vec Cokernel::lift(const Vec& g) const {
  auto x = solve_integer(hcat(projection, group.relations()), g);
  if (!x) throw std::logic_error("cokernel projection is not surjective");
  x->resize(projection.cols());
  return *x;
}

Cokernel cokernel_presentation(const IntMatrix& m) {
  const std::size_t R = m.rows();
  IntMatrix k = lattice_basis(m);
  auto d = snf(k);
  const std::size_t r = d.rank();

  std::vector<std::size_t> free_rows;
  for (std::size_t i = r; i < R; ++i) free_rows.push_back(i);
  IntMatrix f = row_hermite_form(d.U.select_rows(free_rows));

  std::vector<Integer> torsion;
  std::vector<Vec> trows;
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& di = d.invariant_factors[i];
    if (di == 1) continue;
    Vec t = d.U.row(i);
    for (auto& x : t) x = mod(x, di);
    // Choose the unit multiple with the lexicographically smallest reduced row.
    Vec best;
    bool have = false;
    const long limit = di <= 10000 ? di.get_si() : 2;
    for (long unit = 1; unit < limit; ++unit) {
      Integer ug = gcd(Integer(unit), di);
      if (ug != 1) continue;
      Vec cand = t;
      for (auto& x : cand) x = mod(x * unit, di);
      shear_reduce(cand, f, di);
      if (!have || cand < best) {
        best = cand;
        have = true;
      }
    }
    torsion.push_back(di);
    trows.push_back(best);
  }
  IntMatrix proj = vcat(f, IntMatrix::from_rows(trows, R));
  return Cokernel{FgAbGroup(f.rows(), torsion), proj};
}

}  // namespace toric
