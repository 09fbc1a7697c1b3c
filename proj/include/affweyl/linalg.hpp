#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace affweyl {

using Int = long long;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using RVec = std::vector<Rat>;

inline RVec to_rvec(const IVec& v) {
  RVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

inline bool is_integral(const Rat& x) { return x.get_den() == 1; }

inline Int floor_rat(const Rat& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("floor_rat: out of range");
  return q.get_si();
}

inline Int ceil_rat(const Rat& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("ceil_rat: out of range");
  return q.get_si();
}

// Dense integer matrix, row-major.
struct IMat {
  int rows = 0, cols = 0;
  IVec a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0) {}

  Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
  Int at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static IMat identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const IMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  IMat operator*(const IMat& o) const {
    if (cols != o.rows) throw std::invalid_argument("IMat: dimension mismatch");
    IMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        Int v = at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
      }
    return r;
  }

  IVec apply(const IVec& v) const {
    if (int(v.size()) != cols) throw std::invalid_argument("IMat::apply: dimension mismatch");
    IVec r(rows, 0);
    for (int i = 0; i < rows; ++i) {
      Int s = 0;
      for (int j = 0; j < cols; ++j) s += at(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  IMat transposed() const {
    IMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }
};

// Dense rational matrix.
struct RMat {
  int rows = 0, cols = 0;
  RVec a;

  RMat() = default;
  RMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Rat(0)) {}

  Rat& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static RMat from(const IMat& m) {
    RMat r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) r.at(i, j) = Rat(m.at(i, j));
    return r;
  }

  RVec apply(const RVec& v) const {
    if (int(v.size()) != cols) throw std::invalid_argument("RMat::apply: dimension mismatch");
    RVec r(rows, Rat(0));
    for (int i = 0; i < rows; ++i) {
      Rat s = 0;
      for (int j = 0; j < cols; ++j) s += at(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }
};

// Gaussian elimination; returns the inverse of a square rational matrix.
inline RMat rmat_inverse(RMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("rmat_inverse: not square");
  int n = m.rows;
  RMat inv(n, n);
  for (int i = 0; i < n; ++i) inv.at(i, i) = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m.at(r, col) != 0) { piv = r; break; }
    if (piv < 0) throw std::invalid_argument("rmat_inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    Rat d = m.at(col, col);
    for (int j = 0; j < n; ++j) { m.at(col, j) /= d; inv.at(col, j) /= d; }
    for (int r = 0; r < n; ++r) {
      if (r == col || m.at(r, col) == 0) continue;
      Rat f = m.at(r, col);
      for (int j = 0; j < n; ++j) {
        m.at(r, j) -= f * m.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

// Solves M x = b for square rational M.
inline RVec rmat_solve(RMat m, RVec b) {
  if (m.rows != m.cols || int(b.size()) != m.rows)
    throw std::invalid_argument("rmat_solve: dimension mismatch");
  int n = m.rows;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m.at(r, col) != 0) { piv = r; break; }
    if (piv < 0) throw std::invalid_argument("rmat_solve: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      std::swap(b[piv], b[col]);
    }
    Rat d = m.at(col, col);
    for (int j = 0; j < n; ++j) m.at(col, j) /= d;
    b[col] /= d;
    for (int r = 0; r < n; ++r) {
      if (r == col || m.at(r, col) == 0) continue;
      Rat f = m.at(r, col);
      for (int j = 0; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
      b[r] -= f * b[col];
    }
  }
  return b;
}

// Rank over Q of an integer matrix (exact, via rational elimination).
inline int imat_rank(const IMat& m) {
  RMat a = RMat::from(m);
  int rank = 0;
  for (int col = 0; col < a.cols && rank < a.rows; ++col) {
    int piv = -1;
    for (int r = rank; r < a.rows; ++r)
      if (a.at(r, col) != 0) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < a.cols; ++j) std::swap(a.at(piv, j), a.at(rank, j));
    for (int r = rank + 1; r < a.rows; ++r) {
      if (a.at(r, col) == 0) continue;
      Rat f = a.at(r, col) / a.at(rank, col);
      for (int j = col; j < a.cols; ++j) a.at(r, j) -= f * a.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

// Diagonalization of an integer matrix N by unimodular transforms U N V = D,
// tracking only U.  Used to put finite abelian quotients Z^n / col-span(N)
// into the canonical form  x  |->  (U x) mod diag.
struct IntDiagonalization {
  IMat u;     // n x n unimodular
  IVec diag;  // n entries, >= 0 (0 would mean infinite quotient direction)
};

inline IntDiagonalization diagonalize_columns(IMat n) {
  int rows = n.rows, cols = n.cols;
  IMat u = IMat::identity(rows);
  IntDiagonalization out;
  int t = 0;
  while (t < rows && t < cols) {
    // locate a pivot of minimal absolute value in the remaining block
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        Int v = n.at(i, j);
        if (v != 0 && (pi < 0 || std::abs(v) < best)) { pi = i; pj = j; best = std::abs(v); }
      }
    if (pi < 0) break;
    // move pivot to (t, t)
    if (pi != t)
      for (int j = 0; j < cols; ++j) std::swap(n.at(pi, j), n.at(t, j));
    if (pi != t)
      for (int j = 0; j < rows; ++j) std::swap(u.at(pi, j), u.at(t, j));
    if (pj != t)
      for (int i = 0; i < rows; ++i) std::swap(n.at(i, pj), n.at(i, t));
    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      Int q = n.at(i, t) / n.at(t, t);
      if (q != 0) {
        for (int j = 0; j < cols; ++j) n.at(i, j) -= q * n.at(t, j);
        for (int j = 0; j < rows; ++j) u.at(i, j) -= q * u.at(t, j);
      }
      if (n.at(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      Int q = n.at(t, j) / n.at(t, t);
      if (q != 0)
        for (int i = 0; i < rows; ++i) n.at(i, j) -= q * n.at(i, t);
      if (n.at(t, j) != 0) clean = false;
    }
    if (clean) ++t;
  }
  out.u = u;
  out.diag.assign(rows, 0);
  for (int i = 0; i < rows && i < cols; ++i) out.diag[i] = std::abs(n.at(i, i));
  return out;
}

}  // namespace affweyl
