#pragma once

// Dense exact linear algebra over a finite field: determinant, rank/solve,
// kernels, submatrix extraction, and the structured constructors (Cauchy,
// Vandermonde) with their MDS/superregularity predicates.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "gf.hpp"

namespace minorcert {

class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
      : f_(std::move(field)),
        rows_(rows),
        cols_(cols),
        e_(rows * cols, f_->zero()) {}

  Matrix(FieldPtr field, std::size_t rows, std::size_t cols,
         std::vector<FieldElement> entries)
      : f_(std::move(field)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    require(e_.size() == rows_ * cols_, errc::dimension_mismatch,
            "entry count does not match rows*cols");
    for (const auto& x : e_) {
      require(x.field() == f_ || x.field()->same(*f_), errc::field_mismatch,
              "matrix entry from a different field");
    }
  }

  const FieldPtr& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const FieldElement& at(std::size_t r, std::size_t c) const {
    require(r < rows_ && c < cols_, errc::index_out_of_range,
            "matrix index out of range");
    return e_[r * cols_ + c];
  }

  void set(std::size_t r, std::size_t c, const FieldElement& v) {
    require(r < rows_ && c < cols_, errc::index_out_of_range,
            "matrix index out of range");
    require(v.field() == f_ || v.field()->same(*f_), errc::field_mismatch,
            "matrix entry from a different field");
    e_[r * cols_ + c] = v;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !f_->same(*o.f_)) return false;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (e_[i].coeffs() != o.e_[i].coeffs()) return false;
    }
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  FieldPtr f_;
  std::size_t rows_, cols_;
  std::vector<FieldElement> e_;
};

inline Matrix identity_matrix(const FieldPtr& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, f->one());
  return m;
}

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.field(), m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) t.set(c, r, m.at(r, c));
  }
  return t;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.field()->same(*b.field()), errc::field_mismatch,
          "product of matrices over different fields");
  require(a.cols() == b.rows(), errc::dimension_mismatch,
          "inner dimensions disagree");
  Matrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const FieldElement& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out.set(i, j, out.at(i, j) + aik * b.at(k, j));
      }
    }
  }
  return out;
}

// Exact determinant by Gaussian elimination with division (exact in a field).
inline FieldElement det(const Matrix& m) {
  require(m.rows() == m.cols(), errc::not_square,
          "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  const FieldPtr& f = m.field();
  if (n == 0) return f->one();
  std::vector<std::vector<FieldElement>> a;
  a.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<FieldElement> row;
    row.reserve(n);
    for (std::size_t c = 0; c < n; ++c) row.push_back(m.at(r, c));
    a.push_back(std::move(row));
  }
  bool negate = false;
  FieldElement result = f->one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pr = c;
    while (pr < n && a[pr][c].is_zero()) ++pr;
    if (pr == n) return f->zero();
    if (pr != c) {
      std::swap(a[pr], a[c]);
      negate = !negate;
    }
    const FieldElement pivot = a[c][c];
    result = result * pivot;
    const FieldElement inv = pivot.inv();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const FieldElement fac = a[r][c] * inv;
      for (std::size_t j = c + 1; j < n; ++j) {
        a[r][j] = a[r][j] - fac * a[c][j];
      }
      a[r][c] = f->zero();
    }
  }
  return negate ? result.neg() : result;
}

enum class SolveStatus { unique_solution, underdetermined, inconsistent };

struct SolveResult {
  std::size_t rank = 0;
  // Engaged only when a right-hand side was supplied.
  std::optional<SolveStatus> status;
  // Present only for consistent systems with a unique solution.
  std::optional<Matrix> solution;
};

// Row-reduce a; if rhs is given (matching row count), classify the system
// and return the unique solution when there is one.
inline SolveResult rank_and_solve(const Matrix& a,
                                  const std::optional<Matrix>& rhs = {}) {
  const FieldPtr& f = a.field();
  const std::size_t nr = a.rows();
  const std::size_t nc = a.cols();
  std::size_t rhs_cols = 0;
  if (rhs) {
    require(rhs->rows() == nr, errc::dimension_mismatch,
            "right-hand side row count does not match");
    require(rhs->field()->same(*f), errc::field_mismatch,
            "right-hand side over a different field");
    rhs_cols = rhs->cols();
  }
  const std::size_t width = nc + rhs_cols;
  std::vector<std::vector<FieldElement>> m(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    m[r].reserve(width);
    for (std::size_t c = 0; c < nc; ++c) m[r].push_back(a.at(r, c));
    for (std::size_t c = 0; c < rhs_cols; ++c) m[r].push_back(rhs->at(r, c));
  }

  std::vector<std::size_t> pivot_of_col(nc, nr);  // nr == "no pivot"
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nc && rank < nr; ++c) {
    std::size_t pr = rank;
    while (pr < nr && m[pr][c].is_zero()) ++pr;
    if (pr == nr) continue;
    std::swap(m[pr], m[rank]);
    const FieldElement inv = m[rank][c].inv();
    for (std::size_t j = c; j < width; ++j) m[rank][j] = m[rank][j] * inv;
    for (std::size_t r = 0; r < nr; ++r) {
      if (r != rank && !m[r][c].is_zero()) {
        const FieldElement fac = m[r][c];
        for (std::size_t j = c; j < width; ++j) {
          m[r][j] = m[r][j] - m[rank][j] * fac;
        }
      }
    }
    pivot_of_col[c] = rank;
    ++rank;
  }

  SolveResult out;
  out.rank = rank;
  if (!rhs) return out;

  // Any nonzero rhs entry in a zero row of A makes the system inconsistent.
  for (std::size_t r = rank; r < nr; ++r) {
    for (std::size_t c = 0; c < rhs_cols; ++c) {
      if (!m[r][nc + c].is_zero()) {
        out.status = SolveStatus::inconsistent;
        return out;
      }
    }
  }
  if (rank < nc) {
    out.status = SolveStatus::underdetermined;
    return out;
  }
  out.status = SolveStatus::unique_solution;
  Matrix sol(f, nc, rhs_cols);
  for (std::size_t c = 0; c < nc; ++c) {
    const std::size_t pr = pivot_of_col[c];
    for (std::size_t j = 0; j < rhs_cols; ++j) {
      sol.set(c, j, m[pr][nc + j]);
    }
  }
  out.solution = std::move(sol);
  return out;
}

// Basis of { x : M x = 0 } as columns, in the standard free-variable form:
// basis vector for free column fc has x_fc = 1 and pivot entries read off
// the reduced row echelon form.  Deterministic.
inline Matrix right_kernel(const Matrix& mat) {
  const FieldPtr& f = mat.field();
  const std::size_t nr = mat.rows();
  const std::size_t nc = mat.cols();
  std::vector<std::vector<FieldElement>> m(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    m[r].reserve(nc);
    for (std::size_t c = 0; c < nc; ++c) m[r].push_back(mat.at(r, c));
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nc && rank < nr; ++c) {
    std::size_t pr = rank;
    while (pr < nr && m[pr][c].is_zero()) ++pr;
    if (pr == nr) continue;
    std::swap(m[pr], m[rank]);
    const FieldElement inv = m[rank][c].inv();
    for (std::size_t j = c; j < nc; ++j) m[rank][j] = m[rank][j] * inv;
    for (std::size_t r = 0; r < nr; ++r) {
      if (r != rank && !m[r][c].is_zero()) {
        const FieldElement fac = m[r][c];
        for (std::size_t j = c; j < nc; ++j) {
          m[r][j] = m[r][j] - m[rank][j] * fac;
        }
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(nc, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  const std::size_t nullity = nc - rank;
  Matrix basis(f, nc, nullity);
  std::size_t bi = 0;
  for (std::size_t fc = 0; fc < nc; ++fc) {
    if (is_pivot[fc]) continue;
    basis.set(fc, bi, f->one());
    for (std::size_t pi = 0; pi < pivot_col.size(); ++pi) {
      basis.set(pivot_col[pi], bi, m[pi][fc].neg());
    }
    ++bi;
  }
  return basis;
}

inline void check_sorted_in_range(const ColSet& idx, std::size_t bound,
                                  const char* what) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    require(idx[i] < bound, errc::index_out_of_range,
            std::string(what) + " index out of range");
    if (i > 0) {
      require(idx[i - 1] < idx[i], errc::not_sorted,
              std::string(what) + " indices must be strictly increasing");
    }
  }
}

inline Matrix submatrix(const Matrix& m, const ColSet& rowset,
                        const ColSet& colset) {
  check_sorted_in_range(rowset, m.rows(), "row");
  check_sorted_in_range(colset, m.cols(), "column");
  Matrix out(m.field(), rowset.size(), colset.size());
  for (std::size_t i = 0; i < rowset.size(); ++i) {
    for (std::size_t j = 0; j < colset.size(); ++j) {
      out.set(i, j, m.at(rowset[i], colset[j]));
    }
  }
  return out;
}

inline FieldElement minor_det(const Matrix& m, const ColSet& rowset,
                              const ColSet& colset) {
  return det(submatrix(m, rowset, colset));
}

// Cauchy matrix: entry (i, j) = (xs[i] - ys[j])^{-1}; all sample points must
// be pairwise distinct.
inline Matrix cauchy(const FieldPtr& f, const std::vector<FieldElement>& xs,
                     const std::vector<FieldElement>& ys) {
  std::vector<FieldElement> all;
  all.reserve(xs.size() + ys.size());
  for (const auto& x : xs) all.push_back(x);
  for (const auto& y : ys) all.push_back(y);
  for (std::size_t i = 0; i < all.size(); ++i) {
    require(all[i].field() == f || all[i].field()->same(*f),
            errc::field_mismatch, "sample point from a different field");
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      require(all[i] != all[j], errc::repeated_point,
              "Cauchy sample points must be pairwise distinct");
    }
  }
  Matrix out(f, xs.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      out.set(i, j, (xs[i] - ys[j]).inv());
    }
  }
  return out;
}

// Vandermonde matrix: entry (i, j) = points[j]^i for i = 0..k-1.
inline Matrix vandermonde(const FieldPtr& f,
                          const std::vector<FieldElement>& points,
                          std::size_t k) {
  require(k <= points.size(), errc::too_many_rows,
          "Vandermonde needs k <= number of points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(points[i].field() == f || points[i].field()->same(*f),
            errc::field_mismatch, "sample point from a different field");
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      require(points[i] != points[j], errc::repeated_point,
              "Vandermonde points must be pairwise distinct");
    }
  }
  Matrix out(f, k, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    FieldElement pw = f->one();
    for (std::size_t i = 0; i < k; ++i) {
      out.set(i, j, pw);
      if (i + 1 < k) pw = pw * points[j];
    }
  }
  return out;
}

// True iff every rows x rows minor is nonzero (exhaustive).
inline bool is_mds(const Matrix& m) {
  require(m.rows() <= m.cols(), errc::too_many_rows,
          "MDS test needs rows <= cols");
  const std::size_t k = m.rows();
  ColSet rows = first_k_subset(k);
  bool ok = true;
  for_each_k_subset(m.cols(), k, [&](const ColSet& cs) {
    if (minor_det(m, rows, cs).is_zero()) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

// True iff every square minor of every order >= 1 is nonzero (exhaustive;
// intended for desk-scale dimensions).
inline bool is_superregular(const Matrix& m) {
  const std::size_t tmax = std::min(m.rows(), m.cols());
  for (std::size_t t = 1; t <= tmax; ++t) {
    bool ok = true;
    for_each_k_subset(m.rows(), t, [&](const ColSet& rs) {
      for_each_k_subset(m.cols(), t, [&](const ColSet& cs) {
        if (minor_det(m, rs, cs).is_zero()) {
          ok = false;
          return false;
        }
        return true;
      });
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace minorcert
