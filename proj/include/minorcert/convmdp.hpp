#pragma once

// Partial unit-memory convolutional codes: sliding generator/parity-check
// windows, the non-trivial-minor distance-profile criterion, exact
// brute-force column distances, three deterministic constructions (diagonal
// superregular, and two Vandermonde families with a lower-triangular Toeplitz
// memory block), left-primeness, parity-check recovery, the dual sweep
// through the parity-check layout, and the tied window support pattern.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "completion.hpp"
#include "errors.hpp"
#include "gf.hpp"
#include "linalg.hpp"

namespace minorcert {

namespace detail {

// Dense univariate polynomials over a field, little-endian coefficients;
// the empty vector is the zero polynomial.
using Poly = std::vector<FieldElement>;

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline bool poly_is_zero(const Poly& p) { return p.empty(); }

inline std::ptrdiff_t poly_deg(const Poly& p) {
  return static_cast<std::ptrdiff_t>(p.size()) - 1;  // zero -> -1
}

inline Poly poly_add(const FieldPtr& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), f->zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] + b[i];
  poly_trim(out);
  return out;
}

inline Poly poly_sub(const FieldPtr& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), f->zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] - b[i];
  poly_trim(out);
  return out;
}

inline Poly poly_mul(const FieldPtr& f, const Poly& a, const Poly& b) {
  if (poly_is_zero(a) || poly_is_zero(b)) return {};
  Poly out(a.size() + b.size() - 1, f->zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = out[i + j] + a[i] * b[j];
    }
  }
  poly_trim(out);
  return out;
}

inline Poly poly_monic(Poly p) {
  poly_trim(p);
  if (p.empty() || p.back().is_one()) return p;
  const FieldElement inv = p.back().inv();
  for (auto& c : p) c = c * inv;
  return p;
}

inline Poly poly_rem(const FieldPtr& f, Poly a, const Poly& b) {
  poly_trim(a);
  require(!poly_is_zero(b), errc::division_by_zero,
          "polynomial remainder by zero");
  const FieldElement lead_inv = b.back().inv();
  while (a.size() >= b.size()) {
    const FieldElement factor = a.back() * lead_inv;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = a[shift + i] - factor * b[i];
    }
    poly_trim(a);
    if (a.size() < b.size()) break;
  }
  (void)f;
  return a;
}

inline Poly poly_gcd(const FieldPtr& f, Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!poly_is_zero(b)) {
    Poly r = poly_rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(std::move(a));
}

// Cofactor-expansion determinant of a small polynomial matrix.
inline Poly poly_det(const FieldPtr& f,
                     const std::vector<std::vector<Poly>>& m) {
  const std::size_t sz = m.size();
  if (sz == 0) return {f->one()};
  if (sz == 1) return m[0][0];
  Poly acc;
  for (std::size_t j = 0; j < sz; ++j) {
    if (poly_is_zero(m[0][j])) continue;
    std::vector<std::vector<Poly>> sub(sz - 1);
    for (std::size_t r = 1; r < sz; ++r) {
      sub[r - 1].reserve(sz - 1);
      for (std::size_t c = 0; c < sz; ++c) {
        if (c != j) sub[r - 1].push_back(m[r][c]);
      }
    }
    Poly term = poly_mul(f, m[0][j], poly_det(f, sub));
    acc = (j % 2 == 0) ? poly_add(f, acc, term) : poly_sub(f, acc, term);
  }
  return acc;
}

// Entry (r, c) of the polynomial generator built from coefficient matrices.
inline Poly entry_poly(const std::vector<Matrix>& coeffs, std::size_t r,
                       std::size_t c) {
  Poly p;
  p.reserve(coeffs.size());
  for (const Matrix& g : coeffs) p.push_back(g.at(r, c));
  poly_trim(p);
  return p;
}

// True iff the polynomial row list has full row rank over the rational
// function field, decided exactly through maximal minors.
inline bool poly_rows_full_rank(const FieldPtr& f,
                                const std::vector<std::vector<Poly>>& rows) {
  const std::size_t m = rows.size();
  if (m == 0) return true;
  const std::size_t n = rows[0].size();
  if (m > n) return false;
  bool found = false;
  for_each_k_subset(n, m, [&](const ColSet& cs) {
    std::vector<std::vector<Poly>> sq(m);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c : cs) sq[r].push_back(rows[r][c]);
    }
    if (!poly_is_zero(poly_det(f, sq))) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace detail

struct ConvCode {
  std::size_t n = 0;
  std::size_t k = 0;
  FieldPtr field;
  std::vector<Matrix> coeffs;  // G_0 ... G_mu
  std::size_t delta = 0;

  std::size_t memory() const {
    return coeffs.empty() ? 0 : coeffs.size() - 1;
  }
};

// Maximum polynomial degree over all full-size minors of the generator, or
// nullopt when the generator is not full rank (every minor vanishes).
inline std::optional<std::size_t> compute_delta(
    const std::vector<Matrix>& coeffs) {
  require(!coeffs.empty(), errc::parameter_violation,
          "need at least one coefficient matrix");
  const std::size_t k = coeffs[0].rows();
  const std::size_t n = coeffs[0].cols();
  const FieldPtr f = coeffs[0].field();
  for (const Matrix& g : coeffs) {
    require(g.rows() == k && g.cols() == n, errc::parameter_violation,
            "coefficient matrices must share one shape");
    require(g.field()->same(*f), errc::field_mismatch,
            "coefficient matrices must share one field");
  }
  require(k <= n, errc::parameter_violation, "need k <= n");
  std::optional<std::size_t> best;
  for_each_k_subset(n, k, [&](const ColSet& cs) {
    std::vector<std::vector<detail::Poly>> m(k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c : cs) m[r].push_back(detail::entry_poly(coeffs, r, c));
    }
    const detail::Poly d = detail::poly_det(f, m);
    if (!detail::poly_is_zero(d)) {
      const std::size_t deg = static_cast<std::size_t>(detail::poly_deg(d));
      if (!best || deg > *best) best = deg;
    }
    return true;
  });
  return best;
}

// Validating factory: shape, nonzero leading coefficient, and agreement of
// the declared degree with the exact minor-degree computation.
inline ConvCode make_conv_code(std::size_t n, std::size_t k,
                               const FieldPtr& field,
                               std::vector<Matrix> coeffs, std::size_t delta) {
  require(k >= 1 && k <= n, errc::parameter_violation, "need 1 <= k <= n");
  require(!coeffs.empty(), errc::parameter_violation,
          "need at least one coefficient matrix");
  for (const Matrix& g : coeffs) {
    require(g.rows() == k && g.cols() == n, errc::parameter_violation,
            "coefficient matrices must be k x n");
    require(g.field()->same(*field), errc::field_mismatch,
            "coefficient matrix over a different field");
  }
  bool top_nonzero = false;
  for (std::size_t r = 0; r < k && !top_nonzero; ++r) {
    for (std::size_t c = 0; c < n && !top_nonzero; ++c) {
      top_nonzero = !coeffs.back().at(r, c).is_zero();
    }
  }
  require(top_nonzero, errc::parameter_violation,
          "highest coefficient matrix must be nonzero");
  const auto computed = compute_delta(coeffs);
  require(computed.has_value(), errc::parameter_violation,
          "generator matrix is not full rank");
  require(*computed == delta, errc::invariant_violation,
          "declared degree disagrees with the computed minor degree");
  return ConvCode{n, k, field, std::move(coeffs), delta};
}

struct WindowBound {
  std::size_t L = 0;
  std::vector<std::size_t> bounds;  // (n-k)(j+1)+1 for j = 0..L
};

inline WindowBound window_bound(std::size_t n, std::size_t k,
                                std::size_t delta) {
  require(k >= 1 && k + 1 <= n, errc::parameter_violation,
          "need 1 <= k <= n-1");
  WindowBound wb;
  wb.L = delta / k + delta / (n - k);
  for (std::size_t j = 0; j <= wb.L; ++j) {
    wb.bounds.push_back((n - k) * (j + 1) + 1);
  }
  return wb;
}

enum class SlidingLayout { generator, paritycheck };

struct SlidingMatrix {
  std::size_t j = 0;
  SlidingLayout layout = SlidingLayout::generator;
  Matrix body;
};

// Block-Toeplitz window: generator layout places coefficient c-r at block
// (r, c) (upper triangular), parity-check layout places coefficient r-c
// (lower triangular); out-of-range coefficients are zero blocks.
inline SlidingMatrix sliding(const std::vector<Matrix>& coeffs, std::size_t j,
                             SlidingLayout layout) {
  require(!coeffs.empty(), errc::parameter_violation,
          "need at least one coefficient matrix");
  const std::size_t br = coeffs[0].rows();
  const std::size_t bc = coeffs[0].cols();
  const FieldPtr f = coeffs[0].field();
  for (const Matrix& g : coeffs) {
    require(g.rows() == br && g.cols() == bc, errc::parameter_violation,
            "coefficient matrices must share one shape");
    require(g.field()->same(*f), errc::field_mismatch,
            "coefficient matrices must share one field");
  }
  Matrix body(f, (j + 1) * br, (j + 1) * bc);
  for (std::size_t r = 0; r <= j; ++r) {
    for (std::size_t c = 0; c <= j; ++c) {
      const std::size_t idx =
          (layout == SlidingLayout::generator) ? (c >= r ? c - r : SIZE_MAX)
                                               : (r >= c ? r - c : SIZE_MAX);
      if (idx == SIZE_MAX || idx >= coeffs.size()) continue;
      const Matrix& g = coeffs[idx];
      for (std::size_t rr = 0; rr < br; ++rr) {
        for (std::size_t cc = 0; cc < bc; ++cc) {
          body.set(r * br + rr, c * bc + cc, g.at(rr, cc));
        }
      }
    }
  }
  return SlidingMatrix{j, layout, std::move(body)};
}

inline SlidingMatrix sliding(const ConvCode& code, std::size_t j,
                             SlidingLayout layout) {
  return sliding(code.coeffs, j, layout);
}

// Sorted (j+1)k-subsets T of the (j+1)n window columns whose generator-layout
// minor is structurally non-trivial: T[s*k] >= s*n for s = 1..j (0-based).
inline std::vector<ColSet> nontrivial_sets_generator(std::size_t n,
                                                     std::size_t k,
                                                     std::size_t j) {
  require(k <= n, errc::parameter_violation, "need k <= n");
  std::vector<ColSet> out;
  for_each_k_subset((j + 1) * n, (j + 1) * k, [&](const ColSet& t) {
    for (std::size_t s = 1; s <= j; ++s) {
      if (t[s * k] < s * n) return true;
    }
    out.push_back(t);
    return true;
  });
  return out;
}

// Sorted (j+1)(n-k)-subsets T with T[s*(n-k)-1] <= s*n-1 for s = 1..j, the
// parity-check-layout counterpart.
inline std::vector<ColSet> nontrivial_sets_paritycheck(std::size_t n,
                                                       std::size_t k,
                                                       std::size_t j) {
  require(k >= 1 && k + 1 <= n, errc::parameter_violation,
          "need 1 <= k <= n-1");
  const std::size_t r = n - k;
  std::vector<ColSet> out;
  for_each_k_subset((j + 1) * n, (j + 1) * r, [&](const ColSet& t) {
    for (std::size_t s = 1; s <= j; ++s) {
      if (t[s * r - 1] > s * n - 1) return true;
    }
    out.push_back(t);
    return true;
  });
  return out;
}

// Non-trivial-minor sweep of the generator window at an explicit index j.
inline VerificationReport window_report(const ConvCode& code, std::size_t j,
                                        std::size_t failure_cap = 16,
                                        unsigned threads = 1) {
  const SlidingMatrix sm = sliding(code, j, SlidingLayout::generator);
  return verify_nonvanishing(sm.body,
                             nontrivial_sets_generator(code.n, code.k, j),
                             failure_cap, threads);
}

// The distance-profile criterion: every non-trivial full-size minor of the
// generator window at j = L is nonzero.
inline VerificationReport is_mdp(const ConvCode& code,
                                 std::size_t failure_cap = 16,
                                 unsigned threads = 1) {
  const WindowBound wb = window_bound(code.n, code.k, code.delta);
  return window_report(code, wb.L, failure_cap, threads);
}

namespace detail {

inline std::uint64_t coldist_candidate_count(const ConvCode& code,
                                             std::size_t j) {
  constexpr std::uint64_t kGuard = 100000000;  // 1e8 candidate evaluations
  const std::uint64_t q = code.field->order();
  std::uint64_t total = 1;  // representatives of u_0 up to scalar
  for (std::size_t i = 1; i < code.k; ++i) {
    total = total * q + 1;
    require(total <= kGuard, errc::too_large,
            "column distance search exceeds the evaluation guard");
  }
  for (std::size_t i = 0; i < code.k * j; ++i) {
    total *= q;
    require(total <= kGuard, errc::too_large,
            "column distance search exceeds the evaluation guard");
  }
  return total;
}

// Shared driver: enumerate u_0 representatives (first nonzero entry fixed to
// one) and all later input blocks, feeding each candidate's weight into the
// running minimum through `weigh`.
template <typename WeighFn>
std::size_t coldist_scan(const ConvCode& code, std::size_t j, WeighFn&& weigh) {
  const std::uint64_t q = code.field->order();
  const std::size_t k = code.k;
  std::size_t best = SIZE_MAX;
  std::vector<std::uint64_t> u((j + 1) * k, 0);
  // Position p of the first nonzero coordinate of u_0; that coordinate is 1.
  for (std::size_t p = 0; p < k; ++p) {
    std::fill(u.begin(), u.end(), 0);
    u[p] = 1;
    // Odometer over the free coordinates: the tail of u_0 after p, then all
    // of u_1..u_j.
    std::vector<std::size_t> slots;
    for (std::size_t i = p + 1; i < (j + 1) * k; ++i) slots.push_back(i);
    while (true) {
      const std::size_t w = weigh(u, best);
      best = std::min(best, w);
      std::size_t s = 0;
      while (s < slots.size() && u[slots[s]] + 1 == q) {
        u[slots[s]] = 0;
        ++s;
      }
      if (s == slots.size()) break;
      ++u[slots[s]];
    }
  }
  return best;
}

inline std::size_t coldist_generic(const ConvCode& code, std::size_t j) {
  const std::size_t k = code.k, n = code.n;
  const std::size_t mu = code.memory();
  const FieldPtr& f = code.field;
  return coldist_scan(
      code, j, [&](const std::vector<std::uint64_t>& u, std::size_t best) {
        std::size_t w = 0;
        for (std::size_t t = 0; t <= j && w < best; ++t) {
          for (std::size_t c = 0; c < n; ++c) {
            FieldElement acc = f->zero();
            for (std::size_t i = 0; i <= std::min(mu, t); ++i) {
              const Matrix& g = code.coeffs[i];
              for (std::size_t r = 0; r < k; ++r) {
                const std::uint64_t ue = u[(t - i) * k + r];
                if (ue == 0) continue;
                acc = acc + f->from_enc(ue) * g.at(r, c);
              }
            }
            if (!acc.is_zero()) ++w;
          }
        }
        return w;
      });
}

inline std::size_t coldist_table(const ConvCode& code, std::size_t j) {
  const std::size_t k = code.k, n = code.n;
  const std::size_t mu = code.memory();
  const FieldPtr& f = code.field;
  const std::size_t q = static_cast<std::size_t>(f->order());
  std::vector<std::uint32_t> mul(q * q), add(q * q);
  for (std::size_t a = 0; a < q; ++a) {
    const FieldElement ea = f->from_enc(a);
    for (std::size_t b = 0; b < q; ++b) {
      const FieldElement eb = f->from_enc(b);
      mul[a * q + b] = static_cast<std::uint32_t>((ea * eb).enc());
      add[a * q + b] = static_cast<std::uint32_t>((ea + eb).enc());
    }
  }
  std::vector<std::vector<std::uint32_t>> ge(code.coeffs.size());
  for (std::size_t i = 0; i < code.coeffs.size(); ++i) {
    ge[i].resize(k * n);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        ge[i][r * n + c] =
            static_cast<std::uint32_t>(code.coeffs[i].at(r, c).enc());
      }
    }
  }
  return coldist_scan(
      code, j, [&](const std::vector<std::uint64_t>& u, std::size_t best) {
        std::size_t w = 0;
        for (std::size_t t = 0; t <= j && w < best; ++t) {
          for (std::size_t c = 0; c < n; ++c) {
            std::uint32_t acc = 0;
            for (std::size_t i = 0; i <= std::min(mu, t); ++i) {
              for (std::size_t r = 0; r < k; ++r) {
                const std::uint64_t ue = u[(t - i) * k + r];
                if (ue == 0) continue;
                acc = add[acc * q + mul[ue * q + ge[i][r * n + c]]];
              }
            }
            if (acc != 0) ++w;
          }
        }
        return w;
      });
}

}  // namespace detail

// Exact j-th column distance by exhaustion over truncated inputs with
// nonzero first block, quotiented by scalar multiples of u_0.  Guarded at
// 1e8 candidate evaluations.
inline std::size_t column_distance_bruteforce(const ConvCode& code,
                                              std::size_t j) {
  detail::coldist_candidate_count(code, j);
  return (code.field->order() <= 512) ? detail::coldist_table(code, j)
                                      : detail::coldist_generic(code, j);
}

// Smallest-encoding element of the cubic extension outside the base field
// whose minimal polynomial has constant coefficient different from -1.
inline FieldElement find_z(const FieldPtr& base, const FieldPtr& ext3) {
  require(ext3->characteristic() == base->characteristic() &&
              ext3->degree() == 3 * base->degree(),
          errc::parameter_violation,
          "need a cubic extension of the base field");
  const std::uint64_t q = base->order();
  const FieldPtr canonical =
      Field::make(base->characteristic(), base->degree());
  const FieldElement minus_one = canonical->one().neg();
  for (std::uint64_t e = 0; e < ext3->order(); ++e) {
    const FieldElement z = ext3->from_enc(e);
    if (z.pow(static_cast<std::int64_t>(q)) == z) continue;  // z in base
    const auto mp = minimal_polynomial(z, base->degree());
    if (mp.front() != minus_one) return z;
  }
  raise(errc::no_valid_z,
        "every eligible cubic minimal polynomial has constant coefficient -1");
}

// Unit-memory shape whose last k generator columns are constant: memory 1,
// MDS G_0, and zero last-k-column block in G_1.  Codes of this shape are
// left prime outright, because the constant last-k-columns minor of the
// polynomial generator is a nonzero constant.
inline bool partial_unit_memory_shape(const ConvCode& code) {
  if (code.memory() != 1 || code.k > code.n) return false;
  const Matrix& g1 = code.coeffs[1];
  for (std::size_t r = 0; r < code.k; ++r) {
    for (std::size_t c = code.n - code.k; c < code.n; ++c) {
      if (!g1.at(r, c).is_zero()) return false;
    }
  }
  return is_mds(code.coeffs[0]);
}

// Exact left-primeness: the gcd of all full-size polynomial minors is a
// nonzero constant.
inline bool is_noncatastrophic_gcd(const ConvCode& code) {
  const FieldPtr& f = code.field;
  detail::Poly g;
  for_each_k_subset(code.n, code.k, [&](const ColSet& cs) {
    std::vector<std::vector<detail::Poly>> m(code.k);
    for (std::size_t r = 0; r < code.k; ++r) {
      for (std::size_t c : cs) {
        m[r].push_back(detail::entry_poly(code.coeffs, r, c));
      }
    }
    g = detail::poly_gcd(f, g, detail::poly_det(f, m));
    return detail::poly_deg(g) != 0;  // stop once the gcd is a constant
  });
  return detail::poly_deg(g) == 0;
}

inline bool is_noncatastrophic(const ConvCode& code) {
  if (partial_unit_memory_shape(code)) return true;
  return is_noncatastrophic_gcd(code);
}

// Recover parity-check coefficients H_0..H_nu with nu equal to the code
// degree: solve the block convolution system for single parity rows, then
// greedily select rows keeping full polynomial row rank.  Returns nullopt
// when no full-row-rank solution exists at this nu.  The result is verified
// against random codewords before being returned.
inline std::optional<std::vector<Matrix>> parity_check_from_generator(
    const ConvCode& code) {
  require(is_noncatastrophic(code), errc::parameter_violation,
          "parity-check recovery requires a non-catastrophic code");
  const std::size_t n = code.n, k = code.k;
  const std::size_t nu = code.delta;
  const std::size_t mu = code.memory();
  const FieldPtr& f = code.field;

  // One parity row h(z) = sum_i h_i z^i must satisfy G(z) h(z)^T = 0;
  // stacking coefficient levels t = 0..mu+nu gives A x = 0 with block
  // (t, i) of A equal to G_{t-i}.
  Matrix a(f, k * (mu + nu + 1), n * (nu + 1));
  for (std::size_t t = 0; t <= mu + nu; ++t) {
    for (std::size_t i = 0; i <= nu; ++i) {
      if (t < i || t - i > mu) continue;
      const Matrix& g = code.coeffs[t - i];
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          a.set(t * k + r, i * n + c, g.at(r, c));
        }
      }
    }
  }
  const Matrix ker = right_kernel(a);

  std::vector<std::vector<detail::Poly>> rows;
  for (std::size_t kc = 0; kc < ker.cols() && rows.size() < n - k; ++kc) {
    std::vector<detail::Poly> row(n);
    for (std::size_t c = 0; c < n; ++c) {
      detail::Poly p;
      for (std::size_t i = 0; i <= nu; ++i) p.push_back(ker.at(i * n + c, kc));
      detail::poly_trim(p);
      row[c] = std::move(p);
    }
    rows.push_back(std::move(row));
    if (!detail::poly_rows_full_rank(f, rows)) rows.pop_back();
  }
  if (rows.size() < n - k) return std::nullopt;

  std::vector<Matrix> h(nu + 1, Matrix(f, n - k, n));
  for (std::size_t r = 0; r < n - k; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const detail::Poly& p = rows[r][c];
      for (std::size_t i = 0; i < p.size(); ++i) h[i].set(r, c, p[i]);
    }
  }

  // Spot-check H(z) v(z)^T = 0 on random codewords.
  std::mt19937 rng(0x5eedu);
  std::uniform_int_distribution<std::uint64_t> dist(0, f->order() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<detail::Poly> msg(k);
    for (std::size_t r = 0; r < k; ++r) {
      detail::Poly p;
      for (int i = 0; i < 4; ++i) p.push_back(f->from_enc(dist(rng)));
      detail::poly_trim(p);
      msg[r] = std::move(p);
    }
    std::vector<detail::Poly> v(n);
    for (std::size_t c = 0; c < n; ++c) {
      detail::Poly acc;
      for (std::size_t r = 0; r < k; ++r) {
        acc = detail::poly_add(
            f, acc,
            detail::poly_mul(f, msg[r],
                             detail::entry_poly(code.coeffs, r, c)));
      }
      v[c] = std::move(acc);
    }
    for (std::size_t r = 0; r < n - k; ++r) {
      detail::Poly acc;
      for (std::size_t c = 0; c < n; ++c) {
        acc = detail::poly_add(f, acc,
                               detail::poly_mul(f, rows[r][c], v[c]));
      }
      require(detail::poly_is_zero(acc), errc::invariant_violation,
              "recovered parity check failed a random codeword");
    }
  }
  return h;
}

// Treat the code's generator coefficients as the parity-check coefficients
// of the dual code and sweep the parity-check window at the dual's bound.
inline VerificationReport dual_mdp_check(const ConvCode& code,
                                         std::size_t failure_cap = 16,
                                         unsigned threads = 1) {
  require(is_noncatastrophic(code), errc::parameter_violation,
          "dual sweep requires a non-catastrophic code");
  const std::size_t kd = code.n - code.k;  // dual dimension
  const WindowBound wb = window_bound(code.n, kd, code.delta);
  const SlidingMatrix sm =
      sliding(code.coeffs, wb.L, SlidingLayout::paritycheck);
  return verify_nonvanishing(sm.body,
                             nontrivial_sets_paritycheck(code.n, kd, wb.L),
                             failure_cap, threads);
}

// The tied support pattern of the unit-memory window at j = 1: lower-left
// k x n block zero, and each upper-left cell tied to its lower-right copy.
inline SupportPattern sliding_tie_pattern(std::size_t n, std::size_t k,
                                          std::size_t j) {
  require(j == 1, errc::unsupported_window,
          "the tie pattern is defined for the j = 1 window only");
  SupportPattern p;
  p.rows = 2 * k;
  p.cols = 2 * n;
  p.free.assign(2 * k, std::vector<bool>(2 * n, true));
  for (std::size_t r = k; r < 2 * k; ++r) {
    for (std::size_t c = 0; c < n; ++c) p.free[r][c] = false;
  }
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      p.ties.push_back({{r, c}, {r + k, c + n}});
    }
  }
  return p;
}

namespace detail {

// Shared scaffolding of the three builders: extension field, embedded G_0,
// and the [X | 0] memory block.
inline Matrix embed_matrix(const Matrix& m, const FieldPtr& target) {
  Matrix out(target, m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out.set(r, c, embed(m.at(r, c), target));
    }
  }
  return out;
}

}  // namespace detail

// Superregular-plus-diagonal construction: G_0 a Cauchy k x n matrix over
// the base field, X the (n-k) x (n-k) diagonal alpha^1..alpha^{n-k} padded
// with zero rows below, G_1 = [X | 0], over the extension of degree
// ceil((delta^2 - 1)/4) + 1 with delta = n - k.
inline ConvCode build_diag(std::size_t n, std::size_t k,
                           const FieldPtr& base) {
  require(k >= 1 && k < n && n - k < k, errc::parameter_violation,
          "need k > n - k >= 1");
  require(base->order() >= static_cast<std::uint64_t>(k + n),
          errc::field_too_small,
          "base field needs k + n distinct sample points");
  const std::size_t delta = n - k;
  const std::uint32_t d =
      static_cast<std::uint32_t>((delta * delta + 2) / 4 + 1);
  const FieldPtr ext =
      Field::make(base->characteristic(), base->degree() * d);
  const FieldElement alpha = primitive_element(ext);
  require(minimal_polynomial(alpha, base->degree()).size() ==
              static_cast<std::size_t>(d) + 1,
          errc::invariant_violation,
          "primitive element has the wrong minimal-polynomial degree");

  const auto pts = first_elements(base, k + n);
  std::vector<FieldElement> xs(pts.begin(), pts.begin() + k);
  std::vector<FieldElement> ys(pts.begin() + k, pts.end());
  const Matrix g0_base = cauchy(base, xs, ys);
  require(is_superregular(g0_base), errc::invariant_violation,
          "Cauchy block failed its superregularity check");
  Matrix g0 = detail::embed_matrix(g0_base, ext);

  Matrix g1(ext, k, n);
  for (std::size_t c = 0; c < delta; ++c) {
    g1.set(c, c, alpha.pow(static_cast<std::int64_t>(c + 1)));
  }
  return make_conv_code(n, k, ext, {std::move(g0), std::move(g1)}, delta);
}

namespace detail {

// Vandermonde G_0 plus the [0; T] memory block shared by the two
// Vandermonde builders; T is the lower-triangular Toeplitz matrix of betas.
inline ConvCode build_vdm(std::size_t n, std::size_t delta,
                          const FieldPtr& base, const FieldPtr& ext,
                          const std::vector<FieldElement>& betas) {
  const std::size_t k = n - delta;
  const Matrix g0_base = vandermonde(base, first_elements(base, n), k);
  Matrix g0 = embed_matrix(g0_base, ext);
  Matrix g1(ext, k, n);
  const std::size_t zero_rows = 2 * k - n;  // rows above T
  for (std::size_t r = 0; r < delta; ++r) {
    for (std::size_t c = 0; c <= r; ++c) {
      g1.set(zero_rows + r, c, betas[r - c]);
    }
  }
  return make_conv_code(n, k, ext, {std::move(g0), std::move(g1)}, delta);
}

}  // namespace detail

// Vandermonde construction at delta = 2: k = n - 2 over the quadratic
// extension, with (beta_1, beta_2) = (primitive element, 1) — a pair
// independent over the base, which is asserted.
inline ConvCode build_vdm2(std::size_t n, const FieldPtr& base) {
  require(n >= 4, errc::parameter_violation, "need n >= 4");
  require(base->order() >= n, errc::parameter_violation, "need q >= n");
  const FieldPtr ext = Field::make(base->characteristic(), base->degree() * 2);
  const FieldElement beta1 = primitive_element(ext);
  const FieldElement beta2 = ext->one();
  require(linearly_independent_over({beta1, beta2}, base->degree()),
          errc::invariant_violation,
          "betas are not independent over the base field");
  return detail::build_vdm(n, 2, base, ext, {beta1, beta2});
}

// Vandermonde construction at delta = 3: k = n - 3 over the cubic extension,
// with (beta_1, beta_2, beta_3) = (z, z^2, 1) for the smallest valid z.
inline ConvCode build_vdm3(std::size_t n, const FieldPtr& base) {
  require(n >= 7, errc::parameter_violation, "need n >= 7");
  require(base->order() >= n, errc::parameter_violation, "need q >= n");
  const FieldPtr ext = Field::make(base->characteristic(), base->degree() * 3);
  const FieldElement z = find_z(base, ext);
  const std::vector<FieldElement> betas{z, z * z, ext->one()};
  require(linearly_independent_over(betas, base->degree()),
          errc::invariant_violation,
          "betas are not independent over the base field");
  return detail::build_vdm(n, 3, base, ext, betas);
}

}  // namespace minorcert
