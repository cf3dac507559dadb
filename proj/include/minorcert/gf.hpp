#pragma once

// Exact arithmetic in GF(p^m), p^m <= 2^31.  Elements are little-endian
// polynomial-basis coefficient vectors reduced modulo a monic irreducible
// modulus; the canonical integer encoding enc(x) = sum coeffs[i]*p^i is the
// serialization format.  All selections (modulus, primitive element,
// embedding root) are deterministic: smallest canonical encoding wins.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace minorcert {

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t fp_powmod(std::uint64_t b, std::uint64_t e,
                               std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  return fp_powmod(a, p - 2, p);
}

using FpPoly = std::vector<std::uint32_t>;  // little-endian, coeffs < p

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic-leading b (b's top coefficient may be any
// nonzero value; it is inverted once).
inline FpPoly fp_poly_rem(FpPoly a, const FpPoly& b, std::uint64_t p) {
  fp_trim(a);
  const std::uint64_t lead_inv = fp_inv(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = c * b[i] % p;
      a[off + i] = static_cast<std::uint32_t>((a[off + i] + p - sub) % p);
    }
    fp_trim(a);
  }
  return a;
}

// Divisor scan: f (monic, degree >= 2) is irreducible iff no monic factor of
// degree 1..deg(f)/2 divides it.
inline bool fp_poly_irreducible(const FpPoly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  for (std::size_t d = 1; d <= m / 2; ++d) {
    // All monic degree-d candidates, by ascending encoding of the low part.
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    FpPoly g(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t e = 0; e < count; ++e) {
      std::uint64_t t = e;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (fp_poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

class Field;
class FieldElement;
using FieldPtr = std::shared_ptr<const Field>;

class Field : public std::enable_shared_from_this<Field> {
  struct Key {};
  friend class FieldElement;

 public:
  // modulus: little-endian monic irreducible of degree m (m+1 coefficients);
  // omitted -> the irreducible polynomial with smallest canonical encoding.
  // For m == 1 the modulus is implicit and stored canonically as x = [0, 1].
  static FieldPtr make(
      std::uint64_t p, std::uint32_t m,
      const std::optional<std::vector<std::uint32_t>>& modulus = std::nullopt);

  Field(Key, std::uint64_t p, std::uint32_t m, std::vector<std::uint32_t> mod,
        std::uint64_t order)
      : p_(p), order_(order), m_(m), mod_(std::move(mod)) {}

  std::uint64_t characteristic() const { return p_; }
  std::uint32_t degree() const { return m_; }
  std::uint64_t order() const { return order_; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }

  bool same(const Field& other) const {
    return p_ == other.p_ && m_ == other.m_ && mod_ == other.mod_;
  }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_enc(std::uint64_t e) const;
  FieldElement from_coeffs(std::vector<std::uint32_t> coeffs) const;

 private:
  std::uint64_t p_;
  std::uint64_t order_;
  std::uint32_t m_;
  std::vector<std::uint32_t> mod_;
};

class FieldElement {
 public:
  FieldElement(FieldPtr field, std::vector<std::uint32_t> coeffs)
      : f_(std::move(field)), c_(std::move(coeffs)) {
    require(f_ != nullptr, errc::parameter_violation, "element needs a field");
    require(c_.size() == f_->degree(), errc::parameter_violation,
            "coefficient vector length must equal the extension degree");
    for (std::uint32_t v : c_) {
      require(v < f_->characteristic(), errc::parameter_violation,
              "coefficient not reduced modulo p");
    }
  }

  const FieldPtr& field() const { return f_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  std::uint64_t enc() const {
    std::uint64_t e = 0;
    for (std::size_t i = c_.size(); i-- > 0;) {
      e = e * f_->characteristic() + c_[i];
    }
    return e;
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(),
                       [](std::uint32_t v) { return v == 0; });
  }

  bool is_one() const {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(),
                       [](std::uint32_t v) { return v == 0; });
  }

  bool operator==(const FieldElement& o) const {
    check_compat(*this, o);
    return c_ == o.c_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement operator+(const FieldElement& o) const {
    check_compat(*this, o);
    const std::uint64_t p = f_->p_;
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      r[i] = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(c_[i]) + o.c_[i]) % p);
    }
    return FieldElement(f_, std::move(r), Raw{});
  }

  FieldElement operator-(const FieldElement& o) const {
    check_compat(*this, o);
    const std::uint64_t p = f_->p_;
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      r[i] = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(c_[i]) + p - o.c_[i]) % p);
    }
    return FieldElement(f_, std::move(r), Raw{});
  }

  FieldElement neg() const {
    const std::uint64_t p = f_->p_;
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      r[i] = static_cast<std::uint32_t>((p - c_[i]) % p);
    }
    return FieldElement(f_, std::move(r), Raw{});
  }

  FieldElement operator*(const FieldElement& o) const {
    check_compat(*this, o);
    const std::uint64_t p = f_->p_;
    const std::size_t m = c_.size();
    if (m == 1) {
      const std::uint64_t v =
          static_cast<std::uint64_t>(c_[0]) * o.c_[0] % p;
      return FieldElement(f_, {static_cast<std::uint32_t>(v)}, Raw{});
    }
    // Schoolbook convolution; the accumulator stays below 2^63 because
    // p^m <= 2^31 forces m * (p-1)^2 < 2^63 for every admissible (p, m).
    std::vector<std::uint64_t> t(2 * m - 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (c_[i] == 0) continue;
      const std::uint64_t a = c_[i];
      for (std::size_t j = 0; j < m; ++j) {
        t[i + j] += a * o.c_[j];
      }
    }
    for (auto& v : t) v %= p;
    // Reduce modulo the monic modulus.
    const auto& mod = f_->mod_;
    for (std::size_t i = 2 * m - 2; i >= m; --i) {
      const std::uint64_t c = t[i];
      if (c) {
        for (std::size_t j = 0; j < m; ++j) {
          t[i - m + j] = (t[i - m + j] + (p - mod[j]) * c) % p;
        }
        t[i] = 0;
      }
      if (i == m) break;
    }
    std::vector<std::uint32_t> r(m);
    for (std::size_t i = 0; i < m; ++i) r[i] = static_cast<std::uint32_t>(t[i]);
    return FieldElement(f_, std::move(r), Raw{});
  }

  FieldElement inv() const {
    require(!is_zero(), errc::division_by_zero, "inverse of zero");
    const std::uint64_t p = f_->p_;
    if (c_.size() == 1) {
      return FieldElement(
          f_, {static_cast<std::uint32_t>(detail::fp_inv(c_[0], p))}, Raw{});
    }
    // Extended Euclid in F_p[x]: maintain r_i = t_i * a (mod f).
    using detail::FpPoly;
    FpPoly r0(f_->mod_);
    FpPoly r1(c_);
    detail::fp_trim(r1);
    FpPoly t0, t1{1};
    while (!r1.empty()) {
      // Division step: r0 = q*r1 + rem.
      FpPoly rem = r0;
      FpPoly q(std::max<std::size_t>(rem.size(), r1.size()), 0);
      const std::uint64_t lead_inv = detail::fp_inv(r1.back(), p);
      while (rem.size() >= r1.size() && !rem.empty()) {
        const std::uint64_t c = rem.back() * lead_inv % p;
        const std::size_t off = rem.size() - r1.size();
        q[off] = static_cast<std::uint32_t>(c);
        for (std::size_t i = 0; i < r1.size(); ++i) {
          const std::uint64_t sub = c * r1[i] % p;
          rem[off + i] =
              static_cast<std::uint32_t>((rem[off + i] + p - sub) % p);
        }
        detail::fp_trim(rem);
      }
      detail::fp_trim(q);
      // tn = t0 - q * t1.
      FpPoly qt;
      if (!q.empty() && !t1.empty()) {
        qt.assign(q.size() + t1.size() - 1, 0);
        for (std::size_t i = 0; i < q.size(); ++i) {
          for (std::size_t j = 0; j < t1.size(); ++j) {
            qt[i + j] = static_cast<std::uint32_t>(
                (qt[i + j] + static_cast<std::uint64_t>(q[i]) * t1[j]) % p);
          }
        }
      }
      FpPoly tn(std::max(t0.size(), qt.size()), 0);
      for (std::size_t i = 0; i < tn.size(); ++i) {
        const std::uint64_t a = i < t0.size() ? t0[i] : 0;
        const std::uint64_t b = i < qt.size() ? qt[i] : 0;
        tn[i] = static_cast<std::uint32_t>((a + p - b) % p);
      }
      detail::fp_trim(tn);
      r0 = std::move(r1);
      r1 = std::move(rem);
      t0 = std::move(t1);
      t1 = std::move(tn);
    }
    // r0 is a nonzero constant gcd; scale t0 by its inverse.
    const std::uint64_t scale = detail::fp_inv(r0[0], p);
    std::vector<std::uint32_t> out(c_.size(), 0);
    for (std::size_t i = 0; i < t0.size(); ++i) {
      out[i] = static_cast<std::uint32_t>(t0[i] * scale % p);
    }
    return FieldElement(f_, std::move(out), Raw{});
  }

  FieldElement operator/(const FieldElement& o) const {
    check_compat(*this, o);
    return *this * o.inv();
  }

  FieldElement pow(std::int64_t e) const {
    if (e < 0) {
      return inv().pow(-e);
    }
    FieldElement base = *this;
    FieldElement acc = FieldElement(f_, one_coeffs(), Raw{});
    std::uint64_t k = static_cast<std::uint64_t>(e);
    while (k) {
      if (k & 1) acc = acc * base;
      base = base * base;
      k >>= 1;
    }
    return acc;
  }

 private:
  struct Raw {};
  FieldElement(FieldPtr field, std::vector<std::uint32_t> coeffs, Raw)
      : f_(std::move(field)), c_(std::move(coeffs)) {}

  std::vector<std::uint32_t> one_coeffs() const {
    std::vector<std::uint32_t> r(c_.size(), 0);
    r[0] = 1 % f_->p_;
    return r;
  }

  static void check_compat(const FieldElement& a, const FieldElement& b) {
    if (a.f_ == b.f_) return;
    require(a.f_->same(*b.f_), errc::field_mismatch,
            "operands live in different fields");
  }

  friend class Field;
  FieldPtr f_;
  std::vector<std::uint32_t> c_;
};

inline FieldPtr Field::make(
    std::uint64_t p, std::uint32_t m,
    const std::optional<std::vector<std::uint32_t>>& modulus) {
  require(detail::is_prime_u64(p), errc::not_prime,
          "characteristic " + std::to_string(p) + " is not prime");
  require(m >= 1, errc::parameter_violation, "extension degree must be >= 1");
  constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    require(order <= kMaxOrder / p, errc::order_overflow,
            "field order p^m exceeds 2^31");
    order *= p;
  }

  std::vector<std::uint32_t> mod;
  if (m == 1) {
    if (modulus) {
      require(modulus->size() == 2 && (*modulus)[1] == 1 && (*modulus)[0] < p,
              errc::reducible_modulus,
              "modulus for a prime field must be monic linear");
    }
    mod = {0, 1};
  } else if (modulus) {
    mod = *modulus;
    require(mod.size() == m + 1 && mod.back() == 1, errc::reducible_modulus,
            "modulus must be monic of degree m");
    for (std::uint32_t v : mod) {
      require(v < p, errc::reducible_modulus,
              "modulus coefficient not reduced modulo p");
    }
    require(detail::fp_poly_irreducible(mod, p), errc::reducible_modulus,
            "modulus is reducible over GF(p)");
  } else {
    // Smallest canonical encoding: scan the low coefficients ascending.
    mod.assign(m + 1, 0);
    mod[m] = 1;
    bool found = false;
    for (std::uint64_t e = 0; e < order; ++e) {
      std::uint64_t t = e;
      for (std::uint32_t i = 0; i < m; ++i) {
        mod[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (detail::fp_poly_irreducible(mod, p)) {
        found = true;
        break;
      }
    }
    require(found, errc::invariant_violation,
            "no irreducible modulus found");  // unreachable: one always exists
  }
  return std::make_shared<Field>(Key{}, p, m, std::move(mod), order);
}

inline FieldElement Field::zero() const {
  return FieldElement(shared_from_this(),
                      std::vector<std::uint32_t>(m_, 0));
}

inline FieldElement Field::one() const {
  std::vector<std::uint32_t> c(m_, 0);
  c[0] = 1 % p_;
  return FieldElement(shared_from_this(), std::move(c));
}

inline FieldElement Field::from_enc(std::uint64_t e) const {
  require(e < order_, errc::index_out_of_range,
          "encoding " + std::to_string(e) + " outside field of order " +
              std::to_string(order_));
  std::vector<std::uint32_t> c(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    c[i] = static_cast<std::uint32_t>(e % p_);
    e /= p_;
  }
  return FieldElement(shared_from_this(), std::move(c));
}

inline FieldElement Field::from_coeffs(std::vector<std::uint32_t> coeffs) const {
  return FieldElement(shared_from_this(), std::move(coeffs));
}

// The first `count` field elements in canonical encoding order.
inline std::vector<FieldElement> first_elements(const FieldPtr& f,
                                                std::size_t count) {
  require(count <= f->order(), errc::field_too_small,
          "field of order " + std::to_string(f->order()) +
              " cannot supply " + std::to_string(count) +
              " distinct elements");
  std::vector<FieldElement> out;
  out.reserve(count);
  for (std::size_t e = 0; e < count; ++e) out.push_back(f->from_enc(e));
  return out;
}

namespace detail {

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

// Multiplicative order of a nonzero element, via the factorization of q-1.
inline std::uint64_t element_order(const FieldElement& x) {
  require(!x.is_zero(), errc::division_by_zero,
          "zero has no multiplicative order");
  const std::uint64_t group = x.field()->order() - 1;
  std::uint64_t t = group;
  for (std::uint64_t r : detail::prime_factors(group)) {
    while (t % r == 0 &&
           x.pow(static_cast<std::int64_t>(t / r)).is_one()) {
      t /= r;
    }
  }
  return t;
}

// The element of multiplicative order p^m - 1 with smallest encoding.
inline FieldElement primitive_element(const FieldPtr& f) {
  const std::uint64_t group = f->order() - 1;
  const auto factors = detail::prime_factors(group);
  for (std::uint64_t e = 1; e < f->order(); ++e) {
    FieldElement x = f->from_enc(e);
    bool ok = true;
    for (std::uint64_t r : factors) {
      if (x.pow(static_cast<std::int64_t>(group / r)).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  raise(errc::invariant_violation, "no primitive element found");
}

namespace detail {

// Horner evaluation in `target` of an F_p coefficient sequence.
inline FieldElement lift_eval(const std::vector<std::uint32_t>& poly,
                              const FieldElement& t) {
  const FieldPtr& f = t.field();
  FieldElement acc = f->zero();
  for (std::size_t i = poly.size(); i-- > 0;) {
    acc = acc * t + f->from_enc(poly[i]);
  }
  return acc;
}

// Smallest-encoding root in `target` of the source field's modulus: the
// deterministic anchor of the subfield embedding.
inline FieldElement embedding_root(const Field& source,
                                   const FieldPtr& target) {
  for (std::uint64_t e = 0; e < target->order(); ++e) {
    FieldElement cand = target->from_enc(e);
    if (lift_eval(source.modulus(), cand).is_zero()) return cand;
  }
  raise(errc::invariant_violation, "source modulus has no root in target");
}

// Gaussian elimination over F_p.  Solves A x = b where A is given
// column-major (cols columns of length rows); returns the unique solution or
// raises invariant_violation (callers use it only on provably regular
// systems).
inline std::vector<std::uint32_t> fp_solve(
    std::vector<std::vector<std::uint32_t>> cols,
    std::vector<std::uint32_t> b, std::uint64_t p) {
  const std::size_t nrows = b.size();
  const std::size_t ncols = cols.size();
  // Build row-major augmented matrix.
  std::vector<std::vector<std::uint64_t>> a(
      nrows, std::vector<std::uint64_t>(ncols + 1, 0));
  for (std::size_t c = 0; c < ncols; ++c) {
    for (std::size_t r = 0; r < nrows; ++r) a[r][c] = cols[c][r];
  }
  for (std::size_t r = 0; r < nrows; ++r) a[r][ncols] = b[r];

  std::vector<std::size_t> pivot_col(ncols, nrows);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
    std::size_t pr = rank;
    while (pr < nrows && a[pr][c] == 0) ++pr;
    if (pr == nrows) continue;
    std::swap(a[pr], a[rank]);
    const std::uint64_t inv = fp_inv(a[rank][c], p);
    for (std::size_t j = c; j <= ncols; ++j) a[rank][j] = a[rank][j] * inv % p;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r != rank && a[r][c]) {
        const std::uint64_t f = a[r][c];
        for (std::size_t j = c; j <= ncols; ++j) {
          a[r][j] = (a[r][j] + (p - a[rank][j] * f % p)) % p;
        }
      }
    }
    pivot_col[c] = rank;
    ++rank;
  }
  // Consistency and uniqueness.
  for (std::size_t r = rank; r < nrows; ++r) {
    require(a[r][ncols] == 0, errc::invariant_violation,
            "subfield decomposition system inconsistent");
  }
  std::vector<std::uint32_t> x(ncols, 0);
  for (std::size_t c = 0; c < ncols; ++c) {
    require(pivot_col[c] != nrows, errc::invariant_violation,
            "subfield decomposition system underdetermined");
    x[c] = static_cast<std::uint32_t>(a[pivot_col[c]][ncols]);
  }
  return x;
}

}  // namespace detail

// Ring-homomorphic image of x in `target`; the embedding sends the source
// generator to the smallest-encoding root of the source modulus.
inline FieldElement embed(const FieldElement& x, const FieldPtr& target) {
  const FieldPtr& src = x.field();
  require(src->characteristic() == target->characteristic(),
          errc::no_subfield, "fields have different characteristic");
  require(target->degree() % src->degree() == 0, errc::no_subfield,
          "source degree does not divide target degree");
  if (src->same(*target)) {
    return target->from_coeffs(x.coeffs());
  }
  const FieldElement rho = detail::embedding_root(*src, target);
  return detail::lift_eval(x.coeffs(), rho);
}

namespace detail {

// F_p coordinates (length m*count... actually m rows) of products that form a
// tower basis of T over F_p adapted to the subfield of degree a:
// basis index (j, u) -> g^j * rho^u with g the class of x in T (or 1 when
// deg T == 1) and rho the embedding root of the canonical GF(p, a) modulus.
struct TowerBasis {
  FieldPtr subfield;                                // canonical GF(p, a)
  std::vector<std::vector<std::uint32_t>> columns;  // F_p coords of products
  std::size_t a, b;
};

inline TowerBasis tower_basis(const FieldPtr& big, std::uint32_t a) {
  require(a >= 1 && big->degree() % a == 0, errc::no_subfield,
          "subfield degree does not divide the extension degree");
  TowerBasis tb;
  tb.a = a;
  tb.b = big->degree() / a;
  tb.subfield = Field::make(big->characteristic(), a);
  const FieldElement rho = embedding_root(*tb.subfield, big);
  const FieldElement g = big->degree() > 1
                             ? big->from_enc(big->characteristic())
                             : big->one();
  FieldElement gj = big->one();
  for (std::size_t j = 0; j < tb.b; ++j) {
    FieldElement prod = gj;
    for (std::size_t u = 0; u < tb.a; ++u) {
      tb.columns.push_back(prod.coeffs());
      if (u + 1 < tb.a) prod = prod * rho;
    }
    if (j + 1 < tb.b) gj = gj * g;
  }
  return tb;
}

// Coordinates of x over the canonical subfield GF(p, a), as b elements.
inline std::vector<FieldElement> subfield_coordinates(const FieldElement& x,
                                                      const TowerBasis& tb) {
  const std::uint64_t p = x.field()->characteristic();
  const auto sol = fp_solve(tb.columns, x.coeffs(), p);
  std::vector<FieldElement> out;
  out.reserve(tb.b);
  for (std::size_t j = 0; j < tb.b; ++j) {
    std::vector<std::uint32_t> c(tb.a);
    for (std::size_t u = 0; u < tb.a; ++u) c[u] = sol[j * tb.a + u];
    out.push_back(tb.subfield->from_coeffs(std::move(c)));
  }
  return out;
}

}  // namespace detail

// Monic minimal polynomial of x over the canonical subfield GF(p, a),
// little-endian, computed as the product over distinct Frobenius conjugates.
inline std::vector<FieldElement> minimal_polynomial(const FieldElement& x,
                                                    std::uint32_t a) {
  const FieldPtr& f = x.field();
  require(a >= 1 && f->degree() % a == 0, errc::no_subfield,
          "subfield degree does not divide the extension degree");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < a; ++i) q *= f->characteristic();

  std::vector<FieldElement> conj;
  FieldElement y = x;
  do {
    conj.push_back(y);
    y = y.pow(static_cast<std::int64_t>(q));
  } while (y != x);

  // Product of (X - conj_i), coefficients in the big field.
  std::vector<FieldElement> poly{f->one()};
  for (const FieldElement& c : conj) {
    std::vector<FieldElement> next(poly.size() + 1, f->zero());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = next[i + 1] + poly[i];
      next[i] = next[i] - poly[i] * c;
    }
    poly = std::move(next);
  }

  // Re-express every coefficient in the canonical subfield.
  const auto tb = detail::tower_basis(f, a);
  std::vector<FieldElement> out;
  out.reserve(poly.size());
  for (const FieldElement& c : poly) {
    const auto coords = detail::subfield_coordinates(c, tb);
    for (std::size_t j = 1; j < coords.size(); ++j) {
      require(coords[j].is_zero(), errc::invariant_violation,
              "minimal polynomial coefficient escapes the subfield");
    }
    out.push_back(coords[0]);
  }
  return out;
}

// True iff no nontrivial GF(p^a)-linear combination of elems vanishes.
inline bool linearly_independent_over(const std::vector<FieldElement>& elems,
                                      std::uint32_t a) {
  require(!elems.empty(), errc::parameter_violation,
          "independence of an empty family is vacuous; pass elements");
  const FieldPtr& f = elems.front().field();
  for (const auto& e : elems) {
    require(e.field() == f || e.field()->same(*f), errc::field_mismatch,
            "elements live in different fields");
  }
  require(a >= 1 && f->degree() % a == 0, errc::no_subfield,
          "subfield degree does not divide the extension degree");

  const auto tb = detail::tower_basis(f, a);
  // Rows of subfield coordinates; rank over GF(p, a) by Gaussian elimination.
  std::vector<std::vector<FieldElement>> rows;
  rows.reserve(elems.size());
  for (const auto& e : elems) {
    rows.push_back(detail::subfield_coordinates(e, tb));
  }
  const std::size_t ncols = tb.b;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    std::size_t pr = rank;
    while (pr < rows.size() && rows[pr][c].is_zero()) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[pr], rows[rank]);
    const FieldElement inv = rows[rank][c].inv();
    for (std::size_t j = c; j < ncols; ++j) {
      rows[rank][j] = rows[rank][j] * inv;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && !rows[r][c].is_zero()) {
        const FieldElement fac = rows[r][c];
        for (std::size_t j = c; j < ncols; ++j) {
          rows[r][j] = rows[r][j] - rows[rank][j] * fac;
        }
      }
    }
    ++rank;
  }
  return rank == elems.size();
}

}  // namespace minorcert
