#pragma once

// Maximally recoverable locally recoverable codes with unequal locality:
// deterministic construction from Cauchy local blocks and diagonal global
// parity blocks, admissible-minor verification, encoding, two-phase erasure
// decoding, single-symbol update, and the Q_h quadratic-form oracle.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "completion.hpp"
#include "errors.hpp"
#include "gf.hpp"
#include "linalg.hpp"

namespace minorcert {

// Shape of an unequal-locality code: ell local groups of sizes ns with
// information dimensions ks, plus h global parity columns appended last.
struct LocalityProfile {
  std::size_t ell = 0;
  std::size_t h = 0;
  std::vector<std::size_t> ns;
  std::vector<std::size_t> ks;

  void validate() const {
    require(ell >= 1, errc::profile_violation, "need at least one local group");
    require(ns.size() == ell && ks.size() == ell, errc::profile_violation,
            "ns/ks length must equal ell");
    for (std::size_t i = 0; i < ell; ++i) {
      require(ks[i] >= 1 && ns[i] >= ks[i], errc::profile_violation,
              "each group needs n_i >= k_i >= 1");
    }
  }

  std::size_t dimension() const {  // K
    std::size_t k = 0;
    for (std::size_t ki : ks) k += ki;
    return k;
  }
  std::size_t length() const {  // N
    std::size_t n = h;
    for (std::size_t ni : ns) n += ni;
    return n;
  }
  // Column index range [first, last) of local group i.
  std::pair<std::size_t, std::size_t> group_range(std::size_t i) const {
    require(i < ell, errc::index_out_of_range, "group index out of range");
    std::size_t start = 0;
    for (std::size_t t = 0; t < i; ++t) start += ns[t];
    return {start, start + ns[i]};
  }
  // Generator row range [first, last) of block i.
  std::pair<std::size_t, std::size_t> row_range(std::size_t i) const {
    require(i < ell, errc::index_out_of_range, "group index out of range");
    std::size_t start = 0;
    for (std::size_t t = 0; t < i; ++t) start += ks[t];
    return {start, start + ks[i]};
  }
};

// Smallest extension degree the construction guarantees: 1 when h <= 1, else
// (ell-1)*floor(h/2)*ceil(h/2) + 1.
inline std::uint32_t field_degree_bound(const LocalityProfile& p) {
  p.validate();
  if (p.h <= 1) return 1;
  const std::uint64_t d =
      static_cast<std::uint64_t>(p.ell - 1) * (p.h / 2) * ((p.h + 1) / 2) + 1;
  return static_cast<std::uint32_t>(d);
}

struct MrLrcCode {
  LocalityProfile profile;
  FieldPtr base_field;  // F_q
  FieldPtr ext_field;   // F_{q^d}
  FieldElement alpha;   // primitive element of the extension
  std::vector<Matrix> locals;    // k_i x n_i blocks, embedded in F_{q^d}
  std::vector<Matrix> parities;  // k_i x h blocks over F_{q^d}

  // Assembled K x N generator: block-diagonal locals with the parity blocks
  // stacked in the last h columns.
  Matrix generator() const {
    const std::size_t K = profile.dimension();
    const std::size_t N = profile.length();
    Matrix g(ext_field, K, N);
    for (std::size_t i = 0; i < profile.ell; ++i) {
      const auto [r0, r1] = profile.row_range(i);
      const auto [c0, c1] = profile.group_range(i);
      for (std::size_t r = r0; r < r1; ++r) {
        for (std::size_t c = c0; c < c1; ++c) {
          g.set(r, c, locals[i].at(r - r0, c - c0));
        }
        for (std::size_t j = 0; j < profile.h; ++j) {
          g.set(r, N - profile.h + j, parities[i].at(r - r0, j));
        }
      }
    }
    return g;
  }
};

namespace detail {

// The parity block of group i: top h x h diagonal alpha^{j*i} (j = 0..h-1),
// zero below.
inline Matrix parity_block(const FieldElement& alpha, std::size_t ki,
                           std::size_t h, std::size_t group_index) {
  Matrix p(alpha.field(), ki, h);
  for (std::size_t j = 0; j < h; ++j) {
    p.set(j, j, alpha.pow(static_cast<std::int64_t>(j * group_index)));
  }
  return p;
}

}  // namespace detail

// Deterministic construction: local block i is the Cauchy matrix on the
// first k_i + n_i base-field elements (xs before ys) embedded upward, the
// global blocks are powers of the extension's primitive element.  Refuses
// extension degrees below field_degree_bound unless explicitly overridden.
inline MrLrcCode build_theorem3(const LocalityProfile& profile,
                                const FieldPtr& base_field, std::uint32_t d,
                                bool override_degree = false) {
  profile.validate();
  const std::size_t kmin =
      *std::min_element(profile.ks.begin(), profile.ks.end());
  require(profile.h <= kmin, errc::profile_violation,
          "h must not exceed the smallest k_i");
  for (std::size_t i = 0; i < profile.ell; ++i) {
    require(base_field->order() >=
                static_cast<std::uint64_t>(profile.ks[i] + profile.ns[i]),
            errc::field_too_small,
            "base field needs k_i + n_i distinct sample points");
  }
  const std::uint32_t D = field_degree_bound(profile);
  require(d >= D || override_degree, errc::degree_too_small,
          "extension degree is below the guaranteed bound");
  require(d >= 1, errc::parameter_violation, "extension degree must be >= 1");

  const FieldPtr ext =
      Field::make(base_field->characteristic(), base_field->degree() * d);
  const FieldElement alpha = primitive_element(ext);

  std::vector<Matrix> locals;
  std::vector<Matrix> parities;
  for (std::size_t i = 0; i < profile.ell; ++i) {
    const std::size_t ki = profile.ks[i];
    const std::size_t ni = profile.ns[i];
    const auto pts = first_elements(base_field, ki + ni);
    std::vector<FieldElement> xs(pts.begin(), pts.begin() + ki);
    std::vector<FieldElement> ys(pts.begin() + ki, pts.end());
    Matrix gi_base = cauchy(base_field, xs, ys);
    Matrix gi(ext, ki, ni);
    for (std::size_t r = 0; r < ki; ++r) {
      for (std::size_t c = 0; c < ni; ++c) {
        gi.set(r, c, embed(gi_base.at(r, c), ext));
      }
    }
    require(is_mds(gi), errc::invariant_violation,
            "local block failed its MDS check");
    locals.push_back(std::move(gi));
    parities.push_back(detail::parity_block(alpha, ki, profile.h, i));
  }
  return MrLrcCode{profile, base_field, ext, alpha, std::move(locals),
                   std::move(parities)};
}

// All K-subsets of columns taking at most k_i from each local group, in
// ascending lexicographic order.  Built as a product over per-group column
// choices driven by the weak compositions of K.
inline std::vector<ColSet> admissible_column_sets(
    const LocalityProfile& profile) {
  profile.validate();
  const std::size_t K = profile.dimension();
  std::vector<ColSet> out;

  std::vector<std::size_t> starts(profile.ell);
  for (std::size_t i = 0; i < profile.ell; ++i) {
    starts[i] = profile.group_range(i).first;
  }
  const std::size_t global_start = profile.length() - profile.h;

  for_each_weak_composition(K, profile.ell + 1, [&](const auto& parts) {
    for (std::size_t i = 0; i < profile.ell; ++i) {
      if (parts[i] > profile.ks[i]) return;
    }
    if (parts[profile.ell] > profile.h) return;
    // Product of per-part subset choices; groups are consecutive so the
    // concatenated picks stay sorted.
    ColSet current;
    auto rec = [&](auto&& self, std::size_t part) -> void {
      if (part == profile.ell + 1) {
        out.push_back(current);
        return;
      }
      const std::size_t universe =
          (part < profile.ell) ? profile.ns[part] : profile.h;
      const std::size_t base =
          (part < profile.ell) ? starts[part] : global_start;
      for_each_k_subset(universe, parts[part], [&](const ColSet& pick) {
        const std::size_t sz = current.size();
        for (std::size_t c : pick) current.push_back(base + c);
        self(self, part + 1);
        current.resize(sz);
        return true;
      });
    };
    rec(rec, 0);
  });
  std::sort(out.begin(), out.end());
  return out;
}

struct MrVerifyReport {
  bool passed = false;
  std::vector<bool> local_mds;  // per-group MDS outcome
  VerificationReport global;    // admissible-minor sweep
};

inline MrVerifyReport verify_mr(const MrLrcCode& code,
                                std::size_t failure_cap = 16,
                                unsigned threads = 1) {
  MrVerifyReport rep;
  bool locals_ok = true;
  for (const Matrix& gi : code.locals) {
    const bool ok = is_mds(gi);
    rep.local_mds.push_back(ok);
    locals_ok = locals_ok && ok;
  }
  rep.global = verify_nonvanishing(code.generator(),
                                   admissible_column_sets(code.profile),
                                   failure_cap, threads);
  rep.passed = locals_ok && rep.global.passed;
  return rep;
}

// Blockwise systematic-message encoding: group i emits m_i * G_i, the global
// columns accumulate m_i * P_i over all groups.
inline std::vector<FieldElement> encode(const MrLrcCode& code,
                                        const std::vector<FieldElement>& msg) {
  const std::size_t K = code.profile.dimension();
  const std::size_t N = code.profile.length();
  const std::size_t h = code.profile.h;
  require(msg.size() == K, errc::length_mismatch,
          "message length must equal the code dimension");
  for (const auto& x : msg) {
    require(x.field()->same(*code.ext_field), errc::field_mismatch,
            "message symbol from a different field");
  }
  std::vector<FieldElement> word(N, code.ext_field->zero());
  for (std::size_t i = 0; i < code.profile.ell; ++i) {
    const auto [r0, r1] = code.profile.row_range(i);
    const auto [c0, c1] = code.profile.group_range(i);
    for (std::size_t c = c0; c < c1; ++c) {
      FieldElement acc = code.ext_field->zero();
      for (std::size_t r = r0; r < r1; ++r) {
        acc = acc + msg[r] * code.locals[i].at(r - r0, c - c0);
      }
      word[c] = acc;
    }
    for (std::size_t j = 0; j < h; ++j) {
      FieldElement acc = word[N - h + j];
      for (std::size_t r = r0; r < r1; ++r) {
        acc = acc + msg[r] * code.parities[i].at(r - r0, j);
      }
      word[N - h + j] = acc;
    }
  }
  return word;
}

struct DecodeResult {
  std::vector<FieldElement> message;
  std::vector<FieldElement> codeword;
};

// Two-phase erasure decoding over an erasure mask (nullopt = erased):
// phase 1 repairs each group with at most n_i - k_i erasures through its MDS
// local block; phase 2 solves for the whole message from every known column.
// Returns nullopt when the known columns leave message rank below K.  A word
// inconsistent with every codeword raises InconsistentCodeword.
inline std::optional<DecodeResult> decode_erasures(
    const MrLrcCode& code,
    const std::vector<std::optional<FieldElement>>& received) {
  const std::size_t K = code.profile.dimension();
  const std::size_t N = code.profile.length();
  require(received.size() == N, errc::length_mismatch,
          "received word length must equal the code length");
  for (const auto& x : received) {
    if (x) {
      require(x->field()->same(*code.ext_field), errc::field_mismatch,
              "received symbol from a different field");
    }
  }
  std::vector<std::optional<FieldElement>> work = received;

  // Phase 1: local repair.
  for (std::size_t i = 0; i < code.profile.ell; ++i) {
    const auto [c0, c1] = code.profile.group_range(i);
    const std::size_t ki = code.profile.ks[i];
    const std::size_t ni = code.profile.ns[i];
    std::vector<std::size_t> surv;
    for (std::size_t c = c0; c < c1; ++c) {
      if (work[c]) surv.push_back(c - c0);
    }
    const std::size_t erased = ni - surv.size();
    if (erased == 0 || erased > ni - ki) continue;
    ColSet pick(surv.begin(), surv.begin() + ki);
    Matrix sys = transpose(submatrix(code.locals[i], first_k_subset(ki), pick));
    Matrix rhs(code.ext_field, ki, 1);
    for (std::size_t r = 0; r < ki; ++r) rhs.set(r, 0, *work[c0 + pick[r]]);
    const auto sol = rank_and_solve(sys, rhs);
    if (!sol.status || *sol.status != SolveStatus::unique_solution) {
      raise(errc::invariant_violation,
            "local MDS solve was not uniquely determined");
    }
    for (std::size_t c = c0; c < c1; ++c) {
      if (work[c]) continue;
      FieldElement acc = code.ext_field->zero();
      for (std::size_t r = 0; r < ki; ++r) {
        acc = acc + sol.solution->at(r, 0) * code.locals[i].at(r, c - c0);
      }
      work[c] = acc;
    }
  }

  // Phase 2: global solve from all known columns.
  const Matrix gen = code.generator();
  ColSet known;
  for (std::size_t c = 0; c < N; ++c) {
    if (work[c]) known.push_back(c);
  }
  Matrix sys = transpose(submatrix(gen, first_k_subset(K), known));
  Matrix rhs(code.ext_field, known.size(), 1);
  for (std::size_t r = 0; r < known.size(); ++r) rhs.set(r, 0, *work[known[r]]);
  const auto sol = rank_and_solve(sys, rhs);
  if (sol.rank < K) return std::nullopt;
  if (*sol.status == SolveStatus::inconsistent) {
    raise(errc::inconsistent_codeword,
          "received word is not consistent with any codeword");
  }
  std::vector<FieldElement> msg;
  msg.reserve(K);
  for (std::size_t r = 0; r < K; ++r) msg.push_back(sol.solution->at(r, 0));
  std::vector<FieldElement> word = encode(code, msg);
  for (std::size_t c = 0; c < N; ++c) {
    if (received[c] && *received[c] != word[c]) {
      raise(errc::inconsistent_codeword,
            "received word disagrees with the decoded codeword");
    }
  }
  return DecodeResult{std::move(msg), std::move(word)};
}

struct UpdateResult {
  std::vector<FieldElement> codeword;
  ColSet touched;
};

// Replace message symbol t of group i and recompute only the columns its
// generator row supports: the group's columns plus, when t < h, global
// parity t.  The touched set is that structural support.
inline UpdateResult update_symbol(const MrLrcCode& code,
                                  const std::vector<FieldElement>& codeword,
                                  std::size_t group, std::size_t t,
                                  const FieldElement& value) {
  require(group < code.profile.ell, errc::index_out_of_range,
          "group index out of range");
  require(t < code.profile.ks[group], errc::index_out_of_range,
          "message index out of range for this group");
  require(value.field()->same(*code.ext_field), errc::field_mismatch,
          "new value from a different field");
  const std::size_t N = code.profile.length();
  const std::size_t h = code.profile.h;
  require(codeword.size() == N, errc::length_mismatch,
          "codeword length must equal the code length");

  std::vector<std::optional<FieldElement>> full(codeword.begin(),
                                                codeword.end());
  const auto decoded = decode_erasures(code, full);
  if (!decoded) {
    raise(errc::inconsistent_codeword, "codeword failed consistency decoding");
  }
  std::vector<FieldElement> msg = decoded->message;
  msg[code.profile.row_range(group).first + t] = value;
  std::vector<FieldElement> fresh = encode(code, msg);

  ColSet touched;
  const auto [c0, c1] = code.profile.group_range(group);
  for (std::size_t c = c0; c < c1; ++c) touched.push_back(c);
  if (t < h) touched.push_back(N - h + t);

  std::vector<FieldElement> out = codeword;
  for (std::size_t c : touched) out[c] = fresh[c];
  return UpdateResult{std::move(out), std::move(touched)};
}

// Q_h quadratic form: sum over i < j of (j - i) * x_i * x_j.
inline std::uint64_t qh(const std::vector<std::size_t>& xs) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      acc += static_cast<std::uint64_t>(j - i) * xs[i] * xs[j];
    }
  }
  return acc;
}

// Exact maximum of Q_h over all weak compositions of h into ell parts.
inline std::uint64_t qh_max(std::size_t ell, std::size_t h) {
  require(ell >= 1, errc::parameter_violation, "need at least one part");
  std::uint64_t best = 0;
  for_each_weak_composition(h, ell, [&](const auto& xs) {
    best = std::max(best, qh(std::vector<std::size_t>(xs.begin(), xs.end())));
  });
  return best;
}

}  // namespace minorcert
