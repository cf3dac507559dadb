#pragma once

// JSON descriptor documents for fields, matrices, reports, and the two code
// families.  Reading validates in three tiers: malformed JSON raises
// ParseError, wrong shapes/types/value ranges inside an object raise
// SchemaViolation, and semantic inconsistencies across the document's parts
// raise InvariantViolation.  Derived data (generators, sliding windows) is
// recomputed, never stored.

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "completion.hpp"
#include "convmdp.hpp"
#include "errors.hpp"
#include "gf.hpp"
#include "linalg.hpp"
#include "mrlrc.hpp"

namespace minorcert {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& msg) {
  raise(errc::schema_violation, msg);
}

inline const json& member(const json& j, const char* key) {
  if (!j.is_object()) schema_fail("expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_fail(std::string("missing key: ") + key);
  return *it;
}

inline std::uint64_t as_uint(const json& v, const char* what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  schema_fail(std::string(what) + " must be a nonnegative integer");
}

inline std::uint64_t member_uint(const json& j, const char* key) {
  return as_uint(member(j, key), key);
}

inline std::vector<std::uint64_t> member_uint_array(const json& j,
                                                    const char* key) {
  const json& v = member(j, key);
  if (!v.is_array()) schema_fail(std::string(key) + " must be an array");
  std::vector<std::uint64_t> out;
  out.reserve(v.size());
  for (const json& x : v) out.push_back(as_uint(x, key));
  return out;
}

inline std::string member_string(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_string()) schema_fail(std::string(key) + " must be a string");
  return v.get<std::string>();
}

inline const json& member_array(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_array()) schema_fail(std::string(key) + " must be an array");
  return v;
}

}  // namespace detail

inline json field_to_json(const FieldPtr& f) {
  json mod = json::array();
  for (std::uint32_t c : f->modulus()) mod.push_back(c);
  return json{{"p", f->characteristic()},
              {"m", f->degree()},
              {"modulus", std::move(mod)}};
}

inline FieldPtr field_from_json(const json& j) {
  const std::uint64_t p = detail::member_uint(j, "p");
  const std::uint64_t m = detail::member_uint(j, "m");
  if (m == 0 || m > 0xffffffffull) detail::schema_fail("m out of range");
  const auto mod64 = detail::member_uint_array(j, "modulus");
  std::vector<std::uint32_t> mod;
  mod.reserve(mod64.size());
  for (std::uint64_t c : mod64) {
    if (c > 0xffffffffull) detail::schema_fail("modulus coefficient too big");
    mod.push_back(static_cast<std::uint32_t>(c));
  }
  try {
    return Field::make(p, static_cast<std::uint32_t>(m), mod);
  } catch (const error& e) {
    detail::schema_fail(std::string("invalid field description: ") + e.what());
  }
}

inline json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      entries.push_back(m.at(r, c).enc());
    }
  }
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"field", field_to_json(m.field())},
              {"entries", std::move(entries)}};
}

inline Matrix matrix_from_json(const json& j) {
  const std::uint64_t rows = detail::member_uint(j, "rows");
  const std::uint64_t cols = detail::member_uint(j, "cols");
  const FieldPtr f = field_from_json(detail::member(j, "field"));
  const auto encs = detail::member_uint_array(j, "entries");
  if (encs.size() != rows * cols) {
    detail::schema_fail("entry count does not match rows*cols");
  }
  std::vector<FieldElement> entries;
  entries.reserve(encs.size());
  for (std::uint64_t e : encs) {
    if (e >= f->order()) detail::schema_fail("entry encoding out of range");
    entries.push_back(f->from_enc(e));
  }
  return Matrix(f, rows, cols, std::move(entries));
}

inline json report_to_json(const VerificationReport& r) {
  json fails = json::array();
  for (const ColSet& cs : r.failures) {
    json s = json::array();
    for (std::size_t c : cs) s.push_back(c);
    fails.push_back(std::move(s));
  }
  return json{{"passed", r.passed},
              {"total_sets", r.total_sets},
              {"checked_sets", r.checked_sets},
              {"failures", std::move(fails)},
              {"elapsed_ms", r.elapsed_ms}};
}

// The combined report keeps the global sweep's fields and adds the per-group
// local MDS verdicts; "passed" is the overall outcome.
inline json mr_report_to_json(const MrVerifyReport& r) {
  json j = report_to_json(r.global);
  json locals = json::array();
  for (bool ok : r.local_mds) locals.push_back(ok);
  j["local_mds"] = std::move(locals);
  j["passed"] = r.passed;
  return j;
}

inline json mrlrc_to_json(const MrLrcCode& code) {
  json ns = json::array();
  for (std::size_t x : code.profile.ns) ns.push_back(x);
  json ks = json::array();
  for (std::size_t x : code.profile.ks) ks.push_back(x);
  json locals = json::array();
  for (const Matrix& m : code.locals) locals.push_back(matrix_to_json(m));
  json parities = json::array();
  for (const Matrix& m : code.parities) parities.push_back(matrix_to_json(m));
  return json{{"kind", "mr-lrc"},
              {"profile",
               {{"ell", code.profile.ell},
                {"h", code.profile.h},
                {"ns", std::move(ns)},
                {"ks", std::move(ks)}}},
              {"base_field", field_to_json(code.base_field)},
              {"ext_field", field_to_json(code.ext_field)},
              {"alpha", code.alpha.enc()},
              {"locals", std::move(locals)},
              {"parities", std::move(parities)}};
}

// strict additionally re-checks the construction invariants (diagonal parity
// block shape and local MDS property); without it only document-level
// validity is enforced, so deliberately damaged codes can still be loaded
// and honestly swept by the verifier.
inline MrLrcCode mrlrc_from_json(const json& j, bool strict = true) {
  if (detail::member_string(j, "kind") != "mr-lrc") {
    detail::schema_fail("kind must be \"mr-lrc\"");
  }
  const json& pj = detail::member(j, "profile");
  LocalityProfile profile;
  profile.ell = detail::member_uint(pj, "ell");
  profile.h = detail::member_uint(pj, "h");
  for (std::uint64_t x : detail::member_uint_array(pj, "ns")) {
    profile.ns.push_back(x);
  }
  for (std::uint64_t x : detail::member_uint_array(pj, "ks")) {
    profile.ks.push_back(x);
  }
  try {
    profile.validate();
  } catch (const error& e) {
    detail::schema_fail(std::string("invalid profile: ") + e.what());
  }
  const FieldPtr base = field_from_json(detail::member(j, "base_field"));
  const FieldPtr ext = field_from_json(detail::member(j, "ext_field"));
  require(ext->characteristic() == base->characteristic() &&
              ext->degree() % base->degree() == 0,
          errc::invariant_violation,
          "ext_field is not an extension of base_field");
  const std::uint64_t alpha_enc = detail::member_uint(j, "alpha");
  if (alpha_enc >= ext->order()) {
    detail::schema_fail("alpha encoding out of range");
  }
  const FieldElement alpha = ext->from_enc(alpha_enc);

  const json& lj = detail::member_array(j, "locals");
  const json& qj = detail::member_array(j, "parities");
  if (lj.size() != profile.ell || qj.size() != profile.ell) {
    detail::schema_fail("locals/parities must have one matrix per group");
  }
  std::vector<Matrix> locals;
  std::vector<Matrix> parities;
  for (std::size_t i = 0; i < profile.ell; ++i) {
    Matrix gi = matrix_from_json(lj[i]);
    Matrix pi = matrix_from_json(qj[i]);
    require(gi.rows() == profile.ks[i] && gi.cols() == profile.ns[i],
            errc::invariant_violation,
            "local block shape disagrees with the profile");
    require(pi.rows() == profile.ks[i] && pi.cols() == profile.h,
            errc::invariant_violation,
            "parity block shape disagrees with the profile");
    require(gi.field()->same(*ext) && pi.field()->same(*ext),
            errc::invariant_violation,
            "code matrices must live in the extension field");
    locals.push_back(std::move(gi));
    parities.push_back(std::move(pi));
  }
  if (strict) {
    for (std::size_t i = 0; i < profile.ell; ++i) {
      require(is_mds(locals[i]), errc::invariant_violation,
              "local block is not MDS");
      require(parities[i] ==
                  detail::parity_block(alpha, profile.ks[i], profile.h, i),
              errc::invariant_violation,
              "parity block violates the diagonal shape");
    }
  }
  return MrLrcCode{std::move(profile), base,   ext,
                   alpha,              std::move(locals), std::move(parities)};
}

inline json conv_to_json(const ConvCode& code) {
  json coeffs = json::array();
  for (const Matrix& m : code.coeffs) coeffs.push_back(matrix_to_json(m));
  return json{{"kind", "conv"},          {"n", code.n},
              {"k", code.k},             {"delta", code.delta},
              {"field", field_to_json(code.field)},
              {"coeffs", std::move(coeffs)}};
}

// The declared degree is always re-validated against the exact minor-degree
// computation, so no tampering with delta or the coefficients can slip
// through a load.
inline ConvCode conv_from_json(const json& j) {
  if (detail::member_string(j, "kind") != "conv") {
    detail::schema_fail("kind must be \"conv\"");
  }
  const std::uint64_t n = detail::member_uint(j, "n");
  const std::uint64_t k = detail::member_uint(j, "k");
  const std::uint64_t delta = detail::member_uint(j, "delta");
  const FieldPtr f = field_from_json(detail::member(j, "field"));
  const json& cj = detail::member_array(j, "coeffs");
  if (cj.empty()) detail::schema_fail("coeffs must be nonempty");
  std::vector<Matrix> coeffs;
  for (const json& mj : cj) {
    Matrix m = matrix_from_json(mj);
    require(m.rows() == k && m.cols() == n, errc::invariant_violation,
            "coefficient matrix shape disagrees with n and k");
    require(m.field()->same(*f), errc::invariant_violation,
            "coefficient matrix must live in the declared field");
    coeffs.push_back(std::move(m));
  }
  try {
    return make_conv_code(n, k, f, std::move(coeffs), delta);
  } catch (const error& e) {
    if (e.code() == errc::invariant_violation) throw;
    raise(errc::invariant_violation, std::string("invalid code: ") + e.what());
  }
}

inline std::string descriptor_kind(const json& j) {
  return detail::member_string(j, "kind");
}

inline void write_descriptor(const std::string& path, const json& doc) {
  std::ofstream out(path);
  require(out.good(), errc::parse_error, "cannot open for writing: " + path);
  out << doc.dump(2) << '\n';
  require(out.good(), errc::parse_error, "write failed: " + path);
}

inline json read_descriptor(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::parse_error, "cannot open: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    raise(errc::parse_error, std::string("JSON parse failure: ") + e.what());
  }
}

}  // namespace minorcert
