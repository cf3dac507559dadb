#pragma once

// Single exception type for the whole library.  Every failure mode carries a
// stable machine-readable code plus a human-readable message; callers that
// need to branch on the cause switch on code() rather than parsing text.

#include <stdexcept>
#include <string>

namespace minorcert {

enum class errc {
  not_prime,
  reducible_modulus,
  order_overflow,
  division_by_zero,
  field_mismatch,
  no_subfield,
  not_square,
  dimension_mismatch,
  index_out_of_range,
  not_sorted,
  repeated_point,
  too_many_rows,
  bad_set_size,
  ties_unsupported,
  field_too_small,
  profile_violation,
  degree_too_small,
  length_mismatch,
  inconsistent_codeword,
  parameter_violation,
  no_valid_z,
  too_large,
  unsupported_window,
  parse_error,
  schema_violation,
  invariant_violation,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_prime: return "not_prime";
    case errc::reducible_modulus: return "reducible_modulus";
    case errc::order_overflow: return "order_overflow";
    case errc::division_by_zero: return "division_by_zero";
    case errc::field_mismatch: return "field_mismatch";
    case errc::no_subfield: return "no_subfield";
    case errc::not_square: return "not_square";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::index_out_of_range: return "index_out_of_range";
    case errc::not_sorted: return "not_sorted";
    case errc::repeated_point: return "repeated_point";
    case errc::too_many_rows: return "too_many_rows";
    case errc::bad_set_size: return "bad_set_size";
    case errc::ties_unsupported: return "ties_unsupported";
    case errc::field_too_small: return "field_too_small";
    case errc::profile_violation: return "profile_violation";
    case errc::degree_too_small: return "degree_too_small";
    case errc::length_mismatch: return "length_mismatch";
    case errc::inconsistent_codeword: return "inconsistent_codeword";
    case errc::parameter_violation: return "parameter_violation";
    case errc::no_valid_z: return "no_valid_z";
    case errc::too_large: return "too_large";
    case errc::unsupported_window: return "unsupported_window";
    case errc::parse_error: return "parse_error";
    case errc::schema_violation: return "schema_violation";
    case errc::invariant_violation: return "invariant_violation";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
  throw error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
  if (!condition) raise(code, message);
}

}  // namespace minorcert
