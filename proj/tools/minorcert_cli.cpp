// minorcert command-line front end.
//
// Subcommands: construct, verify, encode, decode, update, coldist, search,
// oracle-qh.  Descriptor documents are JSON; reports are printed to stdout as
// single-line JSON.  Exit status: 0 = success/verified, 1 = verification
// failed or unrecoverable decode, 2 = usage or parameter error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "minorcert/minorcert.hpp"

namespace {

using minorcert::errc;
using minorcert::raise;
using minorcert::require;
using json = minorcert::json;

// q = p^m with p prime; anything else is a usage error.
std::pair<std::uint64_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
  require(q >= 2, errc::parameter_violation, "q must be at least 2");
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    std::uint32_t m = 0;
    std::uint64_t t = q;
    while (t % p == 0) {
      t /= p;
      ++m;
    }
    require(t == 1, errc::parameter_violation, "q must be a prime power");
    return {p, m};
  }
  return {q, 1};
}

minorcert::FieldPtr field_from_q(std::uint64_t q) {
  const auto [p, m] = factor_prime_power(q);
  return minorcert::Field::make(p, m);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::uint64_t parse_u64(const std::string& tok) {
  require(!tok.empty(), errc::parameter_violation, "empty value in list");
  std::uint64_t v = 0;
  for (char c : tok) {
    require(c >= '0' && c <= '9', errc::parameter_violation,
            "not a nonnegative integer: " + tok);
    require(v <= (0xffffffffffffffffull - (c - '0')) / 10,
            errc::parameter_violation, "integer too large: " + tok);
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (const std::string& tok : split_csv(s)) out.push_back(parse_u64(tok));
  return out;
}

std::vector<minorcert::FieldElement> parse_elements(
    const minorcert::FieldPtr& f, const std::string& s) {
  std::vector<minorcert::FieldElement> out;
  for (std::uint64_t e : parse_u64_list(s)) {
    require(e < f->order(), errc::parameter_violation,
            "element encoding out of range: " + std::to_string(e));
    out.push_back(f->from_enc(e));
  }
  return out;
}

// Received word with "?" marking erased coordinates.
std::vector<std::optional<minorcert::FieldElement>> parse_received(
    const minorcert::FieldPtr& f, const std::string& s) {
  std::vector<std::optional<minorcert::FieldElement>> out;
  for (const std::string& tok : split_csv(s)) {
    if (tok == "?") {
      out.push_back(std::nullopt);
    } else {
      const std::uint64_t e = parse_u64(tok);
      require(e < f->order(), errc::parameter_violation,
              "element encoding out of range: " + tok);
      out.push_back(f->from_enc(e));
    }
  }
  return out;
}

json encs_json(const std::vector<minorcert::FieldElement>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.enc());
  return a;
}

json sizes_json(const std::vector<std::size_t>& v) {
  json a = json::array();
  for (std::size_t x : v) a.push_back(x);
  return a;
}

// Single-line JSON to stdout, or a pretty-printed document file.
void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << doc.dump() << "\n";
  } else {
    minorcert::write_descriptor(out_path, doc);
  }
}

struct ConstructArgs {
  std::string kind;
  std::uint64_t q = 0;
  std::size_t ell = 0;
  std::size_t h = 0;
  std::string ns;
  std::string ks;
  std::uint32_t degree = 0;  // 0 = use the guaranteed bound
  bool override_degree = false;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string out;
};

int run_construct(const ConstructArgs& a) {
  const minorcert::FieldPtr base = field_from_q(a.q);
  json doc;
  if (a.kind == "mr-lrc") {
    require(!a.ns.empty() && !a.ks.empty(), errc::parameter_violation,
            "--ns and --ks are required for mr-lrc");
    minorcert::LocalityProfile profile;
    profile.ell = a.ell;
    profile.h = a.h;
    for (std::uint64_t x : parse_u64_list(a.ns)) profile.ns.push_back(x);
    for (std::uint64_t x : parse_u64_list(a.ks)) profile.ks.push_back(x);
    const std::uint32_t d =
        a.degree != 0 ? a.degree : minorcert::field_degree_bound(profile);
    doc = minorcert::mrlrc_to_json(
        minorcert::build_theorem3(profile, base, d, a.override_degree));
  } else if (a.kind == "diag") {
    require(a.n != 0 && a.k != 0, errc::parameter_violation,
            "--n and --k are required for diag");
    doc = minorcert::conv_to_json(minorcert::build_diag(a.n, a.k, base));
  } else if (a.kind == "vdm2") {
    require(a.n != 0, errc::parameter_violation, "--n is required for vdm2");
    doc = minorcert::conv_to_json(minorcert::build_vdm2(a.n, base));
  } else {
    require(a.n != 0, errc::parameter_violation, "--n is required for vdm3");
    doc = minorcert::conv_to_json(minorcert::build_vdm3(a.n, base));
  }
  emit(doc, a.out);
  return 0;
}

// Verification loads leniently: document-level validity is enforced but the
// construction invariants are left to the sweep itself, so a damaged code is
// reported as failed (exit 1) instead of being rejected as unreadable.
int run_verify(const std::string& in, std::size_t failure_cap,
               unsigned threads, bool dual, const std::string& out) {
  const json doc = minorcert::read_descriptor(in);
  const std::string kind = minorcert::descriptor_kind(doc);
  if (kind == "mr-lrc") {
    require(!dual, errc::parameter_violation,
            "--dual applies only to conv codes");
    const minorcert::MrLrcCode code =
        minorcert::mrlrc_from_json(doc, /*strict=*/false);
    const minorcert::MrVerifyReport rep =
        minorcert::verify_mr(code, failure_cap, threads);
    emit(minorcert::mr_report_to_json(rep), out);
    return rep.passed ? 0 : 1;
  }
  if (kind == "conv") {
    const minorcert::ConvCode code = minorcert::conv_from_json(doc);
    const minorcert::VerificationReport rep =
        dual ? minorcert::dual_mdp_check(code, failure_cap, threads)
             : minorcert::is_mdp(code, failure_cap, threads);
    emit(minorcert::report_to_json(rep), out);
    return rep.passed ? 0 : 1;
  }
  raise(errc::schema_violation, "unknown descriptor kind: " + kind);
}

int run_encode(const std::string& in, const std::string& message,
               const std::string& out) {
  const minorcert::MrLrcCode code =
      minorcert::mrlrc_from_json(minorcert::read_descriptor(in));
  const auto msg = parse_elements(code.ext_field, message);
  const auto cw = minorcert::encode(code, msg);
  emit(json{{"codeword", encs_json(cw)}}, out);
  return 0;
}

int run_decode(const std::string& in, const std::string& received,
               const std::string& out) {
  const minorcert::MrLrcCode code =
      minorcert::mrlrc_from_json(minorcert::read_descriptor(in));
  const auto rec = parse_received(code.ext_field, received);
  const auto res = minorcert::decode_erasures(code, rec);
  if (!res) {
    emit(json{{"unrecoverable", true}}, out);
    return 1;
  }
  emit(json{{"message", encs_json(res->message)},
            {"codeword", encs_json(res->codeword)}},
       out);
  return 0;
}

int run_update(const std::string& in, const std::string& codeword,
               std::size_t group, std::size_t pos, std::uint64_t value,
               const std::string& out) {
  const minorcert::MrLrcCode code =
      minorcert::mrlrc_from_json(minorcert::read_descriptor(in));
  const auto cw = parse_elements(code.ext_field, codeword);
  require(value < code.ext_field->order(), errc::parameter_violation,
          "element encoding out of range: " + std::to_string(value));
  const minorcert::UpdateResult res = minorcert::update_symbol(
      code, cw, group, pos, code.ext_field->from_enc(value));
  emit(json{{"codeword", encs_json(res.codeword)},
            {"touched", sizes_json(res.touched)}},
       out);
  return 0;
}

int run_coldist(const std::string& in, std::size_t j, const std::string& out) {
  const minorcert::ConvCode code =
      minorcert::conv_from_json(minorcert::read_descriptor(in));
  const std::size_t d = minorcert::column_distance_bruteforce(code, j);
  emit(json{{"j", j}, {"column_distance", d}}, out);
  return 0;
}

// Smallest extension degree whose build passes the admissible-minor sweep,
// scanned over [d_lo, d_hi] with a per-degree report.
int run_search(const ConstructArgs& a, std::uint32_t d_lo, std::uint32_t d_hi,
               std::size_t failure_cap, unsigned threads) {
  require(!a.ns.empty() && !a.ks.empty(), errc::parameter_violation,
          "--ns and --ks are required");
  minorcert::LocalityProfile profile;
  profile.ell = a.ell;
  profile.h = a.h;
  for (std::uint64_t x : parse_u64_list(a.ns)) profile.ns.push_back(x);
  for (std::uint64_t x : parse_u64_list(a.ks)) profile.ks.push_back(x);
  profile.validate();
  const minorcert::FieldPtr base = field_from_q(a.q);
  const auto sets = minorcert::admissible_column_sets(profile);
  const auto res = minorcert::minimal_degree_search(
      [&](std::uint32_t d) {
        const minorcert::MrLrcCode code =
            minorcert::build_theorem3(profile, base, d, /*override=*/true);
        return minorcert::DegreeProbe{code.generator(), sets};
      },
      d_lo, d_hi, failure_cap, threads);
  json reports = json::array();
  for (const auto& [d, rep] : res.reports) {
    reports.push_back(
        json{{"degree", d}, {"report", minorcert::report_to_json(rep)}});
  }
  json doc{{"guaranteed_degree", minorcert::field_degree_bound(profile)},
           {"reports", std::move(reports)}};
  doc["first_passing"] =
      res.first_passing ? json(*res.first_passing) : json(nullptr);
  emit(doc, a.out);
  return res.first_passing ? 0 : 1;
}

int run_oracle_qh(std::size_t ell, std::size_t h, const std::string& out) {
  const std::uint64_t brute = minorcert::qh_max(ell, h);
  const std::uint64_t closed =
      static_cast<std::uint64_t>(ell - 1) * (h / 2) * ((h + 1) / 2);
  emit(json{{"ell", ell},
            {"h", h},
            {"brute_force", brute},
            {"closed_form", closed},
            {"match", brute == closed}},
       out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "minorcert: exact construction and exhaustive minor verification of "
      "maximally recoverable LRCs and maximum-distance-profile "
      "convolutional codes"};
  app.require_subcommand(1);
  // --h is a real option name here, so help is long-form only.
  app.set_help_flag("--help", "Print help and exit");
  const auto add_sub = [&app](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->set_help_flag("--help", "Print help and exit");
    return s;
  };

  ConstructArgs ca;
  std::string in;
  std::string out;
  std::size_t failure_cap = 16;
  unsigned threads = 1;
  bool dual = false;
  std::string message;
  std::string received;
  std::string codeword;
  std::size_t group = 0;
  std::size_t pos = 0;
  std::uint64_t value = 0;
  std::size_t jwin = 0;
  std::uint32_t d_lo = 1;
  std::uint32_t d_hi = 1;
  std::size_t qh_ell = 1;
  std::size_t qh_h = 0;

  CLI::App* construct =
      add_sub("construct", "Build a code and write its descriptor");
  construct
      ->add_option("--kind", ca.kind,
                   "Code family: mr-lrc, diag, vdm2 or vdm3")
      ->required()
      ->check(CLI::IsMember({"mr-lrc", "diag", "vdm2", "vdm3"}));
  construct->add_option("--q", ca.q, "Base field size (prime power)")
      ->required();
  construct->add_option("--ell", ca.ell, "Number of local groups (mr-lrc)");
  construct->add_option("--h", ca.h, "Number of global parities (mr-lrc)");
  construct->add_option("--ns", ca.ns, "Comma-separated group lengths n_i");
  construct->add_option("--ks", ca.ks, "Comma-separated group dimensions k_i");
  construct->add_option(
      "--degree", ca.degree,
      "Extension degree d (default: the guaranteed bound D)");
  construct->add_flag("--override-degree", ca.override_degree,
                      "Permit d below the guaranteed bound");
  construct->add_option("--n", ca.n, "Code length (conv families)");
  construct->add_option("--k", ca.k, "Code dimension (diag)");
  construct->add_option("--out", ca.out, "Output path (default: stdout)");

  CLI::App* verify = add_sub(
      "verify", "Exhaustively verify a descriptor's defining minors");
  verify->add_option("--in", in, "Descriptor path")->required();
  verify->add_option("--failure-cap", failure_cap,
                     "Stop after this many failures (0 = keep going)");
  verify->add_option("--threads", threads, "Worker thread count");
  verify->add_flag("--dual", dual,
                   "Sweep the parity-check layout of the dual code (conv)");
  verify->add_option("--out", out, "Output path (default: stdout)");

  CLI::App* encode =
      add_sub("encode", "Encode a message word (mr-lrc)");
  encode->add_option("--in", in, "Descriptor path")->required();
  encode
      ->add_option("--message", message,
                   "Comma-separated message element encodings (length K)")
      ->required();
  encode->add_option("--out", out, "Output path (default: stdout)");

  CLI::App* decode =
      add_sub("decode", "Decode a received word with erasures");
  decode->add_option("--in", in, "Descriptor path")->required();
  decode
      ->add_option("--received", received,
                   "Comma-separated received word, \"?\" marks an erasure")
      ->required();
  decode->add_option("--out", out, "Output path (default: stdout)");

  CLI::App* update = add_sub(
      "update", "Update one message symbol, touching few columns");
  update->add_option("--in", in, "Descriptor path")->required();
  update
      ->add_option("--codeword", codeword,
                   "Comma-separated codeword element encodings (length N)")
      ->required();
  update->add_option("--group", group, "Local group index")->required();
  update->add_option("--pos", pos, "Message index within the group")
      ->required();
  update->add_option("--value", value, "New element encoding")->required();
  update->add_option("--out", out, "Output path (default: stdout)");

  CLI::App* coldist = add_sub(
      "coldist", "Brute-force column distance of a conv code");
  coldist->add_option("--in", in, "Descriptor path")->required();
  coldist->add_option("--j", jwin, "Window index")->required();
  coldist->add_option("--out", out, "Output path (default: stdout)");

  CLI::App* search = add_sub(
      "search", "Scan extension degrees for the smallest passing build");
  search->add_option("--q", ca.q, "Base field size (prime power)")->required();
  search->add_option("--ell", ca.ell, "Number of local groups")->required();
  search->add_option("--h", ca.h, "Number of global parities")->required();
  search->add_option("--ns", ca.ns, "Comma-separated group lengths n_i")
      ->required();
  search->add_option("--ks", ca.ks, "Comma-separated group dimensions k_i")
      ->required();
  search->add_option("--d-lo", d_lo, "Lowest degree to try")->required();
  search->add_option("--d-hi", d_hi, "Highest degree to try")->required();
  search->add_option("--failure-cap", failure_cap,
                     "Stop a degree after this many failures (0 = keep going)");
  search->add_option("--threads", threads, "Worker thread count");
  search->add_option("--out", ca.out, "Output path (default: stdout)");

  CLI::App* oracleqh = add_sub(
      "oracle-qh", "Brute-force the worst-case overlap count Q_h");
  oracleqh->add_option("--ell", qh_ell, "Number of parts")->required();
  oracleqh->add_option("--h", qh_h, "Total weight")->required();
  oracleqh->add_option("--out", out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (construct->parsed()) return run_construct(ca);
    if (verify->parsed())
      return run_verify(in, failure_cap, threads, dual, out);
    if (encode->parsed()) return run_encode(in, message, out);
    if (decode->parsed()) return run_decode(in, received, out);
    if (update->parsed())
      return run_update(in, codeword, group, pos, value, out);
    if (coldist->parsed()) return run_coldist(in, jwin, out);
    if (search->parsed())
      return run_search(ca, d_lo, d_hi, failure_cap, threads);
    if (oracleqh->parsed()) return run_oracle_qh(qh_ell, qh_h, out);
  } catch (const minorcert::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
