#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "minorcert/descriptor.hpp"

#include "test_util.hpp"

#ifndef MINORCERT_CLI_PATH
#error "MINORCERT_CLI_PATH must point at the built CLI binary"
#endif

namespace {

using minorcert::json;

struct RunResult {
  int status = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(MINORCERT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    res.output.append(buf, got);
  }
  const int rc = pclose(pipe);
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

json parse_line(const RunResult& r) { return json::parse(r.output); }

const std::string kRef = "/tmp/minorcert_cli_ref.json";
const std::string kDiag = "/tmp/minorcert_cli_diag.json";
const std::string kV24 = "/tmp/minorcert_cli_v24.json";
const std::string kV37 = "/tmp/minorcert_cli_v37.json";
const std::string kTampered = "/tmp/minorcert_cli_tampered.json";

}  // namespace

TEST_CASE("construct and verify the reference code") {
  RunResult c = run("construct --kind mr-lrc --q 7 --ell 2 --h 2 --ns 4,4 "
                    "--ks 2,2 --out " + kRef);
  REQUIRE(c.status == 0);

  RunResult v = run("verify --in " + kRef);
  REQUIRE(v.status == 0);
  json rep = parse_line(v);
  CHECK(rep["passed"] == true);
  CHECK(rep["total_sets"] == 160);
  CHECK(rep["checked_sets"] == 160);
  CHECK(rep["local_mds"] == json::array({true, true}));
  CHECK(rep["failures"] == json::array());

  // reports are deterministic apart from the elapsed-time field
  RunResult v2 = run("verify --in " + kRef + " --threads 3");
  REQUIRE(v2.status == 0);
  json rep2 = parse_line(v2);
  rep["elapsed_ms"] = 0;
  rep2["elapsed_ms"] = 0;
  CHECK(rep == rep2);
}

TEST_CASE("encode, decode and update round trip") {
  RunResult e = run("encode --in " + kRef + " --message 1,2,3,4");
  REQUIRE(e.status == 0);
  const json want_cw = json::array({1, 1, 2, 0, 5, 4, 2, 4, 4, 31});
  CHECK(parse_line(e)["codeword"] == want_cw);

  RunResult d = run("decode --in " + kRef + " --received '?,?,2,0,5,4,?,?,4,31'");
  REQUIRE(d.status == 0);
  json dec = parse_line(d);
  CHECK(dec["message"] == json::array({1, 2, 3, 4}));
  CHECK(dec["codeword"] == want_cw);

  RunResult bad = run("decode --in " + kRef +
                      " --received '?,?,?,?,?,27,36,?,?,?'");
  CHECK(bad.status == 1);
  CHECK(parse_line(bad) == json{{"unrecoverable", true}});

  RunResult u = run("update --in " + kRef +
                    " --codeword 1,1,2,0,5,4,2,4,4,31 --group 1 --pos 0 "
                    "--value 5");
  REQUIRE(u.status == 0);
  json up = parse_line(u);
  CHECK(up["codeword"] == json::array({1, 1, 2, 0, 4, 1, 5, 5, 6, 31}));
  CHECK(up["touched"] == json::array({4, 5, 6, 7, 8}));

  // the updated word decodes to the updated message
  RunResult d2 = run("decode --in " + kRef + " --received 1,1,2,0,4,1,5,5,6,31");
  REQUIRE(d2.status == 0);
  CHECK(parse_line(d2)["message"] == json::array({1, 2, 5, 4}));
}

TEST_CASE("convolutional construct, verify, dual and coldist") {
  REQUIRE(run("construct --kind diag --q 11 --n 5 --k 3 --out " + kDiag)
              .status == 0);
  {
    RunResult v = run("verify --in " + kDiag);
    REQUIRE(v.status == 0);
    json rep = parse_line(v);
    CHECK(rep["passed"] == true);
    CHECK(rep["total_sets"] == 155);
  }
  {
    RunResult v = run("verify --in " + kDiag + " --dual");
    REQUIRE(v.status == 0);
    CHECK(parse_line(v)["total_sets"] == 155);
  }

  REQUIRE(run("construct --kind vdm2 --q 4 --n 4 --out " + kV24).status == 0);
  {
    RunResult v = run("verify --in " + kV24);
    REQUIRE(v.status == 1);
    json rep = parse_line(v);
    CHECK(rep["passed"] == false);
    CHECK(rep["total_sets"] == 554);
    CHECK(rep["failures"].size() == 16);  // default failure cap
  }
  {
    RunResult c0 = run("coldist --in " + kV24 + " --j 0");
    REQUIRE(c0.status == 0);
    CHECK(parse_line(c0)["column_distance"] == 3);
    RunResult c1 = run("coldist --in " + kV24 + " --j 1");
    REQUIRE(c1.status == 0);
    CHECK(parse_line(c1)["column_distance"] == 5);
  }

  REQUIRE(run("construct --kind vdm3 --q 7 --n 7 --out " + kV37).status == 0);
  {
    RunResult v = run("verify --in " + kV37 + " --threads 2");
    REQUIRE(v.status == 0);
    CHECK(parse_line(v)["total_sets"] == 2114);
    RunResult vd = run("verify --in " + kV37 + " --dual --threads 2");
    REQUIRE(vd.status == 0);
    CHECK(parse_line(vd)["total_sets"] == 2114);
  }
}

TEST_CASE("degree search reports every degree in range") {
  RunResult s = run("search --q 7 --ell 2 --h 2 --ns 4,4 --ks 2,2 "
                    "--d-lo 1 --d-hi 3");
  REQUIRE(s.status == 0);
  json doc = parse_line(s);
  CHECK(doc["first_passing"] == 2);
  CHECK(doc["guaranteed_degree"] == 2);
  REQUIRE(doc["reports"].size() == 3);
  CHECK(doc["reports"][0]["degree"] == 1);
  CHECK(doc["reports"][0]["report"]["failures"] ==
        json::array({json::array({0, 6, 8, 9}), json::array({3, 4, 8, 9})}));
  CHECK(doc["reports"][1]["report"]["passed"] == true);
  CHECK(doc["reports"][2]["report"]["passed"] == true);

  // an unreachable range exits 1 with a null first_passing
  RunResult none = run("search --q 7 --ell 2 --h 2 --ns 4,4 --ks 2,2 "
                       "--d-lo 1 --d-hi 1");
  REQUIRE(none.status == 1);
  CHECK(parse_line(none)["first_passing"].is_null());
}

TEST_CASE("Q_h oracle agrees with the closed form") {
  RunResult r = run("oracle-qh --ell 4 --h 5");
  REQUIRE(r.status == 0);
  json doc = parse_line(r);
  CHECK(doc["brute_force"] == 18);
  CHECK(doc["closed_form"] == 18);
  CHECK(doc["match"] == true);
}

TEST_CASE("below-bound construction needs the override flag") {
  RunResult refuse = run("construct --kind mr-lrc --q 7 --ell 2 --h 2 "
                         "--ns 4,4 --ks 2,2 --degree 1");
  CHECK(refuse.status == 2);
  CHECK(refuse.output.find("error:") != std::string::npos);

  RunResult low = run("construct --kind mr-lrc --q 7 --ell 2 --h 2 "
                      "--ns 4,4 --ks 2,2 --degree 1 --override-degree");
  REQUIRE(low.status == 0);
  json doc = parse_line(low);
  CHECK(doc["ext_field"]["m"] == 1);  // built over GF(7) itself
}

TEST_CASE("usage and parameter errors exit 2 with one error line") {
  CHECK(run("").status == 2);
  CHECK(run("no-such-subcommand").status == 2);
  CHECK(run("construct --kind vdm2 --q 6 --n 4").status == 2);  // q not a prime power
  CHECK(run("construct --kind mr-lrc --q 5 --ell 2 --h 2 --ns 4,4 --ks 2,2")
            .status == 2);  // field too small
  CHECK(run("construct --kind vdm2 --q 5 --n 3").status == 2);
  CHECK(run("verify --in /tmp/minorcert_no_such_descriptor.json").status == 2);
  CHECK(run("verify --in " + kRef + " --dual").status == 2);
  CHECK(run("decode --in " + kRef + " --received '?,?'").status == 2);
  CHECK(run("encode --in " + kRef + " --message 1,2,3,4,5").status == 2);
  CHECK(run("encode --in " + kRef + " --message 1,2,3,99").status == 2);

  RunResult err = run("construct --kind vdm2 --q 6 --n 4");
  CHECK(err.output.rfind("error:", 0) == 0);
}

TEST_CASE("a tampered descriptor is swept honestly, not rejected") {
  json doc = minorcert::read_descriptor(kRef);
  doc["parities"][1]["entries"] = json::array({0, 0, 0, 0});
  minorcert::write_descriptor(kTampered, doc);

  RunResult v = run("verify --in " + kTampered + " --failure-cap 0");
  REQUIRE(v.status == 1);
  json rep = parse_line(v);
  CHECK(rep["passed"] == false);
  CHECK(rep["local_mds"] == json::array({true, true}));
  CHECK(rep["failures"].size() == 70);

  // the strict loader used by encode refuses the same document
  RunResult e = run("encode --in " + kTampered + " --message 1,2,3,4");
  CHECK(e.status == 2);
  CHECK(e.output.rfind("error:", 0) == 0);
}
