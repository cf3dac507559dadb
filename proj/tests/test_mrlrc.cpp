#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "minorcert/combinatorics.hpp"
#include "minorcert/gf.hpp"
#include "minorcert/linalg.hpp"
#include "minorcert/mrlrc.hpp"

#include "test_util.hpp"

using namespace minorcert;
using testutil::raises;

namespace {

MrLrcCode reference_code() {
  return build_theorem3(LocalityProfile{2, 2, {4, 4}, {2, 2}},
                        Field::make(7, 1), 2);
}

// Independent oracle: every K-subset of columns, filtered by the per-group
// picking caps (at most k_i from group i, at most h global columns).
std::vector<ColSet> filtered_sets(const LocalityProfile& p) {
  const std::size_t K = p.dimension();
  const std::size_t N = p.length();
  std::vector<ColSet> out;
  for (const auto& s : k_subsets(N, K)) {
    bool ok = true;
    std::size_t globals = 0;
    std::vector<std::size_t> per_group(p.ell, 0);
    for (std::size_t c : s) {
      if (c >= N - p.h) {
        ++globals;
        continue;
      }
      std::size_t acc = 0;
      for (std::size_t i = 0; i < p.ell; ++i) {
        if (c < acc + p.ns[i]) {
          ++per_group[i];
          break;
        }
        acc += p.ns[i];
      }
    }
    for (std::size_t i = 0; i < p.ell; ++i) ok = ok && per_group[i] <= p.ks[i];
    ok = ok && globals <= p.h;
    if (ok) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("locality profiles validate and measure") {
  LocalityProfile p{2, 2, {4, 4}, {2, 2}};
  p.validate();
  CHECK(p.dimension() == 4);
  CHECK(p.length() == 10);
  CHECK(p.group_range(0) == std::pair<std::size_t, std::size_t>{0, 4});
  CHECK(p.group_range(1) == std::pair<std::size_t, std::size_t>{4, 8});
  CHECK(p.row_range(1) == std::pair<std::size_t, std::size_t>{2, 4});

  CHECK(raises(errc::profile_violation, [] {
    LocalityProfile{0, 1, {}, {}}.validate();
  }));
  CHECK(raises(errc::profile_violation, [] {
    LocalityProfile{2, 1, {4}, {2, 2}}.validate();  // ragged
  }));
  CHECK(raises(errc::profile_violation, [] {
    LocalityProfile{1, 0, {2}, {3}}.validate();  // k > n
  }));
  CHECK(raises(errc::profile_violation, [] {
    LocalityProfile{1, 0, {2}, {0}}.validate();  // k = 0
  }));
}

TEST_CASE("field degree bound closed form") {
  CHECK(field_degree_bound(LocalityProfile{2, 0, {3, 3}, {1, 1}}) == 1);
  CHECK(field_degree_bound(LocalityProfile{2, 1, {4, 4}, {2, 2}}) == 1);
  CHECK(field_degree_bound(LocalityProfile{2, 2, {4, 4}, {2, 2}}) == 2);
  CHECK(field_degree_bound(LocalityProfile{3, 2, {4, 4, 4}, {2, 2, 2}}) == 3);
  CHECK(field_degree_bound(LocalityProfile{2, 4, {6, 6}, {4, 4}}) == 5);
  CHECK(field_degree_bound(LocalityProfile{6, 8, {10, 10, 10, 10, 10, 10},
                                           {8, 8, 8, 8, 8, 8}}) == 81);
}

TEST_CASE("admissible column sets match the filter oracle") {
  {
    LocalityProfile p{2, 2, {4, 4}, {2, 2}};
    const auto sets = admissible_column_sets(p);
    REQUIRE(sets.size() == 160);
    REQUIRE(sets == filtered_sets(p));
  }
  {
    LocalityProfile p{2, 1, {4, 3}, {2, 1}};
    const auto sets = admissible_column_sets(p);
    REQUIRE(sets.size() == 36);
    REQUIRE(sets == filtered_sets(p));
  }
  {
    LocalityProfile p{3, 2, {3, 3, 3}, {1, 2, 1}};
    const auto sets = admissible_column_sets(p);
    REQUIRE(sets == filtered_sets(p));
  }
  {  // no globals: exactly one set (the information positions per group)
    LocalityProfile p{1, 0, {4, }, {2}};
    const auto sets = admissible_column_sets(p);
    REQUIRE(sets == filtered_sets(p));
    REQUIRE(sets.size() == 6);  // C(4,2)
  }
}

TEST_CASE("reference construction has the documented shape") {
  MrLrcCode code = reference_code();
  CHECK(code.base_field->order() == 7);
  CHECK(code.ext_field->order() == 49);
  CHECK(element_order(code.alpha) == 48);
  CHECK(code.alpha == primitive_element(code.ext_field));

  // locals are the embedded 2x4 Cauchy blocks and are MDS
  for (const Matrix& g : code.locals) {
    CHECK(g.rows() == 2);
    CHECK(g.cols() == 4);
    CHECK(is_mds(g));
  }
  // P_0 top block = I, P_1 top block = Diag(1, alpha)
  CHECK(code.parities[0].at(0, 0) == code.ext_field->one());
  CHECK(code.parities[0].at(1, 1) == code.ext_field->one());
  CHECK(code.parities[0].at(0, 1).is_zero());
  CHECK(code.parities[0].at(1, 0).is_zero());
  CHECK(code.parities[1].at(0, 0) == code.ext_field->one());
  CHECK(code.parities[1].at(1, 1) == code.alpha);

  // generator assembles blocks in place
  Matrix g = code.generator();
  REQUIRE(g.rows() == 4);
  REQUIRE(g.cols() == 10);
  CHECK(g.at(0, 0) == code.locals[0].at(0, 0));
  CHECK(g.at(2, 4) == code.locals[1].at(0, 0));
  CHECK(g.at(0, 4).is_zero());  // off-diagonal block
  CHECK(g.at(2, 0).is_zero());
  CHECK(g.at(1, 9) == code.alpha.pow(0) * code.parities[0].at(1, 1));
  CHECK(g.at(3, 9) == code.alpha);

  MrVerifyReport rep = verify_mr(code);
  CHECK(rep.passed);
  CHECK(rep.global.total_sets == 160);
  CHECK(rep.global.checked_sets == 160);
  CHECK((rep.local_mds == std::vector<bool>{true, true}));
}

TEST_CASE("guaranteed-degree builds pass across the parameter grid") {
  const std::uint32_t expected_degree[2][2] = {{1, 2}, {1, 3}};
  const std::size_t expected_sets[2][2] = {{84, 160}, {648, 1476}};
  for (std::size_t li = 0; li < 2; ++li) {
    for (std::size_t hi = 0; hi < 2; ++hi) {
      const std::size_t ell = 2 + li;
      const std::size_t h = 1 + hi;
      LocalityProfile p{ell, h, std::vector<std::size_t>(ell, 4),
                        std::vector<std::size_t>(ell, 2)};
      const std::uint32_t d = field_degree_bound(p);
      CAPTURE(ell, h);
      REQUIRE(d == expected_degree[li][hi]);
      MrLrcCode code = build_theorem3(p, Field::make(7, 1), d);
      MrVerifyReport rep = verify_mr(code);
      REQUIRE(rep.global.total_sets == expected_sets[li][hi]);
      REQUIRE(rep.passed);
    }
  }
}

TEST_CASE("below-bound degrees fail with a small failure landscape") {
  LocalityProfile p{2, 2, {4, 4}, {2, 2}};
  auto gf7 = Field::make(7, 1);
  CHECK(raises(errc::degree_too_small, [&] { build_theorem3(p, gf7, 1); }));
  MrLrcCode low = build_theorem3(p, gf7, 1, /*override=*/true);
  CHECK(low.ext_field->order() == 7);
  MrVerifyReport rep = verify_mr(low, 0);
  CHECK(!rep.passed);
  CHECK(rep.local_mds[0]);
  CHECK(rep.local_mds[1]);
  CHECK(rep.global.failures.size() == 2);  // exactly two vanishing minors
}

TEST_CASE("builder parameter validation") {
  auto gf7 = Field::make(7, 1);
  CHECK(raises(errc::profile_violation, [&] {
    build_theorem3(LocalityProfile{2, 3, {4, 4}, {2, 2}}, gf7, 4);
  }));  // h > min k_i
  CHECK(raises(errc::field_too_small, [&] {
    build_theorem3(LocalityProfile{2, 2, {4, 4}, {2, 2}},
                   Field::make(5, 1), 2);
  }));  // q < k_i + n_i
  // a non-prime base field is fine when big enough
  MrLrcCode code = build_theorem3(LocalityProfile{2, 2, {4, 4}, {2, 2}},
                                  Field::make(3, 2), 2);
  CHECK(code.ext_field->order() == 81);  // (3^2)^2
  CHECK(verify_mr(code).passed);
}

TEST_CASE("damaged parity data is caught by the sweep") {
  MrLrcCode code = reference_code();
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      code.parities[1].set(r, c, code.ext_field->zero());
    }
  }
  MrVerifyReport rep = verify_mr(code, 0);
  CHECK(!rep.passed);
  CHECK(rep.global.failures.size() == 70);
  CHECK(rep.local_mds[0]);
  CHECK(rep.local_mds[1]);

  // a damaged local block flips its MDS verdict
  MrLrcCode code2 = reference_code();
  for (std::size_t c = 0; c < 4; ++c) {
    code2.locals[0].set(1, c, code2.locals[0].at(0, c));
  }
  MrVerifyReport rep2 = verify_mr(code2, 0);
  CHECK(!rep2.passed);
  CHECK(!rep2.local_mds[0]);
  CHECK(rep2.local_mds[1]);
}

TEST_CASE("encoding is the generator-row combination") {
  MrLrcCode code = reference_code();
  const auto f = code.ext_field;
  Matrix g = code.generator();

  // zero message -> zero codeword
  std::vector<FieldElement> zero(4, f->zero());
  for (const auto& x : encode(code, zero)) CHECK(x.is_zero());

  // unit vectors -> generator rows
  for (std::size_t r = 0; r < 4; ++r) {
    std::vector<FieldElement> e(4, f->zero());
    e[r] = f->one();
    const auto cw = encode(code, e);
    for (std::size_t c = 0; c < 10; ++c) REQUIRE(cw[c] == g.at(r, c));
  }

  // random messages agree with explicit matrix multiplication
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FieldElement> msg;
    for (int i = 0; i < 4; ++i) msg.push_back(f->from_enc(rng() % 49));
    const auto cw = encode(code, msg);
    Matrix row(f, 1, 4, msg);
    Matrix expect = matmul(row, g);
    for (std::size_t c = 0; c < 10; ++c) REQUIRE(cw[c] == expect.at(0, c));
  }

  CHECK(raises(errc::length_mismatch, [&] {
    encode(code, std::vector<FieldElement>(3, f->zero()));
  }));
  CHECK(raises(errc::field_mismatch, [&] {
    encode(code, std::vector<FieldElement>(4, code.base_field->one()));
  }));
}

TEST_CASE("erasure decoding recovers whenever rank allows") {
  MrLrcCode code = reference_code();
  const auto f = code.ext_field;
  std::vector<FieldElement> msg{f->from_enc(1), f->from_enc(2),
                                f->from_enc(3), f->from_enc(4)};
  const auto cw = encode(code, msg);

  auto received_with = [&](const std::vector<std::size_t>& erased) {
    std::vector<std::optional<FieldElement>> rec(cw.begin(), cw.end());
    for (std::size_t e : erased) rec[e] = std::nullopt;
    return rec;
  };

  // no erasures
  {
    auto res = decode_erasures(code, received_with({}));
    REQUIRE(res.has_value());
    CHECK(res->message == msg);
    CHECK(res->codeword == cw);
  }

  // every admissible puncturing (2 erasures per group) plus <= 2 extra
  // erasures among the survivors decodes to the exact message
  const auto pairs0 = k_subsets(4, 2);
  std::size_t patterns = 0;
  for (const auto& p0 : pairs0) {
    for (const auto& p1 : pairs0) {
      std::vector<std::size_t> base;
      for (std::size_t c : p0) base.push_back(c);
      for (std::size_t c : p1) base.push_back(c + 4);
      std::vector<std::size_t> survivors;
      for (std::size_t c = 0; c < 10; ++c) {
        if (std::find(base.begin(), base.end(), c) == base.end()) {
          survivors.push_back(c);
        }
      }
      std::vector<std::vector<std::size_t>> extras{{}};
      for (std::size_t i = 0; i < survivors.size(); ++i) {
        extras.push_back({survivors[i]});
        for (std::size_t j = i + 1; j < survivors.size(); ++j) {
          extras.push_back({survivors[i], survivors[j]});
        }
      }
      for (const auto& extra : extras) {
        auto erased = base;
        for (std::size_t e : extra) erased.push_back(e);
        auto res = decode_erasures(code, received_with(erased));
        ++patterns;
        REQUIRE(res.has_value());
        REQUIRE(res->message == msg);
        REQUIRE(res->codeword == cw);
      }
    }
  }
  CHECK(patterns == 36 * 22);

  // a whole group plus all globals is unrecoverable
  CHECK(!decode_erasures(code, received_with({0, 1, 2, 3, 8, 9})).has_value());
  CHECK(!decode_erasures(code, received_with({4, 5, 6, 7, 8, 9})).has_value());

  // corruption (not erasure) is detected
  {
    auto rec = received_with({});
    rec[0] = *rec[0] + f->one();
    CHECK(raises(errc::inconsistent_codeword,
                 [&] { decode_erasures(code, rec); }));
  }
  CHECK(raises(errc::length_mismatch, [&] {
    decode_erasures(code,
                    std::vector<std::optional<FieldElement>>(9, f->zero()));
  }));
}

TEST_CASE("single-symbol updates touch only the documented columns") {
  MrLrcCode code = reference_code();
  const auto f = code.ext_field;
  std::vector<FieldElement> msg{f->from_enc(5), f->from_enc(11),
                                f->from_enc(20), f->from_enc(33)};
  const auto cw = encode(code, msg);

  for (std::size_t g = 0; g < 2; ++g) {
    for (std::size_t t = 0; t < 2; ++t) {
      for (std::uint64_t val : {std::uint64_t{0}, std::uint64_t{17}}) {
        auto res = update_symbol(code, cw, g, t, f->from_enc(val));
        // equals a full re-encode of the modified message
        auto msg2 = msg;
        msg2[g * 2 + t] = f->from_enc(val);
        REQUIRE(res.codeword == encode(code, msg2));
        // touched = group columns plus exactly one global (t < h here)
        ColSet expect;
        for (std::size_t c = g * 4; c < g * 4 + 4; ++c) expect.push_back(c);
        expect.push_back(8 + t);
        REQUIRE(res.touched == expect);
        // and columns outside touched are bitwise unchanged
        for (std::size_t c = 0; c < 10; ++c) {
          if (std::find(expect.begin(), expect.end(), c) == expect.end()) {
            REQUIRE(res.codeword[c] == cw[c]);
          }
        }
      }
    }
  }

  // idempotent update: rewriting the current value changes nothing
  auto same = update_symbol(code, cw, 1, 1, msg[3]);
  CHECK(same.codeword == cw);

  CHECK(raises(errc::index_out_of_range,
               [&] { update_symbol(code, cw, 2, 0, f->one()); }));
  CHECK(raises(errc::index_out_of_range,
               [&] { update_symbol(code, cw, 0, 2, f->one()); }));

  // with h = 1 and k_i = 2, position t = 1 >= h touches no global
  MrLrcCode small = build_theorem3(LocalityProfile{2, 1, {4, 4}, {2, 2}},
                                   Field::make(7, 1), 1);
  const auto sf = small.ext_field;
  std::vector<FieldElement> smsg{sf->from_enc(1), sf->from_enc(2),
                                 sf->from_enc(3), sf->from_enc(4)};
  const auto scw = encode(small, smsg);
  auto r0 = update_symbol(small, scw, 0, 0, sf->from_enc(6));
  CHECK((r0.touched == ColSet{0, 1, 2, 3, 8}));
  auto r1 = update_symbol(small, scw, 0, 1, sf->from_enc(6));
  CHECK((r1.touched == ColSet{0, 1, 2, 3}));
}

TEST_CASE("Q_h brute force equals the closed form") {
  CHECK(qh({1, 1}) == 1);
  CHECK(qh({0, 3, 1}) == 3);
  CHECK(qh({2, 0, 2}) == 8);  // distance-2 pair weighted by 2
  for (std::size_t ell = 1; ell <= 6; ++ell) {
    for (std::size_t h = 0; h <= 8; ++h) {
      CAPTURE(ell, h);
      REQUIRE(qh_max(ell, h) ==
              static_cast<std::uint64_t>(ell - 1) * (h / 2) * ((h + 1) / 2));
    }
    REQUIRE(qh_max(ell, 1) == 0);  // Q_1 = 0: single global always works
  }
}
