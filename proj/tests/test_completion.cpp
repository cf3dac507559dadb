#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "minorcert/combinatorics.hpp"
#include "minorcert/completion.hpp"
#include "minorcert/gf.hpp"
#include "minorcert/linalg.hpp"

#include "test_util.hpp"

using namespace minorcert;
using testutil::laplace_det;
using testutil::raises;

namespace {

// Independent survival oracle: some row->column bijection hits only free
// cells (i.e. the patterned determinant has a surviving permutation term).
bool perm_survives(const SupportPattern& p, const ColSet& cols) {
  std::vector<std::size_t> perm(cols.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    bool ok = true;
    for (std::size_t r = 0; r < perm.size() && ok; ++r) {
      ok = p.free[r][cols[perm[r]]];
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("verify_nonvanishing matches independent recomputation") {
  auto f7 = Field::make(7, 1);
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m(f7, 3, 8);
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 8; ++c) {
        m.set(r, c, f7->from_enc(rng() % 7));
      }
    }
    const auto sets = k_subsets(8, 3);
    const VerificationReport rep = verify_nonvanishing(m, sets, 0);
    std::vector<ColSet> expect;
    for (const auto& s : sets) {
      if (laplace_det(m, {0, 1, 2}, s).is_zero()) expect.push_back(s);
    }
    REQUIRE(rep.total_sets == sets.size());
    REQUIRE(rep.checked_sets == sets.size());
    REQUIRE(rep.failures == expect);
    REQUIRE(rep.passed == expect.empty());
  }
}

TEST_CASE("verify_nonvanishing pass and fail basics") {
  auto f5 = Field::make(5, 1);
  Matrix id = identity_matrix(f5, 3);
  auto rep = verify_nonvanishing(id, {{0, 1, 2}});
  CHECK(rep.passed);
  CHECK(rep.total_sets == 1);
  CHECK(rep.checked_sets == 1);
  CHECK(rep.failures.empty());
  CHECK(rep.elapsed_ms >= 0.0);

  Matrix ones(f5, 2, 2,
              {f5->one(), f5->one(), f5->one(), f5->one()});
  auto bad = verify_nonvanishing(ones, {{0, 1}});
  CHECK(!bad.passed);
  REQUIRE(bad.failures.size() == 1);
  CHECK((bad.failures[0] == ColSet{0, 1}));
}

TEST_CASE("failure cap and block accounting") {
  auto f5 = Field::make(5, 1);
  Matrix z(f5, 1, 2500);  // all-zero row: every singleton minor vanishes
  std::vector<ColSet> sets;
  for (std::size_t c = 0; c < 2500; ++c) sets.push_back({c});

  auto capped = verify_nonvanishing(z, sets, 16);
  CHECK(!capped.passed);
  CHECK(capped.total_sets == 2500);
  CHECK(capped.checked_sets == 1024);  // whole blocks only
  CHECK(capped.failures.size() == 16);

  auto unlimited = verify_nonvanishing(z, sets, 0);
  CHECK(unlimited.checked_sets == 2500);
  CHECK(unlimited.failures.size() == 2500);

  auto mid = verify_nonvanishing(z, sets, 1100);
  CHECK(mid.checked_sets == 2048);
  CHECK(mid.failures.size() == 1100);

  // a passing run is never stopped by the cap
  Matrix ones(f5, 1, 2500);
  for (std::size_t c = 0; c < 2500; ++c) ones.set(0, c, f5->one());
  auto ok = verify_nonvanishing(ones, sets, 1);
  CHECK(ok.passed);
  CHECK(ok.checked_sets == 2500);
}

TEST_CASE("reports are identical across thread counts") {
  auto f7 = Field::make(7, 1);
  std::mt19937_64 rng(55);
  Matrix m(f7, 2, 40);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 40; ++c) {
      m.set(r, c, f7->from_enc(rng() % 7));
    }
  }
  const auto sets = k_subsets(40, 2);  // 780 sets, some vanish
  for (std::size_t cap : {std::size_t{0}, std::size_t{16}, std::size_t{5}}) {
    auto r1 = verify_nonvanishing(m, sets, cap, 1);
    auto r4 = verify_nonvanishing(m, sets, cap, 4);
    CAPTURE(cap);
    CHECK(r1.passed == r4.passed);
    CHECK(r1.total_sets == r4.total_sets);
    CHECK(r1.checked_sets == r4.checked_sets);
    CHECK(r1.failures == r4.failures);
  }
}

TEST_CASE("set validation happens before any work") {
  auto f5 = Field::make(5, 1);
  Matrix id = identity_matrix(f5, 2);
  CHECK(raises(errc::bad_set_size,
               [&] { verify_nonvanishing(id, {{0}}); }));
  CHECK(raises(errc::not_sorted,
               [&] { verify_nonvanishing(id, {{1, 0}}); }));
  CHECK(raises(errc::index_out_of_range,
               [&] { verify_nonvanishing(id, {{0, 2}}); }));
}

TEST_CASE("zero-pattern non-trivial sets by bipartite matching") {
  // fully free pattern: every K-subset survives
  SupportPattern all_free{2, 4,
                          std::vector<std::vector<bool>>(
                              2, std::vector<bool>(4, true)),
                          {}};
  CHECK(zero_pattern_nontrivial_sets(all_free) == k_subsets(4, 2));

  // an all-zero column can never be chosen
  SupportPattern col_dead = all_free;
  col_dead.free[0][1] = false;
  col_dead.free[1][1] = false;
  const auto sets = zero_pattern_nontrivial_sets(col_dead);
  const std::vector<ColSet> expect{{0, 2}, {0, 3}, {2, 3}};
  CHECK(sets == expect);
}

TEST_CASE("zero-pattern enumeration agrees with permutation expansion") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t K = 1 + rng() % 4;
    const std::size_t N = K + rng() % (7 - K);
    SupportPattern p{K, N,
                     std::vector<std::vector<bool>>(
                         K, std::vector<bool>(N, false)),
                     {}};
    for (std::size_t r = 0; r < K; ++r) {
      for (std::size_t c = 0; c < N; ++c) p.free[r][c] = (rng() % 3) != 0;
    }
    const auto got = zero_pattern_nontrivial_sets(p);
    std::vector<ColSet> expect;
    for (const auto& s : k_subsets(N, K)) {
      if (perm_survives(p, s)) expect.push_back(s);
    }
    REQUIRE(got == expect);  // contents and ascending order
  }

  // ties are refused by design
  using Cell = SupportPattern::Cell;
  SupportPattern tied{2, 4,
                      std::vector<std::vector<bool>>(
                          2, std::vector<bool>(4, true)),
                      {{Cell{0, 0}, Cell{1, 2}}}};
  CHECK(raises(errc::ties_unsupported,
               [&] { zero_pattern_nontrivial_sets(tied); }));

  SupportPattern ragged{2, 4, {std::vector<bool>(4, true)}, {}};
  CHECK(raises(errc::dimension_mismatch,
               [&] { zero_pattern_nontrivial_sets(ragged); }));
}

TEST_CASE("minimal degree search scans the whole range") {
  auto f5 = Field::make(5, 1);
  // always passing probe: 1x1 identity
  auto pass_builder = [&](std::uint32_t) {
    return DegreeProbe{identity_matrix(f5, 1), {{0}}};
  };
  auto res = minimal_degree_search(pass_builder, 2, 5);
  REQUIRE(res.first_passing.has_value());
  CHECK(*res.first_passing == 2);
  REQUIRE(res.reports.size() == 4);  // every degree probed
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(res.reports[i].first == 2 + i);
    CHECK(res.reports[i].second.passed);
  }

  // always failing probe: 1x1 zero
  auto fail_builder = [&](std::uint32_t) {
    return DegreeProbe{Matrix(f5, 1, 1), {{0}}};
  };
  auto none = minimal_degree_search(fail_builder, 1, 3);
  CHECK(!none.first_passing.has_value());
  CHECK(none.reports.size() == 3);

  // pass only from degree 4 onward
  auto step_builder = [&](std::uint32_t d) {
    Matrix m(f5, 1, 1);
    if (d >= 4) m.set(0, 0, f5->one());
    return DegreeProbe{m, {{0}}};
  };
  auto stepped = minimal_degree_search(step_builder, 1, 6);
  REQUIRE(stepped.first_passing.has_value());
  CHECK(*stepped.first_passing == 4);
  CHECK(stepped.reports.size() == 6);

  CHECK(raises(errc::parameter_violation,
               [&] { minimal_degree_search(pass_builder, 3, 2); }));
}
