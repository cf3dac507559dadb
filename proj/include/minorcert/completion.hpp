#pragma once

// Minor-sweep verification framework: run an exhaustive nonvanishing check
// over an enumerated family of full-size column sets, with a failure cap and
// optional multi-threaded evaluation; plus a bipartite-matching triviality
// test for pure zero-support patterns and a field-degree search harness.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace minorcert {

// Support pattern of a K x N matrix: free[i][j] == true marks a free entry,
// false marks a structural zero; ties force two cells to carry equal values.
struct SupportPattern {
  using Cell = std::pair<std::size_t, std::size_t>;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<bool>> free;
  std::vector<std::pair<Cell, Cell>> ties;
};

struct VerificationReport {
  bool passed = false;
  std::uint64_t total_sets = 0;
  std::uint64_t checked_sets = 0;
  std::vector<ColSet> failures;  // column sets whose minor vanished
  double elapsed_ms = 0.0;
};

// Evaluate minor(m, all rows, s) for each set in order; a set fails when the
// minor is zero.  Stops early only once failure_cap failures have been
// recorded (cap 0 = unlimited).  Work proceeds in fixed 1024-set blocks;
// within a block the sets are split contiguously across threads and the
// results are then scanned serially in input order, so the report is
// identical for every thread count.
inline VerificationReport verify_nonvanishing(const Matrix& m,
                                              const std::vector<ColSet>& sets,
                                              std::size_t failure_cap = 16,
                                              unsigned threads = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t K = m.rows();
  for (const auto& s : sets) {
    require(s.size() == K, errc::bad_set_size,
            "column set size does not equal the row count");
    check_sorted_in_range(s, m.cols(), "column");
  }
  if (threads == 0) threads = 1;

  VerificationReport rep;
  rep.total_sets = sets.size();
  const ColSet all_rows = first_k_subset(K);
  constexpr std::size_t kBlock = 1024;

  bool stop = false;
  for (std::size_t start = 0; start < sets.size() && !stop; start += kBlock) {
    const std::size_t cnt = std::min(kBlock, sets.size() - start);
    std::vector<std::uint8_t> vanished(cnt, 0);
    auto run_chunk = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        vanished[i] =
            minor_det(m, all_rows, sets[start + i]).is_zero() ? 1 : 0;
      }
    };
    if (threads == 1 || cnt < 2) {
      run_chunk(0, cnt);
    } else {
      const std::size_t nw = std::min<std::size_t>(threads, cnt);
      std::vector<std::thread> pool;
      pool.reserve(nw);
      for (std::size_t w = 0; w < nw; ++w) {
        const std::size_t lo = cnt * w / nw;
        const std::size_t hi = cnt * (w + 1) / nw;
        pool.emplace_back(run_chunk, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    rep.checked_sets += cnt;
    for (std::size_t i = 0; i < cnt; ++i) {
      if (!vanished[i]) continue;
      rep.failures.push_back(sets[start + i]);
      if (failure_cap != 0 && rep.failures.size() >= failure_cap) {
        stop = true;
        break;
      }
    }
  }
  rep.passed = rep.failures.empty() && rep.checked_sets == rep.total_sets;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

namespace detail {

// Augmenting-path step of Kuhn's bipartite matching: try to match row r into
// the chosen column subset.
inline bool kuhn_try(const SupportPattern& p, const ColSet& cols,
                     std::size_t r, std::vector<char>& visited,
                     std::vector<std::size_t>& match_of_col) {
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (visited[j] || !p.free[r][cols[j]]) continue;
    visited[j] = 1;
    if (match_of_col[j] == SIZE_MAX ||
        kuhn_try(p, cols, match_of_col[j], visited, match_of_col)) {
      match_of_col[j] = r;
      return true;
    }
  }
  return false;
}

inline bool has_perfect_matching(const SupportPattern& p, const ColSet& cols) {
  std::vector<std::size_t> match_of_col(cols.size(), SIZE_MAX);
  for (std::size_t r = 0; r < p.rows; ++r) {
    std::vector<char> visited(cols.size(), 0);
    if (!kuhn_try(p, cols, r, visited, match_of_col)) return false;
  }
  return true;
}

}  // namespace detail

// For a tie-free zero pattern, a full-size column-set minor is non-trivial
// (some permutation term survives generically) iff the free-support bipartite
// graph restricted to those columns has a perfect matching.  Emits the
// qualifying K-subsets in ascending lexicographic order.
inline std::vector<ColSet> zero_pattern_nontrivial_sets(
    const SupportPattern& p) {
  require(p.ties.empty(), errc::ties_unsupported,
          "tie constraints are not supported by the generic matching test");
  require(p.free.size() == p.rows, errc::dimension_mismatch,
          "support grid row count does not match");
  for (const auto& row : p.free) {
    require(row.size() == p.cols, errc::dimension_mismatch,
            "support grid column count does not match");
  }
  std::vector<ColSet> out;
  for_each_k_subset(p.cols, p.rows, [&](const ColSet& cs) {
    if (detail::has_perfect_matching(p, cs)) out.push_back(cs);
    return true;
  });
  return out;
}

// One probe of the degree-search harness: the filled matrix at extension
// degree d together with its non-trivial column sets.
struct DegreeProbe {
  Matrix matrix;
  std::vector<ColSet> sets;
};

struct DegreeSearchResult {
  std::optional<std::uint32_t> first_passing;
  std::vector<std::pair<std::uint32_t, VerificationReport>> reports;
};

// Run the sweep for every degree in [d_lo, d_hi] ascending; record the first
// passing degree but keep scanning so the whole landscape is reported.
inline DegreeSearchResult minimal_degree_search(
    const std::function<DegreeProbe(std::uint32_t)>& builder,
    std::uint32_t d_lo, std::uint32_t d_hi, std::size_t failure_cap = 16,
    unsigned threads = 1) {
  require(d_lo <= d_hi, errc::parameter_violation,
          "degree range is empty (d_lo > d_hi)");
  DegreeSearchResult out;
  for (std::uint32_t d = d_lo; d <= d_hi; ++d) {
    DegreeProbe probe = builder(d);
    VerificationReport rep =
        verify_nonvanishing(probe.matrix, probe.sets, failure_cap, threads);
    if (rep.passed && !out.first_passing) out.first_passing = d;
    out.reports.emplace_back(d, std::move(rep));
  }
  return out;
}

}  // namespace minorcert
