#pragma once

// Subset enumeration helpers shared by the verification sweeps.  All
// enumerations are ascending lexicographic so that reports are reproducible.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace minorcert {

using ColSet = std::vector<std::size_t>;

// C(n, k) in unsigned 64-bit arithmetic; values at desk scale stay tiny but
// the incremental divide keeps intermediates exact anyway.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

// Advance a sorted k-subset of {0..n-1} to its lexicographic successor.
// Returns false when s was the last subset.
inline bool next_k_subset(ColSet& s, std::size_t n) {
  const std::size_t k = s.size();
  if (k == 0) return false;
  std::size_t i = k;
  while (i-- > 0) {
    if (s[i] < n - k + i) {
      ++s[i];
      for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline ColSet first_k_subset(std::size_t k) {
  ColSet s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  return s;
}

// Invoke fn on every sorted k-subset of {0..n-1} in ascending lex order.
// fn returning false stops the enumeration early.
template <typename Fn>
inline void for_each_k_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  if (k == 0) {
    fn(ColSet{});
    return;
  }
  ColSet s = first_k_subset(k);
  do {
    if (!fn(const_cast<const ColSet&>(s))) return;
  } while (next_k_subset(s, n));
}

inline std::vector<ColSet> k_subsets(std::size_t n, std::size_t k) {
  std::vector<ColSet> out;
  for_each_k_subset(n, k, [&](const ColSet& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

// Invoke fn on every composition of total into parts nonnegative summands.
template <typename Fn>
inline void for_each_weak_composition(std::uint64_t total, std::size_t parts,
                                      Fn&& fn) {
  require(parts >= 1, errc::parameter_violation,
          "composition needs at least one part");
  std::vector<std::uint64_t> xs(parts, 0);
  struct Rec {
    std::size_t parts;
    std::vector<std::uint64_t>& xs;
    Fn& fn;
    void go(std::size_t i, std::uint64_t rem) {
      if (i + 1 == parts) {
        xs[i] = rem;
        fn(const_cast<const std::vector<std::uint64_t>&>(xs));
        return;
      }
      for (std::uint64_t v = 0; v <= rem; ++v) {
        xs[i] = v;
        go(i + 1, rem - v);
      }
    }
  };
  Rec rec{parts, xs, fn};
  rec.go(0, total);
}

}  // namespace minorcert
