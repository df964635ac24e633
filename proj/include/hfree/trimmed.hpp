#pragma once

#include <cstdint>

#include "hfree/graph.hpp"
#include "hfree/stats.hpp"

namespace hfree {

struct SmallCounts {
  std::uint64_t edges = 0;
  std::uint64_t p2 = 0;  // paths with 2 edges (cherries)
  std::uint64_t c3 = 0;
  std::uint64_t c4 = 0;
  std::uint64_t c5 = 0;
  std::uint64_t open_pairs = 0;  // non-edges with no common neighbor
};

/// Exact counts from the codegree matrix. 5-cycles come from
/// (tr A^5 - 5 sum_i (d_i - 1) (A^3)_ii) / 10.
SmallCounts count_small_subgraphs(const EvolvingGraph& g);

struct TrimmedResult {
  std::uint32_t n = 0;
  double c = 0.0;
  double threshold = 0.0;   // c n^{-1/2}, capped at 1
  bool untrimmed = false;   // threshold >= 1: the whole M_n(K_3)
  double reference = 0.0;   // C(n,2) ln c
  std::size_t reps = 0;
  RunStats edges, p2, c3, c4, c5, open_pairs;
};

/// The triangle-free process stopped at c n^{-1/2}; only edges born before
/// the threshold are sampled.
TrimmedResult trimmed_stats(std::uint32_t n, double c, std::size_t reps, std::uint64_t seed,
                            unsigned workers = default_workers());

}  // namespace hfree
