#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hfree/copy_search.hpp"

namespace hfree {

/// Undirected graph on up to a few thousand vertices as bit rows.
class BitGraph {
 public:
  explicit BitGraph(std::size_t n = 0);

  std::size_t size() const noexcept { return n_; }
  void add_edge(std::size_t a, std::size_t b);
  bool adjacent(std::size_t a, std::size_t b) const noexcept {
    return (rows_[a * words_ + b / 64] >> (b % 64)) & 1u;
  }
  std::size_t degree(std::size_t a) const noexcept;
  const std::uint64_t* row(std::size_t a) const noexcept { return rows_.data() + a * words_; }
  std::size_t words() const noexcept { return words_; }

 private:
  std::size_t n_, words_;
  std::vector<std::uint64_t> rows_;
};

/// Exact maximum independent set size (branch and bound with a greedy
/// coloring bound on the complement). Returns nullopt past node_cap.
std::optional<std::size_t> max_independent_set(const BitGraph& g, std::uint64_t node_cap = 50'000'000);

/// Exact maximum induced matching size: an independent set of edges in the
/// graph where two edges conflict if they touch or are joined by an edge.
std::optional<std::size_t> max_induced_matching(const BitGraph& g, std::uint64_t node_cap = 50'000'000);

/// The conflict graph over Lambda(g,rho): copies adjacent iff they share an edge.
BitGraph conflict_graph(const ExtensionSet& lam);

struct ConflictStats {
  std::size_t lambda_size = 0;
  std::optional<std::size_t> w1;  // max independent set
  std::optional<std::size_t> w2;  // max induced matching
  std::size_t w3 = 0;             // max degree
  bool exact = false;             // w1 and w2 computed

  /// |Lambda| <= W1 + 2 W2 W3 (true when not exact; only W3 known).
  bool bound_holds() const noexcept {
    return !exact || lambda_size <= *w1 + 2 * *w2 * w3;
  }
};

inline constexpr std::size_t kConflictExactLimit = 60;

/// Throws CapabilityError when |Lambda| exceeds exact_limit unless
/// w3_only is set, in which case only W3 is filled.
ConflictStats conflict_graph_stats(const ExtensionSet& lam, std::size_t exact_limit = kConflictExactLimit,
                                   bool w3_only = false);

}  // namespace hfree
