#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

namespace hfree {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

using EdgeSet = std::vector<Edge>;  // sorted, duplicate-free

/// Row-major indexing of the C(n,2) edges of K_n: (0,1), (0,2), ..., (n-2,n-1).
/// The id order is the lexicographic order on (u, v).
class EdgeIndex {
 public:
  explicit EdgeIndex(std::uint32_t n);

  std::uint32_t vertex_count() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return total_; }

  EdgeId id(Edge e) const noexcept {
    return static_cast<EdgeId>(row_start_[e.u] + (e.v - e.u - 1));
  }
  Edge edge(EdgeId id) const;

 private:
  std::uint32_t n_;
  std::uint64_t total_;
  std::vector<std::uint64_t> row_start_;
};

inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }

/// Simple graph on n vertices that only grows (edges may also be removed for
/// oracle probing). Presence is a dense bit-matrix up to kDenseLimit vertices
/// and a hash set above; neighbor lists are kept for iteration either way.
class EvolvingGraph {
 public:
  static constexpr std::uint32_t kDenseLimit = 4096;

  explicit EvolvingGraph(std::uint32_t n = 0);

  std::uint32_t vertex_count() const noexcept { return n_; }
  std::uint64_t edge_count() const noexcept { return edge_count_; }

  bool has_edge(Vertex a, Vertex b) const noexcept {
    if (dense()) return (bits_[a * words_ + (b >> 6)] >> (b & 63)) & 1u;
    return sparse_.contains(key(a, b));
  }
  bool has_edge(Edge e) const noexcept { return has_edge(e.u, e.v); }

  /// Returns false (and does nothing) if the edge was already present.
  bool add_edge(Edge e);
  bool remove_edge(Edge e);

  std::span<const Vertex> neighbors(Vertex a) const noexcept { return adj_[a]; }
  std::uint32_t degree(Vertex a) const noexcept { return static_cast<std::uint32_t>(adj_[a].size()); }

  bool dense() const noexcept { return words_ != 0; }
  std::uint32_t words_per_row() const noexcept { return words_; }
  /// Bit row of `a`; only valid when dense().
  std::span<const std::uint64_t> row(Vertex a) const noexcept {
    return {bits_.data() + static_cast<std::size_t>(a) * words_, words_};
  }

  /// All edges in lexicographic order.
  EdgeSet edges() const;

 private:
  static std::uint64_t key(Vertex a, Vertex b) noexcept {
    return a < b ? (std::uint64_t{a} << 32 | b) : (std::uint64_t{b} << 32 | a);
  }

  std::uint32_t n_;
  std::uint32_t words_ = 0;
  std::uint64_t edge_count_ = 0;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> sparse_;
  std::vector<std::vector<Vertex>> adj_;
};

EvolvingGraph complete_graph(std::uint32_t n);
EvolvingGraph graph_from_edges(std::uint32_t n, std::span<const Edge> edges);

}  // namespace hfree
