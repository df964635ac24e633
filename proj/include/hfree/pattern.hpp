#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hfree {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& r);

/// The fixed forbidden graph H. Vertices are 0..vertex_count()-1; edges are
/// stored normalized (first < second) and sorted.
class PatternGraph {
 public:
  using VertexPair = std::pair<int, int>;

  static constexpr int kMaxVertices = 32;

  PatternGraph() = default;
  PatternGraph(int vertex_count, std::vector<VertexPair> edges, std::string name = {});

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<VertexPair>& edges() const noexcept { return edges_; }
  const std::string& name() const noexcept { return name_; }

  bool adjacent(int a, int b) const noexcept { return (adjacency_[a] >> b) & 1u; }
  std::uint32_t neighbor_mask(int a) const noexcept { return adjacency_[a]; }
  int degree(int a) const noexcept;

  /// v_H >= 3 and e_H >= 3, the standing assumption for strict 2-balance.
  bool admissible() const noexcept { return vertex_count_ >= 3 && edge_count() >= 3; }

  /// Number of edges of the subgraph induced on the vertex set `mask`.
  int induced_edge_count(std::uint32_t mask) const noexcept;
  /// Induced subgraph on `mask`, relabeled to 0..popcount-1 in vertex order.
  PatternGraph induced(std::uint32_t mask) const;

 private:
  int vertex_count_ = 0;
  std::vector<VertexPair> edges_;
  std::vector<std::uint32_t> adjacency_;
  std::string name_;
};

/// Catalog families: "C" (cycle, r>=3), "K" (complete, r>=1), "Kab" (complete
/// bipartite, a,b>=1), "Q" (hypercube, d>=1), "star" (K_{1,s}, s>=1), "paw".
PatternGraph make_catalog(std::string_view family, std::span<const int> params);

/// Parses names such as "K3", "K_4", "C5", "Q3", "K_{3,3}", "K_{1,4}",
/// "star4", "paw". Throws ParameterError for anything else.
PatternGraph parse_pattern_name(std::string_view spec);

/// Edge-list file: first line v_H, then one "u v" pair per line, 0-indexed.
PatternGraph read_pattern_file(const std::string& path);
PatternGraph parse_pattern_text(std::string_view text, std::string name = "file");

/// Catalog name if it parses as one, otherwise an edge-list file path.
PatternGraph load_pattern(const std::string& spec);

bool is_regular(const PatternGraph& h);

/// (e_F - 1) / (v_F - 2). Throws DomainError when v_F < 3.
Rational two_density(const PatternGraph& f);

/// A subgraph F of H in H's own labels.
struct SubgraphWitness {
  std::vector<int> vertices;
  std::vector<PatternGraph::VertexPair> edges;
};

struct BalanceReport {
  bool is_regular = false;
  bool is_strictly_two_balanced = false;
  std::optional<Rational> two_density;
  /// min over proper F, v_F >= 3, of (v_F - 2) - (e_F - 1)(v_H - 2)/(e_H - 1).
  std::optional<Rational> epsilon_gap;
  /// A densest proper subgraph when strictness fails.
  std::optional<SubgraphWitness> witness;
  std::string reason;
};

BalanceReport is_strictly_two_balanced(const PatternGraph& h);

/// Throws DomainError unless h is strictly 2-balanced.
Rational epsilon_gap(const PatternGraph& h);

inline constexpr int kMaxAutomorphismVertices = 10;

/// |Aut(H)|. Throws CapabilityError for v_H > kMaxAutomorphismVertices.
std::uint64_t automorphism_count(const PatternGraph& h);

/// All automorphisms as vertex permutations (perm[i] = image of i), found by
/// adjacency-pruned backtracking. Throws CapabilityError once more than
/// `limit` automorphisms have been found.
std::vector<std::vector<int>> automorphisms(const PatternGraph& h,
                                            std::size_t limit = static_cast<std::size_t>(-1));

}  // namespace hfree
