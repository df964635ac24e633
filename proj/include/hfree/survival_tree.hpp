#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hfree/birthtimes.hpp"
#include "hfree/copy_search.hpp"
#include "hfree/error.hpp"
#include "hfree/graph.hpp"
#include "hfree/params.hpp"
#include "hfree/pattern.hpp"

namespace hfree {

/// Memoized Lambda(g, rho) over a fixed host G(n, rho).
class LambdaCache {
 public:
  LambdaCache(const EvolvingGraph& host, const PatternGraph& h);

  const ExtensionSet& operator()(Edge g);
  const EvolvingGraph& host() const noexcept { return *host_; }
  const CopySearch& search() const noexcept { return search_; }

 private:
  const EvolvingGraph* host_;
  CopySearch search_;
  std::unordered_map<std::uint64_t, ExtensionSet> memo_;
};

enum class NodeKind : std::uint8_t { kEdge, kCopy };

struct TreeNode {
  NodeKind kind = NodeKind::kEdge;
  int depth = 0;
  int parent = -1;
  Edge edge;     // kEdge
  EdgeSet copy;  // kCopy
  std::vector<int> children;
};

/// T_{f,d}: edge nodes at even depth, copy nodes at odd depth, height 2d.
/// Nodes are stored in BFS order, so every child index exceeds its parent's.
/// Equal labels at different positions are distinct nodes.
class SurvivalTree {
 public:
  SurvivalTree(Edge root, int half_height);

  Edge root_edge() const noexcept { return nodes_.front().edge; }
  int half_height() const noexcept { return half_height_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const TreeNode& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }

  /// Positional half-height of an edge node: d - depth/2.
  int edge_height(int i) const { return half_height_ - node(i).depth / 2; }
  /// Edge nodes above the last level, where the recursion continues.
  bool interior(int i) const { return node(i).depth < 2 * half_height_; }

  int add_node(TreeNode n);

 private:
  int half_height_;
  std::vector<TreeNode> nodes_;
};

struct TreeCaps {
  std::size_t max_nodes = 1'000'000;
};

class PartialTreeError : public CapabilityError {
 public:
  PartialTreeError(const std::string& what, SurvivalTree partial)
      : CapabilityError(what), partial_(std::move(partial)) {}
  const SurvivalTree& partial() const noexcept { return partial_; }

 private:
  SurvivalTree partial_;
};

/// Builds T_{f,d}: the root's copy-children are all of Lambda(f, rho); an
/// edge node g_j below the root gets every G in Lambda(g_j, rho) that does
/// not contain its grandparent edge g_{j-1}.
SurvivalTree build_tree(Edge f, int d, LambdaCache& lambda, const TreeCaps& caps = {});
SurvivalTree build_tree(Edge f, int d, const EvolvingGraph& host, const PatternGraph& h,
                        const TreeCaps& caps = {});

struct GoodTreeAudit {
  bool p1 = true;  // no copy label contains the root edge
  bool p2 = true;  // copy labels pairwise edge-disjoint
  bool p3 = true;  // max deficit <= threshold
  std::vector<int> p1_violations;                 // copy node indices
  std::optional<std::pair<int, int>> p2_witness;  // first overlapping pair of copy nodes
  std::size_t p2_overlapping_pairs = 0;           // pairs found before stopping at 1000
  /// Per interior edge node: |Lambda(g,rho)| - |children|.
  std::int64_t max_deficit = 0;
  std::optional<int> max_deficit_node;
  std::map<std::int64_t, std::size_t> deficit_histogram;
  std::int64_t deficit_threshold = 0;

  bool good() const noexcept { return p1 && p2 && p3; }
};

/// Audits P1, P2 and P3. The P3 slack is a constant threshold on the deficit
/// (default e_H when unset).
GoodTreeAudit check_good(const SurvivalTree& t, LambdaCache& lambda,
                         std::optional<std::int64_t> deficit_threshold = std::nullopt);
GoodTreeAudit check_good(const SurvivalTree& t, const EvolvingGraph& host, const PatternGraph& h,
                         std::optional<std::int64_t> deficit_threshold = std::nullopt);

struct E1Report {
  bool holds = true;
  Band band;
  std::map<std::size_t, std::size_t> histogram;  // |Lambda(g,rho)| -> #edges g
  std::size_t min_size = 0, max_size = 0;
  std::optional<Edge> first_violation;
};

/// Checks the two-sided band for |Lambda(g,rho)| over every edge g of K_n.
E1Report check_E1(const EvolvingGraph& host, const PatternGraph& h, const Band& band);
E1Report check_E1(const EvolvingGraph& host, const PatternGraph& h, const AsymptoticParams& params);

/// RT: every interior edge node keeps exactly `target` copy-children, the
/// ones with lexicographically smallest labels. Throws PreconditionError if
/// some reached interior node has fewer than `target` children.
SurvivalTree prune_to_RT(const SurvivalTree& t, std::int64_t target);

/// The non-survival events B(T_{g,d}) evaluated bottom-up for every edge
/// node (copy nodes hold 0). B is false at height 0; at height d >= 1 it holds
/// iff some copy-child has all edges born before g and none of them in B.
std::vector<char> eval_B(const SurvivalTree& t, const Birthtimes& b);

}  // namespace hfree
