#include "hfree/survival_tree.hpp"

#include <algorithm>
#include <deque>

namespace hfree {

LambdaCache::LambdaCache(const EvolvingGraph& host, const PatternGraph& h) : host_(&host), search_(h) {}

const ExtensionSet& LambdaCache::operator()(Edge g) {
  const std::uint64_t key = std::uint64_t{g.u} << 32 | g.v;
  auto it = memo_.find(key);
  if (it == memo_.end()) it = memo_.emplace(key, search_.extensions(*host_, g)).first;
  return it->second;
}

SurvivalTree::SurvivalTree(Edge root, int half_height) : half_height_(half_height) {
  TreeNode r;
  r.kind = NodeKind::kEdge;
  r.edge = root;
  nodes_.push_back(std::move(r));
}

int SurvivalTree::add_node(TreeNode n) {
  const int id = static_cast<int>(nodes_.size());
  if (n.parent >= 0) nodes_[static_cast<std::size_t>(n.parent)].children.push_back(id);
  nodes_.push_back(std::move(n));
  return id;
}

SurvivalTree build_tree(Edge f, int d, LambdaCache& lambda, const TreeCaps& caps) {
  if (d < 0) throw ParameterError("tree half-height d must be >= 0");
  SurvivalTree t(f, d);
  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    const int at = frontier.front();
    frontier.pop_front();
    const TreeNode& here = t.node(at);
    if (here.depth >= 2 * d) continue;
    const Edge g = here.edge;
    const int depth = here.depth;
    std::optional<Edge> excluded;
    if (depth >= 2) excluded = t.node(t.node(here.parent).parent).edge;

    for (const EdgeSet& copy : lambda(g).members) {
      if (excluded && std::binary_search(copy.begin(), copy.end(), *excluded)) continue;
      if (t.size() + 1 + copy.size() > caps.max_nodes) {
        throw PartialTreeError("survival tree exceeds node cap " + std::to_string(caps.max_nodes),
                               std::move(t));
      }
      TreeNode cn;
      cn.kind = NodeKind::kCopy;
      cn.depth = depth + 1;
      cn.parent = at;
      cn.copy = copy;
      const int cid = t.add_node(std::move(cn));
      for (const Edge& e : copy) {
        TreeNode en;
        en.kind = NodeKind::kEdge;
        en.depth = depth + 2;
        en.parent = cid;
        en.edge = e;
        frontier.push_back(t.add_node(std::move(en)));
      }
    }
  }
  return t;
}

SurvivalTree build_tree(Edge f, int d, const EvolvingGraph& host, const PatternGraph& h,
                        const TreeCaps& caps) {
  LambdaCache lambda(host, h);
  return build_tree(f, d, lambda, caps);
}

GoodTreeAudit check_good(const SurvivalTree& t, LambdaCache& lambda,
                         std::optional<std::int64_t> deficit_threshold) {
  GoodTreeAudit audit;
  audit.deficit_threshold = deficit_threshold.value_or(lambda.search().pattern().edge_count());
  const Edge f = t.root_edge();

  // P2 via first owner of every edge appearing in a copy label.
  std::unordered_map<std::uint64_t, int> owner;
  constexpr std::size_t kMaxPairs = 1000;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const TreeNode& nd = t.node(static_cast<int>(i));
    if (nd.kind == NodeKind::kCopy) {
      if (std::binary_search(nd.copy.begin(), nd.copy.end(), f)) {
        audit.p1 = false;
        audit.p1_violations.push_back(static_cast<int>(i));
      }
      for (const Edge& e : nd.copy) {
        const std::uint64_t key = std::uint64_t{e.u} << 32 | e.v;
        auto [it, fresh] = owner.emplace(key, static_cast<int>(i));
        if (!fresh && it->second != static_cast<int>(i)) {
          audit.p2 = false;
          if (!audit.p2_witness) audit.p2_witness = std::make_pair(it->second, static_cast<int>(i));
          if (audit.p2_overlapping_pairs < kMaxPairs) ++audit.p2_overlapping_pairs;
        }
      }
    } else if (t.interior(static_cast<int>(i))) {
      const auto available = static_cast<std::int64_t>(lambda(nd.edge).size());
      const std::int64_t deficit = available - static_cast<std::int64_t>(nd.children.size());
      ++audit.deficit_histogram[deficit];
      if (!audit.max_deficit_node || deficit > audit.max_deficit) {
        audit.max_deficit = deficit;
        audit.max_deficit_node = static_cast<int>(i);
      }
    }
  }
  audit.p3 = audit.max_deficit <= audit.deficit_threshold;
  return audit;
}

GoodTreeAudit check_good(const SurvivalTree& t, const EvolvingGraph& host, const PatternGraph& h,
                         std::optional<std::int64_t> deficit_threshold) {
  LambdaCache lambda(host, h);
  return check_good(t, lambda, deficit_threshold);
}

E1Report check_E1(const EvolvingGraph& host, const PatternGraph& h, const Band& band) {
  E1Report report;
  report.band = band;
  const CopySearch search(h);
  const std::uint32_t n = host.vertex_count();
  bool first = true;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) {
      const std::size_t size = search.extensions(host, Edge(a, b)).size();
      ++report.histogram[size];
      report.min_size = first ? size : std::min(report.min_size, size);
      report.max_size = first ? size : std::max(report.max_size, size);
      first = false;
      if (!band.contains(static_cast<double>(size))) {
        report.holds = false;
        if (!report.first_violation) report.first_violation = Edge(a, b);
      }
    }
  return report;
}

E1Report check_E1(const EvolvingGraph& host, const PatternGraph& h, const AsymptoticParams& params) {
  return check_E1(host, h, e1_band(params, h));
}

SurvivalTree prune_to_RT(const SurvivalTree& t, std::int64_t target) {
  if (target < 0) throw ParameterError("RT target outdegree must be >= 0");
  SurvivalTree out(t.root_edge(), t.half_height());
  // (old index, new index) pairs of edge nodes still to expand.
  std::deque<std::pair<int, int>> frontier{{0, 0}};
  while (!frontier.empty()) {
    const auto [old_id, new_id] = frontier.front();
    frontier.pop_front();
    const TreeNode& src = t.node(old_id);
    if (!t.interior(old_id)) continue;
    if (static_cast<std::int64_t>(src.children.size()) < target) {
      throw PreconditionError("prune_to_RT: node " + std::to_string(old_id) + " (edge " +
                              std::to_string(src.edge.u) + "-" + std::to_string(src.edge.v) +
                              ", depth " + std::to_string(src.depth) + ") has " +
                              std::to_string(src.children.size()) + " copy-children < target " +
                              std::to_string(target));
    }
    std::vector<int> kids = src.children;
    std::sort(kids.begin(), kids.end(),
              [&](int a, int b) { return t.node(a).copy < t.node(b).copy || (t.node(a).copy == t.node(b).copy && a < b); });
    kids.resize(static_cast<std::size_t>(target));
    for (int c : kids) {
      TreeNode cn = t.node(c);
      cn.parent = new_id;
      const std::vector<int> grand = cn.children;
      cn.children.clear();
      const int cid = out.add_node(std::move(cn));
      for (int g : grand) {
        TreeNode en = t.node(g);
        en.parent = cid;
        en.children.clear();
        frontier.emplace_back(g, out.add_node(std::move(en)));
      }
    }
  }
  return out;
}

std::vector<char> eval_B(const SurvivalTree& t, const Birthtimes& b) {
  std::vector<char> in_b(t.size(), 0);
  const std::uint32_t n = b.vertex_count();
  auto beta = [&](Edge e) {
    if (e.v >= n) {
      throw DataError("no birthtime for edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    return b.at(e);
  };
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    const TreeNode& nd = t.node(i);
    if (nd.kind != NodeKind::kEdge || !t.interior(i)) continue;
    const double own = beta(nd.edge);
    for (int c : nd.children) {
      bool blocks = true;
      for (int g : t.node(c).children) {
        if (!(beta(t.node(g).edge) < own) || in_b[static_cast<std::size_t>(g)]) {
          blocks = false;
          break;
        }
      }
      if (blocks) {
        in_b[static_cast<std::size_t>(i)] = 1;
        break;
      }
    }
  }
  return in_b;
}

}  // namespace hfree
