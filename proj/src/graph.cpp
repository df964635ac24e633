#include "hfree/graph.hpp"

#include <algorithm>

#include "hfree/error.hpp"

namespace hfree {

EdgeIndex::EdgeIndex(std::uint32_t n) : n_(n), total_(pair_count(n)), row_start_(n + 1, 0) {
  for (std::uint32_t u = 0; u < n; ++u) row_start_[u + 1] = row_start_[u] + (n - u - 1);
}

Edge EdgeIndex::edge(EdgeId id) const {
  if (id >= total_) throw ParameterError("edge id " + std::to_string(id) + " out of range");
  const auto it = std::upper_bound(row_start_.begin(), row_start_.end(), std::uint64_t{id});
  const auto u = static_cast<Vertex>((it - row_start_.begin()) - 1);
  return Edge(u, static_cast<Vertex>(u + 1 + (id - row_start_[u])));
}

EvolvingGraph::EvolvingGraph(std::uint32_t n) : n_(n), adj_(n) {
  if (n <= kDenseLimit) {
    words_ = (n + 63) / 64;
    bits_.assign(static_cast<std::size_t>(n) * words_, 0);
  }
}

bool EvolvingGraph::add_edge(Edge e) {
  if (e.u == e.v || e.v >= n_) {
    throw ParameterError("invalid edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
  }
  if (has_edge(e)) return false;
  if (dense()) {
    bits_[e.u * words_ + (e.v >> 6)] |= std::uint64_t{1} << (e.v & 63);
    bits_[e.v * words_ + (e.u >> 6)] |= std::uint64_t{1} << (e.u & 63);
  } else {
    sparse_.insert(key(e.u, e.v));
  }
  adj_[e.u].push_back(e.v);
  adj_[e.v].push_back(e.u);
  ++edge_count_;
  return true;
}

bool EvolvingGraph::remove_edge(Edge e) {
  if (e.v >= n_ || !has_edge(e)) return false;
  if (dense()) {
    bits_[e.u * words_ + (e.v >> 6)] &= ~(std::uint64_t{1} << (e.v & 63));
    bits_[e.v * words_ + (e.u >> 6)] &= ~(std::uint64_t{1} << (e.u & 63));
  } else {
    sparse_.erase(key(e.u, e.v));
  }
  auto drop = [](std::vector<Vertex>& list, Vertex x) {
    list.erase(std::find(list.begin(), list.end(), x));
  };
  drop(adj_[e.u], e.v);
  drop(adj_[e.v], e.u);
  --edge_count_;
  return true;
}

EdgeSet EvolvingGraph::edges() const {
  EdgeSet out;
  out.reserve(edge_count_);
  for (Vertex a = 0; a < n_; ++a)
    for (Vertex b : adj_[a])
      if (a < b) out.emplace_back(a, b);
  std::sort(out.begin(), out.end());
  return out;
}

EvolvingGraph complete_graph(std::uint32_t n) {
  EvolvingGraph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) g.add_edge({a, b});
  return g;
}

EvolvingGraph graph_from_edges(std::uint32_t n, std::span<const Edge> edges) {
  EvolvingGraph g(n);
  for (const Edge& e : edges) g.add_edge(e);
  return g;
}

}  // namespace hfree
