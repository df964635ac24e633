#include "hfree/bad_sequence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "hfree/copy_search.hpp"

namespace hfree {

PatternGraph edge_set_graph(const EdgeSet& edges, const std::string& name) {
  std::vector<Vertex> verts;
  for (const Edge& e : edges) {
    verts.push_back(e.u);
    verts.push_back(e.v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto label = [&](Vertex x) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), x) - verts.begin());
  };
  std::vector<PatternGraph::VertexPair> out;
  for (const Edge& e : edges) out.emplace_back(label(e.u), label(e.v));
  return PatternGraph(std::max<int>(1, static_cast<int>(verts.size())), std::move(out), name);
}

namespace {

std::uint64_t key_of(Edge e) { return std::uint64_t{e.u} << 32 | e.v; }

struct Searcher {
  const EvolvingGraph& host;
  const CopySearch search;
  const BadSequenceOptions& opt;
  int e_h;
  BadSequenceResult result;

  std::unordered_map<std::uint64_t, std::vector<int>> ext_cache;  // anchor -> copy ids
  std::map<EdgeSet, int> intern;
  std::deque<EdgeSet> copies;  // stable references across growth
  std::set<std::vector<int>> visited;
  std::set<std::pair<std::vector<int>, int>> reported;

  // Current prefix.
  std::vector<int> chain;
  std::vector<Edge> anchors;
  std::vector<Edge> union_edges;
  std::unordered_set<std::uint64_t> union_keys;
  std::vector<int> vertex_mult;
  bool stop = false;

  Searcher(const EvolvingGraph& g, const PatternGraph& h, const BadSequenceOptions& o)
      : host(g), search(h), opt(o), e_h(h.edge_count()), vertex_mult(g.vertex_count(), 0) {}

  const std::vector<int>& extensions(Edge g) {
    auto it = ext_cache.find(key_of(g));
    if (it != ext_cache.end()) return it->second;
    std::vector<int> ids;
    for (EdgeSet& m : search.extensions(host, g).members) {
      auto [pos, fresh] = intern.emplace(m, static_cast<int>(copies.size()));
      if (fresh) copies.push_back(std::move(m));
      ids.push_back(pos->second);
    }
    return ext_cache.emplace(key_of(g), std::move(ids)).first->second;
  }

  void add_to_union(const EdgeSet& edges) {
    for (const Edge& e : edges) {
      union_edges.push_back(e);
      union_keys.insert(key_of(e));
      ++vertex_mult[e.u];
      ++vertex_mult[e.v];
    }
  }

  void remove_from_union(const EdgeSet& edges) {
    for (const Edge& e : edges) {
      union_edges.pop_back();
      union_keys.erase(key_of(e));
      --vertex_mult[e.u];
      --vertex_mult[e.v];
    }
  }

  std::pair<std::size_t, std::size_t> overlap(const EdgeSet& g) const {
    std::vector<Vertex> verts;
    std::size_t shared_edges = 0;
    for (const Edge& e : g) {
      verts.push_back(e.u);
      verts.push_back(e.v);
      if (union_keys.contains(key_of(e))) ++shared_edges;
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::size_t shared_vertices = 0;
    for (Vertex x : verts)
      if (vertex_mult[x] > 0) ++shared_vertices;
    return {shared_vertices, shared_edges};
  }

  void record(int id, Edge anchor, std::size_t sv, std::size_t se) {
    std::vector<int> set = chain;
    std::sort(set.begin(), set.end());
    if (!reported.emplace(set, id).second) return;
    if (result.sequences.size() >= opt.report_cap) {
      result.truncated = true;
      stop = true;
      return;
    }
    BadSequence s;
    for (int c : chain) s.copies.push_back(copies[static_cast<std::size_t>(c)]);
    s.copies.push_back(copies[static_cast<std::size_t>(id)]);
    s.anchors = anchors;
    s.anchors.push_back(anchor);
    s.shared_vertices = sv;
    s.shared_edges = se;
    s.kind = se == 0 ? 1 : 2;
    EdgeSet hs{anchor};
    for (const Edge& e : copies[static_cast<std::size_t>(id)])
      if (union_keys.contains(key_of(e))) hs.push_back(e);
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    s.f_type = edge_set_graph(hs, "H_S");
    result.sequences.push_back(std::move(s));
  }

  void dfs() {
    if (stop) return;
    if (result.states_explored >= opt.state_cap) {
      result.partial = true;
      stop = true;
      return;
    }
    ++result.states_explored;
    // union_edges grows during recursion; only the current prefix is scanned.
    const std::size_t frontier = union_edges.size();
    for (std::size_t a = 0; a < frontier && !stop; ++a) {
      const Edge g = union_edges[a];
      const std::vector<int> ids = extensions(g);
      for (int id : ids) {
        if (stop) return;
        const EdgeSet& cand = copies[static_cast<std::size_t>(id)];
        const auto [sv, se] = overlap(cand);
        if (!chain.empty() && sv >= 3 && se + 2 <= static_cast<std::size_t>(e_h)) {
          record(id, g, sv, se);
        } else if (sv == 2 && se == 0 && chain.size() + 1 < opt.max_len) {
          std::vector<int> next = chain;
          next.push_back(id);
          std::sort(next.begin(), next.end());
          if (!visited.insert(std::move(next)).second) continue;
          chain.push_back(id);
          anchors.push_back(g);
          add_to_union(cand);
          dfs();
          remove_from_union(cand);
          anchors.pop_back();
          chain.pop_back();
        }
      }
    }
  }
};

}  // namespace

BadSequenceResult find_bad_sequences(const EvolvingGraph& host, Edge f, const PatternGraph& h,
                                     const BadSequenceOptions& options) {
  if (options.max_len < 2) return {};
  EvolvingGraph with_f = host;
  with_f.add_edge(f);
  Searcher s(with_f, h, options);
  s.add_to_union({f});
  s.dfs();
  return std::move(s.result);
}

}  // namespace hfree
