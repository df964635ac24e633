#include <algorithm>
#include <bit>
#include <cmath>

#include "doctest.h"
#include "hfree/bad_sequence.hpp"
#include "hfree/conflict.hpp"
#include "hfree/error.hpp"
#include "hfree/estimators.hpp"
#include "hfree/survival_tree.hpp"
#include "hfree/trimmed.hpp"

using namespace hfree;

namespace {

EvolvingGraph random_graph(std::uint32_t n, double p, std::uint64_t seed) {
  return sample_two_phase(n, p, seed).phase_graph();
}

BitGraph random_bitgraph(std::size_t n, double p, Rng& rng) {
  BitGraph g(n);
  std::bernoulli_distribution coin(p);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng)) g.add_edge(a, b);
  return g;
}

std::size_t brute_mis(const BitGraph& g) {
  const std::size_t n = g.size();
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = a + 1; b < n && ok; ++b)
        if ((s >> a & 1u) && (s >> b & 1u) && g.adjacent(a, b)) ok = false;
    if (ok) best = std::max<std::size_t>(best, std::popcount(s));
  }
  return best;
}

// Largest set of edges whose endpoints induce exactly those edges.
std::size_t brute_induced_matching(const BitGraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b)
      if (g.adjacent(a, b)) edges.emplace_back(a, b);
  std::size_t best = 0;
  const std::size_t m = edges.size();
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    std::vector<std::size_t> verts;
    for (std::size_t i = 0; i < m; ++i)
      if (s >> i & 1u) {
        verts.push_back(edges[i].first);
        verts.push_back(edges[i].second);
      }
    std::vector<std::size_t> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    std::size_t induced = 0;
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j)
        if (g.adjacent(verts[i], verts[j])) ++induced;
    if (induced == static_cast<std::size_t>(std::popcount(s))) best = std::max<std::size_t>(best, induced);
  }
  return best;
}

SmallCounts brute_counts(const EvolvingGraph& g) {
  const std::uint32_t n = g.vertex_count();
  SmallCounts c;
  c.edges = g.edge_count();
  for (Vertex v = 0; v < n; ++v) c.p2 += std::uint64_t{g.degree(v)} * (g.degree(v) - 1) / 2;
  // Count closed walks on distinct vertices and divide by the symmetries.
  auto cycles = [&](int len) {
    std::uint64_t walks = 0;
    std::vector<Vertex> path;
    auto dfs = [&](auto&& self, Vertex v) -> void {
      if (static_cast<int>(path.size()) == len) {
        if (g.has_edge(v, path.front())) ++walks;
        return;
      }
      for (Vertex w : g.neighbors(v))
        if (std::find(path.begin(), path.end(), w) == path.end()) {
          path.push_back(w);
          self(self, w);
          path.pop_back();
        }
    };
    for (Vertex s = 0; s < n; ++s) {
      path = {s};
      dfs(dfs, s);
    }
    return walks / (2 * static_cast<std::uint64_t>(len));
  };
  c.c3 = cycles(3);
  c.c4 = cycles(4);
  c.c5 = cycles(5);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) {
      if (g.has_edge(a, b)) continue;
      bool common = false;
      for (Vertex w : g.neighbors(a)) common = common || g.has_edge(w, b);
      if (!common) ++c.open_pairs;
    }
  return c;
}

}  // namespace

TEST_CASE("bad sequence on a small host") {
  // Host {13, 23, 24, 34, 14} and f = 12 (vertex labels kept, vertex 0 unused).
  const EvolvingGraph host = graph_from_edges(5, std::vector<Edge>{{1, 3}, {2, 3}, {2, 4}, {3, 4}, {1, 4}});
  const BadSequenceResult r = find_bad_sequences(host, Edge(1, 2), parse_pattern_name("K3"));
  CHECK_FALSE(r.e3());
  CHECK(r.decided());
  const std::vector<EdgeSet> expect = {{{1, 3}, {2, 3}}, {{2, 4}, {3, 4}}, {{1, 2}, {1, 4}}};
  const bool found = std::any_of(r.sequences.begin(), r.sequences.end(),
                                 [&](const BadSequence& s) { return s.copies == expect; });
  CHECK(found);
  for (const BadSequence& s : r.sequences) {
    CHECK(s.shared_vertices >= 3);
    CHECK(s.shared_edges <= 1);
  }
}

TEST_CASE("no bad sequence in a host of edge-disjoint triangles through distinct vertices") {
  // Two triangles on f = 01 sharing only f: {0,1,2} and {0,1,3}.
  const EvolvingGraph host = graph_from_edges(6, std::vector<Edge>{{0, 2}, {1, 2}, {0, 3}, {1, 3}});
  const BadSequenceResult r = find_bad_sequences(host, Edge(0, 1), parse_pattern_name("K3"));
  CHECK(r.e3());
  CHECK(r.decided());
}

TEST_CASE("survival tree structure and good-tree audit") {
  const PatternGraph h = parse_pattern_name("K3");
  const EvolvingGraph host = graph_from_edges(5, std::vector<Edge>{{0, 2}, {1, 2}, {0, 3}, {1, 3}});
  const SurvivalTree t = build_tree(Edge(0, 1), 1, host, h);
  // Root plus two copy nodes plus two edge nodes each.
  CHECK(t.size() == 7);
  CHECK(t.node(0).children.size() == 2);
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t.node(static_cast<int>(i)).parent < static_cast<int>(i));
  CHECK(t.edge_height(0) == 1);
  CHECK(t.interior(0));
  CHECK_FALSE(t.interior(3));
  const GoodTreeAudit g = check_good(t, host, h);
  CHECK(g.p1);
  CHECK(g.p2);
  CHECK(g.good());

  // Overlapping copies break P2.
  const EvolvingGraph dense = complete_graph(5);
  const SurvivalTree t2 = build_tree(Edge(0, 1), 2, dense, h);
  const GoodTreeAudit g2 = check_good(t2, dense, h);
  CHECK_FALSE(g2.p2);
  CHECK(g2.p2_witness);
}

TEST_CASE("non-survival event B") {
  const PatternGraph h = parse_pattern_name("K3");
  const EvolvingGraph host = graph_from_edges(4, std::vector<Edge>{{0, 2}, {1, 2}});
  const SurvivalTree t = build_tree(Edge(0, 1), 1, host, h);
  std::vector<double> beta(6, 0.9);
  const EdgeIndex idx(4);
  beta[idx.id(Edge(0, 1))] = 0.5;
  beta[idx.id(Edge(0, 2))] = 0.1;
  beta[idx.id(Edge(1, 2))] = 0.2;
  // Both copy edges were born before f and are leaves, so f does not survive.
  CHECK(eval_B(t, Birthtimes(4, beta))[0] == 1);
  beta[idx.id(Edge(1, 2))] = 0.7;
  CHECK(eval_B(t, Birthtimes(4, beta))[0] == 0);
  // Birthtimes over K_2 do not cover vertex 2.
  CHECK_THROWS_AS(eval_B(t, Birthtimes(2, std::vector<double>(1, 0.1))), DataError);
}

TEST_CASE("RT pruning keeps the smallest labels") {
  const PatternGraph h = parse_pattern_name("K3");
  const EvolvingGraph host = complete_graph(6);
  const SurvivalTree t = build_tree(Edge(0, 1), 1, host, h);
  CHECK(t.node(0).children.size() == 4);
  const SurvivalTree rt = prune_to_RT(t, 2);
  REQUIRE(rt.node(0).children.size() == 2);
  const EdgeSet first = rt.node(rt.node(0).children[0]).copy;
  CHECK(first == EdgeSet{{0, 2}, {1, 2}});
  CHECK_THROWS_AS(prune_to_RT(t, 5), PreconditionError);
}

TEST_CASE("independent set and induced matching agree with brute force") {
  Rng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + trial % 10;
    const BitGraph g = random_bitgraph(n, 0.2 + 0.01 * trial, rng);
    CAPTURE(trial);
    CHECK(max_independent_set(g).value() == brute_mis(g));
    std::size_t m = 0;
    for (std::size_t a = 0; a < n; ++a) m += g.degree(a);
    if (m / 2 <= 16) CHECK(max_induced_matching(g).value() == brute_induced_matching(g));
  }
}

TEST_CASE("conflict graph statistics") {
  const ExtensionSet lam = enumerate_extensions(complete_graph(6), Edge(0, 1), parse_pattern_name("C4"));
  const ConflictStats s = conflict_graph_stats(lam);
  CHECK(s.exact);
  CHECK(s.lambda_size == 12);
  CHECK(s.bound_holds());
  CHECK(s.w3 > 0);
  const ExtensionSet big = enumerate_extensions(complete_graph(12), Edge(0, 1), parse_pattern_name("C4"));
  CHECK_THROWS_AS(conflict_graph_stats(big), CapabilityError);
  CHECK_FALSE(conflict_graph_stats(big, kConflictExactLimit, true).exact);
}

TEST_CASE("small subgraph counts match brute force") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const EvolvingGraph g = random_graph(9 + seed % 4, 0.3 + 0.04 * seed, seed);
    const SmallCounts a = count_small_subgraphs(g), b = brute_counts(g);
    CAPTURE(seed);
    CHECK(a.edges == b.edges);
    CHECK(a.p2 == b.p2);
    CHECK(a.c3 == b.c3);
    CHECK(a.c4 == b.c4);
    CHECK(a.c5 == b.c5);
    CHECK(a.open_pairs == b.open_pairs);
  }
  const SmallCounts k5 = count_small_subgraphs(complete_graph(5));
  CHECK(k5.c3 == 10);
  CHECK(k5.c4 == 15);
  CHECK(k5.c5 == 12);
}

TEST_CASE("E1 band check and host sampling") {
  const PatternGraph h = parse_pattern_name("K3");
  Rng rng(3);
  const SampledHost s = sample_host(30, 0.3, 0.1, rng);
  CHECK(s.host.has_edge(s.f));
  CHECK(s.b.at(s.f) < 0.1);
  Band wide{10, 100};
  CHECK(check_E1(s.host, h, wide).holds);
  Band narrow{1000, 1};
  const E1Report r = check_E1(s.host, h, narrow);
  CHECK_FALSE(r.holds);
  CHECK(r.first_violation);
  std::size_t total = 0;
  for (auto [size, count] : r.histogram) total += count;
  CHECK(total == pair_count(30));
}
