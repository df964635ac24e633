#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "hfree/birthtimes.hpp"
#include "hfree/copy_search.hpp"
#include "hfree/error.hpp"
#include "hfree/estimators.hpp"
#include "hfree/process.hpp"

using namespace hfree;

namespace {

// One-sample Kolmogorov-Smirnov statistic against U[0,1].
double ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    d = std::max({d, (i + 1) / n - xs[i], xs[i] - i / n});
  return d;
}

std::vector<TimedEdge> order_of(std::uint32_t n, std::initializer_list<std::pair<int, int>> edges) {
  std::vector<TimedEdge> out;
  double t = 0;
  for (auto [a, b] : edges) out.push_back({t += 0.1, Edge(a, b)});
  (void)n;
  return out;
}

}  // namespace

TEST_CASE("edge index round trip") {
  for (std::uint32_t n : {2u, 3u, 7u, 50u}) {
    const EdgeIndex idx(n);
    CHECK(idx.size() == pair_count(n));
    EdgeId expect = 0;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b) {
        CHECK(idx.id(Edge(b, a)) == expect);
        CHECK(idx.edge(expect) == Edge(a, b));
        ++expect;
      }
  }
}

TEST_CASE("evolving graph matches a reference edge set") {
  for (std::uint32_t n : {9u, 70u, 5000u}) {
    CAPTURE(n);
    EvolvingGraph g(n);
    std::set<Edge> ref;
    Rng rng(n);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    for (int step = 0; step < 4000; ++step) {
      Vertex a = pick(rng), b = pick(rng);
      if (a == b) continue;
      const Edge e(a, b);
      if (step % 3 == 2) {
        CHECK(g.remove_edge(e) == (ref.erase(e) == 1));
      } else {
        CHECK(g.add_edge(e) == ref.insert(e).second);
      }
    }
    CHECK(g.edge_count() == ref.size());
    const EdgeSet es = g.edges();
    CHECK(std::equal(es.begin(), es.end(), ref.begin(), ref.end()));
    std::uint64_t deg = 0;
    for (Vertex v = 0; v < n; ++v) deg += g.degree(v);
    CHECK(deg == 2 * ref.size());
    for (const Edge& e : ref) CHECK(g.has_edge(e.v, e.u));
    CHECK(g.dense() == (n <= EvolvingGraph::kDenseLimit));
  }
}

TEST_CASE("birthtimes are uniform and reproducible") {
  const Birthtimes a = sample_birthtimes(200, 5);
  const Birthtimes b = sample_birthtimes(200, 5);
  CHECK(a.values() == b.values());
  CHECK(a.values() != sample_birthtimes(200, 6).values());
  // Critical value at alpha = 0.001 is about 1.95 / sqrt(N).
  const double n = static_cast<double>(a.size());
  CHECK(ks_uniform(a.values()) < 1.95 / std::sqrt(n));

  const Birthtimes two = sample_two_phase(200, 0.3, 9);
  std::vector<double> in, out;
  for (double x : two.values()) (x <= 0.3 ? in : out).push_back(x);
  CHECK(std::fabs(in.size() / n - 0.3) < 4 * std::sqrt(0.21 / n));
  for (double& x : in) x /= 0.3;
  for (double& x : out) x = (x - 0.3) / 0.7;
  CHECK(ks_uniform(in) < 1.95 / std::sqrt(double(in.size())));
  CHECK(ks_uniform(out) < 1.95 / std::sqrt(double(out.size())));
  CHECK(two.phase_graph().edge_count() == in.size());

  CHECK(sample_two_phase(30, 1.0, 3).values() == sample_birthtimes(30, 3).values());
  CHECK_THROWS_AS(sample_birthtimes(1, 1), ParameterError);
}

TEST_CASE("prefix sampling is sorted and has the right size") {
  Rng rng(12);
  double total = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const auto p = sample_prefix(300, 0.05, rng);
    CHECK(std::is_sorted(p.begin(), p.end()));
    for (const TimedEdge& e : p) CHECK(e.beta < 0.05);
    total += static_cast<double>(p.size());
  }
  const double m = pair_count(300) * 0.05;
  CHECK(std::fabs(total / trials - m) < 4 * std::sqrt(m * 0.95 / trials));
}

TEST_CASE("triangle process on four vertices") {
  // Order 12, 34, 13, 24, 14, 23 with vertices 1..4 mapped to 0..3.
  const auto order = order_of(4, {{0, 1}, {2, 3}, {0, 2}, {1, 3}, {0, 3}, {1, 2}});
  const ProcessTrace t = run_process(4, CopySearch(parse_pattern_name("K3")), order);
  CHECK(t.accepted == 4);
  const EdgeSet expect = {Edge(0, 1), Edge(0, 2), Edge(1, 3), Edge(2, 3)};
  CHECK(t.graph.edges() == expect);
  CHECK_FALSE(t.steps[4].accepted);
  CHECK_FALSE(t.steps[5].accepted);
  CHECK(verify_maximal(t.graph, parse_pattern_name("K3")));
}

TEST_CASE("rejections carry a witness closing the copy") {
  const PatternGraph h = parse_pattern_name("C4");
  const Birthtimes b = sample_birthtimes(20, 31);
  ProcessOptions opt;
  opt.record_witnesses = true;
  const ProcessTrace t = run_process(20, h, b, opt);
  std::size_t rejected = 0;
  for (const StepRecord& s : t.steps) {
    if (s.accepted) continue;
    ++rejected;
    REQUIRE(s.witness);
    EdgeSet w = *s.witness;
    CHECK(w.size() == 3);
    for (const Edge& e : w) CHECK(t.graph.has_edge(e));
    w.push_back(s.edge.edge);
    std::sort(w.begin(), w.end());
    EvolvingGraph copy = graph_from_edges(20, w);
    CHECK(find_copy_naive(copy, h));
  }
  CHECK(rejected == t.traversed - t.accepted);
  CHECK(verify_maximal(t.graph, h));
}

TEST_CASE("anchored copy search agrees with the naive search") {
  for (const char* name : {"K3", "C4", "K4", "C5", "K_{2,3}", "paw"}) {
    CAPTURE(name);
    const PatternGraph h = parse_pattern_name(name);
    const CopySearch s(h);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Birthtimes b = sample_two_phase(14, 0.45, seed);
      const EvolvingGraph g = b.phase_graph();
      for (Vertex a = 0; a < 14; ++a)
        for (Vertex c = a + 1; c < 14; ++c) {
          const Edge f(a, c);
          CHECK(s.has_extension(g, f) == find_copy_naive(g, h, f).has_value());
        }
    }
  }
}

TEST_CASE("extension sets are complete") {
  // In K_n every copy through f is present: |Lambda| = 2 e_H (n-2)_{v_H-2} / |Aut H|.
  const EvolvingGraph k7 = complete_graph(7);
  CHECK(enumerate_extensions(k7, Edge(0, 1), parse_pattern_name("K3")).size() == 5);
  CHECK(enumerate_extensions(k7, Edge(0, 1), parse_pattern_name("C4")).size() == 2 * 4 * 5 * 4 / 8);
  CHECK(enumerate_extensions(k7, Edge(0, 1), parse_pattern_name("K4")).size() == 10);
  const ExtensionSet c5 = enumerate_extensions(k7, Edge(2, 5), parse_pattern_name("C5"));
  CHECK(c5.size() == 2 * 5 * 5 * 4 * 3 / 10);
  for (const EdgeSet& m : c5.members) {
    CHECK(m.size() == 4);
    CHECK(std::find(m.begin(), m.end(), Edge(2, 5)) == m.end());
  }
}

TEST_CASE("results do not depend on the worker count") {
  const PatternGraph h = parse_pattern_name("K3");
  const RunStats one = estimate_expected_edges(30, h, 40, 99, 1);
  const RunStats four = estimate_expected_edges(30, h, 40, 99, 4);
  CHECK(one.values == four.values);
  CHECK(one.seeds == four.seeds);
  CHECK(one.seeds[3] == derive_seed(99, 3));

  const std::vector<double> xs = {2, 4};
  const auto a = estimate_conditional_inclusion(64, h, xs, 30, 5, 1);
  const auto b = estimate_conditional_inclusion(64, h, xs, 30, 5, 3);
  CHECK(a.m_star == b.m_star);
  CHECK(a.points[1].indicator.mean == b.points[1].indicator.mean);
}
