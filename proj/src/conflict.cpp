#include "hfree/conflict.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hfree/error.hpp"

namespace hfree {

BitGraph::BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {}

void BitGraph::add_edge(std::size_t a, std::size_t b) {
  if (a == b) return;
  rows_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
  rows_[b * words_ + a / 64] |= std::uint64_t{1} << (a % 64);
}

std::size_t BitGraph::degree(std::size_t a) const noexcept {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(rows_[a * words_ + w]));
  return d;
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool any(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

// Maximum clique in the complement graph, Tomita-style coloring bound.
struct MisSolver {
  const BitGraph& g;
  std::size_t words;
  std::uint64_t nodes = 0, cap;
  std::size_t best = 0;
  bool aborted = false;

  MisSolver(const BitGraph& graph, std::uint64_t node_cap) : g(graph), words(graph.words()), cap(node_cap) {}

  // Vertices of `p` not adjacent to v in g (complement neighbors).
  void restrict(const Bits& p, std::size_t v, Bits& out) const {
    const std::uint64_t* r = g.row(v);
    for (std::size_t w = 0; w < words; ++w) out[w] = p[w] & ~r[w];
    out[v / 64] &= ~(std::uint64_t{1} << (v % 64));
  }

  // Greedy coloring of the complement restricted to p: each color class is
  // a clique of g, i.e. an independent set of the complement.
  void color(const Bits& p, std::vector<std::size_t>& order, std::vector<std::size_t>& bound) const {
    order.clear();
    bound.clear();
    Bits uncolored = p;
    std::size_t k = 0;
    while (any(uncolored)) {
      ++k;
      Bits q = uncolored;
      while (any(q)) {
        std::size_t w = 0;
        while (q[w] == 0) ++w;
        const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(q[w]));
        q[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        uncolored[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        // Same color only for vertices adjacent to v in g.
        const std::uint64_t* r = g.row(v);
        for (std::size_t x = 0; x < words; ++x) q[x] &= r[x];
        order.push_back(v);
        bound.push_back(k);
      }
    }
  }

  void expand(Bits p, std::size_t size) {
    if (aborted) return;
    if (++nodes > cap) {
      aborted = true;
      return;
    }
    std::vector<std::size_t> order, bound;
    color(p, order, bound);
    Bits next(words);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (size + bound[i] <= best) return;
      const std::size_t v = order[i];
      restrict(p, v, next);
      if (any(next)) {
        expand(next, size + 1);
      } else if (size + 1 > best) {
        best = size + 1;
      }
      if (aborted) return;
      p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
    }
  }
};

}  // namespace

std::optional<std::size_t> max_independent_set(const BitGraph& g, std::uint64_t node_cap) {
  if (g.size() == 0) return 0;
  MisSolver s(g, node_cap);
  Bits all(g.words(), 0);
  for (std::size_t v = 0; v < g.size(); ++v) all[v / 64] |= std::uint64_t{1} << (v % 64);
  s.expand(all, 0);
  if (s.aborted) return std::nullopt;
  return s.best;
}

std::optional<std::size_t> max_induced_matching(const BitGraph& g, std::uint64_t node_cap) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b)
      if (g.adjacent(a, b)) edges.emplace_back(a, b);
  BitGraph clash(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto [a, b] = edges[i];
      const auto [c, d] = edges[j];
      const bool touch = a == c || a == d || b == c || b == d;
      if (touch || g.adjacent(a, c) || g.adjacent(a, d) || g.adjacent(b, c) || g.adjacent(b, d))
        clash.add_edge(i, j);
    }
  return max_independent_set(clash, node_cap);
}

BitGraph conflict_graph(const ExtensionSet& lam) {
  const std::size_t m = lam.size();
  BitGraph g(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const EdgeSet& a = lam.members[i];
      const EdgeSet& b = lam.members[j];
      // Both sorted: linear merge.
      auto x = a.begin();
      auto y = b.begin();
      while (x != a.end() && y != b.end()) {
        if (*x < *y) {
          ++x;
        } else if (*y < *x) {
          ++y;
        } else {
          g.add_edge(i, j);
          break;
        }
      }
    }
  return g;
}

ConflictStats conflict_graph_stats(const ExtensionSet& lam, std::size_t exact_limit, bool w3_only) {
  ConflictStats s;
  s.lambda_size = lam.size();
  if (!w3_only && s.lambda_size > exact_limit) {
    throw CapabilityError("conflict graph over " + std::to_string(s.lambda_size) +
                          " copies exceeds the exact-search limit " + std::to_string(exact_limit) +
                          "; use the W3-only mode");
  }
  const BitGraph g = conflict_graph(lam);
  for (std::size_t v = 0; v < g.size(); ++v) s.w3 = std::max(s.w3, g.degree(v));
  if (w3_only) return s;
  s.w1 = max_independent_set(g);
  s.w2 = max_induced_matching(g);
  if (!s.w1 || !s.w2) throw CapabilityError("conflict graph search exceeded its node budget");
  s.exact = true;
  return s;
}

}  // namespace hfree
