#include "hfree/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

#include "hfree/error.hpp"
#include "hfree/stats.hpp"

namespace hfree {

std::string to_string(OracleMethod m) {
  return m == OracleMethod::kFullPermutation ? "full-permutation" : "state-recursion";
}

namespace {

struct Tables {
  std::uint32_t n = 0;
  int m = 0;  // C(n,2)
  std::vector<Edge> edges;
  // closing[e]: masks G with G u {e} a copy of H and e not in G.
  std::vector<std::vector<std::uint32_t>> closing;

  bool closes(int e, std::uint32_t accepted) const {
    for (std::uint32_t g : closing[static_cast<std::size_t>(e)])
      if ((g & accepted) == g) return true;
    return false;
  }
};

int local_id(std::uint32_t n, Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  int id = 0;
  for (Vertex r = 0; r < a; ++r) id += static_cast<int>(n - r - 1);
  return id + static_cast<int>(b - a - 1);
}

Tables make_tables(std::uint32_t n, const PatternGraph& h) {
  Tables t;
  t.n = n;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) t.edges.emplace_back(a, b);
  t.m = static_cast<int>(t.edges.size());
  t.closing.resize(t.edges.size());
  for (std::uint32_t copy : copy_masks(n, h))
    for (int e = 0; e < t.m; ++e)
      if (copy >> e & 1u) t.closing[static_cast<std::size_t>(e)].push_back(copy & ~(1u << e));
  return t;
}

void require_n(std::uint32_t n, std::uint32_t limit, const char* what) {
  if (n < 2) throw ParameterError(std::string(what) + " needs n >= 2");
  if (n > limit) {
    throw CapabilityError(std::string(what) + " is limited to n <= " + std::to_string(limit) + ", got " +
                          std::to_string(n));
  }
}

// Sum of accepted counts over every completion of the current prefix.
std::uint64_t walk(const Tables& t, std::uint32_t remaining, std::uint32_t accepted, std::uint64_t count) {
  if (remaining == 0) return count;
  std::uint64_t total = 0;
  for (std::uint32_t r = remaining; r != 0; r &= r - 1) {
    const int e = std::countr_zero(r);
    const std::uint32_t rest = remaining & ~(1u << e);
    if (t.closes(e, accepted)) {
      total += walk(t, rest, accepted, count);
    } else {
      total += walk(t, rest, accepted | 1u << e, count + 1);
    }
  }
  return total;
}

struct StateMemo {
  const Tables& t;
  std::unordered_map<std::uint32_t, Rational> memo;

  Rational value(std::uint32_t g) {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    Rational sum = 0;
    int open = 0;
    for (int e = 0; e < t.m; ++e) {
      if (g >> e & 1u) continue;
      if (t.closes(e, g)) continue;
      ++open;
      sum += value(g | 1u << e);
    }
    Rational out = open == 0 ? Rational(std::popcount(g)) : sum / open;
    memo.emplace(g, out);
    return out;
  }
};

}  // namespace

std::vector<std::uint32_t> copy_masks(std::uint32_t n, const PatternGraph& h) {
  if (n > kStateRecursionMaxN) throw CapabilityError("copy masks limited to n <= 7");
  const int v = h.vertex_count();
  std::vector<std::uint32_t> out;
  if (static_cast<std::uint32_t>(v) > n || h.edge_count() == 0) return out;
  // Injective maps V(H) -> [n] via the permutations of [n], keeping the
  // first v entries; duplicates are removed at the end.
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::uint32_t mask = 0;
    for (auto [a, b] : h.edges()) mask |= 1u << local_id(n, perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
    out.push_back(mask);
    // Skip permutations that differ only beyond position v.
    std::reverse(perm.begin() + v, perm.end());
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExactResult exact_expectation(std::uint32_t n, const PatternGraph& h, OracleMethod method) {
  ExactResult r;
  r.method = method;
  if (method == OracleMethod::kFullPermutation) {
    require_n(n, kFullPermutationMaxN, "full-permutation oracle");
    const Tables t = make_tables(n, h);
    const std::uint32_t all = t.m == 32 ? ~0u : (1u << t.m) - 1;
    // Split over the first traversed edge.
    const auto parts = run_indexed<std::uint64_t>(static_cast<std::size_t>(t.m), default_workers(), [&](std::size_t e) {
      const std::uint32_t bit = 1u << e;
      const int id = static_cast<int>(e);
      return t.closes(id, 0) ? walk(t, all & ~bit, 0, 0) : walk(t, all & ~bit, bit, 1);
    });
    std::uint64_t total = 0, orders = 1;
    for (std::uint64_t p : parts) total += p;
    for (int i = 2; i <= t.m; ++i) orders *= static_cast<std::uint64_t>(i);
    r.value = Rational(total) / Rational(orders);
    r.enumeration_size = orders;
    return r;
  }
  require_n(n, kStateRecursionMaxN, "state-recursion oracle");
  const Tables t = make_tables(n, h);
  StateMemo memo{t, {}};
  r.value = memo.value(0);
  r.enumeration_size = memo.memo.size();
  return r;
}

ExactResult exact_expectation(std::uint32_t n, const PatternGraph& h) {
  return exact_expectation(n, h, n <= kFullPermutationMaxN ? OracleMethod::kFullPermutation
                                                           : OracleMethod::kStateRecursion);
}

ExtremalResult exact_extremal(std::uint32_t n, const PatternGraph& h) {
  require_n(n, kExtremalMaxN, "extremal oracle");
  const Tables t = make_tables(n, h);
  ExtremalResult r;
  std::uint32_t best_mask = 0;
  int best = -1;
  // Include-first depth-first search; prune when even taking every remaining
  // edge cannot beat the best.
  auto dfs = [&](auto&& self, int e, std::uint32_t chosen, int size) -> void {
    ++r.nodes;
    if (size + (t.m - e) <= best) return;
    if (e == t.m) {
      best = size;
      best_mask = chosen;
      return;
    }
    if (!t.closes(e, chosen)) self(self, e + 1, chosen | 1u << e, size + 1);
    self(self, e + 1, chosen, size);
  };
  dfs(dfs, 0, 0u, 0);
  r.value = best;
  for (int e = 0; e < t.m; ++e)
    if (best_mask >> e & 1u) r.witness.push_back(t.edges[static_cast<std::size_t>(e)]);
  return r;
}

}  // namespace hfree
