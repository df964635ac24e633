#include "hfree/pattern.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

#include "hfree/error.hpp"

namespace hfree {

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

PatternGraph::PatternGraph(int vertex_count, std::vector<VertexPair> edges, std::string name)
    : vertex_count_(vertex_count), adjacency_(static_cast<std::size_t>(std::max(vertex_count, 0)), 0u),
      name_(std::move(name)) {
  if (vertex_count < 1 || vertex_count > kMaxVertices) {
    throw ParameterError("pattern vertex count must be in [1, " + std::to_string(kMaxVertices) +
                         "], got " + std::to_string(vertex_count));
  }
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) {
      throw ParameterError("pattern edge (" + std::to_string(a) + "," + std::to_string(b) +
                           ") out of range");
    }
    if (a == b) throw ParameterError("pattern has a loop at vertex " + std::to_string(a));
    if (a > b) std::swap(a, b);
    if (adjacency_[a] >> b & 1u) {
      throw ParameterError("pattern has duplicate edge (" + std::to_string(a) + "," +
                           std::to_string(b) + ")");
    }
    adjacency_[a] |= 1u << b;
    adjacency_[b] |= 1u << a;
    edges_.emplace_back(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
}

int PatternGraph::degree(int a) const noexcept { return std::popcount(adjacency_[a]); }

int PatternGraph::induced_edge_count(std::uint32_t mask) const noexcept {
  int twice = 0;
  for (std::uint32_t m = mask; m != 0; m &= m - 1) {
    twice += std::popcount(adjacency_[std::countr_zero(m)] & mask);
  }
  return twice / 2;
}

PatternGraph PatternGraph::induced(std::uint32_t mask) const {
  std::vector<int> relabel(vertex_count_, -1);
  int next = 0;
  for (int a = 0; a < vertex_count_; ++a) {
    if (mask >> a & 1u) relabel[a] = next++;
  }
  std::vector<VertexPair> sub;
  for (auto [a, b] : edges_) {
    if (relabel[a] >= 0 && relabel[b] >= 0) sub.emplace_back(relabel[a], relabel[b]);
  }
  return PatternGraph(next, std::move(sub), name_ + "[induced]");
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

PatternGraph cycle(int r) {
  require(r >= 3, "cycle C_r needs r >= 3");
  std::vector<PatternGraph::VertexPair> e;
  for (int i = 0; i < r; ++i) e.emplace_back(i, (i + 1) % r);
  return PatternGraph(r, std::move(e), "C" + std::to_string(r));
}

PatternGraph complete(int r) {
  require(r >= 1, "complete K_r needs r >= 1");
  std::vector<PatternGraph::VertexPair> e;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) e.emplace_back(i, j);
  return PatternGraph(r, std::move(e), "K" + std::to_string(r));
}

PatternGraph complete_bipartite(int a, int b) {
  require(a >= 1 && b >= 1, "complete bipartite K_{a,b} needs a, b >= 1");
  std::vector<PatternGraph::VertexPair> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return PatternGraph(a + b, std::move(e),
                      "K_{" + std::to_string(a) + "," + std::to_string(b) + "}");
}

PatternGraph hypercube(int d) {
  require(d >= 1 && d <= 5, "hypercube Q_d needs 1 <= d <= 5");
  const int v = 1 << d;
  std::vector<PatternGraph::VertexPair> e;
  for (int x = 0; x < v; ++x)
    for (int bit = 0; bit < d; ++bit) {
      const int y = x ^ (1 << bit);
      if (x < y) e.emplace_back(x, y);
    }
  return PatternGraph(v, std::move(e), "Q" + std::to_string(d));
}

PatternGraph paw() {
  return PatternGraph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}, "paw");
}

int parse_int(const std::string& s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParameterError("not an integer: '" + s + "'");
  }
  return value;
}

}  // namespace

PatternGraph make_catalog(std::string_view family, std::span<const int> params) {
  auto arity = [&](std::size_t k) {
    require(params.size() == k, "catalog family '" + std::string(family) + "' takes " +
                                    std::to_string(k) + " parameter(s)");
  };
  if (family == "C") {
    arity(1);
    return cycle(params[0]);
  }
  if (family == "K") {
    arity(1);
    return complete(params[0]);
  }
  if (family == "Kab") {
    arity(2);
    return complete_bipartite(params[0], params[1]);
  }
  if (family == "Q") {
    arity(1);
    return hypercube(params[0]);
  }
  if (family == "star") {
    arity(1);
    return complete_bipartite(1, params[0]);
  }
  if (family == "paw") {
    arity(0);
    return paw();
  }
  throw ParameterError("unknown catalog family '" + std::string(family) + "'");
}

PatternGraph parse_pattern_name(std::string_view spec) {
  static const std::regex single(R"(^(K|C|Q|star)_?\{?(\d+)\}?$)");
  static const std::regex pair(R"(^K_?\{(\d+),(\d+)\}$)");
  const std::string s(spec);
  std::smatch m;
  if (s == "paw") return paw();
  if (std::regex_match(s, m, pair)) {
    const int a = parse_int(m[1]);
    const int b = parse_int(m[2]);
    return make_catalog("Kab", std::vector<int>{a, b});
  }
  if (std::regex_match(s, m, single)) {
    const int r = parse_int(m[2]);
    return make_catalog(m[1].str(), std::vector<int>{r});
  }
  throw ParameterError("unknown pattern name '" + s + "'");
}

PatternGraph parse_pattern_text(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  std::string line;
  int vertex_count = -1;
  std::vector<PatternGraph::VertexPair> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (vertex_count < 0) {
      if (!(ls >> vertex_count)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ParameterError("pattern file line " + std::to_string(line_no) +
                             ": expected vertex count");
      }
      continue;
    }
    int a = 0, b = 0;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) {
      throw ParameterError("pattern file line " + std::to_string(line_no) + ": expected 'u v'");
    }
    edges.emplace_back(a, b);
  }
  if (vertex_count < 0) throw ParameterError("pattern file is empty");
  return PatternGraph(vertex_count, std::move(edges), std::move(name));
}

PatternGraph read_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open pattern file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_pattern_text(buf.str(), path);
}

PatternGraph load_pattern(const std::string& spec) {
  try {
    return parse_pattern_name(spec);
  } catch (const ParameterError&) {
    std::ifstream probe(spec);
    if (!probe) throw ParameterError("'" + spec + "' is neither a catalog pattern nor a readable file");
  }
  return read_pattern_file(spec);
}

bool is_regular(const PatternGraph& h) {
  for (int a = 1; a < h.vertex_count(); ++a) {
    if (h.degree(a) != h.degree(0)) return false;
  }
  return true;
}

Rational two_density(const PatternGraph& f) {
  if (f.vertex_count() < 3) {
    throw DomainError("2-density needs at least 3 vertices, got " +
                      std::to_string(f.vertex_count()));
  }
  return Rational(f.edge_count() - 1) / Rational(f.vertex_count() - 2);
}

namespace {

constexpr int kMaxBalanceVertices = 24;

// (v_F - 2) - (e_F - 1) * (v_H - 2) / (e_H - 1)
Rational gap_of(int vf, int ef, int vh, int eh) {
  return Rational(vf - 2) - Rational(ef - 1) * Rational(vh - 2) / Rational(eh - 1);
}

}  // namespace

BalanceReport is_strictly_two_balanced(const PatternGraph& h) {
  BalanceReport report;
  report.is_regular = is_regular(h);
  const int vh = h.vertex_count();
  const int eh = h.edge_count();
  if (!h.admissible()) {
    report.reason = "inadmissible: strict 2-balance needs v_H >= 3 and e_H >= 3 (got v_H=" +
                    std::to_string(vh) + ", e_H=" + std::to_string(eh) + ")";
    if (vh >= 3) report.two_density = two_density(h);
    return report;
  }
  if (vh > kMaxBalanceVertices) {
    throw CapabilityError("strict 2-balance check enumerates 2^v_H vertex subsets; v_H <= " +
                          std::to_string(kMaxBalanceVertices) + " supported");
  }
  report.two_density = two_density(h);

  // Spanning proper subgraphs: H minus one edge is the densest.
  Rational best_gap = gap_of(vh, eh - 1, vh, eh);
  std::optional<SubgraphWitness> best_witness;
  Rational best_density = Rational(eh - 2) / Rational(vh - 2);
  std::uint32_t best_mask = 0;

  // Induced subgraphs on 3..v_H-1 vertices; visited by size so ties keep the smallest F.
  const std::uint64_t limit = std::uint64_t{1} << vh;
  for (int size = 3; size < vh; ++size) {
    // Gosper's hack: successive masks with exactly `size` bits.
    for (std::uint64_t m = (std::uint64_t{1} << size) - 1; m < limit;) {
      const auto mask = static_cast<std::uint32_t>(m);
      const int ef = h.induced_edge_count(mask);
      const Rational gap = gap_of(size, ef, vh, eh);
      if (gap < best_gap) best_gap = gap;
      const Rational density = Rational(ef - 1) / Rational(size - 2);
      if (best_mask == 0 || density > best_density) {
        best_density = density;
        best_mask = mask;
      }
      const std::uint64_t low = m & (~m + 1);
      const std::uint64_t ripple = m + low;
      m = (((ripple ^ m) >> 2) / low) | ripple;
    }
  }
  report.epsilon_gap = best_gap;
  report.is_strictly_two_balanced = best_gap > 0;
  if (!report.is_strictly_two_balanced) {
    SubgraphWitness w;
    for (int a = 0; a < vh; ++a)
      if (best_mask >> a & 1u) w.vertices.push_back(a);
    for (auto [a, b] : h.edges())
      if ((best_mask >> a & 1u) && (best_mask >> b & 1u)) w.edges.emplace_back(a, b);
    report.witness = std::move(w);
    report.reason = "proper subgraph on " + std::to_string(std::popcount(best_mask)) +
                    " vertices has 2-density " + to_string(best_density) + " >= " +
                    to_string(*report.two_density);
  } else {
    report.reason = "every proper subgraph with >= 3 vertices is strictly sparser";
  }
  return report;
}

Rational epsilon_gap(const PatternGraph& h) {
  const BalanceReport r = is_strictly_two_balanced(h);
  if (!r.is_strictly_two_balanced) {
    throw DomainError("epsilon gap is defined only for strictly 2-balanced patterns: " + r.reason);
  }
  return *r.epsilon_gap;
}

std::vector<std::vector<int>> automorphisms(const PatternGraph& h, std::size_t limit) {
  const int v = h.vertex_count();
  std::vector<std::vector<int>> out;
  std::vector<int> perm(v, -1);
  std::uint32_t used = 0;
  auto extend = [&](auto&& self, int i) -> void {
    if (i == v) {
      if (out.size() == limit) throw CapabilityError("more than " + std::to_string(limit) + " automorphisms");
      out.push_back(perm);
      return;
    }
    for (int c = 0; c < v; ++c) {
      if (used >> c & 1u) continue;
      if (h.degree(c) != h.degree(i)) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = h.adjacent(i, j) == h.adjacent(c, perm[j]);
      if (!ok) continue;
      perm[i] = c;
      used |= 1u << c;
      self(self, i + 1);
      used &= ~(1u << c);
    }
    perm[i] = -1;
  };
  extend(extend, 0);
  return out;
}

std::uint64_t automorphism_count(const PatternGraph& h) {
  if (h.vertex_count() > kMaxAutomorphismVertices) {
    throw CapabilityError("automorphism_count supports v_H <= " +
                          std::to_string(kMaxAutomorphismVertices) + ", got " +
                          std::to_string(h.vertex_count()));
  }
  return automorphisms(h).size();
}

}  // namespace hfree
