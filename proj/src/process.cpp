#include "hfree/process.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>

#include "hfree/error.hpp"

namespace hfree {

namespace {

bool connected(const PatternGraph& p) {
  const int v = p.vertex_count();
  std::uint32_t seen = 1u, frontier = 1u;
  while (frontier != 0) {
    std::uint32_t next = 0;
    for (int x = 0; x < v; ++x)
      if (frontier >> x & 1u) next |= p.neighbor_mask(x);
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (v == 32 ? ~0u : (1u << v) - 1);
}

// Non-edges that would close a copy of H, kept up to date as edges are
// accepted: each embedding of H - g through the new edge marks the image of g.
// Since the graph only grows, a marked pair stays closed.
class ClosureMarker {
 public:
  static constexpr std::uint32_t kMaxVertices = 16384;

  static std::optional<ClosureMarker> make(const PatternGraph& h, std::uint32_t n) {
    if (n < 16 || n > kMaxVertices || h.edge_count() < 2) return std::nullopt;
    // One missing edge per orbit of Aut(H) on edges.
    std::vector<PatternGraph::VertexPair> reps;
    try {
      const auto autos = automorphisms(h, 100000);
      std::set<PatternGraph::VertexPair> covered;
      for (auto [a, b] : h.edges()) {
        if (covered.contains({a, b})) continue;
        reps.emplace_back(a, b);
        for (const auto& p : autos) covered.insert(std::minmax(p[a], p[b]));
      }
    } catch (const CapabilityError&) {
      reps = h.edges();
    }
    ClosureMarker m(n);
    for (auto g : reps) {
      std::vector<PatternGraph::VertexPair> rest;
      for (auto e : h.edges())
        if (e != g) rest.push_back(e);
      PatternGraph minus(h.vertex_count(), std::move(rest));
      if (!connected(minus)) return std::nullopt;
      m.searches_.emplace_back(std::move(minus));
      m.missing_.push_back(g);
    }
    return m;
  }

  bool closed(Edge e) const noexcept {
    const EdgeId id = index_.id(e);
    return bits_[id >> 6] >> (id & 63) & 1u;
  }

  void accept(const EvolvingGraph& g, Edge e) {
    for (std::size_t i = 0; i < searches_.size(); ++i) {
      const auto [p, q] = missing_[i];
      searches_[i].for_each_embedding(g, e, [&](std::span<const Vertex> image) {
        const EdgeId id = index_.id(Edge(image[p], image[q]));
        bits_[id >> 6] |= std::uint64_t{1} << (id & 63);
        return true;
      });
    }
  }

 private:
  explicit ClosureMarker(std::uint32_t n) : index_(n), bits_((index_.size() + 63) / 64, 0) {}

  EdgeIndex index_;
  std::vector<std::uint64_t> bits_;
  std::vector<CopySearch> searches_;
  std::vector<PatternGraph::VertexPair> missing_;
};

}  // namespace

ProcessTrace run_process(std::uint32_t n, const CopySearch& search, std::span<const TimedEdge> order,
                         const ProcessOptions& options) {
  ProcessTrace trace{EvolvingGraph(n), {}, 0, 0};
  if (options.record_steps) trace.steps.reserve(order.size());
  EdgeSet witness;
  std::optional<ClosureMarker> marker = ClosureMarker::make(search.pattern(), n);
  for (const TimedEdge& step : order) {
    if (step.beta >= options.horizon) break;
    ++trace.traversed;
    EdgeSet* want = options.record_witnesses ? &witness : nullptr;
    bool closes;
    if (marker && !want) {
      if (trace.graph.has_edge(step.edge)) throw PreconditionError("edge traversed twice");
      closes = marker->closed(step.edge);
    } else {
      closes = search.creates_copy(trace.graph, step.edge, want);
    }
    if (!closes) {
      trace.graph.add_edge(step.edge);
      if (marker) marker->accept(trace.graph, step.edge);
      ++trace.accepted;
    }
    if (options.record_steps) {
      StepRecord rec{step, !closes, std::nullopt};
      if (closes && options.record_witnesses) {
        witness.erase(std::remove(witness.begin(), witness.end(), step.edge), witness.end());
        rec.witness = witness;
      }
      trace.steps.push_back(std::move(rec));
    }
  }
  return trace;
}

ProcessTrace run_process(std::uint32_t n, const PatternGraph& h, const Birthtimes& b,
                         const ProcessOptions& options) {
  if (b.vertex_count() != n) {
    throw PreconditionError("birthtimes are over K_" + std::to_string(b.vertex_count()) +
                            ", process asked for n=" + std::to_string(n));
  }
  const CopySearch search(h);
  const auto order = traversal_order(b);
  return run_process(n, search, order, options);
}

namespace {

// BFS order over H starting at `first` (then `second` if given); vertices of
// other components follow in index order.
std::vector<int> bfs_order(const PatternGraph& h, int first, int second) {
  const int v = h.vertex_count();
  std::vector<int> order;
  std::vector<bool> seen(v, false);
  auto push = [&](int x) {
    if (x >= 0 && !seen[x]) {
      seen[x] = true;
      order.push_back(x);
    }
  };
  push(first);
  push(second);
  for (std::size_t head = 0; order.size() < static_cast<std::size_t>(v); ++head) {
    if (head == order.size()) {
      for (int x = 0; x < v; ++x)
        if (!seen[x]) {
          push(x);
          break;
        }
    }
    for (int y = 0; y < v; ++y)
      if (h.adjacent(order[head], y)) push(y);
  }
  return order;
}

struct NaiveSearch {
  const EvolvingGraph& g;
  const PatternGraph& h;
  std::optional<Edge> through;
  std::vector<int> order;
  std::array<Vertex, PatternGraph::kMaxVertices> image{};
  std::array<bool, PatternGraph::kMaxVertices> placed{};

  bool linked(Vertex a, Vertex b) const {
    if (through && Edge(a, b) == *through) return true;
    return g.has_edge(a, b);
  }

  bool fits(int hv, Vertex w) const {
    for (int q = 0; q < h.vertex_count(); ++q) {
      if (!placed[q]) continue;
      if (image[q] == w) return false;
      if (h.adjacent(q, hv) && !linked(image[q], w)) return false;
    }
    return true;
  }

  bool extend(std::size_t pos) {
    if (pos == order.size()) return true;
    const int hv = order[pos];
    for (Vertex w = 0; w < g.vertex_count(); ++w) {
      if (!fits(hv, w)) continue;
      image[hv] = w;
      placed[hv] = true;
      if (extend(pos + 1)) return true;
      placed[hv] = false;
    }
    return false;
  }

  EdgeSet edges() const {
    EdgeSet out;
    for (auto [a, b] : h.edges()) out.emplace_back(image[a], image[b]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

}  // namespace

std::optional<EdgeSet> find_copy_naive(const EvolvingGraph& g, const PatternGraph& h,
                                       std::optional<Edge> through) {
  if (static_cast<std::uint32_t>(h.vertex_count()) > g.vertex_count()) return std::nullopt;
  NaiveSearch s{g, h, through, {}, {}, {}};
  if (!through) {
    s.order = bfs_order(h, 0, -1);
    if (s.extend(0)) return s.edges();
    return std::nullopt;
  }
  const Edge f = *through;
  for (auto [x, y] : h.edges()) {
    for (int flip = 0; flip < 2; ++flip) {
      const int hx = flip ? y : x;
      const int hy = flip ? x : y;
      s.placed.fill(false);
      s.image[hx] = f.u;
      s.image[hy] = f.v;
      s.placed[hx] = s.placed[hy] = true;
      s.order = bfs_order(h, hx, hy);
      if (s.extend(2)) return s.edges();
    }
  }
  return std::nullopt;
}

bool verify_maximal(const EvolvingGraph& g, const PatternGraph& h) {
  if (find_copy_naive(g, h)) return false;
  const std::uint32_t n = g.vertex_count();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) {
      if (g.has_edge(a, b)) continue;
      if (!find_copy_naive(g, h, Edge(a, b))) return false;
    }
  return true;
}

}  // namespace hfree
