#include "hfree/copy_search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <set>

#include "hfree/error.hpp"

namespace hfree {

namespace {

constexpr std::size_t kOrbitAutomorphismLimit = 200000;

}  // namespace

CopySearch::CopySearch(PatternGraph h) : h_(std::move(h)) {
  const int v = h_.vertex_count();

  std::vector<std::pair<int, int>> arcs;
  for (auto [a, b] : h_.edges()) {
    arcs.emplace_back(a, b);
    arcs.emplace_back(b, a);
  }
  std::vector<std::pair<int, int>> reps;
  try {
    const auto autos = automorphisms(h_, kOrbitAutomorphismLimit);
    std::set<std::pair<int, int>> covered;
    for (const auto& arc : arcs) {
      if (covered.contains(arc)) continue;
      reps.push_back(arc);
      for (const auto& p : autos) covered.emplace(p[arc.first], p[arc.second]);
    }
  } catch (const CapabilityError&) {
    reps = arcs;  // too symmetric to enumerate Aut(H); pin every arc
  }

  for (auto [x, y] : reps) {
    Plan plan;
    plan.order = {x, y};
    std::uint32_t placed = (1u << x) | (1u << y);
    while (static_cast<int>(plan.order.size()) < v) {
      int best = -1, best_links = -1, best_degree = -1;
      for (int c = 0; c < v; ++c) {
        if (placed >> c & 1u) continue;
        const int links = std::popcount(h_.neighbor_mask(c) & placed);
        if (links > best_links || (links == best_links && h_.degree(c) > best_degree)) {
          best = c;
          best_links = links;
          best_degree = h_.degree(c);
        }
      }
      plan.order.push_back(best);
      placed |= 1u << best;
    }
    plan.constraints.resize(v);
    for (int p = 2; p < v; ++p)
      for (int q = 0; q < p; ++q)
        if (h_.adjacent(plan.order[p], plan.order[q])) plan.constraints[p].push_back(q);
    plans_.push_back(std::move(plan));
  }
}

template <class Visit>
bool CopySearch::search(const EvolvingGraph& host, Edge f, Visit&& visit) const {
  const int v = h_.vertex_count();
  const std::uint32_t n = host.vertex_count();
  std::array<Vertex, PatternGraph::kMaxVertices> at_pos{};  // host vertex per position
  std::array<Vertex, PatternGraph::kMaxVertices> image{};   // host vertex per H-vertex

  for (const Plan& plan : plans_) {
    at_pos[0] = f.u;
    at_pos[1] = f.v;
    bool stop = false;

    auto used = [&](int upto, Vertex w) {
      for (int q = 0; q < upto; ++q)
        if (at_pos[q] == w) return true;
      return false;
    };

    auto place = [&](auto&& self, int pos) -> void {
      if (pos == v) {
        for (int q = 0; q < v; ++q) image[plan.order[q]] = at_pos[q];
        if (!visit(std::span<const Vertex>(image.data(), v), plan)) stop = true;
        return;
      }
      const auto& cons = plan.constraints[pos];
      auto try_candidate = [&](Vertex w) {
        if (used(pos, w)) return;
        at_pos[pos] = w;
        self(self, pos + 1);
      };
      if (cons.empty()) {
        for (Vertex w = 0; w < n && !stop; ++w) try_candidate(w);
        return;
      }
      // Anchor the scan on the constraint with the smallest neighborhood.
      std::size_t pick = 0;
      for (std::size_t i = 1; i < cons.size(); ++i)
        if (host.degree(at_pos[cons[i]]) < host.degree(at_pos[cons[pick]])) pick = i;
      const Vertex pivot = at_pos[cons[pick]];
      auto others_ok = [&](Vertex w, std::size_t skip_a, std::size_t skip_b) {
        for (std::size_t i = 0; i < cons.size(); ++i) {
          if (i == skip_a || i == skip_b) continue;
          if (!host.has_edge(at_pos[cons[i]], w)) return false;
        }
        return true;
      };
      if (cons.size() >= 2 && host.dense() && host.degree(pivot) > host.words_per_row()) {
        std::size_t second = pick == 0 ? 1 : 0;
        for (std::size_t i = 0; i < cons.size(); ++i)
          if (i != pick && host.degree(at_pos[cons[i]]) < host.degree(at_pos[cons[second]])) second = i;
        const auto r1 = host.row(pivot);
        const auto r2 = host.row(at_pos[cons[second]]);
        for (std::size_t word = 0; word < r1.size() && !stop; ++word) {
          for (std::uint64_t bits = r1[word] & r2[word]; bits != 0 && !stop; bits &= bits - 1) {
            const auto w = static_cast<Vertex>(word * 64 + std::countr_zero(bits));
            if (others_ok(w, pick, second)) try_candidate(w);
          }
        }
        return;
      }
      for (Vertex w : host.neighbors(pivot)) {
        if (stop) return;
        if (others_ok(w, pick, pick)) try_candidate(w);
      }
    };
    place(place, 2);
    if (stop) return false;
  }
  return true;
}

EdgeSet CopySearch::copy_edges(std::span<const Vertex> image, const Plan& plan,
                               bool include_anchor) const {
  const int x = plan.order[0], y = plan.order[1];
  EdgeSet out;
  out.reserve(h_.edges().size());
  for (auto [a, b] : h_.edges()) {
    if (!include_anchor && ((a == x && b == y) || (a == y && b == x))) continue;
    out.emplace_back(image[a], image[b]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool CopySearch::has_extension(const EvolvingGraph& host, Edge f, EdgeSet* witness) const {
  if (f.u == f.v || f.v >= host.vertex_count()) throw ParameterError("edge outside the host");
  bool found = false;
  search(host, f, [&](std::span<const Vertex> image, const Plan& plan) {
    found = true;
    if (witness) *witness = copy_edges(image, plan, true);
    return false;
  });
  return found;
}

bool CopySearch::creates_copy(const EvolvingGraph& host, Edge f, EdgeSet* witness) const {
  if (f.v < host.vertex_count() && host.has_edge(f)) {
    throw PreconditionError("creates_copy: edge (" + std::to_string(f.u) + "," +
                            std::to_string(f.v) + ") is already in the graph");
  }
  return has_extension(host, f, witness);
}

ExtensionSet CopySearch::extensions(const EvolvingGraph& host, Edge f) const {
  if (f.u == f.v || f.v >= host.vertex_count()) throw ParameterError("edge outside the host");
  ExtensionSet out{f, {}};
  search(host, f, [&](std::span<const Vertex> image, const Plan& plan) {
    out.members.push_back(copy_edges(image, plan, false));
    return true;
  });
  std::sort(out.members.begin(), out.members.end());
  out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
  return out;
}

void CopySearch::for_each_embedding(const EvolvingGraph& host, Edge f,
                                    const std::function<bool(std::span<const Vertex>)>& visit) const {
  search(host, f, [&](std::span<const Vertex> image, const Plan&) { return visit(image); });
}

bool creates_copy(const EvolvingGraph& g, Edge f, const PatternGraph& h, EdgeSet* witness) {
  return CopySearch(h).creates_copy(g, f, witness);
}

ExtensionSet enumerate_extensions(const EvolvingGraph& g, Edge f, const PatternGraph& h) {
  return CopySearch(h).extensions(g, f);
}

}  // namespace hfree
