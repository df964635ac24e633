#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hfree/graph.hpp"
#include "hfree/pattern.hpp"

namespace hfree {

/// Lambda(f): every edge set G of the host with f not in G and G + f a copy of H.
struct ExtensionSet {
  Edge anchor;
  std::vector<EdgeSet> members;  // each sorted; list sorted and duplicate-free

  std::size_t size() const noexcept { return members.size(); }
  bool empty() const noexcept { return members.empty(); }
};

/// Embedding search for copies of H through a fixed edge f = {a, b}.
///
/// One plan is kept per orbit of Aut(H) on ordered edges (arcs): the arc is
/// pinned onto (a, b) and the remaining H-vertices are placed greedily in the
/// order that maximizes already-placed neighbors, so every candidate after
/// the first few comes from a neighbor-list or bit-row intersection. Every
/// copy through f is reached from some orbit representative, so the search
/// is complete. Only host edges other than f are ever tested, so f may or
/// may not be present in the host.
class CopySearch {
 public:
  explicit CopySearch(PatternGraph h);

  const PatternGraph& pattern() const noexcept { return h_; }
  std::size_t plan_count() const noexcept { return plans_.size(); }

  /// True iff host + f contains a copy of H using f. `witness` receives that
  /// copy's e_H edges (f included). Throws PreconditionError if f is in host.
  bool creates_copy(const EvolvingGraph& host, Edge f, EdgeSet* witness = nullptr) const;

  /// Same search without the f-not-in-host precondition.
  bool has_extension(const EvolvingGraph& host, Edge f, EdgeSet* witness = nullptr) const;

  ExtensionSet extensions(const EvolvingGraph& host, Edge f) const;

  /// Calls `visit(image)` for every embedding with some arc plan pinned on f;
  /// image[i] is the host vertex of H-vertex i. Return false to stop early.
  /// The same copy may be visited several times.
  void for_each_embedding(const EvolvingGraph& host, Edge f,
                          const std::function<bool(std::span<const Vertex>)>& visit) const;

 private:
  struct Plan {
    std::vector<int> order;  // order[0], order[1] are the pinned arc
    std::vector<std::vector<int>> constraints;  // per position: earlier adjacent positions
  };

  template <class Visit>
  bool search(const EvolvingGraph& host, Edge f, Visit&& visit) const;

  EdgeSet copy_edges(std::span<const Vertex> image, const Plan& plan, bool include_anchor) const;

  PatternGraph h_;
  std::vector<Plan> plans_;
};

bool creates_copy(const EvolvingGraph& g, Edge f, const PatternGraph& h, EdgeSet* witness = nullptr);
ExtensionSet enumerate_extensions(const EvolvingGraph& g, Edge f, const PatternGraph& h);

}  // namespace hfree
