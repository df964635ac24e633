#pragma once

#include <cstddef>
#include <vector>

#include "hfree/graph.hpp"
#include "hfree/pattern.hpp"

namespace hfree {

/// A chain (G_1, ..., G_d) of copies. Every G_j completes H with some edge g
/// of the prior union {f} u G_1 u ... u G_{j-1}. Each G_j with j < d meets
/// that union in exactly 2 vertices and no edges. G_d meets it in at least 3
/// vertices and at most e_H - 2 edges.
struct BadSequence {
  std::vector<EdgeSet> copies;
  std::vector<Edge> anchors;  // the g used for each G_j
  std::size_t shared_vertices = 0;  // of G_d with the prior union
  std::size_t shared_edges = 0;
  /// H_S = {g_d} u (G_d n prior union) as an abstract graph (the F-type).
  PatternGraph f_type;
  /// 1 when G_d shares no edge with the prior union, 2 otherwise.
  int kind = 1;

  std::size_t length() const noexcept { return copies.size(); }
};

struct BadSequenceOptions {
  std::size_t max_len = 10;  // 2D
  /// Distinct prefix sets explored before giving up.
  std::size_t state_cap = 200'000;
  /// Bad sequences recorded before stopping.
  std::size_t report_cap = 64;
};

struct BadSequenceResult {
  std::vector<BadSequence> sequences;
  std::size_t states_explored = 0;
  bool partial = false;  // the state cap stopped the search early
  bool truncated = false;  // report_cap reached; more sequences may exist

  /// No bad sequence at this root. Decided unless partial with none found.
  bool e3() const noexcept { return sequences.empty(); }
  bool decided() const noexcept { return !partial || !sequences.empty(); }
};

/// Exhaustive search for bad sequences rooted at f inside host. f is treated
/// as present. Prefixes are explored once per set of copies (the union, and
/// so every later step, depends only on the set).
BadSequenceResult find_bad_sequences(const EvolvingGraph& host, Edge f, const PatternGraph& h,
                                     const BadSequenceOptions& options = {});

/// Relabels an edge set onto 0..k-1 as a PatternGraph.
PatternGraph edge_set_graph(const EdgeSet& edges, const std::string& name = "F");

}  // namespace hfree
