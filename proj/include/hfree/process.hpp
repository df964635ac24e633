#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hfree/birthtimes.hpp"
#include "hfree/copy_search.hpp"
#include "hfree/graph.hpp"
#include "hfree/pattern.hpp"

namespace hfree {

struct StepRecord {
  TimedEdge edge;
  bool accepted = false;
  /// The e_H - 1 earlier accepted edges that close a copy with this edge.
  std::optional<EdgeSet> witness;
};

struct ProcessOptions {
  bool record_steps = true;
  bool record_witnesses = false;
  /// Only edges with beta < horizon are traversed (the trimmed process).
  double horizon = 2.0;
};

struct ProcessTrace {
  EvolvingGraph graph;
  std::vector<StepRecord> steps;  // traversal order; empty unless record_steps
  std::uint64_t accepted = 0;
  std::uint64_t traversed = 0;
};

/// Runs the H-free process over edges already in traversal order.
ProcessTrace run_process(std::uint32_t n, const CopySearch& search, std::span<const TimedEdge> order,
                         const ProcessOptions& options = {});

ProcessTrace run_process(std::uint32_t n, const PatternGraph& h, const Birthtimes& b,
                         const ProcessOptions& options = {});

/// Whole-graph search for any copy of H, written independently of
/// CopySearch: H-vertices are placed in a fixed BFS order and candidates come
/// from a plain scan of all host vertices. If `through` is set, only copies
/// using that edge count (the edge is treated as present).
std::optional<EdgeSet> find_copy_naive(const EvolvingGraph& g, const PatternGraph& h,
                                       std::optional<Edge> through = std::nullopt);

/// True iff g is H-free and adding any non-edge creates a copy of H.
/// Uses find_copy_naive only, so it shares no code with the process engine.
bool verify_maximal(const EvolvingGraph& g, const PatternGraph& h);

}  // namespace hfree
