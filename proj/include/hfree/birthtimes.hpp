#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "hfree/graph.hpp"

namespace hfree {

/// Replicate streams come from std::mt19937_64 seeded through SplitMix64, so
/// stream i of a master seed is fixed regardless of which worker runs it.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;
Rng make_rng(std::uint64_t master, std::uint64_t stream = 0);

struct TimedEdge {
  double beta = 0.0;
  Edge edge;

  /// Ascending birthtime; exact ties broken by edge (i.e. by edge index).
  friend bool operator<(const TimedEdge& a, const TimedEdge& b) noexcept {
    return a.beta < b.beta || (a.beta == b.beta && a.edge < b.edge);
  }
};

/// One birthtime per edge of K_n, optionally in two-phase form where the
/// edges with beta <= rho form G(n, rho).
class Birthtimes {
 public:
  Birthtimes(std::uint32_t n, std::vector<double> beta, std::optional<double> rho = std::nullopt);

  std::uint32_t vertex_count() const noexcept { return index_.vertex_count(); }
  const EdgeIndex& index() const noexcept { return index_; }
  std::uint64_t size() const noexcept { return beta_.size(); }

  double at(Edge e) const noexcept { return beta_[index_.id(e)]; }
  double at(EdgeId id) const noexcept { return beta_[id]; }
  const std::vector<double>& values() const noexcept { return beta_; }

  std::optional<double> rho() const noexcept { return rho_; }
  /// Membership in G(n, rho); every edge is in-phase for single-phase samples.
  bool in_phase(Edge e) const noexcept { return !rho_ || at(e) <= *rho_; }

  /// Overwrites one birthtime (conditioning by construction). Values must stay in [0,1].
  void set(Edge e, double beta);

  /// The in-phase edges as a graph, i.e. G(n, rho).
  EvolvingGraph phase_graph() const;

 private:
  EdgeIndex index_;
  std::vector<double> beta_;
  std::optional<double> rho_;
};

/// i.i.d. uniform birthtimes. Throws ParameterError for n < 2.
Birthtimes sample_birthtimes(std::uint32_t n, std::uint64_t seed);
Birthtimes sample_birthtimes(std::uint32_t n, Rng& rng);

/// Each edge in-phase with probability rho, then uniform on [0,rho) or (rho,1].
/// rho == 1 reproduces sample_birthtimes for the same seed.
Birthtimes sample_two_phase(std::uint32_t n, double rho, std::uint64_t seed);
Birthtimes sample_two_phase(std::uint32_t n, double rho, Rng& rng);

/// Edges sorted ascending by beta (ties by edge index). `ties`, if given,
/// receives the number of adjacent equal birthtimes.
std::vector<TimedEdge> traversal_order(const Birthtimes& b, std::size_t* ties = nullptr);

/// Only the edges with beta < horizon, in traversal order, with the same
/// joint law as the in-phase part of sample_two_phase(n, horizon). Uses
/// geometric skipping, so the cost is proportional to horizon * C(n,2).
std::vector<TimedEdge> sample_prefix(std::uint32_t n, double horizon, Rng& rng);

/// Sorts in place by (beta, edge) using a bucket pass; beta must lie in [0, scale].
void sort_timed(std::vector<TimedEdge>& edges, double scale = 1.0);

/// Debug dump: header "u,v,beta,in_phase", one row per edge in index order.
void write_birthtimes_csv(std::ostream& out, const Birthtimes& b);

}  // namespace hfree
