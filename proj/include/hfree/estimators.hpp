#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hfree/bad_sequence.hpp"
#include "hfree/birthtimes.hpp"
#include "hfree/params.hpp"
#include "hfree/pattern.hpp"
#include "hfree/stats.hpp"
#include "hfree/survival_tree.hpp"

namespace hfree {

/// Replicate i uses stream derive_seed(seed, i).
RunStats estimate_expected_edges(std::uint32_t n, const PatternGraph& h, std::size_t reps, std::uint64_t seed,
                                 unsigned workers = default_workers());

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;  // from the per-point standard errors if given, else residuals
  double band_low = 0.0;  // slope -/+ 1.96 se
  double band_high = 0.0;
  double r_squared = 1.0;
  std::size_t points = 0;
  bool propagated = false;  // slope_se came from per-point standard errors
};

/// Least squares of ln(mean) on ln(n). Optional std_errors are the standard
/// errors of the means; they enter through the delta method.
FitResult fit_exponent(std::span<const std::pair<double, double>> points,
                       std::span<const double> std_errors = {});

struct SweepPoint {
  std::uint32_t n = 0;
  RunStats stats;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  FitResult fit;
  double reference_exponent = 0.0;  // 2 - (v_H-2)/(e_H-1)
};

/// Replicate i at size n uses stream derive_seed(derive_seed(seed, n), i).
SweepResult sweep(std::span<const std::uint32_t> ns, const PatternGraph& h, std::size_t reps, std::uint64_t seed,
                  unsigned workers = default_workers());

struct InclusionPoint {
  double multiplier = 0.0;
  double threshold = 0.0;  // multiplier * unit
  Summary indicator;       // 1[f in M] with beta(f) = u * threshold
  Summary smoothed;        // min(1, m* / threshold), same expectation
};

struct InclusionResult {
  std::uint32_t n = 0;
  Edge f;
  double unit = 0.0;
  std::size_t reps = 0;
  std::vector<InclusionPoint> points;  // ascending multiplier
  std::vector<double> m_star;          // per replicate
  std::vector<double> u;               // per replicate
  /// Each estimate at a larger threshold stays below the previous CI's upper end.
  bool non_increasing = true;
  /// max/min of multiplier * estimate over the points.
  double spread = 1.0;
};

/// Pr[f in M_n(H) | beta(f) < x unit] for every x, from common random
/// numbers: the other edges are sampled once per replicate (only up to the
/// largest threshold), the process runs without f, and m* is the earliest
/// time some copy of H - f is complete in it. f is kept iff beta(f) < m*.
/// unit defaults to n^{-(v_H-2)/(e_H-1)}.
InclusionResult estimate_conditional_inclusion(std::uint32_t n, const PatternGraph& h,
                                               std::span<const double> multipliers, std::size_t reps,
                                               std::uint64_t seed, unsigned workers = default_workers(),
                                               std::optional<double> unit = std::nullopt);

struct MomentCheck {
  double closed_form = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double z = 0.0;
};

/// E[prod_{j=2}^{t+1} (prod_{i<j} x_i)^{e_H-1}] over i.i.d. uniforms, against
/// 1 / prod_{m=1}^{t} (m(e_H-1)+1).
MomentCheck nested_uniform_moment_check(int e_h, int t, std::size_t samples, std::uint64_t seed);

/// A sampled G(n,rho) with two-phase birthtimes, where the root edge
/// f = {0,1} has beta(f) uniform on [0, theta) (so f is in the host).
struct SampledHost {
  Birthtimes b;
  EvolvingGraph host;
  Edge f;
};

SampledHost sample_host(std::uint32_t n, double rho, double theta, Rng& rng);

/// c n^{-(v_H-2)/(e_H-1)}, checked against rho.
double root_window(const AsymptoticParams& p);

struct TvsRT {
  std::size_t reps = 0;
  std::size_t skipped = 0;  // RT target infeasible on the sampled tree
  std::int64_t target = 0;
  Summary not_b_t;   // Pr[not B(T)] over non-skipped replicates
  Summary not_b_rt;  // Pr[not B(RT)] over the same replicates
  double ratio = 1.0;  // not_b_rt / not_b_t
  std::size_t capped = 0;  // trees over the node cap (also skipped)
};

TvsRT compare_T_RT(std::uint32_t n, const PatternGraph& h, const AsymptoticParams& params, int depth,
                   std::size_t reps, std::uint64_t seed, unsigned workers = default_workers(),
                   std::optional<std::int64_t> target = std::nullopt, const TreeCaps& caps = {});

struct SoundnessReport {
  std::size_t instances = 0;
  std::size_t good_trees = 0;
  std::size_t capped = 0;
  std::uint64_t even_checks = 0;      // interior nodes at even height >= 2 with B true
  std::uint64_t even_violations = 0;  // ... whose edge still landed in M
  std::size_t root_checks = 0;        // roots with B false (odd D only)
  std::size_t root_violations = 0;    // ... with f not in M
  std::size_t root_in_m = 0;          // f in M overall
};

/// Runs the full process on each sampled instance and checks both survival
/// implications against the actual outcome.
SoundnessReport survival_soundness(std::uint32_t n, const PatternGraph& h, const AsymptoticParams& params,
                                   int depth, std::size_t reps, std::uint64_t seed,
                                   unsigned workers = default_workers(), const TreeCaps& caps = {});

struct E3Report {
  std::size_t hosts = 0;
  std::size_t e3_hosts = 0;       // no bad sequence (search complete)
  std::size_t undecided = 0;      // search hit its state cap with none found
  std::size_t good_given_e3 = 0;
  std::size_t counterexamples = 0;  // E3 yet not good
  std::size_t good_overall = 0;
  std::size_t capped = 0;
  std::optional<std::uint64_t> first_counterexample_seed;
};

E3Report e3_implies_good(std::uint32_t n, const PatternGraph& h, double rho, int depth, std::size_t reps,
                         std::uint64_t seed, unsigned workers = default_workers(),
                         std::optional<std::int64_t> deficit_threshold = std::nullopt,
                         const BadSequenceOptions& search = {}, const TreeCaps& caps = {});

struct ConflictReport {
  std::size_t instances = 0;  // exact instances checked
  std::size_t skipped = 0;    // |Lambda| above the exact limit
  std::size_t violations = 0;
  std::size_t max_lambda = 0;
  std::size_t nontrivial = 0;  // instances with W3 > 0
};

/// Samples G(n,rho) and checks the conflict bound at the edge {0,1}.
ConflictReport conflict_audit(std::uint32_t n, const PatternGraph& h, double rho, std::size_t reps,
                              std::uint64_t seed, unsigned workers = default_workers(),
                              std::size_t exact_limit = 60);

}  // namespace hfree
