#include "hfree/estimators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "hfree/conflict.hpp"
#include "hfree/copy_search.hpp"
#include "hfree/error.hpp"
#include "hfree/process.hpp"

namespace hfree {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double exponent_of(const PatternGraph& h) {
  return static_cast<double>(h.vertex_count() - 2) / (h.edge_count() - 1);
}

RunStats edges_at(std::uint32_t n, const CopySearch& search, std::size_t reps, std::uint64_t stream_seed,
                  unsigned workers) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> seeds(reps);
  for (std::size_t i = 0; i < reps; ++i) seeds[i] = derive_seed(stream_seed, i);
  ProcessOptions opt;
  opt.record_steps = false;
  auto values = run_indexed<double>(reps, workers, [&](std::size_t i) {
    Rng rng(seeds[i]);
    const Birthtimes b = sample_birthtimes(n, rng);
    const auto order = traversal_order(b);
    return static_cast<double>(run_process(n, search, order, opt).accepted);
  });
  return make_run_stats(std::move(values), std::move(seeds), stream_seed, seconds_since(t0));
}

}  // namespace

RunStats estimate_expected_edges(std::uint32_t n, const PatternGraph& h, std::size_t reps, std::uint64_t seed,
                                 unsigned workers) {
  if (reps < 1) throw ParameterError("reps must be >= 1");
  const CopySearch search(h);
  RunStats r = edges_at(n, search, reps, seed, workers);
  r.master_seed = seed;
  return r;
}

FitResult fit_exponent(std::span<const std::pair<double, double>> points, std::span<const double> std_errors) {
  if (points.size() < 3) throw ParameterError("fit_exponent needs at least 3 points");
  if (!std_errors.empty() && std_errors.size() != points.size()) {
    throw ParameterError("fit_exponent: std_errors must match the points");
  }
  const std::size_t m = points.size();
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto [n, mean] = points[i];
    if (!(n > 0.0) || !(mean > 0.0) || !std::isfinite(n) || !std::isfinite(mean)) {
      throw ParameterError("fit_exponent needs positive finite n and means");
    }
    x[i] = std::log(n);
    y[i] = std::log(mean);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw ParameterError("fit_exponent needs at least two distinct n");

  FitResult f;
  f.points = m;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    rss += r * r;
  }
  f.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  if (!std_errors.empty()) {
    double var = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double w = (x[i] - mx) / sxx;
      const double rel = std_errors[i] / points[i].second;
      var += w * w * rel * rel;
    }
    f.slope_se = std::sqrt(var);
    f.propagated = true;
  } else {
    f.slope_se = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
  }
  f.band_low = f.slope - 1.96 * f.slope_se;
  f.band_high = f.slope + 1.96 * f.slope_se;
  return f;
}

SweepResult sweep(std::span<const std::uint32_t> ns, const PatternGraph& h, std::size_t reps, std::uint64_t seed,
                  unsigned workers) {
  if (reps < 1) throw ParameterError("reps must be >= 1");
  const CopySearch search(h);
  SweepResult out;
  out.reference_exponent = 2.0 - exponent_of(h);
  std::vector<std::pair<double, double>> pts;
  std::vector<double> ses;
  for (std::uint32_t n : ns) {
    RunStats r = edges_at(n, search, reps, derive_seed(seed, n), workers);
    pts.emplace_back(n, r.summary.mean);
    ses.push_back(r.summary.std_error);
    out.points.push_back({n, std::move(r)});
  }
  out.fit = fit_exponent(pts, ses);
  return out;
}

InclusionResult estimate_conditional_inclusion(std::uint32_t n, const PatternGraph& h,
                                               std::span<const double> multipliers, std::size_t reps,
                                               std::uint64_t seed, unsigned workers, std::optional<double> unit) {
  if (reps < 1) throw ParameterError("reps must be >= 1");
  if (multipliers.empty()) throw ParameterError("at least one threshold multiplier is required");
  if (n < 2) throw ParameterError("n must be >= 2");
  InclusionResult res;
  res.n = n;
  res.f = Edge(0, 1);
  res.reps = reps;
  res.unit = unit.value_or(std::pow(static_cast<double>(n), -exponent_of(h)));
  std::vector<double> xs(multipliers.begin(), multipliers.end());
  std::sort(xs.begin(), xs.end());
  for (double x : xs) {
    const double theta = x * res.unit;
    if (!(theta > 0.0)) throw ParameterError("thresholds must be positive");
    if (theta > 1.0) {
      throw ParameterError("threshold " + std::to_string(x) + " * n^{-(v_H-2)/(e_H-1)} = " +
                           std::to_string(theta) + " exceeds 1");
    }
  }
  const double theta_max = xs.back() * res.unit;
  const CopySearch search(h);

  struct Draw {
    double m_star = 0, u = 0;
  };
  auto draws = run_indexed<Draw>(reps, workers, [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    std::vector<TimedEdge> prefix = sample_prefix(n, theta_max, rng);
    prefix.erase(std::remove_if(prefix.begin(), prefix.end(), [&](const TimedEdge& t) { return t.edge == res.f; }),
                 prefix.end());
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    ProcessOptions opt;
    opt.record_steps = true;
    const ProcessTrace trace = run_process(n, search, prefix, opt);
    std::unordered_map<std::uint64_t, double> born;
    born.reserve(trace.accepted * 2);
    for (const StepRecord& s : trace.steps)
      if (s.accepted) born.emplace(std::uint64_t{s.edge.edge.u} << 32 | s.edge.edge.v, s.edge.beta);
    double m_star = std::numeric_limits<double>::infinity();
    for (const EdgeSet& g : search.extensions(trace.graph, res.f).members) {
      double last = 0.0;
      for (const Edge& e : g) last = std::max(last, born.at(std::uint64_t{e.u} << 32 | e.v));
      m_star = std::min(m_star, last);
    }
    return Draw{m_star, u};
  });

  for (const Draw& d : draws) {
    res.m_star.push_back(d.m_star);
    res.u.push_back(d.u);
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double x : xs) {
    const double theta = x * res.unit;
    std::vector<double> ind(reps), smooth(reps);
    for (std::size_t i = 0; i < reps; ++i) {
      ind[i] = draws[i].u * theta < draws[i].m_star ? 1.0 : 0.0;
      smooth[i] = std::min(1.0, draws[i].m_star / theta);
    }
    InclusionPoint p{x, theta, summarize(ind), summarize(smooth)};
    if (!res.points.empty() && p.indicator.mean > res.points.back().indicator.ci_high()) res.non_increasing = false;
    lo = std::min(lo, x * p.indicator.mean);
    hi = std::max(hi, x * p.indicator.mean);
    res.points.push_back(p);
  }
  res.spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return res;
}

MomentCheck nested_uniform_moment_check(int e_h, int t, std::size_t samples, std::uint64_t seed) {
  if (t < 1) throw ParameterError("moment check needs depth t >= 1");
  if (samples < 1) throw ParameterError("moment check needs samples >= 1");
  if (e_h < 2) throw ParameterError("moment check needs e_H >= 2");
  MomentCheck m;
  double denom = 1.0;
  for (int i = 1; i <= t; ++i) denom *= i * (e_h - 1) + 1;
  m.closed_form = 1.0 / denom;
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> vals(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    double prefix = 1.0, value = 1.0;
    for (int j = 2; j <= t + 1; ++j) {
      prefix *= unif(rng);  // x_{j-1}
      value *= std::pow(prefix, e_h - 1);
    }
    vals[s] = value;
  }
  const Summary s = summarize(vals);
  m.estimate = s.mean;
  m.std_error = s.std_error;
  m.z = s.std_error > 0.0 ? (s.mean - m.closed_form) / s.std_error : 0.0;
  return m;
}

SampledHost sample_host(std::uint32_t n, double rho, double theta, Rng& rng) {
  if (!(theta > 0.0 && theta <= rho)) throw ParameterError("root window must lie in (0, rho]");
  Birthtimes b = sample_two_phase(n, rho, rng);
  const Edge f(0, 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  b.set(f, unif(rng) * theta);
  EvolvingGraph host = b.phase_graph();
  return {std::move(b), std::move(host), f};
}

double root_window(const AsymptoticParams& p) {
  const double theta = static_cast<double>(p.c) * p.window_unit;
  if (!(theta > 0.0)) throw ParameterError("root window c n^{-(v_H-2)/(e_H-1)} must be positive (c >= 1)");
  if (theta > p.rho) {
    throw ParameterError("root window c n^{-(v_H-2)/(e_H-1)} = " + std::to_string(theta) +
                         " exceeds rho = " + std::to_string(p.rho) + "; need k > c");
  }
  return theta;
}

TvsRT compare_T_RT(std::uint32_t n, const PatternGraph& h, const AsymptoticParams& params, int depth,
                   std::size_t reps, std::uint64_t seed, unsigned workers, std::optional<std::int64_t> target,
                   const TreeCaps& caps) {
  if (reps < 1) throw ParameterError("reps must be >= 1");
  const double theta = root_window(params);
  TvsRT out;
  out.reps = reps;
  out.target = target.value_or(rt_outdegree(params, h));
  if (out.target < 0) throw ParameterError("RT target outdegree is negative; override it");

  enum class Outcome : int { kSkipped, kCapped, kDone };
  struct Rep {
    Outcome outcome = Outcome::kSkipped;
    double t = 0, rt = 0;
  };
  auto rows = run_indexed<Rep>(reps, workers, [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    const SampledHost s = sample_host(n, params.rho, theta, rng);
    LambdaCache lambda(s.host, h);
    Rep r;
    try {
      const SurvivalTree t = build_tree(s.f, depth, lambda, caps);
      const SurvivalTree rt = prune_to_RT(t, out.target);
      r.t = eval_B(t, s.b)[0] ? 0.0 : 1.0;
      r.rt = eval_B(rt, s.b)[0] ? 0.0 : 1.0;
      r.outcome = Outcome::kDone;
    } catch (const PartialTreeError&) {
      r.outcome = Outcome::kCapped;
    } catch (const PreconditionError&) {
      r.outcome = Outcome::kSkipped;
    }
    return r;
  });
  std::vector<double> t_vals, rt_vals;
  for (const Rep& r : rows) {
    if (r.outcome == Outcome::kDone) {
      t_vals.push_back(r.t);
      rt_vals.push_back(r.rt);
    } else {
      ++out.skipped;
      if (r.outcome == Outcome::kCapped) ++out.capped;
    }
  }
  out.not_b_t = summarize(t_vals);
  out.not_b_rt = summarize(rt_vals);
  out.ratio = out.not_b_t.mean > 0.0 ? out.not_b_rt.mean / out.not_b_t.mean
                                     : std::numeric_limits<double>::quiet_NaN();
  return out;
}

SoundnessReport survival_soundness(std::uint32_t n, const PatternGraph& h, const AsymptoticParams& params,
                                   int depth, std::size_t reps, std::uint64_t seed, unsigned workers,
                                   const TreeCaps& caps) {
  if (depth < 1) throw ParameterError("soundness check needs depth >= 1");
  const double theta = root_window(params);
  const CopySearch search(h);
  auto rows = run_indexed<SoundnessReport>(reps, workers, [&](std::size_t i) {
    SoundnessReport r;
    Rng rng = make_rng(seed, i);
    const SampledHost s = sample_host(n, params.rho, theta, rng);
    LambdaCache lambda(s.host, h);
    r.instances = 1;
    SurvivalTree t(s.f, depth);
    try {
      t = build_tree(s.f, depth, lambda, caps);
    } catch (const PartialTreeError&) {
      r.capped = 1;
      return r;
    }
    if (check_good(t, lambda).good()) r.good_trees = 1;
    const std::vector<char> b = eval_B(t, s.b);
    ProcessOptions opt;
    opt.record_steps = false;
    const ProcessTrace m = run_process(n, search, traversal_order(s.b), opt);
    for (std::size_t v = 0; v < t.size(); ++v) {
      const int id = static_cast<int>(v);
      const TreeNode& nd = t.node(id);
      if (nd.kind != NodeKind::kEdge || !t.interior(id)) continue;
      const int height = t.edge_height(id);
      if (height >= 2 && height % 2 == 0 && b[v]) {
        ++r.even_checks;
        if (m.graph.has_edge(nd.edge)) ++r.even_violations;
      }
    }
    const bool f_in = m.graph.has_edge(s.f);
    r.root_in_m = f_in ? 1 : 0;
    if (depth % 2 == 1 && !b[0]) {
      r.root_checks = 1;
      if (!f_in) r.root_violations = 1;
    }
    return r;
  });
  SoundnessReport total;
  for (const SoundnessReport& r : rows) {
    total.instances += r.instances;
    total.good_trees += r.good_trees;
    total.capped += r.capped;
    total.even_checks += r.even_checks;
    total.even_violations += r.even_violations;
    total.root_checks += r.root_checks;
    total.root_violations += r.root_violations;
    total.root_in_m += r.root_in_m;
  }
  return total;
}

E3Report e3_implies_good(std::uint32_t n, const PatternGraph& h, double rho, int depth, std::size_t reps,
                         std::uint64_t seed, unsigned workers, std::optional<std::int64_t> deficit_threshold,
                         const BadSequenceOptions& search, const TreeCaps& caps) {
  if (depth < 1) throw ParameterError("E3 audit needs depth >= 1");
  BadSequenceOptions opt = search;
  opt.max_len = 2 * static_cast<std::size_t>(depth);
  opt.report_cap = 1;
  struct Rep {
    bool capped = false, e3 = false, undecided = false, good = false;
  };
  auto rows = run_indexed<Rep>(reps, workers, [&](std::size_t i) {
    Rep r;
    Rng rng = make_rng(seed, i);
    const SampledHost s = sample_host(n, rho, rho, rng);
    LambdaCache lambda(s.host, h);
    try {
      const SurvivalTree t = build_tree(s.f, depth, lambda, caps);
      r.good = check_good(t, lambda, deficit_threshold).good();
    } catch (const PartialTreeError&) {
      r.capped = true;
      return r;
    }
    const BadSequenceResult bad = find_bad_sequences(s.host, s.f, h, opt);
    r.undecided = !bad.decided();
    r.e3 = bad.decided() && bad.e3();
    return r;
  });
  E3Report out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rep& r = rows[i];
    ++out.hosts;
    if (r.capped) {
      ++out.capped;
      continue;
    }
    if (r.good) ++out.good_overall;
    if (r.undecided) ++out.undecided;
    if (r.e3) {
      ++out.e3_hosts;
      if (r.good) {
        ++out.good_given_e3;
      } else {
        ++out.counterexamples;
        if (!out.first_counterexample_seed) out.first_counterexample_seed = derive_seed(seed, i);
      }
    }
  }
  return out;
}

ConflictReport conflict_audit(std::uint32_t n, const PatternGraph& h, double rho, std::size_t reps,
                              std::uint64_t seed, unsigned workers, std::size_t exact_limit) {
  const CopySearch search(h);
  struct Rep {
    bool skipped = false, violation = false, nontrivial = false;
    std::size_t size = 0;
  };
  auto rows = run_indexed<Rep>(reps, workers, [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    const Birthtimes b = sample_two_phase(n, rho, rng);
    const EvolvingGraph host = b.phase_graph();
    const ExtensionSet lam = search.extensions(host, Edge(0, 1));
    Rep r;
    r.size = lam.size();
    if (lam.size() > exact_limit) {
      r.skipped = true;
      return r;
    }
    const ConflictStats s = conflict_graph_stats(lam, exact_limit);
    r.violation = !s.bound_holds();
    r.nontrivial = s.w3 > 0;
    return r;
  });
  ConflictReport out;
  for (const Rep& r : rows) {
    out.max_lambda = std::max(out.max_lambda, r.size);
    if (r.skipped) {
      ++out.skipped;
      continue;
    }
    ++out.instances;
    if (r.violation) ++out.violations;
    if (r.nontrivial) ++out.nontrivial;
  }
  return out;
}

}  // namespace hfree
