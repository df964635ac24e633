#include "hfree/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"

#include "hfree/bad_sequence.hpp"
#include "hfree/bounds.hpp"
#include "hfree/conflict.hpp"
#include "hfree/copy_search.hpp"
#include "hfree/error.hpp"
#include "hfree/estimators.hpp"
#include "hfree/oracle.hpp"
#include "hfree/params.hpp"
#include "hfree/pattern.hpp"
#include "hfree/process.hpp"
#include "hfree/survival_tree.hpp"
#include "hfree/trimmed.hpp"

namespace hfree::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// ---- serialization helpers -------------------------------------------------

json edge_json(Edge e) { return json::array({e.u, e.v}); }

json edges_json(const EdgeSet& s) {
  json a = json::array();
  for (const Edge& e : s) a.push_back(edge_json(e));
  return a;
}

json rational_json(const Rational& r) {
  return {{"exact", to_string(r)}, {"decimal", r.convert_to<double>()}};
}

json summary_json(const Summary& s) {
  return {{"count", s.count},         {"mean", s.mean},           {"variance", s.variance},
          {"std_error", s.std_error}, {"ci_low", s.ci_low()},     {"ci_high", s.ci_high()}};
}

json pattern_json(const PatternGraph& h) {
  json edges = json::array();
  for (auto [a, b] : h.edges()) edges.push_back({a, b});
  return {{"name", h.name()}, {"v", h.vertex_count()}, {"e", h.edge_count()}, {"edges", edges}};
}

json params_json(const AsymptoticParams& p) {
  json overrides = json::object();
  if (p.overrides.k) overrides["k"] = *p.overrides.k;
  if (p.overrides.rho) overrides["rho"] = *p.overrides.rho;
  if (p.overrides.c) overrides["c"] = *p.overrides.c;
  if (p.overrides.depth) overrides["D"] = *p.overrides.depth;
  if (p.overrides.lambda) overrides["lambda"] = *p.overrides.lambda;
  auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  return {{"n", p.n},
          {"k", p.k},
          {"rho", p.rho},
          {"lambda", num(p.lambda)},
          {"c", p.c},
          {"D", p.depth},
          {"window_unit", p.window_unit},
          {"lambda_one", num(p.lambda_one)},
          {"formula",
           {{"k", p.formula_k},
            {"rho", p.formula_rho},
            {"lambda", num(p.formula_lambda)},
            {"c", p.formula_c},
            {"D", p.formula_depth}}},
          {"overrides", overrides}};
}

json histogram_json(const auto& hist) {
  json a = json::array();
  for (const auto& [key, count] : hist) a.push_back({key, count});
  return a;
}

// ---- shared options --------------------------------------------------------

struct Common {
  std::uint64_t seed = 1;
  unsigned workers = default_workers();
  std::string out_dir;
  std::string json_path;
  bool quiet = false;
};

struct Overrides {
  double k = 0, rho = 0, lambda = 0;
  std::int64_t c = 0, depth = 0;
  CLI::Option *k_opt = nullptr, *rho_opt = nullptr, *lambda_opt = nullptr, *c_opt = nullptr, *depth_opt = nullptr;

  ParamOverrides get() const {
    ParamOverrides o;
    if (k_opt && k_opt->count()) o.k = k;
    if (rho_opt && rho_opt->count()) o.rho = rho;
    if (lambda_opt && lambda_opt->count()) o.lambda = lambda;
    if (c_opt && c_opt->count()) o.c = c;
    if (depth_opt && depth_opt->count()) o.depth = depth;
    return o;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  sub->add_option("--workers", c.workers, "Parallel replicate cap (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out-dir", c.out_dir, "Output directory (default $HFREE_OUT_DIR or .)");
  sub->add_option("--json", c.json_path, "Summary JSON path (default <out-dir>/<command>.json)");
  sub->add_flag("--quiet", c.quiet, "Do not echo the summary to stdout");
}

void add_overrides(CLI::App* sub, Overrides& o, bool with_depth) {
  o.k_opt = sub->add_option("--k", o.k, "Override k")->check(CLI::PositiveNumber);
  o.rho_opt = sub->add_option("--rho", o.rho, "Override rho")->check(CLI::Range(0.0, 1.0));
  o.lambda_opt = sub->add_option("--lambda", o.lambda, "Override lambda")->check(CLI::PositiveNumber);
  o.c_opt = sub->add_option("--c", o.c, "Override c")->check(CLI::NonNegativeNumber);
  if (with_depth) o.depth_opt = sub->add_option("--depth", o.depth, "Override D")->check(CLI::NonNegativeNumber);
}

fs::path out_dir(const Common& c) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv("HFREE_OUT_DIR"); env && *env) return env;
  return ".";
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw ParameterError("cannot open output file " + p.string());
  f.precision(17);
  return f;
}

struct Artifact {
  json config = json::object();
  json seeds = json::object();
  json results = json::object();
  std::vector<std::string> files;
};

// ---- subcommands -------------------------------------------------------------

struct SimulateOpts {
  std::string pattern;
  std::uint32_t n = 0;
  std::string trace, betas;
  bool no_trace = false, witnesses = false, verify = false;
};

Artifact do_simulate(const SimulateOpts& o, const Common& c) {
  Artifact a;
  const PatternGraph h = load_pattern(o.pattern);
  a.config = {{"pattern", o.pattern}, {"n", o.n}, {"witnesses", o.witnesses}, {"verify", o.verify}};
  const std::uint64_t stream = derive_seed(c.seed, 0);
  a.seeds = {{"master", c.seed}, {"replicate_0", stream}};
  Rng rng(stream);
  const Birthtimes b = sample_birthtimes(o.n, rng);
  const CopySearch search(h);
  ProcessOptions opt;
  opt.record_witnesses = o.witnesses;
  const ProcessTrace t = run_process(o.n, search, traversal_order(b), opt);

  if (!o.no_trace) {
    const fs::path path = o.trace.empty() ? out_dir(c) / "simulate_trace.csv" : fs::path(o.trace);
    std::ofstream f = open_out(path);
    f << "rank,u,v,beta,accepted" << (o.witnesses ? ",witness" : "") << "\n";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const StepRecord& s = t.steps[i];
      f << i << ',' << s.edge.edge.u << ',' << s.edge.edge.v << ',' << s.edge.beta << ',' << (s.accepted ? 1 : 0);
      if (o.witnesses) {
        f << ',';
        if (s.witness)
          for (std::size_t j = 0; j < s.witness->size(); ++j)
            f << (j ? " " : "") << (*s.witness)[j].u << '-' << (*s.witness)[j].v;
      }
      f << '\n';
    }
    a.files.push_back(path.string());
  }
  if (!o.betas.empty()) {
    std::ofstream f = open_out(o.betas);
    write_birthtimes_csv(f, b);
    a.files.push_back(o.betas);
  }
  const double exponent = 2.0 - static_cast<double>(h.vertex_count() - 2) / (h.edge_count() - 1);
  a.results = {{"pattern", pattern_json(h)},
               {"n", o.n},
               {"edges", t.accepted},
               {"traversed", t.traversed},
               {"pairs", pair_count(o.n)},
               {"reference", {{"expression", "n^{2-(v_H-2)/(e_H-1)}"}, {"value", std::pow(double(o.n), exponent)}}}};
  if (o.verify) a.results["maximal"] = verify_maximal(t.graph, h);
  return a;
}

struct SweepOpts {
  std::string pattern;
  std::vector<std::uint32_t> ns;
  std::size_t reps = 100;
  std::string csv, replicates_csv;
};

Artifact do_sweep(const SweepOpts& o, const Common& c) {
  Artifact a;
  const PatternGraph h = load_pattern(o.pattern);
  a.config = {{"pattern", o.pattern}, {"n", o.ns}, {"reps", o.reps}};
  const SweepResult s = sweep(o.ns, h, o.reps, c.seed, c.workers);
  json pts = json::array();
  json streams = json::object();
  for (const SweepPoint& p : s.points) {
    pts.push_back({{"n", p.n}, {"reps", p.stats.summary.count}, {"summary", summary_json(p.stats.summary)}});
    streams[std::to_string(p.n)] = p.stats.master_seed;
  }
  a.seeds = {{"master", c.seed}, {"per_n_stream", streams}, {"replicate_rule", "derive_seed(per_n_stream, i)"}};
  a.results = {{"pattern", pattern_json(h)},
               {"points", pts},
               {"fit",
                {{"slope", s.fit.slope},
                 {"intercept", s.fit.intercept},
                 {"slope_se", s.fit.slope_se},
                 {"band", {s.fit.band_low, s.fit.band_high}},
                 {"r_squared", s.fit.r_squared},
                 {"se_from_point_errors", s.fit.propagated}}},
               {"reference_exponent", s.reference_exponent},
               {"reference", "e(M_n(H)) = Omega(n^{2-(v_H-2)/(e_H-1)})"}};
  const fs::path csv = o.csv.empty() ? out_dir(c) / "sweep.csv" : fs::path(o.csv);
  {
    std::ofstream f = open_out(csv);
    f << "n,reps,mean,variance,std_error\n";
    for (const SweepPoint& p : s.points)
      f << p.n << ',' << p.stats.summary.count << ',' << p.stats.summary.mean << ',' << p.stats.summary.variance << ','
        << p.stats.summary.std_error << '\n';
    a.files.push_back(csv.string());
  }
  if (!o.replicates_csv.empty()) {
    std::ofstream f = open_out(o.replicates_csv);
    f << "n,replicate,seed,edges\n";
    for (const SweepPoint& p : s.points)
      for (std::size_t i = 0; i < p.stats.values.size(); ++i)
        f << p.n << ',' << i << ',' << p.stats.seeds[i] << ',' << p.stats.values[i] << '\n';
    a.files.push_back(o.replicates_csv);
  }
  return a;
}

struct SurvivalOpts {
  std::string mode = "inclusion";
  std::string pattern = "K3";
  std::uint32_t n = 0;
  std::size_t reps = 100;
  std::vector<double> xs{2, 4, 8};
  double unit = 0;
  CLI::Option* unit_opt = nullptr;
  std::int64_t target = 0;
  CLI::Option* target_opt = nullptr;
  std::size_t max_nodes = 1'000'000;
  Overrides ov;
};

Artifact do_survival(const SurvivalOpts& o, const Common& c) {
  Artifact a;
  const PatternGraph h = load_pattern(o.pattern);
  a.config = {{"mode", o.mode}, {"pattern", o.pattern}, {"n", o.n}, {"reps", o.reps}};
  a.seeds = {{"master", c.seed}, {"replicate_rule", "derive_seed(master, i)"}};
  if (o.mode == "inclusion") {
    std::optional<double> unit;
    if (o.unit_opt->count()) unit = o.unit;
    a.config["x"] = o.xs;
    if (unit) a.config["unit"] = *unit;
    const InclusionResult r = estimate_conditional_inclusion(o.n, h, o.xs, o.reps, c.seed, c.workers, unit);
    json pts = json::array();
    for (const InclusionPoint& p : r.points)
      pts.push_back({{"x", p.multiplier},
                     {"threshold", p.threshold},
                     {"indicator", summary_json(p.indicator)},
                     {"smoothed", summary_json(p.smoothed)},
                     {"x_times_p", p.multiplier * p.indicator.mean}});
    a.results = {{"pattern", pattern_json(h)},
                 {"edge", edge_json(r.f)},
                 {"unit", r.unit},
                 {"points", pts},
                 {"non_increasing_within_ci", r.non_increasing},
                 {"x_times_p_spread", r.spread},
                 {"reference", "Pr[f in M | beta(f) < x n^{-(v_H-2)/(e_H-1)}] ~ (ln x)^{1/(e_H-1)} / x"}};
    return a;
  }
  const AsymptoticParams p = asymptotic_params(o.n, h, o.ov.get());
  a.config["overrides"] = params_json(p)["overrides"];
  a.config["max_nodes"] = o.max_nodes;
  TreeCaps caps;
  caps.max_nodes = o.max_nodes;
  const int depth = static_cast<int>(p.depth);
  if (o.mode == "t-vs-rt") {
    std::optional<std::int64_t> target;
    if (o.target_opt->count()) {
      target = o.target;
      a.config["target"] = o.target;
    }
    const TvsRT r = compare_T_RT(o.n, h, p, depth, o.reps, c.seed, c.workers, target, caps);
    a.results = {{"params", params_json(p)},
                 {"target", r.target},
                 {"reps", r.reps},
                 {"skipped", r.skipped},
                 {"capped", r.capped},
                 {"skip_rate", double(r.skipped) / double(r.reps)},
                 {"not_B_T", summary_json(r.not_b_t)},
                 {"not_B_RT", summary_json(r.not_b_rt)},
                 {"ratio", std::isfinite(r.ratio) ? json(r.ratio) : json(nullptr)}};
    return a;
  }
  if (o.mode == "soundness") {
    const SoundnessReport r = survival_soundness(o.n, h, p, depth, o.reps, c.seed, c.workers, caps);
    a.results = {{"params", params_json(p)},
                 {"instances", r.instances},
                 {"good_trees", r.good_trees},
                 {"capped", r.capped},
                 {"even_height_B_true", r.even_checks},
                 {"even_height_violations", r.even_violations},
                 {"root_B_false", r.root_checks},
                 {"root_violations", r.root_violations},
                 {"root_in_M", r.root_in_m}};
    return a;
  }
  throw ParameterError("unknown survival mode '" + o.mode + "' (inclusion, t-vs-rt, soundness)");
}

struct TrimmedOpts {
  std::uint32_t n = 0;
  double c = 4;
  std::size_t reps = 50;
  std::string replicates_csv;
};

Artifact do_trimmed(const TrimmedOpts& o, const Common& c) {
  Artifact a;
  a.config = {{"pattern", "K3"}, {"n", o.n}, {"c", o.c}, {"reps", o.reps}};
  a.seeds = {{"master", c.seed}, {"replicate_rule", "derive_seed(master, i)"}};
  const TrimmedResult r = trimmed_stats(o.n, o.c, o.reps, c.seed, c.workers);
  a.results = {{"threshold", r.threshold},
               {"untrimmed", r.untrimmed},
               {"reference", {{"expression", "C(n,2) ln c"}, {"value", r.reference}}},
               {"p2_over_reference", r.reference > 0 ? json(r.p2.summary.mean / r.reference) : json(nullptr)},
               {"edges", summary_json(r.edges.summary)},
               {"p2", summary_json(r.p2.summary)},
               {"c3", summary_json(r.c3.summary)},
               {"c4", summary_json(r.c4.summary)},
               {"c5", summary_json(r.c5.summary)},
               {"open_pairs", summary_json(r.open_pairs.summary)},
               {"note", "order-of-magnitude check of an asymptotic claim"}};
  if (!o.replicates_csv.empty()) {
    std::ofstream f = open_out(o.replicates_csv);
    f << "replicate,seed,edges,p2,c3,c4,c5,open_pairs\n";
    for (std::size_t i = 0; i < r.reps; ++i)
      f << i << ',' << r.p2.seeds[i] << ',' << r.edges.values[i] << ',' << r.p2.values[i] << ',' << r.c3.values[i]
        << ',' << r.c4.values[i] << ',' << r.c5.values[i] << ',' << r.open_pairs.values[i] << '\n';
    a.files.push_back(o.replicates_csv);
  }
  return a;
}

struct TreeAuditOpts {
  std::string pattern = "K3";
  std::uint32_t n = 0;
  std::string report;
  std::int64_t deficit = 0;
  CLI::Option* deficit_opt = nullptr;
  std::size_t max_nodes = 1'000'000;
  std::size_t bad_cap = 200'000;
  Overrides ov;
};

Artifact do_tree_audit(const TreeAuditOpts& o, const Common& c) {
  Artifact a;
  const PatternGraph h = load_pattern(o.pattern);
  const AsymptoticParams p = asymptotic_params(o.n, h, o.ov.get());
  a.config = {{"pattern", o.pattern},   {"n", o.n},           {"overrides", params_json(p)["overrides"]},
              {"max_nodes", o.max_nodes}, {"bad_cap", o.bad_cap}};
  std::optional<std::int64_t> threshold;
  if (o.deficit_opt->count()) {
    threshold = o.deficit;
    a.config["deficit_threshold"] = o.deficit;
  }
  a.seeds = {{"master", c.seed}, {"instance", derive_seed(c.seed, 0)}};
  Rng rng = make_rng(c.seed, 0);
  const double theta = std::min(p.rho, std::max(1.0, double(p.c)) * p.window_unit);
  const SampledHost s = sample_host(o.n, p.rho, theta, rng);
  LambdaCache lambda(s.host, h);
  const int depth = static_cast<int>(p.depth);
  TreeCaps caps;
  caps.max_nodes = o.max_nodes;

  json tree;
  try {
    const SurvivalTree t = build_tree(s.f, depth, lambda, caps);
    const GoodTreeAudit g = check_good(t, lambda, threshold);
    json p2w = nullptr;
    if (g.p2_witness) {
      p2w = {{"nodes", {g.p2_witness->first, g.p2_witness->second}},
             {"labels", {edges_json(t.node(g.p2_witness->first).copy), edges_json(t.node(g.p2_witness->second).copy)}}};
    }
    tree = {{"nodes", t.size()},
            {"complete", true},
            {"P1", g.p1},
            {"P1_violations", g.p1_violations.size()},
            {"P2", g.p2},
            {"P2_witness", p2w},
            {"P2_overlapping_pairs", g.p2_overlapping_pairs},
            {"P3", g.p3},
            {"max_deficit", g.max_deficit},
            {"deficit_threshold", g.deficit_threshold},
            {"deficit_histogram", histogram_json(g.deficit_histogram)},
            {"good", g.good()},
            {"root_B", eval_B(t, s.b)[0] != 0}};
  } catch (const PartialTreeError& e) {
    tree = {{"nodes", e.partial().size()}, {"complete", false}, {"error", e.what()}};
  }

  const E1Report e1 = check_E1(s.host, h, p);
  BadSequenceOptions bopt;
  bopt.max_len = 2 * static_cast<std::size_t>(std::max(1, depth));
  bopt.state_cap = o.bad_cap;
  bopt.report_cap = 8;
  const BadSequenceResult bad = find_bad_sequences(s.host, s.f, h, bopt);
  json seqs = json::array();
  for (const BadSequence& q : bad.sequences) {
    json copies = json::array();
    for (const EdgeSet& g : q.copies) copies.push_back(edges_json(g));
    seqs.push_back({{"length", q.length()},
                    {"copies", copies},
                    {"shared_vertices", q.shared_vertices},
                    {"shared_edges", q.shared_edges},
                    {"class", q.kind == 1 ? "Seq_d1" : "Seq_d2"},
                    {"f_type", pattern_json(q.f_type)}});
  }
  const ExtensionSet& lam_f = lambda(s.f);
  const ConflictStats cs = conflict_graph_stats(lam_f, kConflictExactLimit, lam_f.size() > kConflictExactLimit);
  const Band band = e1_band(p, h);
  a.results = {
      {"params", params_json(p)},
      {"root", edge_json(s.f)},
      {"root_beta", s.b.at(s.f)},
      {"host_edges", s.host.edge_count()},
      {"lambda_f", lam_f.size()},
      {"tree", tree},
      {"E1",
       {{"holds", e1.holds},
        {"band", {band.lower(), band.upper()}},
        {"min", e1.min_size},
        {"max", e1.max_size},
        {"histogram", histogram_json(e1.histogram)}}},
      {"E3",
       {{"holds", bad.e3()},
        {"decided", bad.decided()},
        {"states_explored", bad.states_explored},
        {"truncated", bad.truncated},
        {"sequences", seqs}}},
      {"conflict",
       {{"lambda", cs.lambda_size},
        {"W1", cs.w1 ? json(*cs.w1) : json(nullptr)},
        {"W2", cs.w2 ? json(*cs.w2) : json(nullptr)},
        {"W3", cs.w3},
        {"bound_holds", cs.bound_holds()}}},
      {"note", "raw frequencies only; the rate 1 - o(c n^{-(v_H-2)/(e_H-1)}) is not testable at this n"}};
  return a;
}

struct BoundOpts {
  std::string pattern = "K3";
  double n = 0;
  Overrides ov;
};

Artifact do_bound(const BoundOpts& o, const Common& c) {
  Artifact a;
  const PatternGraph h = load_pattern(o.pattern);
  if (!(o.n >= 3) || o.n > 1.8e19) throw ParameterError("--n must lie in [3, 1.8e19]");
  const auto n = static_cast<std::uint64_t>(std::llround(o.n));
  const AsymptoticParams p = asymptotic_params(n, h, o.ov.get(), false);
  a.config = {{"pattern", o.pattern}, {"n", n}, {"overrides", params_json(p)["overrides"]}};
  a.seeds = {{"master", c.seed}, {"note", "no randomness"}};
  const BoundTrace t = survival_bound_recursion(p, h);
  json terms = json::array();
  for (const BoundTerm& x : t.terms)
    terms.push_back({{"i", x.i},
                     {"tau", x.tau},
                     {"tau_positive", x.tau_positive},
                     {"case1", x.case1},
                     {"product", x.product},
                     {"product_rt", x.product_rt},
                     {"base_nonpositive", x.base_nonpositive},
                     {"fired", x.fired}});
  a.results = {{"params", params_json(p)},
               {"lambda_k", t.lambda_k},
               {"rt_outdegree", t.rt_outdegree},
               {"terms", terms},
               {"case1", t.case1},
               {"case2", t.case2},
               {"case2_rt", t.case2_rt},
               {"raw_bound", t.raw_bound},
               {"bound", t.bound},
               {"shape", {{"expression", "(ln c)^{1/(e_H-1)} / c"}, {"value", t.shape}}}};
  return a;
}

struct OracleOpts {
  std::string mode = "expectation";
  std::string method = "auto";
  std::string pattern;
  std::uint32_t n = 0;
};

Artifact do_oracle(const OracleOpts& o, const Common& c) {
  Artifact a;
  const PatternGraph h = load_pattern(o.pattern);
  a.config = {{"mode", o.mode}, {"method", o.method}, {"pattern", o.pattern}, {"n", o.n}};
  a.seeds = {{"master", c.seed}, {"note", "no randomness"}};
  if (o.mode == "expectation") {
    ExactResult r;
    if (o.method == "auto") {
      r = exact_expectation(o.n, h);
    } else if (o.method == "full") {
      r = exact_expectation(o.n, h, OracleMethod::kFullPermutation);
    } else if (o.method == "state") {
      r = exact_expectation(o.n, h, OracleMethod::kStateRecursion);
    } else {
      throw ParameterError("unknown oracle method '" + o.method + "' (auto, full, state)");
    }
    a.results = {{"pattern", pattern_json(h)},
                 {"n", o.n},
                 {"expectation", rational_json(r.value)},
                 {"method", to_string(r.method)},
                 {"enumeration_size", r.enumeration_size}};
    return a;
  }
  if (o.mode == "extremal") {
    const ExtremalResult r = exact_extremal(o.n, h);
    a.results = {{"pattern", pattern_json(h)},
                 {"n", o.n},
                 {"ex", r.value},
                 {"witness", edges_json(r.witness)},
                 {"nodes", r.nodes}};
    return a;
  }
  throw ParameterError("unknown oracle mode '" + o.mode + "' (expectation, extremal)");
}

Artifact do_pattern_check(const std::string& spec, const Common& c) {
  Artifact a;
  const PatternGraph h = load_pattern(spec);
  a.config = {{"pattern", spec}};
  a.seeds = {{"master", c.seed}, {"note", "no randomness"}};
  const BalanceReport r = is_strictly_two_balanced(h);
  json witness = nullptr;
  if (r.witness) {
    json edges = json::array();
    for (auto [x, y] : r.witness->edges) edges.push_back({x, y});
    witness = {{"vertices", r.witness->vertices}, {"edges", edges}};
  }
  a.results = {{"pattern", pattern_json(h)},
               {"admissible", h.admissible()},
               {"is_regular", r.is_regular},
               {"is_strictly_two_balanced", r.is_strictly_two_balanced},
               {"two_density", r.two_density ? rational_json(*r.two_density) : json(nullptr)},
               {"epsilon_gap", r.epsilon_gap ? rational_json(*r.epsilon_gap) : json(nullptr)},
               {"witness", witness},
               {"reason", r.reason}};
  if (h.vertex_count() <= kMaxAutomorphismVertices) a.results["automorphisms"] = automorphism_count(h);
  return a;
}

// ---- driver ------------------------------------------------------------------

void write_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  json e = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  err << e.dump() << '\n';
}

// Output-location flags dropped when replaying an artifact.
const std::set<std::string> kOutputFlags = {"--out-dir", "--json", "--trace", "--betas", "--csv",
                                            "--replicates-csv", "--report"};

std::vector<std::string> replay_args(const std::string& path, const std::string& dir) {
  std::ifstream f(path);
  if (!f) throw ParameterError("cannot read artifact " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw DataError("artifact " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.contains("argv") || !doc["argv"].is_array()) throw DataError("artifact " + path + " has no argv");
  if (doc.value("schema_version", 0) != kSchemaVersion) throw DataError("artifact schema_version mismatch");
  std::vector<std::string> args;
  const auto raw = doc["argv"].get<std::vector<std::string>>();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string& s = raw[i];
    const auto eq = s.find('=');
    const std::string flag = s.substr(0, eq);
    if (kOutputFlags.contains(flag)) {
      if (eq == std::string::npos) ++i;  // skip the value too
      continue;
    }
    args.push_back(s);
  }
  if (!dir.empty()) {
    args.push_back("--out-dir");
    args.push_back(dir);
  }
  return args;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and verification toolkit for the random maximal H-free process", "hfree"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hfree schema " + std::to_string(kSchemaVersion));

  Common common;
  std::string command;
  std::function<Artifact()> action;

  SimulateOpts sim;
  auto* s_sim = app.add_subcommand("simulate", "Run the process once");
  s_sim->add_option("--pattern", sim.pattern, "Catalog name or edge-list file")->required();
  s_sim->add_option("--n", sim.n, "Vertex count")->required()->check(CLI::Range(2u, 65535u));
  s_sim->add_option("--trace", sim.trace, "Trace CSV path (default <out-dir>/simulate_trace.csv)");
  s_sim->add_flag("--no-trace", sim.no_trace, "Skip the trace CSV");
  s_sim->add_option("--betas", sim.betas, "Birthtime CSV path (u,v,beta,in_phase)");
  s_sim->add_flag("--witnesses", sim.witnesses, "Record rejection witnesses in the trace");
  s_sim->add_flag("--verify", sim.verify, "Check maximality with the independent search");
  add_common(s_sim, common);
  s_sim->callback([&] { command = "simulate"; action = [&] { return do_simulate(sim, common); }; });

  SweepOpts sw;
  auto* s_sw = app.add_subcommand("sweep", "Mean edge counts over several n and the fitted exponent");
  s_sw->add_option("--pattern", sw.pattern)->required();
  s_sw->add_option("--n", sw.ns, "Comma-separated sizes")->required()->delimiter(',')->check(CLI::Range(2u, 65535u));
  s_sw->add_option("--reps", sw.reps)->check(CLI::PositiveNumber)->capture_default_str();
  s_sw->add_option("--csv", sw.csv, "Per-n CSV path (default <out-dir>/sweep.csv)");
  s_sw->add_option("--replicates-csv", sw.replicates_csv, "Per-replicate CSV path");
  add_common(s_sw, common);
  s_sw->callback([&] { command = "sweep"; action = [&] { return do_sweep(sw, common); }; });

  SurvivalOpts sv;
  auto* s_sv = app.add_subcommand("survival", "Conditional inclusion, T vs RT, or survival soundness");
  s_sv->add_option("--mode", sv.mode)->check(CLI::IsMember({"inclusion", "t-vs-rt", "soundness"}))->capture_default_str();
  s_sv->add_option("--pattern", sv.pattern)->capture_default_str();
  s_sv->add_option("--n", sv.n)->required()->check(CLI::Range(3u, 65535u));
  s_sv->add_option("--reps", sv.reps)->check(CLI::PositiveNumber)->capture_default_str();
  s_sv->add_option("--x", sv.xs, "Threshold multipliers (inclusion)")->delimiter(',')->check(CLI::PositiveNumber);
  sv.unit_opt = s_sv->add_option("--unit", sv.unit, "Threshold unit (default n^{-(v_H-2)/(e_H-1)})")
                    ->check(CLI::PositiveNumber);
  sv.target_opt = s_sv->add_option("--target", sv.target, "RT outdegree override (t-vs-rt)");
  s_sv->add_option("--max-nodes", sv.max_nodes, "Tree node cap")->capture_default_str();
  add_overrides(s_sv, sv.ov, true);
  add_common(s_sv, common);
  s_sv->callback([&] { command = "survival"; action = [&] { return do_survival(sv, common); }; });

  TrimmedOpts tr;
  auto* s_tr = app.add_subcommand("trimmed", "Small-subgraph counts of the trimmed triangle-free process");
  s_tr->add_option("--n", tr.n)->required()->check(CLI::Range(3u, 65535u));
  s_tr->add_option("--c", tr.c)->check(CLI::PositiveNumber)->capture_default_str();
  s_tr->add_option("--reps", tr.reps)->check(CLI::PositiveNumber)->capture_default_str();
  s_tr->add_option("--replicates-csv", tr.replicates_csv);
  add_common(s_tr, common);
  s_tr->callback([&] { command = "trimmed"; action = [&] { return do_trimmed(tr, common); }; });

  TreeAuditOpts ta;
  auto* s_ta = app.add_subcommand("tree-audit", "Build and audit one survival tree");
  s_ta->add_option("--pattern", ta.pattern)->capture_default_str();
  s_ta->add_option("--n", ta.n)->required()->check(CLI::Range(3u, 65535u));
  s_ta->add_option("--report", ta.report, "Report JSON path (same as --json)");
  ta.deficit_opt = s_ta->add_option("--deficit-threshold", ta.deficit, "P3 threshold (default e_H)");
  s_ta->add_option("--max-nodes", ta.max_nodes)->capture_default_str();
  s_ta->add_option("--bad-cap", ta.bad_cap, "State cap of the bad-sequence search")->capture_default_str();
  add_overrides(s_ta, ta.ov, true);
  add_common(s_ta, common);
  s_ta->callback([&] {
    command = "tree-audit";
    if (!ta.report.empty()) common.json_path = ta.report;
    action = [&] { return do_tree_audit(ta, common); };
  });

  BoundOpts bd;
  auto* s_bd = app.add_subcommand("bound-calc", "Evaluate the two-case survival bound");
  s_bd->add_option("--pattern", bd.pattern)->capture_default_str();
  s_bd->add_option("--n", bd.n, "Vertex count (formula evaluation; may be huge)")->required();
  add_overrides(s_bd, bd.ov, true);
  add_common(s_bd, common);
  s_bd->callback([&] { command = "bound-calc"; action = [&] { return do_bound(bd, common); }; });

  OracleOpts orc;
  auto* s_or = app.add_subcommand("oracle", "Exact small-n expectation or extremal number");
  s_or->add_option("--mode", orc.mode)->check(CLI::IsMember({"expectation", "extremal"}))->capture_default_str();
  s_or->add_option("--method", orc.method)->check(CLI::IsMember({"auto", "full", "state"}))->capture_default_str();
  s_or->add_option("--pattern", orc.pattern)->required();
  s_or->add_option("--n", orc.n)->required();
  add_common(s_or, common);
  s_or->callback([&] { command = "oracle"; action = [&] { return do_oracle(orc, common); }; });

  std::string pc;
  auto* s_pc = app.add_subcommand("pattern-check", "Regularity and strict 2-balance report");
  s_pc->add_option("--pattern", pc)->required();
  add_common(s_pc, common);
  s_pc->callback([&] { command = "pattern-check"; action = [&] { return do_pattern_check(pc, common); }; });

  std::string replay_path;
  auto* s_rp = app.add_subcommand("replay", "Re-run the command embedded in an artifact");
  s_rp->add_option("artifact", replay_path)->required()->check(CLI::ExistingFile);
  add_common(s_rp, common);
  s_rp->callback([&] { command = "replay"; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "hfree schema " << kSchemaVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    write_error(err, "usage", e.what(), 2);
    return 2;
  }

  if (command == "replay") {
    std::vector<std::string> again = replay_args(replay_path, common.out_dir);
    if (common.quiet) again.push_back("--quiet");
    return dispatch(again, out, err);
  }

  const auto t0 = std::chrono::steady_clock::now();
  Artifact art = action();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  art.config["workers"] = common.workers;
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["argv"] = args;
  doc["config"] = art.config;
  doc["seeds"] = art.seeds;
  doc["results"] = art.results;
  doc["files"] = art.files;
  doc["timing"] = {{"wall_seconds", wall}};

  const fs::path path = common.json_path.empty() ? out_dir(common) / (command + ".json") : fs::path(common.json_path);
  {
    std::ofstream f = open_out(path);
    f << doc.dump(2) << '\n';
  }
  if (!common.quiet) out << doc.dump(2) << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const Error& e) {
    write_error(err, e.kind(), e.what(), e.exit_code());
    return e.exit_code();
  } catch (const fs::filesystem_error& e) {
    write_error(err, "io", e.what(), 2);
    return 2;
  } catch (const std::exception& e) {
    write_error(err, "internal", e.what(), 4);
    return 4;
  }
}

}  // namespace hfree::cli
