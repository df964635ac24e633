// Acceptance run: one PASS/FAIL line per criterion. Optional arguments select
// criteria by number, e.g. `hfree_acceptance 4 5`.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hfree/estimators.hpp"
#include "hfree/oracle.hpp"
#include "hfree/params.hpp"
#include "hfree/pattern.hpp"
#include "hfree/process.hpp"
#include "hfree/stats.hpp"
#include "hfree/trimmed.hpp"

using namespace hfree;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome pattern_gate() {
  std::vector<std::string> good = {"C3", "C4", "C5", "K3", "K4", "K5", "K_{2,2}", "K_{3,3}", "K_{4,4}", "Q2", "Q3", "Q4"};
  std::ostringstream bad_names;
  bool ok = true;
  for (const auto& name : good) {
    const PatternGraph h = parse_pattern_name(name);
    const BalanceReport r = is_strictly_two_balanced(h);
    if (!r.is_regular || !r.is_strictly_two_balanced) {
      ok = false;
      bad_names << name << ' ';
    }
  }
  for (const char* name : {"K_{1,4}", "paw"}) {
    const BalanceReport r = is_strictly_two_balanced(parse_pattern_name(name));
    if (r.is_strictly_two_balanced || !r.witness) {
      ok = false;
      bad_names << name << "(no witness) ";
    }
  }
  return {ok, ok ? "12 catalog patterns admissible; K_{1,4} and paw rejected with witnesses"
                 : "failed: " + bad_names.str()};
}

Outcome oracle_agreement() {
  struct Case {
    std::uint32_t n;
    const char* h;
  };
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 2024;
  for (Case c : {Case{4, "K3"}, Case{5, "K3"}, Case{4, "C4"}}) {
    const PatternGraph h = parse_pattern_name(c.h);
    const double exact = exact_expectation(c.n, h).value.convert_to<double>();
    const RunStats mc = estimate_expected_edges(c.n, h, 100'000, seed++);
    const double diff = mc.summary.mean - exact;
    // A degenerate law (every run gives the same count) has zero standard error.
    const double z = mc.summary.std_error > 0 ? diff / mc.summary.std_error : (diff == 0 ? 0.0 : INFINITY);
    ok = ok && std::fabs(z) <= 3.0;
    detail += fmt("(%u,%s) exact %.5f mc %.5f z %+.2f; ", c.n, c.h, exact, mc.summary.mean, z);
  }
  for (const char* name : {"K3", "C4", "K4", "paw"}) {
    const PatternGraph h = parse_pattern_name(name);
    for (std::uint32_t n = 3; n <= 5; ++n) {
      const auto a = exact_expectation(n, h, OracleMethod::kFullPermutation).value;
      const auto b = exact_expectation(n, h, OracleMethod::kStateRecursion).value;
      if (a != b) {
        ok = false;
        detail += fmt("methods disagree at (%u,%s); ", n, name);
      }
    }
  }
  return {ok, detail + "full and state oracles compared for n in 3..5"};
}

Outcome maximality() {
  std::size_t runs = 0, passed = 0;
  std::uint64_t stream = 0;
  for (const char* name : {"K3", "K4", "C4"}) {
    const PatternGraph h = parse_pattern_name(name);
    const CopySearch search(h);
    for (std::uint32_t n : {6u, 12u, 24u, 40u, 64u}) {
      const std::size_t reps = 100;
      for (std::size_t i = 0; i < reps; ++i) {
        const Birthtimes b = sample_birthtimes(n, derive_seed(77, stream++));
        ProcessOptions opt;
        opt.record_steps = false;
        const ProcessTrace t = run_process(n, search, traversal_order(b), opt);
        ++runs;
        if (verify_maximal(t.graph, h)) ++passed;
      }
    }
  }
  return {runs >= 1000 && passed == runs, fmt("%zu/%zu runs maximal and H-free", passed, runs)};
}

Outcome exponent(const char* name, double lo, double hi) {
  const std::vector<std::uint32_t> ns = {256, 512, 1024, 2048};
  const SweepResult s = sweep(ns, parse_pattern_name(name), 200, 11);
  const bool ok = s.fit.slope >= lo && s.fit.slope <= hi;
  return {ok, fmt("%s slope %.4f (se %.4f, r2 %.5f) window [%.2f, %.2f], reference %.4f", name, s.fit.slope,
                  s.fit.slope_se, s.fit.r_squared, lo, hi, s.reference_exponent)};
}

Outcome soundness() {
  const PatternGraph h = parse_pattern_name("K3");
  std::size_t instances = 0, capped = 0, good = 0;
  std::uint64_t even = 0, even_bad = 0, root = 0, root_bad = 0;
  // Two desk-scale regimes: odd D = 3 and D = 5.
  struct Regime {
    std::uint32_t n;
    double rho;
    std::int64_t depth;
    std::size_t reps;
  };
  std::uint64_t seed = 600;
  for (Regime r : {Regime{40, 0.28, 3, 700}, Regime{48, 0.2, 5, 400}}) {
    ParamOverrides o;
    o.rho = r.rho;
    o.c = 1;
    o.k = 4;
    o.depth = r.depth;
    const AsymptoticParams p = asymptotic_params(r.n, h, o);
    const SoundnessReport s = survival_soundness(r.n, h, p, static_cast<int>(r.depth), r.reps, seed++);
    instances += s.instances;
    capped += s.capped;
    good += s.good_trees;
    even += s.even_checks;
    even_bad += s.even_violations;
    root += s.root_checks;
    root_bad += s.root_violations;
  }
  const bool ok = instances - capped >= 1000 && even_bad == 0 && root_bad == 0;
  return {ok, fmt("%zu instances (%zu capped, %zu good trees); even-height B true: %llu checks, %llu violations; "
                  "root not-B: %llu checks, %llu violations",
                  instances, capped, good, (unsigned long long)even, (unsigned long long)even_bad,
                  (unsigned long long)root, (unsigned long long)root_bad)};
}

Outcome e3_good() {
  const PatternGraph h = parse_pattern_name("K3");
  const E3Report r = e3_implies_good(40, h, 0.12, 3, 600, 700);
  const bool ok = r.hosts - r.capped >= 500 && r.counterexamples == 0 && r.e3_hosts > 0;
  return {ok, fmt("%zu hosts (%zu capped, %zu undecided); %zu with E3, all good: %zu; counterexamples %zu", r.hosts,
                  r.capped, r.undecided, r.e3_hosts, r.good_given_e3, r.counterexamples)};
}

Outcome conflict() {
  std::size_t instances = 0, violations = 0, nontrivial = 0, max_lambda = 0;
  std::uint64_t seed = 800;
  struct Case {
    const char* h;
    std::uint32_t n;
    double rho;
    std::size_t reps;
  };
  for (Case c : {Case{"C4", 30, 0.35, 300}, Case{"K4", 24, 0.6, 150}, Case{"K3", 60, 0.5, 100}}) {
    const ConflictReport r = conflict_audit(c.n, parse_pattern_name(c.h), c.rho, c.reps, seed++);
    instances += r.instances;
    violations += r.violations;
    nontrivial += r.nontrivial;
    max_lambda = std::max(max_lambda, r.max_lambda);
  }
  return {instances >= 500 && violations == 0,
          fmt("%zu exact instances (%zu with intersecting copies, max |Lambda| %zu); violations %zu", instances,
              nontrivial, max_lambda, violations)};
}

Outcome moments() {
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 900;
  for (auto [e, t] : {std::pair{3, 1}, std::pair{3, 2}, std::pair{4, 2}, std::pair{5, 3}}) {
    const MomentCheck m = nested_uniform_moment_check(e, t, 100'000, seed++);
    ok = ok && std::fabs(m.z) <= 3.0;
    detail += fmt("(%d,%d) z %+.2f; ", e, t, m.z);
  }
  return {ok, detail};
}

Outcome trimmed() {
  const TrimmedResult r = trimmed_stats(4096, 4.0, 50, 1000);
  const double ratio = r.p2.summary.mean / r.reference;
  return {ratio >= 0.3 && ratio <= 3.0,
          fmt("order-of-magnitude check of an asymptotic claim: mean P2 %.4g vs C(n,2) ln 4 = %.4g, ratio %.3f",
              r.p2.summary.mean, r.reference, ratio)};
}

Outcome inclusion() {
  const std::vector<double> xs = {2, 4, 8};
  const InclusionResult r = estimate_conditional_inclusion(2048, parse_pattern_name("K3"), xs, 2000, 1100);
  std::string detail;
  for (const auto& p : r.points) detail += fmt("x=%g p %.4f (se %.4f); ", p.multiplier, p.indicator.mean, p.indicator.std_error);
  return {r.non_increasing && r.spread <= 3.0,
          detail + fmt("non-increasing %s, x*p spread %.3f", r.non_increasing ? "yes" : "no", r.spread)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const std::vector<Criterion> criteria = {
      {1, "pattern gate", 1, pattern_gate},
      {2, "oracle agreement", 120, oracle_agreement},
      {3, "maximality", 60, maximality},
      {4, "triangle exponent", 600, [] { return exponent("K3", 1.45, 1.60); }},
      {5, "C4 exponent", 600, [] { return exponent("C4", 1.28, 1.42); }},
      {6, "survival soundness", 300, soundness},
      {7, "E3 implies good tree", 300, e3_good},
      {8, "conflict bound", 120, conflict},
      {9, "moment identity", 30, moments},
      {10, "trimmed statistics", 600, trimmed},
      {11, "conditional inclusion shape", 600, inclusion},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.contains(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %2d %-28s %7.2fs (budget %gs%s) %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_seconds, in_time ? "" : ", exceeded", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
