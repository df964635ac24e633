#include "hfree/trimmed.hpp"

#include <chrono>
#include <cmath>
#include <vector>

#include "hfree/birthtimes.hpp"
#include "hfree/copy_search.hpp"
#include "hfree/error.hpp"
#include "hfree/pattern.hpp"
#include "hfree/process.hpp"

namespace hfree {

SmallCounts count_small_subgraphs(const EvolvingGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 65535) throw CapabilityError("cycle counts limited to n <= 65535");
  SmallCounts s;
  s.edges = g.edge_count();
  // Codegree matrix with degrees on the diagonal (that is, A^2).
  std::vector<std::uint16_t> a2(n * n, 0);
  for (std::size_t w = 0; w < n; ++w) {
    const auto nb = g.neighbors(static_cast<Vertex>(w));
    const std::uint64_t d = nb.size();
    s.p2 += d * (d - (d > 0 ? 1 : 0)) / 2;
    a2[w * n + w] = static_cast<std::uint16_t>(d);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        ++a2[nb[i] * n + nb[j]];
        ++a2[nb[j] * n + nb[i]];
      }
  }
  std::uint64_t trace_a3 = 0, c4_twice = 0, tr5 = 0, corr = 0;
  for (std::size_t x = 0; x < n; ++x) {
    const auto nb = g.neighbors(static_cast<Vertex>(x));
    const std::uint16_t* cx = &a2[x * n];
    std::uint64_t a3_xx = 0;
    for (Vertex y : nb) {
      a3_xx += cx[y];
      const std::uint16_t* cy = &a2[static_cast<std::size_t>(y) * n];
      std::uint64_t dot = 0;
      for (std::size_t w = 0; w < n; ++w) dot += static_cast<std::uint32_t>(cx[w]) * cy[w];
      tr5 += dot;
    }
    trace_a3 += a3_xx;
    if (!nb.empty()) corr += (nb.size() - 1) * a3_xx;
    for (std::size_t y = x + 1; y < n; ++y) {
      const std::uint64_t cd = cx[y];
      c4_twice += cd * (cd - (cd > 0 ? 1 : 0)) / 2;
      if (cd == 0 && !g.has_edge(static_cast<Vertex>(x), static_cast<Vertex>(y))) ++s.open_pairs;
    }
  }
  s.c3 = trace_a3 / 6;
  s.c4 = c4_twice / 2;
  s.c5 = (tr5 - 5 * corr) / 10;
  return s;
}

TrimmedResult trimmed_stats(std::uint32_t n, double c, std::size_t reps, std::uint64_t seed, unsigned workers) {
  if (reps < 1) throw ParameterError("reps must be >= 1");
  if (n < 3) throw ParameterError("trimmed statistics need n >= 3");
  if (!(c > 0.0)) throw ParameterError("trim constant c must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  TrimmedResult r;
  r.n = n;
  r.c = c;
  r.reps = reps;
  const double raw = c / std::sqrt(static_cast<double>(n));
  r.untrimmed = raw >= 1.0;
  r.threshold = r.untrimmed ? 1.0 : raw;
  r.reference = static_cast<double>(pair_count(n)) * std::log(c);
  const CopySearch search(parse_pattern_name("K3"));
  std::vector<std::uint64_t> seeds(reps);
  for (std::size_t i = 0; i < reps; ++i) seeds[i] = derive_seed(seed, i);
  ProcessOptions opt;
  opt.record_steps = false;
  auto rows = run_indexed<SmallCounts>(reps, workers, [&](std::size_t i) {
    Rng rng(seeds[i]);
    const auto prefix = sample_prefix(n, r.threshold, rng);
    return count_small_subgraphs(run_process(n, search, prefix, opt).graph);
  });
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto column = [&](auto field) {
    std::vector<double> v;
    v.reserve(rows.size());
    for (const SmallCounts& s : rows) v.push_back(static_cast<double>(s.*field));
    return make_run_stats(std::move(v), seeds, seed, wall);
  };
  r.edges = column(&SmallCounts::edges);
  r.p2 = column(&SmallCounts::p2);
  r.c3 = column(&SmallCounts::c3);
  r.c4 = column(&SmallCounts::c4);
  r.c5 = column(&SmallCounts::c5);
  r.open_pairs = column(&SmallCounts::open_pairs);
  return r;
}

}  // namespace hfree
