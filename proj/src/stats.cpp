#include "hfree/stats.hpp"

#include <cmath>

namespace hfree {

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (s.count == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(s.count - 1);
    s.std_error = std::sqrt(s.variance / static_cast<double>(s.count));
  }
  return s;
}

RunStats make_run_stats(std::vector<double> values, std::vector<std::uint64_t> seeds,
                        std::uint64_t master_seed, double wall_seconds) {
  RunStats r;
  r.summary = summarize(values);
  r.values = std::move(values);
  r.seeds = std::move(seeds);
  r.master_seed = master_seed;
  r.wall_seconds = wall_seconds;
  return r;
}

unsigned default_workers() noexcept {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace hfree
