#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace hfree {

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double std_error = 0.0;

  double ci_low(double z = 1.96) const noexcept { return mean - z * std_error; }
  double ci_high(double z = 1.96) const noexcept { return mean + z * std_error; }
};

/// Two-pass mean and variance; deterministic for a fixed input order.
Summary summarize(std::span<const double> values);

/// Per-replicate values plus their summary.
struct RunStats {
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;
  std::uint64_t master_seed = 0;
  Summary summary;
  double wall_seconds = 0.0;  // not part of the result proper
};

RunStats make_run_stats(std::vector<double> values, std::vector<std::uint64_t> seeds,
                        std::uint64_t master_seed, double wall_seconds = 0.0);

unsigned default_workers() noexcept;

/// Runs task(i) for i in [0, count) on up to `workers` threads. Results are
/// stored by index, so the output is independent of the worker count.
/// The first exception thrown by any task is rethrown after all threads join.
template <class R, class Task>
std::vector<R> run_indexed(std::size_t count, unsigned workers, Task&& task) {
  std::vector<R> out(count);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = task(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace hfree
