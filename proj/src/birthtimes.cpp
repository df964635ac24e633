#include "hfree/birthtimes.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>

#include "hfree/error.hpp"

namespace hfree {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

Rng make_rng(std::uint64_t master, std::uint64_t stream) {
  return Rng(derive_seed(master, stream));
}

Birthtimes::Birthtimes(std::uint32_t n, std::vector<double> beta, std::optional<double> rho)
    : index_(n), beta_(std::move(beta)), rho_(rho) {
  if (beta_.size() != index_.size()) {
    throw DataError("birthtime vector has " + std::to_string(beta_.size()) + " entries, K_" +
                    std::to_string(n) + " has " + std::to_string(index_.size()) + " edges");
  }
}

void Birthtimes::set(Edge e, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("birthtime must lie in [0,1]");
  beta_[index_.id(e)] = beta;
}

EvolvingGraph Birthtimes::phase_graph() const {
  const std::uint32_t n = vertex_count();
  EvolvingGraph g(n);
  EdgeId id = 0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b, ++id)
      if (!rho_ || beta_[id] <= *rho_) g.add_edge({a, b});
  return g;
}

namespace {

void require_n(std::uint32_t n) {
  if (n < 2) throw ParameterError("K_n needs n >= 2, got n=" + std::to_string(n));
}

}  // namespace

Birthtimes sample_birthtimes(std::uint32_t n, Rng& rng) {
  require_n(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> beta(pair_count(n));
  for (double& x : beta) x = unit(rng);
  return Birthtimes(n, std::move(beta));
}

Birthtimes sample_birthtimes(std::uint32_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_birthtimes(n, rng);
}

Birthtimes sample_two_phase(std::uint32_t n, double rho, Rng& rng) {
  require_n(n);
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw ParameterError("two-phase split rho must lie in (0,1], got " + std::to_string(rho));
  }
  if (rho == 1.0) {
    Birthtimes b = sample_birthtimes(n, rng);
    return Birthtimes(n, b.values(), 1.0);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> beta(pair_count(n));
  for (double& x : beta) {
    const bool in = unit(rng) < rho;
    const double u = unit(rng);
    x = in ? rho * u : rho + (1.0 - rho) * (1.0 - u);
  }
  return Birthtimes(n, std::move(beta), rho);
}

Birthtimes sample_two_phase(std::uint32_t n, double rho, std::uint64_t seed) {
  Rng rng(seed);
  return sample_two_phase(n, rho, rng);
}

void sort_timed(std::vector<TimedEdge>& edges, double scale) {
  const std::size_t m = edges.size();
  if (m < 64) {
    std::sort(edges.begin(), edges.end());
    return;
  }
  // Birthtimes are close to uniform, so one counting pass over m buckets
  // leaves O(1) expected items per bucket.
  const double per = static_cast<double>(m) / scale;
  auto bucket = [&](double beta) {
    const auto b = static_cast<std::size_t>(beta * per);
    return b < m ? b : m - 1;
  };
  std::vector<std::uint32_t> start(m + 1, 0);
  for (const auto& t : edges) ++start[bucket(t.beta) + 1];
  for (std::size_t i = 0; i < m; ++i) start[i + 1] += start[i];
  std::vector<TimedEdge> out(m);
  {
    std::vector<std::uint32_t> cursor(start.begin(), start.end() - 1);
    for (const auto& t : edges) out[cursor[bucket(t.beta)]++] = t;
  }
  for (std::size_t i = 0; i < m; ++i) {
    auto first = out.begin() + start[i];
    auto last = out.begin() + start[i + 1];
    if (last - first > 1) std::sort(first, last);
  }
  edges = std::move(out);
}

std::vector<TimedEdge> traversal_order(const Birthtimes& b, std::size_t* ties) {
  const std::uint32_t n = b.vertex_count();
  std::vector<TimedEdge> order;
  order.reserve(b.size());
  EdgeId id = 0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex c = a + 1; c < n; ++c, ++id) order.push_back({b.at(id), Edge(a, c)});
  sort_timed(order, 1.0);
  std::size_t tie_count = 0;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (order[i].beta == order[i - 1].beta) ++tie_count;
  assert(tie_count == 0 && "birthtimes are expected to be distinct");
  if (ties) *ties = tie_count;
  return order;
}

std::vector<TimedEdge> sample_prefix(std::uint32_t n, double horizon, Rng& rng) {
  require_n(n);
  if (!(horizon > 0.0 && horizon <= 1.0)) {
    throw ParameterError("prefix horizon must lie in (0,1], got " + std::to_string(horizon));
  }
  const EdgeIndex index(n);
  const std::uint64_t total = index.size();
  std::vector<TimedEdge> out;
  out.reserve(static_cast<std::size_t>(horizon * static_cast<double>(total) * 1.05) + 16);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (horizon >= 1.0) {
    EdgeId id = 0;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex c = a + 1; c < n; ++c, ++id) out.push_back({unit(rng), Edge(a, c)});
  } else {
    std::geometric_distribution<std::uint64_t> skip(horizon);
    // Walk edge ids in increasing order, tracking the row (u) incrementally.
    Vertex u = 0;
    std::uint64_t row_end = n - 1;  // exclusive id bound of row u
    std::uint64_t row_begin = 0;
    for (std::uint64_t id = skip(rng); id < total; id += 1 + skip(rng)) {
      while (id >= row_end) {
        row_begin = row_end;
        ++u;
        row_end += n - u - 1;
      }
      const auto v = static_cast<Vertex>(u + 1 + (id - row_begin));
      out.push_back({horizon * unit(rng), Edge(u, v)});
    }
  }
  sort_timed(out, horizon);
  return out;
}

void write_birthtimes_csv(std::ostream& out, const Birthtimes& b) {
  out << "u,v,beta,in_phase\n";
  out.precision(17);
  const std::uint32_t n = b.vertex_count();
  EdgeId id = 0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex c = a + 1; c < n; ++c, ++id) {
      const double beta = b.at(id);
      out << a << ',' << c << ',' << beta << ',' << (b.in_phase(Edge(a, c)) ? 1 : 0) << '\n';
    }
}

}  // namespace hfree
