#include "hfree/params.hpp"

#include <cmath>
#include <sstream>

#include "hfree/error.hpp"

namespace hfree {

double copies_through_edge(std::uint64_t n, const PatternGraph& h) {
  const int v = h.vertex_count();
  if (n < static_cast<std::uint64_t>(v)) return 0.0;
  double falling = 1.0;  // (n-2)! / (n-v)!
  for (int i = 2; i < v; ++i) falling *= static_cast<double>(n - i);
  return 2.0 * h.edge_count() * falling / static_cast<double>(automorphism_count(h));
}

AsymptoticParams asymptotic_params(std::uint64_t n, const PatternGraph& h,
                                   const ParamOverrides& overrides, bool require_rho) {
  if (n < 3) throw ParameterError("asymptotic parameters need n >= 3");
  if (!h.admissible()) throw ParameterError("asymptotic parameters need v_H, e_H >= 3");
  const double nd = static_cast<double>(n);
  const double ln_n = std::log(nd);
  const int v = h.vertex_count();
  const int e = h.edge_count();
  const double exponent = static_cast<double>(v - 2) / (e - 1);

  AsymptoticParams p;
  p.n = n;
  p.window_unit = std::pow(nd, -exponent);
  p.formula_k = std::exp(std::sqrt(ln_n));  // n^{(ln n)^{-1/2}}
  p.formula_rho = p.formula_k * p.window_unit;
  p.formula_c = static_cast<std::int64_t>(std::floor(std::pow(ln_n, 1.0 / (8.0 * e))));
  p.formula_depth = 2 * static_cast<std::int64_t>(std::floor(std::pow(ln_n, 0.25))) + 1;
  try {
    p.lambda_one = copies_through_edge(n, h);
    p.formula_lambda = p.lambda_one / std::pow(nd, v - 2);
  } catch (const CapabilityError&) {
    if (!overrides.lambda) throw;
    p.lambda_one = p.formula_lambda = std::nan("");  // only the override is known
  }

  p.overrides = overrides;
  p.k = overrides.k.value_or(p.formula_k);
  p.rho = overrides.rho.value_or(p.k * p.window_unit);
  p.c = overrides.c.value_or(p.formula_c);
  p.depth = overrides.depth.value_or(p.formula_depth);
  p.lambda = overrides.lambda.value_or(p.formula_lambda);

  if (require_rho && !(p.rho > 0.0 && p.rho <= 1.0)) {
    std::ostringstream msg;
    msg << "rho = k n^{-(v_H-2)/(e_H-1)} = " << p.rho << " is outside (0,1] at n=" << n
        << "; override rho (or k) to sample G(n,rho) at this size";
    throw ParameterError(msg.str());
  }
  return p;
}

Band e1_band(const AsymptoticParams& p, const PatternGraph& h) {
  const double e = h.edge_count();
  return Band{p.lambda * std::pow(p.k, e - 1.0), std::pow(p.k, e / 2.0 - 1.0 / 3.0) / 2.0};
}

std::int64_t rt_outdegree(const AsymptoticParams& p, const PatternGraph& h) {
  const double e = h.edge_count();
  return static_cast<std::int64_t>(std::floor(p.lambda * std::pow(p.k, e - 1.0))) -
         static_cast<std::int64_t>(std::floor(std::pow(p.k, e / 2.0 - 1.0 / 3.0)));
}

}  // namespace hfree
