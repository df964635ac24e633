#include "hfree/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hfree/error.hpp"

namespace hfree {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw NumericRangeError(std::string(what) + " is not finite in this parameter regime");
}

}  // namespace

double tau(std::int64_t i, double lambda, int e_h, std::int64_t depth) {
  if (i < 1) throw DomainError("tau needs i >= 1");
  if (!(lambda > 0.0)) throw DomainError("tau needs lambda > 0");
  const double base = std::log(static_cast<double>(i)) / (100.0 * lambda);
  const double head = std::pow(base, 1.0 / (e_h - 1)) / static_cast<double>(i + 1);
  const double out = head - std::ldexp(1.0, static_cast<int>(1 - depth));
  require_finite(out, "tau");
  return out;
}

double product_term(std::int64_t i, double m, double exponent) {
  const double x = std::log(static_cast<double>(i)) / (100.0 * m);
  if (x >= 1.0) return 0.0;
  const double out = std::exp(exponent * std::log1p(-x));
  require_finite(out, "product term");
  return out;
}

BoundTrace survival_bound_recursion(const AsymptoticParams& params, const PatternGraph& h) {
  if (params.c < 2) throw PreconditionError("bound recursion needs c >= 2");
  if (params.depth < 2) throw PreconditionError("bound recursion needs D >= 2");
  if (!(params.k > static_cast<double>(params.c))) throw PreconditionError("bound recursion needs k > c");
  if (!(params.lambda > 0.0)) throw PreconditionError("bound recursion needs lambda > 0");
  if (params.depth > 1000) throw NumericRangeError("D too large: 2^{-D+1} underflows");

  const int e = h.edge_count();
  BoundTrace t;
  t.lambda = params.lambda;
  t.k = params.k;
  t.c = params.c;
  t.depth = params.depth;
  t.lambda_k = params.lambda * std::pow(params.k, e - 1);
  require_finite(t.lambda_k, "lambda k^{e_H-1}");
  const double slack = std::floor(std::pow(params.k, e / 2.0 - 1.0 / 3.0));
  require_finite(slack, "k^{e_H/2-1/3}");
  const double rt = std::floor(t.lambda_k) - slack;
  if (std::fabs(rt) > 9e18) throw NumericRangeError("RT outdegree overflows a 64-bit integer");
  t.rt_outdegree = static_cast<std::int64_t>(rt);

  const std::int64_t first = (params.c + 1) / 2;
  t.case1 = std::numeric_limits<double>::infinity();
  double sum = 0.0, sum_rt = 0.0;
  for (std::int64_t i = first; i <= params.c - 1; ++i) {
    BoundTerm term;
    term.i = i;
    term.tau = tau(i, params.lambda, e, params.depth);
    term.tau_positive = term.tau > 0.0;
    term.case1 = term.tau / 2.0;
    term.base_nonpositive = std::log(static_cast<double>(i)) >= 100.0 * t.lambda_k;
    term.product = product_term(i, t.lambda_k, t.lambda_k);
    term.product_rt = product_term(i, t.lambda_k, std::max(0.0, rt));
    term.fired = term.tau_positive ? "tau" : "product";
    t.case1 = std::min(t.case1, term.case1);
    sum += term.product;
    sum_rt += term.product_rt;
    t.terms.push_back(term);
  }
  t.case2 = sum / static_cast<double>(params.c);
  t.case2_rt = sum_rt / static_cast<double>(params.c);
  t.raw_bound = std::min(t.case1, t.case2);
  t.bound = std::max(0.0, t.raw_bound);
  t.shape = std::pow(std::log(static_cast<double>(params.c)), 1.0 / (e - 1)) / static_cast<double>(params.c);
  return t;
}

}  // namespace hfree
