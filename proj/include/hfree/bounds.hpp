#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hfree/params.hpp"
#include "hfree/pattern.hpp"

namespace hfree {

/// tau(i) = ((100 lambda)^{-1} ln i)^{1/(e_H-1)} / (i+1) - 2^{-D+1}.
double tau(std::int64_t i, double lambda, int e_h, std::int64_t depth);

/// (1 - ln i / (100 m))^{exponent}, with m = lambda k^{e_H-1}. Evaluated
/// through log1p; a non-positive base gives 0.
double product_term(std::int64_t i, double m, double exponent);

struct BoundTerm {
  std::int64_t i = 0;
  double tau = 0.0;
  /// tau(i) > 0: the first case can fire at i and gives tau(i)/2.
  bool tau_positive = false;
  double case1 = 0.0;            // tau(i) / 2
  double product = 0.0;          // exponent lambda k^{e_H-1}
  double product_rt = 0.0;       // exponent floor(lambda k^{e_H-1}) - floor(k^{e_H/2-1/3})
  bool base_nonpositive = false;  // ln i >= 100 lambda k^{e_H-1}
  std::string fired;             // "tau" or "product"
};

struct BoundTrace {
  double lambda = 0.0, k = 0.0;
  std::int64_t c = 0, depth = 0;
  double lambda_k = 0.0;  // lambda k^{e_H-1}
  std::int64_t rt_outdegree = 0;
  std::vector<BoundTerm> terms;  // i = ceil(c/2) .. c-1
  double case1 = 0.0;            // min_i tau(i)/2
  double case2 = 0.0;            // (1/c) sum_i product
  double case2_rt = 0.0;         // same with the RT outdegree exponent
  double raw_bound = 0.0;        // min(case1, case2)
  double bound = 0.0;            // max(0, raw_bound)
  double shape = 0.0;            // (ln c)^{1/(e_H-1)} / c
};

/// Either p_D(0,i) >= tau(i) for some i (then p_D(0,c) >= tau(i)/2) or the
/// sum with tau substituted applies; the implied bound is the smaller of
/// the two cases. Requires c >= 2, D >= 2, k > c.
BoundTrace survival_bound_recursion(const AsymptoticParams& params, const PatternGraph& h);

}  // namespace hfree
