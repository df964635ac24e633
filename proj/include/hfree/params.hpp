#pragma once

#include <cstdint>
#include <optional>

#include "hfree/pattern.hpp"

namespace hfree {

struct ParamOverrides {
  std::optional<double> k;
  std::optional<double> rho;
  std::optional<std::int64_t> c;
  std::optional<std::int64_t> depth;  // D
  std::optional<double> lambda;

  bool any() const noexcept { return k || rho || c || depth || lambda; }
};

/// The n-dependent constants of the survival-tree argument:
///   k = n^{(ln n)^{-1/2}},  rho = k n^{-(v_H-2)/(e_H-1)},
///   c = floor((ln n)^{1/(8 e_H)}),  D = 2 floor((ln n)^{1/4}) + 1,
///   lambda = |Lambda(g,1)| n^{-(v_H-2)}.
/// Both the formula values and the values in force after overrides are kept.
struct AsymptoticParams {
  std::uint64_t n = 0;
  double k = 0, rho = 0, lambda = 0;
  std::int64_t c = 0, depth = 0;

  double formula_k = 0, formula_rho = 0, formula_lambda = 0;
  std::int64_t formula_c = 0, formula_depth = 0;
  ParamOverrides overrides;

  /// n^{-(v_H-2)/(e_H-1)}: the birthtime scale of the conditioning window.
  double window_unit = 0;
  /// Lambda(g,1) exactly, as a double.
  double lambda_one = 0;
};

/// |Lambda(g,1)| = 2 e_H (n-2)! / ((n-v_H)! |Aut(H)|), the number of copies
/// of H in K_n through a fixed edge.
double copies_through_edge(std::uint64_t n, const PatternGraph& h);

/// Throws ParameterError for n < 3, and when the resulting rho exceeds 1
/// unless require_rho is false (pure formula evaluation, no sampling).
AsymptoticParams asymptotic_params(std::uint64_t n, const PatternGraph& h,
                                   const ParamOverrides& overrides = {}, bool require_rho = true);

/// The E1 band for |Lambda(g,rho)|: lambda k^{e_H-1} -/+ k^{e_H/2-1/3}/2.
struct Band {
  double center = 0;
  double half_width = 0;
  double lower() const noexcept { return center - half_width; }
  double upper() const noexcept { return center + half_width; }
  bool contains(double x) const noexcept { return x >= lower() && x <= upper(); }
};

Band e1_band(const AsymptoticParams& p, const PatternGraph& h);

/// floor(lambda k^{e_H-1}) - floor(k^{e_H/2-1/3}), the RT outdegree.
std::int64_t rt_outdegree(const AsymptoticParams& p, const PatternGraph& h);

}  // namespace hfree
