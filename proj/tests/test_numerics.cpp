#include <cmath>
#include <vector>

#include "doctest.h"
#include "hfree/bounds.hpp"
#include "hfree/error.hpp"
#include "hfree/estimators.hpp"
#include "hfree/params.hpp"
#include "hfree/stats.hpp"

using namespace hfree;

TEST_CASE("summary statistics") {
  const std::vector<double> xs = {1, 2, 3, 4};
  const Summary s = summarize(xs);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.variance == doctest::Approx(5.0 / 3.0));
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));
  CHECK(summarize(std::vector<double>{}).count == 0);
}

TEST_CASE("exponent fit recovers a power law") {
  std::vector<std::pair<double, double>> pts;
  for (double n : {100.0, 200.0, 400.0, 800.0}) pts.emplace_back(n, 3.0 * std::pow(n, 1.5));
  const FitResult f = fit_exponent(pts);
  CHECK(f.slope == doctest::Approx(1.5));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)));
  CHECK(f.r_squared == doctest::Approx(1.0));
  const std::vector<double> se = {1, 1, 1, 1};
  const FitResult g = fit_exponent(pts, se);
  CHECK(g.propagated);
  CHECK(g.slope_se > 0);
  CHECK_THROWS_AS(fit_exponent(std::vector<std::pair<double, double>>{{1, 1}, {2, 2}}), ParameterError);
}

TEST_CASE("run_indexed is deterministic and propagates errors") {
  const auto a = run_indexed<int>(100, 1, [](std::size_t i) { return int(i * i); });
  const auto b = run_indexed<int>(100, 8, [](std::size_t i) { return int(i * i); });
  CHECK(a == b);
  CHECK_THROWS_AS(run_indexed<int>(10, 3,
                                   [](std::size_t i) {
                                     if (i == 7) throw DataError("boom");
                                     return 0;
                                   }),
                  DataError);
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 9) == derive_seed(5, 9));
  Rng a = make_rng(5, 9), b(derive_seed(5, 9));
  CHECK(a() == b());
}

TEST_CASE("asymptotic parameters") {
  const PatternGraph k3 = parse_pattern_name("K3");
  CHECK(copies_through_edge(10, k3) == doctest::Approx(8));
  CHECK(copies_through_edge(10, parse_pattern_name("C4")) == doctest::Approx(2 * 4 * 8 * 7 / 8.0));
  const AsymptoticParams p = asymptotic_params(10'000, k3, {});
  const double ln = std::log(1e4);
  CHECK(p.k == doctest::Approx(std::pow(1e4, 1 / std::sqrt(ln))));
  CHECK(p.rho == doctest::Approx(p.k / 100.0));
  CHECK(p.c == static_cast<std::int64_t>(std::floor(std::pow(ln, 1.0 / 24))));
  CHECK(p.depth == 2 * static_cast<std::int64_t>(std::floor(std::pow(ln, 0.25))) + 1);
  CHECK(p.lambda == doctest::Approx(9998.0 / 10000.0));

  ParamOverrides o;
  o.rho = 0.2;
  o.depth = 3;
  const AsymptoticParams q = asymptotic_params(40, k3, o);
  CHECK(q.rho == 0.2);
  CHECK(q.depth == 3);
  CHECK(q.formula_depth != 0);
  CHECK_THROWS_AS(asymptotic_params(2, k3), ParameterError);
  ParamOverrides big;
  big.rho = 1.5;
  CHECK_THROWS_AS(asymptotic_params(40, k3, big), ParameterError);
}

TEST_CASE("survival bound recursion") {
  CHECK(tau(2, 1.0, 3, 3) == doctest::Approx(std::sqrt(std::log(2.0) / 100.0) / 3.0 - 0.25));
  CHECK(product_term(2, 1.0, 10.0) == doctest::Approx(std::pow(1 - std::log(2.0) / 100.0, 10.0)));
  CHECK(product_term(3, 1e-3, 5.0) == 0.0);
  CHECK_THROWS_AS(tau(0, 1.0, 3, 3), DomainError);

  const PatternGraph k3 = parse_pattern_name("K3");
  ParamOverrides o;
  o.c = 6;
  o.k = 20;
  o.depth = 7;
  const AsymptoticParams p = asymptotic_params(1'000'000, k3, o, false);
  const BoundTrace t = survival_bound_recursion(p, k3);
  CHECK(t.terms.size() == 3);  // i = 3, 4, 5
  CHECK(t.terms.front().i == 3);
  double mn = 1e300, sum = 0;
  for (const BoundTerm& x : t.terms) {
    mn = std::min(mn, x.tau / 2);
    sum += x.product;
    CHECK(x.fired == (x.tau > 0 ? "tau" : "product"));
  }
  CHECK(t.case1 == doctest::Approx(mn));
  CHECK(t.case2 == doctest::Approx(sum / 6));
  CHECK(t.bound == doctest::Approx(std::max(0.0, std::min(t.case1, t.case2))));
  CHECK(t.shape == doctest::Approx(std::sqrt(std::log(6.0)) / 6));

  ParamOverrides small;
  small.c = 1;
  CHECK_THROWS_AS(survival_bound_recursion(asymptotic_params(1000, k3, small, false), k3), PreconditionError);
}

TEST_CASE("nested uniform moment identity") {
  const MomentCheck m = nested_uniform_moment_check(3, 2, 50'000, 8);
  CHECK(m.closed_form == doctest::Approx(1.0 / (3.0 * 5.0)));
  CHECK(std::fabs(m.z) < 4);
  CHECK(nested_uniform_moment_check(4, 1, 10, 1).closed_form == doctest::Approx(0.25));
}
