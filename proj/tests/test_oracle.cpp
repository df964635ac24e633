#include "doctest.h"
#include "hfree/error.hpp"
#include "hfree/estimators.hpp"
#include "hfree/oracle.hpp"

using namespace hfree;

TEST_CASE("exact expectations") {
  const PatternGraph k3 = parse_pattern_name("K3");
  CHECK(exact_expectation(3, k3).value == Rational(2));
  CHECK(exact_expectation(4, k3).value == Rational(56, 15));
  CHECK(exact_expectation(4, parse_pattern_name("C4")).value == Rational(4));
  // Nothing to forbid below v_H vertices.
  CHECK(exact_expectation(3, parse_pattern_name("K4")).value == Rational(3));
}

TEST_CASE("both oracle methods agree for n <= 5") {
  for (const char* name : {"K3", "C4", "K4", "paw", "K_{1,3}"}) {
    const PatternGraph h = parse_pattern_name(name);
    for (std::uint32_t n = 2; n <= 5; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      CHECK(exact_expectation(n, h, OracleMethod::kFullPermutation).value ==
            exact_expectation(n, h, OracleMethod::kStateRecursion).value);
    }
  }
}

TEST_CASE("Monte Carlo matches the oracle") {
  const PatternGraph h = parse_pattern_name("K3");
  const double exact = exact_expectation(6, h).value.convert_to<double>();
  const RunStats mc = estimate_expected_edges(6, h, 20'000, 17);
  CHECK(std::abs(mc.summary.mean - exact) <= 4 * mc.summary.std_error);
}

TEST_CASE("oracle limits") {
  const PatternGraph h = parse_pattern_name("K3");
  CHECK_THROWS_AS(exact_expectation(6, h, OracleMethod::kFullPermutation), CapabilityError);
  CHECK_THROWS_AS(exact_expectation(8, h), CapabilityError);
  CHECK_THROWS_AS(exact_extremal(8, h), CapabilityError);
  CHECK_THROWS_AS(exact_expectation(1, h), ParameterError);
}

TEST_CASE("extremal numbers") {
  const PatternGraph k3 = parse_pattern_name("K3");
  for (std::uint32_t n = 2; n <= 7; ++n) CHECK(exact_extremal(n, k3).value == int(n * n / 4));
  const int c4[] = {0, 0, 1, 3, 4, 6, 7, 9};
  for (std::uint32_t n = 2; n <= 7; ++n) CHECK(exact_extremal(n, parse_pattern_name("C4")).value == c4[n]);
  const ExtremalResult r = exact_extremal(6, parse_pattern_name("K4"));
  CHECK(r.value == 12);
  CHECK(r.witness.size() == 12);
}

TEST_CASE("copy masks count the copies of H in K_n") {
  CHECK(copy_masks(5, parse_pattern_name("K3")).size() == 10);
  CHECK(copy_masks(5, parse_pattern_name("C4")).size() == 15);
  CHECK(copy_masks(6, parse_pattern_name("C5")).size() == 72);
  CHECK(copy_masks(3, parse_pattern_name("K4")).empty());
}
