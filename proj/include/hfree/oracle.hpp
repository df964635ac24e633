#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hfree/graph.hpp"
#include "hfree/pattern.hpp"

namespace hfree {

enum class OracleMethod { kFullPermutation, kStateRecursion };

std::string to_string(OracleMethod m);

struct ExactResult {
  Rational value;
  std::uint64_t enumeration_size = 0;  // orders (full) or memoized states (recursion)
  OracleMethod method = OracleMethod::kFullPermutation;
};

inline constexpr std::uint32_t kFullPermutationMaxN = 5;
inline constexpr std::uint32_t kStateRecursionMaxN = 7;
inline constexpr std::uint32_t kExtremalMaxN = 7;

/// Edge masks (over the C(n,2) lexicographic edge ids) of every copy of H in
/// K_n, found by trying all injective vertex maps. n <= 7.
std::vector<std::uint32_t> copy_masks(std::uint32_t n, const PatternGraph& h);

/// E[e(M_n(H))] exactly. Full-permutation mode walks every edge order
/// (n <= 5). State recursion averages over the next open edge given the
/// accepted graph (n <= 7).
ExactResult exact_expectation(std::uint32_t n, const PatternGraph& h, OracleMethod method);
/// Full permutation for n <= 5, state recursion above.
ExactResult exact_expectation(std::uint32_t n, const PatternGraph& h);

struct ExtremalResult {
  int value = 0;
  std::uint64_t nodes = 0;
  EdgeSet witness;
};

/// ex(n, H) by branch and bound over edge subsets (n <= 7).
ExtremalResult exact_extremal(std::uint32_t n, const PatternGraph& h);

}  // namespace hfree
