#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "netfuncap/errors.hpp"

namespace netfuncap {

/// Binary k-vector as a bitmask: component j (1-based) is bit j-1.
using BinaryVector = std::uint32_t;
/// Vector in {0..M}^k, component j at index j-1.
using SumVector = std::vector<int>;

inline constexpr std::uint64_t kDefaultProductBudget = std::uint64_t{1} << 22;

/// A_1..A_M, each a sorted set of binary k-vectors.
struct BlockFamily {
  int k = 1;
  std::vector<std::vector<BinaryVector>> sets;

  int size() const { return static_cast<int>(sets.size()); }
  bool operator==(const BlockFamily&) const = default;
};

/// Builds a family from explicit 0/1 tuples (component 1 first).
BlockFamily make_family(int k, const std::vector<std::vector<std::vector<int>>>& sets);

int component(BinaryVector a, int j);

/// Componentwise integer sum Q(a).
SumVector q_sum(std::span<const BinaryVector> tuple, int k);

/// Q(A_1 x ... x A_M), sorted lexicographically.
std::vector<SumVector> q_sumset(const BlockFamily& family, std::uint64_t budget = kDefaultProductBudget);

/// Decrements component j (1-based), floored at 0.
SumVector h_j(SumVector p, int j);
BinaryVector h_j(BinaryVector a, int j);

/// phi^(j)(A): each a moves to h^(j)(a) unless that point is already in A.
std::vector<BinaryVector> phi_j(const std::vector<BinaryVector>& set, int j);

/// Applies phi^(1)..phi^(stages) to every A_i (stages defaults to k).
BlockFamily compress(const BlockFamily& family, int stages = -1);

bool is_invariant(const std::vector<BinaryVector>& set, int j);

/// For every stage t <= k: after phi^(1)..phi^(t), each set is fixed by phi^(m), m <= t.
bool check_invariance(const BlockFamily& family);

/// |Q(U)| >= |Q(compress(U))|, checked after every single stage.
bool check_sumset_shrink(const BlockFamily& family, std::uint64_t budget = kDefaultProductBudget);

/// Q(compress(U)) is closed under componentwise <= inside {0..M}^k.
bool check_downward_closure(const BlockFamily& family, std::uint64_t budget = kDefaultProductBudget);

struct ProductMinBound {
  std::uint64_t lhs = 0;
  double rhs = 0.0;
  bool holds = false;
  std::vector<int> argmin;
};

/// min prod(1 + m_i) over 0 <= m_i <= M with sum m_i >= delta M k, against (M+1)^{delta k}.
ProductMinBound product_min_bound(int k, int M, double delta, std::uint64_t budget = kDefaultProductBudget);

double binary_entropy(double p);
/// y in [0, 1/2] with H(y) = target, target in [0, 1].
double entropy_inverse(double target);
/// H^{-1}((1 - 1/x) / 2) on [0, 1/2]. DomainError for x < 1.
double gamma(double x);

struct LemmaCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// |Q(U)| >= (M+1)^{gamma(k/n) k}. Requires k > n and |A_i| >= 2^{k-n}.
LemmaCheck lemma_A2_check(const BlockFamily& family, int n, std::uint64_t budget = kDefaultProductBudget);

/// sum_{j <= floor(delta k)} C(k, j) <= 2^{k H(delta)}.
LemmaCheck hamming_ball_check(int k, double delta);

/// M random sets with 2^{k-n} <= |A_i| <= 2^k.
BlockFamily random_family(std::mt19937_64& rng, int k, int M, int n);

/// Counts of passing checks over one seeded run of every lemma checker.
struct AppendixSummary {
  std::uint64_t seed = 0;
  int families = 0;
  int invariance = 0;
  int shrink = 0;
  int closure = 0;
  int lemma_a2 = 0;
  int product_cases = 0;
  int product_holds = 0;
  int hamming_cases = 0;
  int hamming_holds = 0;

  bool all_hold() const;
};

/// `families` random families (2 <= k <= 4, 1 <= n < k, 1 <= M <= 3), the
/// product bound for k, M <= 3 and delta in {1/4, 1/3, 1/2, 1}, and the
/// Hamming-ball count for k <= 20, delta in {0.05, ..., 0.5}.
AppendixSummary appendix_suite(std::uint64_t seed, int families = 100);

}  // namespace netfuncap
