#include "netfuncap/sumset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace netfuncap {
namespace {

void check_family(const BlockFamily& family) {
  if (family.k < 1 || family.k > 24) throw Error(ErrorKind::DomainError, "k must lie in [1, 24]");
  if (family.sets.empty()) throw Error(ErrorKind::DomainError, "family needs at least one set");
  for (const auto& set : family.sets) {
    if (set.empty()) throw Error(ErrorKind::DomainError, "every A_i must be nonempty");
  }
}

/// Sumset as sorted codes of base-(M+1) numerals, component 1 most significant.
std::vector<std::uint64_t> sumset_codes(const BlockFamily& family, std::uint64_t budget) {
  check_family(family);
  std::uint64_t product = 1;
  for (const auto& set : family.sets) {
    if (product > budget / set.size()) throw Error(ErrorKind::BudgetExceeded, "product of |A_i| exceeds budget");
    product *= set.size();
  }
  const int k = family.k;
  const auto radix = static_cast<std::uint64_t>(family.size() + 1);
  std::vector<std::size_t> choice(family.sets.size(), 0);
  std::vector<int> sum(k, 0);
  std::vector<std::uint64_t> codes;
  codes.reserve(product);
  for (std::uint64_t t = 0; t < product; ++t) {
    std::fill(sum.begin(), sum.end(), 0);
    for (std::size_t i = 0; i < choice.size(); ++i) {
      const BinaryVector a = family.sets[i][choice[i]];
      for (int j = 0; j < k; ++j) sum[j] += static_cast<int>(a >> j & 1U);
    }
    std::uint64_t code = 0;
    for (int j = 0; j < k; ++j) code = code * radix + static_cast<std::uint64_t>(sum[j]);
    codes.push_back(code);
    for (std::size_t i = choice.size(); i-- > 0;) {
      if (++choice[i] < family.sets[i].size()) break;
      choice[i] = 0;
    }
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

std::uint64_t grid_size(int k, int M, std::uint64_t budget) {
  std::uint64_t size = 1;
  for (int j = 0; j < k; ++j) {
    if (size > budget / static_cast<std::uint64_t>(M + 1)) throw Error(ErrorKind::BudgetExceeded, "(M+1)^k exceeds budget");
    size *= static_cast<std::uint64_t>(M + 1);
  }
  return size;
}

}  // namespace

BlockFamily make_family(int k, const std::vector<std::vector<std::vector<int>>>& sets) {
  BlockFamily family{k, {}};
  for (const auto& set : sets) {
    std::vector<BinaryVector> packed;
    for (const auto& tuple : set) {
      if (static_cast<int>(tuple.size()) != k) throw Error(ErrorKind::DomainError, "vector length differs from k");
      BinaryVector a = 0;
      for (int j = 0; j < k; ++j) {
        if (tuple[j] != 0 && tuple[j] != 1) throw Error(ErrorKind::DomainError, "components must be 0 or 1");
        a |= static_cast<BinaryVector>(tuple[j]) << j;
      }
      packed.push_back(a);
    }
    std::sort(packed.begin(), packed.end());
    packed.erase(std::unique(packed.begin(), packed.end()), packed.end());
    family.sets.push_back(std::move(packed));
  }
  check_family(family);
  return family;
}

int component(BinaryVector a, int j) { return static_cast<int>(a >> (j - 1) & 1U); }

SumVector q_sum(std::span<const BinaryVector> tuple, int k) {
  SumVector out(k, 0);
  for (BinaryVector a : tuple) {
    for (int j = 0; j < k; ++j) out[j] += static_cast<int>(a >> j & 1U);
  }
  return out;
}

std::vector<SumVector> q_sumset(const BlockFamily& family, std::uint64_t budget) {
  const auto radix = static_cast<std::uint64_t>(family.size() + 1);
  std::vector<SumVector> out;
  for (std::uint64_t code : sumset_codes(family, budget)) {
    SumVector p(family.k);
    for (int j = family.k - 1; j >= 0; --j) {
      p[j] = static_cast<int>(code % radix);
      code /= radix;
    }
    out.push_back(std::move(p));
  }
  return out;
}

SumVector h_j(SumVector p, int j) {
  if (j < 1 || j > static_cast<int>(p.size())) throw Error(ErrorKind::DomainError, "j out of range");
  p[j - 1] = std::max(0, p[j - 1] - 1);
  return p;
}

BinaryVector h_j(BinaryVector a, int j) {
  if (j < 1 || j > 32) throw Error(ErrorKind::DomainError, "j out of range");
  return a & ~(BinaryVector{1} << (j - 1));
}

std::vector<BinaryVector> phi_j(const std::vector<BinaryVector>& set, int j) {
  std::vector<BinaryVector> out;
  out.reserve(set.size());
  for (BinaryVector a : set) {
    const BinaryVector lowered = h_j(a, j);
    out.push_back(std::binary_search(set.begin(), set.end(), lowered) ? a : lowered);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != set.size()) throw Error(ErrorKind::InternalError, "phi changed the set size");
  return out;
}

BlockFamily compress(const BlockFamily& family, int stages) {
  check_family(family);
  if (stages < 0) stages = family.k;
  BlockFamily out = family;
  for (auto& set : out.sets) {
    for (int j = 1; j <= stages; ++j) set = phi_j(set, j);
  }
  return out;
}

bool is_invariant(const std::vector<BinaryVector>& set, int j) { return phi_j(set, j) == set; }

bool check_invariance(const BlockFamily& family) {
  check_family(family);
  for (int t = 1; t <= family.k; ++t) {
    const BlockFamily stage = compress(family, t);
    for (const auto& set : stage.sets) {
      for (int m = 1; m <= t; ++m) {
        if (!is_invariant(set, m)) return false;
      }
    }
  }
  return true;
}

bool check_sumset_shrink(const BlockFamily& family, std::uint64_t budget) {
  std::size_t previous = sumset_codes(family, budget).size();
  for (int t = 1; t <= family.k; ++t) {
    const std::size_t next = sumset_codes(compress(family, t), budget).size();
    if (next > previous) return false;
    previous = next;
  }
  return true;
}

bool check_downward_closure(const BlockFamily& family, std::uint64_t budget) {
  const int k = family.k;
  const int M = family.size();
  const auto codes = sumset_codes(compress(family), budget);
  const std::uint64_t grid = grid_size(k, M, budget);
  const auto radix = static_cast<std::uint64_t>(M + 1);
  auto unpack = [&](std::uint64_t code) {
    std::vector<int> p(k);
    for (int j = k - 1; j >= 0; --j) {
      p[j] = static_cast<int>(code % radix);
      code /= radix;
    }
    return p;
  };
  std::vector<std::vector<int>> points;
  for (std::uint64_t code : codes) points.push_back(unpack(code));
  for (std::uint64_t code = 0; code < grid; ++code) {
    if (std::binary_search(codes.begin(), codes.end(), code)) continue;
    const auto x = unpack(code);
    for (const auto& p : points) {
      bool dominated = true;
      for (int j = 0; j < k && dominated; ++j) dominated = x[j] <= p[j];
      if (dominated) return false;
    }
  }
  return true;
}

ProductMinBound product_min_bound(int k, int M, double delta, std::uint64_t budget) {
  if (k < 1 || M < 1) throw Error(ErrorKind::DomainError, "k and M must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) throw Error(ErrorKind::DomainError, "delta must lie in (0, 1]");
  const std::uint64_t grid = grid_size(k, M, budget);
  const double threshold = delta * M * k - 1e-9;
  ProductMinBound out;
  out.lhs = std::numeric_limits<std::uint64_t>::max();
  std::vector<int> m(k, 0);
  for (std::uint64_t t = 0; t < grid; ++t) {
    const int total = std::accumulate(m.begin(), m.end(), 0);
    if (total >= threshold) {
      std::uint64_t product = 1;
      for (int v : m) product *= static_cast<std::uint64_t>(1 + v);
      if (product < out.lhs) {
        out.lhs = product;
        out.argmin = m;
      }
    }
    for (int j = k - 1; j >= 0; --j) {
      if (++m[j] <= M) break;
      m[j] = 0;
    }
  }
  out.rhs = std::pow(static_cast<double>(M + 1), delta * k);
  out.holds = static_cast<double>(out.lhs) >= out.rhs - 1e-9;
  return out;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double entropy_inverse(double target) {
  if (!(target >= 0.0 && target <= 1.0)) throw Error(ErrorKind::DomainError, "entropy target must lie in [0, 1]");
  double lo = 0.0;
  double hi = 0.5;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (binary_entropy(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double gamma(double x) {
  if (!(x >= 1.0)) throw Error(ErrorKind::DomainError, "gamma needs x >= 1, got " + std::to_string(x));
  if (x == 1.0) return 0.0;
  return entropy_inverse(0.5 * (1.0 - 1.0 / x));
}

LemmaCheck lemma_A2_check(const BlockFamily& family, int n, std::uint64_t budget) {
  check_family(family);
  const int k = family.k;
  if (n < 1 || k <= n) throw Error(ErrorKind::PreconditionViolated, "need k > n >= 1");
  const std::size_t minimum = std::size_t{1} << (k - n);
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    if (family.sets[i].size() < minimum) {
      throw Error(ErrorKind::PreconditionViolated,
                  "|A_" + std::to_string(i + 1) + "| < 2^(k-n) = " + std::to_string(minimum));
    }
  }
  LemmaCheck out;
  out.lhs = static_cast<double>(sumset_codes(family, budget).size());
  out.rhs = std::pow(static_cast<double>(family.size() + 1), gamma(static_cast<double>(k) / n) * k);
  out.holds = out.lhs >= out.rhs;
  return out;
}

LemmaCheck hamming_ball_check(int k, double delta) {
  if (k < 1 || k > 60) throw Error(ErrorKind::DomainError, "k must lie in [1, 60]");
  if (!(delta >= 0.0 && delta <= 0.5)) throw Error(ErrorKind::DomainError, "delta must lie in [0, 1/2]");
  const int top = static_cast<int>(std::floor(delta * k + 1e-9));
  double count = 0.0;
  double binomial = 1.0;
  for (int j = 0; j <= top; ++j) {
    count += binomial;
    binomial = binomial * (k - j) / (j + 1);
  }
  LemmaCheck out;
  out.lhs = count;
  out.rhs = std::exp2(k * binary_entropy(delta));
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

BlockFamily random_family(std::mt19937_64& rng, int k, int M, int n) {
  if (k < 1 || k > 20 || M < 1 || n < 0 || n >= k) throw Error(ErrorKind::DomainError, "need 0 <= n < k <= 20, M >= 1");
  const std::size_t full = std::size_t{1} << k;
  const std::size_t minimum = std::size_t{1} << (k - n);
  std::uniform_int_distribution<std::size_t> size_dist(minimum, full);
  BlockFamily family{k, {}};
  std::vector<BinaryVector> universe(full);
  std::iota(universe.begin(), universe.end(), BinaryVector{0});
  for (int i = 0; i < M; ++i) {
    std::shuffle(universe.begin(), universe.end(), rng);
    std::vector<BinaryVector> set(universe.begin(), universe.begin() + static_cast<std::ptrdiff_t>(size_dist(rng)));
    std::sort(set.begin(), set.end());
    family.sets.push_back(std::move(set));
  }
  return family;
}

bool AppendixSummary::all_hold() const {
  return invariance == families && shrink == families && closure == families && lemma_a2 == families &&
         product_holds == product_cases && hamming_holds == hamming_cases;
}

AppendixSummary appendix_suite(std::uint64_t seed, int families) {
  AppendixSummary out;
  out.seed = seed;
  out.families = families;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < families; ++t) {
    const int k = std::uniform_int_distribution<int>(2, 4)(rng);
    const int n = std::uniform_int_distribution<int>(1, k - 1)(rng);
    const int M = std::uniform_int_distribution<int>(1, 3)(rng);
    const BlockFamily family = random_family(rng, k, M, n);
    out.invariance += check_invariance(family);
    out.shrink += check_sumset_shrink(family);
    out.closure += check_downward_closure(family);
    out.lemma_a2 += lemma_A2_check(family, n).holds;
  }
  for (int k = 1; k <= 3; ++k) {
    for (int M = 1; M <= 3; ++M) {
      for (double delta : {0.25, 1.0 / 3.0, 0.5, 1.0}) {
        ++out.product_cases;
        out.product_holds += product_min_bound(k, M, delta).holds;
      }
    }
  }
  for (int k = 1; k <= 20; ++k) {
    for (int step = 1; step <= 10; ++step) {
      ++out.hamming_cases;
      out.hamming_holds += hamming_ball_check(k, 0.05 * step).holds;
    }
  }
  return out;
}

}  // namespace netfuncap
