#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netfuncap/errors.hpp"
#include "netfuncap/network.hpp"

namespace netfuncap {

/// Default cap on q^s for exhaustive evaluation.
inline constexpr std::uint64_t kDefaultStateBudget = std::uint64_t{1} << 20;

enum class FunctionKind { Identity, ArithmeticSum, ModSum, Histogram, Linear, Maximum, Minimum, Table };

std::string_view to_string(FunctionKind kind);

/// Value of a target function packed into one integer. Scalar kinds use the
/// value itself; identity packs x as a base-q numeral (x_1 most significant);
/// histogram packs (c_0..c_{q-1}) as a base-(s+1) numeral (c_0 most significant).
using ValueCode = std::int64_t;

/// f : {0..q-1}^s -> B. Immutable; the full value table is materialized at
/// construction so every exhaustive query is a table scan.
class TargetFunction {
 public:
  static TargetFunction identity(int s, int q, std::uint64_t budget = kDefaultStateBudget);
  static TargetFunction arithmetic_sum(int s, int q, std::uint64_t budget = kDefaultStateBudget);
  static TargetFunction mod_sum(int s, int q, int r, std::uint64_t budget = kDefaultStateBudget);
  static TargetFunction histogram(int s, int q, std::uint64_t budget = kDefaultStateBudget);
  /// sum a_i x_i over the prime field of size q.
  static TargetFunction linear(int s, int q, std::vector<int> coefficients,
                               std::uint64_t budget = kDefaultStateBudget);
  static TargetFunction maximum(int s, int q, std::uint64_t budget = kDefaultStateBudget);
  static TargetFunction minimum(int s, int q, std::uint64_t budget = kDefaultStateBudget);
  /// Explicit values indexed by x read as a base-q numeral, x_1 most significant.
  static TargetFunction table(int s, int q, std::vector<std::int64_t> values);

  int arity() const { return s_; }
  int alphabet_size() const { return q_; }
  FunctionKind kind() const { return kind_; }
  int modulus() const { return r_; }
  const std::vector<int>& coefficients() const { return coefficients_; }
  const std::vector<std::int64_t>& table_values() const { return table_values_; }

  bool declared_divisible() const { return divisible_; }
  TargetFunction with_declared_divisible(bool flag) const;

  /// Human-readable form, e.g. "mod_sum(r=2)".
  std::string name() const;

  /// f(x) in tuple form (length 1 for scalar kinds).
  std::vector<std::int64_t> evaluate(std::span<const int> x) const;
  ValueCode code(std::span<const int> x) const;
  /// Value code of the x whose base-q numeral is `index`.
  ValueCode code_at(std::uint64_t index) const;
  std::vector<std::int64_t> decode(ValueCode code) const;

  /// q^s.
  std::uint64_t domain_size() const { return domain_size_; }
  /// True when the value table was materialized (q^s within budget).
  bool tabulated() const { return !values_.empty(); }
  const std::vector<ValueCode>& values() const;

 private:
  TargetFunction(FunctionKind kind, int s, int q) : kind_(kind), s_(s), q_(q) {}
  ValueCode compute(std::span<const int> x) const;
  void finish(std::uint64_t budget);

  FunctionKind kind_;
  int s_;
  int q_;
  int r_ = 0;
  std::vector<int> coefficients_;
  std::vector<std::int64_t> table_values_;
  bool divisible_ = false;
  std::uint64_t domain_size_ = 0;
  std::vector<ValueCode> values_;
};

/// x as digits from its base-q index (x_1 most significant).
std::vector<int> digits_of(std::uint64_t index, int q, int length);
std::uint64_t index_of(std::span<const int> digits, int q);

/// Equivalence classes of A^{|I|} under a == b (interchangeable on I for
/// every fixed completion). Tuples a are ordered as base-q numerals with the
/// lowest source index of I most significant.
struct FootprintResult {
  SourceSet index_set = 0;
  int class_count = 0;
  /// 1-based class per tuple; first-seen fingerprint gets class 1.
  std::vector<int> class_of;
};

FootprintResult footprint(const TargetFunction& f, SourceSet index_set);

/// R_{I,f} for every I, indexed by the bitmask of I.
std::vector<int> footprint_sizes(const TargetFunction& f);

/// |f(A^s)|.
std::size_t range_size(const TargetFunction& f);

/// Invariance under every adjacent transposition, which generates S_s.
bool is_symmetric(const TargetFunction& f);

struct LambdaIndex {
  double value = 0.0;
  SourceSet argument = 0;
};

/// min over nonempty I of log_q R_{I,f} / |I|.
LambdaIndex lambda_exponential_index(const TargetFunction& f);
/// max over nonempty I of log_q R_{I,f}.
LambdaIndex lambda_bounded_index(const TargetFunction& f);
/// min over nonempty I of R_{I,f}.
int min_footprint(const TargetFunction& f);

/// R_{I,f} <= |f(A^s)| for every nonempty I. Necessary for divisibility,
/// not sufficient: a true result certifies nothing.
bool divisible_necessary_check(const TargetFunction& f);

}  // namespace netfuncap
