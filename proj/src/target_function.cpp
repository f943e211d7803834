#include "netfuncap/target_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace netfuncap {
namespace {

bool is_prime(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

std::uint64_t checked_power(int base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(base)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= static_cast<std::uint64_t>(base);
  }
  return out;
}

void check_shape(int s, int q) {
  if (s < 1) throw Error(ErrorKind::InvalidFunction, "arity must be positive");
  if (q < 2) throw Error(ErrorKind::InvalidFunction, "alphabet size must be at least 2");
  if (s > 31) throw Error(ErrorKind::InvalidFunction, "at most 31 arguments supported");
}

}  // namespace

std::string_view to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::Identity: return "identity";
    case FunctionKind::ArithmeticSum: return "arithmetic_sum";
    case FunctionKind::ModSum: return "mod_sum";
    case FunctionKind::Histogram: return "histogram";
    case FunctionKind::Linear: return "linear";
    case FunctionKind::Maximum: return "maximum";
    case FunctionKind::Minimum: return "minimum";
    case FunctionKind::Table: return "table";
  }
  return "unknown";
}

std::vector<int> digits_of(std::uint64_t index, int q, int length) {
  std::vector<int> digits(length);
  for (int i = length - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(index % static_cast<std::uint64_t>(q));
    index /= static_cast<std::uint64_t>(q);
  }
  return digits;
}

std::uint64_t index_of(std::span<const int> digits, int q) {
  std::uint64_t index = 0;
  for (int d : digits) index = index * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(d);
  return index;
}

TargetFunction TargetFunction::identity(int s, int q, std::uint64_t budget) {
  check_shape(s, q);
  TargetFunction f(FunctionKind::Identity, s, q);
  f.divisible_ = true;
  f.finish(budget);
  return f;
}

TargetFunction TargetFunction::arithmetic_sum(int s, int q, std::uint64_t budget) {
  check_shape(s, q);
  TargetFunction f(FunctionKind::ArithmeticSum, s, q);
  f.divisible_ = true;
  f.finish(budget);
  return f;
}

TargetFunction TargetFunction::mod_sum(int s, int q, int r, std::uint64_t budget) {
  check_shape(s, q);
  if (r < 2 || r > q) throw Error(ErrorKind::InvalidFunction, "mod-r sum requires 2 <= r <= q");
  TargetFunction f(FunctionKind::ModSum, s, q);
  f.r_ = r;
  f.divisible_ = true;
  f.finish(budget);
  return f;
}

TargetFunction TargetFunction::histogram(int s, int q, std::uint64_t budget) {
  check_shape(s, q);
  TargetFunction f(FunctionKind::Histogram, s, q);
  f.finish(budget);
  return f;
}

TargetFunction TargetFunction::linear(int s, int q, std::vector<int> coefficients, std::uint64_t budget) {
  check_shape(s, q);
  if (!is_prime(q)) {
    throw Error(ErrorKind::NonPrimeFieldForLinear, "linear functions need a prime field, got q=" + std::to_string(q));
  }
  if (static_cast<int>(coefficients.size()) != s) {
    throw Error(ErrorKind::ArityMismatch, "expected " + std::to_string(s) + " coefficients");
  }
  for (int& a : coefficients) a = ((a % q) + q) % q;
  TargetFunction f(FunctionKind::Linear, s, q);
  f.coefficients_ = std::move(coefficients);
  f.finish(budget);
  return f;
}

TargetFunction TargetFunction::maximum(int s, int q, std::uint64_t budget) {
  check_shape(s, q);
  TargetFunction f(FunctionKind::Maximum, s, q);
  f.divisible_ = true;
  f.finish(budget);
  return f;
}

TargetFunction TargetFunction::minimum(int s, int q, std::uint64_t budget) {
  check_shape(s, q);
  TargetFunction f(FunctionKind::Minimum, s, q);
  f.divisible_ = true;
  f.finish(budget);
  return f;
}

TargetFunction TargetFunction::table(int s, int q, std::vector<std::int64_t> values) {
  check_shape(s, q);
  if (values.size() != checked_power(q, s)) {
    throw Error(ErrorKind::ArityMismatch, "table length must equal q^s = " + std::to_string(checked_power(q, s)));
  }
  TargetFunction f(FunctionKind::Table, s, q);
  f.table_values_ = std::move(values);
  f.finish(std::numeric_limits<std::uint64_t>::max());
  return f;
}

TargetFunction TargetFunction::with_declared_divisible(bool flag) const {
  TargetFunction copy = *this;
  copy.divisible_ = flag;
  return copy;
}

void TargetFunction::finish(std::uint64_t budget) {
  domain_size_ = checked_power(q_, s_);
  if (domain_size_ > budget) return;
  values_.resize(domain_size_);
  std::vector<int> x(s_, 0);
  for (std::uint64_t index = 0; index < domain_size_; ++index) {
    values_[index] = compute(x);
    for (int i = s_ - 1; i >= 0; --i) {
      if (++x[i] < q_) break;
      x[i] = 0;
    }
  }
  // f must depend on every argument
  std::uint64_t stride = 1;
  for (int i = s_ - 1; i >= 0; --i, stride *= static_cast<std::uint64_t>(q_)) {
    bool depends = false;
    for (std::uint64_t index = 0; index < domain_size_ && !depends; ++index) {
      const auto digit = (index / stride) % static_cast<std::uint64_t>(q_);
      if (digit + 1 < static_cast<std::uint64_t>(q_) && values_[index] != values_[index + stride]) depends = true;
    }
    if (!depends) {
      throw Error(ErrorKind::InvalidFunction, name() + " does not depend on argument " + std::to_string(i + 1));
    }
  }
}

const std::vector<ValueCode>& TargetFunction::values() const {
  if (values_.empty()) {
    throw Error(ErrorKind::BudgetExceeded,
                "q^s = " + std::to_string(domain_size_) + " exceeds the exhaustive state budget");
  }
  return values_;
}

std::string TargetFunction::name() const {
  std::string out(to_string(kind_));
  if (kind_ == FunctionKind::ModSum) out += "(r=" + std::to_string(r_) + ")";
  if (kind_ == FunctionKind::Linear) {
    out += "(";
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
      out += (i ? "," : "") + std::to_string(coefficients_[i]);
    }
    out += ")";
  }
  return out;
}

ValueCode TargetFunction::compute(std::span<const int> x) const {
  switch (kind_) {
    case FunctionKind::Identity:
      return static_cast<ValueCode>(index_of(x, q_));
    case FunctionKind::ArithmeticSum: {
      ValueCode sum = 0;
      for (int v : x) sum += v;
      return sum;
    }
    case FunctionKind::ModSum: {
      ValueCode sum = 0;
      for (int v : x) sum += v;
      return sum % r_;
    }
    case FunctionKind::Histogram: {
      std::vector<int> counts(q_, 0);
      for (int v : x) ++counts[v];
      ValueCode packed = 0;
      for (int c : counts) packed = packed * (s_ + 1) + c;
      return packed;
    }
    case FunctionKind::Linear: {
      ValueCode sum = 0;
      for (int i = 0; i < s_; ++i) sum = (sum + static_cast<ValueCode>(coefficients_[i]) * x[i]) % q_;
      return sum;
    }
    case FunctionKind::Maximum:
      return *std::max_element(x.begin(), x.end());
    case FunctionKind::Minimum:
      return *std::min_element(x.begin(), x.end());
    case FunctionKind::Table:
      return table_values_[index_of(x, q_)];
  }
  return 0;
}

ValueCode TargetFunction::code(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != s_) {
    throw Error(ErrorKind::ArityMismatch, "expected " + std::to_string(s_) + " arguments");
  }
  for (int v : x) {
    if (v < 0 || v >= q_) throw Error(ErrorKind::OutOfAlphabet, std::to_string(v));
  }
  if (!values_.empty()) return values_[index_of(x, q_)];
  return compute(x);
}

ValueCode TargetFunction::code_at(std::uint64_t index) const {
  if (!values_.empty()) return values_[index];
  const auto x = digits_of(index, q_, s_);
  return compute(x);
}

std::vector<std::int64_t> TargetFunction::evaluate(std::span<const int> x) const {
  return decode(code(x));
}

std::vector<std::int64_t> TargetFunction::decode(ValueCode code) const {
  if (kind_ == FunctionKind::Identity) {
    const auto digits = digits_of(static_cast<std::uint64_t>(code), q_, s_);
    return {digits.begin(), digits.end()};
  }
  if (kind_ == FunctionKind::Histogram) {
    std::vector<std::int64_t> counts(q_);
    for (int i = q_ - 1; i >= 0; --i) {
      counts[i] = code % (s_ + 1);
      code /= s_ + 1;
    }
    return counts;
  }
  return {code};
}

FootprintResult footprint(const TargetFunction& f, SourceSet index_set) {
  const auto& values = f.values();
  const int s = f.arity();
  const auto q = static_cast<std::uint64_t>(f.alphabet_size());
  if (s < 32 && (index_set >> s) != 0) throw Error(ErrorKind::InvalidFunction, "index set exceeds arity");

  // Place value of each argument in the base-q index of x.
  std::vector<std::uint64_t> place(s);
  for (int i = s - 1, p = 1; i >= 0; --i) {
    place[i] = static_cast<std::uint64_t>(p);
    p *= static_cast<int>(q);
  }
  std::vector<int> inside;
  std::vector<int> outside;
  for (int i = 0; i < s; ++i) (index_set >> i & 1U ? inside : outside).push_back(i);

  // offset[t] = contribution to the x-index of the t-th tuple over `args`,
  // tuples enumerated as base-q numerals with args[0] most significant.
  auto offsets = [&](const std::vector<int>& args) {
    std::vector<std::uint64_t> out{0};
    for (int arg : args) {
      std::vector<std::uint64_t> next;
      next.reserve(out.size() * q);
      for (auto base : out) {
        for (std::uint64_t d = 0; d < q; ++d) next.push_back(base + d * place[arg]);
      }
      out = std::move(next);
    }
    return out;
  };
  const auto a_offsets = offsets(inside);
  const auto c_offsets = offsets(outside);

  FootprintResult result;
  result.index_set = index_set;
  result.class_of.resize(a_offsets.size());
  std::map<std::vector<ValueCode>, int> classes;
  std::vector<ValueCode> fingerprint(c_offsets.size());
  for (std::size_t a = 0; a < a_offsets.size(); ++a) {
    for (std::size_t c = 0; c < c_offsets.size(); ++c) fingerprint[c] = values[a_offsets[a] + c_offsets[c]];
    auto [it, inserted] = classes.emplace(fingerprint, static_cast<int>(classes.size()) + 1);
    result.class_of[a] = it->second;
  }
  result.class_count = static_cast<int>(classes.size());
  return result;
}

std::vector<int> footprint_sizes(const TargetFunction& f) {
  const SourceSet full = (SourceSet{1} << f.arity()) - 1;
  std::vector<int> sizes(static_cast<std::size_t>(full) + 1);
  for (SourceSet mask = 0; mask <= full; ++mask) sizes[mask] = footprint(f, mask).class_count;
  return sizes;
}

std::size_t range_size(const TargetFunction& f) {
  const auto& values = f.values();
  return std::set<ValueCode>(values.begin(), values.end()).size();
}

bool is_symmetric(const TargetFunction& f) {
  const auto& values = f.values();
  const int s = f.arity();
  const auto q = static_cast<std::uint64_t>(f.alphabet_size());
  for (std::uint64_t index = 0; index < values.size(); ++index) {
    std::uint64_t place = 1;
    for (int i = s - 1; i >= 1; --i, place *= q) {
      // swap digits at argument positions i-1 and i
      const std::uint64_t lo = (index / place) % q;
      const std::uint64_t hi = (index / (place * q)) % q;
      const std::uint64_t swapped = index - lo * place - hi * place * q + hi * place + lo * place * q;
      if (values[index] != values[swapped]) return false;
    }
  }
  return true;
}

LambdaIndex lambda_exponential_index(const TargetFunction& f) {
  const auto sizes = footprint_sizes(f);
  const double log_q = std::log(static_cast<double>(f.alphabet_size()));
  LambdaIndex best{std::numeric_limits<double>::infinity(), 0};
  for (SourceSet mask = 1; mask < sizes.size(); ++mask) {
    const double value = std::log(static_cast<double>(sizes[mask])) / log_q / popcount(mask);
    if (value < best.value - 1e-12) best = {value, mask};
  }
  return best;
}

LambdaIndex lambda_bounded_index(const TargetFunction& f) {
  const auto sizes = footprint_sizes(f);
  const double log_q = std::log(static_cast<double>(f.alphabet_size()));
  LambdaIndex best{-std::numeric_limits<double>::infinity(), 0};
  for (SourceSet mask = 1; mask < sizes.size(); ++mask) {
    const double value = std::log(static_cast<double>(sizes[mask])) / log_q;
    if (value > best.value + 1e-12) best = {value, mask};
  }
  return best;
}

int min_footprint(const TargetFunction& f) {
  const auto sizes = footprint_sizes(f);
  return *std::min_element(sizes.begin() + 1, sizes.end());
}

bool divisible_necessary_check(const TargetFunction& f) {
  const auto range = range_size(f);
  const auto sizes = footprint_sizes(f);
  return std::all_of(sizes.begin() + 1, sizes.end(), [&](int r) { return static_cast<std::size_t>(r) <= range; });
}

}  // namespace netfuncap
