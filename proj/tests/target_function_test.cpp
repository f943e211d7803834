#include <doctest.h>

#include <cmath>
#include <random>

#include "netfuncap/target_function.hpp"
#include "test_support.hpp"

using namespace netfuncap;

namespace {

ErrorKind error_of(auto&& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InternalError;
}

std::vector<TargetFunction> small_functions(int s, int q) {
  std::vector<TargetFunction> out{TargetFunction::identity(s, q), TargetFunction::arithmetic_sum(s, q),
                                  TargetFunction::histogram(s, q), TargetFunction::maximum(s, q),
                                  TargetFunction::minimum(s, q)};
  for (int r = 2; r <= q; ++r) out.push_back(TargetFunction::mod_sum(s, q, r));
  if (q == 2 || q == 3) {
    std::vector<int> coefficients(s, 1);
    coefficients.back() = q - 1;
    out.push_back(TargetFunction::linear(s, q, coefficients));
  }
  return out;
}

}  // namespace

TEST_CASE("values of the builtin kinds") {
  const auto sum = TargetFunction::arithmetic_sum(3, 3);
  CHECK(sum.code(std::vector<int>{2, 1, 2}) == 5);
  CHECK(TargetFunction::mod_sum(3, 3, 2).code(std::vector<int>{2, 1, 2}) == 1);
  CHECK(TargetFunction::maximum(3, 3).code(std::vector<int>{0, 2, 1}) == 2);
  CHECK(TargetFunction::minimum(3, 3).code(std::vector<int>{1, 2, 1}) == 1);
  CHECK(TargetFunction::linear(2, 3, {1, 2}).code(std::vector<int>{2, 2}) == 0);
  const auto identity = TargetFunction::identity(2, 3);
  CHECK(identity.evaluate(std::vector<int>{2, 1}) == std::vector<std::int64_t>{2, 1});
  const auto histogram = TargetFunction::histogram(3, 2);
  CHECK(histogram.evaluate(std::vector<int>{1, 0, 1}) == std::vector<std::int64_t>{1, 2});
  const auto table = TargetFunction::table(2, 2, {0, 1, 1, 5});
  CHECK(table.code_at(3) == 5);
  CHECK(table.name() == "table");
  CHECK(TargetFunction::mod_sum(2, 3, 2).name() == "mod_sum(r=2)");
  CHECK(TargetFunction::linear(2, 3, {1, 2}).name() == "linear(1,2)");
}

TEST_CASE("function construction errors") {
  CHECK(error_of([] { TargetFunction::linear(2, 4, {1, 1}); }) == ErrorKind::NonPrimeFieldForLinear);
  CHECK(error_of([] { TargetFunction::linear(2, 3, {1}); }) == ErrorKind::ArityMismatch);
  CHECK(error_of([] { TargetFunction::table(2, 2, {0, 1, 1}); }) == ErrorKind::ArityMismatch);
  CHECK(error_of([] { TargetFunction::table(2, 2, {0, 0, 1, 1}); }) == ErrorKind::InvalidFunction);
  CHECK(error_of([] { TargetFunction::mod_sum(2, 3, 4); }) == ErrorKind::InvalidFunction);
  CHECK(error_of([] { TargetFunction::linear(2, 3, {1, 0}); }) == ErrorKind::InvalidFunction);
  const auto sum = TargetFunction::arithmetic_sum(2, 2);
  CHECK(error_of([&] { sum.code(std::vector<int>{0, 2}); }) == ErrorKind::OutOfAlphabet);
  CHECK(error_of([&] { sum.code(std::vector<int>{0}); }) == ErrorKind::ArityMismatch);
}

TEST_CASE("state budget") {
  const auto big = TargetFunction::arithmetic_sum(3, 2, 4);
  CHECK_FALSE(big.tabulated());
  CHECK(error_of([&] { big.values(); }) == ErrorKind::BudgetExceeded);
  CHECK(big.code(std::vector<int>{1, 1, 1}) == 3);
}

TEST_CASE("footprint sizes match pairwise equivalence") {
  for (int s = 1; s <= 3; ++s) {
    for (int q = 2; q <= 3; ++q) {
      for (const auto& f : small_functions(s, q)) {
        const auto sizes = footprint_sizes(f);
        for (SourceSet I = 0; I < sizes.size(); ++I) {
          CAPTURE(f.name());
          CAPTURE(I);
          CHECK(sizes[I] == testing::oracle_footprint(f, I));
        }
      }
    }
  }
}

TEST_CASE("footprint classes are consistent with equivalence") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const int s = 3;
    const int q = 2;
    std::vector<std::int64_t> values(8);
    for (auto& v : values) v = std::uniform_int_distribution<int>(0, 3)(rng);
    std::optional<TargetFunction> f;
    try {
      f = TargetFunction::table(s, q, values);
    } catch (const Error&) {
      continue;
    }
    for (SourceSet I = 1; I < 8; ++I) {
      const auto fp = footprint(*f, I);
      // classes numbered by first appearance
      int seen = 0;
      for (int c : fp.class_of) {
        CHECK(c <= seen + 1);
        seen = std::max(seen, c);
      }
      CHECK(seen == fp.class_count);
      CHECK(fp.class_count == testing::oracle_footprint(*f, I));
    }
  }
}

TEST_CASE("footprint closed forms") {
  for (int s = 1; s <= 4; ++s) {
    for (int q = 2; q <= 3; ++q) {
      const auto sum = footprint_sizes(TargetFunction::arithmetic_sum(s, q));
      const auto maximum = footprint_sizes(TargetFunction::maximum(s, q));
      const auto identity = footprint_sizes(TargetFunction::identity(s, q));
      for (SourceSet I = 1; I < sum.size(); ++I) {
        CHECK(sum[I] == (q - 1) * popcount(I) + 1);
        CHECK(maximum[I] == q);
        CHECK(identity[I] == static_cast<int>(std::lround(std::pow(q, popcount(I)))));
      }
      for (int r = 2; r <= q; ++r) {
        const auto mod = footprint_sizes(TargetFunction::mod_sum(s, q, r));
        for (SourceSet I = 1; I < mod.size(); ++I) CHECK(mod[I] == r);
      }
    }
  }
}

TEST_CASE("footprint tuple order puts the lowest source first") {
  const auto f = TargetFunction::identity(3, 2);
  const auto fp = footprint(f, 0b101U);
  CHECK(fp.class_count == 4);
  CHECK(fp.class_of == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("symmetry and divisibility checks") {
  CHECK(is_symmetric(TargetFunction::arithmetic_sum(3, 3)));
  CHECK(is_symmetric(TargetFunction::maximum(3, 2)));
  CHECK(is_symmetric(TargetFunction::histogram(3, 3)));
  CHECK_FALSE(is_symmetric(TargetFunction::identity(2, 2)));
  CHECK_FALSE(is_symmetric(TargetFunction::linear(2, 3, {1, 2})));
  CHECK(is_symmetric(TargetFunction::linear(2, 3, {2, 2})));

  CHECK(divisible_necessary_check(TargetFunction::arithmetic_sum(3, 2)));
  CHECK(divisible_necessary_check(TargetFunction::identity(2, 3)));
  CHECK(TargetFunction::arithmetic_sum(2, 2).declared_divisible());
  CHECK_FALSE(TargetFunction::histogram(2, 2).declared_divisible());
  CHECK(TargetFunction::histogram(2, 2).with_declared_divisible(true).declared_divisible());
  CHECK(range_size(TargetFunction::arithmetic_sum(3, 2)) == 4);
  // three restriction classes on x1, two values
  const auto narrow = TargetFunction::table(2, 3, {0, 0, 1, 0, 1, 0, 1, 0, 0});
  CHECK_FALSE(divisible_necessary_check(narrow));
}

TEST_CASE("lambda indices") {
  for (int s = 1; s <= 4; ++s) {
    for (int q = 2; q <= 4; ++q) {
      CHECK(lambda_exponential_index(TargetFunction::identity(s, q)).value == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(lambda_bounded_index(TargetFunction::maximum(s, q)).value == doctest::Approx(1.0).epsilon(1e-12));
      for (int r = 2; r <= q; ++r) {
        CHECK(lambda_bounded_index(TargetFunction::mod_sum(s, q, r)).value ==
              doctest::Approx(std::log(r) / std::log(q)).epsilon(1e-12));
      }
    }
  }
  const auto sum = lambda_exponential_index(TargetFunction::arithmetic_sum(2, 2));
  CHECK(sum.value == doctest::Approx(std::log2(3.0) / 2).epsilon(1e-12));
  CHECK(sum.argument == 0b11U);
  CHECK(lambda_exponential_index(TargetFunction::maximum(3, 2)).value == doctest::Approx(1.0 / 3));
  CHECK(min_footprint(TargetFunction::arithmetic_sum(3, 2)) == 2);
}

TEST_CASE("digit helpers round trip") {
  for (std::uint64_t i = 0; i < 81; ++i) CHECK(index_of(digits_of(i, 3, 4), 3) == i);
  CHECK(digits_of(5, 2, 3) == std::vector<int>{1, 0, 1});
}
