#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "netfuncap/bounds.hpp"
#include "netfuncap/codes.hpp"
#include "netfuncap/examples.hpp"
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

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t out = 1;
  while (e-- > 0) out *= b;
  return out;
}

/// Whether any (k,n) code exists, by trying every assignment of encoder
/// tables and checking that equal receiver views never need different outputs.
bool oracle_code_exists(const Network& net, const TargetFunction& f, int k, int n) {
  const std::uint64_t q = static_cast<std::uint64_t>(net.alphabet_size());
  const std::uint64_t qn = ipow(q, n);
  const std::uint64_t qk = ipow(q, k);
  const int s = net.source_count();
  std::vector<std::uint64_t> domain(net.edge_count());
  std::vector<std::size_t> offset(net.edge_count());
  std::size_t cells = 0;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const int tail = net.edge(e).tail;
    domain[e] = ipow(qn, static_cast<int>(net.in_edges(tail).size())) * (net.is_source(tail) ? qk : 1);
    offset[e] = cells;
    cells += domain[e];
  }
  REQUIRE(cells <= 20);
  const std::uint64_t generators = ipow(qk, s);
  std::vector<std::uint64_t> table(cells, 0);
  for (;;) {
    std::map<std::vector<std::uint64_t>, std::vector<std::int64_t>> seen;
    bool ok = true;
    for (std::uint64_t g = 0; g < generators && ok; ++g) {
      std::vector<std::uint64_t> messages(s);
      for (int i = s - 1, rest = static_cast<int>(g); i >= 0; --i, rest /= static_cast<int>(qk)) messages[i] = rest % qk;
      std::vector<std::uint64_t> carried(net.edge_count(), 0);
      for (int v : net.topological_order()) {
        if (v == net.receiver()) continue;
        std::uint64_t index = 0;
        for (int in : net.in_edges(v)) index = index * qn + carried[in];
        if (net.is_source(v)) index = index * qk + messages[net.source_index(v)];
        for (int e : net.out_edges(v)) carried[e] = table[offset[e] + index];
      }
      std::vector<std::uint64_t> view;
      for (int in : net.in_edges(net.receiver())) view.push_back(carried[in]);
      std::vector<std::int64_t> want;
      for (int j = 0; j < k; ++j) {
        std::vector<int> x(s);
        for (int i = 0; i < s; ++i) x[i] = static_cast<int>(messages[i] / ipow(q, k - 1 - j) % q);
        want.push_back(f.code(x));
      }
      auto [it, inserted] = seen.emplace(view, want);
      ok = inserted || it->second == want;
    }
    if (ok) return true;
    std::size_t c = 0;
    while (c < cells && ++table[c] == qn) table[c++] = 0;
    if (c == cells) return false;
  }
}

NetworkCode forwarding_code(int k, int n) {
  NetworkCode code{k, n, 2, {}, {}};
  code.encoders.push_back([](std::span<const Block>, Block message) { return message; });
  code.decoder = [](std::span<const Block> received) {
    return std::vector<ValueCode>{static_cast<ValueCode>(received[0])};
  };
  return code;
}

}  // namespace

TEST_CASE("forwarding on a single edge") {
  const Network net = Network::compile(examples::single_edge());
  const auto outcome = verify_code(net, TargetFunction::identity(1, 2), forwarding_code(1, 1));
  CHECK(outcome.pass);
  CHECK(outcome.checked_count == 2);
  CHECK_FALSE(outcome.counterexample.has_value());
}

TEST_CASE("a diamond code that ignores the top source fails") {
  const Network net = Network::compile(examples::diamond());
  NetworkCode code{1, 1, 2, {}, {}};
  auto forward = [](std::span<const Block>, Block message) { return message; };
  code.encoders = {forward, forward, forward, forward};
  code.decoder = [](std::span<const Block> received) {
    return std::vector<ValueCode>{static_cast<ValueCode>(received[0] + received[1])};
  };
  const auto outcome = verify_code(net, TargetFunction::arithmetic_sum(3, 2), code);
  CHECK_FALSE(outcome.pass);
  REQUIRE(outcome.counterexample.has_value());
  CHECK(*outcome.counterexample == std::vector<Block>{0, 0, 1});
  CHECK(outcome.checked_count == 2);
}

TEST_CASE("diamond codes") {
  const Network net = Network::compile(examples::diamond());
  const auto f = TargetFunction::arithmetic_sum(3, 2);
  for (int k : {2, 4}) {
    const auto code = diamond_code(k);
    CHECK(code.n == diamond_block_length(k));
    const auto outcome = verify_code(net, f, code);
    CHECK(outcome.pass);
    CHECK(outcome.checked_count == ipow(2, 3 * k));
    CHECK(code.rate() <= min_cut_f(net, f).value);
    CHECK(code.rate() < diamond_capacity());
  }
  CHECK(diamond_block_length(2) == 3);
  CHECK(diamond_block_length(4) == 6);
  CHECK(diamond_block_length(8) == 11);
  CHECK(diamond_block_length(16) == 21);
  CHECK(error_of([] { diamond_block_length(3); }) == ErrorKind::OddK);
  CHECK(error_of([] { diamond_code(0); }) == ErrorKind::OddK);
}

TEST_CASE("diamond counting condition") {
  CHECK_FALSE(diamond_counting_feasible(1, 1));
  CHECK(diamond_counting_feasible(2, 3));
  CHECK(diamond_counting_feasible(0, 0));
  CHECK_FALSE(diamond_counting_feasible(2, 2));
  for (int k = 2; k <= 40; k += 2) CHECK(diamond_counting_feasible(k, diamond_block_length(k)));
  for (int k = 1; k <= 30; ++k) {
    for (int n = 1; n <= 40; ++n) {
      CHECK(diamond_counting_feasible(k, n) == (2.0 * n >= k * std::log2(6.0)));
    }
  }
}

TEST_CASE("xor code on the reverse butterfly") {
  const Network net = Network::compile(examples::reverse_butterfly());
  const auto code = reverse_butterfly_xor_code();
  CHECK(code.rate() == doctest::Approx(2.0));
  const auto f = TargetFunction::mod_sum(2, 2, 2);
  const auto outcome = verify_code(net, f, code);
  CHECK(outcome.pass);
  CHECK(outcome.checked_count == 16);
  CHECK(code.rate() == doctest::Approx(min_cut_f(net, f).value));

  const std::vector<Block> messages{0b10, 0b01};
  const auto carried = propagate(net, code, messages);
  CHECK(code.decoder(std::vector<Block>{carried[7], carried[8]}) == std::vector<ValueCode>{1, 1});
}

TEST_CASE("tree rate bound") {
  CHECK(tree_rate_bound(Network::compile(examples::line3()), TargetFunction::arithmetic_sum(3, 2)) ==
        doctest::Approx(0.5));
  NetworkSpec parallel{{"s1", "rho"}, {{"s1", "rho"}, {"s1", "rho"}}, {"s1"}, "rho", 2};
  CHECK(tree_rate_bound(Network::compile(parallel), TargetFunction::identity(1, 2)) == doctest::Approx(2.0));
  CHECK(error_of([] { tree_rate_bound(Network::compile(examples::diamond()), TargetFunction::arithmetic_sum(3, 2)); }) ==
        ErrorKind::NotTree);
}

TEST_CASE("tree codes on the line") {
  const Network net = Network::compile(examples::line3());
  const auto f = TargetFunction::arithmetic_sum(3, 2);
  const auto code = tree_code(net, f, 1, 2);
  const auto outcome = verify_code(net, f, code);
  CHECK(outcome.pass);
  CHECK(outcome.checked_count == 8);
  CHECK(verify_code(net, f, tree_code(net, f, 2, 4)).pass);
  try {
    tree_code(net, f, 2, 3);
    FAIL("rate above the bound was accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RateInfeasible);
    CHECK(std::string(e.what()).find("s3") != std::string::npos);
  }
  CHECK(error_of([&] { tree_code(Network::compile(examples::diamond()), TargetFunction::arithmetic_sum(3, 2), 1, 2); }) ==
        ErrorKind::NotTree);
  CHECK(error_of([&] { tree_code(net, f, 0, 2); }) == ErrorKind::InvalidCode);
}

TEST_CASE("tree codes on random multi-edge trees") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 30; ++t) {
    const int q = 2 + t % 2;
    const Network net = Network::compile(testing::random_tree(rng, 4, 3, q));
    const int s = net.source_count();
    for (const auto& f : {TargetFunction::arithmetic_sum(s, q), TargetFunction::maximum(s, q)}) {
      const double bound = tree_rate_bound(net, f);
      CHECK(bound == doctest::Approx(min_cut_f(net, f).value).epsilon(1e-12));
      for (int k = 1; k <= 2; ++k) {
        int n = 1;
        while (static_cast<double>(k) / n > bound + 1e-12) ++n;
        const auto code = tree_code(net, f, k, n);
        CHECK(verify_code(net, f, code).pass);
        if (k == 1 && n > 1 && static_cast<double>(k) / (n - 1) > bound + 1e-12) {
          CHECK(error_of([&] { tree_code(net, f, k, n - 1); }) == ErrorKind::RateInfeasible);
        }
      }
    }
  }
}

TEST_CASE("search agrees with exhaustive table enumeration") {
  const Network diamond = Network::compile(examples::diamond());
  const auto sum3 = TargetFunction::arithmetic_sum(3, 2);
  const auto none = search_code(diamond, sum3, 1, 1);
  CHECK(none.status == SearchStatus::Infeasible);
  CHECK_FALSE(oracle_code_exists(diamond, sum3, 1, 1));

  const Network single = Network::compile(examples::single_edge());
  const auto one = search_code(single, TargetFunction::identity(1, 2), 1, 1);
  REQUIRE(one.status == SearchStatus::Found);
  CHECK(verify_code(single, TargetFunction::identity(1, 2), *one.code).pass);
  CHECK(search_code(single, TargetFunction::identity(1, 2), 2, 1).status == SearchStatus::Infeasible);
  CHECK_FALSE(oracle_code_exists(single, TargetFunction::identity(1, 2), 2, 1));

  const Network line = Network::compile(examples::line3());
  CHECK(search_code(line, sum3, 1, 1).status == SearchStatus::Infeasible);
  CHECK_FALSE(oracle_code_exists(line, sum3, 1, 1));
  const auto found = search_code(line, sum3, 1, 2);
  REQUIRE(found.status == SearchStatus::Found);
  CHECK(verify_code(line, sum3, *found.code).pass);

  const Network two = Network::compile(examples::line(2));
  for (const auto& f : {TargetFunction::arithmetic_sum(2, 2), TargetFunction::mod_sum(2, 2, 2),
                        TargetFunction::maximum(2, 2), TargetFunction::identity(2, 2)}) {
    CAPTURE(f.name());
    const auto result = search_code(two, f, 1, 1);
    CHECK((result.status == SearchStatus::Found) == oracle_code_exists(two, f, 1, 1));
    if (result.code) CHECK(verify_code(two, f, *result.code).pass);
  }
}

TEST_CASE("search on the diamond at a feasible rate is not refuted") {
  const auto result = search_code(Network::compile(examples::diamond()), TargetFunction::arithmetic_sum(3, 2), 2, 3, 50000);
  CHECK(result.status != SearchStatus::Infeasible);
  CHECK(result.nodes <= 50000);
}

TEST_CASE("repetition and alphabet simulation") {
  CHECK(simulated_length(5, 1, 2) == 3);
  CHECK(simulated_length(3, 3, 2) == 5);
  CHECK(simulated_length(2, 4, 2) == 4);

  const Network butterfly = Network::compile(examples::reverse_butterfly());
  const auto twice = repeat_code(reverse_butterfly_xor_code(), 2);
  CHECK(twice.k == 4);
  CHECK(twice.n == 2);
  CHECK(verify_code(butterfly, TargetFunction::mod_sum(2, 2, 2), twice).pass);

  const Network diamond = Network::compile(examples::diamond());
  const auto thrice = repeat_code(diamond_code(2), 3);
  CHECK(thrice.k == 6);
  CHECK(thrice.n == 9);
  CHECK(verify_code(diamond, TargetFunction::arithmetic_sum(3, 2), thrice).pass);

  NetworkSpec ternary_spec = examples::line3();
  ternary_spec.alphabet_size = 3;
  const Network ternary = Network::compile(ternary_spec);
  const auto ternary_code = tree_code(ternary, TargetFunction::arithmetic_sum(3, 3), 1, 2);
  CHECK(verify_code(ternary, TargetFunction::arithmetic_sum(3, 3), ternary_code).pass);
  const auto binary_code = simulate_alphabet(ternary_code, 2, 1);
  CHECK(binary_code.q == 2);
  CHECK(binary_code.n == simulated_length(3, 2, 2));
  CHECK(verify_code(Network::compile(examples::line3()), TargetFunction::arithmetic_sum(3, 2), binary_code).pass);
  const auto binary_pair = simulate_alphabet(ternary_code, 2, 2);
  CHECK(binary_pair.n == simulated_length(3, 4, 2));
  CHECK(verify_code(Network::compile(examples::line3()), TargetFunction::arithmetic_sum(3, 2), binary_pair).pass);

  CHECK(error_of([] { simulate_alphabet(reverse_butterfly_xor_code(), 3, 1); }) == ErrorKind::IncompatibleEmbedding);
  CHECK(error_of([] { repeat_code(reverse_butterfly_xor_code(), 0); }) == ErrorKind::InvalidCode);
}

TEST_CASE("tables round trip") {
  const Network net = Network::compile(examples::diamond());
  const auto tables = tabulate(net, diamond_code(2));
  CHECK(tables.encoders.size() == 4);
  CHECK(tables.encoders[0].size() == encoder_domain_size(net, 0, 2, 3));
  CHECK(tables.encoders[2].size() == 8 * 4);
  CHECK(tables.decoder.size() == decoder_domain_size(net, 3));
  const auto rebuilt = from_tables(net, tables);
  CHECK(tabulate(net, rebuilt) == tables);
  CHECK(verify_code(net, TargetFunction::arithmetic_sum(3, 2), rebuilt).pass);

  auto short_table = tables;
  short_table.encoders[1].pop_back();
  CHECK(error_of([&] { from_tables(net, short_table); }) == ErrorKind::InvalidCode);
  auto wide = tables;
  wide.encoders[0][0] = 8;
  CHECK(error_of([&] { from_tables(net, wide); }) == ErrorKind::InvalidCode);
  auto thin = tables;
  thin.decoder[0].pop_back();
  CHECK(error_of([&] { from_tables(net, thin); }) == ErrorKind::InvalidCode);
  auto missing = tables;
  missing.encoders.pop_back();
  CHECK(error_of([&] { from_tables(net, missing); }) == ErrorKind::InvalidCode);

  CHECK(error_of([&] { tabulate(net, diamond_code(2), 10); }) == ErrorKind::BudgetExceeded);
  CHECK(error_of([&] { verify_code(net, TargetFunction::arithmetic_sum(3, 2), diamond_code(2), 10); }) ==
        ErrorKind::BudgetExceeded);
  CHECK(error_of([&] { verify_code(net, TargetFunction::arithmetic_sum(3, 2), reverse_butterfly_xor_code()); }) ==
        ErrorKind::InvalidCode);
}
