// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "netfuncap/bounds.hpp"
#include "netfuncap/cli.hpp"
#include "netfuncap/codes.hpp"
#include "netfuncap/examples.hpp"
#include "netfuncap/steiner.hpp"
#include "netfuncap/sumset.hpp"
#include "test_support.hpp"

using namespace netfuncap;

namespace {

constexpr double kValueTol = 1e-9;
constexpr double kPackingTol = 1e-6;
constexpr double kLambdaTol = 1e-12;
constexpr double kDiamondTrendTol = 1e-12;
constexpr double kDiamondLimitWindow = 0.05;
constexpr double kAppendixSeconds = 300.0;
constexpr std::uint64_t kAppendixSeed = 1;
constexpr std::uint64_t kSweepSeed = 2024;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Check&)>& body) {
  Check check;
  try {
    body(check);
  } catch (const std::exception& e) {
    check.ok = false;
    check.detail = std::string("exception: ") + e.what();
  }
  if (!check.ok) ++failures;
  std::printf("%s %2d %s%s%s\n", check.ok ? "PASS" : "FAIL", id, title.c_str(), check.ok ? "" : " -- ",
              check.detail.c_str());
}

const double kLog2_3 = std::log2(3.0);

}  // namespace

int main() {
  const Network n2 = Network::compile(examples::reverse_butterfly());
  const Network n3 = Network::compile(examples::line3());
  const Network diamond = Network::compile(examples::diamond());

  criterion(1, "N2 certification", [&](Check& c) {
    const auto f = TargetFunction::arithmetic_sum(2, 2);
    const double expected = 2.0 / kLog2_3;
    c.require(near(min_cut_f(n2, f).value, expected, kValueTol), "min_cut_f != 2/log2(3)");
    c.require(near(lower_bound_symmetric(n2, f), expected, kValueTol), "symmetric bound != 2/log2(3)");
    const auto report = bounds_report(n2, f, kValueTol);
    c.require(report.certified, "report not certified");
  });

  criterion(2, "N3 tree bound, tree code, packing, arithmetic-sum bound", [&](Check& c) {
    const auto f = TargetFunction::arithmetic_sum(3, 2);
    c.require(tree_rate_bound(n3, f) == 0.5, "tree_rate_bound != 0.5");
    c.require(min_cut_f(n3, f).value == 0.5, "min_cut_f != 0.5");
    const auto outcome = verify_code(n3, f, tree_code(n3, f, 1, 2));
    c.require(outcome.pass && outcome.checked_count == 8, "tree_code(1,2) fails verification");
    c.require(near(steiner_packing(n3).value, 1.0, kPackingTol), "Pi(N3) != 1");
    c.require(near(lower_bound_arith_sum(n3, 2, 3), 1.0 / std::log2(5.0), kValueTol), "arith bound != 1/log2(5)");
  });

  criterion(3, "Steiner packing values", [&](Check& c) {
    c.require(near(steiner_packing(n2).value, 1.5, kPackingTol), "Pi(N2) != 3/2");
    c.require(near(steiner_packing(diamond).value, 1.0, kPackingTol), "Pi(diamond) != 1");
  });

  criterion(4, "diamond gap", [&](Check& c) {
    const auto f = TargetFunction::arithmetic_sum(3, 2);
    c.require(near(min_cut_f(diamond, f).value, 1.0, kValueTol), "min_cut_f != 1");
    const auto code = diamond_code(2);
    c.require(code.k == 2 && code.n == 3, "diamond_code(2) is not (2,3)");
    const auto outcome = verify_code(diamond, f, code);
    c.require(outcome.pass && outcome.checked_count == 64, "diamond_code(2) fails over 64 generators");
    c.require(search_code(diamond, f, 1, 1).status == SearchStatus::Infeasible, "search (1,1) not infeasible");
    c.require(!diamond_counting_feasible(1, 1), "counting condition admits (1,1)");
    const auto report = bounds_report(diamond, f, kValueTol);
    const double limit = 2.0 / (1.0 + kLog2_3);
    c.require(near(report.best_lower, limit, kValueTol), "best lower != 2/(1+log2 3)");
    c.require(report.best_lower < report.upper.value - kValueTol && !report.certified, "no strict gap reported");
  });

  criterion(5, "diamond rate trend", [&](Check& c) {
    const double limit = 2.0 / (1.0 + kLog2_3);
    double previous = 0.0;
    double last = 0.0;
    for (int k : {2, 4, 8, 16}) {
      const auto code = diamond_code(k);
      const double rate = code.rate();
      c.require(rate >= previous, "rates decrease at k=" + std::to_string(k));
      c.require(rate <= limit + kDiamondTrendTol, "rate above the limit at k=" + std::to_string(k));
      previous = last = rate;
    }
    c.require(limit - last <= kDiamondLimitWindow, "k=16 rate not within 0.05 of the limit");
    c.require(verify_code(diamond, TargetFunction::arithmetic_sum(3, 2), diamond_code(4)).pass, "k=4 code fails");
  });

  criterion(6, "linear witness on the reverse butterfly", [&](Check& c) {
    const auto f = TargetFunction::mod_sum(2, 2, 2);
    const auto code = reverse_butterfly_xor_code();
    const auto outcome = verify_code(n2, f, code);
    c.require(outcome.pass && outcome.checked_count == 16, "xor code fails over 16 generators");
    c.require(code.rate() == 2.0, "rate != 2");
    c.require(near(min_cut_f(n2, f).value, 2.0, kValueTol), "min_cut_f(mod-2) != 2");
  });

  criterion(7, "footprint closed forms", [&](Check& c) {
    for (int s = 1; s <= 4; ++s) {
      for (int q = 2; q <= 3; ++q) {
        const auto sum = footprint_sizes(TargetFunction::arithmetic_sum(s, q));
        const auto maximum = footprint_sizes(TargetFunction::maximum(s, q));
        const auto identity = footprint_sizes(TargetFunction::identity(s, q));
        for (SourceSet I = 1; I < sum.size(); ++I) {
          const int width = popcount(I);
          int power = 1;
          for (int i = 0; i < width; ++i) power *= q;
          const std::string at = " at s=" + std::to_string(s) + " q=" + std::to_string(q) + " I=" + std::to_string(I);
          c.require(sum[I] == (q - 1) * width + 1, "arithmetic sum" + at);
          c.require(maximum[I] == q, "maximum" + at);
          c.require(identity[I] == power, "identity" + at);
        }
        for (int r = 2; r <= q; ++r) {
          const auto mod = footprint_sizes(TargetFunction::mod_sum(s, q, r));
          for (SourceSet I = 1; I < mod.size(); ++I) c.require(mod[I] == r, "mod-r sum");
        }
      }
    }
  });

  criterion(8, "lambda classification", [&](Check& c) {
    for (int s = 1; s <= 4; ++s) {
      for (int q = 2; q <= 4; ++q) {
        const std::string at = " at s=" + std::to_string(s) + " q=" + std::to_string(q);
        c.require(near(lambda_exponential_index(TargetFunction::identity(s, q)).value, 1.0, kLambdaTol), "identity" + at);
        c.require(near(lambda_bounded_index(TargetFunction::maximum(s, q)).value, 1.0, kLambdaTol), "maximum" + at);
        for (int r = 2; r <= q; ++r) {
          c.require(near(lambda_bounded_index(TargetFunction::mod_sum(s, q, r)).value, std::log(r) / std::log(q),
                         kLambdaTol),
                    "mod-r sum" + at);
        }
      }
    }
  });

  criterion(9, "relay networks", [&](Check& c) {
    for (int M = 1; M <= 4; ++M) {
      for (int L = 1; L <= 3; ++L) {
        const Network net = Network::compile(build_NML(M, L));
        const double enumerated = min_cut_f(net, TargetFunction::arithmetic_sum(M, 2)).value;
        c.require(near(mincut_NML_closed_form(M, L).value, enumerated, kValueTol),
                  "closed form differs at M=" + std::to_string(M) + " L=" + std::to_string(L));
      }
    }
    double previous = INFINITY;
    for (int M : {3, 7, 15, 31}) {
      const double r = rate_upper_NML(M, 2);
      c.require(r < previous && r > 1.0, "rate_upper not strictly decreasing above 1 at M=" + std::to_string(M));
      previous = r;
    }
  });

  criterion(10, "appendix suite", [&](Check& c) {
    const auto start = std::chrono::steady_clock::now();
    const auto summary = appendix_suite(kAppendixSeed, 100);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(summary.families == 100, "expected 100 families");
    c.require(summary.invariance == 100 && summary.shrink == 100 && summary.closure == 100 && summary.lemma_a2 == 100,
              "a family check failed");
    c.require(summary.product_cases == 36 && summary.product_holds == 36, "product bound failed");
    c.require(summary.hamming_cases == 200 && summary.hamming_holds == 200, "counting inequality failed");
    c.require(seconds < kAppendixSeconds, "took too long");
  });

  criterion(11, "consistency sweep", [&](Check& c) {
    std::vector<NetworkSpec> corpus{examples::single_edge(), examples::reverse_butterfly(), examples::line3(),
                                    examples::diamond(), examples::relay_network(3, 2), examples::line(2)};
    std::mt19937_64 rng(kSweepSeed);
    for (int t = 0; t < 50; ++t) corpus.push_back(testing::random_dag(rng, 10, 3));
    int codes = 0;
    for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
      const Network net = Network::compile(corpus[idx]);
      const int s = net.source_count();
      const std::string at = " on network " + std::to_string(idx);
      for (const auto& f : {TargetFunction::arithmetic_sum(s, 2), TargetFunction::mod_sum(s, 2, 2),
                            TargetFunction::maximum(s, 2)}) {
        const auto report = bounds_report(net, f, kValueTol);
        for (const auto& lower : report.lowers) {
          c.require(lower.value <= report.upper.value + kValueTol, "lower bound " + lower.tag + " above min-cut" + at);
        }
        if (is_multi_edge_tree(net)) {
          const auto [k, n] = suggest_tree_rate(net, f);
          if (k > 0) {
            c.require(verify_code(net, f, tree_code(net, f, k, n)).pass, "tree code fails" + at);
            ++codes;
          }
        }
      }
      for (const auto& tree : enumerate_steiner_trees(net)) {
        const Network sub = Network::compile(tree_network(net, tree));
        for (const auto& inner : enumerate_cuts(sub)) {
          std::vector<int> lifted;
          for (int i : source_indices(inner.separated)) {
            const auto& out = net.out_edges(net.source_node(i - 1));
            lifted.insert(lifted.end(), out.begin(), out.end());
          }
          const auto cut = classify_cut(net, lifted);
          c.require(cut && cut->separated == inner.separated, "lifted tree cut separates a different set" + at);
        }
      }
    }
    c.require(verify_code(diamond, TargetFunction::arithmetic_sum(3, 2), diamond_code(2)).pass, "diamond code fails");
    c.require(verify_code(n2, TargetFunction::mod_sum(2, 2, 2), reverse_butterfly_xor_code()).pass, "xor code fails");
    c.require(codes > 0, "no tree codes constructed");
  });

  std::printf("%s\n", failures == 0 ? "ALL PASS" : (std::to_string(failures) + " FAILED").c_str());
  return failures == 0 ? 0 : 1;
}
