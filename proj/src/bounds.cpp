#include "netfuncap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "netfuncap/codes.hpp"
#include "netfuncap/examples.hpp"
#include "netfuncap/sumset.hpp"

namespace netfuncap {
namespace {

using u128 = unsigned __int128;

u128 saturating_power(std::uint64_t base, int exponent, bool& saturated) {
  const u128 cap = ~u128{0} >> 2;
  u128 out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > cap / base) {
      saturated = true;
      return cap;
    }
    out *= base;
  }
  return out;
}

/// a1 / log R1 < a2 / log R2, exactly when the powers fit.
bool ratio_less(int a1, int r1, int a2, int r2) {
  bool saturated = false;
  const u128 left = saturating_power(static_cast<std::uint64_t>(r2), a1, saturated);
  const u128 right = saturating_power(static_cast<std::uint64_t>(r1), a2, saturated);
  if (!saturated) return left < right;
  return a1 * std::log(static_cast<double>(r2)) < a2 * std::log(static_cast<double>(r1));
}

double log_q(double x, int q) { return std::log(x) / std::log(static_cast<double>(q)); }

std::string log_name(int q) { return q == 2 ? "log2" : "log" + std::to_string(q); }

std::string over_log(const std::string& numerator, int q, long long argument) {
  return numerator + "/" + log_name(q) + "(" + std::to_string(argument) + ")";
}

std::string parenthesize(const std::string& s) {
  return s.find_first_of("/*+-") == std::string::npos ? s : "(" + s + ")";
}

std::string decimal(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.9g", x);
  return buffer;
}

void check_pair(const Network& net, const TargetFunction& f) {
  if (f.arity() != net.source_count() || f.alphabet_size() != net.alphabet_size()) {
    throw Error(ErrorKind::ArityMismatch, "function arity/alphabet does not match the network");
  }
}

/// Minimal cut with the largest footprint; ties keep the first.
int max_cut_footprint(const Network& net, const TargetFunction& f, std::size_t edge_budget) {
  const auto sizes = footprint_sizes(f);
  int best = 0;
  for (const auto& cut : enumerate_cuts(net, edge_budget)) best = std::max(best, sizes[cut.separated]);
  return best;
}

}  // namespace

std::string rational_string(double x) {
  for (int d = 1; d <= 64; ++d) {
    const double n = std::round(x * d);
    if (std::abs(n / d - x) < 1e-9) {
      const auto whole = static_cast<long long>(n);
      return d == 1 ? std::to_string(whole) : std::to_string(whole) + "/" + std::to_string(d);
    }
  }
  return decimal(x);
}

CutValue min_cut_classic(const Network& net, std::size_t edge_budget) {
  const auto cuts = enumerate_cuts(net, edge_budget);
  if (cuts.empty()) throw Error(ErrorKind::InternalError, "network has no cut");
  const Cut* best = &cuts.front();
  for (const auto& cut : cuts) {
    // |C| / |I| < |B| / |I_B|
    const auto size = static_cast<long long>(cut.edges.size());
    const auto best_size = static_cast<long long>(best->edges.size());
    if (size * popcount(best->separated) < best_size * popcount(cut.separated)) best = &cut;
  }
  CutValue out;
  out.witness = *best;
  out.value = static_cast<double>(best->edges.size()) / popcount(best->separated);
  out.symbolic = rational_string(out.value);
  return out;
}

FunctionCut min_cut_f(const Network& net, const TargetFunction& f, std::size_t edge_budget) {
  check_pair(net, f);
  const auto sizes = footprint_sizes(f);
  const auto cuts = enumerate_cuts(net, edge_budget);
  if (cuts.empty()) throw Error(ErrorKind::InternalError, "network has no cut");
  const Cut* best = &cuts.front();
  for (const auto& cut : cuts) {
    if (ratio_less(static_cast<int>(cut.edges.size()), sizes[cut.separated], static_cast<int>(best->edges.size()),
                   sizes[best->separated])) {
      best = &cut;
    }
  }
  FunctionCut out;
  out.witness = *best;
  const int classes = sizes[best->separated];
  out.value = static_cast<double>(best->edges.size()) / log_q(classes, net.alphabet_size());
  out.symbolic = over_log(std::to_string(best->edges.size()), net.alphabet_size(), classes);

  out.flow_candidates = std::numeric_limits<double>::infinity();
  for (SourceSet J = 1; J <= net.all_sources(); ++J) {
    const double candidate = min_edge_cut(net, J).size / log_q(sizes[J], net.alphabet_size());
    if (candidate < out.flow_candidates - 1e-12) {
      out.flow_candidates = candidate;
      out.flow_argument = J;
    }
  }
  return out;
}

long long smallest_prime_above(long long m) {
  for (long long candidate = std::max(2LL, m + 1);; ++candidate) {
    bool prime = true;
    for (long long d = 2; d * d <= candidate && prime; ++d) prime = candidate % d != 0;
    if (prime) return candidate;
  }
}

double lower_bound_general(const Network& net, const TargetFunction& f, std::size_t edge_budget) {
  check_pair(net, f);
  const double pi = steiner_packing(net, edge_budget).value;
  return pi / log_q(max_cut_footprint(net, f, edge_budget), net.alphabet_size());
}

double lower_bound_weighted(const Network& net, const std::vector<double>& rates, std::size_t edge_budget) {
  const auto trees = enumerate_steiner_trees(net, edge_budget);
  if (rates.size() != trees.size()) {
    throw Error(ErrorKind::InternalError, "expected " + std::to_string(trees.size()) + " tree rates");
  }
  Vector<double> reward(static_cast<Eigen::Index>(rates.size()));
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i] >= 0.0)) throw Error(ErrorKind::InternalError, "tree rates must be nonnegative");
    reward(static_cast<Eigen::Index>(i)) = rates[i];
  }
  return solve_packing_lp<double>(tree_load_matrix(net, trees), reward, kDefaultTolerance).value;
}

std::vector<double> tree_rates(const Network& net, const TargetFunction& f, std::size_t edge_budget) {
  check_pair(net, f);
  std::vector<double> rates;
  for (const auto& tree : enumerate_steiner_trees(net, edge_budget)) {
    rates.push_back(min_cut_f(Network::compile(tree_network(net, tree)), f, edge_budget).value);
  }
  return rates;
}

double lower_bound_weighted(const Network& net, const TargetFunction& f, std::size_t edge_budget) {
  return lower_bound_weighted(net, tree_rates(net, f, edge_budget), edge_budget);
}

double lower_bound_arith_sum(const Network& net, int q, int s) {
  const long long prime = smallest_prime_above(static_cast<long long>(s) * (q - 1));
  return min_cut_size(net) / log_q(static_cast<double>(prime), q);
}

double lower_bound_symmetric(const Network& net, const TargetFunction& f) {
  check_pair(net, f);
  if (!is_symmetric(f)) throw Error(ErrorKind::NotSymmetric, f.name() + " is not symmetric");
  const int q = f.alphabet_size();
  const long long prime = smallest_prime_above(f.arity());
  return min_cut_size(net) / ((q - 1) * log_q(static_cast<double>(prime), q));
}

double lower_bound_divisible(const Network& net, const TargetFunction& f, std::size_t edge_budget) {
  check_pair(net, f);
  if (!f.declared_divisible()) throw Error(ErrorKind::NotDivisible, f.name() + " is not declared divisible");
  if (!divisible_necessary_check(f)) {
    throw Error(ErrorKind::NotDivisible, f.name() + " has a footprint larger than its range");
  }
  const double pi = steiner_packing(net, edge_budget).value;
  const auto receiver_edges = static_cast<double>(net.in_edges(net.receiver()).size());
  return pi / receiver_edges * min_cut_f(net, f, edge_budget).value;
}

double lower_bound_lambda_exp(const Network& net, const TargetFunction& f, std::size_t edge_budget) {
  check_pair(net, f);
  return lambda_exponential_index(f).value * min_cut_f(net, f, edge_budget).value;
}

bool all_non_receivers_are_sources(const Network& net) {
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (static_cast<int>(v) != net.receiver() && !net.is_source(static_cast<int>(v))) return false;
  }
  return true;
}

double lower_bound_lambda_bdd(const Network& net, const TargetFunction& f, std::size_t edge_budget) {
  check_pair(net, f);
  if (!all_non_receivers_are_sources(net)) {
    throw Error(ErrorKind::NotAllSources, "some non-receiver node is not a source");
  }
  const double lambda = lambda_bounded_index(f).value;
  const double floor_footprint = log_q(min_footprint(f), f.alphabet_size());
  return floor_footprint / lambda * min_cut_f(net, f, edge_budget).value;
}

bool is_diamond(const Network& net) {
  if (net.node_count() != 4 || net.edge_count() != 4 || net.source_count() != 3) return false;
  const int rho = net.receiver();
  if (net.in_edges(rho).size() != 2) return false;
  for (int i = 0; i < 3; ++i) {
    const int top = net.source_node(i);
    const auto& out = net.out_edges(top);
    if (!net.in_edges(top).empty() || out.size() != 2) continue;
    const int b = net.edge(out[0]).head;
    const int c = net.edge(out[1]).head;
    if (b == c || b == rho || c == rho) continue;
    bool ok = true;
    for (int middle : {b, c}) {
      ok = ok && net.in_edges(middle).size() == 1 && net.out_edges(middle).size() == 1 &&
           net.edge(net.out_edges(middle)[0]).head == rho;
    }
    if (ok) return true;
  }
  return false;
}

double diamond_capacity() { return 2.0 / (1.0 + std::log2(3.0)); }

BoundsReport bounds_report(const Network& net, const TargetFunction& f, double tol, std::size_t edge_budget) {
  check_pair(net, f);
  BoundsReport report;
  report.tolerance = tol;
  report.upper = min_cut_f(net, f, edge_budget);
  const double upper = report.upper.value;
  const std::string& upper_sym = report.upper.symbolic;
  const int q = net.alphabet_size();
  const int s = net.source_count();
  const auto sizes = footprint_sizes(f);
  auto add = [&](std::string tag, double value, std::string symbolic, std::string note, bool cited = false) {
    report.lowers.push_back({std::move(tag), value, std::move(symbolic), std::move(note), cited});
  };

  if (f.kind() == FunctionKind::Identity) {
    add("identity", upper, upper_sym, "coding capacity of the identity function equals min-cut", true);
  }
  const bool prime_q = smallest_prime_above(q - 1) == q;
  if (f.kind() == FunctionKind::Linear || (f.kind() == FunctionKind::ModSum && f.modulus() == q && prime_q)) {
    add("linear-field", upper, upper_sym, "linear target over a finite field: capacity equals min-cut", true);
  }
  if (is_multi_edge_tree(net)) {
    double best = std::numeric_limits<double>::infinity();
    std::string symbolic;
    for (int v : net.topological_order()) {
      if (v == net.receiver()) continue;
      const auto& out = net.out_edges(v);
      const int classes = sizes[net.separated_by(out)];
      const double value = static_cast<double>(out.size()) / log_q(classes, q);
      if (value < best) {
        best = value;
        symbolic = over_log(std::to_string(out.size()), q, classes);
      }
    }
    add("tree", best, symbolic, "class-index forwarding on a multi-edge tree");
  }
  const double pi = steiner_packing(net, edge_budget).value;
  const int max_footprint = max_cut_footprint(net, f, edge_budget);
  add("steiner-general", pi / log_q(max_footprint, q), over_log(parenthesize(rational_string(pi)), q, max_footprint),
      "Pi(N) = " + rational_string(pi));
  const int min_cut_edges = min_cut_size(net);
  if (f.kind() == FunctionKind::ArithmeticSum) {
    const long long prime = smallest_prime_above(static_cast<long long>(s) * (q - 1));
    add("arith-sum", lower_bound_arith_sum(net, q, s), over_log(std::to_string(min_cut_edges), q, prime),
        "P = " + std::to_string(prime));
  }
  if (is_symmetric(f)) {
    const long long prime = smallest_prime_above(s);
    const std::string denominator =
        (q == 2 ? "" : std::to_string(q - 1) + "*") + log_name(q) + "(" + std::to_string(prime) + ")";
    add("symmetric", lower_bound_symmetric(net, f),
        std::to_string(min_cut_edges) + "/" + parenthesize(denominator), "P(s) = " + std::to_string(prime));
  }
  if (f.declared_divisible() && divisible_necessary_check(f)) {
    const auto receiver_edges = net.in_edges(net.receiver()).size();
    add("divisible", pi / static_cast<double>(receiver_edges) * upper,
        parenthesize(rational_string(pi / static_cast<double>(receiver_edges))) + "*" + parenthesize(upper_sym),
        "|E_i(rho)| = " + std::to_string(receiver_edges));
  }
  {
    const auto lambda = lambda_exponential_index(f);
    const int width = popcount(lambda.argument);
    add("lambda-exp", lambda.value * upper,
        "(" + log_name(q) + "(" + std::to_string(sizes[lambda.argument]) + ")/" + std::to_string(width) + ")*" +
            parenthesize(upper_sym),
        "lambda* = " + decimal(lambda.value));
  }
  if (all_non_receivers_are_sources(net)) {
    const double value = lower_bound_lambda_bdd(net, f, edge_budget);
    const auto lambda = lambda_bounded_index(f);
    const std::string symbolic = "(" + log_name(q) + "(" + std::to_string(min_footprint(f)) + ")/" + log_name(q) +
                                 "(" + std::to_string(sizes[lambda.argument]) + "))*" + parenthesize(upper_sym);
    add("lambda-bdd", value, symbolic, "lambda* = " + decimal(lambda.value));
    if (f.kind() == FunctionKind::Maximum || f.kind() == FunctionKind::Minimum) {
      add("maxmin", value, symbolic, "max/min on a network whose non-receiver nodes are all sources");
    }
  }
  if (is_diamond(net) && f.kind() == FunctionKind::ArithmeticSum && q == 2) {
    add("diamond", diamond_capacity(), "2/(1+log2(3))",
        "supremum of verified diamond code rates; not attained at finite k", true);
  }

  for (const auto& lower : report.lowers) {
    if (lower.value > upper + tol) {
      throw Error(ErrorKind::InternalError,
                  "lower bound '" + lower.tag + "' = " + decimal(lower.value) + " exceeds min-cut " + decimal(upper));
    }
    if (lower.value > report.best_lower) {
      report.best_lower = lower.value;
      report.best_tag = lower.tag;
    }
  }
  report.certified = report.best_lower >= upper - tol;
  return report;
}

NetworkSpec build_NML(int M, int L) { return examples::relay_network(M, L); }

ClosedForm mincut_NML_closed_form(int M, int L) {
  if (M < 1 || L < 1) throw Error(ErrorKind::DomainError, "need M >= 1 and L >= 1");
  ClosedForm best{std::numeric_limits<double>::infinity(), 1};
  for (int m = 1; m <= M; ++m) {
    const double value = (L + m) / std::log2(m + 1.0);
    if (value < best.value - 1e-12) best = {value, m};
  }
  return best;
}

double rate_upper_NML(int M, int L) {
  if (M < 1 || L < 1) throw Error(ErrorKind::DomainError, "need M >= 1 and L >= 1");
  const double budget = L / std::log2(M + 1.0);
  auto load = [](double r) { return r * gamma(r); };
  double lo = 1.0;
  double hi = 2.0;
  while (load(hi) <= budget) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (load(mid) <= budget ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace netfuncap
