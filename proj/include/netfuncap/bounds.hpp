#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netfuncap/network.hpp"
#include "netfuncap/steiner.hpp"
#include "netfuncap/target_function.hpp"

namespace netfuncap {

struct CutValue {
  double value = 0.0;
  Cut witness;
  /// Display form, e.g. "2/log2(3)".
  std::string symbolic;
};

/// min over minimal cuts of |C| / |I_C|; ties keep the lexicographically least cut.
CutValue min_cut_classic(const Network& net, std::size_t edge_budget = kDefaultEdgeBudget);

struct FunctionCut : CutValue {
  /// min over nonempty J of mincut(J) / log_q R_{J,f}; a diagnostic, never authoritative.
  double flow_candidates = 0.0;
  SourceSet flow_argument = 0;
};

/// min over minimal cuts C of |C| / log_q R_{I_C,f}, by full cut enumeration.
FunctionCut min_cut_f(const Network& net, const TargetFunction& f, std::size_t edge_budget = kDefaultEdgeBudget);

/// Smallest prime strictly greater than m, by trial division.
long long smallest_prime_above(long long m);

/// Pi(N) * min over cuts of 1 / log_q R_{I_C,f}.
double lower_bound_general(const Network& net, const TargetFunction& f,
                           std::size_t edge_budget = kDefaultEdgeBudget);

/// max sum u_i r_i under the packing constraints; one rate per tree of
/// enumerate_steiner_trees(net).
double lower_bound_weighted(const Network& net, const std::vector<double>& rates,
                            std::size_t edge_budget = kDefaultEdgeBudget);
/// Default per-tree rates: min_cut_f on each tree's sub-network.
std::vector<double> tree_rates(const Network& net, const TargetFunction& f,
                               std::size_t edge_budget = kDefaultEdgeBudget);
double lower_bound_weighted(const Network& net, const TargetFunction& f,
                            std::size_t edge_budget = kDefaultEdgeBudget);

/// min |C| / log_q P, P the smallest prime above s(q-1).
double lower_bound_arith_sum(const Network& net, int q, int s);
/// min |C| / ((q-1) log_q P(s)). NotSymmetric unless f is symmetric.
double lower_bound_symmetric(const Network& net, const TargetFunction& f);
/// (Pi / |E_i(rho)|) min-cut(N,f). NotDivisible without the declared flag or
/// when the necessary footprint check fails.
double lower_bound_divisible(const Network& net, const TargetFunction& f,
                             std::size_t edge_budget = kDefaultEdgeBudget);
/// lambda*_exp(f) min-cut(N,f).
double lower_bound_lambda_exp(const Network& net, const TargetFunction& f,
                              std::size_t edge_budget = kDefaultEdgeBudget);
/// (log_q min_I R_{I,f} / lambda*_bdd(f)) min-cut(N,f). NotAllSources unless
/// every non-receiver node is a source.
double lower_bound_lambda_bdd(const Network& net, const TargetFunction& f,
                              std::size_t edge_budget = kDefaultEdgeBudget);

bool all_non_receivers_are_sources(const Network& net);

/// Diamond topology up to node names: three sources, one of which feeds
/// the other two, each of which has a single edge to the receiver.
bool is_diamond(const Network& net);

/// sup of the diamond code rates, 2 / (1 + log2 3).
double diamond_capacity();

struct LowerBound {
  std::string tag;
  double value = 0.0;
  std::string symbolic;
  std::string note;
  /// Value rests on a cited theorem rather than on a computation here.
  bool citation_backed = false;
};

struct BoundsReport {
  FunctionCut upper;
  std::vector<LowerBound> lowers;
  double best_lower = 0.0;
  std::string best_tag;
  bool certified = false;
  double tolerance = kDefaultTolerance;
};

/// Upper bound plus every applicable lower bound. A lower bound above the
/// upper bound by more than `tol` raises InternalError.
BoundsReport bounds_report(const Network& net, const TargetFunction& f, double tol = kDefaultTolerance,
                           std::size_t edge_budget = kDefaultEdgeBudget);

/// N_{M,L} with the arithmetic sum as its standard function.
NetworkSpec build_NML(int M, int L);

struct ClosedForm {
  double value = 0.0;
  int m_star = 1;
};

/// min over 1 <= m <= M of (L + m) / log2(m + 1); ties go to the smallest m.
ClosedForm mincut_NML_closed_form(int M, int L);

/// Largest r >= 1 with r gamma(r) <= L / log2(M + 1).
double rate_upper_NML(int M, int L);

/// "p/q" for a value within 1e-9 of a fraction with denominator <= 64, else decimal.
std::string rational_string(double x);

}  // namespace netfuncap
