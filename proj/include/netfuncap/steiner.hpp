#pragma once

#include <cstddef>
#include <vector>

#include "netfuncap/network.hpp"
#include "netfuncap/packing_lp.hpp"

namespace netfuncap {

inline constexpr std::size_t kDefaultTreeBudget = 200000;
inline constexpr double kDefaultTolerance = 1e-9;

/// Fractional packing of directed Steiner trees (every source routed to the
/// receiver, each non-receiver tree node keeps exactly one out-edge).
struct SteinerPacking {
  std::vector<std::vector<int>> trees;
  std::vector<double> weights;
  double value = 0.0;
};

/// Every Steiner tree as a sorted edge list, in depth-first order over the
/// topological node order with out-edges tried lowest index first.
std::vector<std::vector<int>> enumerate_steiner_trees(const Network& net,
                                                      std::size_t edge_budget = kDefaultEdgeBudget,
                                                      std::size_t tree_budget = kDefaultTreeBudget);

/// Edge-by-tree incidence matrix.
Matrix<double> tree_load_matrix(const Network& net, const std::vector<std::vector<int>>& trees);

/// Pi(N): max sum u_i subject to per-edge load <= 1.
SteinerPacking steiner_packing(const Network& net, std::size_t edge_budget = kDefaultEdgeBudget);

/// Sub-network (t, S, rho) spanned by one Steiner tree.
NetworkSpec tree_network(const Network& net, const std::vector<int>& tree);

}  // namespace netfuncap
