#include "netfuncap/steiner.hpp"

#include <algorithm>

namespace netfuncap {
namespace {

struct TreeSearch {
  const Network& net;
  std::size_t budget;
  std::vector<int> order;  // topological order without the receiver
  std::vector<int> in_tree;
  std::vector<int> chosen;
  std::vector<std::vector<int>> trees;

  void visit(std::size_t position) {
    if (position == order.size()) {
      auto tree = chosen;
      std::sort(tree.begin(), tree.end());
      trees.push_back(std::move(tree));
      if (trees.size() > budget) {
        throw Error(ErrorKind::BudgetExceeded, "more than " + std::to_string(budget) + " Steiner trees");
      }
      return;
    }
    const int v = order[position];
    if (!in_tree[v]) {
      visit(position + 1);
      return;
    }
    for (int e : net.out_edges(v)) {
      const int head = net.edge(e).head;
      chosen.push_back(e);
      ++in_tree[head];
      visit(position + 1);
      --in_tree[head];
      chosen.pop_back();
    }
  }
};

}  // namespace

std::vector<std::vector<int>> enumerate_steiner_trees(const Network& net, std::size_t edge_budget,
                                                      std::size_t tree_budget) {
  if (net.edge_count() > edge_budget) {
    throw Error(ErrorKind::BudgetExceeded, "Steiner enumeration over " + std::to_string(net.edge_count()) +
                                               " edges exceeds budget of " + std::to_string(edge_budget));
  }
  TreeSearch search{net, tree_budget, {}, std::vector<int>(net.node_count(), 0), {}, {}};
  for (int v : net.topological_order()) {
    if (v != net.receiver()) search.order.push_back(v);
  }
  for (int i = 0; i < net.source_count(); ++i) search.in_tree[net.source_node(i)] = 1;
  search.visit(0);
  return std::move(search.trees);
}

Matrix<double> tree_load_matrix(const Network& net, const std::vector<std::vector<int>>& trees) {
  Matrix<double> load = Matrix<double>::Zero(static_cast<Eigen::Index>(net.edge_count()),
                                             static_cast<Eigen::Index>(trees.size()));
  for (std::size_t t = 0; t < trees.size(); ++t) {
    for (int e : trees[t]) load(e, static_cast<Eigen::Index>(t)) = 1.0;
  }
  return load;
}

SteinerPacking steiner_packing(const Network& net, std::size_t edge_budget) {
  SteinerPacking packing;
  packing.trees = enumerate_steiner_trees(net, edge_budget);
  const auto load = tree_load_matrix(net, packing.trees);
  const auto solution =
      solve_packing_lp<double>(load, Vector<double>::Ones(load.cols()), kDefaultTolerance);
  packing.weights.assign(solution.weights.data(), solution.weights.data() + solution.weights.size());
  packing.value = solution.value;

  const Vector<double> edge_load = load * solution.weights;
  if ((edge_load.array() > 1.0 + kDefaultTolerance).any() || packing.value < 1.0 - kDefaultTolerance) {
    throw Error(ErrorKind::InternalError, "Steiner packing violates its constraints");
  }
  return packing;
}

NetworkSpec tree_network(const Network& net, const std::vector<int>& tree) {
  std::vector<char> keep(net.node_count(), 0);
  keep[net.receiver()] = 1;
  for (int i = 0; i < net.source_count(); ++i) keep[net.source_node(i)] = 1;
  for (int e : tree) keep[net.edge(e).tail] = keep[net.edge(e).head] = 1;

  NetworkSpec spec;
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (keep[v]) spec.nodes.push_back(net.name(static_cast<int>(v)));
  }
  for (int e : tree) spec.edges.emplace_back(net.name(net.edge(e).tail), net.name(net.edge(e).head));
  spec.sources = net.spec().sources;
  spec.receiver = net.spec().receiver;
  spec.alphabet_size = net.alphabet_size();
  return spec;
}

}  // namespace netfuncap
