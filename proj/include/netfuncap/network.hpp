#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netfuncap/errors.hpp"

namespace netfuncap {

/// Bitmask over source indices (bit i <-> sigma_{i+1}).
using SourceSet = std::uint32_t;

inline constexpr std::size_t kDefaultEdgeBudget = 22;

/// Uncompiled, user-facing description of a single-receiver network.
struct NetworkSpec {
  std::vector<std::string> nodes;
  /// (tail, head); a repeated pair encodes parallel unit-capacity edges.
  std::vector<std::pair<std::string, std::string>> edges;
  /// Ordered sigma_1..sigma_s.
  std::vector<std::string> sources;
  std::string receiver;
  int alphabet_size = 2;

  bool operator==(const NetworkSpec&) const = default;
};

struct Edge {
  int tail;
  int head;
};

/// Edge subset together with the sources it separates from the receiver.
struct Cut {
  std::vector<int> edges;  // sorted ascending
  SourceSet separated = 0;

  bool operator==(const Cut&) const = default;
};

/// Compiled DAG with dense node indices (first-appearance order of
/// NetworkSpec::nodes) and stable edge indices (spec edge order).
class Network {
 public:
  static Network compile(const NetworkSpec& spec);

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  int source_count() const { return static_cast<int>(sources_.size()); }
  int alphabet_size() const { return q_; }
  int receiver() const { return receiver_; }

  const std::string& name(int node) const { return names_[node]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& in_edges(int node) const { return in_[node]; }
  const std::vector<int>& out_edges(int node) const { return out_[node]; }
  const std::vector<int>& topological_order() const { return topo_; }

  /// Node index of sigma_{i+1}.
  int source_node(int i) const { return sources_[i]; }
  /// Source index of a node, or -1.
  int source_index(int node) const { return source_of_node_[node]; }
  bool is_source(int node) const { return source_of_node_[node] >= 0; }
  SourceSet all_sources() const {
    return sources_.size() >= 32 ? ~SourceSet{0} : (SourceSet{1} << sources_.size()) - 1;
  }

  const NetworkSpec& spec() const { return spec_; }

  /// Sources separated from the receiver when the edges in `removed` are
  /// deleted. Works for any edge count.
  SourceSet separated_by(const std::vector<int>& removed) const;
  /// Same, with the removed edges given as a bitmask (edge_count() <= 64).
  SourceSet separated_by_mask(std::uint64_t removed) const;

 private:
  NetworkSpec spec_;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> in_;
  std::vector<std::vector<int>> out_;
  std::vector<int> topo_;
  std::vector<int> sources_;
  std::vector<int> source_of_node_;
  int receiver_ = -1;
  int q_ = 2;
};

/// Returns the cut induced by `edge_set`, or nullopt when it separates no source.
std::optional<Cut> classify_cut(const Network& net, std::vector<int> edge_set);

/// All inclusion-minimal cuts: removing any single edge shrinks the separated
/// set. Sorted lexicographically by edge index list.
std::vector<Cut> enumerate_cuts(const Network& net, std::size_t edge_budget = kDefaultEdgeBudget);

struct EdgeCut {
  int size;
  Cut witness;
};

/// Minimum number of edges disconnecting every sigma_j, j in `targets`, from
/// the receiver. Unit-capacity max-flow from a virtual super-source.
EdgeCut min_edge_cut(const Network& net, SourceSet targets);

/// Minimum |C| over all cuts.
int min_cut_size(const Network& net);

bool is_multi_edge_tree(const Network& net);

/// 1-based source indices, e.g. {1,3}.
std::vector<int> source_indices(SourceSet set);
int popcount(SourceSet set);

}  // namespace netfuncap
