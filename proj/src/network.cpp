#include "netfuncap/network.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <queue>
#include <unordered_map>

namespace netfuncap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CyclicGraph: return "CyclicGraph";
    case ErrorKind::UnreachableReceiver: return "UnreachableReceiver";
    case ErrorKind::SourcelessLeaf: return "SourcelessLeaf";
    case ErrorKind::ReceiverIsSource: return "ReceiverIsSource";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::InvalidNetwork: return "InvalidNetwork";
    case ErrorKind::OutOfAlphabet: return "OutOfAlphabet";
    case ErrorKind::InvalidFunction: return "InvalidFunction";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NonPrimeFieldForLinear: return "NonPrimeFieldForLinear";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::NotAllSources: return "NotAllSources";
    case ErrorKind::NotTree: return "NotTree";
    case ErrorKind::RateInfeasible: return "RateInfeasible";
    case ErrorKind::OddK: return "OddK";
    case ErrorKind::BlockTooSmall: return "BlockTooSmall";
    case ErrorKind::IncompatibleEmbedding: return "IncompatibleEmbedding";
    case ErrorKind::InvalidCode: return "InvalidCode";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownExample: return "UnknownExample";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

Network Network::compile(const NetworkSpec& spec) {
  Network net;
  net.spec_ = spec;
  net.q_ = spec.alphabet_size;
  if (spec.alphabet_size < 2) {
    throw Error(ErrorKind::InvalidNetwork, "alphabet size must be at least 2");
  }
  if (spec.sources.empty()) throw Error(ErrorKind::InvalidNetwork, "network has no sources");
  if (spec.sources.size() > 31) throw Error(ErrorKind::InvalidNetwork, "at most 31 sources supported");

  std::unordered_map<std::string, int> index;
  for (const auto& name : spec.nodes) {
    if (!index.emplace(name, static_cast<int>(net.names_.size())).second) {
      throw Error(ErrorKind::InvalidNetwork, "duplicate node '" + name + "'");
    }
    net.names_.push_back(name);
  }
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw Error(ErrorKind::UnknownNode, "unknown node '" + name + "'");
    return it->second;
  };

  const std::size_t node_count = net.names_.size();
  net.in_.resize(node_count);
  net.out_.resize(node_count);
  for (const auto& [tail, head] : spec.edges) {
    const int e = static_cast<int>(net.edges_.size());
    net.edges_.push_back({lookup(tail), lookup(head)});
    net.out_[net.edges_.back().tail].push_back(e);
    net.in_[net.edges_.back().head].push_back(e);
  }
  net.receiver_ = lookup(spec.receiver);
  net.source_of_node_.assign(node_count, -1);
  for (std::size_t i = 0; i < spec.sources.size(); ++i) {
    const int node = lookup(spec.sources[i]);
    if (node == net.receiver_) throw Error(ErrorKind::ReceiverIsSource, spec.receiver);
    if (net.source_of_node_[node] >= 0) {
      throw Error(ErrorKind::InvalidNetwork, "duplicate source '" + spec.sources[i] + "'");
    }
    net.source_of_node_[node] = static_cast<int>(i);
    net.sources_.push_back(node);
  }

  // Kahn's algorithm; ties go to the lowest node index.
  std::vector<int> indegree(node_count);
  for (const auto& e : net.edges_) ++indegree[e.head];
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (std::size_t v = 0; v < node_count; ++v) {
    if (indegree[v] == 0) ready.push(static_cast<int>(v));
  }
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    net.topo_.push_back(v);
    for (int e : net.out_[v]) {
      if (--indegree[net.edges_[e].head] == 0) ready.push(net.edges_[e].head);
    }
  }
  if (net.topo_.size() != node_count) throw Error(ErrorKind::CyclicGraph, "graph contains a directed cycle");

  std::vector<char> reaches(node_count, 0);
  reaches[net.receiver_] = 1;
  for (auto it = net.topo_.rbegin(); it != net.topo_.rend(); ++it) {
    for (int e : net.out_[*it]) {
      if (reaches[net.edges_[e].head]) reaches[*it] = 1;
    }
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    if (!reaches[v]) {
      throw Error(ErrorKind::UnreachableReceiver, "node '" + net.names_[v] + "' has no path to the receiver");
    }
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    if (net.in_[v].empty() && net.source_of_node_[v] < 0) {
      throw Error(ErrorKind::SourcelessLeaf, "node '" + net.names_[v] + "' has no in-edges and is not a source");
    }
  }
  return net;
}

SourceSet Network::separated_by(const std::vector<int>& removed) const {
  std::vector<char> gone(edges_.size(), 0);
  for (int e : removed) gone[e] = 1;
  std::vector<char> reaches(names_.size(), 0);
  reaches[receiver_] = 1;
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    for (int e : out_[*it]) {
      if (!gone[e] && reaches[edges_[e].head]) {
        reaches[*it] = 1;
        break;
      }
    }
  }
  SourceSet separated = 0;
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    if (!reaches[sources_[i]]) separated |= SourceSet{1} << i;
  }
  return separated;
}

SourceSet Network::separated_by_mask(std::uint64_t removed) const {
  // nodes fit in the 64-bit reach mask only for small graphs; fall back otherwise
  if (names_.size() > 64) {
    std::vector<int> list;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (removed >> e & 1U) list.push_back(static_cast<int>(e));
    }
    return separated_by(list);
  }
  std::uint64_t reaches = std::uint64_t{1} << receiver_;
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    for (int e : out_[*it]) {
      if (!(removed >> e & 1U) && (reaches >> edges_[e].head & 1U)) {
        reaches |= std::uint64_t{1} << *it;
        break;
      }
    }
  }
  SourceSet separated = 0;
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    if (!(reaches >> sources_[i] & 1U)) separated |= SourceSet{1} << i;
  }
  return separated;
}

std::optional<Cut> classify_cut(const Network& net, std::vector<int> edge_set) {
  std::sort(edge_set.begin(), edge_set.end());
  edge_set.erase(std::unique(edge_set.begin(), edge_set.end()), edge_set.end());
  for (int e : edge_set) {
    if (e < 0 || static_cast<std::size_t>(e) >= net.edge_count()) {
      throw Error(ErrorKind::InvalidNetwork, "edge index out of range");
    }
  }
  const SourceSet separated = net.separated_by(edge_set);
  if (separated == 0) return std::nullopt;
  return Cut{std::move(edge_set), separated};
}

std::vector<Cut> enumerate_cuts(const Network& net, std::size_t edge_budget) {
  const std::size_t m = net.edge_count();
  if (m > edge_budget || m > 32) {
    throw Error(ErrorKind::BudgetExceeded,
                "cut enumeration over " + std::to_string(m) + " edges exceeds budget of " +
                    std::to_string(std::min<std::size_t>(edge_budget, 32)));
  }
  const std::uint64_t subsets = std::uint64_t{1} << m;
  std::vector<SourceSet> separated(subsets);
  for (std::uint64_t mask = 0; mask < subsets; ++mask) separated[mask] = net.separated_by_mask(mask);

  std::vector<Cut> cuts;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    const SourceSet sep = separated[mask];
    if (sep == 0) continue;
    bool minimal = true;
    for (std::uint64_t rest = mask; rest != 0 && minimal; rest &= rest - 1) {
      const std::uint64_t bit = rest & (~rest + 1);
      if (separated[mask ^ bit] == sep) minimal = false;
    }
    if (!minimal) continue;
    Cut cut;
    cut.separated = sep;
    for (std::size_t e = 0; e < m; ++e) {
      if (mask >> e & 1U) cut.edges.push_back(static_cast<int>(e));
    }
    cuts.push_back(std::move(cut));
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.edges < b.edges; });
  return cuts;
}

EdgeCut min_edge_cut(const Network& net, SourceSet targets) {
  if (targets == 0) throw Error(ErrorKind::InvalidNetwork, "min_edge_cut needs a nonempty source set");
  // Residual arcs come in pairs (2i forward, 2i+1 backward). Network edge e is
  // arc pair e; super-source arcs follow.
  const int n = static_cast<int>(net.node_count());
  const int super = n;
  struct Arc {
    int to;
    int cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> adj(n + 1);
  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  auto add = [&](int from, int to, int cap) {
    adj[from].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({to, cap});
    adj[to].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({from, 0});
  };
  for (const auto& e : net.edges()) add(e.tail, e.head, 1);
  for (int i = 0; i < net.source_count(); ++i) {
    if (targets >> i & 1U) add(super, net.source_node(i), kInf);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  const int sink = net.receiver();
  int flow = 0;
  std::vector<int> parent_arc(n + 1);
  while (true) {
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    std::deque<int> frontier{super};
    std::vector<char> seen(n + 1, 0);
    seen[super] = 1;
    while (!frontier.empty() && !seen[sink]) {
      const int v = frontier.front();
      frontier.pop_front();
      for (int a : adj[v]) {
        if (arcs[a].cap > 0 && !seen[arcs[a].to]) {
          seen[arcs[a].to] = 1;
          parent_arc[arcs[a].to] = a;
          frontier.push_back(arcs[a].to);
        }
      }
    }
    if (!seen[sink]) break;
    for (int v = sink; v != super;) {
      const int a = parent_arc[v];
      arcs[a].cap -= 1;
      arcs[a ^ 1].cap += 1;
      v = arcs[a ^ 1].to;
    }
    ++flow;
  }

  std::vector<char> source_side(n + 1, 0);
  std::deque<int> frontier{super};
  source_side[super] = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop_front();
    for (int a : adj[v]) {
      if (arcs[a].cap > 0 && !source_side[arcs[a].to]) {
        source_side[arcs[a].to] = 1;
        frontier.push_back(arcs[a].to);
      }
    }
  }
  std::vector<int> witness;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const auto& edge = net.edge(static_cast<int>(e));
    if (source_side[edge.tail] && !source_side[edge.head]) witness.push_back(static_cast<int>(e));
  }
  auto cut = classify_cut(net, witness);
  if (!cut || static_cast<int>(witness.size()) != flow || (cut->separated & targets) != targets) {
    throw Error(ErrorKind::InternalError, "max-flow witness inconsistent");
  }
  return {flow, std::move(*cut)};
}

int min_cut_size(const Network& net) {
  int best = std::numeric_limits<int>::max();
  for (int i = 0; i < net.source_count(); ++i) {
    best = std::min(best, min_edge_cut(net, SourceSet{1} << i).size);
  }
  return best;
}

bool is_multi_edge_tree(const Network& net) {
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (static_cast<int>(v) == net.receiver()) continue;
    const auto& out = net.out_edges(static_cast<int>(v));
    for (int e : out) {
      if (net.edge(e).head != net.edge(out.front()).head) return false;
    }
  }
  return true;
}

std::vector<int> source_indices(SourceSet set) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if (set >> i & 1U) out.push_back(i + 1);
  }
  return out;
}

int popcount(SourceSet set) { return std::popcount(set); }

}  // namespace netfuncap
