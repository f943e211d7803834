#include "netfuncap/examples.hpp"

namespace netfuncap::examples {

NetworkSpec single_edge() {
  return {{"s1", "rho"}, {{"s1", "rho"}}, {"s1"}, "rho", 2};
}

NetworkSpec reverse_butterfly() {
  NetworkSpec spec;
  spec.nodes = {"s1", "s2", "n1", "n2", "n3", "n4", "rho"};
  spec.edges = {{"s1", "n1"}, {"s1", "n4"}, {"s2", "n2"}, {"s2", "n4"}, {"n4", "n3"},
                {"n3", "n1"}, {"n3", "n2"}, {"n1", "rho"}, {"n2", "rho"}};
  spec.sources = {"s1", "s2"};
  spec.receiver = "rho";
  spec.alphabet_size = 2;
  return spec;
}

NetworkSpec line(int sources) {
  if (sources < 1) throw Error(ErrorKind::InvalidNetwork, "line needs at least one source");
  NetworkSpec spec;
  for (int i = 1; i <= sources; ++i) {
    spec.nodes.push_back("s" + std::to_string(i));
    spec.sources.push_back(spec.nodes.back());
  }
  spec.nodes.push_back("rho");
  for (int i = 0; i < sources; ++i) spec.edges.emplace_back(spec.nodes[i], spec.nodes[i + 1]);
  spec.receiver = "rho";
  spec.alphabet_size = 2;
  return spec;
}

NetworkSpec diamond() {
  NetworkSpec spec;
  spec.nodes = {"s1", "s2", "s3", "rho"};
  spec.edges = {{"s3", "s1"}, {"s3", "s2"}, {"s1", "rho"}, {"s2", "rho"}};
  spec.sources = {"s1", "s2", "s3"};
  spec.receiver = "rho";
  spec.alphabet_size = 2;
  return spec;
}

NetworkSpec relay_network(int sources, int parallel) {
  if (sources < 1 || parallel < 1) throw Error(ErrorKind::InvalidNetwork, "N_{M,L} needs M >= 1 and L >= 1");
  NetworkSpec spec;
  for (int i = 1; i <= sources; ++i) {
    spec.nodes.push_back("s" + std::to_string(i));
    spec.sources.push_back(spec.nodes.back());
  }
  spec.nodes.push_back("s0");
  spec.nodes.push_back("rho");
  for (int i = 1; i <= sources; ++i) {
    const std::string name = "s" + std::to_string(i);
    spec.edges.emplace_back(name, "rho");
    for (int l = 0; l < parallel; ++l) spec.edges.emplace_back(name, "s0");
  }
  for (int l = 0; l < parallel; ++l) spec.edges.emplace_back("s0", "rho");
  spec.receiver = "rho";
  spec.alphabet_size = 2;
  return spec;
}

}  // namespace netfuncap::examples
