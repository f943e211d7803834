#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "netfuncap/network.hpp"
#include "netfuncap/target_function.hpp"

namespace netfuncap {

struct Example {
  NetworkSpec spec;
  TargetFunction function;
};

/// N2, N3, diamond, NML(M,L), line(s), single_edge; each paired with the
/// binary arithmetic sum.
Example builtin_example(std::string_view name);

/// "arithmetic_sum", "mod_sum(3)", "linear(1,2)", an inline JSON object, or a
/// path to a JSON function document.
TargetFunction resolve_function(const std::string& text, int s, int q, std::uint64_t budget);

/// Largest rate k/n (n <= max_n, ties to the smallest n) meeting the
/// per-node block condition of tree_code; {0, 0} if none does.
std::pair<int, int> suggest_tree_rate(const Network& net, const TargetFunction& f, int max_n = 12);

/// Runs one subcommand; args exclude the program name. Output is written only
/// on success; errors go to `err` with a nonzero status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netfuncap
