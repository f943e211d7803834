#pragma once

#include <string>
#include <string_view>

#include "netfuncap/codes.hpp"
#include "netfuncap/network.hpp"
#include "netfuncap/target_function.hpp"

namespace netfuncap {

/// {"nodes": [...], "edges": [[tail, head], ...], "sources": [...],
///  "receiver": "...", "alphabet": q}. ParseError names the offending key;
/// ValidationError wraps whatever Network::compile rejects.
NetworkSpec parse_network(std::string_view document);
std::string emit_network(const NetworkSpec& spec);

/// {"kind": "...", "r": .., "coeffs": [..], "values": [..], "divisible": bool}.
TargetFunction parse_function(std::string_view document, int s, int q,
                              std::uint64_t budget = kDefaultStateBudget);
std::string emit_function(const TargetFunction& f);

/// Encoder tables list base-q digit strings in domain order; decoder entries
/// are k value codes each.
std::string emit_code(const Network& net, const CodeTables& tables);
CodeTables parse_code(std::string_view document);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace netfuncap
