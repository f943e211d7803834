#include "netfuncap/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace netfuncap {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

json parse_document(std::string_view document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("document: ") + e.what());
  }
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "document: expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw Error(ErrorKind::ParseError, std::string(key) + ": missing");
  return *it;
}

template <typename T>
T get_as(const json& value, const char* key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::ParseError, std::string(key) + ": wrong type");
  }
}

std::string digit_string(Block value, int length, int q) {
  std::string out(static_cast<std::size_t>(length), '0');
  for (int i = length - 1; i >= 0; --i) {
    out[i] = kDigits[value % static_cast<Block>(q)];
    value /= static_cast<Block>(q);
  }
  return out;
}

Block parse_digits(const std::string& text, int length, int q) {
  if (static_cast<int>(text.size()) != length) {
    throw Error(ErrorKind::ParseError, "encoders: digit string '" + text + "' must have length n");
  }
  Block value = 0;
  for (char c : text) {
    const auto digit = kDigits.find(c);
    if (digit == std::string_view::npos || static_cast<int>(digit) >= q) {
      throw Error(ErrorKind::ParseError, "encoders: '" + text + "' is not a base-" + std::to_string(q) + " string");
    }
    value = value * static_cast<Block>(q) + digit;
  }
  return value;
}

}  // namespace

NetworkSpec parse_network(std::string_view document) {
  const json doc = parse_document(document);
  NetworkSpec spec;
  spec.nodes = get_as<std::vector<std::string>>(require(doc, "nodes"), "nodes");
  const json& edges = require(doc, "edges");
  if (!edges.is_array()) throw Error(ErrorKind::ParseError, "edges: expected a list of [tail, head] pairs");
  for (const auto& edge : edges) {
    const auto pair = get_as<std::vector<std::string>>(edge, "edges");
    if (pair.size() != 2) throw Error(ErrorKind::ParseError, "edges: expected [tail, head]");
    spec.edges.emplace_back(pair[0], pair[1]);
  }
  spec.sources = get_as<std::vector<std::string>>(require(doc, "sources"), "sources");
  spec.receiver = get_as<std::string>(require(doc, "receiver"), "receiver");
  spec.alphabet_size = get_as<int>(require(doc, "alphabet"), "alphabet");
  try {
    Network::compile(spec);
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, e.what());
  }
  return spec;
}

std::string emit_network(const NetworkSpec& spec) {
  ordered_json doc;
  doc["nodes"] = spec.nodes;
  doc["edges"] = ordered_json::array();
  for (const auto& [tail, head] : spec.edges) doc["edges"].push_back({tail, head});
  doc["sources"] = spec.sources;
  doc["receiver"] = spec.receiver;
  doc["alphabet"] = spec.alphabet_size;
  return doc.dump(2) + "\n";
}

TargetFunction parse_function(std::string_view document, int s, int q, std::uint64_t budget) {
  const json doc = parse_document(document);
  const auto kind = get_as<std::string>(require(doc, "kind"), "kind");
  auto make = [&]() -> TargetFunction {
    if (kind == "identity") return TargetFunction::identity(s, q, budget);
    if (kind == "arithmetic_sum") return TargetFunction::arithmetic_sum(s, q, budget);
    if (kind == "mod_sum") return TargetFunction::mod_sum(s, q, get_as<int>(require(doc, "r"), "r"), budget);
    if (kind == "histogram") return TargetFunction::histogram(s, q, budget);
    if (kind == "linear") {
      if (!doc.contains("coeffs")) return TargetFunction::linear(s, q, {}, budget);
      return TargetFunction::linear(s, q, get_as<std::vector<int>>(doc["coeffs"], "coeffs"), budget);
    }
    if (kind == "maximum") return TargetFunction::maximum(s, q, budget);
    if (kind == "minimum") return TargetFunction::minimum(s, q, budget);
    if (kind == "table") return TargetFunction::table(s, q, get_as<std::vector<std::int64_t>>(require(doc, "values"), "values"));
    throw Error(ErrorKind::ParseError, "kind: unknown function kind '" + kind + "'");
  };
  TargetFunction f = make();
  if (doc.contains("divisible")) f = f.with_declared_divisible(get_as<bool>(doc["divisible"], "divisible"));
  return f;
}

std::string emit_function(const TargetFunction& f) {
  ordered_json doc;
  doc["kind"] = std::string(to_string(f.kind()));
  if (f.kind() == FunctionKind::ModSum) doc["r"] = f.modulus();
  if (f.kind() == FunctionKind::Linear) doc["coeffs"] = f.coefficients();
  if (f.kind() == FunctionKind::Table) doc["values"] = f.table_values();
  doc["divisible"] = f.declared_divisible();
  return doc.dump() + "\n";
}

std::string emit_code(const Network& net, const CodeTables& tables) {
  if (tables.q > static_cast<int>(kDigits.size())) throw Error(ErrorKind::InvalidCode, "alphabet too large to serialize");
  ordered_json doc;
  doc["schema"] = "v1";
  doc["k"] = tables.k;
  doc["n"] = tables.n;
  doc["q"] = tables.q;
  doc["encoders"] = ordered_json::array();
  for (std::size_t e = 0; e < tables.encoders.size(); ++e) {
    ordered_json entry;
    entry["edge"] = e;
    if (e < net.edge_count()) {
      entry["tail"] = net.name(net.edge(static_cast<int>(e)).tail);
      entry["head"] = net.name(net.edge(static_cast<int>(e)).head);
    }
    entry["values"] = ordered_json::array();
    for (Block b : tables.encoders[e]) entry["values"].push_back(digit_string(b, tables.n, tables.q));
    doc["encoders"].push_back(std::move(entry));
  }
  doc["decoder"] = tables.decoder;
  return doc.dump(1) + "\n";
}

CodeTables parse_code(std::string_view document) {
  const json doc = parse_document(document);
  CodeTables tables;
  tables.k = get_as<int>(require(doc, "k"), "k");
  tables.n = get_as<int>(require(doc, "n"), "n");
  tables.q = get_as<int>(require(doc, "q"), "q");
  if (tables.k < 1 || tables.n < 1) throw Error(ErrorKind::ParseError, "k: k and n must be positive");
  if (tables.q < 2 || tables.q > static_cast<int>(kDigits.size())) throw Error(ErrorKind::ParseError, "q: out of range");
  const json& encoders = require(doc, "encoders");
  if (!encoders.is_array()) throw Error(ErrorKind::ParseError, "encoders: expected a list");
  for (const auto& entry : encoders) {
    std::vector<Block> table;
    for (const auto& text : get_as<std::vector<std::string>>(require(entry, "values"), "values")) {
      table.push_back(parse_digits(text, tables.n, tables.q));
    }
    tables.encoders.push_back(std::move(table));
  }
  tables.decoder = get_as<std::vector<std::vector<ValueCode>>>(require(doc, "decoder"), "decoder");
  return tables;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << contents)) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
}

}  // namespace netfuncap
