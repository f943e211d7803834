#include "netfuncap/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "netfuncap/bounds.hpp"
#include "netfuncap/codes.hpp"
#include "netfuncap/examples.hpp"
#include "netfuncap/io.hpp"
#include "netfuncap/steiner.hpp"
#include "netfuncap/sumset.hpp"

namespace netfuncap {
namespace {

using nlohmann::ordered_json;

std::string fixed(double x, int digits = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, x);
  return buffer;
}

std::string set_string(const std::vector<int>& items) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + std::to_string(items[i]);
  return out + "}";
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "expected a comma-separated integer list, got '" + text + "'");
    }
  }
  return out;
}

struct Options {
  std::string example;
  std::string network;
  std::string function;
  std::string code;
  std::string out;
  std::string format = "text";
  std::string index_set;
  int k = 0;
  int n = 0;
  int M = 3;
  int L = 2;
  double tol = kDefaultTolerance;
  std::size_t budget_edges = kDefaultEdgeBudget;
  std::optional<std::uint64_t> budget_states;
  std::uint64_t budget_nodes = 2'000'000;
  std::uint64_t seed = 1;
};

std::uint64_t state_budget(const Options& options) {
  if (options.budget_states) return *options.budget_states;
  if (const char* env = std::getenv("NETFUNCAP_BUDGET_STATES")) {
    try {
      std::size_t used = 0;
      const std::string text(env);
      const auto value = std::stoull(text, &used);
      if (used != text.size() || value == 0) throw std::invalid_argument(text);
      return value;
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "NETFUNCAP_BUDGET_STATES must be a positive integer");
    }
  }
  return kDefaultStateBudget;
}

struct Problem {
  std::string label;
  NetworkSpec spec;
  Network net;
  TargetFunction f;
};

Problem load(const Options& options) {
  if (options.example.empty() == options.network.empty()) {
    throw Error(ErrorKind::ParseError, "give exactly one of --example or --network");
  }
  const std::uint64_t budget = state_budget(options);
  NetworkSpec spec;
  std::string label;
  if (!options.example.empty()) {
    spec = builtin_example(options.example).spec;
    label = options.example;
  } else {
    spec = parse_network(read_file(options.network));
    label = options.network;
  }
  Network net = Network::compile(spec);
  // every built-in example pairs with the arithmetic sum; rebuilt here so the
  // state budget applies
  TargetFunction f = options.function.empty()
                         ? TargetFunction::arithmetic_sum(net.source_count(), net.alphabet_size(), budget)
                         : resolve_function(options.function, net.source_count(), net.alphabet_size(), budget);
  return {label, std::move(spec), std::move(net), std::move(f)};
}

ordered_json network_json(const Problem& p) {
  ordered_json doc;
  doc["name"] = p.label;
  doc["nodes"] = p.net.node_count();
  doc["edges"] = p.net.edge_count();
  doc["sources"] = p.net.source_count();
  doc["alphabet"] = p.net.alphabet_size();
  return doc;
}

std::string network_line(const Problem& p) {
  return "network: " + p.label + " (" + std::to_string(p.net.node_count()) + " nodes, " +
         std::to_string(p.net.edge_count()) + " edges, s=" + std::to_string(p.net.source_count()) +
         ", q=" + std::to_string(p.net.alphabet_size()) + ")\n";
}

ordered_json cut_json(const Cut& cut) {
  ordered_json doc;
  doc["edges"] = cut.edges;
  doc["separated"] = source_indices(cut.separated);
  return doc;
}

ordered_json outcome_json(const VerificationOutcome& outcome) {
  ordered_json doc;
  doc["pass"] = outcome.pass;
  doc["generators"] = outcome.checked_count;
  if (outcome.counterexample) doc["counterexample"] = *outcome.counterexample;
  return doc;
}

std::string outcome_text(const VerificationOutcome& outcome) {
  std::string text = "verify: " + std::string(outcome.pass ? "pass" : "fail") + " (" +
                     std::to_string(outcome.checked_count) + " generators)\n";
  if (outcome.counterexample) {
    text += "counterexample:";
    for (Block b : *outcome.counterexample) text += " " + std::to_string(b);
    text += "\n";
  }
  return text;
}

class Emitter {
 public:
  explicit Emitter(const Options& options) : structured_(options.format == "structured") {}
  bool structured() const { return structured_; }
  ordered_json& doc() { return doc_; }
  std::ostringstream& text() { return text_; }
  std::string finish() const { return structured_ ? doc_.dump(2) + "\n" : text_.str(); }

 private:
  bool structured_;
  ordered_json doc_;
  std::ostringstream text_;
};

Emitter start(const Options& options, const std::string& command) {
  Emitter e(options);
  e.doc()["schema"] = "v1";
  e.doc()["command"] = command;
  return e;
}

/// Verifies when the generator space fits; nullopt otherwise.
std::optional<VerificationOutcome> try_verify(const Network& net, const TargetFunction& f, const NetworkCode& code) {
  try {
    return verify_code(net, f, code);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded) return std::nullopt;
    throw;
  }
}

void report_code(Emitter& e, const Network& net, const TargetFunction& f, const NetworkCode& code,
                 const Options& options) {
  const auto outcome = try_verify(net, f, code);
  if (e.structured()) {
    e.doc()["k"] = code.k;
    e.doc()["n"] = code.n;
    e.doc()["rate"] = code.rate();
    e.doc()["verification"] = outcome ? outcome_json(*outcome) : ordered_json("skipped");
  } else {
    e.text() << "code: (k,n) = (" << code.k << "," << code.n << "), rate " << fixed(code.rate()) << "\n";
    e.text() << (outcome ? outcome_text(*outcome) : std::string("verify: skipped (generator budget)\n"));
  }
  if (!options.out.empty()) {
    write_file(options.out, emit_code(net, tabulate(net, code)));
    if (e.structured()) {
      e.doc()["written"] = options.out;
    } else {
      e.text() << "written: " << options.out << "\n";
    }
  }
}

std::string cmd_bounds(const Options& options) {
  const Problem p = load(options);
  const auto report = bounds_report(p.net, p.f, options.tol, options.budget_edges);
  Emitter e = start(options, "bounds");
  if (e.structured()) {
    auto& doc = e.doc();
    doc["network"] = network_json(p);
    doc["function"] = p.f.name();
    doc["upper"] = {{"value", report.upper.value},
                    {"symbolic", report.upper.symbolic},
                    {"witness", cut_json(report.upper.witness)},
                    {"flow_diagnostic", report.upper.flow_candidates},
                    {"flow_argument", source_indices(report.upper.flow_argument)}};
    doc["lowers"] = ordered_json::array();
    for (const auto& lower : report.lowers) {
      doc["lowers"].push_back({{"tag", lower.tag},
                               {"value", lower.value},
                               {"symbolic", lower.symbolic},
                               {"note", lower.note},
                               {"citation_backed", lower.citation_backed}});
    }
    doc["best_lower"] = report.best_lower;
    doc["best_tag"] = report.best_tag;
    doc["certified"] = report.certified;
    doc["tolerance"] = report.tolerance;
    return e.finish();
  }
  auto& out = e.text();
  out << network_line(p) << "function: " << p.f.name() << "\n";
  out << "upper " << fixed(report.upper.value) << " = " << report.upper.symbolic << "  witness "
      << set_string(report.upper.witness.edges) << " separating " << set_string(source_indices(report.upper.witness.separated))
      << "\n";
  out << "flow-diagnostic " << fixed(report.upper.flow_candidates) << " at J = "
      << set_string(source_indices(report.upper.flow_argument)) << "\n";
  for (const auto& lower : report.lowers) {
    char line[256];
    std::snprintf(line, sizeof line, "lower %-16s %s  %-28s %s%s\n", lower.tag.c_str(), fixed(lower.value).c_str(),
                  lower.symbolic.c_str(), lower.note.c_str(), lower.citation_backed ? " [citation-backed]" : "");
    out << line;
  }
  out << "best-lower " << fixed(report.best_lower) << " (" << report.best_tag << ")\n";
  out << "certified " << (report.certified ? "true" : "false") << "\n";
  if (!report.certified) out << "gap " << fixed(report.best_lower) << " < " << fixed(report.upper.value) << "\n";
  return e.finish();
}

std::string cmd_footprint(const Options& options) {
  const Problem p = load(options);
  std::vector<SourceSet> sets;
  if (!options.index_set.empty()) {
    SourceSet I = 0;
    for (int i : parse_int_list(options.index_set)) {
      if (i < 1 || i > p.net.source_count()) throw Error(ErrorKind::ParseError, "--I: source index out of range");
      I |= SourceSet{1} << (i - 1);
    }
    sets.push_back(I);
  } else {
    for (SourceSet I = 1; I <= p.net.all_sources(); ++I) sets.push_back(I);
  }
  Emitter e = start(options, "footprint");
  e.doc()["function"] = p.f.name();
  e.doc()["footprints"] = ordered_json::array();
  e.text() << "function: " << p.f.name() << " (s=" << p.f.arity() << ", q=" << p.f.alphabet_size() << ")\n";
  for (SourceSet I : sets) {
    const int R = footprint(p.f, I).class_count;
    e.doc()["footprints"].push_back({{"I", source_indices(I)}, {"R", R}});
    e.text() << "R" << set_string(source_indices(I)) << " = " << R << "\n";
  }
  return e.finish();
}

std::string cmd_steiner(const Options& options) {
  const Problem p = load(options);
  const auto packing = steiner_packing(p.net, options.budget_edges);
  Emitter e = start(options, "steiner");
  e.doc()["network"] = network_json(p);
  e.doc()["pi"] = packing.value;
  e.doc()["pi_symbolic"] = rational_string(packing.value);
  e.doc()["trees"] = ordered_json::array();
  e.text() << network_line(p) << "Pi " << fixed(packing.value) << " = " << rational_string(packing.value) << "\n";
  for (std::size_t t = 0; t < packing.trees.size(); ++t) {
    e.doc()["trees"].push_back({{"edges", packing.trees[t]}, {"weight", packing.weights[t]}});
    e.text() << "tree " << set_string(packing.trees[t]) << " weight " << fixed(packing.weights[t]) << "\n";
  }
  return e.finish();
}

std::string cmd_tree_code(const Options& options) {
  const Problem p = load(options);
  int k = options.k;
  int n = options.n;
  if ((k == 0) != (n == 0)) throw Error(ErrorKind::ParseError, "give both --k and --n, or neither");
  const double bound = tree_rate_bound(p.net, p.f);
  if (k == 0) {
    std::tie(k, n) = suggest_tree_rate(p.net, p.f);
    if (k == 0) throw Error(ErrorKind::RateInfeasible, "no (k,n) with n <= 12 meets the block condition");
  }
  const NetworkCode code = tree_code(p.net, p.f, k, n);
  Emitter e = start(options, "tree-code");
  e.doc()["network"] = network_json(p);
  e.doc()["function"] = p.f.name();
  e.doc()["tree_rate_bound"] = bound;
  e.text() << network_line(p) << "function: " << p.f.name() << "\n"
           << "tree-rate-bound " << fixed(bound) << "\n";
  report_code(e, p.net, p.f, code, options);
  return e.finish();
}

std::string cmd_diamond_code(const Options& options) {
  const int k = options.k == 0 ? 2 : options.k;
  const Network net = Network::compile(examples::diamond());
  const auto f = TargetFunction::arithmetic_sum(3, 2);
  const NetworkCode code = diamond_code(k);
  Emitter e = start(options, "diamond-code");
  e.doc()["limit"] = diamond_capacity();
  e.doc()["counting_feasible"] = diamond_counting_feasible(code.k, code.n);
  e.text() << "limit 2/(1+log2(3)) = " << fixed(diamond_capacity()) << "\n";
  report_code(e, net, f, code, options);
  return e.finish();
}

std::string cmd_xor_code(const Options& options) {
  const Network net = Network::compile(examples::reverse_butterfly());
  const auto f = TargetFunction::mod_sum(2, 2, 2);
  const NetworkCode code = reverse_butterfly_xor_code();
  const auto upper = min_cut_f(net, f, options.budget_edges);
  Emitter e = start(options, "xor-code");
  e.doc()["min_cut"] = upper.value;
  e.text() << "min-cut " << fixed(upper.value) << " = " << upper.symbolic << "\n";
  report_code(e, net, f, code, options);
  return e.finish();
}

std::string cmd_search_code(const Options& options) {
  const Problem p = load(options);
  const int k = options.k == 0 ? 1 : options.k;
  const int n = options.n == 0 ? 1 : options.n;
  const auto result = search_code(p.net, p.f, k, n, options.budget_nodes);
  static constexpr const char* kStatus[] = {"found", "infeasible", "budget-exhausted"};
  const char* status = kStatus[static_cast<int>(result.status)];
  Emitter e = start(options, "search-code");
  e.doc()["network"] = network_json(p);
  e.doc()["function"] = p.f.name();
  e.doc()["k"] = k;
  e.doc()["n"] = n;
  e.doc()["status"] = status;
  e.doc()["nodes"] = result.nodes;
  e.text() << network_line(p) << "function: " << p.f.name() << "\n"
           << "search (k,n) = (" << k << "," << n << "): " << status << " after " << result.nodes << " nodes\n";
  if (result.code) {
    const auto outcome = verify_code(p.net, p.f, *result.code);
    e.doc()["verification"] = outcome_json(outcome);
    e.text() << outcome_text(outcome);
    if (!options.out.empty()) {
      write_file(options.out, emit_code(p.net, tabulate(p.net, *result.code)));
      e.doc()["written"] = options.out;
      e.text() << "written: " << options.out << "\n";
    }
  }
  return e.finish();
}

std::string cmd_verify_code(const Options& options) {
  if (options.code.empty()) throw Error(ErrorKind::ParseError, "--code is required");
  const Problem p = load(options);
  const NetworkCode code = from_tables(p.net, parse_code(read_file(options.code)));
  const auto outcome = verify_code(p.net, p.f, code);
  Emitter e = start(options, "verify-code");
  e.doc()["network"] = network_json(p);
  e.doc()["function"] = p.f.name();
  e.doc()["k"] = code.k;
  e.doc()["n"] = code.n;
  e.doc()["verification"] = outcome_json(outcome);
  e.text() << network_line(p) << "function: " << p.f.name() << "\n"
           << "code: (k,n) = (" << code.k << "," << code.n << ")\n"
           << outcome_text(outcome);
  return e.finish();
}

std::string cmd_gap(const Options& options) {
  const auto closed = mincut_NML_closed_form(options.M, options.L);
  const double upper_rate = rate_upper_NML(options.M, options.L);
  const Network net = Network::compile(build_NML(options.M, options.L));
  std::optional<double> enumerated;
  if (net.edge_count() <= options.budget_edges) {
    enumerated = min_cut_f(net, TargetFunction::arithmetic_sum(options.M, 2), options.budget_edges).value;
  }
  Emitter e = start(options, "gap");
  auto& doc = e.doc();
  doc["M"] = options.M;
  doc["L"] = options.L;
  doc["edges"] = net.edge_count();
  doc["min_cut"] = closed.value;
  doc["m_star"] = closed.m_star;
  doc["min_cut_enumerated"] = enumerated ? ordered_json(*enumerated) : ordered_json("skipped");
  doc["rate_upper"] = upper_rate;
  doc["ratio"] = closed.value / upper_rate;
  auto& out = e.text();
  out << "N(M=" << options.M << ",L=" << options.L << "): " << net.edge_count() << " edges\n";
  out << "min-cut " << fixed(closed.value) << " at m*=" << closed.m_star << "\n";
  out << "min-cut-enumerated " << (enumerated ? fixed(*enumerated) : std::string("skipped (edge budget)")) << "\n";
  out << "rate-upper " << fixed(upper_rate) << "\n";
  out << "ratio " << fixed(closed.value / upper_rate) << "\n";
  return e.finish();
}

std::string cmd_appendix(const Options& options) {
  const auto summary = appendix_suite(options.seed);
  Emitter e = start(options, "appendix-check");
  auto& doc = e.doc();
  doc["seed"] = summary.seed;
  doc["families"] = summary.families;
  doc["invariance"] = summary.invariance;
  doc["sumset_shrink"] = summary.shrink;
  doc["downward_closure"] = summary.closure;
  doc["lemma_a2"] = summary.lemma_a2;
  doc["product_bound"] = {{"holds", summary.product_holds}, {"cases", summary.product_cases}};
  doc["hamming_ball"] = {{"holds", summary.hamming_holds}, {"cases", summary.hamming_cases}};
  doc["all_hold"] = summary.all_hold();
  auto& out = e.text();
  const auto ratio = [](int a, int b) { return std::to_string(a) + "/" + std::to_string(b); };
  out << "seed " << summary.seed << "\n";
  out << "invariance " << ratio(summary.invariance, summary.families) << "\n";
  out << "sumset-shrink " << ratio(summary.shrink, summary.families) << "\n";
  out << "downward-closure " << ratio(summary.closure, summary.families) << "\n";
  out << "lemma-a2 " << ratio(summary.lemma_a2, summary.families) << "\n";
  out << "product-bound " << ratio(summary.product_holds, summary.product_cases) << "\n";
  out << "hamming-ball " << ratio(summary.hamming_holds, summary.hamming_cases) << "\n";
  out << "all-hold " << (summary.all_hold() ? "true" : "false") << "\n";
  return e.finish();
}

}  // namespace

Example builtin_example(std::string_view name) {
  const std::string text(name);
  auto with_sum = [](NetworkSpec spec) {
    const int s = static_cast<int>(spec.sources.size());
    return Example{spec, TargetFunction::arithmetic_sum(s, spec.alphabet_size)};
  };
  if (text == "N2") return with_sum(examples::reverse_butterfly());
  if (text == "N3") return with_sum(examples::line3());
  if (text == "diamond") return with_sum(examples::diamond());
  if (text == "single_edge") return with_sum(examples::single_edge());
  std::smatch match;
  static const std::regex nml(R"(NML\((\d{1,2}),(\d{1,2})\))");
  static const std::regex line(R"(line\((\d{1,2})\))");
  if (std::regex_match(text, match, nml)) return with_sum(build_NML(std::stoi(match[1]), std::stoi(match[2])));
  if (std::regex_match(text, match, line)) return with_sum(examples::line(std::stoi(match[1])));
  throw Error(ErrorKind::UnknownExample,
              "'" + text + "' (known: N2, N3, diamond, NML(M,L), line(s), single_edge)");
}

TargetFunction resolve_function(const std::string& text, int s, int q, std::uint64_t budget) {
  if (!text.empty() && text.front() == '{') return parse_function(text, s, q, budget);
  std::smatch match;
  static const std::regex call(R"(([a-z_]+)\(([-0-9, ]*)\))");
  if (std::regex_match(text, match, call)) {
    const std::string kind = match[1];
    const auto args = parse_int_list(match[2]);
    if (kind == "mod_sum" && args.size() == 1) return TargetFunction::mod_sum(s, q, args[0], budget);
    if (kind == "linear") return TargetFunction::linear(s, q, args, budget);
    throw Error(ErrorKind::ParseError, "kind: cannot parse function '" + text + "'");
  }
  if (text.find('/') != std::string::npos || text.find('.') != std::string::npos || std::filesystem::exists(text)) {
    return parse_function(read_file(text), s, q, budget);
  }
  nlohmann::json doc;
  doc["kind"] = text;
  if (text == "mod_sum") doc["r"] = q;
  return parse_function(doc.dump(), s, q, budget);
}

std::pair<int, int> suggest_tree_rate(const Network& net, const TargetFunction& f, int max_n) {
  if (!is_multi_edge_tree(net)) throw Error(ErrorKind::NotTree, "network is not a multi-edge tree");
  const auto sizes = footprint_sizes(f);
  const double log_q = std::log(static_cast<double>(net.alphabet_size()));
  std::pair<int, int> best{0, 0};
  for (int n = 1; n <= max_n; ++n) {
    int k = std::numeric_limits<int>::max();
    for (int v : net.topological_order()) {
      if (v == net.receiver()) continue;
      const auto& out = net.out_edges(v);
      const double classes = sizes[net.separated_by(out)];
      // q^{|E_o| n} >= R^k, with a small guard against rounding at equality
      k = std::min(k, static_cast<int>(std::floor(out.size() * n * log_q / std::log(classes) + 1e-9)));
    }
    if (k >= 1 && (best.first == 0 || static_cast<long long>(k) * best.second > static_cast<long long>(best.first) * n)) {
      best = {k, n};
    }
  }
  return best;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options options;
  CLI::App app{"Cut-set bounds and codes for computing functions over networks", "netfuncap"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--example", options.example, "Built-in network: N2, N3, diamond, NML(M,L), line(s), single_edge");
    sub->add_option("--network", options.network, "Network document (JSON)");
    sub->add_option("--function", options.function, "Function kind, kind(args), inline JSON, or document path");
    sub->add_option("--tol", options.tol, "Bound comparison tolerance")->check(CLI::Range(1e-300, 1e-3));
    sub->add_option("--budget-edges", options.budget_edges, "Edge budget for cut/tree enumeration")
        ->check(CLI::PositiveNumber);
    sub->add_option("--budget-states", options.budget_states, "Cap on q^s for exhaustive evaluation")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", options.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  };
  auto code_options = [&](CLI::App* sub) {
    sub->add_option("--k", options.k, "Message block length")->check(CLI::PositiveNumber);
    sub->add_option("--n", options.n, "Edge block length")->check(CLI::PositiveNumber);
    sub->add_option("--out", options.out, "Write the code tables here");
  };

  auto* bounds = app.add_subcommand("bounds", "Upper bound and every applicable lower bound");
  auto* foot = app.add_subcommand("footprint", "Footprint sizes R_{I,f}");
  foot->add_option("--I", options.index_set, "Comma-separated 1-based source indices");
  auto* steiner = app.add_subcommand("steiner", "Fractional Steiner tree packing");
  auto* tree = app.add_subcommand("tree-code", "Class-index forwarding code on a multi-edge tree");
  auto* diamond = app.add_subcommand("diamond-code", "Diamond network code for the binary sum");
  auto* xorc = app.add_subcommand("xor-code", "Mod-2 sum code on the reverse butterfly");
  auto* search = app.add_subcommand("search-code", "Exhaustive (k,n) code search");
  search->add_option("--budget-nodes", options.budget_nodes, "Search node budget")->check(CLI::PositiveNumber);
  auto* verify = app.add_subcommand("verify-code", "Check a serialized code exhaustively");
  verify->add_option("--code", options.code, "Code document")->required();
  auto* gap = app.add_subcommand("gap", "N(M,L) min-cut against the rate upper bound");
  gap->add_option("--M", options.M, "Number of sources")->check(CLI::Range(1, 30));
  gap->add_option("--L", options.L, "Parallel relay edges")->check(CLI::Range(1, 30));
  auto* appendix = app.add_subcommand("appendix-check", "Seeded run of the sumset lemma checkers");
  appendix->add_option("--seed", options.seed, "Random seed");

  for (auto* sub : {bounds, foot, steiner, tree, diamond, xorc, search, verify, gap, appendix}) common(sub);
  for (auto* sub : {tree, diamond, xorc, search}) code_options(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    std::string report;
    if (bounds->parsed()) report = cmd_bounds(options);
    if (foot->parsed()) report = cmd_footprint(options);
    if (steiner->parsed()) report = cmd_steiner(options);
    if (tree->parsed()) report = cmd_tree_code(options);
    if (diamond->parsed()) report = cmd_diamond_code(options);
    if (xorc->parsed()) report = cmd_xor_code(options);
    if (search->parsed()) report = cmd_search_code(options);
    if (verify->parsed()) report = cmd_verify_code(options);
    if (gap->parsed()) report = cmd_gap(options);
    if (appendix->parsed()) report = cmd_appendix(options);
    out << report;
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace netfuncap
