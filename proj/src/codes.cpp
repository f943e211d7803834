#include "netfuncap/codes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <unordered_map>

#include "netfuncap/examples.hpp"

namespace netfuncap {
namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kBlockLimit = std::uint64_t{1} << 62;

/// base^exponent, throwing when it leaves [0, limit].
std::uint64_t power(std::uint64_t base, int exponent, std::uint64_t limit = kBlockLimit) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > limit / base) {
      throw Error(ErrorKind::BudgetExceeded, std::to_string(base) + "^" + std::to_string(exponent) + " is too large");
    }
    out *= base;
  }
  return out;
}

/// Saturating 128-bit power.
u128 power128(std::uint64_t base, int exponent) {
  const u128 cap = ~u128{0} >> 1;
  u128 out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > cap / base) return cap;
    out *= base;
  }
  return out;
}

void check_compatible(const Network& net, const TargetFunction& f) {
  if (f.arity() != net.source_count() || f.alphabet_size() != net.alphabet_size()) {
    throw Error(ErrorKind::ArityMismatch, "function over " + std::to_string(f.arity()) + " arguments / q=" +
                                              std::to_string(f.alphabet_size()) + " does not match the network");
  }
}

int digit_at(Block block, int position, int length, std::uint64_t q) {
  for (int i = position + 1; i < length; ++i) block /= q;
  return static_cast<int>(block % q);
}

}  // namespace

std::uint64_t encoder_domain_size(const Network& net, int edge, int k, int n) {
  const int tail = net.edge(edge).tail;
  const int digits = static_cast<int>(net.in_edges(tail).size()) * n + (net.is_source(tail) ? k : 0);
  return power(static_cast<std::uint64_t>(net.alphabet_size()), digits);
}

std::uint64_t decoder_domain_size(const Network& net, int n) {
  const int digits = static_cast<int>(net.in_edges(net.receiver()).size()) * n;
  return power(static_cast<std::uint64_t>(net.alphabet_size()), digits);
}

CodeTables tabulate(const Network& net, const NetworkCode& code, std::uint64_t budget) {
  const auto q = static_cast<std::uint64_t>(code.q);
  const std::uint64_t qn = power(q, code.n);
  const std::uint64_t qk = power(q, code.k);
  CodeTables tables{code.k, code.n, code.q, {}, {}};
  std::uint64_t total = 0;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const int tail = net.edge(static_cast<int>(e)).tail;
    const std::uint64_t size = encoder_domain_size(net, static_cast<int>(e), code.k, code.n);
    if ((total += size) > budget) throw Error(ErrorKind::BudgetExceeded, "code tables exceed the state budget");
    const std::size_t inputs_count = net.in_edges(tail).size();
    std::vector<Block> inputs(inputs_count);
    std::vector<Block> table(size);
    for (std::uint64_t index = 0; index < size; ++index) {
      std::uint64_t rest = index;
      Block message = 0;
      if (net.is_source(tail)) {
        message = rest % qk;
        rest /= qk;
      }
      for (std::size_t i = inputs_count; i-- > 0;) {
        inputs[i] = rest % qn;
        rest /= qn;
      }
      table[index] = code.encoders[e](inputs, message);
    }
    tables.encoders.push_back(std::move(table));
  }
  const std::uint64_t size = decoder_domain_size(net, code.n);
  if ((total += size) > budget) throw Error(ErrorKind::BudgetExceeded, "code tables exceed the state budget");
  const std::size_t received_count = net.in_edges(net.receiver()).size();
  std::vector<Block> received(received_count);
  for (std::uint64_t index = 0; index < size; ++index) {
    std::uint64_t rest = index;
    for (std::size_t i = received_count; i-- > 0;) {
      received[i] = rest % qn;
      rest /= qn;
    }
    tables.decoder.push_back(code.decoder(received));
  }
  return tables;
}

NetworkCode from_tables(const Network& net, CodeTables tables) {
  if (tables.q != net.alphabet_size()) throw Error(ErrorKind::InvalidCode, "code alphabet differs from network");
  if (tables.encoders.size() != net.edge_count()) throw Error(ErrorKind::InvalidCode, "one encoder table per edge");
  const auto q = static_cast<std::uint64_t>(tables.q);
  const std::uint64_t qn = power(q, tables.n);
  const std::uint64_t qk = power(q, tables.k);
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    if (tables.encoders[e].size() != encoder_domain_size(net, static_cast<int>(e), tables.k, tables.n)) {
      throw Error(ErrorKind::InvalidCode, "encoder table " + std::to_string(e) + " has the wrong size");
    }
    for (Block b : tables.encoders[e]) {
      if (b >= qn) throw Error(ErrorKind::InvalidCode, "encoder value out of range on edge " + std::to_string(e));
    }
  }
  if (tables.decoder.size() != decoder_domain_size(net, tables.n)) {
    throw Error(ErrorKind::InvalidCode, "decoder table has the wrong size");
  }
  for (const auto& entry : tables.decoder) {
    if (static_cast<int>(entry.size()) != tables.k) throw Error(ErrorKind::InvalidCode, "decoder entry needs k values");
  }

  auto shared = std::make_shared<const CodeTables>(std::move(tables));
  NetworkCode code{shared->k, shared->n, shared->q, {}, {}};
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const bool source = net.is_source(net.edge(static_cast<int>(e)).tail);
    code.encoders.push_back([shared, e, source, qn, qk](std::span<const Block> inputs, Block message) {
      std::uint64_t index = 0;
      for (Block b : inputs) index = index * qn + b;
      if (source) index = index * qk + message;
      return shared->encoders[e].at(index);
    });
  }
  code.decoder = [shared, qn](std::span<const Block> received) {
    std::uint64_t index = 0;
    for (Block b : received) index = index * qn + b;
    return shared->decoder.at(index);
  };
  return code;
}

std::vector<Block> propagate(const Network& net, const NetworkCode& code, std::span<const Block> messages) {
  const std::uint64_t qn = power(static_cast<std::uint64_t>(code.q), code.n);
  std::vector<Block> carried(net.edge_count(), 0);
  std::vector<Block> inputs;
  for (int v : net.topological_order()) {
    if (v == net.receiver()) continue;
    inputs.clear();
    for (int e : net.in_edges(v)) inputs.push_back(carried[e]);
    const Block message = net.is_source(v) ? messages[net.source_index(v)] : 0;
    for (int e : net.out_edges(v)) {
      carried[e] = code.encoders[e](inputs, message);
      if (carried[e] >= qn) throw Error(ErrorKind::InvalidCode, "edge " + std::to_string(e) + " carries too many symbols");
    }
  }
  return carried;
}

VerificationOutcome verify_code(const Network& net, const TargetFunction& f, const NetworkCode& code,
                                std::uint64_t budget) {
  check_compatible(net, f);
  if (code.q != net.alphabet_size() || code.encoders.size() != net.edge_count()) {
    throw Error(ErrorKind::InvalidCode, "code does not fit the network");
  }
  const int s = net.source_count();
  const auto q = static_cast<std::uint64_t>(code.q);
  const std::uint64_t qk = power(q, code.k);
  const std::uint64_t total = power(qk, s, std::numeric_limits<std::uint64_t>::max() / 2);
  if (total > budget) {
    throw Error(ErrorKind::BudgetExceeded, "q^(ks) = " + std::to_string(total) + " generators exceed the budget");
  }

  VerificationOutcome outcome;
  std::vector<Block> messages(s, 0);
  std::vector<Block> received;
  std::vector<int> x(s);
  for (std::uint64_t g = 0; g < total; ++g) {
    const auto carried = propagate(net, code, messages);
    received.clear();
    for (int e : net.in_edges(net.receiver())) received.push_back(carried[e]);
    const auto decoded = code.decoder(received);
    bool ok = static_cast<int>(decoded.size()) == code.k;
    for (int j = 0; j < code.k && ok; ++j) {
      for (int i = 0; i < s; ++i) x[i] = digit_at(messages[i], j, code.k, q);
      ok = decoded[j] == f.code(x);
    }
    ++outcome.checked_count;
    if (!ok) {
      outcome.counterexample = messages;
      return outcome;
    }
    for (int i = s - 1; i >= 0; --i) {
      if (++messages[i] < qk) break;
      messages[i] = 0;
    }
  }
  outcome.pass = true;
  return outcome;
}

double tree_rate_bound(const Network& net, const TargetFunction& f) {
  check_compatible(net, f);
  if (!is_multi_edge_tree(net)) throw Error(ErrorKind::NotTree, "network is not a multi-edge tree");
  const double log_q = std::log(static_cast<double>(net.alphabet_size()));
  double best = std::numeric_limits<double>::infinity();
  for (int v : net.topological_order()) {
    if (v == net.receiver()) continue;
    const auto& out = net.out_edges(v);
    const SourceSet separated = net.separated_by(out);
    const int classes = footprint(f, separated).class_count;
    best = std::min(best, static_cast<double>(out.size()) * log_q / std::log(static_cast<double>(classes)));
  }
  return best;
}

namespace {

/// Per-node data for the class-index forwarding scheme.
struct TreePlan {
  SourceSet sources = 0;
  int classes = 1;
  std::vector<int> class_of;                  // footprint over `sources`
  std::vector<std::vector<int>> child_inputs;  // per child: positions in in_edges(v), ascending edge order
  std::vector<int> child_nodes;
  int own_source = -1;
  std::vector<int> radices;  // child class counts, then q for the own message
  std::vector<int> combine;  // mixed index over parts -> 0-based class
  std::vector<std::vector<int>> representatives;  // per class: digits over `sources`
};

struct TreeScheme {
  int k = 1;
  int n = 1;
  std::uint64_t q = 2;
  std::vector<TreePlan> plans;  // per node
  std::vector<ValueCode> receiver_values;  // per receiver class

  std::vector<int> classes(int v, std::span<const Block> inputs, Block message) const {
    const TreePlan& plan = plans[v];
    const u128 qn = power128(q, n);
    std::vector<std::vector<int>> part_classes;
    for (std::size_t c = 0; c < plan.child_nodes.size(); ++c) {
      const TreePlan& child = plans[plan.child_nodes[c]];
      u128 packed = 0;
      for (int position : plan.child_inputs[c]) packed = packed * qn + inputs[position];
      std::vector<int> unpacked(k);
      for (int l = k - 1; l >= 0; --l) {
        unpacked[l] = static_cast<int>(packed % static_cast<u128>(child.classes));
        packed /= static_cast<u128>(child.classes);
      }
      part_classes.push_back(std::move(unpacked));
    }
    if (plan.own_source >= 0) {
      std::vector<int> digits(k);
      for (int l = 0; l < k; ++l) digits[l] = digit_at(message, l, k, q);
      part_classes.push_back(std::move(digits));
    }
    std::vector<int> out(k);
    for (int l = 0; l < k; ++l) {
      std::size_t index = 0;
      for (std::size_t p = 0; p < plan.radices.size(); ++p) {
        index = index * static_cast<std::size_t>(plan.radices[p]) + static_cast<std::size_t>(part_classes[p][l]);
      }
      out[l] = plan.combine[index];
    }
    return out;
  }
};

}  // namespace

NetworkCode tree_code(const Network& net, const TargetFunction& f, int k, int n) {
  check_compatible(net, f);
  if (!is_multi_edge_tree(net)) throw Error(ErrorKind::NotTree, "network is not a multi-edge tree");
  if (k < 1 || n < 1) throw Error(ErrorKind::InvalidCode, "k and n must be positive");
  auto scheme = std::make_shared<TreeScheme>();
  scheme->k = k;
  scheme->n = n;
  scheme->q = static_cast<std::uint64_t>(net.alphabet_size());
  const std::uint64_t q = scheme->q;
  power(q, n);
  power(q, k);
  scheme->plans.resize(net.node_count());

  // Report the bottleneck among violating nodes, not merely the first one.
  {
    const auto sizes = footprint_sizes(f);
    int worst = -1;
    double worst_rate = std::numeric_limits<double>::infinity();
    for (int v : net.topological_order()) {
      if (v == net.receiver()) continue;
      const int edges = static_cast<int>(net.out_edges(v).size());
      const int classes = sizes[net.separated_by(net.out_edges(v))];
      const u128 capacity = power128(q, edges * n);
      if (capacity == (~u128{0} >> 1)) throw Error(ErrorKind::BudgetExceeded, "block too long at " + net.name(v));
      if (power128(static_cast<std::uint64_t>(classes), k) <= capacity) continue;
      const double rate = edges / std::log(static_cast<double>(classes));
      if (rate < worst_rate) {
        worst_rate = rate;
        worst = v;
      }
    }
    if (worst >= 0) throw Error(ErrorKind::RateInfeasible, "q^(|E_o|n) < R^k at node " + net.name(worst));
  }

  for (int v : net.topological_order()) {
    TreePlan& plan = scheme->plans[v];
    const bool receiver = v == net.receiver();
    plan.sources = receiver ? net.all_sources() : net.separated_by(net.out_edges(v));
    auto fp = footprint(f, plan.sources);
    plan.classes = fp.class_count;
    plan.class_of = std::move(fp.class_of);

    const int width = popcount(plan.sources);
    std::vector<int> member_position(32, -1);
    {
      int p = 0;
      for (int i = 0; i < 32; ++i) {
        if (plan.sources >> i & 1U) member_position[i] = p++;
      }
    }
    plan.representatives.assign(plan.classes, {});
    for (std::size_t t = 0; t < plan.class_of.size(); ++t) {
      auto& rep = plan.representatives[plan.class_of[t] - 1];
      if (rep.empty()) rep = digits_of(t, static_cast<int>(q), width);
    }

    // children in order of their first edge into v
    for (std::size_t position = 0; position < net.in_edges(v).size(); ++position) {
      const int u = net.edge(net.in_edges(v)[position]).tail;
      auto it = std::find(plan.child_nodes.begin(), plan.child_nodes.end(), u);
      if (it == plan.child_nodes.end()) {
        plan.child_nodes.push_back(u);
        plan.child_inputs.emplace_back();
        it = plan.child_nodes.end() - 1;
      }
      plan.child_inputs[it - plan.child_nodes.begin()].push_back(static_cast<int>(position));
    }
    for (int u : plan.child_nodes) plan.radices.push_back(scheme->plans[u].classes);
    if (net.is_source(v)) {
      plan.own_source = net.source_index(v);
      plan.radices.push_back(static_cast<int>(q));
    }

    std::size_t combinations = 1;
    for (int r : plan.radices) combinations *= static_cast<std::size_t>(r);
    if (combinations > kDefaultGeneratorBudget) throw Error(ErrorKind::BudgetExceeded, "combine table too large");
    plan.combine.resize(combinations);
    std::vector<int> digits(width);
    for (std::size_t index = 0; index < combinations; ++index) {
      std::size_t rest = index;
      for (std::size_t p = plan.radices.size(); p-- > 0;) {
        const int part = static_cast<int>(rest % static_cast<std::size_t>(plan.radices[p]));
        rest /= static_cast<std::size_t>(plan.radices[p]);
        if (p < plan.child_nodes.size()) {
          const TreePlan& child = scheme->plans[plan.child_nodes[p]];
          const auto& rep = child.representatives[part];
          int c = 0;
          for (int i = 0; i < 32; ++i) {
            if (child.sources >> i & 1U) digits[member_position[i]] = rep[c++];
          }
        } else {
          digits[member_position[plan.own_source]] = part;
        }
      }
      plan.combine[index] = plan.class_of[index_of(digits, static_cast<int>(q))] - 1;
    }
  }

  const TreePlan& root = scheme->plans[net.receiver()];
  if (root.sources != net.all_sources()) throw Error(ErrorKind::InternalError, "receiver does not see every source");
  for (const auto& rep : root.representatives) {
    scheme->receiver_values.push_back(f.code_at(index_of(rep, static_cast<int>(q))));
  }

  NetworkCode code{k, n, net.alphabet_size(), {}, {}};
  const std::uint64_t qn = power(q, n);
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const int v = net.edge(static_cast<int>(e)).tail;
    const auto& out = net.out_edges(v);
    const int position = static_cast<int>(std::find(out.begin(), out.end(), static_cast<int>(e)) - out.begin());
    const int edges = static_cast<int>(out.size());
    code.encoders.push_back([scheme, v, position, edges, qn](std::span<const Block> inputs, Block message) {
      const auto classes = scheme->classes(v, inputs, message);
      const auto radix = static_cast<u128>(scheme->plans[v].classes);
      u128 packed = 0;
      for (int c : classes) packed = packed * radix + static_cast<u128>(c);
      for (int i = position + 1; i < edges; ++i) packed /= qn;
      return static_cast<Block>(packed % qn);
    });
  }
  const int receiver = net.receiver();
  code.decoder = [scheme, receiver](std::span<const Block> received) {
    const auto classes = scheme->classes(receiver, received, 0);
    std::vector<ValueCode> values;
    for (int c : classes) values.push_back(scheme->receiver_values[c]);
    return values;
  };
  return code;
}

int diamond_block_length(int k) {
  if (k < 2 || k % 2 != 0) throw Error(ErrorKind::OddK, "diamond code needs an even k >= 2, got " + std::to_string(k));
  const u128 needed = power128(6, k / 2);
  int n = 0;
  for (u128 value = 1; value < needed; value *= 2) ++n;
  return n;
}

NetworkCode diamond_code(int k) {
  const int n = diamond_block_length(k);
  if (k > n) throw Error(ErrorKind::BlockTooSmall, "k > n");
  if (n > 62) throw Error(ErrorKind::BudgetExceeded, "diamond block length above 62 bits");
  const int half = k / 2;
  auto bit = [k](Block w, int i) { return static_cast<int>(w >> (k - 1 - i) & 1U); };
  // y^(1): first half w1+w3 (radix 3), second half w1 (radix 2).
  // y^(2): first half w2 (radix 2), second half w2+w3 (radix 3).
  auto pack = [k, half, bit](Block own, Block shared, bool first_half_shared) {
    Block packed = 0;
    for (int i = 0; i < k; ++i) {
      const bool shared_here = (i < half) == first_half_shared;
      packed = packed * (shared_here ? 3 : 2) + static_cast<Block>(bit(own, i) + (shared_here ? bit(shared, i) : 0));
    }
    return packed;
  };
  auto unpack = [k, half](Block packed, bool first_half_shared) {
    std::vector<int> digits(k);
    for (int i = k - 1; i >= 0; --i) {
      const Block radix = ((i < half) == first_half_shared) ? 3 : 2;
      digits[i] = static_cast<int>(packed % radix);
      packed /= radix;
    }
    return digits;
  };
  const Block limit = static_cast<Block>(power128(6, half));

  NetworkCode code{k, n, 2, {}, {}};
  // edges: 0 s3->s1, 1 s3->s2, 2 s1->rho, 3 s2->rho
  auto forward = [](std::span<const Block>, Block message) { return message; };
  code.encoders.push_back(forward);
  code.encoders.push_back(forward);
  code.encoders.push_back([pack](std::span<const Block> inputs, Block message) { return pack(message, inputs[0], true); });
  code.encoders.push_back([pack](std::span<const Block> inputs, Block message) { return pack(message, inputs[0], false); });
  code.decoder = [k, limit, unpack](std::span<const Block> received) {
    std::vector<ValueCode> sums(k, 0);
    if (received[0] >= limit || received[1] >= limit) return sums;
    const auto y1 = unpack(received[0], true);
    const auto y2 = unpack(received[1], false);
    for (int i = 0; i < k; ++i) sums[i] = y1[i] + y2[i];
    return sums;
  };
  return code;
}

bool diamond_counting_feasible(int k, int n) {
  if (k <= 0 || n <= 0) return k <= 0;
  if (k <= 49 && n <= 63) return power128(4, n) >= power128(6, k);
  return 2.0L * n >= k * std::log2(6.0L);
}

NetworkCode reverse_butterfly_xor_code() {
  NetworkCode code{2, 1, 2, {}, {}};
  auto first = [](Block m) { return m >> 1 & 1U; };
  auto second = [](Block m) { return m & 1U; };
  auto xor_inputs = [](std::span<const Block> inputs, Block) { return inputs[0] ^ inputs[1]; };
  auto pass = [](std::span<const Block> inputs, Block) { return inputs[0]; };
  code.encoders = {
      [=](std::span<const Block>, Block a) { return first(a) ^ second(a); },  // s1->n1
      [=](std::span<const Block>, Block a) { return second(a); },             // s1->n4
      [=](std::span<const Block>, Block b) { return first(b) ^ second(b); },  // s2->n2
      [=](std::span<const Block>, Block b) { return first(b); },              // s2->n4
      xor_inputs,                                                             // n4->n3
      pass,                                                                   // n3->n1
      pass,                                                                   // n3->n2
      xor_inputs,                                                             // n1->rho
      xor_inputs,                                                             // n2->rho
  };
  code.decoder = [](std::span<const Block> received) {
    return std::vector<ValueCode>{static_cast<ValueCode>(received[0]), static_cast<ValueCode>(received[1])};
  };
  return code;
}

int simulated_length(int base, int length, int target_q) {
  const u128 needed = power128(static_cast<std::uint64_t>(base), length);
  int m = 0;
  for (u128 value = 1; value < needed; value *= static_cast<u128>(target_q)) ++m;
  return m;
}

NetworkCode simulate_alphabet(const NetworkCode& code, int target_q, int repetitions) {
  if (repetitions < 1) throw Error(ErrorKind::InvalidCode, "repetition factor must be positive");
  if (target_q < 2 || target_q > code.q) {
    throw Error(ErrorKind::IncompatibleEmbedding,
                "source symbols over q=" + std::to_string(target_q) + " do not embed in q'=" + std::to_string(code.q));
  }
  const int c = repetitions;
  const auto base = static_cast<std::uint64_t>(code.q);
  const auto target = static_cast<std::uint64_t>(target_q);
  const std::uint64_t chunk = power(base, code.n);
  const std::uint64_t span = power(base, c * code.n);
  const int k = code.k;
  const int new_n = simulated_length(code.q, c * code.n, target_q);
  power(target, new_n);
  power(target, c * k);

  auto split = [c, chunk, span](Block value) {
    std::vector<Block> parts(c);
    if (value >= span) value = 0;
    for (int t = c - 1; t >= 0; --t) {
      parts[t] = value % chunk;
      value /= chunk;
    }
    return parts;
  };

  NetworkCode out{c * k, new_n, target_q, {}, {}};
  for (const auto& encoder : code.encoders) {
    out.encoders.push_back([encoder, split, c, k, base, target, chunk](std::span<const Block> inputs, Block message) {
      std::vector<std::vector<Block>> parts;
      for (Block b : inputs) parts.push_back(split(b));
      std::vector<int> symbols(static_cast<std::size_t>(c * k));
      for (int i = c * k - 1; i >= 0; --i) {
        symbols[i] = static_cast<int>(message % target);
        message /= target;
      }
      std::vector<Block> chunk_inputs(inputs.size());
      Block result = 0;
      for (int t = 0; t < c; ++t) {
        for (std::size_t i = 0; i < inputs.size(); ++i) chunk_inputs[i] = parts[i][t];
        Block chunk_message = 0;
        for (int j = 0; j < k; ++j) chunk_message = chunk_message * base + static_cast<Block>(symbols[t * k + j]);
        result = result * chunk + encoder(chunk_inputs, chunk_message);
      }
      return result;
    });
  }
  out.decoder = [decoder = code.decoder, split, c](std::span<const Block> received) {
    std::vector<std::vector<Block>> parts;
    for (Block b : received) parts.push_back(split(b));
    std::vector<ValueCode> values;
    std::vector<Block> chunk_received(received.size());
    for (int t = 0; t < c; ++t) {
      for (std::size_t i = 0; i < received.size(); ++i) chunk_received[i] = parts[i][t];
      const auto decoded = decoder(chunk_received);
      values.insert(values.end(), decoded.begin(), decoded.end());
    }
    return values;
  };
  return out;
}

NetworkCode repeat_code(const NetworkCode& code, int repetitions) {
  return simulate_alphabet(code, code.q, repetitions);
}

namespace {

struct SearchExhausted {};

class CodeSearch {
 public:
  CodeSearch(const Network& net, const TargetFunction& f, int k, int n, std::uint64_t budget)
      : net_(net), k_(k), n_(n), budget_(budget) {
    q_ = static_cast<std::uint64_t>(net.alphabet_size());
    qn_ = power(q_, n);
    qk_ = power(q_, k);
    generators_ = power(qk_, net.source_count(), kDefaultGeneratorBudget);
    for (int v : net.topological_order()) {
      for (int e : net.out_edges(v)) order_.push_back(e);
    }
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      tables_.emplace_back(encoder_domain_size(net, static_cast<int>(e), k, n, kDefaultGeneratorBudget), -1);
    }
    used_.assign(net.edge_count(), 0);
    carried_.assign(net.edge_count(), 0);
    messages_.assign(net.source_count(), 0);

    std::vector<int> x(net.source_count());
    expected_.resize(generators_);
    for (std::uint64_t g = 0; g < generators_; ++g) {
      decode_generator(g);
      for (int j = 0; j < k; ++j) {
        for (int i = 0; i < net.source_count(); ++i) x[i] = digit_at(messages_[i], j, k, q_);
        expected_[g].push_back(f.code(x));
      }
    }
  }

  SearchResult run() {
    SearchResult result;
    try {
      const bool found = visit(0, 0);
      result.status = found ? SearchStatus::Found : SearchStatus::Infeasible;
      if (found) result.code = build();
    } catch (const SearchExhausted&) {
      result.status = SearchStatus::BudgetExhausted;
    }
    result.nodes = nodes_;
    return result;
  }

 private:
  static std::uint64_t encoder_domain_size(const Network& net, int e, int k, int n, std::uint64_t budget) {
    const auto size = netfuncap::encoder_domain_size(net, e, k, n);
    if (size > budget) throw Error(ErrorKind::BudgetExceeded, "encoder domain too large for search");
    return size;
  }

  void decode_generator(std::uint64_t g) {
    for (int i = net_.source_count() - 1; i >= 0; --i) {
      messages_[i] = g % qk_;
      g /= qk_;
    }
  }

  std::uint64_t domain_index(int e) const {
    const int tail = net_.edge(e).tail;
    std::uint64_t index = 0;
    for (int in : net_.in_edges(tail)) index = index * qn_ + carried_[in];
    if (net_.is_source(tail)) index = index * qk_ + messages_[net_.source_index(tail)];
    return index;
  }

  std::uint64_t received_index() const {
    std::uint64_t index = 0;
    for (int in : net_.in_edges(net_.receiver())) index = index * qn_ + carried_[in];
    return index;
  }

  bool visit(std::uint64_t g, std::size_t pos) {
    while (g < generators_) {
      decode_generator(g);
      for (std::size_t p = 0; p < pos; ++p) {
        const int e = order_[p];
        carried_[e] = static_cast<Block>(tables_[e][domain_index(e)]);
      }
      for (; pos < order_.size(); ++pos) {
        const int e = order_[pos];
        const std::uint64_t index = domain_index(e);
        const std::int64_t value = tables_[e][index];
        if (value >= 0) {
          carried_[e] = static_cast<Block>(value);
          continue;
        }
        // Output labels of an edge are interchangeable, so a fresh entry only
        // tries labels already in use plus the next unused one.
        const auto limit = std::min<std::uint64_t>(used_[e], qn_ - 1);
        for (std::uint64_t label = 0; label <= limit; ++label) {
          if (++nodes_ > budget_) throw SearchExhausted{};
          tables_[e][index] = static_cast<std::int64_t>(label);
          const bool fresh = label == used_[e];
          if (fresh) ++used_[e];
          const std::size_t mark = trail_.size();
          if (visit(g, pos)) return true;
          while (trail_.size() > mark) {
            decoder_.erase(trail_.back());
            trail_.pop_back();
          }
          if (fresh) --used_[e];
          decode_generator(g);
        }
        tables_[e][index] = -1;
        return false;
      }
      const std::uint64_t r = received_index();
      auto [it, inserted] = decoder_.emplace(r, g);
      if (inserted) {
        trail_.push_back(r);
      } else if (expected_[it->second] != expected_[g]) {
        return false;
      }
      ++g;
      pos = 0;
    }
    return true;
  }

  NetworkCode build() const {
    CodeTables tables{k_, n_, static_cast<int>(q_), {}, {}};
    for (const auto& table : tables_) {
      std::vector<Block> filled;
      for (auto v : table) filled.push_back(v < 0 ? 0 : static_cast<Block>(v));
      tables.encoders.push_back(std::move(filled));
    }
    const std::uint64_t size = decoder_domain_size(net_, n_);
    if (size > kDefaultGeneratorBudget) throw Error(ErrorKind::BudgetExceeded, "decoder table too large");
    tables.decoder.assign(size, std::vector<ValueCode>(k_, 0));
    for (const auto& [r, g] : decoder_) tables.decoder[r] = expected_[g];
    return from_tables(net_, std::move(tables));
  }

  const Network& net_;
  int k_;
  int n_;
  std::uint64_t budget_;
  std::uint64_t q_ = 2;
  std::uint64_t qn_ = 2;
  std::uint64_t qk_ = 2;
  std::uint64_t generators_ = 0;
  std::vector<int> order_;
  std::vector<std::vector<std::int64_t>> tables_;
  std::vector<std::uint64_t> used_;
  std::vector<Block> carried_;
  std::vector<Block> messages_;
  std::vector<std::vector<ValueCode>> expected_;
  std::unordered_map<std::uint64_t, std::uint64_t> decoder_;
  std::vector<std::uint64_t> trail_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SearchResult search_code(const Network& net, const TargetFunction& f, int k, int n, std::uint64_t node_budget) {
  check_compatible(net, f);
  if (k < 1 || n < 1) throw Error(ErrorKind::InvalidCode, "k and n must be positive");
  return CodeSearch(net, f, k, n, node_budget).run();
}

}  // namespace netfuncap
