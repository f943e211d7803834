#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "netfuncap/network.hpp"
#include "netfuncap/target_function.hpp"

namespace netfuncap {

/// A vector in A^len stored as its base-q numeral, component 1 most significant.
using Block = std::uint64_t;

inline constexpr std::uint64_t kDefaultGeneratorBudget = std::uint64_t{1} << 22;

/// h^(e): blocks carried by the in-edges of tail(e) (in in-edge order) plus
/// the tail's message block (0 when the tail is not a source) -> block on e.
using EdgeEncoder = std::function<Block(std::span<const Block> inputs, Block message)>;
/// psi: blocks on the receiver in-edges -> k value codes.
using Decoder = std::function<std::vector<ValueCode>(std::span<const Block> received)>;

/// A (k,n) network code. Encoders may be closures or wrapped tables; use
/// tabulate() for the explicit form.
struct NetworkCode {
  int k = 1;
  int n = 1;
  int q = 2;
  std::vector<EdgeEncoder> encoders;  // one per edge index
  Decoder decoder;

  double rate() const { return static_cast<double>(k) / n; }
};

/// Explicit tables. Encoder domain index for edge e out of v is the mixed
/// numeral (z_{e_1}, ..., z_{e_m}, message) with radices q^n for the in-edges
/// of v and q^k for the message (present only when v is a source).
struct CodeTables {
  int k = 1;
  int n = 1;
  int q = 2;
  std::vector<std::vector<Block>> encoders;
  std::vector<std::vector<ValueCode>> decoder;  // each entry holds k values

  bool operator==(const CodeTables&) const = default;
};

std::uint64_t encoder_domain_size(const Network& net, int edge, int k, int n);
std::uint64_t decoder_domain_size(const Network& net, int n);

CodeTables tabulate(const Network& net, const NetworkCode& code,
                    std::uint64_t budget = kDefaultGeneratorBudget);
NetworkCode from_tables(const Network& net, CodeTables tables);

/// Blocks on every edge for one message assignment (one k-block per source).
std::vector<Block> propagate(const Network& net, const NetworkCode& code, std::span<const Block> messages);

struct VerificationOutcome {
  bool pass = false;
  /// Lexicographically first failing message generator.
  std::optional<std::vector<Block>> counterexample;
  std::uint64_t checked_count = 0;
};

/// Exhaustive check of psi(z)_j == f(alpha(sigma_1)_j, ..., alpha(sigma_s)_j)
/// for all q^{ks} generators.
VerificationOutcome verify_code(const Network& net, const TargetFunction& f, const NetworkCode& code,
                                std::uint64_t budget = kDefaultGeneratorBudget);

/// min over non-receiver v of |E_o(v)| / log_q R_{I_{E_o(v)},f}.
double tree_rate_bound(const Network& net, const TargetFunction& f);

/// Class-index forwarding scheme on a multi-edge tree. Requires
/// q^{|E_o(v)| n} >= R_v^k at every non-receiver node.
NetworkCode tree_code(const Network& net, const TargetFunction& f, int k, int n);

/// Smallest n with 2^n >= 6^{k/2}.
int diamond_block_length(int k);
/// (k, n) code on the diamond network for the binary arithmetic sum.
NetworkCode diamond_code(int k);
/// 4^n >= 6^k, necessary for any (k,n) solution on the diamond.
bool diamond_counting_feasible(int k, int n);

/// (2,1) code for the mod-2 sum on the reverse butterfly.
NetworkCode reverse_butterfly_xor_code();

/// Repeats `code` c times: a (ck, cn) code over the same alphabet.
NetworkCode repeat_code(const NetworkCode& code, int repetitions);

/// Runs c copies of a code over alphabet code.q on a q-ary network: each
/// edge's q'-ary length-cn numeral is carried as a q-ary numeral of length
/// ceil(cn log_q q'). Source symbols must embed (q <= code.q).
NetworkCode simulate_alphabet(const NetworkCode& code, int target_q, int repetitions);

/// Smallest m with q^m >= base^length.
int simulated_length(int base, int length, int target_q);

enum class SearchStatus { Found, Infeasible, BudgetExhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::BudgetExhausted;
  std::optional<NetworkCode> code;
  std::uint64_t nodes = 0;
};

/// Depth-first search over encoder table entries with decoder-consistency
/// pruning. Infeasible only after the whole space is exhausted.
SearchResult search_code(const Network& net, const TargetFunction& f, int k, int n,
                         std::uint64_t node_budget = 2'000'000);

}  // namespace netfuncap
