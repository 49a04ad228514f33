#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "codecap/gf2.hpp"

namespace codecap {

/// Left vertices index codeword positions, right vertices are parity checks.
/// Row j of the biadjacency is R_j (neighbours of right vertex j); column i
/// is N_i (neighbours of left vertex i).
struct BipartiteGraph {
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  BitMatrix biadjacency;  // n_right rows, n_left cols

  static BipartiteGraph from_biadjacency(BitMatrix b);
  std::size_t edge_count() const;
};

/// Parameters of the random code model. Fields beyond (n, epsilon, p) only
/// matter to the operations that read them; each operation validates what it
/// uses, so e.g. p = 0 is fine for sampling but not for the closed-form
/// bounds.
struct ModelParams {
  std::size_t n = 0;     // block length (left vertices)
  double epsilon = 0.0;  // parity density; m = ceil(epsilon * n)
  double p = 0.0;        // edge probability
  double theta = 0.1;    // neighbourhood-size deviation parameter
  double eta = 0.1;      // slack in the union-bound exponent
  std::size_t t = 1;     // weight threshold splitting the distance analysis
  double delta = 0.0;    // target relative distance
  double gamma = 0.0;    // target diversity index

  /// ceil(epsilon * n), nudged so a product that is mathematically an
  /// integer is not pushed up by floating-point dust; at least 1.
  std::size_t m() const;

  /// Integer acceptance threshold: the code passes iff its minimum
  /// distance is >= floor(delta * n) + 1.
  std::size_t distance_target() const;
};

void validate_sampling(const ModelParams& p);
void validate_bounds(const ModelParams& p);
void validate_search(const ModelParams& p);

/// Deterministic predicate on a bipartite graph.
/// - always: every graph satisfies it.
/// - hn: for each i in [2, floor(sqrt(n_left))] (1-based), right vertices
///   i-1 and i+1 must both neighbour left vertex i.
/// - conjunction: logical AND of sub-specs.
/// - named: a registered predicate looked up by name.
struct ConstraintSpec {
  enum class Kind { always, hn, conjunction, named };
  Kind kind = Kind::always;
  std::vector<ConstraintSpec> of;  // conjunction only
  std::string name;                // named only

  static ConstraintSpec always();
  static ConstraintSpec hn();
  static ConstraintSpec conjunction(std::vector<ConstraintSpec> subs);
  static ConstraintSpec named(std::string predicate_name);

  /// {"kind":"hn"}, {"kind":"and","of":[...]}, {"kind":"named","name":...}
  std::string to_json_text() const;
  static ConstraintSpec from_json_text(const std::string& text);
};

/// Process-local registry backing ConstraintSpec::named.
void register_constraint(const std::string& name,
                         std::function<bool(const BipartiteGraph&)> pred);

struct SearchResult {
  BipartiteGraph graph;
  std::size_t attempts = 0;        // attempts consumed
  std::uint64_t seed = 0;          // master seed of the search
  std::uint64_t graph_seed = 0;    // derived seed of the reported graph
  std::size_t min_distance = 0;    // 0 means the code was {0}
  double relative_distance = 0.0;  // 0 when min_distance is 0
  double diversity = 0.0;
  double rate = 0.0;
  bool distance_ok = false;
  bool diversity_ok = false;
  bool constraint_ok = false;
  bool satisfied = false;  // all three targets met and re-verified
};

struct MonteCarloResult {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
};

enum class EventKind { diversity_ge_gamma, min_distance_ge_target, constraint };

/// A probability bound clamped to [0,1]; raw keeps the unclamped value for
/// diagnostics.
struct ProbBound {
  double value = 0.0;
  double raw = 0.0;
};

/// Each of the m x n edges present independently with probability p.
/// Identical (params, seed) gives an identical graph on every platform.
BipartiteGraph sample_bipartite(const ModelParams& params, std::uint64_t seed);

/// The code checked by the graph: parity-check matrix = biadjacency.
LinearCode code_from_graph(const BipartiteGraph& g);

/// min over ordered pairs (x, y), x != y, #R_x > 0 of #(R_x \ R_y) / #R_x.
/// Pairs with empty R_x are vacuous and skipped; if every pair is skipped
/// the index is 1.
double diversity_index(const BipartiteGraph& g);

bool check_constraint(const BipartiteGraph& g, const ConstraintSpec& c);

/// Exact probability that a random graph satisfies the hn constraint:
/// p^(2 (floor(sqrt(n)) - 1)), since the required edges are pairwise
/// distinct and independent.
double hn_exact_probability(std::size_t n, double p);

/// P(Binomial(g, p) is even) = 1/2 + (1/2)(1 - 2p)^g.
double parity_even_prob(std::size_t g, double p);

/// Diversity ratio guaranteed when all neighbourhood sizes and pairwise
/// overlaps stay within their theta windows: (1-theta)/(1+theta) - p.
double diversity_floor(double theta, double p);

/// Lower bound on the probability that all neighbourhood sizes and
/// overlaps stay within their deviation windows:
/// 1 - 4 m^2 exp(-theta^2 n p^2 / 4), clamped to [0,1].
ProbBound bound_e_div(const ModelParams& params);

/// Exponent margin for the low-weight failure mode:
/// m p (1-p)^(t-1) - t ln(n e / t) - 2 ln t  (natural logs; the middle
/// term comes from C(n,t) <= (n e / t)^t). The failure probability is at
/// most exp(-value) when the value is positive.
double bound_delta0(const ModelParams& params);

/// Upper bound 2^(-beta n) on the high-weight failure mode, with
/// beta = (1 - eta) epsilon - H(delta); requires beta > 0.
ProbBound bound_e_up(const ModelParams& params);

/// Minimal integer t >= 1 such that every parity check touching g >= t+1
/// word positions has even-overlap probability at most 2^-(1-eta):
/// 1/2 + (1/2)(1-2p)^(t+1) <= 2^-(1-eta).
std::size_t choose_t(double p, double eta);

/// Samples graphs with per-attempt derived seeds until one meets all three
/// targets (distance, diversity, constraint); the accepted graph is then
/// re-verified with independent naive checkers. If max_attempts runs out,
/// the best-scoring attempt is returned flagged unsatisfied.
SearchResult rejection_search(const ModelParams& params,
                              const ConstraintSpec& c, std::uint64_t seed,
                              std::size_t max_attempts);

/// Sample frequency of the event over `trials` independent graphs with a
/// 95% Wilson score interval.
MonteCarloResult monte_carlo_event(const ModelParams& params, EventKind event,
                                   const ConstraintSpec& c, std::size_t trials,
                                   std::uint64_t seed);

/// Deliberately plain reimplementations used to cross-check accepted
/// search results and the optimized operations.
namespace verify {

/// Min nonzero weight over the full 2^n word space, testing membership by
/// direct parity dots. Requires n <= 26.
std::size_t min_distance_bruteforce(const BitMatrix& parity_check);

/// Double loop over ordered pairs with explicitly materialized sets.
double diversity_index_naive(const BipartiteGraph& g);

/// The hn predicate written as a direct edge-lookup loop.
bool hn_constraint_naive(const BipartiteGraph& g);

}  // namespace verify

}  // namespace codecap
