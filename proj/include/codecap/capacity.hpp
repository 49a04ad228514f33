#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codecap/bitset.hpp"

namespace codecap {

/// Undirected simple graph: symmetric adjacency, no self-loops,
/// vertices 0..n-1.
class SimpleGraph {
 public:
  explicit SimpleGraph(std::size_t n);
  static SimpleGraph from_edges(
      std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  static SimpleGraph cycle(std::size_t n);     // n >= 3
  static SimpleGraph path(std::size_t n);      // n >= 1
  static SimpleGraph complete(std::size_t n);  // n >= 1

  std::size_t n() const { return n_; }
  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u].test(v); }
  void add_edge(std::size_t u, std::size_t v);
  const DynBitset& neighbors(std::size_t u) const { return adj_[u]; }
  std::size_t degree(std::size_t u) const { return adj_[u].count(); }
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  bool is_connected() const;
  bool is_bipartite() const;
  bool is_complete() const;
  SimpleGraph complement() const;

 private:
  std::size_t n_ = 0;
  std::vector<DynBitset> adj_;
};

struct DegreeStats {
  double d_av = 0.0;
  std::size_t delta_max = 0;
};

DegreeStats degree_stats(const SimpleGraph& g);

/// Exact computation refuses product graphs above this many vertices.
inline constexpr std::size_t kProductVertexCap = 20000;

/// G(r, k): vertices are r-tuples over the base graph; distinct tuples are
/// adjacent iff every coordinate pair lies in a closed neighbourhood and at
/// most k coordinates differ. k = r is the strong power, k = 1 the
/// Cartesian power.
struct ProductGraph {
  std::size_t base_n = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  std::size_t num_vertices = 0;  // base_n^r
  std::vector<DynBitset> adjacency;

  /// Tuple encoding: vertex id = sum_i digit_i * base_n^i.
  std::vector<std::size_t> decode(std::size_t id) const;
  std::size_t encode(const std::vector<std::size_t>& tuple) const;
};

ProductGraph restricted_power(const SimpleGraph& g, std::size_t r,
                              std::size_t k,
                              std::size_t vertex_cap = kProductVertexCap);

/// Exact independence number by branch and bound (greedy clique cover as
/// the pruning bound). Deterministic: branches on the max-degree vertex of
/// the candidate set, lowest index on ties.
std::size_t max_stable_set(const std::vector<DynBitset>& adjacency,
                           std::vector<std::size_t>* witness = nullptr);

std::size_t alpha_exact(const SimpleGraph& g,
                        std::vector<std::size_t>* witness = nullptr);
std::size_t alpha_exact(const ProductGraph& pg,
                        std::vector<std::size_t>* witness = nullptr);

/// Size of the closed ball around tuple v in G(r, k): v itself plus every
/// tuple reachable by changing at most k coordinates to base-graph
/// neighbours. Counted by explicit enumeration.
std::size_t ball_size_exact(const SimpleGraph& g, std::size_t r, std::size_t k,
                            const std::vector<std::size_t>& v,
                            std::size_t vertex_cap = kProductVertexCap);

/// Average of ball_size_exact over all n^r tuples, in closed form:
/// sum_{j=0}^{k} C(r, j) d_av^j.
double expected_ball_size(const SimpleGraph& g, std::size_t r, std::size_t k);

/// The lower-bound kernel: f(gamma, x) = 1 / (2^H(gamma) x^gamma) for
/// gamma < x/(x+1), and 1/(x+1) from the breakpoint on; continuous there.
double f_bound(double gamma, double x);

struct CapacityCertificate {
  std::size_t r = 0;
  std::size_t k = 0;
  std::size_t alpha = 0;
  double witness = 0.0;  // alpha^(1/r), a true lower witness
};

struct CapacityReport {
  std::size_t n = 0;
  double gamma = 0.0;
  double d_av = 0.0;
  std::size_t delta_max = 0;
  double lower_term_dav = 0.0;    // n * f(gamma, d_av)
  double lower_term_delta = 0.0;  // n * f(gamma, delta_max)
  double lower_term_full = 0.0;   // n * f(gamma, n-1)
  double lower_bound = 0.0;       // max of the three terms
  double upper_bound = 0.0;       // n * (theta / n)^gamma
  double theta_value = 0.0;
  std::string theta_source;
  std::vector<CapacityCertificate> certificates;
};

/// Sandwich for the gamma-fractional capacity of a connected graph on
/// n >= 3 vertices: n max(f(gamma, d_av), f(gamma, delta_max),
/// f(gamma, n-1)) below, n (theta / n)^gamma above. theta_value must be a
/// plausible capacity, i.e. inside [alpha(g), n].
CapacityReport capacity_bounds(const SimpleGraph& g, double gamma,
                               double theta_value,
                               const std::string& theta_source);

/// Finite-order lower witnesses alpha(G(r, floor(gamma r)))^(1/r) for each
/// feasible order ceil(1/gamma) <= r <= r_max.
std::vector<CapacityCertificate> capacity_certificate(
    const SimpleGraph& g, double gamma, std::size_t r_max,
    std::size_t vertex_cap = kProductVertexCap);

/// Pigeonhole inequality alpha(G(r,d)) <= n^(r-d) alpha(G(d,d)); a false
/// return would mean an implementation bug, not a counterexample.
bool recursion_check(const SimpleGraph& g, std::size_t r, std::size_t d,
                     std::size_t vertex_cap = kProductVertexCap);

struct RegistryEntry {
  double theta = 0.0;
  std::string provenance;
};

/// Known capacities: complete graphs (1), the pentagon (sqrt 5, the Lovasz
/// theta value), and perfect graphs the registry can certify (bipartite
/// graphs and their complements, where capacity equals the independence
/// number). Everything else returns nullopt and the caller must supply a
/// capacity value with provenance.
std::optional<RegistryEntry> capacity_registry_lookup(const SimpleGraph& g);

}  // namespace codecap
