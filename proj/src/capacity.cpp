#include "codecap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "codecap/errors.hpp"
#include "codecap/gf2.hpp"

namespace codecap {

SimpleGraph::SimpleGraph(std::size_t n) : n_(n), adj_(n, DynBitset(n)) {
  if (n < 1) throw ValidationError("SimpleGraph: need at least one vertex");
}

void SimpleGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_)
    throw ValidationError("add_edge: vertex out of range");
  if (u == v) throw ValidationError("add_edge: self-loops are not allowed");
  if (adj_[u].test(v)) throw ValidationError("add_edge: duplicate edge");
  adj_[u].set(v);
  adj_[v].set(u);
}

SimpleGraph SimpleGraph::from_edges(
    std::size_t n,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  SimpleGraph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

SimpleGraph SimpleGraph::cycle(std::size_t n) {
  if (n < 3) throw ValidationError("cycle: need at least 3 vertices");
  SimpleGraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

SimpleGraph SimpleGraph::path(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

SimpleGraph SimpleGraph::complete(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

std::size_t SimpleGraph::edge_count() const {
  std::size_t twice = 0;
  for (std::size_t u = 0; u < n_; ++u) twice += adj_[u].count();
  return twice / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> SimpleGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < n_; ++u)
    adj_[u].for_each_set([&](std::size_t v) {
      if (u < v) out.emplace_back(u, v);
    });
  return out;
}

bool SimpleGraph::is_connected() const {
  DynBitset seen(n_);
  std::queue<std::size_t> q;
  seen.set(0);
  q.push(0);
  std::size_t visited = 1;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    adj_[u].for_each_set([&](std::size_t v) {
      if (!seen.test(v)) {
        seen.set(v);
        ++visited;
        q.push(v);
      }
    });
  }
  return visited == n_;
}

bool SimpleGraph::is_bipartite() const {
  std::vector<int> color(n_, -1);
  for (std::size_t s = 0; s < n_; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      bool odd_cycle = false;
      adj_[u].for_each_set([&](std::size_t v) {
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          q.push(v);
        } else if (color[v] == color[u]) {
          odd_cycle = true;
        }
      });
      if (odd_cycle) return false;
    }
  }
  return true;
}

bool SimpleGraph::is_complete() const {
  for (std::size_t u = 0; u < n_; ++u)
    if (degree(u) != n_ - 1) return false;
  return true;
}

SimpleGraph SimpleGraph::complement() const {
  SimpleGraph g(n_);
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (!adj_[u].test(v)) g.add_edge(u, v);
  return g;
}

DegreeStats degree_stats(const SimpleGraph& g) {
  DegreeStats s;
  std::size_t total = 0;
  for (std::size_t u = 0; u < g.n(); ++u) {
    const std::size_t d = g.degree(u);
    total += d;
    s.delta_max = std::max(s.delta_max, d);
  }
  s.d_av = static_cast<double>(total) / static_cast<double>(g.n());
  return s;
}

namespace {

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap,
                        const char* what) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > cap / base)
      throw InfeasibleError(std::string(what) + ": " + std::to_string(base) +
                            "^" + std::to_string(exp) + " exceeds the cap of " +
                            std::to_string(cap) + " vertices");
    v *= base;
  }
  return v;
}

}  // namespace

std::vector<std::size_t> ProductGraph::decode(std::size_t id) const {
  std::vector<std::size_t> tuple(r);
  for (std::size_t i = 0; i < r; ++i) {
    tuple[i] = id % base_n;
    id /= base_n;
  }
  return tuple;
}

std::size_t ProductGraph::encode(const std::vector<std::size_t>& tuple) const {
  if (tuple.size() != r)
    throw ValidationError("encode: tuple length must equal r");
  std::size_t id = 0;
  std::size_t scale = 1;
  for (std::size_t i = 0; i < r; ++i) {
    if (tuple[i] >= base_n)
      throw ValidationError("encode: tuple entry out of range");
    id += tuple[i] * scale;
    scale *= base_n;
  }
  return id;
}

ProductGraph restricted_power(const SimpleGraph& g, std::size_t r,
                              std::size_t k, std::size_t vertex_cap) {
  if (r < 1) throw ValidationError("restricted_power: r must be >= 1");
  if (k > r) throw ValidationError("restricted_power: k must be <= r");
  const std::size_t n = g.n();
  const std::size_t total = checked_pow(n, r, vertex_cap, "restricted_power");

  ProductGraph pg;
  pg.base_n = n;
  pg.r = r;
  pg.k = k;
  pg.num_vertices = total;
  pg.adjacency.assign(total, DynBitset(total));

  std::vector<std::size_t> scale(r);
  for (std::size_t i = 0, s = 1; i < r; ++i, s *= n) scale[i] = s;

  // Enumerate each tuple's ball directly: per coordinate either keep the
  // digit or move to a base-graph neighbour, spending one of k changes.
  // Distinct choice sequences give distinct tuples, and the relation is
  // symmetric, so setting only the row for u still fills the full matrix.
  std::vector<std::size_t> tuple(r);
  for (std::size_t u = 0; u < total; ++u) {
    for (std::size_t i = 0, id = u; i < r; ++i, id /= n) tuple[i] = id % n;
    auto walk = [&](auto&& self, std::size_t pos, std::size_t acc,
                    std::size_t changed) -> void {
      if (pos == r) {
        if (changed > 0) pg.adjacency[u].set(acc);
        return;
      }
      self(self, pos + 1, acc + tuple[pos] * scale[pos], changed);
      if (changed < k)
        g.neighbors(tuple[pos]).for_each_set([&](std::size_t nb) {
          self(self, pos + 1, acc + nb * scale[pos], changed + 1);
        });
    };
    walk(walk, 0, 0, 0);
  }
  return pg;
}

std::size_t alpha_exact(const SimpleGraph& g,
                        std::vector<std::size_t>* witness) {
  std::vector<DynBitset> adj;
  adj.reserve(g.n());
  for (std::size_t u = 0; u < g.n(); ++u) adj.push_back(g.neighbors(u));
  return max_stable_set(adj, witness);
}

std::size_t alpha_exact(const ProductGraph& pg,
                        std::vector<std::size_t>* witness) {
  return max_stable_set(pg.adjacency, witness);
}

std::size_t ball_size_exact(const SimpleGraph& g, std::size_t r, std::size_t k,
                            const std::vector<std::size_t>& v,
                            std::size_t vertex_cap) {
  if (r < 1) throw ValidationError("ball_size_exact: r must be >= 1");
  if (k > r) throw ValidationError("ball_size_exact: k must be <= r");
  checked_pow(g.n(), r, vertex_cap, "ball_size_exact");
  if (v.size() != r)
    throw ValidationError("ball_size_exact: tuple length must equal r");
  for (std::size_t d : v)
    if (d >= g.n())
      throw ValidationError("ball_size_exact: tuple entry out of range");

  // Count the choice tree's leaves; each leaf is a distinct ball member
  // (the unchanged leaf is v itself).
  auto walk = [&](auto&& self, std::size_t pos, std::size_t changed)
      -> std::size_t {
    if (pos == r) return 1;
    std::size_t total = self(self, pos + 1, changed);
    if (changed < k)
      total += g.degree(v[pos]) * self(self, pos + 1, changed + 1);
    return total;
  };
  return walk(walk, 0, 0);
}

double expected_ball_size(const SimpleGraph& g, std::size_t r, std::size_t k) {
  if (r < 1) throw ValidationError("expected_ball_size: r must be >= 1");
  if (k > r) throw ValidationError("expected_ball_size: k must be <= r");
  const double d_av = degree_stats(g).d_av;
  double sum = 0.0;
  double binom = 1.0;  // C(r, j)
  double power = 1.0;  // d_av^j
  for (std::size_t j = 0; j <= k; ++j) {
    sum += binom * power;
    binom *= static_cast<double>(r - j) / static_cast<double>(j + 1);
    power *= d_av;
  }
  return sum;
}

double f_bound(double gamma, double x) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw ValidationError("f_bound: gamma must lie in (0, 1]");
  if (!(x >= 1.0)) throw ValidationError("f_bound: x must be >= 1");
  const double breakpoint = x / (x + 1.0);
  if (gamma < breakpoint)
    return 1.0 / (std::exp2(entropy(gamma)) * std::pow(x, gamma));
  return 1.0 / (x + 1.0);
}

CapacityReport capacity_bounds(const SimpleGraph& g, double gamma,
                               double theta_value,
                               const std::string& theta_source) {
  if (g.n() < 3 || !g.is_connected())
    throw ValidationError(
        "capacity bounds apply to connected graphs with at least 3 "
        "vertices");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw ValidationError("capacity bounds: gamma must lie in (0, 1]");
  const auto alpha = static_cast<double>(alpha_exact(g));
  const auto n = static_cast<double>(g.n());
  if (theta_value < alpha - 1e-9 || theta_value > n + 1e-9)
    throw ValidationError(
        "capacity value " + std::to_string(theta_value) +
        " is outside [alpha, n] = [" + std::to_string(alpha) + ", " +
        std::to_string(n) + "]; the provenance \"" + theta_source +
        "\" cannot be right");

  const DegreeStats stats = degree_stats(g);
  CapacityReport rep;
  rep.n = g.n();
  rep.gamma = gamma;
  rep.d_av = stats.d_av;
  rep.delta_max = stats.delta_max;
  rep.lower_term_dav = n * f_bound(gamma, stats.d_av);
  rep.lower_term_delta = n * f_bound(gamma, static_cast<double>(stats.delta_max));
  rep.lower_term_full = n * f_bound(gamma, n - 1.0);
  rep.lower_bound = std::max(
      {rep.lower_term_dav, rep.lower_term_delta, rep.lower_term_full});
  rep.upper_bound = n * std::pow(theta_value / n, gamma);
  rep.theta_value = theta_value;
  rep.theta_source = theta_source;
  return rep;
}

std::vector<CapacityCertificate> capacity_certificate(const SimpleGraph& g,
                                                      double gamma,
                                                      std::size_t r_max,
                                                      std::size_t vertex_cap) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw ValidationError("capacity_certificate: gamma must lie in (0, 1]");
  // ceil with a nudge: 1/gamma for gamma = 1/3 lands a hair above 3 in
  // floating point and must not push r_min to 4.
  const auto r_min = static_cast<std::size_t>(
      std::max(1.0, std::ceil(1.0 / gamma - 1e-9)));

  std::vector<CapacityCertificate> out;
  for (std::size_t r = r_min; r <= r_max; ++r) {
    std::size_t vertices = 1;
    bool fits = true;
    for (std::size_t i = 0; i < r; ++i) {
      if (vertices > vertex_cap / g.n()) {
        fits = false;
        break;
      }
      vertices *= g.n();
    }
    if (!fits) break;  // larger r only grows the product

    CapacityCertificate cert;
    cert.r = r;
    // floor with a nudge: gamma * r for gamma = 1/3, r = 3 lands a hair
    // below 1 and must still give k = 1. r >= 1/gamma keeps k >= 1.
    cert.k = static_cast<std::size_t>(
        std::floor(gamma * static_cast<double>(r) + 1e-9));
    const ProductGraph pg = restricted_power(g, r, cert.k, vertex_cap);
    cert.alpha = alpha_exact(pg);
    cert.witness = std::pow(static_cast<double>(cert.alpha),
                            1.0 / static_cast<double>(r));
    out.push_back(cert);
  }
  if (out.empty())
    throw InfeasibleError(
        "capacity_certificate: no feasible order r in [" +
        std::to_string(r_min) + ", " + std::to_string(r_max) +
        "] fits the vertex cap");
  return out;
}

bool recursion_check(const SimpleGraph& g, std::size_t r, std::size_t d,
                     std::size_t vertex_cap) {
  if (d < 1) throw ValidationError("recursion_check: d must be >= 1");
  if (d > r) throw ValidationError("recursion_check: d must be <= r");
  const std::size_t a_rd = alpha_exact(restricted_power(g, r, d, vertex_cap));
  const std::size_t a_dd = alpha_exact(restricted_power(g, d, d, vertex_cap));
  std::size_t factor = 1;
  for (std::size_t i = 0; i < r - d; ++i) factor *= g.n();
  return a_rd <= factor * a_dd;
}

std::optional<RegistryEntry> capacity_registry_lookup(const SimpleGraph& g) {
  if (g.is_complete())
    return RegistryEntry{1.0, "complete graph: capacity 1"};
  if (g.n() == 5 && g.is_connected()) {
    bool two_regular = true;
    for (std::size_t u = 0; u < 5; ++u)
      if (g.degree(u) != 2) two_regular = false;
    // A connected 2-regular graph on 5 vertices is the pentagon.
    if (two_regular)
      return RegistryEntry{std::sqrt(5.0),
                           "pentagon: capacity sqrt(5) (Lovasz theta)"};
  }
  if (g.is_bipartite())
    return RegistryEntry{
        static_cast<double>(alpha_exact(g)),
        "bipartite, hence perfect: capacity equals independence number"};
  if (g.complement().is_bipartite())
    return RegistryEntry{static_cast<double>(alpha_exact(g)),
                         "complement of a bipartite graph, hence perfect: "
                         "capacity equals independence number"};
  return std::nullopt;
}

}  // namespace codecap
