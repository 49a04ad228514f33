#include "codecap/bipartite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>
#include <utility>

#include "codecap/errors.hpp"
#include "codecap/rng.hpp"
#include "json.hpp"

namespace codecap {

namespace {

std::size_t isqrt_floor(std::size_t n) {
  auto s = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (s > 0 && s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

}  // namespace

BipartiteGraph BipartiteGraph::from_biadjacency(BitMatrix b) {
  if (b.rows() == 0)
    throw ValidationError("BipartiteGraph: need at least one right vertex");
  BipartiteGraph g;
  g.n_left = b.cols();
  g.n_right = b.rows();
  g.biadjacency = std::move(b);
  return g;
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t c = 0;
  for (std::size_t j = 0; j < n_right; ++j) c += biadjacency.row(j).count();
  return c;
}

std::size_t ModelParams::m() const {
  const double raw = epsilon * static_cast<double>(n);
  const auto m = static_cast<long long>(std::ceil(raw - 1e-9));
  return m < 1 ? 1 : static_cast<std::size_t>(m);
}

std::size_t ModelParams::distance_target() const {
  return static_cast<std::size_t>(
             std::floor(delta * static_cast<double>(n) + 1e-9)) +
         1;
}

void validate_sampling(const ModelParams& p) {
  if (p.n < 1) throw ValidationError("params: n must be at least 1");
  if (!(p.epsilon > 0.0))
    throw ValidationError("params: epsilon must be positive");
  if (!(p.p >= 0.0 && p.p <= 1.0))
    throw ValidationError("params: p must lie in [0, 1]");
}

void validate_bounds(const ModelParams& p) {
  validate_sampling(p);
  if (!(p.p > 0.0 && p.p < 0.5))
    throw ValidationError("params: bounds need 0 < p < 1/2");
  if (!(p.theta > 0.0 && p.theta < 0.25))
    throw ValidationError("params: bounds need 0 < theta < 1/4");
  if (!(p.eta > 0.0 && p.eta < 0.5))
    throw ValidationError("params: bounds need 0 < eta < 1/2");
  if (!(p.delta >= 0.0 && p.delta < 0.5))
    throw ValidationError("params: bounds need 0 <= delta < 1/2");
  if (p.t < 1) throw ValidationError("params: t must be at least 1");
}

void validate_search(const ModelParams& p) {
  validate_sampling(p);
  if (!(p.delta >= 0.0 && p.delta < 0.5))
    throw ValidationError("params: search needs 0 <= delta < 1/2");
  if (!(p.gamma >= 0.0 && p.gamma < 1.0))
    throw ValidationError("params: search needs 0 <= gamma < 1");
  if (!(p.epsilon > entropy(p.delta)))
    throw ValidationError(
        "params: search needs epsilon > H(delta), the redundancy the "
        "accepted code must be able to afford");
  if (p.m() < 2)
    throw ValidationError("params: search needs at least 2 parity checks");
  const std::size_t mm = p.m();
  const std::size_t slack = p.n > mm ? p.n - mm : 0;
  if (slack > kEnumerationCapLog2)
    throw ValidationError(
        "params: n - m exceeds the exact-distance enumeration cap");
}

ConstraintSpec ConstraintSpec::always() { return {}; }

ConstraintSpec ConstraintSpec::hn() {
  ConstraintSpec c;
  c.kind = Kind::hn;
  return c;
}

ConstraintSpec ConstraintSpec::conjunction(std::vector<ConstraintSpec> subs) {
  ConstraintSpec c;
  c.kind = Kind::conjunction;
  c.of = std::move(subs);
  return c;
}

ConstraintSpec ConstraintSpec::named(std::string predicate_name) {
  ConstraintSpec c;
  c.kind = Kind::named;
  c.name = std::move(predicate_name);
  return c;
}

namespace {

nlohmann::ordered_json constraint_to_json(const ConstraintSpec& c) {
  nlohmann::ordered_json j;
  switch (c.kind) {
    case ConstraintSpec::Kind::always:
      j["kind"] = "always";
      break;
    case ConstraintSpec::Kind::hn:
      j["kind"] = "hn";
      break;
    case ConstraintSpec::Kind::conjunction: {
      j["kind"] = "and";
      j["of"] = nlohmann::ordered_json::array();
      for (const auto& sub : c.of) j["of"].push_back(constraint_to_json(sub));
      break;
    }
    case ConstraintSpec::Kind::named:
      j["kind"] = "named";
      j["name"] = c.name;
      break;
  }
  return j;
}

ConstraintSpec constraint_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ValidationError("constraint: expected an object with a \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "always") return ConstraintSpec::always();
  if (kind == "hn") return ConstraintSpec::hn();
  if (kind == "and") {
    if (!j.contains("of") || !j["of"].is_array())
      throw ValidationError("constraint: \"and\" needs an \"of\" array");
    std::vector<ConstraintSpec> subs;
    for (const auto& sub : j["of"]) subs.push_back(constraint_from_json(sub));
    return ConstraintSpec::conjunction(std::move(subs));
  }
  if (kind == "named") {
    if (!j.contains("name") || !j["name"].is_string())
      throw ValidationError("constraint: \"named\" needs a \"name\" string");
    return ConstraintSpec::named(j["name"].get<std::string>());
  }
  throw ValidationError("constraint: unknown kind \"" + kind + "\"");
}

using ConstraintRegistry =
    std::map<std::string, std::function<bool(const BipartiteGraph&)>>;

ConstraintRegistry& constraint_registry() {
  static ConstraintRegistry reg;
  return reg;
}

}  // namespace

std::string ConstraintSpec::to_json_text() const {
  return constraint_to_json(*this).dump();
}

ConstraintSpec ConstraintSpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("constraint: ") + e.what());
  }
  return constraint_from_json(j);
}

void register_constraint(const std::string& name,
                         std::function<bool(const BipartiteGraph&)> pred) {
  constraint_registry()[name] = std::move(pred);
}

BipartiteGraph sample_bipartite(const ModelParams& params, std::uint64_t seed) {
  validate_sampling(params);
  const std::size_t m = params.m();
  BipartiteGraph g;
  g.n_left = params.n;
  g.n_right = m;
  g.biadjacency = BitMatrix(m, params.n);
  // Cell order (row-major) is part of the reproducibility contract.
  Engine eng(seed);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < params.n; ++i)
      if (uniform01(eng) < params.p) g.biadjacency.set(j, i, true);
  return g;
}

LinearCode code_from_graph(const BipartiteGraph& g) {
  return LinearCode{g.biadjacency};
}

double diversity_index(const BipartiteGraph& g) {
  if (g.n_right < 2)
    throw ValidationError("diversity_index: need at least 2 right vertices");
  double best = 1.0;
  bool seen = false;
  for (std::size_t x = 0; x < g.n_right; ++x) {
    const std::size_t szx = g.biadjacency.row(x).count();
    if (szx == 0) continue;  // vacuous pair, no constraint on gamma
    for (std::size_t y = 0; y < g.n_right; ++y) {
      if (y == x) continue;
      const std::size_t diff = DynBitset::count_andnot(g.biadjacency.row(x),
                                                       g.biadjacency.row(y));
      const double ratio =
          static_cast<double>(diff) / static_cast<double>(szx);
      if (!seen || ratio < best) best = ratio;
      seen = true;
    }
  }
  return seen ? best : 1.0;
}

bool check_constraint(const BipartiteGraph& g, const ConstraintSpec& c) {
  switch (c.kind) {
    case ConstraintSpec::Kind::always:
      return true;
    case ConstraintSpec::Kind::hn: {
      const std::size_t s = isqrt_floor(g.n_left);
      if (g.n_right < s + 1)
        throw ValidationError(
            "constraint hn: need at least floor(sqrt(n)) + 1 right "
            "vertices");
      // 1-based statement: right vertices i-1 and i+1 both neighbour left
      // vertex i, for 2 <= i <= floor(sqrt(n)).
      for (std::size_t i = 2; i <= s; ++i)
        if (!g.biadjacency.get(i - 2, i - 1) || !g.biadjacency.get(i, i - 1))
          return false;
      return true;
    }
    case ConstraintSpec::Kind::conjunction: {
      for (const auto& sub : c.of)
        if (!check_constraint(g, sub)) return false;
      return true;
    }
    case ConstraintSpec::Kind::named: {
      const auto& reg = constraint_registry();
      const auto it = reg.find(c.name);
      if (it == reg.end())
        throw ValidationError("constraint: no predicate registered as \"" +
                              c.name + "\"");
      return it->second(g);
    }
  }
  throw ValidationError("constraint: unknown kind");
}

double hn_exact_probability(std::size_t n, double p) {
  if (n < 4) throw ValidationError("hn_exact_probability: n must be >= 4");
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError("hn_exact_probability: p must lie in [0, 1]");
  const double required_edges = 2.0 * (static_cast<double>(isqrt_floor(n)) - 1.0);
  return std::pow(p, required_edges);
}

double parity_even_prob(std::size_t g, double p) {
  if (g < 1) throw ValidationError("parity_even_prob: g must be >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError("parity_even_prob: p must lie in [0, 1]");
  return 0.5 + 0.5 * std::pow(1.0 - 2.0 * p, static_cast<double>(g));
}

double diversity_floor(double theta, double p) {
  if (!(theta > 0.0 && theta < 0.25))
    throw ValidationError("diversity_floor: need 0 < theta < 1/4");
  if (!(p > 0.0 && p < 0.5))
    throw ValidationError("diversity_floor: need 0 < p < 1/2");
  return (1.0 - theta) / (1.0 + theta) - p;
}

ProbBound bound_e_div(const ModelParams& params) {
  validate_bounds(params);
  const double m = static_cast<double>(params.m());
  const double n = static_cast<double>(params.n);
  const double expo =
      params.theta * params.theta * n * params.p * params.p / 4.0;
  const double raw = 1.0 - 4.0 * m * m * std::exp(-expo);
  return {std::clamp(raw, 0.0, 1.0), raw};
}

double bound_delta0(const ModelParams& params) {
  validate_bounds(params);
  if (2 * params.t >= params.n)
    throw ValidationError("bound_delta0: needs t < n/2");
  const double m = static_cast<double>(params.m());
  const double n = static_cast<double>(params.n);
  const double t = static_cast<double>(params.t);
  return m * params.p * std::pow(1.0 - params.p, t - 1.0) -
         t * std::log(n * std::numbers::e / t) - 2.0 * std::log(t);
}

ProbBound bound_e_up(const ModelParams& params) {
  validate_bounds(params);
  const double beta =
      (1.0 - params.eta) * params.epsilon - entropy(params.delta);
  if (!(beta > 0.0))
    throw ValidationError(
        "bound_e_up: (1 - eta) epsilon - H(delta) must be positive");
  const double raw = std::exp2(-beta * static_cast<double>(params.n));
  return {std::min(raw, 1.0), raw};
}

std::size_t choose_t(double p, double eta) {
  if (!(p > 0.0 && p < 0.5))
    throw ValidationError("choose_t: need 0 < p < 1/2");
  if (!(eta > 0.0 && eta < 0.5))
    throw ValidationError("choose_t: need 0 < eta < 1/2");
  const double target = std::exp2(-(1.0 - eta));
  // Even-overlap probability decreases to 1/2 < target as t grows, so the
  // scan terminates.
  for (std::size_t t = 1;; ++t) {
    const double worst = 0.5 + 0.5 * std::pow(1.0 - 2.0 * p,
                                              static_cast<double>(t + 1));
    if (worst <= target) return t;
  }
}

namespace {

struct AttemptMetrics {
  std::size_t min_distance = 0;  // 0 for the {0} code
  double relative_distance = 0.0;
  double diversity = 0.0;
  double rate = 0.0;
  bool distance_ok = false;
  bool diversity_ok = false;
  bool constraint_ok = false;

  int score() const {
    return int(distance_ok) + int(diversity_ok) + int(constraint_ok);
  }
};

AttemptMetrics measure_attempt(const BipartiteGraph& g,
                               const ModelParams& params,
                               const ConstraintSpec& c) {
  AttemptMetrics a;
  const LinearCode code = code_from_graph(g);
  const std::size_t k = code.dimension();
  if (k > 0) {
    a.min_distance = min_distance(code);
    a.relative_distance = static_cast<double>(a.min_distance - 1) /
                          static_cast<double>(params.n);
  }
  a.rate = static_cast<double>(k) / static_cast<double>(params.n);
  a.diversity = diversity_index(g);
  a.distance_ok = a.min_distance >= params.distance_target();
  a.diversity_ok = a.diversity >= params.gamma;
  a.constraint_ok = check_constraint(g, c);
  return a;
}

bool constraint_holds_naive(const BipartiteGraph& g, const ConstraintSpec& c) {
  switch (c.kind) {
    case ConstraintSpec::Kind::always:
      return true;
    case ConstraintSpec::Kind::hn:
      return verify::hn_constraint_naive(g);
    case ConstraintSpec::Kind::conjunction: {
      for (const auto& sub : c.of)
        if (!constraint_holds_naive(g, sub)) return false;
      return true;
    }
    case ConstraintSpec::Kind::named:
      return check_constraint(g, c);  // no second implementation exists
  }
  return false;
}

void reverify_accepted(const BipartiteGraph& g, const ModelParams& params,
                       const ConstraintSpec& c, const AttemptMetrics& a) {
  std::size_t check_dist;
  if (params.n <= 26) {
    check_dist = verify::min_distance_bruteforce(g.biadjacency);
  } else {
    // Full-space scan is out of reach; recheck the weights over an
    // explicitly materialized codeword list instead.
    std::size_t best = g.n_left + 1;
    for (const BitWord& w : nullspace_enumerate(g.biadjacency)) {
      const std::size_t wgt = w.count();
      if (wgt > 0 && wgt < best) best = wgt;
    }
    check_dist = best;
  }
  if (check_dist != a.min_distance)
    throw Error("internal check failed: accepted min distance " +
                std::to_string(a.min_distance) + " but brute force found " +
                std::to_string(check_dist));
  const double check_div = verify::diversity_index_naive(g);
  if (check_div != a.diversity)
    throw Error("internal check failed: diversity index mismatch");
  if (!constraint_holds_naive(g, c))
    throw Error("internal check failed: constraint recheck failed");
  const double m_over_n = static_cast<double>(params.m()) /
                          static_cast<double>(params.n);
  if (a.rate < 1.0 - m_over_n - 1e-12)
    throw Error("internal check failed: rate below 1 - m/n");
}

}  // namespace

SearchResult rejection_search(const ModelParams& params,
                              const ConstraintSpec& c, std::uint64_t seed,
                              std::size_t max_attempts) {
  validate_search(params);
  if (max_attempts < 1)
    throw ValidationError("rejection_search: max_attempts must be >= 1");

  SearchResult best;
  best.seed = seed;
  std::tuple<int, std::size_t, double> best_score{-1, 0, 0.0};

  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    const std::uint64_t sub = derive_seed(seed, attempt);
    BipartiteGraph g = sample_bipartite(params, sub);
    const AttemptMetrics a = measure_attempt(g, params, c);

    const std::tuple<int, std::size_t, double> score{a.score(), a.min_distance,
                                                     a.diversity};
    if (score > best_score) {
      best_score = score;
      best.graph = g;
      best.graph_seed = sub;
      best.min_distance = a.min_distance;
      best.relative_distance = a.relative_distance;
      best.diversity = a.diversity;
      best.rate = a.rate;
      best.distance_ok = a.distance_ok;
      best.diversity_ok = a.diversity_ok;
      best.constraint_ok = a.constraint_ok;
    }

    if (a.distance_ok && a.diversity_ok && a.constraint_ok) {
      reverify_accepted(g, params, c, a);
      best.graph = std::move(g);
      best.graph_seed = sub;
      best.min_distance = a.min_distance;
      best.relative_distance = a.relative_distance;
      best.diversity = a.diversity;
      best.rate = a.rate;
      best.distance_ok = best.diversity_ok = best.constraint_ok = true;
      best.satisfied = true;
      best.attempts = attempt;
      return best;
    }
  }
  best.satisfied = false;
  best.attempts = max_attempts;
  return best;
}

MonteCarloResult monte_carlo_event(const ModelParams& params, EventKind event,
                                   const ConstraintSpec& c, std::size_t trials,
                                   std::uint64_t seed) {
  validate_sampling(params);
  if (trials < 100)
    throw ValidationError("monte_carlo_event: trials must be >= 100");

  std::size_t successes = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const BipartiteGraph g = sample_bipartite(params, derive_seed(seed, i));
    bool hit = false;
    switch (event) {
      case EventKind::diversity_ge_gamma:
        hit = diversity_index(g) >= params.gamma;
        break;
      case EventKind::min_distance_ge_target: {
        const LinearCode code = code_from_graph(g);
        if (code.dimension() > 0)
          hit = min_distance(code) >= params.distance_target();
        break;
      }
      case EventKind::constraint:
        hit = check_constraint(g, c);
        break;
    }
    if (hit) ++successes;
  }

  const double z = 1.959963984540054;  // 97.5% normal quantile
  const double nt = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / nt;
  const double denom = 1.0 + z * z / nt;
  const double center = ph + z * z / (2.0 * nt);
  const double half = z * std::sqrt((ph * (1.0 - ph) + z * z / (4.0 * nt)) / nt);

  MonteCarloResult r;
  r.estimate = ph;
  r.ci_low = std::max(0.0, (center - half) / denom);
  r.ci_high = std::min(1.0, (center + half) / denom);
  r.trials = trials;
  r.successes = successes;
  return r;
}

namespace verify {

std::size_t min_distance_bruteforce(const BitMatrix& parity_check) {
  const std::size_t n = parity_check.cols();
  if (n > 26)
    throw ValidationError("min_distance_bruteforce: n must be <= 26");
  std::vector<std::uint64_t> rows(parity_check.rows(), 0);
  for (std::size_t j = 0; j < parity_check.rows(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (parity_check.get(j, i)) rows[j] |= std::uint64_t(1) << i;

  std::size_t best = n + 1;
  const std::uint64_t total = std::uint64_t(1) << n;
  for (std::uint64_t w = 1; w < total; ++w) {
    const auto wgt = static_cast<std::size_t>(std::popcount(w));
    if (wgt >= best) continue;
    bool member = true;
    for (std::uint64_t row : rows) {
      if (std::popcount(row & w) & 1) {
        member = false;
        break;
      }
    }
    if (member) {
      best = wgt;
      if (best == 1) return best;
    }
  }
  if (best == n + 1)
    throw DegenerateCodeError(
        "min_distance_bruteforce: the code is {0}; distance is undefined");
  return best;
}

double diversity_index_naive(const BipartiteGraph& g) {
  if (g.n_right < 2)
    throw ValidationError("diversity_index: need at least 2 right vertices");
  std::vector<std::vector<std::size_t>> sets(g.n_right);
  for (std::size_t j = 0; j < g.n_right; ++j)
    for (std::size_t i = 0; i < g.n_left; ++i)
      if (g.biadjacency.get(j, i)) sets[j].push_back(i);

  double best = 1.0;
  bool seen = false;
  for (std::size_t x = 0; x < g.n_right; ++x) {
    if (sets[x].empty()) continue;
    for (std::size_t y = 0; y < g.n_right; ++y) {
      if (y == x) continue;
      std::size_t diff = 0;
      for (std::size_t v : sets[x])
        if (std::find(sets[y].begin(), sets[y].end(), v) == sets[y].end())
          ++diff;
      const double ratio =
          static_cast<double>(diff) / static_cast<double>(sets[x].size());
      if (!seen || ratio < best) best = ratio;
      seen = true;
    }
  }
  return seen ? best : 1.0;
}

bool hn_constraint_naive(const BipartiteGraph& g) {
  std::size_t s = 0;
  while ((s + 1) * (s + 1) <= g.n_left) ++s;
  if (g.n_right < s + 1)
    throw ValidationError(
        "constraint hn: need at least floor(sqrt(n)) + 1 right vertices");
  for (std::size_t i = 2; i <= s; ++i) {
    const bool prev = g.biadjacency.get(i - 2, i - 1);
    const bool next = g.biadjacency.get(i, i - 1);
    if (!prev || !next) return false;
  }
  return true;
}

}  // namespace verify

}  // namespace codecap
