#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codecap/bipartite.hpp"
#include "codecap/capacity.hpp"
#include "codecap/errors.hpp"
#include "codecap/gf2.hpp"
#include "codecap/graph_io.hpp"
#include "codecap/version.hpp"

namespace py = pybind11;
using namespace codecap;

namespace {

BitMatrix matrix_from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) throw ValidationError("matrix needs at least one row");
  BitMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size())
      throw ValidationError("matrix rows must all have the same length");
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] == '1')
        m.set(r, c, true);
      else if (rows[r][c] != '0')
        throw ValidationError("matrix entries must be 0 or 1");
    }
  }
  return m;
}

std::vector<std::string> rows_to_strings(const BitMatrix& m) {
  std::vector<std::string> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    rows.push_back(word_to_string(m.row(r)));
  return rows;
}

ModelParams make_params(std::size_t n, double epsilon, double p, double delta,
                        double gamma, double theta, double eta,
                        std::size_t t) {
  ModelParams mp;
  mp.n = n;
  mp.epsilon = epsilon;
  mp.p = p;
  mp.delta = delta;
  mp.gamma = gamma;
  mp.theta = theta;
  mp.eta = eta;
  mp.t = t;
  return mp;
}

SimpleGraph graph_from_edges(
    std::size_t n,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  return SimpleGraph::from_edges(n, edges);
}

py::dict search_result_dict(const SearchResult& res) {
  py::dict d;
  d["satisfied"] = res.satisfied;
  d["attempts"] = res.attempts;
  d["seed"] = res.seed;
  d["graph_seed"] = res.graph_seed;
  d["min_distance"] = res.min_distance;
  d["relative_distance"] = res.relative_distance;
  d["diversity"] = res.diversity;
  d["rate"] = res.rate;
  d["distance_ok"] = res.distance_ok;
  d["diversity_ok"] = res.diversity_ok;
  d["constraint_ok"] = res.constraint_ok;
  d["biadjacency"] = rows_to_strings(res.graph.biadjacency);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Random bipartite parity-check codes and fractional graph capacity";
  m.attr("__version__") = kToolVersion;

  py::register_exception<Error>(m, "CodecapError", PyExc_RuntimeError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError",
                                          PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);

  // Binary-field linear algebra and code metrics.
  m.def("entropy", &entropy, py::arg("x"),
        "Binary entropy with H(0) = H(1) = 0");
  m.def(
      "hamming_distance",
      [](const std::string& u, const std::string& v) {
        return hamming_distance(word_from_string(u), word_from_string(v));
      },
      py::arg("u"), py::arg("v"));
  m.def(
      "rank_gf2",
      [](const std::vector<std::string>& rows) {
        return rank_gf2(matrix_from_rows(rows));
      },
      py::arg("rows"));
  m.def(
      "nullspace",
      [](const std::vector<std::string>& rows) {
        std::vector<std::string> out;
        for (const BitWord& w : nullspace_enumerate(matrix_from_rows(rows)))
          out.push_back(word_to_string(w));
        return out;
      },
      py::arg("rows"), "All codewords of the parity-check matrix");
  m.def(
      "min_distance",
      [](const std::vector<std::string>& rows) {
        return min_distance(LinearCode{matrix_from_rows(rows)});
      },
      py::arg("rows"));
  m.def(
      "code_metrics",
      [](const std::vector<std::string>& rows) {
        const LinearCode code{matrix_from_rows(rows)};
        const std::size_t rank = code.rank();
        const auto [rate, red] = rate_and_redundancy(code);
        py::dict d;
        d["n"] = code.n();
        d["m"] = code.parity_check.rows();
        d["rank"] = rank;
        d["dimension"] = code.n() - rank;
        d["rate"] = rate;
        d["redundancy"] = red;
        if (code.n() - rank > 0) {
          d["min_distance"] = min_distance(code);
          d["relative_distance"] = relative_distance(code);
        } else {
          d["min_distance"] = py::none();
          d["relative_distance"] = py::none();
        }
        return d;
      },
      py::arg("rows"));

  // The random code model.
  m.def(
      "sample_biadjacency",
      [](std::size_t n, double epsilon, double p, std::uint64_t seed) {
        const ModelParams mp = make_params(n, epsilon, p, 0, 0, 0.1, 0.1, 1);
        return rows_to_strings(sample_bipartite(mp, seed).biadjacency);
      },
      py::arg("n"), py::arg("epsilon"), py::arg("p"), py::arg("seed"));
  m.def(
      "diversity_index",
      [](const std::vector<std::string>& rows) {
        return diversity_index(
            BipartiteGraph::from_biadjacency(matrix_from_rows(rows)));
      },
      py::arg("rows"));
  m.def(
      "check_constraint",
      [](const std::vector<std::string>& rows, const std::string& spec) {
        const ConstraintSpec c = ConstraintSpec::from_json_text(spec);
        return check_constraint(
            BipartiteGraph::from_biadjacency(matrix_from_rows(rows)), c);
      },
      py::arg("rows"), py::arg("constraint_json"));
  m.def("hn_exact_probability", &hn_exact_probability, py::arg("n"),
        py::arg("p"));
  m.def("parity_even_prob", &parity_even_prob, py::arg("g"), py::arg("p"));
  m.def("diversity_floor", &diversity_floor, py::arg("theta"), py::arg("p"));
  m.def(
      "bound_e_div",
      [](std::size_t n, double epsilon, double p, double theta) {
        const ProbBound b =
            bound_e_div(make_params(n, epsilon, p, 0, 0, theta, 0.1, 1));
        return std::make_pair(b.value, b.raw);
      },
      py::arg("n"), py::arg("epsilon"), py::arg("p"), py::arg("theta"),
      "(clamped, raw) lower bound on the deviation event");
  m.def(
      "bound_delta0",
      [](std::size_t n, double epsilon, double p, std::size_t t) {
        return bound_delta0(make_params(n, epsilon, p, 0, 0, 0.1, 0.1, t));
      },
      py::arg("n"), py::arg("epsilon"), py::arg("p"), py::arg("t"));
  m.def(
      "bound_e_up",
      [](std::size_t n, double epsilon, double delta, double eta) {
        const ProbBound b =
            bound_e_up(make_params(n, epsilon, 0.25, delta, 0, 0.1, eta, 1));
        return std::make_pair(b.value, b.raw);
      },
      py::arg("n"), py::arg("epsilon"), py::arg("delta"), py::arg("eta"));
  m.def("choose_t", &choose_t, py::arg("p"), py::arg("eta"));
  m.def(
      "rejection_search",
      [](std::size_t n, double epsilon, double p, double delta, double gamma,
         const std::string& constraint_json, std::uint64_t seed,
         std::size_t max_attempts) {
        const ModelParams mp =
            make_params(n, epsilon, p, delta, gamma, 0.1, 0.1, 1);
        const ConstraintSpec c =
            ConstraintSpec::from_json_text(constraint_json);
        return search_result_dict(rejection_search(mp, c, seed, max_attempts));
      },
      py::arg("n"), py::arg("epsilon"), py::arg("p"), py::arg("delta"),
      py::arg("gamma"), py::arg("constraint_json") = "{\"kind\":\"always\"}",
      py::arg("seed") = 1, py::arg("max_attempts") = 1000);
  m.def(
      "monte_carlo_event",
      [](std::size_t n, double epsilon, double p, const std::string& event,
         const std::string& constraint_json, std::size_t trials,
         std::uint64_t seed, double delta, double gamma) {
        const ModelParams mp =
            make_params(n, epsilon, p, delta, gamma, 0.1, 0.1, 1);
        EventKind kind;
        if (event == "diversity")
          kind = EventKind::diversity_ge_gamma;
        else if (event == "distance")
          kind = EventKind::min_distance_ge_target;
        else if (event == "constraint")
          kind = EventKind::constraint;
        else
          throw ValidationError("unknown event \"" + event + "\"");
        const ConstraintSpec c =
            ConstraintSpec::from_json_text(constraint_json);
        const MonteCarloResult r =
            monte_carlo_event(mp, kind, c, trials, seed);
        py::dict d;
        d["estimate"] = r.estimate;
        d["ci_low"] = r.ci_low;
        d["ci_high"] = r.ci_high;
        d["trials"] = r.trials;
        d["successes"] = r.successes;
        return d;
      },
      py::arg("n"), py::arg("epsilon"), py::arg("p"), py::arg("event"),
      py::arg("constraint_json") = "{\"kind\":\"always\"}",
      py::arg("trials") = 1000, py::arg("seed") = 1, py::arg("delta") = 0.0,
      py::arg("gamma") = 0.0);

  // Fractional capacity.
  m.def(
      "degree_stats",
      [](std::size_t n,
         const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
        const DegreeStats s = degree_stats(graph_from_edges(n, edges));
        return std::make_pair(s.d_av, s.delta_max);
      },
      py::arg("n"), py::arg("edges"));
  m.def(
      "alpha",
      [](std::size_t n,
         const std::vector<std::pair<std::size_t, std::size_t>>& edges,
         std::size_t r, std::optional<std::size_t> k) {
        const SimpleGraph g = graph_from_edges(n, edges);
        if (r == 1 && (!k || *k == 1)) return alpha_exact(g);
        return alpha_exact(restricted_power(g, r, k ? *k : r));
      },
      py::arg("n"), py::arg("edges"), py::arg("r") = 1,
      py::arg("k") = py::none(),
      "Exact independence number of G(r, k); k defaults to r");
  m.def(
      "ball_size_exact",
      [](std::size_t n,
         const std::vector<std::pair<std::size_t, std::size_t>>& edges,
         std::size_t r, std::size_t k, const std::vector<std::size_t>& v) {
        return ball_size_exact(graph_from_edges(n, edges), r, k, v);
      },
      py::arg("n"), py::arg("edges"), py::arg("r"), py::arg("k"),
      py::arg("v"));
  m.def(
      "expected_ball_size",
      [](std::size_t n,
         const std::vector<std::pair<std::size_t, std::size_t>>& edges,
         std::size_t r, std::size_t k) {
        return expected_ball_size(graph_from_edges(n, edges), r, k);
      },
      py::arg("n"), py::arg("edges"), py::arg("r"), py::arg("k"));
  m.def("f_bound", &f_bound, py::arg("gamma"), py::arg("x"));
  m.def(
      "capacity_bounds",
      [](std::size_t n,
         const std::vector<std::pair<std::size_t, std::size_t>>& edges,
         double gamma, std::optional<double> theta,
         const std::string& theta_source) {
        const SimpleGraph g = graph_from_edges(n, edges);
        double value;
        std::string source;
        if (theta) {
          value = *theta;
          source = theta_source;
        } else {
          const auto entry = capacity_registry_lookup(g);
          if (!entry)
            throw ValidationError(
                "no registry capacity for this graph; pass theta=");
          value = entry->theta;
          source = entry->provenance;
        }
        const CapacityReport rep = capacity_bounds(g, gamma, value, source);
        py::dict d;
        d["n"] = rep.n;
        d["gamma"] = rep.gamma;
        d["d_av"] = rep.d_av;
        d["delta_max"] = rep.delta_max;
        d["lower_term_dav"] = rep.lower_term_dav;
        d["lower_term_delta"] = rep.lower_term_delta;
        d["lower_term_full"] = rep.lower_term_full;
        d["lower_bound"] = rep.lower_bound;
        d["upper_bound"] = rep.upper_bound;
        d["theta_value"] = rep.theta_value;
        d["theta_source"] = rep.theta_source;
        return d;
      },
      py::arg("n"), py::arg("edges"), py::arg("gamma"),
      py::arg("theta") = py::none(), py::arg("theta_source") = "user");
  m.def(
      "capacity_certificates",
      [](std::size_t n,
         const std::vector<std::pair<std::size_t, std::size_t>>& edges,
         double gamma, std::size_t r_max) {
        py::list out;
        for (const CapacityCertificate& c :
             capacity_certificate(graph_from_edges(n, edges), gamma, r_max)) {
          py::dict d;
          d["r"] = c.r;
          d["k"] = c.k;
          d["alpha"] = c.alpha;
          d["witness"] = c.witness;
          out.append(d);
        }
        return out;
      },
      py::arg("n"), py::arg("edges"), py::arg("gamma"), py::arg("r_max"));
  m.def(
      "recursion_check",
      [](std::size_t n,
         const std::vector<std::pair<std::size_t, std::size_t>>& edges,
         std::size_t r, std::size_t d) {
        return recursion_check(graph_from_edges(n, edges), r, d);
      },
      py::arg("n"), py::arg("edges"), py::arg("r"), py::arg("d"));
  m.def(
      "capacity_registry_lookup",
      [](std::size_t n,
         const std::vector<std::pair<std::size_t, std::size_t>>& edges)
          -> py::object {
        const auto entry =
            capacity_registry_lookup(graph_from_edges(n, edges));
        if (!entry) return py::none();
        return py::make_tuple(entry->theta, entry->provenance);
      },
      py::arg("n"), py::arg("edges"));
  m.def(
      "parse_graph_file",
      [](const std::string& path, const std::string& format) {
        const SimpleGraph g =
            parse_graph_file(path, graph_format_from_string(format));
        return std::make_pair(g.n(), g.edges());
      },
      py::arg("path"), py::arg("format") = "auto",
      "Returns (n, edges) from an edge-list or DIMACS file");
}
