#include "codecap/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <vector>

#include "codecap/capacity.hpp"
#include "codecap/errors.hpp"
#include "codecap/version.hpp"

namespace codecap {

namespace {

using json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << text;
}

std::string iso_utc_now() {
  const std::time_t tt =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

EventKind event_from_string(const std::string& s) {
  if (s == "diversity") return EventKind::diversity_ge_gamma;
  if (s == "distance") return EventKind::min_distance_ge_target;
  if (s == "constraint") return EventKind::constraint;
  throw ValidationError("unknown event \"" + s +
                        "\" (expected diversity, distance, or constraint)");
}

json graph_summary(const SimpleGraph& g, const std::string& path) {
  const DegreeStats stats = degree_stats(g);
  json j;
  j["path"] = path;
  j["n"] = g.n();
  j["edges"] = g.edge_count();
  j["connected"] = g.is_connected();
  j["d_av"] = stats.d_av;
  j["delta_max"] = stats.delta_max;
  return j;
}

json model_summary(const ModelParams& m) {
  json j;
  j["n"] = m.n;
  j["m"] = m.m();
  j["epsilon"] = m.epsilon;
  j["p"] = m.p;
  return j;
}

json do_codes_sample(const RunConfig& cfg) {
  const BipartiteGraph g = sample_bipartite(cfg.model, cfg.seed);
  json out = model_summary(cfg.model);
  out["seed"] = cfg.seed;
  out["edges"] = g.edge_count();
  out["biadjacency"] = g.biadjacency.to_text();
  if (!cfg.matrix_out.empty()) {
    write_text_file(cfg.matrix_out, g.biadjacency.to_text());
    out["matrix_out"] = cfg.matrix_out;
  }
  return out;
}

json do_codes_verify(const RunConfig& cfg) {
  if (cfg.matrix_path.empty())
    throw ValidationError("codes-verify: pass the biadjacency file path");
  const BitMatrix biadj =
      BitMatrix::from_text(read_text_file(cfg.matrix_path), cfg.matrix_path);
  const BipartiteGraph g = BipartiteGraph::from_biadjacency(biadj);
  const LinearCode code = code_from_graph(g);
  const std::size_t rank = code.rank();
  const std::size_t dim = code.n() - rank;
  const auto [rate, redundancy] = rate_and_redundancy(code);

  json out;
  out["source"] = cfg.matrix_path;
  out["n"] = g.n_left;
  out["m"] = g.n_right;
  out["rank"] = rank;
  out["dimension"] = dim;
  out["rate"] = rate;
  out["redundancy"] = redundancy;
  if (dim > 0) {
    const std::size_t d = min_distance(code);
    out["min_distance"] = d;
    out["relative_distance"] = relative_distance(code);
  } else {
    out["min_distance"] = nullptr;
    out["relative_distance"] = nullptr;
  }
  if (g.n_right >= 2)
    out["diversity"] = diversity_index(g);
  else
    out["diversity"] = nullptr;
  if (cfg.constraint_given) {
    out["constraint"] = json::parse(cfg.constraint.to_json_text());
    out["constraint_satisfied"] = check_constraint(g, cfg.constraint);
  }
  return out;
}

json do_codes_search(const RunConfig& cfg) {
  const SearchResult res =
      rejection_search(cfg.model, cfg.constraint, cfg.seed, cfg.max_attempts);
  json out;
  out["params"] = model_summary(cfg.model);
  out["params"]["delta"] = cfg.model.delta;
  out["params"]["gamma"] = cfg.model.gamma;
  out["params"]["distance_target"] = cfg.model.distance_target();
  out["constraint"] = json::parse(cfg.constraint.to_json_text());
  out["seed"] = cfg.seed;
  out["max_attempts"] = cfg.max_attempts;
  out["satisfied"] = res.satisfied;
  out["attempts"] = res.attempts;
  out["graph_seed"] = res.graph_seed;
  out["min_distance"] = res.min_distance;
  out["relative_distance"] = res.relative_distance;
  out["diversity"] = res.diversity;
  out["rate"] = res.rate;
  out["checks"]["distance"] = res.distance_ok;
  out["checks"]["diversity"] = res.diversity_ok;
  out["checks"]["constraint"] = res.constraint_ok;
  out["biadjacency"] = res.graph.biadjacency.to_text();
  if (!cfg.matrix_out.empty()) {
    write_text_file(cfg.matrix_out, res.graph.biadjacency.to_text());
    out["matrix_out"] = cfg.matrix_out;
  }
  return out;
}

json do_codes_montecarlo(const RunConfig& cfg) {
  const EventKind event = event_from_string(cfg.event);
  const MonteCarloResult mc = monte_carlo_event(cfg.model, event,
                                                cfg.constraint, cfg.trials,
                                                cfg.seed);
  json out;
  out["params"] = model_summary(cfg.model);
  if (event == EventKind::diversity_ge_gamma)
    out["params"]["gamma"] = cfg.model.gamma;
  if (event == EventKind::min_distance_ge_target) {
    out["params"]["delta"] = cfg.model.delta;
    out["params"]["distance_target"] = cfg.model.distance_target();
  }
  out["event"] = cfg.event;
  if (event == EventKind::constraint)
    out["constraint"] = json::parse(cfg.constraint.to_json_text());
  out["trials"] = mc.trials;
  out["seed"] = cfg.seed;
  out["successes"] = mc.successes;
  out["estimate"] = mc.estimate;
  out["ci_low"] = mc.ci_low;
  out["ci_high"] = mc.ci_high;
  if (event == EventKind::constraint &&
      cfg.constraint.kind == ConstraintSpec::Kind::hn && cfg.model.n >= 4)
    out["exact"] = hn_exact_probability(cfg.model.n, cfg.model.p);
  return out;
}

SimpleGraph load_graph(const RunConfig& cfg) {
  if (cfg.graph_path.empty())
    throw ValidationError(cfg.command + ": pass --graph with a graph file");
  return parse_graph_file(cfg.graph_path, cfg.graph_format);
}

json certificate_json(const CapacityCertificate& c) {
  json j;
  j["r"] = c.r;
  j["k"] = c.k;
  j["alpha"] = c.alpha;
  j["witness"] = c.witness;
  return j;
}

json do_capacity_bounds(const RunConfig& cfg) {
  const SimpleGraph g = load_graph(cfg);
  double theta = cfg.theta_value;
  std::string source = cfg.theta_source;
  if (!cfg.theta_given) {
    const auto entry = capacity_registry_lookup(g);
    if (!entry)
      throw ValidationError(
          "the capacity registry has no value for this graph; pass "
          "--theta <value> --theta-source <text>");
    theta = entry->theta;
    source = entry->provenance;
  }
  const CapacityReport rep =
      capacity_bounds(g, cfg.cap_gamma, theta, source);

  json out;
  out["graph"] = graph_summary(g, cfg.graph_path);
  out["gamma"] = rep.gamma;
  out["theta"]["value"] = rep.theta_value;
  out["theta"]["source"] = rep.theta_source;
  out["lower_terms"]["d_av"] = rep.lower_term_dav;
  out["lower_terms"]["delta_max"] = rep.lower_term_delta;
  out["lower_terms"]["n_minus_1"] = rep.lower_term_full;
  out["lower_bound"] = rep.lower_bound;
  out["upper_bound"] = rep.upper_bound;
  if (cfg.r_max >= 1) {
    out["certificates"] = json::array();
    for (const CapacityCertificate& c :
         capacity_certificate(g, cfg.cap_gamma, cfg.r_max)) {
      if (c.witness > rep.upper_bound + 1e-9) {
        if (cfg.theta_given)
          throw ValidationError(
              "finite-order witness " + std::to_string(c.witness) +
              " exceeds the upper bound from the supplied capacity value; "
              "the value or its provenance is wrong");
        throw Error("internal check failed: certificate exceeds the "
                    "registry upper bound");
      }
      out["certificates"].push_back(certificate_json(c));
    }
  }
  return out;
}

json do_capacity_certify(const RunConfig& cfg) {
  if (cfg.r_max < 1)
    throw ValidationError("capacity-certify: pass --rmax >= 1");
  const SimpleGraph g = load_graph(cfg);
  const auto certs = capacity_certificate(g, cfg.cap_gamma, cfg.r_max);
  json out;
  out["graph"] = graph_summary(g, cfg.graph_path);
  out["gamma"] = cfg.cap_gamma;
  out["r_max"] = cfg.r_max;
  out["certificates"] = json::array();
  double best = 0.0;
  for (const CapacityCertificate& c : certs) {
    out["certificates"].push_back(certificate_json(c));
    best = std::max(best, c.witness);
  }
  out["best_witness"] = best;
  return out;
}

json do_capacity_mis(const RunConfig& cfg) {
  const SimpleGraph g = load_graph(cfg);
  const std::size_t r = cfg.r;
  const std::size_t k = cfg.k_given ? cfg.k : r;

  json out;
  out["graph"] = graph_summary(g, cfg.graph_path);
  out["r"] = r;
  out["k"] = k;
  std::vector<std::size_t> witness;
  if (r == 1 && k == 1) {
    out["vertices"] = g.n();
    out["alpha"] = alpha_exact(g, &witness);
    out["witness"] = witness;
  } else {
    const ProductGraph pg = restricted_power(g, r, k);
    out["vertices"] = pg.num_vertices;
    out["alpha"] = alpha_exact(pg, &witness);
    out["witness"] = witness;
    json tuples = json::array();
    for (std::size_t id : witness) tuples.push_back(pg.decode(id));
    out["witness_tuples"] = tuples;
  }
  return out;
}

json do_capacity_recursion(const RunConfig& cfg) {
  const SimpleGraph g = load_graph(cfg);
  if (cfg.d < 1 || cfg.d > cfg.r)
    throw ValidationError("capacity-recursion: need 1 <= d <= r");
  const std::size_t a_rd =
      alpha_exact(restricted_power(g, cfg.r, cfg.d));
  const std::size_t a_dd =
      alpha_exact(restricted_power(g, cfg.d, cfg.d));
  std::size_t scale = 1;
  for (std::size_t i = 0; i < cfg.r - cfg.d; ++i) scale *= g.n();

  json out;
  out["graph"] = graph_summary(g, cfg.graph_path);
  out["r"] = cfg.r;
  out["d"] = cfg.d;
  out["alpha_r_d"] = a_rd;
  out["alpha_d_d"] = a_dd;
  out["scale"] = scale;
  out["bound"] = scale * a_dd;
  out["holds"] = a_rd <= scale * a_dd;
  return out;
}

json config_echo(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  const bool codes = cfg.command.rfind("codes-", 0) == 0;
  if (codes) {
    j["model"]["n"] = cfg.model.n;
    j["model"]["epsilon"] = cfg.model.epsilon;
    j["model"]["p"] = cfg.model.p;
    j["model"]["delta"] = cfg.model.delta;
    j["model"]["gamma"] = cfg.model.gamma;
    if (cfg.constraint_given)
      j["constraint"] = json::parse(cfg.constraint.to_json_text());
  } else {
    j["graph"] = cfg.graph_path;
    j["format"] = to_string(cfg.graph_format);
    j["gamma"] = cfg.cap_gamma;
    if (cfg.r_max) j["rmax"] = cfg.r_max;
    j["r"] = cfg.r;
    if (cfg.k_given) j["k"] = cfg.k;
    j["d"] = cfg.d;
    if (cfg.theta_given) {
      j["theta"] = cfg.theta_value;
      j["theta_source"] = cfg.theta_source;
    }
  }
  if (cfg.command == "codes-sample" || cfg.command == "codes-search" ||
      cfg.command == "codes-montecarlo")
    j["seed"] = cfg.seed;
  if (cfg.command == "codes-search") j["max_attempts"] = cfg.max_attempts;
  if (cfg.command == "codes-montecarlo") {
    j["event"] = cfg.event;
    j["trials"] = cfg.trials;
  }
  if (!cfg.matrix_path.empty()) j["matrix"] = cfg.matrix_path;
  if (!cfg.matrix_out.empty()) j["matrix_out"] = cfg.matrix_out;
  j["emit"] = cfg.emit;
  return j;
}

json dispatch(const RunConfig& cfg) {
  if (cfg.command == "codes-sample") return do_codes_sample(cfg);
  if (cfg.command == "codes-verify") return do_codes_verify(cfg);
  if (cfg.command == "codes-search") return do_codes_search(cfg);
  if (cfg.command == "codes-montecarlo") return do_codes_montecarlo(cfg);
  if (cfg.command == "capacity-bounds") return do_capacity_bounds(cfg);
  if (cfg.command == "capacity-certify") return do_capacity_certify(cfg);
  if (cfg.command == "capacity-mis") return do_capacity_mis(cfg);
  if (cfg.command == "capacity-recursion") return do_capacity_recursion(cfg);
  throw ValidationError("unknown command \"" + cfg.command + "\"");
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_null()) return "null";
  if (j.is_number_float()) return format_real(j.get<double>());
  return j.dump();
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      const std::string next = prefix.empty() ? key : prefix + "." + key;
      flatten(value, next, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, scalar_text(j));
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

void append_log(const std::string& path, const RunRecord& rec) {
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw ValidationError("cannot open run log: " + path);
  out << record_to_json(rec).dump() << '\n';
}

}  // namespace

nlohmann::ordered_json record_to_json(const RunRecord& rec) {
  json j;
  j["config"] = rec.config;
  j["outcome"] = rec.outcome;
  j["wall_seconds"] = rec.wall_seconds;
  j["tool_version"] = rec.tool_version;
  j["timestamp"] = rec.timestamp;
  return j;
}

RunRecord run(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.config = config_echo(cfg);
  rec.outcome = dispatch(cfg);
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  rec.tool_version = kToolVersion;
  rec.timestamp = iso_utc_now();
  if (!cfg.log_path.empty() && cfg.log_path != "none")
    append_log(cfg.log_path, rec);
  if (!cfg.out_path.empty())
    write_text_file(cfg.out_path, emit_text(rec, cfg.emit));
  return rec;
}

std::string emit_text(const RunRecord& rec, const std::string& emit) {
  if (emit == "record") return rec.outcome.dump() + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(rec.outcome, "", rows);
  std::string out;
  if (emit == "table") {
    out += "command: " + rec.config["command"].get<std::string>() + "\n";
    for (const auto& [key, value] : rows) out += key + ": " + value + "\n";
    out += "wall_seconds: " + format_real(rec.wall_seconds) + "\n";
    return out;
  }
  if (emit == "csv") {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(rows[i].first);
    }
    out += '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(rows[i].second);
    }
    out += '\n';
    return out;
  }
  throw ValidationError("unknown emit format \"" + emit +
                        "\" (expected table, record, or csv)");
}

}  // namespace codecap
