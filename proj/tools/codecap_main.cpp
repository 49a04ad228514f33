#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "codecap/errors.hpp"
#include "codecap/harness.hpp"
#include "codecap/version.hpp"

namespace {

codecap::ConstraintSpec resolve_constraint(const std::string& text) {
  if (text == "always") return codecap::ConstraintSpec::always();
  if (text == "hn") return codecap::ConstraintSpec::hn();
  if (!text.empty() && text.front() == '{')
    return codecap::ConstraintSpec::from_json_text(text);
  // Anything else is a path to a JSON spec file.
  std::ifstream in(text, std::ios::binary);
  if (!in)
    throw codecap::ValidationError("cannot open constraint file: " + text);
  std::ostringstream buf;
  buf << in.rdbuf();
  return codecap::ConstraintSpec::from_json_text(buf.str());
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bipartite-graph parity-check codes and fractional graph "
               "capacity workbench"};
  app.set_version_flag("--version", codecap::kToolVersion);
  app.require_subcommand(1);

  codecap::RunConfig cfg;
  std::string constraint_text;
  std::string format_text = "auto";
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--emit", cfg.emit, "output format: table, record, csv")
        ->default_str("table");
    sub->add_option("--out", cfg.out_path, "also write the output to a file");
    sub->add_option("--log", cfg.log_path,
                    "run log path; \"none\" disables logging")
        ->default_str("runs.log.jsonl");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed; generated when absent");
  };
  auto add_model = [&](CLI::App* sub, bool full) {
    sub->add_option("--n", cfg.model.n, "block length")->required();
    sub->add_option("--epsilon", cfg.model.epsilon,
                    "parity density, m = ceil(epsilon n)")
        ->required();
    sub->add_option("--p", cfg.model.p, "edge probability")->required();
    if (full) {
      sub->add_option("--delta", cfg.model.delta, "target relative distance");
      sub->add_option("--div-gamma", cfg.model.gamma,
                      "target diversity index");
    }
  };
  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--graph", cfg.graph_path, "graph file")->required();
    sub->add_option("--format", format_text,
                    "graph file format: auto, edgelist, dimacs")
        ->default_str("auto");
  };

  CLI::App* sample = app.add_subcommand(
      "codes-sample", "sample a random bipartite parity-check graph");
  add_model(sample, false);
  add_seed(sample);
  sample->add_option("--matrix-out", cfg.matrix_out,
                     "save the biadjacency matrix to this file");
  add_common(sample);

  CLI::App* verify = app.add_subcommand(
      "codes-verify", "recompute code metrics from a stored biadjacency");
  verify->add_option("--matrix", cfg.matrix_path, "biadjacency text file")
      ->required();
  verify->add_option("--constraint", constraint_text,
                     "constraint: always, hn, inline JSON, or a file");
  add_common(verify);

  CLI::App* search = app.add_subcommand(
      "codes-search",
      "rejection-sample until distance, diversity, and constraint hold");
  add_model(search, true);
  search->add_option("--constraint", constraint_text,
                     "constraint: always, hn, inline JSON, or a file");
  search->add_option("--max-attempts", cfg.max_attempts, "attempt budget")
      ->default_str("1000");
  search->add_option("--matrix-out", cfg.matrix_out,
                     "save the accepted biadjacency to this file");
  add_seed(search);
  add_common(search);

  CLI::App* mc = app.add_subcommand(
      "codes-montecarlo",
      "estimate an event probability over sampled graphs");
  add_model(mc, true);
  mc->add_option("--event", cfg.event,
                 "event: diversity, distance, or constraint")
      ->default_str("constraint");
  mc->add_option("--constraint", constraint_text,
                 "constraint: always, hn, inline JSON, or a file");
  mc->add_option("--trials", cfg.trials, "number of sampled graphs")
      ->default_str("1000");
  add_seed(mc);
  add_common(mc);

  CLI::App* bounds = app.add_subcommand(
      "capacity-bounds",
      "closed-form capacity sandwich, plus optional finite-r certificates");
  add_graph(bounds);
  bounds->add_option("--gamma", cfg.cap_gamma, "fractional order in (0, 1]")
      ->required();
  bounds->add_option("--theta", cfg.theta_value,
                     "capacity value; defaults to the registry");
  bounds->add_option("--theta-source", cfg.theta_source,
                     "provenance of the capacity value")
      ->default_str("user");
  bounds->add_option("--rmax", cfg.r_max,
                     "also compute certificates for r up to this order");
  add_common(bounds);

  CLI::App* certify = app.add_subcommand(
      "capacity-certify", "finite-r lower witnesses alpha(G(r, k))^(1/r)");
  add_graph(certify);
  certify->add_option("--gamma", cfg.cap_gamma, "fractional order in (0, 1]")
      ->required();
  certify->add_option("--rmax", cfg.r_max, "largest order to certify")
      ->required();
  add_common(certify);

  CLI::App* mis = app.add_subcommand(
      "capacity-mis", "exact maximum stable set of a graph or product power");
  add_graph(mis);
  mis->add_option("--r", cfg.r, "product order")->default_str("1");
  CLI::Option* kopt =
      mis->add_option("--k", cfg.k, "difference budget; defaults to r");
  add_common(mis);

  CLI::App* recursion = app.add_subcommand(
      "capacity-recursion",
      "check alpha(G(r,d)) <= n^(r-d) alpha(G(d,d)) with exact solves");
  add_graph(recursion);
  recursion->add_option("--r", cfg.r, "product order")->required();
  recursion->add_option("--d", cfg.d, "difference budget")->required();
  add_common(recursion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();

  try {
    cfg.graph_format = codecap::graph_format_from_string(format_text);
    if (!constraint_text.empty()) {
      cfg.constraint = resolve_constraint(constraint_text);
      cfg.constraint_given = true;
    }
    if (cfg.command == "codes-search" && !cfg.constraint_given) {
      cfg.constraint = codecap::ConstraintSpec::always();
      cfg.constraint_given = true;
    }
    cfg.theta_given = bounds->count("--theta") > 0;
    cfg.k_given = kopt->count() > 0;

    const bool randomized = cfg.command == "codes-sample" ||
                            cfg.command == "codes-search" ||
                            cfg.command == "codes-montecarlo";
    if (randomized) {
      seed_given = sub->count("--seed") > 0;
      if (!seed_given) {
        cfg.seed = fresh_seed();
        std::cerr << "no --seed given; using generated seed " << cfg.seed
                  << "\n";
      }
    }

    const codecap::RunRecord rec = codecap::run(cfg);
    std::cout << codecap::emit_text(rec, cfg.emit);
    if (cfg.command == "codes-search" &&
        !rec.outcome.at("satisfied").get<bool>())
      return 4;  // search exhausted without meeting the targets
    return 0;
  } catch (const codecap::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const codecap::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
