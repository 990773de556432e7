// SPDX-License-Identifier: Apache-2.0
#include "vaba/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vaba/sim/batch.hpp"

namespace vaba::cli {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

std::string summary_path_for(const std::string& out_path) {
  return out_path + ".summary.json";
}

int execute_config(const sim::ExperimentConfig& cfg, bool parallel) {
  bool capture_trace = !cfg.trace_path.empty();
  sim::BatchResult batch = sim::run_batch(cfg, parallel, capture_trace);

  if (cfg.out_path.empty()) {
    std::cout << batch.csv;
  } else {
    write_file(cfg.out_path, batch.csv);
    write_file(summary_path_for(cfg.out_path), sim::summary_to_json(batch.summary) + "\n");
  }
  if (capture_trace) write_file(cfg.trace_path, batch.trace);

  std::cerr << sim::summary_to_json(batch.summary) << "\n";
  if (batch.summary.failed_runs > 0 || batch.summary.violation_runs > 0) {
    for (const auto& m : batch.metrics) {
      for (const auto& v : m.violations) {
        std::cerr << "seed " << m.seed << ": " << v << "\n";
      }
    }
    return 1;
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"vaba-lab: adversarial simulation workbench for asynchronous agreement"};
  app.require_subcommand(1);

  sim::ExperimentConfig cfg;
  std::string adversary = "fair";
  bool serial = false;

  CLI::App* run_cmd = app.add_subcommand("run", "run one experiment configuration");
  run_cmd->add_option("--n", cfg.n, "party count")->required();
  run_cmd->add_option("--f", cfg.f, "corruption bound (n >= 3f+1)")->required();
  run_cmd->add_option("--adversary", adversary, "fair|crash|equivocate|delay-leader|adaptive");
  run_cmd->add_option("--validator", cfg.validator, "always|even|signed");
  run_cmd->add_option("--seed", cfg.seed, "base seed; run i uses seed+i");
  run_cmd->add_option("--runs", cfg.runs, "number of seeded runs");
  run_cmd->add_option("--trace", cfg.trace_path, "write a JSON-lines delivery trace here");
  run_cmd->add_option("--out", cfg.out_path, "write per-run CSV here (summary JSON alongside)");
  run_cmd->add_option("--budget", cfg.halt.event_budget, "event budget per run");
  run_cmd->add_flag("--serial", serial, "run the batch on one thread");

  std::string sweep_path;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run every configuration in a JSON file");
  sweep_cmd->add_option("--config", sweep_path, "JSON array of experiment configs")->required();
  sweep_cmd->add_flag("--serial", serial, "run batches on one thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run_cmd->parsed()) {
      cfg.adversary = sim::adversary_kind_from_string(adversary);
      cfg.validate();
      return execute_config(cfg, !serial);
    }
    std::ifstream in(sweep_path);
    if (!in) throw std::runtime_error("cannot read sweep file " + sweep_path);
    std::stringstream buf;
    buf << in.rdbuf();
    int rc = 0;
    for (const auto& sweep_cfg : sim::parse_sweep_file(buf.str())) {
      rc |= execute_config(sweep_cfg, !serial);
    }
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace vaba::cli
