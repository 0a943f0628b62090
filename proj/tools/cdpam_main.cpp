// cdpam command-line front end: generate / analyze / sweep / theory / compare.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdpam/commands.hpp"
#include "cdpam/version.hpp"

namespace {

struct CliState {
  // generate
  cdpam::GenerateConfig generate;
  std::string from_manifest;
  bool generate_seed_given = false;
  // analyze
  cdpam::AnalyzeConfig analyze;
  bool analyze_seed_given = false;
  // sweep
  cdpam::SweepConfig sweep;
  // theory
  cdpam::TheoryConfig theory;
  std::string theory_out;
  // compare
  cdpam::CompareConfig compare;
  std::string compare_out;
};

void add_format_option(CLI::App* cmd, std::string& slot,
                       const std::string& fixed) {
  slot = fixed;
  cmd->add_option("--format", slot, "output format")
      ->check(CLI::IsMember({fixed}));
}

int run(int argc, char** argv) {
  CLI::App app{std::string("context-dependent preferential attachment "
                           "workbench (v") + cdpam::kVersion + ")"};
  app.require_subcommand(1);
  CliState st;
  std::string fmt_generate, fmt_analyze, fmt_sweep, fmt_theory;

  auto* generate = app.add_subcommand(
      "generate", "grow one network and write its edge list plus manifest");
  generate->add_option("--m0", st.generate.params.m0, "initial complete-network size");
  generate->add_option("--m", st.generate.params.m, "edges per new node");
  generate->add_option("--beta", st.generate.params.beta, "local-context weight");
  generate->add_option("--theta", st.generate.params.theta, "global-context weight");
  generate->add_option("--n", st.generate.params.n_steps, "number of new nodes");
  auto* seed_opt =
      generate->add_option("--seed", st.generate.params.seed, "RNG seed");
  generate->add_option("--model", st.generate.model, "cdpam or ba")
      ->check(CLI::IsMember({"cdpam", "ba"}));
  generate->add_option("--out", st.generate.out_path, "edge-list output path")
      ->required();
  generate->add_option("--from-manifest", st.from_manifest,
                       "re-run the exact configuration of a manifest file");
  add_format_option(generate, fmt_generate, "edge-list");
  generate->callback([&] {
    if (!st.from_manifest.empty()) {
      const std::string out = st.generate.out_path;
      st.generate = cdpam::config_from_manifest(st.from_manifest);
      st.generate.out_path = out;
    } else if (seed_opt->count() == 0) {
      throw CLI::ValidationError("--seed is required (no wall-clock default)");
    }
    const auto g = cdpam::cmd_generate(st.generate);
    std::cout << "wrote " << st.generate.out_path << " (" << g.node_count()
              << " nodes, " << g.edge_count() << " edges)\n";
  });

  auto* analyze = app.add_subcommand(
      "analyze", "compute the metric report of an edge-list file");
  analyze->add_option("--input", st.analyze.input_path, "edge-list input path")
      ->required();
  analyze->add_option("--out", st.analyze.out_path,
                      "report output path (default: stdout)");
  analyze->add_option("--tolerance", st.analyze.opts.spectral.tolerance,
                      "relative eigenvalue tolerance");
  analyze->add_option("--bootstrap", st.analyze.opts.bootstrap,
                      "bootstrap replicates for the p-value (0 = skip)");
  auto* analyze_seed =
      analyze->add_option("--seed", st.analyze.opts.seed, "bootstrap seed");
  analyze->add_option("--exact-diameter-cutoff",
                      st.analyze.opts.exact_diameter_cutoff,
                      "largest size for the exact diameter");
  add_format_option(analyze, fmt_analyze, "report-json");
  analyze->callback([&] {
    if (st.analyze.opts.bootstrap > 0 && analyze_seed->count() == 0)
      throw CLI::ValidationError("--bootstrap needs an explicit --seed");
    const auto json = cdpam::cmd_analyze(st.analyze);
    if (st.analyze.out_path.empty()) std::cout << json.dump(2) << "\n";
  });

  auto* sweep = app.add_subcommand(
      "sweep", "run a (beta x size x seed) grid and write figure CSVs");
  sweep->add_option("--m0", st.sweep.m0, "initial complete-network size");
  sweep->add_option("--m", st.sweep.m, "edges per new node");
  sweep->add_option("--theta", st.sweep.theta, "global-context weight");
  sweep->add_option("--beta-grid", st.sweep.beta_grid, "comma list of beta values")
      ->delimiter(',')
      ->required();
  sweep->add_option("--n-grid", st.sweep.n_grid, "comma list of growth sizes")
      ->delimiter(',')
      ->required();
  sweep->add_option("--seeds", st.sweep.seeds, "comma list of seeds")
      ->delimiter(',')
      ->required();
  sweep->add_option("--figures", st.sweep.figures,
                    "subset of metrics,cc-vs-beta,diameter,degree-dist")
      ->delimiter(',')
      ->check(CLI::IsMember({"metrics", "cc-vs-beta", "diameter", "degree-dist"}));
  sweep->add_option("--out", st.sweep.out_dir, "output directory")->required();
  sweep->add_option("--jobs", st.sweep.jobs, "concurrent sweep cells");
  sweep->add_option("--tolerance", st.sweep.analysis.spectral.tolerance,
                    "relative eigenvalue tolerance");
  sweep->add_option("--bootstrap", st.sweep.analysis.bootstrap,
                    "bootstrap replicates per cell (0 = skip)");
  sweep->add_option("--exact-diameter-cutoff",
                    st.sweep.analysis.exact_diameter_cutoff,
                    "largest size for the exact diameter");
  add_format_option(sweep, fmt_sweep, "curve-csv");
  sweep->callback([&] {
    cdpam::cmd_sweep(st.sweep);
    std::cout << "wrote figure CSVs to " << st.sweep.out_dir << "\n";
  });

  auto* theory = app.add_subcommand(
      "theory", "tabulate the closed-form curves as CSV");
  theory->add_option("--m", st.theory.m, "edges per new node");
  theory->add_option("--theta", st.theory.theta, "global-context weight");
  theory->add_option("--beta-grid", st.theory.beta_grid,
                     "comma list of beta values (empty = header-only CSV)")
      ->delimiter(',');
  theory->add_option("--n-grid", st.theory.n_grid,
                     "network sizes for expected-diameter rows")
      ->delimiter(',');
  theory->add_option("--k-grid", st.theory.k_grid,
                     "degrees for density rows")
      ->delimiter(',');
  theory->add_option("--t-grid", st.theory.t_grid,
                     "times for degree-trajectory rows")
      ->delimiter(',');
  theory->add_option("--t-i", st.theory.t_i, "arrival time for the trajectory");
  theory->add_option("--r", st.theory.r,
                     "constant r in the distance formulas");
  theory->add_option("--out", st.theory_out, "CSV output path (default: stdout)");
  add_format_option(theory, fmt_theory, "curve-csv");
  theory->callback([&] {
    const std::string csv = cdpam::cmd_theory_csv(st.theory);
    if (st.theory_out.empty())
      std::cout << csv;
    else
      cdpam::detail::write_text_file(st.theory_out, csv);
  });

  auto* compare = app.add_subcommand(
      "compare", "run CDPAM and BA on shared seeds and report the deltas");
  compare->add_option("--m0", st.compare.m0, "initial complete-network size");
  compare->add_option("--m", st.compare.m, "edges per new node");
  compare->add_option("--beta", st.compare.beta, "local-context weight");
  compare->add_option("--theta", st.compare.theta, "global-context weight");
  compare->add_option("--n", st.compare.n_steps, "number of new nodes");
  compare->add_option("--seeds", st.compare.seeds, "comma list of shared seeds")
      ->delimiter(',')
      ->required();
  compare->add_option("--jobs", st.compare.jobs, "concurrent runs");
  compare->add_option("--tolerance", st.compare.analysis.spectral.tolerance,
                      "relative eigenvalue tolerance");
  compare->add_option("--bootstrap", st.compare.analysis.bootstrap,
                      "bootstrap replicates per run (0 = skip)");
  compare->add_option("--out", st.compare_out,
                      "report output path (default: stdout)");
  compare->callback([&] {
    const auto json = cdpam::cmd_compare(st.compare);
    if (st.compare_out.empty())
      std::cout << json.dump(2) << "\n";
    else
      cdpam::detail::write_text_file(st.compare_out, json.dump(2) + "\n");
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
