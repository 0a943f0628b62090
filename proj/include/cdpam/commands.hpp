#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cdpam/generator.hpp"
#include "cdpam/graph.hpp"
#include "cdpam/report.hpp"
#include "cdpam/textfmt.hpp"
#include "cdpam/theory.hpp"
#include "cdpam/version.hpp"

namespace cdpam {

namespace detail {

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs fn(i) for i in [0, count) on `jobs` workers. Used for independent
// sweep cells; results land in pre-indexed slots, so scheduling never
// affects output bytes. The first exception (if any) is rethrown after all
// workers finish.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(jobs, static_cast<int>(count));
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// generate

struct GenerateConfig {
  ModelParams params;
  std::string model = "cdpam";  // "cdpam" or "ba"
  std::string out_path;
};

inline Graph run_model(const ModelParams& params, const std::string& model) {
  if (model == "cdpam") return generate_cdpam(params);
  if (model == "ba") return generate_ba(params);
  throw invalid_parameter("unknown model '" + model + "'");
}

inline nlohmann::ordered_json make_manifest(const GenerateConfig& config,
                                            const Graph& g) {
  nlohmann::ordered_json m;
  m["tool"] = "cdpam";
  m["version"] = kVersion;
  m["model"] = config.model;
  m["m0"] = config.params.m0;
  m["m"] = config.params.m;
  m["beta"] = config.params.beta;
  m["theta"] = config.params.theta;
  m["n_steps"] = config.params.n_steps;
  m["seed"] = config.params.seed;
  m["nodes"] = g.node_count();
  m["edges"] = g.edge_count();
  return m;
}

inline GenerateConfig config_from_manifest(const std::string& manifest_path) {
  const auto m = nlohmann::json::parse(detail::slurp_file(manifest_path));
  GenerateConfig config;
  config.model = m.at("model").get<std::string>();
  config.params.m0 = m.at("m0").get<int>();
  config.params.m = m.at("m").get<int>();
  config.params.beta = m.at("beta").get<double>();
  config.params.theta = m.at("theta").get<double>();
  config.params.n_steps = m.at("n_steps").get<int>();
  config.params.seed = m.at("seed").get<std::uint64_t>();
  return config;
}

/// Writes the canonical edge list to out_path and the run manifest next to
/// it (out_path + ".manifest.json"). Returns the generated graph.
inline Graph cmd_generate(const GenerateConfig& config) {
  const Graph g = run_model(config.params, config.model);
  std::ostringstream edges;
  write_edge_list(g, edges);
  detail::write_text_file(config.out_path, edges.str());
  detail::write_text_file(config.out_path + ".manifest.json",
                          make_manifest(config, g).dump(2) + "\n");
  return g;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeConfig {
  std::string input_path;
  std::string out_path;  // empty writes to the returned value only
  AnalyzeOptions opts;
};

inline nlohmann::ordered_json cmd_analyze(const AnalyzeConfig& config) {
  std::ifstream in(config.input_path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + config.input_path);
  const Graph g = read_edge_list(in);
  const auto json = analysis_to_json(analyze_graph(g, config.opts));
  if (!config.out_path.empty())
    detail::write_text_file(config.out_path, json.dump(2) + "\n");
  return json;
}

// ---------------------------------------------------------------------------
// theory

struct TheoryConfig {
  int m = 5;
  double theta = 0.5;
  std::vector<double> beta_grid;
  std::vector<std::uint64_t> n_grid;  // expected-diameter rows
  std::vector<double> k_grid;         // degree-density rows
  std::vector<double> t_grid;         // degree-trajectory rows
  double t_i = 1.0;
  double r = kEulerGamma;
};

inline constexpr const char* kTheoryCsvHeader =
    "kind,beta,theta,m,gamma,c,K,n,H_n,expected_diameter,k,degree_density,"
    "t,t_i,expected_degree,error\n";

/// Tabulates gamma/c/K per beta plus the requested diameter, density and
/// trajectory grids. Domain errors are surfaced per row in the last column.
inline std::string cmd_theory_csv(const TheoryConfig& config) {
  std::string csv = kTheoryCsvHeader;
  for (double beta : config.beta_grid) {
    const auto p = TheoryParams::make(config.m, beta, config.theta, config.r);
    const std::string prefix = "," + format_double(beta) + "," +
                               format_double(config.theta) + "," +
                               format_int(config.m) + "," +
                               format_double(p.gamma) + "," +
                               format_double(p.c) + "," + format_double(p.K);
    csv += "params" + prefix + ",,,,,,,,,\n";
    for (std::uint64_t n : config.n_grid) {
      std::string row = "diameter" + prefix + "," +
                        format_int(static_cast<std::int64_t>(n)) + ",";
      try {
        const double d = expected_diameter(n, p);
        row += format_double(harmonic(n)) + "," + format_double(d) + ",,,,,,";
      } catch (const std::exception& e) {
        row += ",,,,,,," + csv_escape(e.what());
      }
      csv += row + "\n";
    }
    for (double k : config.k_grid) {
      std::string row = "density" + prefix + ",,,," + format_double(k) + ",";
      try {
        row += format_double(degree_density(k, p)) + ",,,,";
      } catch (const std::exception& e) {
        row += ",,,," + csv_escape(e.what());
      }
      csv += row + "\n";
    }
    for (double t : config.t_grid) {
      std::string row = "trajectory" + prefix + ",,,,,," + format_double(t) +
                        "," + format_double(config.t_i) + ",";
      try {
        row += format_double(expected_degree(t, config.t_i, p)) + ",";
      } catch (const std::exception& e) {
        row += "," + csv_escape(e.what());
      }
      csv += row + "\n";
    }
  }
  return csv;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepConfig {
  int m0 = 7;
  int m = 5;
  double theta = 0.5;
  std::vector<double> beta_grid;
  std::vector<int> n_grid;            // growth steps per run
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> figures{"metrics", "cc-vs-beta", "diameter"};
  std::string out_dir;
  int jobs = 1;
  AnalyzeOptions analysis;
  double theory_r = kEulerGamma;
};

inline constexpr const char* kMetricsCsvHeader =
    "beta,theta,n,seed,model,nodes,edges,clustering,assortativity,triangles,"
    "lambda2,spectral_radius,diameter,diameter_is_estimate,gamma_hat,x_min,"
    "ks,p_value,error\n";

inline constexpr const char* kCcVsBetaCsvHeader = "log_beta,mean_cc,std_cc\n";

inline constexpr const char* kDiameterCsvHeader =
    "beta,theta,n,seed,ln_n,bfs_diameter,diameter_is_estimate,"
    "theory_diameter,error\n";

inline constexpr const char* kDegreeDistCsvHeader =
    "beta,theta,n,seed,degree,count,ccdf,error\n";

namespace detail {

struct SweepCell {
  double beta;
  int n_steps;
  std::uint64_t seed;
  std::string model;
};

inline std::string metrics_row(const SweepConfig& config, const SweepCell& cell) {
  std::string row = format_double(cell.beta) + "," +
                    format_double(config.theta) + "," + format_int(cell.n_steps) +
                    "," + format_int(static_cast<std::int64_t>(cell.seed)) + "," +
                    cell.model + ",";
  try {
    const ModelParams params{config.m0, config.m, cell.beta, config.theta,
                             cell.n_steps, cell.seed};
    AnalyzeOptions opts = config.analysis;
    opts.seed = SplitMix64::derive(cell.seed, 0xb007);
    const GraphAnalysis a = analyze_graph(run_model(params, cell.model), opts);
    row += format_int(a.nodes) + "," + format_int(a.edges) + "," +
           format_double(a.clustering) + "," +
           (a.assortativity ? format_double(*a.assortativity) : "") + "," +
           format_int(a.triangles) + "," + format_double(a.lambda2) + "," +
           format_double(a.spectral_radius) + "," +
           (a.diameter ? format_int(*a.diameter) : "") + "," +
           (a.diameter_is_estimate ? "1" : "0") + ",";
    if (a.fit) {
      row += format_double(a.fit->gamma_hat) + "," + format_int(a.fit->x_min) +
             "," + format_double(a.fit->ks_distance) + ",";
    } else {
      row += ",,,";
    }
    row += (a.p_value ? format_double(*a.p_value) : "") + ",";
  } catch (const std::exception& e) {
    row += ",,,,,,,,,,,,," + csv_escape(e.what());
  }
  return row + "\n";
}

inline std::string diameter_row(const SweepConfig& config, const SweepCell& cell) {
  std::string row = format_double(cell.beta) + "," +
                    format_double(config.theta) + "," + format_int(cell.n_steps) +
                    "," + format_int(static_cast<std::int64_t>(cell.seed)) + ",";
  try {
    const ModelParams params{config.m0, config.m, cell.beta, config.theta,
                             cell.n_steps, cell.seed};
    const Graph g = generate_cdpam(params);
    const auto d = bfs_diameter(g, config.analysis.exact_diameter_cutoff);
    const auto p = TheoryParams::make(config.m, cell.beta, config.theta,
                                      config.theory_r);
    row += format_double(std::log(static_cast<double>(g.node_count()))) + "," +
           (d.hops ? format_int(*d.hops) : "") + "," +
           (d.is_estimate ? "1" : "0") + "," +
           format_double(expected_diameter(
               static_cast<std::uint64_t>(g.node_count()), p)) +
           ",";
  } catch (const std::exception& e) {
    row += ",,,," + csv_escape(e.what());
  }
  return row + "\n";
}

// clustering only; value empty on failure
inline std::pair<std::string, std::optional<double>> cc_cell(
    const SweepConfig& config, double beta, int n_steps, std::uint64_t seed) {
  try {
    const ModelParams params{config.m0, config.m, beta, config.theta, n_steps,
                             seed};
    return {"", global_clustering(generate_cdpam(params))};
  } catch (const std::exception& e) {
    return {e.what(), std::nullopt};
  }
}

// raw degree histogram plus the empirical CCDF P(K >= degree); binning is
// left to the plotting layer
inline std::string degree_dist_rows(const SweepConfig& config,
                                    const SweepCell& cell) {
  const std::string prefix =
      format_double(cell.beta) + "," + format_double(config.theta) + "," +
      format_int(cell.n_steps) + "," +
      format_int(static_cast<std::int64_t>(cell.seed)) + ",";
  try {
    const ModelParams params{config.m0, config.m, cell.beta, config.theta,
                             cell.n_steps, cell.seed};
    const Graph g = generate_cdpam(params);
    const auto hist = degree_histogram(g);
    std::string rows;
    std::int64_t at_least = g.node_count();
    for (const auto& [degree, count] : hist) {
      rows += prefix + format_int(degree) + "," + format_int(count) + "," +
              format_double(static_cast<double>(at_least) / g.node_count()) +
              ",\n";
      at_least -= count;
    }
    return rows;
  } catch (const std::exception& e) {
    return prefix + ",,," + csv_escape(e.what()) + "\n";
  }
}

}  // namespace detail

/// Runs the requested figure sweeps and writes one CSV per figure into
/// out_dir. Cells run concurrently up to `jobs`; row assembly is indexed,
/// so concurrency never changes the bytes. Individual cell failures land in
/// the row's error column and the sweep continues.
inline void cmd_sweep(const SweepConfig& config_in) {
  if (config_in.beta_grid.empty()) throw invalid_parameter("empty beta grid");
  if (config_in.n_grid.empty()) throw invalid_parameter("empty n grid");
  if (config_in.seeds.empty()) throw invalid_parameter("empty seed list");
  // rows are contractually sorted by (beta, n, seed)
  SweepConfig config = config_in;
  std::sort(config.beta_grid.begin(), config.beta_grid.end());
  std::sort(config.n_grid.begin(), config.n_grid.end());
  std::sort(config.seeds.begin(), config.seeds.end());
  std::filesystem::create_directories(config.out_dir);
  const auto want = [&](const char* name) {
    for (const auto& f : config.figures)
      if (f == name) return true;
    return false;
  };

  if (want("metrics")) {
    std::vector<detail::SweepCell> cells;
    for (double beta : config.beta_grid)
      for (int n : config.n_grid)
        for (std::uint64_t seed : config.seeds)
          for (const char* model : {"cdpam", "ba"})
            cells.push_back({beta, n, seed, model});
    std::vector<std::string> rows(cells.size());
    detail::parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
      rows[i] = detail::metrics_row(config, cells[i]);
    });
    std::string csv = kMetricsCsvHeader;
    for (const auto& r : rows) csv += r;
    detail::write_text_file(config.out_dir + "/metrics.csv", csv);
  }

  if (want("cc-vs-beta")) {
    // fixed size: the largest requested n
    const int n_steps = *std::max_element(config.n_grid.begin(), config.n_grid.end());
    std::vector<std::pair<double, std::uint64_t>> cells;
    for (double beta : config.beta_grid)
      for (std::uint64_t seed : config.seeds) cells.emplace_back(beta, seed);
    std::vector<std::optional<double>> cc(cells.size());
    detail::parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
      cc[i] = detail::cc_cell(config, cells[i].first, n_steps, cells[i].second)
                  .second;
    });
    std::string csv = kCcVsBetaCsvHeader;
    std::size_t at = 0;
    for (double beta : config.beta_grid) {
      double sum = 0.0, sum_sq = 0.0;
      int count = 0;
      for (std::size_t s = 0; s < config.seeds.size(); ++s, ++at) {
        if (cc[at].has_value()) {
          sum += *cc[at];
          sum_sq += *cc[at] * *cc[at];
          ++count;
        }
      }
      if (count == 0) continue;
      const double mean = sum / count;
      const double var =
          count > 1 ? std::max(0.0, (sum_sq - sum * mean) / (count - 1)) : 0.0;
      csv += format_double(std::log10(beta)) + "," + format_double(mean) + "," +
             format_double(std::sqrt(var)) + "\n";
    }
    detail::write_text_file(config.out_dir + "/cc_vs_beta.csv", csv);
  }

  if (want("diameter")) {
    std::vector<detail::SweepCell> cells;
    for (double beta : config.beta_grid)
      for (int n : config.n_grid)
        for (std::uint64_t seed : config.seeds)
          cells.push_back({beta, n, seed, "cdpam"});
    std::vector<std::string> rows(cells.size());
    detail::parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
      rows[i] = detail::diameter_row(config, cells[i]);
    });
    std::string csv = kDiameterCsvHeader;
    for (const auto& r : rows) csv += r;
    detail::write_text_file(config.out_dir + "/diameter.csv", csv);
  }

  if (want("degree-dist")) {
    std::vector<detail::SweepCell> cells;
    for (double beta : config.beta_grid)
      for (int n : config.n_grid)
        for (std::uint64_t seed : config.seeds)
          cells.push_back({beta, n, seed, "cdpam"});
    std::vector<std::string> rows(cells.size());
    detail::parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
      rows[i] = detail::degree_dist_rows(config, cells[i]);
    });
    std::string csv = kDegreeDistCsvHeader;
    for (const auto& r : rows) csv += r;
    detail::write_text_file(config.out_dir + "/degree_dist.csv", csv);
  }
}

// ---------------------------------------------------------------------------
// compare

struct CompareConfig {
  int m0 = 7;
  int m = 5;
  double beta = 0.6;
  double theta = 0.5;
  int n_steps = 1000;
  std::vector<std::uint64_t> seeds;
  AnalyzeOptions analysis;
  int jobs = 1;
};

namespace detail {

struct MeanAccumulator {
  double sum = 0.0;
  int count = 0;
  void add(std::optional<double> v) {
    if (v.has_value()) {
      sum += *v;
      ++count;
    }
  }
  std::optional<double> mean() const {
    if (count == 0) return std::nullopt;
    return sum / count;
  }
};

}  // namespace detail

/// Runs CDPAM and BA on identical seeds and reports per-seed metrics, per-
/// model means, and a delta block (CDPAM minus BA, averaged over seeds).
inline nlohmann::ordered_json cmd_compare(const CompareConfig& config) {
  if (config.seeds.empty()) throw invalid_parameter("empty seed list");
  const std::vector<std::string> models{"cdpam", "ba"};
  std::vector<std::vector<GraphAnalysis>> results(
      2, std::vector<GraphAnalysis>(config.seeds.size()));
  std::vector<std::pair<int, std::size_t>> cells;
  for (int m = 0; m < 2; ++m)
    for (std::size_t s = 0; s < config.seeds.size(); ++s) cells.emplace_back(m, s);
  detail::parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
    const auto [m, s] = cells[i];
    const ModelParams params{config.m0, config.m, config.beta, config.theta,
                             config.n_steps, config.seeds[s]};
    AnalyzeOptions opts = config.analysis;
    opts.seed = SplitMix64::derive(config.seeds[s], 0xb007);
    results[m][s] = analyze_graph(run_model(params, models[m]), opts);
  });

  const std::vector<std::string> delta_keys{
      "clustering", "assortativity", "triangles",  "lambda2",
      "spectral_radius", "diameter", "gamma_hat"};
  auto metric_of = [](const GraphAnalysis& a,
                      const std::string& key) -> std::optional<double> {
    if (key == "clustering") return a.clustering;
    if (key == "assortativity") return a.assortativity;
    if (key == "triangles") return static_cast<double>(a.triangles);
    if (key == "lambda2") return a.lambda2;
    if (key == "spectral_radius") return a.spectral_radius;
    if (key == "diameter")
      return a.diameter ? std::optional<double>(*a.diameter) : std::nullopt;
    if (key == "gamma_hat")
      return a.fit ? std::optional<double>(a.fit->gamma_hat) : std::nullopt;
    return std::nullopt;
  };

  nlohmann::ordered_json out;
  out["params"] = {{"m0", config.m0},       {"m", config.m},
                   {"beta", config.beta},   {"theta", config.theta},
                   {"n_steps", config.n_steps}, {"seeds", config.seeds},
                   {"version", kVersion}};
  for (int m = 0; m < 2; ++m) {
    nlohmann::ordered_json per_seed = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < config.seeds.size(); ++s) {
      auto j = analysis_to_json(results[m][s]);
      j["seed"] = config.seeds[s];
      per_seed.push_back(std::move(j));
    }
    nlohmann::ordered_json mean;
    for (const auto& key : delta_keys) {
      detail::MeanAccumulator acc;
      for (const auto& a : results[m]) acc.add(metric_of(a, key));
      if (const auto v = acc.mean(); v.has_value())
        mean[key] = *v;
      else
        mean[key] = nullptr;
    }
    out[models[m]] = {{"per_seed", std::move(per_seed)}, {"mean", std::move(mean)}};
  }
  nlohmann::ordered_json delta;
  for (const auto& key : delta_keys) {
    detail::MeanAccumulator cd, ba;
    for (std::size_t s = 0; s < config.seeds.size(); ++s) {
      const auto a = metric_of(results[0][s], key);
      const auto b = metric_of(results[1][s], key);
      if (a.has_value() && b.has_value()) {
        cd.add(a);
        ba.add(b);
      }
    }
    const auto ma = cd.mean(), mb = ba.mean();
    if (ma.has_value() && mb.has_value())
      delta[key] = *ma - *mb;
    else
      delta[key] = nullptr;
  }
  out["delta"] = std::move(delta);
  return out;
}

}  // namespace cdpam
