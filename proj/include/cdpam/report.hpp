#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdpam/graph.hpp"
#include "cdpam/metrics.hpp"
#include "cdpam/powerlaw.hpp"
#include "cdpam/spectral.hpp"

namespace cdpam {

struct AnalyzeOptions {
  SpectralOptions spectral{};
  int exact_diameter_cutoff = 20000;
  int bootstrap = 0;  // 0 means no p-value
  std::uint64_t seed = 0;
};

// Full per-graph measurement bundle. Undefined values stay empty and carry
// a reason string instead.
struct GraphAnalysis {
  int nodes = 0;
  std::int64_t edges = 0;
  double clustering = 0.0;
  std::optional<double> assortativity;
  std::string assortativity_reason;
  std::int64_t triangles = 0;
  std::optional<int> diameter;
  bool diameter_is_estimate = false;
  std::string diameter_reason;
  double lambda2 = 0.0;
  double spectral_radius = 0.0;
  std::optional<PowerLawFit> fit;
  std::string fit_reason;
  std::optional<double> p_value;
  std::string p_value_reason;
};

inline GraphAnalysis analyze_graph(const Graph& g, const AnalyzeOptions& opts) {
  GraphAnalysis out;
  out.nodes = g.node_count();
  out.edges = g.edge_count();
  out.clustering = global_clustering(g);
  try {
    out.assortativity = assortativity(g);
  } catch (const undefined_assortativity& e) {
    out.assortativity_reason = e.what();
  } catch (const invalid_parameter& e) {
    out.assortativity_reason = e.what();
  }
  out.triangles = triangle_count(g);
  const auto diam = bfs_diameter(g, opts.exact_diameter_cutoff);
  out.diameter = diam.hops;
  out.diameter_is_estimate = diam.is_estimate;
  if (!diam.hops.has_value()) out.diameter_reason = "graph is disconnected";
  out.lambda2 = algebraic_connectivity(g, opts.spectral);
  out.spectral_radius = spectral_radius(g, opts.spectral);
  std::vector<int> degrees(static_cast<std::size_t>(g.node_count()));
  for (int i = 0; i < g.node_count(); ++i) degrees[i] = g.degree(i);
  try {
    out.fit = fit_powerlaw(degrees);
  } catch (const unfittable_data& e) {
    out.fit_reason = e.what();
  }
  if (!out.fit.has_value()) {
    out.p_value_reason = "no power-law fit";
  } else if (opts.bootstrap <= 0) {
    out.p_value_reason = "not requested";
  } else {
    out.p_value = ks_pvalue(degrees, *out.fit, opts.bootstrap, opts.seed);
  }
  return out;
}

/// Flat report object with fixed key names; undefined metrics are null with
/// a sibling "<key>_reason" string.
inline nlohmann::ordered_json analysis_to_json(const GraphAnalysis& a) {
  nlohmann::ordered_json j;
  j["clustering"] = a.clustering;
  if (a.assortativity.has_value()) {
    j["assortativity"] = *a.assortativity;
  } else {
    j["assortativity"] = nullptr;
    j["assortativity_reason"] = a.assortativity_reason;
  }
  j["triangles"] = a.triangles;
  if (a.diameter.has_value()) {
    j["diameter"] = *a.diameter;
  } else {
    j["diameter"] = nullptr;
    j["diameter_reason"] = a.diameter_reason;
  }
  j["diameter_is_estimate"] = a.diameter_is_estimate;
  j["lambda2"] = a.lambda2;
  j["spectral_radius"] = a.spectral_radius;
  if (a.fit.has_value()) {
    j["gamma_hat"] = a.fit->gamma_hat;
    j["x_min"] = a.fit->x_min;
    j["ks"] = a.fit->ks_distance;
  } else {
    j["gamma_hat"] = nullptr;
    j["gamma_hat_reason"] = a.fit_reason;
    j["x_min"] = nullptr;
    j["ks"] = nullptr;
  }
  if (a.p_value.has_value()) {
    j["p_value"] = *a.p_value;
  } else {
    j["p_value"] = nullptr;
    j["p_value_reason"] = a.p_value_reason;
  }
  j["nodes"] = a.nodes;
  j["edges"] = a.edges;
  return j;
}

}  // namespace cdpam
