#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cdpam/errors.hpp"
#include "cdpam/graph.hpp"
#include "cdpam/rng.hpp"

namespace cdpam {

// One generation run, fully specified. Note m0 <= 2m+1 is the construction
// discipline that guarantees strictly positive attachment weights (then
// every weight is >= m*(beta-theta)); larger m0 is accepted and any
// nonpositive weight surfaces as degenerate_weights at run time.
struct ModelParams {
  int m0 = 7;
  int m = 5;
  double beta = 1.0;
  double theta = 0.5;
  int n_steps = 0;
  std::uint64_t seed = 0;

  void validate() const {
    if (m0 < 1) throw invalid_parameter("need m0 >= 1");
    if (m < 1 || m > m0) throw invalid_parameter("need 1 <= m <= m0");
    if (!(theta > 0.0) || !(theta < beta))
      throw invalid_parameter("need 0 < theta < beta");
    if (n_steps < 0) throw invalid_parameter("need n_steps >= 0");
  }

  /// BA ignores beta/theta, so only the growth parameters are checked.
  void validate_ba() const {
    if (m0 < 1) throw invalid_parameter("need m0 >= 1");
    if (m < 1 || m > m0) throw invalid_parameter("need 1 <= m <= m0");
    if (n_steps < 0) throw invalid_parameter("need n_steps >= 0");
  }
};

/// Attachment weight of node i: beta*k_i + theta*(k_i - mean degree).
/// Normalizing the result gives the model's attachment probabilities.
/// Throws degenerate_weights (with the node id) if any entry is <= 0.
inline void attachment_weights(const Graph& g, double beta, double theta,
                               std::vector<double>& out) {
  if (g.node_count() == 0) throw invalid_parameter("empty graph");
  if (!(theta > 0.0) || !(theta < beta))
    throw invalid_parameter("need 0 < theta < beta");
  const double mean = g.mean_degree();
  const int n = g.node_count();
  out.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(g.degree(i));
    const double w = beta * k + theta * (k - mean);
    if (!(w > 0.0)) throw degenerate_weights(i, w);
    out[i] = w;
  }
}

inline std::vector<double> attachment_weights(const Graph& g, double beta,
                                              double theta) {
  std::vector<double> out;
  attachment_weights(g, beta, theta, out);
  return out;
}

/// Draws m distinct ids without replacement, weights frozen: inverse-CDF
/// draws on the cumulative weights, redrawing duplicates (equivalent to
/// removing each chosen node and renormalizing). Marginal inclusion
/// probability is monotone in weight; deterministic given the rng state.
inline void sample_targets(std::span<const double> weights, int m,
                           SplitMix64& rng, std::vector<int>& out,
                           std::vector<double>& cumulative) {
  const int n = static_cast<int>(weights.size());
  if (m < 1 || m > n)
    throw invalid_parameter("sample_targets needs 1 <= m <= population");
  cumulative.resize(weights.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(weights[i] > 0.0)) throw degenerate_weights(i, weights[i]);
    total += weights[i];
    cumulative[i] = total;
  }
  out.clear();
  while (static_cast<int>(out.size()) < m) {
    const double x = rng.next_double() * total;
    int lo = 0, hi = n - 1;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (cumulative[mid] > x)
        hi = mid;
      else
        lo = mid + 1;
    }
    bool duplicate = false;
    for (int chosen : out)
      if (chosen == lo) {
        duplicate = true;
        break;
      }
    if (!duplicate) out.push_back(lo);
  }
}

inline std::vector<int> sample_targets(std::span<const double> weights, int m,
                                       SplitMix64& rng) {
  std::vector<int> out;
  std::vector<double> cumulative;
  sample_targets(weights, m, rng, out, cumulative);
  return out;
}

namespace detail {

template <typename WeightFill>
Graph grow(const ModelParams& params, WeightFill&& fill_weights) {
  Graph g = Graph::complete(params.m0);
  SplitMix64 rng(params.seed);
  std::vector<double> weights, cumulative;
  std::vector<int> targets;
  for (int step = 0; step < params.n_steps; ++step) {
    fill_weights(g, weights);
    sample_targets(weights, params.m, rng, targets, cumulative);
    g.attach(targets);
  }
  return g;
}

}  // namespace detail

/// Grows a CDPAM network: K_{m0} start, then n_steps nodes, each wired to m
/// existing nodes drawn by the context-dependent weights. Weights are
/// recomputed from the graph every step. Byte-identical for equal params.
inline Graph generate_cdpam(const ModelParams& params) {
  params.validate();
  return detail::grow(params, [&](const Graph& g, std::vector<double>& w) {
    attachment_weights(g, params.beta, params.theta, w);
  });
}

/// BA baseline: same start, same sampling discipline, weight = degree.
inline Graph generate_ba(const ModelParams& params) {
  params.validate_ba();
  return detail::grow(params, [](const Graph& g, std::vector<double>& w) {
    w.resize(static_cast<std::size_t>(g.node_count()));
    for (int i = 0; i < g.node_count(); ++i)
      w[i] = static_cast<double>(g.degree(i));
  });
}

}  // namespace cdpam
