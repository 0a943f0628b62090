#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "cdpam/errors.hpp"
#include "cdpam/graph.hpp"
#include "cdpam/rng.hpp"

namespace cdpam {

namespace detail {

// Triangles through each node, counted once per triangle via the
// degree-ordered orientation: every edge points from the (degree, id)-lower
// endpoint to the higher one, and each triangle has exactly one node with
// two outgoing edges.
inline std::vector<std::int64_t> per_node_triangles(const Graph& g) {
  const int n = g.node_count();
  auto before = [&](int a, int b) {
    return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a < b);
  };
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u))
      if (before(u, v)) out[u].push_back(v);
  for (auto& o : out) std::sort(o.begin(), o.end());
  std::vector<std::int64_t> tri(static_cast<std::size_t>(n), 0);
  for (int u = 0; u < n; ++u) {
    for (int v : out[u]) {
      // sorted intersection of out[u] and out[v]
      auto a = out[u].begin(), ae = out[u].end();
      auto b = out[v].begin(), be = out[v].end();
      while (a != ae && b != be) {
        if (*a < *b)
          ++a;
        else if (*b < *a)
          ++b;
        else {
          ++tri[u];
          ++tri[v];
          ++tri[*a];
          ++a;
          ++b;
        }
      }
    }
  }
  return tri;
}

}  // namespace detail

/// Number of edges among the neighbors of i, over k_i(k_i-1)/2 pairs.
/// Zero by convention when k_i <= 1.
inline double local_clustering(const Graph& g, int i) {
  if (i < 0 || i >= g.node_count())
    throw invalid_parameter("local_clustering: invalid node id");
  const auto nbrs = g.neighbors(i);
  const std::int64_t k = static_cast<std::int64_t>(nbrs.size());
  if (k <= 1) return 0.0;
  std::int64_t links = 0;
  for (int u : nbrs) {
    // count neighbors of u that are also neighbors of i, once per pair
    auto a = nbrs.begin();
    for (int w : g.neighbors(u)) {
      if (w >= u) break;  // pairs (w, u) with w < u
      while (a != nbrs.end() && *a < w) ++a;
      if (a != nbrs.end() && *a == w) ++links;
    }
  }
  return 2.0 * static_cast<double>(links) / (static_cast<double>(k) * (k - 1));
}

/// Mean of local_clustering over all nodes.
inline double global_clustering(const Graph& g) {
  const int n = g.node_count();
  if (n == 0) throw invalid_parameter("global_clustering: empty graph");
  const auto tri = detail::per_node_triangles(g);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(g.degree(i));
    if (k > 1.0) sum += 2.0 * static_cast<double>(tri[i]) / (k * (k - 1.0));
  }
  return sum / n;
}

/// Newman degree-correlation index in [-1, 1]. Throws
/// undefined_assortativity on degree-regular graphs (zero denominator).
inline double assortativity(const Graph& g) {
  if (g.edge_count() < 1) throw invalid_parameter("assortativity needs edges");
  const int n = g.node_count();
  std::int64_t s2 = 0, s3 = 0, se = 0;
  for (int u = 0; u < n; ++u) {
    const std::int64_t k = g.degree(u);
    s2 += k * k;
    s3 += k * k * k;
    for (int v : g.neighbors(u))
      if (v > u) se += k * static_cast<std::int64_t>(g.degree(v));
  }
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  const double numer =
      2.0 * static_cast<double>(se) -
      static_cast<double>(s2) * static_cast<double>(s2) / two_m;
  const double denom =
      static_cast<double>(s3) -
      static_cast<double>(s2) * static_cast<double>(s2) / two_m;
  if (denom == 0.0) throw undefined_assortativity();
  return numer / denom;
}

/// Unordered node triples with all three edges present.
inline std::int64_t triangle_count(const Graph& g) {
  const auto tri = detail::per_node_triangles(g);
  std::int64_t total = 0;
  for (auto t : tri) total += t;
  return total / 3;
}

struct DiameterResult {
  std::optional<int> hops;  // empty means disconnected (infinite)
  bool is_estimate = false;
};

namespace detail {

inline int bfs_eccentricity(const Graph& g, int src, std::vector<int>& dist,
                            std::vector<int>& queue_buf, int* farthest = nullptr,
                            int* visited_count = nullptr) {
  const int n = g.node_count();
  dist.assign(static_cast<std::size_t>(n), -1);
  queue_buf.clear();
  queue_buf.push_back(src);
  dist[src] = 0;
  int ecc = 0, far = src, seen = 1;
  for (std::size_t head = 0; head < queue_buf.size(); ++head) {
    const int u = queue_buf[head];
    for (int v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        if (dist[v] > ecc) {
          ecc = dist[v];
          far = v;
        }
        queue_buf.push_back(v);
        ++seen;
      }
    }
  }
  if (farthest) *farthest = far;
  if (visited_count) *visited_count = seen;
  return ecc;
}

}  // namespace detail

/// Hop diameter. Exact max-over-sources eccentricity up to exact_cutoff
/// nodes; beyond that a lower-bound estimate from iterated double sweeps
/// (max-degree start plus random restarts), flagged is_estimate. Returns an
/// empty hops value for disconnected graphs.
inline DiameterResult bfs_diameter(const Graph& g, int exact_cutoff = 20000,
                                   std::uint64_t restart_seed = 0x9d1a5eed) {
  const int n = g.node_count();
  if (n == 0) throw invalid_parameter("bfs_diameter: empty graph");
  std::vector<int> dist, queue_buf;
  int visited = 0;
  int ecc0 = detail::bfs_eccentricity(g, 0, dist, queue_buf, nullptr, &visited);
  if (visited != n) return {std::nullopt, false};
  if (n <= exact_cutoff) {
    int best = ecc0;
    for (int s = 1; s < n; ++s)
      best = std::max(best, detail::bfs_eccentricity(g, s, dist, queue_buf));
    return {best, false};
  }
  // Double sweep: BFS from a start, then BFS again from the farthest node
  // found; iterate while the eccentricity keeps improving.
  SplitMix64 rng(restart_seed);
  int best = 0;
  auto sweep_from = [&](int start) {
    int far = start;
    int prev = -1;
    int ecc = detail::bfs_eccentricity(g, start, dist, queue_buf, &far);
    while (ecc > prev) {
      prev = ecc;
      ecc = detail::bfs_eccentricity(g, far, dist, queue_buf, &far);
    }
    best = std::max(best, prev);
  };
  int max_deg_node = 0;
  for (int i = 1; i < n; ++i)
    if (g.degree(i) > g.degree(max_deg_node)) max_deg_node = i;
  sweep_from(max_deg_node);
  for (int restart = 0; restart < 5; ++restart)
    sweep_from(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))));
  return {best, true};
}

/// Exact degree multiset; iteration over the map is ascending by degree.
inline std::map<int, std::int64_t> degree_histogram(const Graph& g) {
  std::map<int, std::int64_t> hist;
  for (int i = 0; i < g.node_count(); ++i) ++hist[g.degree(i)];
  return hist;
}

}  // namespace cdpam
