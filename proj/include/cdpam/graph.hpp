#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdpam/errors.hpp"

namespace cdpam {

// Undirected simple graph, append-only. Node ids are arrival order: the
// initial nodes get 0..m0-1 and every attach() appends one id. Neighbor
// lists stay sorted (new ids are always the largest so far), which keeps
// edge queries logarithmic and edge-list output canonical.
//
// After construction a Graph is immutable in practice and safe to read from
// many threads; mutation is single-owner.
class Graph {
 public:
  Graph() = default;

  static Graph complete(int n) {
    if (n < 1) throw invalid_parameter("complete graph needs n >= 1");
    Graph g;
    g.adj_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      g.adj_[i].reserve(static_cast<std::size_t>(n) - 1);
      for (int j = 0; j < n; ++j)
        if (j != i) g.adj_[i].push_back(j);
    }
    g.edges_ = static_cast<std::int64_t>(n) * (n - 1) / 2;
    return g;
  }

  /// Adopts pre-sorted adjacency lists (e.g. from an edge-list file) and
  /// validates every invariant before returning.
  static Graph from_sorted_adjacency(std::vector<std::vector<int>> adj) {
    Graph g;
    g.adj_ = std::move(adj);
    std::int64_t degree_sum = 0;
    for (const auto& a : g.adj_) degree_sum += static_cast<std::int64_t>(a.size());
    g.edges_ = degree_sum / 2;
    g.check_invariants();
    return g;
  }

  int node_count() const { return static_cast<int>(adj_.size()); }
  std::int64_t edge_count() const { return edges_; }

  int degree(int i) const { return static_cast<int>(adj_[i].size()); }

  std::span<const int> neighbors(int i) const {
    return {adj_[i].data(), adj_[i].size()};
  }

  bool has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= node_count() || v >= node_count()) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  double mean_degree() const {
    if (node_count() == 0) throw invalid_parameter("mean degree of empty graph");
    return 2.0 * static_cast<double>(edges_) / node_count();
  }

  /// Appends a new node with one edge to each target; returns the new id.
  int attach(std::span<const int> targets) {
    if (targets.empty()) throw invalid_parameter("attach needs >= 1 target");
    const int id = node_count();
    std::vector<int> sorted(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (sorted[k] < 0 || sorted[k] >= id)
        throw invalid_parameter("attach target " + std::to_string(sorted[k]) +
                                " out of range");
      if (k > 0 && sorted[k] == sorted[k - 1])
        throw invalid_parameter("duplicate attach target " +
                                std::to_string(sorted[k]));
    }
    adj_.push_back(std::move(sorted));
    for (int t : adj_.back()) adj_[t].push_back(id);  // id > t keeps order
    edges_ += static_cast<std::int64_t>(adj_.back().size());
    return id;
  }

  /// Full validation walk: symmetry, sortedness, no loops/duplicates,
  /// degree-sum identity. O(E log d).
  void check_invariants() const {
    std::int64_t degree_sum = 0;
    for (int u = 0; u < node_count(); ++u) {
      const auto& a = adj_[u];
      degree_sum += static_cast<std::int64_t>(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] < 0 || a[k] >= node_count())
          throw std::logic_error("neighbor id out of range at node " +
                                 std::to_string(u));
        if (a[k] == u) throw std::logic_error("self loop at " + std::to_string(u));
        if (k > 0 && a[k] <= a[k - 1])
          throw std::logic_error("adjacency of " + std::to_string(u) +
                                 " not strictly sorted");
        if (!has_edge(a[k], u))
          throw std::logic_error("asymmetric edge " + std::to_string(u) + "-" +
                                 std::to_string(a[k]));
      }
    }
    if (degree_sum != 2 * edges_) throw std::logic_error("degree sum mismatch");
  }

 private:
  std::vector<std::vector<int>> adj_;
  std::int64_t edges_ = 0;
};

// Edge-list text format: one edge per line, "u v" with u < v, pairs in
// ascending (u, v) order, 0-indexed decimal ids, newline-terminated, no
// header.

inline void write_edge_list(const Graph& g, std::ostream& out) {
  for (int u = 0; u < g.node_count(); ++u)
    for (int v : g.neighbors(u))
      if (v > u) out << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  std::string line;
  long lineno = 0;
  int max_id = -1;
  std::pair<int, int> prev{-1, -1};
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) throw parse_error(lineno, "empty line");
    std::size_t pos = 0;
    auto parse_id = [&](const char* what) {
      if (pos >= line.size() || line[pos] < '0' || line[pos] > '9')
        throw parse_error(lineno, std::string("expected ") + what);
      long value = 0;
      while (pos < line.size() && line[pos] >= '0' && line[pos] <= '9') {
        value = value * 10 + (line[pos] - '0');
        if (value > 2000000000L) throw parse_error(lineno, "node id too large");
        ++pos;
      }
      return static_cast<int>(value);
    };
    const int u = parse_id("first node id");
    if (pos >= line.size() || line[pos] != ' ')
      throw parse_error(lineno, "expected single space between ids");
    ++pos;
    const int v = parse_id("second node id");
    if (pos != line.size()) throw parse_error(lineno, "trailing characters");
    if (u >= v) throw parse_error(lineno, "edge must satisfy u < v");
    if (std::pair{u, v} <= prev)
      throw parse_error(lineno, "edges not in ascending order");
    prev = {u, v};
    edges.emplace_back(u, v);
    max_id = std::max(max_id, v);
  }
  if (edges.empty()) throw parse_error(lineno + 1, "no edges in input");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(max_id) + 1);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  try {
    return Graph::from_sorted_adjacency(std::move(adj));
  } catch (const std::logic_error& e) {
    throw parse_error(lineno, std::string("invalid graph: ") + e.what());
  }
}

}  // namespace cdpam
