#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cdpam/errors.hpp"
#include "cdpam/graph.hpp"
#include "cdpam/metrics.hpp"
#include "cdpam/rng.hpp"

namespace cdpam {

struct SpectralOptions {
  double tolerance = 1e-8;     // relative eigenvalue tolerance
  int max_iterations = 10000;  // operator applications for iterative paths
  int dense_cutoff = 2000;     // full eigendecomposition at or below this

  void validate() const {
    if (!(tolerance > 0.0) || tolerance > 1e-2)
      throw invalid_parameter("tolerance must be in (0, 1e-2]");
    if (max_iterations < 1) throw invalid_parameter("max_iterations >= 1");
    if (dense_cutoff < 2) throw invalid_parameter("dense_cutoff >= 2");
  }
};

namespace detail {

inline bool is_connected(const Graph& g) {
  std::vector<int> dist, queue_buf;
  int visited = 0;
  bfs_eccentricity(g, 0, dist, queue_buf, nullptr, &visited);
  return visited == g.node_count();
}

inline Eigen::MatrixXd dense_adjacency(const Graph& g) {
  const int n = g.node_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u)) a(u, v) = 1.0;
  return a;
}

// y = (sigma*I - L) x, i.e. y_i = (sigma - deg_i) x_i + sum_{j~i} x_j.
inline void shifted_laplacian_apply(const Graph& g, double sigma,
                                    const std::vector<double>& x,
                                    std::vector<double>& y) {
  const int n = g.node_count();
  for (int i = 0; i < n; ++i) {
    double acc = (sigma - g.degree(i)) * x[i];
    for (int j : g.neighbors(i)) acc += x[j];
    y[i] = acc;
  }
}

// Number of eigenvalues of the symmetric tridiagonal (alpha, beta) that are
// smaller than x, via the Sturm/LDL^T sign count.
inline int sturm_count_less(const std::vector<double>& alpha,
                            const std::vector<double>& beta_sq, double x) {
  int count = 0;
  double d = alpha[0] - x;
  if (d < 0.0) ++count;
  for (std::size_t j = 1; j < alpha.size(); ++j) {
    if (d == 0.0) d = -1e-300;
    d = alpha[j] - x - beta_sq[j - 1] / d;
    if (d < 0.0) ++count;
  }
  return count;
}

// Largest eigenvalue of the symmetric tridiagonal by bisection.
inline double tridiag_largest(const std::vector<double>& alpha,
                              const std::vector<double>& beta) {
  const int k = static_cast<int>(alpha.size());
  std::vector<double> beta_sq(beta.size());
  for (std::size_t j = 0; j < beta.size(); ++j) beta_sq[j] = beta[j] * beta[j];
  double lo = alpha[0], hi = alpha[0];
  for (int j = 0; j < k; ++j) {
    const double r = (j > 0 ? std::abs(beta[j - 1]) : 0.0) +
                     (j + 1 < k ? std::abs(beta[j]) : 0.0);
    lo = std::min(lo, alpha[j] - r);
    hi = std::max(hi, alpha[j] + r);
  }
  const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
  while (hi - lo > 1e-14 * scale) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count_less(alpha, beta_sq, mid) >= k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

struct RitzPair {
  double value;
  Eigen::VectorXd vector;  // in the Lanczos basis
};

inline RitzPair tridiag_top_pair(const std::vector<double>& alpha,
                                 const std::vector<double>& beta) {
  const int k = static_cast<int>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
  for (int j = 0; j < k; ++j) {
    t(j, j) = alpha[j];
    if (j + 1 < k) t(j, j + 1) = t(j + 1, j) = beta[j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  return {es.eigenvalues()(k - 1), es.eigenvectors().col(k - 1)};
}

// Lanczos with full reorthogonalization on sigma*I - L, restricted to the
// complement of the all-ones vector; the top Ritz value there is
// sigma - lambda_2. Inverse-free; restarts from the best Ritz vector when
// the basis hits max_basis.
inline double lambda2_lanczos(const Graph& g, const SpectralOptions& opts) {
  const int n = g.node_count();
  double sigma = 0.0;  // Anderson-Morley: lambda_max(L) <= max(deg_u + deg_v)
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u))
      sigma = std::max(sigma, static_cast<double>(g.degree(u) + g.degree(v)));
  sigma += 1.0;

  const int max_basis = std::min(n - 1, 500);
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> q(n), w(n);

  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  auto project_out_ones = [&](std::vector<double>& x) {
    double dot = 0.0;
    for (double v : x) dot += v * inv_sqrt_n;
    for (double& v : x) v -= dot * inv_sqrt_n;
  };
  auto reorthogonalize = [&](std::vector<double>& x) {
    for (int pass = 0; pass < 2; ++pass) {
      project_out_ones(x);
      for (const auto& b : basis) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += x[i] * b[i];
        for (int i = 0; i < n; ++i) x[i] -= dot * b[i];
      }
    }
  };
  auto norm_of = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  };

  SplitMix64 start_rng(0x1a2b3c4d5e6f7788ULL);
  for (int i = 0; i < n; ++i) q[i] = start_rng.next_double() - 0.5;
  project_out_ones(q);
  {
    const double nm = norm_of(q);
    for (double& v : q) v /= nm;
  }

  int used_iterations = 0;
  double best_mu = 0.0;
  double last_residual = sigma;
  int cooldown = 0;
  while (used_iterations < opts.max_iterations) {
    basis.push_back(q);
    shifted_laplacian_apply(g, sigma, q, w);
    ++used_iterations;
    const double a = [&] {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += q[i] * w[i];
      return dot;
    }();
    alpha.push_back(a);
    reorthogonalize(w);
    const double b = norm_of(w);

    const double mu = tridiag_largest(alpha, beta);
    best_mu = std::max(best_mu, mu);
    const double target = std::max(sigma - mu, sigma * 1e-14);

    bool confirm = false;
    if (b <= opts.tolerance * target) confirm = true;  // invariant subspace
    if (cooldown > 0) --cooldown;
    if (!confirm && alpha.size() >= 10 && cooldown == 0) {
      const std::vector<double> alpha_prefix(alpha.begin(), alpha.end() - 5);
      const std::vector<double> beta_prefix(beta.begin(),
                                            beta.begin() + (alpha.size() - 6));
      const double prev = tridiag_largest(alpha_prefix, beta_prefix);
      if (std::abs(mu - prev) <= 0.05 * opts.tolerance * target) confirm = true;
    }
    const bool basis_full = static_cast<int>(alpha.size()) >= max_basis;
    if (confirm || basis_full) {
      const RitzPair top = tridiag_top_pair(alpha, beta);
      const double residual = b * std::abs(top.vector(alpha.size() - 1));
      last_residual = residual;
      const double top_target = std::max(sigma - top.value, sigma * 1e-14);
      if (residual <= opts.tolerance * top_target || b <= 1e-13 * sigma)
        return std::max(0.0, sigma - top.value);
      if (basis_full) {  // restart from the Ritz vector
        std::vector<double> y(n, 0.0);
        for (std::size_t j = 0; j < alpha.size(); ++j)
          for (int i = 0; i < n; ++i) y[i] += top.vector(j) * basis[j][i];
        basis.clear();
        alpha.clear();
        beta.clear();
        project_out_ones(y);
        const double nm = norm_of(y);
        for (int i = 0; i < n; ++i) q[i] = y[i] / nm;
        cooldown = 10;
        continue;
      }
      cooldown = 10;
    }
    beta.push_back(b);
    for (int i = 0; i < n; ++i) q[i] = w[i] / b;
  }
  throw no_convergence("algebraic connectivity did not converge",
                       sigma - best_mu, last_residual);
}

// Power iteration for the top adjacency eigenvalue, run on A + I so the
// target is strictly dominant even on bipartite graphs. Starts from the
// normalized degree vector; stops once the Rayleigh quotient's relative
// change stays below tolerance for 5 consecutive iterations.
inline double spectral_radius_power(const Graph& g, const SpectralOptions& opts) {
  const int n = g.node_count();
  std::vector<double> x(n), y(n);
  double nm = 0.0;
  for (int i = 0; i < n; ++i) {
    x[i] = static_cast<double>(g.degree(i));
    nm += x[i] * x[i];
  }
  nm = std::sqrt(nm);
  for (double& v : x) v /= nm;

  double rayleigh = 0.0;
  int stable = 0;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    for (int i = 0; i < n; ++i) {
      double acc = x[i];
      for (int j : g.neighbors(i)) acc += x[j];
      y[i] = acc;
    }
    double dot = 0.0, ynorm = 0.0;
    for (int i = 0; i < n; ++i) {
      dot += x[i] * y[i];
      ynorm += y[i] * y[i];
    }
    ynorm = std::sqrt(ynorm);
    const double r = dot;  // x normalized, so x.y is the Rayleigh quotient
    if (std::abs(r - rayleigh) <= opts.tolerance * std::abs(r))
      ++stable;
    else
      stable = 0;
    rayleigh = r;
    if (stable >= 5) return std::max(0.0, rayleigh - 1.0);
    for (int i = 0; i < n; ++i) x[i] = y[i] / ynorm;
  }
  throw no_convergence("spectral radius did not converge",
                       std::max(0.0, rayleigh - 1.0),
                       opts.tolerance * std::abs(rayleigh));
}

}  // namespace detail

/// Fiedler value: second-smallest eigenvalue of L = D - A. Positive iff the
/// graph is connected; returns 0 for disconnected input. Dense
/// eigendecomposition at or below opts.dense_cutoff nodes, Lanczos above.
inline double algebraic_connectivity(const Graph& g,
                                     const SpectralOptions& opts = {}) {
  opts.validate();
  const int n = g.node_count();
  if (n == 0) throw invalid_parameter("algebraic_connectivity: empty graph");
  if (n == 1) return 0.0;
  if (!detail::is_connected(g)) return 0.0;
  if (n <= opts.dense_cutoff) {
    Eigen::MatrixXd l = -detail::dense_adjacency(g);
    for (int i = 0; i < n; ++i) l(i, i) = static_cast<double>(g.degree(i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l,
                                                      Eigen::EigenvaluesOnly);
    return std::max(0.0, es.eigenvalues()(1));
  }
  return detail::lambda2_lanczos(g, opts);
}

/// Largest adjacency eigenvalue (the maximum modulus, by Perron-Frobenius).
/// Dense at or below opts.dense_cutoff nodes, power iteration above.
inline double spectral_radius(const Graph& g, const SpectralOptions& opts = {}) {
  opts.validate();
  const int n = g.node_count();
  if (n == 0) throw invalid_parameter("spectral_radius: empty graph");
  if (g.edge_count() == 0) return 0.0;
  if (n <= opts.dense_cutoff) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(detail::dense_adjacency(g),
                                                      Eigen::EigenvaluesOnly);
    return std::max(0.0, es.eigenvalues()(n - 1));
  }
  return detail::spectral_radius_power(g, opts);
}

}  // namespace cdpam
