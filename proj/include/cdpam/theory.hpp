#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "cdpam/errors.hpp"

namespace cdpam {

inline constexpr double kEulerGamma = 0.5772156649015328606;

/// Degree exponent of the model: gamma = 1 + 2*beta/(beta + theta).
/// Strictly increasing in beta, strictly decreasing in theta; the valid
/// domain 0 < theta < beta keeps it inside (2, 3).
inline double gamma_theoretical(double beta, double theta) {
  if (!(theta > 0.0) || !(theta < beta))
    throw invalid_parameter("need 0 < theta < beta");
  return 1.0 + 2.0 * beta / (beta + theta);
}

/// Degree offset c = 2*m*theta/(beta + theta), in (0, m).
inline double c_offset(int m, double beta, double theta) {
  if (m < 1) throw invalid_parameter("need m >= 1");
  if (!(theta > 0.0) || !(theta < beta))
    throw invalid_parameter("need 0 < theta < beta");
  return 2.0 * m * theta / (beta + theta);
}

// Closed-form parameter bundle. K is the general-theta form
// (beta+theta)(m-c)/(2*beta), identical to (m-c)/(gamma-1); the constant r
// in the distance/diameter expressions defaults to Euler-Mascheroni and can
// be overridden.
struct TheoryParams {
  int m = 0;
  double beta = 0.0;
  double theta = 0.0;
  double gamma = 0.0;
  double c = 0.0;
  double K = 0.0;
  double r = kEulerGamma;

  static TheoryParams make(int m, double beta, double theta,
                           double r = kEulerGamma) {
    TheoryParams p;
    p.m = m;
    p.beta = beta;
    p.theta = theta;
    p.gamma = gamma_theoretical(beta, theta);
    p.c = c_offset(m, beta, theta);
    p.K = (beta + theta) * (m - p.c) / (2.0 * beta);
    p.r = r;
    return p;
  }
};

/// Degree trajectory: k_i(t) = (m-c)(t/t_i)^(1/(gamma-1)) + c, with the
/// initial condition k_i(t_i) = m.
inline double expected_degree(double t, double t_i, const TheoryParams& p) {
  if (!(t_i > 0.0) || t < t_i)
    throw invalid_parameter("expected_degree needs t >= t_i > 0");
  return (p.m - p.c) * std::pow(t / t_i, 1.0 / (p.gamma - 1.0)) + p.c;
}

/// Asymptotic degree density (gamma-1)(m-c)^(gamma-1) (k-c)^(-gamma),
/// normalized on k >= m.
inline double degree_density(double k, const TheoryParams& p) {
  if (!(k > p.c)) throw invalid_parameter("degree_density needs k > c");
  return (p.gamma - 1.0) * std::pow(p.m - p.c, p.gamma - 1.0) *
         std::pow(k - p.c, -p.gamma);
}

enum class LinkProbVariant {
  // Keeps the extra m(1-2*theta)/(2*beta*t_j) term; at theta = 0.5 the term
  // vanishes and the two variants coincide.
  as_printed,
  // Drops the extra term, which is what substituting the degree trajectory
  // into the mean-field attachment rate yields.
  derivation_consistent,
};

/// Probability that the node arriving at t_j links to the node from t_i.
inline double link_probability(double t_i, double t_j, const TheoryParams& p,
                               LinkProbVariant variant = LinkProbVariant::as_printed) {
  if (!(t_i > 0.0) || !(t_i < t_j))
    throw invalid_parameter("link_probability needs 0 < t_i < t_j");
  const double inv = 1.0 / (p.gamma - 1.0);
  double value = (p.m - p.c) /
                 ((p.gamma - 1.0) * std::pow(t_i, inv) * std::pow(t_j, 1.0 - inv));
  if (variant == LinkProbVariant::as_printed)
    value += p.m * (1.0 - 2.0 * p.theta) / (2.0 * p.beta * t_j);
  return value;
}

/// n-th harmonic number. Exact compensated sum up to the threshold, the
/// asymptotic expansion beyond it (good to well under 1e-10 there).
inline double harmonic(std::uint64_t n) {
  if (n == 0) throw invalid_parameter("harmonic needs n >= 1");
  constexpr std::uint64_t kExactThreshold = 1000000;
  if (n <= kExactThreshold) {
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t k = n; k >= 1; --k) {  // small terms first
      const double y = 1.0 / static_cast<double>(k) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    return sum;
  }
  const double x = static_cast<double>(n);
  return std::log(x) + kEulerGamma + 1.0 / (2.0 * x) -
         1.0 / (12.0 * x * x) + 1.0 / (120.0 * x * x * x * x);
}

/// Probability of a path of length at most l between the nodes arriving at
/// t_i and t_j in a network of n nodes:
///   1 - exp(-K^l H_n^(l-1) / (t_i^(1/(gamma-1)) t_j^(1-1/(gamma-1)))).
inline double path_probability(double t_i, double t_j, int l, std::uint64_t n,
                               const TheoryParams& p) {
  if (l < 1) throw invalid_parameter("path_probability needs l >= 1");
  if (!(t_i > 0.0) || !(t_i < t_j) || !(t_j <= static_cast<double>(n)))
    throw invalid_parameter("path_probability needs 0 < t_i < t_j <= n");
  const double inv = 1.0 / (p.gamma - 1.0);
  const double h = harmonic(n);
  // log of K^l H_n^(l-1) / T, evaluated in log space so large l cannot
  // overflow before the final exp.
  const double log_arg = l * std::log(p.K) + (l - 1) * std::log(h) -
                         (inv * std::log(t_i) + (1.0 - inv) * std::log(t_j));
  if (log_arg > 700.0) return 1.0;
  return -std::expm1(-std::exp(log_arg));
}

/// Expected distance between the nodes arriving at t_i and t_j:
///   [(1 - 1/(gamma-1)) ln t_j + (1/(gamma-1)) ln t_i - ln K - r]
///     / ln(K H_n) + 1/2.
inline double expected_distance(double t_i, double t_j, std::uint64_t n,
                                const TheoryParams& p) {
  if (!(t_i > 0.0) || !(t_i < t_j) || !(t_j <= static_cast<double>(n)))
    throw invalid_parameter("expected_distance needs 0 < t_i < t_j <= n");
  const double h = harmonic(n);
  if (!(p.K * h > 1.0))
    throw degenerate_parameters("expected_distance needs K*H_n > 1, got " +
                                std::to_string(p.K * h));
  const double inv = 1.0 / (p.gamma - 1.0);
  return ((1.0 - inv) * std::log(t_j) + inv * std::log(t_i) - std::log(p.K) -
          p.r) /
             std::log(p.K * h) +
         0.5;
}

/// Expected diameter: the expected distance between the first and the last
/// node, i.e. t_i = 1 and t_j = n.
inline double expected_diameter(std::uint64_t n, const TheoryParams& p) {
  if (n < 2) throw invalid_parameter("expected_diameter needs n >= 2");
  const double h = harmonic(n);
  if (!(p.K * h > 1.0))
    throw degenerate_parameters("expected_diameter needs K*H_n > 1, got " +
                                std::to_string(p.K * h));
  const double inv = 1.0 / (p.gamma - 1.0);
  return ((1.0 - inv) * std::log(static_cast<double>(n)) - std::log(p.K) -
          p.r) /
             std::log(p.K * h) +
         0.5;
}

}  // namespace cdpam
