#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "cdpam/errors.hpp"
#include "cdpam/rng.hpp"

namespace cdpam {

struct PowerLawFit {
  double gamma_hat = 0.0;   // fitted tail exponent, > 1
  int x_min = 0;            // tail cutoff
  double ks_distance = 1.0; // max CDF deviation over the tail
  int tail_size = 0;        // samples >= x_min
};

/// One draw from the fitted discrete tail law P(X >= x) =
/// ((x - 1/2) / (x_min - 1/2))^(1 - gamma), by inversion.
inline int powerlaw_tail_sample(double gamma, int x_min, SplitMix64& rng) {
  const double u = rng.next_double_open0();  // (0, 1]
  const double x =
      (x_min - 0.5) * std::pow(u, -1.0 / (gamma - 1.0)) + 0.5;
  if (x >= 2147483000.0) return 2147483000;  // inversion tail guard
  return static_cast<int>(x);
}

namespace detail {

// KS distance between the empirical tail CDF and the fitted law. Both CDFs
// are integer step functions, so the supremum is attained at the observed
// values and the comparison happens there only. sorted_tail points into a
// sorted sample.
inline double ks_tail_distance(std::span<const int> sorted_tail, double gamma,
                               int x_min) {
  const double n = static_cast<double>(sorted_tail.size());
  const double shift = x_min - 0.5;
  double ks = 0.0;
  std::size_t i = 0;
  while (i < sorted_tail.size()) {
    const int v = sorted_tail[i];
    std::size_t j = i;
    while (j < sorted_tail.size() && sorted_tail[j] == v) ++j;
    // model CDF at v: P(X <= v) = 1 - ((v + 1/2)/(x_min - 1/2))^(1-gamma)
    const double model = 1.0 - std::pow((v + 0.5) / shift, 1.0 - gamma);
    const double empirical = static_cast<double>(j) / n;
    ks = std::max(ks, std::abs(empirical - model));
    i = j;
  }
  return ks;
}

struct FitScan {
  bool found = false;
  PowerLawFit fit;
};

// Scans every distinct value as an x_min candidate; discrete MLE with the
// x_min - 1/2 shift; keeps the candidate minimizing the KS distance. Tails
// smaller than 10 points are rejected, which is the only scan guard: on
// bulk-heavy degree data the informative tail starts well past the 90th
// percentile, so quantile caps would clip it away.
inline FitScan scan_sorted(const std::vector<int>& sorted) {
  const std::size_t n = sorted.size();
  std::vector<double> log_suffix(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;)
    log_suffix[i] = log_suffix[i + 1] + std::log(static_cast<double>(sorted[i]));
  FitScan best;
  for (std::size_t i = 0; i < n;) {
    const int x_min = sorted[i];
    std::size_t next = i;
    while (next < n && sorted[next] == x_min) ++next;
    const std::size_t tail = n - i;
    if (tail >= 10) {
      const double denom =
          log_suffix[i] - static_cast<double>(tail) * std::log(x_min - 0.5);
      const double gamma_hat = 1.0 + static_cast<double>(tail) / denom;
      const double ks = ks_tail_distance(
          std::span<const int>(sorted.data() + i, tail), gamma_hat, x_min);
      if (!best.found || ks < best.fit.ks_distance) {
        best.found = true;
        best.fit = {gamma_hat, x_min, ks, static_cast<int>(tail)};
      }
    }
    i = next;
  }
  return best;
}

}  // namespace detail

/// Fits a discrete power law to the tail of the samples: for each candidate
/// x_min, MLE exponent over the tail, then the KS-minimizing candidate wins.
inline PowerLawFit fit_powerlaw(std::span<const int> samples) {
  if (samples.size() < 50)
    throw unfittable_data("need >= 50 samples, got " +
                          std::to_string(samples.size()));
  std::vector<int> sorted(samples.begin(), samples.end());
  for (int v : sorted)
    if (v < 1) throw invalid_parameter("samples must be positive integers");
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back())
    throw unfittable_data("all samples equal");
  const auto scan = detail::scan_sorted(sorted);
  if (!scan.found)
    throw unfittable_data("no x_min candidate with a viable tail");
  return scan.fit;
}

/// Semi-parametric bootstrap p-value: each replicate resamples the body
/// (values below x_min) empirically and draws the tail from the fitted law,
/// refits from scratch, and the p-value is the fraction of replicates whose
/// KS distance is at least the observed one. Deterministic given the seed.
inline double ks_pvalue(std::span<const int> samples, const PowerLawFit& fit,
                        int n_boot, std::uint64_t seed) {
  if (n_boot < 100) throw invalid_parameter("need n_boot >= 100");
  if (!(fit.gamma_hat > 1.0) || fit.x_min < 1 || fit.tail_size < 10)
    throw invalid_parameter("invalid fit");
  std::vector<int> body;
  std::size_t tail_count = 0;
  for (int v : samples) {
    if (v < fit.x_min)
      body.push_back(v);
    else
      ++tail_count;
  }
  if (static_cast<int>(tail_count) != fit.tail_size)
    throw invalid_parameter("fit does not describe these samples");
  const double tail_fraction =
      static_cast<double>(tail_count) / static_cast<double>(samples.size());
  int exceed = 0;
  std::vector<int> synth(samples.size());
  for (int rep = 0; rep < n_boot; ++rep) {
    SplitMix64 rng(SplitMix64::derive(seed, static_cast<std::uint64_t>(rep)));
    for (auto& v : synth) {
      if (rng.next_double() < tail_fraction || body.empty())
        v = powerlaw_tail_sample(fit.gamma_hat, fit.x_min, rng);
      else
        v = body[rng.next_below(body.size())];
    }
    std::sort(synth.begin(), synth.end());
    if (synth.front() == synth.back()) {
      ++exceed;  // degenerate replicate cannot fit better than the data
      continue;
    }
    const auto scan = detail::scan_sorted(synth);
    if (!scan.found || scan.fit.ks_distance >= fit.ks_distance) ++exceed;
  }
  return static_cast<double>(exceed) / static_cast<double>(n_boot);
}

}  // namespace cdpam
