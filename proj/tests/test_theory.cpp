#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "cdpam/theory.hpp"

using cdpam::TheoryParams;
using Catch::Approx;

TEST_CASE("degree exponent", "[theory]") {
  CHECK(cdpam::gamma_theoretical(0.6, 0.5) == Approx(2.0909090909090908).epsilon(1e-12));
  CHECK(cdpam::gamma_theoretical(3.0, 0.5) == Approx(2.7142857142857144).epsilon(1e-12));
  CHECK(cdpam::gamma_theoretical(600.0, 0.5) == Approx(2.9983347210657785).epsilon(1e-12));
  CHECK_THROWS_AS(cdpam::gamma_theoretical(0.5, 0.5), cdpam::invalid_parameter);
  CHECK_THROWS_AS(cdpam::gamma_theoretical(0.4, 0.5), cdpam::invalid_parameter);
  CHECK_THROWS_AS(cdpam::gamma_theoretical(1.0, -0.1), cdpam::invalid_parameter);

  SECTION("monotone in beta and theta") {
    double prev = 2.0;
    for (double beta : {0.6, 1.2, 1.8, 2.4, 3.0, 6.0, 60.0, 600.0}) {
      const double g = cdpam::gamma_theoretical(beta, 0.5);
      CHECK(g > prev);
      CHECK(g > 2.0);
      CHECK(g < 3.0);
      prev = g;
    }
    prev = 3.0;
    for (double theta : {0.1, 0.2, 0.5, 1.0, 1.9}) {
      const double g = cdpam::gamma_theoretical(2.0, theta);
      CHECK(g < prev);
      prev = g;
    }
  }
}

TEST_CASE("degree offset c", "[theory]") {
  CHECK(cdpam::c_offset(5, 0.6, 0.5) == Approx(4.545454545454546).epsilon(1e-12));
  CHECK(cdpam::c_offset(5, 600.0, 0.5) == Approx(0.008326394671107411).epsilon(1e-12));
  // vanishing theta: c -> 0 (no offset in the BA limit)
  CHECK(cdpam::c_offset(5, 1.0, 1e-12) == Approx(0.0).margin(1e-11));
  for (double beta : {0.6, 3.0, 600.0}) {
    const double c = cdpam::c_offset(5, beta, 0.5);
    CHECK(c > 0.0);
    CHECK(c < 5.0);
  }
}

TEST_CASE("theory params bundle", "[theory]") {
  const auto p = TheoryParams::make(5, 3.0, 0.5);
  CHECK(p.gamma == Approx(2.7142857142857144).epsilon(1e-14));
  CHECK(p.c == Approx(10.0 / 7.0).epsilon(1e-14));
  CHECK(p.K > 0.0);
  // K = (m-c)/(gamma-1) algebraically; at theta = 0.5 it coincides with
  // the specialized (beta+0.5)(m-c)/(2 beta) form
  CHECK(p.K == Approx((p.m - p.c) / (p.gamma - 1.0)).epsilon(1e-12));
  CHECK(p.K == Approx((3.0 + 0.5) * (5.0 - p.c) / (2.0 * 3.0)).epsilon(1e-12));
  for (double theta : {0.1, 0.3, 0.7}) {
    const auto q = TheoryParams::make(4, 1.1, theta);
    CHECK(q.K == Approx((q.m - q.c) / (q.gamma - 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("degree trajectory", "[theory]") {
  const auto p = TheoryParams::make(5, 0.6, 0.5);
  SECTION("initial condition k_i(t_i) = m") {
    CHECK(cdpam::expected_degree(10.0, 10.0, p) == Approx(5.0).epsilon(1e-14));
    const auto q = TheoryParams::make(3, 2.0, 0.3);
    CHECK(cdpam::expected_degree(7.0, 7.0, q) == Approx(3.0).epsilon(1e-14));
  }
  SECTION("frozen value at t/t_i = 16") {
    CHECK(cdpam::expected_degree(16.0, 1.0, p) ==
          Approx(10.317822007157089).epsilon(1e-12));
  }
  SECTION("BA limit grows like sqrt(t/t_i)") {
    const auto q = TheoryParams::make(5, 1.0, 1e-13);
    CHECK(cdpam::expected_degree(4.0, 1.0, q) == Approx(10.0).margin(1e-9));
  }
  SECTION("t < t_i rejected") {
    CHECK_THROWS_AS(cdpam::expected_degree(1.0, 2.0, p), cdpam::invalid_parameter);
  }
  SECTION("pure power law in t/t_i: log-log linearity") {
    const auto q = TheoryParams::make(5, 3.0, 0.5);
    const double x1 = std::log(cdpam::expected_degree(10.0, 1.0, q) - q.c);
    const double x2 = std::log(cdpam::expected_degree(100.0, 1.0, q) - q.c);
    const double x3 = std::log(cdpam::expected_degree(1000.0, 1.0, q) - q.c);
    CHECK((x2 - x1) == Approx(x3 - x2).epsilon(1e-10));
  }
}

TEST_CASE("degree density", "[theory]") {
  const auto p = TheoryParams::make(5, 3.0, 0.5);
  SECTION("value at k = m collapses to (gamma-1)/(m-c)") {
    CHECK(cdpam::degree_density(5.0, p) ==
          Approx((p.gamma - 1.0) / (5.0 - p.c)).epsilon(1e-14));
    CHECK(cdpam::degree_density(5.0, p) == Approx(0.48).epsilon(1e-14));
  }
  SECTION("strictly decreasing") {
    CHECK(cdpam::degree_density(50.0, p) < cdpam::degree_density(20.0, p));
    CHECK(cdpam::degree_density(20.0, p) < cdpam::degree_density(6.0, p));
  }
  SECTION("k <= c rejected") {
    CHECK_THROWS_AS(cdpam::degree_density(1.0, p), cdpam::invalid_parameter);
  }
  SECTION("integrates to 1 on (m, inf)") {
    // substitute k = c + (m-c) e^u: integrand becomes
    // (gamma-1) e^{-(gamma-1) u}, integrated by Simpson on [0, U]
    const double span = 40.0 / (p.gamma - 1.0);
    const int steps = 20000;  // even
    const double h = span / steps;
    double simpson = 0.0;
    for (int i = 0; i <= steps; ++i) {
      const double u = i * h;
      const double k = p.c + (5.0 - p.c) * std::exp(u);
      const double f = cdpam::degree_density(k, p) * (k - p.c);
      simpson += f * ((i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    simpson *= h / 3.0;
    CHECK(simpson == Approx(1.0).margin(1e-6));
  }
}

TEST_CASE("pairwise link probability", "[theory]") {
  const auto p = TheoryParams::make(5, 3.0, 0.5);
  SECTION("variants coincide at theta = 1/2") {
    for (double tj : {100.0, 1000.0, 10000.0}) {
      const double a =
          cdpam::link_probability(10.0, tj, p, cdpam::LinkProbVariant::as_printed);
      const double b = cdpam::link_probability(
          10.0, tj, p, cdpam::LinkProbVariant::derivation_consistent);
      CHECK(a == Approx(b).epsilon(1e-15));
    }
  }
  SECTION("mean-field substitution route agrees to 1e-12") {
    // independent route: p = m (beta k + theta (k - 2m)) / (2 m beta t_j)
    // with k the degree trajectory evaluated at t_j
    for (double ti : {2.0, 10.0, 50.0}) {
      for (double tj : {200.0, 1000.0, 5000.0}) {
        const double k = cdpam::expected_degree(tj, ti, p);
        const double route2 = 5.0 * (p.beta * k + p.theta * (k - 2.0 * 5.0)) /
                              (2.0 * 5.0 * p.beta * tj);
        const double route1 = cdpam::link_probability(
            ti, tj, p, cdpam::LinkProbVariant::derivation_consistent);
        CHECK(route1 == Approx(route2).epsilon(1e-12));
      }
    }
  }
  SECTION("lies in (0, 1) on a grid") {
    // the mean-field expression exceeds 1 for the very earliest arrivals
    // (t_j close to m), so the scan starts at t_j >= 2m
    for (double ti = 1.0; ti < 100.0; ti *= 3.0)
      for (double tj = std::max(2.0 * ti, 10.0); tj < 100000.0; tj *= 5.0) {
        const double v = cdpam::link_probability(ti, tj, p);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
      }
  }
  SECTION("ordering precondition") {
    CHECK_THROWS_AS(cdpam::link_probability(10.0, 10.0, p),
                    cdpam::invalid_parameter);
    CHECK_THROWS_AS(cdpam::link_probability(20.0, 10.0, p),
                    cdpam::invalid_parameter);
  }
}

TEST_CASE("harmonic numbers", "[theory]") {
  CHECK(cdpam::harmonic(1) == 1.0);
  CHECK(cdpam::harmonic(2) == 1.5);
  CHECK(cdpam::harmonic(10) == Approx(2.9289682539682538).epsilon(1e-14));
  CHECK_THROWS_AS(cdpam::harmonic(0), cdpam::invalid_parameter);
  SECTION("exact and asymptotic branches agree at the threshold") {
    // threshold is 1e6; evaluate the asymptotic form one past it and
    // compare with an explicit compensated sum
    const double via_lib = cdpam::harmonic(1000001);
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t k = 1000001; k >= 1; --k) {
      const double y = 1.0 / static_cast<double>(k) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    CHECK(via_lib == Approx(sum).margin(1e-10));
  }
}

TEST_CASE("path probability", "[theory]") {
  const auto p = TheoryParams::make(5, 3.0, 0.5);
  const std::uint64_t n = 10000;
  SECTION("monotone in l, approaches 1") {
    double prev = 0.0;
    for (int l = 1; l <= 40; ++l) {
      const double v = cdpam::path_probability(1.0, 10000.0, l, n, p);
      CHECK(v >= prev);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      prev = v;
    }
    CHECK(cdpam::path_probability(1.0, 10000.0, 500, n, p) ==
          Approx(1.0).margin(1e-12));
  }
  SECTION("monotone in n") {
    double prev = 0.0;
    for (std::uint64_t nn : {200ULL, 2000ULL, 20000ULL, 200000ULL}) {
      const double v = cdpam::path_probability(2.0, 100.0, 2, nn, p);
      CHECK(v >= prev);
      prev = v;
    }
  }
  SECTION("dual evaluation of the frozen example") {
    const double v = cdpam::path_probability(1.0, 10000.0, 3, n, p);
    // independent long-double re-implementation
    const long double inv = 1.0L / (static_cast<long double>(p.gamma) - 1.0L);
    long double h = 0.0L;
    for (std::uint64_t k = n; k >= 1; --k) h += 1.0L / static_cast<long double>(k);
    const long double arg = std::pow(static_cast<long double>(p.K), 3.0L) * h * h /
                            std::pow(10000.0L, 1.0L - inv);
    const long double expect = 1.0L - std::exp(-arg);
    CHECK(v == Approx(static_cast<double>(expect)).epsilon(1e-10));
  }
  SECTION("preconditions") {
    CHECK_THROWS_AS(cdpam::path_probability(1.0, 2.0, 0, n, p),
                    cdpam::invalid_parameter);
    CHECK_THROWS_AS(cdpam::path_probability(3.0, 2.0, 1, n, p),
                    cdpam::invalid_parameter);
    CHECK_THROWS_AS(cdpam::path_probability(1.0, 20000.0, 1, n, p),
                    cdpam::invalid_parameter);
  }
}

TEST_CASE("expected distance", "[theory]") {
  const auto p = TheoryParams::make(5, 3.0, 0.5);
  const std::uint64_t n = 10000;
  SECTION("frozen example value") {
    CHECK(cdpam::expected_distance(10.0, 1000.0, n, p) ==
          Approx(1.4652199294213473).epsilon(1e-12));
  }
  SECTION("increasing in t_j and in t_i") {
    double prev = 0.0;
    for (double tj : {100.0, 400.0, 1600.0, 6400.0}) {
      const double v = cdpam::expected_distance(10.0, tj, n, p);
      CHECK(v > prev);
      prev = v;
    }
    CHECK(cdpam::expected_distance(20.0, 1000.0, n, p) >
          cdpam::expected_distance(10.0, 1000.0, n, p));
  }
  SECTION("t_i = 1, t_j = n reduces to the diameter") {
    CHECK(cdpam::expected_distance(1.0, static_cast<double>(n), n, p) ==
          Approx(cdpam::expected_diameter(n, p)).epsilon(1e-14));
  }
  SECTION("series route: sum over l of 1 - P_ij(l)") {
    // The closed form corresponds to sum_{l >= 1} (1 - P_ij(l)); the
    // defining series starts at l = 0, whose near-1 term the closed form
    // does not carry. Agreement is limited by the Euler-Maclaurin step in the
    // derivation (a few percent), so the tolerance here is loose.
    for (double tj : {200.0, 1000.0, 5000.0}) {
      double series = 0.0;
      for (int l = 1; l < 200; ++l) {
        const double f = 1.0 - cdpam::path_probability(10.0, tj, l, n, p);
        series += f;
        if (f < 1e-15) break;
      }
      const double closed = cdpam::expected_distance(10.0, tj, n, p);
      CHECK(closed == Approx(series).margin(0.1));
    }
  }
  SECTION("degenerate K H_n") {
    const auto tight = TheoryParams::make(1, 1.0, 0.999);
    CHECK_THROWS_AS(cdpam::expected_distance(1.0, 50.0, 100, tight),
                    cdpam::degenerate_parameters);
  }
}

TEST_CASE("expected diameter", "[theory]") {
  SECTION("grows no faster than ln n on a log grid") {
    // D/ln n shrinks as n grows: the ln(K H_n) denominator keeps climbing
    const auto p = TheoryParams::make(5, 3.0, 0.5);
    double prev_ratio = 1e300;
    for (std::uint64_t n : {100ULL, 10000ULL, 1000000ULL, 100000000ULL}) {
      const double ratio = cdpam::expected_diameter(n, p) /
                           std::log(static_cast<double>(n));
      CHECK(ratio < prev_ratio);
      prev_ratio = ratio;
    }
  }
  SECTION("alike weights flatten the curve") {
    const auto close = TheoryParams::make(5, 0.6, 0.5);
    const auto far = TheoryParams::make(5, 600.0, 0.5);
    const double slope_close = cdpam::expected_diameter(100000, close) -
                               cdpam::expected_diameter(100, close);
    const double slope_far = cdpam::expected_diameter(100000, far) -
                             cdpam::expected_diameter(100, far);
    CHECK(std::abs(slope_close) < slope_far);
    CHECK(cdpam::expected_diameter(100, close) == Approx(1.3848638544137156).epsilon(1e-10));
    CHECK(cdpam::expected_diameter(100000, far) == Approx(1.7497603211727414).epsilon(1e-10));
  }
  SECTION("n < 2 rejected") {
    const auto p = TheoryParams::make(5, 3.0, 0.5);
    CHECK_THROWS_AS(cdpam::expected_diameter(1, p), cdpam::invalid_parameter);
  }
}
