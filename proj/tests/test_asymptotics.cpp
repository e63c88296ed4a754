#include <doctest.h>

#include <cmath>
#include <numbers>

#include "irgmotif/asymptotics.hpp"
#include "irgmotif/special.hpp"

using namespace irg;

namespace {

double log_reconstruction(const TheoryValue& tv) {
    double sum = 0.0;
    for (const auto& [key, val] : tv.components) {
        if (key.rfind("log.", 0) == 0) sum += val;
    }
    return sum;
}

}  // namespace

TEST_CASE("log binomial") {
    CHECK(log_binomial(6, 4) == doctest::Approx(std::log(15.0)).epsilon(1e-14));
    double direct = std::log(100000.0 * 99999.0 * 99998.0 / 6.0);
    CHECK(log_binomial(100000, 3) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(log_binomial(1000, 13) == doctest::Approx(log_binomial(1000, 987)).epsilon(1e-12));
    CHECK(log_binomial(5, 5) == 0.0);
    CHECK_THROWS_AS(log_binomial(4, 5), Error);
}

TEST_CASE("j_m closed-form anchor: m=1, k=3") {
    JmValue j1 = j_m(1, 3, Tau(2.5), 2'000'000);
    CHECK(j1.value == doctest::Approx(26.0 / 3.0).epsilon(1e-5));
    CHECK(j1.error_estimate < 2e-5);
}

TEST_CASE("j_m analytic bound and monotone decrease") {
    Tau tau(2.5);
    // (tau-1)^m m! J_m <= ((tau-1)/(m-tau))^m for m >= 3
    JmValue j3 = j_m(3, 5, tau);
    double scaled = std::pow(1.5, 3) * 6.0 * j3.value;
    CHECK(scaled <= std::pow(1.5 / 0.5, 3) + 6.0 * 6.0 * j3.error_estimate);
    // decrease in k at fixed m
    JmValue a = j_m(2, 4, tau);
    JmValue b = j_m(2, 5, tau);
    CHECK(b.value < a.value + 2.0 * (a.error_estimate + b.error_estimate));
    CHECK_THROWS_AS(j_m(9, 12, tau), Error);
    CHECK_THROWS_AS(j_m(3, 3, tau), Error);
}

TEST_CASE("clique rough scale") {
    TheoryValue tv = clique_rough(10'000, 3, Tau(2.5), SlowlyVaryingSpec::constant());
    CHECK(tv.value == doctest::Approx(1000.0).epsilon(1e-12));
    TheoryValue tv2 = clique_rough(20'000, 3, Tau(2.5), SlowlyVaryingSpec::constant());
    CHECK(tv2.value / tv.value == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-12));
    // exponent collapses as tau -> 3: value approaches l(sqrt n)^k
    TheoryValue tv3 = clique_rough(10'000, 3, Tau(2.999999), SlowlyVaryingSpec::constant());
    CHECK(tv3.value == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(log_reconstruction(tv) == tv.log_value);
}

TEST_CASE("clique cutoff constant") {
    TheoryValue tv = clique_cutoff(10'000, 3, Tau(2.5), SlowlyVaryingSpec::constant());
    double expected = 27.0 * std::pow(3.0, -2.25) * 1000.0;
    CHECK(tv.value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(tv.value == doctest::Approx(2279.507).epsilon(1e-5));
    // doubling n scales by 2^{k(3-tau)/2}
    TheoryValue tv2 = clique_cutoff(20'000, 3, Tau(2.5), SlowlyVaryingSpec::constant());
    CHECK(tv2.value / tv.value == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-12));
    // at k=4, tau=2.5 the prefactor is exactly 1
    TheoryValue tv4 = clique_cutoff(100, 4, Tau(2.5), SlowlyVaryingSpec::constant());
    CHECK(tv4.components.at("log.prefactor") == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("clique precise bracket structure at k=3") {
    Tau tau(2.5);
    TheoryValue tv = clique_precise(10'000, 3, tau, 2'000'000);
    // bracket = 1 + 3*(1.5*J1) + 3*(2.25*2*J2) + 27 with J1 = 26/3
    CHECK(tv.components.at("bracket.m0") == 1.0);
    CHECK(tv.components.at("bracket.m1") == doctest::Approx(39.0).epsilon(1e-4));
    CHECK(tv.components.at("bracket.m3") == doctest::Approx(27.0).epsilon(1e-12));
    double j2 = j_m(2, 3, tau, 2'000'000).value;
    double bracket = std::exp(tv.components.at("log.bracket"));
    CHECK(bracket == doctest::Approx(67.0 + 13.5 * j2).epsilon(1e-5));
    for (const auto& [key, val] : tv.components) {
        if (key.rfind("bracket.", 0) == 0) CHECK(val > 0.0);
    }
    CHECK(log_reconstruction(tv) == tv.log_value);
    CHECK_FALSE(tv.is_upper_estimate);
}

TEST_CASE("clique precise/cutoff ratio is n-free after the Stirling factor") {
    Tau tau(2.5);
    const int k = 4;
    auto ratio_at = [&](std::uint64_t n) {
        TheoryValue precise = clique_precise(n, k, tau);
        TheoryValue cutoff = clique_cutoff(n, k, tau, SlowlyVaryingSpec::constant());
        double stirling = log_binomial(n, k) + std::lgamma(k + 1.0) -
                          k * std::log(static_cast<double>(n));
        return precise.log_value - cutoff.log_value - stirling;
    };
    double r3 = ratio_at(1'000), r4 = ratio_at(10'000), r5 = ratio_at(100'000);
    CHECK(std::fabs(r4 - r3) < 1e-9);
    CHECK(std::fabs(r5 - r4) < 1e-9);
}

TEST_CASE("clique series bound") {
    TheoryValue tv = clique_series_bound(100, Tau(2.5));
    CHECK(tv.components.at("m0") == doctest::Approx(std::sqrt(150.0 / std::numbers::e)));
    CHECK(tv.components.at("m0") == doctest::Approx(7.4284).epsilon(1e-4));
    CHECK(tv.log_value == doctest::Approx(14.857).epsilon(1e-3));
    double prev = 0.0;
    for (int k = 3; k <= 40; ++k) {
        double cur = clique_series_bound(k, Tau(2.5)).log_value;
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("bracket stays within a constant of the subexponential bound") {
    Tau tau(2.5);
    for (int k = 4; k <= 9; ++k) {
        TheoryValue precise = clique_precise(200, k, tau);
        double bracket = std::exp(precise.components.at("log.bracket"));
        double bound = clique_series_bound(k, tau).value;
        CHECK(bracket <= 10.0 * bound);
    }
}

TEST_CASE("bracket terms obey the per-term bound") {
    Tau tau(2.5);
    const int k = 9;
    TheoryValue tv = clique_precise(500, k, tau);
    for (int m = 3; m <= 8; ++m) {
        double term = tv.components.at("bracket.m" + std::to_string(m));
        double coeff = std::exp(log_binomial(k, static_cast<std::uint64_t>(m)));
        double cap = coeff * std::pow(1.5 / (static_cast<double>(m) - 2.5), m);
        JmValue jm = j_m(m, k, tau);
        double slack = coeff * std::pow(1.5, m) * std::exp(std::lgamma(m + 1.0)) *
                       (2.0 * jm.error_estimate);
        CHECK(term <= cap + slack);
    }
}

TEST_CASE("odd cycle constant") {
    TheoryValue tv = cycle_odd(10'000, 3, Tau(2.5), KernelSpec::min_one());
    // (tau-1)^3 / 12 * (16/3)^3 = 128/3
    double constant =
        std::exp(tv.components.at("log.prefactor") + tv.components.at("log.moment_power"));
    CHECK(constant == doctest::Approx(128.0 / 3.0).epsilon(1e-12));
    CHECK(log_reconstruction(tv) == tv.log_value);
    CHECK_THROWS_AS(cycle_odd(100, 4, Tau(2.5), KernelSpec::min_one()), Error);
}

TEST_CASE("odd cycle kernel ratios") {
    Tau tau(2.5);
    const int k = 5;
    TheoryValue a = cycle_odd(1000, k, tau, KernelSpec::min_one());
    TheoryValue b = cycle_odd(1000, k, tau, KernelSpec::ratio());
    double m_ratio = kernel_moment(tau, KernelSpec::min_one()) /
                     kernel_moment(tau, KernelSpec::ratio());
    CHECK(a.log_value - b.log_value ==
          doctest::Approx(k * std::log(m_ratio)).epsilon(1e-12));
}

TEST_CASE("odd cycle n-scaling exponent") {
    Tau tau(2.5);
    TheoryValue v1 = cycle_odd(1'000'000, 3, tau, KernelSpec::min_one());
    TheoryValue v2 = cycle_odd(2'000'000, 3, tau, KernelSpec::min_one());
    double slope = (v2.log_value - v1.log_value) / std::log(2.0);
    CHECK(slope == doctest::Approx(0.75).epsilon(1e-3));  // k(3-tau)/2 at k=3
}

TEST_CASE("stirling form tracks the exact odd-cycle value") {
    Tau tau(2.5);
    TheoryValue exact = cycle_odd(1'000'000, 5, tau, KernelSpec::min_one());
    TheoryValue stirling = cycle_stirling_form(1'000'000, 5, tau);
    CHECK(std::fabs(exact.log_value - stirling.log_value) < 0.01);
    // k=3, tau=2.5, n=1e4 explicit arithmetic
    TheoryValue tv = cycle_stirling_form(10'000, 3, tau);
    double expected = std::pow(3.0, -2.25) * 1000.0 * 512.0 / 12.0 * std::exp(-4.5e-4);
    CHECK(tv.value == doctest::Approx(expected).epsilon(1e-12));
    // the finite-size factor drifts to 1
    TheoryValue big = cycle_stirling_form(100'000'000, 3, tau);
    CHECK(std::exp(big.components.at("log.stirling")) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("even cycle carries the log factor explicitly") {
    Tau tau(2.5);
    TheoryValue tv = cycle_even(10'000, 4, tau, KernelSpec::min_one(), 1e-6);
    double gamma_n = structural_scale(10'000, tau);
    double no_log = tv.log_value - tv.components.at("log.logfactor");
    CHECK(tv.log_value - no_log == doctest::Approx(std::log(std::log(gamma_n))).epsilon(1e-14));
    CHECK(log_reconstruction(tv) == tv.log_value);
    CHECK_THROWS_AS(cycle_even(100, 5, tau, KernelSpec::min_one(), 1e-6), Error);
}

TEST_CASE("fourier power integral self-consistency and crude bound") {
    Tau tau(2.5);
    QuadratureResult coarse = fourier_power_integral(4, tau, KernelSpec::min_one(), 1e-4);
    QuadratureResult fine = fourier_power_integral(4, tau, KernelSpec::min_one(), 1e-6);
    CHECK(coarse.value == doctest::Approx(fine.value).epsilon(1e-4));
    // |J| <= J(0): integral over [-V,V] is below 2 V J(0)^k for any V
    double j0 = kernel_moment(tau, KernelSpec::min_one());
    CHECK(fine.value <= 2.0 * 1e12 * std::pow(j0, 4));
    CHECK(fine.value > 0.0);
}

TEST_CASE("even cycle lower bound integral") {
    Tau tau(2.5);
    // constant svf: the integral is exactly log gamma_n
    TheoryValue tv = cycle_lower_bound_even(10'000, 4, tau, SlowlyVaryingSpec::constant());
    CHECK(tv.components.at("integral") ==
          doctest::Approx(std::log(structural_scale(10'000, tau))).epsilon(1e-10));
    // Remark-style floor: for any a > sqrt(mu), at large n the integral
    // exceeds log a - log(mu)/2
    double integral = cycle_lower_bound_even(100'000'000, 4, tau, SlowlyVaryingSpec::constant())
                          .components.at("integral");
    for (double a : {2.0, 5.0, 20.0}) {
        CHECK(integral >= std::log(a) - 0.5 * std::log(3.0));
    }
    CHECK_THROWS_AS(cycle_lower_bound_even(100, 5, tau, SlowlyVaryingSpec::constant()), Error);
}

TEST_CASE("even cycle lower bound with log-power svf matches the antiderivative") {
    Tau tau(2.5);
    const int k = 4;
    const std::uint64_t n = 10'000;
    TheoryValue tv = cycle_lower_bound_even(n, k, tau, SlowlyVaryingSpec::log_power(1.0));
    // With l(h) = 1+log h the integrand is ((B+s)(B-s))^{k/2}/B^k with
    // B = 1+log gamma_n; expand the square and integrate term by term.
    double G = std::log(structural_scale(n, tau));
    double B = 1.0 + G;
    double expected = 0.0;
    // (B^2-s^2)^2 = B^4 - 2 B^2 s^2 + s^4
    expected += B * B * B * B * G;
    expected -= 2.0 * B * B * G * G * G / 3.0;
    expected += G * G * G * G * G / 5.0;
    expected /= B * B * B * B;
    CHECK(tv.components.at("integral") == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("direct cycle integral basics") {
    Tau tau(2.5);
    QuadratureResult zero = cycle_integral_direct(3, 0.0, tau, KernelSpec::min_one(), 1 << 12);
    CHECK(zero.value == 0.0);
    CHECK_THROWS_AS(cycle_integral_direct(6, 2.0, tau, KernelSpec::min_one(), 1 << 12), Error);
}

TEST_CASE("direct cycle integral approaches the odd-cycle limit") {
    // Frozen reference values from an independent nested adaptive computation
    // (tolerances 1e-5/1e-7/1e-9 per level): box(8) = 67.5002,
    // box(16) = 75.5701. The A -> inf limit is (1/2)(16/3)^3 = 75.8519 and the
    // approach is monotone but slow in A.
    Tau tau(2.5);
    double limit = 0.5 * std::pow(16.0 / 3.0, 3);
    QuadratureResult q8 = cycle_integral_direct(3, 8.0, tau, KernelSpec::min_one(), 2'000'000);
    CHECK(q8.value == doctest::Approx(67.5002).epsilon(2e-3));
    QuadratureResult q16 = cycle_integral_direct(3, 16.0, tau, KernelSpec::min_one(), 4'000'000);
    CHECK(q16.value == doctest::Approx(75.5701).epsilon(3e-3));
    CHECK(q16.value < limit * 1.005);
    CHECK(q8.value < q16.value);
}

TEST_CASE("all theory modes stay finite and positive over the grid") {
    for (double tau_v : {2.1, 2.3, 2.5, 2.7, 2.9}) {
        Tau tau(tau_v);
        for (int k = 3; k <= 9; ++k) {
            for (std::uint64_t n : {100ULL, 10'000ULL, 1'000'000ULL}) {
                std::vector<TheoryValue> values;
                values.push_back(clique_rough(n, k, tau, SlowlyVaryingSpec::constant()));
                values.push_back(clique_cutoff(n, k, tau, SlowlyVaryingSpec::constant()));
                values.push_back(clique_precise(n, k, tau, 100'000));
                values.push_back(clique_series_bound(k, tau));
                if (k % 2 == 1) {
                    values.push_back(cycle_odd(n, k, tau, KernelSpec::min_one()));
                    values.push_back(cycle_stirling_form(n, k, tau));
                } else {
                    values.push_back(cycle_even(n, k, tau, KernelSpec::min_one(), 1e-5));
                    values.push_back(
                        cycle_lower_bound_even(n, k, tau, SlowlyVaryingSpec::constant()));
                }
                for (const auto& tv : values) {
                    CHECK(std::isfinite(tv.log_value));
                    CHECK(tv.value > 0.0);
                    CHECK(std::fabs(log_reconstruction(tv) - tv.log_value) <=
                          1e-12 * std::max(1.0, std::fabs(tv.log_value)));
                }
            }
        }
    }
}

TEST_CASE("regular-variation moment lemma holds for the pure power law") {
    // For beta > tau-1 the truncated moment behaves like
    // (tau-1)/(beta-tau+1) x^beta survival(x); exact integral available for
    // the pure power law.
    Tau tau(2.5);
    const double beta = 2.0;
    auto truncated_moment = [&](double x) {
        // integral of h^beta (tau-1) h^{-tau-0} ... = (tau-1)/(beta-tau+1) (x^{beta-tau+1} - 1)
        return (tau.value() - 1.0) / (beta - tau.value() + 1.0) *
               (std::pow(x, beta - tau.value() + 1.0) - 1.0);
    };
    for (double x : {1e4, 1e6, 1e8}) {
        double predicted = (tau.value() - 1.0) / (beta - tau.value() + 1.0) *
                           std::pow(x, beta) * std::pow(x, 1.0 - tau.value());
        CHECK(truncated_moment(x) == doctest::Approx(predicted).epsilon(1e-2));
    }
}
