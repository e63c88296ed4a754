#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "irgmotif/errors.hpp"

namespace irg {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool converged = true;
};

struct ComplexQuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool converged = true;
};

struct Integrate1dOptions {
    double rel_tol = 1e-10;
    double abs_floor = 1e-14;
    // Integrand behaves like (x-a)^alpha_a near a; a value in (-1,0) turns on
    // a power substitution so the rule never chases the raw singularity.
    double alpha_a = 0.0;
    // For b = +inf: algebraic decay exponent (integrand ~ x^-decay_b). Zero
    // means unspecified/faster-than-algebraic; values > 1 neutralize the
    // mapped endpoint.
    double decay_b = 0.0;
    int max_intervals = 4000;
    int initial_intervals = 16;
};

// Adaptive Gauss-Kronrod 7-15 with interval bisection. Semi-infinite ranges
// are mapped onto (0,1]; a = -inf and b = +inf together split at zero.
QuadratureResult integrate_1d(const std::function<double(double)>& fn, double a, double b,
                              const Integrate1dOptions& opts = {});
QuadratureResult integrate_1d(const std::function<double(double)>& fn, double a, double b,
                              double rel_tol);

ComplexQuadratureResult integrate_1d_complex(const std::function<std::complex<double>(double)>& fn,
                                             double a, double b,
                                             const Integrate1dOptions& opts = {});

struct IntegrandSpec {
    std::function<double(std::span<const double>)> fn;
    int dim = 1;
    // Declared endpoint-singularity exponent per axis near t_i = 0; each must
    // exceed -1 (integrability). Empty means smooth everywhere.
    std::vector<double> alpha;
};

// Randomized quasi-Monte Carlo over [0,1]^m: digitally shifted Sobol points
// with a per-axis power substitution for declared singularities. The error
// estimate is the standard error across independent randomizations.
QuadratureResult integrate_unit_cube(const IntegrandSpec& spec, std::int64_t budget,
                                     int replications = 8, std::uint64_t seed = 0x51D5EED);

// Same scheme scaled to the box [-A, A]^k.
QuadratureResult integrate_box(const std::function<double(std::span<const double>)>& fn, int k,
                               double A, std::int64_t budget, int replications = 8,
                               std::uint64_t seed = 0x51D5EED);

// Integral of an even function over the whole real line: symmetric truncation
// at V chosen so the supplied rigorous tail bound (on the integral of fn over
// [V,inf)) contributes less than rel_tol/10, then adaptive integration on
// [0,V] doubled. Without a tail bound the truncation grows until the last
// doubling contributes negligibly.
QuadratureResult integrate_real_line_power(const std::function<double(double)>& fn, int k,
                                           double rel_tol,
                                           const std::function<double(double)>& tail_bound = {});

}  // namespace irg
