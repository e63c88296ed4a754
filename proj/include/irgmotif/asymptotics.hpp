#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "irgmotif/model.hpp"
#include "irgmotif/quadrature.hpp"

namespace irg {

enum class TheoryMode {
    clique_rough,
    clique_cutoff,
    clique_precise,
    clique_bound,
    cycle_odd,
    cycle_even,
    cycle_lower_bound,
    cycle_stirling,
    cycle_direct_integral,
};

std::string theory_mode_name(TheoryMode mode);
TheoryMode parse_theory_mode(const std::string& name);

// An evaluated asymptotic formula. log_value is authoritative (the raw value
// overflows quickly for large n); components with a "log." prefix are the
// addends of log_value and reconstruct it exactly, other keys are
// diagnostics. error_estimate is the relative error carried by any quadrature
// behind the value.
struct TheoryValue {
    double value = 0.0;
    double log_value = 0.0;
    TheoryMode mode = TheoryMode::clique_rough;
    std::map<std::string, double> components;
    double error_estimate = 0.0;
    bool is_upper_estimate = false;
    bool converged = true;
};

struct JmValue {
    int m = 0;
    int k = 0;
    double tau = 0.0;
    double value = 0.0;
    double error_estimate = 0.0;
};

// log C(n,k) to full double precision; small k uses the exact product.
double log_binomial(std::uint64_t n, std::uint64_t k);

// The m-dimensional series coefficient integral over the unit cube with the
// corner-profile power as integrand; quasi-Monte Carlo with declared
// singularity exponents. Results are memoized per (m,k,tau,budget).
JmValue j_m(int m, int k, Tau tau, std::int64_t budget = 500'000);

TheoryValue clique_rough(std::uint64_t n, int k, Tau tau, const SlowlyVaryingSpec& svf);
TheoryValue clique_cutoff(std::uint64_t n, int k, Tau tau, const SlowlyVaryingSpec& svf);

// Full series form: C(n,k) gamma_n^{k(1-tau)} [1 + sum_m C(k,m)(tau-1)^m m! J_m
// + ((tau-1)/(k-tau))^k]. Terms with m > 8 fall back to their analytic upper
// bound and flag the result as an upper estimate.
TheoryValue clique_precise(std::uint64_t n, int k, Tau tau, std::int64_t budget = 500'000);

// Subexponential growth bound e^{2 m0} with m0 = sqrt(k(tau-1)/e).
TheoryValue clique_series_bound(int k, Tau tau);

TheoryValue cycle_odd(std::uint64_t n, int k, Tau tau, const KernelSpec& kernel);
TheoryValue cycle_stirling_form(std::uint64_t n, int k, Tau tau);
TheoryValue cycle_even(std::uint64_t n, int k, Tau tau, const KernelSpec& kernel,
                       double rel_tol = 1e-8);
TheoryValue cycle_lower_bound_even(std::uint64_t n, int k, Tau tau,
                                   const SlowlyVaryingSpec& svf);

// Finite-box cycle integral over [-A,A]^k of the tilted-kernel product
// composed with the circulant map.
QuadratureResult cycle_integral_direct(int k, double A, Tau tau, const KernelSpec& kernel,
                                       std::int64_t budget, std::uint64_t seed = 0x51D5EED);

// Whole-line integral of |J(v)|^k with the kernel-specific rigorous tail
// bound; shared by cycle_even and by validation tests.
QuadratureResult fourier_power_integral(int k, Tau tau, const KernelSpec& kernel,
                                        double rel_tol);

}  // namespace irg
