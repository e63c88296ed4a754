#include "irgmotif/asymptotics.hpp"

#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "irgmotif/special.hpp"

namespace irg {

std::string theory_mode_name(TheoryMode mode) {
    switch (mode) {
        case TheoryMode::clique_rough: return "clique-rough";
        case TheoryMode::clique_cutoff: return "clique-cutoff";
        case TheoryMode::clique_precise: return "clique-precise";
        case TheoryMode::clique_bound: return "clique-bound";
        case TheoryMode::cycle_odd: return "cycle-odd";
        case TheoryMode::cycle_even: return "cycle-even";
        case TheoryMode::cycle_lower_bound: return "cycle-lower-bound";
        case TheoryMode::cycle_stirling: return "cycle-stirling";
        case TheoryMode::cycle_direct_integral: return "cycle-direct-integral";
    }
    return "?";
}

TheoryMode parse_theory_mode(const std::string& name) {
    for (TheoryMode mode :
         {TheoryMode::clique_rough, TheoryMode::clique_cutoff, TheoryMode::clique_precise,
          TheoryMode::clique_bound, TheoryMode::cycle_odd, TheoryMode::cycle_even,
          TheoryMode::cycle_lower_bound, TheoryMode::cycle_stirling,
          TheoryMode::cycle_direct_integral}) {
        if (theory_mode_name(mode) == name) return mode;
    }
    throw_invalid("unknown theory mode: " + name);
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) throw_invalid("log_binomial requires k <= n");
    k = std::min(k, n - k);
    if (k <= 64) {
        double acc = 0.0;
        for (std::uint64_t i = 0; i < k; ++i) {
            acc += std::log(static_cast<double>(n - i)) - std::log(static_cast<double>(i + 1));
        }
        return acc;
    }
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

namespace {

double log_factorial(int k) {
    return std::lgamma(static_cast<double>(k) + 1.0);
}

void require_motif_k(int k) {
    if (k < 3) throw_invalid("motif size k must be at least 3");
}

TheoryValue finish(TheoryValue tv) {
    double sum = 0.0;
    for (const auto& [key, val] : tv.components) {
        if (key.rfind("log.", 0) == 0) sum += val;
    }
    tv.log_value = sum;
    tv.value = std::exp(sum);
    return tv;
}

struct JmKey {
    int m;
    int k;
    std::uint64_t tau_bits;
    std::int64_t budget;
    bool operator==(const JmKey&) const = default;
};
struct JmKeyHash {
    std::size_t operator()(const JmKey& key) const {
        std::size_t h = std::hash<int>()(key.m * 131 + key.k);
        h ^= std::hash<std::uint64_t>()(key.tau_bits) + 0x9E3779B9u + (h << 6) + (h >> 2);
        h ^= std::hash<std::int64_t>()(key.budget) + 0x9E3779B9u + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace

JmValue j_m(int m, int k, Tau tau, std::int64_t budget) {
    if (m < 1 || m > k - 1) throw_invalid("j_m needs 1 <= m <= k-1");
    if (m > 8) throw_unsupported("j_m dimensions above 8 are out of numerical reach");
    require_motif_k(k);

    static std::mutex cache_mutex;
    static std::unordered_map<JmKey, JmValue, JmKeyHash> cache;
    std::uint64_t tau_bits;
    {
        double tv = tau.value();
        static_assert(sizeof(tau_bits) == sizeof(tv));
        std::memcpy(&tau_bits, &tv, sizeof(tv));
    }
    JmKey key{m, k, tau_bits, budget};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const double tv = tau.value();
    IntegrandSpec spec;
    spec.dim = m;
    std::vector<double> raw_exp(static_cast<std::size_t>(m));
    spec.alpha.resize(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i) {
        raw_exp[static_cast<std::size_t>(i) - 1] = static_cast<double>(i) * (m - tv) - 1.0;
        // Net endpoint exponent once the corner profile's vanishing is folded in.
        double from_phi = (i == 1) ? static_cast<double>(k - m) : (tv - 1.0) * (k - m);
        spec.alpha[static_cast<std::size_t>(i) - 1] =
            raw_exp[static_cast<std::size_t>(i) - 1] + from_phi;
    }
    spec.fn = [m, k, tv, tau, raw_exp](std::span<const double> t) -> double {
        double log_val = 0.0;
        for (int i = 0; i < m; ++i) {
            double lt = std::log(t[static_cast<std::size_t>(i)]);
            log_val += raw_exp[static_cast<std::size_t>(i)] * lt;
            log_val += (i == 0 ? 1.0 : tv - 1.0) * static_cast<double>(k - m) * lt;
        }
        log_val += static_cast<double>(k - m) * std::log(phi_psi(m, tau, t));
        return std::exp(log_val);
    };
    QuadratureResult q = integrate_unit_cube(spec, budget);
    JmValue out{m, k, tv, q.value, q.error_estimate};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(key, out);
    }
    return out;
}

TheoryValue clique_rough(std::uint64_t n, int k, Tau tau, const SlowlyVaryingSpec& svf) {
    require_motif_k(k);
    TheoryValue tv;
    tv.mode = TheoryMode::clique_rough;
    double log_n = std::log(static_cast<double>(n));
    tv.components["log.n_power"] = 0.5 * k * (3.0 - tau.value()) * log_n;
    tv.components["log.svf"] = k * std::log(svf(std::sqrt(static_cast<double>(n))));
    return finish(tv);
}

TheoryValue clique_cutoff(std::uint64_t n, int k, Tau tau, const SlowlyVaryingSpec& svf) {
    require_motif_k(k);
    const double t = tau.value();
    TheoryValue tv;
    tv.mode = TheoryMode::clique_cutoff;
    tv.components["log.prefactor"] = k * std::log((t - 1.0) / (static_cast<double>(k) - t));
    tv.components["log.mu_power"] = 0.5 * k * (1.0 - t) * std::log(mean_weight(tau));
    tv.components["log.n_power"] = 0.5 * k * (3.0 - t) * std::log(static_cast<double>(n));
    tv.components["log.svf"] = k * std::log(svf(std::sqrt(static_cast<double>(n))));
    return finish(tv);
}

TheoryValue clique_precise(std::uint64_t n, int k, Tau tau, std::int64_t budget) {
    require_motif_k(k);
    if (static_cast<std::uint64_t>(k) > n) throw_invalid("clique_precise needs k <= n");
    const double t = tau.value();
    TheoryValue tv;
    tv.mode = TheoryMode::clique_precise;

    double bracket = 1.0;
    double abs_err = 0.0;
    tv.components["bracket.m0"] = 1.0;
    for (int m = 1; m <= k - 1; ++m) {
        double coeff = std::exp(log_binomial(static_cast<std::uint64_t>(k),
                                             static_cast<std::uint64_t>(m)));
        double term;
        if (m <= 8) {
            JmValue jm = j_m(m, k, tau, budget);
            double factor = std::exp(m * std::log(t - 1.0) + log_factorial(m));
            term = coeff * factor * jm.value;
            abs_err += coeff * factor * jm.error_estimate;
        } else {
            // Analytic per-term upper bound; tagged as an upper estimate.
            term = coeff * std::pow((t - 1.0) / (static_cast<double>(m) - t), m);
            tv.is_upper_estimate = true;
        }
        tv.components["bracket.m" + std::to_string(m)] = term;
        bracket += term;
    }
    double tail = std::pow((t - 1.0) / (static_cast<double>(k) - t), k);
    tv.components["bracket.m" + std::to_string(k)] = tail;
    bracket += tail;

    tv.components["log.binomial"] = log_binomial(n, static_cast<std::uint64_t>(k));
    tv.components["log.scale"] =
        k * (1.0 - t) * std::log(structural_scale(n, tau));
    tv.components["log.bracket"] = std::log(bracket);
    tv.error_estimate = abs_err / bracket;
    return finish(tv);
}

TheoryValue clique_series_bound(int k, Tau tau) {
    require_motif_k(k);
    TheoryValue tv;
    tv.mode = TheoryMode::clique_bound;
    double m0 = std::sqrt(static_cast<double>(k) * (tau.value() - 1.0) / std::numbers::e);
    tv.components["m0"] = m0;
    tv.components["log.bound"] = 2.0 * m0;
    return finish(tv);
}

namespace {

std::function<double(double)> fourier_power_tail_bound(int k, Tau tau, const KernelSpec& kernel) {
    const double t = tau.value();
    switch (kernel.kind) {
        case KernelSpec::Kind::min_one:
            // |J(v)| <= 4/(16 pi^2 v^2)
            return [k](double V) {
                double c = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
                return std::pow(c, k) * std::pow(V, 1.0 - 2.0 * k) / (2.0 * k - 1.0);
            };
        case KernelSpec::Kind::ratio:
            // |J(v)| <= pi/sinh(2 pi^2 v) <= 6.5 e^{-2 pi^2 v} once 2 pi^2 v >= 1
            return [k](double V) {
                double rate = 2.0 * std::numbers::pi * std::numbers::pi;
                if (rate * V < 1.0) return std::numeric_limits<double>::infinity();
                return std::pow(6.5, k) * std::exp(-rate * k * V) / (rate * k);
            };
        case KernelSpec::Kind::exp_complement:
            // |Gamma(x+iy)| <= Gamma(x), so |J(v)| <= Gamma((3-t)/2)/(2 pi v)
            return [k, t](double V) {
                double c = std::tgamma(0.5 * (3.0 - t)) / (2.0 * std::numbers::pi);
                return std::pow(c / V, k) * V / (k - 1.0);
            };
    }
    throw_invalid("unreachable kernel kind");
}

}  // namespace

QuadratureResult fourier_power_integral(int k, Tau tau, const KernelSpec& kernel,
                                        double rel_tol) {
    auto fn = [k, tau, kernel](double v) {
        return std::pow(std::abs(kernel_fourier(v, tau, kernel)), k);
    };
    return integrate_real_line_power(fn, k, rel_tol, fourier_power_tail_bound(k, tau, kernel));
}

TheoryValue cycle_odd(std::uint64_t n, int k, Tau tau, const KernelSpec& kernel) {
    require_motif_k(k);
    if (k % 2 == 0) throw_invalid("cycle_odd requires odd k; use cycle_even");
    const double t = tau.value();
    TheoryValue tv;
    tv.mode = TheoryMode::cycle_odd;
    double moment = kernel_moment(tau, kernel);
    tv.components["moment"] = moment;
    tv.components["log.scale"] = k * (1.0 - t) * std::log(structural_scale(n, tau));
    tv.components["log.prefactor"] = k * std::log(t - 1.0) - std::log(4.0 * k);
    tv.components["log.choose"] = log_binomial(n, static_cast<std::uint64_t>(k));
    tv.components["log.permutations"] = log_factorial(k);
    tv.components["log.moment_power"] = k * std::log(moment);
    return finish(tv);
}

TheoryValue cycle_stirling_form(std::uint64_t n, int k, Tau tau) {
    require_motif_k(k);
    if (k % 2 == 0) throw_invalid("cycle_stirling_form requires odd k");
    const double t = tau.value();
    TheoryValue tv;
    tv.mode = TheoryMode::cycle_stirling;
    tv.components["log.n_power"] = 0.5 * k * (3.0 - t) * std::log(static_cast<double>(n));
    tv.components["log.mu_power"] = 0.5 * k * (1.0 - t) * std::log(mean_weight(tau));
    tv.components["log.kernel_power"] = k * std::log(4.0 / (3.0 - t));
    tv.components["log.symmetry"] = -std::log(4.0 * k);
    tv.components["log.stirling"] =
        -0.5 * static_cast<double>(k) * k / static_cast<double>(n);
    return finish(tv);
}

TheoryValue cycle_even(std::uint64_t n, int k, Tau tau, const KernelSpec& kernel,
                       double rel_tol) {
    require_motif_k(k);
    if (k % 2 != 0) throw_invalid("cycle_even requires even k; use cycle_odd");
    const double t = tau.value();
    QuadratureResult integral = fourier_power_integral(k, tau, kernel, rel_tol);
    TheoryValue tv;
    tv.mode = TheoryMode::cycle_even;
    double gamma_n = structural_scale(n, tau);
    tv.components["integral"] = integral.value;
    tv.components["integral.error"] = integral.error_estimate;
    tv.components["log.scale"] = k * (1.0 - t) * std::log(gamma_n);
    tv.components["log.logfactor"] = std::log(std::log(gamma_n));
    tv.components["log.prefactor"] = k * std::log(t - 1.0) - std::log(static_cast<double>(k));
    tv.components["log.choose"] = log_binomial(n, static_cast<std::uint64_t>(k));
    tv.components["log.permutations"] = log_factorial(k);
    tv.components["log.integral"] = std::log(integral.value);
    tv.error_estimate = integral.error_estimate / integral.value;
    tv.converged = integral.converged;
    return finish(tv);
}

TheoryValue cycle_lower_bound_even(std::uint64_t n, int k, Tau tau,
                                   const SlowlyVaryingSpec& svf) {
    require_motif_k(k);
    if (k % 2 != 0) throw_invalid("cycle_lower_bound_even requires even k");
    const double t = tau.value();
    const double gamma_n = structural_scale(n, tau);
    const double log_gamma = std::log(gamma_n);
    const double l_gamma = svf(gamma_n);
    // Substituted h = gamma_n e^s, s in [0, log gamma_n].
    auto integrand = [&](double s) {
        double lo = svf(gamma_n * std::exp(-s));
        double hi = svf(gamma_n * std::exp(s));
        return std::pow(lo * hi / (l_gamma * l_gamma), 0.5 * k);
    };
    QuadratureResult integral = integrate_1d(integrand, 0.0, log_gamma, 1e-10);

    TheoryValue tv;
    tv.mode = TheoryMode::cycle_lower_bound;
    double sqrt_n = std::sqrt(static_cast<double>(n));
    tv.components["integral"] = integral.value;
    tv.components["log.n_power"] =
        0.5 * k * (3.0 - t) * std::log(static_cast<double>(n));
    tv.components["log.svf"] = k * std::log(svf(sqrt_n));
    tv.components["log.integral"] = std::log(integral.value);
    tv.error_estimate = integral.error_estimate / integral.value;
    tv.converged = integral.converged;
    return finish(tv);
}

QuadratureResult cycle_integral_direct(int k, double A, Tau tau, const KernelSpec& kernel,
                                       std::int64_t budget, std::uint64_t seed) {
    require_motif_k(k);
    if (k > 5) throw_unsupported("direct cycle integral supports k <= 5");
    CirculantSpec circ = circulant_build(k);
    auto fn = [k, tau, kernel, &circ](std::span<const double> t) {
        double prod = 1.0;
        for (int r = 0; r < k && prod != 0.0; ++r) {
            double u = 0.0;
            for (int c = 0; c < k; ++c) {
                if (circ.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
                    u += t[static_cast<std::size_t>(c)];
                }
            }
            prod *= kernel_j(u, tau, kernel);
        }
        return prod;
    };
    return integrate_box(fn, k, A, budget, 8, seed);
}

}  // namespace irg
