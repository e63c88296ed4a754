#include "irgmotif/quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "irgmotif/rng.hpp"

namespace irg {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights (positive half).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for the odd-indexed Kronrod nodes (and the midpoint).
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

template <typename Value>
double norm_of(const Value& v) {
    if constexpr (std::is_same_v<Value, double>) {
        return std::fabs(v);
    } else {
        return std::abs(v);
    }
}

template <typename Value>
struct PanelResult {
    Value integral{};
    double error = 0.0;
};

// One Gauss-Kronrod 7-15 application with the QUADPACK-style error heuristic.
template <typename Fn, typename Value>
PanelResult<Value> gk15(const Fn& fn, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Value lo[7], hi[7];
    Value fc = fn(center);
    Value resg = kGaussWeights[3] * fc;
    Value resk = kKronrodWeights[7] * fc;
    double resabs = kKronrodWeights[7] * norm_of(fc);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        lo[i] = fn(center - dx);
        hi[i] = fn(center + dx);
        Value sum = lo[i] + hi[i];
        resk += kKronrodWeights[i] * sum;
        resabs += kKronrodWeights[i] * (norm_of(lo[i]) + norm_of(hi[i]));
        if (i % 2 == 1) resg += kGaussWeights[i / 2] * sum;
    }
    const Value reskh = resk * 0.5;
    double resasc = kKronrodWeights[7] * norm_of(fc - reskh);
    for (int i = 0; i < 7; ++i) {
        resasc += kKronrodWeights[i] * (norm_of(lo[i] - reskh) + norm_of(hi[i] - reskh));
    }
    resasc *= std::fabs(half);
    resabs *= std::fabs(half);
    PanelResult<Value> out;
    out.integral = resk * half;
    double err = norm_of(resk - resg) * std::fabs(half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    out.error = err;
    return out;
}

template <typename Value>
struct Interval {
    double a, b;
    Value integral;
    double error;
    bool operator<(const Interval& other) const { return error < other.error; }
};

template <typename Value, typename Result>
Result adaptive_core(const std::function<Value(double)>& fn, double a, double b,
                     const Integrate1dOptions& opts) {
    Result out;
    std::int64_t evals = 0;
    auto counted = [&](double x) {
        ++evals;
        Value v = fn(x);
        if (!std::isfinite(norm_of(v))) {
            std::ostringstream msg;
            msg << "non-finite integrand sample at x=" << x;
            throw_domain(msg.str());
        }
        return v;
    };
    std::priority_queue<Interval<Value>> heap;
    Value total{};
    double total_err = 0.0;
    const int n0 = std::max(1, opts.initial_intervals);
    for (int i = 0; i < n0; ++i) {
        double lo = a + (b - a) * static_cast<double>(i) / n0;
        double hi = a + (b - a) * static_cast<double>(i + 1) / n0;
        auto panel = gk15<decltype(counted), Value>(counted, lo, hi);
        heap.push({lo, hi, panel.integral, panel.error});
        total += panel.integral;
        total_err += panel.error;
    }
    int intervals = n0;
    while (total_err > std::max(opts.rel_tol * norm_of(total), opts.abs_floor) &&
           intervals < opts.max_intervals) {
        Interval<Value> worst = heap.top();
        heap.pop();
        total -= worst.integral;
        total_err -= worst.error;
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // cannot split further in doubles
            total += worst.integral;
            total_err += worst.error;
            break;
        }
        for (auto [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
            auto panel = gk15<decltype(counted), Value>(counted, lo, hi);
            heap.push({lo, hi, panel.integral, panel.error});
            total += panel.integral;
            total_err += panel.error;
        }
        ++intervals;
    }
    out.value = total;
    out.error_estimate = total_err;
    out.evaluations = evals;
    out.converged = total_err <= std::max(opts.rel_tol * norm_of(total), opts.abs_floor);
    return out;
}

int substitution_power(double alpha) {
    if (alpha >= 0.0) return 1;
    if (alpha <= -1.0) throw_invalid("declared singularity exponent must exceed -1");
    return std::max(1, static_cast<int>(std::ceil(1.0 / (1.0 + alpha))));
}

// Assemble the transformed problem on a finite interval.
template <typename Value>
std::function<Value(double)> transform_finite(const std::function<Value(double)>& fn, double a,
                                              double b, double alpha_a, double& lo, double& hi) {
    lo = 0.0;
    hi = 1.0;
    const double len = b - a;
    const int p = substitution_power(alpha_a);
    if (p == 1) {
        lo = a;
        hi = b;
        return fn;
    }
    return [fn, a, len, p](double s) -> Value {
        double sp = std::pow(s, p - 1);
        double x = a + len * sp * s;
        return fn(x) * (len * p * sp);
    };
}

// Map [c, inf) onto (0,1] via x = c + (1-y)/y, with an optional power
// substitution when the integrand decays algebraically like x^-beta.
template <typename Value>
std::function<Value(double)> transform_tail(const std::function<Value(double)>& fn, double c,
                                            double beta) {
    int p = 1;
    if (beta > 1.0 && beta < 3.0) p = substitution_power(beta - 2.0);
    return [fn, c, p](double s) -> Value {
        double y = std::pow(s, p);
        if (y <= 0.0) return Value{};
        double x = c + (1.0 - y) / y;
        return fn(x) * (static_cast<double>(p) * std::pow(s, p - 1) / (y * y));
    };
}

template <typename Value, typename Result>
Result integrate_dispatch(const std::function<Value(double)>& fn, double a, double b,
                          const Integrate1dOptions& opts) {
    const bool a_inf = std::isinf(a) && a < 0.0;
    const bool b_inf = std::isinf(b) && b > 0.0;
    if (a_inf && b_inf) {
        std::function<Value(double)> left = [fn](double x) { return fn(-x); };
        auto r1 = integrate_dispatch<Value, Result>(left, 0.0, b, opts);
        auto r2 = integrate_dispatch<Value, Result>(fn, 0.0, b, opts);
        Result out;
        out.value = r1.value + r2.value;
        out.error_estimate = r1.error_estimate + r2.error_estimate;
        out.evaluations = r1.evaluations + r2.evaluations;
        out.converged = r1.converged && r2.converged;
        return out;
    }
    if (a_inf) throw_invalid("lower endpoint -inf is only supported together with +inf");
    if (!b_inf) {
        double lo, hi;
        auto g = transform_finite<Value>(fn, a, b, opts.alpha_a, lo, hi);
        return adaptive_core<Value, Result>(g, lo, hi, opts);
    }
    // Semi-infinite: near part [a, a+1] keeps the endpoint substitution, the
    // tail [a+1, inf) is mapped onto (0,1].
    double lo, hi;
    auto near_g = transform_finite<Value>(fn, a, a + 1.0, opts.alpha_a, lo, hi);
    auto near_r = adaptive_core<Value, Result>(near_g, lo, hi, opts);
    auto tail_g = transform_tail<Value>(fn, a + 1.0, opts.decay_b);
    auto tail_r = adaptive_core<Value, Result>(tail_g, 0.0, 1.0, opts);
    Result out;
    out.value = near_r.value + tail_r.value;
    out.error_estimate = near_r.error_estimate + tail_r.error_estimate;
    out.evaluations = near_r.evaluations + tail_r.evaluations;
    out.converged = near_r.converged && tail_r.converged;
    return out;
}

}  // namespace

QuadratureResult integrate_1d(const std::function<double(double)>& fn, double a, double b,
                              const Integrate1dOptions& opts) {
    return integrate_dispatch<double, QuadratureResult>(fn, a, b, opts);
}

QuadratureResult integrate_1d(const std::function<double(double)>& fn, double a, double b,
                              double rel_tol) {
    Integrate1dOptions opts;
    opts.rel_tol = rel_tol;
    return integrate_1d(fn, a, b, opts);
}

ComplexQuadratureResult integrate_1d_complex(
    const std::function<std::complex<double>(double)>& fn, double a, double b,
    const Integrate1dOptions& opts) {
    return integrate_dispatch<std::complex<double>, ComplexQuadratureResult>(fn, a, b, opts);
}

namespace {

// Sobol direction numbers, first ten dimensions (degree, polynomial bits,
// initial odd values).
struct SobolRow {
    int s;
    unsigned a;
    unsigned m[5];
};
constexpr SobolRow kSobolRows[9] = {
    {1, 0, {1, 0, 0, 0, 0}},  {2, 1, {1, 3, 0, 0, 0}},  {3, 1, {1, 3, 1, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0}},  {4, 1, {1, 1, 3, 3, 0}},  {4, 4, {1, 3, 5, 13, 0}},
    {5, 2, {1, 1, 5, 5, 17}}, {5, 4, {1, 1, 5, 5, 5}},  {5, 7, {1, 1, 7, 11, 19}},
};
constexpr int kSobolBits = 32;
constexpr int kSobolMaxDim = 10;

class SobolSequence {
public:
    explicit SobolSequence(int dim) : dim_(dim), state_(static_cast<std::size_t>(dim), 0) {
        if (dim < 1 || dim > kSobolMaxDim) throw_invalid("Sobol sequence supports 1..10 dims");
        v_.assign(static_cast<std::size_t>(dim), std::vector<std::uint32_t>(kSobolBits));
        for (int j = 0; j < kSobolBits; ++j) v_[0][static_cast<std::size_t>(j)] = 1u << (31 - j);
        for (int d = 1; d < dim; ++d) {
            const SobolRow& row = kSobolRows[d - 1];
            std::vector<std::uint32_t> m(static_cast<std::size_t>(kSobolBits));
            for (int j = 0; j < row.s; ++j) m[static_cast<std::size_t>(j)] = row.m[j];
            for (int j = row.s; j < kSobolBits; ++j) {
                std::uint32_t value = m[static_cast<std::size_t>(j - row.s)] ^
                                      (m[static_cast<std::size_t>(j - row.s)] << row.s);
                for (int t = 1; t < row.s; ++t) {
                    if ((row.a >> (row.s - 1 - t)) & 1u) {
                        value ^= m[static_cast<std::size_t>(j - t)] << t;
                    }
                }
                m[static_cast<std::size_t>(j)] = value;
            }
            for (int j = 0; j < kSobolBits; ++j) {
                v_[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] =
                    m[static_cast<std::size_t>(j)] << (31 - j);
            }
        }
    }

    // Advance to the next point (Gray-code order); index counts points
    // produced so far.
    void next(std::span<std::uint32_t> out) {
        for (int d = 0; d < dim_; ++d) out[static_cast<std::size_t>(d)] = state_[static_cast<std::size_t>(d)];
        std::uint64_t i = ++index_;
        int c = std::countr_zero(i);
        for (int d = 0; d < dim_; ++d) {
            state_[static_cast<std::size_t>(d)] ^= v_[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)];
        }
    }

private:
    int dim_;
    std::uint64_t index_ = 0;
    std::vector<std::vector<std::uint32_t>> v_;
    std::vector<std::uint32_t> state_;
};

}  // namespace

QuadratureResult integrate_unit_cube(const IntegrandSpec& spec, std::int64_t budget,
                                     int replications, std::uint64_t seed) {
    if (spec.dim < 1 || spec.dim > 8) throw_invalid("unit-cube integration supports 1..8 dims");
    if (!spec.alpha.empty() && spec.alpha.size() != static_cast<std::size_t>(spec.dim)) {
        throw_invalid("alpha declaration length must match dimension");
    }
    replications = std::max(replications, 8);
    const std::int64_t points = std::max<std::int64_t>(budget / replications, 16);

    std::vector<int> power(static_cast<std::size_t>(spec.dim), 1);
    for (std::size_t i = 0; i < spec.alpha.size(); ++i) power[i] = substitution_power(spec.alpha[i]);

    std::vector<double> estimates;
    estimates.reserve(static_cast<std::size_t>(replications));
    std::vector<std::uint32_t> raw(static_cast<std::size_t>(spec.dim));
    std::vector<double> t(static_cast<std::size_t>(spec.dim));
    CounterRng shift_rng(derive_stream(seed, 0, StreamPurpose::quadrature));
    std::int64_t evals = 0;
    for (int r = 0; r < replications; ++r) {
        std::vector<std::uint32_t> shift(static_cast<std::size_t>(spec.dim));
        for (auto& s : shift) s = static_cast<std::uint32_t>(shift_rng.next_u64() >> 32);
        SobolSequence sobol(spec.dim);
        double acc = 0.0;
        for (std::int64_t i = 0; i < points; ++i) {
            sobol.next(raw);
            double jac = 1.0;
            for (int d = 0; d < spec.dim; ++d) {
                double s = (static_cast<double>(raw[static_cast<std::size_t>(d)] ^
                                                shift[static_cast<std::size_t>(d)]) +
                            0.5) *
                           0x1.0p-32;
                int p = power[static_cast<std::size_t>(d)];
                if (p == 1) {
                    t[static_cast<std::size_t>(d)] = s;
                } else {
                    double sp = std::pow(s, p - 1);
                    t[static_cast<std::size_t>(d)] = sp * s;
                    jac *= p * sp;
                }
            }
            double f = spec.fn(t);
            ++evals;
            if (!std::isfinite(f)) {
                std::ostringstream msg;
                msg << "non-finite integrand sample at (";
                for (int d = 0; d < spec.dim; ++d) {
                    msg << (d ? "," : "") << t[static_cast<std::size_t>(d)];
                }
                msg << ")";
                throw_domain(msg.str());
            }
            acc += f * jac;
        }
        estimates.push_back(acc / static_cast<double>(points));
    }
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(replications);
    double var = 0.0;
    for (double e : estimates) var += (e - mean) * (e - mean);
    var /= static_cast<double>(replications - 1);
    QuadratureResult out;
    out.value = mean;
    out.error_estimate = std::sqrt(var / static_cast<double>(replications));
    out.evaluations = evals;
    return out;
}

QuadratureResult integrate_box(const std::function<double(std::span<const double>)>& fn, int k,
                               double A, std::int64_t budget, int replications,
                               std::uint64_t seed) {
    if (k < 1 || k > 5) throw_invalid("box integration supports 1..5 dims");
    if (A < 0.0) throw_invalid("box half-width must be nonnegative");
    if (A == 0.0) return QuadratureResult{0.0, 0.0, 0, true};
    IntegrandSpec spec;
    spec.dim = k;
    std::vector<double> x(static_cast<std::size_t>(k));
    const double volume = std::pow(2.0 * A, k);
    spec.fn = [&fn, &x, A, k](std::span<const double> u) {
        for (int d = 0; d < k; ++d) {
            x[static_cast<std::size_t>(d)] = -A + 2.0 * A * u[static_cast<std::size_t>(d)];
        }
        return fn(x);
    };
    QuadratureResult r = integrate_unit_cube(spec, budget, replications, seed);
    r.value *= volume;
    r.error_estimate *= volume;
    return r;
}

QuadratureResult integrate_real_line_power(const std::function<double(double)>& fn, int k,
                                           double rel_tol,
                                           const std::function<double(double)>& tail_bound) {
    if (k < 1) throw_invalid("integrate_real_line_power needs k >= 1");
    Integrate1dOptions opts;
    opts.rel_tol = rel_tol * 0.5;
    double V = 1.0;
    QuadratureResult half = integrate_1d(fn, 0.0, V, opts);
    std::int64_t evals = half.evaluations;
    double last_increment = std::numeric_limits<double>::infinity();
    int quiet_doublings = 0;
    while (V < 1e12) {
        if (tail_bound) {
            if (tail_bound(V) <= 0.1 * rel_tol * std::fabs(half.value)) break;
        } else if (quiet_doublings >= 2) {
            break;
        }
        QuadratureResult piece = integrate_1d(fn, V, 2.0 * V, opts);
        evals += piece.evaluations;
        half.value += piece.value;
        half.error_estimate += piece.error_estimate;
        half.converged = half.converged && piece.converged;
        last_increment = std::fabs(piece.value);
        quiet_doublings = (last_increment <= 0.05 * rel_tol * std::fabs(half.value))
                              ? quiet_doublings + 1
                              : 0;
        V *= 2.0;
    }
    QuadratureResult out;
    out.value = 2.0 * half.value;
    out.error_estimate = 2.0 * half.error_estimate + (tail_bound ? 2.0 * tail_bound(V) : 0.0);
    out.evaluations = evals;
    out.converged = half.converged;
    return out;
}

}  // namespace irg
