#include "irgmotif/model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "irgmotif/rng.hpp"

namespace irg {

double SlowlyVaryingSpec::operator()(double h) const {
    if (h < 1.0) throw_domain("slowly-varying function evaluated below support h=1");
    switch (kind) {
        case Kind::constant:
            return param;
        case Kind::log_power:
            return std::pow(1.0 + std::log(h), param);
    }
    throw_invalid("unreachable slowly-varying kind");
}

std::string SlowlyVaryingSpec::name() const {
    return kind == Kind::constant ? "constant" : "log-power";
}

SlowlyVaryingSpec SlowlyVaryingSpec::parse(const std::string& variant, double param) {
    if (variant == "constant") return constant(param);
    if (variant == "log-power") return log_power(param);
    throw_invalid("unknown slowly-varying variant: " + variant);
}

double KernelSpec::operator()(double x) const {
    if (x < 0.0) throw_domain("kernel argument must be nonnegative");
    switch (kind) {
        case Kind::min_one:
            return std::min(1.0, x);
        case Kind::ratio:
            return std::isinf(x) ? 1.0 : x / (1.0 + x);
        case Kind::exp_complement:
            return -std::expm1(-x);
    }
    throw_invalid("unreachable kernel kind");
}

double KernelSpec::log_f_exp(double u) const {
    switch (kind) {
        case Kind::min_one:
            return std::min(0.0, u);
        case Kind::ratio:
            // log(e^u/(1+e^u)), stable on both sides
            return u < 0.0 ? u - std::log1p(std::exp(u)) : -std::log1p(std::exp(-u));
        case Kind::exp_complement: {
            if (u < -700.0) return u;  // f(x) ~ x as x -> 0
            double x = std::exp(u);
            if (x > 700.0) return 0.0;
            return std::log(-std::expm1(-x));
        }
    }
    throw_invalid("unreachable kernel kind");
}

std::string KernelSpec::name() const {
    switch (kind) {
        case Kind::min_one:
            return "min-one";
        case Kind::ratio:
            return "ratio";
        case Kind::exp_complement:
            return "exp-complement";
    }
    return "?";
}

KernelSpec KernelSpec::parse(const std::string& name) {
    if (name == "min-one") return min_one();
    if (name == "ratio") return ratio();
    if (name == "exp-complement") return exp_complement();
    throw_invalid("unknown kernel: " + name);
}

double mean_weight(Tau tau) {
    return (tau.value() - 1.0) / (tau.value() - 2.0);
}

double structural_scale(std::uint64_t n, Tau tau) {
    if (n < 1) throw_invalid("structural scale needs n >= 1");
    return std::sqrt(static_cast<double>(n) * mean_weight(tau));
}

namespace {

// Root of l(h) h^(1-tau) = u on s = log h, bisected to 1e-12 relative in h.
double invert_log_power_tail(double u, double tau, double a) {
    if (a > tau - 1.0) {
        throw_unsupported(
            "log-power tail with a > tau-1 is not a monotone survival function; cannot sample");
    }
    const double log_u = std::log(u);
    auto g = [&](double s) { return a * std::log1p(s) + (1.0 - tau) * s - log_u; };
    double lo = 0.0;
    double hi = 1.0;
    while (g(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw_domain("log-power tail inversion failed to bracket");
    }
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * std::max(1.0, hi); ++iter) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

}  // namespace

double invert_weight_tail(double u, Tau tau, const SlowlyVaryingSpec& svf) {
    if (!(u > 0.0 && u < 1.0)) throw_domain("tail inversion needs u in (0,1)");
    switch (svf.kind) {
        case SlowlyVaryingSpec::Kind::constant: {
            // survival min(1, c h^(1-tau)): below c the tail inverts, above it
            // the distribution sits at the lower endpoint max(1, c^(1/(tau-1))).
            double h = std::pow(svf.param / u, 1.0 / (tau.value() - 1.0));
            return std::max(1.0, h);
        }
        case SlowlyVaryingSpec::Kind::log_power:
            return invert_log_power_tail(u, tau.value(), svf.param);
    }
    throw_invalid("unreachable slowly-varying kind");
}

WeightVector sample_weights(const ModelParams& params, std::uint64_t replication) {
    CounterRng rng(derive_stream(params.seed, replication, StreamPurpose::weights));
    WeightVector out;
    out.weights.resize(params.n);
    for (auto& w : out.weights) w = invert_weight_tail(rng.next_unit(), params.tau, params.svf);
    out.mu = mean_weight(params.tau);
    return out;
}

double connection_probability(double h_i, double h_j, std::uint64_t n, Tau tau,
                              const KernelSpec& kernel) {
    if (h_i < 1.0 || h_j < 1.0) throw_domain("weights must be at least 1");
    return kernel(h_i * h_j / (static_cast<double>(n) * mean_weight(tau)));
}

namespace {

constexpr std::uint64_t kSkipSamplerMinN = 2048;

using EdgeList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

void sample_edges_naive(const ModelParams& params, const WeightVector& weights, CounterRng& rng,
                        EdgeList& edges) {
    const double inv_nmu = 1.0 / (static_cast<double>(params.n) * weights.mu);
    const auto& h = weights.weights;
    for (std::uint32_t i = 0; i + 1 < params.n; ++i) {
        for (std::uint32_t j = i + 1; j < params.n; ++j) {
            double p = params.kernel(h[i] * h[j] * inv_nmu);
            if (rng.next_unit() < p) edges.emplace_back(i, j);
        }
    }
}

// Sorted-weight skip sampling: within a row the remaining probabilities are
// nonincreasing, so candidate gaps follow a geometric law under the running
// upper bound q and each candidate is thinned with probability p/q. Exact for
// the min-one kernel (p monotone in the partner weight).
void sample_edges_skip(const ModelParams& params, const WeightVector& weights, CounterRng& rng,
                       EdgeList& edges) {
    const double inv_nmu = 1.0 / (static_cast<double>(params.n) * weights.mu);
    const auto& h = weights.weights;
    std::vector<std::uint32_t> order(params.n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return h[a] > h[b]; });

    const std::size_t n = order.size();
    for (std::size_t a = 0; a + 1 < n; ++a) {
        const double hi = h[order[a]];
        std::size_t b = a + 1;
        double q = params.kernel(hi * h[order[b]] * inv_nmu);
        while (b < n && q > 0.0) {
            if (q < 1.0) {
                double gap = std::floor(std::log(rng.next_unit()) / std::log1p(-q));
                if (gap >= static_cast<double>(n - b)) break;
                b += static_cast<std::size_t>(gap);
            }
            double p = params.kernel(hi * h[order[b]] * inv_nmu);
            if (p >= q || rng.next_unit() < p / q) edges.emplace_back(order[a], order[b]);
            q = p;
            ++b;
        }
    }
}

}  // namespace

GraphSample sample_graph(const ModelParams& params, const WeightVector& weights,
                         std::uint64_t replication) {
    if (weights.weights.size() != params.n) {
        throw_invalid("weight vector length does not match vertex count");
    }
    CounterRng rng(derive_stream(params.seed, replication, StreamPurpose::edges));
    EdgeList edges;
    if (params.kernel.kind == KernelSpec::Kind::min_one && params.n >= kSkipSamplerMinN) {
        sample_edges_skip(params, weights, rng, edges);
    } else {
        sample_edges_naive(params, weights, rng, edges);
    }
    return GraphSample(params.n, std::move(edges), weights, params.tau.value(), params.kernel,
                       params.seed, replication);
}

GraphSample::GraphSample(std::uint64_t n,
                         std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                         WeightVector weights, double tau, KernelSpec kernel,
                         std::uint64_t master_seed, std::uint64_t replication)
    : n_(n),
      weights_(std::move(weights)),
      tau_(tau),
      kernel_(kernel),
      master_seed_(master_seed),
      replication_(replication) {
    if (weights_.weights.size() != n_) throw_invalid("weight vector length does not match n");
    offsets_.assign(n_ + 1, 0);
    for (const auto& [a, b] : edges) {
        if (a >= n_ || b >= n_ || a == b) throw_invalid("edge endpoint out of range or self-loop");
        ++offsets_[a + 1];
        ++offsets_[b + 1];
    }
    for (std::size_t i = 1; i <= n_; ++i) offsets_[i] += offsets_[i - 1];
    adjacency_.resize(offsets_[n_]);
    std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
        adjacency_[cursor[a]++] = b;
        adjacency_[cursor[b]++] = a;
    }
    for (std::uint32_t v = 0; v < n_; ++v) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    }
    validate();
}

void GraphSample::validate() const {
    for (std::uint32_t v = 0; v < n_; ++v) {
        auto adj = neighbors(v);
        for (std::size_t i = 0; i < adj.size(); ++i) {
            if (adj[i] == v) throw_invalid("self-loop in adjacency");
            if (i > 0 && adj[i] <= adj[i - 1]) throw_invalid("adjacency not strictly sorted");
            if (!has_edge(adj[i], v)) throw_invalid("adjacency not symmetric");
        }
    }
}

std::uint64_t GraphSample::max_degree() const {
    std::uint64_t best = 0;
    for (std::uint32_t v = 0; v < n_; ++v) best = std::max<std::uint64_t>(best, degree(v));
    return best;
}

bool GraphSample::has_edge(std::uint32_t a, std::uint32_t b) const {
    auto adj = neighbors(a);
    return std::binary_search(adj.begin(), adj.end(), b);
}

ProbabilityMatrix::ProbabilityMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
    assert(entries_.size() == n_ * n_);
}

ProbabilityMatrix probability_matrix(const WeightVector& weights, std::uint64_t n, Tau tau,
                                     const KernelSpec& kernel, std::size_t limit) {
    if (n > limit) {
        throw_resource("probability matrix requested for n=" + std::to_string(n) +
                       " above the oracle limit " + std::to_string(limit));
    }
    if (weights.weights.size() != n) throw_invalid("weight vector length does not match n");
    std::vector<double> entries(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double p = connection_probability(weights.weights[i], weights.weights[j], n, tau,
                                              kernel);
            entries[i * n + j] = p;
            entries[j * n + i] = p;
        }
    }
    return ProbabilityMatrix(n, std::move(entries));
}

}  // namespace irg
