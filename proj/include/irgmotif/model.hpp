#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "irgmotif/errors.hpp"

namespace irg {

// Power-law tail exponent, restricted to the open interval (2,3): finite mean,
// infinite variance.
class Tau {
public:
    explicit Tau(double value) : value_(value) {
        if (!(value > 2.0 && value < 3.0)) {
            throw_invalid("tau must lie strictly inside (2,3), got " + std::to_string(value));
        }
    }
    double value() const { return value_; }

private:
    double value_;
};

// Slowly-varying modulation l(h) of the weight tail P(H>h) = l(h) h^(1-tau).
// The constant variant with c=1 is the pure power law; log_power carries
// l(h) = (log(e*h))^a = (1+log h)^a.
struct SlowlyVaryingSpec {
    enum class Kind { constant, log_power };

    Kind kind = Kind::constant;
    double param = 1.0;  // c for constant, a for log_power

    static SlowlyVaryingSpec constant(double c = 1.0) {
        if (!(c > 0.0)) throw_invalid("constant slowly-varying factor must be positive");
        return SlowlyVaryingSpec{Kind::constant, c};
    }
    static SlowlyVaryingSpec log_power(double a) {
        return SlowlyVaryingSpec{Kind::log_power, a};
    }

    double operator()(double h) const;  // l(h) for h >= 1
    bool is_pure_power_law() const { return kind == Kind::constant && param == 1.0; }

    std::string name() const;
    static SlowlyVaryingSpec parse(const std::string& variant, double param);
};

// Connection kernel f: nondecreasing, f(0)=0, f(x)/x -> 1 at 0, f -> 1 at
// infinity. Three standard members of the class.
struct KernelSpec {
    enum class Kind { min_one, ratio, exp_complement };

    Kind kind = Kind::min_one;

    double operator()(double x) const;
    // log f(e^u), stable for large |u|.
    double log_f_exp(double u) const;

    std::string name() const;
    static KernelSpec parse(const std::string& name);
    static KernelSpec min_one() { return KernelSpec{Kind::min_one}; }
    static KernelSpec ratio() { return KernelSpec{Kind::ratio}; }
    static KernelSpec exp_complement() { return KernelSpec{Kind::exp_complement}; }
};

struct ModelParams {
    std::uint64_t n = 0;
    Tau tau;
    KernelSpec kernel;
    SlowlyVaryingSpec svf;
    std::uint64_t seed = 0;

    ModelParams(std::uint64_t n_, Tau tau_, KernelSpec kernel_, SlowlyVaryingSpec svf_,
                std::uint64_t seed_)
        : n(n_), tau(tau_), kernel(kernel_), svf(svf_), seed(seed_) {
        if (n < 3) throw_invalid("vertex count must be at least 3");
    }
};

// Sampled vertex weights plus the mean used to normalize connection
// probabilities. mu is pinned to the pure-power-law mean (tau-1)/(tau-2) for
// every slowly-varying variant: the connection probability contract divides
// by n*mean_weight(tau) regardless of the tail modulation.
struct WeightVector {
    std::vector<double> weights;
    double mu = 0.0;
};

// Immutable simple undirected graph in CSR form together with the weights
// that generated it and the seed lineage (master seed, replication).
class GraphSample {
public:
    GraphSample(std::uint64_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                WeightVector weights, double tau, KernelSpec kernel, std::uint64_t master_seed,
                std::uint64_t replication);

    std::uint64_t order() const { return n_; }
    std::uint64_t edge_count() const { return adjacency_.size() / 2; }
    std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(std::uint32_t v) const {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }
    std::uint64_t max_degree() const;
    bool has_edge(std::uint32_t a, std::uint32_t b) const;

    const WeightVector& weights() const { return weights_; }
    double tau() const { return tau_; }
    const KernelSpec& kernel() const { return kernel_; }
    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t replication() const { return replication_; }

private:
    void validate() const;

    std::uint64_t n_;
    std::vector<std::uint64_t> offsets_;
    std::vector<std::uint32_t> adjacency_;
    WeightVector weights_;
    double tau_;
    KernelSpec kernel_;
    std::uint64_t master_seed_;
    std::uint64_t replication_;
};

// Dense symmetric matrix of pairwise connection probabilities, zero diagonal.
// Oracle support; bounded by an explicit size limit.
class ProbabilityMatrix {
public:
    ProbabilityMatrix(std::size_t n, std::vector<double> entries);
    std::size_t order() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    const std::vector<double>& raw() const { return entries_; }

private:
    std::size_t n_;
    std::vector<double> entries_;
};

double mean_weight(Tau tau);
double structural_scale(std::uint64_t n, Tau tau);

// Inverse-CDF draw for a single uniform; exposed for distribution tests.
double invert_weight_tail(double u, Tau tau, const SlowlyVaryingSpec& svf);

WeightVector sample_weights(const ModelParams& params, std::uint64_t replication = 0);

double connection_probability(double h_i, double h_j, std::uint64_t n, Tau tau,
                              const KernelSpec& kernel);

GraphSample sample_graph(const ModelParams& params, const WeightVector& weights,
                         std::uint64_t replication);

ProbabilityMatrix probability_matrix(const WeightVector& weights, std::uint64_t n, Tau tau,
                                     const KernelSpec& kernel, std::size_t limit = 2000);

}  // namespace irg
