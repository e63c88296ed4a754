#include <doctest.h>

#include <cmath>
#include <vector>

#include "irgmotif/motifs.hpp"
#include "irgmotif/rng.hpp"

using namespace irg;

namespace {

GraphSample make_graph(std::uint64_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
    WeightVector w;
    w.weights.assign(n, 1.0);
    w.mu = 3.0;
    return GraphSample(n, std::move(edges), std::move(w), 2.5, KernelSpec::min_one(), 0, 0);
}

GraphSample complete_graph(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    return make_graph(n, std::move(edges));
}

GraphSample cycle_graph(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    }
    return make_graph(n, std::move(edges));
}

GraphSample petersen_graph() {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);           // outer pentagon
        edges.emplace_back(i, i + 5);                 // spokes
        edges.emplace_back(i + 5, (i + 2) % 5 + 5);   // inner pentagram
    }
    for (auto& [a, b] : edges) {
        if (a > b) std::swap(a, b);
    }
    return make_graph(10, std::move(edges));
}

GraphSample random_graph(std::uint32_t n, double p, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (rng.next_unit() < p) edges.emplace_back(i, j);
        }
    }
    return make_graph(n, std::move(edges));
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    return BigUint::binomial(n, k).low_u64();
}

}  // namespace

TEST_CASE("clique counts on complete graphs") {
    GraphSample k6 = complete_graph(6);
    CHECK(count_cliques(k6, 4).count == BigUint(15));  // C(6,4)
    for (std::uint32_t n = 3; n <= 9; ++n) {
        GraphSample kn = complete_graph(n);
        for (int k = 3; k <= static_cast<int>(n); ++k) {
            CHECK(count_cliques(kn, k).count ==
                  BigUint::binomial(n, static_cast<std::uint64_t>(k)));
        }
    }
}

TEST_CASE("cycle counts on closed forms") {
    // K_4 has 4!/(2*4) * C(4,4) = 3 four-cycles
    CHECK(count_cycles(complete_graph(4), 4).count == BigUint(3));
    // C_5 is triangle-free and contains exactly itself as a 5-cycle
    GraphSample c5 = cycle_graph(5);
    CHECK(count_cliques(c5, 3).count == BigUint(0));
    CHECK(count_cycles(c5, 5).count == BigUint(1));
    CHECK(count_cycles(c5, 3).count == BigUint(0));
    CHECK(count_cycles(c5, 4).count == BigUint(0));
    // K_n: k!/(2k) C(n,k) cycles
    for (std::uint32_t n = 3; n <= 9; ++n) {
        GraphSample kn = complete_graph(n);
        for (int k = 3; k <= static_cast<int>(n); ++k) {
            BigUint expected = BigUint::factorial(static_cast<std::uint64_t>(k));
            expected.mul_u64(binom(n, static_cast<std::uint64_t>(k)));
            // divide by 2k
            BigUint divisor_check = expected;
            std::uint64_t cycles = count_cycles(kn, k).count.low_u64();
            CHECK(cycles * 2 * static_cast<std::uint64_t>(k) == expected.low_u64());
        }
    }
}

TEST_CASE("petersen graph cycles agree with brute force") {
    GraphSample p = petersen_graph();
    MotifCount fast = count_cycles(p, 5);
    MotifCount brute = brute_force_motifs(p, 5, MotifKind::cycle);
    CHECK(fast.count == brute.count);
    CHECK(fast.count == BigUint(12));  // known: 12 pentagons
    CHECK(count_cycles(p, 3).count == BigUint(0));
    CHECK(count_cycles(p, 4).count == BigUint(0));
    CHECK(count_cycles(p, 6).count == brute_force_motifs(p, 6, MotifKind::cycle).count);
}

TEST_CASE("brute force basics") {
    GraphSample k5 = complete_graph(5);
    CHECK(brute_force_motifs(k5, 3, MotifKind::clique).count == BigUint(10));
    CHECK(brute_force_motifs(k5, 5, MotifKind::cycle).count == BigUint(12));
    GraphSample empty = make_graph(8, {});
    CHECK(brute_force_motifs(empty, 3, MotifKind::clique).count == BigUint(0));
    CHECK(brute_force_motifs(empty, 4, MotifKind::cycle).count == BigUint(0));
    CHECK_THROWS_AS(brute_force_motifs(complete_graph(60), 12, MotifKind::clique), Error);
}

TEST_CASE("edge cases for k") {
    GraphSample k5 = complete_graph(5);
    CHECK_THROWS_AS(count_cliques(k5, 2), Error);
    CHECK_THROWS_AS(count_cycles(k5, 2), Error);
    MotifCount over = count_cliques(k5, 6);
    CHECK(over.count == BigUint(0));
    CHECK(over.k_exceeds_n);
    CHECK(count_cycles(k5, 7).k_exceeds_n);
}

TEST_CASE("fast counters equal brute force on random graphs") {
    int cases = 0;
    for (std::uint64_t seed = 1; seed <= 34; ++seed) {
        std::uint32_t n = 8 + static_cast<std::uint32_t>(seed % 9);  // 8..16
        double p = 0.15 + 0.06 * static_cast<double>(seed % 7);
        GraphSample g = random_graph(n, p, seed * 977);
        for (int k : {3, 4, 5, 6}) {
            if (k > static_cast<int>(n)) continue;
            CHECK(count_cliques(g, k).count ==
                  brute_force_motifs(g, k, MotifKind::clique).count);
            CHECK(count_cycles(g, k).count ==
                  brute_force_motifs(g, k, MotifKind::cycle).count);
            ++cases;
        }
    }
    CHECK(cases >= 100);
}

TEST_CASE("adding an edge never decreases counts") {
    CounterRng rng(314);
    GraphSample g = random_graph(12, 0.3, 2024);
    for (int trial = 0; trial < 20; ++trial) {
        // pick a non-edge
        std::uint32_t a = 0, b = 0;
        do {
            a = static_cast<std::uint32_t>(rng.next_u64() % 12);
            b = static_cast<std::uint32_t>(rng.next_u64() % 12);
        } while (a == b || g.has_edge(a, b));
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (std::uint32_t v = 0; v < 12; ++v) {
            for (std::uint32_t u : g.neighbors(v)) {
                if (u > v) edges.emplace_back(v, u);
            }
        }
        edges.emplace_back(std::min(a, b), std::max(a, b));
        GraphSample augmented = make_graph(12, std::move(edges));
        for (int k : {3, 4, 5}) {
            CHECK(count_cliques(g, k).count <= count_cliques(augmented, k).count);
            CHECK(count_cycles(g, k).count <= count_cycles(augmented, k).count);
        }
        g = std::move(augmented);
    }
}

TEST_CASE("expected cliques given weights: trace formula") {
    // all p = 1/9 on three vertices: expectation (1/9)^3
    std::vector<double> entries(9, 1.0 / 9.0);
    entries[0] = entries[4] = entries[8] = 0.0;
    ProbabilityMatrix pm(3, entries);
    CHECK(expected_cliques_given_weights(pm, 3) ==
          doctest::Approx(std::pow(1.0 / 9.0, 3)).epsilon(1e-12));
}

TEST_CASE("one zero probability in every triple kills the expectation") {
    // vertex 0 disconnected: every triple must use a zero edge unless it
    // avoids vertex 0, so isolate a 3-vertex graph through vertex 0
    std::vector<double> entries(9, 0.5);
    for (int i = 0; i < 3; ++i) entries[static_cast<std::size_t>(i) * 3 + i] = 0.0;
    entries[0 * 3 + 1] = entries[1 * 3 + 0] = 0.0;
    ProbabilityMatrix pm(3, entries);
    CHECK(expected_cliques_given_weights(pm, 3) == doctest::Approx(0.0));
}

TEST_CASE("trace route equals subset enumeration on random weights") {
    ModelParams params(50, Tau(2.5), KernelSpec::min_one(), SlowlyVaryingSpec::constant(), 7);
    WeightVector w = sample_weights(params);
    ProbabilityMatrix pm = probability_matrix(w, 50, params.tau, params.kernel);
    double trace_route = expected_cliques_given_weights(pm, 3);
    // independent oracle: direct subset sum
    double subset_sum = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        for (std::size_t j = i + 1; j < 50; ++j) {
            for (std::size_t l = j + 1; l < 50; ++l) {
                subset_sum += pm.at(i, j) * pm.at(j, l) * pm.at(i, l);
            }
        }
    }
    CHECK(trace_route == doctest::Approx(subset_sum).epsilon(1e-10));
}

TEST_CASE("expected cycles given weights: constant matrices") {
    // n=3, all p=q: single triangle with probability q^3
    double q = 0.37;
    std::vector<double> e3(9, q);
    e3[0] = e3[4] = e3[8] = 0.0;
    CHECK(expected_cycles_given_weights(ProbabilityMatrix(3, e3), 3) ==
          doctest::Approx(q * q * q).epsilon(1e-12));
    // n=4, k=4: three four-cycles
    std::vector<double> e4(16, q);
    for (int i = 0; i < 4; ++i) e4[static_cast<std::size_t>(i) * 4 + i] = 0.0;
    CHECK(expected_cycles_given_weights(ProbabilityMatrix(4, e4), 4) ==
          doctest::Approx(3.0 * std::pow(q, 4)).epsilon(1e-12));
}

TEST_CASE("cycle DFS equals raw ordered-tuple sum") {
    ModelParams params(10, Tau(2.5), KernelSpec::ratio(), SlowlyVaryingSpec::constant(), 17);
    WeightVector w = sample_weights(params);
    ProbabilityMatrix pm = probability_matrix(w, 10, params.tau, params.kernel);
    double dfs = expected_cycles_given_weights(pm, 4);
    // raw sum over ordered tuples of distinct vertices, divided by 2k
    double raw = 0.0;
    for (std::size_t a = 0; a < 10; ++a) {
        for (std::size_t b = 0; b < 10; ++b) {
            if (b == a) continue;
            for (std::size_t c = 0; c < 10; ++c) {
                if (c == a || c == b) continue;
                for (std::size_t d = 0; d < 10; ++d) {
                    if (d == a || d == b || d == c) continue;
                    raw += pm.at(a, b) * pm.at(b, c) * pm.at(c, d) * pm.at(d, a);
                }
            }
        }
    }
    raw /= 8.0;
    CHECK(dfs == doctest::Approx(raw).epsilon(1e-10));
}

TEST_CASE("expected cycle budget") {
    std::vector<double> entries(400, 0.1);
    for (int i = 0; i < 20; ++i) entries[static_cast<std::size_t>(i) * 20 + i] = 0.0;
    ProbabilityMatrix pm(20, entries);
    CHECK_THROWS_AS(expected_cycles_given_weights(pm, 4, 1e3), Error);
    CHECK_NOTHROW(expected_cycles_given_weights(pm, 4, 1e6));
}

TEST_CASE("sample mean over edge realizations matches the conditional oracle") {
    // fixed weights, many edge draws; k in {3,4} cliques
    const std::uint64_t n = 100;
    ModelParams params(n, Tau(2.5), KernelSpec::min_one(), SlowlyVaryingSpec::constant(), 4242);
    WeightVector w = sample_weights(params);
    ProbabilityMatrix pm = probability_matrix(w, n, params.tau, params.kernel);
    const int m = 2000;
    for (int k : {3, 4}) {
        double oracle = (k == 3) ? expected_cliques_given_weights(pm, 3)
                                 : expected_cliques_given_weights(pm, 4, 6'000'000);
        double mean = 0.0, ss = 0.0;
        for (int rep = 0; rep < m; ++rep) {
            GraphSample g = sample_graph(params, w, static_cast<std::uint64_t>(rep));
            double c = count_cliques(g, k).count.to_double();
            mean += c;
            ss += c * c;
        }
        mean /= m;
        double sd = std::sqrt((ss / m - mean * mean) * m / (m - 1));
        double gate = 3.0 * sd / std::sqrt(static_cast<double>(m));
        CHECK(std::fabs(mean - oracle) <= gate);
    }
}

TEST_CASE("timeout cancellation fires") {
    GraphSample g = complete_graph(64);
    CancelToken immediate(std::chrono::steady_clock::now() - std::chrono::milliseconds(1));
    CHECK_THROWS_AS(count_cliques(g, 10, &immediate), TimeoutError);
    CHECK_THROWS_AS(count_cycles(g, 10, &immediate), TimeoutError);
}
