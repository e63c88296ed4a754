#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>

#include "irgmotif/bigint.hpp"
#include "irgmotif/model.hpp"

namespace irg {

enum class MotifKind { clique, cycle };

std::string motif_kind_name(MotifKind kind);
MotifKind parse_motif_kind(const std::string& name);

struct MotifCount {
    MotifKind kind = MotifKind::clique;
    int k = 0;
    BigUint count;
    bool k_exceeds_n = false;  // k > n yields a zero count, flagged rather than an error
};

// Cooperative cancellation for long counts; checked periodically inside the
// enumeration loops.
class CancelToken {
public:
    CancelToken() = default;
    explicit CancelToken(std::chrono::steady_clock::time_point deadline) : deadline_(deadline) {}
    bool expired() const {
        return deadline_.time_since_epoch().count() != 0 &&
               std::chrono::steady_clock::now() >= deadline_;
    }

private:
    std::chrono::steady_clock::time_point deadline_{};
};

class TimeoutError : public Error {
public:
    TimeoutError() : Error(errc::resource, "motif counting timed out") {}
};

// Exact k-clique count via degeneracy-ordered extension with sorted
// neighbor-list intersections; each clique is visited once in increasing
// order position.
MotifCount count_cliques(const GraphSample& graph, int k, const CancelToken* cancel = nullptr);

// Exact k-cycle count via DFS over simple paths rooted at the cycle's
// minimum-index vertex; closures are counted per orientation and halved.
MotifCount count_cycles(const GraphSample& graph, int k, const CancelToken* cancel = nullptr);

// Independent oracle: enumerate all k-subsets (and for cycles all Hamiltonian
// arrangements of each subset, canonicalized up to rotation/reflection).
MotifCount brute_force_motifs(const GraphSample& graph, int k, MotifKind kind,
                              std::uint64_t subset_budget = 10'000'000);

// Sum over k-subsets of the product of pairwise connection probabilities.
// k=3 uses the trace of the cubed matrix (diagonal is zero); k>=4 enumerates
// subsets within the budget.
double expected_cliques_given_weights(const ProbabilityMatrix& pm, int k,
                                      std::uint64_t subset_budget = 10'000'000);

// (1/2k) * sum over ordered tuples of distinct vertices of the cyclic product
// of probabilities, implemented as a min-index-rooted DFS mirroring
// count_cycles. The tuple budget n^k/(2k) guards runtime; callers with a
// verified need may raise it.
double expected_cycles_given_weights(const ProbabilityMatrix& pm, int k,
                                     double tuple_budget = 1e8);

}  // namespace irg
