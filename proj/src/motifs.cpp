#include "irgmotif/motifs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace irg {

std::string motif_kind_name(MotifKind kind) {
    return kind == MotifKind::clique ? "clique" : "cycle";
}

MotifKind parse_motif_kind(const std::string& name) {
    if (name == "clique") return MotifKind::clique;
    if (name == "cycle") return MotifKind::cycle;
    throw_invalid("unknown motif kind: " + name);
}

namespace {

void require_k(int k) {
    if (k < 3) throw_invalid("motif size k must be at least 3, got " + std::to_string(k));
}

// Smallest-last ordering; peel the minimum-degree vertex using per-degree
// doubly linked lists.
std::vector<std::uint32_t> degeneracy_order(const GraphSample& g) {
    constexpr std::uint32_t kNil = 0xFFFFFFFFu;
    const auto n = static_cast<std::uint32_t>(g.order());
    std::vector<std::uint32_t> deg(n), order;
    order.reserve(n);
    std::uint32_t max_deg = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        max_deg = std::max(max_deg, deg[v]);
    }
    std::vector<std::uint32_t> head(max_deg + 1, kNil), prev(n, kNil), next(n, kNil);
    auto unlink = [&](std::uint32_t v) {
        if (prev[v] != kNil) next[prev[v]] = next[v];
        else head[deg[v]] = next[v];
        if (next[v] != kNil) prev[next[v]] = prev[v];
    };
    auto push = [&](std::uint32_t v) {
        prev[v] = kNil;
        next[v] = head[deg[v]];
        if (next[v] != kNil) prev[next[v]] = v;
        head[deg[v]] = v;
    };
    for (std::uint32_t v = n; v-- > 0;) push(v);
    std::vector<bool> removed(n, false);
    std::uint32_t d = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        while (head[d] == kNil) ++d;
        std::uint32_t v = head[d];
        unlink(v);
        removed[v] = true;
        order.push_back(v);
        for (std::uint32_t u : g.neighbors(v)) {
            if (removed[u]) continue;
            unlink(u);
            --deg[u];
            push(u);
            d = std::min(d, deg[u]);
        }
    }
    return order;
}

struct CliqueDag {
    // out[v] holds rank labels of later neighbors, sorted ascending.
    std::vector<std::vector<std::uint32_t>> out;
};

CliqueDag build_dag(const GraphSample& g) {
    const auto n = static_cast<std::uint32_t>(g.order());
    auto order = degeneracy_order(g);
    std::vector<std::uint32_t> rank(n);
    for (std::uint32_t i = 0; i < n; ++i) rank[order[i]] = i;
    CliqueDag dag;
    dag.out.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        auto& out = dag.out[rank[v]];
        for (std::uint32_t u : g.neighbors(v)) {
            if (rank[u] > rank[v]) out.push_back(rank[u]);
        }
        std::sort(out.begin(), out.end());
    }
    return dag;
}

class CliqueCounter {
public:
    CliqueCounter(const CliqueDag& dag, int k, const CancelToken* cancel)
        : dag_(dag), k_(k), cancel_(cancel), scratch_(static_cast<std::size_t>(k)) {}

    BigUint run() {
        BigUint total;
        for (std::uint32_t v = 0; v < dag_.out.size(); ++v) {
            subtotal_ = 0;
            extend(dag_.out[v], k_ - 1);
            total.add_u128(subtotal_);
            if (cancel_ && cancel_->expired()) throw TimeoutError();
        }
        return total;
    }

private:
    void extend(const std::vector<std::uint32_t>& cand, int need) {
        if (static_cast<int>(cand.size()) < need) return;
        if (need == 1) {
            subtotal_ += cand.size();
            return;
        }
        if ((++steps_ & 0xFFFF) == 0 && cancel_ && cancel_->expired()) throw TimeoutError();
        auto& next = scratch_[static_cast<std::size_t>(need) - 2];
        for (std::uint32_t u : cand) {
            const auto& out_u = dag_.out[u];
            next.clear();
            std::set_intersection(cand.begin(), cand.end(), out_u.begin(), out_u.end(),
                                  std::back_inserter(next));
            extend(next, need - 1);
        }
    }

    const CliqueDag& dag_;
    int k_;
    const CancelToken* cancel_;
    std::vector<std::vector<std::uint32_t>> scratch_;
    unsigned __int128 subtotal_ = 0;
    std::uint64_t steps_ = 0;
};

}  // namespace

MotifCount count_cliques(const GraphSample& graph, int k, const CancelToken* cancel) {
    require_k(k);
    MotifCount result{MotifKind::clique, k, BigUint(), false};
    if (static_cast<std::uint64_t>(k) > graph.order()) {
        result.k_exceeds_n = true;
        return result;
    }
    CliqueDag dag = build_dag(graph);
    result.count = CliqueCounter(dag, k, cancel).run();
    return result;
}

namespace {

class CycleCounter {
public:
    CycleCounter(const GraphSample& g, int k, const CancelToken* cancel)
        : g_(g), k_(k), cancel_(cancel), visited_(g.order(), false), root_adj_(g.order(), false) {}

    BigUint run() {
        BigUint total;
        const auto n = static_cast<std::uint32_t>(g_.order());
        for (root_ = 0; root_ < n; ++root_) {
            for (std::uint32_t u : g_.neighbors(root_)) root_adj_[u] = true;
            root_count_ = 0;
            visited_[root_] = true;
            dfs(root_, 1);
            visited_[root_] = false;
            for (std::uint32_t u : g_.neighbors(root_)) root_adj_[u] = false;
            total.add_u128(root_count_);
            if (cancel_ && cancel_->expired()) throw TimeoutError();
        }
        total.shr1();  // each cycle traversed in both orientations
        return total;
    }

private:
    void dfs(std::uint32_t v, int depth) {
        if ((++steps_ & 0xFFFF) == 0 && cancel_ && cancel_->expired()) throw TimeoutError();
        if (depth == k_ - 1) {
            for (std::uint32_t u : g_.neighbors(v)) {
                if (u > root_ && !visited_[u] && root_adj_[u]) ++root_count_;
            }
            return;
        }
        for (std::uint32_t u : g_.neighbors(v)) {
            if (u <= root_ || visited_[u]) continue;
            visited_[u] = true;
            dfs(u, depth + 1);
            visited_[u] = false;
        }
    }

    const GraphSample& g_;
    int k_;
    const CancelToken* cancel_;
    std::uint32_t root_ = 0;
    std::vector<bool> visited_;
    std::vector<bool> root_adj_;
    unsigned __int128 root_count_ = 0;
    std::uint64_t steps_ = 0;
};

}  // namespace

MotifCount count_cycles(const GraphSample& graph, int k, const CancelToken* cancel) {
    require_k(k);
    MotifCount result{MotifKind::cycle, k, BigUint(), false};
    if (static_cast<std::uint64_t>(k) > graph.order()) {
        result.k_exceeds_n = true;
        return result;
    }
    result.count = CycleCounter(graph, k, cancel).run();
    return result;
}

namespace {

double log_binomial_raw(std::uint64_t n, std::uint64_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

void require_subset_budget(std::uint64_t n, int k, std::uint64_t budget) {
    if (log_binomial_raw(n, static_cast<std::uint64_t>(k)) >
        std::log(static_cast<double>(budget))) {
        throw_resource("subset enumeration budget exceeded: C(" + std::to_string(n) + "," +
                       std::to_string(k) + ") > " + std::to_string(budget));
    }
}

template <typename Visit>
void for_each_subset(std::uint64_t n, int k, Visit&& visit) {
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0u);
    while (true) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] ==
                             static_cast<std::uint32_t>(n) - static_cast<std::uint32_t>(k - i)) {
            --i;
        }
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

}  // namespace

MotifCount brute_force_motifs(const GraphSample& graph, int k, MotifKind kind,
                              std::uint64_t subset_budget) {
    require_k(k);
    MotifCount result{kind, k, BigUint(), false};
    if (static_cast<std::uint64_t>(k) > graph.order()) {
        result.k_exceeds_n = true;
        return result;
    }
    require_subset_budget(graph.order(), k, subset_budget);
    BigUint total;
    if (kind == MotifKind::clique) {
        for_each_subset(graph.order(), k, [&](const std::vector<std::uint32_t>& s) {
            for (std::size_t i = 0; i < s.size(); ++i) {
                for (std::size_t j = i + 1; j < s.size(); ++j) {
                    if (!graph.has_edge(s[i], s[j])) return;
                }
            }
            total += 1;
        });
    } else {
        std::vector<std::uint32_t> rest(static_cast<std::size_t>(k) - 1);
        for_each_subset(graph.order(), k, [&](const std::vector<std::uint32_t>& s) {
            // Anchor the minimum vertex first and require front < back to
            // quotient out rotation and reflection.
            std::copy(s.begin() + 1, s.end(), rest.begin());
            std::sort(rest.begin(), rest.end());
            do {
                if (rest.front() > rest.back()) continue;
                if (!graph.has_edge(s[0], rest.front()) || !graph.has_edge(rest.back(), s[0])) {
                    continue;
                }
                bool ok = true;
                for (std::size_t i = 0; i + 1 < rest.size() && ok; ++i) {
                    ok = graph.has_edge(rest[i], rest[i + 1]);
                }
                if (ok) total += 1;
            } while (std::next_permutation(rest.begin(), rest.end()));
        });
    }
    result.count = total;
    return result;
}

double expected_cliques_given_weights(const ProbabilityMatrix& pm, int k,
                                      std::uint64_t subset_budget) {
    require_k(k);
    const std::size_t n = pm.order();
    if (static_cast<std::size_t>(k) > n) return 0.0;
    if (k == 3) {
        // (1/6) trace(P^3); valid because the diagonal is zero.
        const auto& p = pm.raw();
        double trace = 0.0;
        std::vector<double> row_sq(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double* pi = p.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double* pj = p.data() + j * n;
                double acc = 0.0;
                for (std::size_t l = 0; l < n; ++l) acc += pi[l] * pj[l];
                row_sq[j] = acc;  // (P^2)_{ij} using symmetry of P
            }
            for (std::size_t j = 0; j < n; ++j) trace += row_sq[j] * pi[j];
        }
        return trace / 6.0;
    }
    require_subset_budget(n, k, subset_budget);
    double total = 0.0;
    for_each_subset(n, k, [&](const std::vector<std::uint32_t>& s) {
        double prod = 1.0;
        for (std::size_t i = 0; i < s.size() && prod > 0.0; ++i) {
            for (std::size_t j = i + 1; j < s.size(); ++j) prod *= pm.at(s[i], s[j]);
        }
        total += prod;
    });
    return total;
}

namespace {

class ExpectedCycleDfs {
public:
    ExpectedCycleDfs(const ProbabilityMatrix& pm, int k)
        : pm_(pm), k_(k), n_(pm.order()), visited_(pm.order(), false) {}

    double run() {
        double total = 0.0;
        for (root_ = 0; root_ < n_; ++root_) {
            visited_[root_] = true;
            total += walk(root_, 1, 1.0);
            visited_[root_] = false;
        }
        return total / 2.0;
    }

private:
    double walk(std::size_t v, int depth, double prod) {
        double acc = 0.0;
        const double* pv = pm_.raw().data() + v * n_;
        const double* proot = pm_.raw().data() + root_ * n_;
        if (depth == k_ - 1) {
            for (std::size_t u = root_ + 1; u < n_; ++u) {
                if (!visited_[u]) acc += prod * pv[u] * proot[u];
            }
            return acc;
        }
        for (std::size_t u = root_ + 1; u < n_; ++u) {
            if (visited_[u] || pv[u] == 0.0) continue;
            visited_[u] = true;
            acc += walk(u, depth + 1, prod * pv[u]);
            visited_[u] = false;
        }
        return acc;
    }

    const ProbabilityMatrix& pm_;
    int k_;
    std::size_t n_;
    std::size_t root_ = 0;
    std::vector<bool> visited_;
};

}  // namespace

double expected_cycles_given_weights(const ProbabilityMatrix& pm, int k, double tuple_budget) {
    require_k(k);
    const std::size_t n = pm.order();
    if (static_cast<std::size_t>(k) > n) return 0.0;
    double tuples = std::pow(static_cast<double>(n), k) / (2.0 * k);
    if (tuples > tuple_budget && n > 14) {
        throw_resource("ordered-tuple budget exceeded for expected cycle count");
    }
    return ExpectedCycleDfs(pm, k).run();
}

}  // namespace irg
