#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "irgmotif/asymptotics.hpp"
#include "irgmotif/bigint.hpp"
#include "irgmotif/model.hpp"
#include "irgmotif/motifs.hpp"

namespace irg {

struct ExperimentConfig {
    std::vector<std::uint64_t> n_grid;
    std::vector<int> k_grid;
    double tau = 2.5;
    KernelSpec kernel;
    SlowlyVaryingSpec svf;
    std::vector<MotifKind> kinds;
    int replications = 1;
    std::uint64_t seed = 0;
    bool oracle = false;
    std::uint64_t oracle_limit = 2000;
    double oracle_tuple_budget = 1e9;
    bool fixed_weights = false;  // one weight draw per cell, sharper conditional tests
    std::string output;
    std::int64_t timeout_ms = 60'000;
    int threads = 0;  // 0 = hardware concurrency

    void validate() const;
    static ExperimentConfig from_json(const std::string& text);
    std::string to_json() const;
};

struct ResultRecord {
    std::uint64_t n = 0;
    int k = 0;
    double tau = 2.5;
    std::string kernel;
    MotifKind kind = MotifKind::clique;
    int rep = 0;
    std::optional<BigUint> count;  // absent = replication timed out (flagged)
    std::optional<double> oracle;
    std::uint64_t seed = 0;
    std::int64_t ms = 0;

    std::string to_jsonl() const;
    static ResultRecord from_jsonl(const std::string& line);
};

struct RunReport {
    std::size_t records_written = 0;
    std::size_t records_skipped = 0;  // already present (resume)
    std::size_t timeouts = 0;
};

// Runs the grid: per (cell, replication) sample weights, sample the graph,
// count motifs, persist one JSON line. Append-only and resumable: records
// already in the output file are not recomputed. Record order on disk is
// unspecified; the record set is deterministic for a fixed config.
RunReport run_experiment(const ExperimentConfig& config,
                         const std::function<void(const ResultRecord&)>& observer = {});

std::vector<ResultRecord> read_records(const std::string& path);

struct SummaryRow {
    std::uint64_t n = 0;
    int k = 0;
    double tau = 2.5;
    std::string kernel;
    MotifKind kind = MotifKind::clique;
    std::size_t reps = 0;
    double mean = 0.0;
    double median = 0.0;
    std::optional<double> stderr_mean;  // undefined for a single replication
    std::optional<double> theory_log;
    std::optional<std::string> theory_mode;
    std::optional<double> ratio;         // mean / theory
    std::optional<double> ratio_no_log;  // even cycles: ratio with the log factor removed
};

struct SummaryTable {
    std::vector<SummaryRow> rows;
    std::string to_csv() const;  // fixed column set
};

SummaryTable summarize(const std::vector<ResultRecord>& records);

// Joins theory columns: cliques get the series form for k <= 9 and the cutoff
// constant otherwise; cycles dispatch on parity. Even-cycle rows also carry
// the ratio divided by log gamma_n.
SummaryTable compare_to_theory(SummaryTable table);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

// Ordinary least squares of log(mean count) against log n over the rows
// matching (k, tau, kind); needs at least three usable grid points.
ScalingFit scaling_fit(const SummaryTable& table, int k, double tau, MotifKind kind);

}  // namespace irg
