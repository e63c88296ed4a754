#include "irgmotif/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "irgmotif/json_io.hpp"

namespace irg {

void ExperimentConfig::validate() const {
    if (n_grid.empty() || k_grid.empty() || kinds.empty()) {
        throw_invalid("experiment grid must be non-empty");
    }
    for (auto n : n_grid) {
        if (n < 3) throw_invalid("grid vertex counts must be at least 3");
    }
    for (int k : k_grid) {
        if (k < 3) throw_invalid("grid motif sizes must be at least 3");
    }
    if (replications < 1) throw_invalid("replications must be at least 1");
    Tau check(tau);
    if (output.empty()) throw_invalid("output path must be set");
}

namespace {

const char* kConfigKeys[] = {"n",       "k",     "tau",          "kernel",  "svf",
                             "kinds",   "replications", "seed",  "oracle",
                             "oracle_limit", "oracle_tuple_budget", "fixed_weights",
                             "output",  "timeout_ms",   "threads"};

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw_invalid(std::string("config parse error: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : kConfigKeys) known = known || key == k;
        if (!known) throw_invalid("config field not recognized: \"" + key + "\"");
    }
    ExperimentConfig cfg;
    try {
        cfg.n_grid = j.at("n").get<std::vector<std::uint64_t>>();
        cfg.k_grid = j.at("k").get<std::vector<int>>();
        cfg.tau = j.at("tau").get<double>();
        cfg.kernel = KernelSpec::parse(j.value("kernel", std::string("min-one")));
        if (j.contains("svf")) {
            const auto& s = j.at("svf");
            cfg.svf = SlowlyVaryingSpec::parse(
                s.at("variant").get<std::string>(),
                s.value("c", s.value("a", 1.0)));
        }
        for (const auto& kind : j.value("kinds", std::vector<std::string>{"clique"})) {
            cfg.kinds.push_back(parse_motif_kind(kind));
        }
        cfg.replications = j.at("replications").get<int>();
        cfg.seed = j.value("seed", std::uint64_t{0});
        cfg.oracle = j.value("oracle", false);
        cfg.oracle_limit = j.value("oracle_limit", std::uint64_t{2000});
        cfg.oracle_tuple_budget = j.value("oracle_tuple_budget", 1e9);
        cfg.fixed_weights = j.value("fixed_weights", false);
        cfg.output = j.at("output").get<std::string>();
        cfg.timeout_ms = j.value("timeout_ms", std::int64_t{60'000});
        cfg.threads = j.value("threads", 0);
    } catch (const nlohmann::json::exception& e) {
        throw_invalid(std::string("config field error: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::string ExperimentConfig::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_grid;
    j["k"] = k_grid;
    j["tau"] = tau;
    j["kernel"] = kernel.name();
    j["svf"] = {{"variant", svf.name()},
                {svf.kind == SlowlyVaryingSpec::Kind::constant ? "c" : "a", svf.param}};
    std::vector<std::string> kind_names;
    for (auto kind : kinds) kind_names.push_back(motif_kind_name(kind));
    j["kinds"] = kind_names;
    j["replications"] = replications;
    j["seed"] = seed;
    j["oracle"] = oracle;
    j["oracle_limit"] = oracle_limit;
    j["oracle_tuple_budget"] = oracle_tuple_budget;
    j["fixed_weights"] = fixed_weights;
    j["output"] = output;
    j["timeout_ms"] = timeout_ms;
    j["threads"] = threads;
    return j.dump();
}

std::string ResultRecord::to_jsonl() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["k"] = k;
    j["tau"] = tau;
    j["kernel"] = kernel;
    j["kind"] = motif_kind_name(kind);
    j["rep"] = rep;
    if (!count.has_value()) {
        j["count"] = nullptr;  // flagged: replication timed out
    } else if (count->fits_u64()) {
        j["count"] = count->low_u64();
    } else {
        j["count"] = count->to_string();
    }
    if (oracle.has_value()) {
        j["oracle"] = *oracle;
    } else {
        j["oracle"] = nullptr;
    }
    j["seed"] = seed;
    j["ms"] = ms;
    return j.dump();
}

ResultRecord ResultRecord::from_jsonl(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw_io(std::string("record parse error: ") + e.what());
    }
    ResultRecord r;
    try {
        r.n = j.at("n").get<std::uint64_t>();
        r.k = j.at("k").get<int>();
        r.tau = j.at("tau").get<double>();
        r.kernel = j.at("kernel").get<std::string>();
        r.kind = parse_motif_kind(j.at("kind").get<std::string>());
        r.rep = j.at("rep").get<int>();
        const auto& c = j.at("count");
        if (c.is_null()) {
            r.count.reset();
        } else if (c.is_string()) {
            r.count = BigUint::from_decimal(c.get<std::string>());
        } else {
            r.count = BigUint(c.get<std::uint64_t>());
        }
        const auto& o = j.at("oracle");
        if (!o.is_null()) r.oracle = o.get<double>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.ms = j.at("ms").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw_io(std::string("record field error: ") + e.what());
    }
    return r;
}

std::vector<ResultRecord> read_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open records file: " + path);
    std::vector<ResultRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(ResultRecord::from_jsonl(line));
    }
    return records;
}

namespace {

struct CellKey {
    std::uint64_t n;
    int k;
    MotifKind kind;
    auto operator<=>(const CellKey&) const = default;
};

struct TaskKey {
    CellKey cell;
    int rep;
    auto operator<=>(const TaskKey&) const = default;
};

// Weights and oracle values shared by all replications of a cell when
// fixed_weights is on; computed once under the cell mutex.
struct CellState {
    std::once_flag weights_once;
    WeightVector weights;
    std::mutex oracle_mutex;
    std::map<int, double> oracle_by_k;  // fixed-weights mode only
};

double conditional_oracle(const ExperimentConfig& cfg, const WeightVector& weights,
                          std::uint64_t n, int k, MotifKind kind) {
    ProbabilityMatrix pm =
        probability_matrix(weights, n, Tau(cfg.tau), cfg.kernel, cfg.oracle_limit);
    if (kind == MotifKind::clique) {
        return expected_cliques_given_weights(pm, k);
    }
    return expected_cycles_given_weights(pm, k, cfg.oracle_tuple_budget);
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config,
                         const std::function<void(const ResultRecord&)>& observer) {
    config.validate();
    RunReport report;

    // Resume: collect keys already present.
    std::set<TaskKey> done;
    {
        std::ifstream existing(config.output);
        if (existing) {
            std::string line;
            while (std::getline(existing, line)) {
                if (line.empty()) continue;
                ResultRecord r = ResultRecord::from_jsonl(line);
                done.insert(TaskKey{CellKey{r.n, r.k, r.kind}, r.rep});
                ++report.records_skipped;
            }
        }
    }

    std::ofstream out(config.output, std::ios::app);
    if (!out) throw_io("cannot open experiment output for append: " + config.output);

    struct Task {
        CellKey cell;
        int rep;
        CellState* state;
    };
    std::map<CellKey, std::unique_ptr<CellState>> cells;
    std::vector<Task> tasks;
    for (auto n : config.n_grid) {
        for (int k : config.k_grid) {
            for (auto kind : config.kinds) {
                CellKey cell{n, k, kind};
                auto& state = cells[cell];
                if (!state) state = std::make_unique<CellState>();
                for (int rep = 0; rep < config.replications; ++rep) {
                    if (done.contains(TaskKey{cell, rep})) continue;
                    tasks.push_back(Task{cell, rep, state.get()});
                }
            }
        }
    }

    std::mutex write_mutex;
    std::atomic<std::size_t> next_task{0};
    std::atomic<std::size_t> timeouts{0};
    std::atomic<std::size_t> written{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        try {
            while (true) {
                std::size_t idx = next_task.fetch_add(1);
                if (idx >= tasks.size()) return;
                const Task& task = tasks[idx];
                const auto t0 = std::chrono::steady_clock::now();
                ModelParams params(task.cell.n, Tau(config.tau), config.kernel, config.svf,
                                   config.seed);

                const WeightVector* weights = nullptr;
                WeightVector local_weights;
                if (config.fixed_weights) {
                    std::call_once(task.state->weights_once, [&]() {
                        task.state->weights = sample_weights(params, 0);
                    });
                    weights = &task.state->weights;
                } else {
                    local_weights = sample_weights(params, static_cast<std::uint64_t>(task.rep));
                    weights = &local_weights;
                }

                std::optional<double> oracle_value;
                if (config.oracle && task.cell.n <= config.oracle_limit) {
                    if (config.fixed_weights) {
                        std::lock_guard<std::mutex> lock(task.state->oracle_mutex);
                        auto it = task.state->oracle_by_k.find(task.cell.k);
                        if (it == task.state->oracle_by_k.end()) {
                            double v = conditional_oracle(config, *weights, task.cell.n,
                                                          task.cell.k, task.cell.kind);
                            it = task.state->oracle_by_k.emplace(task.cell.k, v).first;
                        }
                        oracle_value = it->second;
                    } else {
                        oracle_value = conditional_oracle(config, *weights, task.cell.n,
                                                          task.cell.k, task.cell.kind);
                    }
                }

                GraphSample graph =
                    sample_graph(params, *weights, static_cast<std::uint64_t>(task.rep));

                std::optional<BigUint> count;
                CancelToken cancel(t0 + std::chrono::milliseconds(config.timeout_ms));
                try {
                    MotifCount mc = (task.cell.kind == MotifKind::clique)
                                        ? count_cliques(graph, task.cell.k, &cancel)
                                        : count_cycles(graph, task.cell.k, &cancel);
                    count = mc.count;
                } catch (const TimeoutError&) {
                    timeouts.fetch_add(1);
                }

                ResultRecord record;
                record.n = task.cell.n;
                record.k = task.cell.k;
                record.tau = config.tau;
                record.kernel = config.kernel.name();
                record.kind = task.cell.kind;
                record.rep = task.rep;
                record.count = std::move(count);
                record.oracle = oracle_value;
                record.seed = config.seed;
                record.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
                {
                    std::lock_guard<std::mutex> lock(write_mutex);
                    out << record.to_jsonl() << "\n";
                    out.flush();
                    if (!out) throw_io("write failed: " + config.output);
                    if (observer) observer(record);
                }
                written.fetch_add(1);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    int thread_count = config.threads > 0 ? config.threads
                                          : static_cast<int>(std::max(1u, hw));
    thread_count = std::min<int>(thread_count, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    report.records_written = written.load();
    report.timeouts = timeouts.load();
    return report;
}

SummaryTable summarize(const std::vector<ResultRecord>& records) {
    struct Acc {
        double tau = 2.5;
        std::string kernel;
        std::vector<double> counts;
    };
    std::map<CellKey, Acc> cells;
    for (const auto& r : records) {
        if (!r.count.has_value()) continue;  // flagged replication
        auto& acc = cells[CellKey{r.n, r.k, r.kind}];
        acc.tau = r.tau;
        acc.kernel = r.kernel;
        acc.counts.push_back(r.count->to_double());
    }
    SummaryTable table;
    for (auto& [cell, acc] : cells) {
        SummaryRow row;
        row.n = cell.n;
        row.k = cell.k;
        row.kind = cell.kind;
        row.tau = acc.tau;
        row.kernel = acc.kernel;
        row.reps = acc.counts.size();
        double mean = 0.0;
        for (double c : acc.counts) mean += c;
        mean /= static_cast<double>(acc.counts.size());
        row.mean = mean;
        std::sort(acc.counts.begin(), acc.counts.end());
        std::size_t mid = acc.counts.size() / 2;
        row.median = (acc.counts.size() % 2 == 1)
                         ? acc.counts[mid]
                         : 0.5 * (acc.counts[mid - 1] + acc.counts[mid]);
        if (acc.counts.size() > 1) {
            double ss = 0.0;
            for (double c : acc.counts) ss += (c - mean) * (c - mean);
            double sd = std::sqrt(ss / static_cast<double>(acc.counts.size() - 1));
            row.stderr_mean = sd / std::sqrt(static_cast<double>(acc.counts.size()));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

SummaryTable compare_to_theory(SummaryTable table) {
    for (auto& row : table.rows) {
        Tau tau(row.tau);
        KernelSpec kernel = KernelSpec::parse(row.kernel);
        TheoryValue tv;
        if (row.kind == MotifKind::clique) {
            tv = (row.k <= 9) ? clique_precise(row.n, row.k, tau)
                              : clique_cutoff(row.n, row.k, tau, SlowlyVaryingSpec::constant());
        } else if (row.k % 2 == 1) {
            tv = cycle_odd(row.n, row.k, tau, kernel);
        } else {
            tv = cycle_even(row.n, row.k, tau, kernel, 1e-6);
        }
        row.theory_log = tv.log_value;
        row.theory_mode = theory_mode_name(tv.mode);
        if (row.mean > 0.0) {
            row.ratio = std::exp(std::log(row.mean) - tv.log_value);
            if (tv.mode == TheoryMode::cycle_even) {
                double log_factor = tv.components.at("log.logfactor");
                row.ratio_no_log = std::exp(std::log(row.mean) - (tv.log_value - log_factor));
            }
        }
    }
    return table;
}

std::string SummaryTable::to_csv() const {
    std::ostringstream out;
    out << "n,k,tau,kernel,kind,reps,mean,median,stderr,theory,theory_mode,ratio\n";
    for (const auto& row : rows) {
        out << row.n << ',' << row.k << ',' << format_double(row.tau) << ',' << row.kernel << ','
            << motif_kind_name(row.kind) << ',' << row.reps << ',' << format_double(row.mean)
            << ',' << format_double(row.median) << ',';
        if (row.stderr_mean.has_value()) out << format_double(*row.stderr_mean);
        out << ',';
        if (row.theory_log.has_value()) out << format_double(std::exp(*row.theory_log));
        out << ',';
        if (row.theory_mode.has_value()) out << *row.theory_mode;
        out << ',';
        if (row.ratio.has_value()) out << format_double(*row.ratio);
        out << '\n';
    }
    return out.str();
}

ScalingFit scaling_fit(const SummaryTable& table, int k, double tau, MotifKind kind) {
    std::vector<std::pair<double, double>> points;  // (log n, log mean)
    for (const auto& row : table.rows) {
        if (row.k != k || row.kind != kind || row.tau != tau) continue;
        if (row.mean <= 0.0) continue;
        points.emplace_back(std::log(static_cast<double>(row.n)), std::log(row.mean));
    }
    if (points.size() < 3) {
        throw_invalid("scaling fit needs at least three grid points with positive means");
    }
    double sx = 0.0, sy = 0.0;
    for (auto [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double nn = static_cast<double>(points.size());
    const double mx = sx / nn, my = sy / nn;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (auto [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    ScalingFit fit;
    fit.points = points.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (auto [x, y] : points) {
        double e = y - (fit.intercept + fit.slope * x);
        ss_res += e * e;
    }
    fit.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    if (points.size() > 2) {
        fit.slope_stderr = std::sqrt(ss_res / (nn - 2.0) / sxx);
    }
    return fit;
}

}  // namespace irg
