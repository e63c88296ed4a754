#include "irgmotif.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <string>

#include <json.hpp>

#include "irgmotif/harness.hpp"
#include "irgmotif/json_io.hpp"
#include "irgmotif/motifs.hpp"
#include "irgmotif/special.hpp"

using namespace irg;

struct irg_graph_t {
    GraphSample graph;
};

namespace {

thread_local std::string g_last_error;

irg_status map_code(errc code) {
    switch (code) {
        case errc::ok: return IRG_OK;
        case errc::invalid_parameter: return IRG_ERR_INVALID;
        case errc::domain: return IRG_ERR_DOMAIN;
        case errc::resource: return IRG_ERR_RESOURCE;
        case errc::unsupported: return IRG_ERR_UNSUPPORTED;
        case errc::io: return IRG_ERR_IO;
        case errc::internal: return IRG_ERR_INTERNAL;
    }
    return IRG_ERR_INTERNAL;
}

template <typename Fn>
irg_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return IRG_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return IRG_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

irg_status require(bool ok, const char* what) {
    if (!ok) {
        g_last_error = what;
        return IRG_ERR_INVALID;
    }
    return IRG_OK;
}

ModelParams params_from_json(const std::string& text, std::uint64_t* replication) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw_invalid(std::string("params parse error: ") + e.what());
    }
    try {
        std::uint64_t n = j.at("n").get<std::uint64_t>();
        Tau tau(j.at("tau").get<double>());
        KernelSpec kernel = KernelSpec::parse(j.value("kernel", std::string("min-one")));
        SlowlyVaryingSpec svf = SlowlyVaryingSpec::constant();
        if (j.contains("svf")) {
            const auto& s = j.at("svf");
            svf = SlowlyVaryingSpec::parse(s.at("variant").get<std::string>(),
                                           s.value("c", s.value("a", 1.0)));
        }
        std::uint64_t seed = j.value("seed", std::uint64_t{0});
        if (replication) *replication = j.value("replication", std::uint64_t{0});
        return ModelParams(n, tau, kernel, svf, seed);
    } catch (const nlohmann::json::exception& e) {
        throw_invalid(std::string("params field error: ") + e.what());
    }
}

}  // namespace

extern "C" {

const char* irg_version(void) { return "0.1.0"; }

const char* irg_last_error(void) { return g_last_error.c_str(); }

void irg_string_free(char* s) { std::free(s); }

void irg_graph_free(irg_graph_t* graph) { delete graph; }

irg_status irg_sample_graph(const char* params_json, irg_graph_t** out_graph) {
    if (irg_status s = require(params_json && out_graph, "null argument"); s != IRG_OK) return s;
    return guarded([&]() {
        std::uint64_t replication = 0;
        ModelParams params = params_from_json(params_json, &replication);
        WeightVector weights = sample_weights(params, replication);
        *out_graph = new irg_graph_t{sample_graph(params, weights, replication)};
        return IRG_OK;
    });
}

irg_status irg_graph_from_json(const char* json_text, irg_graph_t** out_graph) {
    if (irg_status s = require(json_text && out_graph, "null argument"); s != IRG_OK) return s;
    return guarded([&]() {
        *out_graph = new irg_graph_t{graph_from_json(json_text)};
        return IRG_OK;
    });
}

irg_status irg_graph_read_file(const char* path, irg_graph_t** out_graph) {
    if (irg_status s = require(path && out_graph, "null argument"); s != IRG_OK) return s;
    return guarded([&]() {
        *out_graph = new irg_graph_t{graph_from_file(path)};
        return IRG_OK;
    });
}

irg_status irg_graph_to_json(const irg_graph_t* graph, char** out_text) {
    if (irg_status s = require(graph && out_text, "null argument"); s != IRG_OK) return s;
    return guarded([&]() {
        *out_text = dup_string(graph_to_json(graph->graph));
        return *out_text ? IRG_OK : IRG_ERR_INTERNAL;
    });
}

irg_status irg_graph_write_file(const irg_graph_t* graph, const char* path) {
    if (irg_status s = require(graph && path, "null argument"); s != IRG_OK) return s;
    return guarded([&]() {
        graph_to_file(graph->graph, path);
        return IRG_OK;
    });
}

irg_status irg_graph_stats(const irg_graph_t* graph, uint64_t* out_n, uint64_t* out_edges,
                           uint64_t* out_max_degree) {
    if (irg_status s = require(graph != nullptr, "null graph"); s != IRG_OK) return s;
    return guarded([&]() {
        if (out_n) *out_n = graph->graph.order();
        if (out_edges) *out_edges = graph->graph.edge_count();
        if (out_max_degree) *out_max_degree = graph->graph.max_degree();
        return IRG_OK;
    });
}

irg_status irg_count_motifs(const irg_graph_t* graph, const char* kind, int k,
                            int use_brute_force, char** out_count_decimal) {
    if (irg_status s = require(graph && kind && out_count_decimal, "null argument"); s != IRG_OK) {
        return s;
    }
    return guarded([&]() {
        MotifKind mk = parse_motif_kind(kind);
        MotifCount count;
        if (use_brute_force) {
            count = brute_force_motifs(graph->graph, k, mk);
        } else {
            count = (mk == MotifKind::clique) ? count_cliques(graph->graph, k)
                                              : count_cycles(graph->graph, k);
        }
        *out_count_decimal = dup_string(count.count.to_string());
        return *out_count_decimal ? IRG_OK : IRG_ERR_INTERNAL;
    });
}

irg_status irg_theory(const char* request_json, char** out_json) {
    if (irg_status s = require(request_json && out_json, "null argument"); s != IRG_OK) return s;
    return guarded([&]() {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(request_json);
        } catch (const nlohmann::json::parse_error& e) {
            throw_invalid(std::string("theory request parse error: ") + e.what());
        }
        std::string family = j.at("family").get<std::string>();
        std::string mode = j.at("mode").get<std::string>();
        Tau tau(j.at("tau").get<double>());
        int k = j.at("k").get<int>();
        std::uint64_t n = j.value("n", std::uint64_t{0});
        KernelSpec kernel = KernelSpec::parse(j.value("kernel", std::string("min-one")));
        SlowlyVaryingSpec svf = SlowlyVaryingSpec::constant();
        if (j.contains("svf")) {
            const auto& s = j.at("svf");
            svf = SlowlyVaryingSpec::parse(s.at("variant").get<std::string>(),
                                           s.value("c", s.value("a", 1.0)));
        }
        double rel_tol = j.value("rel_tol", 1e-8);
        std::int64_t budget = j.value("budget", std::int64_t{500'000});

        std::string text;
        if (family == "clique") {
            TheoryValue tv;
            if (mode == "rough") tv = clique_rough(n, k, tau, svf);
            else if (mode == "cutoff") tv = clique_cutoff(n, k, tau, svf);
            else if (mode == "precise") tv = clique_precise(n, k, tau, budget);
            else if (mode == "bound") tv = clique_series_bound(k, tau);
            else throw_invalid("unknown clique mode: " + mode);
            text = theory_to_json(tv);
        } else if (family == "cycle") {
            if (mode == "direct-integral") {
                double A = j.at("A").get<double>();
                QuadratureResult qr = cycle_integral_direct(k, A, tau, kernel, budget);
                TheoryValue tv;
                tv.mode = TheoryMode::cycle_direct_integral;
                tv.value = qr.value;
                tv.log_value = std::log(qr.value);
                tv.components["A"] = A;
                tv.components["evaluations"] = static_cast<double>(qr.evaluations);
                tv.error_estimate = qr.error_estimate;
                tv.converged = qr.converged;
                text = theory_to_json(tv);
            } else {
                TheoryValue tv;
                if (mode == "odd") tv = cycle_odd(n, k, tau, kernel);
                else if (mode == "even") tv = cycle_even(n, k, tau, kernel, rel_tol);
                else if (mode == "lower-bound") tv = cycle_lower_bound_even(n, k, tau, svf);
                else if (mode == "stirling") tv = cycle_stirling_form(n, k, tau);
                else throw_invalid("unknown cycle mode: " + mode);
                text = theory_to_json(tv);
            }
        } else {
            throw_invalid("unknown family: " + family);
        }
        *out_json = dup_string(text);
        return *out_json ? IRG_OK : IRG_ERR_INTERNAL;
    });
}

irg_status irg_circulant(int k, char** out_json) {
    if (irg_status s = require(out_json != nullptr, "null argument"); s != IRG_OK) return s;
    return guarded([&]() {
        CirculantSpec spec = circulant_build(k);
        nlohmann::ordered_json j;
        j["k"] = k;
        j["det"] = circulant_det(k);
        auto eigen = nlohmann::ordered_json::array();
        for (const auto& lambda : spec.eigenvalues) {
            eigen.push_back({{"re", lambda.real()}, {"im", lambda.imag()}});
        }
        j["eigenvalues"] = std::move(eigen);
        if (k % 2 == 0) {
            j["reduced_det"] = circulant_reduced_det(k);
            j["null_vector"] = circulant_null_vector(k);
        }
        *out_json = dup_string(j.dump());
        return *out_json ? IRG_OK : IRG_ERR_INTERNAL;
    });
}

irg_status irg_run_experiment(const char* config_json, char** out_report_json) {
    if (irg_status s = require(config_json != nullptr, "null argument"); s != IRG_OK) return s;
    return guarded([&]() -> irg_status {
        ExperimentConfig config = ExperimentConfig::from_json(config_json);
        RunReport report = run_experiment(config);
        if (out_report_json) {
            nlohmann::ordered_json j;
            j["written"] = report.records_written;
            j["skipped"] = report.records_skipped;
            j["timeouts"] = report.timeouts;
            *out_report_json = dup_string(j.dump());
            if (!*out_report_json) return IRG_ERR_INTERNAL;
        }
        return report.timeouts > 0 ? IRG_PARTIAL : IRG_OK;
    });
}

irg_status irg_summarize_records(const char* records_path, const char* csv_path,
                                 int join_theory) {
    if (irg_status s = require(records_path && csv_path, "null argument"); s != IRG_OK) return s;
    return guarded([&]() {
        auto records = read_records(records_path);
        SummaryTable table = summarize(records);
        if (join_theory) table = compare_to_theory(std::move(table));
        std::ofstream out(csv_path);
        if (!out) throw_io(std::string("cannot write summary: ") + csv_path);
        out << table.to_csv();
        if (!out) throw_io(std::string("write failed: ") + csv_path);
        return IRG_OK;
    });
}

irg_status irg_scaling_fit(const char* records_path, int k, double tau, const char* kind,
                           char** out_json) {
    if (irg_status s = require(records_path && kind && out_json, "null argument"); s != IRG_OK) {
        return s;
    }
    return guarded([&]() {
        auto records = read_records(records_path);
        SummaryTable table = summarize(records);
        ScalingFit fit = scaling_fit(table, k, tau, parse_motif_kind(kind));
        nlohmann::ordered_json j;
        j["slope"] = fit.slope;
        j["intercept"] = fit.intercept;
        j["slope_stderr"] = fit.slope_stderr;
        j["r_squared"] = fit.r_squared;
        j["points"] = fit.points;
        *out_json = dup_string(j.dump());
        return *out_json ? IRG_OK : IRG_ERR_INTERNAL;
    });
}

}  // extern "C"
