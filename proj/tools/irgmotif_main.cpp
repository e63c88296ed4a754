// Command-line front end; all functionality is reached through the C API in
// irgmotif.h. Data goes to standard output or files, diagnostics to standard
// error. Exit codes: 0 success, 2 usage/validation, 3 partial completion.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "irgmotif.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPartial = 3;

int fail(irg_status status) {
    std::cerr << "error: " << irg_last_error() << "\n";
    return status == IRG_PARTIAL ? kExitPartial : kExitUsage;
}

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { irg_string_free(ptr); }
};

struct OwnedGraph {
    irg_graph_t* ptr = nullptr;
    ~OwnedGraph() { irg_graph_free(ptr); }
};

struct SvfFlags {
    std::string variant = "constant";
    double c = 1.0;
    double a = 1.0;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["variant"] = variant;
        if (variant == "constant") j["c"] = c;
        else j["a"] = a;
        return j;
    }
};

void add_svf_flags(CLI::App* cmd, SvfFlags& svf) {
    cmd->add_option("--svf", svf.variant, "slowly-varying variant: constant or log-power")
        ->check(CLI::IsMember({"constant", "log-power"}));
    cmd->add_option("--svf-c", svf.c, "constant value c (constant variant)");
    cmd->add_option("--svf-a", svf.a, "exponent a (log-power variant)");
}

int cmd_sample(std::uint64_t n, double tau, const std::string& kernel, const SvfFlags& svf,
               std::uint64_t seed, std::uint64_t replication, const std::string& out_path) {
    nlohmann::json params;
    params["n"] = n;
    params["tau"] = tau;
    params["kernel"] = kernel;
    params["svf"] = svf.to_json();
    params["seed"] = seed;
    params["replication"] = replication;

    OwnedGraph graph;
    if (irg_status s = irg_sample_graph(params.dump().c_str(), &graph.ptr); s != IRG_OK) {
        return fail(s);
    }
    if (irg_status s = irg_graph_write_file(graph.ptr, out_path.c_str()); s != IRG_OK) {
        return fail(s);
    }
    uint64_t nn = 0, edges = 0, max_degree = 0;
    irg_graph_stats(graph.ptr, &nn, &edges, &max_degree);
    std::cout << "edges " << edges << "\nmax_degree " << max_degree << "\n";
    return kExitOk;
}

int cmd_count(const std::string& graph_path, const std::string& motif, int k, bool brute) {
    OwnedGraph graph;
    if (irg_status s = irg_graph_read_file(graph_path.c_str(), &graph.ptr); s != IRG_OK) {
        return fail(s);
    }
    OwnedString count;
    if (irg_status s = irg_count_motifs(graph.ptr, motif.c_str(), k, brute ? 1 : 0, &count.ptr);
        s != IRG_OK) {
        return fail(s);
    }
    std::cout << count.ptr << "\n";
    return kExitOk;
}

int cmd_theory(const std::string& family, const std::string& mode, std::uint64_t n, int k,
               double tau, const std::string& kernel, const SvfFlags& svf, double tol,
               double box_a, std::int64_t budget) {
    nlohmann::json req;
    req["family"] = family;
    req["mode"] = mode;
    req["n"] = n;
    req["k"] = k;
    req["tau"] = tau;
    req["kernel"] = kernel;
    req["svf"] = svf.to_json();
    req["rel_tol"] = tol;
    req["A"] = box_a;
    req["budget"] = budget;
    OwnedString result;
    if (irg_status s = irg_theory(req.dump().c_str(), &result.ptr); s != IRG_OK) return fail(s);
    std::cout << result.ptr << "\n";
    return kExitOk;
}

int cmd_circulant(int k) {
    OwnedString result;
    if (irg_status s = irg_circulant(k, &result.ptr); s != IRG_OK) return fail(s);
    std::cout << result.ptr << "\n";
    return kExitOk;
}

int cmd_experiment(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config: " << config_path << "\n";
        return kExitUsage;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    OwnedString report;
    irg_status s = irg_run_experiment(buf.str().c_str(), &report.ptr);
    if (s == IRG_OK || s == IRG_PARTIAL) {
        std::cout << report.ptr << "\n";
        return s == IRG_PARTIAL ? kExitPartial : kExitOk;
    }
    return fail(s);
}

int cmd_compare(const std::string& records_path, const std::string& csv_path, bool no_theory) {
    if (irg_status s =
            irg_summarize_records(records_path.c_str(), csv_path.c_str(), no_theory ? 0 : 1);
        s != IRG_OK) {
        return fail(s);
    }
    std::cerr << "wrote " << csv_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scale-free random graph sampling, exact motif counting, and "
                 "asymptotic theory evaluation"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "sample a graph and write its JSON");
    std::uint64_t n = 100, seed = 0, replication = 0;
    double tau = 2.5;
    std::string kernel = "min-one", out_path = "graph.json";
    SvfFlags sample_svf;
    sample->add_option("--n", n, "vertex count")->required();
    sample->add_option("--tau", tau, "power-law exponent, in (2,3)")->required();
    sample->add_option("--kernel", kernel, "connection kernel")
        ->check(CLI::IsMember({"min-one", "ratio", "exp-complement"}));
    add_svf_flags(sample, sample_svf);
    sample->add_option("--seed", seed, "master seed");
    sample->add_option("--replication", replication, "replication index");
    sample->add_option("--out", out_path, "output path");

    // count
    auto* count = app.add_subcommand("count", "count motifs in a stored graph");
    std::string graph_path, motif = "clique";
    int count_k = 3;
    bool brute = false;
    count->add_option("--graph", graph_path, "graph JSON path")->required();
    count->add_option("--motif", motif, "clique or cycle")
        ->check(CLI::IsMember({"clique", "cycle"}));
    count->add_option("--k", count_k, "motif size")->required();
    count->add_flag("--brute", brute, "use the brute-force oracle");

    // theory
    auto* theory = app.add_subcommand("theory", "evaluate an asymptotic formula");
    std::string family, mode;
    std::uint64_t theory_n = 10'000;
    int theory_k = 3;
    double theory_tau = 2.5, tol = 1e-8, box_a = 8.0;
    std::int64_t budget = 500'000;
    std::string theory_kernel = "min-one";
    SvfFlags theory_svf;
    theory->add_option("family", family, "clique or cycle")
        ->required()
        ->check(CLI::IsMember({"clique", "cycle"}));
    theory->add_option("--mode", mode, "formula variant")->required();
    theory->add_option("--n", theory_n, "network size");
    theory->add_option("--k", theory_k, "motif size")->required();
    theory->add_option("--tau", theory_tau, "power-law exponent")->required();
    theory->add_option("--kernel", theory_kernel, "connection kernel")
        ->check(CLI::IsMember({"min-one", "ratio", "exp-complement"}));
    add_svf_flags(theory, theory_svf);
    theory->add_option("--tol", tol, "relative tolerance for quadrature-backed modes");
    theory->add_option("--A", box_a, "box half-width (direct-integral mode)");
    theory->add_option("--budget", budget, "evaluation budget for QMC-backed modes");

    // circulant
    auto* circulant = app.add_subcommand("circulant", "print circulant diagnostics");
    int circ_k = 3;
    circulant->add_option("--k", circ_k, "matrix size")->required();

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo experiment grid");
    std::string config_path;
    experiment->add_option("--config", config_path, "experiment config JSON path")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "summarize records and join theory columns");
    std::string records_path, csv_path = "summary.csv";
    bool no_theory = false;
    compare->add_option("--records", records_path, "JSONL records path")->required();
    compare->add_option("--out", csv_path, "CSV output path");
    compare->add_flag("--no-theory", no_theory, "skip theory columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (sample->parsed()) {
        return cmd_sample(n, tau, kernel, sample_svf, seed, replication, out_path);
    }
    if (count->parsed()) return cmd_count(graph_path, motif, count_k, brute);
    if (theory->parsed()) {
        return cmd_theory(family, mode, theory_n, theory_k, theory_tau, theory_kernel, theory_svf,
                          tol, box_a, budget);
    }
    if (circulant->parsed()) return cmd_circulant(circ_k);
    if (experiment->parsed()) return cmd_experiment(config_path);
    if (compare->parsed()) return cmd_compare(records_path, csv_path, no_theory);
    return kExitUsage;
}
