#include "irgmotif/json_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace irg {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string graph_to_json(const GraphSample& graph) {
    nlohmann::ordered_json j;
    j["n"] = graph.order();
    j["tau"] = graph.tau();
    j["kernel"] = graph.kernel().name();
    j["seed"] = graph.master_seed();
    j["replication"] = graph.replication();
    j["weights"] = graph.weights().weights;
    auto edges = nlohmann::ordered_json::array();
    for (std::uint32_t v = 0; v < graph.order(); ++v) {
        for (std::uint32_t u : graph.neighbors(v)) {
            if (u > v) edges.push_back({v, u});
        }
    }
    j["edges"] = std::move(edges);
    return j.dump();
}

GraphSample graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw_io(std::string("graph JSON parse error: ") + e.what());
    }
    try {
        std::uint64_t n = j.at("n").get<std::uint64_t>();
        Tau tau(j.at("tau").get<double>());
        KernelSpec kernel = KernelSpec::parse(j.at("kernel").get<std::string>());
        std::uint64_t seed = j.at("seed").get<std::uint64_t>();
        std::uint64_t replication = j.at("replication").get<std::uint64_t>();
        WeightVector weights;
        weights.weights = j.at("weights").get<std::vector<double>>();
        weights.mu = mean_weight(tau);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw_invalid("edge entries must be [i,j] pairs");
            edges.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
        }
        return GraphSample(n, std::move(edges), std::move(weights), tau.value(), kernel, seed,
                           replication);
    } catch (const nlohmann::json::exception& e) {
        throw_invalid(std::string("graph JSON schema error: ") + e.what());
    }
}

GraphSample graph_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open graph file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return graph_from_json(text);
}

void graph_to_file(const GraphSample& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw_io("cannot write graph file: " + path);
    out << graph_to_json(graph) << "\n";
    if (!out) throw_io("write failed: " + path);
}

std::string theory_to_json(const TheoryValue& tv) {
    nlohmann::ordered_json j;
    j["mode"] = theory_mode_name(tv.mode);
    j["value"] = tv.value;
    j["log_value"] = tv.log_value;
    auto comps = nlohmann::ordered_json::object();
    for (const auto& [key, val] : tv.components) comps[key] = val;
    j["components"] = std::move(comps);
    j["error_estimate"] = tv.error_estimate;
    j["is_upper_estimate"] = tv.is_upper_estimate;
    j["converged"] = tv.converged;
    return j.dump();
}

}  // namespace irg
