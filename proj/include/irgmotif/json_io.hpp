#pragma once

#include <string>

#include "irgmotif/asymptotics.hpp"
#include "irgmotif/model.hpp"

namespace irg {

// Fixed wire schema for a sampled graph:
// {"n","tau","kernel","seed","replication","weights":[...],"edges":[[i,j],...]}
// with zero-based i<j edge pairs. Field names and edge orientation are part of
// the cross-tool contract.
std::string graph_to_json(const GraphSample& graph);
GraphSample graph_from_json(const std::string& text);
GraphSample graph_from_file(const std::string& path);
void graph_to_file(const GraphSample& graph, const std::string& path);

// Theory evaluation rendered as JSON: value, log_value, mode, components,
// error estimate and flags. Doubles carry 17 significant digits.
std::string theory_to_json(const TheoryValue& tv);

std::string format_double(double v);

}  // namespace irg
