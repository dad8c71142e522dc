#pragma once

#include <string>

#include "ldg/bisim.hpp"
#include "ldg/graph.hpp"

namespace ldg {

std::string graph_to_json(const LdGraph& g);
LdGraph graph_from_json(const std::string& text);

LdGraph load_graph_file(const std::string& path);
void save_graph_file(const LdGraph& g, const std::string& path);

// Z.json: {"pairs": [["d1","f1"], ...]}
Relation relation_from_json(const std::string& text);
Relation load_relation_file(const std::string& path);

// Graphviz export.
std::string graph_to_dot(const LdGraph& g);

}  // namespace ldg
