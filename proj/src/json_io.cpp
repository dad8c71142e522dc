#include "ldg/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ldg/errors.hpp"

namespace ldg {

using nlohmann::json;

std::string graph_to_json(const LdGraph& g) {
    json j;
    j["concepts"] = g.alphabet.basic_concepts;
    j["roles"] = g.alphabet.basic_roles;
    j["nodes"] = json::array();
    for (const NodeId& n : g.universe) {
        json node;
        node["id"] = n.name;
        node["active"] = g.is_active(n);
        json labels = json::array();
        for (const auto& c : g.labels_of(n)) labels.push_back(c);
        node["labels"] = labels;
        j["nodes"].push_back(node);
    }
    j["edges"] = json::array();
    for (const auto& [eid, e] : g.edges) {
        json edge;
        edge["id"] = eid.name;
        edge["src"] = e.src.name;
        edge["tgt"] = e.tgt.name;
        edge["role"] = e.role;
        j["edges"].push_back(edge);
    }
    return j.dump(2) + "\n";
}

LdGraph graph_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("graph JSON: ") + e.what());
    }
    LdGraph g;
    for (const auto& c : j.value("concepts", json::array()))
        g.alphabet.basic_concepts.insert(c.get<std::string>());
    for (const auto& r : j.value("roles", json::array()))
        g.alphabet.basic_roles.insert(r.get<std::string>());
    for (const auto& node : j.value("nodes", json::array())) {
        NodeId id{node.at("id").get<std::string>()};
        g.universe.insert(id);
        if (node.value("active", true)) {
            g.active.insert(id);
            std::set<std::string> labels;
            for (const auto& l : node.value("labels", json::array()))
                labels.insert(l.get<std::string>());
            if (!labels.empty()) g.labels[id] = labels;
        } else if (!node.value("labels", json::array()).empty()) {
            throw Error("reserved node carries labels: " + id.name);
        }
    }
    for (const auto& edge : j.value("edges", json::array())) {
        EdgeId id{edge.at("id").get<std::string>()};
        Edge e{NodeId{edge.at("src").get<std::string>()},
               NodeId{edge.at("tgt").get<std::string>()}, edge.at("role").get<std::string>()};
        if (g.edges.count(id)) throw Error("duplicate edge id: " + id.name);
        g.edges[id] = e;
    }
    check_invariants(g);
    return g;
}

LdGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return graph_from_json(buf.str());
}

void save_graph_file(const LdGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write graph file: " + path);
    out << graph_to_json(g);
}

Relation relation_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("relation JSON: ") + e.what());
    }
    Relation z;
    for (const auto& pair : j.at("pairs")) {
        if (!pair.is_array() || pair.size() != 2)
            throw Error("relation pairs must be two-element arrays");
        z.insert({NodeId{pair[0].get<std::string>()}, NodeId{pair[1].get<std::string>()}});
    }
    return z;
}

Relation load_relation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open relation file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return relation_from_json(buf.str());
}

std::string graph_to_dot(const LdGraph& g) {
    std::ostringstream out;
    out << "digraph G {\n";
    for (const NodeId& n : g.universe) {
        out << "  \"" << n.name << "\" [label=\"" << n.name;
        const auto& ls = g.labels_of(n);
        if (!ls.empty()) {
            out << "\\n";
            bool first = true;
            for (const auto& c : ls) {
                if (!first) out << ",";
                out << c;
                first = false;
            }
        }
        out << "\"";
        if (!g.is_active(n)) out << " style=dashed";
        out << "];\n";
    }
    for (const auto& [eid, e] : g.edges)
        out << "  \"" << e.src.name << "\" -> \"" << e.tgt.name << "\" [label=\"" << e.role
            << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace ldg
