#pragma once

#include <compare>
#include <string>

namespace ldg {

// Node and edge names are opaque strings with a total order so that every
// iteration in the engine is deterministic.
struct NodeId {
    std::string name;

    NodeId() = default;
    explicit NodeId(std::string n) : name(std::move(n)) {}

    auto operator<=>(const NodeId&) const = default;
};

struct EdgeId {
    std::string name;

    EdgeId() = default;
    explicit EdgeId(std::string n) : name(std::move(n)) {}

    auto operator<=>(const EdgeId&) const = default;
};

inline NodeId node(std::string n) { return NodeId{std::move(n)}; }
inline EdgeId edge(std::string n) { return EdgeId{std::move(n)}; }

}  // namespace ldg
