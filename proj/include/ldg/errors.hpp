#pragma once

#include <stdexcept>
#include <string>

namespace ldg {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Graph-side errors.
struct UnknownNode : Error {
    explicit UnknownNode(const std::string& id) : Error("unknown node: " + id) {}
};
struct UnknownEdge : Error {
    explicit UnknownEdge(const std::string& id) : Error("unknown edge: " + id) {}
};
struct NodeNotReserved : Error {
    explicit NodeNotReserved(const std::string& id)
        : Error("node is not a reserved universe node: " + id) {}
};
struct InactiveEndpoint : Error {
    explicit InactiveEndpoint(const std::string& id) : Error("inactive endpoint: " + id) {}
};
struct NonBasicLabel : Error {
    explicit NonBasicLabel(const std::string& name)
        : Error("name is not in the basic alphabet: " + name) {}
};

// Logic-side errors.
struct UnknownName : Error {
    explicit UnknownName(const std::string& name) : Error("unknown name: " + name) {}
};
struct PendingSubstitution : Error {
    PendingSubstitution() : Error("formula still contains a pending substitution") {}
};
struct UnboundVariable : Error {
    explicit UnboundVariable(const std::string& v) : Error("unbound variable: " + v) {}
};
struct MalformedSubstitution : Error {
    explicit MalformedSubstitution(const std::string& what)
        : Error("malformed substitution: " + what) {}
};

// Rewrite/strategy/verifier errors.
struct UnknownRule : Error {
    explicit UnknownRule(const std::string& name) : Error("unknown rule: " + name) {}
};
struct InexpressibleLabel : Error {
    explicit InexpressibleLabel(const std::string& what)
        : Error("left-hand-side label not expressible: " + what) {}
};
struct NotATree : Error {
    explicit NotATree(const std::string& what) : Error("left-hand side is not a tree: " + what) {}
};
struct MissingInvariant : Error {
    MissingInvariant() : Error("closure strategy used in verification carries no invariant") {}
};
struct StepBoundExceeded : Error {
    StepBoundExceeded() : Error("strategy step bound exceeded") {}
};
struct BudgetExceeded : Error {
    BudgetExceeded() : Error("enumeration budget exceeded") {}
};
struct AlphabetMismatch : Error {
    explicit AlphabetMismatch(const std::string& what) : Error("alphabet mismatch: " + what) {}
};

// Parser errors carry a source location.
struct SyntaxError : Error {
    int line;
    int column;
    SyntaxError(const std::string& msg, int line_, int col_)
        : Error("syntax error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " +
                msg),
          line(line_), column(col_) {}
};

}  // namespace ldg
