#pragma once

#include <set>
#include <string>

#include "ldg/errors.hpp"

namespace ldg {

// Names that can never be used as basic concepts or roles.
bool is_reserved_token(const std::string& name);

// Basic (propositional) concept and role names available to a graph.
struct Alphabet {
    std::set<std::string> basic_concepts;
    std::set<std::string> basic_roles;

    bool has_concept(const std::string& c) const { return basic_concepts.count(c) > 0; }
    bool has_role(const std::string& r) const { return basic_roles.count(r) > 0; }

    void validate() const;

    bool operator==(const Alphabet&) const = default;
};

inline Alphabet make_alphabet(std::set<std::string> concepts, std::set<std::string> roles) {
    Alphabet a{std::move(concepts), std::move(roles)};
    a.validate();
    return a;
}

}  // namespace ldg
