#include "ldg/alphabet.hpp"

#include <array>

namespace ldg {

bool is_reserved_token(const std::string& name) {
    static const std::array<const char*, 12> reserved = {
        "top", "bot", "Self", "U", "Active", "not", "or", "and", "exists", "forall", "inv", "eps"};
    for (const char* r : reserved)
        if (name == r) return true;
    return false;
}

void Alphabet::validate() const {
    for (const auto& c : basic_concepts) {
        if (c.empty()) throw Error("empty concept name");
        if (is_reserved_token(c)) throw Error("concept name is a reserved token: " + c);
        if (basic_roles.count(c)) throw Error("name used as both concept and role: " + c);
    }
    for (const auto& r : basic_roles) {
        if (r.empty()) throw Error("empty role name");
        if (is_reserved_token(r)) throw Error("role name is a reserved token: " + r);
    }
}

}  // namespace ldg
