#include "ldg/bisim.hpp"

#include <algorithm>
#include <functional>

#include "ldg/concepts.hpp"
#include "ldg/errors.hpp"
#include "ldg/eval.hpp"

namespace ldg {

namespace {

struct Side {
    const BisimInterp* interp;
    std::vector<NodeId> domain;  // active nodes
    std::map<NodeId, std::set<std::string>> labels;
    // role -> node -> successor list
    std::map<std::string, std::map<NodeId, std::vector<NodeId>>> succ;
    std::map<std::string, std::set<std::pair<NodeId, NodeId>>> pairs;

    bool has_pair(const std::string& r, const NodeId& a, const NodeId& b) const {
        auto it = pairs.find(r);
        return it != pairs.end() && it->second.count({a, b}) > 0;
    }
};

Side build(const BisimInterp& bi) {
    Side s;
    s.interp = &bi;
    for (const NodeId& n : bi.graph.active) {
        s.domain.push_back(n);
        s.labels[n] = bi.graph.labels_of(n);
    }
    for (const auto& [eid, e] : bi.graph.edges) {
        auto& lst = s.succ[e.role][e.src];
        if (std::find(lst.begin(), lst.end(), e.tgt) == lst.end()) lst.push_back(e.tgt);
        s.pairs[e.role].insert({e.src, e.tgt});
    }
    for (auto& [r, per_node] : s.succ)
        for (auto& [n, lst] : per_node) std::sort(lst.begin(), lst.end());
    return s;
}

// Perfect matching inside Z between the two successor lists (Kuhn's).
bool z_bijection(const std::vector<NodeId>& left, const std::vector<NodeId>& right,
                 const Relation& z) {
    if (left.size() != right.size()) return false;
    size_t n = left.size();
    std::vector<int> match_right(right.size(), -1);
    std::function<bool(size_t, std::vector<bool>&)> augment = [&](size_t li,
                                                                  std::vector<bool>& seen) {
        for (size_t rj = 0; rj < right.size(); ++rj) {
            if (seen[rj] || !z.count({left[li], right[rj]})) continue;
            seen[rj] = true;
            if (match_right[rj] < 0 || augment(static_cast<size_t>(match_right[rj]), seen)) {
                match_right[rj] = static_cast<int>(li);
                return true;
            }
        }
        return false;
    };
    for (size_t li = 0; li < n; ++li) {
        std::vector<bool> seen(right.size(), false);
        if (!augment(li, seen)) return false;
    }
    return true;
}

const std::vector<NodeId>& successors(const Side& s, const std::string& r, const NodeId& n) {
    static const std::vector<NodeId> none;
    auto rit = s.succ.find(r);
    if (rit == s.succ.end()) return none;
    auto nit = rit->second.find(n);
    return nit == rit->second.end() ? none : nit->second;
}

}  // namespace

BisimReport is_bisimulation(const BisimInterp& I, const BisimInterp& J, const Relation& z,
                            const FeatureSet& f) {
    if (I.graph.alphabet != J.graph.alphabet)
        throw AlphabetMismatch("bisimulation sides use different alphabets");
    BisimReport rep;
    if (z.empty()) {
        rep.violations.push_back("relation is empty");
        return rep;
    }
    Side si = build(I);
    Side sj = build(J);
    for (const auto& [d1, d2] : z) {
        if (!I.graph.is_active(d1) || !J.graph.is_active(d2))
            throw Error("relation endpoint outside the domains: " + d1.name + "," + d2.name);
    }

    auto note = [&](const std::string& what) { rep.violations.push_back(what); };

    for (const auto& [d1, d2] : z) {
        for (const auto& c : I.graph.alphabet.basic_concepts) {
            bool m1 = si.labels.at(d1).count(c) > 0;
            bool m2 = sj.labels.at(d2).count(c) > 0;
            if (m1 != m2)
                note("(ALC_1) " + d1.name + " Z " + d2.name + " disagree on " + c);
        }
        for (const auto& r : I.graph.alphabet.basic_roles) {
            for (const NodeId& e1 : successors(si, r, d1)) {
                bool found = false;
                for (const NodeId& e2 : successors(sj, r, d2))
                    found |= z.count({e1, e2}) > 0;
                if (!found)
                    note("(ALC_2) successor " + e1.name + " of " + d1.name +
                         " has no Z-partner among successors of " + d2.name);
            }
            for (const NodeId& e2 : successors(sj, r, d2)) {
                bool found = false;
                for (const NodeId& e1 : successors(si, r, d1))
                    found |= z.count({e1, e2}) > 0;
                if (!found)
                    note("(ALC_3) successor " + e2.name + " of " + d2.name +
                         " has no Z-partner among successors of " + d1.name);
            }
            if (f.counting && !z_bijection(successors(si, r, d1), successors(sj, r, d2), z))
                note("(Q) no Z-bijection between " + r + "-successors of " + d1.name + " and " +
                     d2.name);
            if (f.self_loops) {
                bool l1 = si.has_pair(r, d1, d1);
                bool l2 = sj.has_pair(r, d2, d2);
                if (l1 != l2)
                    note("(Self) " + d1.name + " Z " + d2.name + " disagree on " + r + "-loop");
            }
        }
        if (f.nominals) {
            for (const auto& [o, ni] : I.nominals) {
                auto jt = J.nominals.find(o);
                if (jt == J.nominals.end()) continue;
                bool m1 = d1 == ni;
                bool m2 = d2 == jt->second;
                if (m1 != m2)
                    note("(O) " + d1.name + " Z " + d2.name + " disagree on nominal " + o);
            }
        }
    }
    if (f.nominals) {
        for (const auto& [o, ni] : I.nominals) {
            auto jt = J.nominals.find(o);
            if (jt == J.nominals.end()) {
                note("(ALC_4) nominal " + o + " missing on the second side");
                continue;
            }
            if (!z.count({ni, jt->second}))
                note("(ALC_4) nominal pair (" + ni.name + "," + jt->second.name +
                     ") not in the relation");
        }
    }
    if (f.universal) {
        for (const NodeId& d : si.domain) {
            bool any = false;
            for (const NodeId& d2 : sj.domain) any |= z.count({d, d2}) > 0;
            if (!any) note("(U_1) " + d.name + " is unrelated");
        }
        for (const NodeId& d2 : sj.domain) {
            bool any = false;
            for (const NodeId& d : si.domain) any |= z.count({d, d2}) > 0;
            if (!any) note("(U_2) " + d2.name + " is unrelated");
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

std::optional<Relation> largest_bisimulation(const BisimInterp& I, const BisimInterp& J,
                                             const FeatureSet& f) {
    if (I.graph.alphabet != J.graph.alphabet)
        throw AlphabetMismatch("bisimulation sides use different alphabets");
    Side si = build(I);
    Side sj = build(J);

    Relation z;
    for (const NodeId& d1 : si.domain)
        for (const NodeId& d2 : sj.domain) {
            bool ok = true;
            for (const auto& c : I.graph.alphabet.basic_concepts)
                ok &= (si.labels.at(d1).count(c) > 0) == (sj.labels.at(d2).count(c) > 0);
            if (f.nominals)
                for (const auto& [o, ni] : I.nominals) {
                    auto jt = J.nominals.find(o);
                    if (jt != J.nominals.end()) ok &= (d1 == ni) == (d2 == jt->second);
                }
            if (f.self_loops)
                for (const auto& r : I.graph.alphabet.basic_roles)
                    ok &= si.has_pair(r, d1, d1) == sj.has_pair(r, d2, d2);
            if (ok) z.insert({d1, d2});
        }

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = z.begin(); it != z.end();) {
            const auto& [d1, d2] = *it;
            bool keep = true;
            for (const auto& r : I.graph.alphabet.basic_roles) {
                const auto& s1 = successors(si, r, d1);
                const auto& s2 = successors(sj, r, d2);
                for (const NodeId& e1 : s1) {
                    bool found = false;
                    for (const NodeId& e2 : s2) found |= z.count({e1, e2}) > 0;
                    keep &= found;
                }
                for (const NodeId& e2 : s2) {
                    bool found = false;
                    for (const NodeId& e1 : s1) found |= z.count({e1, e2}) > 0;
                    keep &= found;
                }
                if (f.counting) keep &= z_bijection(s1, s2, z);
                if (!keep) break;
            }
            if (keep) {
                ++it;
            } else {
                it = z.erase(it);
                changed = true;
            }
        }
    }

    if (z.empty()) return std::nullopt;
    BisimReport rep = is_bisimulation(I, J, z, f);
    if (!rep.ok) return std::nullopt;
    return z;
}

void non_closure_fixture(BisimInterp& I, BisimInterp& J, Relation& z) {
    Alphabet a = make_alphabet({"C"}, {"R"});
    I.graph = make_graph(a,
                         {node("d1"), node("d2"), node("d3"), node("d4")},
                         {{node("d3"), {"C"}}, {node("d4"), {"C"}}},
                         {{edge("e1"), {node("d1"), node("d3"), "R"}},
                          {edge("e2"), {node("d2"), node("d4"), "R"}}});
    I.nominals = {{"i", node("d1")}, {"j", node("d2")}};
    J.graph = make_graph(a,
                         {node("f1"), node("f2"), node("f3")},
                         {{node("f3"), {"C"}}},
                         {{edge("e1"), {node("f1"), node("f3"), "R"}},
                          {edge("e2"), {node("f2"), node("f3"), "R"}}});
    J.nominals = {{"i", node("f1")}, {"j", node("f2")}};
    z = {{node("d1"), node("f1")},
         {node("d2"), node("f2")},
         {node("d3"), node("f3")},
         {node("d4"), node("f3")}};
}

NonClosureReport demonstrate_non_closure() {
    NonClosureReport rep;
    BisimInterp I, J;
    Relation z;
    non_closure_fixture(I, J, z);

    BisimReport pre = is_bisimulation(I, J, z, FeatureSet::alcquoself());
    rep.bisimilar_before = pre.ok;
    rep.log.push_back(std::string("step 1: Z is an ALCQUOSelf-bisimulation before merging: ") +
                      (pre.ok ? "yes" : "no"));
    for (const auto& v : pre.violations) rep.log.push_back("  " + v);

    LdGraph gi = apply_elementary(I.graph, Action::merge(I.nominals.at("i"), I.nominals.at("j")));
    LdGraph gj = apply_elementary(J.graph, Action::merge(J.nominals.at("i"), J.nominals.at("j")));
    ConceptPtr at_least_two = c_at_least(2, Role::basic("R"), c_atomic("C"));
    rep.holds_at_d1_after = holds_at(gi, I.nominals.at("i"), at_least_two);
    rep.fails_at_d1p_after = !holds_at(gj, J.nominals.at("i"), at_least_two);
    rep.log.push_back(std::string("step 2: (>= 2 R C) holds at d1 after mrg(i,j): ") +
                      (rep.holds_at_d1_after ? "yes" : "no"));
    rep.log.push_back(std::string("step 3: (>= 2 R C) fails at d'1 after mrg(i,j): ") +
                      (rep.fails_at_d1p_after ? "yes" : "no"));
    if (rep.ok())
        rep.log.push_back(
            "conclusion: (>= 2 R C)[mrg(i,j)] distinguishes bisimilar interpretations, so the "
            "counting logics without inverse roles are not closed under substitutions");
    return rep;
}

}  // namespace ldg
