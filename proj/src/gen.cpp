#include "ldg/gen.hpp"

#include <algorithm>

#include "ldg/json_io.hpp"
#include "ldg/print.hpp"
#include "ldg/subst.hpp"

namespace ldg {

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v[rng.below(v.size())];
}

std::vector<NodeId> actives(const LdGraph& g) {
    return {g.active.begin(), g.active.end()};
}

std::vector<NodeId> reserved_nodes(const LdGraph& g) {
    std::vector<NodeId> out;
    for (const NodeId& n : g.universe)
        if (!g.is_active(n)) out.push_back(n);
    return out;
}

}  // namespace

LdGraph random_graph(Rng& rng, const GenParams& p) {
    Alphabet a = make_alphabet({p.concepts.begin(), p.concepts.end()},
                               {p.roles.begin(), p.roles.end()});
    int span = p.max_active - p.min_active + 1;
    int n_active = p.min_active + static_cast<int>(rng.below(span));
    LdGraph g;
    g.alphabet = a;
    for (int i = 0; i < n_active; ++i) {
        NodeId id{"n" + std::to_string(i)};
        g.universe.insert(id);
        g.active.insert(id);
    }
    for (int i = 0; i < p.reserved; ++i)
        g.universe.insert(NodeId{"n" + std::to_string(n_active + i)});
    for (const NodeId& n : g.active)
        for (const auto& c : p.concepts)
            if (rng.chance(0.4)) g.labels[n].insert(c);
    if (n_active > 0) {
        std::vector<NodeId> act = actives(g);
        int n_edges = static_cast<int>(rng.below(p.max_edges + 1));
        for (int e = 0; e < n_edges; ++e) {
            Edge ed{pick(rng, act), pick(rng, act), pick(rng, p.roles)};
            g.edges[fresh_edge_id(g)] = ed;
        }
    }
    return g;
}

LdGraph random_spec_graph(Rng& rng, const Specification& sp, const GenParams& p) {
    Alphabet a = spec_alphabet(sp);
    std::set<std::string> named;
    for (const Rule& r : sp.rules.rules)
        for (const auto& n : r.lhs.nodes) named.insert(n.name);
    std::vector<std::string> reserved = spec_reserved_names(sp.rules);

    LdGraph g;
    g.alphabet = a;
    for (const auto& name : named)
        if (rng.chance(0.75)) {
            g.universe.insert(NodeId{name});
            g.active.insert(NodeId{name});
        }
    int generics = static_cast<int>(rng.below(p.max_active + 1));
    for (int i = 0; i < generics; ++i) {
        NodeId id{"v" + std::to_string(i)};
        g.universe.insert(id);
        g.active.insert(id);
    }
    for (const auto& name : reserved) g.universe.insert(NodeId{name});
    for (const auto& name : named) g.universe.insert(NodeId{name});

    std::vector<std::string> concepts(a.basic_concepts.begin(), a.basic_concepts.end());
    std::vector<std::string> roles(a.basic_roles.begin(), a.basic_roles.end());
    for (const NodeId& n : g.active)
        for (const auto& c : concepts)
            if (rng.chance(0.4)) g.labels[n].insert(c);
    if (!g.active.empty() && !roles.empty()) {
        std::vector<NodeId> act = actives(g);
        int n_edges = static_cast<int>(rng.below(p.max_edges + 1));
        for (int e = 0; e < n_edges; ++e)
            g.edges[fresh_edge_id(g)] = Edge{pick(rng, act), pick(rng, act), pick(rng, roles)};
    }
    return g;
}

std::optional<Action> random_action(Rng& rng, const LdGraph& g, ActionKind kind,
                                    const CloneParams* forced_clone) {
    std::vector<NodeId> act = actives(g);
    std::vector<NodeId> res = reserved_nodes(g);
    std::vector<std::string> concepts(g.alphabet.basic_concepts.begin(),
                                      g.alphabet.basic_concepts.end());
    std::vector<std::string> roles(g.alphabet.basic_roles.begin(),
                                   g.alphabet.basic_roles.end());
    auto need_active = [&](size_t k) { return act.size() >= k; };
    switch (kind) {
        case ActionKind::AddNode:
            if (res.empty()) return std::nullopt;
            return Action::add_node(pick(rng, res));
        case ActionKind::DelNode:
            if (!need_active(1)) return std::nullopt;
            return Action::del_node(pick(rng, act));
        case ActionKind::AddLabel:
            if (!need_active(1) || concepts.empty()) return std::nullopt;
            return Action::add_label(pick(rng, act), pick(rng, concepts));
        case ActionKind::DelLabel:
            if (!need_active(1) || concepts.empty()) return std::nullopt;
            return Action::del_label(pick(rng, act), pick(rng, concepts));
        case ActionKind::AddEdge:
        case ActionKind::AddEdgeId:
            if (!need_active(1) || roles.empty()) return std::nullopt;
            return Action::add_edge(pick(rng, act), pick(rng, act), pick(rng, roles));
        case ActionKind::DelEdge:
            if (!need_active(1) || roles.empty()) return std::nullopt;
            if (!g.edges.empty() && rng.chance(0.7)) {
                // Aim at an existing edge so deletions are not mostly no-ops.
                auto it = g.edges.begin();
                std::advance(it, rng.below(g.edges.size()));
                return Action::del_edge(it->second.src, it->second.tgt, it->second.role);
            }
            return Action::del_edge(pick(rng, act), pick(rng, act), pick(rng, roles));
        case ActionKind::DelEdgeId: {
            if (g.edges.empty()) return std::nullopt;
            auto it = g.edges.begin();
            std::advance(it, rng.below(g.edges.size()));
            return Action::del_edge_id(it->first);
        }
        case ActionKind::Redirect:
            if (!need_active(1)) return std::nullopt;
            return Action::redirect(pick(rng, act), pick(rng, act));
        case ActionKind::Merge:
            if (!need_active(1)) return std::nullopt;
            return Action::merge(pick(rng, act), pick(rng, act));
        case ActionKind::Clone: {
            if (!need_active(1) || res.empty()) return std::nullopt;
            CloneParams cp;
            if (forced_clone) {
                cp = *forced_clone;
            } else {
                for (const auto& r : roles) {
                    if (rng.chance(0.5)) cp.in.insert(r);
                    if (rng.chance(0.5)) cp.out.insert(r);
                    if (rng.chance(0.5)) cp.loop_in.insert(r);
                    if (rng.chance(0.5)) cp.loop_out.insert(r);
                    if (rng.chance(0.5)) cp.loop_loop.insert(r);
                }
            }
            return Action::clone_node(pick(rng, act), pick(rng, res), cp);
        }
    }
    return std::nullopt;
}

namespace {

Role random_role(Rng& rng, const GenParams& p) {
    uint64_t k = rng.below(10);
    if (k < 6) return Role::basic(pick(rng, p.roles));
    if (k < 9) return Role::inverse(pick(rng, p.roles));
    return Role::universal();
}

}  // namespace

ConceptPtr random_concept(Rng& rng, const GenParams& p, const std::vector<NodeId>& universe,
                          int depth) {
    if (depth <= 0 || rng.chance(0.25)) {
        switch (rng.below(universe.empty() ? 4 : 5)) {
            case 0: return c_top();
            case 1: return c_bot();
            case 2: return c_atomic(pick(rng, p.concepts));
            case 3: return c_active();
            default: return c_nominal(pick(rng, universe));
        }
    }
    switch (rng.below(6)) {
        case 0: return c_not(random_concept(rng, p, universe, depth - 1));
        case 1:
            return c_or(random_concept(rng, p, universe, depth - 1),
                        random_concept(rng, p, universe, depth - 1));
        case 2:
            return c_and(random_concept(rng, p, universe, depth - 1),
                         random_concept(rng, p, universe, depth - 1));
        case 3:
            return c_exists(random_role(rng, p), random_concept(rng, p, universe, depth - 1));
        case 4: return c_exists_self(random_role(rng, p));
        default:
            return c_less(1 + static_cast<int>(rng.below(p.max_bound)), random_role(rng, p),
                          random_concept(rng, p, universe, depth - 1));
    }
}

namespace {

FolPtr random_fol_rec(Rng& rng, const GenParams& p, const std::vector<NodeId>& universe,
                      int depth, std::vector<std::string>& bound) {
    auto term = [&]() {
        if (!bound.empty() && (universe.empty() || rng.chance(0.7)))
            return Term::variable(pick(rng, bound));
        if (!universe.empty()) return Term::constant(pick(rng, universe));
        return Term::variable(bound.empty() ? "x" : pick(rng, bound));
    };
    bool can_atom = !bound.empty() || !universe.empty();
    if (depth <= 0 || rng.chance(0.25)) {
        if (!can_atom) return f_top();
        switch (rng.below(5)) {
            case 0: return f_top();
            case 1: return f_concept(pick(rng, p.concepts), term());
            case 2: return f_active(term());
            case 3: return f_role(pick(rng, p.roles), term(), term());
            default: return f_eq(term(), term());
        }
    }
    switch (rng.below(4)) {
        case 0: return f_not(random_fol_rec(rng, p, universe, depth - 1, bound));
        case 1:
            return f_or(random_fol_rec(rng, p, universe, depth - 1, bound),
                        random_fol_rec(rng, p, universe, depth - 1, bound));
        case 2:
            return f_and(random_fol_rec(rng, p, universe, depth - 1, bound),
                         random_fol_rec(rng, p, universe, depth - 1, bound));
        default: {
            std::string v = "x" + std::to_string(bound.size());
            bound.push_back(v);
            FolPtr body = random_fol_rec(rng, p, universe, depth - 1, bound);
            bound.pop_back();
            return f_exists(v, body);
        }
    }
}

}  // namespace

FolPtr random_fol(Rng& rng, const GenParams& p, const std::vector<NodeId>& universe, int depth) {
    std::vector<std::string> bound;
    return random_fol_rec(rng, p, universe, depth, bound);
}

StrategyPtr random_strategy(Rng& rng, const std::vector<std::string>& rule_names, int depth,
                            LogicKind logic) {
    if (depth <= 0 || rng.chance(0.3)) {
        switch (rng.below(4)) {
            case 0: return s_eps();
            case 1: return s_rule(pick(rng, rule_names));
            case 2: return s_try(pick(rng, rule_names));
            default: return s_mandatory(pick(rng, rule_names));
        }
    }
    switch (rng.below(3)) {
        case 0:
            return s_seq(random_strategy(rng, rule_names, depth - 1, logic),
                         random_strategy(rng, rule_names, depth - 1, logic));
        case 1:
            return s_choice(random_strategy(rng, rule_names, depth - 1, logic),
                            random_strategy(rng, rule_names, depth - 1, logic));
        default: {
            StrategyPtr body = random_strategy(rng, rule_names, depth - 1, logic);
            if (logic == LogicKind::Dl)
                return s_closure(body, c_top(), nullptr);
            return s_closure(body, nullptr, f_top());
        }
    }
}

std::vector<CloneParams> clone_param_sweep(const std::string& role) {
    std::vector<CloneParams> out;
    for (int mask = 0; mask < 32; ++mask) {
        CloneParams cp;
        if (mask & 1) cp.in.insert(role);
        if (mask & 2) cp.out.insert(role);
        if (mask & 4) cp.loop_in.insert(role);
        if (mask & 8) cp.loop_out.insert(role);
        if (mask & 16) cp.loop_loop.insert(role);
        out.push_back(std::move(cp));
    }
    return out;
}

FuzzReport fuzz_biconditional(uint64_t seed, int cases, ActionKind kind, bool use_fol,
                              const GenParams& p, const CloneParams* forced_clone) {
    Rng rng(seed);
    FuzzReport report;
    for (int i = 0; i < cases; ++i) {
        LdGraph g = random_graph(rng, p);
        auto action = random_action(rng, g, kind, forced_clone);
        if (!action) {
            ++report.skipped;
            continue;
        }
        std::vector<NodeId> universe(g.universe.begin(), g.universe.end());
        ++report.cases;
        std::string diag;
        bool ok;
        std::string rendered;
        if (use_fol) {
            FolPtr phi = random_fol(rng, p, universe, p.max_depth);
            ok = check_biconditional(g, phi, *action, &diag);
            if (!ok) rendered = print_fol(phi);
        } else {
            ConceptPtr phi = random_concept(rng, p, universe, p.max_depth);
            ok = check_biconditional(g, phi, *action, &diag);
            if (!ok) rendered = print_concept(phi);
        }
        if (!ok) {
            ++report.failures;
            if (report.samples.size() < 3) {
                report.samples.push_back("formula: " + rendered +
                                         "\naction: " + print_action(*action) + "\n" + diag +
                                         "\ngraph:\n" + graph_to_json(g));
            }
        }
    }
    return report;
}

}  // namespace ldg
