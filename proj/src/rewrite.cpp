#include <algorithm>
#include <set>

#include "ldg/errors.hpp"
#include "ldg/eval.hpp"
#include "ldg/rule.hpp"

namespace ldg {

const LhsNode* Lhs::find(const std::string& name) const {
    for (const auto& n : nodes)
        if (n.name == name) return &n;
    return nullptr;
}

std::vector<std::string> Rule::fresh_names() const {
    std::vector<std::string> out;
    auto intro = [&](const NodeId& n) {
        if (lhs.has_node(n.name)) return;
        if (std::find(out.begin(), out.end(), n.name) == out.end()) out.push_back(n.name);
    };
    for (const Action& a : rhs) {
        if (a.kind == ActionKind::AddNode) intro(a.i);
        if (a.kind == ActionKind::Clone) intro(a.j);
    }
    return out;
}

void Rule::validate() const {
    std::set<std::string> known;
    for (const auto& n : lhs.nodes) {
        if (!known.insert(n.name).second) throw Error("duplicate LHS node: " + n.name);
    }
    for (const auto& e : lhs.edges) {
        if (!lhs.has_node(e.src) || !lhs.has_node(e.tgt))
            throw Error("LHS edge endpoint is not an LHS node in rule " + name);
    }
    auto check_known = [&](const NodeId& n) {
        if (!known.count(n.name))
            throw Error("rule " + name + ": action argument " + n.name +
                        " is neither an LHS node nor introduced earlier");
    };
    for (const Action& a : rhs) {
        switch (a.kind) {
            case ActionKind::AddNode:
                if (lhs.has_node(a.i.name))
                    throw Error("rule " + name + ": add_N target clashes with LHS node " +
                                a.i.name);
                known.insert(a.i.name);
                break;
            case ActionKind::Clone:
                check_known(a.i);
                if (lhs.has_node(a.j.name))
                    throw Error("rule " + name + ": clone target clashes with LHS node " +
                                a.j.name);
                known.insert(a.j.name);
                break;
            case ActionKind::DelNode:
            case ActionKind::AddLabel:
            case ActionKind::DelLabel: check_known(a.i); break;
            case ActionKind::AddEdge:
            case ActionKind::AddEdgeId:
            case ActionKind::DelEdge:
            case ActionKind::Redirect:
            case ActionKind::Merge:
                check_known(a.i);
                check_known(a.j);
                break;
            case ActionKind::DelEdgeId: break;
        }
    }
}

const Rule* RuleSet::find(const std::string& name) const {
    for (const auto& r : rules)
        if (r.name == name) return &r;
    return nullptr;
}

const Rule& RuleSet::at(const std::string& name) const {
    const Rule* r = find(name);
    if (!r) throw UnknownRule(name);
    return *r;
}

namespace {

struct HostView {
    GraphIndex ix;
    // Candidate mask per LHS node (label formulas evaluated once).
    std::vector<Bits> candidates;
    std::vector<std::string> node_order;  // sorted LHS names
};

HostView prepare(const LdGraph& g, const Rule& rule) {
    HostView hv{index_graph(g), {}, {}};
    for (const auto& n : rule.lhs.nodes) hv.node_order.push_back(n.name);
    std::sort(hv.node_order.begin(), hv.node_order.end());
    for (const auto& name : hv.node_order) {
        const LhsNode* n = rule.lhs.find(name);
        Bits cand = hv.ix.active;
        try {
            for (const ConceptPtr& c : n->labels) cand &= eval_concept(hv.ix, c);
        } catch (const UnknownName& e) {
            throw AlphabetMismatch("left-hand-side label of rule " + rule.name +
                                   " uses a name outside the host alphabet (" + e.what() + ")");
        }
        hv.candidates.push_back(cand);
    }
    for (const auto& e : rule.lhs.edges)
        if (!g.alphabet.has_role(e.role))
            throw AlphabetMismatch("left-hand-side edge role " + e.role + " of rule " +
                                   rule.name + " is not in the host alphabet");
    return hv;
}

}  // namespace

std::vector<Match> find_matches(const LdGraph& g, const Rule& rule, bool injective) {
    HostView hv = prepare(g, rule);
    std::vector<Match> out;
    std::map<std::string, size_t> assign;

    // Edge images are chosen after all nodes, in edge-list order.
    std::function<void(size_t, Match&)> pick_edges = [&](size_t k, Match& m) {
        if (k == rule.lhs.edges.size()) {
            out.push_back(m);
            return;
        }
        const LhsEdge& le = rule.lhs.edges[k];
        const NodeId& s = hv.ix.nodes[assign.at(le.src)];
        const NodeId& t = hv.ix.nodes[assign.at(le.tgt)];
        for (const auto& [eid, e] : g.edges) {
            if (e.src == s && e.tgt == t && e.role == le.role) {
                m.edges[le.id] = eid;
                pick_edges(k + 1, m);
                m.edges.erase(le.id);
            }
        }
    };

    std::function<void(size_t)> pick_nodes = [&](size_t k) {
        if (k == hv.node_order.size()) {
            Match m;
            for (const auto& [name, idx] : assign) m.nodes[name] = hv.ix.nodes[idx];
            pick_edges(0, m);
            return;
        }
        const Bits& cand = hv.candidates[k];
        for (size_t i = 0; i < hv.ix.size(); ++i) {
            if (!cand.get(i)) continue;
            if (injective) {
                bool used = false;
                for (const auto& [name, idx] : assign) used |= idx == i;
                if (used) continue;
            }
            assign[hv.node_order[k]] = i;
            pick_nodes(k + 1);
            assign.erase(hv.node_order[k]);
        }
    };
    pick_nodes(0);

    // Prune node assignments that admit no edge images: pick_edges already
    // drops them. Matches come out sorted because candidates are scanned in
    // host order; keep a stable final sort as the contract.
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool applicable(const LdGraph& g, const Rule& rule) {
    return !find_matches(g, rule).empty();
}

bool is_valid_match(const LdGraph& g, const Rule& rule, const Match& m) {
    for (const auto& n : rule.lhs.nodes) {
        auto it = m.nodes.find(n.name);
        if (it == m.nodes.end() || !g.is_active(it->second)) return false;
        for (const ConceptPtr& c : n.labels)
            if (!holds_at(g, it->second, c)) return false;
    }
    for (const auto& le : rule.lhs.edges) {
        auto it = m.edges.find(le.id);
        if (it == m.edges.end()) return false;
        auto eit = g.edges.find(it->second);
        if (eit == g.edges.end()) return false;
        const Edge& e = eit->second;
        if (e.role != le.role) return false;
        if (e.src != m.nodes.at(le.src) || e.tgt != m.nodes.at(le.tgt)) return false;
    }
    return true;
}

LdGraph apply_rule(const LdGraph& g, const Rule& rule, const Match& m) {
    LdGraph host = g;
    std::map<std::string, NodeId> binding;
    for (const auto& [name, id] : m.nodes) binding[name] = id;
    for (const std::string& fresh : rule.fresh_names()) {
        auto [g2, id] = reserve_fresh(host);
        host = std::move(g2);
        binding[fresh] = id;
    }
    auto subst = [&](const NodeId& n) {
        auto it = binding.find(n.name);
        if (it == binding.end()) throw UnknownNode(n.name);
        return it->second;
    };
    ActionSeq instantiated;
    for (Action a : rule.rhs) {
        switch (a.kind) {
            case ActionKind::DelEdgeId: break;
            case ActionKind::AddNode:
            case ActionKind::DelNode:
            case ActionKind::AddLabel:
            case ActionKind::DelLabel: a.i = subst(a.i); break;
            default:
                a.i = subst(a.i);
                a.j = subst(a.j);
                break;
        }
        instantiated.push_back(std::move(a));
    }
    return apply_sequence(host, instantiated);
}

namespace {

// Concept-to-FOL label translation: atomic, boolean, nominal and
// exists-over-a-basic-role, per the applicability construction.
FolPtr label_to_fol(const ConceptPtr& c, const Term& t, int& fresh) {
    switch (c->kind) {
        case ConceptKind::Top: return f_top();
        case ConceptKind::Atomic: return f_concept(c->name, t);
        case ConceptKind::Active: return f_active(t);
        case ConceptKind::Nominal: return f_eq(t, Term::constant(c->nominal));
        case ConceptKind::Not: return f_not(label_to_fol(c->a, t, fresh));
        case ConceptKind::Or:
            return f_or(label_to_fol(c->a, t, fresh), label_to_fol(c->b, t, fresh));
        case ConceptKind::Exists: {
            if (c->role.kind != RoleKind::Basic)
                throw InexpressibleLabel("exists over a non-basic role");
            std::string y = "_y" + std::to_string(fresh++);
            Term yt = Term::variable(y);
            return f_exists(y, f_and(f_role(c->role.name, t, yt),
                                     label_to_fol(c->a, yt, fresh)));
        }
        case ConceptKind::ExistsSelf: throw InexpressibleLabel("Self");
        case ConceptKind::Less: throw InexpressibleLabel("counting quantifier");
        case ConceptKind::Subst: throw InexpressibleLabel("pending substitution");
    }
    throw InexpressibleLabel("unknown constructor");
}

bool node_needs_guard(const Rule& rule, const LhsNode& n) {
    for (const auto& e : rule.lhs.edges)
        if (e.src == n.name || e.tgt == n.name) return false;
    for (const ConceptPtr& c : n.labels)
        if (entails_active(c)) return false;
    return true;
}

}  // namespace

FolPtr app_formula_fol(const Rule& rule, bool pin_nodes) {
    std::vector<std::string> names;
    for (const auto& n : rule.lhs.nodes) names.push_back(n.name);
    std::sort(names.begin(), names.end());

    auto term_of = [&](const std::string& name) {
        return pin_nodes ? Term::constant(NodeId{name}) : Term::variable(name);
    };

    int fresh = 0;
    FolPtr matrix = f_top();
    for (const auto& name : names) {
        const LhsNode* n = rule.lhs.find(name);
        if (node_needs_guard(rule, *n)) matrix = f_and(matrix, f_active(term_of(name)));
        for (const ConceptPtr& c : n->labels)
            matrix = f_and(matrix, label_to_fol(c, term_of(name), fresh));
    }
    for (const auto& e : rule.lhs.edges)
        matrix = f_and(matrix, f_role(e.role, term_of(e.src), term_of(e.tgt)));

    if (pin_nodes) return matrix;
    for (auto it = names.rbegin(); it != names.rend(); ++it) matrix = f_exists(*it, matrix);
    return matrix;
}

ConceptPtr app_formula_alcu(const Rule& rule, bool pin_nodes) {
    // Root: the unique node with no incoming edge; every other node has
    // exactly one parent and is reachable from the root.
    std::map<std::string, int> indeg;
    for (const auto& n : rule.lhs.nodes) indeg[n.name] = 0;
    for (const auto& e : rule.lhs.edges) {
        if (e.src == e.tgt) throw NotATree("self loop on " + e.src);
        indeg[e.tgt]++;
    }
    std::string root;
    for (const auto& [name, d] : indeg) {
        if (d == 0) {
            if (!root.empty()) throw NotATree("two roots: " + root + ", " + name);
            root = name;
        } else if (d > 1) {
            throw NotATree("node " + name + " has several parents");
        }
    }
    if (root.empty()) throw NotATree(rule.lhs.nodes.empty() ? "empty left-hand side"
                                                            : "cyclic left-hand side");

    std::set<std::string> seen;
    std::function<ConceptPtr(const std::string&)> enc = [&](const std::string& name) {
        if (!seen.insert(name).second) throw NotATree("cycle through " + name);
        const LhsNode* n = rule.lhs.find(name);
        ConceptPtr out = c_top();
        if (pin_nodes) out = c_and(out, c_nominal(NodeId{name}));
        for (const ConceptPtr& c : n->labels) out = c_and(out, c);
        for (const auto& e : rule.lhs.edges)
            if (e.src == name) out = c_and(out, c_exists(Role::basic(e.role), enc(e.tgt)));
        return out;
    };
    ConceptPtr body = enc(root);
    if (seen.size() != rule.lhs.nodes.size()) throw NotATree("disconnected left-hand side");
    if (!entails_active(body)) body = c_and(c_active(), body);
    return c_exists(Role::universal(), body);
}

}  // namespace ldg
