#include "ldg/graph.hpp"

#include <algorithm>
#include <vector>

#include "ldg/errors.hpp"

namespace ldg {

namespace {

const std::set<std::string> kNoLabels;

void require_active(const LdGraph& g, const NodeId& n) {
    if (!g.in_universe(n)) throw UnknownNode(n.name);
    if (!g.is_active(n)) throw InactiveEndpoint(n.name);
}

void require_reserved(const LdGraph& g, const NodeId& n) {
    if (!g.in_universe(n)) throw UnknownNode(n.name);
    if (g.is_active(n)) throw NodeNotReserved(n.name);
}

std::string numbered(const std::string& prefix, int k) { return prefix + std::to_string(k); }

}  // namespace

const std::set<std::string>& LdGraph::labels_of(const NodeId& n) const {
    auto it = labels.find(n);
    return it == labels.end() ? kNoLabels : it->second;
}

LdGraph make_graph(Alphabet alphabet,
                   const std::set<NodeId>& active,
                   const std::map<NodeId, std::set<std::string>>& labels,
                   const std::map<EdgeId, Edge>& edges,
                   const std::set<NodeId>& reserved) {
    LdGraph g;
    g.alphabet = std::move(alphabet);
    g.active = active;
    g.universe = active;
    g.universe.insert(reserved.begin(), reserved.end());
    for (const auto& [n, ls] : labels) {
        if (ls.empty()) continue;
        g.labels[n] = ls;
    }
    g.edges = edges;
    check_invariants(g);
    return g;
}

void check_invariants(const LdGraph& g) {
    g.alphabet.validate();
    for (const auto& n : g.active)
        if (!g.in_universe(n)) throw Error("active node outside universe: " + n.name);
    for (const auto& [n, ls] : g.labels) {
        if (!g.is_active(n)) throw Error("label on a non-active node: " + n.name);
        for (const auto& c : ls)
            if (!g.alphabet.has_concept(c)) throw NonBasicLabel(c);
    }
    for (const auto& [e, ed] : g.edges) {
        if (!g.is_active(ed.src)) throw InactiveEndpoint(ed.src.name);
        if (!g.is_active(ed.tgt)) throw InactiveEndpoint(ed.tgt.name);
        if (!g.alphabet.has_role(ed.role)) throw NonBasicLabel(ed.role);
    }
}

LdGraph apply_elementary(const LdGraph& g, const Action& a) {
    LdGraph out = g;
    switch (a.kind) {
        case ActionKind::AddNode: {
            require_reserved(g, a.i);
            out.active.insert(a.i);
            break;
        }
        case ActionKind::DelNode: {
            require_active(g, a.i);
            out.active.erase(a.i);
            out.labels.erase(a.i);
            for (auto it = out.edges.begin(); it != out.edges.end();) {
                if (it->second.src == a.i || it->second.tgt == a.i)
                    it = out.edges.erase(it);
                else
                    ++it;
            }
            break;
        }
        case ActionKind::AddLabel: {
            require_active(g, a.i);
            if (!g.alphabet.has_concept(a.name)) throw NonBasicLabel(a.name);
            out.labels[a.i].insert(a.name);
            break;
        }
        case ActionKind::DelLabel: {
            require_active(g, a.i);
            if (!g.alphabet.has_concept(a.name)) throw NonBasicLabel(a.name);
            auto it = out.labels.find(a.i);
            if (it != out.labels.end()) {
                it->second.erase(a.name);
                if (it->second.empty()) out.labels.erase(it);
            }
            break;
        }
        case ActionKind::AddEdge:
        case ActionKind::AddEdgeId: {
            require_active(g, a.i);
            require_active(g, a.j);
            if (!g.alphabet.has_role(a.name)) throw NonBasicLabel(a.name);
            EdgeId e = a.kind == ActionKind::AddEdge ? fresh_edge_id(g) : a.edge;
            if (out.edges.count(e)) throw Error("edge id already present: " + e.name);
            out.edges[e] = Edge{a.i, a.j, a.name};
            break;
        }
        case ActionKind::DelEdge: {
            require_active(g, a.i);
            require_active(g, a.j);
            if (!g.alphabet.has_role(a.name)) throw NonBasicLabel(a.name);
            for (auto it = out.edges.begin(); it != out.edges.end();) {
                const Edge& e = it->second;
                if (e.src == a.i && e.tgt == a.j && e.role == a.name)
                    it = out.edges.erase(it);
                else
                    ++it;
            }
            break;
        }
        case ActionKind::DelEdgeId: {
            auto it = out.edges.find(a.edge);
            if (it == out.edges.end()) throw UnknownEdge(a.edge.name);
            out.edges.erase(it);
            break;
        }
        case ActionKind::Redirect: {
            require_active(g, a.i);
            require_active(g, a.j);
            for (auto& [e, ed] : out.edges)
                if (ed.tgt == a.i) ed.tgt = a.j;
            break;
        }
        case ActionKind::Merge: {
            require_active(g, a.i);
            require_active(g, a.j);
            if (a.i == a.j) break;  // mrg(i,i) is the identity
            out.active.erase(a.j);
            auto jt = out.labels.find(a.j);
            if (jt != out.labels.end()) {
                out.labels[a.i].insert(jt->second.begin(), jt->second.end());
                out.labels.erase(jt);
            }
            for (auto& [e, ed] : out.edges) {
                if (ed.src == a.j) ed.src = a.i;
                if (ed.tgt == a.j) ed.tgt = a.i;
            }
            break;
        }
        case ActionKind::Clone: {
            require_active(g, a.i);
            require_reserved(g, a.j);
            for (const auto& set :
                 {a.clone.in, a.clone.out, a.clone.loop_in, a.clone.loop_out, a.clone.loop_loop})
                for (const auto& r : set)
                    if (!g.alphabet.has_role(r)) throw NonBasicLabel(r);

            out.active.insert(a.j);
            std::set<std::string> copied;
            for (const auto& c : g.labels_of(a.i))
                if (g.alphabet.has_concept(c)) copied.insert(c);
            if (!copied.empty()) out.labels[a.j] = copied;

            // The five families are materialized in table order, each sorted
            // by the id of the edge it copies.
            std::vector<Edge> created;
            auto collect = [&](auto pred, auto make) {
                std::vector<std::pair<EdgeId, Edge>> family;
                for (const auto& [eid, ed] : g.edges)
                    if (pred(ed)) family.emplace_back(eid, ed);
                std::sort(family.begin(), family.end(),
                          [](const auto& x, const auto& y) { return x.first < y.first; });
                for (const auto& [eid, ed] : family) created.push_back(make(ed));
            };
            collect(
                [&](const Edge& e) {
                    return e.tgt == a.i && e.src != a.i && a.clone.in.count(e.role);
                },
                [&](const Edge& e) { return Edge{e.src, a.j, e.role}; });
            collect(
                [&](const Edge& e) {
                    return e.src == a.i && e.tgt != a.i && a.clone.out.count(e.role);
                },
                [&](const Edge& e) { return Edge{a.j, e.tgt, e.role}; });
            collect(
                [&](const Edge& e) {
                    return e.src == a.i && e.tgt == a.i && a.clone.loop_in.count(e.role);
                },
                [&](const Edge& e) { return Edge{a.i, a.j, e.role}; });
            collect(
                [&](const Edge& e) {
                    return e.src == a.i && e.tgt == a.i && a.clone.loop_out.count(e.role);
                },
                [&](const Edge& e) { return Edge{a.j, a.i, e.role}; });
            collect(
                [&](const Edge& e) {
                    return e.src == a.i && e.tgt == a.i && a.clone.loop_loop.count(e.role);
                },
                [&](const Edge& e) { return Edge{a.j, a.j, e.role}; });
            for (const Edge& e : created) {
                EdgeId id = fresh_edge_id(out);
                out.edges[id] = e;
            }
            break;
        }
    }
    return out;
}

LdGraph apply_sequence(const LdGraph& g, const ActionSeq& alpha) {
    LdGraph cur = g;
    for (size_t idx = 0; idx < alpha.size(); ++idx) {
        try {
            cur = apply_elementary(cur, alpha[idx]);
        } catch (const Error& err) {
            throw Error("action " + std::to_string(idx) + ": " + err.what());
        }
    }
    return cur;
}

std::pair<LdGraph, NodeId> reserve_fresh(const LdGraph& g) {
    LdGraph out = g;
    for (int k = 0;; ++k) {
        NodeId cand{numbered("n", k)};
        if (!g.in_universe(cand)) {
            out.universe.insert(cand);
            return {std::move(out), cand};
        }
    }
}

EdgeId fresh_edge_id(const LdGraph& g) {
    for (int k = 0;; ++k) {
        EdgeId cand{numbered("e", k)};
        if (!g.edges.count(cand)) return cand;
    }
}

}  // namespace ldg
