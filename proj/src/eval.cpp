#include "ldg/eval.hpp"

#include <algorithm>
#include <unordered_map>

#include "ldg/errors.hpp"

namespace ldg {

size_t GraphIndex::index(const NodeId& n) const {
    auto it = index_of.find(n);
    if (it == index_of.end()) throw UnknownName(n.name);
    return it->second;
}

GraphIndex index_graph(const LdGraph& g) {
    GraphIndex ix;
    ix.g = &g;
    ix.nodes.assign(g.universe.begin(), g.universe.end());
    for (size_t i = 0; i < ix.nodes.size(); ++i) ix.index_of[ix.nodes[i]] = i;
    size_t n = ix.nodes.size();
    ix.active = Bits(n);
    for (const NodeId& a : g.active) ix.active.set(ix.index_of.at(a));
    for (const auto& c : g.alphabet.basic_concepts) ix.concepts[c] = Bits(n);
    for (const auto& [node, ls] : g.labels)
        for (const auto& c : ls) ix.concepts[c].set(ix.index_of.at(node));
    for (const auto& r : g.alphabet.basic_roles) {
        ix.succ[r].assign(n, Bits(n));
        ix.pred[r].assign(n, Bits(n));
    }
    for (const auto& [eid, e] : g.edges) {
        size_t s = ix.index_of.at(e.src);
        size_t t = ix.index_of.at(e.tgt);
        ix.succ[e.role][s].set(t);
        ix.pred[e.role][t].set(s);
    }
    return ix;
}

namespace {

class ConceptEval {
public:
    explicit ConceptEval(const GraphIndex& ix) : ix_(ix) {}

    Bits eval(const ConceptPtr& c) {
        auto it = memo_.find(c.get());
        if (it != memo_.end()) return it->second;
        Bits r = compute(c);
        memo_.emplace(c.get(), r);
        return r;
    }

private:
    const std::vector<Bits>& role_table(const Role& r) const {
        auto& tables = r.kind == RoleKind::Inverse ? ix_.pred : ix_.succ;
        auto it = tables.find(r.name);
        if (it == tables.end()) throw UnknownName(r.name);
        return it->second;
    }

    Bits compute(const ConceptPtr& c) {
        size_t n = ix_.size();
        switch (c->kind) {
            case ConceptKind::Top: return Bits(n, true);
            case ConceptKind::Active: return ix_.active;
            case ConceptKind::Atomic: {
                auto it = ix_.concepts.find(c->name);
                if (it == ix_.concepts.end()) throw UnknownName(c->name);
                return it->second;
            }
            case ConceptKind::Nominal: {
                Bits r(n);
                r.set(ix_.index(c->nominal));
                return r;
            }
            case ConceptKind::Not: return eval(c->a).complement();
            case ConceptKind::Or: return eval(c->a) | eval(c->b);
            case ConceptKind::Exists: {
                Bits body = eval(c->a);
                Bits r(n);
                if (c->role.is_universal()) {
                    return body.any() ? Bits(n, true) : r;
                }
                const auto& table = role_table(c->role);
                for (size_t i = 0; i < n; ++i)
                    if ((table[i] & body).any()) r.set(i);
                return r;
            }
            case ConceptKind::ExistsSelf: {
                if (c->role.is_universal()) return Bits(n, true);
                const auto& table = role_table(c->role);
                Bits r(n);
                for (size_t i = 0; i < n; ++i)
                    if (table[i].get(i)) r.set(i);
                return r;
            }
            case ConceptKind::Less: {
                Bits body = eval(c->a);
                Bits r(n);
                if (c->role.is_universal()) {
                    if (body.count() < c->bound) r = Bits(n, true);
                    return r;
                }
                const auto& table = role_table(c->role);
                for (size_t i = 0; i < n; ++i)
                    if ((table[i] & body).count() < c->bound) r.set(i);
                return r;
            }
            case ConceptKind::Subst: throw PendingSubstitution();
        }
        throw Error("unreachable concept kind");
    }

    const GraphIndex& ix_;
    std::unordered_map<const ConceptNode*, Bits> memo_;
};

}  // namespace

Bits eval_concept(const GraphIndex& ix, const ConceptPtr& c) {
    return ConceptEval(ix).eval(c);
}

std::set<NodeId> eval_concept(const LdGraph& g, const ConceptPtr& c) {
    GraphIndex ix = index_graph(g);
    Bits b = eval_concept(ix, c);
    std::set<NodeId> out;
    for (size_t i = 0; i < ix.size(); ++i)
        if (b.get(i)) out.insert(ix.nodes[i]);
    return out;
}

bool holds_at(const LdGraph& g, const NodeId& n, const ConceptPtr& c) {
    GraphIndex ix = index_graph(g);
    return eval_concept(ix, c).get(ix.index(n));
}

bool graph_satisfies(const GraphIndex& ix, const ConceptPtr& c) {
    return eval_concept(ix, c).contains(ix.active);
}

bool graph_satisfies(const LdGraph& g, const ConceptPtr& c) {
    return graph_satisfies(index_graph(g), c);
}

namespace {

// Free variables per subformula, cached by node identity.
class FolEval {
public:
    explicit FolEval(const GraphIndex& ix) : ix_(ix) {}

    bool eval(const FolPtr& f, std::vector<std::pair<std::string, size_t>>& env) {
        MemoKey key{f.get(), project(f, env)};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool r = compute(f, env);
        memo_.emplace(std::move(key), r);
        return r;
    }

private:
    struct MemoKey {
        const FolNode* node;
        std::vector<size_t> vals;
        bool operator==(const MemoKey&) const = default;
    };
    struct MemoHash {
        size_t operator()(const MemoKey& k) const {
            size_t h = std::hash<const FolNode*>()(k.node);
            for (size_t v : k.vals) h = h * 1000003u + v + 1;
            return h;
        }
    };

    const std::vector<std::string>& free_vars(const FolPtr& f) {
        auto it = fv_.find(f.get());
        if (it != fv_.end()) return it->second;
        std::vector<std::string> vs;
        auto add = [&](const Term& t) {
            if (t.is_var) vs.push_back(t.var);
        };
        switch (f->kind) {
            case FolKind::Top: break;
            case FolKind::ConceptApp:
            case FolKind::ActiveApp: add(f->t1); break;
            case FolKind::RoleApp:
            case FolKind::Eq:
                add(f->t1);
                add(f->t2);
                break;
            case FolKind::Not:
            case FolKind::Subst: vs = free_vars(f->a); break;
            case FolKind::Or: {
                vs = free_vars(f->a);
                for (const auto& v : free_vars(f->b)) vs.push_back(v);
                break;
            }
            case FolKind::Exists: {
                for (const auto& v : free_vars(f->a))
                    if (v != f->var) vs.push_back(v);
                break;
            }
        }
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return fv_.emplace(f.get(), std::move(vs)).first->second;
    }

    std::vector<size_t> project(const FolPtr& f,
                                const std::vector<std::pair<std::string, size_t>>& env) {
        std::vector<size_t> vals;
        for (const auto& v : free_vars(f)) {
            bool found = false;
            for (auto it = env.rbegin(); it != env.rend(); ++it) {
                if (it->first == v) {
                    vals.push_back(it->second);
                    found = true;
                    break;
                }
            }
            if (!found) throw UnboundVariable(v);
        }
        return vals;
    }

    size_t resolve(const Term& t, const std::vector<std::pair<std::string, size_t>>& env) {
        if (t.is_var) {
            for (auto it = env.rbegin(); it != env.rend(); ++it)
                if (it->first == t.var) return it->second;
            throw UnboundVariable(t.var);
        }
        return ix_.index(t.node);
    }

    bool compute(const FolPtr& f, std::vector<std::pair<std::string, size_t>>& env) {
        switch (f->kind) {
            case FolKind::Top: return true;
            case FolKind::ConceptApp: {
                auto it = ix_.concepts.find(f->name);
                if (it == ix_.concepts.end()) throw UnknownName(f->name);
                return it->second.get(resolve(f->t1, env));
            }
            case FolKind::ActiveApp: return ix_.active.get(resolve(f->t1, env));
            case FolKind::RoleApp: {
                auto it = ix_.succ.find(f->name);
                if (it == ix_.succ.end()) throw UnknownName(f->name);
                return it->second[resolve(f->t1, env)].get(resolve(f->t2, env));
            }
            case FolKind::Eq: return resolve(f->t1, env) == resolve(f->t2, env);
            case FolKind::Not: return !eval(f->a, env);
            case FolKind::Or: return eval(f->a, env) || eval(f->b, env);
            case FolKind::Exists: {
                for (size_t i = 0; i < ix_.size(); ++i) {
                    env.emplace_back(f->var, i);
                    bool ok = eval(f->a, env);
                    env.pop_back();
                    if (ok) return true;
                }
                return false;
            }
            case FolKind::Subst: throw PendingSubstitution();
        }
        throw Error("unreachable fol kind");
    }

    const GraphIndex& ix_;
    std::unordered_map<const FolNode*, std::vector<std::string>> fv_;
    std::unordered_map<MemoKey, bool, MemoHash> memo_;
};

}  // namespace

bool eval_fol(const GraphIndex& ix, const FolPtr& f, const FolEnv& env) {
    FolEval ev(ix);
    std::vector<std::pair<std::string, size_t>> e;
    for (const auto& [v, node] : env) e.emplace_back(v, ix.index(node));
    return ev.eval(f, e);
}

bool eval_fol(const LdGraph& g, const FolPtr& f, const FolEnv& env) {
    return eval_fol(index_graph(g), f, env);
}

}  // namespace ldg
