#include "ldg/partial.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "ldg/errors.hpp"

namespace ldg {

namespace {

Tri tri_not(Tri t) {
    if (t == Tri::Unknown) return Tri::Unknown;
    return t == Tri::True ? Tri::False : Tri::True;
}
Tri tri_or(Tri a, Tri b) { return static_cast<Tri>(std::max((int)a, (int)b)); }
Tri tri_and(Tri a, Tri b) { return static_cast<Tri>(std::min((int)a, (int)b)); }

}  // namespace

PartialGraph open_partial_graph(const Alphabet& alphabet, const std::vector<NodeId>& universe,
                                const std::vector<NodeId>& active) {
    PartialGraph pg;
    pg.alphabet = alphabet;
    pg.nodes = universe;
    std::sort(pg.nodes.begin(), pg.nodes.end());
    pg.nodes.erase(std::unique(pg.nodes.begin(), pg.nodes.end()), pg.nodes.end());
    for (size_t i = 0; i < pg.nodes.size(); ++i) pg.index_of[pg.nodes[i]] = i;
    size_t n = pg.nodes.size();
    pg.active = Bits(n);
    for (const NodeId& a : active) pg.active.set(pg.index_of.at(a));
    for (const auto& c : alphabet.basic_concepts) pg.label[c].assign(n, Tri::False);
    for (const auto& r : alphabet.basic_roles) pg.edge[r].assign(n * n, Tri::False);
    for (size_t i = 0; i < n; ++i) {
        if (!pg.active.get(i)) continue;
        for (const auto& c : alphabet.basic_concepts) pg.label[c][i] = Tri::Unknown;
        for (const auto& r : alphabet.basic_roles)
            for (size_t j = 0; j < n; ++j)
                if (pg.active.get(j)) pg.edge[r][i * n + j] = Tri::Unknown;
    }
    return pg;
}

LdGraph materialize(const PartialGraph& pg, bool unknowns_true) {
    LdGraph g;
    g.alphabet = pg.alphabet;
    for (size_t i = 0; i < pg.size(); ++i) {
        g.universe.insert(pg.nodes[i]);
        if (pg.active.get(i)) g.active.insert(pg.nodes[i]);
    }
    auto hold = [&](Tri t) { return t == Tri::True || (t == Tri::Unknown && unknowns_true); };
    for (const auto& [c, row] : pg.label)
        for (size_t i = 0; i < pg.size(); ++i)
            if (hold(row[i])) g.labels[pg.nodes[i]].insert(c);
    int k = 0;
    for (const auto& [r, cells] : pg.edge)
        for (size_t i = 0; i < pg.size(); ++i)
            for (size_t j = 0; j < pg.size(); ++j)
                if (hold(cells[i * pg.size() + j]))
                    g.edges[EdgeId{"e" + std::to_string(k++)}] =
                        Edge{pg.nodes[i], pg.nodes[j], r};
    check_invariants(g);
    return g;
}

namespace {

// Per-role successor/predecessor interval rows, precomputed per evaluation.
struct RoleBounds {
    std::vector<Bits> succ_lo, succ_hi, pred_lo, pred_hi;
};

class Eval3 {
public:
    explicit Eval3(const PartialGraph& pg) : pg_(pg), n_(pg.size()) {
        for (const auto& [r, cells] : pg.edge) {
            RoleBounds rb;
            rb.succ_lo.assign(n_, Bits(n_));
            rb.succ_hi.assign(n_, Bits(n_));
            rb.pred_lo.assign(n_, Bits(n_));
            rb.pred_hi.assign(n_, Bits(n_));
            for (size_t i = 0; i < n_; ++i)
                for (size_t j = 0; j < n_; ++j) {
                    Tri t = cells[i * n_ + j];
                    if (t == Tri::True) {
                        rb.succ_lo[i].set(j);
                        rb.pred_lo[j].set(i);
                    }
                    if (t != Tri::False) {
                        rb.succ_hi[i].set(j);
                        rb.pred_hi[j].set(i);
                    }
                }
            roles_.emplace(r, std::move(rb));
        }
    }

    TriSet concept_bounds(const ConceptPtr& c) {
        auto it = memo_.find(c.get());
        if (it != memo_.end()) return it->second;
        TriSet r = compute(c);
        memo_.emplace(c.get(), r);
        return r;
    }

    Tri fol_value(const FolPtr& f) {
        std::vector<std::pair<std::string, size_t>> env;
        return fol(f, env);
    }

private:
    const RoleBounds& role(const std::string& name) const {
        auto it = roles_.find(name);
        if (it == roles_.end()) throw UnknownName(name);
        return it->second;
    }

    void rows(const Role& r, bool lo, const std::vector<Bits>** out) const {
        const RoleBounds& rb = role(r.name);
        if (r.kind == RoleKind::Inverse)
            *out = lo ? &rb.pred_lo : &rb.pred_hi;
        else
            *out = lo ? &rb.succ_lo : &rb.succ_hi;
    }

    TriSet compute(const ConceptPtr& c) {
        switch (c->kind) {
            case ConceptKind::Top: return {Bits(n_, true), Bits(n_, true)};
            case ConceptKind::Active: return {pg_.active, pg_.active};
            case ConceptKind::Atomic: {
                auto it = pg_.label.find(c->name);
                if (it == pg_.label.end()) throw UnknownName(c->name);
                TriSet r{Bits(n_), Bits(n_)};
                for (size_t i = 0; i < n_; ++i) {
                    if (it->second[i] == Tri::True) r.lo.set(i);
                    if (it->second[i] != Tri::False) r.hi.set(i);
                }
                return r;
            }
            case ConceptKind::Nominal: {
                auto it = pg_.index_of.find(c->nominal);
                if (it == pg_.index_of.end()) throw UnknownName(c->nominal.name);
                TriSet r{Bits(n_), Bits(n_)};
                r.lo.set(it->second);
                r.hi.set(it->second);
                return r;
            }
            case ConceptKind::Not: {
                TriSet a = concept_bounds(c->a);
                return {a.hi.complement(), a.lo.complement()};
            }
            case ConceptKind::Or: {
                TriSet a = concept_bounds(c->a);
                TriSet b = concept_bounds(c->b);
                return {a.lo | b.lo, a.hi | b.hi};
            }
            case ConceptKind::Exists: {
                TriSet body = concept_bounds(c->a);
                TriSet r{Bits(n_), Bits(n_)};
                if (c->role.is_universal()) {
                    if (body.lo.any()) r.lo = Bits(n_, true);
                    if (body.hi.any()) r.hi = Bits(n_, true);
                    return r;
                }
                const std::vector<Bits>* lo_rows;
                const std::vector<Bits>* hi_rows;
                rows(c->role, true, &lo_rows);
                rows(c->role, false, &hi_rows);
                for (size_t i = 0; i < n_; ++i) {
                    if (((*lo_rows)[i] & body.lo).any()) r.lo.set(i);
                    if (((*hi_rows)[i] & body.hi).any()) r.hi.set(i);
                }
                return r;
            }
            case ConceptKind::ExistsSelf: {
                TriSet r{Bits(n_), Bits(n_)};
                if (c->role.is_universal()) return {Bits(n_, true), Bits(n_, true)};
                const std::vector<Bits>* lo_rows;
                const std::vector<Bits>* hi_rows;
                rows(c->role, true, &lo_rows);
                rows(c->role, false, &hi_rows);
                for (size_t i = 0; i < n_; ++i) {
                    if ((*lo_rows)[i].get(i)) r.lo.set(i);
                    if ((*hi_rows)[i].get(i)) r.hi.set(i);
                }
                return r;
            }
            case ConceptKind::Less: {
                TriSet body = concept_bounds(c->a);
                TriSet r{Bits(n_), Bits(n_)};
                if (c->role.is_universal()) {
                    size_t cmin = body.lo.count();
                    size_t cmax = body.hi.count();
                    if (cmax < c->bound) r.lo = Bits(n_, true);
                    if (cmin < c->bound) r.hi = Bits(n_, true);
                    return r;
                }
                const std::vector<Bits>* lo_rows;
                const std::vector<Bits>* hi_rows;
                rows(c->role, true, &lo_rows);
                rows(c->role, false, &hi_rows);
                for (size_t i = 0; i < n_; ++i) {
                    size_t cmin = ((*lo_rows)[i] & body.lo).count();
                    size_t cmax = ((*hi_rows)[i] & body.hi).count();
                    if (cmax < c->bound) r.lo.set(i);
                    if (cmin < c->bound) r.hi.set(i);
                }
                return r;
            }
            case ConceptKind::Subst: throw PendingSubstitution();
        }
        throw Error("unreachable concept kind");
    }

    size_t resolve(const Term& t, const std::vector<std::pair<std::string, size_t>>& env) const {
        if (t.is_var) {
            for (auto it = env.rbegin(); it != env.rend(); ++it)
                if (it->first == t.var) return it->second;
            throw UnboundVariable(t.var);
        }
        auto it = pg_.index_of.find(t.node);
        if (it == pg_.index_of.end()) throw UnknownName(t.node.name);
        return it->second;
    }

    Tri fol(const FolPtr& f, std::vector<std::pair<std::string, size_t>>& env) {
        switch (f->kind) {
            case FolKind::Top: return Tri::True;
            case FolKind::ConceptApp: {
                auto it = pg_.label.find(f->name);
                if (it == pg_.label.end()) throw UnknownName(f->name);
                return it->second[resolve(f->t1, env)];
            }
            case FolKind::ActiveApp:
                return pg_.active.get(resolve(f->t1, env)) ? Tri::True : Tri::False;
            case FolKind::RoleApp: {
                auto it = pg_.edge.find(f->name);
                if (it == pg_.edge.end()) throw UnknownName(f->name);
                return it->second[resolve(f->t1, env) * n_ + resolve(f->t2, env)];
            }
            case FolKind::Eq:
                return resolve(f->t1, env) == resolve(f->t2, env) ? Tri::True : Tri::False;
            case FolKind::Not: return tri_not(fol(f->a, env));
            case FolKind::Or: {
                Tri a = fol(f->a, env);
                if (a == Tri::True) return Tri::True;
                return tri_or(a, fol(f->b, env));
            }
            case FolKind::Exists: {
                Tri acc = Tri::False;
                for (size_t i = 0; i < n_; ++i) {
                    env.emplace_back(f->var, i);
                    acc = tri_or(acc, fol(f->a, env));
                    env.pop_back();
                    if (acc == Tri::True) return Tri::True;
                }
                return acc;
            }
            case FolKind::Subst: throw PendingSubstitution();
        }
        throw Error("unreachable fol kind");
    }

    const PartialGraph& pg_;
    size_t n_;
    std::map<std::string, RoleBounds> roles_;
    std::unordered_map<const ConceptNode*, TriSet> memo_;
};

}  // namespace

TriSet eval3_concept(const PartialGraph& pg, const ConceptPtr& c) {
    return Eval3(pg).concept_bounds(c);
}

Tri eval3_fol(const PartialGraph& pg, const FolPtr& f) { return Eval3(pg).fol_value(f); }

Tri match3(const PartialGraph& pg, const Rule& rule) {
    Eval3 ev(pg);
    size_t n = pg.size();
    std::vector<const LhsNode*> lhs;
    for (const auto& nd : rule.lhs.nodes) lhs.push_back(&nd);

    std::vector<std::pair<const ConceptPtr*, TriSet>> label_bounds;
    auto node_tri = [&](const LhsNode& nd, size_t host) {
        Tri t = pg.active.get(host) ? Tri::True : Tri::False;
        for (const ConceptPtr& c : nd.labels) {
            TriSet b = ev.concept_bounds(c);
            Tri lt = b.lo.get(host) ? Tri::True : (b.hi.get(host) ? Tri::Unknown : Tri::False);
            t = tri_and(t, lt);
            if (t == Tri::False) break;
        }
        return t;
    };

    for (const auto& e : rule.lhs.edges)
        if (!pg.edge.count(e.role)) throw UnknownName(e.role);

    std::map<std::string, size_t> assign;
    Tri best = Tri::False;
    std::function<void(size_t, Tri)> walk = [&](size_t k, Tri acc) {
        if (best == Tri::True || acc == Tri::False) return;
        if (k == lhs.size()) {
            Tri t = acc;
            for (const auto& e : rule.lhs.edges) {
                t = tri_and(t, pg.edge_at(e.role, assign.at(e.src), assign.at(e.tgt)));
                if (t == Tri::False) break;
            }
            best = tri_or(best, t);
            return;
        }
        for (size_t i = 0; i < n; ++i) {
            Tri t = node_tri(*lhs[k], i);
            if (t == Tri::False) continue;
            assign[lhs[k]->name] = i;
            walk(k + 1, tri_and(acc, t));
            assign.erase(lhs[k]->name);
            if (best == Tri::True) return;
        }
    };
    walk(0, Tri::True);
    return best;
}

}  // namespace ldg
