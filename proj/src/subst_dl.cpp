#include <functional>
#include <map>
#include <unordered_map>

#include "ldg/errors.hpp"
#include "ldg/eval.hpp"
#include "ldg/subst.hpp"

namespace ldg {

namespace {

ConceptPtr nom(const NodeId& n) { return c_nominal(n); }

ConceptPtr or3(ConceptPtr a, ConceptPtr b, ConceptPtr c) {
    return c_or(std::move(a), c_or(std::move(b), std::move(c)));
}
ConceptPtr and3(ConceptPtr a, ConceptPtr b, ConceptPtr c) {
    return c_and(std::move(a), c_and(std::move(b), std::move(c)));
}

// exists U . c
ConceptPtr uex(ConceptPtr c) { return c_exists(Role::universal(), std::move(c)); }

// Both nominal tests fail at the evaluated node.
ConceptPtr neither(const NodeId& i, const NodeId& j) {
    return c_and(c_not(nom(i)), c_not(nom(j)));
}

struct EdgeView {
    bool matches;  // action role equals the atom's underlying role
    NodeId src;    // endpoints as seen along the atom's role orientation
    NodeId tgt;
};

EdgeView view_edge(const Role& r, const Action& a) {
    if (r.name != a.name) return {false, {}, {}};
    if (r.kind == RoleKind::Inverse) return {true, a.j, a.i};
    return {true, a.i, a.j};
}

// Clone parameter sets as seen along the atom's role orientation: along an
// inverse role the in/out and loop-in/loop-out families swap.
struct CloneView {
    bool in, out, loop_in, loop_out, loop_loop;
};

CloneView view_clone(const Role& r, const Action& a) {
    const CloneParams& p = a.clone;
    bool fwd = r.kind != RoleKind::Inverse;
    const std::string& name = r.name;
    bool m_in = (fwd ? p.in : p.out).count(name) > 0;
    bool m_out = (fwd ? p.out : p.in).count(name) > 0;
    bool m_lin = (fwd ? p.loop_in : p.loop_out).count(name) > 0;
    bool m_lout = (fwd ? p.loop_out : p.loop_in).count(name) > 0;
    bool m_ll = p.loop_loop.count(name) > 0;
    return {m_in, m_out, m_lin, m_lout, m_ll};
}

class DlPusher {
public:
    explicit DlPusher(DlTrace* trace) : trace_(trace) {}

    // Memoized per action so shared subterms are pushed once.
    ConceptPtr push(const ConceptPtr& c, const Action& a) {
        auto& memo = memo_[a];
        auto it = memo.find(c.get());
        if (it != memo.end()) return it->second;
        ConceptPtr out = dispatch(c, a);
        if (trace_) trace_->push_back({rule_name(c, a), c_subst(c, a), out});
        memo.emplace(c.get(), out);
        return out;
    }

private:
    static std::string kind_name(const ConceptPtr& c) {
        switch (c->kind) {
            case ConceptKind::Top: return "top";
            case ConceptKind::Atomic: return "atomic";
            case ConceptKind::Active: return "active";
            case ConceptKind::Nominal: return "nominal";
            case ConceptKind::Not: return "not";
            case ConceptKind::Or: return "or";
            case ConceptKind::Exists: return "exists";
            case ConceptKind::ExistsSelf: return "exists-self";
            case ConceptKind::Less: return "less";
            case ConceptKind::Subst: return "subst";
        }
        return "?";
    }
    static std::string action_name(const Action& a) {
        switch (a.kind) {
            case ActionKind::AddNode: return "add_N";
            case ActionKind::DelNode: return "del_N";
            case ActionKind::AddLabel: return "add_C";
            case ActionKind::DelLabel: return "del_C";
            case ActionKind::AddEdge:
            case ActionKind::AddEdgeId: return "add_E";
            case ActionKind::DelEdge: return "del_E";
            case ActionKind::DelEdgeId: return "del_E#id";
            case ActionKind::Redirect: return "redirect";
            case ActionKind::Merge: return "mrg";
            case ActionKind::Clone: return "cl";
        }
        return "?";
    }
    static std::string rule_name(const ConceptPtr& c, const Action& a) {
        return kind_name(c) + "[" + action_name(a) + "]";
    }

    ConceptPtr dispatch(const ConceptPtr& c, const Action& act) {
        Action a = act;
        if (a.kind == ActionKind::AddEdgeId) a.kind = ActionKind::AddEdge;
        if (a.kind == ActionKind::DelEdgeId)
            throw MalformedSubstitution("del_E by edge id has no endpoint information");
        if ((a.kind == ActionKind::Merge || a.kind == ActionKind::Redirect) && a.i == a.j)
            return c;  // identity action
        if (a.kind == ActionKind::Clone && a.i == a.j)
            throw MalformedSubstitution("clone target equals source");

        switch (c->kind) {
            case ConceptKind::Top:
            case ConceptKind::Nominal:
                return c;
            case ConceptKind::Atomic: return atomic_case(c, a);
            case ConceptKind::Active: return active_case(a);
            case ConceptKind::Not: return c_not(push(c->a, a));
            case ConceptKind::Or: return c_or(push(c->a, a), push(c->b, a));
            case ConceptKind::Exists: return exists_case(c, a);
            case ConceptKind::ExistsSelf: return self_case(c, a);
            case ConceptKind::Less: return less_case(c, a);
            case ConceptKind::Subst:
                throw MalformedSubstitution("nested substitution reached the table");
        }
        throw MalformedSubstitution("unknown constructor");
    }

    ConceptPtr atomic_case(const ConceptPtr& c, const Action& a) {
        switch (a.kind) {
            case ActionKind::AddLabel:
                return a.name == c->name ? c_or(c, nom(a.i)) : c;
            case ActionKind::DelLabel:
                return a.name == c->name ? c_and(c, c_not(nom(a.i))) : c;
            case ActionKind::DelNode: return c_and(c, c_not(nom(a.i)));
            case ActionKind::Merge:
                return c_and(c_not(nom(a.j)),
                             c_or(c, c_and(nom(a.i), uex(c_and(nom(a.j), c)))));
            case ActionKind::Clone:
                return c_or(c, c_and(nom(a.j), uex(c_and(nom(a.i), c))));
            default: return c;
        }
    }

    ConceptPtr active_case(const Action& a) {
        switch (a.kind) {
            case ActionKind::AddNode: return c_or(c_active(), nom(a.i));
            case ActionKind::DelNode: return c_and(c_active(), c_not(nom(a.i)));
            case ActionKind::Merge: return c_and(c_active(), c_not(nom(a.j)));
            case ActionKind::Clone: return c_or(c_active(), nom(a.j));
            default: return c_active();
        }
    }

    ConceptPtr self_case(const ConceptPtr& c, const Action& a) {
        const Role& r = c->role;
        if (r.is_universal()) return c;
        Role fwd = Role::basic(r.name);
        switch (a.kind) {
            case ActionKind::AddEdge:
                if (a.name != r.name) return c;
                return c_or(c_and(nom(a.i), nom(a.j)), c);
            case ActionKind::DelEdge:
                if (a.name != r.name) return c;
                return c_and(c_or(c_not(nom(a.i)), c_not(nom(a.j))), c);
            case ActionKind::DelNode: return c_and(c, c_not(nom(a.i)));
            case ActionKind::Redirect: {
                // Loops survive away from i and j; i keeps none; j additionally
                // inherits a loop from any edge j -> i.
                return and3(c_implies(nom(a.i), c_bot()),
                            c_implies(nom(a.j), c_or(c, c_exists(fwd, nom(a.i)))),
                            c_implies(neither(a.i, a.j), c));
            }
            case ActionKind::Merge: {
                ConceptPtr via_j = or3(c_exists(fwd, nom(a.j)),
                                       uex(c_and(nom(a.j), c_exists(fwd, nom(a.i)))),
                                       uex(c_and(nom(a.j), c_exists_self(fwd))));
                return c_and(c_not(nom(a.j)), c_or(c, c_and(nom(a.i), via_j)));
            }
            case ActionKind::Clone: {
                CloneView v = view_clone(r, a);
                if (!v.loop_loop) return c;
                return c_or(c, and3(nom(a.j), c_top(),
                                    uex(c_and(nom(a.i), c_exists_self(fwd)))));
            }
            default: return c;
        }
    }

    ConceptPtr exists_case(const ConceptPtr& c, const Action& a) {
        const Role& r = c->role;
        ConceptPtr body = push(c->a, a);
        if (r.is_universal()) return c_exists(r, body);
        switch (a.kind) {
            case ActionKind::AddEdge: {
                EdgeView v = view_edge(r, a);
                if (!v.matches) return c_exists(r, body);
                return c_or(c_and(nom(v.src), uex(c_and(nom(v.tgt), body))),
                            c_exists(r, body));
            }
            case ActionKind::DelEdge: {
                EdgeView v = view_edge(r, a);
                if (!v.matches) return c_exists(r, body);
                return c_and(
                    c_implies(nom(v.src), c_exists(r, c_and(body, c_not(nom(v.tgt))))),
                    c_implies(c_not(nom(v.src)), c_exists(r, body)));
            }
            case ActionKind::DelNode:
                return c_and(c_not(nom(a.i)), c_exists(r, c_and(body, c_not(nom(a.i)))));
            case ActionKind::Redirect: {
                if (r.kind == RoleKind::Basic) {
                    return c_or(c_exists(r, c_and(c_not(nom(a.i)), body)),
                                c_and(c_exists(r, nom(a.i)), uex(c_and(nom(a.j), body))));
                }
                // Along the inverse role i loses every predecessor and j
                // gathers those of both i and j.
                return and3(
                    c_implies(nom(a.i), c_bot()),
                    c_implies(nom(a.j), c_or(c_exists(r, body),
                                             uex(c_and(nom(a.i), c_exists(r, body))))),
                    c_implies(neither(a.i, a.j), c_exists(r, body)));
            }
            case ActionKind::Merge: {
                const NodeId& i = a.i;
                const NodeId& j = a.j;
                ConceptPtr others = c_and(body, neither(i, j));
                ConceptPtr body_at_i = uex(c_and(nom(i), body));
                ConceptPtr edge_to_ij = c_exists(r, c_or(nom(i), nom(j)));
                ConceptPtr any_edge_within =
                    uex(c_and(c_or(nom(i), nom(j)), c_exists(r, c_or(nom(i), nom(j)))));
                ConceptPtr cases = c_or(
                    c_or(c_exists(r, others), c_and(edge_to_ij, body_at_i)),
                    c_or(c_and(nom(i), uex(c_and(nom(j), c_exists(r, others)))),
                         and3(nom(i), body_at_i, any_edge_within)));
                return c_and(c_not(nom(j)), cases);
            }
            case ActionKind::Clone: {
                CloneView v = view_clone(r, a);
                const NodeId& i = a.i;
                const NodeId& j = a.j;
                ConceptPtr out = c_exists(r, body);
                if (v.in)
                    out = c_or(out, c_and(neither(i, j),
                                          c_and(c_exists(r, nom(i)),
                                                uex(c_and(nom(j), body)))));
                if (v.out)
                    out = c_or(out, c_and(nom(j), uex(c_and(nom(i),
                                              c_exists(r, c_and(c_not(nom(i)), body))))));
                if (v.loop_in)
                    out = c_or(out, and3(nom(i), c_exists(r, nom(i)),
                                         uex(c_and(nom(j), body))));
                if (v.loop_out)
                    out = c_or(out, c_and(nom(j), uex(and3(nom(i), c_exists(r, nom(i)), body))));
                if (v.loop_loop)
                    out = c_or(out, and3(nom(j), body, uex(c_and(nom(i), c_exists(r, nom(i))))));
                return out;
            }
            default: return c_exists(r, body);
        }
    }

    // a < k and b < t+1-k for some k covers a + b < t exactly.
    ConceptPtr sum_less(int t, const std::function<ConceptPtr(int)>& first,
                        const std::function<ConceptPtr(int)>& second) {
        if (t <= 0) return c_bot();
        ConceptPtr out = c_bot();
        for (int k = 1; k <= t; ++k) out = c_or(out, c_and(first(k), second(t + 1 - k)));
        return out;
    }

    ConceptPtr less_case(const ConceptPtr& c, const Action& a) {
        const Role& r = c->role;
        int n = static_cast<int>(c->bound);
        ConceptPtr body = push(c->a, a);
        auto lt = [&](int k) { return c_less(k, r, body); };
        if (r.is_universal()) return lt(n);
        switch (a.kind) {
            case ActionKind::AddEdge: {
                EdgeView v = view_edge(r, a);
                if (!v.matches) return lt(n);
                ConceptPtr gain = and3(nom(v.src), uex(c_and(nom(v.tgt), body)),
                                       c_not(c_exists(r, nom(v.tgt))));
                return c_and(c_implies(gain, lt(n - 1)), c_implies(c_not(gain), lt(n)));
            }
            case ActionKind::DelEdge: {
                EdgeView v = view_edge(r, a);
                if (!v.matches) return lt(n);
                ConceptPtr lose = and3(nom(v.src), c_exists(r, nom(v.tgt)),
                                       uex(c_and(nom(v.tgt), body)));
                return c_and(c_implies(lose, lt(n + 1)), c_implies(c_not(lose), lt(n)));
            }
            case ActionKind::DelNode:
                return c_or(nom(a.i), c_less(n, r, c_and(body, c_not(nom(a.i)))));
            case ActionKind::Redirect: {
                const NodeId& i = a.i;
                const NodeId& j = a.j;
                if (r.kind == RoleKind::Basic) {
                    auto ltni = [&](int k) { return c_less(k, r, c_and(body, c_not(nom(i)))); };
                    ConceptPtr gain = and3(c_exists(r, nom(i)), uex(c_and(nom(j), body)),
                                           c_not(c_exists(r, nom(j))));
                    return c_and(c_implies(gain, ltni(n - 1)),
                                 c_implies(c_not(gain), ltni(n)));
                }
                // Inverse role: predecessors of j become those of i and j.
                ConceptPtr not_pred_of_j = c_not(c_exists(r.inverted(), nom(j)));
                ConceptPtr merged = sum_less(
                    n, [&](int k) { return c_less(k, r, body); },
                    [&](int k) {
                        return uex(c_and(nom(i), c_less(k, r, c_and(body, not_pred_of_j))));
                    });
                return c_and(c_implies(nom(j), merged),
                             c_implies(neither(i, j), lt(n)));
            }
            case ActionKind::Merge: {
                const NodeId& i = a.i;
                const NodeId& j = a.j;
                ConceptPtr others = c_and(body, neither(i, j));
                ConceptPtr body_at_i = uex(c_and(nom(i), body));
                ConceptPtr edge_to_ij = c_or(c_exists(r, nom(i)), c_exists(r, nom(j)));
                auto lt_others = [&](int k) { return c_less(k, r, others); };

                ConceptPtr gain = c_and(body_at_i, edge_to_ij);
                ConceptPtr c_other = c_and(c_implies(gain, lt_others(n - 1)),
                                           c_implies(c_not(gain), lt_others(n)));

                // Collapsed self-successor of the merged node.
                ConceptPtr self_succ =
                    c_and(body, or3(c_exists(r, nom(i)), c_exists(r, nom(j)),
                                    uex(c_and(nom(j), edge_to_ij))));
                ConceptPtr not_succ_of_j = c_not(c_exists(r.inverted(), nom(j)));
                auto sum = [&](int t) {
                    return sum_less(
                        t, [&](int k) { return c_less(k, r, c_and(others, not_succ_of_j)); },
                        [&](int k) { return uex(c_and(nom(j), c_less(k, r, others))); });
                };
                ConceptPtr c_i = c_and(c_implies(self_succ, sum(n - 1)),
                                       c_implies(c_not(self_succ), sum(n)));
                return or3(nom(j), c_and(nom(i), c_i), c_and(neither(i, j), c_other));
            }
            case ActionKind::Clone: {
                CloneView v = view_clone(r, a);
                const NodeId& i = a.i;
                const NodeId& j = a.j;
                ConceptPtr gain = and3(c_exists(r, nom(i)), uex(c_and(nom(j), body)), c_top());
                auto gained = [&](bool on) {
                    if (!on) return lt(n);
                    return c_and(c_implies(gain, lt(n - 1)), c_implies(c_not(gain), lt(n)));
                };
                ConceptPtr c_i = gained(v.loop_in);
                ConceptPtr c_o = gained(v.in);

                ConceptPtr g1 = v.loop_out
                                    ? uex(and3(nom(i), c_exists(r, nom(i)), body))
                                    : c_bot();
                ConceptPtr g2 = v.loop_loop
                                    ? c_and(body, uex(c_and(nom(i), c_exists(r, nom(i)))))
                                    : c_bot();
                auto base = [&](int t) -> ConceptPtr {
                    if (!v.out) return t >= 1 ? c_top() : c_bot();
                    if (t <= 0) return c_bot();
                    return uex(c_and(nom(i), c_less(t, r, c_and(body, c_not(nom(i))))));
                };
                ConceptPtr both = c_and(g1, g2);
                ConceptPtr one = c_or(c_and(g1, c_not(g2)), c_and(c_not(g1), g2));
                ConceptPtr none = c_and(c_not(g1), c_not(g2));
                ConceptPtr c_j = and3(c_implies(both, base(n - 2)),
                                      c_implies(one, base(n - 1)),
                                      c_implies(none, base(n)));
                return and3(c_implies(nom(i), c_i), c_implies(nom(j), c_j),
                            c_implies(neither(i, j), c_o));
            }
            default: return lt(n);
        }
    }

    DlTrace* trace_;
    std::map<Action, std::unordered_map<const ConceptNode*, ConceptPtr>> memo_;
};

class DlEliminator {
public:
    explicit DlEliminator(DlTrace* trace) : pusher_(trace) {}

    ConceptPtr run(const ConceptPtr& c) {
        if (!dirty(c)) return c;
        auto it = memo_.find(c.get());
        if (it != memo_.end()) return it->second;
        ConceptPtr out;
        switch (c->kind) {
            case ConceptKind::Not: out = c_not(run(c->a)); break;
            case ConceptKind::Or: out = c_or(run(c->a), run(c->b)); break;
            case ConceptKind::Exists: out = c_exists(c->role, run(c->a)); break;
            case ConceptKind::Less:
                out = c_less(static_cast<int>(c->bound), c->role, run(c->a));
                break;
            case ConceptKind::Subst: out = pusher_.push(run(c->a), c->action); break;
            default: out = c; break;
        }
        memo_.emplace(c.get(), out);
        return out;
    }

private:
    bool dirty(const ConceptPtr& c) {
        if (!c) return false;
        auto it = dirty_.find(c.get());
        if (it != dirty_.end()) return it->second;
        bool d = c->kind == ConceptKind::Subst || dirty(c->a) || dirty(c->b);
        dirty_.emplace(c.get(), d);
        return d;
    }

    DlPusher pusher_;
    std::unordered_map<const ConceptNode*, ConceptPtr> memo_;
    std::unordered_map<const ConceptNode*, bool> dirty_;
};

}  // namespace

ConceptPtr push_action_dl(const ConceptPtr& body, const Action& a, DlTrace* trace) {
    DlPusher pusher(trace);
    return pusher.push(body, a);
}

ConceptPtr eliminate_dl(const ConceptPtr& c) {
    return DlEliminator(nullptr).run(c);
}

std::pair<ConceptPtr, DlTrace> eliminate_dl_traced(const ConceptPtr& c) {
    DlTrace trace;
    DlEliminator el(&trace);
    ConceptPtr out = el.run(c);
    return {out, std::move(trace)};
}

bool check_biconditional(const LdGraph& g, const ConceptPtr& phi, const Action& a,
                         std::string* diag) {
    ConceptPtr lhs_formula = eliminate_dl(c_subst(phi, a));
    GraphIndex before = index_graph(g);
    LdGraph after_graph = apply_elementary(g, a);
    GraphIndex after = index_graph(after_graph);
    Bits lhs = eval_concept(before, lhs_formula);
    Bits rhs = eval_concept(after, phi);
    if (lhs == rhs) return true;
    if (diag) {
        *diag = "extensions differ at:";
        for (size_t k = 0; k < before.size(); ++k)
            if (lhs.get(k) != rhs.get(k))
                *diag += " " + before.nodes[k].name + (lhs.get(k) ? "(elim)" : "(post)");
    }
    return false;
}

}  // namespace ldg
