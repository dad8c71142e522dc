#include <map>
#include <unordered_map>

#include "ldg/errors.hpp"
#include "ldg/eval.hpp"
#include "ldg/subst.hpp"

namespace ldg {

namespace {

Term cn(const NodeId& n) { return Term::constant(n); }

FolPtr or4(FolPtr a, FolPtr b, FolPtr c, FolPtr d) {
    return f_or(f_or(std::move(a), std::move(b)), f_or(std::move(c), std::move(d)));
}

class FolPusher {
public:
    explicit FolPusher(FolTrace* trace) : trace_(trace) {}

    FolPtr push(const FolPtr& f, const Action& a) {
        auto& memo = memo_[a];
        auto it = memo.find(f.get());
        if (it != memo.end()) return it->second;
        FolPtr out = dispatch(f, a);
        if (trace_) trace_->push_back({rule_name(f, a), f_subst(f, a), out});
        memo.emplace(f.get(), out);
        return out;
    }

private:
    static std::string rule_name(const FolPtr& f, const Action&) {
        const char* k = "?";
        switch (f->kind) {
            case FolKind::Top: k = "top"; break;
            case FolKind::ConceptApp: k = "C(x)"; break;
            case FolKind::ActiveApp: k = "Active(x)"; break;
            case FolKind::RoleApp: k = "R(x,y)"; break;
            case FolKind::Eq: k = "x=y"; break;
            case FolKind::Not: k = "not"; break;
            case FolKind::Or: k = "or"; break;
            case FolKind::Exists: k = "exists"; break;
            case FolKind::Subst: k = "subst"; break;
        }
        return std::string(k) + "[action]";
    }

    FolPtr dispatch(const FolPtr& f, const Action& act) {
        Action a = act;
        if (a.kind == ActionKind::AddEdgeId) a.kind = ActionKind::AddEdge;
        if (a.kind == ActionKind::DelEdgeId)
            throw MalformedSubstitution("del_E by edge id has no endpoint information");
        if ((a.kind == ActionKind::Merge || a.kind == ActionKind::Redirect) && a.i == a.j)
            return f;
        if (a.kind == ActionKind::Clone && a.i == a.j)
            throw MalformedSubstitution("clone target equals source");

        switch (f->kind) {
            case FolKind::Top:
            case FolKind::Eq:
                return f;
            case FolKind::ActiveApp: return active_case(f, a);
            case FolKind::ConceptApp: return concept_case(f, a);
            case FolKind::RoleApp: return role_case(f, a);
            case FolKind::Not: return f_not(push(f->a, a));
            case FolKind::Or: return f_or(push(f->a, a), push(f->b, a));
            case FolKind::Exists: return f_exists(f->var, push(f->a, a));
            case FolKind::Subst:
                throw MalformedSubstitution("nested substitution reached the table");
        }
        throw MalformedSubstitution("unknown constructor");
    }

    FolPtr active_case(const FolPtr& f, const Action& a) {
        const Term& x = f->t1;
        switch (a.kind) {
            case ActionKind::AddNode: return f_or(f, f_eq(cn(a.i), x));
            case ActionKind::DelNode: return f_and(f, f_neq(cn(a.i), x));
            case ActionKind::Clone: return f_or(f, f_eq(x, cn(a.j)));
            case ActionKind::Merge: return f_and(f, f_neq(x, cn(a.j)));
            default: return f;
        }
    }

    FolPtr concept_case(const FolPtr& f, const Action& a) {
        const Term& x = f->t1;
        switch (a.kind) {
            case ActionKind::AddLabel:
                return a.name == f->name ? f_or(f, f_eq(cn(a.i), x)) : f;
            case ActionKind::DelLabel:
                return a.name == f->name ? f_and(f, f_neq(cn(a.i), x)) : f;
            case ActionKind::DelNode: return f_and(f, f_neq(cn(a.i), x));
            case ActionKind::Clone:
                return f_or(f, f_and(f_eq(x, cn(a.j)), f_concept(f->name, cn(a.i))));
            case ActionKind::Merge:
                return f_and(f_neq(x, cn(a.j)),
                             f_or(f, f_and(f_eq(x, cn(a.i)), f_concept(f->name, cn(a.j)))));
            default: return f;
        }
    }

    FolPtr role_case(const FolPtr& f, const Action& a) {
        const Term& x = f->t1;
        const Term& y = f->t2;
        const std::string& r = f->name;
        auto rel = [&](Term s, Term t) { return f_role(r, std::move(s), std::move(t)); };
        switch (a.kind) {
            case ActionKind::AddEdge:
                if (a.name != r) return f;
                return f_or(f, f_and(f_eq(cn(a.i), x), f_eq(cn(a.j), y)));
            case ActionKind::DelEdge:
                if (a.name != r) return f;
                return f_and(f, f_or(f_neq(cn(a.i), x), f_neq(cn(a.j), y)));
            case ActionKind::DelNode:
                return f_and(f, f_and(f_neq(cn(a.i), x), f_neq(cn(a.i), y)));
            case ActionKind::Redirect:
                return f_or(f_and(f, f_neq(cn(a.i), y)),
                            f_and(rel(x, cn(a.i)), f_eq(cn(a.j), y)));
            case ActionKind::Merge: {
                const Term i = cn(a.i);
                const Term j = cn(a.j);
                FolPtr kept = or4(f, f_and(rel(x, j), f_eq(y, i)),
                                  f_and(rel(j, y), f_eq(x, i)),
                                  f_and(f_and(f_eq(x, i), f_eq(y, i)), rel(j, j)));
                return f_and(f_and(f_neq(x, j), f_neq(y, j)), kept);
            }
            case ActionKind::Clone: {
                const Term i = cn(a.i);
                const Term j = cn(a.j);
                FolPtr out = f;
                if (a.clone.in.count(r))
                    out = f_or(out, f_and(f_and(rel(x, i), f_eq(y, j)), f_neq(x, i)));
                if (a.clone.out.count(r))
                    out = f_or(out, f_and(f_and(rel(i, y), f_eq(x, j)), f_neq(y, i)));
                if (a.clone.loop_in.count(r))
                    out = f_or(out, f_and(rel(i, i), f_and(f_eq(x, i), f_eq(y, j))));
                if (a.clone.loop_out.count(r))
                    out = f_or(out, f_and(rel(i, i), f_and(f_eq(x, j), f_eq(y, i))));
                if (a.clone.loop_loop.count(r))
                    out = f_or(out, f_and(rel(i, i), f_and(f_eq(x, j), f_eq(y, j))));
                return out;
            }
            default: return f;
        }
    }

    FolTrace* trace_;
    std::map<Action, std::unordered_map<const FolNode*, FolPtr>> memo_;
};

class FolEliminator {
public:
    explicit FolEliminator(FolTrace* trace) : pusher_(trace) {}

    FolPtr run(const FolPtr& f) {
        if (!dirty(f)) return f;
        auto it = memo_.find(f.get());
        if (it != memo_.end()) return it->second;
        FolPtr out;
        switch (f->kind) {
            case FolKind::Not: out = f_not(run(f->a)); break;
            case FolKind::Or: out = f_or(run(f->a), run(f->b)); break;
            case FolKind::Exists: out = f_exists(f->var, run(f->a)); break;
            case FolKind::Subst: out = pusher_.push(run(f->a), f->action); break;
            default: out = f; break;
        }
        memo_.emplace(f.get(), out);
        return out;
    }

private:
    bool dirty(const FolPtr& f) {
        if (!f) return false;
        auto it = dirty_.find(f.get());
        if (it != dirty_.end()) return it->second;
        bool d = f->kind == FolKind::Subst || dirty(f->a) || dirty(f->b);
        dirty_.emplace(f.get(), d);
        return d;
    }

    FolPusher pusher_;
    std::unordered_map<const FolNode*, FolPtr> memo_;
    std::unordered_map<const FolNode*, bool> dirty_;
};

}  // namespace

FolPtr push_action_fol(const FolPtr& body, const Action& a, FolTrace* trace) {
    FolPusher pusher(trace);
    return pusher.push(body, a);
}

FolPtr eliminate_fol(const FolPtr& f) { return FolEliminator(nullptr).run(f); }

std::pair<FolPtr, FolTrace> eliminate_fol_traced(const FolPtr& f) {
    FolTrace trace;
    FolEliminator el(&trace);
    FolPtr out = el.run(f);
    return {out, std::move(trace)};
}

bool check_biconditional(const LdGraph& g, const FolPtr& phi, const Action& a,
                         std::string* diag) {
    FolPtr lhs_formula = eliminate_fol(f_subst(phi, a));
    bool lhs = eval_fol(g, lhs_formula);
    bool rhs = eval_fol(apply_elementary(g, a), phi);
    if (lhs == rhs) return true;
    if (diag)
        *diag = std::string("eliminated side is ") + (lhs ? "true" : "false") +
                ", post-state side is " + (rhs ? "true" : "false");
    return false;
}

}  // namespace ldg
