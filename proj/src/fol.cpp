#include "ldg/fol.hpp"

namespace ldg {

namespace {
FolPtr mk(FolNode n) { return std::make_shared<const FolNode>(std::move(n)); }
}  // namespace

FolPtr f_top() {
    static const FolPtr t = mk({FolKind::Top, {}, {}, {}, {}, nullptr, nullptr, {}});
    return t;
}

FolPtr f_bot() {
    static const FolPtr b = mk({FolKind::Not, {}, {}, {}, {}, f_top(), nullptr, {}});
    return b;
}

bool is_top(const FolPtr& f) { return f->kind == FolKind::Top; }
bool is_bot(const FolPtr& f) { return f->kind == FolKind::Not && is_top(f->a); }

FolPtr f_concept(std::string name, Term t) {
    return mk({FolKind::ConceptApp, std::move(name), std::move(t), {}, {}, nullptr, nullptr, {}});
}

FolPtr f_active(Term t) {
    return mk({FolKind::ActiveApp, {}, std::move(t), {}, {}, nullptr, nullptr, {}});
}

FolPtr f_role(std::string name, Term t1, Term t2) {
    return mk({FolKind::RoleApp, std::move(name), std::move(t1), std::move(t2), {}, nullptr,
               nullptr, {}});
}

FolPtr f_eq(Term t1, Term t2) {
    if (t1 == t2) return f_top();
    if (!t1.is_var && !t2.is_var) return t1.node == t2.node ? f_top() : f_bot();
    return mk({FolKind::Eq, {}, std::move(t1), std::move(t2), {}, nullptr, nullptr, {}});
}

FolPtr f_neq(Term t1, Term t2) { return f_not(f_eq(std::move(t1), std::move(t2))); }

FolPtr f_not(FolPtr a) {
    if (a->kind == FolKind::Not) return a->a;
    return mk({FolKind::Not, {}, {}, {}, {}, std::move(a), nullptr, {}});
}

FolPtr f_or(FolPtr a, FolPtr b) {
    if (is_bot(a)) return b;
    if (is_bot(b)) return a;
    if (is_top(a) || is_top(b)) return f_top();
    return mk({FolKind::Or, {}, {}, {}, {}, std::move(a), std::move(b), {}});
}

FolPtr f_and(FolPtr a, FolPtr b) { return f_not(f_or(f_not(std::move(a)), f_not(std::move(b)))); }

FolPtr f_implies(FolPtr a, FolPtr b) { return f_or(f_not(std::move(a)), std::move(b)); }

FolPtr f_exists(std::string var, FolPtr a) {
    return mk({FolKind::Exists, {}, {}, {}, std::move(var), std::move(a), nullptr, {}});
}

FolPtr f_forall(std::string var, FolPtr a) {
    return f_not(f_exists(std::move(var), f_not(std::move(a))));
}

FolPtr f_subst(FolPtr a, Action act) {
    return mk({FolKind::Subst, {}, {}, {}, {}, std::move(a), nullptr, std::move(act)});
}

bool fol_equal(const FolPtr& a, const FolPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case FolKind::Top: return true;
        case FolKind::ConceptApp: return a->name == b->name && a->t1 == b->t1;
        case FolKind::ActiveApp: return a->t1 == b->t1;
        case FolKind::RoleApp: return a->name == b->name && a->t1 == b->t1 && a->t2 == b->t2;
        case FolKind::Eq: return a->t1 == b->t1 && a->t2 == b->t2;
        case FolKind::Not: return fol_equal(a->a, b->a);
        case FolKind::Or: return fol_equal(a->a, b->a) && fol_equal(a->b, b->b);
        case FolKind::Exists: return a->var == b->var && fol_equal(a->a, b->a);
        case FolKind::Subst: return a->action == b->action && fol_equal(a->a, b->a);
    }
    return false;
}

bool has_pending_subst(const FolPtr& f) {
    if (!f) return false;
    if (f->kind == FolKind::Subst) return true;
    return has_pending_subst(f->a) || has_pending_subst(f->b);
}

namespace {

bool already_guarded(const std::string& var, const FolPtr& body) {
    // f_and(Active(x), rest) builds not(not Active(x) or not rest).
    if (body->kind != FolKind::Not || body->a->kind != FolKind::Or) return false;
    const FolPtr& lhs = body->a->a;
    return lhs->kind == FolKind::Not && lhs->a->kind == FolKind::ActiveApp &&
           lhs->a->t1.is_var && lhs->a->t1.var == var;
}

}  // namespace

FolPtr relativize_active(const FolPtr& f) {
    switch (f->kind) {
        case FolKind::Top:
        case FolKind::ConceptApp:
        case FolKind::ActiveApp:
        case FolKind::RoleApp:
        case FolKind::Eq:
            return f;
        case FolKind::Not: return f_not(relativize_active(f->a));
        case FolKind::Or: return f_or(relativize_active(f->a), relativize_active(f->b));
        case FolKind::Exists: {
            FolPtr body = relativize_active(f->a);
            if (already_guarded(f->var, body)) return f_exists(f->var, body);
            return f_exists(f->var, f_and(f_active(Term::variable(f->var)), body));
        }
        case FolKind::Subst: return f_subst(relativize_active(f->a), f->action);
    }
    return f;
}

}  // namespace ldg
