#include "ldg/print.hpp"

#include <sstream>

namespace ldg {

namespace {

// Precedence levels, loosest first: => 0, or 1, and 2, unary 3, atom 4.
constexpr int kImp = 0, kOr = 1, kAnd = 2, kUnary = 3, kAtom = 4;

std::string parenthesize(const std::string& s, int prec, int min_prec, bool full) {
    if (prec < min_prec || (full && prec < kAtom)) return "(" + s + ")";
    return s;
}

struct DlShape {
    enum Kind { Other, And, Forall, AtLeast, Bot, Implies } kind = Other;
    ConceptPtr a, b;
    Role role;
    unsigned bound = 0;
};

// Recovers the parser sugar hiding under not/or so printing stays readable.
DlShape shape_of(const ConceptPtr& c) {
    DlShape s;
    if (is_bot(c)) {
        s.kind = DlShape::Bot;
        return s;
    }
    if (c->kind != ConceptKind::Not) return s;
    const ConceptPtr& inner = c->a;
    if (inner->kind == ConceptKind::Or) {
        // not(x or y) prints as not x and not y; the builders fold double
        // negations, so this reparses to the same term.
        s.kind = DlShape::And;
        s.a = c_not(inner->a);
        s.b = c_not(inner->b);
        return s;
    }
    if (inner->kind == ConceptKind::Exists && inner->a->kind == ConceptKind::Not) {
        s.kind = DlShape::Forall;
        s.role = inner->role;
        s.a = inner->a->a;
        return s;
    }
    if (inner->kind == ConceptKind::Less) {
        s.kind = DlShape::AtLeast;
        s.role = inner->role;
        s.bound = inner->bound;
        s.a = inner->a;
        return s;
    }
    return s;
}

std::string print_dl(const ConceptPtr& c, int min_prec, bool full);

std::string quant_body_dl(const ConceptPtr& c, bool full) {
    // Quantifier bodies bind tightly; compound bodies get parentheses.
    DlShape s = shape_of(c);
    bool atomic_like = c->kind == ConceptKind::Top || c->kind == ConceptKind::Atomic ||
                       c->kind == ConceptKind::Active || c->kind == ConceptKind::Nominal ||
                       c->kind == ConceptKind::Less || s.kind == DlShape::Bot ||
                       s.kind == DlShape::AtLeast;
    return print_dl(c, atomic_like ? 0 : kAtom, full);
}

std::string print_dl(const ConceptPtr& c, int min_prec, bool full) {
    DlShape s = shape_of(c);
    switch (s.kind) {
        case DlShape::Bot: return "bot";
        case DlShape::And:
            return parenthesize(print_dl(s.a, kAnd, full) + " and " + print_dl(s.b, kAnd + 1, full),
                                kAnd, min_prec, full);
        case DlShape::Forall:
            return parenthesize("forall " + print_role(s.role) + " . " + quant_body_dl(s.a, full),
                                kUnary, min_prec, full);
        case DlShape::AtLeast:
            return "(>= " + std::to_string(s.bound) + " " + print_role(s.role) + " " +
                   print_dl(s.a, 0, full) + ")";
        default: break;
    }
    switch (c->kind) {
        case ConceptKind::Top: return "top";
        case ConceptKind::Atomic: return c->name;
        case ConceptKind::Active: return "Active";
        case ConceptKind::Nominal: return "{" + c->nominal.name + "}";
        case ConceptKind::Not:
            return parenthesize("not " + print_dl(c->a, kUnary + 1, full), kUnary, min_prec,
                                full);
        case ConceptKind::Or:
            return parenthesize(print_dl(c->a, kOr, full) + " or " + print_dl(c->b, kOr + 1, full),
                                kOr, min_prec, full);
        case ConceptKind::Exists:
            return parenthesize(
                "exists " + print_role(c->role) + " . " + quant_body_dl(c->a, full), kUnary,
                min_prec, full);
        case ConceptKind::ExistsSelf:
            return parenthesize("exists " + print_role(c->role) + " . Self", kUnary, min_prec,
                                full);
        case ConceptKind::Less:
            return "(< " + std::to_string(c->bound) + " " + print_role(c->role) + " " +
                   print_dl(c->a, 0, full) + ")";
        case ConceptKind::Subst:
            return print_dl(c->a, kAtom, full) + " [" + print_action(c->action) + "]";
    }
    return "?";
}

std::string print_term(const Term& t) { return t.is_var ? t.var : t.node.name; }

std::string print_f(const FolPtr& f, int min_prec, bool full);

std::string quant_body_fol(const FolPtr& f, bool full) {
    bool atomic_like = f->kind == FolKind::Top || f->kind == FolKind::ConceptApp ||
                       f->kind == FolKind::ActiveApp || f->kind == FolKind::RoleApp ||
                       f->kind == FolKind::Eq || is_bot(f);
    if (atomic_like) return print_f(f, 0, full);
    return print_f(f, kAtom, full);
}

std::string print_f(const FolPtr& f, int min_prec, bool full) {
    if (is_bot(f)) return "bot";
    // and-sugar: not(x or y) = not x and not y (double negations fold back)
    if (f->kind == FolKind::Not && f->a->kind == FolKind::Or) {
        return parenthesize(
            print_f(f_not(f->a->a), kAnd, full) + " and " + print_f(f_not(f->a->b), kAnd + 1, full),
            kAnd, min_prec, full);
    }
    // forall-sugar: not(exists x. not body)
    if (f->kind == FolKind::Not && f->a->kind == FolKind::Exists &&
        f->a->a->kind == FolKind::Not) {
        return parenthesize("forall " + f->a->var + " . " + quant_body_fol(f->a->a->a, full),
                            kUnary, min_prec, full);
    }
    // neq-sugar
    if (f->kind == FolKind::Not && f->a->kind == FolKind::Eq) {
        return parenthesize(print_term(f->a->t1) + " != " + print_term(f->a->t2), kAnd + 1,
                            min_prec, full);
    }
    switch (f->kind) {
        case FolKind::Top: return "top";
        case FolKind::ConceptApp: return f->name + "(" + print_term(f->t1) + ")";
        case FolKind::ActiveApp: return "Active(" + print_term(f->t1) + ")";
        case FolKind::RoleApp:
            return f->name + "(" + print_term(f->t1) + ", " + print_term(f->t2) + ")";
        case FolKind::Eq:
            return parenthesize(print_term(f->t1) + " = " + print_term(f->t2), kAnd + 1,
                                min_prec, full);
        case FolKind::Not:
            return parenthesize("not " + print_f(f->a, kUnary + 1, full), kUnary, min_prec, full);
        case FolKind::Or:
            return parenthesize(print_f(f->a, kOr, full) + " or " + print_f(f->b, kOr + 1, full),
                                kOr, min_prec, full);
        case FolKind::Exists:
            return parenthesize("exists " + f->var + " . " + quant_body_fol(f->a, full), kUnary,
                                min_prec, full);
        case FolKind::Subst:
            return print_f(f->a, kAtom, full) + " [" + print_action(f->action) + "]";
    }
    return "?";
}

std::string print_role_set(const std::set<std::string>& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& r : s) {
        if (!first) out += ",";
        out += r;
        first = false;
    }
    return out + "}";
}

}  // namespace

std::string print_role(const Role& r) {
    switch (r.kind) {
        case RoleKind::Basic: return r.name;
        case RoleKind::Inverse: return "inv " + r.name;
        case RoleKind::Universal: return "U";
    }
    return "?";
}

std::string print_concept(const ConceptPtr& c, bool full_parens) {
    return print_dl(c, 0, full_parens);
}

std::string print_fol(const FolPtr& f, bool full_parens) { return print_f(f, 0, full_parens); }

std::string print_action(const Action& a) {
    switch (a.kind) {
        case ActionKind::AddNode: return "add_N(" + a.i.name + ")";
        case ActionKind::DelNode: return "del_N(" + a.i.name + ")";
        case ActionKind::AddLabel: return "add_C(" + a.i.name + "," + a.name + ")";
        case ActionKind::DelLabel: return "del_C(" + a.i.name + "," + a.name + ")";
        case ActionKind::AddEdge:
            return "add_E(" + a.i.name + "," + a.j.name + "," + a.name + ")";
        case ActionKind::AddEdgeId:
            return "add_E(" + a.edge.name + "," + a.i.name + "," + a.j.name + "," + a.name + ")";
        case ActionKind::DelEdge:
            return "del_E(" + a.i.name + "," + a.j.name + "," + a.name + ")";
        case ActionKind::DelEdgeId: return "del_E(" + a.edge.name + ")";
        case ActionKind::Redirect: return a.i.name + " >> " + a.j.name;
        case ActionKind::Merge: return "mrg(" + a.i.name + "," + a.j.name + ")";
        case ActionKind::Clone:
            return "cl(" + a.i.name + "," + a.j.name + "," + print_role_set(a.clone.in) + "," +
                   print_role_set(a.clone.out) + "," + print_role_set(a.clone.loop_in) + "," +
                   print_role_set(a.clone.loop_out) + "," + print_role_set(a.clone.loop_loop) +
                   ")";
    }
    return "?";
}

std::string print_actions(const ActionSeq& alpha) {
    std::string out;
    for (size_t i = 0; i < alpha.size(); ++i) {
        if (i) out += "; ";
        out += print_action(alpha[i]);
    }
    return out;
}

namespace {

// ';' loosest, '+' tighter, postfix tightest.
std::string print_strat(const StrategyPtr& s, int min_prec) {
    constexpr int kSeq = 0, kChoice = 1, kPost = 2;
    switch (s->kind) {
        case StrategyKind::Empty: return "eps";
        case StrategyKind::Rule: return s->rule;
        case StrategyKind::Try: return s->rule + "?";
        case StrategyKind::Mandatory: return s->rule + "!";
        case StrategyKind::Seq: {
            std::string out = print_strat(s->a, kSeq) + " ; " + print_strat(s->b, kSeq + 1);
            return kSeq < min_prec ? "(" + out + ")" : out;
        }
        case StrategyKind::Choice: {
            std::string out = print_strat(s->a, kChoice) + " + " + print_strat(s->b, kChoice + 1);
            return kChoice < min_prec ? "(" + out + ")" : out;
        }
        case StrategyKind::Closure: {
            std::string inner = print_strat(s->a, kPost + 1);
            std::string out = inner + "*";
            if (s->inv_dl) out += " {inv: " + print_concept(s->inv_dl) + "}";
            if (s->inv_fol) out += " {inv: " + print_fol(s->inv_fol) + "}";
            return out;
        }
    }
    return "?";
}

}  // namespace

std::string print_strategy(const StrategyPtr& s) { return print_strat(s, 0); }

std::string print_rule(const Rule& r) {
    std::string out = "rule " + r.name + " {\n  lhs { ";
    if (!r.lhs.nodes.empty()) {
        out += "nodes: ";
        for (size_t i = 0; i < r.lhs.nodes.size(); ++i) {
            const LhsNode& n = r.lhs.nodes[i];
            if (i) out += ", ";
            out += n.name;
            if (!n.labels.empty()) {
                out += " [";
                for (size_t k = 0; k < n.labels.size(); ++k) {
                    if (k) out += ", ";
                    const ConceptPtr& c = n.labels[k];
                    if (c->kind == ConceptKind::Atomic)
                        out += c->name;
                    else
                        out += "\"" + print_concept(c) + "\"";
                }
                out += "]";
            }
        }
    }
    if (!r.lhs.edges.empty()) {
        out += "; edges: ";
        for (size_t i = 0; i < r.lhs.edges.size(); ++i) {
            const LhsEdge& e = r.lhs.edges[i];
            if (i) out += ", ";
            out += e.src + " -" + e.role + "-> " + e.tgt;
        }
    }
    out += " }\n  rhs { " + print_actions(r.rhs) + " }\n}\n";
    return out;
}

std::string print_rules(const RuleSet& rs) {
    std::string out;
    for (const Rule& r : rs.rules) out += print_rule(r);
    return out;
}

}  // namespace ldg
