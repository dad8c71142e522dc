#include "ldg/verify.hpp"

#include <algorithm>
#include <set>

#include "ldg/errors.hpp"
#include "ldg/eval.hpp"
#include "ldg/partial.hpp"
#include "ldg/subst.hpp"

namespace ldg {

Formula formula_top(LogicKind kind) {
    return kind == LogicKind::Dl ? Formula::of(c_top()) : Formula::of(f_top());
}
Formula formula_not(const Formula& a) {
    return a.kind == LogicKind::Dl ? Formula::of(c_not(a.dl)) : Formula::of(f_not(a.fol));
}
Formula formula_and(const Formula& a, const Formula& b) {
    return a.kind == LogicKind::Dl ? Formula::of(c_and(a.dl, b.dl))
                                   : Formula::of(f_and(a.fol, b.fol));
}
Formula formula_or(const Formula& a, const Formula& b) {
    return a.kind == LogicKind::Dl ? Formula::of(c_or(a.dl, b.dl))
                                   : Formula::of(f_or(a.fol, b.fol));
}
Formula formula_implies(const Formula& a, const Formula& b) {
    return a.kind == LogicKind::Dl ? Formula::of(c_implies(a.dl, b.dl))
                                   : Formula::of(f_implies(a.fol, b.fol));
}
bool formula_equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind) return false;
    return a.kind == LogicKind::Dl ? concept_equal(a.dl, b.dl) : fol_equal(a.fol, b.fol);
}
bool formula_is_top(const Formula& f) {
    return f.kind == LogicKind::Dl ? is_top(f.dl) : is_top(f.fol);
}
Formula formula_eliminate(const Formula& f) {
    return f.kind == LogicKind::Dl ? Formula::of(eliminate_dl(f.dl))
                                   : Formula::of(eliminate_fol(f.fol));
}

namespace {

// Extension is the whole domain or empty on every graph.
bool is_value_constant(const ConceptPtr& c) {
    switch (c->kind) {
        case ConceptKind::Top: return true;
        case ConceptKind::Not: return is_value_constant(c->a);
        case ConceptKind::Or: return is_value_constant(c->a) && is_value_constant(c->b);
        case ConceptKind::Exists:
        case ConceptKind::ExistsSelf:
        case ConceptKind::Less:
            return c->role.is_universal();
        default: return false;
    }
}

}  // namespace

Formula formula_globalize(const Formula& f) {
    if (f.kind == LogicKind::Fol) return Formula::of(relativize_active(f.fol));
    if (is_value_constant(f.dl)) return f;
    return Formula::of(c_forall(Role::universal(), c_implies(c_active(), f.dl)));
}

Formula wp_action(const ActionSeq& alpha, const Formula& q) {
    Formula out = q;
    for (auto it = alpha.rbegin(); it != alpha.rend(); ++it) {
        out = out.kind == LogicKind::Dl ? Formula::of(c_subst(out.dl, *it))
                                        : Formula::of(f_subst(out.fol, *it));
    }
    return out;
}

namespace {

Formula rule_app_formula(const Rule& rule, LogicKind kind) {
    return kind == LogicKind::Dl ? Formula::of(app_formula_alcu(rule, /*pin_nodes=*/true))
                                 : Formula::of(app_formula_fol(rule, /*pin_nodes=*/true));
}

Formula closure_invariant(const StrategyPtr& s, LogicKind kind) {
    if (kind == LogicKind::Dl && s->inv_dl) return formula_globalize(Formula::of(s->inv_dl));
    if (kind == LogicKind::Fol && s->inv_fol)
        return formula_globalize(Formula::of(s->inv_fol));
    throw MissingInvariant();
}

}  // namespace

Formula app_formula(const StrategyPtr& s, const RuleSet& rules, LogicKind kind) {
    switch (s->kind) {
        case StrategyKind::Empty:
        case StrategyKind::Try:
        case StrategyKind::Closure:
            return formula_top(kind);
        case StrategyKind::Rule:
        case StrategyKind::Mandatory:
            return rule_app_formula(rules.at(s->rule), kind);
        case StrategyKind::Choice:
            return formula_or(app_formula(s->a, rules, kind), app_formula(s->b, rules, kind));
        case StrategyKind::Seq: return app_formula(s->a, rules, kind);
    }
    throw Error("unreachable strategy kind");
}

Formula wp_strategy(const StrategyPtr& s, const Formula& q, const RuleSet& rules) {
    switch (s->kind) {
        case StrategyKind::Empty: return q;
        case StrategyKind::Rule: {
            const Rule& r = rules.at(s->rule);
            return formula_implies(rule_app_formula(r, q.kind), wp_action(r.rhs, q));
        }
        case StrategyKind::Mandatory: {
            const Rule& r = rules.at(s->rule);
            return formula_and(rule_app_formula(r, q.kind), wp_action(r.rhs, q));
        }
        case StrategyKind::Try: {
            const Rule& r = rules.at(s->rule);
            Formula a = rule_app_formula(r, q.kind);
            return formula_and(formula_implies(a, wp_action(r.rhs, q)),
                               formula_implies(formula_not(a), q));
        }
        case StrategyKind::Seq:
            return wp_strategy(s->a, wp_strategy(s->b, q, rules), rules);
        case StrategyKind::Choice:
            return formula_and(wp_strategy(s->a, q, rules), wp_strategy(s->b, q, rules));
        case StrategyKind::Closure: return closure_invariant(s, q.kind);
    }
    throw Error("unreachable strategy kind");
}

Formula vc_strategy(const StrategyPtr& s, const Formula& q, const RuleSet& rules) {
    switch (s->kind) {
        case StrategyKind::Empty:
        case StrategyKind::Rule:
        case StrategyKind::Mandatory:
        case StrategyKind::Try:
            return formula_top(q.kind);
        case StrategyKind::Seq:
            return formula_and(vc_strategy(s->a, wp_strategy(s->b, q, rules), rules),
                               vc_strategy(s->b, q, rules));
        case StrategyKind::Choice:
            return formula_and(vc_strategy(s->a, q, rules), vc_strategy(s->b, q, rules));
        case StrategyKind::Closure: {
            Formula inv = closure_invariant(s, q.kind);
            Formula app_s = app_formula(s->a, rules, q.kind);
            Formula keep = formula_implies(formula_and(inv, app_s),
                                           wp_strategy(s->a, inv, rules));
            Formula exit = formula_implies(formula_and(inv, formula_not(app_s)), q);
            return formula_and(vc_strategy(s->a, inv, rules), formula_and(keep, exit));
        }
    }
    throw Error("unreachable strategy kind");
}

Formula correctness_formula(const Specification& sp) {
    Formula pre = formula_globalize(sp.pre);
    Formula post = formula_globalize(sp.post);
    Formula wp = wp_strategy(sp.strategy, post, sp.rules);
    Formula vc = vc_strategy(sp.strategy, post, sp.rules);
    Formula whole = formula_and(formula_implies(pre, wp), vc);
    return formula_eliminate(whole);
}

bool check_on_graph(const LdGraph& g, const Formula& f) {
    return f.kind == LogicKind::Dl ? graph_satisfies(g, f.dl) : eval_fol(g, f.fol);
}

namespace {

void collect_alphabet(const ConceptPtr& c, Alphabet& a) {
    if (!c) return;
    if (c->kind == ConceptKind::Atomic) a.basic_concepts.insert(c->name);
    if ((c->kind == ConceptKind::Exists || c->kind == ConceptKind::ExistsSelf ||
         c->kind == ConceptKind::Less) &&
        !c->role.is_universal())
        a.basic_roles.insert(c->role.name);
    collect_alphabet(c->a, a);
    collect_alphabet(c->b, a);
}
void collect_alphabet(const FolPtr& f, Alphabet& a) {
    if (!f) return;
    if (f->kind == FolKind::ConceptApp) a.basic_concepts.insert(f->name);
    if (f->kind == FolKind::RoleApp) a.basic_roles.insert(f->name);
    collect_alphabet(f->a, a);
    collect_alphabet(f->b, a);
}
void collect_alphabet(const Formula& f, Alphabet& a) {
    if (f.kind == LogicKind::Dl)
        collect_alphabet(f.dl, a);
    else
        collect_alphabet(f.fol, a);
}
void collect_alphabet(const Action& act, Alphabet& a) {
    switch (act.kind) {
        case ActionKind::AddLabel:
        case ActionKind::DelLabel: a.basic_concepts.insert(act.name); break;
        case ActionKind::AddEdge:
        case ActionKind::AddEdgeId:
        case ActionKind::DelEdge: a.basic_roles.insert(act.name); break;
        case ActionKind::Clone:
            for (const auto* s : {&act.clone.in, &act.clone.out, &act.clone.loop_in,
                                  &act.clone.loop_out, &act.clone.loop_loop})
                a.basic_roles.insert(s->begin(), s->end());
            break;
        default: break;
    }
}

}  // namespace

Alphabet spec_alphabet(const Specification& sp) {
    Alphabet a;
    collect_alphabet(sp.pre, a);
    collect_alphabet(sp.post, a);
    for (const Rule& r : sp.rules.rules) {
        for (const auto& n : r.lhs.nodes)
            for (const auto& c : n.labels) collect_alphabet(c, a);
        for (const auto& e : r.lhs.edges) a.basic_roles.insert(e.role);
        for (const Action& act : r.rhs) collect_alphabet(act, a);
    }
    a.validate();
    return a;
}

std::vector<std::string> spec_reserved_names(const RuleSet& rules) {
    std::set<std::string> out;
    for (const Rule& r : rules.rules)
        for (const auto& f : r.fresh_names()) out.insert(f);
    return {out.begin(), out.end()};
}

namespace {

void collect_names(const ConceptPtr& c, std::set<std::string>& out) {
    if (!c) return;
    if (c->kind == ConceptKind::Nominal) out.insert(c->nominal.name);
    collect_names(c->a, out);
    collect_names(c->b, out);
}
void collect_names(const FolPtr& f, std::set<std::string>& out) {
    if (!f) return;
    for (const Term* t : {&f->t1, &f->t2})
        if (!t->is_var && !t->node.name.empty()) out.insert(t->node.name);
    collect_names(f->a, out);
    collect_names(f->b, out);
}

// Three-valued truth of "graph satisfies f" over all completions.
Tri satisfies3(const PartialGraph& pg, const Formula& f) {
    if (f.kind == LogicKind::Fol) return eval3_fol(pg, f.fol);
    TriSet b = eval3_concept(pg, f.dl);
    if (b.lo.contains(pg.active)) return Tri::True;
    if (!b.hi.contains(pg.active)) return Tri::False;
    return Tri::Unknown;
}

struct VarRef {
    bool is_label;
    std::string name;  // concept or role
    size_t i, j;       // j unused for labels
};

std::vector<VarRef> open_vars(const PartialGraph& pg) {
    std::vector<VarRef> vars;
    for (const auto& [c, row] : pg.label)
        for (size_t i = 0; i < pg.size(); ++i)
            if (row[i] == Tri::Unknown) vars.push_back({true, c, i, 0});
    for (const auto& [r, cells] : pg.edge)
        for (size_t i = 0; i < pg.size(); ++i)
            for (size_t j = 0; j < pg.size(); ++j)
                if (cells[i * pg.size() + j] == Tri::Unknown)
                    vars.push_back({false, r, i, j});
    return vars;
}

// Depth-first search over completions of pg. `status` classifies the current
// interval: True prunes the subtree, False yields the canonical completion,
// Unknown branches on the next open variable.
template <typename StatusFn>
std::optional<LdGraph> dfs_search(PartialGraph& pg, const std::vector<VarRef>& vars, size_t k,
                                  uint64_t& budget, const StatusFn& status) {
    if (budget == 0) throw BudgetExceeded();
    --budget;
    Tri t = status(pg);
    if (t == Tri::True) return std::nullopt;
    if (t == Tri::False) return materialize(pg, false);
    while (k < vars.size()) {
        const VarRef& v = vars[k];
        Tri& cell = v.is_label ? pg.label_at(v.name, v.i) : pg.edge_at(v.name, v.i, v.j);
        if (cell != Tri::Unknown) {
            ++k;
            continue;
        }
        for (Tri val : {Tri::False, Tri::True}) {
            cell = val;
            auto r = dfs_search(pg, vars, k + 1, budget, status);
            if (r) {
                cell = Tri::Unknown;
                return r;
            }
        }
        cell = Tri::Unknown;
        return std::nullopt;
    }
    throw Error("three-valued evaluation undecided on a complete graph");
}

struct Universe {
    std::vector<NodeId> nodes;
    std::vector<NodeId> active;
};

// Active-set shapes: every subset of the eligible distinguished names plus a
// count of interchangeable generic nodes.
std::vector<Universe> universe_shapes(const std::vector<std::string>& distinguished,
                                      const std::vector<std::string>& reserved,
                                      int max_nodes, int min_active) {
    std::vector<std::string> eligible;
    for (const auto& d : distinguished)
        if (std::find(reserved.begin(), reserved.end(), d) == reserved.end())
            eligible.push_back(d);
    std::sort(eligible.begin(), eligible.end());

    std::vector<Universe> shapes;
    size_t m = eligible.size();
    for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
        std::vector<NodeId> base_active;
        for (size_t b = 0; b < m; ++b)
            if (mask & (size_t{1} << b)) base_active.push_back(NodeId{eligible[b]});
        if ((int)base_active.size() > max_nodes) continue;
        for (int g = 0; (int)base_active.size() + g <= max_nodes; ++g) {
            Universe u;
            for (const auto& d : distinguished) u.nodes.push_back(NodeId{d});
            u.active = base_active;
            for (int t = 0; t < g; ++t) {
                NodeId v{"v" + std::to_string(t)};
                u.nodes.push_back(v);
                u.active.push_back(v);
            }
            if ((int)u.active.size() < min_active) continue;
            shapes.push_back(std::move(u));
        }
    }
    std::sort(shapes.begin(), shapes.end(), [](const Universe& a, const Universe& b) {
        return std::tie(a.active, a.nodes) < std::tie(b.active, b.nodes);
    });
    return shapes;
}

}  // namespace

std::optional<Counterexample> bounded_validity(const Formula& f, const Alphabet& alphabet,
                                               const ValidityOptions& opt) {
    std::set<std::string> names;
    if (f.kind == LogicKind::Dl)
        collect_names(f.dl, names);
    else
        collect_names(f.fol, names);
    std::vector<std::string> distinguished(names.begin(), names.end());

    uint64_t budget = opt.budget;
    for (const Universe& u :
         universe_shapes(distinguished, opt.reserved_names, opt.max_nodes, 0)) {
        PartialGraph pg = open_partial_graph(alphabet, u.nodes, u.active);
        std::vector<VarRef> vars = open_vars(pg);
        auto r = dfs_search(pg, vars, 0, budget,
                            [&](const PartialGraph& p) { return satisfies3(p, f); });
        if (r) return Counterexample{std::move(*r)};
    }
    return std::nullopt;
}

std::optional<LdGraph> find_app_mismatch(const Rule& rule, bool use_fol,
                                         const Alphabet& alphabet, int max_nodes,
                                         bool one_directional, uint64_t budget) {
    Formula app = use_fol ? Formula::of(app_formula_fol(rule))
                          : Formula::of(app_formula_alcu(rule));
    std::set<std::string> names;
    if (use_fol)
        collect_names(app.fol, names);
    else
        collect_names(app.dl, names);
    std::vector<std::string> distinguished(names.begin(), names.end());

    // Agreement holds in every completion <=> no mismatch below; mismatch in
    // every completion <=> report. The DL reading of satisfaction is
    // graph-level, so hosts have at least one active node.
    auto status = [&](const PartialGraph& pg) {
        Tri tf = satisfies3(pg, app);
        Tri ta = match3(pg, rule);
        auto agree_true = [](Tri x) { return x == Tri::True; };
        auto agree_false = [](Tri x) { return x == Tri::False; };
        if (one_directional) {
            if (agree_false(ta) || agree_true(tf)) return Tri::True;   // app => formula holds
            if (agree_true(ta) && agree_false(tf)) return Tri::False;  // definite mismatch
            return Tri::Unknown;
        }
        if ((agree_true(tf) && agree_true(ta)) || (agree_false(tf) && agree_false(ta)))
            return Tri::True;
        if ((agree_true(tf) && agree_false(ta)) || (agree_false(tf) && agree_true(ta)))
            return Tri::False;
        return Tri::Unknown;
    };

    for (const Universe& u : universe_shapes(distinguished, {}, max_nodes, 1)) {
        PartialGraph pg = open_partial_graph(alphabet, u.nodes, u.active);
        std::vector<VarRef> vars = open_vars(pg);
        auto r = dfs_search(pg, vars, 0, budget, status);
        if (r) return r;
    }
    return std::nullopt;
}

SoundnessReport test_soundness(const Specification& sp, const GraphSampler& sampler,
                               int trials, size_t step_bound, Rng& rng) {
    SoundnessReport report;
    Formula correct = correctness_formula(sp);
    Formula pre = formula_globalize(sp.pre);
    Formula post = formula_globalize(sp.post);
    int attempts_cap = trials * 500;
    while (report.sampled < trials && report.attempts < attempts_cap) {
        ++report.attempts;
        LdGraph g = sampler(rng);
        // Pre-state graphs satisfying the correctness formula carry the
        // obligation; the rest impose none.
        if (!check_on_graph(g, correct) || !check_on_graph(g, pre)) continue;
        ++report.sampled;
        DerivationSet ds = derivations(g, sp.strategy, sp.rules, step_bound);
        report.bound_hit |= ds.bound_hit;
        for (const Outcome& o : ds.outcomes) {
            if (!o.is_graph()) continue;
            if (!check_on_graph(o.graph, post)) {
                ++report.violations;
                if (report.bad.size() < 5) report.bad.push_back(g);
                break;
            }
        }
    }
    return report;
}

}  // namespace ldg
