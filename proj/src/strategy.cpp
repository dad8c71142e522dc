#include "ldg/strategy.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "ldg/errors.hpp"

namespace ldg {

namespace {
StrategyPtr mk(StrategyNode n) { return std::make_shared<const StrategyNode>(std::move(n)); }
}  // namespace

StrategyPtr s_eps() {
    static const StrategyPtr e = mk({StrategyKind::Empty, {}, nullptr, nullptr, nullptr, nullptr});
    return e;
}
StrategyPtr s_rule(std::string name) {
    return mk({StrategyKind::Rule, std::move(name), nullptr, nullptr, nullptr, nullptr});
}
StrategyPtr s_try(std::string name) {
    return mk({StrategyKind::Try, std::move(name), nullptr, nullptr, nullptr, nullptr});
}
StrategyPtr s_mandatory(std::string name) {
    return mk({StrategyKind::Mandatory, std::move(name), nullptr, nullptr, nullptr, nullptr});
}
StrategyPtr s_seq(StrategyPtr a, StrategyPtr b) {
    return mk({StrategyKind::Seq, {}, std::move(a), std::move(b), nullptr, nullptr});
}
StrategyPtr s_choice(StrategyPtr a, StrategyPtr b) {
    return mk({StrategyKind::Choice, {}, std::move(a), std::move(b), nullptr, nullptr});
}
StrategyPtr s_closure(StrategyPtr a, ConceptPtr inv_dl, FolPtr inv_fol) {
    return mk({StrategyKind::Closure, {}, std::move(a), nullptr, std::move(inv_dl),
               std::move(inv_fol)});
}

bool strategy_equal(const StrategyPtr& a, const StrategyPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case StrategyKind::Empty: return true;
        case StrategyKind::Rule:
        case StrategyKind::Try:
        case StrategyKind::Mandatory: return a->rule == b->rule;
        case StrategyKind::Seq:
        case StrategyKind::Choice:
            return strategy_equal(a->a, b->a) && strategy_equal(a->b, b->b);
        case StrategyKind::Closure:
            return strategy_equal(a->a, b->a) && concept_equal(a->inv_dl, b->inv_dl) &&
                   fol_equal(a->inv_fol, b->inv_fol);
    }
    return false;
}

void validate_strategy(const StrategyPtr& s, const RuleSet& rules) {
    switch (s->kind) {
        case StrategyKind::Empty: return;
        case StrategyKind::Rule:
        case StrategyKind::Try:
        case StrategyKind::Mandatory: rules.at(s->rule); return;
        case StrategyKind::Seq:
        case StrategyKind::Choice:
            validate_strategy(s->a, rules);
            validate_strategy(s->b, rules);
            return;
        case StrategyKind::Closure: validate_strategy(s->a, rules); return;
    }
}

bool outcome_less(const Outcome& a, const Outcome& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind != Outcome::Kind::Graph) return false;
    auto key = [](const LdGraph& g) {
        return std::tie(g.universe, g.active, g.labels, g.edges);
    };
    return key(a.graph) < key(b.graph);
}

bool outcome_equal(const Outcome& a, const Outcome& b) {
    return !outcome_less(a, b) && !outcome_less(b, a);
}

bool app(const LdGraph& g, const StrategyPtr& s, const RuleSet& rules) {
    switch (s->kind) {
        case StrategyKind::Empty:
        case StrategyKind::Try:
        case StrategyKind::Closure:
            return true;
        case StrategyKind::Rule:
        case StrategyKind::Mandatory:
            return applicable(g, rules.at(s->rule));
        case StrategyKind::Choice: return app(g, s->a, rules) || app(g, s->b, rules);
        case StrategyKind::Seq: return app(g, s->a, rules);
    }
    return false;
}

namespace {

struct Executor {
    const RuleSet& rules;
    MatchPolicy policy;
    Rng* rng;
    size_t steps_left;
    bool injective = false;

    void spend() {
        if (steps_left == 0) throw StepBoundExceeded();
        --steps_left;
    }

    const Match& pick(const std::vector<Match>& ms) {
        if (policy == MatchPolicy::Seeded && rng) return ms[rng->below(ms.size())];
        return ms.front();
    }

    Outcome run(const LdGraph& g, const StrategyPtr& s) {
        switch (s->kind) {
            case StrategyKind::Empty: return Outcome::of(g);
            case StrategyKind::Rule:
            case StrategyKind::Try:
            case StrategyKind::Mandatory: {
                const Rule& rule = rules.at(s->rule);
                auto ms = find_matches(g, rule, injective);
                if (ms.empty()) {
                    if (s->kind == StrategyKind::Rule) return Outcome::any_graph();
                    if (s->kind == StrategyKind::Try) return Outcome::of(g);
                    return Outcome::failure();
                }
                spend();
                return Outcome::of(apply_rule(g, rule, pick(ms)));
            }
            case StrategyKind::Seq: {
                Outcome o = run(g, s->a);
                if (!o.is_graph()) return o;  // AnyGraph and Failure absorb
                return run(o.graph, s->b);
            }
            case StrategyKind::Choice: {
                bool right = policy == MatchPolicy::Seeded && rng && rng->below(2) == 1;
                return run(g, right ? s->b : s->a);
            }
            case StrategyKind::Closure: {
                LdGraph cur = g;
                while (app(cur, s->a, rules)) {
                    spend();
                    Outcome o = run(cur, s->a);
                    if (!o.is_graph()) return o;
                    cur = std::move(o.graph);
                }
                return Outcome::of(cur);
            }
        }
        throw Error("unreachable strategy kind");
    }
};

struct Enumerator {
    const RuleSet& rules;
    std::vector<Outcome> out;
    bool bound_hit = false;

    void add(Outcome o) { out.push_back(std::move(o)); }

    void run(const LdGraph& g, const StrategyPtr& s, size_t budget,
             const std::function<void(Outcome)>& emit) {
        switch (s->kind) {
            case StrategyKind::Empty: emit(Outcome::of(g)); return;
            case StrategyKind::Rule:
            case StrategyKind::Try:
            case StrategyKind::Mandatory: {
                const Rule& rule = rules.at(s->rule);
                auto ms = find_matches(g, rule);
                if (ms.empty()) {
                    if (s->kind == StrategyKind::Rule) emit(Outcome::any_graph());
                    else if (s->kind == StrategyKind::Try) emit(Outcome::of(g));
                    else emit(Outcome::failure());
                    return;
                }
                if (budget == 0) {
                    bound_hit = true;
                    return;
                }
                for (const Match& m : ms) emit(Outcome::of(apply_rule(g, rule, m)));
                return;
            }
            case StrategyKind::Seq: {
                run(g, s->a, budget, [&](Outcome o) {
                    if (!o.is_graph()) {
                        emit(std::move(o));
                        return;
                    }
                    run(o.graph, s->b, budget == 0 ? 0 : budget - 1, emit);
                });
                return;
            }
            case StrategyKind::Choice: {
                run(g, s->a, budget, emit);
                run(g, s->b, budget, emit);
                return;
            }
            case StrategyKind::Closure: {
                if (!app(g, s->a, rules)) {
                    emit(Outcome::of(g));
                    return;
                }
                if (budget == 0) {
                    bound_hit = true;
                    return;
                }
                run(g, s->a, budget - 1, [&](Outcome o) {
                    if (!o.is_graph()) {
                        emit(std::move(o));
                        return;
                    }
                    run(o.graph, s, budget - 1, emit);
                });
                return;
            }
        }
    }
};

}  // namespace

Outcome execute(const LdGraph& g, const StrategyPtr& s, const RuleSet& rules,
                MatchPolicy policy, size_t step_bound, Rng* rng, bool injective) {
    if (step_bound == 0) throw Error("step bound must be at least 1");
    validate_strategy(s, rules);
    Executor ex{rules, policy, rng, step_bound, injective};
    return ex.run(g, s);
}

DerivationSet derivations(const LdGraph& g, const StrategyPtr& s, const RuleSet& rules,
                          size_t step_bound) {
    validate_strategy(s, rules);
    Enumerator en{rules, {}, false};
    en.run(g, s, step_bound, [&](Outcome o) { en.add(std::move(o)); });
    std::sort(en.out.begin(), en.out.end(), outcome_less);
    en.out.erase(std::unique(en.out.begin(), en.out.end(), outcome_equal), en.out.end());
    return {std::move(en.out), en.bound_hit};
}

}  // namespace ldg
