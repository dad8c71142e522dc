#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ldg/bisim.hpp"
#include "ldg/errors.hpp"
#include "ldg/eval.hpp"
#include "ldg/gen.hpp"
#include "ldg/json_io.hpp"
#include "ldg/parse.hpp"
#include "ldg/print.hpp"
#include "ldg/subst.hpp"
#include "ldg/verify.hpp"

namespace {

constexpr uint64_t kDefaultSeed = 20240817ull;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ldg::Error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::path p(out_path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw ldg::Error("cannot write file: " + out_path);
    out << text;
}

int run(int argc, char** argv) {
    CLI::App app{"logically decorated graph rewriting and verification"};
    app.require_subcommand(1);

    // apply
    std::string apply_graph, apply_actions, apply_out, apply_dot;
    auto* apply = app.add_subcommand("apply", "apply an action sequence to a graph");
    apply->add_option("graph", apply_graph, "graph JSON file")->required();
    apply->add_option("actions", apply_actions, "action sequence text")->required();
    apply->add_option("--out", apply_out, "output file (default stdout)");
    apply->add_option("--dot", apply_dot, "also write a graphviz rendering");

    // rewrite
    std::string rw_graph, rw_rules, rw_strategy, rw_out, rw_dot, rw_policy = "first";
    bool rw_all = false, rw_injective = false;
    uint64_t rw_seed = kDefaultSeed;
    size_t rw_steps = 10000;
    std::string rw_logic = "dl";
    auto* rewrite = app.add_subcommand("rewrite", "run a strategy on a graph");
    rewrite->add_option("graph", rw_graph)->required();
    rewrite->add_option("rules", rw_rules)->required();
    rewrite->add_option("strategy", rw_strategy)->required();
    rewrite->add_flag("--all", rw_all, "enumerate every derivation outcome");
    rewrite->add_flag("--injective", rw_injective, "restrict matches to injective ones");
    rewrite->add_option("--policy", rw_policy, "first|seeded");
    rewrite->add_option("--seed", rw_seed, "seed for --policy seeded");
    rewrite->add_option("--steps", rw_steps, "step bound");
    rewrite->add_option("--logic", rw_logic, "dl|fol (closure invariants)");
    rewrite->add_option("--out", rw_out, "output file");
    rewrite->add_option("--dot", rw_dot, "graphviz output for a Graph outcome");

    // eliminate
    std::string el_formula, el_logic = "dl", el_out;
    bool el_trace = false, el_full = false;
    auto* eliminate = app.add_subcommand("eliminate", "remove pending substitutions");
    eliminate->add_option("formula", el_formula, "formula with [action] suffixes")->required();
    eliminate->add_option("--logic", el_logic, "dl|fol");
    eliminate->add_flag("--trace", el_trace, "print rule applications");
    eliminate->add_flag("--full-parens", el_full);
    eliminate->add_option("--out", el_out);

    // wp / vc
    std::string wp_rules, wp_strategy, wp_post, wp_logic = "dl", wp_out;
    bool wp_eliminate = false, wp_full = false;
    auto* wp = app.add_subcommand("wp", "weakest precondition of a strategy");
    wp->add_option("rules", wp_rules)->required();
    wp->add_option("strategy", wp_strategy)->required();
    wp->add_option("post", wp_post)->required();
    wp->add_option("--logic", wp_logic, "dl|fol");
    wp->add_flag("--eliminate", wp_eliminate, "also eliminate substitutions");
    wp->add_flag("--full-parens", wp_full);
    wp->add_option("--out", wp_out);
    std::string vc_rules, vc_strategy_text, vc_post, vc_logic = "dl", vc_out;
    bool vc_eliminate = false, vc_full = false;
    auto* vc = app.add_subcommand("vc", "verification conditions of a strategy");
    vc->add_option("rules", vc_rules)->required();
    vc->add_option("strategy", vc_strategy_text)->required();
    vc->add_option("post", vc_post)->required();
    vc->add_option("--logic", vc_logic, "dl|fol");
    vc->add_flag("--eliminate", vc_eliminate);
    vc->add_flag("--full-parens", vc_full);
    vc->add_option("--out", vc_out);

    // verify
    std::string vf_spec, vf_emit;
    int vf_bound = -1, vf_trials = 0;
    uint64_t vf_seed = kDefaultSeed;
    auto* verify = app.add_subcommand("verify", "check a specification");
    verify->add_option("spec", vf_spec, ".ldv file")->required();
    verify->add_option("--bound-nodes", vf_bound, "active-node bound for enumeration");
    verify->add_option("--trials", vf_trials, "extra randomized soundness trials");
    verify->add_option("--seed", vf_seed);
    verify->add_option("--emit-formula", vf_emit, "write the correctness formula");

    // bisim
    auto* bisim = app.add_subcommand("bisim", "bisimulation checks");
    bisim->require_subcommand(1);
    std::string bs_i, bs_j, bs_z, bs_features = "QUOSelf";
    auto* bs_check = bisim->add_subcommand("check", "check a given relation");
    bs_check->add_option("I", bs_i)->required();
    bs_check->add_option("J", bs_j)->required();
    bs_check->add_option("Z", bs_z)->required();
    bs_check->add_option("--features", bs_features, "QUO|QUOSelf");
    auto* bs_demo = bisim->add_subcommand("demo-nonclosure",
                                          "reproduce the merge non-closure witness");

    // fuzz
    uint64_t fz_seed = kDefaultSeed;
    int fz_cases = 1000;
    std::string fz_kind = "all", fz_logic = "both";
    auto* fuzz = app.add_subcommand("fuzz", "randomized substitution biconditional suite");
    fuzz->add_option("--seed", fz_seed);
    fuzz->add_option("--cases", fz_cases, "cases per action kind and logic");
    fuzz->add_option("--kind", fz_kind,
                     "all|add_N|del_N|add_C|del_C|add_E|del_E|redirect|mrg|cl");
    fuzz->add_option("--logic", fz_logic, "dl|fol|both");

    CLI11_PARSE(app, argc, argv);

    auto parse_logic = [](const std::string& s) {
        if (s == "dl") return ldg::LogicKind::Dl;
        if (s == "fol") return ldg::LogicKind::Fol;
        throw ldg::Error("logic must be dl or fol");
    };

    if (*apply) {
        ldg::LdGraph g = ldg::load_graph_file(apply_graph);
        ldg::LdGraph out = ldg::apply_sequence(g, ldg::parse_actions(apply_actions));
        write_or_print(ldg::graph_to_json(out), apply_out);
        if (!apply_dot.empty()) write_or_print(ldg::graph_to_dot(out), apply_dot);
        return 0;
    }
    if (*rewrite) {
        ldg::LdGraph g = ldg::load_graph_file(rw_graph);
        ldg::RuleSet rules = ldg::parse_rules(slurp(rw_rules));
        ldg::StrategyPtr s = ldg::parse_strategy(rw_strategy, parse_logic(rw_logic));
        auto describe = [](const ldg::Outcome& o) -> std::string {
            switch (o.kind) {
                case ldg::Outcome::Kind::AnyGraph: return "any-graph\n";
                case ldg::Outcome::Kind::Failure: return "failure\n";
                default: return ldg::graph_to_json(o.graph);
            }
        };
        if (rw_all) {
            ldg::DerivationSet ds = ldg::derivations(g, s, rules, rw_steps);
            std::string text;
            for (size_t i = 0; i < ds.outcomes.size(); ++i) {
                text += "--- outcome " + std::to_string(i) + " ---\n";
                text += describe(ds.outcomes[i]);
            }
            if (ds.bound_hit) text += "--- step bound reached on some branch ---\n";
            write_or_print(text, rw_out);
            return ds.bound_hit ? 3 : 0;
        }
        ldg::Rng rng(rw_seed);
        ldg::MatchPolicy policy =
            rw_policy == "seeded" ? ldg::MatchPolicy::Seeded : ldg::MatchPolicy::FirstMatch;
        ldg::Outcome o = ldg::execute(g, s, rules, policy, rw_steps, &rng, rw_injective);
        write_or_print(describe(o), rw_out);
        if (!rw_dot.empty() && o.is_graph())
            write_or_print(ldg::graph_to_dot(o.graph), rw_dot);
        return 0;
    }
    if (*eliminate) {
        std::string text;
        if (parse_logic(el_logic) == ldg::LogicKind::Dl) {
            auto [out, trace] = ldg::eliminate_dl_traced(ldg::parse_concept(el_formula));
            if (el_trace)
                for (const auto& step : trace)
                    text += "[" + step.rule + "] " + ldg::print_concept(step.before) + "  ~>  " +
                            ldg::print_concept(step.after) + "\n";
            text += ldg::print_concept(out, el_full) + "\n";
        } else {
            auto [out, trace] = ldg::eliminate_fol_traced(ldg::parse_fol(el_formula));
            if (el_trace)
                for (const auto& step : trace)
                    text += "[" + step.rule + "] " + ldg::print_fol(step.before) + "  ~>  " +
                            ldg::print_fol(step.after) + "\n";
            text += ldg::print_fol(out, el_full) + "\n";
        }
        write_or_print(text, el_out);
        return 0;
    }
    auto run_wp_vc = [&](bool is_wp, const std::string& rules_path, const std::string& strat,
                         const std::string& post, const std::string& logic, bool do_elim,
                         bool full, const std::string& out) {
        ldg::LogicKind kind = parse_logic(logic);
        ldg::RuleSet rules = ldg::parse_rules(slurp(rules_path));
        ldg::StrategyPtr s = ldg::parse_strategy(strat, kind);
        ldg::Formula q = kind == ldg::LogicKind::Dl
                             ? ldg::Formula::of(ldg::parse_concept(post))
                             : ldg::Formula::of(ldg::relativize_active(ldg::parse_fol(post)));
        ldg::Formula r = is_wp ? ldg::wp_strategy(s, q, rules) : ldg::vc_strategy(s, q, rules);
        if (do_elim) r = ldg::formula_eliminate(r);
        std::string text = (kind == ldg::LogicKind::Dl ? ldg::print_concept(r.dl, full)
                                                       : ldg::print_fol(r.fol, full)) +
                           "\n";
        write_or_print(text, out);
        return 0;
    };
    if (*wp)
        return run_wp_vc(true, wp_rules, wp_strategy, wp_post, wp_logic, wp_eliminate, wp_full,
                         wp_out);
    if (*vc)
        return run_wp_vc(false, vc_rules, vc_strategy_text, vc_post, vc_logic, vc_eliminate,
                         vc_full, vc_out);
    if (*verify) {
        ldg::Specification sp = ldg::load_spec_file(vf_spec);
        ldg::Formula correct = ldg::correctness_formula(sp);
        if (!vf_emit.empty()) {
            std::string text = (sp.logic == ldg::LogicKind::Dl
                                    ? ldg::print_concept(correct.dl, true)
                                    : ldg::print_fol(correct.fol, true)) +
                               "\n";
            write_or_print(text, vf_emit);
        }
        ldg::ValidityOptions opt;
        opt.max_nodes = vf_bound > 0 ? vf_bound : sp.bound_nodes;
        opt.reserved_names = ldg::spec_reserved_names(sp.rules);
        ldg::Alphabet alphabet = ldg::spec_alphabet(sp);
        auto cex = ldg::bounded_validity(correct, alphabet, opt);
        if (cex) {
            std::cout << "counterexample found:\n" << ldg::graph_to_json(cex->graph);
            return 1;
        }
        std::cout << "no counterexample up to " << opt.max_nodes << " active nodes\n";
        if (vf_trials > 0) {
            ldg::Rng rng(vf_seed);
            ldg::GenParams p;
            auto sampler = [&](ldg::Rng& r) { return ldg::random_spec_graph(r, sp, p); };
            ldg::SoundnessReport rep = ldg::test_soundness(sp, sampler, vf_trials, 50, rng);
            std::cout << "soundness trials: " << rep.sampled << " satisfying graphs, "
                      << rep.violations << " violations\n";
            if (rep.violations > 0) return 1;
        }
        return 0;
    }
    if (*bs_check) {
        ldg::BisimInterp I{ldg::load_graph_file(bs_i), {}};
        ldg::BisimInterp J{ldg::load_graph_file(bs_j), {}};
        ldg::Relation z = ldg::load_relation_file(bs_z);
        ldg::FeatureSet f = bs_features == "QUO" ? ldg::FeatureSet::alcquo()
                                                 : ldg::FeatureSet::alcquoself();
        ldg::BisimReport rep = ldg::is_bisimulation(I, J, z, f);
        for (const auto& v : rep.violations) std::cout << v << "\n";
        std::cout << (rep.ok ? "bisimulation: yes" : "bisimulation: no") << "\n";
        return rep.ok ? 0 : 1;
    }
    if (*bs_demo) {
        ldg::NonClosureReport rep = ldg::demonstrate_non_closure();
        for (const auto& line : rep.log) std::cout << line << "\n";
        return rep.ok() ? 0 : 1;
    }
    if (*fuzz) {
        struct KindName {
            const char* name;
            ldg::ActionKind kind;
        };
        const KindName all[] = {
            {"add_N", ldg::ActionKind::AddNode},  {"del_N", ldg::ActionKind::DelNode},
            {"add_C", ldg::ActionKind::AddLabel}, {"del_C", ldg::ActionKind::DelLabel},
            {"add_E", ldg::ActionKind::AddEdge},  {"del_E", ldg::ActionKind::DelEdge},
            {"redirect", ldg::ActionKind::Redirect}, {"mrg", ldg::ActionKind::Merge},
            {"cl", ldg::ActionKind::Clone},
        };
        bool known = fz_kind == "all";
        for (const auto& [name, kind] : all) known |= fz_kind == name;
        if (!known) throw ldg::Error("unknown action kind: " + fz_kind);
        int total_failures = 0;
        ldg::GenParams p;
        for (const auto& [name, kind] : all) {
            if (fz_kind != "all" && fz_kind != name) continue;
            for (bool use_fol : {false, true}) {
                if (fz_logic == "dl" && use_fol) continue;
                if (fz_logic == "fol" && !use_fol) continue;
                ldg::FuzzReport rep =
                    ldg::fuzz_biconditional(fz_seed, fz_cases, kind, use_fol, p);
                std::cout << name << " " << (use_fol ? "fol" : "dl") << ": " << rep.cases
                          << " cases, " << rep.failures << " failures\n";
                for (const auto& s : rep.samples) std::cout << s << "\n";
                total_failures += rep.failures;
            }
        }
        return total_failures == 0 ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ldg::StepBoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ldg::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ldg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
