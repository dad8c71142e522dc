#pragma once

#include <string>

#include "ldg/action.hpp"
#include "ldg/concepts.hpp"
#include "ldg/fol.hpp"
#include "ldg/strategy.hpp"

namespace ldg {

std::string print_role(const Role& r);

// Minimal parenthesization by default; full_parens parenthesizes every
// compound subterm (the --emit-formula form).
std::string print_concept(const ConceptPtr& c, bool full_parens = false);
std::string print_fol(const FolPtr& f, bool full_parens = false);

std::string print_action(const Action& a);
std::string print_actions(const ActionSeq& alpha);

std::string print_strategy(const StrategyPtr& s);

std::string print_rule(const Rule& r);
std::string print_rules(const RuleSet& rs);

}  // namespace ldg
