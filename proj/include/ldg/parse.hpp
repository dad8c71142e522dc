#pragma once

#include <string>

#include "ldg/action.hpp"
#include "ldg/concepts.hpp"
#include "ldg/fol.hpp"
#include "ldg/rule.hpp"
#include "ldg/strategy.hpp"
#include "ldg/verify.hpp"

namespace ldg {

ConceptPtr parse_concept(const std::string& text);
FolPtr parse_fol(const std::string& text);

Action parse_action(const std::string& text);
ActionSeq parse_actions(const std::string& text);

// Closure invariants are parsed in the given logic.
StrategyPtr parse_strategy(const std::string& text, LogicKind inv_logic = LogicKind::Dl);

RuleSet parse_rules(const std::string& text);

// Reads a .ldv file; the rules: entry names a rule file relative to the spec.
Specification load_spec_file(const std::string& path);

}  // namespace ldg
