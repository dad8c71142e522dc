#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ldg/concepts.hpp"
#include "ldg/fol.hpp"
#include "ldg/graph.hpp"

namespace ldg {

// One table-rule application, for debugging and replay.
struct DlTraceStep {
    std::string rule;
    ConceptPtr before;  // always a subst node with substitution-free body
    ConceptPtr after;
};
struct FolTraceStep {
    std::string rule;
    FolPtr before;
    FolPtr after;
};
using DlTrace = std::vector<DlTraceStep>;
using FolTrace = std::vector<FolTraceStep>;

// Rewrites every pending substitution away, innermost first. The result is
// substitution-free and stays within ALCQUOISelf (inverse roles can be
// introduced by the counting/merge rule).
ConceptPtr eliminate_dl(const ConceptPtr& c);
std::pair<ConceptPtr, DlTrace> eliminate_dl_traced(const ConceptPtr& c);

FolPtr eliminate_fol(const FolPtr& f);
std::pair<FolPtr, FolTrace> eliminate_fol_traced(const FolPtr& f);

// Single table step: pushes one action through a substitution-free formula.
// Exposed for trace replay; eliminate_* is built on top of it.
ConceptPtr push_action_dl(const ConceptPtr& body, const Action& a, DlTrace* trace = nullptr);
FolPtr push_action_fol(const FolPtr& body, const Action& a, FolTrace* trace = nullptr);

// Master oracle: the extension of eliminate(phi[a]) over g equals the
// extension of phi over g[a] (both live on the same universe).
bool check_biconditional(const LdGraph& g, const ConceptPtr& phi, const Action& a,
                         std::string* diag = nullptr);
// Sentence-level variant.
bool check_biconditional(const LdGraph& g, const FolPtr& phi, const Action& a,
                         std::string* diag = nullptr);

}  // namespace ldg
