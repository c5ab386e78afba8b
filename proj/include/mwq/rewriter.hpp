#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwq/classifier.hpp"
#include "mwq/query.hpp"

namespace mwq {

// One rewriting step: eliminate the quantified leaf variable using the
// entailed existential m SUB exists s.n.
struct RewriteChoice {
  uint32_t leafVar = 0;
  ConceptId m = kTop;
  RoleId s = 0;
  ConceptId n = kTop;
};

std::vector<RewriteChoice> applicableChoices(const FilteredQuery& q,
                                             const SubsumptionTable& table);

// Applies one step. Returns nullopt when the step cannot be expressed
// (predecessors anchored to two distinct constants/answer variables) or
// when the result is trivially unsatisfiable.
std::optional<FilteredQuery> rewriteStep(const FilteredQuery& q,
                                         const RewriteChoice& choice,
                                         const SubsumptionTable& table);

struct RewriteResult {
  std::vector<FilteredQuery> queries;  // BFS discovery order; input first
  bool depthBoundHit = false;          // some branch was pruned by the bound
  int depthBound = 0;
};

// Transitive closure of rewriteStep, deduplicated up to variable renaming,
// pruned at nested filter depth v + |NC_T|^2 * |NR_T| (+ boundBump).
RewriteResult allRewritings(const NCQ& q, const SubsumptionTable& table,
                            int boundBump = 0);

// Renaming-invariant canonical rendering; used for deduplication and golden
// comparisons.
std::string canonicalQueryString(const KnowledgeBase& kb,
                                 const FilteredQuery& q);

}  // namespace mwq
