#pragma once

#include <map>
#include <set>
#include <vector>

#include "mwq/model.hpp"
#include "mwq/query.hpp"
#include "mwq/rewriter.hpp"

namespace mwq {

using Tuple = std::vector<IndividualId>;

// All answers of a filtered query over a finite structure. Assignments range
// over the whole domain; answer tuples are restricted to named individuals.
std::set<Tuple> evalFiltered(const FilteredQuery& q,
                             const FiniteInterpretation& interp);

// True iff the query holds with its answer variables pre-bound.
bool evalFilteredBound(const FilteredQuery& q,
                       const FiniteInterpretation& interp,
                       const Tuple& answerBinding);

// Plain first-order matching of an NCQ (no filters).
std::set<Tuple> evalNCQDirect(const NCQ& q,
                              const FiniteInterpretation& interp);

// Minimal-world answers via the rewriting pipeline:
// union over all rewritings, evaluated on the named part.
std::set<Tuple> mwaAtemporal(const NCQ& q, const KnowledgeBase& kb);

}  // namespace mwq
