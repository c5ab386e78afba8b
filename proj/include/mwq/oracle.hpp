#pragma once

#include <map>
#include <optional>

#include "mwq/eval.hpp"
#include "mwq/mtncq.hpp"

namespace mwq {

// Brute-force reference semantics: evaluate the query over the (depth-
// bounded) canonical model itself, with no rewriting involved.

// Answers of an NCQ over the expanded canonical model. Refuses non-rooted
// queries and cyclic TBoxes with insufficient depth.
std::set<Tuple> oracleAtemporal(const NCQ& q, const KnowledgeBase& kb,
                                int depth);

// Fig-2-style evaluation over per-time-point materializations of the
// temporal canonical model, for every time point in
// [min tem - window, max tem + window].
std::map<Tuple, IntervalSet> oracleTemporal(const MTNCQ& q,
                                            const KnowledgeBase& kb,
                                            int64_t window, int depth);

// True iff the identity is the only endomorphism of the structure.
// Refuses domains larger than 64 elements.
bool endomorphismTest(const FiniteInterpretation& interp);

struct GenLimits {
  int maxConcepts = 5;
  int maxRoles = 3;
  int maxAxioms = 10;
  int maxIndividuals = 6;
  int maxTimePoints = 4;
  int maxQueryAtoms = 4;
  int maxTemporalOps = 2;
  bool temporal = false;
};

struct GenInstance {
  KnowledgeBase kb;  // normalized, consistent
  MTNCQ query;       // rooted and guarded
  int attempts = 1;  // 1 when the first draw was already consistent
};

// Deterministic per seed; retries internally until the KB is consistent.
GenInstance randomInstance(uint64_t seed, const GenLimits& limits);

}  // namespace mwq
