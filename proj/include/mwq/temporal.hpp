#pragma once

#include <map>

#include "mwq/classifier.hpp"
#include "mwq/kb.hpp"
#include "mwq/model.hpp"

namespace mwq {

// Entailed temporal assertion closure as interval sets. Role extensions
// never spread in time; their endpoints stay within tem(A).
struct TemporalExtensionMap {
  std::map<std::pair<IndividualId, ConceptId>, IntervalSet> concepts;
  std::map<std::tuple<IndividualId, IndividualId, RoleId>, IntervalSet> roles;

  const IntervalSet& conceptAt(IndividualId a, ConceptId c) const;
  const IntervalSet& roleAt(IndividualId a, IndividualId b, RoleId r) const;
};

// Least fixpoint of the assertion-level rules. Throws on inconsistency.
TemporalExtensionMap saturate(const KnowledgeBase& kb,
                              const SubsumptionTable& table);

// tem(A) plus the finite endpoints of every maximal gap in Z \ tem(A).
std::vector<int64_t> representatives(const KnowledgeBase& kb);

// Finite temporal structure over the representative time points.
struct TemporalStructure {
  std::vector<int64_t> points;                    // sorted
  std::vector<FiniteInterpretation> snapshots;    // parallel to points
  TemporalExtensionMap extensions;
  std::vector<int64_t> tem;

  const FiniteInterpretation& snapshotAt(int64_t point) const;
  // Named-part snapshot at an arbitrary time point (gap interiors allowed).
  FiniteInterpretation materialize(const KnowledgeBase& kb, int64_t t) const;
};

TemporalStructure buildTemporalStructure(const KnowledgeBase& kb,
                                         const SubsumptionTable& table);

ConsistencyResult temporalConsistency(const KnowledgeBase& kb);

// Named-part snapshot of an extension map at time t.
FiniteInterpretation snapshotFromExtensions(const KnowledgeBase& kb,
                                            const TemporalExtensionMap& ext,
                                            int64_t t);

}  // namespace mwq
