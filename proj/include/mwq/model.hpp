#pragma once

#include <optional>
#include <set>
#include <vector>

#include "mwq/classifier.hpp"
#include "mwq/kb.hpp"

namespace mwq {

// Finite structure over named individuals, optionally expanded with
// anonymous witness elements. Element ids below namedCount are the KB's
// individuals (same ids); anonymous elements follow.
struct FiniteInterpretation {
  struct Element {
    int depth = 0;                     // 0 for named
    uint32_t parent = 0;               // anonymous only
    RoleId viaRole = 0;                // representative restriction
    ConceptId viaConcept = kTop;
    std::set<ConceptId> concepts;
    std::vector<std::pair<RoleId, uint32_t>> out;  // sorted (role, target)
  };

  size_t namedCount = 0;
  std::vector<Element> elements;

  bool hasConcept(uint32_t e, ConceptId a) const {
    if (a == kTop) return true;
    return elements[e].concepts.count(a) > 0;
  }
  bool hasEdge(uint32_t d, RoleId r, uint32_t e) const;
  bool satisfiesExists(uint32_t d, RoleId r, ConceptId b) const;
  void addEdge(uint32_t d, RoleId r, uint32_t e);
  std::vector<uint32_t> successors(uint32_t d, RoleId r) const;
  bool isNamed(uint32_t e) const { return e < namedCount; }
};

// Entailed assertions over named individuals (steps 1-2 of the model
// construction). Throws on inconsistency.
FiniteInterpretation buildNamedPart(const KnowledgeBase& kb,
                                    const SubsumptionTable& table);

// Fair breadth-first anonymous expansion up to the given depth: one fresh
// child per structurally-minimal unsatisfied existential restriction, one
// representative per structural-equivalence class.
FiniteInterpretation expandCanonical(const KnowledgeBase& kb,
                                     const SubsumptionTable& table,
                                     const FiniteInterpretation& base,
                                     int depthLimit,
                                     size_t maxElements = 200000);

// True iff the TBox's existential dependency graph is acyclic (the full
// canonical model is finite).
bool existentialsAcyclic(const SubsumptionTable& table);

ConsistencyResult atemporalConsistency(const KnowledgeBase& kb);

}  // namespace mwq
