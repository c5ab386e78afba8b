#pragma once

#include <set>
#include <vector>

#include "mwq/kb.hpp"

namespace mwq {

// Subsumption services over a normalized atemporal TBox (for temporal KBs:
// over its atemporal projection). Immutable after classify().
class SubsumptionTable {
 public:
  // conceptSubsumes(a, b) <=> T |= a SUB b (for names incl. top/bot).
  bool conceptSubsumes(ConceptId a, ConceptId b) const;
  bool roleSubsumes(RoleId r, RoleId s) const;
  bool conceptEquiv(ConceptId a, ConceptId b) const {
    return conceptSubsumes(a, b) && conceptSubsumes(b, a);
  }
  bool roleEquiv(RoleId r, RoleId s) const {
    return roleSubsumes(r, s) && roleSubsumes(s, r);
  }
  bool unsatisfiable(ConceptId a) const { return conceptSubsumes(a, kBot); }

  // exists r.a SUBs exists t.b  <=>  r SUB t and a SUB b.
  bool structurallySubsumed(RoleId r, ConceptId a, RoleId t,
                            ConceptId b) const;

  // T |= m SUB exists s.n, via some ExistsRHS axiom and the hierarchies.
  // Unsatisfiable m are excluded.
  bool entailsExists(ConceptId m, RoleId s, ConceptId n) const;

  // Derived existential edges (m, r, b): T |= m SUB exists r.b where (r, b)
  // stems from an ExistsRHS axiom.
  const std::vector<std::tuple<ConceptId, RoleId, ConceptId>>& existsEdges()
      const {
    return edgesList_;
  }

  size_t conceptCount() const { return subs_.size(); }
  size_t roleCount() const { return roleSubs_.size(); }

  // Concept/role names occurring in the classified TBox (top/bot included
  // among concepts). These drive rewriting candidate enumeration.
  const std::vector<ConceptId>& tboxConcepts() const { return tboxConcepts_; }
  const std::vector<RoleId>& tboxRoles() const { return tboxRoles_; }

 private:
  friend SubsumptionTable classify(const KnowledgeBase& kb,
                                   const std::vector<NormalAxiom>& tbox);
  std::vector<std::set<ConceptId>> subs_;      // per concept: its subsumers
  std::vector<std::set<RoleId>> roleSubs_;     // per role: its super-roles
  std::vector<std::set<std::pair<RoleId, ConceptId>>> edges_;
  std::vector<std::tuple<ConceptId, RoleId, ConceptId>> edgesList_;
  std::vector<ConceptId> tboxConcepts_;
  std::vector<RoleId> tboxRoles_;
};

// drops the diamond from every DiamCI; all other axioms are copied.
std::vector<NormalAxiom> atemporalProjection(
    const std::vector<NormalAxiom>& tbox);

SubsumptionTable classify(const KnowledgeBase& kb,
                          const std::vector<NormalAxiom>& tbox);

// Classification of the KB as the query pipeline uses it: the TBox itself
// when atemporal, its projection when temporal.
SubsumptionTable classifyForQueries(const KnowledgeBase& kb);

struct ConsistencyResult {
  bool consistent = true;
  std::string witness;  // offending assertion, human-readable
};

ConsistencyResult checkConsistency(const KnowledgeBase& kb);

}  // namespace mwq
