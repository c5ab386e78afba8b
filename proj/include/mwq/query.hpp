#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mwq/kb.hpp"

namespace mwq {

// A term is a query variable (index into NCQ::varNames) or an individual.
struct Term {
  bool isVar = true;
  uint32_t id = 0;

  static Term var(uint32_t v) { return {true, v}; }
  static Term ind(IndividualId i) { return {false, i}; }
  auto key() const { return std::tuple(isVar, id); }
  bool operator==(const Term&) const = default;
  bool operator<(const Term& o) const { return key() < o.key(); }
};

struct QAtom {
  bool negated = false;
  bool isRole = false;
  uint32_t pred = 0;  // ConceptId or RoleId
  Term t1;
  Term t2;  // role atoms only

  auto key() const { return std::tuple(negated, isRole, pred, t1, t2); }
  bool operator<(const QAtom& o) const { return key() < o.key(); }
  bool operator==(const QAtom& o) const { return key() == o.key(); }
};

// Conjunctive query with guarded negation. Quantified variables are the
// non-answer entries of varNames.
struct NCQ {
  std::vector<std::string> varNames;
  std::vector<uint32_t> answerVars;
  std::vector<QAtom> atoms;

  bool isAnswerVar(uint32_t v) const;
  // Leaf terms: no outgoing (first-position) role atom, positive or negated.
  bool isLeafVar(uint32_t v) const;
  // All variables reachable from answer variables or individual names via
  // positive role atoms.
  bool isRooted() const;
  void validateGuardedness() const;
};

// Implication-shaped guard on a subject term z with an implicit fresh z':
//   (exists z'. s(z,z') & N(z')) -> (exists z'. s(z,z') & N(z') & psi- & nested)
struct Filter {
  Term subject;
  RoleId role = 0;
  ConceptId filler = kTop;
  std::vector<ConceptId> negConcepts;  // !A(z')
  std::vector<RoleId> negRoles;        // !r(z,z')
  std::vector<Filter> nested;          // filters on z'
};

struct FilteredQuery {
  NCQ ncq;
  std::vector<Filter> filters;
};

int nestedFilterDepth(const FilteredQuery& q);
int filterDepth(const Filter& f);

// Metric temporal query tree. Until/Since intervals are over N (lo >= 0);
// Box/Dia intervals may span negative offsets. kNegInf/kPosInf mark
// unbounded ends.
struct MTNode;
using MTNodePtr = std::shared_ptr<const MTNode>;

struct MTNode {
  enum class Kind {
    Leaf, True, False, Not, And, Or, Until, Since, Box, Dia, Next, Prev
  };

  Kind kind = Kind::True;
  NCQ leaf;                 // Leaf
  MTNodePtr child1, child2; // unary ops use child1
  int64_t lo = 0, hi = 0;   // Until/Since/Box/Dia

  static MTNodePtr mkLeaf(NCQ q);
  static MTNodePtr mkConst(bool value);
  static MTNodePtr mkUnary(Kind k, MTNodePtr c);
  static MTNodePtr mkBinary(Kind k, MTNodePtr l, MTNodePtr r);
  static MTNodePtr mkTemporal(Kind k, int64_t lo, int64_t hi, MTNodePtr l,
                              MTNodePtr r);
};

struct MTNCQ {
  std::vector<std::string> answerVarNames;
  MTNodePtr root;

  bool isTemporal() const;
  bool allLeavesRooted() const;
};

// Rewrites the derived operators Box/Dia/Next/Prev into the Until/Since
// core. Used by the coherence tests and available to callers that want a
// minimal operator basis.
MTNodePtr expandDerived(const MTNodePtr& node);

// Renders a filtered query as a first-order formula ('&', '!', '->').
std::string filteredQueryToString(const KnowledgeBase& kb,
                                  const FilteredQuery& q);
std::string ncqAtomsToString(const KnowledgeBase& kb, const NCQ& q);
std::string mtncqSkeletonToString(const KnowledgeBase& kb, const MTNCQ& q);

}  // namespace mwq
