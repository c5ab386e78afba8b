#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mwq/common.hpp"
#include "mwq/interval_set.hpp"

namespace mwq {

// Interned symbols, one table per name kind. Ids are dense indices.
class SymbolTable {
 public:
  uint32_t intern(const std::string& name);
  std::optional<uint32_t> find(const std::string& name) const;
  const std::string& name(uint32_t id) const { return names_.at(id); }
  size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, uint32_t> ids_;
};

// Concept tree. Top/Bot are the reserved names kTop/kBot.
struct Concept;
using ConceptPtr = std::shared_ptr<const Concept>;

struct Concept {
  enum class Kind { Name, And, Exists, Diam };

  Kind kind = Kind::Name;
  ConceptId name = kTop;             // Name
  ConceptPtr left, right;            // And
  RoleId role = 0;                   // Exists
  ConceptPtr sub;                    // Exists / Diam
  DiamondOp op;                      // Diam

  static ConceptPtr mkName(ConceptId id);
  static ConceptPtr mkAnd(ConceptPtr l, ConceptPtr r);
  static ConceptPtr mkExists(RoleId r, ConceptPtr c);
  static ConceptPtr mkDiam(DiamondOp op, ConceptPtr c);

  bool isName() const { return kind == Kind::Name; }
  bool containsDiamond() const;
};

// Normal-form TBox axioms. Plain A SUB B is stored as ConjCI(A, top, B).
struct NormalAxiom {
  enum class Kind { ConjCI, DiamCI, ExistsRHS, ExistsLHS, RoleCI };

  Kind kind = Kind::ConjCI;
  ConceptId a1 = kTop, a2 = kTop;  // ConjCI lhs; DiamCI/ExistsRHS lhs in a1
  ConceptId b = kTop;              // rhs concept (ExistsRHS: the filler)
  RoleId r = 0, s = 0;             // ExistsRHS/ExistsLHS role; RoleCI (r SUB s)
  DiamondOp op;                    // DiamCI

  static NormalAxiom conj(ConceptId a1, ConceptId a2, ConceptId b) {
    NormalAxiom ax;
    ax.kind = Kind::ConjCI, ax.a1 = a1, ax.a2 = a2, ax.b = b;
    return ax;
  }
  static NormalAxiom diam(DiamondOp op, ConceptId a, ConceptId b) {
    NormalAxiom ax;
    ax.kind = Kind::DiamCI, ax.op = op, ax.a1 = a, ax.b = b;
    return ax;
  }
  static NormalAxiom existsRhs(ConceptId a, RoleId r, ConceptId b) {
    NormalAxiom ax;
    ax.kind = Kind::ExistsRHS, ax.a1 = a, ax.r = r, ax.b = b;
    return ax;
  }
  static NormalAxiom existsLhs(RoleId r, ConceptId a, ConceptId b) {
    NormalAxiom ax;
    ax.kind = Kind::ExistsLHS, ax.r = r, ax.a1 = a, ax.b = b;
    return ax;
  }
  static NormalAxiom roleCi(RoleId r, RoleId s) {
    NormalAxiom ax;
    ax.kind = Kind::RoleCI, ax.r = r, ax.s = s;
    return ax;
  }

  auto key() const { return std::tuple(kind, a1, a2, b, r, s, op.kind, op.n); }
  bool operator==(const NormalAxiom& o) const { return key() == o.key(); }
  bool operator<(const NormalAxiom& o) const { return key() < o.key(); }
};

struct Assertion {
  bool isRole = false;
  ConceptId concept_ = kTop;  // concept assertions
  RoleId role = 0;            // role assertions
  IndividualId subject = 0;
  IndividualId object = 0;    // role assertions only
  std::optional<int64_t> time;

  auto key() const {
    return std::tuple(isRole, concept_, role, subject, object,
                      time.value_or(kNegInf));
  }
  bool operator<(const Assertion& o) const { return key() < o.key(); }
  bool operator==(const Assertion& o) const { return key() == o.key(); }
};

// A concept assertion whose concept is complex; the normalizer replaces it
// by a fresh-name assertion plus definitional inclusions.
struct ComplexAssertion {
  ConceptPtr concept_;
  IndividualId subject = 0;
  std::optional<int64_t> time;
};

struct RawCI {
  ConceptPtr lhs, rhs;
};

enum class KbMode { Atemporal, Temporal };

struct KnowledgeBase {
  SymbolTable concepts;  // ids 0/1 are top/bot
  SymbolTable roles;
  SymbolTable individuals;

  std::vector<RawCI> rawCis;
  std::vector<std::pair<RoleId, RoleId>> rawRoleCis;
  std::vector<ComplexAssertion> complexAssertions;

  std::vector<NormalAxiom> tbox;  // filled by the normalizer
  bool normalized = false;
  std::map<ConceptId, std::string> freshNames;  // fresh id -> defining concept

  std::vector<Assertion> abox;
  KbMode mode = KbMode::Atemporal;

  KnowledgeBase();

  const std::string& conceptName(ConceptId id) const;
  const std::string& roleName(RoleId id) const;
  const std::string& individualName(IndividualId id) const;
  bool isFresh(ConceptId id) const { return freshNames.count(id) > 0; }

  // Sorted distinct time points occurring in the ABox.
  std::vector<int64_t> tem() const;

  void addAssertion(Assertion a);
  void validateAssertionTimes() const;
};

std::string conceptToString(const KnowledgeBase& kb, const ConceptPtr& c);

}  // namespace mwq
