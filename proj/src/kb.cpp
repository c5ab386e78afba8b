#include "mwq/kb.hpp"

#include <algorithm>
#include <set>

namespace mwq {

uint32_t SymbolTable::intern(const std::string& name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(names_.size());
  names_.push_back(name);
  ids_.emplace(name, id);
  return id;
}

std::optional<uint32_t> SymbolTable::find(const std::string& name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

ConceptPtr Concept::mkName(ConceptId id) {
  auto c = std::make_shared<Concept>();
  c->kind = Kind::Name;
  c->name = id;
  return c;
}

ConceptPtr Concept::mkAnd(ConceptPtr l, ConceptPtr r) {
  auto c = std::make_shared<Concept>();
  c->kind = Kind::And;
  c->left = std::move(l);
  c->right = std::move(r);
  return c;
}

ConceptPtr Concept::mkExists(RoleId role, ConceptPtr sub) {
  auto c = std::make_shared<Concept>();
  c->kind = Kind::Exists;
  c->role = role;
  c->sub = std::move(sub);
  return c;
}

ConceptPtr Concept::mkDiam(DiamondOp op, ConceptPtr sub) {
  auto c = std::make_shared<Concept>();
  c->kind = Kind::Diam;
  c->op = op;
  c->sub = std::move(sub);
  return c;
}

bool Concept::containsDiamond() const {
  switch (kind) {
    case Kind::Name: return false;
    case Kind::Diam: return true;
    case Kind::And: return left->containsDiamond() || right->containsDiamond();
    case Kind::Exists: return sub->containsDiamond();
  }
  return false;
}

KnowledgeBase::KnowledgeBase() {
  concepts.intern("top");
  concepts.intern("bot");
}

const std::string& KnowledgeBase::conceptName(ConceptId id) const {
  return concepts.name(id);
}
const std::string& KnowledgeBase::roleName(RoleId id) const {
  return roles.name(id);
}
const std::string& KnowledgeBase::individualName(IndividualId id) const {
  return individuals.name(id);
}

std::vector<int64_t> KnowledgeBase::tem() const {
  std::set<int64_t> points;
  for (const Assertion& a : abox) {
    if (a.time) points.insert(*a.time);
  }
  return {points.begin(), points.end()};
}

void KnowledgeBase::addAssertion(Assertion a) {
  if (a.time) mode = KbMode::Temporal;
  abox.push_back(a);
}

void KnowledgeBase::validateAssertionTimes() const {
  bool timed = false, untimed = false;
  for (const Assertion& a : abox) {
    (a.time ? timed : untimed) = true;
  }
  for (const ComplexAssertion& a : complexAssertions) {
    (a.time ? timed : untimed) = true;
  }
  require(!(timed && untimed), ErrorKind::Validation,
          "timed and untimed assertions cannot be mixed in one KB");
  if (mode == KbMode::Temporal) {
    require(!untimed, ErrorKind::Validation,
            "temporal KB contains untimed assertions");
  }
}

std::string conceptToString(const KnowledgeBase& kb, const ConceptPtr& c) {
  switch (c->kind) {
    case Concept::Kind::Name:
      return kb.conceptName(c->name);
    case Concept::Kind::And:
      return "(" + conceptToString(kb, c->left) + " AND " +
             conceptToString(kb, c->right) + ")";
    case Concept::Kind::Exists:
      return "(some " + kb.roleName(c->role) + " . " +
             conceptToString(kb, c->sub) + ")";
    case Concept::Kind::Diam:
      return "(" + c->op.str() + " " + conceptToString(kb, c->sub) + ")";
  }
  return "?";
}

}  // namespace mwq
