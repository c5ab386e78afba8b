#include "mwq/normalizer.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mwq {
namespace {

struct Normalizer {
  explicit Normalizer(KnowledgeBase& k) : kb(k) {}
  KnowledgeBase& kb;
  std::vector<NormalAxiom> out;
  std::map<std::string, ConceptId> freshByShape;  // hash-consing
  int counter = 0;

  ConceptId freshFor(const ConceptPtr& c) {
    std::string shape = conceptToString(kb, c);
    auto it = freshByShape.find(shape);
    if (it != freshByShape.end()) return it->second;
    std::string name;
    do {
      name = "_N" + std::to_string(counter++);
    } while (kb.concepts.find(name).has_value());
    ConceptId id = kb.concepts.intern(name);
    kb.freshNames.emplace(id, shape);
    freshByShape.emplace(shape, id);
    return id;
  }

  void emit(NormalAxiom ax) { out.push_back(ax); }

  // Returns a concept name X with C SUB X (used for complex LHS parts).
  ConceptId nameForLhs(const ConceptPtr& c) {
    if (c->isName()) return c->name;
    ConceptId x = freshFor(c);
    lhsInclusion(c, x);
    return x;
  }

  // Emits normal axioms equivalent to C SUB b, where b is a name/bot.
  void lhsInclusion(const ConceptPtr& c, ConceptId b) {
    switch (c->kind) {
      case Concept::Kind::Name:
        emit(NormalAxiom::conj(c->name, kTop, b));
        return;
      case Concept::Kind::Exists:
        emit(NormalAxiom::existsLhs(c->role, nameForLhs(c->sub), b));
        return;
      case Concept::Kind::Diam:
        emit(NormalAxiom::diam(c->op, nameForLhs(c->sub), b));
        return;
      case Concept::Kind::And: {
        // Flatten, then fold names pairwise left to right.
        std::vector<ConceptId> names;
        flattenAnd(c, names);
        if (names.size() == 1) {
          emit(NormalAxiom::conj(names[0], kTop, b));
          return;
        }
        ConceptId acc = names[0];
        for (size_t i = 1; i + 1 < names.size(); ++i) {
          ConceptId x = freshFor(conjShape(acc, names[i]));
          emit(NormalAxiom::conj(acc, names[i], x));
          acc = x;
        }
        emit(NormalAxiom::conj(acc, names.back(), b));
        return;
      }
    }
  }

  ConceptPtr conjShape(ConceptId a, ConceptId b) {
    return Concept::mkAnd(Concept::mkName(a), Concept::mkName(b));
  }

  void flattenAnd(const ConceptPtr& c, std::vector<ConceptId>& names) {
    if (c->kind == Concept::Kind::And) {
      flattenAnd(c->left, names);
      flattenAnd(c->right, names);
    } else {
      names.push_back(nameForLhs(c));
    }
  }

  // Emits normal axioms equivalent to a SUB D for a name a.
  void rhsInclusion(ConceptId a, const ConceptPtr& d) {
    switch (d->kind) {
      case Concept::Kind::Name:
        if (d->name == kTop) return;  // tautology
        emit(NormalAxiom::conj(a, kTop, d->name));
        return;
      case Concept::Kind::And:
        rhsInclusion(a, d->left);
        rhsInclusion(a, d->right);
        return;
      case Concept::Kind::Exists: {
        ConceptId filler;
        if (d->sub->isName() && d->sub->name != kTop) {
          filler = d->sub->name;
        } else {
          // The filler must be a name; define a fresh one both ways so the
          // witness behaves exactly like the original filler.
          filler = freshFor(d->sub);
          rhsInclusion(filler, d->sub);
          lhsInclusion(d->sub, filler);
        }
        emit(NormalAxiom::existsRhs(a, d->role, filler));
        return;
      }
      case Concept::Kind::Diam:
        fail(ErrorKind::Validation,
             "diamond operators may not occur on the right-hand side");
    }
  }

  void ci(const ConceptPtr& lhs, const ConceptPtr& rhs) {
    if (rhs->isName() && rhs->name == kTop) return;
    if (rhs->isName()) {
      lhsInclusion(lhs, rhs->name);
      return;
    }
    ConceptId a = nameForLhs(lhs);
    rhsInclusion(a, rhs);
  }

  void run() {
    for (const RawCI& raw : kb.rawCis) ci(raw.lhs, raw.rhs);
    for (const auto& [r, s] : kb.rawRoleCis) {
      if (r != s) emit(NormalAxiom::roleCi(r, s));
    }
    for (const ComplexAssertion& ca : kb.complexAssertions) {
      ConceptId x = freshFor(ca.concept_);
      rhsInclusion(x, ca.concept_);
      lhsInclusion(ca.concept_, x);
      Assertion a;
      a.concept_ = x;
      a.subject = ca.subject;
      a.time = ca.time;
      kb.addAssertion(a);
    }
    kb.complexAssertions.clear();
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    kb.tbox = std::move(out);
    kb.normalized = true;
  }
};

}  // namespace

void normalize(KnowledgeBase& kb) {
  require(!kb.normalized, ErrorKind::Internal, "KB already normalized");
  Normalizer n(kb);
  // Continue numbering after any fresh names already in the signature.
  n.counter = static_cast<int>(kb.freshNames.size());
  n.run();
  kb.validateAssertionTimes();
}

}  // namespace mwq
