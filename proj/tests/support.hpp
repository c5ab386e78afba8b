#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mwq/eval.hpp"
#include "mwq/kb.hpp"
#include "mwq/normalizer.hpp"
#include "mwq/textio.hpp"

namespace mwq::testsupport {

inline const char* kCancerKb = R"(
SkinCancer EQV Cancer AND some findingSite . SkinStructure
BreastCancer EQV Cancer AND some findingSite . BreastStructure
SkinOfBreastCancer EQV Cancer AND some findingSite . SkinOfBreastStructure
SkinOfBreastStructure SUB BreastStructure AND SkinStructure
CancerPatient EQV some diagnosedWith . Cancer
SkinCancerPatient EQV some diagnosedWith . SkinCancer
BreastCancerPatient EQV some diagnosedWith . BreastCancer
BreastCancerPatient(p1)
CancerPatient(p1)
SkinCancerPatient(p2)
BreastCancerPatient(p2)
diagnosedWith(p3,c3)
SkinOfBreastCancer(c3)
)";

inline const char* kCancerQuery =
    "q(x) := {diagnosedWith(x,y), Cancer(y), findingSite(y,z), "
    "BreastStructure(z), not SkinStructure(z)}";

inline const char* kChemoKb = R"(
ChemotherapyPatient SUB CancerPatient
conv[365] CancerPatient SUB CancerPatient
conv[120] ChemotherapyPatient SUB ChemotherapyPatient
ChemotherapyPatient(p1) @ 0
ChemotherapyPatient(p1) @ 167
ChemotherapyPatient(p1) @ 258
)";

inline const char* kChemoQuery =
    "q(x) := BOX[-90,0]{ChemotherapyPatient(x)} AND "
    "NOT BOX[-180,0]{ChemotherapyPatient(x)}";

inline KnowledgeBase cancerKb() {
  KnowledgeBase kb = parseKB(kCancerKb, "cancer.mwq");
  normalize(kb);
  return kb;
}

inline KnowledgeBase chemoKb() {
  KnowledgeBase kb = parseKB(kChemoKb, "chemo.mwq");
  normalize(kb);
  return kb;
}

inline std::set<std::vector<std::string>> names(
    const KnowledgeBase& kb, const std::set<Tuple>& tuples) {
  std::set<std::vector<std::string>> out;
  for (const Tuple& t : tuples) {
    std::vector<std::string> row;
    for (IndividualId id : t) row.push_back(kb.individualName(id));
    out.insert(row);
  }
  return out;
}

// Test-only entailment oracle: builds the least model over the named
// individuals plus one witness element per concept name, applying the
// normal axioms directly as closure rules on the structure. Shares nothing
// with the classifier's symbolic completion.
struct NaiveChase {
  struct Elem {
    std::set<ConceptId> concepts;
    std::map<RoleId, std::set<uint32_t>> out;
  };
  std::vector<Elem> elems;  // named individuals, then one element per concept
  size_t namedCount = 0;
  bool inconsistent = false;

  uint32_t witnessOf(ConceptId b) const {
    return static_cast<uint32_t>(namedCount + b);
  }

  static NaiveChase run(const KnowledgeBase& kb,
                        const std::vector<Assertion>& abox) {
    NaiveChase c;
    c.namedCount = kb.individuals.size();
    c.elems.resize(c.namedCount + kb.concepts.size());
    for (ConceptId b = 0; b < kb.concepts.size(); ++b) {
      c.elems[c.witnessOf(b)].concepts.insert(b);
    }
    for (const Assertion& a : abox) {
      if (a.isRole) {
        c.elems[a.subject].out[a.role].insert(a.object);
      } else {
        c.elems[a.subject].concepts.insert(a.concept_);
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (uint32_t d = 0; d < c.elems.size(); ++d) {
        for (const NormalAxiom& ax : kb.tbox) {
          auto has = [&](uint32_t e, ConceptId a) {
            return a == kTop || c.elems[e].concepts.count(a) > 0;
          };
          switch (ax.kind) {
            case NormalAxiom::Kind::ConjCI:
              if (has(d, ax.a1) && has(d, ax.a2) &&
                  !c.elems[d].concepts.count(ax.b)) {
                c.elems[d].concepts.insert(ax.b);
                changed = true;
              }
              break;
            case NormalAxiom::Kind::DiamCI:
              // untimed data: the pointwise consequence
              if (has(d, ax.a1) && !c.elems[d].concepts.count(ax.b)) {
                c.elems[d].concepts.insert(ax.b);
                changed = true;
              }
              break;
            case NormalAxiom::Kind::ExistsRHS:
              if (has(d, ax.a1) &&
                  !c.elems[d].out[ax.r].count(c.witnessOf(ax.b))) {
                c.elems[d].out[ax.r].insert(c.witnessOf(ax.b));
                changed = true;
              }
              break;
            case NormalAxiom::Kind::ExistsLHS: {
              auto it = c.elems[d].out.find(ax.r);
              if (it == c.elems[d].out.end()) break;
              for (uint32_t e : it->second) {
                if (has(e, ax.a1) && !c.elems[d].concepts.count(ax.b)) {
                  c.elems[d].concepts.insert(ax.b);
                  changed = true;
                }
              }
              break;
            }
            case NormalAxiom::Kind::RoleCI: {
              auto it = c.elems[d].out.find(ax.r);
              if (it == c.elems[d].out.end()) break;
              for (uint32_t e : std::set<uint32_t>(it->second)) {
                if (!c.elems[d].out[ax.s].count(e)) {
                  c.elems[d].out[ax.s].insert(e);
                  changed = true;
                }
              }
              break;
            }
          }
        }
        // An edge into an element holding bot contradicts d's existence.
        for (const auto& [r, succs] : c.elems[d].out) {
          (void)r;
          for (uint32_t e : succs) {
            if (c.elems[e].concepts.count(kBot) &&
                !c.elems[d].concepts.count(kBot)) {
              c.elems[d].concepts.insert(kBot);
              changed = true;
            }
          }
        }
      }
    }
    for (uint32_t d = 0; d < c.namedCount; ++d) {
      if (c.elems[d].concepts.count(kBot)) c.inconsistent = true;
    }
    return c;
  }
};

// T |= a SUB b via the witness element of a in the least model.
inline bool chaseSubsumes(const KnowledgeBase& kb, ConceptId a, ConceptId b,
                          int = 0) {
  if (a == b || b == kTop) return true;
  NaiveChase c = NaiveChase::run(kb, {});
  const auto& memb = c.elems[c.witnessOf(a)].concepts;
  if (memb.count(kBot)) return true;  // a is unsatisfiable
  return memb.count(b) > 0;
}

// K |= A(a) over an untimed ABox, via the chase.
inline std::set<ConceptId> chaseMemberships(const KnowledgeBase& kb,
                                            IndividualId ind) {
  NaiveChase c = NaiveChase::run(kb, kb.abox);
  return c.elems[ind].concepts;
}

}  // namespace mwq::testsupport
