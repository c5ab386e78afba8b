#include "mwq/eval.hpp"

#include <algorithm>
#include <optional>

namespace mwq {
namespace {

struct Matcher {
  const FilteredQuery& q;
  const FiniteInterpretation& interp;
  std::vector<std::optional<uint32_t>> binding;  // var -> element
  std::vector<const QAtom*> positives;
  std::set<Tuple> answers;
  bool stopAtFirst = false;
  bool found = false;

  Matcher(const FilteredQuery& query, const FiniteInterpretation& i)
      : q(query), interp(i) {
    binding.resize(q.ncq.varNames.size());
    for (const QAtom& a : q.ncq.atoms) {
      if (!a.negated) positives.push_back(&a);
    }
  }

  std::optional<uint32_t> resolve(const Term& t) const {
    if (!t.isVar) return t.id;
    return binding[t.id];
  }

  bool atomHolds(const QAtom& a) const {
    auto e1 = resolve(a.t1);
    if (a.isRole) {
      auto e2 = resolve(a.t2);
      bool holds = interp.hasEdge(*e1, a.pred, *e2);
      return a.negated ? !holds : holds;
    }
    bool holds = interp.hasConcept(*e1, a.pred);
    return a.negated ? !holds : holds;
  }

  bool negativesHold() const {
    for (const QAtom& a : q.ncq.atoms) {
      if (a.negated && !atomHolds(a)) return false;
    }
    return true;
  }

  bool filterHolds(const Filter& f, uint32_t subject) const {
    // premise: exists z'. s(z,z') & N(z')
    bool premise = false;
    for (uint32_t succ : interp.successors(subject, f.role)) {
      if (interp.hasConcept(succ, f.filler)) {
        premise = true;
        break;
      }
    }
    if (!premise) return true;
    for (uint32_t succ : interp.successors(subject, f.role)) {
      if (!interp.hasConcept(succ, f.filler)) continue;
      bool ok = true;
      for (ConceptId c : f.negConcepts) {
        if (interp.hasConcept(succ, c)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        for (RoleId r : f.negRoles) {
          if (interp.hasEdge(subject, r, succ)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        for (const Filter& nested : f.nested) {
          if (!filterHolds(nested, succ)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) return true;
    }
    return false;
  }

  bool filtersHold() const {
    for (const Filter& f : q.filters) {
      auto subject = resolve(f.subject);
      if (!filterHolds(f, *subject)) return false;
    }
    return true;
  }

  void onMatch() {
    if (!negativesHold() || !filtersHold()) return;
    Tuple tuple;
    for (uint32_t av : q.ncq.answerVars) {
      uint32_t e = *binding[av];
      if (!interp.isNamed(e)) return;  // answers are named individuals only
      tuple.push_back(e);
    }
    answers.insert(std::move(tuple));
    found = true;
  }

  // Picks the unmatched positive atom with the fewest unbound variables.
  void search(std::vector<const QAtom*> pending) {
    if (stopAtFirst && found) return;
    if (pending.empty()) {
      // Guardedness ensures every variable occurs in some positive atom,
      // so the binding is total here.
      onMatch();
      return;
    }
    size_t bestIdx = 0;
    int bestUnbound = 3;
    for (size_t i = 0; i < pending.size(); ++i) {
      const QAtom* a = pending[i];
      int unbound = 0;
      if (a->t1.isVar && !binding[a->t1.id]) ++unbound;
      if (a->isRole && a->t2.isVar && !binding[a->t2.id]) ++unbound;
      if (unbound < bestUnbound) {
        bestUnbound = unbound;
        bestIdx = i;
      }
      if (bestUnbound == 0) break;
    }
    const QAtom* atom = pending[bestIdx];
    pending.erase(pending.begin() + bestIdx);

    auto e1 = resolve(atom->t1);
    if (!atom->isRole) {
      if (e1) {
        if (interp.hasConcept(*e1, atom->pred)) search(pending);
        return;
      }
      for (uint32_t e = 0; e < interp.elements.size(); ++e) {
        if (!interp.hasConcept(e, atom->pred)) continue;
        binding[atom->t1.id] = e;
        search(pending);
        binding[atom->t1.id] = std::nullopt;
        if (stopAtFirst && found) return;
      }
      return;
    }

    auto e2 = resolve(atom->t2);
    if (e1 && e2) {
      if (interp.hasEdge(*e1, atom->pred, *e2)) search(pending);
      return;
    }
    if (e1) {
      for (uint32_t succ : interp.successors(*e1, atom->pred)) {
        if (atom->t2.isVar && atom->t1.isVar && atom->t1.id == atom->t2.id &&
            succ != *e1) {
          continue;
        }
        binding[atom->t2.id] = succ;
        search(pending);
        binding[atom->t2.id] = std::nullopt;
        if (stopAtFirst && found) return;
      }
      return;
    }
    if (e2) {
      for (uint32_t d = 0; d < interp.elements.size(); ++d) {
        if (!interp.hasEdge(d, atom->pred, *e2)) continue;
        binding[atom->t1.id] = d;
        search(pending);
        binding[atom->t1.id] = std::nullopt;
        if (stopAtFirst && found) return;
      }
      return;
    }
    for (uint32_t d = 0; d < interp.elements.size(); ++d) {
      for (uint32_t succ : interp.successors(d, atom->pred)) {
        if (atom->t1.id == atom->t2.id && succ != d) continue;
        binding[atom->t1.id] = d;
        binding[atom->t2.id] = succ;
        search(pending);
        binding[atom->t1.id] = std::nullopt;
        binding[atom->t2.id] = std::nullopt;
        if (stopAtFirst && found) return;
      }
    }
  }

  void run() {
    // Constants must exist in the domain (standard names over I_A).
    for (const QAtom& a : q.ncq.atoms) {
      for (const Term* t : {&a.t1, a.isRole ? &a.t2 : nullptr}) {
        if (t && !t->isVar) {
          require(t->id < interp.namedCount, ErrorKind::Validation,
                  "query mentions an individual outside the KB");
        }
      }
    }
    search(positives);
  }
};

}  // namespace

std::set<Tuple> evalFiltered(const FilteredQuery& q,
                             const FiniteInterpretation& interp) {
  Matcher m(q, interp);
  m.run();
  return std::move(m.answers);
}

bool evalFilteredBound(const FilteredQuery& q,
                       const FiniteInterpretation& interp,
                       const Tuple& answerBinding) {
  require(answerBinding.size() == q.ncq.answerVars.size(),
          ErrorKind::Internal, "answer binding arity mismatch");
  Matcher m(q, interp);
  for (size_t i = 0; i < answerBinding.size(); ++i) {
    m.binding[q.ncq.answerVars[i]] = answerBinding[i];
  }
  m.stopAtFirst = true;
  m.run();
  return m.found;
}

std::set<Tuple> evalNCQDirect(const NCQ& q,
                              const FiniteInterpretation& interp) {
  return evalFiltered({q, {}}, interp);
}

std::set<Tuple> mwaAtemporal(const NCQ& q, const KnowledgeBase& kb) {
  require(kb.normalized, ErrorKind::Internal,
          "mwaAtemporal needs a normalized KB");
  SubsumptionTable table = classifyForQueries(kb);
  FiniteInterpretation named = buildNamedPart(kb, table);
  RewriteResult rew = allRewritings(q, table);
  std::set<Tuple> out;
  for (const FilteredQuery& fq : rew.queries) {
    std::set<Tuple> part = evalFiltered(fq, named);
    out.insert(part.begin(), part.end());
  }
  return out;
}

}  // namespace mwq
