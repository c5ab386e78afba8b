#include "mwq/rewriter.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace mwq {
namespace {

// --- canonical keys (renaming-invariant, id-based) ---------------------------

struct Canonicalizer {
  const FilteredQuery& q;
  std::map<uint32_t, int> labels;  // quantified var -> dense label

  explicit Canonicalizer(const FilteredQuery& query) : q(query) {
    assignLabels();
  }

  std::string termKey(const Term& t) const {
    if (!t.isVar) return "i" + std::to_string(t.id);
    for (size_t i = 0; i < q.ncq.answerVars.size(); ++i) {
      if (q.ncq.answerVars[i] == t.id) return "a" + std::to_string(i);
    }
    auto it = labels.find(t.id);
    if (it == labels.end()) return "q?";
    return "q" + std::to_string(it->second);
  }

  std::string atomKey(const QAtom& a) const {
    std::string s = a.negated ? "n" : "p";
    s += a.isRole ? "r" : "c";
    s += std::to_string(a.pred) + "(" + termKey(a.t1);
    if (a.isRole) s += "," + termKey(a.t2);
    return s + ")";
  }

  void assignLabels() {
    std::vector<const QAtom*> pending;
    for (const QAtom& a : q.ncq.atoms) pending.push_back(&a);
    int next = 0;
    auto unlabeled = [&](const QAtom* a) {
      int c = 0;
      if (a->t1.isVar && !q.ncq.isAnswerVar(a->t1.id) &&
          !labels.count(a->t1.id)) {
        ++c;
      }
      if (a->isRole && a->t2.isVar && !q.ncq.isAnswerVar(a->t2.id) &&
          !labels.count(a->t2.id)) {
        ++c;
      }
      return c;
    };
    while (!pending.empty()) {
      auto best = pending.end();
      std::pair<int, std::string> bestKey;
      for (auto it = pending.begin(); it != pending.end(); ++it) {
        std::pair<int, std::string> key{unlabeled(*it), atomKey(**it)};
        if (best == pending.end() || key < bestKey) {
          best = it;
          bestKey = key;
        }
      }
      const QAtom* a = *best;
      for (const Term* t : {&a->t1, a->isRole ? &a->t2 : nullptr}) {
        if (t && t->isVar && !q.ncq.isAnswerVar(t->id) && !labels.count(t->id)) {
          labels[t->id] = next++;
        }
      }
      pending.erase(best);
    }
  }

  std::string filterKey(const Filter& f) const {
    std::string s = "F[" + termKey(f.subject) + ";" + std::to_string(f.role) +
                    ";" + std::to_string(f.filler) + ";";
    std::vector<ConceptId> ncs = f.negConcepts;
    std::sort(ncs.begin(), ncs.end());
    ncs.erase(std::unique(ncs.begin(), ncs.end()), ncs.end());
    for (ConceptId c : ncs) s += "!" + std::to_string(c) + ",";
    s += ";";
    std::vector<RoleId> nrs = f.negRoles;
    std::sort(nrs.begin(), nrs.end());
    nrs.erase(std::unique(nrs.begin(), nrs.end()), nrs.end());
    for (RoleId r : nrs) s += "!" + std::to_string(r) + ",";
    s += ";";
    std::vector<std::string> nested;
    for (const Filter& n : f.nested) nested.push_back(filterKey(n));
    std::sort(nested.begin(), nested.end());
    for (const std::string& n : nested) s += n;
    return s + "]";
  }

  std::string key() const {
    std::vector<std::string> parts;
    for (const QAtom& a : q.ncq.atoms) parts.push_back(atomKey(a));
    std::sort(parts.begin(), parts.end());
    std::string s = "A" + std::to_string(q.ncq.answerVars.size()) + ":";
    for (const std::string& p : parts) s += p + "&";
    std::vector<std::string> fs;
    for (const Filter& f : q.filters) fs.push_back(filterKey(f));
    std::sort(fs.begin(), fs.end());
    for (const std::string& f : fs) s += f;
    return s;
  }
};

std::string canonicalKey(const FilteredQuery& q) {
  return Canonicalizer(q).key();
}

bool locallyUnsatisfiable(const FilteredQuery& q,
                          const SubsumptionTable& table) {
  for (const QAtom& pos : q.ncq.atoms) {
    if (pos.negated) continue;
    for (const QAtom& neg : q.ncq.atoms) {
      if (!neg.negated || neg.isRole != pos.isRole) continue;
      if (!(pos.t1 == neg.t1)) continue;
      if (pos.isRole && !(pos.t2 == neg.t2)) continue;
      bool entailed = pos.isRole ? table.roleSubsumes(pos.pred, neg.pred)
                                 : table.conceptSubsumes(pos.pred, neg.pred);
      if (entailed) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<RewriteChoice> applicableChoices(const FilteredQuery& q,
                                             const SubsumptionTable& table) {
  std::vector<RewriteChoice> out;
  const NCQ& ncq = q.ncq;
  for (uint32_t v = 0; v < ncq.varNames.size(); ++v) {
    if (ncq.isAnswerVar(v) || !ncq.isLeafVar(v)) continue;
    bool mentioned = false;
    std::vector<ConceptId> posConcepts, negConcepts;
    std::vector<RoleId> posInRoles, negInRoles;
    for (const QAtom& a : ncq.atoms) {
      if (!a.isRole && a.t1.isVar && a.t1.id == v) {
        (a.negated ? negConcepts : posConcepts).push_back(a.pred);
        mentioned = true;
      }
      if (a.isRole && a.t2.isVar && a.t2.id == v) {
        (a.negated ? negInRoles : posInRoles).push_back(a.pred);
        mentioned = true;
      }
    }
    if (!mentioned) continue;
    for (RoleId s : table.tboxRoles()) {
      for (ConceptId n : table.tboxConcepts()) {
        if (n == kTop || n == kBot) continue;
        bool ok = true;
        for (RoleId r : posInRoles) ok = ok && table.roleSubsumes(s, r);
        for (ConceptId a : posConcepts) {
          ok = ok && table.conceptSubsumes(n, a);
        }
        for (RoleId r : negInRoles) ok = ok && !table.roleSubsumes(s, r);
        for (ConceptId a : negConcepts) {
          ok = ok && !table.conceptSubsumes(n, a);
        }
        if (!ok) continue;
        for (ConceptId m : table.tboxConcepts()) {
          if (m == kTop || m == kBot) continue;
          if (table.entailsExists(m, s, n)) {
            out.push_back({v, m, s, n});
          }
        }
      }
    }
  }
  return out;
}

std::optional<FilteredQuery> rewriteStep(const FilteredQuery& q,
                                         const RewriteChoice& choice,
                                         const SubsumptionTable& table) {
  const NCQ& ncq = q.ncq;
  uint32_t xhat = choice.leafVar;

  // Predecessors of xhat, split into variables and anchor terms.
  std::set<uint32_t> predVars;
  std::set<IndividualId> predConstants;
  std::vector<ConceptId> negConcepts;
  std::vector<RoleId> negRoles;
  for (const QAtom& a : ncq.atoms) {
    if (a.isRole && a.t2.isVar && a.t2.id == xhat) {
      if (a.t1.isVar) {
        predVars.insert(a.t1.id);
      } else {
        predConstants.insert(a.t1.id);
      }
      if (a.negated) negRoles.push_back(a.pred);
    }
    if (!a.isRole && a.negated && a.t1.isVar && a.t1.id == xhat) {
      negConcepts.push_back(a.pred);
    }
  }
  std::set<uint32_t> answerPreds;
  for (uint32_t y : predVars) {
    if (ncq.isAnswerVar(y)) answerPreds.insert(y);
  }
  // The merged predecessor must be a single term; two distinct rigid
  // anchors would need an equality atom.
  if (predConstants.size() + answerPreds.size() > 1) return std::nullopt;

  // Concepts whose induced witness would satisfy one of the negated atoms;
  // their negations keep the exclusion criteria alive after the merge.
  std::set<ConceptId> mPrime;
  for (ConceptId m2 : table.tboxConcepts()) {
    if (m2 == kTop || m2 == kBot || table.unsatisfiable(m2)) continue;
    bool found = false;
    for (RoleId s2 : table.tboxRoles()) {
      if (found) break;
      if (!table.roleSubsumes(s2, choice.s)) continue;
      for (ConceptId n2 : table.tboxConcepts()) {
        if (n2 == kTop || n2 == kBot) continue;
        if (!table.conceptSubsumes(n2, choice.n)) continue;
        if (!table.entailsExists(m2, s2, n2)) continue;
        bool hitsNeg = false;
        for (ConceptId a : negConcepts) {
          hitsNeg = hitsNeg || table.conceptSubsumes(n2, a);
        }
        for (RoleId r : negRoles) {
          hitsNeg = hitsNeg || table.roleSubsumes(s2, r);
        }
        if (hitsNeg) {
          found = true;
          break;
        }
      }
    }
    if (found) mPrime.insert(m2);
  }

  FilteredQuery out;

  // Representative for the merged predecessors.
  Term rep;
  bool repIsFreshVar = false;
  if (!predConstants.empty()) {
    rep = Term::ind(*predConstants.begin());
  } else if (!answerPreds.empty()) {
    rep = Term::var(*answerPreds.begin());  // remapped below
  } else {
    repIsFreshVar = true;
  }

  // Variable remap: drop xhat, merge predVars into rep.
  std::map<uint32_t, Term> remap;
  std::vector<std::string> newVarNames;
  auto internOldVar = [&](uint32_t old) {
    uint32_t id = static_cast<uint32_t>(newVarNames.size());
    newVarNames.push_back(ncq.varNames[old]);
    return Term::var(id);
  };
  for (uint32_t v = 0; v < ncq.varNames.size(); ++v) {
    if (v == xhat) continue;
    bool isRepVar = rep.isVar && !repIsFreshVar && v == rep.id;
    if (predVars.count(v) && !isRepVar) continue;  // merged below
    remap.emplace(v, internOldVar(v));
  }
  Term repNew;
  if (repIsFreshVar) {
    int k = 0;
    std::string name;
    do {
      name = "v" + std::to_string(k++);
    } while (std::find(newVarNames.begin(), newVarNames.end(), name) !=
             newVarNames.end());
    uint32_t id = static_cast<uint32_t>(newVarNames.size());
    newVarNames.push_back(name);
    repNew = Term::var(id);
  } else if (rep.isVar) {
    repNew = remap.at(rep.id);
  } else {
    repNew = rep;
  }
  for (uint32_t y : predVars) {
    if (!repIsFreshVar && rep.isVar && y == rep.id) continue;
    remap.emplace(y, repNew);
  }

  auto mapTerm = [&](const Term& t) {
    if (!t.isVar) return t;
    return remap.at(t.id);
  };

  out.ncq.varNames = newVarNames;
  for (uint32_t av : ncq.answerVars) {
    Term t = remap.at(av);
    require(t.isVar, ErrorKind::Internal, "answer variable merged away");
    out.ncq.answerVars.push_back(t.id);
  }

  // Drop the eliminated variable's atoms and merge its predecessors.
  std::set<QAtom> newAtoms;
  auto mentionsXhat = [&](const QAtom& a) {
    return (a.t1.isVar && a.t1.id == xhat) ||
           (a.isRole && a.t2.isVar && a.t2.id == xhat);
  };
  for (const QAtom& a : ncq.atoms) {
    if (mentionsXhat(a)) continue;
    QAtom b = a;
    b.t1 = mapTerm(a.t1);
    if (a.isRole) b.t2 = mapTerm(a.t2);
    newAtoms.insert(b);
  }
  // The generating concept and the blocked alternatives.
  QAtom mAtom;
  mAtom.pred = choice.m;
  mAtom.t1 = repNew;
  newAtoms.insert(mAtom);
  for (ConceptId m2 : mPrime) {
    QAtom a;
    a.negated = true;
    a.pred = m2;
    a.t1 = repNew;
    newAtoms.insert(a);
  }
  out.ncq.atoms.assign(newAtoms.begin(), newAtoms.end());

  // Assemble the new filter; filters displaced from the eliminated
  // variable nest under it.
  Filter star;
  star.subject = repNew;
  star.role = choice.s;
  star.filler = choice.n;
  std::sort(negConcepts.begin(), negConcepts.end());
  negConcepts.erase(std::unique(negConcepts.begin(), negConcepts.end()),
                    negConcepts.end());
  std::sort(negRoles.begin(), negRoles.end());
  negRoles.erase(std::unique(negRoles.begin(), negRoles.end()),
                 negRoles.end());
  star.negConcepts = negConcepts;
  star.negRoles = negRoles;
  for (const Filter& f : q.filters) {
    if (f.subject.isVar && f.subject.id == xhat) {
      star.nested.push_back(f);  // subject becomes the implicit z'
    }
  }
  for (const Filter& f : q.filters) {
    if (f.subject.isVar && f.subject.id == xhat) continue;
    Filter g = f;
    g.subject = mapTerm(f.subject);
    out.filters.push_back(g);
  }
  out.filters.push_back(star);

  if (locallyUnsatisfiable(out, table)) return std::nullopt;
  return out;
}

RewriteResult allRewritings(const NCQ& q, const SubsumptionTable& table,
                            int boundBump) {
  q.validateGuardedness();
  RewriteResult result;
  int nct = static_cast<int>(table.tboxConcepts().size());
  int nrt = static_cast<int>(table.tboxRoles().size());
  result.depthBound =
      static_cast<int>(q.varNames.size()) + nct * nct * nrt + boundBump;

  FilteredQuery start{q, {}};
  std::set<std::string> seen{canonicalKey(start)};
  std::deque<FilteredQuery> frontier{start};
  result.queries.push_back(start);

  while (!frontier.empty()) {
    FilteredQuery cur = std::move(frontier.front());
    frontier.pop_front();
    for (const RewriteChoice& choice : applicableChoices(cur, table)) {
      std::optional<FilteredQuery> next = rewriteStep(cur, choice, table);
      if (!next) continue;
      if (nestedFilterDepth(*next) > result.depthBound) {
        result.depthBoundHit = true;
        continue;
      }
      std::string key = canonicalKey(*next);
      if (!seen.insert(key).second) continue;
      result.queries.push_back(*next);
      frontier.push_back(std::move(*next));
    }
  }
  return result;
}

std::string canonicalQueryString(const KnowledgeBase& kb,
                                 const FilteredQuery& q) {
  Canonicalizer canon(q);
  // Render with names instead of ids so goldens stay readable.
  std::vector<std::string> parts;
  for (const QAtom& a : q.ncq.atoms) {
    std::string s = a.negated ? "!" : "";
    auto term = [&](const Term& t) {
      return t.isVar ? canon.termKey(t) : kb.individualName(t.id);
    };
    if (a.isRole) {
      s += kb.roleName(a.pred) + "(" + term(a.t1) + "," + term(a.t2) + ")";
    } else {
      s += kb.conceptName(a.pred) + "(" + term(a.t1) + ")";
    }
    parts.push_back(s);
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const std::string& p : parts) out += p + " & ";

  struct Render {
    const KnowledgeBase& kb;
    const Canonicalizer& canon;
    std::string filter(const Filter& f, const std::string& subj) const {
      std::string s = "[" + subj + " -> " + kb.roleName(f.role) + "." +
                      kb.conceptName(f.filler);
      std::vector<std::string> negs;
      for (ConceptId c : f.negConcepts) negs.push_back("!" + kb.conceptName(c));
      for (RoleId r : f.negRoles) negs.push_back("!~" + kb.roleName(r));
      std::sort(negs.begin(), negs.end());
      for (const std::string& n : negs) s += " " + n;
      std::vector<std::string> nested;
      for (const Filter& g : f.nested) nested.push_back(filter(g, "z"));
      std::sort(nested.begin(), nested.end());
      for (const std::string& n : nested) s += " " + n;
      return s + "]";
    }
  };
  Render render{kb, canon};
  std::vector<std::string> fs;
  for (const Filter& f : q.filters) {
    std::string subj = f.subject.isVar ? canon.termKey(f.subject)
                                       : kb.individualName(f.subject.id);
    fs.push_back(render.filter(f, subj));
  }
  std::sort(fs.begin(), fs.end());
  for (const std::string& f : fs) out += f + " ";
  return out;
}

}  // namespace mwq
