#include "mwq/oracle.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "mwq/normalizer.hpp"

namespace mwq {
namespace {

int maxLeafVarCount(const MTNodePtr& n) {
  if (!n) return 0;
  if (n->kind == MTNode::Kind::Leaf) {
    return static_cast<int>(n->leaf.varNames.size());
  }
  return std::max(maxLeafVarCount(n->child1), maxLeafVarCount(n->child2));
}

void checkOracleGuards(const NCQ& q, const SubsumptionTable& table,
                       int depth) {
  require(q.isRooted(), ErrorKind::Refusal,
          "the oracle evaluates rooted queries only");
  if (!existentialsAcyclic(table)) {
    require(depth >= static_cast<int>(q.varNames.size()) + 1,
            ErrorKind::Refusal,
            "cyclic TBox: oracle depth below the locality bound");
  }
}

int effectiveDepth(const SubsumptionTable& table, int depth) {
  if (existentialsAcyclic(table)) {
    // The full model is finite; expand it completely.
    return std::max<int>(depth, static_cast<int>(table.conceptCount()) + 2);
  }
  return depth;
}

int64_t largestConvexBound(const KnowledgeBase& kb) {
  int64_t best = 0;
  for (const NormalAxiom& ax : kb.tbox) {
    if (ax.kind == NormalAxiom::Kind::DiamCI &&
        ax.op.kind == DiamondKind::ConvexN) {
      best = std::max(best, ax.op.n);
    }
  }
  return best;
}

// Naive Fig-2 evaluation over a materialized window of structures.
struct WindowEvaluator {
  const MTNCQ& query;
  int64_t lo, hi;  // extended window
  const std::vector<FiniteInterpretation>& structures;  // index = t - lo
  std::map<std::pair<const MTNode*, int64_t>, bool> memo;
  Tuple tuple;

  bool leafAt(const MTNode* node, int64_t t) {
    const FiniteInterpretation& interp = structures[t - lo];
    Tuple binding;
    for (uint32_t av : node->leaf.answerVars) {
      const std::string& name = node->leaf.varNames[av];
      auto it = std::find(query.answerVarNames.begin(),
                          query.answerVarNames.end(), name);
      binding.push_back(tuple[it - query.answerVarNames.begin()]);
    }
    return evalFilteredBound({node->leaf, {}}, interp, binding);
  }

  bool eval(const MTNode* node, int64_t t) {
    if (t < lo || t > hi) return false;  // clamped
    auto key = std::make_pair(node, t);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool v = false;
    using K = MTNode::Kind;
    switch (node->kind) {
      case K::Leaf: v = leafAt(node, t); break;
      case K::True: v = true; break;
      case K::False: v = false; break;
      case K::Not: v = !eval(node->child1.get(), t); break;
      case K::And:
        v = eval(node->child1.get(), t) && eval(node->child2.get(), t);
        break;
      case K::Or:
        v = eval(node->child1.get(), t) || eval(node->child2.get(), t);
        break;
      case K::Next: v = t + 1 <= hi && eval(node->child1.get(), t + 1); break;
      case K::Prev: v = t - 1 >= lo && eval(node->child1.get(), t - 1); break;
      case K::Until: {
        int64_t kHi = node->hi == kPosInf ? hi - t : node->hi;
        for (int64_t k = node->lo; k <= kHi && t + k <= hi; ++k) {
          if (!eval(node->child2.get(), t + k)) continue;
          bool guard = true;
          for (int64_t j = 0; j < k && guard; ++j) {
            guard = eval(node->child1.get(), t + j);
          }
          if (guard) {
            v = true;
            break;
          }
        }
        break;
      }
      case K::Since: {
        int64_t kHi = node->hi == kPosInf ? t - lo : node->hi;
        for (int64_t k = node->lo; k <= kHi && t - k >= lo; ++k) {
          if (!eval(node->child2.get(), t - k)) continue;
          bool guard = true;
          for (int64_t j = 0; j < k && guard; ++j) {
            guard = eval(node->child1.get(), t - j);
          }
          if (guard) {
            v = true;
            break;
          }
        }
        break;
      }
      case K::Dia:
      case K::Box: {
        bool isBox = node->kind == K::Box;
        int64_t from = node->lo == kNegInf ? lo : t + node->lo;
        int64_t to = node->hi == kPosInf ? hi : t + node->hi;
        from = std::max(from, lo);
        to = std::min(to, hi);
        v = isBox;
        for (int64_t p = from; p <= to; ++p) {
          bool c = eval(node->child1.get(), p);
          if (!isBox && c) {
            v = true;
            break;
          }
          if (isBox && !c) {
            v = false;
            break;
          }
        }
        break;
      }
    }
    memo[key] = v;
    return v;
  }
};

}  // namespace

std::set<Tuple> oracleAtemporal(const NCQ& q, const KnowledgeBase& kb,
                                int depth) {
  require(kb.normalized, ErrorKind::Internal, "oracle needs a normalized KB");
  require(kb.mode == KbMode::Atemporal, ErrorKind::Validation,
          "oracleAtemporal expects an atemporal KB");
  q.validateGuardedness();
  SubsumptionTable table = classifyForQueries(kb);
  checkOracleGuards(q, table, depth);
  FiniteInterpretation named = buildNamedPart(kb, table);
  FiniteInterpretation expanded =
      expandCanonical(kb, table, named, effectiveDepth(table, depth));
  return evalNCQDirect(q, expanded);
}

std::map<Tuple, IntervalSet> oracleTemporal(const MTNCQ& q,
                                            const KnowledgeBase& kb,
                                            int64_t window, int depth) {
  require(kb.normalized, ErrorKind::Internal, "oracle needs a normalized KB");
  require(kb.mode == KbMode::Temporal, ErrorKind::Validation,
          "oracleTemporal expects a temporal KB");
  SubsumptionTable table = classifyForQueries(kb);

  int maxVars = maxLeafVarCount(q.root);
  require(q.allLeavesRooted(), ErrorKind::Refusal,
          "the oracle evaluates rooted queries only");
  if (!existentialsAcyclic(table)) {
    require(depth >= maxVars + 1, ErrorKind::Refusal,
            "cyclic TBox: oracle depth below the locality bound");
  }
  int useDepth = effectiveDepth(table, depth);
  std::function<void(const MTNodePtr&)> checkGuarded =
      [&](const MTNodePtr& n) {
        if (!n) return;
        if (n->kind == MTNode::Kind::Leaf) n->leaf.validateGuardedness();
        checkGuarded(n->child1);
        checkGuarded(n->child2);
      };
  checkGuarded(q.root);

  int64_t margin = computeNQuery(q) + largestConvexBound(kb) + 2;

  TemporalExtensionMap ext = saturate(kb, table);
  std::vector<int64_t> tem = kb.tem();
  require(!tem.empty(), ErrorKind::Validation,
          "no temporal data: the ABox has no time points");
  int64_t reportLo = tem.front() - window;
  int64_t reportHi = tem.back() + window;
  int64_t lo = reportLo - margin;
  int64_t hi = reportHi + margin;

  std::vector<FiniteInterpretation> structures;
  structures.reserve(static_cast<size_t>(hi - lo + 1));
  for (int64_t t = lo; t <= hi; ++t) {
    FiniteInterpretation named = snapshotFromExtensions(kb, ext, t);
    structures.push_back(expandCanonical(kb, table, named, useDepth));
  }

  size_t arity = q.answerVarNames.size();
  size_t individuals = kb.individuals.size();
  std::map<Tuple, IntervalSet> out;
  auto evalTuple = [&](const Tuple& tuple) {
    WindowEvaluator we{q, lo, hi, structures, {}, tuple};
    std::vector<Interval> raw;
    for (int64_t t = reportLo; t <= reportHi; ++t) {
      if (we.eval(q.root.get(), t)) raw.push_back({t, t});
    }
    IntervalSet points = IntervalSet::make(std::move(raw));
    if (!points.isEmpty()) out.emplace(tuple, std::move(points));
  };
  if (arity == 0) {
    evalTuple({});
    return out;
  }
  if (individuals == 0) return out;
  std::vector<IndividualId> tuple(arity, 0);
  for (;;) {
    evalTuple(tuple);
    size_t pos = 0;
    while (pos < arity) {
      if (++tuple[pos] < individuals) break;
      tuple[pos] = 0;
      ++pos;
    }
    if (pos == arity) break;
  }
  return out;
}

bool endomorphismTest(const FiniteInterpretation& interp) {
  size_t n = interp.elements.size();
  require(n <= 64, ErrorKind::Refusal,
          "endomorphism search limited to 64 elements");
  // Named elements are fixed; anonymous ones may map anywhere that
  // preserves memberships and edges.
  std::vector<uint32_t> image(n);
  for (uint32_t e = 0; e < n; ++e) image[e] = e;

  std::vector<uint32_t> anon;
  for (uint32_t e = static_cast<uint32_t>(interp.namedCount); e < n; ++e) {
    anon.push_back(e);
  }

  // Check all edges/memberships under a candidate total image.
  auto consistentSoFar = [&](const std::vector<std::optional<uint32_t>>& img) {
    for (uint32_t d = 0; d < n; ++d) {
      if (!img[d]) continue;
      for (ConceptId c : interp.elements[d].concepts) {
        if (!interp.hasConcept(*img[d], c)) return false;
      }
      for (const auto& [r, e] : interp.elements[d].out) {
        if (!img[e]) continue;
        if (!interp.hasEdge(*img[d], r, *img[e])) return false;
      }
    }
    return true;
  };

  std::vector<std::optional<uint32_t>> img(n);
  for (uint32_t e = 0; e < interp.namedCount; ++e) img[e] = e;

  bool nonIdentity = false;
  std::function<void(size_t)> search = [&](size_t idx) {
    if (nonIdentity) return;
    if (idx == anon.size()) {
      for (uint32_t e : anon) {
        if (*img[e] != e) {
          nonIdentity = true;
          return;
        }
      }
      return;
    }
    uint32_t d = anon[idx];
    for (uint32_t target = 0; target < n; ++target) {
      img[d] = target;
      if (consistentSoFar(img)) search(idx + 1);
      img[d] = std::nullopt;
      if (nonIdentity) return;
    }
  };
  search(0);
  return !nonIdentity;
}

// --- random instances ---------------------------------------------------

namespace {

struct Generator {
  std::mt19937_64 rng;
  const GenLimits& limits;

  explicit Generator(uint64_t seed, const GenLimits& l)
      : rng(seed), limits(l) {}

  int uniform(int lo, int hi) {  // inclusive
    return static_cast<int>(
        std::uniform_int_distribution<int>(lo, hi)(rng));
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  }

  KnowledgeBase makeKb() {
    KnowledgeBase kb;
    int nc = uniform(2, limits.maxConcepts);
    int nr = uniform(1, limits.maxRoles);
    int ni = uniform(1, limits.maxIndividuals);
    std::vector<ConceptId> concepts;
    std::vector<RoleId> roles;
    std::vector<IndividualId> inds;
    for (int i = 0; i < nc; ++i) {
      concepts.push_back(kb.concepts.intern("A" + std::to_string(i)));
    }
    for (int i = 0; i < nr; ++i) {
      roles.push_back(kb.roles.intern("r" + std::to_string(i)));
    }
    for (int i = 0; i < ni; ++i) {
      inds.push_back(kb.individuals.intern("a" + std::to_string(i)));
    }
    auto concept_ = [&] { return concepts[uniform(0, nc - 1)]; };
    auto role = [&] { return roles[uniform(0, nr - 1)]; };
    auto ind = [&] { return inds[uniform(0, ni - 1)]; };
    auto nameOf = [&](ConceptId c) { return Concept::mkName(c); };

    int axioms = uniform(1, limits.maxAxioms);
    for (int i = 0; i < axioms; ++i) {
      // bot on the right stays rare so most KBs are consistent.
      ConceptPtr rhs = chance(0.04) ? Concept::mkName(kBot)
                                    : nameOf(concept_());
      switch (uniform(0, limits.temporal ? 5 : 4)) {
        case 0:
          kb.rawCis.push_back({nameOf(concept_()), rhs});
          break;
        case 1:
          kb.rawCis.push_back(
              {Concept::mkAnd(nameOf(concept_()), nameOf(concept_())), rhs});
          break;
        case 2:
          kb.rawCis.push_back(
              {nameOf(concept_()),
               Concept::mkExists(role(), nameOf(concept_()))});
          break;
        case 3:
          kb.rawCis.push_back(
              {Concept::mkExists(role(), nameOf(concept_())), rhs});
          break;
        case 4:
          kb.rawRoleCis.emplace_back(role(), role());
          break;
        case 5: {
          DiamondOp op;
          switch (uniform(0, 3)) {
            case 0: op = DiamondOp::past(); break;
            case 1: op = DiamondOp::future(); break;
            case 2: op = DiamondOp::convex(); break;
            case 3: op = DiamondOp::convexN(uniform(2, 8)); break;
          }
          if (chance(0.12)) op = DiamondOp::anyTime();
          kb.rawCis.push_back({Concept::mkDiam(op, nameOf(concept_())), rhs});
          break;
        }
      }
    }

    std::vector<int64_t> times;
    if (limits.temporal) {
      int nt = uniform(1, limits.maxTimePoints);
      std::set<int64_t> chosen;
      while (static_cast<int>(chosen.size()) < nt) {
        chosen.insert(uniform(-12, 12));
      }
      times.assign(chosen.begin(), chosen.end());
    }
    auto sampleTime = [&]() -> std::optional<int64_t> {
      if (!limits.temporal) return std::nullopt;
      return times[uniform(0, static_cast<int>(times.size()) - 1)];
    };

    int assertions = uniform(1, 2 * ni);
    for (int i = 0; i < assertions; ++i) {
      Assertion a;
      if (chance(0.4) && nr > 0) {
        a.isRole = true;
        a.role = role();
        a.subject = ind();
        a.object = ind();
      } else {
        a.concept_ = concept_();
        a.subject = ind();
      }
      a.time = sampleTime();
      kb.addAssertion(a);
    }
    if (limits.temporal) kb.mode = KbMode::Temporal;
    normalize(kb);
    return kb;
  }

  NCQ makeNcq(KnowledgeBase& kb, const std::vector<std::string>& answerVars,
              int maxAtoms) {
    NCQ q;
    std::map<std::string, uint32_t> varIds;
    auto var = [&](const std::string& name) {
      auto it = varIds.find(name);
      if (it != varIds.end()) return Term::var(it->second);
      uint32_t id = static_cast<uint32_t>(q.varNames.size());
      q.varNames.push_back(name);
      varIds.emplace(name, id);
      return Term::var(id);
    };
    std::vector<Term> terms;
    for (const std::string& av : answerVars) {
      Term t = var(av);
      q.answerVars.push_back(t.id);
      terms.push_back(t);
    }
    if (terms.empty()) {
      // Boolean query rooted at a constant.
      terms.push_back(Term::ind(uniform(0,
          static_cast<int>(kb.individuals.size()) - 1)));
    }
    // Every answer-var/constant root gets a positive atom.
    for (Term t : terms) {
      QAtom a;
      a.pred = pickConcept(kb);
      a.t1 = t;
      q.atoms.push_back(a);
    }
    int extra =
        uniform(0, std::max(0, maxAtoms - static_cast<int>(terms.size())));
    int freshCounter = 0;
    for (int i = 0; i < extra; ++i) {
      int kind = uniform(0, 3);
      Term anchor = terms[uniform(0, static_cast<int>(terms.size()) - 1)];
      if (kind == 0) {
        // extend the tree with a fresh variable
        Term fresh = var("y" + std::to_string(freshCounter++));
        QAtom r;
        r.isRole = true;
        r.pred = pickRole(kb);
        r.t1 = anchor;
        r.t2 = fresh;
        q.atoms.push_back(r);
        QAtom c;
        c.pred = pickConcept(kb);
        c.t1 = fresh;
        q.atoms.push_back(c);
        terms.push_back(fresh);
      } else if (kind == 1) {
        QAtom c;
        c.pred = pickConcept(kb);
        c.t1 = anchor;
        q.atoms.push_back(c);
      } else if (kind == 2) {
        QAtom c;
        c.negated = true;
        c.pred = pickConcept(kb);
        c.t1 = anchor;
        q.atoms.push_back(c);
      } else {
        // negated role parallel to an existing positive role atom
        std::vector<const QAtom*> posRoles;
        for (const QAtom& a : q.atoms) {
          if (a.isRole && !a.negated) posRoles.push_back(&a);
        }
        if (posRoles.empty()) continue;
        const QAtom* base = posRoles[uniform(
            0, static_cast<int>(posRoles.size()) - 1)];
        QAtom neg;
        neg.isRole = true;
        neg.negated = true;
        neg.pred = pickRole(kb);
        neg.t1 = base->t1;
        neg.t2 = base->t2;
        if (neg.pred == base->pred) continue;  // would be unsatisfiable
        q.atoms.push_back(neg);
      }
    }
    std::sort(q.atoms.begin(), q.atoms.end());
    q.atoms.erase(std::unique(q.atoms.begin(), q.atoms.end()), q.atoms.end());
    return q;
  }

  ConceptId pickConcept(const KnowledgeBase& kb) {
    // Prefer TBox concepts so queries interact with the ontology.
    int nc = static_cast<int>(kb.concepts.size());
    for (int tries = 0; tries < 8; ++tries) {
      ConceptId c = static_cast<ConceptId>(uniform(0, nc - 1));
      if (c == kTop || c == kBot || kb.isFresh(c)) continue;
      return c;
    }
    return kb.concepts.find("A0").value();
  }

  RoleId pickRole(const KnowledgeBase& kb) {
    int nr = static_cast<int>(kb.roles.size());
    return static_cast<RoleId>(uniform(0, nr - 1));
  }

  MTNodePtr makeTemporalTree(KnowledgeBase& kb,
                             const std::vector<std::string>& answerVars,
                             int opsBudget) {
    if (opsBudget == 0 || chance(0.35)) {
      return MTNode::mkLeaf(makeNcq(kb, answerVars,
                                    limits.maxQueryAtoms / 2 + 1));
    }
    int pick = uniform(0, 6);
    auto sub = [&](int budget) {
      return makeTemporalTree(kb, answerVars, budget);
    };
    int64_t lo = uniform(0, 4);
    int64_t hi = lo + uniform(0, 4);
    switch (pick) {
      case 0:
        return MTNode::mkTemporal(MTNode::Kind::Until, lo,
                                  chance(0.2) ? kPosInf : hi,
                                  sub(0), sub(opsBudget - 1));
      case 1:
        return MTNode::mkTemporal(MTNode::Kind::Since, lo,
                                  chance(0.2) ? kPosInf : hi,
                                  sub(0), sub(opsBudget - 1));
      case 2: {
        int64_t blo = uniform(-4, 2);
        int64_t bhi = blo + uniform(0, 4);
        return MTNode::mkTemporal(MTNode::Kind::Box,
                                  chance(0.12) ? kNegInf : blo,
                                  chance(0.12) ? kPosInf : bhi,
                                  sub(opsBudget - 1), nullptr);
      }
      case 3: {
        int64_t blo = uniform(-4, 2);
        int64_t bhi = blo + uniform(0, 4);
        return MTNode::mkTemporal(MTNode::Kind::Dia,
                                  chance(0.12) ? kNegInf : blo,
                                  chance(0.12) ? kPosInf : bhi,
                                  sub(opsBudget - 1), nullptr);
      }
      case 4:
        return MTNode::mkUnary(chance(0.5) ? MTNode::Kind::Next
                                           : MTNode::Kind::Prev,
                               sub(opsBudget - 1));
      case 5:
        return MTNode::mkBinary(MTNode::Kind::And, sub(opsBudget - 1),
                                sub(0));
      default:
        return MTNode::mkUnary(MTNode::Kind::Not, sub(opsBudget - 1));
    }
  }
};

}  // namespace

GenInstance randomInstance(uint64_t seed, const GenLimits& limits) {
  Generator gen(seed, limits);
  GenInstance out;
  for (int attempt = 1; attempt <= 64; ++attempt) {
    KnowledgeBase kb = gen.makeKb();
    if (!checkConsistency(kb).consistent) continue;

    MTNCQ query;
    int arity = gen.chance(0.15) ? 0 : (gen.chance(0.8) ? 1 : 2);
    for (int i = 0; i < arity; ++i) {
      query.answerVarNames.push_back("x" + std::to_string(i));
    }
    if (limits.temporal) {
      query.root = gen.makeTemporalTree(kb, query.answerVarNames,
                                        limits.maxTemporalOps);
    } else {
      query.root = MTNode::mkLeaf(
          gen.makeNcq(kb, query.answerVarNames, limits.maxQueryAtoms));
    }
    if (!query.allLeavesRooted()) continue;
    bool guarded = true;
    try {
      std::function<void(const MTNodePtr&)> check =
          [&](const MTNodePtr& n) {
            if (!n) return;
            if (n->kind == MTNode::Kind::Leaf) n->leaf.validateGuardedness();
            check(n->child1);
            check(n->child2);
          };
      check(query.root);
    } catch (const Error&) {
      guarded = false;
    }
    if (!guarded) continue;

    out.kb = std::move(kb);
    out.query = std::move(query);
    out.attempts = attempt;
    return out;
  }
  fail(ErrorKind::Internal, "random instance generation did not converge");
}

}  // namespace mwq
