#include "mwq/query.hpp"

#include <algorithm>
#include <set>

namespace mwq {

bool NCQ::isAnswerVar(uint32_t v) const {
  return std::find(answerVars.begin(), answerVars.end(), v) !=
         answerVars.end();
}

bool NCQ::isLeafVar(uint32_t v) const {
  for (const QAtom& a : atoms) {
    if (a.isRole && a.t1.isVar && a.t1.id == v) return false;
  }
  return true;
}

bool NCQ::isRooted() const {
  std::set<uint32_t> reached(answerVars.begin(), answerVars.end());
  std::set<uint32_t> anchoredByConstant;
  for (const QAtom& a : atoms) {
    if (!a.isRole || a.negated) continue;
    if (!a.t1.isVar && a.t2.isVar) anchoredByConstant.insert(a.t2.id);
    if (!a.t2.isVar && a.t1.isVar) anchoredByConstant.insert(a.t1.id);
  }
  reached.insert(anchoredByConstant.begin(), anchoredByConstant.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const QAtom& a : atoms) {
      if (!a.isRole || a.negated || !a.t1.isVar || !a.t2.isVar) continue;
      if (reached.count(a.t1.id) && !reached.count(a.t2.id)) {
        reached.insert(a.t2.id);
        changed = true;
      }
      if (reached.count(a.t2.id) && !reached.count(a.t1.id)) {
        reached.insert(a.t1.id);
        changed = true;
      }
    }
  }
  for (uint32_t v = 0; v < varNames.size(); ++v) {
    if (!reached.count(v)) return false;
  }
  return true;
}

void NCQ::validateGuardedness() const {
  auto positivelyGuarded = [&](const Term& t) {
    for (const QAtom& a : atoms) {
      if (a.negated) continue;
      if (a.t1 == t || (a.isRole && a.t2 == t)) return true;
    }
    return false;
  };
  for (const QAtom& a : atoms) {
    if (!a.negated) continue;
    require(positivelyGuarded(a.t1), ErrorKind::Validation,
            "negated atom is not guarded by a positive atom");
    if (a.isRole) {
      require(positivelyGuarded(a.t2), ErrorKind::Validation,
              "negated atom is not guarded by a positive atom");
    }
  }
}

int filterDepth(const Filter& f) {
  int best = 0;
  for (const Filter& n : f.nested) best = std::max(best, filterDepth(n));
  return 1 + best;
}

int nestedFilterDepth(const FilteredQuery& q) {
  int best = 0;
  for (const Filter& f : q.filters) best = std::max(best, filterDepth(f));
  return best;
}

MTNodePtr MTNode::mkLeaf(NCQ q) {
  auto n = std::make_shared<MTNode>();
  n->kind = Kind::Leaf;
  n->leaf = std::move(q);
  return n;
}

MTNodePtr MTNode::mkConst(bool value) {
  auto n = std::make_shared<MTNode>();
  n->kind = value ? Kind::True : Kind::False;
  return n;
}

MTNodePtr MTNode::mkUnary(Kind k, MTNodePtr c) {
  auto n = std::make_shared<MTNode>();
  n->kind = k;
  n->child1 = std::move(c);
  return n;
}

MTNodePtr MTNode::mkBinary(Kind k, MTNodePtr l, MTNodePtr r) {
  auto n = std::make_shared<MTNode>();
  n->kind = k;
  n->child1 = std::move(l);
  n->child2 = std::move(r);
  return n;
}

MTNodePtr MTNode::mkTemporal(Kind k, int64_t lo, int64_t hi, MTNodePtr l,
                             MTNodePtr r) {
  auto n = std::make_shared<MTNode>();
  n->kind = k;
  n->lo = lo;
  n->hi = hi;
  n->child1 = std::move(l);
  n->child2 = std::move(r);
  return n;
}

static bool nodeTemporal(const MTNodePtr& n) {
  if (!n) return false;
  switch (n->kind) {
    case MTNode::Kind::Until:
    case MTNode::Kind::Since:
    case MTNode::Kind::Box:
    case MTNode::Kind::Dia:
    case MTNode::Kind::Next:
    case MTNode::Kind::Prev:
      return true;
    default:
      return nodeTemporal(n->child1) || nodeTemporal(n->child2);
  }
}

bool MTNCQ::isTemporal() const { return nodeTemporal(root); }

static bool leavesRooted(const MTNodePtr& n) {
  if (!n) return true;
  if (n->kind == MTNode::Kind::Leaf) return n->leaf.isRooted();
  return leavesRooted(n->child1) && leavesRooted(n->child2);
}

bool MTNCQ::allLeavesRooted() const { return leavesRooted(root); }

MTNodePtr expandDerived(const MTNodePtr& node) {
  using K = MTNode::Kind;
  if (!node) return node;
  MTNodePtr c1 = expandDerived(node->child1);
  MTNodePtr c2 = expandDerived(node->child2);
  switch (node->kind) {
    case K::Leaf:
    case K::True:
    case K::False:
      return node;
    case K::Not:
      return MTNode::mkUnary(K::Not, c1);
    case K::And:
    case K::Or:
      return MTNode::mkBinary(node->kind, c1, c2);
    case K::Until:
    case K::Since:
      return MTNode::mkTemporal(node->kind, node->lo, node->hi, c1, c2);
    case K::Next:
      return MTNode::mkTemporal(K::Until, 1, 1, MTNode::mkConst(true), c1);
    case K::Prev:
      return MTNode::mkTemporal(K::Since, 1, 1, MTNode::mkConst(true), c1);
    case K::Dia: {
      // dia_I f == (T S_{-(I cap (-inf,0])} f) or (T U_{I cap [0,inf)} f)
      MTNodePtr out;
      if (node->lo <= 0) {
        int64_t slo = node->hi < 0 ? -node->hi : 0;
        int64_t shi = node->lo == kNegInf ? kPosInf : -node->lo;
        out = MTNode::mkTemporal(K::Since, slo, shi, MTNode::mkConst(true), c1);
      }
      if (node->hi >= 0) {
        int64_t ulo = node->lo > 0 ? node->lo : 0;
        MTNodePtr fut = MTNode::mkTemporal(K::Until, ulo, node->hi,
                                           MTNode::mkConst(true), c1);
        out = out ? MTNode::mkBinary(K::Or, out, fut) : fut;
      }
      return out;
    }
    case K::Box: {
      // box_I f == !dia_I !f
      auto inner = std::make_shared<MTNode>(*node);
      inner->kind = K::Dia;
      inner->child1 = MTNode::mkUnary(K::Not, c1);
      inner->child2 = nullptr;
      return MTNode::mkUnary(K::Not, expandDerived(inner));
    }
  }
  fail(ErrorKind::Internal, "unknown MTNode kind");
}

static std::string termStr(const KnowledgeBase& kb, const NCQ& q,
                           const Term& t) {
  return t.isVar ? q.varNames.at(t.id) : kb.individualName(t.id);
}

static std::string atomStr(const KnowledgeBase& kb, const NCQ& q,
                           const QAtom& a) {
  std::string s = a.negated ? "!" : "";
  if (a.isRole) {
    s += kb.roleName(a.pred) + "(" + termStr(kb, q, a.t1) + "," +
         termStr(kb, q, a.t2) + ")";
  } else {
    s += kb.conceptName(a.pred) + "(" + termStr(kb, q, a.t1) + ")";
  }
  return s;
}

std::string ncqAtomsToString(const KnowledgeBase& kb, const NCQ& q) {
  std::vector<QAtom> atoms = q.atoms;
  std::sort(atoms.begin(), atoms.end());
  std::string out;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += " & ";
    out += atomStr(kb, q, atoms[i]);
  }
  return out;
}

static std::string filterStr(const KnowledgeBase& kb, const std::string& z,
                             const Filter& f, int depth) {
  std::string zp = "w" + std::to_string(depth);
  std::string pos = kb.roleName(f.role) + "(" + z + "," + zp + ") & " +
                    kb.conceptName(f.filler) + "(" + zp + ")";
  std::string body = pos;
  std::vector<std::string> extra;
  for (ConceptId a : f.negConcepts) {
    extra.push_back("!" + kb.conceptName(a) + "(" + zp + ")");
  }
  for (RoleId r : f.negRoles) {
    extra.push_back("!" + kb.roleName(r) + "(" + z + "," + zp + ")");
  }
  std::sort(extra.begin(), extra.end());
  for (const std::string& e : extra) body += " & " + e;
  for (const Filter& n : f.nested) {
    body += " & " + filterStr(kb, zp, n, depth + 1);
  }
  return "((exists " + zp + ". " + pos + ") -> (exists " + zp + ". " + body +
         "))";
}

std::string filteredQueryToString(const KnowledgeBase& kb,
                                  const FilteredQuery& q) {
  std::string out;
  std::vector<std::string> quantified;
  for (uint32_t v = 0; v < q.ncq.varNames.size(); ++v) {
    if (!q.ncq.isAnswerVar(v)) quantified.push_back(q.ncq.varNames[v]);
  }
  if (!quantified.empty()) {
    out += "exists ";
    for (size_t i = 0; i < quantified.size(); ++i) {
      if (i) out += ",";
      out += quantified[i];
    }
    out += ". ";
  }
  out += ncqAtomsToString(kb, q.ncq);
  std::vector<std::string> fs;
  for (const Filter& f : q.filters) {
    fs.push_back(filterStr(kb, termStr(kb, q.ncq, f.subject), f, 1));
  }
  std::sort(fs.begin(), fs.end());
  for (const std::string& f : fs) {
    if (!out.empty()) out += " & ";
    out += f;
  }
  return out;
}

static std::string intervalStr(int64_t lo, int64_t hi) {
  auto b = [](int64_t v) -> std::string {
    if (v == kNegInf) return "-inf";
    if (v == kPosInf) return "inf";
    return std::to_string(v);
  };
  return "[" + b(lo) + "," + b(hi) + "]";
}

static std::string skeletonStr(const KnowledgeBase& kb, const MTNodePtr& n) {
  using K = MTNode::Kind;
  switch (n->kind) {
    case K::Leaf: return "{" + ncqAtomsToString(kb, n->leaf) + "}";
    case K::True: return "TRUE";
    case K::False: return "FALSE";
    case K::Not: return "NOT " + skeletonStr(kb, n->child1);
    case K::And:
      return "(" + skeletonStr(kb, n->child1) + " AND " +
             skeletonStr(kb, n->child2) + ")";
    case K::Or:
      return "(" + skeletonStr(kb, n->child1) + " OR " +
             skeletonStr(kb, n->child2) + ")";
    case K::Until:
      return "(" + skeletonStr(kb, n->child1) + " U" +
             intervalStr(n->lo, n->hi) + " " + skeletonStr(kb, n->child2) + ")";
    case K::Since:
      return "(" + skeletonStr(kb, n->child1) + " S" +
             intervalStr(n->lo, n->hi) + " " + skeletonStr(kb, n->child2) + ")";
    case K::Box:
      return "BOX" + intervalStr(n->lo, n->hi) + " " +
             skeletonStr(kb, n->child1);
    case K::Dia:
      return "DIA" + intervalStr(n->lo, n->hi) + " " +
             skeletonStr(kb, n->child1);
    case K::Next: return "NEXT " + skeletonStr(kb, n->child1);
    case K::Prev: return "PREV " + skeletonStr(kb, n->child1);
  }
  return "?";
}

std::string mtncqSkeletonToString(const KnowledgeBase& kb, const MTNCQ& q) {
  return skeletonStr(kb, q.root);
}

}  // namespace mwq
