#include <doctest.h>

#include "mwq/eval.hpp"
#include "mwq/oracle.hpp"
#include "mwq/rewriter.hpp"
#include "mwq/textio.hpp"
#include "support.hpp"

using namespace mwq;
using namespace mwq::testsupport;

namespace {

struct CancerFixture {
  KnowledgeBase kb = cancerKb();
  SubsumptionTable table{classifyForQueries(kb)};
  NCQ qb;

  CancerFixture() {
    MTNCQ q = parseQuery(kCancerQuery, kb);
    qb = q.root->leaf;
  }

  ConceptId c(const std::string& name) { return *kb.concepts.find(name); }
  RoleId r(const std::string& name) { return *kb.roles.find(name); }
};

}  // namespace

TEST_SUITE("rewriter") {

TEST_CASE("nested filter depth") {
  CancerFixture f;
  FilteredQuery plain{f.qb, {}};
  CHECK(nestedFilterDepth(plain) == 0);

  RewriteResult rew = allRewritings(f.qb, f.table);
  REQUIRE(rew.queries.size() == 3);
  std::set<int> depths;
  for (const FilteredQuery& q : rew.queries) {
    depths.insert(nestedFilterDepth(q));
  }
  CHECK(depths == std::set<int>{0, 1, 2});
}

TEST_CASE("applicable choices on the cancer query") {
  CancerFixture f;
  FilteredQuery start{f.qb, {}};
  std::vector<RewriteChoice> choices = applicableChoices(start, f.table);

  // Only z is a quantified leaf; the BreastCancer axiom qualifies.
  bool breastChoice = false;
  bool skinOfBreastFiller = false;
  for (const RewriteChoice& ch : choices) {
    CHECK(f.qb.varNames[ch.leafVar] == "z");
    if (ch.m == f.c("BreastCancer") && ch.s == f.r("findingSite") &&
        ch.n == f.c("BreastStructure")) {
      breastChoice = true;
    }
    // the SkinOfBreastStructure filler would satisfy the negated
    // SkinStructure atom.
    if (ch.n == f.c("SkinOfBreastStructure")) skinOfBreastFiller = true;
  }
  CHECK(breastChoice);
  CHECK(!skinOfBreastFiller);
}

TEST_CASE("no choices without quantified leaf variables") {
  CancerFixture f;
  KnowledgeBase& kb = f.kb;
  MTNCQ q = parseQuery("q(x) := {BreastCancerPatient(x)}", kb);
  CHECK(applicableChoices({q.root->leaf, {}}, f.table).empty());
}

TEST_CASE("rewrite steps reproduce the expected chain") {
  CancerFixture f;
  RewriteResult rew = allRewritings(f.qb, f.table);
  REQUIRE(rew.queries.size() == 3);
  CHECK(!rew.depthBoundHit);

  // Hand-built phi': dW(x,y) & Cancer(y) & BreastCancer(y) & !SoBC(y)
  // with filter [y -> findingSite.BreastStructure !SkinStructure].
  FilteredQuery phi1;
  phi1.ncq.varNames = {"x", "y"};
  phi1.ncq.answerVars = {0};
  QAtom dw;
  dw.isRole = true;
  dw.pred = f.r("diagnosedWith");
  dw.t1 = Term::var(0);
  dw.t2 = Term::var(1);
  QAtom cancer;
  cancer.pred = f.c("Cancer");
  cancer.t1 = Term::var(1);
  QAtom breast;
  breast.pred = f.c("BreastCancer");
  breast.t1 = Term::var(1);
  QAtom notSobc;
  notSobc.negated = true;
  notSobc.pred = f.c("SkinOfBreastCancer");
  notSobc.t1 = Term::var(1);
  phi1.ncq.atoms = {dw, cancer, breast, notSobc};
  Filter fsFilter;
  fsFilter.subject = Term::var(1);
  fsFilter.role = f.r("findingSite");
  fsFilter.filler = f.c("BreastStructure");
  fsFilter.negConcepts = {f.c("SkinStructure")};
  phi1.filters = {fsFilter};

  // Hand-built phi'': BCP(x) with the nested filter.
  FilteredQuery phi2;
  phi2.ncq.varNames = {"x"};
  phi2.ncq.answerVars = {0};
  QAtom bcp;
  bcp.pred = f.c("BreastCancerPatient");
  bcp.t1 = Term::var(0);
  phi2.ncq.atoms = {bcp};
  Filter outer;
  outer.subject = Term::var(0);
  outer.role = f.r("diagnosedWith");
  outer.filler = f.c("BreastCancer");
  outer.negConcepts = {f.c("SkinOfBreastCancer")};
  outer.nested = {fsFilter};
  phi2.filters = {outer};

  std::set<std::string> got;
  for (const FilteredQuery& q : rew.queries) {
    got.insert(canonicalQueryString(f.kb, q));
  }
  CHECK(got.count(canonicalQueryString(f.kb, {f.qb, {}})));
  CHECK(got.count(canonicalQueryString(f.kb, phi1)));
  CHECK(got.count(canonicalQueryString(f.kb, phi2)));
}

TEST_CASE("cyclic TBox terminates through the depth bound") {
  KnowledgeBase kb = parseKB("A SUB some r . B\nB SUB some r . A\n"
                             "A(a)\nB(b)");
  normalize(kb);
  SubsumptionTable table = classifyForQueries(kb);
  MTNCQ q = parseQuery("q() := {A(x), not B(x)}", kb);

  RewriteResult rew = allRewritings(q.root->leaf, table);
  CHECK(rew.depthBoundHit);  // the unbounded chain was pruned
  // v + |NC_T|^2 * |NR_T| with NC_T = {A, B, top, bot}, NR_T = {r}.
  CHECK(rew.depthBound == 1 + 4 * 4 * 1);
  for (const FilteredQuery& fq : rew.queries) {
    CHECK(nestedFilterDepth(fq) <= rew.depthBound);
  }

  // Answers are stable when the bound is raised.
  FiniteInterpretation named = buildNamedPart(kb, table);
  auto answersWith = [&](int bump) {
    std::set<Tuple> out;
    for (const FilteredQuery& fq : allRewritings(q.root->leaf, table, bump)
             .queries) {
      auto part = evalFiltered(fq, named);
      out.insert(part.begin(), part.end());
    }
    return out;
  };
  CHECK(answersWith(0) == answersWith(3));
}

TEST_CASE("queries with no quantified variables rewrite to themselves") {
  CancerFixture f;
  MTNCQ q = parseQuery("q(x) := {CancerPatient(x), not SkinCancerPatient(x)}",
                       f.kb);
  RewriteResult rew = allRewritings(q.root->leaf, f.table);
  CHECK(rew.queries.size() == 1);
}

TEST_CASE("rootedness and variable count are preserved along rewriting") {
  for (uint64_t seed = 700; seed < 760; ++seed) {
    GenInstance inst = randomInstance(seed, {});
    SubsumptionTable table = classifyForQueries(inst.kb);
    const NCQ& q = inst.query.root->leaf;
    if (!q.isRooted()) continue;
    RewriteResult rew = allRewritings(q, table);
    CHECK(!rew.depthBoundHit);  // rooted queries terminate on their own
    for (const FilteredQuery& fq : rew.queries) {
      CHECK(fq.ncq.isRooted());
      CHECK(fq.ncq.varNames.size() <= q.varNames.size());
      fq.ncq.validateGuardedness();
    }
  }
}

}  // TEST_SUITE
