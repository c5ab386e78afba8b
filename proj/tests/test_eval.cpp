#include <doctest.h>

#include "mwq/eval.hpp"
#include "mwq/oracle.hpp"
#include "mwq/textio.hpp"
#include "support.hpp"

using namespace mwq;
using namespace mwq::testsupport;

TEST_SUITE("eval") {

TEST_CASE("the rewriting chain evaluates to (empty, empty, {p1,p2})") {
  KnowledgeBase kb = cancerKb();
  SubsumptionTable table = classifyForQueries(kb);
  FiniteInterpretation named = buildNamedPart(kb, table);
  MTNCQ q = parseQuery(kCancerQuery, kb);
  RewriteResult rew = allRewritings(q.root->leaf, table);
  REQUIRE(rew.queries.size() == 3);

  std::map<int, std::set<std::vector<std::string>>> byDepth;
  for (const FilteredQuery& fq : rew.queries) {
    byDepth[nestedFilterDepth(fq)] = names(kb, evalFiltered(fq, named));
  }
  CHECK(byDepth[0].empty());
  CHECK(byDepth[1].empty());
  CHECK(byDepth[2] ==
        std::set<std::vector<std::string>>{{"p1"}, {"p2"}});
}

TEST_CASE("direct NCQ evaluation over the expanded model") {
  KnowledgeBase kb = cancerKb();
  SubsumptionTable table = classifyForQueries(kb);
  FiniteInterpretation named = buildNamedPart(kb, table);
  FiniteInterpretation expanded = expandCanonical(kb, table, named, 3);

  MTNCQ q = parseQuery(kCancerQuery, kb);
  CHECK(names(kb, evalNCQDirect(q.root->leaf, expanded)) ==
        std::set<std::vector<std::string>>{{"p1"}, {"p2"}});

  MTNCQ positive =
      parseQuery("q(x) := {diagnosedWith(x,y), Cancer(y)}", kb);
  CHECK(names(kb, evalNCQDirect(positive.root->leaf, expanded)) ==
        std::set<std::vector<std::string>>{{"p1"}, {"p2"}, {"p3"}});

  FiniteInterpretation empty;
  NCQ anyQ = positive.root->leaf;
  CHECK(evalNCQDirect(anyQ, empty).empty());
}

TEST_CASE("mwa on the cancer KB") {
  KnowledgeBase kb = cancerKb();
  MTNCQ q = parseQuery(kCancerQuery, kb);
  CHECK(names(kb, mwaAtemporal(q.root->leaf, kb)) ==
        std::set<std::vector<std::string>>{{"p1"}, {"p2"}});
}

TEST_CASE("unsatisfiable positive part yields no answers") {
  KnowledgeBase kb = parseKB("A(a)");
  normalize(kb);
  MTNCQ q = parseQuery("q() := {A(x), B(x)}", kb);
  CHECK(mwaAtemporal(q.root->leaf, kb).empty());
}

TEST_CASE("inconsistent KBs are rejected") {
  KnowledgeBase kb = parseKB("A SUB bot\nA(a)");
  normalize(kb);
  MTNCQ q = parseQuery("q(x) := {A(x)}", kb);
  CHECK_THROWS_AS(mwaAtemporal(q.root->leaf, kb), Error);
}

TEST_CASE("answers over the named part underapproximate the expansion") {
  for (uint64_t seed = 800; seed < 830; ++seed) {
    GenInstance inst = randomInstance(seed, {});
    SubsumptionTable table = classifyForQueries(inst.kb);
    FiniteInterpretation named = buildNamedPart(inst.kb, table);
    int v = static_cast<int>(inst.query.root->leaf.varNames.size());
    FiniteInterpretation expanded =
        expandCanonical(inst.kb, table, named, v + 2, 50000);
    for (const FilteredQuery& fq :
         allRewritings(inst.query.root->leaf, table).queries) {
      for (const Tuple& t : evalFiltered(fq, named)) {
        CHECK(evalFilteredBound(fq, expanded, t));
      }
    }
  }
}

TEST_CASE("positive CQs coincide with certain answers") {
  for (uint64_t seed = 900; seed < 940; ++seed) {
    GenInstance inst = randomInstance(seed, {});
    NCQ q = inst.query.root->leaf;
    std::vector<QAtom> positive;
    for (const QAtom& a : q.atoms) {
      if (!a.negated) positive.push_back(a);
    }
    q.atoms = positive;
    std::set<Tuple> mwa = mwaAtemporal(q, inst.kb);
    std::set<Tuple> certain =
        oracleAtemporal(q, inst.kb,
                        static_cast<int>(q.varNames.size()) + 1);
    CHECK_MESSAGE(mwa == certain, "seed ", seed);
  }
}

}  // TEST_SUITE
