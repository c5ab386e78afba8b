#include <doctest.h>

#include "mwq/normalizer.hpp"
#include "mwq/oracle.hpp"
#include "mwq/textio.hpp"
#include "support.hpp"

using namespace mwq;
using namespace mwq::testsupport;

namespace {

std::set<std::string> axiomStrings(const KnowledgeBase& kb) {
  std::set<std::string> out;
  for (const NormalAxiom& ax : kb.tbox) {
    std::string s;
    auto c = [&](ConceptId id) { return kb.conceptName(id); };
    switch (ax.kind) {
      case NormalAxiom::Kind::ConjCI:
        s = c(ax.a1) + "&" + c(ax.a2) + "<" + c(ax.b);
        break;
      case NormalAxiom::Kind::DiamCI:
        s = ax.op.str() + " " + c(ax.a1) + "<" + c(ax.b);
        break;
      case NormalAxiom::Kind::ExistsRHS:
        s = c(ax.a1) + "<some " + kb.roleName(ax.r) + "." + c(ax.b);
        break;
      case NormalAxiom::Kind::ExistsLHS:
        s = "some " + kb.roleName(ax.r) + "." + c(ax.a1) + "<" + c(ax.b);
        break;
      case NormalAxiom::Kind::RoleCI:
        s = kb.roleName(ax.r) + "<" + kb.roleName(ax.s);
        break;
    }
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST_SUITE("normalizer") {

TEST_CASE("exists over diamond splits with a fresh name") {
  KnowledgeBase kb = parseKB("some r . diaP A SUB B\nA(a) @ 1");
  normalize(kb);
  auto axioms = axiomStrings(kb);
  CHECK(axioms.count("diaP A<_N0"));
  CHECK(axioms.count("some r._N0<B"));
  CHECK(axioms.size() == 2);
}

TEST_CASE("plain inclusion becomes a degenerate conjunction") {
  KnowledgeBase kb = parseKB("A SUB B");
  normalize(kb);
  REQUIRE(kb.tbox.size() == 1);
  CHECK(kb.tbox[0].kind == NormalAxiom::Kind::ConjCI);
  CHECK(kb.conceptName(kb.tbox[0].a1) == "A");
  CHECK(kb.tbox[0].a2 == kTop);
  CHECK(kb.conceptName(kb.tbox[0].b) == "B");
}

TEST_CASE("ternary conjunction folds left") {
  KnowledgeBase kb = parseKB("A1 AND A2 AND A3 SUB B");
  normalize(kb);
  auto axioms = axiomStrings(kb);
  CHECK(axioms.count("A1&A2<_N0"));
  CHECK(axioms.count("_N0&A3<B"));
  CHECK(axioms.size() == 2);
}

TEST_CASE("ternary split preserves entailment over the original names") {
  KnowledgeBase kb = parseKB("A1 AND A2 AND A3 SUB B\n"
                             "C SUB A1\nC SUB A2\nC SUB A3\nC(a)");
  normalize(kb);
  ConceptId c = *kb.concepts.find("C");
  ConceptId b = *kb.concepts.find("B");
  ConceptId a1 = *kb.concepts.find("A1");
  CHECK(chaseSubsumes(kb, c, b));
  CHECK(!chaseSubsumes(kb, a1, b));
}

TEST_CASE("complex assertion introduces a defined name") {
  KnowledgeBase kb =
      parseKB("(some diagnosedWith . SkinOfBreastCancer)(p3)");
  normalize(kb);
  REQUIRE(kb.abox.size() == 1);
  CHECK(kb.isFresh(kb.abox[0].concept_));
  auto axioms = axiomStrings(kb);
  // both directions of the definition
  CHECK(axioms.count("_N0<some diagnosedWith.SkinOfBreastCancer"));
  CHECK(axioms.count("some diagnosedWith.SkinOfBreastCancer<_N0"));
}

TEST_CASE("idempotence: renormalizing a normal TBox changes nothing") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    GenLimits limits;
    limits.temporal = seed % 3 == 0;
    GenInstance inst = randomInstance(seed, limits);
    // Render the normalized TBox back to text and re-normalize it.
    std::string text;
    const KnowledgeBase& kb = inst.kb;
    for (const NormalAxiom& ax : kb.tbox) {
      auto c = [&](ConceptId id) { return kb.conceptName(id); };
      switch (ax.kind) {
        case NormalAxiom::Kind::ConjCI:
          text += c(ax.a1) + " AND " + c(ax.a2) + " SUB " + c(ax.b) + "\n";
          break;
        case NormalAxiom::Kind::DiamCI:
          text += ax.op.str() + " " + c(ax.a1) + " SUB " + c(ax.b) + "\n";
          break;
        case NormalAxiom::Kind::ExistsRHS:
          text += c(ax.a1) + " SUB some " + kb.roleName(ax.r) + " . " +
                  c(ax.b) + "\n";
          break;
        case NormalAxiom::Kind::ExistsLHS:
          text += "some " + kb.roleName(ax.r) + " . " + c(ax.a1) + " SUB " +
                  c(ax.b) + "\n";
          break;
        case NormalAxiom::Kind::RoleCI:
          text += "role " + kb.roleName(ax.r) + " SUB " + kb.roleName(ax.s) +
                  "\n";
          break;
      }
    }
    // Fresh names in the text would be rejected as user input; rename them.
    std::string renamed;
    for (size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '_') {
        renamed += "X";
      } else {
        renamed += text[i];
      }
    }
    KnowledgeBase again = parseKB(renamed);
    normalize(again);
    // Same number of axioms and no new fresh names.
    CHECK(again.tbox.size() == kb.tbox.size());
    CHECK(again.freshNames.empty());
  }
}

TEST_CASE("conservativity: chase entailment unchanged by normalization") {
  for (uint64_t seed = 100; seed < 130; ++seed) {
    GenInstance inst = randomInstance(seed, {});
    const KnowledgeBase& kb = inst.kb;
    // The chase applies normalized axioms directly; compare the classifier
    // with the chase on every original-name pair.
    SubsumptionTable table = classifyForQueries(kb);
    for (ConceptId a = 2; a < kb.concepts.size(); ++a) {
      for (ConceptId b = 2; b < kb.concepts.size(); ++b) {
        if (kb.isFresh(a) || kb.isFresh(b)) continue;
        CHECK_MESSAGE(table.conceptSubsumes(a, b) == chaseSubsumes(kb, a, b),
                      "seed ", seed, ": ", kb.conceptName(a), " vs ",
                      kb.conceptName(b));
      }
    }
  }
}

}  // TEST_SUITE
