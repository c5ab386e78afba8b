#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mwq/bitcmp.hpp"
#include "mwq/mtncq.hpp"
#include "mwq/normalizer.hpp"
#include "mwq/oracle.hpp"
#include "mwq/textio.hpp"

namespace py = pybind11;
using namespace mwq;

namespace {

struct PyKb {
  KnowledgeBase kb;
};

PyKb loadKb(const std::string& kbText, const std::string& csvText) {
  PyKb out;
  out.kb = parseKB(kbText, "<kb>");
  if (!csvText.empty()) ingestCsv(csvText, out.kb, "<csv>");
  normalize(out.kb);
  return out;
}

py::object intervalBound(int64_t v) {
  if (v == kNegInf) return py::str("-inf");
  if (v == kPosInf) return py::str("inf");
  return py::int_(v);
}

py::list intervalsToPy(const IntervalSet& points) {
  py::list out;
  for (const Interval& iv : points.intervals()) {
    out.append(py::make_tuple(intervalBound(iv.lo), intervalBound(iv.hi)));
  }
  return out;
}

// answers: list of (tuple-of-names, intervals or None)
py::list answersToPy(const AnswerSet& answers, bool temporal) {
  py::list out;
  for (const auto& [tuple, points] : answers) {
    py::tuple names(tuple.size());
    for (size_t i = 0; i < tuple.size(); ++i) names[i] = tuple[i];
    if (temporal) {
      out.append(py::make_tuple(names, intervalsToPy(points)));
    } else {
      out.append(py::make_tuple(names, py::none()));
    }
  }
  return out;
}

py::list answer(PyKb& kb, const std::string& queryText,
                const std::string& engine, bool onlyTem, int oracleDepth,
                int64_t window) {
  MTNCQ query = parseQuery(queryText, kb.kb, "<query>");
  bool temporal = kb.kb.mode == KbMode::Temporal;
  require(!(query.isTemporal() && !temporal), ErrorKind::Validation,
          "temporal query over an atemporal KB");
  auto maxVars = [&] {
    int best = 0;
    std::function<void(const MTNodePtr&)> walk = [&](const MTNodePtr& n) {
      if (!n) return;
      if (n->kind == MTNode::Kind::Leaf) {
        best = std::max(best, static_cast<int>(n->leaf.varNames.size()));
      }
      walk(n->child1);
      walk(n->child2);
    };
    walk(query.root);
    return best;
  };
  if (temporal) {
    AnswerSet out;
    if (engine == "oracle") {
      SubsumptionTable table = classifyForQueries(kb.kb);
      MFOTLFormula skeleton = liftRewrite(query, table);
      int64_t w = window > 0 ? window : computeN(skeleton) + 12;
      int depth = oracleDepth >= 0 ? oracleDepth : maxVars() + 1;
      for (const auto& [tuple, points] :
           oracleTemporal(query, kb.kb, w, depth)) {
        std::vector<std::string> names;
        for (IndividualId id : tuple) names.push_back(
            kb.kb.individualName(id));
        out.emplace(names, points);
      }
    } else {
      out = answerIntervals(query, kb.kb, onlyTem);
    }
    return answersToPy(out, true);
  }
  require(query.root->kind == MTNode::Kind::Leaf, ErrorKind::Validation,
          "over an atemporal KB the query must be a single NCQ");
  const NCQ& ncq = query.root->leaf;
  require(ncq.answerVars.size() == query.answerVarNames.size(),
          ErrorKind::Validation,
          "every answer variable must occur in the query body");
  std::set<Tuple> tuples;
  if (engine == "oracle") {
    int depth = oracleDepth >= 0 ? oracleDepth
                                 : static_cast<int>(ncq.varNames.size()) + 1;
    tuples = oracleAtemporal(ncq, kb.kb, depth);
  } else {
    tuples = mwaAtemporal(ncq, kb.kb);
  }
  AnswerSet out;
  for (const Tuple& tuple : tuples) {
    std::vector<std::string> names;
    for (IndividualId id : tuple) names.push_back(kb.kb.individualName(id));
    out.emplace(names, IntervalSet::empty());
  }
  return answersToPy(out, false);
}

py::list rewreq(PyKb& kb, const std::string& queryText) {
  MTNCQ query = parseQuery(queryText, kb.kb, "<query>");
  SubsumptionTable table = classifyForQueries(kb.kb);
  py::list out;
  if (query.root->kind == MTNode::Kind::Leaf && !query.isTemporal()) {
    for (const FilteredQuery& fq :
         allRewritings(query.root->leaf, table).queries) {
      out.append(filteredQueryToString(kb.kb, fq));
    }
  } else {
    MFOTLFormula formula = liftRewrite(query, table);
    out.append(mtncqSkeletonToString(kb.kb, query));
    for (const MFOTLNode& node : formula.nodes) {
      if (node.kind != MTNode::Kind::Leaf) continue;
      py::list leaf;
      for (const FilteredQuery& fq : node.leafDisjuncts) {
        leaf.append(filteredQueryToString(kb.kb, fq));
      }
      out.append(leaf);
    }
  }
  return out;
}

py::dict saturateDump(PyKb& kb) {
  require(kb.kb.mode == KbMode::Temporal, ErrorKind::Validation,
          "saturate expects a temporal KB");
  SubsumptionTable table = classifyForQueries(kb.kb);
  TemporalExtensionMap ext = saturate(kb.kb, table);
  py::dict out;
  for (IndividualId ind = 0; ind < kb.kb.individuals.size(); ++ind) {
    py::dict concepts;
    for (ConceptId c = 2; c < kb.kb.concepts.size(); ++c) {
      if (kb.kb.isFresh(c)) continue;
      const IntervalSet& points = ext.conceptAt(ind, c);
      if (points.isEmpty()) continue;
      concepts[py::str(kb.kb.conceptName(c))] = intervalsToPy(points);
    }
    out[py::str(kb.kb.individualName(ind))] = concepts;
  }
  return out;
}

py::list classifyPairs(PyKb& kb) {
  SubsumptionTable table = classifyForQueries(kb.kb);
  py::list out;
  for (ConceptId a = 2; a < kb.kb.concepts.size(); ++a) {
    if (kb.kb.isFresh(a)) continue;
    for (ConceptId b = 2; b < kb.kb.concepts.size(); ++b) {
      if (a == b || kb.kb.isFresh(b)) continue;
      if (table.conceptSubsumes(a, b)) {
        out.append(py::make_tuple(kb.kb.conceptName(a),
                                  kb.kb.conceptName(b)));
      }
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_mwq, m) {
  m.doc() = "minimal-world query answering over ELH-bot / TELH-bot KBs";

  py::register_exception<Error>(m, "MwqError");

  py::class_<PyKb>(m, "KnowledgeBase")
      .def_property_readonly("temporal",
                             [](const PyKb& kb) {
                               return kb.kb.mode == KbMode::Temporal;
                             })
      .def_property_readonly("individuals", [](const PyKb& kb) {
        py::list out;
        for (IndividualId i = 0; i < kb.kb.individuals.size(); ++i) {
          out.append(kb.kb.individualName(i));
        }
        return out;
      });

  m.def("load_kb", &loadKb, py::arg("kb_text"), py::arg("csv_text") = "",
        "Parse and normalize a knowledge base; optionally ingest CSV data.");
  m.def("check", [](PyKb& kb) {
    ConsistencyResult r = checkConsistency(kb.kb);
    return py::make_tuple(r.consistent, r.witness);
  });
  m.def("classify", &classifyPairs, py::arg("kb"),
        "Entailed subsumption pairs between user concept names.");
  m.def("saturate", &saturateDump, py::arg("kb"),
        "Entailed temporal assertions per individual and concept.");
  m.def("representatives", [](PyKb& kb) { return representatives(kb.kb); });
  m.def("rewrite", &rewreq, py::arg("kb"), py::arg("query"),
        "First-order rewritings (or the temporal skeleton with per-leaf "
        "rewritings).");
  m.def("answer", &answer, py::arg("kb"), py::arg("query"),
        py::arg("engine") = "rewrite", py::arg("only_tem") = false,
        py::arg("oracle_depth") = -1, py::arg("window") = 0,
        "Answers; temporal KBs map tuples to interval lists.");
  m.def("bit_compare", [](int64_t t1, int64_t t2, const std::string& rel,
                          int64_t d, int nBits) {
    return bitCompare(t1, t2, parseRelation(rel), d, nBits);
  });
  m.def("emit_comparator_formula",
        [](const std::string& rel, int64_t d, int nBits) {
          return emitComparatorFormula(parseRelation(rel), d, nBits);
        });
  m.def("fuzz_trial", [](uint64_t seed, bool temporal) {
    GenLimits limits;
    limits.temporal = temporal;
    GenInstance inst = randomInstance(seed, limits);
    if (temporal) {
      SubsumptionTable table = classifyForQueries(inst.kb);
      MFOTLFormula formula = liftRewrite(inst.query, table);
      int64_t window = computeN(formula) + 12;
      AnswerSet mine = answerIntervals(inst.query, inst.kb);
      auto ref = oracleTemporal(inst.query, inst.kb, window, 5);
      std::vector<int64_t> tem = inst.kb.tem();
      IntervalSet windowSet =
          IntervalSet::make({{tem.front() - window, tem.back() + window}});
      for (const auto& [tuple, points] : ref) {
        std::vector<std::string> names;
        for (IndividualId id : tuple) {
          names.push_back(inst.kb.individualName(id));
        }
        IntervalSet mineClipped =
            mine.count(names) ? mine.at(names).intersect(windowSet)
                              : IntervalSet::empty();
        if (!(mineClipped == points.intersect(windowSet))) return false;
      }
      for (const auto& [names, points] : mine) {
        IntervalSet clipped = points.intersect(windowSet);
        if (clipped.isEmpty()) continue;
        Tuple tuple;
        for (const std::string& n : names) {
          tuple.push_back(*inst.kb.individuals.find(n));
        }
        if (!ref.count(tuple)) return false;
      }
      return true;
    }
    const NCQ& ncq = inst.query.root->leaf;
    return mwaAtemporal(ncq, inst.kb) ==
           oracleAtemporal(ncq, inst.kb,
                           static_cast<int>(ncq.varNames.size()) + 1);
  });
}
