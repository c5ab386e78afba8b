#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mwq/bitcmp.hpp"
#include "mwq/mtncq.hpp"
#include "mwq/normalizer.hpp"
#include "mwq/oracle.hpp"
#include "mwq/textio.hpp"

namespace {

using namespace mwq;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool useColor() {
  const char* mode = std::getenv("MWQ_COLOR");
  if (mode && std::string(mode) == "never") return false;
  if (mode && std::string(mode) == "always") return true;
  return isatty(2);
}

void printError(const std::string& msg) {
  if (useColor()) {
    std::cerr << "\033[31merror:\033[0m " << msg << "\n";
  } else {
    std::cerr << "error: " << msg << "\n";
  }
}

int exitCodeFor(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Validation: return 1;
    case ErrorKind::Inconsistent: return 2;
    case ErrorKind::Refusal: return 3;
    case ErrorKind::Internal: return 4;
  }
  return 4;
}

KnowledgeBase loadKb(const std::string& kbPath, const std::string& dataPath) {
  KnowledgeBase kb = parseKB(readFile(kbPath), kbPath);
  if (!dataPath.empty()) ingestCsv(readFile(dataPath), kb, dataPath);
  normalize(kb);
  return kb;
}

AnswerSet toAnswerSet(const KnowledgeBase& kb,
                      const std::map<Tuple, IntervalSet>& raw) {
  AnswerSet out;
  for (const auto& [tuple, points] : raw) {
    std::vector<std::string> names;
    for (IndividualId id : tuple) names.push_back(kb.individualName(id));
    out.emplace(std::move(names), points);
  }
  return out;
}

AnswerSet toAnswerSet(const KnowledgeBase& kb, const std::set<Tuple>& raw) {
  AnswerSet out;
  for (const Tuple& tuple : raw) {
    std::vector<std::string> names;
    for (IndividualId id : tuple) names.push_back(kb.individualName(id));
    out.emplace(std::move(names), IntervalSet::empty());
  }
  return out;
}

int cmdCheck(const std::string& kbPath, const std::string& dataPath) {
  KnowledgeBase kb = loadKb(kbPath, dataPath);
  ConsistencyResult r = checkConsistency(kb);
  if (!r.consistent) {
    printError(r.witness);
    return 2;
  }
  std::cout << "consistent\n";
  return 0;
}

int cmdClassify(const std::string& kbPath) {
  KnowledgeBase kb = loadKb(kbPath, "");
  SubsumptionTable table = classifyForQueries(kb);
  std::vector<std::string> lines;
  for (ConceptId a = 2; a < kb.concepts.size(); ++a) {
    if (kb.isFresh(a)) continue;
    if (table.unsatisfiable(a)) {
      lines.push_back(kb.conceptName(a) + " SUB bot");
      continue;
    }
    for (ConceptId b = 2; b < kb.concepts.size(); ++b) {
      if (a == b || kb.isFresh(b)) continue;
      if (table.conceptSubsumes(a, b)) {
        lines.push_back(kb.conceptName(a) + " SUB " + kb.conceptName(b));
      }
    }
  }
  for (RoleId r = 0; r < kb.roles.size(); ++r) {
    for (RoleId s = 0; s < kb.roles.size(); ++s) {
      if (r != s && table.roleSubsumes(r, s)) {
        lines.push_back(kb.roleName(r) + " SUB " + kb.roleName(s));
      }
    }
  }
  std::sort(lines.begin(), lines.end());
  for (const std::string& line : lines) std::cout << line << "\n";
  return 0;
}

int cmdSaturate(const std::string& kbPath, const std::string& dataPath) {
  KnowledgeBase kb = loadKb(kbPath, dataPath);
  require(kb.mode == KbMode::Temporal, ErrorKind::Validation,
          "saturate expects a temporal KB");
  SubsumptionTable table = classifyForQueries(kb);
  TemporalExtensionMap ext = saturate(kb, table);

  auto bound = [](int64_t v) -> nlohmann::ordered_json {
    if (v == kNegInf) return "-inf";
    if (v == kPosInf) return "inf";
    return v;
  };
  nlohmann::ordered_json individuals(nlohmann::ordered_json::value_t::object);
  for (IndividualId ind = 0; ind < kb.individuals.size(); ++ind) {
    nlohmann::ordered_json concepts(nlohmann::ordered_json::value_t::object);
    for (ConceptId c = 2; c < kb.concepts.size(); ++c) {
      if (kb.isFresh(c)) continue;
      const IntervalSet& points = ext.conceptAt(ind, c);
      if (points.isEmpty()) continue;
      nlohmann::ordered_json ivs = nlohmann::ordered_json::array();
      for (const Interval& iv : points.intervals()) {
        ivs.push_back({bound(iv.lo), bound(iv.hi)});
      }
      concepts[kb.conceptName(c)] = ivs;
    }
    individuals[kb.individualName(ind)] = concepts;
  }
  nlohmann::ordered_json out;
  out["individuals"] = individuals;
  out["representatives"] = representatives(kb);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmdRewrite(const std::string& kbPath, const std::string& queryPath,
               const std::string& emit, bool temporalSkeleton) {
  KnowledgeBase kb = loadKb(kbPath, "");
  MTNCQ query = parseQuery(readFile(queryPath), kb, queryPath);
  SubsumptionTable table = classifyForQueries(kb);

  if (query.isTemporal() || temporalSkeleton) {
    MFOTLFormula formula = liftRewrite(query, table);
    if (emit == "json") {
      nlohmann::ordered_json leaves = nlohmann::ordered_json::array();
      for (const MFOTLNode& node : formula.nodes) {
        if (node.kind != MTNode::Kind::Leaf) continue;
        nlohmann::ordered_json rewritings = nlohmann::ordered_json::array();
        for (const FilteredQuery& fq : node.leafDisjuncts) {
          rewritings.push_back(filteredQueryToString(kb, fq));
        }
        leaves.push_back({{"rewritings", rewritings}});
      }
      nlohmann::ordered_json out;
      out["skeleton"] = mtncqSkeletonToString(kb, query);
      out["n"] = computeN(formula);
      out["leaves"] = leaves;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "skeleton: " << mtncqSkeletonToString(kb, query) << "\n";
      std::cout << "N = " << computeN(formula) << "\n";
      int leafIdx = 0;
      for (const MFOTLNode& node : formula.nodes) {
        if (node.kind != MTNode::Kind::Leaf) continue;
        std::cout << "leaf " << leafIdx++ << ":\n";
        for (const FilteredQuery& fq : node.leafDisjuncts) {
          std::cout << "  " << filteredQueryToString(kb, fq) << "\n";
        }
      }
    }
    return 0;
  }

  require(query.root->kind == MTNode::Kind::Leaf, ErrorKind::Internal,
          "atemporal query with a non-leaf root");
  RewriteResult rew = allRewritings(query.root->leaf, table);
  if (emit == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const FilteredQuery& fq : rew.queries) {
      arr.push_back({{"depth", nestedFilterDepth(fq)},
                     {"formula", filteredQueryToString(kb, fq)}});
    }
    nlohmann::ordered_json out;
    out["rewritings"] = arr;
    out["depthBound"] = rew.depthBound;
    out["depthBoundHit"] = rew.depthBoundHit;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const FilteredQuery& fq : rew.queries) {
      std::cout << filteredQueryToString(kb, fq) << "\n";
    }
  }
  return 0;
}

int maxQueryVars(const MTNCQ& q) {
  int best = 0;
  std::function<void(const MTNodePtr&)> walk = [&](const MTNodePtr& n) {
    if (!n) return;
    if (n->kind == MTNode::Kind::Leaf) {
      best = std::max(best, static_cast<int>(n->leaf.varNames.size()));
    }
    walk(n->child1);
    walk(n->child2);
  };
  walk(q.root);
  return best;
}

int cmdAnswer(const std::string& kbPath, const std::string& dataPath,
              const std::string& queryPath, const std::string& engine,
              const std::string& format, bool onlyTem, int oracleDepth,
              int64_t window) {
  KnowledgeBase kb = loadKb(kbPath, dataPath);
  MTNCQ query = parseQuery(readFile(queryPath), kb, queryPath);
  AnswerFormat fmt = format == "csv" ? AnswerFormat::Csv : AnswerFormat::Json;

  bool temporal = kb.mode == KbMode::Temporal;
  require(!(query.isTemporal() && !temporal), ErrorKind::Validation,
          "temporal query over an atemporal KB");

  AnswerSet answers;
  if (temporal) {
    if (engine == "oracle") {
      MFOTLFormula skeleton =
          liftRewrite(query, classifyForQueries(kb));
      if (window == 0) window = computeN(skeleton) + 12;
      int depth = oracleDepth;
      if (depth < 0) depth = maxQueryVars(query) + 1;
      answers = toAnswerSet(kb, oracleTemporal(query, kb, window, depth));
    } else {
      answers = answerIntervals(query, kb, onlyTem);
    }
  } else {
    require(query.root->kind == MTNode::Kind::Leaf, ErrorKind::Validation,
            "over an atemporal KB the query must be a single NCQ");
    const NCQ& ncq = query.root->leaf;
    require(ncq.answerVars.size() == query.answerVarNames.size(),
            ErrorKind::Validation,
            "every answer variable must occur in the query body");
    std::set<Tuple> tuples;
    if (engine == "oracle") {
      int depth = oracleDepth;
      if (depth < 0) depth = static_cast<int>(ncq.varNames.size()) + 1;
      tuples = oracleAtemporal(ncq, kb, depth);
    } else {
      tuples = mwaAtemporal(ncq, kb);
    }
    answers = toAnswerSet(kb, tuples);
  }
  std::cout << writeAnswers(answers, fmt, temporal);
  if (fmt == AnswerFormat::Json) std::cout << "\n";
  return 0;
}

int cmdModel(const std::string& kbPath, const std::string& dataPath,
             int depth) {
  KnowledgeBase kb = loadKb(kbPath, dataPath);
  require(kb.mode == KbMode::Atemporal, ErrorKind::Validation,
          "model dumps are atemporal; use saturate for temporal KBs");
  SubsumptionTable table = classifyForQueries(kb);
  FiniteInterpretation interp =
      expandCanonical(kb, table, buildNamedPart(kb, table), depth);
  nlohmann::ordered_json elements = nlohmann::ordered_json::array();
  for (uint32_t e = 0; e < interp.elements.size(); ++e) {
    nlohmann::ordered_json el;
    el["id"] = e;
    if (interp.isNamed(e)) {
      el["name"] = kb.individualName(e);
    } else {
      el["parent"] = interp.elements[e].parent;
      el["via"] = kb.roleName(interp.elements[e].viaRole) + "." +
                  kb.conceptName(interp.elements[e].viaConcept);
    }
    el["depth"] = interp.elements[e].depth;
    nlohmann::ordered_json concepts = nlohmann::ordered_json::array();
    for (ConceptId c : interp.elements[e].concepts) {
      if (!kb.isFresh(c)) concepts.push_back(kb.conceptName(c));
    }
    el["concepts"] = concepts;
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& [r, t] : interp.elements[e].out) {
      edges.push_back({kb.roleName(r), t});
    }
    el["edges"] = edges;
    elements.push_back(el);
  }
  nlohmann::ordered_json out;
  out["elements"] = elements;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmdFuzz(int seeds, bool temporal) {
  GenLimits limits;
  limits.temporal = temporal;
  for (int seed = 0; seed < seeds; ++seed) {
    GenInstance inst = randomInstance(static_cast<uint64_t>(seed), limits);
    bool agree = true;
    std::string mineStr, refStr;
    if (temporal) {
      SubsumptionTable table = classifyForQueries(inst.kb);
      MFOTLFormula formula = liftRewrite(inst.query, table);
      int64_t window = computeN(formula) + 12;
      int depth = maxQueryVars(inst.query) + 1;
      AnswerSet mine = answerIntervals(inst.query, inst.kb);
      AnswerSet ref =
          toAnswerSet(inst.kb, oracleTemporal(inst.query, inst.kb, window,
                                              depth));
      std::vector<int64_t> tem = inst.kb.tem();
      IntervalSet windowSet = IntervalSet::make(
          {{tem.front() - window, tem.back() + window}});
      AnswerSet mineClipped, refClipped;
      for (auto& [k, v] : mine) {
        IntervalSet c = v.intersect(windowSet);
        if (!c.isEmpty()) mineClipped[k] = c;
      }
      for (auto& [k, v] : ref) {
        IntervalSet c = v.intersect(windowSet);
        if (!c.isEmpty()) refClipped[k] = c;
      }
      agree = mineClipped == refClipped;
      mineStr = writeAnswers(mineClipped, AnswerFormat::Json, true);
      refStr = writeAnswers(refClipped, AnswerFormat::Json, true);
    } else {
      const NCQ& ncq = inst.query.root->leaf;
      std::set<Tuple> mine = mwaAtemporal(ncq, inst.kb);
      std::set<Tuple> ref = oracleAtemporal(
          ncq, inst.kb, static_cast<int>(ncq.varNames.size()) + 1);
      agree = mine == ref;
      mineStr = writeAnswers(toAnswerSet(inst.kb, mine), AnswerFormat::Json,
                             false);
      refStr = writeAnswers(toAnswerSet(inst.kb, ref), AnswerFormat::Json,
                            false);
    }
    if (!agree) {
      std::string dir = "mwq-fuzz-" + std::to_string(seed);
      std::filesystem::create_directories(dir);
      std::ofstream(dir + "/kb.mwq") << serializeKB(inst.kb);
      std::ofstream(dir + "/query.mwq")
          << serializeQuery(inst.kb, inst.query);
      std::ofstream(dir + "/mismatch.txt")
          << "engine: " << mineStr << "\noracle: " << refStr << "\n";
      printError("seed " + std::to_string(seed) +
                 " disagrees; repro bundle written to " + dir);
      return 4;
    }
  }
  std::cout << seeds << " trials, no mismatches\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal-world query answering over ELH-bot / TELH-bot KBs"};
  app.require_subcommand(1);

  std::string kbPath, dataPath, queryPath;
  std::string emit = "text", engine = "rewrite", format = "json";
  bool onlyTem = false, temporalFlag = false;
  int oracleDepth = -1, seeds = 100;
  int64_t window = 0;

  CLI::App* check = app.add_subcommand("check", "consistency check");
  check->add_option("--kb", kbPath)->required();
  check->add_option("--data", dataPath);

  CLI::App* classify = app.add_subcommand("classify", "subsumption pairs");
  classify->add_option("--kb", kbPath)->required();

  CLI::App* saturate =
      app.add_subcommand("saturate", "entailed temporal assertions");
  saturate->add_option("--kb", kbPath)->required();
  saturate->add_option("--data", dataPath);

  int modelDepth = 3;
  CLI::App* model =
      app.add_subcommand("model", "canonical model dump (debugging)");
  model->add_option("--kb", kbPath)->required();
  model->add_option("--data", dataPath);
  model->add_option("--depth", modelDepth);

  CLI::App* rewrite = app.add_subcommand("rewrite", "query rewritings");
  rewrite->add_option("--kb", kbPath)->required();
  rewrite->add_option("--query", queryPath)->required();
  rewrite->add_option("--emit", emit)->check(CLI::IsMember({"text", "json"}));
  rewrite->add_flag("--temporal", temporalFlag,
                    "emit the temporal skeleton form");

  CLI::App* answer = app.add_subcommand("answer", "query answers");
  answer->add_option("--kb", kbPath)->required();
  answer->add_option("--data", dataPath);
  answer->add_option("--query", queryPath)->required();
  answer->add_option("--engine", engine)
      ->check(CLI::IsMember({"rewrite", "oracle"}));
  answer->add_option("--format", format)
      ->check(CLI::IsMember({"json", "csv"}));
  answer->add_flag("--only-tem", onlyTem,
                   "restrict answers to ABox time points");
  answer->add_option("--oracle-depth", oracleDepth);
  answer->add_option("--window", window);

  CLI::App* fuzz = app.add_subcommand("fuzz", "engine/oracle equivalence");
  fuzz->add_option("--seeds", seeds);
  fuzz->add_flag("--temporal", temporalFlag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    printError(e.what());
    return 1;
  }

  try {
    if (*check) return cmdCheck(kbPath, dataPath);
    if (*classify) return cmdClassify(kbPath);
    if (*saturate) return cmdSaturate(kbPath, dataPath);
    if (*model) return cmdModel(kbPath, dataPath, modelDepth);
    if (*rewrite) return cmdRewrite(kbPath, queryPath, emit, temporalFlag);
    if (*answer) {
      return cmdAnswer(kbPath, dataPath, queryPath, engine, format, onlyTem,
                       oracleDepth, window);
    }
    if (*fuzz) return cmdFuzz(seeds, temporalFlag);
  } catch (const Error& e) {
    printError(e.what());
    return exitCodeFor(e);
  } catch (const std::exception& e) {
    printError(std::string("internal: ") + e.what());
    return 4;
  }
  return 1;
}
