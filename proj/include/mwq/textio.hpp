#pragma once

#include <map>
#include <string>
#include <vector>

#include "mwq/kb.hpp"
#include "mwq/query.hpp"

namespace mwq {

// Map from answer tuples (individual names) to satisfying time points.
// Atemporal answer sets leave the IntervalSet empty.
using AnswerSet = std::map<std::vector<std::string>, IntervalSet>;

enum class AnswerFormat { Json, Csv };

// Parses the line-oriented KB format. `file` is used in error locations.
KnowledgeBase parseKB(const std::string& text,
                      const std::string& file = "<kb>");

// Parses a query "name(x,...) := BODY" against the KB's signature. Unknown
// concept/role names are interned (empty extensions); unknown individuals
// are rejected.
MTNCQ parseQuery(const std::string& text, KnowledgeBase& kb,
                 const std::string& file = "<query>");

// CSV ingestion: header `kind,predicate,subject,object,time`.
// Appends to the KB's ABox.
void ingestCsv(const std::string& text, KnowledgeBase& kb,
               const std::string& file = "<csv>");

std::string writeAnswers(const AnswerSet& answers, AnswerFormat format,
                         bool temporal);

// Round-trippable rendering of a KB (raw axioms and plain assertions).
std::string serializeKB(const KnowledgeBase& kb);

// Round-trippable rendering of a query in the parseQuery grammar.
std::string serializeQuery(const KnowledgeBase& kb, const MTNCQ& q);

}  // namespace mwq
