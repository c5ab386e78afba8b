#include "mwq/textio.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mwq {
namespace {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int64_t value = 0;
  SourceLocation loc;
};

class Lexer {
 public:
  Lexer(const std::string& text, std::string file, int line)
      : text_(text), file_(std::move(file)), line_(line) {
    advance();
  }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  bool accept(const std::string& punctOrIdent) {
    if (tok_.kind != Token::Kind::End && tok_.text == punctOrIdent) {
      advance();
      return true;
    }
    return false;
  }

  void expect(const std::string& s) {
    if (!accept(s)) {
      throw Error(ErrorKind::Parse, "expected '" + s + "'", tok_.loc);
    }
  }

  SourceLocation loc() const { return tok_.loc; }

  [[noreturn]] void error(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg, tok_.loc);
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(uchar(text_[pos_]))) ++pos_;
    tok_ = Token();
    tok_.loc = {file_, line_, static_cast<int>(pos_) + 1};
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (std::isalpha(uchar(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(uchar(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(uchar(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(uchar(text_[pos_ + 1])))) {
      size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(uchar(text_[pos_]))) ++pos_;
      tok_.kind = Token::Kind::Int;
      tok_.text = text_.substr(start, pos_ - start);
      try {
        tok_.value = std::stoll(tok_.text);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "integer out of range", tok_.loc);
      }
      if (tok_.value > kMaxTimeMagnitude || tok_.value < -kMaxTimeMagnitude) {
        throw Error(ErrorKind::Parse, "integer out of range", tok_.loc);
      }
      return;
    }
    static const std::string twoChar = ":=";
    if (text_.compare(pos_, 2, twoChar) == 0) {
      tok_.kind = Token::Kind::Punct;
      tok_.text = twoChar;
      pos_ += 2;
      return;
    }
    tok_.kind = Token::Kind::Punct;
    tok_.text = std::string(1, c);
    ++pos_;
  }

  static unsigned char uchar(char c) { return static_cast<unsigned char>(c); }

  const std::string& text_;
  std::string file_;
  int line_;
  size_t pos_ = 0;
  Token tok_;
};

const std::set<std::string> kKbKeywords = {
    "top", "bot", "AND", "some", "SUB", "EQV", "role",
    "diaP", "diaF", "diaPF", "conv"};

bool isReservedConceptName(const std::string& s) {
  return s == "top" || s == "bot";
}

void checkUserName(Lexer& lex, const std::string& name) {
  if (!name.empty() && name[0] == '_') {
    throw Error(ErrorKind::Validation,
                "names starting with '_' are reserved: " + name, lex.loc());
  }
}

// --- KB concept grammar -----------------------------------------------------
// concept  := conjunct (AND conjunct)*
// conjunct := top | bot | NAME | ( concept ) | some ROLE . conjunct
//           | diaP/diaF/diaPF/conv[n] conjunct

ConceptPtr parseConjunct(Lexer& lex, KnowledgeBase& kb);

ConceptPtr parseConceptExpr(Lexer& lex, KnowledgeBase& kb) {
  ConceptPtr c = parseConjunct(lex, kb);
  while (lex.peek().text == "AND") {
    lex.next();
    c = Concept::mkAnd(c, parseConjunct(lex, kb));
  }
  return c;
}

ConceptPtr parseConjunct(Lexer& lex, KnowledgeBase& kb) {
  const Token& t = lex.peek();
  if (t.text == "(") {
    lex.next();
    ConceptPtr c = parseConceptExpr(lex, kb);
    lex.expect(")");
    return c;
  }
  if (t.text == "top") {
    lex.next();
    return Concept::mkName(kTop);
  }
  if (t.text == "bot") {
    lex.next();
    return Concept::mkName(kBot);
  }
  if (t.text == "some") {
    lex.next();
    Token role = lex.next();
    if (role.kind != Token::Kind::Ident || kKbKeywords.count(role.text)) {
      throw Error(ErrorKind::Parse, "expected role name", role.loc);
    }
    checkUserName(lex, role.text);
    lex.expect(".");
    ConceptPtr sub = parseConjunct(lex, kb);
    return Concept::mkExists(kb.roles.intern(role.text), sub);
  }
  if (t.text == "diaP" || t.text == "diaF" || t.text == "diaPF" ||
      t.text == "conv") {
    Token d = lex.next();
    DiamondOp op;
    if (d.text == "diaP") op = DiamondOp::past();
    if (d.text == "diaF") op = DiamondOp::future();
    if (d.text == "diaPF") op = DiamondOp::anyTime();
    if (d.text == "conv") {
      op = DiamondOp::convex();
      if (lex.accept("[")) {
        Token n = lex.next();
        if (n.kind != Token::Kind::Int || n.value < 1) {
          throw Error(ErrorKind::Parse, "conv[n] requires a positive integer",
                      n.loc);
        }
        lex.expect("]");
        op = DiamondOp::convexN(n.value);
      }
    }
    return Concept::mkDiam(op, parseConjunct(lex, kb));
  }
  if (t.kind == Token::Kind::Ident && !kKbKeywords.count(t.text)) {
    Token name = lex.next();
    checkUserName(lex, name.text);
    return Concept::mkName(kb.concepts.intern(name.text));
  }
  lex.error("expected a concept");
}

void rejectDiamondInRhs(const ConceptPtr& rhs, const SourceLocation& loc) {
  if (rhs->containsDiamond()) {
    throw Error(ErrorKind::Validation,
                "diamond operators may not occur on the right-hand side of "
                "a concept inclusion",
                loc);
  }
}

void parseKbLine(const std::string& line, int lineNo, const std::string& file,
                 KnowledgeBase& kb) {
  Lexer lex(line, file, lineNo);
  if (lex.peek().kind == Token::Kind::End) return;

  // role r SUB s / role r EQV s
  if (lex.peek().text == "role") {
    lex.next();
    Token r = lex.next();
    if (r.kind != Token::Kind::Ident) lex.error("expected role name");
    checkUserName(lex, r.text);
    Token op = lex.next();
    if (op.text != "SUB" && op.text != "EQV") {
      throw Error(ErrorKind::Parse, "expected SUB or EQV", op.loc);
    }
    Token s = lex.next();
    if (s.kind != Token::Kind::Ident) lex.error("expected role name");
    checkUserName(lex, s.text);
    RoleId rid = kb.roles.intern(r.text);
    RoleId sid = kb.roles.intern(s.text);
    kb.rawRoleCis.emplace_back(rid, sid);
    if (op.text == "EQV") kb.rawRoleCis.emplace_back(sid, rid);
    if (lex.peek().kind != Token::Kind::End) lex.error("trailing input");
    return;
  }

  SourceLocation start = lex.loc();
  ConceptPtr c = parseConceptExpr(lex, kb);

  if (lex.peek().text == "SUB" || lex.peek().text == "EQV") {
    Token op = lex.next();
    SourceLocation rhsLoc = lex.loc();
    ConceptPtr d = parseConceptExpr(lex, kb);
    if (lex.peek().kind != Token::Kind::End) lex.error("trailing input");
    rejectDiamondInRhs(d, rhsLoc);
    kb.rawCis.push_back({c, d});
    if (op.text == "EQV") {
      rejectDiamondInRhs(c, start);
      kb.rawCis.push_back({d, c});
    }
    return;
  }

  // Assertion: CONCEPT(a) [@ t] or r(a,b) [@ t]
  if (lex.peek().text == "(") {
    lex.next();
    Token a = lex.next();
    if (a.kind != Token::Kind::Ident) lex.error("expected individual name");
    checkUserName(lex, a.text);
    std::optional<std::string> second;
    if (lex.accept(",")) {
      Token b = lex.next();
      if (b.kind != Token::Kind::Ident) lex.error("expected individual name");
      checkUserName(lex, b.text);
      second = b.text;
    }
    lex.expect(")");
    std::optional<int64_t> time;
    if (lex.accept("@")) {
      Token t = lex.next();
      if (t.kind != Token::Kind::Int) lex.error("expected time point");
      time = t.value;
    }
    if (lex.peek().kind != Token::Kind::End) lex.error("trailing input");

    if (second) {
      if (!c->isName() || c->name == kTop || c->name == kBot) {
        throw Error(ErrorKind::Parse, "role assertions need a plain role name",
                    start);
      }
      // The name was interned as a concept by the expression parser; role
      // assertions reuse it as a role name.
      const std::string roleName = kb.conceptName(c->name);
      Assertion as;
      as.isRole = true;
      as.role = kb.roles.intern(roleName);
      as.subject = kb.individuals.intern(a.text);
      as.object = kb.individuals.intern(*second);
      as.time = time;
      kb.addAssertion(as);
      return;
    }
    if (c->containsDiamond()) {
      throw Error(ErrorKind::Validation,
                  "diamond operators may not occur in assertions", start);
    }
    if (c->isName() && (c->name == kTop || c->name == kBot)) {
      throw Error(ErrorKind::Validation,
                  "top/bot cannot be asserted directly", start);
    }
    if (c->isName()) {
      Assertion as;
      as.concept_ = c->name;
      as.subject = kb.individuals.intern(a.text);
      as.time = time;
      kb.addAssertion(as);
    } else {
      ComplexAssertion ca;
      ca.concept_ = c;
      ca.subject = kb.individuals.intern(a.text);
      ca.time = time;
      kb.complexAssertions.push_back(ca);
      if (time) kb.mode = KbMode::Temporal;
    }
    return;
  }
  lex.error("expected SUB, EQV, or an assertion");
}

bool tboxHasDiamond(const KnowledgeBase& kb) {
  for (const RawCI& ci : kb.rawCis) {
    if (ci.lhs->containsDiamond() || ci.rhs->containsDiamond()) return true;
  }
  return false;
}

}  // namespace

KnowledgeBase parseKB(const std::string& text, const std::string& file) {
  KnowledgeBase kb;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    parseKbLine(line, lineNo, file, kb);
  }
  if (tboxHasDiamond(kb)) kb.mode = KbMode::Temporal;
  kb.validateAssertionTimes();
  return kb;
}

// --- query parsing ----------------------------------------------------------

namespace {

const std::set<std::string> kQueryKeywords = {
    "NOT", "AND", "OR", "U", "S", "BOX", "DIA", "NEXT",
    "PREV", "TRUE", "FALSE", "not", "inf"};

struct QueryParser {
  Lexer& lex;
  KnowledgeBase& kb;
  std::vector<std::string> answerVarNames;

  MTNodePtr parseFormula() { return parseOr(); }

  // Precedence: NOT/NEXT/PREV/BOX/DIA > AND > OR > U/S.
  MTNodePtr parseOr() {
    MTNodePtr l = parseAnd();
    for (;;) {
      if (lex.peek().text == "OR") {
        lex.next();
        l = MTNode::mkBinary(MTNode::Kind::Or, l, parseAnd());
      } else if (lex.peek().text == "U" || lex.peek().text == "S") {
        bool until = lex.next().text == "U";
        auto [lo, hi] = parseInterval(/*natural=*/true);
        MTNodePtr r = parseAnd();
        l = MTNode::mkTemporal(
            until ? MTNode::Kind::Until : MTNode::Kind::Since, lo, hi, l, r);
      } else {
        return l;
      }
    }
  }

  MTNodePtr parseAnd() {
    MTNodePtr l = parseUnary();
    while (lex.peek().text == "AND") {
      lex.next();
      l = MTNode::mkBinary(MTNode::Kind::And, l, parseUnary());
    }
    return l;
  }

  MTNodePtr parseUnary() {
    const std::string& t = lex.peek().text;
    if (t == "NOT") {
      lex.next();
      return MTNode::mkUnary(MTNode::Kind::Not, parseUnary());
    }
    if (t == "NEXT") {
      lex.next();
      return MTNode::mkUnary(MTNode::Kind::Next, parseUnary());
    }
    if (t == "PREV") {
      lex.next();
      return MTNode::mkUnary(MTNode::Kind::Prev, parseUnary());
    }
    if (t == "BOX" || t == "DIA") {
      bool box = lex.next().text == "BOX";
      auto [lo, hi] = parseInterval(/*natural=*/false);
      return MTNode::mkTemporal(box ? MTNode::Kind::Box : MTNode::Kind::Dia,
                                lo, hi, parseUnary(), nullptr);
    }
    if (t == "TRUE") {
      lex.next();
      return MTNode::mkConst(true);
    }
    if (t == "FALSE") {
      lex.next();
      return MTNode::mkConst(false);
    }
    if (t == "(") {
      lex.next();
      MTNodePtr f = parseFormula();
      lex.expect(")");
      return f;
    }
    if (t == "{") {
      return MTNode::mkLeaf(parseNCQ());
    }
    lex.error("expected a query formula");
  }

  std::pair<int64_t, int64_t> parseInterval(bool natural) {
    lex.expect("[");
    int64_t lo = parseBound(/*isLow=*/true);
    lex.expect(",");
    int64_t hi = parseBound(/*isLow=*/false);
    lex.expect("]");
    if (lo > hi) lex.error("malformed interval: lo > hi");
    if (natural && lo < 0) {
      lex.error("U/S intervals must lie within the naturals");
    }
    return {lo, hi};
  }

  int64_t parseBound(bool isLow) {
    if (lex.accept("-")) {
      if (lex.peek().text == "inf") {
        lex.next();
        if (!isLow) lex.error("-inf may only appear as a lower bound");
        return kNegInf;
      }
      lex.error("expected 'inf' or an integer");
    }
    if (lex.peek().text == "inf") {
      lex.next();
      if (isLow) lex.error("inf may only appear as an upper bound");
      return kPosInf;
    }
    Token t = lex.next();
    if (t.kind != Token::Kind::Int) {
      throw Error(ErrorKind::Parse, "expected interval bound", t.loc);
    }
    return t.value;
  }

  NCQ parseNCQ() {
    lex.expect("{");
    NCQ q;
    std::map<std::string, uint32_t> vars;
    auto parseTermName = [&]() {
      Token t = lex.next();
      if (t.kind != Token::Kind::Ident || kQueryKeywords.count(t.text)) {
        throw Error(ErrorKind::Parse, "expected a term", t.loc);
      }
      return t.text;
    };
    auto internTerm = [&](const std::string& name) {
      if (auto ind = kb.individuals.find(name)) return Term::ind(*ind);
      auto it = vars.find(name);
      if (it != vars.end()) return Term::var(it->second);
      uint32_t v = static_cast<uint32_t>(q.varNames.size());
      q.varNames.push_back(name);
      vars.emplace(name, v);
      return Term::var(v);
    };
    if (!lex.accept("}")) {
      do {
        QAtom atom;
        if (lex.peek().text == "not") {
          lex.next();
          atom.negated = true;
        }
        Token pred = lex.next();
        if (pred.kind != Token::Kind::Ident ||
            kQueryKeywords.count(pred.text)) {
          throw Error(ErrorKind::Parse, "expected a predicate name", pred.loc);
        }
        if (pred.text[0] == '_') {
          throw Error(ErrorKind::Validation,
                      "reserved names may not occur in queries", pred.loc);
        }
        lex.expect("(");
        std::string t1 = parseTermName();
        if (lex.accept(",")) {
          std::string t2 = parseTermName();
          atom.isRole = true;
          atom.pred = kb.roles.intern(pred.text);
          atom.t1 = internTerm(t1);
          atom.t2 = internTerm(t2);
        } else if (isReservedConceptName(pred.text)) {
          throw Error(ErrorKind::Validation,
                      "top/bot atoms are not allowed in queries", pred.loc);
        } else {
          atom.pred = kb.concepts.intern(pred.text);
          atom.t1 = internTerm(t1);
        }
        lex.expect(")");
        q.atoms.push_back(atom);
      } while (lex.accept(","));
      lex.expect("}");
    }
    for (const std::string& av : answerVarNames) {
      auto it = vars.find(av);
      if (it != vars.end()) q.answerVars.push_back(it->second);
    }
    q.validateGuardedness();
    return q;
  }
};

}  // namespace

MTNCQ parseQuery(const std::string& text, KnowledgeBase& kb,
                 const std::string& file) {
  std::string body;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      body += line + " ";
    }
  }
  Lexer lex(body, file, 1);
  MTNCQ out;
  Token name = lex.next();
  if (name.kind != Token::Kind::Ident) lex.error("expected query name");
  lex.expect("(");
  if (!lex.accept(")")) {
    do {
      Token v = lex.next();
      if (v.kind != Token::Kind::Ident) lex.error("expected answer variable");
      if (kb.individuals.find(v.text)) {
        throw Error(ErrorKind::Validation,
                    "answer variable clashes with an individual name: " +
                        v.text,
                    v.loc);
      }
      out.answerVarNames.push_back(v.text);
    } while (lex.accept(","));
    lex.expect(")");
  }
  lex.expect(":=");
  QueryParser parser{lex, kb, out.answerVarNames};
  out.root = parser.parseFormula();
  if (lex.peek().kind != Token::Kind::End) lex.error("trailing input");
  return out;
}

// --- CSV --------------------------------------------------------------------

void ingestCsv(const std::string& text, KnowledgeBase& kb,
               const std::string& file) {
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  bool sawHeader = false;
  while (std::getline(in, line)) {
    ++lineNo;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fields.push_back(cur);
    SourceLocation loc{file, lineNo, 1};
    if (!sawHeader) {
      if (fields != std::vector<std::string>{"kind", "predicate", "subject",
                                             "object", "time"}) {
        throw Error(ErrorKind::Parse,
                    "expected header kind,predicate,subject,object,time", loc);
      }
      sawHeader = true;
      continue;
    }
    if (fields.size() != 5) {
      throw Error(ErrorKind::Parse, "expected 5 fields", loc);
    }
    const std::string &kind = fields[0], &pred = fields[1], &subj = fields[2],
                      &obj = fields[3], &time = fields[4];
    if (pred.empty() || subj.empty()) {
      throw Error(ErrorKind::Parse, "predicate and subject are required", loc);
    }
    if (pred[0] == '_' || isReservedConceptName(pred)) {
      throw Error(ErrorKind::Validation, "reserved predicate name: " + pred,
                  loc);
    }
    Assertion a;
    if (kind == "concept") {
      if (!obj.empty()) {
        throw Error(ErrorKind::Parse, "concept rows must leave object empty",
                    loc);
      }
      a.concept_ = kb.concepts.intern(pred);
    } else if (kind == "role") {
      if (obj.empty()) {
        throw Error(ErrorKind::Parse, "role rows need an object", loc);
      }
      a.isRole = true;
      a.role = kb.roles.intern(pred);
      a.object = kb.individuals.intern(obj);
    } else {
      throw Error(ErrorKind::Parse, "unknown kind: " + kind, loc);
    }
    a.subject = kb.individuals.intern(subj);
    if (!time.empty()) {
      bool digitsOnly = !time.empty();
      for (size_t i = 0; i < time.size(); ++i) {
        if (i == 0 && time[i] == '-' && time.size() > 1) continue;
        if (!std::isdigit(static_cast<unsigned char>(time[i]))) {
          digitsOnly = false;
        }
      }
      if (!digitsOnly) {
        throw Error(ErrorKind::Parse, "non-integer time: " + time, loc);
      }
      try {
        a.time = std::stoll(time);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "non-integer time: " + time, loc);
      }
      if (*a.time > kMaxTimeMagnitude || *a.time < -kMaxTimeMagnitude) {
        throw Error(ErrorKind::Parse, "time out of range", loc);
      }
    }
    kb.addAssertion(a);
  }
  kb.validateAssertionTimes();
}

// --- answers ----------------------------------------------------------------

namespace {

nlohmann::ordered_json boundJson(int64_t v) {
  if (v == kNegInf) return "-inf";
  if (v == kPosInf) return "inf";
  return v;
}

std::string boundStr(int64_t v) {
  if (v == kNegInf) return "-inf";
  if (v == kPosInf) return "inf";
  return std::to_string(v);
}

}  // namespace

std::string writeAnswers(const AnswerSet& answers, AnswerFormat format,
                         bool temporal) {
  if (format == AnswerFormat::Json) {
    nlohmann::ordered_json out;
    out["answers"] = nlohmann::ordered_json::array();
    for (const auto& [tuple, intervals] : answers) {
      nlohmann::ordered_json entry;
      entry["tuple"] = tuple;
      if (temporal) {
        nlohmann::ordered_json ivs = nlohmann::ordered_json::array();
        for (const Interval& iv : intervals.intervals()) {
          ivs.push_back({boundJson(iv.lo), boundJson(iv.hi)});
        }
        entry["intervals"] = ivs;
      }
      out["answers"].push_back(entry);
    }
    return out.dump();
  }
  std::string out;
  for (const auto& [tuple, intervals] : answers) {
    std::string prefix;
    for (size_t i = 0; i < tuple.size(); ++i) {
      if (i) prefix += ",";
      prefix += tuple[i];
    }
    if (!temporal) {
      out += prefix + "\n";
      continue;
    }
    for (const Interval& iv : intervals.intervals()) {
      out += prefix;
      if (!tuple.empty()) out += ",";
      out += boundStr(iv.lo) + "," + boundStr(iv.hi) + "\n";
    }
  }
  return out;
}

// --- serialization ----------------------------------------------------------

std::string serializeKB(const KnowledgeBase& kb) {
  std::string out;
  for (const auto& [r, s] : kb.rawRoleCis) {
    out += "role " + kb.roleName(r) + " SUB " + kb.roleName(s) + "\n";
  }
  for (const RawCI& ci : kb.rawCis) {
    out += conceptToString(kb, ci.lhs) + " SUB " + conceptToString(kb, ci.rhs) +
           "\n";
  }
  auto timeSuffix = [](const std::optional<int64_t>& t) {
    return t ? " @ " + std::to_string(*t) : std::string();
  };
  for (const ComplexAssertion& ca : kb.complexAssertions) {
    out += conceptToString(kb, ca.concept_) + "(" +
           kb.individualName(ca.subject) + ")" + timeSuffix(ca.time) + "\n";
  }
  for (const Assertion& a : kb.abox) {
    if (a.isRole) {
      out += kb.roleName(a.role) + "(" + kb.individualName(a.subject) + "," +
             kb.individualName(a.object) + ")" + timeSuffix(a.time) + "\n";
    } else {
      out += kb.conceptName(a.concept_) + "(" + kb.individualName(a.subject) +
             ")" + timeSuffix(a.time) + "\n";
    }
  }
  return out;
}

namespace {

std::string intervalSuffix(int64_t lo, int64_t hi) {
  auto b = [](int64_t v) -> std::string {
    if (v == kNegInf) return "-inf";
    if (v == kPosInf) return "inf";
    return std::to_string(v);
  };
  return "[" + b(lo) + "," + b(hi) + "]";
}

std::string nodeText(const KnowledgeBase& kb, const MTNodePtr& n) {
  using K = MTNode::Kind;
  switch (n->kind) {
    case K::Leaf: {
      const NCQ& q = n->leaf;
      std::string s = "{";
      for (size_t i = 0; i < q.atoms.size(); ++i) {
        const QAtom& a = q.atoms[i];
        if (i) s += ", ";
        if (a.negated) s += "not ";
        auto term = [&](const Term& t) {
          return t.isVar ? q.varNames[t.id] : kb.individualName(t.id);
        };
        if (a.isRole) {
          s += kb.roleName(a.pred) + "(" + term(a.t1) + "," + term(a.t2) + ")";
        } else {
          s += kb.conceptName(a.pred) + "(" + term(a.t1) + ")";
        }
      }
      return s + "}";
    }
    case K::True: return "TRUE";
    case K::False: return "FALSE";
    case K::Not: return "NOT (" + nodeText(kb, n->child1) + ")";
    case K::And:
      return "(" + nodeText(kb, n->child1) + " AND " +
             nodeText(kb, n->child2) + ")";
    case K::Or:
      return "(" + nodeText(kb, n->child1) + " OR " +
             nodeText(kb, n->child2) + ")";
    case K::Until:
      return "((" + nodeText(kb, n->child1) + ") U" +
             intervalSuffix(n->lo, n->hi) + " (" + nodeText(kb, n->child2) +
             "))";
    case K::Since:
      return "((" + nodeText(kb, n->child1) + ") S" +
             intervalSuffix(n->lo, n->hi) + " (" + nodeText(kb, n->child2) +
             "))";
    case K::Box:
      return "BOX" + intervalSuffix(n->lo, n->hi) + " (" +
             nodeText(kb, n->child1) + ")";
    case K::Dia:
      return "DIA" + intervalSuffix(n->lo, n->hi) + " (" +
             nodeText(kb, n->child1) + ")";
    case K::Next: return "NEXT (" + nodeText(kb, n->child1) + ")";
    case K::Prev: return "PREV (" + nodeText(kb, n->child1) + ")";
  }
  return "?";
}

}  // namespace

std::string serializeQuery(const KnowledgeBase& kb, const MTNCQ& q) {
  std::string s = "q(";
  for (size_t i = 0; i < q.answerVarNames.size(); ++i) {
    if (i) s += ",";
    s += q.answerVarNames[i];
  }
  return s + ") := " + nodeText(kb, q.root) + "\n";
}

}  // namespace mwq
