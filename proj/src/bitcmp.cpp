#include "mwq/bitcmp.hpp"

namespace mwq {
namespace {

// Sign/magnitude encoding: sign(t) iff t >= 0; bit j of `bits` holds the
// jth magnitude bit. Everything below manipulates the encoding through the
// inductive successor definitions only.
struct BitState {
  bool sign = true;
  uint64_t bits = 0;
  bool ovf = false;
  int n = 0;
};

BitState encode(int64_t t, int nBits) {
  require(nBits >= 1 && nBits <= 62, ErrorKind::Validation,
          "bit width out of range");
  BitState s;
  s.n = nBits;
  s.sign = t >= 0;
  uint64_t mag = t >= 0 ? static_cast<uint64_t>(t)
                        : static_cast<uint64_t>(-(t + 1)) + 1;
  require(mag < (uint64_t{1} << nBits), ErrorKind::Validation,
          "time point does not fit in the requested bit width");
  s.bits = mag;
  return s;
}

// One application of the inductive successor definitions (adds 1).
BitState step(const BitState& s) {
  const uint64_t full = (uint64_t{1} << s.n) - 1;
  BitState out;
  out.n = s.n;
  out.ovf = s.ovf || (s.sign && s.bits == full);

  // sign flips to non-negative exactly when the old value is -1:
  // bit j holds iff j is the least index.
  bool isMinusOne = !s.sign && s.bits == 1;
  out.sign = s.sign || isMinusOne;

  bool lowerAllSet = true;    // "no j' < j with ~bit(j')"
  bool lowerAllClear = true;  // "no j' < j with bit(j')"
  uint64_t bits = 0;
  for (int j = 0; j < s.n; ++j) {
    bool bit = (s.bits >> j) & 1;
    bool incrementCase = s.sign && (bit == !lowerAllSet);
    bool decrementCase = !out.sign && (bit == !lowerAllClear);
    if (incrementCase || decrementCase) bits |= uint64_t{1} << j;
    lowerAllSet = lowerAllSet && bit;
    lowerAllClear = lowerAllClear && !bit;
  }
  out.bits = bits;
  return out;
}

bool bitsEqual(const BitState& a, const BitState& b) {
  return a.sign == b.sign && a.bits == b.bits;
}

// a < b, by signs and the most significant differing bit.
bool bitsLess(const BitState& a, const BitState& b) {
  if (!a.sign && b.sign) return true;
  if (a.sign != b.sign) return false;
  for (int j = a.n - 1; j >= 0; --j) {
    bool ba = (a.bits >> j) & 1;
    bool bb = (b.bits >> j) & 1;
    if (ba == bb) continue;
    return bb == a.sign;
  }
  return false;
}

Relation mirror(Relation r) {
  switch (r) {
    case Relation::Lt: return Relation::Gt;
    case Relation::Le: return Relation::Ge;
    case Relation::Eq: return Relation::Eq;
    case Relation::Ge: return Relation::Le;
    case Relation::Gt: return Relation::Lt;
  }
  fail(ErrorKind::Internal, "unknown relation");
}

}  // namespace

Relation parseRelation(const std::string& s) {
  if (s == "<") return Relation::Lt;
  if (s == "<=") return Relation::Le;
  if (s == "=" || s == "==") return Relation::Eq;
  if (s == ">=") return Relation::Ge;
  if (s == ">") return Relation::Gt;
  fail(ErrorKind::Parse, "unknown relation: " + s);
}

std::string relationStr(Relation r) {
  switch (r) {
    case Relation::Lt: return "<";
    case Relation::Le: return "<=";
    case Relation::Eq: return "=";
    case Relation::Ge: return ">=";
    case Relation::Gt: return ">";
  }
  return "?";
}

bool bitCompare(int64_t t1, int64_t t2, Relation rel, int64_t d, int nBits) {
  if (d < 0) {
    require(d != INT64_MIN, ErrorKind::Validation, "offset out of range");
    return bitCompare(t2, t1, mirror(rel), -d, nBits);
  }
  BitState lhs = encode(t1, nBits);  // becomes t1 + d
  const BitState rhs = encode(t2, nBits);
  for (int64_t k = 0; k < d; ++k) lhs = step(lhs);

  // After overflow t1 + d exceeds every representable t2.
  bool eq = !lhs.ovf && bitsEqual(rhs, lhs);
  bool lt = lhs.ovf || bitsLess(rhs, lhs);  // t2 < t1 + d
  switch (rel) {
    case Relation::Lt: return lt;
    case Relation::Le: return lt || eq;
    case Relation::Eq: return eq;
    case Relation::Ge: return !lt;
    case Relation::Gt: return !(lt || eq);
  }
  fail(ErrorKind::Internal, "unknown relation");
}

std::string emitComparatorFormula(Relation rel, int64_t d, int nBits) {
  std::string out;
  out += "# t' - t " + relationStr(rel) + " " + std::to_string(d) + " over " +
         std::to_string(nBits) + "-bit sign/magnitude encodings\n";
  if (d < 0) {
    out += "# negative offset: mirrored to  t - t' " +
           relationStr(mirror(rel)) + " " + std::to_string(-d) + "\n";
    d = -d;
    rel = mirror(rel);
  }
  std::string ds = std::to_string(d);
  out += "lt(t,t') := (~sign(t) /\\ sign(t')) \\/ ((sign(t) <-> sign(t')) /\\ "
         "exists j. ((forall j'. (j' > j) -> (bit(t',j') <-> bit(t,j'))) /\\ "
         "(bit(t',j) <-> sign(t)) /\\ (bit(t',j) <-> ~bit(t,j))))\n";
  out += "eq" + ds + "(t,t') := (sign(t') <-> sign" + ds +
         "(t)) /\\ (forall j. bit(t',j) <-> bit" + ds + "(t,j)) /\\ ~ovf" +
         ds + "(t)\n";
  out += "lt" + ds + "(t,t') := ovf" + ds +
         "(t) \\/ ((~sign(t') /\\ sign" + ds + "(t)) \\/ ((sign(t') <-> sign" +
         ds + "(t)) /\\ exists j. ((forall j'. (j' > j) -> (bit" + ds +
         "(t,j') <-> bit(t',j'))) /\\ (bit" + ds +
         "(t,j) <-> sign(t')) /\\ (bit" + ds + "(t,j) <-> ~bit(t',j)))))\n";
  switch (rel) {
    case Relation::Lt:
      out += "cmp(t,t') := lt" + ds + "(t,t')\n";
      break;
    case Relation::Le:
      out += "cmp(t,t') := lt" + ds + "(t,t') \\/ eq" + ds + "(t,t')\n";
      break;
    case Relation::Eq:
      out += "cmp(t,t') := eq" + ds + "(t,t')\n";
      break;
    case Relation::Ge:
      out += "cmp(t,t') := ~lt" + ds + "(t,t')\n";
      break;
    case Relation::Gt:
      out += "cmp(t,t') := ~(lt" + ds + "(t,t') \\/ eq" + ds + "(t,t'))\n";
      break;
  }
  out += "ovf0(t) := false\n";
  out += "sign0(t) := sign(t)\n";
  out += "bit0(t,j) := bit(t,j)\n";
  for (int64_t k = 0; k < d; ++k) {
    std::string K = std::to_string(k), K1 = std::to_string(k + 1);
    out += "ovf" + K1 + "(t) := ovf" + K + "(t) \\/ (sign" + K +
           "(t) /\\ forall j. bit" + K + "(t,j))\n";
    out += "sign" + K1 + "(t) := sign" + K +
           "(t) \\/ (forall j. (exists j'. j' < j) <-> ~bit" + K + "(t,j))\n";
    out += "bit" + K1 + "(t,j) := (sign" + K + "(t) /\\ (bit" + K +
           "(t,j) <-> exists j'. (j' < j) /\\ ~bit" + K +
           "(t,j'))) \\/ (~sign" + K1 + "(t) /\\ (bit" + K +
           "(t,j) <-> exists j'. (j' < j) /\\ bit" + K + "(t,j')))\n";
  }
  return out;
}

}  // namespace mwq
