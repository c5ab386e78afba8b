#pragma once

#include <cstdint>
#include <string>

#include "mwq/common.hpp"

namespace mwq {

enum class Relation { Lt, Le, Eq, Ge, Gt };

Relation parseRelation(const std::string& s);
std::string relationStr(Relation r);

// Decides t2 - t1 <rel> d over sign/magnitude bit encodings of width nBits,
// via the inductive bit/sign/ovf predicates only; no integer subtraction is
// involved once the inputs are encoded. d may be negative (the comparison is
// mirrored). Inputs whose magnitude needs more than nBits are rejected.
bool bitCompare(int64_t t1, int64_t t2, Relation rel, int64_t d, int nBits);

// First-order rendering of the comparison t' - t <rel> d over the bit/sign
// predicates, with the level-d auxiliary predicates spelled out.
std::string emitComparatorFormula(Relation rel, int64_t d, int nBits);

}  // namespace mwq
