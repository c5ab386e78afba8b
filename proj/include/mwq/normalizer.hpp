#pragma once

#include "mwq/kb.hpp"

namespace mwq {

// Transforms the raw TBox and complex assertions into normal form, filling
// kb.tbox. Fresh names use the reserved `_N<k>` prefix; structurally equal
// complex subconcepts share one fresh name. Idempotent on normalized KBs.
void normalize(KnowledgeBase& kb);

}  // namespace mwq
