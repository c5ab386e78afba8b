#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mwq/eval.hpp"
#include "mwq/query.hpp"
#include "mwq/rewriter.hpp"
#include "mwq/temporal.hpp"
#include "mwq/textio.hpp"

namespace mwq {

// Temporal skeleton with every NCQ leaf replaced by its rewriting
// disjunction. Nodes live in a flat vector; ids feed the evaluation memo.
struct MFOTLNode {
  MTNode::Kind kind = MTNode::Kind::True;
  std::vector<FilteredQuery> leafDisjuncts;
  std::vector<int> leafTuplePositions;  // leaf answer var -> global position
  int child1 = -1, child2 = -1;
  int64_t lo = 0, hi = 0;
};

struct MFOTLFormula {
  std::vector<std::string> answerVarNames;
  std::vector<MFOTLNode> nodes;
  int root = -1;
};

// Replaces each leaf by the disjunction of its rewritings (w.r.t. the
// atemporal projection). Leaves must be rooted in temporal mode.
MFOTLFormula liftRewrite(const MTNCQ& q, const SubsumptionTable& table,
                         bool requireRooted = true);

// Sum of the absolute values of all finite temporal interval endpoints.
int64_t computeN(const MFOTLFormula& f);
int64_t computeNQuery(const MTNCQ& q);

// True iff no representative lies strictly between t and t+n.
bool repCheck(const std::vector<int64_t>& reps, int64_t t, int64_t n);

struct VirtualPoint {
  int64_t rep = 0;
  int64_t offset = 0;
};

class TemporalEvaluator {
 public:
  TemporalEvaluator(const KnowledgeBase& kb, const MFOTLFormula& formula,
                    const TemporalStructure& structure,
                    std::optional<int64_t> nOverride = std::nullopt);

  int64_t n() const { return n_; }

  // Truth of the formula for `tuple` at the rep-valid virtual point.
  bool evalAt(const Tuple& tuple, VirtualPoint vp);

  // Exact satisfying time points over all of Z.
  IntervalSet answerIntervalsFor(const Tuple& tuple);

  // Testing hook: evaluate a subformula at an absolute time point without
  // snapping far points to their region sample.
  bool evalSubformulaAt(int nodeId, const Tuple& tuple, int64_t point);

  const IntervalSet& covered() const { return covered_; }
  const std::vector<Interval>& farRegions() const { return farRegions_; }
  int64_t farSample(size_t region) const { return farSamples_[region]; }

 private:
  bool truthAt(int nodeId, int64_t point, bool snap = true);
  bool leafTruth(const MFOTLNode& node, int64_t snapshotPoint, bool snapped);
  bool untilAt(const MFOTLNode& node, int64_t point);
  bool sinceAt(const MFOTLNode& node, int64_t point);
  bool diaAt(const MFOTLNode& node, int64_t point);
  int64_t repForCovered(int64_t point) const;
  int regionOf(int64_t point) const;
  const FiniteInterpretation& snapshotForPoint(int64_t point);

  const KnowledgeBase& kb_;
  const MFOTLFormula& f_;
  const TemporalStructure& structure_;
  int64_t n_ = 0;
  IntervalSet covered_;
  std::vector<Interval> farRegions_;
  std::vector<int64_t> farSamples_;
  std::map<int64_t, FiniteInterpretation> extraSnapshots_;
  Tuple tuple_;
  std::map<std::pair<int, int64_t>, bool> memo_;
};

// Interval answers for every named tuple (arity from the query); tuples
// with empty interval sets are omitted.
AnswerSet answerIntervals(const MTNCQ& q, const KnowledgeBase& kb,
                          bool onlyTem = false,
                          std::optional<int64_t> nOverride = std::nullopt);

}  // namespace mwq
