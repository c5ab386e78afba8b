#include "mwq/mtncq.hpp"

#include <algorithm>
#include <functional>

namespace mwq {
namespace {

int buildNodes(const MTNodePtr& n, const MTNCQ& q,
               const SubsumptionTable& table, bool requireRooted,
               MFOTLFormula& out) {
  MFOTLNode node;
  node.kind = n->kind;
  node.lo = n->lo;
  node.hi = n->hi;
  if (n->kind == MTNode::Kind::Leaf) {
    if (requireRooted) {
      require(n->leaf.isRooted(), ErrorKind::Validation,
              "temporal queries require rooted NCQ leaves");
    }
    n->leaf.validateGuardedness();
    RewriteResult rew = allRewritings(n->leaf, table);
    node.leafDisjuncts = std::move(rew.queries);
    for (uint32_t av : n->leaf.answerVars) {
      const std::string& name = n->leaf.varNames[av];
      auto it = std::find(q.answerVarNames.begin(), q.answerVarNames.end(),
                          name);
      require(it != q.answerVarNames.end(), ErrorKind::Internal,
              "leaf answer variable missing from the query head");
      node.leafTuplePositions.push_back(
          static_cast<int>(it - q.answerVarNames.begin()));
    }
  } else {
    if (n->child1) {
      node.child1 = buildNodes(n->child1, q, table, requireRooted, out);
    }
    if (n->child2) {
      node.child2 = buildNodes(n->child2, q, table, requireRooted, out);
    }
  }
  out.nodes.push_back(std::move(node));
  return static_cast<int>(out.nodes.size() - 1);
}

}  // namespace

MFOTLFormula liftRewrite(const MTNCQ& q, const SubsumptionTable& table,
                         bool requireRooted) {
  MFOTLFormula out;
  out.answerVarNames = q.answerVarNames;
  out.root = buildNodes(q.root, q, table, requireRooted, out);
  return out;
}

int64_t computeN(const MFOTLFormula& f) {
  int64_t n = 0;
  auto addBound = [&](int64_t v) {
    if (v == kNegInf || v == kPosInf) return;
    n += v < 0 ? -v : v;
    require(n <= (int64_t{1} << 61), ErrorKind::Validation,
            "temporal interval bounds are too large");
  };
  for (const MFOTLNode& node : f.nodes) {
    switch (node.kind) {
      case MTNode::Kind::Until:
      case MTNode::Kind::Since:
      case MTNode::Kind::Box:
      case MTNode::Kind::Dia:
        addBound(node.lo);
        addBound(node.hi);
        break;
      case MTNode::Kind::Next:
      case MTNode::Kind::Prev:
        addBound(1);
        addBound(1);
        break;
      default:
        break;
    }
  }
  return n;
}

int64_t computeNQuery(const MTNCQ& q) {
  int64_t n = 0;
  auto addBound = [&](int64_t v) {
    if (v == kNegInf || v == kPosInf) return;
    n += v < 0 ? -v : v;
    require(n <= (int64_t{1} << 61), ErrorKind::Validation,
            "temporal interval bounds are too large");
  };
  std::function<void(const MTNodePtr&)> walk = [&](const MTNodePtr& node) {
    if (!node) return;
    switch (node->kind) {
      case MTNode::Kind::Until:
      case MTNode::Kind::Since:
      case MTNode::Kind::Box:
      case MTNode::Kind::Dia:
        addBound(node->lo);
        addBound(node->hi);
        break;
      case MTNode::Kind::Next:
      case MTNode::Kind::Prev:
        addBound(2);
        break;
      default:
        break;
    }
    walk(node->child1);
    walk(node->child2);
  };
  walk(q.root);
  return n;
}

bool repCheck(const std::vector<int64_t>& reps, int64_t t, int64_t n) {
  int64_t lo = std::min(t, t + n);
  int64_t hi = std::max(t, t + n);
  for (int64_t r : reps) {
    if (r <= lo) continue;
    if (r >= hi && !(n > 0 && r == hi)) break;
    if (r > lo && r < hi) return false;
    if (n > 0 && r == hi) return false;  // (t, t+n] is inclusive on the right
  }
  if (n < 0) {
    // [t+n, t): inclusive on the left
    for (int64_t r : reps) {
      if (r == lo) return false;
    }
  }
  return true;
}

TemporalEvaluator::TemporalEvaluator(const KnowledgeBase& kb,
                                     const MFOTLFormula& formula,
                                     const TemporalStructure& structure,
                                     std::optional<int64_t> nOverride)
    : kb_(kb), f_(formula), structure_(structure) {
  n_ = nOverride.value_or(computeN(formula));
  require(n_ >= computeN(formula), ErrorKind::Internal,
          "N override below the formula bound");
  std::vector<Interval> blocks;
  for (int64_t r : structure_.points) blocks.push_back({r - n_, r + n_});
  covered_ = IntervalSet::make(std::move(blocks));
  farRegions_ = covered_.complement().intervals();
  for (const Interval& region : farRegions_) {
    int64_t sample;
    if (region.lo == kNegInf) {
      sample = region.hi - n_ - 1;
    } else if (region.hi == kPosInf) {
      sample = region.lo + n_ + 1;
    } else {
      sample = region.lo + (region.hi - region.lo) / 2;
    }
    farSamples_.push_back(sample);
  }
}

int64_t TemporalEvaluator::repForCovered(int64_t point) const {
  const auto& reps = structure_.points;
  auto it = std::upper_bound(reps.begin(), reps.end(), point);
  if (it != reps.begin()) {
    int64_t below = *(it - 1);
    if (point - below <= n_) return below;
  }
  if (it != reps.end() && *it - point <= n_) return *it;
  fail(ErrorKind::Internal, "point not covered by any representative");
}

int TemporalEvaluator::regionOf(int64_t point) const {
  for (size_t i = 0; i < farRegions_.size(); ++i) {
    if (point >= farRegions_[i].lo && point <= farRegions_[i].hi) {
      return static_cast<int>(i);
    }
  }
  fail(ErrorKind::Internal, "point is not in a far region");
}

const FiniteInterpretation& TemporalEvaluator::snapshotForPoint(int64_t point) {
  auto it = extraSnapshots_.find(point);
  if (it != extraSnapshots_.end()) return it->second;
  auto [pos, _] = extraSnapshots_.emplace(
      point, structure_.materialize(kb_, point));
  return pos->second;
}

bool TemporalEvaluator::leafTruth(const MFOTLNode& node, int64_t snapshotPoint,
                                  bool snapped) {
  const FiniteInterpretation* interp;
  if (snapped && covered_.contains(snapshotPoint)) {
    interp = &structure_.snapshotAt(repForCovered(snapshotPoint));
  } else {
    interp = &snapshotForPoint(snapshotPoint);
  }
  Tuple leafBinding;
  for (int pos : node.leafTuplePositions) leafBinding.push_back(tuple_[pos]);
  for (const FilteredQuery& fq : node.leafDisjuncts) {
    if (evalFilteredBound(fq, *interp, leafBinding)) return true;
  }
  return false;
}

bool TemporalEvaluator::truthAt(int nodeId, int64_t point, bool snap) {
  int64_t key = point;
  if (snap && !covered_.contains(point)) {
    key = farSamples_[regionOf(point)];
    point = key;
  }
  auto memoKey = std::make_pair(nodeId, key);
  if (snap) {
    auto it = memo_.find(memoKey);
    if (it != memo_.end()) return it->second;
  }
  const MFOTLNode& node = f_.nodes[nodeId];
  bool value = false;
  switch (node.kind) {
    case MTNode::Kind::Leaf:
      value = leafTruth(node, point, snap);
      break;
    case MTNode::Kind::True:
      value = true;
      break;
    case MTNode::Kind::False:
      value = false;
      break;
    case MTNode::Kind::Not:
      value = !truthAt(node.child1, point);
      break;
    case MTNode::Kind::And:
      value = truthAt(node.child1, point) && truthAt(node.child2, point);
      break;
    case MTNode::Kind::Or:
      value = truthAt(node.child1, point) || truthAt(node.child2, point);
      break;
    case MTNode::Kind::Next:
      value = truthAt(node.child1, point + 1);
      break;
    case MTNode::Kind::Prev:
      value = truthAt(node.child1, point - 1);
      break;
    case MTNode::Kind::Until:
      value = untilAt(node, point);
      break;
    case MTNode::Kind::Since:
      value = sinceAt(node, point);
      break;
    case MTNode::Kind::Box:
    case MTNode::Kind::Dia:
      value = diaAt(node, point);
      break;
  }
  if (snap) memo_[memoKey] = value;
  return value;
}

namespace {

// Ascending walk over the covered points and far regions of [lo, hi].
struct Segment {
  bool isRegion = false;
  int64_t lo = 0, hi = 0;  // point: lo == hi
  int region = -1;
};

std::vector<Segment> segmentsIn(const IntervalSet& covered,
                                const std::vector<Interval>& farRegions,
                                int64_t lo, int64_t hi) {
  std::vector<Segment> out;
  if (lo > hi) return out;
  IntervalSet range = IntervalSet::make({{lo, hi}});
  IntervalSet coveredPart = covered.intersect(range);
  for (const Interval& iv : coveredPart.intervals()) {
    require(iv.lo != kNegInf && iv.hi != kPosInf, ErrorKind::Internal,
            "covered region must be finite");
    for (int64_t p = iv.lo; p <= iv.hi; ++p) {
      out.push_back({false, p, p, -1});
    }
  }
  for (size_t i = 0; i < farRegions.size(); ++i) {
    int64_t a = std::max(farRegions[i].lo, lo);
    int64_t b = std::min(farRegions[i].hi, hi);
    if (a <= b) out.push_back({true, a, b, static_cast<int>(i)});
  }
  std::sort(out.begin(), out.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace

bool TemporalEvaluator::untilAt(const MFOTLNode& node, int64_t point) {
  int64_t wLo = node.lo == kPosInf ? kPosInf : point + node.lo;
  int64_t wHi = node.hi == kPosInf ? kPosInf : point + node.hi;
  // The guard runs from `point`; witnesses live in [wLo, wHi].
  bool guardOk = true;
  for (const Segment& seg :
       segmentsIn(covered_, farRegions_, point, wHi)) {
    if (seg.isRegion) {
      int64_t witnessStart = std::max(seg.lo, wLo);
      if (witnessStart <= seg.hi && guardOk) {
        bool regionRight = truthAt(node.child2, farSamples_[seg.region]);
        bool regionLeft = truthAt(node.child1, farSamples_[seg.region]);
        if (regionRight && (witnessStart == seg.lo || regionLeft)) {
          return true;
        }
      }
      if (!truthAt(node.child1, farSamples_[seg.region])) guardOk = false;
    } else {
      if (seg.lo >= wLo && seg.lo <= wHi && guardOk &&
          truthAt(node.child2, seg.lo)) {
        return true;
      }
      if (!truthAt(node.child1, seg.lo)) guardOk = false;
    }
    if (!guardOk) break;  // later witnesses would need the failed guard
  }
  return false;
}

bool TemporalEvaluator::sinceAt(const MFOTLNode& node, int64_t point) {
  int64_t wHi = node.lo == kPosInf ? kNegInf : point - node.lo;
  int64_t wLo = node.hi == kPosInf ? kNegInf : point - node.hi;
  // Witnesses in [wLo, wHi]; the guard runs from `point` downwards.
  std::vector<Segment> segs = segmentsIn(covered_, farRegions_, wLo, point);
  bool guardOk = true;
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    const Segment& seg = *it;
    if (seg.isRegion) {
      int64_t witnessEnd = std::min(seg.hi, wHi);
      if (witnessEnd >= seg.lo && guardOk) {
        bool regionRight = truthAt(node.child2, farSamples_[seg.region]);
        bool regionLeft = truthAt(node.child1, farSamples_[seg.region]);
        if (regionRight && (witnessEnd == seg.hi || regionLeft)) {
          return true;
        }
      }
      if (!truthAt(node.child1, farSamples_[seg.region])) guardOk = false;
    } else {
      if (seg.lo >= wLo && seg.lo <= wHi && guardOk &&
          truthAt(node.child2, seg.lo)) {
        return true;
      }
      if (!truthAt(node.child1, seg.lo)) guardOk = false;
    }
    if (!guardOk) break;
  }
  return false;
}

bool TemporalEvaluator::diaAt(const MFOTLNode& node, int64_t point) {
  bool isBox = node.kind == MTNode::Kind::Box;
  int64_t lo = node.lo == kNegInf ? kNegInf
                                  : (node.lo == kPosInf ? kPosInf
                                                        : point + node.lo);
  int64_t hi = node.hi == kPosInf ? kPosInf : point + node.hi;
  // dia: exists a point in range with child true; box: forall.
  for (const Segment& seg : segmentsIn(covered_, farRegions_, lo, hi)) {
    bool v = seg.isRegion ? truthAt(node.child1, farSamples_[seg.region])
                          : truthAt(node.child1, seg.lo);
    if (!isBox && v) return true;
    if (isBox && !v) return false;
  }
  return isBox;
}

bool TemporalEvaluator::evalAt(const Tuple& tuple, VirtualPoint vp) {
  require(repCheck(structure_.points, vp.rep, vp.offset), ErrorKind::Internal,
          "virtual point is not rep-valid");
  if (tuple != tuple_) {
    memo_.clear();
    tuple_ = tuple;
  }
  return truthAt(f_.root, vp.rep + vp.offset);
}

IntervalSet TemporalEvaluator::answerIntervalsFor(const Tuple& tuple) {
  if (tuple != tuple_) {
    memo_.clear();
    tuple_ = tuple;
  }
  std::vector<Interval> raw;
  for (const Interval& block : covered_.intervals()) {
    for (int64_t p = block.lo; p <= block.hi; ++p) {
      if (truthAt(f_.root, p)) raw.push_back({p, p});
    }
  }
  for (size_t i = 0; i < farRegions_.size(); ++i) {
    if (truthAt(f_.root, farSamples_[i])) raw.push_back(farRegions_[i]);
  }
  return IntervalSet::make(std::move(raw));
}

bool TemporalEvaluator::evalSubformulaAt(int nodeId, const Tuple& tuple,
                                         int64_t point) {
  if (tuple != tuple_) {
    memo_.clear();
    tuple_ = tuple;
  }
  return truthAt(nodeId, point, /*snap=*/false);
}

AnswerSet answerIntervals(const MTNCQ& q, const KnowledgeBase& kb,
                          bool onlyTem, std::optional<int64_t> nOverride) {
  require(kb.normalized, ErrorKind::Internal,
          "answerIntervals needs a normalized KB");
  require(kb.mode == KbMode::Temporal, ErrorKind::Validation,
          "answerIntervals expects a temporal KB");
  SubsumptionTable table = classifyForQueries(kb);
  TemporalStructure structure = buildTemporalStructure(kb, table);
  MFOTLFormula formula = liftRewrite(q, table);
  TemporalEvaluator eval(kb, formula, structure, nOverride);

  IntervalSet temSet;
  if (onlyTem) {
    std::vector<Interval> pts;
    for (int64_t t : structure.tem) pts.push_back({t, t});
    temSet = IntervalSet::make(std::move(pts));
  }

  size_t arity = q.answerVarNames.size();
  size_t individuals = kb.individuals.size();
  AnswerSet out;
  std::vector<IndividualId> tuple(arity, 0);
  auto emit = [&](const Tuple& t) {
    IntervalSet result = eval.answerIntervalsFor(t);
    if (onlyTem) result = result.intersect(temSet);
    if (result.isEmpty()) return;
    std::vector<std::string> names;
    for (IndividualId id : t) names.push_back(kb.individualName(id));
    out.emplace(std::move(names), std::move(result));
  };
  if (arity == 0) {
    emit({});
    return out;
  }
  if (individuals == 0) return out;
  for (;;) {
    emit(tuple);
    size_t pos = 0;
    while (pos < arity) {
      if (++tuple[pos] < individuals) break;
      tuple[pos] = 0;
      ++pos;
    }
    if (pos == arity) break;
  }
  return out;
}

}  // namespace mwq
