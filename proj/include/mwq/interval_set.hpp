#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mwq/common.hpp"

namespace mwq {

// Time points are 64-bit signed; the extremes act as -inf / +inf sentinels.
inline constexpr int64_t kNegInf = std::numeric_limits<int64_t>::min();
inline constexpr int64_t kPosInf = std::numeric_limits<int64_t>::max();

// Finite time points handed in by parsers must stay well clear of the
// sentinels so interval arithmetic never wraps.
inline constexpr int64_t kMaxTimeMagnitude = int64_t{1} << 60;

enum class DiamondKind { Past, Future, AnyTime, Convex, ConvexN };

struct DiamondOp {
  DiamondKind kind = DiamondKind::AnyTime;
  int64_t n = 0;  // only for ConvexN; must be >= 1

  static DiamondOp past() { return {DiamondKind::Past, 0}; }
  static DiamondOp future() { return {DiamondKind::Future, 0}; }
  static DiamondOp anyTime() { return {DiamondKind::AnyTime, 0}; }
  static DiamondOp convex() { return {DiamondKind::Convex, 0}; }
  static DiamondOp convexN(int64_t n);

  bool operator==(const DiamondOp&) const = default;
  std::string str() const;
};

struct Interval {
  int64_t lo = 0;
  int64_t hi = 0;
  bool operator==(const Interval&) const = default;
};

// Canonical finite union of integer intervals: sorted, disjoint, and
// non-adjacent (next.lo > prev.hi + 1). The empty vector is the empty set.
class IntervalSet {
 public:
  IntervalSet() = default;

  // Validates lo <= hi per interval, then normalizes.
  static IntervalSet make(std::vector<Interval> raw);
  static IntervalSet empty() { return {}; }
  static IntervalSet all() { return make({{kNegInf, kPosInf}}); }
  static IntervalSet point(int64_t t) { return make({{t, t}}); }

  const std::vector<Interval>& intervals() const { return ivs_; }
  bool isEmpty() const { return ivs_.empty(); }
  bool contains(int64_t t) const;
  bool isCanonical() const;

  // min/max of a non-empty set; may be the infinity sentinels.
  int64_t minValue() const;
  int64_t maxValue() const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet complement() const;  // within all of Z

  // One representative member per interval (midpoint, clamped to finite).
  std::vector<int64_t> samplePoints() const;

  // Total number of points if finite, or -1 when some interval is unbounded.
  int64_t sizeOrUnbounded() const;

  bool operator==(const IntervalSet&) const = default;
  std::string str() const;

 private:
  std::vector<Interval> ivs_;
};

// The induced function of a diamond operator on sets of time points.
IntervalSet applyDiamond(DiamondOp op, const IntervalSet& m);

}  // namespace mwq
