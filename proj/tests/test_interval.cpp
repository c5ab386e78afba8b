#include <doctest.h>

#include <random>

#include "mwq/interval_set.hpp"

using namespace mwq;

namespace {

IntervalSet randomSet(std::mt19937_64& rng, int maxIntervals = 6,
                      int64_t span = 30) {
  std::uniform_int_distribution<int> count(0, maxIntervals);
  std::uniform_int_distribution<int64_t> point(-span, span);
  std::uniform_int_distribution<int64_t> len(0, 6);
  std::vector<Interval> raw;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int64_t lo = point(rng);
    raw.push_back({lo, lo + len(rng)});
  }
  return IntervalSet::make(std::move(raw));
}

// Pointwise reference for the diamond definitions over a finite window.
bool diamondPointwise(DiamondOp op, const IntervalSet& m, int64_t i,
                      int64_t wLo, int64_t wHi) {
  switch (op.kind) {
    case DiamondKind::AnyTime:
      return !m.isEmpty();
    case DiamondKind::Future:
      for (int64_t k = i; k <= wHi; ++k) {
        if (m.contains(k)) return true;
      }
      return m.maxValue() == kPosInf;
    case DiamondKind::Past:
      for (int64_t k = wLo; k <= i; ++k) {
        if (m.contains(k)) return true;
      }
      return m.minValue() == kNegInf;
    case DiamondKind::Convex: {
      bool before = m.minValue() == kNegInf, after = m.maxValue() == kPosInf;
      for (int64_t k = wLo; k <= i; ++k) before = before || m.contains(k);
      for (int64_t k = i; k <= wHi; ++k) after = after || m.contains(k);
      return before && after;
    }
    case DiamondKind::ConvexN:
      for (int64_t j = wLo; j <= i; ++j) {
        if (!m.contains(j)) continue;
        for (int64_t k = i; k <= wHi && k - j < op.n; ++k) {
          if (m.contains(k)) return true;
        }
      }
      return false;
  }
  return false;
}

}  // namespace

TEST_SUITE("interval_set") {

TEST_CASE("make keeps canonical input") {
  IntervalSet s = IntervalSet::make({{0, 0}, {167, 258}});
  CHECK(s.intervals() == std::vector<Interval>{{0, 0}, {167, 258}});
  CHECK(s.isCanonical());
}

TEST_CASE("make merges adjacency") {
  IntervalSet s = IntervalSet::make({{1, 3}, {4, 6}});
  CHECK(s.intervals() == std::vector<Interval>{{1, 6}});
}

TEST_CASE("make merges overlap; membership matches enumeration") {
  IntervalSet s = IntervalSet::make({{5, 9}, {2, 6}});
  CHECK(s.intervals() == std::vector<Interval>{{2, 9}});
  for (int64_t i = 0; i <= 12; ++i) {
    bool raw = (5 <= i && i <= 9) || (2 <= i && i <= 6);
    CHECK(s.contains(i) == raw);
  }
}

TEST_CASE("make rejects malformed intervals") {
  CHECK_THROWS_AS(IntervalSet::make({{3, 2}}), Error);
}

TEST_CASE("set operations") {
  IntervalSet a = IntervalSet::make({{0, 3}});
  IntervalSet b = IntervalSet::make({{2, 5}});
  CHECK(a.unite(b).intervals() == std::vector<Interval>{{0, 5}});

  IntervalSet fromZero = IntervalSet::make({{0, kPosInf}});
  IntervalSet toZero = IntervalSet::make({{kNegInf, 0}});
  CHECK(fromZero.intersect(toZero).intervals() ==
        std::vector<Interval>{{0, 0}});

  IntervalSet point = IntervalSet::make({{0, 0}});
  IntervalSet comp = point.complement();
  CHECK(comp.intervals() ==
        std::vector<Interval>{{kNegInf, -1}, {1, kPosInf}});
  for (int64_t i = -5; i <= 5; ++i) {
    CHECK(comp.contains(i) == (i != 0));
  }
}

TEST_CASE("diamond of empty is empty") {
  for (DiamondOp op : {DiamondOp::past(), DiamondOp::future(),
                       DiamondOp::anyTime(), DiamondOp::convex(),
                       DiamondOp::convexN(3)}) {
    CHECK(applyDiamond(op, IntervalSet::empty()).isEmpty());
  }
}

TEST_CASE("conv[1] is the identity") {
  IntervalSet m = IntervalSet::make({{0, 0}, {5, 5}});
  CHECK(applyDiamond(DiamondOp::convexN(1), m) == m);
}

TEST_CASE("conv[120] closes only the small gap") {
  IntervalSet m = IntervalSet::make({{0, 0}, {167, 167}, {258, 258}});
  IntervalSet r = applyDiamond(DiamondOp::convexN(120), m);
  CHECK(r.intervals() == std::vector<Interval>{{0, 0}, {167, 258}});
}

TEST_CASE("past of a point reaches forward") {
  IntervalSet r = applyDiamond(DiamondOp::past(), IntervalSet::point(5));
  CHECK(r.intervals() == std::vector<Interval>{{5, kPosInf}});
}

TEST_CASE("properties: canonicality, monotonicity, extensivity, idempotence") {
  std::mt19937_64 rng(7);
  const std::vector<DiamondOp> ops = {
      DiamondOp::past(),     DiamondOp::future(), DiamondOp::anyTime(),
      DiamondOp::convex(),   DiamondOp::convexN(1), DiamondOp::convexN(3),
      DiamondOp::convexN(10)};
  for (int trial = 0; trial < 300; ++trial) {
    IntervalSet m = randomSet(rng);
    IntervalSet bigger = m.unite(randomSet(rng));
    for (DiamondOp op : ops) {
      IntervalSet dm = applyDiamond(op, m);
      CHECK(dm.isCanonical());
      // extensivity
      CHECK(m.intersect(dm) == m);
      // monotonicity
      IntervalSet dBigger = applyDiamond(op, bigger);
      CHECK(dm.intersect(dBigger) == dm);
    }
    IntervalSet c = applyDiamond(DiamondOp::convex(), m);
    CHECK(applyDiamond(DiamondOp::convex(), c) == c);
  }
}

TEST_CASE("diamonds agree with the pointwise definitions") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    IntervalSet m = randomSet(rng);
    std::uniform_int_distribution<int64_t> nDist(1, 10);
    int64_t n = nDist(rng);
    const std::vector<DiamondOp> ops = {
        DiamondOp::past(), DiamondOp::future(), DiamondOp::anyTime(),
        DiamondOp::convex(), DiamondOp::convexN(n)};
    int64_t wLo = (m.isEmpty() ? 0 : m.minValue()) - n - 2;
    int64_t wHi = (m.isEmpty() ? 0 : m.maxValue()) + n + 2;
    for (DiamondOp op : ops) {
      IntervalSet result = applyDiamond(op, m);
      for (int64_t i = wLo; i <= wHi; ++i) {
        bool expected = !m.isEmpty() && diamondPointwise(op, m, i, wLo, wHi);
        CHECK_MESSAGE(result.contains(i) == expected,
                      op.str(), " at ", i, " over ", m.str());
      }
    }
  }
}

}  // TEST_SUITE
