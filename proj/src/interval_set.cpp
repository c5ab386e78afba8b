#include "mwq/interval_set.hpp"

#include <algorithm>

namespace mwq {

DiamondOp DiamondOp::convexN(int64_t n) {
  require(n >= 1, ErrorKind::Validation, "conv[n] requires n >= 1");
  return {DiamondKind::ConvexN, n};
}

std::string DiamondOp::str() const {
  switch (kind) {
    case DiamondKind::Past: return "diaP";
    case DiamondKind::Future: return "diaF";
    case DiamondKind::AnyTime: return "diaPF";
    case DiamondKind::Convex: return "conv";
    case DiamondKind::ConvexN: return "conv[" + std::to_string(n) + "]";
  }
  return "?";
}

IntervalSet IntervalSet::make(std::vector<Interval> raw) {
  for (const Interval& iv : raw) {
    require(iv.lo <= iv.hi, ErrorKind::Validation,
            "malformed interval: lo > hi");
  }
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  IntervalSet out;
  for (const Interval& iv : raw) {
    if (!out.ivs_.empty()) {
      Interval& prev = out.ivs_.back();
      // Merge overlapping or adjacent intervals.
      if (prev.hi == kPosInf || iv.lo <= prev.hi + 1) {
        prev.hi = std::max(prev.hi, iv.hi);
        continue;
      }
    }
    out.ivs_.push_back(iv);
  }
  return out;
}

bool IntervalSet::contains(int64_t t) const {
  auto it = std::upper_bound(
      ivs_.begin(), ivs_.end(), t,
      [](int64_t v, const Interval& iv) { return v < iv.lo; });
  if (it == ivs_.begin()) return false;
  --it;
  return t <= it->hi;
}

bool IntervalSet::isCanonical() const {
  for (size_t i = 0; i < ivs_.size(); ++i) {
    if (ivs_[i].lo > ivs_[i].hi) return false;
    if (i > 0) {
      if (ivs_[i - 1].hi == kPosInf) return false;
      if (ivs_[i].lo <= ivs_[i - 1].hi + 1) return false;
    }
  }
  return true;
}

int64_t IntervalSet::minValue() const {
  require(!isEmpty(), ErrorKind::Internal, "minValue of empty IntervalSet");
  return ivs_.front().lo;
}

int64_t IntervalSet::maxValue() const {
  require(!isEmpty(), ErrorKind::Internal, "maxValue of empty IntervalSet");
  return ivs_.back().hi;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> raw = ivs_;
  raw.insert(raw.end(), other.ivs_.begin(), other.ivs_.end());
  return make(std::move(raw));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> raw;
  size_t i = 0, j = 0;
  while (i < ivs_.size() && j < other.ivs_.size()) {
    const Interval& a = ivs_[i];
    const Interval& b = other.ivs_[j];
    int64_t lo = std::max(a.lo, b.lo);
    int64_t hi = std::min(a.hi, b.hi);
    if (lo <= hi) raw.push_back({lo, hi});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return make(std::move(raw));
}

IntervalSet IntervalSet::complement() const {
  std::vector<Interval> raw;
  int64_t next = kNegInf;
  bool open = true;  // current gap starts at `next`
  for (const Interval& iv : ivs_) {
    if (iv.lo > kNegInf && (open || next <= iv.lo - 1)) {
      if (next <= iv.lo - 1) raw.push_back({next, iv.lo - 1});
    }
    if (iv.hi == kPosInf) {
      open = false;
      break;
    }
    next = iv.hi + 1;
  }
  if (open && (ivs_.empty() || ivs_.back().hi < kPosInf)) {
    raw.push_back({next, kPosInf});
  }
  return make(std::move(raw));
}

std::vector<int64_t> IntervalSet::samplePoints() const {
  std::vector<int64_t> out;
  for (const Interval& iv : ivs_) {
    if (iv.lo == kNegInf && iv.hi == kPosInf) {
      out.push_back(0);
    } else if (iv.lo == kNegInf) {
      out.push_back(iv.hi);
    } else if (iv.hi == kPosInf) {
      out.push_back(iv.lo);
    } else {
      out.push_back(iv.lo + (iv.hi - iv.lo) / 2);
    }
  }
  return out;
}

int64_t IntervalSet::sizeOrUnbounded() const {
  int64_t total = 0;
  for (const Interval& iv : ivs_) {
    if (iv.lo == kNegInf || iv.hi == kPosInf) return -1;
    total += iv.hi - iv.lo + 1;
  }
  return total;
}

std::string IntervalSet::str() const {
  auto bound = [](int64_t v) -> std::string {
    if (v == kNegInf) return "-inf";
    if (v == kPosInf) return "inf";
    return std::to_string(v);
  };
  std::string out = "{";
  for (size_t i = 0; i < ivs_.size(); ++i) {
    if (i) out += ",";
    out += "[" + bound(ivs_[i].lo) + "," + bound(ivs_[i].hi) + "]";
  }
  return out + "}";
}

IntervalSet applyDiamond(DiamondOp op, const IntervalSet& m) {
  if (m.isEmpty()) return IntervalSet::empty();
  switch (op.kind) {
    case DiamondKind::AnyTime:
      return IntervalSet::all();
    case DiamondKind::Future:
      return IntervalSet::make({{kNegInf, m.maxValue()}});
    case DiamondKind::Past:
      return IntervalSet::make({{m.minValue(), kPosInf}});
    case DiamondKind::Convex:
      return IntervalSet::make({{m.minValue(), m.maxValue()}});
    case DiamondKind::ConvexN: {
      // Fill a gap between consecutive intervals iff witnesses j <= i <= k
      // with k - j < n exist in the original set; the tightest such pair is
      // (prev.hi, next.lo). Interior gap endpoints are always finite.
      std::vector<Interval> raw = m.intervals();
      for (size_t i = 0; i + 1 < m.intervals().size(); ++i) {
        int64_t j = m.intervals()[i].hi;
        int64_t k = m.intervals()[i + 1].lo;
        if (k - j < op.n) raw.push_back({j, k});
      }
      return IntervalSet::make(std::move(raw));
    }
  }
  fail(ErrorKind::Internal, "unknown diamond kind");
}

}  // namespace mwq
