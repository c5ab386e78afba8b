#include "mwq/temporal.hpp"

#include <algorithm>

namespace mwq {

namespace {
const IntervalSet kEmptySet;
}

const IntervalSet& TemporalExtensionMap::conceptAt(IndividualId a,
                                                   ConceptId c) const {
  auto it = concepts.find({a, c});
  return it == concepts.end() ? kEmptySet : it->second;
}

const IntervalSet& TemporalExtensionMap::roleAt(IndividualId a, IndividualId b,
                                                RoleId r) const {
  auto it = roles.find({a, b, r});
  return it == roles.end() ? kEmptySet : it->second;
}

namespace {

struct TemporalSaturation {
  TemporalSaturation(const KnowledgeBase& k, const SubsumptionTable& t)
      : kb(k), table(t) {}
  const KnowledgeBase& kb;
  const SubsumptionTable& table;
  TemporalExtensionMap ext;
  std::optional<std::string> bottomWitness;

  const IntervalSet& get(IndividualId a, ConceptId c) {
    static const IntervalSet all = IntervalSet::all();
    if (c == kTop) return all;
    return ext.conceptAt(a, c);
  }

  bool add(IndividualId a, ConceptId c, const IntervalSet& points) {
    if (c == kTop || points.isEmpty()) return false;
    IntervalSet& cur = ext.concepts[{a, c}];
    IntervalSet merged = cur.unite(points);
    if (merged == cur) return false;
    cur = std::move(merged);
    if (c == kBot && !bottomWitness) {
      int64_t t = cur.samplePoints().front();
      bottomWitness = "bot derivable at " + kb.individualName(a) + " @ " +
                      std::to_string(t);
    }
    return true;
  }

  void run() {
    // Roles: asserted times, closed under the role hierarchy once.
    for (const Assertion& a : kb.abox) {
      if (!a.isRole) continue;
      require(a.time.has_value(), ErrorKind::Internal,
              "temporal KB with untimed assertion");
      IntervalSet pt = IntervalSet::point(*a.time);
      for (RoleId s : table.tboxRoles()) {
        if (table.roleSubsumes(a.role, s)) {
          auto& cur = ext.roles[{a.subject, a.object, s}];
          cur = cur.unite(pt);
        }
      }
      auto& cur = ext.roles[{a.subject, a.object, a.role}];
      cur = cur.unite(pt);
    }
    for (const Assertion& a : kb.abox) {
      if (a.isRole) continue;
      require(a.time.has_value(), ErrorKind::Internal,
              "temporal KB with untimed assertion");
      add(a.subject, a.concept_, IntervalSet::point(*a.time));
    }

    size_t individuals = kb.individuals.size();
    bool changed = true;
    while (changed && !bottomWitness) {
      changed = false;
      for (IndividualId ind = 0; ind < individuals && !bottomWitness; ++ind) {
        changed |= closeUnderSubsumers(ind);
        changed |= applyAxioms(ind);
      }
    }
  }

  bool closeUnderSubsumers(IndividualId ind) {
    bool changed = false;
    std::vector<std::pair<ConceptId, IntervalSet>> current;
    for (const auto& [key, points] : ext.concepts) {
      if (key.first == ind) current.emplace_back(key.second, points);
    }
    for (const auto& [a, points] : current) {
      for (ConceptId b : table.tboxConcepts()) {
        if (b != a && b != kTop && table.conceptSubsumes(a, b)) {
          changed |= add(ind, b, points);
        }
      }
    }
    return changed;
  }

  bool applyAxioms(IndividualId ind) {
    bool changed = false;
    for (const NormalAxiom& ax : kb.tbox) {
      switch (ax.kind) {
        case NormalAxiom::Kind::ConjCI: {
          IntervalSet both = get(ind, ax.a1).intersect(get(ind, ax.a2));
          changed |= add(ind, ax.b, both);
          break;
        }
        case NormalAxiom::Kind::DiamCI:
          changed |= add(ind, ax.b, applyDiamond(ax.op, get(ind, ax.a1)));
          break;
        case NormalAxiom::Kind::ExistsLHS: {
          for (const auto& [key, times] : ext.roles) {
            if (std::get<0>(key) != ind || std::get<2>(key) != ax.r) continue;
            IndividualId obj = std::get<1>(key);
            changed |= add(ind, ax.b, times.intersect(get(obj, ax.a1)));
          }
          break;
        }
        default:
          break;
      }
    }
    return changed;
  }
};

}  // namespace

TemporalExtensionMap saturate(const KnowledgeBase& kb,
                              const SubsumptionTable& table) {
  require(kb.normalized, ErrorKind::Internal, "saturate needs a normalized KB");
  require(kb.mode == KbMode::Temporal, ErrorKind::Internal,
          "saturate expects a temporal KB");
  TemporalSaturation sat(kb, table);
  sat.run();
  if (sat.bottomWitness) {
    fail(ErrorKind::Inconsistent, "inconsistent KB: " + *sat.bottomWitness);
  }
  return std::move(sat.ext);
}

std::vector<int64_t> representatives(const KnowledgeBase& kb) {
  std::vector<int64_t> tem = kb.tem();
  require(!tem.empty(), ErrorKind::Validation,
          "no temporal data: the ABox has no time points");
  std::vector<int64_t> out = tem;
  out.push_back(tem.front() - 1);
  out.push_back(tem.back() + 1);
  for (size_t i = 0; i + 1 < tem.size(); ++i) {
    if (tem[i + 1] > tem[i] + 1) {
      out.push_back(tem[i] + 1);
      out.push_back(tem[i + 1] - 1);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FiniteInterpretation snapshotFromExtensions(const KnowledgeBase& kb,
                                            const TemporalExtensionMap& ext,
                                            int64_t t) {
  FiniteInterpretation out;
  out.namedCount = kb.individuals.size();
  out.elements.resize(out.namedCount);
  for (const auto& [key, points] : ext.concepts) {
    if (points.contains(t)) out.elements[key.first].concepts.insert(key.second);
  }
  for (const auto& [key, times] : ext.roles) {
    if (times.contains(t)) {
      out.addEdge(std::get<0>(key), std::get<2>(key), std::get<1>(key));
    }
  }
  return out;
}

const FiniteInterpretation& TemporalStructure::snapshotAt(int64_t point) const {
  auto it = std::lower_bound(points.begin(), points.end(), point);
  require(it != points.end() && *it == point, ErrorKind::Internal,
          "no snapshot at the requested representative");
  return snapshots[it - points.begin()];
}

FiniteInterpretation TemporalStructure::materialize(const KnowledgeBase& kb,
                                                    int64_t t) const {
  return snapshotFromExtensions(kb, extensions, t);
}

TemporalStructure buildTemporalStructure(const KnowledgeBase& kb,
                                         const SubsumptionTable& table) {
  TemporalStructure out;
  out.extensions = saturate(kb, table);
  out.tem = kb.tem();
  out.points = representatives(kb);
  for (int64_t p : out.points) {
    out.snapshots.push_back(snapshotFromExtensions(kb, out.extensions, p));
  }
  return out;
}

ConsistencyResult temporalConsistency(const KnowledgeBase& kb) {
  SubsumptionTable table = classifyForQueries(kb);
  try {
    saturate(kb, table);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Inconsistent) return {false, e.what()};
    throw;
  }
  return {true, ""};
}

}  // namespace mwq
