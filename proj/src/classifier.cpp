#include "mwq/classifier.hpp"

#include <algorithm>

#include "mwq/model.hpp"
#include "mwq/temporal.hpp"

namespace mwq {

std::vector<NormalAxiom> atemporalProjection(
    const std::vector<NormalAxiom>& tbox) {
  std::vector<NormalAxiom> out;
  for (const NormalAxiom& ax : tbox) {
    if (ax.kind == NormalAxiom::Kind::DiamCI) {
      out.push_back(NormalAxiom::conj(ax.a1, kTop, ax.b));
    } else {
      out.push_back(ax);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool SubsumptionTable::conceptSubsumes(ConceptId a, ConceptId b) const {
  if (a == b || b == kTop || a == kBot) return true;
  if (a >= subs_.size()) return false;
  return subs_[a].count(b) > 0 || subs_[a].count(kBot) > 0;
}

bool SubsumptionTable::roleSubsumes(RoleId r, RoleId s) const {
  if (r == s) return true;
  if (r >= roleSubs_.size()) return false;
  return roleSubs_[r].count(s) > 0;
}

bool SubsumptionTable::structurallySubsumed(RoleId r, ConceptId a, RoleId t,
                                            ConceptId b) const {
  return roleSubsumes(r, t) && conceptSubsumes(a, b);
}

bool SubsumptionTable::entailsExists(ConceptId m, RoleId s,
                                     ConceptId n) const {
  if (unsatisfiable(m)) return false;
  if (m >= edges_.size()) return false;
  for (const auto& [r0, b0] : edges_[m]) {
    if (roleSubsumes(r0, s) && conceptSubsumes(b0, n)) return true;
  }
  return false;
}

SubsumptionTable classify(const KnowledgeBase& kb,
                          const std::vector<NormalAxiom>& tbox) {
  require(kb.normalized, ErrorKind::Internal, "classify needs a normalized KB");
  SubsumptionTable t;
  size_t nc = kb.concepts.size();
  size_t nr = kb.roles.size();
  t.subs_.resize(nc);
  t.roleSubs_.resize(nr);
  t.edges_.resize(nc);

  {
    std::set<ConceptId> cs{kTop, kBot};
    std::set<RoleId> rs;
    for (const NormalAxiom& ax : tbox) {
      switch (ax.kind) {
        case NormalAxiom::Kind::ConjCI:
          cs.insert({ax.a1, ax.a2, ax.b});
          break;
        case NormalAxiom::Kind::DiamCI:
          cs.insert({ax.a1, ax.b});
          break;
        case NormalAxiom::Kind::ExistsRHS:
        case NormalAxiom::Kind::ExistsLHS:
          cs.insert({ax.a1, ax.b});
          rs.insert(ax.r);
          break;
        case NormalAxiom::Kind::RoleCI:
          rs.insert({ax.r, ax.s});
          break;
      }
    }
    t.tboxConcepts_.assign(cs.begin(), cs.end());
    t.tboxRoles_.assign(rs.begin(), rs.end());
  }

  // Reflexive-transitive role hierarchy.
  for (RoleId r = 0; r < nr; ++r) t.roleSubs_[r].insert(r);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const NormalAxiom& ax : tbox) {
      if (ax.kind != NormalAxiom::Kind::RoleCI) continue;
      for (RoleId target : std::set<RoleId>(t.roleSubs_[ax.s])) {
        changed |= t.roleSubs_[ax.r].insert(target).second;
      }
    }
  }

  for (ConceptId c = 0; c < nc; ++c) t.subs_[c].insert({c, kTop});
  t.subs_[kBot].insert(kBot);

  auto has = [&](ConceptId x, ConceptId a) {
    return a == kTop || x == a || x == kBot || t.subs_[x].count(a) > 0 ||
           t.subs_[x].count(kBot) > 0;
  };

  // Completion: CR1 conjunctions, CR2 existential edges, CR3 left-hand
  // existentials, CR4 bottom propagation over edges.
  changed = true;
  while (changed) {
    changed = false;
    for (ConceptId x = 0; x < nc; ++x) {
      if (t.subs_[x].count(kBot)) continue;
      for (const NormalAxiom& ax : tbox) {
        switch (ax.kind) {
          case NormalAxiom::Kind::ConjCI:
            if (has(x, ax.a1) && has(x, ax.a2)) {
              changed |= t.subs_[x].insert(ax.b).second;
            }
            break;
          case NormalAxiom::Kind::DiamCI:
            // Only reachable when classifying a raw temporal TBox; the
            // pointwise consequence A SUB B always holds.
            if (has(x, ax.a1)) changed |= t.subs_[x].insert(ax.b).second;
            break;
          case NormalAxiom::Kind::ExistsRHS:
            if (has(x, ax.a1)) {
              changed |= t.edges_[x].insert({ax.r, ax.b}).second;
            }
            break;
          case NormalAxiom::Kind::ExistsLHS:
            for (const auto& [r0, b0] : t.edges_[x]) {
              if (t.roleSubs_[r0].count(ax.r) && has(b0, ax.a1)) {
                changed |= t.subs_[x].insert(ax.b).second;
              }
            }
            break;
          case NormalAxiom::Kind::RoleCI:
            break;
        }
      }
      // CR4: an edge into an unsatisfiable filler sinks the source.
      for (const auto& [r0, b0] : t.edges_[x]) {
        (void)r0;
        if (b0 == kBot || t.subs_[b0].count(kBot)) {
          changed |= t.subs_[x].insert(kBot).second;
        }
      }
    }
  }

  for (ConceptId x = 0; x < nc; ++x) {
    for (const auto& [r0, b0] : t.edges_[x]) {
      t.edgesList_.emplace_back(x, r0, b0);
    }
  }
  return t;
}

SubsumptionTable classifyForQueries(const KnowledgeBase& kb) {
  if (kb.mode == KbMode::Temporal) {
    return classify(kb, atemporalProjection(kb.tbox));
  }
  return classify(kb, kb.tbox);
}

ConsistencyResult checkConsistency(const KnowledgeBase& kb) {
  if (kb.mode == KbMode::Temporal) {
    return temporalConsistency(kb);
  }
  return atemporalConsistency(kb);
}

}  // namespace mwq
