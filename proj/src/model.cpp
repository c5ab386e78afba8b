#include "mwq/model.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "mwq/normalizer.hpp"

namespace mwq {

bool FiniteInterpretation::hasEdge(uint32_t d, RoleId r, uint32_t e) const {
  const auto& out = elements[d].out;
  return std::binary_search(out.begin(), out.end(), std::make_pair(r, e));
}

void FiniteInterpretation::addEdge(uint32_t d, RoleId r, uint32_t e) {
  auto& out = elements[d].out;
  auto p = std::make_pair(r, e);
  auto it = std::lower_bound(out.begin(), out.end(), p);
  if (it == out.end() || *it != p) out.insert(it, p);
}

bool FiniteInterpretation::satisfiesExists(uint32_t d, RoleId r,
                                           ConceptId b) const {
  const auto& out = elements[d].out;
  auto it = std::lower_bound(out.begin(), out.end(),
                             std::make_pair(r, uint32_t{0}));
  for (; it != out.end() && it->first == r; ++it) {
    if (hasConcept(it->second, b)) return true;
  }
  return false;
}

std::vector<uint32_t> FiniteInterpretation::successors(uint32_t d,
                                                       RoleId r) const {
  std::vector<uint32_t> out;
  const auto& edges = elements[d].out;
  auto it = std::lower_bound(edges.begin(), edges.end(),
                             std::make_pair(r, uint32_t{0}));
  for (; it != edges.end() && it->first == r; ++it) out.push_back(it->second);
  return out;
}

namespace {

struct NamedSaturation {
  NamedSaturation(const KnowledgeBase& k, const SubsumptionTable& t)
      : kb(k), table(t) {}
  const KnowledgeBase& kb;
  const SubsumptionTable& table;
  std::vector<std::set<ConceptId>> memberships;  // per individual
  // role-closed edges: (subject, role) -> objects
  std::map<std::pair<IndividualId, RoleId>, std::set<IndividualId>> edges;
  std::optional<std::string> bottomWitness;

  void run() {
    size_t n = kb.individuals.size();
    memberships.resize(n);
    for (const Assertion& a : kb.abox) {
      if (a.isRole) {
        for (RoleId s : table.tboxRoles()) {
          if (table.roleSubsumes(a.role, s)) {
            edges[{a.subject, s}].insert(a.object);
          }
        }
        edges[{a.subject, a.role}].insert(a.object);
      } else {
        memberships[a.subject].insert(a.concept_);
      }
    }
    bool changed = true;
    while (changed && !bottomWitness) {
      changed = false;
      for (IndividualId ind = 0; ind < n && !bottomWitness; ++ind) {
        changed |= closeUnderSubsumers(ind);
        changed |= applyAxioms(ind);
      }
    }
  }

  bool has(IndividualId ind, ConceptId a) const {
    return a == kTop || memberships[ind].count(a) > 0;
  }

  bool add(IndividualId ind, ConceptId b) {
    if (b == kTop) return false;
    bool fresh = memberships[ind].insert(b).second;
    if (fresh && b == kBot) {
      // Witness: an asserted fact about the offending individual.
      std::string assertedFact = "bot(" + kb.individualName(ind) + ")";
      for (const Assertion& a : kb.abox) {
        if (a.subject != ind && !(a.isRole && a.object == ind)) continue;
        if (a.isRole) {
          assertedFact = kb.roleName(a.role) + "(" +
                         kb.individualName(a.subject) + "," +
                         kb.individualName(a.object) + ")";
        } else {
          assertedFact = kb.conceptName(a.concept_) + "(" +
                         kb.individualName(a.subject) + ")";
        }
        break;
      }
      bottomWitness = "bot derivable at " + kb.individualName(ind) +
                      " (asserted: " + assertedFact + ")";
    }
    return fresh;
  }

  bool closeUnderSubsumers(IndividualId ind) {
    bool changed = false;
    std::vector<ConceptId> current(memberships[ind].begin(),
                                   memberships[ind].end());
    for (ConceptId a : current) {
      for (ConceptId b : table.tboxConcepts()) {
        if (b != a && table.conceptSubsumes(a, b)) changed |= add(ind, b);
      }
      if (table.unsatisfiable(a)) changed |= add(ind, kBot);
    }
    return changed;
  }

  bool applyAxioms(IndividualId ind) {
    bool changed = false;
    for (const NormalAxiom& ax : kb.tbox) {
      switch (ax.kind) {
        case NormalAxiom::Kind::ConjCI:
          if (has(ind, ax.a1) && has(ind, ax.a2)) changed |= add(ind, ax.b);
          break;
        case NormalAxiom::Kind::ExistsLHS: {
          auto it = edges.find({ind, ax.r});
          if (it == edges.end()) break;
          for (IndividualId obj : it->second) {
            if (has(obj, ax.a1)) {
              changed |= add(ind, ax.b);
              break;
            }
          }
          break;
        }
        default:
          break;  // ExistsRHS spawns no named facts; RoleCI handled upfront
      }
    }
    return changed;
  }
};

}  // namespace

FiniteInterpretation buildNamedPart(const KnowledgeBase& kb,
                                    const SubsumptionTable& table) {
  require(kb.normalized, ErrorKind::Internal,
          "buildNamedPart needs a normalized KB");
  require(kb.mode == KbMode::Atemporal, ErrorKind::Internal,
          "buildNamedPart expects an atemporal KB");
  NamedSaturation sat(kb, table);
  sat.run();
  if (sat.bottomWitness) {
    fail(ErrorKind::Inconsistent, "inconsistent KB: " + *sat.bottomWitness);
  }
  FiniteInterpretation out;
  out.namedCount = kb.individuals.size();
  out.elements.resize(out.namedCount);
  for (IndividualId ind = 0; ind < out.namedCount; ++ind) {
    out.elements[ind].concepts = std::move(sat.memberships[ind]);
  }
  for (const auto& [key, objs] : sat.edges) {
    for (IndividualId obj : objs) out.addEdge(key.first, key.second, obj);
  }
  return out;
}

namespace {

// Structural-equivalence class representative: lexicographically least
// (role name, concept name).
struct Restriction {
  RoleId role;
  ConceptId filler;
};

}  // namespace

FiniteInterpretation expandCanonical(const KnowledgeBase& kb,
                                     const SubsumptionTable& table,
                                     const FiniteInterpretation& base,
                                     int depthLimit, size_t maxElements) {
  FiniteInterpretation out = base;
  std::deque<uint32_t> queue;
  for (uint32_t e = 0; e < out.elements.size(); ++e) queue.push_back(e);

  while (!queue.empty()) {
    uint32_t d = queue.front();
    queue.pop_front();
    if (out.elements[d].depth >= depthLimit) continue;

    // V: unsatisfied entailed existential restrictions at d.
    std::vector<Restriction> v;
    for (RoleId r : table.tboxRoles()) {
      for (ConceptId b : table.tboxConcepts()) {
        if (b == kTop || b == kBot) continue;
        bool entailed = false;
        for (ConceptId a : out.elements[d].concepts) {
          if (table.entailsExists(a, r, b)) {
            entailed = true;
            break;
          }
        }
        if (entailed && !out.satisfiesExists(d, r, b)) v.push_back({r, b});
      }
    }

    // Minimal members, one representative per structural-equivalence class.
    std::vector<Restriction> minimal;
    for (const Restriction& cand : v) {
      bool isMinimal = true;
      for (const Restriction& other : v) {
        bool otherLe = table.structurallySubsumed(other.role, other.filler,
                                                  cand.role, cand.filler);
        bool candLe = table.structurallySubsumed(cand.role, cand.filler,
                                                 other.role, other.filler);
        if (otherLe && !candLe) {
          isMinimal = false;
          break;
        }
      }
      if (!isMinimal) continue;
      bool duplicate = false;
      for (Restriction& kept : minimal) {
        if (table.structurallySubsumed(kept.role, kept.filler, cand.role,
                                       cand.filler) &&
            table.structurallySubsumed(cand.role, cand.filler, kept.role,
                                       kept.filler)) {
          auto key = [&](const Restriction& x) {
            return std::make_pair(kb.roleName(x.role),
                                  kb.conceptName(x.filler));
          };
          if (key(cand) < key(kept)) kept = cand;
          duplicate = true;
          break;
        }
      }
      if (!duplicate) minimal.push_back(cand);
    }
    std::sort(minimal.begin(), minimal.end(),
              [&](const Restriction& a, const Restriction& b) {
                return std::make_pair(kb.roleName(a.role),
                                      kb.conceptName(a.filler)) <
                       std::make_pair(kb.roleName(b.role),
                                      kb.conceptName(b.filler));
              });

    for (const Restriction& res : minimal) {
      require(out.elements.size() < maxElements, ErrorKind::Refusal,
              "canonical model expansion exceeds the element limit");
      FiniteInterpretation::Element e;
      e.depth = out.elements[d].depth + 1;
      e.parent = d;
      e.viaRole = res.role;
      e.viaConcept = res.filler;
      for (ConceptId a : table.tboxConcepts()) {
        if (a == kTop) continue;
        if (table.conceptSubsumes(res.filler, a)) e.concepts.insert(a);
      }
      e.concepts.insert(res.filler);
      uint32_t id = static_cast<uint32_t>(out.elements.size());
      out.elements.push_back(std::move(e));
      for (RoleId s : table.tboxRoles()) {
        if (table.roleSubsumes(res.role, s)) out.addEdge(d, s, id);
      }
      out.addEdge(d, res.role, id);
      queue.push_back(id);
    }
  }
  return out;
}

bool existentialsAcyclic(const SubsumptionTable& table) {
  // Edge m -> b for every derived existential; DFS cycle check.
  std::map<ConceptId, std::vector<ConceptId>> graph;
  for (const auto& [m, r, b] : table.existsEdges()) {
    (void)r;
    graph[m].push_back(b);
  }
  std::map<ConceptId, int> state;  // 0 new, 1 open, 2 done
  std::vector<std::pair<ConceptId, size_t>> stack;
  for (const auto& [start, _] : graph) {
    if (state[start]) continue;
    stack.push_back({start, 0});
    state[start] = 1;
    while (!stack.empty()) {
      auto& [node, idx] = stack.back();
      auto& succ = graph[node];
      if (idx >= succ.size()) {
        state[node] = 2;
        stack.pop_back();
        continue;
      }
      ConceptId next = succ[idx++];
      if (state[next] == 1) return false;
      if (state[next] == 0) {
        state[next] = 1;
        stack.push_back({next, 0});
      }
    }
  }
  return true;
}

ConsistencyResult atemporalConsistency(const KnowledgeBase& kb) {
  SubsumptionTable table = classify(kb, kb.tbox);
  NamedSaturation sat(kb, table);
  sat.run();
  if (sat.bottomWitness) return {false, *sat.bottomWitness};
  return {true, ""};
}

}  // namespace mwq
