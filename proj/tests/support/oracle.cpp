#include "support/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace hyperfact::testing {

namespace {

struct OracleProblem {
  std::map<VertexId, std::vector<VertexId>> fibers;
  std::vector<VertexId> all_finals;
  // one entry per edge copy, grouped so identical copies are consecutive
  struct Copy {
    HyperedgeKey pattern;
    ColorId color;
    std::size_t group = 0;  // copies of one (pattern, color) share a group
  };
  std::vector<Copy> copies;
  std::map<HyperedgeKey, std::vector<HyperedgeKey>> choices;  // per pattern
  std::map<HyperedgeKey, Count> cap3, floor3;
  std::map<std::pair<VertexId, ColorId>, Count> capd, floord;
  std::vector<ColorId> colors;
};

// All plain triples a pattern can become once fibers are substituted.
std::vector<HyperedgeKey> pattern_choices(
    const HyperedgeKey& pattern,
    const std::map<VertexId, std::vector<VertexId>>& fibers) {
  std::vector<VertexId> distinct;
  for (VertexId v : pattern.verts())
    if (distinct.empty() || distinct.back() != v) distinct.push_back(v);
  std::vector<HyperedgeKey> result;
  std::vector<VertexId> chosen;
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == distinct.size()) {
      result.push_back(HyperedgeKey::from_verts(chosen));
      return;
    }
    const auto& fiber = fibers.at(distinct[idx]);
    const int need = pattern.hinge_count(distinct[idx]);
    std::vector<std::size_t> pick(static_cast<std::size_t>(need));
    auto combo = [&](auto&& self2, std::size_t slot, std::size_t from) -> void {
      if (slot == pick.size()) {
        for (std::size_t s : pick) chosen.push_back(fiber[s]);
        self(self, idx + 1);
        for (int t = 0; t < need; ++t) chosen.pop_back();
        return;
      }
      for (std::size_t i = from; i < fiber.size(); ++i) {
        pick[slot] = i;
        self2(self2, slot + 1, i + 1);
      }
    };
    combo(combo, 0, 0);
  };
  rec(rec, 0);
  std::sort(result.begin(), result.end());
  return result;
}

struct OracleSearch {
  const OracleProblem& prob;
  std::map<HyperedgeKey, Count> mult;
  std::map<std::pair<VertexId, ColorId>, Count> deg;
  std::map<Hypergraph::TableKey, Count> assignment;
  long long nodes_left;

  bool floors_hold() const {
    for (const auto& [pattern, lo] : prob.floor3) {
      if (lo <= 0) continue;
      for (const auto& triple : prob.choices.at(pattern)) {
        auto it = mult.find(triple);
        if ((it == mult.end() ? 0 : it->second) < lo) return false;
      }
    }
    for (const auto& [key, lo] : prob.floord) {
      if (lo <= 0) continue;
      auto it = deg.find(key);
      if ((it == deg.end() ? 0 : it->second) < lo) return false;
    }
    return true;
  }

  bool dfs(std::size_t idx, std::size_t min_choice) {
    if (--nodes_left < 0)
      throw std::runtime_error("oracle: node budget exhausted");
    if (idx == prob.copies.size()) return floors_hold();
    const auto& copy = prob.copies[idx];
    const auto& options = prob.choices.at(copy.pattern);
    const Count cap = prob.cap3.at(copy.pattern);
    for (std::size_t c = min_choice; c < options.size(); ++c) {
      const HyperedgeKey& triple = options[c];
      if (mult[triple] + 1 > cap) continue;
      bool degree_ok = true;
      for (VertexId u : triple.verts())
        if (deg[{u, copy.color}] + 1 > prob.capd.at({u, copy.color})) {
          degree_ok = false;
          break;
        }
      if (!degree_ok) continue;
      mult[triple] += 1;
      for (VertexId u : triple.verts()) deg[{u, copy.color}] += 1;
      assignment[{triple, copy.color}] += 1;
      const bool same_group = idx + 1 < prob.copies.size() &&
                              prob.copies[idx + 1].group == copy.group;
      if (dfs(idx + 1, same_group ? c : 0)) return true;
      assignment[{triple, copy.color}] -= 1;
      if (assignment[{triple, copy.color}] == 0)
        assignment.erase({triple, copy.color});
      for (VertexId u : triple.verts()) deg[{u, copy.color}] -= 1;
      mult[triple] -= 1;
    }
    return false;
  }
};

}  // namespace

std::optional<Hypergraph> oracle_find_detachment(const Hypergraph& f,
                                                 const NumberFunction& g,
                                                 long long node_budget) {
  OracleProblem prob;
  VertexId next_id = 0;
  for (VertexId v : f.vertices()) next_id = std::max(next_id, v + 1);
  for (VertexId v : f.vertices()) {
    if (!g.g.contains(v) || g.at(v) < 1) return std::nullopt;
    auto& fiber = prob.fibers[v];
    fiber.push_back(v);
    for (int i = 1; i < g.at(v); ++i) fiber.push_back(next_id++);
    for (VertexId u : fiber) prob.all_finals.push_back(u);
  }
  std::sort(prob.all_finals.begin(), prob.all_finals.end());

  std::map<HyperedgeKey, Count> pattern_mass;
  std::size_t group = 0;
  for (const auto& [kc, cnt] : f.table()) {
    if (kc.first.hinge_total() != 3) return std::nullopt;
    pattern_mass[kc.first] += cnt;
    for (Count i = 0; i < cnt; ++i)
      prob.copies.push_back({kc.first, kc.second, group});
    ++group;
  }

  for (const auto& [pattern, mass] : pattern_mass) {
    auto options = pattern_choices(pattern, prob.fibers);
    if (options.empty()) return std::nullopt;  // no room for this pattern
    const Count normalizer = static_cast<Count>(options.size());
    prob.cap3[pattern] = ceil_div(mass, normalizer);
    prob.floor3[pattern] = floor_div(mass, normalizer);
    prob.choices[pattern] = std::move(options);
  }

  std::vector<ColorId> colors = f.colors_used();
  for (VertexId x : f.vertices())
    for (ColorId j : colors)
      for (VertexId u : prob.fibers.at(x)) {
        prob.capd[{u, j}] = ceil_div(f.degree(x, j), g.at(x));
        prob.floord[{u, j}] = floor_div(f.degree(x, j), g.at(x));
      }

  OracleSearch search{prob, {}, {}, {}, node_budget};
  if (!search.dfs(0, 0)) return std::nullopt;

  HypergraphBuilder b;
  b.add_vertex_set(prob.all_finals);
  for (const auto& [kc, cnt] : search.assignment)
    b.add_edge(kc.first, kc.second, cnt);
  return std::move(b).build();
}

}  // namespace hyperfact::testing
