#include "hyperfact/detachment.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "hyperfact/rng.hpp"

// The engine splits one new vertex off an amalgamated vertex at a time. Each
// split hands the new vertex a 1/c share of everything currently at x, where
// c is the number of detached vertices x still represents. Shares are pinned
// by fair-share windows measured against the INPUT hypergraph and the full
// number function, never against the intermediate state:
//
//   * per color j, the new vertex receives between floor and ceil of
//     d(x, j) / g(x) hinges, and the residual keeps enough to pay the
//     remaining c-1 vertices the same share;
//   * per incident key, the number of copies handing a hinge to the new
//     vertex is pinned so that both the rewritten key and the residual key
//     stay within (weight of key) * [floor, ceil] of the input multiplicity
//     divided by the pattern normalizer g~.
//
// One split is then an integer assignment problem on a (color x key) grid
// with interval marginals: a feasible-flow instance with lower bounds,
// solved exactly by Dinic on the standard excess transformation. Cell order
// is seed-permuted, which picks among the feasible assignments; when a level
// later runs dry the previous split is re-solved with a fresh seed.

namespace hyperfact {

namespace {

struct InputContext {
  const Hypergraph* f0 = nullptr;
  const NumberFunction* g0 = nullptr;
  std::map<HyperedgeKey, Count> pattern_total;  // color-blind multiplicities
  std::vector<ColorId> colors;
};

InputContext make_context(const Hypergraph& f, const NumberFunction& g) {
  InputContext ctx;
  ctx.f0 = &f;
  ctx.g0 = &g;
  for (const auto& [kc, cnt] : f.table()) ctx.pattern_total[kc.first] += cnt;
  ctx.colors = f.colors_used();
  return ctx;
}

struct WorkState {
  Hypergraph::Table table;
  std::vector<VertexId> verts;
  std::map<VertexId, int> remaining;    // detached vertices still merged here
  std::map<VertexId, VertexId> origin;  // current vertex -> input vertex
  VertexId next_id = 0;
};

WorkState initial_state(const Hypergraph& f, const NumberFunction& g) {
  WorkState st;
  st.table = f.table();
  st.verts = f.vertices();
  VertexId max_id = -1;
  for (VertexId v : f.vertices()) {
    st.remaining[v] = g.at(v);
    st.origin[v] = v;
    max_id = std::max(max_id, v);
  }
  st.next_id = max_id + 1;
  return st;
}

Hypergraph state_to_hypergraph(const WorkState& st) {
  HypergraphBuilder b;
  b.add_vertex_set(st.verts);
  for (const auto& [kc, cnt] : st.table) b.add_edge(kc.first, kc.second, cnt);
  return std::move(b).build();
}

AmalgamationMap state_psi(const WorkState& st) {
  AmalgamationMap psi;
  psi.psi = st.origin;
  return psi;
}

struct Marginal {
  Count lo = 0, hi = 0;
};

struct Cell {
  std::size_t col = 0, row = 0;
  Count cap = 0;
};

class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : head_(nodes, -1), level_(nodes),
                                        iter_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, Count cap) {
    std::size_t id = edges_.size();
    edges_.push_back({to, head_[from], cap});
    head_[from] = static_cast<long>(id);
    edges_.push_back({from, head_[to], 0});
    head_[to] = static_cast<long>(id + 1);
    return id;
  }

  Count flow_on(std::size_t edge_id) const {
    return edges_[edge_id ^ 1].cap;  // residual of the reverse edge
  }

  Count run(std::size_t source, std::size_t sink) {
    Count total = 0;
    while (bfs(source, sink)) {
      iter_ = head_;
      while (Count pushed = dfs(source, sink,
                                std::numeric_limits<Count>::max()))
        total += pushed;
    }
    return total;
  }

 private:
  struct Edge {
    std::size_t to;
    long next;
    Count cap;
  };

  bool bfs(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::size_t> queue{source};
    level_[source] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t v = queue[qi];
      for (long e = head_[v]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
        const Edge& edge = edges_[static_cast<std::size_t>(e)];
        if (edge.cap > 0 && level_[edge.to] < 0) {
          level_[edge.to] = level_[v] + 1;
          queue.push_back(edge.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  Count dfs(std::size_t v, std::size_t sink, Count limit) {
    if (v == sink) return limit;
    for (long& e = iter_[v]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
      Edge& edge = edges_[static_cast<std::size_t>(e)];
      if (edge.cap <= 0 || level_[edge.to] != level_[v] + 1) continue;
      Count pushed = dfs(edge.to, sink, std::min(limit, edge.cap));
      if (pushed > 0) {
        edge.cap -= pushed;
        edges_[static_cast<std::size_t>(e) ^ 1].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<long> head_;
  std::vector<long> level_;
  std::vector<long> iter_;
};

// Feasible assignment of cell values within cell caps and interval row and
// column sums: lower bounds are shifted out the standard way and the rest is
// a max-flow. Returns false when no assignment exists. values follows the
// cell order given.
bool solve_assignment(const std::vector<Marginal>& rows,
                      const std::vector<Marginal>& cols,
                      const std::vector<Cell>& cells,
                      std::vector<Count>& values) {
  const std::size_t source = 0, sink = 1;
  const std::size_t col_base = 2;
  const std::size_t row_base = col_base + cols.size();
  const std::size_t feeder = row_base + rows.size();    // super source
  const std::size_t collector = feeder + 1;             // super sink
  MaxFlow net(collector + 1);
  std::vector<Count> excess(feeder, 0);

  auto bounded_edge = [&](std::size_t from, std::size_t to, Count lo,
                          Count hi) {
    std::size_t id = net.add_edge(from, to, hi - lo);
    excess[to] += lo;
    excess[from] -= lo;
    return id;
  };

  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].lo > cols[c].hi) return false;
    bounded_edge(source, col_base + c, cols[c].lo, cols[c].hi);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].lo > rows[r].hi) return false;
    bounded_edge(row_base + r, sink, rows[r].lo, rows[r].hi);
  }
  std::vector<std::size_t> cell_edges(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    cell_edges[i] =
        net.add_edge(col_base + cells[i].col, row_base + cells[i].row,
                     cells[i].cap);
  net.add_edge(sink, source, std::numeric_limits<Count>::max() / 4);

  Count needed = 0;
  for (std::size_t v = 0; v < excess.size(); ++v) {
    if (excess[v] > 0) {
      net.add_edge(feeder, v, excess[v]);
      needed += excess[v];
    } else if (excess[v] < 0) {
      net.add_edge(v, collector, -excess[v]);
    }
  }
  if (net.run(feeder, collector) != needed) return false;

  values.assign(cells.size(), 0);
  for (std::size_t i = 0; i < cells.size(); ++i)
    values[i] = net.flow_on(cell_edges[i]);
  return true;
}

struct SplitProblem {
  std::vector<ColorId> row_colors;
  std::vector<HyperedgeKey> col_keys;
  std::vector<Marginal> rows, cols;
  std::vector<Cell> cells;  // lexicographic (key, color) order
};

// Collects the constraints for splitting one vertex off x. Returns nullopt
// when some window is already empty.
std::optional<SplitProblem> build_split_problem(const WorkState& st,
                                                const InputContext& ctx,
                                                VertexId x) {
  const int c = st.remaining.at(x);
  const int g0x = ctx.g0->at(x);

  struct Incidence {
    Count total = 0;
    std::map<ColorId, Count> per_color;
  };
  std::map<HyperedgeKey, Incidence> incident;
  std::map<ColorId, Count> degree_here;
  for (const auto& [kc, cnt] : st.table) {
    const auto& [key, color] = kc;
    int h = key.hinge_count(x);
    if (h == 0) continue;
    auto& inc = incident[key];
    inc.total += cnt;
    inc.per_color[color] += cnt;
    degree_here[color] += static_cast<Count>(h) * cnt;
  }

  SplitProblem prob;
  std::map<ColorId, std::size_t> row_index;
  std::vector<ColorId> colors = ctx.colors;
  for (const auto& [color, cnt] : degree_here) {
    (void)cnt;
    if (!std::binary_search(colors.begin(), colors.end(), color))
      colors.push_back(color);
  }
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  for (ColorId color : colors) {
    Count d0 = ctx.f0->degree(x, color);
    Count share_lo = floor_div(d0, g0x);
    Count share_hi = ceil_div(d0, g0x);
    auto it = degree_here.find(color);
    Count d_cur = it == degree_here.end() ? 0 : it->second;
    Marginal row;
    row.lo = std::max(share_lo, d_cur - Count(c - 1) * share_hi);
    row.hi = std::min(share_hi, d_cur - Count(c - 1) * share_lo);
    row.lo = std::max(row.lo, Count{0});
    if (row.lo > row.hi) return std::nullopt;
    if (d_cur == 0) {
      if (row.lo > 0) return std::nullopt;  // nothing to draw from
      continue;
    }
    row_index[color] = prob.rows.size();
    prob.row_colors.push_back(color);
    prob.rows.push_back(row);
  }

  for (const auto& [key, inc] : incident) {
    const int h = key.hinge_count(x);
    Count w_new = binom(c - 1, h - 1);
    Count w_res = binom(c - 1, h);
    VertexId prev = -1;
    for (VertexId v : key.verts()) {
      if (v == prev || v == x) {
        prev = v;
        continue;
      }
      prev = v;
      Count factor = binom(st.remaining.at(v), key.hinge_count(v));
      w_new *= factor;
      w_res *= factor;
    }
    HyperedgeKey pattern = key.mapped(st.origin);
    auto pit = ctx.pattern_total.find(pattern);
    Count m0 = pit == ctx.pattern_total.end() ? 0 : pit->second;
    Count normalizer = g_tilde(*ctx.g0, pattern);
    if (normalizer == 0) return std::nullopt;  // precondition was bypassed
    Count ql = floor_div(m0, normalizer);
    Count qh = ceil_div(m0, normalizer);
    Marginal col;
    col.lo = std::max({Count{0}, w_new * ql, inc.total - w_res * qh});
    col.hi = std::min(w_new * qh, inc.total - w_res * ql);
    if (col.lo > col.hi) return std::nullopt;
    std::size_t col_id = prob.cols.size();
    prob.col_keys.push_back(key);
    prob.cols.push_back(col);
    for (const auto& [color, cnt] : inc.per_color) {
      Cell cell;
      cell.col = col_id;
      cell.row = row_index.at(color);
      cell.cap = cnt;
      prob.cells.push_back(cell);
    }
  }
  return prob;
}

void apply_split(WorkState& st, VertexId x, const SplitProblem& prob,
                 const std::vector<std::size_t>& order,
                 const std::vector<Count>& values) {
  VertexId u1 = st.next_id++;
  st.verts.push_back(u1);
  st.remaining[u1] = 1;
  st.origin[u1] = x;
  st.remaining[x] -= 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Count t = values[i];
    if (t == 0) continue;
    const Cell& cell = prob.cells[order[i]];
    const HyperedgeKey& key = prob.col_keys[cell.col];
    ColorId color = prob.row_colors[cell.row];
    auto it = st.table.find({key, color});
    it->second -= t;
    if (it->second == 0) st.table.erase(it);
    st.table[{key.with_one_replaced(x, u1), color}] += t;
  }
}

// One split. The assignment solve is exact, so a false return means no fair
// split exists from this state.
bool try_split(WorkState& st, const InputContext& ctx, VertexId x,
               std::uint64_t seed) {
  auto prob = build_split_problem(st, ctx, x);
  if (!prob) return false;
  std::vector<std::size_t> order(prob->cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SplitMix64 rng(mix_seed(seed, 0x51));
  shuffle_in_place(order, rng);
  std::vector<Cell> permuted;
  permuted.reserve(order.size());
  for (std::size_t i : order) permuted.push_back(prob->cells[i]);
  std::vector<Count> values;
  if (!solve_assignment(prob->rows, prob->cols, permuted, values))
    return false;
  apply_split(st, x, *prob, order, values);
  return true;
}

std::optional<VertexId> next_split_vertex(const WorkState& st) {
  for (const auto& [v, rem] : st.remaining)
    if (rem > 1) return v;
  return std::nullopt;
}

}  // namespace

PreconditionReport check_preconditions(const Hypergraph& f,
                                       const NumberFunction& g) {
  PreconditionReport report;
  for (VertexId v : f.vertices()) {
    auto it = g.g.find(v);
    if (it == g.g.end()) {
      report.violations.push_back("g undefined at vertex " +
                                  std::to_string(v));
    } else if (it->second < 1) {
      report.violations.push_back("g(" + std::to_string(v) +
                                  ") must be positive");
    }
  }
  for (const auto& [v, value] : g.g) {
    (void)value;
    if (!f.has_vertex(v))
      report.violations.push_back("g defined at unknown vertex " +
                                  std::to_string(v));
  }
  if (!report.violations.empty()) return report;

  for (const auto& [kc, cnt] : f.table()) {
    const HyperedgeKey& key = kc.first;
    if (key.hinge_total() != 3) {
      report.violations.push_back("edge " + key.to_string() +
                                  " does not carry three hinges");
      continue;
    }
    (void)cnt;
    VertexId prev = -1;
    for (VertexId v : key.verts()) {
      if (v == prev) continue;
      prev = v;
      int h = key.hinge_count(v);
      int gv = g.at(v);
      if (h == 3 && gv <= 2)
        report.violations.push_back("m(" + std::to_string(v) +
                                    "^3) > 0 but g = " + std::to_string(gv));
      if (h == 2 && gv == 1)
        report.violations.push_back("m(" + std::to_string(v) +
                                    "^2, .) > 0 but g = 1");
    }
  }
  std::sort(report.violations.begin(), report.violations.end());
  report.violations.erase(
      std::unique(report.violations.begin(), report.violations.end()),
      report.violations.end());
  return report;
}

DetachmentResult detach(const Hypergraph& f, const NumberFunction& g,
                        std::uint64_t seed, const DetachOptions& options) {
  PreconditionReport pre = check_preconditions(f, g);
  if (!pre.eligible()) {
    std::ostringstream msg;
    msg << "detach preconditions violated:";
    for (const auto& v : pre.violations) msg << ' ' << v << ';';
    throw std::invalid_argument(msg.str());
  }
  for (const auto& [kc, cnt] : f.table()) {
    (void)cnt;
    if (kc.second == kUncolored)
      throw std::invalid_argument("detach requires every edge colored, found " +
                                  kc.first.to_string());
  }

  InputContext ctx = make_context(f, g);

  int total_splits = 0;
  for (const auto& [v, gv] : g.g) {
    (void)v;
    total_splits += gv - 1;
  }

  std::vector<WorkState> states;
  states.push_back(initial_state(f, g));
  std::vector<int> attempts(static_cast<std::size_t>(total_splits) + 1, 0);
  int level = 0;
  long solves = 0;
  const long solve_cap = 10000 + 100L * total_splits;

  while (true) {
    auto x = next_split_vertex(states.back());
    if (!x) break;
    if (++solves > solve_cap)
      throw SearchExhausted("detach: retry cap exceeded",
                            state_to_hypergraph(states.back()),
                            state_psi(states.back()));
    WorkState next = states.back();
    std::uint64_t split_seed = mix_seed(
        seed, static_cast<std::uint64_t>(level),
        static_cast<std::uint64_t>(attempts[static_cast<std::size_t>(level)]));
    if (try_split(next, ctx, *x, split_seed)) {
      states.push_back(std::move(next));
      ++level;
      continue;
    }
    // Re-solve an earlier split with a fresh seed.
    int j = level - 1;
    while (true) {
      if (j < 0)
        throw SearchExhausted("detach: search exhausted at split " +
                                  std::to_string(level),
                              state_to_hypergraph(states.back()),
                              state_psi(states.back()));
      auto ju = static_cast<std::size_t>(j);
      attempts[ju] += 1;
      if (attempts[ju] < std::max(1, options.attempts_per_level)) break;
      attempts[ju] = 0;
      --j;
    }
    for (std::size_t t = static_cast<std::size_t>(j) + 1; t < attempts.size();
         ++t)
      attempts[t] = 0;
    states.resize(static_cast<std::size_t>(j) + 1);
    level = j;
  }

  DetachmentResult result;
  result.detached = state_to_hypergraph(states.back());
  result.psi = state_psi(states.back());
  result.seed = seed;
  return result;
}

SplitOutcome split_one(const Hypergraph& f, VertexId x, int g_x,
                       std::uint64_t seed) {
  if (!f.has_vertex(x))
    throw std::invalid_argument("split_one: unknown vertex " +
                                std::to_string(x));
  if (g_x < 2) throw std::invalid_argument("split_one: need g_x >= 2");
  NumberFunction g = NumberFunction::ones_on(f);
  g.g[x] = g_x;
  PreconditionReport pre = check_preconditions(f, g);
  if (!pre.eligible()) {
    std::ostringstream msg;
    msg << "split_one preconditions violated:";
    for (const auto& v : pre.violations) msg << ' ' << v << ';';
    throw std::invalid_argument(msg.str());
  }
  InputContext ctx = make_context(f, g);
  WorkState st = initial_state(f, g);
  if (!try_split(st, ctx, x, seed))
    throw SearchExhausted("split_one: no fair split found",
                          state_to_hypergraph(st), state_psi(st));
  SplitOutcome outcome;
  outcome.new_vertex = st.next_id - 1;
  outcome.result = state_to_hypergraph(st);
  outcome.psi = state_psi(st);
  return outcome;
}

}  // namespace hyperfact
