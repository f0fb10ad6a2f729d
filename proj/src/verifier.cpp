#include "hyperfact/verifier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace hyperfact {

namespace {

// Local arithmetic so certificates depend on nothing from the constructors.
Count vbinom(Count n, Count k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Count result = 1;
  for (Count i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

Count vfloor_div(Count a, Count b) {
  Count q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

Count vceil_div(Count a, Count b) { return -vfloor_div(-a, b); }

std::string num(Count value) { return std::to_string(value); }

void add_check(Certificate& cert, std::string name, std::string expected,
               std::string actual, bool pass) {
  cert.checks.push_back(
      {std::move(name), std::move(expected), std::move(actual), pass});
}

std::string deviations(Count count) {
  return count == 0 ? "ok" : num(count) + " deviations";
}

struct ShapeInfo {
  int n = 0;
  Count r = 0;
  Count k = 0;
  bool usable = false;  // degrees and classes are safe to inspect
};

// Complete colored triple system whose classes are r-factors.
ShapeInfo factorization_checks(Certificate& cert, const Hypergraph& g,
                               std::optional<Count> r_opt) {
  ShapeInfo info;
  info.n = g.num_vertices();
  add_check(cert, "order", ">= 3", num(info.n), info.n >= 3);

  Count non_triples = 0;
  Count uncolored = 0;
  for (const auto& [kc, cnt] : g.table()) {
    (void)cnt;
    if (!kc.first.is_simple_triple()) ++non_triples;
    if (kc.second == kUncolored) ++uncolored;
  }
  add_check(cert, "simple-triples", "every edge three distinct vertices",
            deviations(non_triples), non_triples == 0);
  add_check(cert, "fully-colored", "no uncolored edges", deviations(uncolored),
            uncolored == 0);

  const Count want_edges = vbinom(info.n, 3);
  const Count have_edges = g.total_edges();
  add_check(cert, "edge-total", num(want_edges), num(have_edges),
            want_edges == have_edges);

  Count bad_triples = 0;
  const auto& verts = g.vertices();
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (std::size_t b = a + 1; b < verts.size(); ++b)
      for (std::size_t c = b + 1; c < verts.size(); ++c)
        if (g.multiplicity(HyperedgeKey::triple(verts[a], verts[b],
                                                verts[c])) != 1)
          ++bad_triples;
  add_check(cert, "complete-triples", "each 3-subset exactly once",
            deviations(bad_triples), bad_triples == 0);

  auto colors = g.colors_used();
  std::erase(colors, kUncolored);
  Count r = 0;
  if (r_opt) {
    r = *r_opt;
  } else if (!colors.empty() && info.n > 0) {
    r = g.degree(verts.front(), colors.front());
  }
  info.r = r;
  const Count host_degree = vbinom(info.n - 1, 2);
  const bool r_ok = r >= 1 && host_degree % r == 0;
  add_check(cert, "rate", "positive, divides C(n-1,2) = " + num(host_degree),
            num(r), r_ok);
  info.k = r_ok ? host_degree / r : 0;

  add_check(cert, "class-count", num(info.k), num(colors.size()),
            r_ok && static_cast<Count>(colors.size()) == info.k);

  Count irregular = 0;
  if (r_ok) {
    for (ColorId j : colors)
      for (VertexId v : verts)
        if (g.degree(v, j) != r) ++irregular;
  }
  add_check(cert, "classes-regular", "degree r at every vertex, every class",
            deviations(irregular), r_ok && irregular == 0);

  Count bad_sizes = 0;
  const bool size_defined = r_ok && (r * info.n) % 3 == 0;
  if (size_defined) {
    const Count class_size = r * info.n / 3;
    for (ColorId j : colors)
      if (g.edge_count(j) != class_size) ++bad_sizes;
  }
  add_check(cert, "class-edge-counts", "r*n/3 edges per class",
            size_defined ? deviations(bad_sizes) : "undefined",
            size_defined && bad_sizes == 0);

  info.usable = non_triples == 0 && uncolored == 0 && r_ok;
  return info;
}

bool is_dense_prefix(const Hypergraph& h) {
  const auto& vs = h.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i] != static_cast<VertexId>(i)) return false;
  return true;
}

}  // namespace

const Check* Certificate::find(const std::string& name) const {
  for (const auto& check : checks)
    if (check.name == name) return &check;
  return nullptr;
}

nlohmann::json certificate_to_json(const Certificate& cert) {
  nlohmann::json j;
  j["kind"] = cert.kind;
  j["overall"] = cert.overall;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& check : cert.checks) {
    nlohmann::json c;
    c["name"] = check.name;
    c["expected"] = check.expected;
    c["actual"] = check.actual;
    c["pass"] = check.pass;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  return j;
}

Certificate verify_factorization(const Hypergraph& g, Count r) {
  Certificate cert;
  cert.kind = "factorization";
  factorization_checks(cert, g, r);
  cert.overall = std::all_of(cert.checks.begin(), cert.checks.end(),
                             [](const Check& c) { return c.pass; });
  return cert;
}

Certificate verify_embedding(const Hypergraph& original, const Hypergraph& g,
                             EmbeddingMode mode, std::optional<Count> r) {
  Certificate cert;
  cert.kind =
      mode == EmbeddingMode::full ? "embedding-full" : "embedding-restricted";
  ShapeInfo info = factorization_checks(cert, g, r);

  const int m = original.num_vertices();
  const bool ids_ok = is_dense_prefix(original) && is_dense_prefix(g) &&
                      m <= info.n && m >= 3;
  add_check(cert, "original-vertices", "dense 0..m-1 inside the host",
            ids_ok ? "ok" : "mismatch", ids_ok);

  if (ids_ok) {
    // Original triples must reappear with identical colors and counts.
    Count mismatches = 0;
    std::map<Hypergraph::TableKey, Count> old_in_g;
    for (const auto& [kc, cnt] : g.table()) {
      bool all_old = true;
      for (VertexId v : kc.first.verts()) all_old = all_old && v < m;
      if (all_old) old_in_g[kc] += cnt;
    }
    std::map<Hypergraph::TableKey, Count> old_in_original;
    for (const auto& [kc, cnt] : original.table())
      if (kc.first.hinge_total() == 3) old_in_original[kc] += cnt;
    for (const auto& [kc, cnt] : old_in_original)
      if (old_in_g.find(kc) == old_in_g.end() || old_in_g.at(kc) != cnt)
        ++mismatches;
    for (const auto& [kc, cnt] : old_in_g) {
      (void)cnt;
      if (old_in_original.find(kc) == old_in_original.end()) ++mismatches;
    }
    add_check(cert, "old-triples-preserved", "input coloring kept",
              deviations(mismatches), mismatches == 0);
  } else {
    add_check(cert, "old-triples-preserved", "input coloring kept",
              "skipped: vertex layout invalid", false);
  }

  if (mode == EmbeddingMode::restricted && ids_ok) {
    const Count pair_copies = info.n - m;
    const Count single_copies = vbinom(info.n - m, 2);
    Count shape_bad = 0;
    for (const auto& [kc, cnt] : original.table()) {
      (void)cnt;
      if (kc.first.size() != kc.first.hinge_total() ||
          kc.second == kUncolored)
        ++shape_bad;
    }
    for (VertexId a = 0; a < m; ++a) {
      if (original.multiplicity(HyperedgeKey::single(a)) != single_copies)
        ++shape_bad;
      for (VertexId b = a + 1; b < m; ++b) {
        if (original.multiplicity(HyperedgeKey::pair(a, b)) != pair_copies)
          ++shape_bad;
        for (VertexId c = b + 1; c < m; ++c)
          if (original.multiplicity(HyperedgeKey::triple(a, b, c)) != 1)
            ++shape_bad;
      }
    }
    add_check(cert, "pieces-shape",
              "triples once, pairs n-m, singletons C(n-m,2), all colored",
              deviations(shape_bad), shape_bad == 0);

    // host edges with exactly two original vertices vs pair pieces
    std::map<std::pair<HyperedgeKey, ColorId>, Count> host_pairs, host_singles;
    for (const auto& [kc, cnt] : g.table()) {
      std::vector<VertexId> old_verts;
      for (VertexId v : kc.first.verts())
        if (v < m) old_verts.push_back(v);
      if (old_verts.size() == 2)
        host_pairs[{HyperedgeKey::pair(old_verts[0], old_verts[1]),
                    kc.second}] += cnt;
      else if (old_verts.size() == 1)
        host_singles[{HyperedgeKey::single(old_verts[0]), kc.second}] += cnt;
    }
    std::map<std::pair<HyperedgeKey, ColorId>, Count> piece_pairs,
        piece_singles;
    for (const auto& [kc, cnt] : original.table()) {
      if (kc.first.hinge_total() == 2) piece_pairs[kc] += cnt;
      if (kc.first.hinge_total() == 1) piece_singles[kc] += cnt;
    }
    auto match = [](const auto& lhs, const auto& rhs, Count& matched,
                    Count& mismatched) {
      for (const auto& [key, cnt] : lhs) {
        auto it = rhs.find(key);
        if (it != rhs.end() && it->second == cnt)
          ++matched;
        else
          ++mismatched;
      }
      for (const auto& [key, cnt] : rhs) {
        (void)cnt;
        if (lhs.find(key) == lhs.end()) ++mismatched;
      }
    };
    Count pair_matched = 0, pair_mismatched = 0;
    match(piece_pairs, host_pairs, pair_matched, pair_mismatched);
    add_check(cert, "pair-pieces-matched", "host counts equal piece counts",
              "matched=" + num(pair_matched) +
                  " mismatched=" + num(pair_mismatched),
              pair_mismatched == 0);
    Count single_matched = 0, single_mismatched = 0;
    match(piece_singles, host_singles, single_matched, single_mismatched);
    add_check(cert, "single-pieces-matched", "host counts equal piece counts",
              "matched=" + num(single_matched) +
                  " mismatched=" + num(single_mismatched),
              single_mismatched == 0);
  } else if (mode == EmbeddingMode::restricted) {
    add_check(cert, "pieces-shape", "piece census",
              "skipped: vertex layout invalid", false);
  }

  cert.overall = std::all_of(cert.checks.begin(), cert.checks.end(),
                             [](const Check& c) { return c.pass; });
  return cert;
}

Certificate verify_detachment(const Hypergraph& f,
                              const DetachmentResult& result,
                              const NumberFunction& g) {
  Certificate cert;
  cert.kind = "detachment";
  const Hypergraph& detached = result.detached;
  const auto& psi = result.psi.psi;

  bool total = true;
  for (VertexId v : detached.vertices())
    if (!psi.contains(v)) total = false;
  add_check(cert, "psi-total", "every detached vertex mapped",
            total ? "ok" : "missing vertices", total);

  std::set<VertexId> image;
  bool image_ok = total;
  for (const auto& [from, to] : psi) {
    if (!detached.has_vertex(from)) image_ok = false;
    image.insert(to);
  }
  std::set<VertexId> f_verts(f.vertices().begin(), f.vertices().end());
  image_ok = image_ok && image == f_verts;
  add_check(cert, "psi-image", "exactly the input vertices",
            image_ok ? "ok" : "mismatch", image_ok);

  std::map<VertexId, std::vector<VertexId>> fibers;
  if (image_ok)
    for (const auto& [from, to] : psi) fibers[to].push_back(from);
  bool sizes_ok = image_ok && g.g.size() == f_verts.size();
  if (sizes_ok)
    for (const auto& [x, fiber] : fibers)
      if (!g.g.contains(x) ||
          g.g.at(x) != static_cast<int>(fiber.size()))
        sizes_ok = false;
  add_check(cert, "fiber-sizes", "psi fibers realize g",
            sizes_ok ? "ok" : "mismatch", sizes_ok);

  Count non_triples = 0;
  for (const auto& [kc, cnt] : detached.table()) {
    (void)cnt;
    if (!kc.first.is_simple_triple()) ++non_triples;
  }
  add_check(cert, "three-uniform", "every edge three distinct vertices",
            deviations(non_triples), non_triples == 0);

  bool roundtrip = false;
  if (total && image_ok) {
    std::map<Hypergraph::TableKey, Count> rebuilt;
    for (const auto& [kc, cnt] : detached.table())
      rebuilt[{kc.first.mapped(psi), kc.second}] += cnt;
    roundtrip = rebuilt == f.table();
  }
  add_check(cert, "roundtrip", "amalgamation reproduces the input",
            roundtrip ? "ok" : "differs", roundtrip);

  const bool structure_ok = total && image_ok && sizes_ok;
  if (!structure_ok) {
    add_check(cert, "fiber-degrees-fair", "floor/ceil of d(x,j)/g(x)",
              "skipped: structure invalid", false);
    add_check(cert, "triple-shares-fair", "floor/ceil of m(pattern)/normalizer",
              "skipped: structure invalid", false);
    cert.overall = false;
    return cert;
  }

  std::set<ColorId> color_set;
  for (ColorId j : f.colors_used()) color_set.insert(j);
  for (ColorId j : detached.colors_used()) color_set.insert(j);

  Count degree_violations = 0;
  for (VertexId x : f.vertices()) {
    const Count share = g.g.at(x);
    for (ColorId j : color_set) {
      const Count d = f.degree(x, j);
      const Count lo = vfloor_div(d, share);
      const Count hi = vceil_div(d, share);
      for (VertexId u : fibers.at(x)) {
        const Count du = detached.degree(u, j);
        if (du < lo || du > hi) ++degree_violations;
      }
    }
  }
  add_check(cert, "fiber-degrees-fair", "floor/ceil of d(x,j)/g(x)",
            deviations(degree_violations), degree_violations == 0);

  std::map<HyperedgeKey, Count> input_pattern_total, detached_total;
  for (const auto& [kc, cnt] : f.table()) input_pattern_total[kc.first] += cnt;
  for (const auto& [kc, cnt] : detached.table())
    detached_total[kc.first] += cnt;

  // Input mass sitting on patterns the fair-share statement does not
  // constrain (too few fiber places to ever form a plain triple).
  Count unguarded_mass = 0;
  for (const auto& [pattern, cnt] : input_pattern_total) {
    bool guarded = true;
    VertexId prev = -1;
    for (VertexId x : pattern.verts()) {
      if (x == prev) continue;
      prev = x;
      const int h = pattern.hinge_count(x);
      const int share = g.g.contains(x) ? g.g.at(x) : 0;
      if ((h == 3 && share < 3) || (h == 2 && share < 2) || share < 1)
        guarded = false;
    }
    if (!guarded) unguarded_mass += cnt;
  }
  add_check(cert, "unconstrained-patterns", "-", num(unguarded_mass), true);

  Count share_violations = 0;
  const auto& dv = detached.vertices();
  for (std::size_t a = 0; a < dv.size(); ++a)
    for (std::size_t b = a + 1; b < dv.size(); ++b)
      for (std::size_t c = b + 1; c < dv.size(); ++c) {
        HyperedgeKey key = HyperedgeKey::triple(dv[a], dv[b], dv[c]);
        HyperedgeKey pattern = key.mapped(psi);
        Count normalizer = 1;
        VertexId prev = -1;
        for (VertexId x : pattern.verts()) {
          if (x == prev) continue;
          prev = x;
          normalizer *= vbinom(g.g.at(x), pattern.hinge_count(x));
        }
        auto pit = input_pattern_total.find(pattern);
        const Count mass = pit == input_pattern_total.end() ? 0 : pit->second;
        auto dit = detached_total.find(key);
        const Count mult = dit == detached_total.end() ? 0 : dit->second;
        if (mult < vfloor_div(mass, normalizer) ||
            mult > vceil_div(mass, normalizer))
          ++share_violations;
      }
  add_check(cert, "triple-shares-fair", "floor/ceil of m(pattern)/normalizer",
            deviations(share_violations), share_violations == 0);

  cert.overall = std::all_of(cert.checks.begin(), cert.checks.end(),
                             [](const Check& c) { return c.pass; });
  return cert;
}

}  // namespace hyperfact
