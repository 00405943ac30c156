#pragma once

// Provider contracts for the ten results this construction treats as black
// boxes (two Hamiltonian-cycle theorems and eight spanning-path lemmas from
// prior work).  Preconditions are transcribed clause by clause from the cited
// statements; the default provider discharges each contract with constrained
// search, decomposing multi-subcube ranges into single-subcube searches so
// the stated trace side conditions hold by construction.  Every result is
// re-verified before it is returned.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kcube/pathops.hpp"
#include "kcube/search.hpp"

namespace kcube {

enum class PrimitiveKind {
  HamPathMinusVertices,     // odd k: spanning x,y-path in Q - U, |U| <= 2n-3
  HamPathEvenParity,        // even k: spanning x,y-path, p(x) != p(y)
  HamPathMinusOne,          // even k: spanning x,y-path in Q - u
  HamPathThroughEdge,       // spanning x,y-path through one edge uv
  TwoPathThroughMatching,   // spanning 2-path P_{u,u'}+P_{v,v'} through M
  RangePath,                // spanning x,y-path in Q[p,q], top trace <= 2-path
  RangePathThroughMatching, // spanning x,y-path through M in Q[p,q], traces pinned
  RangeTwoPath,             // spanning 2-path P_{x,y}+P_{u,v} in Q[p,q]
  HamCycleThroughForest,    // cycle through a linear forest, |F| <= 2n-1
  HamCycleThroughMatching,  // cycle through a matching, |M| <= 3n-8
};

inline const char* to_string(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::HamPathMinusVertices: return "HamPathMinusVertices";
    case PrimitiveKind::HamPathEvenParity: return "HamPathEvenParity";
    case PrimitiveKind::HamPathMinusOne: return "HamPathMinusOne";
    case PrimitiveKind::HamPathThroughEdge: return "HamPathThroughEdge";
    case PrimitiveKind::TwoPathThroughMatching: return "TwoPathThroughMatching";
    case PrimitiveKind::RangePath: return "RangePath";
    case PrimitiveKind::RangePathThroughMatching: return "RangePathThroughMatching";
    case PrimitiveKind::RangeTwoPath: return "RangeTwoPath";
    case PrimitiveKind::HamCycleThroughForest: return "HamCycleThroughForest";
    case PrimitiveKind::HamCycleThroughMatching: return "HamCycleThroughMatching";
  }
  return "?";
}

// One instance layout for all ten kinds; the fields each kind reads are
// documented on its factory.
struct PrimitiveInstance {
  CubeShape shape;
  std::optional<RangeView> view;          // range kinds only
  std::vector<VertexPair> pairs;          // endpoint pairs, kind-specific order
  std::vector<Vertex> removed;            // deleted vertices (U, {u})
  Matching required;                      // M, F, or the single edge {uv}
};

inline PrimitiveInstance inst_ham_path_minus_vertices(CubeShape s, Vertex x, Vertex y,
                                                      std::vector<Vertex> removed) {
  return {s, std::nullopt, {{std::move(x), std::move(y)}}, std::move(removed), {}};
}
inline PrimitiveInstance inst_ham_path_even(CubeShape s, Vertex x, Vertex y) {
  return {s, std::nullopt, {{std::move(x), std::move(y)}}, {}, {}};
}
inline PrimitiveInstance inst_ham_path_minus_one(CubeShape s, Vertex x, Vertex y, Vertex u) {
  return {s, std::nullopt, {{std::move(x), std::move(y)}}, {std::move(u)}, {}};
}
inline PrimitiveInstance inst_ham_path_through_edge(CubeShape s, Vertex x, Vertex y, Edge uv) {
  return {s, std::nullopt, {{std::move(x), std::move(y)}}, {}, Matching{{std::move(uv)}}};
}
// pairs[0] = (u, u'), pairs[1] = (v, v'); u and v are the matching-free ends.
inline PrimitiveInstance inst_two_path_through_matching(CubeShape s, VertexPair uu,
                                                        VertexPair vv, Matching m) {
  return {s, std::nullopt, {std::move(uu), std::move(vv)}, {}, std::move(m)};
}
inline PrimitiveInstance inst_range_path(RangeView v, Vertex x, Vertex y) {
  return {v.ctx.shape, v, {{std::move(x), std::move(y)}}, {}, {}};
}
inline PrimitiveInstance inst_range_path_through_matching(RangeView v, Vertex x, Vertex y,
                                                          Matching m) {
  return {v.ctx.shape, v, {{std::move(x), std::move(y)}}, {}, std::move(m)};
}
inline PrimitiveInstance inst_range_two_path(RangeView v, VertexPair xy, VertexPair uv) {
  return {v.ctx.shape, v, {std::move(xy), std::move(uv)}, {}, {}};
}
inline PrimitiveInstance inst_ham_cycle_through_forest(CubeShape s, Matching forest) {
  return {s, std::nullopt, {}, {}, std::move(forest)};
}
inline PrimitiveInstance inst_ham_cycle_through_matching(CubeShape s, Matching m) {
  return {s, std::nullopt, {}, {}, std::move(m)};
}

// ---------------------------------------------------------------------------
// Precondition transcription.  Returns the violated clause, or nullopt.

namespace detail {

inline bool matching_in_range(const Matching& m, const RangeView& v) {
  MatchingSplit ms = restrict_matching(m, v.ctx);
  size_t counted = 0;
  for (int i = v.p; i <= v.q; ++i) counted += ms.per_cube[i].size();
  for (int i = v.p; i < v.q; ++i) counted += ms.per_boundary[i].size();
  return counted == m.size();
}

}  // namespace detail

inline std::optional<std::string> validate_precondition(PrimitiveKind kind,
                                                        const PrimitiveInstance& inst) {
  const CubeShape& s = inst.shape;
  validate_shape(s);
  for (const auto& [a, b] : inst.pairs) {
    validate_vertex(s, a);
    validate_vertex(s, b);
  }
  for (const Vertex& v : inst.removed) validate_vertex(s, v);
  auto parity_differs = [&](const Vertex& a, const Vertex& b) {
    return s.k % 2 != 0 || parity(s, a) != parity(s, b);
  };
  switch (kind) {
    case PrimitiveKind::HamPathMinusVertices: {
      if (s.n < 2) return "n >= 2";
      if (s.k % 2 == 0) return "odd k >= 3";
      const auto& [x, y] = inst.pairs.at(0);
      if (int(inst.removed.size()) > 2 * s.n - 3) return "|U| <= 2n-3";
      if (x == y) return "x,y distinct";
      for (const Vertex& u : inst.removed)
        if (u == x || u == y) return "x,y outside U";
      return std::nullopt;
    }
    case PrimitiveKind::HamPathEvenParity: {
      if (s.n < 2) return "n >= 2";
      if (s.k % 2 != 0) return "even k >= 4";
      const auto& [x, y] = inst.pairs.at(0);
      if (x == y) return "x,y distinct";
      if (parity(s, x) == parity(s, y)) return "p(x) != p(y)";
      return std::nullopt;
    }
    case PrimitiveKind::HamPathMinusOne: {
      if (s.n < 3) return "n >= 3";
      if (s.k % 2 != 0) return "even k >= 4";
      const auto& [x, y] = inst.pairs.at(0);
      const Vertex& u = inst.removed.at(0);
      if (x == y || u == x || u == y) return "u,x,y distinct";
      if (parity(s, x) != parity(s, y) || parity(s, u) == parity(s, x))
        return "p(u) != p(x) = p(y)";
      return std::nullopt;
    }
    case PrimitiveKind::HamPathThroughEdge: {
      if (s.n < 3) return "n >= 3";
      const auto& [x, y] = inst.pairs.at(0);
      if (x == y) return "x,y distinct";
      if (!parity_differs(x, y)) return "p(x) != p(y) when k even";
      if (inst.required.size() != 1 || !check_matching(s, inst.required).ok)
        return "uv is an edge";
      const Edge& uv = inst.required.edges[0];
      if ((uv.a == x && uv.b == y) || (uv.a == y && uv.b == x)) return "{u,v} != {x,y}";
      return std::nullopt;
    }
    case PrimitiveKind::TwoPathThroughMatching: {
      if (s.n < 3) return "n >= 3";
      if (!check_matching(s, inst.required).ok) return "M is a matching";
      if (int(inst.required.size()) > std::max(0, 2 * s.n - 7))
        return "|M| <= max(0, 2n-7)";
      const auto& [u, up] = inst.pairs.at(0);
      const auto& [v, vp] = inst.pairs.at(1);
      if (adjacent_dim(s, u, up) == 0 || adjacent_dim(s, v, vp) == 0 ||
          u == v || u == vp || up == v || up == vp)
        return "uu',vv' disjoint edges";
      if (inst.required.covers(u) || inst.required.covers(v))
        return "{u,v} cap V(M) empty";
      if (adjacent_dim(s, up, vp) != 0 && inst.required.contains(make_edge(s, up, vp)))
        return "u'v' not in M";
      return std::nullopt;
    }
    case PrimitiveKind::RangePath: {
      if (s.n < 3) return "n >= 3";
      if (!inst.view) return "range required";
      const RangeView& v = *inst.view;
      const auto& [x, y] = inst.pairs.at(0);
      int lx = v.ctx.label(x), ly = v.ctx.label(y);
      if (lx < v.p || lx > v.q || ly < v.p || ly > v.q) return "x,y in Q[p,q]";
      if (x == y) return "x,y distinct";
      if (!parity_differs(x, y)) return "p(x) != p(y) when k even";
      return std::nullopt;
    }
    case PrimitiveKind::RangePathThroughMatching: {
      if (s.n < 3) return "n >= 3";
      if (!inst.view) return "range required";
      const RangeView& v = *inst.view;
      if (!check_matching(s, inst.required).ok) return "M is a matching";
      if (!detail::matching_in_range(inst.required, v)) return "M inside Q[p,q]";
      MatchingSplit ms = restrict_matching(inst.required, v.ctx);
      for (int i = v.p; i <= v.q; ++i)
        if (int(ms.per_cube[i].size()) > 2 * s.n - 4) return "|M_i| <= 2n-4";
      for (int i = v.p; i < v.q; ++i)
        if (ms.per_boundary[i].size() > 1) return "|M cap E_d(i,i+1)| <= 1";
      const auto& [x, y] = inst.pairs.at(0);
      if (v.ctx.label(x) != v.p || v.ctx.label(y) != v.p ||
          adjacent_dim(s, x, y) == 0 || adjacent_dim(s, x, y) == v.ctx.d ||
          inst.required.contains(make_edge(s, x, y)))
        return "xy in E(Q[p]) minus M";
      return std::nullopt;
    }
    case PrimitiveKind::RangeTwoPath: {
      if (s.n < 4) return "n >= 4";
      if (!inst.view) return "range required";
      const RangeView& v = *inst.view;
      const auto& [x, y] = inst.pairs.at(0);
      const auto& [u, w] = inst.pairs.at(1);
      if (x == y || x == u || x == w || y == u || y == w || u == w)
        return "x,y,u,v distinct in Q[p,q]";
      if (!parity_differs(x, y)) return "p(x) != p(y) when k even";
      if (!parity_differs(u, w)) return "p(u) != p(v) when k even";
      int lx = v.ctx.label(x), ly = v.ctx.label(y);
      int lu = v.ctx.label(u), lw = v.ctx.label(w);
      bool all_p = lx == v.p && ly == v.p && lu == v.p && lw == v.p;
      bool split_pq = lx == v.p && ly == v.p && lu == v.q && lw == v.q && v.p != v.q;
      if (!all_p && !split_pq) return "endpoint location pattern";
      return std::nullopt;
    }
    case PrimitiveKind::HamCycleThroughForest: {
      if (s.n < 2) return "n >= 2";
      if (!is_linear_forest(s, inst.required.edges)) return "F is a linear forest";
      if (int(inst.required.size()) > 2 * s.n - 1) return "|F| <= 2n-1";
      return std::nullopt;
    }
    case PrimitiveKind::HamCycleThroughMatching: {
      if (s.n < 2) return "n >= 2";
      if (!check_matching(s, inst.required).ok) return "M is a matching";
      if (int(inst.required.size()) > 3 * s.n - 8) return "|M| <= 3n-8";
      return std::nullopt;
    }
  }
  return "unknown kind";
}

// ---------------------------------------------------------------------------
// Provider interface and the search-backed default.

struct PrimitiveResult {
  bool is_cycle = false;
  PathSystem paths;
  HamCycleCertificate cycle;
};

struct ProviderOptions {
  uint64_t capability = 4096;  // vertex ceiling per instance
  int side_retries = 8;
  SearchBudget budget{};
};

class Provider {
 public:
  virtual ~Provider() = default;
  virtual PrimitiveResult solve(PrimitiveKind kind, const PrimitiveInstance& inst) const = 0;
};

namespace detail {

// Layered range constructions.  All searches are confined to single
// subcubes, which keeps the Lemma 6/7 trace side conditions structural.
class RangeSolver {
 public:
  using VertexPairIds = std::pair<VertexId, VertexId>;

  RangeSolver(const Cube& cube, const SearchBudget& budget)
      : cube_(cube), budget_(budget) {}

  // Spanning x,y-path of Q[p,q]; the trace in Q[q] forms a spanning path or
  // 2-path (exactly a path whenever neither endpoint lies in Q[q]).
  Seq range_path(const RangeView& view, VertexId x, VertexId y) const {
    if (view.p == view.q) return cube_path(view, view.p, x, y, Matching{});
    int lx = view.ctx.label(cube_, x), ly = view.ctx.label(cube_, y);
    if (lx > ly) {
      std::swap(x, y);
      std::swap(lx, ly);
    }
    const int q = view.q;
    if (ly < q) {
      Seq inner = range_path(view.sub(view.p, q - 1), x, y);
      auto [s, sp] = pick_trace_edge(view, q - 1, inner);
      VertexId su = lift(view, s, q), spu = lift(view, sp, q);
      Seq top = cube_path(view, q, su, spu, Matching{});
      EdgeSoup soup(cube_.count());
      soup.add_seq(inner);
      soup.add_seq(top);
      soup.remove_edge(s, sp);
      soup.add_edge(s, su);
      soup.add_edge(sp, spu);
      return single_path(soup, x, y);
    }
    if (lx < q) {  // y in the top cube
      VertexId s = pick_top_entry(view, q, x, y);
      VertexId sd = lift(view, s, q - 1);
      Seq inner = range_path(view.sub(view.p, q - 1), x, sd);
      Seq top = cube_path(view, q, s, y, Matching{});
      EdgeSoup soup(cube_.count());
      soup.add_seq(inner);
      soup.add_seq(top);
      soup.add_edge(sd, s);
      return single_path(soup, x, y);
    }
    // both endpoints in the top cube: 2-path across the top, path below
    auto [s, t] = pick_top_pair(view, q, x, y);
    VertexId sd = lift(view, s, q - 1), td = lift(view, t, q - 1);
    Seq inner = range_path(view.sub(view.p, q - 1), sd, td);
    std::vector<Seq> top = cube_two_path(view, q, {x, s}, {t, y});
    EdgeSoup soup(cube_.count());
    soup.add_seq(inner);
    soup.add_seq(top[0]);
    soup.add_seq(top[1]);
    soup.add_edge(s, sd);
    soup.add_edge(t, td);
    return single_path(soup, x, y);
  }

  // Spanning x,y-path of Q[p,q] through M, xy an edge of Q[p] outside M;
  // trace in Q[q] a spanning path, trace in Q[p] a spanning 2-path (q > p).
  Seq range_path_through(const RangeView& view, VertexId x, VertexId y,
                         const Matching& m) const {
    MatchingSplit ms = restrict_matching(m, view.ctx);
    if (view.p == view.q) return cube_path(view, view.p, x, y, ms.per_cube[view.p]);
    const int p = view.p;
    Seq base = cube_path(view, p, x, y, ms.per_cube[p]);
    PathView pv(cube_.count(), base);
    VertexId s, sp;
    if (ms.per_boundary[p].size() == 1) {
      // route the required crossing edge through as the bridge
      const Edge& cross = ms.per_boundary[p].edges[0];
      VertexId a = cube_.id_of(cross.a), b = cube_.id_of(cross.b);
      s = view.ctx.label(cube_, a) == p ? a : b;
      sp = pv.nbrs_on(s).front();
    } else {
      auto picked = pick_path_edge(view, p, base, ms);
      s = picked.first;
      sp = picked.second;
    }
    Matching rest = ms.in_range(p + 1, view.q);
    Seq upper = range_path_through(view.sub(p + 1, view.q), lift(view, s, p + 1),
                                   lift(view, sp, p + 1), rest);
    EdgeSoup soup(cube_.count());
    soup.add_seq(base);
    soup.add_seq(upper);
    soup.remove_edge(s, sp);
    soup.add_edge(s, lift(view, s, p + 1));
    soup.add_edge(sp, lift(view, sp, p + 1));
    return single_path(soup, x, y);
  }

  // Spanning 2-path of Q[p,q] with the contract's endpoint patterns.
  std::vector<Seq> range_two_path(const RangeView& view, VertexPairIds xy,
                                  VertexPairIds uv) const {
    if (view.p == view.q)
      return cube_two_path(view, view.p, xy, uv);
    int lu = view.ctx.label(cube_, uv.first);
    if (lu == view.q) {  // x,y in Q[p]; u,v in Q[q]
      Seq low = cube_path(view, view.p, xy.first, xy.second, Matching{});
      Seq high = range_path(view.sub(view.p + 1, view.q), uv.first, uv.second);
      return {low, high};
    }
    // all four in Q[p]
    std::vector<Seq> base = cube_two_path(view, view.p, xy, uv);
    // canonical: first edge of the combined 2-path in edge order
    std::pair<VertexId, VertexId> best{UINT32_MAX, UINT32_MAX};
    for (const Seq& seg : base)
      for (auto [a, b] : edges_of(seg)) {
        auto key = std::minmax(a, b);
        if (std::pair<VertexId, VertexId>(key.first, key.second) < best)
          best = {key.first, key.second};
      }
    if (best.first == UINT32_MAX)
      throw ConsistencyError("range_two_path: no edge to split on");
    VertexId a = best.first, b = best.second;
    Seq upper = range_path(view.sub(view.p + 1, view.q), lift(view, a, view.p + 1),
                           lift(view, b, view.p + 1));
    EdgeSoup soup(cube_.count());
    soup.add_seq(base[0]);
    soup.add_seq(base[1]);
    soup.add_seq(upper);
    soup.remove_edge(a, b);
    soup.add_edge(a, lift(view, a, view.p + 1));
    soup.add_edge(b, lift(view, b, view.p + 1));
    auto out = soup.paths();
    if (out.size() != 2) throw ConsistencyError("range_two_path: wrong component count");
    return out;
  }

 private:
  VertexId lift(const RangeView& view, VertexId v, int label) const {
    return view.ctx.with_label(cube_, v, label);
  }

  // Solve one subcube by direct search.
  Seq cube_path(const RangeView& view, int label, VertexId x, VertexId y,
                const Matching& required) const {
    ConstraintSpec spec;
    spec.region = Region::of_range(view.sub(label, label));
    spec.required = required;
    spec.endpoint_pairs = {{cube_.at(x), cube_.at(y)}};
    auto res = search_with_restarts(cube_, spec, budget_);
    if (res.status == SearchStatus::BudgetExceeded)
      throw BudgetError("provider: search budget exceeded");
    if (!res.found())
      throw ConsistencyError("provider: subcube path search exhausted");
    Seq out;
    for (const Vertex& v : res.paths.paths[0]) out.push_back(cube_.id_of(v));
    return out;
  }

  std::vector<Seq> cube_two_path(const RangeView& view, int label, VertexPairIds ab,
                                 VertexPairIds cd) const {
    ConstraintSpec spec;
    spec.region = Region::of_range(view.sub(label, label));
    spec.endpoint_pairs = {{cube_.at(ab.first), cube_.at(ab.second)},
                           {cube_.at(cd.first), cube_.at(cd.second)}};
    auto res = search_with_restarts(cube_, spec, budget_);
    if (res.status == SearchStatus::BudgetExceeded)
      throw BudgetError("provider: search budget exceeded");
    if (!res.found())
      throw ConsistencyError("provider: subcube 2-path search exhausted");
    std::vector<Seq> out(2);
    for (int i = 0; i < 2; ++i)
      for (const Vertex& v : res.paths.paths[i]) out[i].push_back(cube_.id_of(v));
    return out;
  }

  // First trace edge of `seq` inside subcube `label`, canonical edge order.
  std::pair<VertexId, VertexId> pick_trace_edge(const RangeView& view, int label,
                                                const Seq& seq) const {
    std::pair<VertexId, VertexId> best{UINT32_MAX, UINT32_MAX};
    for (auto [a, b] : edges_of(seq)) {
      if (view.ctx.label(cube_, a) != label || view.ctx.label(cube_, b) != label) continue;
      if (cube_.edge_dim0(a, b) == view.ctx.d - 1) continue;
      auto key = std::minmax(a, b);
      if (std::pair<VertexId, VertexId>(key.first, key.second) < best)
        best = {key.first, key.second};
    }
    if (best.first == UINT32_MAX)
      throw ConsistencyError("range solver: no usable trace edge");
    return best;
  }

  // Path edge of `base` in Q[p] avoiding M_p whose lift avoids M_{p+1}.
  std::pair<VertexId, VertexId> pick_path_edge(const RangeView& view, int p,
                                               const Seq& base,
                                               const MatchingSplit& ms) const {
    std::pair<VertexId, VertexId> best{UINT32_MAX, UINT32_MAX};
    for (auto [a, b] : edges_of(base)) {
      Edge e = make_edge(cube_.shape(), cube_.at(a), cube_.at(b));
      if (ms.per_cube[p].contains(e)) continue;
      Edge up = make_edge(cube_.shape(), cube_.at(lift(view, a, p + 1)),
                          cube_.at(lift(view, b, p + 1)));
      if (ms.per_cube[p + 1].contains(up)) continue;
      auto key = std::minmax(a, b);
      if (std::pair<VertexId, VertexId>(key.first, key.second) < best)
        best = {key.first, key.second};
    }
    if (best.first == UINT32_MAX)
      throw ConsistencyError("range solver: no usable path edge");
    return best;
  }

  // Smallest vertex of Q[q] minus {y} with the right parity whose downstairs
  // copy differs from x.
  VertexId pick_top_entry(const RangeView& view, int q, VertexId x, VertexId y) const {
    bool even = cube_.shape().k % 2 == 0;
    for (VertexId v = 0; v < cube_.count(); ++v) {
      if (view.ctx.label(cube_, v) != q || v == y) continue;
      if (even && cube_.parity(v) == cube_.parity(y)) continue;
      if (lift(view, v, q - 1) == x) continue;
      return v;
    }
    throw ConsistencyError("range solver: no top entry vertex");
  }

  std::pair<VertexId, VertexId> pick_top_pair(const RangeView& view, int q, VertexId x,
                                              VertexId y) const {
    bool even = cube_.shape().k % 2 == 0;
    for (VertexId sv = 0; sv < cube_.count(); ++sv) {
      if (view.ctx.label(cube_, sv) != q || sv == x || sv == y) continue;
      if (even && cube_.parity(sv) == cube_.parity(x)) continue;
      for (VertexId tv = 0; tv < cube_.count(); ++tv) {
        if (view.ctx.label(cube_, tv) != q || tv == x || tv == y || tv == sv) continue;
        if (even && cube_.parity(tv) == cube_.parity(y)) continue;
        return {sv, tv};
      }
    }
    throw ConsistencyError("range solver: no top vertex pair");
  }

  Seq single_path(EdgeSoup& soup, VertexId x, VertexId y) const {
    auto ps = soup.paths();
    if (ps.size() != 1) throw ConsistencyError("range solver: expected one path");
    Seq out = std::move(ps[0]);
    if (out.front() == y && out.back() == x) std::reverse(out.begin(), out.end());
    if (out.front() != x || out.back() != y)
      throw ConsistencyError("range solver: endpoint mismatch");
    return out;
  }

  const Cube& cube_;
  SearchBudget budget_;
};

}  // namespace detail

class SearchProvider : public Provider {
 public:
  explicit SearchProvider(ProviderOptions opts = {}) : opts_(opts) {}

  const ProviderOptions& options() const { return opts_; }

  PrimitiveResult solve(PrimitiveKind kind, const PrimitiveInstance& inst) const override {
    if (auto viol = validate_precondition(kind, inst)) throw PreconditionError(*viol);
    check_capability(inst);
    std::string last_fail;
    for (int attempt = 0; attempt <= opts_.side_retries; ++attempt) {
      SearchBudget budget = opts_.budget;
      budget.seed = opts_.budget.seed + (attempt == 0 ? 0 : attempt);
      PrimitiveResult r = solve_once(kind, inst, budget);
      if (auto fail = verify(kind, inst, r)) {
        last_fail = *fail;
        continue;  // restart with a different seed
      }
      return r;
    }
    throw ConsistencyError("provider: result failed verification after retries: " +
                           last_fail);
  }

 private:
  void check_capability(const PrimitiveInstance& inst) const {
    uint64_t count = inst.shape.vertex_count();
    if (inst.view) {
      uint64_t sub = count / uint64_t(inst.shape.k);
      count = sub * uint64_t(inst.view->q - inst.view->p + 1);
    }
    if (count > opts_.capability)
      throw CapabilityError("provider: instance exceeds capability ceiling (" +
                            std::to_string(count) + " > " +
                            std::to_string(opts_.capability) + " vertices)");
  }

  PrimitiveResult solve_once(PrimitiveKind kind, const PrimitiveInstance& inst,
                             const SearchBudget& budget) const {
    Cube cube(inst.shape);
    PrimitiveResult out;
    switch (kind) {
      case PrimitiveKind::HamPathMinusVertices:
      case PrimitiveKind::HamPathEvenParity:
      case PrimitiveKind::HamPathMinusOne:
      case PrimitiveKind::HamPathThroughEdge:
      case PrimitiveKind::TwoPathThroughMatching: {
        ConstraintSpec spec;
        spec.region = Region::whole(inst.shape).minus(inst.removed);
        spec.required = inst.required;
        spec.endpoint_pairs = inst.pairs;
        auto res = search_with_restarts(cube, spec, budget);
        finish(res);
        out.paths = std::move(res.paths);
        return out;
      }
      case PrimitiveKind::HamCycleThroughForest:
      case PrimitiveKind::HamCycleThroughMatching: {
        ConstraintSpec spec;
        spec.region = Region::whole(inst.shape);
        spec.required = inst.required;
        auto res = search_with_restarts(cube, spec, budget);
        finish(res);
        out.is_cycle = true;
        out.cycle = std::move(res.cycle);
        return out;
      }
      case PrimitiveKind::RangePath: {
        detail::RangeSolver rs(cube, budget);
        Seq path = rs.range_path(*inst.view, cube.id_of(inst.pairs[0].first),
                                 cube.id_of(inst.pairs[0].second));
        out.paths = to_system(cube, *inst.view, {path});
        return out;
      }
      case PrimitiveKind::RangePathThroughMatching: {
        detail::RangeSolver rs(cube, budget);
        Seq path = rs.range_path_through(*inst.view, cube.id_of(inst.pairs[0].first),
                                         cube.id_of(inst.pairs[0].second), inst.required);
        out.paths = to_system(cube, *inst.view, {path});
        return out;
      }
      case PrimitiveKind::RangeTwoPath: {
        detail::RangeSolver rs(cube, budget);
        auto segs = rs.range_two_path(
            *inst.view,
            {cube.id_of(inst.pairs[0].first), cube.id_of(inst.pairs[0].second)},
            {cube.id_of(inst.pairs[1].first), cube.id_of(inst.pairs[1].second)});
        out.paths = to_system(cube, *inst.view, segs);
        return out;
      }
    }
    throw InputError("unknown primitive kind");
  }

  static void finish(const SearchOutcome& res) {
    if (res.status == SearchStatus::BudgetExceeded)
      throw BudgetError("provider: search budget exceeded");
    if (!res.found())
      throw ConsistencyError(
          "provider: search exhausted on a theorem-guaranteed instance");
  }

  static PathSystem to_system(const Cube& cube, const RangeView& view,
                              const std::vector<Seq>& segs) {
    PathSystem sys;
    sys.region = Region::of_range(view);
    for (const Seq& s : segs) {
      std::vector<Vertex> path;
      path.reserve(s.size());
      for (VertexId v : s) path.push_back(cube.at(v));
      sys.paths.push_back(std::move(path));
    }
    return sys;
  }

  // Full certify pass plus the kind's side conditions.
  std::optional<std::string> verify(PrimitiveKind kind, const PrimitiveInstance& inst,
                                    const PrimitiveResult& r) const {
    Cube cube(inst.shape);
    if (r.is_cycle) {
      auto rep = check_ham_cycle(cube, r.cycle, inst.required);
      if (!rep.ok) return rep.first_violation;
      return std::nullopt;
    }
    Matching traversed_required =
        kind == PrimitiveKind::TwoPathThroughMatching ||
                kind == PrimitiveKind::HamPathThroughEdge ||
                kind == PrimitiveKind::RangePathThroughMatching
            ? inst.required
            : Matching{};
    auto rep = check_path_system(cube, r.paths, inst.pairs, traversed_required);
    if (!rep.ok) return rep.first_violation;
    if (kind == PrimitiveKind::RangePath || kind == PrimitiveKind::RangePathThroughMatching) {
      const RangeView& view = *inst.view;
      std::vector<std::pair<VertexId, VertexId>> edges;
      for (const auto& path : r.paths.paths)
        for (size_t i = 0; i + 1 < path.size(); ++i)
          edges.push_back({cube.id_of(path[i]), cube.id_of(path[i + 1])});
      if (kind == PrimitiveKind::RangePath) {
        if (!trace_is_spanning_mpath(cube, view.ctx, view.q, edges, 2))
          return "trace in Q[q] is not a spanning path or 2-path";
      } else if (view.q > view.p) {
        if (!trace_is_spanning_mpath(cube, view.ctx, view.q, edges, 1))
          return "trace in Q[q] is not a spanning path";
        if (!trace_is_spanning_mpath(cube, view.ctx, view.p, edges, 2))
          return "trace in Q[p] is not a spanning 2-path";
      }
    }
    return std::nullopt;
  }

  ProviderOptions opts_;
};

}  // namespace kcube
