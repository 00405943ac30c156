#pragma once

// The recursive certificate-producing constructions: the eight spanning
// m-path lemmas and the main Hamiltonian-cycle theorem with its claim
// machinery.  Every operation validates the stated hypotheses, emits a
// verified object, and records its case splits, normalizations and choices
// in a replayable trace.
//
// "By symmetry assume ..." steps are realized by scanning candidate
// presentations (label rotation along the split dimension, direction flip,
// endpoint/pair renames) in canonical order and taking the first that makes
// the assumed normal form hold.  "Choose ... such that ..." steps are
// filtered scans in canonical vertex/edge order, first hit wins.  Under
// strict policy an empty scan or a failed sub-construction is a hard error;
// under relaxed policy the current subproblem is handed to the provider when
// it fits the capability ceiling.

#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "kcube/pathops.hpp"
#include "kcube/primitives.hpp"

namespace kcube {

struct Policy {
  enum class Mode { Strict, Relaxed };
  Mode mode = Mode::Relaxed;
  int base_n = 4;  // theorem recursion delegates subcubes of dim <= base_n
};

struct TraceNode {
  std::string label;
  std::vector<std::string> notes;
  std::vector<TraceNode> children;
};

class TraceBuilder {
 public:
  TraceBuilder() { stack_.push_back(&root_); }

  class Scope {
   public:
    Scope(TraceBuilder& tb) : tb_(tb) {}
    ~Scope() { tb_.pop(); }
    Scope(const Scope&) = delete;

   private:
    TraceBuilder& tb_;
  };

  [[nodiscard]] Scope push(std::string label) {
    stack_.back()->children.push_back(TraceNode{std::move(label), {}, {}});
    stack_.push_back(&stack_.back()->children.back());
    return Scope(*this);
  }
  void note(const std::string& text) { stack_.back()->notes.push_back(text); }
  const TraceNode& root() const { return root_; }
  TraceNode take() { return std::move(root_); }

 private:
  void pop() { stack_.pop_back(); }
  TraceNode root_{"root", {}, {}};
  std::vector<TraceNode*> stack_;
};

struct ConstructionTrace {
  TraceNode root;
  int fallbacks = 0;

  void serialize(std::ostream& os) const {
    std::function<void(const TraceNode&, int)> rec = [&](const TraceNode& n, int depth) {
      os << std::string(size_t(depth) * 2, ' ') << n.label << "\n";
      for (const auto& note : n.notes)
        os << std::string(size_t(depth) * 2 + 2, ' ') << "| " << note << "\n";
      for (const auto& c : n.children) rec(c, depth + 1);
    };
    rec(root, 0);
    os << "fallbacks: " << fallbacks << "\n";
  }
  std::string to_text() const {
    std::ostringstream os;
    serialize(os);
    return os.str();
  }
};

struct Env {
  std::shared_ptr<const Provider> provider;
  Policy policy;
  ProviderOptions provider_opts;
  TraceBuilder trace;
  int fallbacks = 0;

  static Env make(Policy p = {}, ProviderOptions opts = {}) {
    Env e;
    e.policy = p;
    e.provider_opts = opts;
    e.provider = std::make_shared<SearchProvider>(opts);
    return e;
  }
};

// ---------------------------------------------------------------------------
// Public operations.  Declarations first; the constructions live below.

PathSystem lemma9_range_path_m1(Env& env, const RangeView& view, const Vertex& x,
                                const Vertex& y, const Matching& m);
PathSystem lemma10_range_2path_m1(Env& env, const RangeView& view, const Vertex& x,
                                  const Vertex& y, const Vertex& u, const Vertex& v,
                                  const Matching& m);
PathSystem lemma11_path_m2(Env& env, const CubeShape& shape, const Vertex& x,
                           const Vertex& y, const Matching& m);
PathSystem lemma12_range_path_m2(Env& env, const RangeView& view, const Vertex& x,
                                 const Vertex& y, const Matching& m);
PathSystem lemma13_path_minus_uv(Env& env, const CubeShape& shape, const Vertex& x,
                                 const Vertex& y, const Vertex& u, const Vertex& v,
                                 const Matching& m);
PathSystem lemma14_2path_same_parity(Env& env, const CubeShape& shape, const Vertex& x,
                                     const Vertex& y, const Vertex& u, const Vertex& v);
PathSystem lemma15_3path_matching(Env& env, const CubeShape& shape, const Vertex& u,
                                  const Vertex& up, const Vertex& v, const Vertex& vp,
                                  const Vertex& w, const Vertex& wp, const Matching& m);
PathSystem lemma16_path_dist3(Env& env, const CubeShape& shape, const Vertex& x,
                              const Vertex& y, const Matching& m);
std::pair<HamCycleCertificate, ConstructionTrace> theorem3_ham_cycle(Env& env,
                                                                     const CubeShape& shape,
                                                                     const Matching& m);

// ---------------------------------------------------------------------------
// Implementation.

namespace cons {

using PairIds = std::pair<VertexId, VertexId>;

inline std::string fmt_ctx(const SplitContext& c) {
  return "split d=" + std::to_string(c.d) + " rot=" + std::to_string(c.rotation) +
         " flip=" + std::to_string(int(c.flipped));
}

inline Seq to_seq(const Cube& cube, const std::vector<Vertex>& path) {
  Seq s;
  s.reserve(path.size());
  for (const Vertex& v : path) s.push_back(cube.id_of(v));
  return s;
}

inline std::vector<Vertex> to_path(const Cube& cube, const Seq& s) {
  std::vector<Vertex> p;
  p.reserve(s.size());
  for (VertexId v : s) p.push_back(cube.at(v));
  return p;
}

// All edges of a seq in canonical (lexicographic id pair) order.
inline std::vector<PairIds> canonical_edges(const Seq& s) {
  std::vector<PairIds> es;
  for (auto [a, b] : edges_of(s)) es.push_back(std::minmax(a, b));
  std::sort(es.begin(), es.end());
  return es;
}

inline std::vector<PairIds> canonical_edges(const std::vector<Seq>& seqs) {
  std::vector<PairIds> es;
  for (const Seq& s : seqs)
    for (auto [a, b] : edges_of(s)) es.push_back(std::minmax(a, b));
  std::sort(es.begin(), es.end());
  return es;
}


inline void add_cycle(EdgeSoup& soup, const Seq& cyc) {
  soup.add_seq(cyc);
  soup.add_edge(cyc.back(), cyc.front());
}

inline std::vector<PairIds> canonical_cycle_edges(const Seq& cyc) {
  std::vector<PairIds> es;
  for (size_t i = 0; i < cyc.size(); ++i)
    es.push_back(std::minmax(cyc[i], cyc[(i + 1) % cyc.size()]));
  std::sort(es.begin(), es.end());
  return es;
}

// Validate a linear forest into a Matching container (edges need not be
// vertex-disjoint, only degree <= 2 and acyclic).
inline Matching as_forest(const CubeShape& s, std::vector<Edge> es) {
  if (!is_linear_forest(s, es)) throw ConsistencyError("forest assembly not linear");
  std::sort(es.begin(), es.end());
  Matching m;
  m.edges = std::move(es);
  return m;
}

// Ring pairing (for the balanced endpoint-set selections of Claims 3/4 and
// the final 4-path case): order and orient path pieces so that consecutive
// link pairs have opposite parity when k is even.  `extra` may impose
// branch-specific constraints; returns the flattened ring or empty.
inline std::vector<VertexId> ring_pairing(
    const Cube& cube, const std::vector<PairIds>& pieces, bool even,
    const std::function<bool(const std::vector<VertexId>&)>& extra = nullptr) {
  std::vector<int> order(pieces.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end());
  do {
    int flips = 1 << pieces.size();
    for (int f = 0; f < flips; ++f) {
      std::vector<VertexId> ring;
      for (size_t i = 0; i < pieces.size(); ++i) {
        PairIds pr = pieces[order[i]];
        if (f >> i & 1) std::swap(pr.first, pr.second);
        ring.push_back(pr.first);
        ring.push_back(pr.second);
      }
      bool ok = true;
      if (even) {
        size_t n2 = ring.size();
        for (size_t i = 0; ok && i < pieces.size(); ++i) {
          VertexId a = ring[(2 * i + 1) % n2], b = ring[(2 * i + 2) % n2];
          if (cube.parity(a) == cube.parity(b)) ok = false;
        }
      }
      if (ok && extra && !extra(ring)) ok = false;
      if (ok) return ring;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {};
}

// The two valid detour-neighbor choices around an off-cycle chord x0y0: both
// successors, or both predecessors, so each x0->y0 arc donates one neighbor.
inline std::array<PairIds, 2> chord_detour_combos(const CycleView& cv, VertexId x0,
                                                  VertexId y0) {
  return {PairIds{cv.at(cv.pos(x0) + 1), cv.at(cv.pos(y0) + 1)},
          PairIds{cv.at(cv.pos(x0) - 1), cv.at(cv.pos(y0) - 1)}};
}

// Per-call context: one cube, one environment.
class Ops {
 public:
  Ops(Env& env, const Cube& cube) : env_(env), cube_(cube) {}

  // ---- lemma implementations (ids, presented labels) ----
  Seq l9(const RangeView& view, VertexId x, VertexId y, const Matching& m);
  std::vector<Seq> l10(const RangeView& view, VertexId x, VertexId y, VertexId u,
                       VertexId v, const Matching& m);
  Seq l11(VertexId x, VertexId y, const Matching& m);
  Seq l12(const RangeView& view, VertexId x, VertexId y, const Matching& m);
  Seq l13(VertexId x, VertexId y, VertexId u, VertexId v, const Matching& m);
  std::vector<Seq> l14(VertexId x, VertexId y, VertexId u, VertexId v);
  std::vector<Seq> l15(VertexId u, VertexId up, VertexId v, VertexId vp, VertexId w,
                       VertexId wp, const Matching& m);
  Seq l16(VertexId x, VertexId y, const Matching& m);
  Seq theorem3(const Matching& m);

  // ---- shared helpers ----
  const Cube& cube() const { return cube_; }

  int label(const RangeView& v, VertexId id) const { return v.ctx.label(cube_, id); }
  VertexId lift(const RangeView& v, VertexId id, int l) const {
    return v.ctx.with_label(cube_, id, l);
  }
  Edge edge_at(VertexId a, VertexId b) const {
    return make_edge(cube_.shape(), cube_.at(a), cube_.at(b));
  }
  bool in_matching(const Matching& m, VertexId a, VertexId b) const {
    if (cube_.edge_dim0(a, b) < 0) return false;
    return m.contains(edge_at(a, b));
  }
  bool covers(const Matching& m, VertexId v) const { return m.covers(cube_.at(v)); }
  int par(VertexId v) const { return cube_.parity(v); }
  bool even_k() const { return cube_.shape().k % 2 == 0; }

  // neighbors of v inside its own subcube (all dims except the split one)
  std::vector<VertexId> subcube_nbrs(const SplitContext& ctx, VertexId v) const {
    std::vector<VertexId> out;
    for (int i = 0; i < cube_.shape().n; ++i) {
      if (i == ctx.d - 1) continue;
      out.push_back(cube_.step(v, i, 1));
      out.push_back(cube_.step(v, i, -1));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // all vertices of subcube `l`, ascending
  std::vector<VertexId> subcube_vertices(const SplitContext& ctx, int l) const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < cube_.count(); ++v)
      if (ctx.label(cube_, v) == l) out.push_back(v);
    return out;
  }

  [[noreturn]] void scan_fail(const std::string& what) const {
    throw ConsistencyError("empty choice scan: " + what);
  }

  // ---- provider bridges ----
  Seq pr_range_path(const RangeView& view, VertexId x, VertexId y) {
    auto r = env_.provider->solve(PrimitiveKind::RangePath,
                                  inst_range_path(view, cube_.at(x), cube_.at(y)));
    return to_seq(cube_, r.paths.paths.at(0));
  }
  Seq pr_range_path_thru(const RangeView& view, VertexId x, VertexId y, Matching m) {
    auto r = env_.provider->solve(
        PrimitiveKind::RangePathThroughMatching,
        inst_range_path_through_matching(view, cube_.at(x), cube_.at(y), std::move(m)));
    return to_seq(cube_, r.paths.paths.at(0));
  }
  std::vector<Seq> pr_range_two_path(const RangeView& view, PairIds ab, PairIds cd) {
    auto r = env_.provider->solve(
        PrimitiveKind::RangeTwoPath,
        inst_range_two_path(view, {cube_.at(ab.first), cube_.at(ab.second)},
                            {cube_.at(cd.first), cube_.at(cd.second)}));
    return {to_seq(cube_, r.paths.paths.at(0)), to_seq(cube_, r.paths.paths.at(1))};
  }

  // Spanning path of subcube `l` through at most one required edge.
  Seq pr_cube_path(const SplitContext& ctx, int l, VertexId x, VertexId y,
                   const Matching& m) {
    if (m.size() > 1)
      throw ConsistencyError("pr_cube_path limited to one required edge");
    if (m.empty()) {
      RangeView single{ctx, l, l};
      return pr_range_path(single, x, y);
    }
    Projection proj(cube_, ctx, l);
    Edge req = proj.to_child(m).edges.at(0);
    auto r = env_.provider->solve(
        PrimitiveKind::HamPathThroughEdge,
        inst_ham_path_through_edge(proj.child().shape(),
                                   proj.to_child(cube_.at(x)),
                                   proj.to_child(cube_.at(y)), req));
    return proj.seq_to_parent(to_seq(proj.child(), r.paths.paths.at(0)));
  }

  // Spanning path of subcube `l` minus one or two vertices.
  Seq pr_cube_path_minus(const SplitContext& ctx, int l, VertexId x, VertexId y,
                         const std::vector<VertexId>& removed) {
    Projection proj(cube_, ctx, l);
    std::vector<Vertex> rem;
    for (VertexId r : removed) rem.push_back(proj.to_child(cube_.at(r)));
    PrimitiveResult r;
    if (cube_.shape().k % 2 == 0 && removed.size() == 1) {
      r = env_.provider->solve(
          PrimitiveKind::HamPathMinusOne,
          inst_ham_path_minus_one(proj.child().shape(), proj.to_child(cube_.at(x)),
                                  proj.to_child(cube_.at(y)), rem.at(0)));
    } else {
      r = env_.provider->solve(
          PrimitiveKind::HamPathMinusVertices,
          inst_ham_path_minus_vertices(proj.child().shape(), proj.to_child(cube_.at(x)),
                                       proj.to_child(cube_.at(y)), rem));
    }
    return proj.seq_to_parent(to_seq(proj.child(), r.paths.paths.at(0)));
  }

  // Spanning 2-path of subcube `l` through a matching (free ends first).
  std::vector<Seq> pr_cube_two_path_thru(const SplitContext& ctx, int l, PairIds uu,
                                         PairIds vv, const Matching& m) {
    Projection proj(cube_, ctx, l);
    auto r = env_.provider->solve(
        PrimitiveKind::TwoPathThroughMatching,
        inst_two_path_through_matching(
            proj.child().shape(),
            {proj.to_child(cube_.at(uu.first)), proj.to_child(cube_.at(uu.second))},
            {proj.to_child(cube_.at(vv.first)), proj.to_child(cube_.at(vv.second))},
            proj.to_child(m)));
    return {proj.seq_to_parent(to_seq(proj.child(), r.paths.paths.at(0))),
            proj.seq_to_parent(to_seq(proj.child(), r.paths.paths.at(1)))};
  }

  // Hamiltonian cycle of subcube `l` through a linear forest.
  Seq pr_cube_cycle_forest(const SplitContext& ctx, int l, const Matching& forest) {
    Projection proj(cube_, ctx, l);
    auto r = env_.provider->solve(
        PrimitiveKind::HamCycleThroughForest,
        inst_ham_cycle_through_forest(proj.child().shape(), proj.to_child(forest)));
    return proj.seq_to_parent(to_seq(proj.child(), r.cycle.order));
  }

  // Spanning path of the whole current cube through at most one edge.
  Seq whole_path(VertexId x, VertexId y, const Matching& m) {
    PrimitiveResult r;
    if (!m.empty()) {
      r = env_.provider->solve(
          PrimitiveKind::HamPathThroughEdge,
          inst_ham_path_through_edge(cube_.shape(), cube_.at(x), cube_.at(y),
                                     m.edges.at(0)));
    } else if (even_k()) {
      r = env_.provider->solve(PrimitiveKind::HamPathEvenParity,
                               inst_ham_path_even(cube_.shape(), cube_.at(x), cube_.at(y)));
    } else {
      r = env_.provider->solve(
          PrimitiveKind::HamPathMinusVertices,
          inst_ham_path_minus_vertices(cube_.shape(), cube_.at(x), cube_.at(y), {}));
    }
    return to_seq(cube_, r.paths.paths.at(0));
  }

  // ---- sibling lemmas on a projected subcube ----
  Seq sub_l11(const SplitContext& ctx, int l, VertexId x, VertexId y, const Matching& m) {
    Projection proj(cube_, ctx, l);
    Ops child(env_, proj.child());
    Seq res = child.l11(proj.to_child(x), proj.to_child(y), proj.to_child(m));
    return proj.seq_to_parent(res);
  }
  Seq sub_l13(const SplitContext& ctx, int l, VertexId x, VertexId y, VertexId u,
              VertexId v, const Matching& m) {
    Projection proj(cube_, ctx, l);
    Ops child(env_, proj.child());
    Seq res = child.l13(proj.to_child(x), proj.to_child(y), proj.to_child(u),
                        proj.to_child(v), proj.to_child(m));
    return proj.seq_to_parent(res);
  }
  std::vector<Seq> sub_l14(const SplitContext& ctx, int l, VertexId x, VertexId y,
                           VertexId u, VertexId v) {
    Projection proj(cube_, ctx, l);
    Ops child(env_, proj.child());
    auto res = child.l14(proj.to_child(x), proj.to_child(y), proj.to_child(u),
                         proj.to_child(v));
    return {proj.seq_to_parent(res[0]), proj.seq_to_parent(res[1])};
  }
  std::vector<Seq> sub_l15(const SplitContext& ctx, int l, VertexId u, VertexId up,
                           VertexId v, VertexId vp, VertexId w, VertexId wp,
                           const Matching& m) {
    Projection proj(cube_, ctx, l);
    Ops child(env_, proj.child());
    auto res = child.l15(proj.to_child(u), proj.to_child(up), proj.to_child(v),
                         proj.to_child(vp), proj.to_child(w), proj.to_child(wp),
                         proj.to_child(m));
    return {proj.seq_to_parent(res[0]), proj.seq_to_parent(res[1]),
            proj.seq_to_parent(res[2])};
  }
  Seq sub_l16(const SplitContext& ctx, int l, VertexId x, VertexId y, const Matching& m) {
    Projection proj(cube_, ctx, l);
    Ops child(env_, proj.child());
    Seq res = child.l16(proj.to_child(x), proj.to_child(y), proj.to_child(m));
    return proj.seq_to_parent(res);
  }
  // Hamiltonian cycle of subcube `l` through m, via the theorem recursion or
  // the provider below the base dimension.
  Seq sub_theorem3(const SplitContext& ctx, int l, const Matching& m) {
    Projection proj(cube_, ctx, l);
    const CubeShape child_shape = proj.child().shape();
    if (child_shape.n <= env_.policy.base_n || int(m.size()) <= 3 * child_shape.n - 8) {
      env_.trace.note("base: HamCycleThroughMatching at n=" + std::to_string(child_shape.n));
      auto r = env_.provider->solve(PrimitiveKind::HamCycleThroughMatching,
                                    inst_ham_cycle_through_matching(child_shape,
                                                                    proj.to_child(m)));
      return proj.seq_to_parent(to_seq(proj.child(), r.cycle.order));
    }
    Ops child(env_, proj.child());
    Seq res = child.theorem3(proj.to_child(m));
    return proj.seq_to_parent(res);
  }

  // ---- assembly ----
  Seq one_path(EdgeSoup& soup, VertexId x, VertexId y) const {
    auto ps = soup.paths();
    if (ps.size() != 1) throw ConsistencyError("assembly: expected a single path");
    Seq out = std::move(ps[0]);
    if (out.front() == y && out.back() == x) std::reverse(out.begin(), out.end());
    if (out.front() != x || out.back() != y)
      throw ConsistencyError("assembly: endpoint mismatch");
    return out;
  }

  // m paths with the given unordered endpoint pairs, reordered/oriented.
  std::vector<Seq> m_paths(EdgeSoup& soup, const std::vector<PairIds>& pairs) const {
    auto ps = soup.paths();
    if (ps.size() != pairs.size())
      throw ConsistencyError("assembly: wrong path count");
    std::vector<Seq> out(pairs.size());
    std::vector<char> used(ps.size(), 0);
    for (size_t i = 0; i < pairs.size(); ++i) {
      bool placed = false;
      for (size_t j = 0; j < ps.size() && !placed; ++j) {
        if (used[j]) continue;
        if (ps[j].front() == pairs[i].first && ps[j].back() == pairs[i].second) {
          out[i] = ps[j];
          used[j] = 1;
          placed = true;
        } else if (ps[j].front() == pairs[i].second && ps[j].back() == pairs[i].first) {
          out[i] = ps[j];
          std::reverse(out[i].begin(), out[i].end());
          used[j] = 1;
          placed = true;
        }
      }
      if (!placed) throw ConsistencyError("assembly: endpoint pairs not realized");
    }
    return out;
  }

  // Relaxed-policy fallback: hand the current subproblem to plain search.
  bool may_fallback(uint64_t region_size) const {
    return env_.policy.mode == Policy::Mode::Relaxed &&
           region_size <= env_.provider_opts.capability;
  }

  Seq fallback_path(const Region& region, VertexId x, VertexId y, const Matching& m,
                    const char* what) {
    env_.fallbacks++;
    env_.trace.note(std::string("fallback: ") + what);
    ConstraintSpec spec;
    spec.region = region;
    spec.required = m;
    spec.endpoint_pairs = {{cube_.at(x), cube_.at(y)}};
    auto res = search_with_restarts(cube_, spec, env_.provider_opts.budget);
    if (res.status == SearchStatus::BudgetExceeded)
      throw BudgetError("fallback search budget exceeded");
    if (!res.found()) throw ConsistencyError("fallback search exhausted");
    return to_seq(cube_, res.paths.paths.at(0));
  }

  std::vector<Seq> fallback_m_paths(const Region& region, const std::vector<PairIds>& pairs,
                                    const Matching& m, const char* what) {
    env_.fallbacks++;
    env_.trace.note(std::string("fallback: ") + what);
    ConstraintSpec spec;
    spec.region = region;
    spec.required = m;
    for (auto [a, b] : pairs) spec.endpoint_pairs.push_back({cube_.at(a), cube_.at(b)});
    auto res = search_with_restarts(cube_, spec, env_.provider_opts.budget);
    if (res.status == SearchStatus::BudgetExceeded)
      throw BudgetError("fallback search budget exceeded");
    if (!res.found()) throw ConsistencyError("fallback search exhausted");
    std::vector<Seq> out;
    for (const auto& p : res.paths.paths) out.push_back(to_seq(cube_, p));
    return out;
  }

  Seq fallback_cycle(const Matching& m, const char* what) {
    env_.fallbacks++;
    env_.trace.note(std::string("fallback: ") + what);
    ConstraintSpec spec;
    spec.region = Region::whole(cube_.shape());
    spec.required = m;
    auto res = search_with_restarts(cube_, spec, env_.provider_opts.budget);
    if (res.status == SearchStatus::BudgetExceeded)
      throw BudgetError("fallback search budget exceeded");
    if (!res.found()) throw ConsistencyError("fallback search exhausted");
    return to_seq(cube_, res.cycle.order);
  }

  Env& env_;
  const Cube& cube_;

  struct EdgePair {
    VertexId f = 0, fp = 0;  // free end (outside V(M)), attached end
  };

 public:
  // theorem-3 claim machinery (public so the claim operations can be driven
  // and mutation-tested directly)
  Seq claim1(const SplitContext& ctx, const MatchingSplit& ms, const Matching& m,
             const Seq& c0);
  Seq claim2(const SplitContext& ctx, const MatchingSplit& ms, const Matching& m,
             const Seq& c0, PairIds x0y0);
  Seq claim3(const SplitContext& ctx, const MatchingSplit& ms, const Matching& m,
             const Seq& c0, PairIds x0y0, PairIds m0n0);
  Seq claim4(const SplitContext& ctx, const MatchingSplit& ms, const Matching& m,
             const Seq& c0, PairIds x0y0, PairIds m0n0, PairIds s0t0);
  Seq endgame4(const SplitContext& ctx, const MatchingSplit& ms, const Matching& m,
               const Seq& c0, const std::vector<PairIds>& off);
  Seq claimA(const RangeView& view, const MatchingSplit& ms, const Matching& m,
             VertexId c_rep, VertexId xp, VertexId yq);
  Seq claimB(const SplitContext& ctx, const MatchingSplit& ms, const Matching& m,
             const Seq& c0, PairIds x0y0, int j, PairIds pinned);

 private:
  // shared claim plumbing
  VertexId boundary_end(const SplitContext& ctx, const MatchingSplit& ms, int bnd, int idx,
                        int want_label) const;
  std::pair<VertexId, VertexId> trace_edge_for_next(
      const SplitContext& ctx, const MatchingSplit& ms, const Matching& m, const Seq& cyc,
      int lab, const std::vector<VertexId>& avoid_next_vertices, bool avoid_mnext_vertices,
      bool avoid_m_edge_next);
  Seq extend_cycle_up(const SplitContext& ctx, const MatchingSplit& ms, const Matching& m,
                      const Seq& cyc, int from, int to);
  Seq build_prefix_cycle(const SplitContext& ctx, const MatchingSplit& ms,
                         const Matching& m, const Seq& c0, int top);
  std::vector<Seq> two_path_thru_assignments(const SplitContext& ctx, int label, PairIds ab,
                                             PairIds ccp, const Matching& m_label);
  Seq trace_path(const SplitContext& ctx, const Seq& cyc, int lab) const;
  Seq claim2_case1(const SplitContext& ctx, const MatchingSplit& ms, const Matching& m,
                   const Seq& c0, PairIds x0y0, PairIds pinned);
  Seq claim2_sub21(const SplitContext& ctx, const MatchingSplit& ms, const Matching& m,
                   const Seq& c0, PairIds x0y0, PairIds combo, VertexId a0, VertexId a0p);
  std::vector<Seq> l15_case1(const SplitContext& ctx, EdgePair U, EdgePair V, EdgePair W,
                             const Matching& m);
  std::vector<Seq> l15_case2(const SplitContext& ctx, EdgePair U, EdgePair V, EdgePair W,
                             const Matching& m);
  std::vector<Seq> l15_case3(const SplitContext& ctx, EdgePair U, EdgePair V, EdgePair W,
                             const Matching& m);
  std::vector<Seq> two_path_any(const SplitContext& ctx, int label, PairIds A, PairIds B);
  Seq l16_case1_splice(const SplitContext& ctx, const MatchingSplit& ms, const Seq& base,
                       VertexId x, VertexId y, const Matching& m);
};

}  // namespace cons

}  // namespace kcube

#include "kcube/construction_lemmas.hpp"   // IWYU pragma: keep
#include "kcube/construction_theorem.hpp"  // IWYU pragma: keep
#include "kcube/construction_api.hpp"      // IWYU pragma: keep
