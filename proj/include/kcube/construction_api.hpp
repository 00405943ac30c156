#pragma once

// Public construction operations: hypothesis validation in front, relaxed
// fallback in the middle, certification at the exit.  No operation returns
// an unverified object.

#include "kcube/construction.hpp"

namespace kcube {

namespace cons {

inline void require(bool ok, const char* clause) {
  if (!ok) throw PreconditionError(clause);
}

inline bool parity_differs_or_odd(const CubeShape& s, const Vertex& a, const Vertex& b) {
  return s.k % 2 != 0 || parity(s, a) != parity(s, b);
}

inline bool matching_inside_view(const Matching& m, const RangeView& v) {
  return detail::matching_in_range(m, v);
}

// Run `build`; under relaxed policy retry the whole contract with direct
// search (seed-stepped) when the construction machinery gives up.
template <class Build, class Fallback>
auto with_fallback(Env& env, uint64_t region_size, Build build, Fallback fallback)
    -> decltype(build()) {
  try {
    return build();
  } catch (const ConsistencyError& e) {
    if (env.policy.mode != Policy::Mode::Relaxed ||
        region_size > env.provider_opts.capability)
      throw;
    env.trace.note(std::string("relaxed fallback after: ") + e.what());
    env.fallbacks++;
    return fallback();
  } catch (const PreconditionError& e) {
    // a sub-construction outside its counting regime; same remedy
    if (env.policy.mode != Policy::Mode::Relaxed ||
        region_size > env.provider_opts.capability)
      throw;
    env.trace.note(std::string("relaxed fallback after precondition: ") + e.clause);
    env.fallbacks++;
    return fallback();
  }
}

// Direct search honoring trace side conditions via seed retries.
inline PathSystem searched_system(Env& env, const Cube& cube, const Region& region,
                                  const std::vector<VertexPair>& pairs, const Matching& m,
                                  const std::function<bool(const PathSystem&)>& extra) {
  for (int attempt = 0; attempt <= env.provider_opts.side_retries; ++attempt) {
    ConstraintSpec spec;
    spec.region = region;
    spec.required = m;
    spec.endpoint_pairs = pairs;
    SearchBudget budget = env.provider_opts.budget;
    budget.seed = budget.seed + uint64_t(attempt) * 104729u;
    auto res = search_with_restarts(cube, spec, budget);
    if (res.status == SearchStatus::BudgetExceeded)
      throw BudgetError("fallback search budget exceeded");
    if (!res.found()) throw ConsistencyError("fallback search exhausted");
    if (!extra || extra(res.paths)) return res.paths;
  }
  throw ConsistencyError("fallback could not satisfy trace side conditions");
}

inline uint64_t view_size(const RangeView& v) {
  return v.ctx.shape.vertex_count() / uint64_t(v.ctx.shape.k) * uint64_t(v.q - v.p + 1);
}

inline std::vector<std::pair<VertexId, VertexId>> system_edges(const Cube& cube,
                                                               const PathSystem& sys) {
  std::vector<std::pair<VertexId, VertexId>> es;
  for (const auto& p : sys.paths)
    for (size_t i = 0; i + 1 < p.size(); ++i)
      es.push_back({cube.id_of(p[i]), cube.id_of(p[i + 1])});
  return es;
}

inline PathSystem certify_system(const Cube& cube, PathSystem sys,
                                 const std::vector<VertexPair>& pairs, const Matching& m,
                                 const char* op) {
  auto rep = check_path_system(cube, sys, pairs, m);
  if (!rep.ok)
    throw ConsistencyError(std::string(op) + ": output failed verification: " +
                           rep.first_violation);
  return sys;
}

inline PathSystem seqs_to_system(const Cube& cube, const std::vector<Seq>& seqs,
                                 Region region) {
  PathSystem sys;
  sys.region = std::move(region);
  for (const Seq& s : seqs) sys.paths.push_back(to_path(cube, s));
  return sys;
}

}  // namespace cons

// --- lemma9 ---------------------------------------------------------------

inline PathSystem lemma9_range_path_m1(Env& env, const RangeView& view, const Vertex& x,
                                       const Vertex& y, const Matching& m) {
  const CubeShape& s = view.ctx.shape;
  RangeView::validate(view);
  validate_vertex(s, x);
  validate_vertex(s, y);
  cons::require(s.n >= 4, "n >= 4");
  cons::require(s.k >= 4, "k >= 4");
  cons::require(x != y, "x,y distinct");
  cons::require(cons::parity_differs_or_odd(s, x, y), "p(x) != p(y) when k even");
  cons::require(check_matching(s, m).ok, "M is a matching");
  cons::require(m.size() <= 1, "|M| <= 1");
  cons::require(cons::matching_inside_view(m, view), "M inside Q[p,q]");
  cons::require(!(adjacent_dim(s, x, y) != 0 && m.contains(make_edge(s, x, y))),
                "xy not in M");
  Vertex ax = x, ay = y;
  int lx = view.ctx.label(ax), ly = view.ctx.label(ay);
  if (lx == view.q && ly == view.p && view.p != view.q) {
    std::swap(ax, ay);
    std::swap(lx, ly);
  }
  cons::require((lx == view.p && ly == view.p) || (lx == view.p && ly == view.q),
                "x,y in Q[p] or split across Q[p] and Q[q]");

  Cube cube(s);
  cons::Ops ops(env, cube);
  Region region = Region::of_range(view);
  auto side = [&](const PathSystem& sys) {
    return trace_is_spanning_mpath(cube, view.ctx, view.q, cons::system_edges(cube, sys), 2);
  };
  PathSystem sys = cons::with_fallback(
      env, cons::view_size(view),
      [&] {
        Seq out = ops.l9(view, cube.id_of(ax), cube.id_of(ay), m);
        return cons::seqs_to_system(cube, {out}, region);
      },
      [&] {
        return cons::searched_system(env, cube, region, {{ax, ay}}, m, side);
      });
  cons::certify_system(cube, sys, {{ax, ay}}, m, "lemma9");
  if (!side(sys))
    throw ConsistencyError("lemma9: trace in Q[q] is not a spanning path or 2-path");
  return sys;
}

// --- lemma10 ----------------------------------------------------------------

inline PathSystem lemma10_range_2path_m1(Env& env, const RangeView& view, const Vertex& x,
                                         const Vertex& y, const Vertex& u, const Vertex& v,
                                         const Matching& m) {
  const CubeShape& s = view.ctx.shape;
  RangeView::validate(view);
  for (const Vertex* t : {&x, &y, &u, &v}) validate_vertex(s, *t);
  cons::require(s.n >= 4, "n >= 4");
  cons::require(s.k >= 4, "k >= 4");
  cons::require(view.p < view.q, "p < q");
  cons::require(x != y && x != u && x != v && y != u && y != v && u != v,
                "x,y,u,v distinct");
  cons::require(view.ctx.label(x) == view.p && view.ctx.label(y) == view.p &&
                    view.ctx.label(u) == view.p && view.ctx.label(v) == view.p,
                "x,y,u,v in Q[p]");
  cons::require(cons::parity_differs_or_odd(s, x, y), "p(x) != p(y) when k even");
  cons::require(cons::parity_differs_or_odd(s, u, v), "p(u) != p(v) when k even");
  cons::require(check_matching(s, m).ok, "M is a matching");
  cons::require(m.size() <= 1, "|M| <= 1");
  cons::require(cons::matching_inside_view(m, view), "M inside Q[p,q]");
  int touched = 0;
  for (const Vertex* t : {&x, &y, &u, &v})
    if (m.covers(*t)) ++touched;
  cons::require(touched <= 1, "|{x,y,u,v} cap V(M)| <= 1");

  Cube cube(s);
  cons::Ops ops(env, cube);
  Region region = Region::of_range(view);
  std::vector<VertexPair> pairs = {{x, y}, {u, v}};
  PathSystem sys = cons::with_fallback(
      env, cons::view_size(view),
      [&] {
        auto segs = ops.l10(view, cube.id_of(x), cube.id_of(y), cube.id_of(u),
                            cube.id_of(v), m);
        return cons::seqs_to_system(cube, segs, region);
      },
      [&] { return cons::searched_system(env, cube, region, pairs, m, nullptr); });
  return cons::certify_system(cube, sys, pairs, m, "lemma10");
}

// --- lemma11 ----------------------------------------------------------------

inline PathSystem lemma11_path_m2(Env& env, const CubeShape& shape, const Vertex& x,
                                  const Vertex& y, const Matching& m) {
  validate_shape(shape);
  validate_vertex(shape, x);
  validate_vertex(shape, y);
  cons::require(shape.n >= 4, "n >= 4");
  cons::require(shape.k >= 4, "k >= 4");
  cons::require(x != y, "x,y distinct");
  cons::require(cons::parity_differs_or_odd(shape, x, y), "p(x) != p(y) when k even");
  cons::require(check_matching(shape, m).ok, "M is a matching");
  cons::require(m.size() <= 2, "|M| <= 2");
  cons::require(!(adjacent_dim(shape, x, y) != 0 && m.contains(make_edge(shape, x, y))),
                "xy not in M");

  Cube cube(shape);
  cons::Ops ops(env, cube);
  Region region = Region::whole(shape);
  std::vector<VertexPair> pairs = {{x, y}};
  PathSystem sys = cons::with_fallback(
      env, shape.vertex_count(),
      [&] {
        Seq out = ops.l11(cube.id_of(x), cube.id_of(y), m);
        return cons::seqs_to_system(cube, {out}, region);
      },
      [&] { return cons::searched_system(env, cube, region, pairs, m, nullptr); });
  return cons::certify_system(cube, sys, pairs, m, "lemma11");
}

// --- lemma12 ----------------------------------------------------------------

inline PathSystem lemma12_range_path_m2(Env& env, const RangeView& view, const Vertex& x,
                                        const Vertex& y, const Matching& m) {
  const CubeShape& s = view.ctx.shape;
  RangeView::validate(view);
  validate_vertex(s, x);
  validate_vertex(s, y);
  cons::require(s.n >= 5, "n >= 5");
  cons::require(s.k >= 4, "k >= 4");
  cons::require(x != y, "x,y distinct");
  cons::require(view.ctx.label(x) == view.p && view.ctx.label(y) == view.p, "x,y in Q[p]");
  cons::require(cons::parity_differs_or_odd(s, x, y), "p(x) != p(y) when k even");
  cons::require(check_matching(s, m).ok, "M is a matching");
  cons::require(m.size() <= 2, "|M| <= 2");
  cons::require(cons::matching_inside_view(m, view), "M inside Q[p,q]");
  cons::require(!(adjacent_dim(s, x, y) != 0 && m.contains(make_edge(s, x, y))),
                "xy not in M");

  Cube cube(s);
  cons::Ops ops(env, cube);
  Region region = Region::of_range(view);
  std::vector<VertexPair> pairs = {{x, y}};
  PathSystem sys = cons::with_fallback(
      env, cons::view_size(view),
      [&] {
        Seq out = ops.l12(view, cube.id_of(x), cube.id_of(y), m);
        return cons::seqs_to_system(cube, {out}, region);
      },
      [&] { return cons::searched_system(env, cube, region, pairs, m, nullptr); });
  return cons::certify_system(cube, sys, pairs, m, "lemma12");
}

// --- lemma13 ----------------------------------------------------------------

inline PathSystem lemma13_path_minus_uv(Env& env, const CubeShape& shape, const Vertex& x,
                                        const Vertex& y, const Vertex& u, const Vertex& v,
                                        const Matching& m) {
  validate_shape(shape);
  for (const Vertex* t : {&x, &y, &u, &v}) validate_vertex(shape, *t);
  cons::require(shape.n >= 5, "n >= 5");
  cons::require(shape.k >= 4, "k >= 4");
  cons::require(x != y && x != u && x != v && y != u && y != v && u != v,
                "x,y,u,v distinct");
  cons::require(adjacent_dim(shape, u, v) != 0, "uv is an edge");
  cons::require(cons::parity_differs_or_odd(shape, x, y), "p(x) != p(y) when k even");
  cons::require(check_matching(shape, m).ok, "M is a matching");
  cons::require(m.size() <= 1, "|M| <= 1");
  cons::require(!m.covers(u) && !m.covers(v), "V(M) cap {u,v} empty");
  cons::require(!(adjacent_dim(shape, x, y) != 0 && m.contains(make_edge(shape, x, y))),
                "xy not in M");

  Cube cube(shape);
  cons::Ops ops(env, cube);
  Region region = Region::whole(shape).minus({u, v});
  std::vector<VertexPair> pairs = {{x, y}};
  PathSystem sys = cons::with_fallback(
      env, shape.vertex_count(),
      [&] {
        Seq out = ops.l13(cube.id_of(x), cube.id_of(y), cube.id_of(u), cube.id_of(v), m);
        return cons::seqs_to_system(cube, {out}, region);
      },
      [&] { return cons::searched_system(env, cube, region, pairs, m, nullptr); });
  return cons::certify_system(cube, sys, pairs, m, "lemma13");
}

// --- lemma14 ----------------------------------------------------------------

inline PathSystem lemma14_2path_same_parity(Env& env, const CubeShape& shape,
                                            const Vertex& x, const Vertex& y,
                                            const Vertex& u, const Vertex& v) {
  validate_shape(shape);
  for (const Vertex* t : {&x, &y, &u, &v}) validate_vertex(shape, *t);
  cons::require(shape.n >= 4, "n >= 4");
  cons::require(shape.k >= 4 && shape.k % 2 == 0, "even k >= 4");
  cons::require(x != y && x != u && x != v && y != u && y != v && u != v,
                "x,y,u,v distinct");
  cons::require(parity(shape, x) == parity(shape, y) &&
                    parity(shape, u) == parity(shape, v) &&
                    parity(shape, x) != parity(shape, u),
                "p(x) = p(y) != p(u) = p(v)");

  Cube cube(shape);
  cons::Ops ops(env, cube);
  Region region = Region::whole(shape);
  std::vector<VertexPair> pairs = {{x, y}, {u, v}};
  PathSystem sys = cons::with_fallback(
      env, shape.vertex_count(),
      [&] {
        auto segs = ops.l14(cube.id_of(x), cube.id_of(y), cube.id_of(u), cube.id_of(v));
        return cons::seqs_to_system(cube, segs, region);
      },
      [&] { return cons::searched_system(env, cube, region, pairs, Matching{}, nullptr); });
  return cons::certify_system(cube, sys, pairs, Matching{}, "lemma14");
}

// --- lemma15 ----------------------------------------------------------------

inline PathSystem lemma15_3path_matching(Env& env, const CubeShape& shape, const Vertex& u,
                                         const Vertex& up, const Vertex& v, const Vertex& vp,
                                         const Vertex& w, const Vertex& wp,
                                         const Matching& m) {
  validate_shape(shape);
  for (const Vertex* t : {&u, &up, &v, &vp, &w, &wp}) validate_vertex(shape, *t);
  cons::require(shape.n >= 5, "n >= 5");
  cons::require(shape.k >= 4, "k >= 4");
  {
    std::set<Vertex> six{u, up, v, vp, w, wp};
    cons::require(six.size() == 6 && adjacent_dim(shape, u, up) != 0 &&
                      adjacent_dim(shape, v, vp) != 0 && adjacent_dim(shape, w, wp) != 0,
                  "uu',vv',ww' disjoint edges");
  }
  cons::require(check_matching(shape, m).ok, "M is a matching");
  cons::require(int(m.size()) <= std::max(0, 2 * shape.n - 10), "|M| <= 2n-10");
  cons::require(!m.covers(u) && !m.covers(v) && !m.covers(w), "{u,v,w} cap V(M) empty");
  for (auto [a, b] : std::initializer_list<std::pair<const Vertex*, const Vertex*>>{
           {&up, &vp}, {&up, &wp}, {&vp, &wp}})
    cons::require(!(adjacent_dim(shape, *a, *b) != 0 && m.contains(make_edge(shape, *a, *b))),
                  "{u'v',u'w',v'w'} cap M empty");

  Cube cube(shape);
  cons::Ops ops(env, cube);
  Region region = Region::whole(shape);
  std::vector<VertexPair> pairs = {{u, up}, {v, vp}, {w, wp}};
  PathSystem sys = cons::with_fallback(
      env, shape.vertex_count(),
      [&] {
        auto segs = ops.l15(cube.id_of(u), cube.id_of(up), cube.id_of(v), cube.id_of(vp),
                            cube.id_of(w), cube.id_of(wp), m);
        return cons::seqs_to_system(cube, segs, region);
      },
      [&] { return cons::searched_system(env, cube, region, pairs, m, nullptr); });
  return cons::certify_system(cube, sys, pairs, m, "lemma15");
}

// --- lemma16 ----------------------------------------------------------------

inline PathSystem lemma16_path_dist3(Env& env, const CubeShape& shape, const Vertex& x,
                                     const Vertex& y, const Matching& m) {
  validate_shape(shape);
  validate_vertex(shape, x);
  validate_vertex(shape, y);
  cons::require(shape.n >= 4, "n >= 4");
  cons::require(shape.k >= 4, "k >= 4");
  cons::require(x != y, "x,y distinct");
  cons::require(distance(shape, x, y) <= 3, "d(x,y) <= 3");
  cons::require(cons::parity_differs_or_odd(shape, x, y), "p(x) != p(y) when k even");
  cons::require(check_matching(shape, m).ok, "M is a matching");
  cons::require(int(m.size()) <= std::max(0, 2 * shape.n - 8), "|M| <= 2n-8");
  cons::require(!(adjacent_dim(shape, x, y) != 0 && m.contains(make_edge(shape, x, y))),
                "xy not in M");

  Cube cube(shape);
  cons::Ops ops(env, cube);
  Region region = Region::whole(shape);
  std::vector<VertexPair> pairs = {{x, y}};
  PathSystem sys = cons::with_fallback(
      env, shape.vertex_count(),
      [&] {
        Seq out = ops.l16(cube.id_of(x), cube.id_of(y), m);
        return cons::seqs_to_system(cube, {out}, region);
      },
      [&] { return cons::searched_system(env, cube, region, pairs, m, nullptr); });
  return cons::certify_system(cube, sys, pairs, m, "lemma16");
}

// --- theorem3 ---------------------------------------------------------------

inline std::pair<HamCycleCertificate, ConstructionTrace> theorem3_ham_cycle(
    Env& env, const CubeShape& shape, const Matching& m) {
  validate_shape(shape);
  cons::require(shape.n >= 5, "n >= 5");
  cons::require(shape.k >= 4, "k >= 4");
  cons::require(check_matching(shape, m).ok, "M is a matching");
  cons::require(int(m.size()) <= std::max(0, 4 * shape.n - 20), "|M| <= 4n-20");

  Cube cube(shape);
  cons::Ops ops(env, cube);
  Seq out = cons::with_fallback(
      env, shape.vertex_count(), [&] { return ops.theorem3(m); },
      [&] { return ops.fallback_cycle(m, "theorem3 contract"); });
  HamCycleCertificate cert;
  cert.order = cons::to_path(cube, out);
  auto rep = check_ham_cycle(cube, cert, m);
  if (!rep.ok)
    throw ConsistencyError("theorem3: output failed verification: " + rep.first_violation);
  ConstructionTrace trace;
  trace.root = env.trace.take();
  trace.fallbacks = env.fallbacks;
  return {std::move(cert), std::move(trace)};
}

}  // namespace kcube
