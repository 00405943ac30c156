#pragma once

// Lemmas 13-16 and the main theorem with its claim machinery.

#include "kcube/construction.hpp"

namespace kcube::cons {

inline Matching plus_edge(const CubeShape& s, const Matching& m, const Edge& e) {
  std::vector<Edge> es = m.edges;
  es.push_back(e);
  return make_matching(s, es);
}

inline Matching minus_edges(const Matching& m, const std::vector<Edge>& rm) {
  Matching out;
  for (const Edge& e : m.edges)
    if (std::find(rm.begin(), rm.end(), e) == rm.end()) out.edges.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------
// Lemma 13: spanning x,y-path through |M| <= 1 in Q_n^k - {u,v}, uv an edge.

inline Seq Ops::l13(VertexId x, VertexId y, VertexId u, VertexId v, const Matching& m) {
  auto sc = env_.trace.push("L13 n=" + std::to_string(cube_.shape().n));
  const CubeShape& s = cube_.shape();
  const int k = s.k;
  Edge uv_edge = edge_at(u, v);
  int d = select_split_dimension(s, m, 0, {uv_edge});
  SplitContext ctx{s, d, cube_.digit(u, d - 1), false};
  env_.trace.note(fmt_ctx(ctx));
  MatchingSplit ms = restrict_matching(m, ctx);
  int li = ctx.label(cube_, x), lj = ctx.label(cube_, y);

  if (li == 0 && lj == 0) {
    env_.trace.note("Case 1: x,y in Q[0]");
    Matching m0uv = plus_edge(s, ms.per_cube[0], uv_edge);
    Seq base = l12(make_range(ctx, 0, 0), x, y, m0uv);
    PathView pv(cube_.count(), base);
    VertexId upn = pv.nbr_toward(u, v) == v ? pv.nbrs_on(u).front() : kNone;
    // uv lies on the path; take the other neighbor on each side
    VertexId up2 = kNone, vp2 = kNone;
    for (VertexId c : pv.nbrs_on(u))
      if (c != v) up2 = c;
    for (VertexId c : pv.nbrs_on(v))
      if (c != u) vp2 = c;
    (void)upn;
    if (up2 == kNone || vp2 == kNone) throw ConsistencyError("L13: uv not interior");
    Seq upper = l9(make_range(ctx, 1, k - 1), ctx.with_label(cube_, up2, 1),
                   ctx.with_label(cube_, vp2, k - 1), ms.in_range(1, k - 1));
    EdgeSoup soup(cube_.count());
    soup.add_seq(base);
    soup.add_seq(upper);
    soup.remove_vertex(u);
    soup.remove_vertex(v);
    soup.add_edge(up2, ctx.with_label(cube_, up2, 1));
    soup.add_edge(vp2, ctx.with_label(cube_, vp2, k - 1));
    return one_path(soup, x, y);
  }

  if (li == 0 || lj == 0) {
    if (lj == 0) {
      std::swap(x, y);
      std::swap(li, lj);
    }
    if (lj == 1) {  // by symmetry assume j != 1
      ctx.flipped = !ctx.flipped;
      ms = restrict_matching(m, ctx);
      lj = ctx.label(cube_, y);
    }
    env_.trace.note("Case 2: x in Q[0], y in Q[" + std::to_string(lj) + "]");
    if (even_k() && par(x) == par(u)) std::swap(u, v);
    Matching m0uv = plus_edge(s, ms.per_cube[0], uv_edge);
    Seq base = l12(make_range(ctx, 0, 0), x, u, m0uv);
    PathView pv(cube_.count(), base);
    VertexId vp2 = kNone;
    for (VertexId c : pv.nbrs_on(v))
      if (c != u) vp2 = c;
    if (vp2 == kNone) throw ConsistencyError("L13: v has no free path neighbor");
    Seq mid = l9(make_range(ctx, 1, lj), ctx.with_label(cube_, vp2, 1), y,
                 ms.in_range(1, lj));
    EdgeSoup soup(cube_.count());
    soup.add_seq(base);
    soup.add_seq(mid);
    soup.remove_vertex(u);
    soup.remove_vertex(v);
    soup.add_edge(vp2, ctx.with_label(cube_, vp2, 1));
    if (lj == k - 1) return one_path(soup, x, y);
    // absorb Q[lj+1, k-1] through an edge of the Q[lj] trace
    VertexId r = kNone, rp = kNone;
    for (auto [a, b] : canonical_edges(mid)) {
      if (ctx.label(cube_, a) != lj || ctx.label(cube_, b) != lj) continue;
      if (cube_.edge_dim0(a, b) == ctx.d - 1) continue;
      if (in_matching(m, a, b)) continue;
      if (in_matching(m, ctx.with_label(cube_, a, lj + 1), ctx.with_label(cube_, b, lj + 1)))
        continue;
      r = a;
      rp = b;
      break;
    }
    if (r == kNone) scan_fail("L13/Case2 r edge");
    Seq high = pr_range_path_thru(make_range(ctx, lj + 1, k - 1),
                                  ctx.with_label(cube_, r, lj + 1),
                                  ctx.with_label(cube_, rp, lj + 1),
                                  ms.in_range(lj + 1, k - 1));
    soup.add_seq(high);
    soup.remove_edge(r, rp);
    soup.add_edge(r, ctx.with_label(cube_, r, lj + 1));
    soup.add_edge(rp, ctx.with_label(cube_, rp, lj + 1));
    return one_path(soup, x, y);
  }

  // Case 3: both x and y off Q[0]
  if (li > lj) {
    std::swap(x, y);
    std::swap(li, lj);
  }
  if (li == lj && li == k - 1) {  // need i = j != k-1
    ctx.flipped = !ctx.flipped;
    ms = restrict_matching(m, ctx);
    li = lj = ctx.label(cube_, x);
  }
  env_.trace.note("Case 3: x in Q[" + std::to_string(li) + "], y in Q[" +
                  std::to_string(lj) + "]");
  if (even_k() && par(x) == par(v)) {
    // arrange p(x) = p(v) != p(u) = p(y)
  } else if (even_k()) {
    std::swap(u, v);
  }
  VertexId up = kNone, vp = kNone;
  for (VertexId a : subcube_nbrs(ctx, u)) {
    if (a == v || covers(m, a) || covers(m, ctx.with_label(cube_, a, 1))) continue;
    if (ctx.with_label(cube_, a, 1) == x) continue;
    for (VertexId b : subcube_nbrs(ctx, v)) {
      if (b == u || b == a || covers(m, b) || covers(m, ctx.with_label(cube_, b, k - 1)))
        continue;
      if (ctx.with_label(cube_, b, k - 1) == y) continue;
      up = a;
      vp = b;
      break;
    }
    if (up != kNone) break;
  }
  if (up == kNone) scan_fail("L13/Case3 u',v'");
  std::vector<Edge> fes = ms.per_cube[0].edges;
  fes.push_back(uv_edge);
  fes.push_back(edge_at(u, up));
  fes.push_back(edge_at(v, vp));
  Matching forest = as_forest(s, fes);
  Seq c0 = pr_cube_cycle_forest(ctx, 0, forest);

  if (li < lj) {
    Seq pxu = l9(make_range(ctx, 1, li), ctx.with_label(cube_, up, 1), x,
                 ms.in_range(1, li));
    Seq pyv = l9(make_range(ctx, lj, k - 1), y, ctx.with_label(cube_, vp, k - 1),
                 ms.in_range(lj, k - 1));
    EdgeSoup soup(cube_.count());
    add_cycle(soup, c0);
    soup.add_seq(pxu);
    soup.add_seq(pyv);
    soup.remove_vertex(u);
    soup.remove_vertex(v);
    soup.add_edge(up, ctx.with_label(cube_, up, 1));
    soup.add_edge(vp, ctx.with_label(cube_, vp, k - 1));
    if (li + 1 < lj) {
      VertexId t = kNone, tp = kNone;
      for (auto [a, b] : canonical_edges(pxu)) {
        if (ctx.label(cube_, a) != li || ctx.label(cube_, b) != li) continue;
        if (cube_.edge_dim0(a, b) == ctx.d - 1) continue;
        if (in_matching(m, a, b)) continue;
        if (in_matching(m, ctx.with_label(cube_, a, li + 1),
                        ctx.with_label(cube_, b, li + 1)))
          continue;
        t = a;
        tp = b;
        break;
      }
      if (t == kNone) scan_fail("L13/Case3 t edge");
      Seq mid = pr_range_path_thru(make_range(ctx, li + 1, lj - 1),
                                   ctx.with_label(cube_, t, li + 1),
                                   ctx.with_label(cube_, tp, li + 1),
                                   ms.in_range(li + 1, lj - 1));
      soup.add_seq(mid);
      soup.remove_edge(t, tp);
      soup.add_edge(t, ctx.with_label(cube_, t, li + 1));
      soup.add_edge(tp, ctx.with_label(cube_, tp, li + 1));
    }
    return one_path(soup, x, y);
  }

  // li == lj (and != 0, != k-1): twin-range stitch around a Q[0] cycle
  VertexId s0 = kNone, s0p = kNone;
  for (auto [a, b] : canonical_cycle_edges(c0)) {
    if (forest.contains(edge_at(a, b))) continue;
    VertexId a1 = ctx.with_label(cube_, a, 1), b1 = ctx.with_label(cube_, b, 1);
    if (std::minmax(a1, b1) == std::minmax(x, y)) continue;
    if (covers(m, a1) || covers(m, b1)) continue;
    s0 = a;
    s0p = b;
    break;
  }
  if (s0 == kNone) scan_fail("L13/Case3 s edge");
  VertexId s1 = ctx.with_label(cube_, s0, 1), s1p = ctx.with_label(cube_, s0p, 1);
  Matching mid_m = plus_edge(s, ms.in_range(1, li), edge_at(s1, s1p));
  Seq pxy = l12(make_range(ctx, 1, li).reversed(), x, y, mid_m);
  Seq puv = l12(make_range(ctx, li + 1, k - 1).reversed(), ctx.with_label(cube_, up, k - 1),
                ctx.with_label(cube_, vp, k - 1), ms.in_range(li + 1, k - 1));
  EdgeSoup soup(cube_.count());
  add_cycle(soup, c0);
  soup.add_seq(pxy);
  soup.add_seq(puv);
  soup.remove_vertex(u);
  soup.remove_vertex(v);
  soup.remove_edge(s0, s0p);
  soup.remove_edge(s1, s1p);
  soup.add_edge(s0, s1);
  soup.add_edge(s0p, s1p);
  soup.add_edge(up, ctx.with_label(cube_, up, k - 1));
  soup.add_edge(vp, ctx.with_label(cube_, vp, k - 1));
  return one_path(soup, x, y);
}

// ---------------------------------------------------------------------------
// Lemma 14: spanning 2-path P_{x,y} + P_{u,v}, even k, p(x)=p(y) != p(u)=p(v).

inline std::vector<Seq> Ops::l14(VertexId x, VertexId y, VertexId u, VertexId v) {
  auto sc = env_.trace.push("L14 n=" + std::to_string(cube_.shape().n));
  const CubeShape& s = cube_.shape();
  const int k = s.k;
  int d = 1;
  while (cube_.digit(x, d - 1) == cube_.digit(y, d - 1)) ++d;

  struct Pres {
    SplitContext ctx;
    VertexId X, Y, U, V;
    int ml, iu, iv;
  };
  std::vector<Pres> all;
  for (int flip = 0; flip < 2; ++flip)
    for (auto [bx, by] : {std::pair{x, y}, std::pair{y, x}})
      for (auto [bu, bv] : {std::pair{u, v}, std::pair{v, u}}) {
        SplitContext c{s, d, cube_.digit(bx, d - 1), flip != 0};
        all.push_back({c, bx, by, bu, bv, c.label(cube_, by), c.label(cube_, bu),
                       c.label(cube_, bv)});
      }

  if (all.front().iu == all.front().iv) {
    env_.trace.note("Case 1: u,v share a subcube");
    for (const Pres& pr : all) {
      int i = pr.iu, mlab = pr.ml;
      if (!(i < mlab)) continue;
      if (i == 0 && mlab == 1) continue;
      env_.trace.note("presentation " + fmt_ctx(pr.ctx));
      if (i == 0) {
        Seq puv = pr_cube_path_minus(pr.ctx, 0, pr.U, pr.V, {pr.X});
        Seq rest = pr_range_path(make_range(pr.ctx, 1, k - 1),
                                 pr.ctx.with_label(cube_, pr.X, 1), pr.Y);
        EdgeSoup soup(cube_.count());
        soup.add_seq(rest);
        soup.add_edge(pr.X, pr.ctx.with_label(cube_, pr.X, 1));
        Seq pxy = one_path(soup, pr.X, pr.Y);
        EdgeSoup pack(cube_.count());
        pack.add_seq(pxy);
        pack.add_seq(puv);
        return m_paths(pack, {{x, y}, {u, v}});
      }
      VertexId si = kNone;
      for (VertexId c : subcube_vertices(pr.ctx, i))
        if (par(c) != par(pr.U)) {
          si = c;
          break;
        }
      if (si == kNone) continue;
      Seq puv = pr_cube_path_minus(pr.ctx, i, pr.U, pr.V, {si});
      Seq pa = pr_range_path(make_range(pr.ctx, 0, i - 1), pr.X,
                             pr.ctx.with_label(cube_, si, i - 1));
      Seq pb = pr_range_path(make_range(pr.ctx, i + 1, k - 1), pr.Y,
                             pr.ctx.with_label(cube_, si, i + 1));
      EdgeSoup soup(cube_.count());
      soup.add_seq(pa);
      soup.add_seq(pb);
      soup.add_edge(pr.ctx.with_label(cube_, si, i - 1), si);
      soup.add_edge(si, pr.ctx.with_label(cube_, si, i + 1));
      Seq pxy = one_path(soup, pr.X, pr.Y);
      EdgeSoup pack(cube_.count());
      pack.add_seq(pxy);
      pack.add_seq(puv);
      return m_paths(pack, {{x, y}, {u, v}});
    }
    scan_fail("L14/Case1 presentation");
  }

  env_.trace.note("Case 2: u,v in different subcubes");
  for (const Pres& pr : all) {
    int i = pr.iu, j = pr.iv, mlab = pr.ml;
    if (!(i < mlab && i < j)) continue;
    env_.trace.note("presentation " + fmt_ctx(pr.ctx));
    const SplitContext& c = pr.ctx;
    auto trace_edges_at = [&](const Seq& seq, int lab) {
      std::vector<PairIds> out;
      for (auto [a, b] : canonical_edges(seq)) {
        if (c.label(cube_, a) != lab || c.label(cube_, b) != lab) continue;
        if (cube_.edge_dim0(a, b) == c.d - 1) continue;
        out.push_back({a, b});
      }
      return out;
    };
    if (j < mlab) {
      Seq pxu = pr_range_path(make_range(c, 0, j - 1), pr.X, pr.U);
      PathView pv(cube_.count(), pxu);
      VertexId sv = kNone, rv = kNone;
      for (auto [a, b] : trace_edges_at(pxu, j - 1)) {
        VertexId sc2 = pv.pos(a) < pv.pos(b) ? a : b;
        VertexId rc = sc2 == a ? b : a;
        VertexId sj = c.with_label(cube_, sc2, j), rj = c.with_label(cube_, rc, j);
        if (pr.V == sj || pr.V == rj) continue;
        if (c.with_label(cube_, sc2, j + 1) == pr.Y) continue;
        if (par(sc2) != par(pr.V)) continue;
        sv = sc2;
        rv = rc;
        break;
      }
      if (sv == kNone) continue;
      VertexId sj = c.with_label(cube_, sv, j), rj = c.with_label(cube_, rv, j);
      Seq prv = pr_cube_path_minus(c, j, rj, pr.V, {sj});
      Seq psy = pr_range_path(make_range(c, j + 1, k - 1),
                              c.with_label(cube_, sv, j + 1), pr.Y);
      EdgeSoup soup(cube_.count());
      soup.add_seq(pxu);
      soup.add_seq(prv);
      soup.add_seq(psy);
      soup.remove_edge(sv, rv);
      soup.add_edge(sv, sj);
      soup.add_edge(sj, c.with_label(cube_, sv, j + 1));
      soup.add_edge(rv, rj);
      return m_paths(soup, {{x, y}, {u, v}});
    }
    // j >= mlab
    Seq pxu = pr_range_path(make_range(c, 0, mlab - 1), pr.X, pr.U);
    PathView pv(cube_.count(), pxu);
    if (j == mlab) {
      VertexId sv = kNone, rv = kNone;
      for (auto [a, b] : trace_edges_at(pxu, mlab - 1)) {
        VertexId sc2 = pv.pos(a) < pv.pos(b) ? a : b;
        VertexId rc = sc2 == a ? b : a;
        if (par(sc2) != par(pr.Y)) continue;
        VertexId sm = c.with_label(cube_, sc2, mlab), rm = c.with_label(cube_, rc, mlab);
        if (pr.V == sm || pr.V == rm || pr.Y == sm || pr.Y == rm) continue;
        sv = sc2;
        rv = rc;
        break;
      }
      if (sv == kNone) continue;
      VertexId sm = c.with_label(cube_, sv, mlab), rm = c.with_label(cube_, rv, mlab);
      auto two = pr_range_two_path(make_range(c, mlab, k - 1), {sm, pr.Y}, {rm, pr.V});
      EdgeSoup soup(cube_.count());
      soup.add_seq(pxu);
      soup.add_seq(two[0]);
      soup.add_seq(two[1]);
      soup.remove_edge(sv, rv);
      soup.add_edge(sv, sm);
      soup.add_edge(rv, rm);
      return m_paths(soup, {{x, y}, {u, v}});
    }
    // j > mlab
    VertexId sv = kNone, rv = kNone;
    for (auto [a, b] : trace_edges_at(pxu, mlab - 1)) {
      VertexId sc2 = pv.pos(a) < pv.pos(b) ? a : b;
      VertexId rc = sc2 == a ? b : a;
      if (par(sc2) == par(pr.Y)) continue;
      VertexId sm = c.with_label(cube_, sc2, mlab), rm = c.with_label(cube_, rc, mlab);
      if (pr.Y == sm || pr.Y == rm) continue;
      sv = sc2;
      rv = rc;
      break;
    }
    if (sv == kNone) continue;
    VertexId sm = c.with_label(cube_, sv, mlab), rm = c.with_label(cube_, rv, mlab);
    Seq psy = pr_cube_path_minus(c, mlab, sm, pr.Y, {rm});
    Seq prv = pr_range_path(make_range(c, mlab + 1, k - 1),
                            c.with_label(cube_, rv, mlab + 1), pr.V);
    EdgeSoup soup(cube_.count());
    soup.add_seq(pxu);
    soup.add_seq(psy);
    soup.add_seq(prv);
    soup.remove_edge(sv, rv);
    soup.add_edge(sv, sm);
    soup.add_edge(rv, rm);
    soup.add_edge(rm, c.with_label(cube_, rv, mlab + 1));
    return m_paths(soup, {{x, y}, {u, v}});
  }
  scan_fail("L14/Case2 presentation");
}

// ---------------------------------------------------------------------------
// Lemma 15: spanning 3-path through M, |M| <= 2n-10.

inline std::vector<Seq> Ops::l15(VertexId u, VertexId up, VertexId v, VertexId vp,
                                 VertexId w, VertexId wp, const Matching& m) {
  auto sc = env_.trace.push("L15 n=" + std::to_string(cube_.shape().n));
  const CubeShape& s = cube_.shape();
  const int k = s.k;
  Edge eu = edge_at(u, up), ev = edge_at(v, vp), ew = edge_at(w, wp);
  const std::vector<PairIds> want = {{u, up}, {v, vp}, {w, wp}};

  if (s.n == 5) {
    env_.trace.note("base n=5, M empty");
    int d = select_split_dimension(s, Matching{}, 0, {eu, ev, ew});
    // presentations: each pair as the base, labels of the others sorted
    std::vector<std::array<EdgePair, 3>> orders;
    std::array<EdgePair, 3> base_pairs = {{{u, up}, {v, vp}, {w, wp}}};
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end());
    do {
      orders.push_back({base_pairs[idx[0]], base_pairs[idx[1]], base_pairs[idx[2]]});
    } while (std::next_permutation(idx.begin(), idx.end()));
    for (const auto& ord : orders) {
      SplitContext ctx{s, d, cube_.digit(ord[0].f, d - 1), false};
      int i = ctx.label(cube_, ord[1].f), j = ctx.label(cube_, ord[2].f);
      if (i > j) continue;
      env_.trace.note(fmt_ctx(ctx));
      if (i == 0 && j == 0) {
        Matching st = Matching{{edge_at(ord[2].f, ord[2].fp)}};
        auto two = pr_cube_two_path_thru(ctx, 0, {ord[0].f, ord[0].fp},
                                         {ord[1].f, ord[1].fp}, st);
        VertexId S = ord[2].f, T = ord[2].fp;
        const Seq& host = PathView(cube_.count(), two[0]).contains(S) ? two[0] : two[1];
        PathView pv(cube_.count(), host);
        VertexId sp = kNone, tp = kNone;
        for (VertexId c : pv.nbrs_on(S))
          if (c != T) sp = c;
        for (VertexId c : pv.nbrs_on(T))
          if (c != S) tp = c;
        if (sp == kNone || tp == kNone) continue;
        Seq upper = pr_range_path(make_range(ctx, 1, k - 1), ctx.with_label(cube_, sp, 1),
                                  ctx.with_label(cube_, tp, 1));
        EdgeSoup soup(cube_.count());
        soup.add_seq(two[0]);
        soup.add_seq(two[1]);
        soup.add_seq(upper);
        soup.remove_vertex(S);
        soup.remove_vertex(T);
        soup.add_edge(S, T);
        soup.add_edge(sp, ctx.with_label(cube_, sp, 1));
        soup.add_edge(tp, ctx.with_label(cube_, tp, 1));
        return m_paths(soup, want);
      }
      if (i == 0 && j > 0) {
        auto two = pr_range_two_path(make_range(ctx, 0, j - 1), {ord[0].f, ord[0].fp},
                                     {ord[1].f, ord[1].fp});
        Seq pst = pr_range_path(make_range(ctx, j, k - 1), ord[2].f, ord[2].fp);
        EdgeSoup soup(cube_.count());
        soup.add_seq(two[0]);
        soup.add_seq(two[1]);
        soup.add_seq(pst);
        return m_paths(soup, want);
      }
      if (i > 0 && i < j) {
        Seq p0 = pr_range_path(make_range(ctx, 0, i - 1), ord[0].f, ord[0].fp);
        Seq p1 = pr_range_path(make_range(ctx, i, j - 1), ord[1].f, ord[1].fp);
        Seq p2 = pr_range_path(make_range(ctx, j, k - 1), ord[2].f, ord[2].fp);
        EdgeSoup soup(cube_.count());
        soup.add_seq(p0);
        soup.add_seq(p1);
        soup.add_seq(p2);
        return m_paths(soup, want);
      }
    }
    scan_fail("L15 base presentation");
  }

  // inductive step, n >= 6
  auto cands = split_dimension_candidates(s, m, 1, {eu, ev, ew});
  if (cands.empty()) scan_fail("L15 split dimension");
  int d = -1;
  {
    std::vector<int> count(s.n + 1, 0);
    for (const Edge& e : m.edges) count[e.dim]++;
    int best = count[cands.front()];
    for (int cd : cands) {
      if (count[cd] != best) break;
      if (best == 1) {
        Edge crossing;
        for (const Edge& e : m.edges)
          if (e.dim == cd) crossing = e;
        std::set<Vertex> ends{crossing.a, crossing.b};
        if (ends.count(cube_.at(up)) || ends.count(cube_.at(vp)) ||
            ends.count(cube_.at(wp)))
          continue;
      }
      d = cd;
      break;
    }
  }
  if (d < 0) scan_fail("L15 split dimension endpoint rule");

  // presentation: first pair's cube at 0, other labels ascending
  std::array<EdgePair, 3> base_pairs = {{{u, up}, {v, vp}, {w, wp}}};
  std::array<int, 3> idx = {0, 1, 2};
  std::array<EdgePair, 3> ord{};
  SplitContext ctx{s, d, 0, false};
  bool found_pres = false;
  std::sort(idx.begin(), idx.end());
  do {
    SplitContext c{s, d, cube_.digit(base_pairs[idx[0]].f, d - 1), false};
    int i = c.label(cube_, base_pairs[idx[1]].f);
    int j = c.label(cube_, base_pairs[idx[2]].f);
    if (i > j) continue;
    ctx = c;
    ord = {base_pairs[idx[0]], base_pairs[idx[1]], base_pairs[idx[2]]};
    found_pres = true;
    break;
  } while (std::next_permutation(idx.begin(), idx.end()));
  if (!found_pres) scan_fail("L15 presentation");
  MatchingSplit ms = restrict_matching(m, ctx);
  int li = ctx.label(cube_, ord[1].f), lj = ctx.label(cube_, ord[2].f);
  env_.trace.note(fmt_ctx(ctx) + " labels 0," + std::to_string(li) + "," +
                  std::to_string(lj));

  if (li == 0 && lj == 0) return l15_case1(ctx, ord[0], ord[1], ord[2], m);
  if (li == 0 || li == lj) {
    // two edges share a cube: arrange them as the first two pairs at label 0
    std::array<EdgePair, 3> arranged{};
    if (li == 0) {
      arranged = {ord[0], ord[1], ord[2]};
    } else {
      arranged = {ord[1], ord[2], ord[0]};
      SplitContext c2{s, d, cube_.digit(arranged[0].f, d - 1), false};
      ctx = c2;
    }
    return l15_case2(ctx, arranged[0], arranged[1], arranged[2], m);
  }
  return l15_case3(ctx, ord[0], ord[1], ord[2], m);
}

}  // namespace kcube::cons

#include "kcube/construction_theorem2.hpp"  // IWYU pragma: keep
