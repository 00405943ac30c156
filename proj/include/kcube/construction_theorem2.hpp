#pragma once

// Lemma 15 case work, Lemma 16, and the main theorem's claim machinery.

#include "kcube/construction.hpp"

namespace kcube::cons {



// Validate a linear forest into a Matching container (edges need not be
// vertex-disjoint, only degree <= 2 and acyclic).

// Ring pairing (for the balanced endpoint-set selections of Claims 3/4 and
// the final 4-path case): order and orient path pieces so that consecutive
// link pairs have opposite parity when k is even.  `extra` may impose
// branch-specific constraints; returns the flattened ring or empty.

// The two valid detour-neighbor choices around an off-cycle chord x0y0: both
// successors, or both predecessors, so each x0->y0 arc donates one neighbor.

// ---------------------------------------------------------------------------
// Lemma 15 cases (inductive step, n >= 6).

inline std::vector<Seq> Ops::two_path_any(const SplitContext& ctx, int label, PairIds A,
                                          PairIds B) {
  bool mixedA = par(A.first) != par(A.second);
  bool mixedB = par(B.first) != par(B.second);
  if (!even_k() || (mixedA && mixedB))
    return pr_range_two_path(make_range(ctx, label, label), A, B);
  return sub_l14(ctx, label, A.first, A.second, B.first, B.second);
}

inline std::vector<Seq> Ops::l15_case1(const SplitContext& ctx0, EdgePair U, EdgePair V,
                                       EdgePair W, const Matching& m) {
  auto sc = env_.trace.push("L15/Case1");
  SplitContext ctx = ctx0;
  MatchingSplit ms = restrict_matching(m, ctx);
  const CubeShape& s = cube_.shape();
  const int k = s.k;
  const std::vector<PairIds> want = {{U.f, U.fp}, {V.f, V.fp}, {W.f, W.fp}};

  if (int(ms.per_cube[0].size()) <= int(m.size()) - 2) {
    env_.trace.note("Subcase 1.1");
    if (!ms.per_boundary[k - 1].empty()) {
      ctx.flipped = !ctx.flipped;
      ms = restrict_matching(m, ctx);
    }
    auto tri = sub_l15(ctx, 0, U.f, U.fp, V.f, V.fp, W.f, W.fp, ms.per_cube[0]);
    VertexId t = kNone, tp = kNone;
    if (ms.per_boundary[0].empty()) {
      for (auto [a, b] : canonical_edges(tri)) {
        if (in_matching(m, a, b)) continue;
        if (in_matching(m, ctx.with_label(cube_, a, 1), ctx.with_label(cube_, b, 1)))
          continue;
        t = a;
        tp = b;
        break;
      }
      if (t == kNone) scan_fail("L15/1.1 t edge");
    } else {
      const Edge& cr = ms.per_boundary[0].edges[0];
      VertexId ca = cube_.id_of(cr.a), cb = cube_.id_of(cr.b);
      t = ctx.label(cube_, ca) == 0 ? ca : cb;
      for (const Seq& piece : tri) {
        PathView pv(cube_.count(), piece);
        if (!pv.contains(t)) continue;
        auto nb = pv.nbrs_on(t);
        tp = *std::min_element(nb.begin(), nb.end());
      }
      if (tp == kNone) scan_fail("L15/1.1 crossing neighbor");
    }
    Seq upper = pr_range_path_thru(make_range(ctx, 1, k - 1), ctx.with_label(cube_, t, 1),
                                   ctx.with_label(cube_, tp, 1), ms.in_range(1, k - 1));
    EdgeSoup soup(cube_.count());
    for (const Seq& piece : tri) soup.add_seq(piece);
    soup.add_seq(upper);
    soup.remove_edge(t, tp);
    soup.add_edge(t, ctx.with_label(cube_, t, 1));
    soup.add_edge(tp, ctx.with_label(cube_, tp, 1));
    return m_paths(soup, want);
  }

  env_.trace.note("Subcase 1.2");
  for (int attempt = 0;; ++attempt) {
    if (attempt == 2) scan_fail("L15/1.2 flip normalization");
    if (ms.per_boundary[k - 1].empty() && ms.per_boundary[k - 2].empty() &&
        ms.per_cube[k - 1].empty())
      break;
    ctx.flipped = !ctx.flipped;
    ms = restrict_matching(m, ctx);
  }
  Matching forest = ms.per_cube[0];
  for (auto [a, b] : {PairIds{U.f, U.fp}, PairIds{V.f, V.fp}, PairIds{W.f, W.fp}}) {
    std::vector<Edge> es = forest.edges;
    es.push_back(edge_at(a, b));
    forest = as_forest(s, es);
  }
  Seq c0 = pr_cube_cycle_forest(ctx, 0, forest);
  CycleView cv(cube_.count(), c0);

  // orient the cycle so the walk leaves U.f away from U.fp
  Seq order;
  {
    int pos = cv.pos(U.f);
    bool forward = cv.at(pos + 1) != U.fp;
    for (int i = 0; i < cv.size(); ++i)
      order.push_back(forward ? cv.at(pos + i) : cv.at(pos - i));
  }
  std::set<PairIds> pair_edges = {std::minmax(V.f, V.fp), std::minmax(W.f, W.fp)};
  std::vector<Seq> pieces;
  Seq curp = {order[0]};
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    if (pair_edges.count(std::minmax(order[i], order[i + 1]))) {
      pieces.push_back(curp);
      curp.clear();
    }
    curp.push_back(order[i + 1]);
  }
  pieces.push_back(curp);
  if (pieces.size() != 3) throw ConsistencyError("L15/1.2 piece extraction");

  VertexId s0 = kNone;
  if (!ms.per_boundary[0].empty()) {
    const Edge& cr = ms.per_boundary[0].edges[0];
    VertexId ca = cube_.id_of(cr.a), cb = cube_.id_of(cr.b);
    s0 = ctx.label(cube_, ca) == 0 ? ca : cb;
  }
  // one edge per piece, avoiding M_0, s0-incident when s0 lives on the piece
  struct Chosen {
    VertexId alpha, alphap;
  };
  std::vector<Chosen> chosen;
  for (const Seq& piece : pieces) {
    PathView pv(cube_.count(), piece);
    VertexId a = kNone, b = kNone;
    for (auto [e1, e2] : canonical_edges(piece)) {
      if (in_matching(m, e1, e2)) continue;
      if (s0 != kNone && pv.contains(s0) && e1 != s0 && e2 != s0) continue;
      a = e1;
      b = e2;
      break;
    }
    if (a == kNone) scan_fail("L15/1.2 piece edge");
    if (pv.pos(a) > pv.pos(b)) std::swap(a, b);
    chosen.push_back({a, b});  // alpha closer to the piece walk-start
  }
  // rotation so that {a0, c0'} is balanced when k is even
  int rot = -1;
  for (int r = 0; r < 3; ++r) {
    VertexId a0 = chosen[r].alpha, c0p = chosen[(r + 2) % 3].alphap;
    if (!even_k() || par(a0) != par(c0p)) {
      rot = r;
      break;
    }
  }
  if (rot < 0) scan_fail("L15/1.2 balanced pair rotation");
  VertexId a0 = chosen[rot].alpha, a0p = chosen[rot].alphap;
  VertexId b0 = chosen[(rot + 1) % 3].alpha, b0p = chosen[(rot + 1) % 3].alphap;
  VertexId cc0 = chosen[(rot + 2) % 3].alpha, cc0p = chosen[(rot + 2) % 3].alphap;
  auto L = [&](VertexId vtx, int lab) { return ctx.with_label(cube_, vtx, lab); };

  EdgeSoup soup(cube_.count());
  add_cycle(soup, c0);
  soup.remove_edge(U.f, U.fp);
  soup.remove_edge(V.f, V.fp);
  soup.remove_edge(W.f, W.fp);
  soup.remove_edge(a0, a0p);
  soup.remove_edge(b0, b0p);
  soup.remove_edge(cc0, cc0p);

  if (s0 == kNone || s0 == a0 || s0 == cc0p) {
    // main shape: a/c' pair bridges up into Q[1, k-2], the rest wraps to Q[k-1]
    auto two = two_path_any(ctx, k - 1, {L(a0p, k - 1), L(b0, k - 1)},
                            {L(b0p, k - 1), L(cc0, k - 1)});
    if (!in_matching(m, L(a0, 1), L(cc0p, 1))) {
      Seq mid = l9(make_range(ctx, 1, k - 2), L(a0, 1), L(cc0p, 1), ms.in_range(1, k - 2));
      soup.add_seq(two[0]);
      soup.add_seq(two[1]);
      soup.add_seq(mid);
      soup.add_edge(a0, L(a0, 1));
      soup.add_edge(cc0p, L(cc0p, 1));
      soup.add_edge(a0p, L(a0p, k - 1));
      soup.add_edge(b0, L(b0, k - 1));
      soup.add_edge(b0p, L(b0p, k - 1));
      soup.add_edge(cc0, L(cc0, k - 1));
      return m_paths(soup, want);
    }
    // a1 c1' is itself a matching edge: excise {a1, c1'} via Lemma 13
    env_.trace.note("Subcase 1.2 with a1c1' in M_1");
    VertexId a1 = L(a0, 1), c1p = L(cc0p, 1);
    VertexId r0 = kNone, r0p = kNone;
    std::set<PairIds> banned = {std::minmax(U.f, U.fp), std::minmax(V.f, V.fp),
                                std::minmax(W.f, W.fp), std::minmax(a0, a0p),
                                std::minmax(b0, b0p), std::minmax(cc0, cc0p)};
    for (auto [e1, e2] : canonical_cycle_edges(c0)) {
      if (banned.count({e1, e2}) || in_matching(m, e1, e2)) continue;
      if (L(e1, 1) == a1 || L(e1, 1) == c1p || L(e2, 1) == a1 || L(e2, 1) == c1p) continue;
      r0 = e1;
      r0p = e2;
      break;
    }
    if (r0 == kNone) scan_fail("L15/1.2 r edge");
    Seq exc = sub_l13(ctx, 1, L(r0, 1), L(r0p, 1), a1, c1p, Matching{});
    auto tedges = canonical_edges(exc);
    if (tedges.empty()) scan_fail("L15/1.2 t edge");
    auto [t1, t1p] = tedges.front();
    Seq mid2 = pr_range_path_thru(make_range(ctx, 2, k - 2), L(t1, 2), L(t1p, 2),
                                  Matching{});
    soup.add_seq(two[0]);
    soup.add_seq(two[1]);
    soup.add_seq(exc);
    soup.add_seq(mid2);
    soup.remove_edge(r0, r0p);
    soup.remove_edge(t1, t1p);
    soup.add_edge(a0, a1);
    soup.add_edge(cc0p, c1p);
    soup.add_edge(a1, c1p);  // the matching edge, traversed directly
    soup.add_edge(r0, L(r0, 1));
    soup.add_edge(r0p, L(r0p, 1));
    soup.add_edge(t1, L(t1, 2));
    soup.add_edge(t1p, L(t1p, 2));
    soup.add_edge(a0p, L(a0p, k - 1));
    soup.add_edge(b0, L(b0, k - 1));
    soup.add_edge(b0p, L(b0p, k - 1));
    soup.add_edge(cc0, L(cc0, k - 1));
    return m_paths(soup, want);
  }
  // s0 in {a0', b0, b0', c0}: mirrored shape through Q[1] and Q[2, k-1]
  env_.trace.note("Subcase 1.2 mirrored");
  auto two = two_path_any(ctx, 1, {L(a0p, 1), L(b0, 1)}, {L(b0p, 1), L(cc0, 1)});
  Seq mid = pr_range_path(make_range(ctx, 2, k - 1), L(a0, k - 1), L(cc0p, k - 1));
  soup.add_seq(two[0]);
  soup.add_seq(two[1]);
  soup.add_seq(mid);
  soup.add_edge(a0, L(a0, k - 1));
  soup.add_edge(cc0p, L(cc0p, k - 1));
  soup.add_edge(a0p, L(a0p, 1));
  soup.add_edge(b0, L(b0, 1));
  soup.add_edge(b0p, L(b0p, 1));
  soup.add_edge(cc0, L(cc0, 1));
  return m_paths(soup, want);
}

inline std::vector<Seq> Ops::l15_case2(const SplitContext& ctx0, EdgePair U, EdgePair V,
                                       EdgePair W, const Matching& m) {
  auto sc = env_.trace.push("L15/Case2");
  SplitContext ctx = ctx0;
  MatchingSplit ms = restrict_matching(m, ctx);
  const CubeShape& s = cube_.shape();
  const int k = s.k;
  const std::vector<PairIds> want = {{U.f, U.fp}, {V.f, V.fp}, {W.f, W.fp}};
  auto L = [&](VertexId vtx, int lab) { return ctx.with_label(cube_, vtx, lab); };
  int j = ctx.label(cube_, W.f);

  // crossing joins Q[0] and Q[j]?
  bool joins = false;
  if (ms.crossings_total() == 1) {
    int b = -1;
    for (int i = 0; i < k; ++i)
      if (!ms.per_boundary[i].empty()) b = i;
    if ((b == 0 && j == 1) || (b == k - 1 && j == k - 1)) joins = true;
    if (b == k - 1 && j == k - 1) {  // flip to the j = 1 presentation
      ctx.flipped = !ctx.flipped;
      ms = restrict_matching(m, ctx);
      j = ctx.label(cube_, W.f);
    }
  }
  if (joins) {
    env_.trace.note("crossing joins Q[0] and Q[1]");
    const Edge& cr = ms.per_boundary[0].edges[0];
    VertexId s0 = ctx.label(cube_, cube_.id_of(cr.a)) == 0 ? cube_.id_of(cr.a)
                                                           : cube_.id_of(cr.b);
    VertexId s1 = L(s0, 1);
    VertexId s0p = kNone;
    for (VertexId c : subcube_nbrs(ctx, s0)) {
      if (covers(ms.per_cube[0], c) || c == U.f || c == V.f) continue;
      VertexId c1 = L(c, 1);
      if (c1 == W.f || c1 == W.fp) continue;
      if (in_matching(m, c1, W.fp)) continue;
      s0p = c;
      break;
    }
    if (s0p == kNone) scan_fail("L15/Case2 s0'");
    Matching m0s = plus_edge(s, ms.per_cube[0], edge_at(s0, s0p));
    auto twoA = pr_cube_two_path_thru(ctx, 0, {U.f, U.fp}, {V.f, V.fp}, m0s);
    auto twoB = pr_cube_two_path_thru(ctx, 1, {W.f, W.fp}, {s1, L(s0p, 1)},
                                      ms.per_cube[1]);
    VertexId r1 = kNone, r1p = kNone;
    for (auto [a, b] : canonical_edges(twoB)) {
      if (in_matching(m, a, b)) continue;
      if (in_matching(m, L(a, 2), L(b, 2))) continue;
      r1 = a;
      r1p = b;
      break;
    }
    if (r1 == kNone) scan_fail("L15/Case2 r edge");
    Seq high = pr_range_path_thru(make_range(ctx, 2, k - 1), L(r1, 2), L(r1p, 2),
                                  ms.in_range(2, k - 1));
    EdgeSoup soup(cube_.count());
    for (const auto& piece : twoA) soup.add_seq(piece);
    for (const auto& piece : twoB) soup.add_seq(piece);
    soup.add_seq(high);
    soup.remove_edge(s0, s0p);
    soup.remove_edge(r1, r1p);
    soup.add_edge(s0, s1);
    soup.add_edge(s0p, L(s0p, 1));
    soup.add_edge(r1, L(r1, 2));
    soup.add_edge(r1p, L(r1p, 2));
    return m_paths(soup, want);
  }

  // otherwise: clean the wrap boundary and the entry boundary of Q[j]
  for (int attempt = 0;; ++attempt) {
    if (attempt == 2) scan_fail("L15/Case2 flip normalization");
    if (ms.per_boundary[k - 1].empty() &&
        (j == 0 || ms.per_boundary[j - 1].empty()))
      break;
    ctx.flipped = !ctx.flipped;
    ms = restrict_matching(m, ctx);
    j = ctx.label(cube_, W.f);
  }
  env_.trace.note("separate ranges, j=" + std::to_string(j));
  auto twoA = pr_cube_two_path_thru(ctx, 0, {U.f, U.fp}, {V.f, V.fp}, ms.per_cube[0]);
  Seq pw = pr_range_path_thru(make_range(ctx, j, k - 1), W.f, W.fp, ms.in_range(j, k - 1));
  EdgeSoup soup(cube_.count());
  for (const auto& piece : twoA) soup.add_seq(piece);
  soup.add_seq(pw);
  if (j > 1) {
    VertexId r0 = kNone, r0p = kNone;
    if (ms.per_boundary[0].empty()) {
      for (auto [a, b] : canonical_edges(twoA)) {
        if (in_matching(m, a, b)) continue;
        if (in_matching(m, L(a, 1), L(b, 1))) continue;
        r0 = a;
        r0p = b;
        break;
      }
    } else {
      const Edge& cr = ms.per_boundary[0].edges[0];
      r0 = ctx.label(cube_, cube_.id_of(cr.a)) == 0 ? cube_.id_of(cr.a)
                                                    : cube_.id_of(cr.b);
      for (const auto& piece : twoA) {
        PathView pv(cube_.count(), piece);
        if (!pv.contains(r0)) continue;
        auto nb = pv.nbrs_on(r0);
        r0p = *std::min_element(nb.begin(), nb.end());
      }
    }
    if (r0 == kNone || r0p == kNone) scan_fail("L15/Case2 r0 edge");
    Seq mid = pr_range_path_thru(make_range(ctx, 1, j - 1), L(r0, 1), L(r0p, 1),
                                 ms.in_range(1, j - 1));
    soup.add_seq(mid);
    soup.remove_edge(r0, r0p);
    soup.add_edge(r0, L(r0, 1));
    soup.add_edge(r0p, L(r0p, 1));
  }
  return m_paths(soup, want);
}

inline std::vector<Seq> Ops::l15_case3(const SplitContext& ctx0, EdgePair U, EdgePair V,
                                       EdgePair W, const Matching& m) {
  auto sc = env_.trace.push("L15/Case3");
  SplitContext ctx = ctx0;
  MatchingSplit ms = restrict_matching(m, ctx);
  const CubeShape& s = cube_.shape();
  const int k = s.k;
  const std::vector<PairIds> want = {{U.f, U.fp}, {V.f, V.fp}, {W.f, W.fp}};
  auto L = [&](VertexId vtx, int lab) { return ctx.with_label(cube_, vtx, lab); };
  int li = ctx.label(cube_, V.f), lj = ctx.label(cube_, W.f);

  // does the single crossing join two of the three home cubes?
  bool joins = false;
  int bpos = -1;
  if (ms.crossings_total() == 1) {
    for (int i = 0; i < k; ++i)
      if (!ms.per_boundary[i].empty()) bpos = i;
    std::set<int> homes = {0, li, lj};
    int lo = bpos, hi = (bpos + 1) % k;
    if (homes.count(lo) && homes.count(hi)) joins = true;
  }

  if (joins) {
    // presentation: connected pair of cubes at labels 0 and 1
    std::array<EdgePair, 3> ps = {U, V, W};
    bool placed = false;
    std::array<EdgePair, 3> named{};
    SplitContext nctx = ctx;
    for (int flip = 0; flip < 2 && !placed; ++flip) {
      for (int first = 0; first < 3 && !placed; ++first) {
        SplitContext c{s, ctx.d, cube_.digit(ps[first].f, ctx.d - 1), flip != 0};
        MatchingSplit cms = restrict_matching(m, c);
        if (cms.per_boundary[0].empty()) continue;
        int at1 = -1, atj = -1;
        for (int other = 0; other < 3; ++other) {
          if (other == first) continue;
          int lab = c.label(cube_, ps[other].f);
          if (lab == 1) at1 = other;
          else atj = other;
        }
        if (at1 < 0 || atj < 0) continue;
        int labj = c.label(cube_, ps[atj].f);
        if (labj <= 1) continue;
        nctx = c;
        named = {ps[first], ps[at1], ps[atj]};
        placed = true;
      }
    }
    if (!placed) scan_fail("L15/Case3 joined presentation");
    ctx = nctx;
    ms = restrict_matching(m, ctx);
    EdgePair A = named[0], B = named[1], C = named[2];
    int j2 = ctx.label(cube_, C.f);
    env_.trace.note("crossing joins Q[0],Q[1]; third at " + std::to_string(j2));
    const Edge& cr = ms.per_boundary[0].edges[0];
    VertexId s0 = ctx.label(cube_, cube_.id_of(cr.a)) == 0 ? cube_.id_of(cr.a)
                                                           : cube_.id_of(cr.b);
    VertexId s1 = L(s0, 1);
    VertexId s0p = kNone;
    for (VertexId c : subcube_nbrs(ctx, s0)) {
      if (covers(ms.per_cube[0], c)) continue;
      VertexId c1 = L(c, 1);
      if (c1 == B.f || c1 == B.fp) continue;
      if (in_matching(m, c1, B.fp)) continue;
      s0p = c;
      break;
    }
    if (s0p == kNone) scan_fail("L15/Case3 s0'");
    Matching m0s = plus_edge(s, ms.per_cube[0], edge_at(s0, s0p));
    Seq p0 = pr_range_path_thru(make_range(ctx, 0, 0), A.f, A.fp, m0s);
    Seq pw = pr_range_path_thru(make_range(ctx, j2, k - 1), C.f, C.fp,
                                ms.in_range(j2, k - 1));
    auto twoB = pr_cube_two_path_thru(ctx, 1, {B.f, B.fp}, {s1, L(s0p, 1)},
                                      ms.per_cube[1]);
    EdgeSoup soup(cube_.count());
    soup.add_seq(p0);
    soup.add_seq(pw);
    for (const auto& piece : twoB) soup.add_seq(piece);
    soup.remove_edge(s0, s0p);
    soup.add_edge(s0, s1);
    soup.add_edge(s0p, L(s0p, 1));
    if (j2 > 2) {
      VertexId r1 = kNone, r1p = kNone;
      for (auto [a, b] : canonical_edges(twoB)) {
        if (in_matching(m, a, b)) continue;
        if (in_matching(m, L(a, 2), L(b, 2))) continue;
        r1 = a;
        r1p = b;
        break;
      }
      if (r1 == kNone) scan_fail("L15/Case3 r1 edge");
      Seq mid = pr_range_path_thru(make_range(ctx, 2, j2 - 1), L(r1, 2), L(r1p, 2),
                                   ms.in_range(2, j2 - 1));
      soup.add_seq(mid);
      soup.remove_edge(r1, r1p);
      soup.add_edge(r1, L(r1, 2));
      soup.add_edge(r1p, L(r1p, 2));
    }
    return m_paths(soup, want);
  }

  // three clean entry boundaries
  for (int attempt = 0;; ++attempt) {
    if (attempt == 2) scan_fail("L15/Case3 flip normalization");
    li = ctx.label(cube_, V.f);
    lj = ctx.label(cube_, W.f);
    if (li > lj) std::swap(li, lj);
    if (ms.per_boundary[k - 1].empty() && ms.per_boundary[li - 1].empty() &&
        ms.per_boundary[lj - 1].empty())
      break;
    ctx.flipped = !ctx.flipped;
    ms = restrict_matching(m, ctx);
  }
  EdgePair A = U, B = V, C = W;
  if (ctx.label(cube_, B.f) > ctx.label(cube_, C.f)) std::swap(B, C);
  li = ctx.label(cube_, B.f);
  lj = ctx.label(cube_, C.f);
  env_.trace.note("three ranges 0," + std::to_string(li) + "," + std::to_string(lj));
  Seq p0 = pr_range_path_thru(make_range(ctx, 0, li - 1), A.f, A.fp, ms.in_range(0, li - 1));
  Seq p1 = pr_range_path_thru(make_range(ctx, li, lj - 1), B.f, B.fp,
                              ms.in_range(li, lj - 1));
  Seq p2 = pr_range_path_thru(make_range(ctx, lj, k - 1), C.f, C.fp,
                              ms.in_range(lj, k - 1));
  EdgeSoup soup(cube_.count());
  soup.add_seq(p0);
  soup.add_seq(p1);
  soup.add_seq(p2);
  return m_paths(soup, want);
}

// ---------------------------------------------------------------------------
// Lemma 16: spanning x,y-path through |M| <= 2n-8, d(x,y) <= 3.

inline Seq Ops::l16_case1_splice(const SplitContext& ctx, const MatchingSplit& ms,
                                 const Seq& base, VertexId x, VertexId y,
                                 const Matching& m) {
  const int k = cube_.shape().k;
  VertexId w0 = kNone, w0p = kNone;
  if (ms.per_boundary[0].empty()) {
    for (auto [a, b] : canonical_edges(base)) {
      if (in_matching(m, a, b)) continue;
      if (in_matching(m, ctx.with_label(cube_, a, 1), ctx.with_label(cube_, b, 1)))
        continue;
      w0 = a;
      w0p = b;
      break;
    }
    if (w0 == kNone) scan_fail("L16/Case1 w edge");
  } else {
    const Edge& cr = ms.per_boundary[0].edges[0];
    w0 = ctx.label(cube_, cube_.id_of(cr.a)) == 0 ? cube_.id_of(cr.a) : cube_.id_of(cr.b);
    PathView pv(cube_.count(), base);
    auto nb = pv.nbrs_on(w0);
    w0p = *std::min_element(nb.begin(), nb.end());
  }
  Seq upper = pr_range_path_thru(make_range(ctx, 1, k - 1), ctx.with_label(cube_, w0, 1),
                                 ctx.with_label(cube_, w0p, 1), ms.in_range(1, k - 1));
  EdgeSoup soup(cube_.count());
  soup.add_seq(base);
  soup.add_seq(upper);
  soup.remove_edge(w0, w0p);
  soup.add_edge(w0, ctx.with_label(cube_, w0, 1));
  soup.add_edge(w0p, ctx.with_label(cube_, w0p, 1));
  return one_path(soup, x, y);
}

inline Seq Ops::l16(VertexId x, VertexId y, const Matching& m) {
  auto sc = env_.trace.push("L16 n=" + std::to_string(cube_.shape().n));
  const CubeShape& s = cube_.shape();
  const int k = s.k, n = s.n;
  if (n <= 5) {
    env_.trace.note("base n <= 5: Lemma 11");
    return l11(x, y, m);
  }
  // d with x,y in the same subcube and at most one crossing
  int d = -1;
  for (int cand : split_dimension_candidates(s, m, 1, {}))
    if (cube_.digit(x, cand - 1) == cube_.digit(y, cand - 1)) {
      d = cand;
      break;
    }
  if (d < 0) scan_fail("L16 split dimension");
  SplitContext ctx{s, d, cube_.digit(x, d - 1), false};
  MatchingSplit ms = restrict_matching(m, ctx);
  if (!ms.per_boundary[k - 1].empty()) {
    ctx.flipped = !ctx.flipped;
    ms = restrict_matching(m, ctx);
  }
  env_.trace.note(fmt_ctx(ctx));
  auto L = [&](VertexId vtx, int lab) { return ctx.with_label(cube_, vtx, lab); };
  const Matching& m0 = ms.per_cube[0];

  if (int(m0.size()) <= 2 * n - 10) {
    env_.trace.note("Case 1");
    Seq base = sub_l16(ctx, 0, x, y, m0);
    return l16_case1_splice(ctx, ms, base, x, y, m);
  }

  // choose excluded edges of M_0 avoiding x and y
  std::vector<Edge> excl;
  int need = int(m0.size()) - (2 * n - 10);
  for (const Edge& e : m0.edges) {
    if (int(excl.size()) == need) break;
    if (e.touches(cube_.at(x)) || e.touches(cube_.at(y))) continue;
    excl.push_back(e);
  }
  if (int(excl.size()) != need) scan_fail("L16 excluded edges");
  Seq base = sub_l16(ctx, 0, x, y, minus_edges(m0, excl));
  PathView pv(cube_.count(), base);
  std::vector<PairIds> off;
  for (const Edge& e : excl) {
    VertexId a = cube_.id_of(e.a), b = cube_.id_of(e.b);
    if (pv.path_dist(a, b) != 1) off.push_back({a, b});
  }
  if (off.empty()) return l16_case1_splice(ctx, ms, base, x, y, m);

  if (off.size() == 1) {
    env_.trace.note("Case 2: one off-path edge");
    VertexId u0 = off[0].first, v0 = off[0].second;
    if (pv.pos(u0) > pv.pos(v0)) std::swap(u0, v0);
    struct Combo {
      VertexId up, vp;
    };
    std::vector<Combo> combos;
    if (pv.pos(v0) + 1 < int(base.size()))
      combos.push_back({pv.seq()[pv.pos(u0) + 1], pv.seq()[pv.pos(v0) + 1]});
    if (pv.pos(u0) >= 1)
      combos.push_back({pv.seq()[pv.pos(u0) - 1], pv.seq()[pv.pos(v0) - 1]});

    if (ms.per_boundary[0].empty()) {
      for (const Combo& c : combos) {
        if (in_matching(m, L(c.up, 1), L(c.vp, 1))) continue;
        Seq upper = l9(make_range(ctx, 1, k - 1), L(c.up, 1), L(c.vp, 1),
                       ms.in_range(1, k - 1));
        EdgeSoup soup(cube_.count());
        soup.add_seq(base);
        soup.add_seq(upper);
        soup.remove_edge(u0, c.up);
        soup.remove_edge(v0, c.vp);
        soup.add_edge(u0, v0);
        soup.add_edge(c.up, L(c.up, 1));
        soup.add_edge(c.vp, L(c.vp, 1));
        return one_path(soup, x, y);
      }
      scan_fail("L16/Case2 detour combo");
    }
    const Edge& cr = ms.per_boundary[0].edges[0];
    VertexId w0 = ctx.label(cube_, cube_.id_of(cr.a)) == 0 ? cube_.id_of(cr.a)
                                                           : cube_.id_of(cr.b);
    if (pv.path_dist_to_edge(w0, u0, v0) == 1) {
      for (const Combo& c : combos) {
        if (c.up != w0 && c.vp != w0) continue;
        Seq upper = l9(make_range(ctx, 1, k - 1), L(c.up, 1), L(c.vp, 1),
                       ms.in_range(1, k - 1));
        EdgeSoup soup(cube_.count());
        soup.add_seq(base);
        soup.add_seq(upper);
        soup.remove_edge(u0, c.up);
        soup.remove_edge(v0, c.vp);
        soup.add_edge(u0, v0);
        soup.add_edge(c.up, L(c.up, 1));
        soup.add_edge(c.vp, L(c.vp, 1));
        return one_path(soup, x, y);
      }
      scan_fail("L16/Case2 pinned combo");
    }
    for (const Combo& c : combos) {
      for (VertexId w0p : pv.nbrs_on(w0)) {
        std::set<VertexId> four = {c.up, c.vp, w0, w0p};
        if (four.size() != 4) continue;
        auto two = pr_range_two_path(make_range(ctx, 1, k - 1), {L(c.up, 1), L(c.vp, 1)},
                                     {L(w0, 1), L(w0p, 1)});
        EdgeSoup soup(cube_.count());
        soup.add_seq(base);
        soup.add_seq(two[0]);
        soup.add_seq(two[1]);
        soup.remove_edge(u0, c.up);
        soup.remove_edge(v0, c.vp);
        soup.remove_edge(w0, w0p);
        soup.add_edge(u0, v0);
        soup.add_edge(c.up, L(c.up, 1));
        soup.add_edge(c.vp, L(c.vp, 1));
        soup.add_edge(w0, L(w0, 1));
        soup.add_edge(w0p, L(w0p, 1));
        return one_path(soup, x, y);
      }
    }
    scan_fail("L16/Case2 three-bridge combo");
  }

  env_.trace.note("Case 3: two off-path edges");
  // all primes toward x
  VertexId u0 = off[0].first, v0 = off[0].second;
  VertexId s0 = off[1].first, t0 = off[1].second;
  VertexId u0p = pv.nbr_toward(u0, x), v0p = pv.nbr_toward(v0, x);
  VertexId s0p = pv.nbr_toward(s0, x), t0p = pv.nbr_toward(t0, x);
  EdgeSoup pieces(cube_.count());
  pieces.add_seq(base);
  pieces.remove_edge(u0, u0p);
  pieces.remove_edge(v0, v0p);
  pieces.remove_edge(s0, s0p);
  pieces.remove_edge(t0, t0p);
  pieces.add_edge(u0, v0);
  pieces.add_edge(s0, t0);
  auto three = pieces.paths();
  if (three.size() != 3) throw ConsistencyError("L16/Case3 three-path shape");
  VertexId a0 = kNone, b0 = kNone, c0 = kNone, d0 = kNone;
  for (const Seq& piece : three) {
    if (piece.front() == x || piece.back() == x)
      a0 = piece.front() == x ? piece.back() : piece.front();
    else if (piece.front() == y || piece.back() == y)
      b0 = piece.front() == y ? piece.back() : piece.front();
    else {
      c0 = piece.front();
      d0 = piece.back();
    }
  }
  if (a0 == kNone || b0 == kNone || c0 == kNone)
    throw ConsistencyError("L16/Case3 piece ends");
  // pair (a,c),(b,d): swap c/d for parity when needed
  if (even_k() && par(a0) == par(c0)) std::swap(c0, d0);
  auto two = two_path_any(ctx, 1, {L(a0, 1), L(c0, 1)}, {L(b0, 1), L(d0, 1)});
  auto redges = canonical_edges(two);
  if (redges.empty()) scan_fail("L16/Case3 r edge");
  auto [r1, r1p] = redges.front();
  Seq high = pr_range_path(make_range(ctx, 2, k - 1), L(r1, 2), L(r1p, 2));
  EdgeSoup soup(cube_.count());
  soup.add_seq(base);
  soup.add_seq(two[0]);
  soup.add_seq(two[1]);
  soup.add_seq(high);
  soup.remove_edge(u0, u0p);
  soup.remove_edge(v0, v0p);
  soup.remove_edge(s0, s0p);
  soup.remove_edge(t0, t0p);
  soup.add_edge(u0, v0);
  soup.add_edge(s0, t0);
  soup.remove_edge(r1, r1p);
  soup.add_edge(a0, L(a0, 1));
  soup.add_edge(b0, L(b0, 1));
  soup.add_edge(c0, L(c0, 1));
  soup.add_edge(d0, L(d0, 1));
  soup.add_edge(r1, L(r1, 2));
  soup.add_edge(r1p, L(r1p, 2));
  return one_path(soup, x, y);
}

}  // namespace kcube::cons

#include "kcube/construction_claims.hpp"  // IWYU pragma: keep
