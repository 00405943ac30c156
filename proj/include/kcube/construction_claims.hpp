#pragma once

// Theorem 3 proof machinery: dimension selection, Claims 1-4 and A/B, and
// the five-way endgame on |M_0|.

#include "kcube/construction.hpp"

namespace kcube::cons {

// ---------------------------------------------------------------------------
// Claim A: spanning path of Q[p,q] through M[p,q] between neighbors of the
// c-family, used to absorb whole crossing-free ranges.  When k is even, q-p
// must be odd.  M[p,q] must be crossing-free.

inline Seq Ops::claimA(const RangeView& view, const MatchingSplit& ms,
                       const Matching& m, VertexId c_rep, VertexId xp, VertexId yq) {
  auto sc = env_.trace.push("ClaimA[" + std::to_string(view.p) + "," +
                            std::to_string(view.q) + "]");
  const SplitContext& ctx = view.ctx;
  const int p = view.p, q = view.q;
  auto L = [&](VertexId vtx, int lab) { return ctx.with_label(cube_, vtx, lab); };
  if (q - p == 1) {
    VertexId sp = kNone;
    for (VertexId c : subcube_nbrs(ctx, xp)) {
      if (in_matching(m, xp, c)) continue;
      VertexId sq = L(c, q);
      if (sq == yq) continue;
      if (in_matching(m, sq, yq)) continue;
      sp = c;
      break;
    }
    if (sp == kNone) scan_fail("ClaimA base seam");
    Seq p1 = sub_l16(ctx, p, xp, sp, ms.per_cube[p]);
    Seq p2 = sub_l16(ctx, q, L(sp, q), yq, ms.per_cube[q]);
    EdgeSoup soup(cube_.count());
    soup.add_seq(p1);
    soup.add_seq(p2);
    soup.add_edge(sp, L(sp, q));
    return one_path(soup, xp, yq);
  }
  if (even_k()) {
    Seq p1 = claimA(view.sub(p, p + 1), ms, m, c_rep, xp, L(xp, p + 1));
    Seq p2 = claimA(view.sub(p + 2, q), ms, m, c_rep, L(xp, p + 2), yq);
    EdgeSoup soup(cube_.count());
    soup.add_seq(p1);
    soup.add_seq(p2);
    soup.add_edge(L(xp, p + 1), L(xp, p + 2));
    return one_path(soup, xp, yq);
  }
  VertexId cp = L(c_rep, p);
  VertexId sp = kNone;
  for (VertexId c : subcube_nbrs(ctx, cp)) {
    if (c == xp) continue;
    if (in_matching(m, xp, c)) continue;
    sp = c;
    break;
  }
  if (sp == kNone) scan_fail("ClaimA odd seam");
  Seq p1 = sub_l16(ctx, p, xp, sp, ms.per_cube[p]);
  Seq p2 = claimA(view.sub(p + 1, q), ms, m, c_rep, L(sp, p + 1), yq);
  EdgeSoup soup(cube_.count());
  soup.add_seq(p1);
  soup.add_seq(p2);
  soup.add_edge(sp, L(sp, p + 1));
  return one_path(soup, xp, yq);
}

// ---------------------------------------------------------------------------
// Claim B: Hamiltonian cycle of Q[0,j] through M[0,j] whose Q[j] trace is a
// spanning path, built around the off-cycle chord x0y0.  Requires |M_1| <= 2
// and at most one crossing per boundary up to j.

inline Seq Ops::claimB(const SplitContext& ctx, const MatchingSplit& ms,
                       const Matching& m, const Seq& c0, PairIds x0y0, int j,
                       PairIds pinned) {
  auto sc = env_.trace.push("ClaimB[0," + std::to_string(j) + "]");
  auto L = [&](VertexId vtx, int lab) { return ctx.with_label(cube_, vtx, lab); };
  CycleView cv(cube_.count(), c0);
  auto [x0, y0] = x0y0;
  std::vector<PairIds> combos;
  if (pinned.first != kNone) {
    combos = {pinned};
  } else {
    auto both = chord_detour_combos(cv, x0, y0);
    combos = {both[0], both[1]};
  }
  PairIds use{kNone, kNone};
  for (PairIds cmb : combos) {
    if (in_matching(m, L(cmb.first, 1), L(cmb.second, 1))) continue;
    use = cmb;
    break;
  }
  if (use.first == kNone) scan_fail("ClaimB detour combo");
  VertexId x0p = use.first, y0p = use.second;
  Seq p1 = l12(make_range(ctx, 1, 1), L(x0p, 1), L(y0p, 1), ms.per_cube[1]);
  EdgeSoup soup(cube_.count());
  add_cycle(soup, c0);
  soup.add_seq(p1);
  soup.remove_edge(x0, x0p);
  soup.remove_edge(y0, y0p);
  soup.add_edge(x0, y0);  // the matching chord
  soup.add_edge(x0p, L(x0p, 1));
  soup.add_edge(y0p, L(y0p, 1));
  if (j == 1) return soup.cycle();
  // absorb Q[2, j] through the Q[1] spanning path
  VertexId r1 = kNone, r1p = kNone;
  if (ms.per_boundary[1].empty()) {
    for (auto [a, b] : canonical_edges(p1)) {
      if (in_matching(m, a, b)) continue;
      if (in_matching(m, L(a, 2), L(b, 2))) continue;
      r1 = a;
      r1p = b;
      break;
    }
  } else {
    const Edge& cr = ms.per_boundary[1].edges[0];
    r1 = ctx.label(cube_, cube_.id_of(cr.a)) == 1 ? cube_.id_of(cr.a) : cube_.id_of(cr.b);
    PathView pv(cube_.count(), p1);
    auto nb = pv.nbrs_on(r1);
    r1p = *std::min_element(nb.begin(), nb.end());
  }
  if (r1 == kNone || r1p == kNone) scan_fail("ClaimB r edge");
  Seq upper = pr_range_path_thru(make_range(ctx, 2, j), L(r1, 2), L(r1p, 2),
                                 ms.in_range(2, j));
  soup.add_seq(upper);
  soup.remove_edge(r1, r1p);
  soup.add_edge(r1, L(r1, 2));
  soup.add_edge(r1p, L(r1p, 2));
  return soup.cycle();
}

// ---------------------------------------------------------------------------
// Claim 1: C_0 already contains M_0.

inline Seq Ops::claim1(const SplitContext& ctx0, const MatchingSplit& ms0, const Matching& m,
                       const Seq& c0) {
  auto sc = env_.trace.push("Claim1");
  SplitContext ctx = ctx0;
  MatchingSplit ms = ms0;
  const int k = cube_.shape().k;
  auto L = [&](VertexId vtx, int lab) { return ctx.with_label(cube_, vtx, lab); };
  auto reflip = [&] {
    ctx.flipped = !ctx.flipped;
    ms = restrict_matching(m, ctx);
  };
  int maxc = 0;
  for (int i = 0; i < k; ++i) maxc = std::max(maxc, int(ms.per_boundary[i].size()));

  if (maxc <= 1) {
    env_.trace.note("Case 1: all boundary crossings <= 1");
    bool b01 = !ms.per_boundary[0].empty(), bk0 = !ms.per_boundary[k - 1].empty();
    if (b01 && bk0) {
      CycleView cv(cube_.count(), c0);
      VertexId a0 = boundary_end(ctx, ms, 0, 0, 0);
      VertexId cw = boundary_end(ctx, ms, k - 1, 0, 0);
      int j = -1;
      for (int i = 1; i <= k - 2; ++i)
        if (ms.per_boundary[i].empty()) {
          j = i;
          break;
        }
      if (j < 0) scan_fail("Claim1/Case1 clean inner boundary");
      for (VertexId a0p : cv.nbrs_on(a0))
        for (VertexId c0p : cv.nbrs_on(cw)) {
          if (std::minmax(a0, a0p) == std::minmax(cw, c0p)) continue;
          Seq pa = pr_range_path_thru(make_range(ctx, 1, j), L(a0, 1), L(a0p, 1),
                                      ms.in_range(1, j));
          Seq pc = pr_range_path_thru(make_range(ctx, j + 1, k - 1).reversed(),
                                      L(cw, k - 1), L(c0p, k - 1),
                                      ms.in_range(j + 1, k - 1));
          EdgeSoup soup(cube_.count());
          add_cycle(soup, c0);
          soup.add_seq(pa);
          soup.add_seq(pc);
          soup.remove_edge(a0, a0p);
          soup.remove_edge(cw, c0p);
          soup.add_edge(a0, L(a0, 1));
          soup.add_edge(a0p, L(a0p, 1));
          soup.add_edge(cw, L(cw, k - 1));
          soup.add_edge(c0p, L(c0p, k - 1));
          return soup.cycle();
        }
      scan_fail("Claim1/Case1 detour neighbors");
    }
    if (bk0) reflip();
    return extend_cycle_up(ctx, ms, m, c0, 0, k - 1);
  }

  if (maxc == 2) {
    int j = -1;
    for (int i = 0; i < k; ++i)
      if (ms.per_boundary[i].size() == 2) j = i;
    env_.trace.note("Case 2 at boundary " + std::to_string(j));
    if (j == k - 1) {
      reflip();
      j = 0;
    }
    if (j == 0) {
      // Subcase 2.1
      VertexId a0 = boundary_end(ctx, ms, 0, 0, 0), b0 = boundary_end(ctx, ms, 0, 1, 0);
      CycleView cv(cube_.count(), c0);
      Seq c01;
      if (cv.cyc_dist(a0, b0) == 1) {
        Seq p1 = pr_range_path_thru(make_range(ctx, 1, 1), L(a0, 1), L(b0, 1),
                                    ms.per_cube[1]);
        EdgeSoup soup(cube_.count());
        add_cycle(soup, c0);
        soup.add_seq(p1);
        soup.remove_edge(a0, b0);
        soup.add_edge(a0, L(a0, 1));
        soup.add_edge(b0, L(b0, 1));
        c01 = soup.cycle();
      } else {
        auto an = cv.nbrs_on(a0);
        VertexId b0p = kNone, a0p = kNone;
        for (VertexId cnd : cv.nbrs_on(b0))
          if (cnd != an[0] && cnd != an[1]) b0p = cnd;
        if (b0p == kNone) scan_fail("Claim1/2.1 b0'");
        for (VertexId cnd : {std::min(an[0], an[1]), std::max(an[0], an[1])})
          if (!in_matching(m, L(cnd, 1), L(b0p, 1))) {
            a0p = cnd;
            break;
          }
        if (a0p == kNone) scan_fail("Claim1/2.1 a0'");
        auto two = pr_cube_two_path_thru(ctx, 1, {L(a0, 1), L(a0p, 1)},
                                         {L(b0, 1), L(b0p, 1)}, ms.per_cube[1]);
        EdgeSoup soup(cube_.count());
        add_cycle(soup, c0);
        soup.add_seq(two[0]);
        soup.add_seq(two[1]);
        soup.remove_edge(a0, a0p);
        soup.remove_edge(b0, b0p);
        soup.add_edge(a0, L(a0, 1));
        soup.add_edge(a0p, L(a0p, 1));
        soup.add_edge(b0, L(b0, 1));
        soup.add_edge(b0p, L(b0p, 1));
        c01 = soup.cycle();
      }
      if (ms.per_boundary[k - 1].empty())
        return extend_cycle_up(ctx, ms, m, c01, 1, k - 1);
      // remaining crossing wraps: extend downward from the Q[0] side
      const Edge& cr = ms.per_boundary[k - 1].edges[0];
      VertexId z0 = ctx.label(cube_, cube_.id_of(cr.a)) == 0 ? cube_.id_of(cr.a)
                                                             : cube_.id_of(cr.b);
      CycleView cv01(cube_.count(), c01);
      VertexId z0p = kNone;
      for (VertexId cnd : cv01.nbrs_on(z0))
        if (ctx.label(cube_, cnd) == 0) z0p = std::min(z0p == kNone ? cnd : z0p, cnd);
      if (z0p == kNone) scan_fail("Claim1/2.1 z0'");
      Seq down = pr_range_path_thru(make_range(ctx, 2, k - 1).reversed(), L(z0, k - 1),
                                    L(z0p, k - 1), ms.in_range(2, k - 1));
      EdgeSoup soup(cube_.count());
      add_cycle(soup, c01);
      soup.add_seq(down);
      soup.remove_edge(z0, z0p);
      soup.add_edge(z0, L(z0, k - 1));
      soup.add_edge(z0p, L(z0p, k - 1));
      return soup.cycle();
    }
    // Subcase 2.2: 1 <= j <= k-2
    {
      int above = 0;
      for (int i = j + 1; i <= k - 1; ++i) above += int(ms.per_boundary[i].size());
      if (above > 0) {
        reflip();
        j = k - 1 - j;
      }
    }
    Seq c0jm1 = j == 1 ? c0 : build_prefix_cycle(ctx, ms, m, c0, j - 1);
    auto [sjm, sjmp] = trace_edge_for_next(
        ctx, ms, m, c0jm1, j - 1,
        {boundary_end(ctx, ms, j, 0, j), boundary_end(ctx, ms, j, 1, j)}, true, false);
    VertexId aj = boundary_end(ctx, ms, j, 0, j), bj = boundary_end(ctx, ms, j, 1, j);
    VertexId sj = L(sjm, j), sjp = L(sjmp, j);
    VertexId ajp = kNone, bjp = kNone;
    for (VertexId cnd : subcube_nbrs(ctx, aj)) {
      if (covers(ms.per_cube[j], cnd) || cnd == bj || cnd == sj || cnd == sjp) continue;
      ajp = cnd;
      break;
    }
    if (ajp == kNone) scan_fail("Claim1/2.2 a_j'");
    for (VertexId cnd : subcube_nbrs(ctx, bj)) {
      if (covers(ms.per_cube[j], cnd) || cnd == aj || cnd == ajp || cnd == sj ||
          cnd == sjp)
        continue;
      if (in_matching(m, L(ajp, j + 1), L(cnd, j + 1))) continue;
      bjp = cnd;
      break;
    }
    if (bjp == kNone) scan_fail("Claim1/2.2 b_j'");
    std::vector<Edge> fes = ms.per_cube[j].edges;
    fes.push_back(edge_at(sj, sjp));
    fes.push_back(edge_at(aj, ajp));
    fes.push_back(edge_at(bj, bjp));
    Seq cj = pr_cube_cycle_forest(ctx, j, as_forest(cube_.shape(), fes));
    auto two = pr_cube_two_path_thru(ctx, j + 1, {L(aj, j + 1), L(ajp, j + 1)},
                                     {L(bj, j + 1), L(bjp, j + 1)}, ms.per_cube[j + 1]);
    EdgeSoup soup(cube_.count());
    add_cycle(soup, c0jm1);
    add_cycle(soup, cj);
    soup.add_seq(two[0]);
    soup.add_seq(two[1]);
    soup.remove_edge(sjm, sjmp);
    soup.remove_edge(sj, sjp);
    soup.remove_edge(aj, ajp);
    soup.remove_edge(bj, bjp);
    soup.add_edge(sjm, sj);
    soup.add_edge(sjmp, sjp);
    soup.add_edge(aj, L(aj, j + 1));
    soup.add_edge(ajp, L(ajp, j + 1));
    soup.add_edge(bj, L(bj, j + 1));
    soup.add_edge(bjp, L(bjp, j + 1));
    Seq c0j1 = soup.cycle();
    if (j == k - 2) return c0j1;
    return extend_cycle_up(ctx, ms, m, c0j1, j + 1, k - 1);
  }

  // Case 3: one boundary carries three crossing edges
  int j = -1;
  for (int i = 0; i < k; ++i)
    if (ms.per_boundary[i].size() == 3) j = i;
  env_.trace.note("Case 3 at boundary " + std::to_string(j));
  if (j == k - 1) {
    reflip();
    j = 0;
  }
  if (j == 0) {
    VertexId a0 = boundary_end(ctx, ms, 0, 0, 0), b0 = boundary_end(ctx, ms, 0, 1, 0),
             cc = boundary_end(ctx, ms, 0, 2, 0);
    CycleView cv(cube_.count(), c0);
    // Subcase 3.1.1: some pair adjacent on C_0
    std::array<std::array<VertexId, 3>, 3> namings = {
        {{a0, b0, cc}, {a0, cc, b0}, {b0, cc, a0}}};
    for (auto [pa, pb, pc] : namings) {
      if (cv.cyc_dist(pa, pb) != 1) continue;
      VertexId pcp = kNone;
      for (VertexId cnd : cv.nbrs_on(pc))
        if (cnd != pa && cnd != pb) pcp = std::max(pcp == kNone ? cnd : pcp, cnd);
      for (VertexId cnd : cv.nbrs_on(pc))
        if (cnd != pa && cnd != pb) pcp = std::min(pcp, cnd);
      if (pcp == kNone) scan_fail("Claim1/3.1.1 c0'");
      // spanning 2-path of Q[1] through M_1 hanging off a/b and c/c'
      auto two = two_path_thru_assignments(ctx, 1, {L(pa, 1), L(pb, 1)},
                                           {L(pc, 1), L(pcp, 1)}, ms.per_cube[1]);
      VertexId s0 = kNone, s0p = kNone;
      for (auto [e1, e2] : canonical_cycle_edges(c0)) {
        if (in_matching(m, e1, e2)) continue;
        if (std::minmax(e1, e2) == std::minmax(pa, pb)) continue;
        if (std::minmax(e1, e2) == std::minmax(pc, pcp)) continue;
        if (in_matching(m, L(e1, k - 1), L(e2, k - 1))) continue;
        s0 = e1;
        s0p = e2;
        break;
      }
      if (s0 == kNone) scan_fail("Claim1/3.1.1 s edge");
      Seq down = pr_range_path_thru(make_range(ctx, 2, k - 1).reversed(), L(s0, k - 1),
                                    L(s0p, k - 1), ms.in_range(2, k - 1));
      EdgeSoup soup(cube_.count());
      add_cycle(soup, c0);
      soup.add_seq(two[0]);
      soup.add_seq(two[1]);
      soup.add_seq(down);
      soup.remove_edge(pa, pb);
      soup.remove_edge(pc, pcp);
      soup.remove_edge(s0, s0p);
      soup.add_edge(pa, L(pa, 1));
      soup.add_edge(pb, L(pb, 1));
      soup.add_edge(pc, L(pc, 1));
      soup.add_edge(pcp, L(pcp, 1));
      soup.add_edge(s0, L(s0, k - 1));
      soup.add_edge(s0p, L(s0p, k - 1));
      return soup.cycle();
    }
    // Subcase 3.1.2: pairwise distance > 1; route c through Claim A
    auto an = cv.nbrs_on(a0);
    VertexId b0p = kNone, a0p = kNone;
    for (VertexId cnd : cv.nbrs_on(b0))
      if (cnd != an[0] && cnd != an[1]) b0p = cnd;
    if (b0p == kNone) scan_fail("Claim1/3.1.2 b0'");
    for (VertexId cnd : {std::min(an[0], an[1]), std::max(an[0], an[1])})
      if (!in_matching(m, L(cnd, 1), L(b0p, 1))) {
        a0p = cnd;
        break;
      }
    if (a0p == kNone) scan_fail("Claim1/3.1.2 a0'");
    auto two = pr_cube_two_path_thru(ctx, 1, {L(a0, 1), L(a0p, 1)},
                                     {L(b0, 1), L(b0p, 1)}, ms.per_cube[1]);
    EdgeSoup soup(cube_.count());
    add_cycle(soup, c0);
    soup.add_seq(two[0]);
    soup.add_seq(two[1]);
    soup.remove_edge(a0, a0p);
    soup.remove_edge(b0, b0p);
    soup.add_edge(a0, L(a0, 1));
    soup.add_edge(a0p, L(a0p, 1));
    soup.add_edge(b0, L(b0, 1));
    soup.add_edge(b0p, L(b0p, 1));
    Seq c01 = soup.cycle();
    CycleView cv01(cube_.count(), c01);
    VertexId c1 = L(cc, 1);
    // neighbors of c0 and c1 on C[0,1], one on each of the two joining arcs
    auto cn0 = cv01.nbrs_on(cc);
    auto cn1 = cv01.nbrs_on(c1);
    int pos_c0 = cv01.pos(cc), pos_c1 = cv01.pos(c1);
    auto side = [&](VertexId nb) {
      // true if nb lies on the arc walked forward from c0 to c1
      int pn = cv01.pos(nb), n2 = cv01.size();
      int fwd = ((pos_c1 - pos_c0) % n2 + n2) % n2;
      int dn = ((pn - pos_c0) % n2 + n2) % n2;
      return dn != 0 && dn < fwd;
    };
    for (VertexId c0p : cn0)
      for (VertexId c1pp : cn1) {
        if (side(c0p) == side(c1pp)) continue;  // must sit on different arcs
        RangeView mid = make_range(ctx, 2, k - 1);
        Seq pa = claimA(mid, ms, m, cc, L(c1pp, 2), L(c0p, k - 1));
        EdgeSoup fin(cube_.count());
        add_cycle(fin, c01);
        fin.add_seq(pa);
        fin.remove_edge(cc, c0p);
        fin.remove_edge(c1, c1pp);
        fin.add_edge(cc, c1);  // crossing matching edge
        fin.add_edge(c1pp, L(c1pp, 2));
        fin.add_edge(c0p, L(c0p, k - 1));
        return fin.cycle();
      }
    scan_fail("Claim1/3.1.2 c detour");
  }
  // Subcase 3.2: inner boundary with three crossings
  Seq c0jm1 = j == 1 ? c0 : build_prefix_cycle(ctx, ms, m, c0, j - 1);
  VertexId aj = boundary_end(ctx, ms, j, 0, j), bj = boundary_end(ctx, ms, j, 1, j),
           cj = boundary_end(ctx, ms, j, 2, j);
  VertexId ajp = kNone, bjp = kNone, cjp = kNone;
  for (VertexId cnd : subcube_nbrs(ctx, aj))
    if (cnd != bj && cnd != cj && !covers(ms.per_cube[j], cnd)) {
      ajp = cnd;
      break;
    }
  if (ajp == kNone) scan_fail("Claim1/3.2 a_j'");
  for (VertexId cnd : subcube_nbrs(ctx, bj)) {
    if (cnd == aj || cnd == ajp || cnd == cj || covers(ms.per_cube[j], cnd)) continue;
    if (in_matching(m, L(ajp, j + 1), L(cnd, j + 1))) continue;
    bjp = cnd;
    break;
  }
  if (bjp == kNone) scan_fail("Claim1/3.2 b_j'");
  for (VertexId cnd : subcube_nbrs(ctx, cj)) {
    if (cnd == aj || cnd == ajp || cnd == bj || cnd == bjp ||
        covers(ms.per_cube[j], cnd))
      continue;
    if (in_matching(m, L(ajp, j + 1), L(cnd, j + 1))) continue;
    if (in_matching(m, L(bjp, j + 1), L(cnd, j + 1))) continue;
    cjp = cnd;
    break;
  }
  if (cjp == kNone) scan_fail("Claim1/3.2 c_j'");
  auto [wjm, wjmp] = trace_edge_for_next(ctx, ms, m, c0jm1, j - 1,
                                         {aj, ajp, bj, bjp, cj, cjp}, true, false);
  std::vector<Edge> fes = ms.per_cube[j].edges;
  fes.push_back(edge_at(L(wjm, j), L(wjmp, j)));
  fes.push_back(edge_at(aj, ajp));
  fes.push_back(edge_at(bj, bjp));
  fes.push_back(edge_at(cj, cjp));
  Seq cjc = pr_cube_cycle_forest(ctx, j, as_forest(cube_.shape(), fes));
  auto tri = sub_l15(ctx, j + 1, L(aj, j + 1), L(ajp, j + 1), L(bj, j + 1),
                     L(bjp, j + 1), L(cj, j + 1), L(cjp, j + 1), ms.per_cube[j + 1]);
  EdgeSoup soup(cube_.count());
  add_cycle(soup, c0jm1);
  add_cycle(soup, cjc);
  for (const auto& piece : tri) soup.add_seq(piece);
  soup.remove_edge(wjm, wjmp);
  soup.remove_edge(L(wjm, j), L(wjmp, j));
  soup.remove_edge(aj, ajp);
  soup.remove_edge(bj, bjp);
  soup.remove_edge(cj, cjp);
  soup.add_edge(wjm, L(wjm, j));
  soup.add_edge(wjmp, L(wjmp, j));
  soup.add_edge(aj, L(aj, j + 1));
  soup.add_edge(ajp, L(ajp, j + 1));
  soup.add_edge(bj, L(bj, j + 1));
  soup.add_edge(bjp, L(bjp, j + 1));
  soup.add_edge(cj, L(cj, j + 1));
  soup.add_edge(cjp, L(cjp, j + 1));
  Seq c0j1 = soup.cycle();
  if (j == k - 2) return c0j1;
  return extend_cycle_up(ctx, ms, m, c0j1, j + 1, k - 1);
}

}  // namespace kcube::cons

#include "kcube/construction_claims2.hpp"  // IWYU pragma: keep
