#pragma once

// Claims 3 and 4, the 4-path endgame, and the theorem dispatcher.

#include "kcube/construction.hpp"

namespace kcube::cons {

namespace claimdetail {

// Pieces of C_0 after swapping `chords` for the clockwise neighbor edges.
struct Excision {
  std::vector<Seq> pieces;
  std::vector<std::pair<VertexId, VertexId>> removed;  // the neighbor edges
};

inline Excision excise(const Cube& cube, const Seq& c0,
                       const std::vector<PairIds>& chords, int dir) {
  CycleView cv(cube.count(), c0);
  EdgeSoup soup(cube.count());
  add_cycle(soup, c0);
  Excision out;
  for (auto [a, b] : chords) {
    VertexId ap = dir == 0 ? cv.at(cv.pos(a) + 1) : cv.at(cv.pos(a) - 1);
    VertexId bp = dir == 0 ? cv.at(cv.pos(b) + 1) : cv.at(cv.pos(b) - 1);
    soup.remove_edge(a, ap);
    soup.remove_edge(b, bp);
    out.removed.push_back({a, ap});
    out.removed.push_back({b, bp});
  }
  for (auto [a, b] : chords) soup.add_edge(a, b);
  out.pieces = soup.paths();
  return out;
}

inline std::vector<PairIds> piece_ends(const std::vector<Seq>& pieces) {
  std::vector<PairIds> out;
  for (const Seq& p : pieces) out.push_back({p.front(), p.back()});
  return out;
}

}  // namespace claimdetail

// ---------------------------------------------------------------------------
// Claim 3: two matching edges of M_0 missing from C_0.

inline Seq Ops::claim3(const SplitContext& ctx0, const MatchingSplit& /*ms0*/,
                       const Matching& m, const Seq& c0, PairIds x0y0, PairIds m0n0) {
  auto sc = env_.trace.push("Claim3");
  const int k = cube_.shape().k;
  for (int flip = 0; flip < 2; ++flip) {
    SplitContext ctx = ctx0;
    if (flip) ctx.flipped = !ctx.flipped;
    MatchingSplit ms = restrict_matching(m, ctx);
    auto L = [&](VertexId v, int l) { return ctx.with_label(cube_, v, l); };
    int out01 = int(ms.per_boundary[0].size()), outk0 = int(ms.per_boundary[k - 1].size());
    int outer = out01 + outk0;
    for (int dir = 0; dir < 2; ++dir) {
      auto exc = claimdetail::excise(cube_, c0, {x0y0, m0n0}, dir);
      if (exc.pieces.size() != 2) continue;
      auto ends = claimdetail::piece_ends(exc.pieces);
      auto assemble = [&](const std::vector<VertexId>& ring,
                          const std::vector<Seq>& extra,
                          const std::vector<PairIds>& bridges,
                          const std::vector<PairIds>& removed) -> Seq {
        EdgeSoup soup(cube_.count());
        for (const Seq& piece : exc.pieces) soup.add_seq(piece);
        for (const Seq& piece : extra) soup.add_seq(piece);
        for (auto [a, b] : removed) soup.remove_edge(a, b);
        for (auto [a, b] : bridges) soup.add_edge(a, b);
        (void)ring;
        return soup.cycle();
      };
      try {
        if (outer == 0) {
          int j = -1;
          for (int i = 1; i <= k - 2; ++i)
            if (ms.per_boundary[i].empty()) {
              j = i;
              break;
            }
          if (j >= 0) {
            // Subcase 1.1
            if (ms.per_cube[1].size() >= 2) continue;  // flip handles |M_1| <= 1
            auto ring = ring_pairing(cube_, ends, even_k(), [&](const auto& r) {
              return !in_matching(m, L(r[0], 1), L(r[3], 1));
            });
            if (ring.empty()) continue;
            VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3];
            if (!in_matching(m, L(d0r, k - 1), L(e0r, k - 1))) {
              Seq p1 = l12(make_range(ctx, 1, j), L(c0r, 1), L(f0r, 1), ms.in_range(1, j));
              Seq p2 = l12(make_range(ctx, j + 1, k - 1).reversed(), L(d0r, k - 1),
                           L(e0r, k - 1), ms.in_range(j + 1, k - 1));
              return assemble({}, {p1, p2},
                              {{c0r, L(c0r, 1)},
                               {f0r, L(f0r, 1)},
                               {d0r, L(d0r, k - 1)},
                               {e0r, L(e0r, k - 1)}},
                              {});
            }
            // Subcase 1.1.2: d_{k-1} e_{k-1} is a matching edge
            VertexId dk = L(d0r, k - 1), ek = L(e0r, k - 1);
            VertexId r0 = kNone, r0p = kNone;
            for (auto [a, b] : canonical_edges(exc.pieces)) {
              if (in_matching(m, a, b)) continue;
              VertexId an = L(a, k - 1), bn = L(b, k - 1);
              if (an == dk || an == ek || bn == dk || bn == ek) continue;
              if (in_matching(m, an, bn)) continue;
              if (covers(ms.per_cube[k - 1], an) || covers(ms.per_cube[k - 1], bn))
                continue;
              r0 = a;
              r0p = b;
              break;
            }
            if (r0 == kNone) continue;
            Matching rest_k1 = minus_edges(ms.per_cube[k - 1], {edge_at(dk, ek)});
            Seq pk = sub_l13(ctx, k - 1, L(r0, k - 1), L(r0p, k - 1), dk, ek, rest_k1);
            Seq p1 = l12(make_range(ctx, 1, j), L(c0r, 1), L(f0r, 1), ms.in_range(1, j));
            EdgeSoup soup(cube_.count());
            for (const Seq& piece : exc.pieces) soup.add_seq(piece);
            soup.add_seq(pk);
            soup.add_seq(p1);
            soup.remove_edge(r0, r0p);
            soup.add_edge(c0r, L(c0r, 1));
            soup.add_edge(f0r, L(f0r, 1));
            soup.add_edge(d0r, dk);
            soup.add_edge(e0r, ek);
            soup.add_edge(dk, ek);
            soup.add_edge(r0, L(r0, k - 1));
            soup.add_edge(r0p, L(r0p, k - 1));
            Seq cyc = soup.cycle();
            if (j == k - 2) return cyc;
            // absorb Q[j+1, k-2], entering from the Q[k-1] side
            CycleView cvk(cube_.count(), cyc);
            VertexId w = kNone, wp = kNone;
            if (!ms.per_boundary[k - 2].empty()) {
              w = boundary_end(ctx, ms, k - 2, 0, k - 1);
              for (VertexId cnd : cvk.nbrs_on(w))
                if (ctx.label(cube_, cnd) == k - 1)
                  wp = wp == kNone ? cnd : std::min(wp, cnd);
            } else {
              for (auto [a, b] : canonical_cycle_edges(cyc)) {
                if (ctx.label(cube_, a) != k - 1 || ctx.label(cube_, b) != k - 1)
                  continue;
                if (cube_.edge_dim0(a, b) == ctx.d - 1) continue;
                if (in_matching(m, a, b)) continue;
                if (in_matching(m, L(a, k - 2), L(b, k - 2))) continue;
                w = a;
                wp = b;
                break;
              }
            }
            if (w == kNone || wp == kNone) continue;
            Seq mid = pr_range_path_thru(make_range(ctx, j + 1, k - 2).reversed(),
                                         L(w, k - 2), L(wp, k - 2),
                                         ms.in_range(j + 1, k - 2));
            EdgeSoup fin(cube_.count());
            add_cycle(fin, cyc);
            fin.add_seq(mid);
            fin.remove_edge(w, wp);
            fin.add_edge(w, L(w, k - 2));
            fin.add_edge(wp, L(wp, k - 2));
            return fin.cycle();
          }
          // Subcase 1.2: every inner boundary crossed, so k = 4
          auto ring = ring_pairing(cube_, ends, even_k());
          if (ring.empty()) continue;
          VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3];
          auto two =
              pr_range_two_path(make_range(ctx, 1, 1), {L(c0r, 1), L(f0r, 1)},
                                {L(d0r, 1), L(e0r, 1)});
          VertexId a1 = boundary_end(ctx, ms, 1, 0, 1);
          VertexId a2 = L(a1, 2);
          VertexId a1p = kNone;
          for (const Seq& piece : two) {
            PathView pvp(cube_.count(), piece);
            if (!pvp.contains(a1)) continue;
            auto nb = pvp.nbrs_on(a1);
            a1p = *std::min_element(nb.begin(), nb.end());
          }
          if (a1p == kNone) continue;
          Seq p23 = l9(make_range(ctx, 2, 3), a2, L(a1p, 2), ms.in_range(2, 3));
          EdgeSoup soup(cube_.count());
          for (const Seq& piece : exc.pieces) soup.add_seq(piece);
          for (const Seq& piece : two) soup.add_seq(piece);
          soup.add_seq(p23);
          soup.remove_edge(a1, a1p);
          soup.add_edge(c0r, L(c0r, 1));
          soup.add_edge(f0r, L(f0r, 1));
          soup.add_edge(d0r, L(d0r, 1));
          soup.add_edge(e0r, L(e0r, 1));
          soup.add_edge(a1, a2);
          soup.add_edge(a1p, L(a1p, 2));
          return soup.cycle();
        }
        if (outer == 1) {
          if (out01 == 0) continue;  // flip brings the crossing to (0,1)
          VertexId a0 = boundary_end(ctx, ms, 0, 0, 0);
          int j = -1;
          for (int i = 1; i <= k - 2; ++i)
            if (ms.per_boundary[i].empty()) {
              j = i;
              break;
            }
          if (j < 0) continue;
          bool a0_is_end = false;
          for (auto [ea, eb] : ends)
            if (ea == a0 || eb == a0) a0_is_end = true;
          if (a0_is_end) {
            // Subcase 2.1: route the crossing through its own bridge
            auto ring = ring_pairing(cube_, ends, even_k(), [&](const auto& r) {
              return r[0] == a0 || r[3] == a0;
            });
            if (ring.empty()) continue;
            VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3];
            if (!in_matching(m, L(d0r, k - 1), L(e0r, k - 1))) {
              Seq p1 = l9(make_range(ctx, 1, j), L(c0r, 1), L(f0r, 1), ms.in_range(1, j));
              Seq p2 = l9(make_range(ctx, j + 1, k - 1).reversed(), L(d0r, k - 1),
                          L(e0r, k - 1), ms.in_range(j + 1, k - 1));
              return assemble({}, {p1, p2},
                              {{c0r, L(c0r, 1)},
                               {f0r, L(f0r, 1)},
                               {d0r, L(d0r, k - 1)},
                               {e0r, L(e0r, k - 1)}},
                              {});
            }
            auto two = l10(make_range(ctx, 1, k - 1), L(c0r, 1), L(f0r, 1), L(d0r, 1),
                           L(e0r, 1), ms.in_range(1, k - 1));
            EdgeSoup soup(cube_.count());
            for (const Seq& piece : exc.pieces) soup.add_seq(piece);
            for (const Seq& piece : two) soup.add_seq(piece);
            soup.add_edge(c0r, L(c0r, 1));
            soup.add_edge(f0r, L(f0r, 1));
            soup.add_edge(d0r, L(d0r, 1));
            soup.add_edge(e0r, L(e0r, 1));
            return soup.cycle();
          }
          // Subcase 2.2
          size_t m_low = 0;
          for (int i = 1; i <= j; ++i) m_low += ms.per_cube[i].size();
          for (int i = 1; i < j; ++i) m_low += ms.per_boundary[i].size();
          if (m_low == 0) {
            auto ring = ring_pairing(cube_, ends, even_k(), [&](const auto& r) {
              return !in_matching(m, L(r[1], k - 1), L(r[2], k - 1));
            });
            if (ring.empty()) continue;
            VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3];
            VertexId a0p = kNone;
            for (const Seq& piece : exc.pieces) {
              PathView pvp(cube_.count(), piece);
              if (!pvp.contains(a0)) continue;
              for (VertexId cnd : pvp.nbrs_on(a0))
                if (cnd != c0r && cnd != f0r) {
                  a0p = cnd;
                  break;
                }
            }
            if (a0p == kNone) continue;
            auto twoL = pr_range_two_path(make_range(ctx, 1, j), {L(c0r, 1), L(f0r, 1)},
                                          {L(a0, 1), L(a0p, 1)});
            Seq ph = l9(make_range(ctx, j + 1, k - 1).reversed(), L(d0r, k - 1),
                        L(e0r, k - 1), ms.in_range(j + 1, k - 1));
            return assemble({}, {twoL[0], twoL[1], ph},
                            {{c0r, L(c0r, 1)},
                             {f0r, L(f0r, 1)},
                             {a0, L(a0, 1)},
                             {a0p, L(a0p, 1)},
                             {d0r, L(d0r, k - 1)},
                             {e0r, L(e0r, k - 1)}},
                            {{a0, a0p}});
          }
          auto ring = ring_pairing(cube_, ends, even_k());
          if (ring.empty()) continue;
          VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3];
          VertexId a0p = kNone;
          for (const Seq& piece : exc.pieces) {
            PathView pvp(cube_.count(), piece);
            if (!pvp.contains(a0)) continue;
            auto nb = pvp.nbrs_on(a0);
            a0p = *std::min_element(nb.begin(), nb.end());
          }
          if (a0p == kNone) continue;
          auto twoH = pr_range_two_path(make_range(ctx, j + 1, k - 1).reversed(),
                                        {L(c0r, k - 1), L(f0r, k - 1)},
                                        {L(d0r, k - 1), L(e0r, k - 1)});
          Seq pa = l9(make_range(ctx, 1, j), L(a0, 1), L(a0p, 1), ms.in_range(1, j));
          return assemble({}, {twoH[0], twoH[1], pa},
                          {{a0, L(a0, 1)},
                           {a0p, L(a0p, 1)},
                           {c0r, L(c0r, k - 1)},
                           {f0r, L(f0r, k - 1)},
                           {d0r, L(d0r, k - 1)},
                           {e0r, L(e0r, k - 1)}},
                          {{a0, a0p}});
        }
        // outer == 2
        if (out01 == 2) {
          // Subcase 3.1
          VertexId a0 = boundary_end(ctx, ms, 0, 0, 0),
                   b0 = boundary_end(ctx, ms, 0, 1, 0);
          int hits = 0;
          for (auto [ea, eb] : ends) {
            if (ea == a0 || ea == b0) ++hits;
            if (eb == a0 || eb == b0) ++hits;
          }
          if (hits == 0) {
            auto ring = ring_pairing(cube_, ends, even_k());
            if (ring.empty()) continue;
            VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3];
            VertexId a0p = kNone, b0p = kNone;
            for (const Seq& piece : exc.pieces) {
              PathView pvp(cube_.count(), piece);
              if (pvp.contains(a0))
                for (VertexId cnd : pvp.nbrs_on(a0)) {
                  if (cnd == b0) continue;
                  a0p = cnd;
                  break;
                }
            }
            for (const Seq& piece : exc.pieces) {
              PathView pvp(cube_.count(), piece);
              if (pvp.contains(b0))
                for (VertexId cnd : pvp.nbrs_on(b0)) {
                  if (cnd == a0 || cnd == a0p) continue;
                  b0p = cnd;
                  break;
                }
            }
            if (a0p == kNone || b0p == kNone) continue;
            auto twoL = pr_range_two_path(make_range(ctx, 1, k - 2),
                                          {L(a0, 1), L(a0p, 1)}, {L(b0, 1), L(b0p, 1)});
            auto twoH = pr_range_two_path(make_range(ctx, k - 1, k - 1),
                                          {L(c0r, k - 1), L(f0r, k - 1)},
                                          {L(d0r, k - 1), L(e0r, k - 1)});
            return assemble({}, {twoL[0], twoL[1], twoH[0], twoH[1]},
                            {{a0, L(a0, 1)},
                             {a0p, L(a0p, 1)},
                             {b0, L(b0, 1)},
                             {b0p, L(b0p, 1)},
                             {c0r, L(c0r, k - 1)},
                             {f0r, L(f0r, k - 1)},
                             {d0r, L(d0r, k - 1)},
                             {e0r, L(e0r, k - 1)}},
                            {{a0, a0p}, {b0, b0p}});
          }
          if (hits == 1) {
            VertexId shared = kNone;
            for (auto [ea, eb] : ends) {
              if (ea == a0 || ea == b0) shared = ea;
              if (eb == a0 || eb == b0) shared = eb;
            }
            VertexId other = shared == a0 ? b0 : a0;
            auto ring = ring_pairing(cube_, ends, even_k(), [&](const auto& r) {
              return r[0] == shared || r[3] == shared;
            });
            if (ring.empty()) continue;
            VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3];
            VertexId b0p = kNone;
            for (const Seq& piece : exc.pieces) {
              PathView pvp(cube_.count(), piece);
              if (pvp.contains(other))
                for (VertexId cnd : pvp.nbrs_on(other)) {
                  if (cnd == c0r || cnd == f0r) continue;
                  b0p = cnd;
                  break;
                }
            }
            if (b0p == kNone) continue;
            auto twoL = pr_range_two_path(make_range(ctx, 1, k - 2),
                                          {L(c0r, 1), L(f0r, 1)},
                                          {L(other, 1), L(b0p, 1)});
            Seq ph = pr_range_path(make_range(ctx, k - 1, k - 1), L(d0r, k - 1),
                                   L(e0r, k - 1));
            return assemble({}, {twoL[0], twoL[1], ph},
                            {{c0r, L(c0r, 1)},
                             {f0r, L(f0r, 1)},
                             {other, L(other, 1)},
                             {b0p, L(b0p, 1)},
                             {d0r, L(d0r, k - 1)},
                             {e0r, L(e0r, k - 1)}},
                            {{other, b0p}});
          }
          // hits == 2
          auto ring = ring_pairing(cube_, ends, even_k(), [&](const auto& r) {
            int c = 0;
            for (int idx : {0, 1, 2, 3})
              if (r[idx] == a0 || r[idx] == b0) ++c;
            return c == 2;
          });
          if (ring.empty()) continue;
          VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3];
          auto two = pr_range_two_path(make_range(ctx, 1, k - 1), {L(c0r, 1), L(f0r, 1)},
                                       {L(d0r, 1), L(e0r, 1)});
          return assemble({}, {two[0], two[1]},
                          {{c0r, L(c0r, 1)},
                           {f0r, L(f0r, 1)},
                           {d0r, L(d0r, 1)},
                           {e0r, L(e0r, 1)}},
                          {});
        }
        // Subcase 3.2: one crossing on each side
        {
          VertexId a0 = boundary_end(ctx, ms, 0, 0, 0);
          VertexId b0 = boundary_end(ctx, ms, k - 1, 0, 0);
          bool a_end = false, b_end = false;
          for (auto [ea, eb] : ends) {
            if (ea == a0 || eb == a0) a_end = true;
            if (ea == b0 || eb == b0) b_end = true;
          }
          if (!a_end && !b_end) {
            auto ring = ring_pairing(cube_, ends, even_k());
            if (ring.empty()) continue;
            VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3];
            VertexId a0p = kNone, b0p = kNone;
            for (const Seq& piece : exc.pieces) {
              PathView pvp(cube_.count(), piece);
              if (pvp.contains(a0)) {
                auto nb = pvp.nbrs_on(a0);
                a0p = *std::min_element(nb.begin(), nb.end());
              }
            }
            for (const Seq& piece : exc.pieces) {
              PathView pvp(cube_.count(), piece);
              if (pvp.contains(b0))
                for (VertexId cnd : pvp.nbrs_on(b0)) {
                  if (std::minmax(a0, a0p) == std::minmax(b0, cnd)) continue;
                  b0p = cnd;
                  break;
                }
            }
            if (a0p == kNone || b0p == kNone) continue;
            auto twoL = pr_range_two_path(make_range(ctx, 1, k - 2),
                                          {L(a0, 1), L(a0p, 1)}, {L(c0r, 1), L(f0r, 1)});
            auto twoH = pr_range_two_path(make_range(ctx, k - 1, k - 1),
                                          {L(b0, k - 1), L(b0p, k - 1)},
                                          {L(d0r, k - 1), L(e0r, k - 1)});
            return assemble({}, {twoL[0], twoL[1], twoH[0], twoH[1]},
                            {{a0, L(a0, 1)},
                             {a0p, L(a0p, 1)},
                             {c0r, L(c0r, 1)},
                             {f0r, L(f0r, 1)},
                             {b0, L(b0, k - 1)},
                             {b0p, L(b0p, k - 1)},
                             {d0r, L(d0r, k - 1)},
                             {e0r, L(e0r, k - 1)}},
                            {{a0, a0p}, {b0, b0p}});
          }
          if (!a_end && b_end) continue;  // flip swaps the crossing roles
          auto ring = ring_pairing(cube_, ends, even_k(), [&](const auto& r) {
            return r[0] == a0 || r[3] == a0;
          });
          if (ring.empty()) continue;
          VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3];
          VertexId b0p = kNone;
          for (const Seq& piece : exc.pieces) {
            PathView pvp(cube_.count(), piece);
            if (pvp.contains(b0)) {
              auto nb = pvp.nbrs_on(b0);
              b0p = *std::min_element(nb.begin(), nb.end());
            }
          }
          if (b0p == kNone) continue;
          auto twoL = pr_range_two_path(make_range(ctx, 1, k - 2), {L(c0r, 1), L(f0r, 1)},
                                        {L(d0r, 1), L(e0r, 1)});
          Seq pb = pr_range_path(make_range(ctx, k - 1, k - 1), L(b0, k - 1),
                                 L(b0p, k - 1));
          return assemble({}, {twoL[0], twoL[1], pb},
                          {{c0r, L(c0r, 1)},
                           {f0r, L(f0r, 1)},
                           {d0r, L(d0r, 1)},
                           {e0r, L(e0r, 1)},
                           {b0, L(b0, k - 1)},
                           {b0p, L(b0p, k - 1)}},
                          {{b0, b0p}});
        }
      } catch (const ConsistencyError&) {
        continue;
      } catch (const PreconditionError&) {
        continue;
      }
    }
  }
  scan_fail("Claim3 presentations");
}

// ---------------------------------------------------------------------------
// Claim 4: three matching edges of M_0 missing from C_0.

inline Seq Ops::claim4(const SplitContext& ctx0, const MatchingSplit& /*ms0*/,
                       const Matching& m, const Seq& c0, PairIds x0y0, PairIds m0n0,
                       PairIds s0t0) {
  auto sc = env_.trace.push("Claim4");
  const int k = cube_.shape().k;
  for (int flip = 0; flip < 2; ++flip) {
    SplitContext ctx = ctx0;
    if (flip) ctx.flipped = !ctx.flipped;
    MatchingSplit ms = restrict_matching(m, ctx);
    if (!ms.per_boundary[k - 1].empty()) continue;  // want the wrap side clean
    auto L = [&](VertexId v, int l) { return ctx.with_label(cube_, v, l); };
    int out01 = int(ms.per_boundary[0].size());
    for (int dir = 0; dir < 2; ++dir) {
      auto exc = claimdetail::excise(cube_, c0, {x0y0, m0n0, s0t0}, dir);
      if (exc.pieces.size() != 3) continue;
      auto ends = claimdetail::piece_ends(exc.pieces);
      try {
        if (out01 == 1) {
          VertexId a0 = boundary_end(ctx, ms, 0, 0, 0);
          int apiece = -1;
          for (int i = 0; i < 3; ++i) {
            PathView pvp(cube_.count(), exc.pieces[i]);
            if (pvp.contains(a0)) apiece = i;
          }
          auto ring = ring_pairing(cube_, ends, even_k(), [&](const auto& r) {
            // a0 must lie on the piece holding ring slots 0,1 (the c0-d0 piece)
            PathView pvp(cube_.count(), exc.pieces[apiece]);
            return pvp.contains(r[0]) && pvp.contains(r[1]);
          });
          if (ring.empty()) continue;
          VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3],
                   g0r = ring[4], h0r = ring[5];
          PathView pva(cube_.count(), exc.pieces[apiece]);
          VertexId a0p = kNone;
          for (VertexId cnd : pva.nbrs_on(a0)) {
            a0p = cnd;
            break;
          }
          if (a0p == kNone) continue;
          auto twoL = pr_range_two_path(make_range(ctx, 1, k - 2), {L(a0, 1), L(a0p, 1)},
                                        {L(f0r, 1), L(g0r, 1)});
          auto twoH = pr_range_two_path(make_range(ctx, k - 1, k - 1),
                                        {L(d0r, k - 1), L(e0r, k - 1)},
                                        {L(c0r, k - 1), L(h0r, k - 1)});
          EdgeSoup soup(cube_.count());
          for (const Seq& piece : exc.pieces) soup.add_seq(piece);
          for (const Seq& piece : {twoL[0], twoL[1], twoH[0], twoH[1]})
            soup.add_seq(piece);
          soup.remove_edge(a0, a0p);
          soup.add_edge(c0r, L(c0r, k - 1));
          soup.add_edge(h0r, L(h0r, k - 1));
          soup.add_edge(d0r, L(d0r, k - 1));
          soup.add_edge(e0r, L(e0r, k - 1));
          soup.add_edge(f0r, L(f0r, 1));
          soup.add_edge(g0r, L(g0r, 1));
          soup.add_edge(a0, L(a0, 1));
          soup.add_edge(a0p, L(a0p, 1));
          return soup.cycle();
        }
        // no crossings: one leftover object allowed in [1, k-1]
        if (!ms.per_cube[k - 1].empty() || !ms.per_boundary[k - 2].empty()) continue;
        auto ring = ring_pairing(cube_, ends, even_k(), [&](const auto& r) {
          return !in_matching(m, L(r[0], 1), L(r[5], 1));
        });
        if (ring.empty()) continue;
        VertexId c0r = ring[0], d0r = ring[1], e0r = ring[2], f0r = ring[3],
                 g0r = ring[4], h0r = ring[5];
        auto twoH = pr_range_two_path(make_range(ctx, k - 1, k - 1),
                                      {L(d0r, k - 1), L(e0r, k - 1)},
                                      {L(f0r, k - 1), L(g0r, k - 1)});
        Seq pch = l9(make_range(ctx, 1, k - 2), L(c0r, 1), L(h0r, 1),
                     ms.in_range(1, k - 2));
        EdgeSoup soup(cube_.count());
        for (const Seq& piece : exc.pieces) soup.add_seq(piece);
        soup.add_seq(twoH[0]);
        soup.add_seq(twoH[1]);
        soup.add_seq(pch);
        soup.add_edge(c0r, L(c0r, 1));
        soup.add_edge(h0r, L(h0r, 1));
        soup.add_edge(d0r, L(d0r, k - 1));
        soup.add_edge(e0r, L(e0r, k - 1));
        soup.add_edge(f0r, L(f0r, k - 1));
        soup.add_edge(g0r, L(g0r, k - 1));
        return soup.cycle();
      } catch (const ConsistencyError&) {
        continue;
      } catch (const PreconditionError&) {
        continue;
      }
    }
  }
  scan_fail("Claim4 presentations");
}

// ---------------------------------------------------------------------------
// |M_0| = 4n-20 endgame: four chords, all of M outside Q[0] empty.

inline Seq Ops::endgame4(const SplitContext& ctx0, const MatchingSplit& /*ms0*/,
                         const Matching& /*m*/, const Seq& c0,
                         const std::vector<PairIds>& off) {
  auto sc = env_.trace.push("Endgame4");
  const int k = cube_.shape().k;
  SplitContext ctx = ctx0;
  auto L = [&](VertexId v, int l) { return ctx.with_label(cube_, v, l); };
  for (int dir = 0; dir < 2; ++dir) {
    auto exc = claimdetail::excise(cube_, c0, off, dir);
    if (exc.pieces.size() != 4) continue;
    auto ends = claimdetail::piece_ends(exc.pieces);
    auto ring = ring_pairing(cube_, ends, even_k());
    if (ring.empty()) continue;
    VertexId a0 = ring[0], b0 = ring[1], c0r = ring[2], d0 = ring[3], e0 = ring[4],
             f0 = ring[5], g0 = ring[6], h0 = ring[7];
    try {
      auto twoL = pr_range_two_path(make_range(ctx, 1, k - 2), {L(b0, 1), L(c0r, 1)},
                                    {L(d0, 1), L(e0, 1)});
      auto twoH = pr_range_two_path(make_range(ctx, k - 1, k - 1),
                                    {L(f0, k - 1), L(g0, k - 1)},
                                    {L(a0, k - 1), L(h0, k - 1)});
      EdgeSoup soup(cube_.count());
      for (const Seq& piece : exc.pieces) soup.add_seq(piece);
      soup.add_seq(twoL[0]);
      soup.add_seq(twoL[1]);
      soup.add_seq(twoH[0]);
      soup.add_seq(twoH[1]);
      soup.add_edge(b0, L(b0, 1));
      soup.add_edge(c0r, L(c0r, 1));
      soup.add_edge(d0, L(d0, 1));
      soup.add_edge(e0, L(e0, 1));
      soup.add_edge(f0, L(f0, k - 1));
      soup.add_edge(g0, L(g0, k - 1));
      soup.add_edge(a0, L(a0, k - 1));
      soup.add_edge(h0, L(h0, k - 1));
      return soup.cycle();
    } catch (const ConsistencyError&) {
      continue;
    } catch (const PreconditionError&) {
      continue;
    }
  }
  scan_fail("Endgame4 presentations");
}

// ---------------------------------------------------------------------------
// Theorem dispatcher.

inline Seq Ops::theorem3(const Matching& m) {
  auto sc = env_.trace.push("T3 n=" + std::to_string(cube_.shape().n));
  const CubeShape& s = cube_.shape();
  const int k = s.k, n = s.n;
  if (m.empty()) {
    env_.trace.note("M empty: provider cycle");
    auto r = env_.provider->solve(PrimitiveKind::HamCycleThroughMatching,
                                  inst_ham_cycle_through_matching(s, Matching{}));
    return to_seq(cube_, r.cycle.order);
  }
  int d = select_split_dimension(s, m, 3);
  int bestr = 0, bestc = -1;
  for (int r = 0; r < k; ++r) {
    int c = 0;
    for (const Edge& e : m.edges)
      if (e.dim != d && e.a.c[d - 1] == r) ++c;
    if (c > bestc) {
      bestc = c;
      bestr = r;
    }
  }
  SplitContext ctx{s, d, bestr, false};
  env_.trace.note(fmt_ctx(ctx));
  MatchingSplit ms = restrict_matching(m, ctx);
  int bound_child = std::max(0, 4 * (n - 1) - 20);
  int excl_count = std::max(0, int(ms.per_cube[0].size()) - bound_child);
  std::vector<Edge> X(ms.per_cube[0].edges.begin(),
                      ms.per_cube[0].edges.begin() + excl_count);
  Seq c0 = sub_theorem3(ctx, 0, minus_edges(ms.per_cube[0], X));
  CycleView cv(cube_.count(), c0);
  std::vector<PairIds> off;
  for (const Edge& e : X) {
    VertexId a = cube_.id_of(e.a), b = cube_.id_of(e.b);
    if (cv.cyc_dist(a, b) != 1) off.push_back(std::minmax(a, b));
  }
  env_.trace.note("|M_0|=" + std::to_string(ms.per_cube[0].size()) +
                  " excluded=" + std::to_string(excl_count) +
                  " off-cycle=" + std::to_string(off.size()));
  switch (off.size()) {
    case 0:
      return claim1(ctx, ms, m, c0);
    case 1:
      return claim2(ctx, ms, m, c0, off[0]);
    case 2:
      return claim3(ctx, ms, m, c0, off[0], off[1]);
    case 3:
      return claim4(ctx, ms, m, c0, off[0], off[1], off[2]);
    default:
      return endgame4(ctx, ms, m, c0, off);
  }
}

}  // namespace kcube::cons
