#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "kcube/cube.hpp"

using namespace kcube;

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(validate_shape(CubeShape{0, 4}), InputError);
  CHECK_THROWS_AS(validate_shape(CubeShape{3, 2}), InputError);  // k=2 rejected
  CHECK(CubeShape{3, 4}.vertex_count() == 64);
  CHECK(CubeShape{5, 4}.vertex_count() == 1024);
}

TEST_CASE("neighbors in Q_3^4") {
  CubeShape s{3, 4};
  auto nb = neighbors(s, Vertex{0, 0, 0});
  std::set<Vertex> got(nb.begin(), nb.end());
  std::set<Vertex> want = {Vertex{1, 0, 0}, Vertex{3, 0, 0}, Vertex{0, 1, 0},
                           Vertex{0, 3, 0}, Vertex{0, 0, 1}, Vertex{0, 0, 3}};
  CHECK(got == want);
}

TEST_CASE("2n neighbors for k >= 3") {
  CubeShape s{5, 4};
  CHECK(neighbors(s, Vertex{1, 2, 3, 0, 2}).size() == 10);
  CubeShape t{2, 3};
  auto nb = neighbors(t, Vertex{0, 0});
  std::set<Vertex> got(nb.begin(), nb.end());
  std::set<Vertex> want = {Vertex{1, 0}, Vertex{2, 0}, Vertex{0, 1}, Vertex{0, 2}};
  CHECK(got == want);
}

TEST_CASE("parity") {
  CubeShape s{3, 4};
  CHECK(parity(s, Vertex{0, 0, 0}) == 0);
  CHECK(parity(s, Vertex{1, 2, 3}) == 0);
  CHECK(parity(s, Vertex{1, 0, 0}) == 1);
}

TEST_CASE("edges flip parity when k is even") {
  CubeShape s{3, 4};
  Cube cube(s);
  std::vector<VertexId> nb;
  for (VertexId v = 0; v < cube.count(); ++v) {
    cube.neighbors(v, nb);
    for (VertexId w : nb) CHECK(cube.parity(v) != cube.parity(w));
  }
}

TEST_CASE("edge count is n*k^n") {
  for (int n = 1; n <= 3; ++n)
    for (int k = 3; k <= 5; ++k) {
      Cube cube(CubeShape{n, k});
      std::vector<VertexId> nb;
      uint64_t half_degrees = 0;
      for (VertexId v = 0; v < cube.count(); ++v) {
        cube.neighbors(v, nb);
        half_degrees += nb.size();
      }
      CHECK(half_degrees / 2 == uint64_t(n) * cube.count());
    }
}

TEST_CASE("indexing round trip") {
  Cube cube(CubeShape{4, 5});
  for (VertexId id = 0; id < cube.count(); id += 7) {
    CHECK(cube.id_of(cube.at(id)) == id);
  }
  CHECK(cube.step(cube.id_of(Vertex{4, 0, 0, 0}), 0, 1) == cube.id_of(Vertex{0, 0, 0, 0}));
  CHECK(cube.dist(cube.id_of(Vertex{0, 0, 0, 0}), cube.id_of(Vertex{4, 0, 2, 0})) == 3);
}

TEST_CASE("edge canonicalization") {
  CubeShape s{2, 4};
  Edge e = make_edge(s, Vertex{1, 0}, Vertex{0, 0});
  CHECK(e.a == Vertex{0, 0});
  CHECK(e.dim == 1);
  Edge w = make_edge(s, Vertex{3, 1}, Vertex{0, 1});  // wraparound
  CHECK(w.dim == 1);
  CHECK_THROWS_AS(make_edge(s, Vertex{0, 0}, Vertex{2, 0}), InputError);
  CHECK_THROWS_AS(make_edge(s, Vertex{0, 0}, Vertex{1, 1}), InputError);
}

TEST_CASE("matching validation") {
  CubeShape s{2, 4};
  auto e1 = make_edge(s, Vertex{0, 0}, Vertex{1, 0});
  auto e2 = make_edge(s, Vertex{1, 0}, Vertex{1, 1});
  CHECK_THROWS_AS(make_matching(s, {e1, e2}), InputError);  // share (1,0)
  auto e3 = make_edge(s, Vertex{2, 2}, Vertex{2, 3});
  CHECK(make_matching(s, {e1, e3}).size() == 2);
}

TEST_CASE("linear forest recognition") {
  CubeShape s{2, 4};
  auto e1 = make_edge(s, Vertex{0, 0}, Vertex{1, 0});
  auto e2 = make_edge(s, Vertex{1, 0}, Vertex{2, 0});
  auto e3 = make_edge(s, Vertex{2, 0}, Vertex{3, 0});
  auto e4 = make_edge(s, Vertex{3, 0}, Vertex{0, 0});
  CHECK(is_linear_forest(s, {e1, e2, e3}));
  CHECK_FALSE(is_linear_forest(s, {e1, e2, e3, e4}));  // 4-cycle
  auto f1 = make_edge(s, Vertex{0, 1}, Vertex{1, 1});
  CHECK(is_linear_forest(s, {e1, f1}));
}

TEST_CASE("split sizes in Q_3^4") {
  CubeShape s{3, 4};
  Cube cube(s);
  SplitContext ctx = split(s, 1);
  // 4 subcubes of 16 vertices each
  std::vector<int> sizes(4, 0);
  for (VertexId v = 0; v < cube.count(); ++v) sizes[ctx.label(cube, v)]++;
  for (int i = 0; i < 4; ++i) CHECK(sizes[i] == 16);
  // |E_d| = k^n, |E_d(i,i+1)| = k^{n-1}
  int dcount = 0;
  std::vector<int> bound(4, 0);
  std::vector<VertexId> nb;
  for (VertexId v = 0; v < cube.count(); ++v) {
    cube.neighbors(v, nb);
    for (VertexId w : nb) {
      if (w < v) continue;
      if (cube.edge_dim0(v, w) == 0) {
        ++dcount;
        int la = ctx.label(cube, v), lb = ctx.label(cube, w);
        bound[(la + 1) % 4 == lb ? la : lb]++;
      }
    }
  }
  CHECK(dcount == 64);
  for (int i = 0; i < 4; ++i) CHECK(bound[i] == 16);
  CHECK_THROWS_AS(split(s, 0), InputError);
  CHECK_THROWS_AS(split(s, 4), InputError);
}

TEST_CASE("split exactness: E(Q) = union of subcube edges and E_d") {
  CubeShape s{3, 4};
  Cube cube(s);
  for (int d = 1; d <= 3; ++d) {
    SplitContext ctx = split(s, d);
    uint64_t sub_edges = 0, d_edges = 0;
    std::vector<VertexId> nb;
    for (VertexId v = 0; v < cube.count(); ++v) {
      cube.neighbors(v, nb);
      for (VertexId w : nb) {
        if (w < v) continue;
        if (cube.edge_dim0(v, w) == d - 1) ++d_edges;
        else {
          ++sub_edges;
          CHECK(ctx.label(cube, v) == ctx.label(cube, w));
        }
      }
    }
    CHECK(d_edges == 64);
    CHECK(sub_edges + d_edges == 3 * 64);
  }
}

TEST_CASE("projection consistency: u_i adjacent to u_{i+1}") {
  CubeShape s{3, 4};
  Cube cube(s);
  SplitContext ctx = split(s, 2);
  for (VertexId v = 0; v < cube.count(); v += 3) {
    for (int i = 0; i + 1 < 4; ++i) {
      VertexId a = ctx.with_label(cube, v, i);
      VertexId b = ctx.with_label(cube, v, i + 1);
      CHECK(cube.edge_dim0(a, b) == 1);
    }
  }
}

TEST_CASE("rotation and flip labels") {
  CubeShape s{2, 5};
  Cube cube(s);
  SplitContext ctx{s, 1, 2, false};
  CHECK(ctx.label(cube, cube.id_of(Vertex{2, 0})) == 0);
  CHECK(ctx.label(cube, cube.id_of(Vertex{1, 0})) == 4);
  SplitContext f{s, 1, 2, true};
  CHECK(f.label(cube, cube.id_of(Vertex{2, 0})) == 0);
  CHECK(f.label(cube, cube.id_of(Vertex{1, 0})) == 1);
  for (int l = 0; l < 5; ++l) {
    CHECK(ctx.label_of_digit(ctx.digit_of_label(l)) == l);
    CHECK(f.label_of_digit(f.digit_of_label(l)) == l);
  }
}

TEST_CASE("range view reversal") {
  CubeShape s{3, 5};
  Cube cube(s);
  SplitContext ctx{s, 2, 1, false};
  RangeView v = make_range(ctx, 1, 3);
  RangeView r = v.reversed();
  for (VertexId id = 0; id < cube.count(); id += 5) {
    int l = ctx.label(cube, id);
    if (l < 1 || l > 3) continue;
    CHECK(r.ctx.label(cube, id) == v.p + v.q - l);
  }
  // reversing twice restores the original labels
  RangeView rr = r.reversed();
  for (VertexId id = 0; id < cube.count(); id += 7)
    CHECK(rr.ctx.label(cube, id) == ctx.label(cube, id));
}

TEST_CASE("restrict_matching partitions M") {
  CubeShape s{3, 4};
  SplitContext ctx = split(s, 1);
  SECTION("empty matching") {
    MatchingSplit ms = restrict_matching(Matching{}, ctx);
    CHECK(ms.in_range(0, 3).empty());
    CHECK(ms.crossings_total() == 0);
  }
  SECTION("single crossing edge") {
    Matching m = make_matching(s, {make_edge(s, Vertex{0, 0, 0}, Vertex{1, 0, 0})});
    MatchingSplit ms = restrict_matching(m, ctx);
    CHECK(ms.per_boundary[0].size() == 1);
    for (int i = 0; i < 4; ++i) CHECK(ms.per_cube[i].empty());
  }
  SECTION("random matching of size 5 in Q_4^4 recounts") {
    CubeShape s4{4, 4};
    Cube cube(s4);
    std::mt19937_64 rng(7);
    std::vector<Edge> es;
    std::set<Vertex> used;
    while (es.size() < 5) {
      Vertex a = cube.at(VertexId(rng() % cube.count()));
      auto nb = neighbors(s4, a);
      Vertex b = nb[rng() % nb.size()];
      if (used.count(a) || used.count(b)) continue;
      used.insert(a);
      used.insert(b);
      es.push_back(make_edge(s4, a, b));
    }
    Matching m = make_matching(s4, es);
    for (int d = 1; d <= 4; ++d) {
      MatchingSplit ms = restrict_matching(m, split(s4, d));
      size_t total = 0;
      for (const auto& mi : ms.per_cube) total += mi.size();
      for (const auto& mb : ms.per_boundary) total += mb.size();
      CHECK(total == 5);
    }
  }
}

TEST_CASE("select_split_dimension") {
  CubeShape s{3, 4};
  Matching m = make_matching(s, {make_edge(s, Vertex{0, 0, 0}, Vertex{1, 0, 0})});
  CHECK(select_split_dimension(s, m, 0) == 2);

  CubeShape s5{5, 4};
  std::vector<Edge> es = {make_edge(s5, Vertex{0, 0, 0, 0, 0}, Vertex{1, 0, 0, 0, 0}),
                          make_edge(s5, Vertex{0, 1, 1, 0, 0}, Vertex{1, 1, 1, 0, 0}),
                          make_edge(s5, Vertex{2, 0, 2, 2, 2}, Vertex{3, 0, 2, 2, 2})};
  Matching m3 = make_matching(s5, es);
  // brute force: d=1 has all three edges, every other d has zero
  CHECK(select_split_dimension(s5, m3, 3) == 2);

  CubeShape line{1, 4};
  Matching m1 = make_matching(line, {make_edge(line, Vertex{0}, Vertex{1})});
  CHECK_THROWS_AS(select_split_dimension(line, m1, 0), PreconditionError);
}

TEST_CASE("pigeonhole: |M| <= 4n-20 admits |M cap E_d| <= 3") {
  CubeShape s{6, 4};
  Cube cube(s);
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Edge> es;
    std::set<Vertex> used;
    while (es.size() < 4) {  // 4*6-20 = 4
      Vertex a = cube.at(VertexId(rng() % cube.count()));
      auto nb = neighbors(s, a);
      Vertex b = nb[rng() % nb.size()];
      if (used.count(a) || used.count(b)) continue;
      used.insert(a);
      used.insert(b);
      es.push_back(make_edge(s, a, b));
    }
    CHECK_NOTHROW(select_split_dimension(s, make_matching(s, es), 3));
  }
}

TEST_CASE("transform application and group structure") {
  CubeShape s{3, 4};
  Cube cube(s);
  Transform id = Transform::identity(3);
  Vertex v{1, 2, 3};
  CHECK(apply_transform(s, id, v) == v);

  std::mt19937_64 seeds(3);
  for (int rep = 0; rep < 25; ++rep) {
    Transform t = random_transform(s, seeds());
    Transform u = random_transform(s, seeds());
    validate_transform(s, t);
    // adjacency preserved
    for (int probe = 0; probe < 10; ++probe) {
      Vertex a = cube.at(VertexId(seeds() % cube.count()));
      auto nb = neighbors(s, a);
      Vertex b = nb[seeds() % nb.size()];
      CHECK(adjacent_dim(s, apply_transform(s, t, a), apply_transform(s, t, b)) != 0);
    }
    // inverse and composition
    Transform ti = inverse(s, t);
    Transform c = compose(s, u, t);
    validate_transform(s, c);
    Vertex w = cube.at(VertexId(seeds() % cube.count()));
    CHECK(apply_transform(s, ti, apply_transform(s, t, w)) == w);
    CHECK(apply_transform(s, c, w) == apply_transform(s, u, apply_transform(s, t, w)));
  }
}

TEST_CASE("rotation by +1 in dim d maps Q[i] onto Q[i+1]") {
  CubeShape s{3, 4};
  Cube cube(s);
  SplitContext ctx = split(s, 2);
  Transform t = Transform::identity(3);
  t.offset[1] = 1;  // +1 along dim 2
  for (VertexId v = 0; v < cube.count(); v += 5) {
    Vertex img = apply_transform(s, t, cube.at(v));
    CHECK(ctx.label(cube, cube.id_of(img)) == (ctx.label(cube, v) + 1) % 4);
  }
}

TEST_CASE("regions: range excludes wrap edges") {
  CubeShape s{2, 4};
  Cube cube(s);
  SplitContext ctx = split(s, 1);
  BoundRegion whole(cube, Region::whole(s));
  CHECK(whole.vertices().size() == 16);
  CHECK(whole.edge_ok(cube.id_of(Vertex{0, 0}), cube.id_of(Vertex{3, 0})));

  BoundRegion range(cube, Region::of_range(make_range(ctx, 0, 3)));
  CHECK(range.vertices().size() == 16);
  // wrap boundary E_d(k-1, 0) is not part of Q[0,k-1]
  CHECK_FALSE(range.edge_ok(cube.id_of(Vertex{0, 0}), cube.id_of(Vertex{3, 0})));
  CHECK(range.edge_ok(cube.id_of(Vertex{0, 0}), cube.id_of(Vertex{1, 0})));

  BoundRegion part(cube, Region::of_range(make_range(ctx, 1, 2)));
  CHECK(part.vertices().size() == 8);
  CHECK_FALSE(part.contains(cube.id_of(Vertex{0, 0})));

  Region minus = Region::whole(s).minus({Vertex{0, 0}});
  BoundRegion holed(cube, minus);
  CHECK(holed.vertices().size() == 15);
  CHECK_FALSE(holed.edge_ok(cube.id_of(Vertex{0, 0}), cube.id_of(Vertex{1, 0})));
}
