#pragma once

// Deterministic random-instance helpers shared by the unit and acceptance
// suites.

#include <random>
#include <set>
#include <vector>

#include "kcube/cube.hpp"
#include "kcube/search.hpp"

namespace kcube::gen {

inline Vertex random_vertex(const Cube& cube, std::mt19937_64& rng) {
  return cube.at(VertexId(rng() % cube.count()));
}

inline Vertex random_vertex_with_parity(const Cube& cube, std::mt19937_64& rng, int par) {
  for (;;) {
    VertexId v = VertexId(rng() % cube.count());
    if (cube.parity(v) == par) return cube.at(v);
  }
}

inline Edge random_edge(const Cube& cube, std::mt19937_64& rng) {
  const CubeShape& s = cube.shape();
  Vertex a = random_vertex(cube, rng);
  auto nb = neighbors(s, a);
  return make_edge(s, a, nb[rng() % nb.size()]);
}

// Random matching of exactly `size` edges avoiding the given vertices.
inline Matching random_matching(const Cube& cube, std::mt19937_64& rng, int size,
                                const std::vector<Vertex>& avoid = {}) {
  const CubeShape& s = cube.shape();
  std::set<Vertex> used(avoid.begin(), avoid.end());
  std::vector<Edge> edges;
  int guard = 0;
  while (int(edges.size()) < size) {
    if (++guard > 100000) throw std::runtime_error("random_matching stuck");
    Edge e = random_edge(cube, rng);
    if (used.count(e.a) || used.count(e.b)) continue;
    used.insert(e.a);
    used.insert(e.b);
    edges.push_back(e);
  }
  return make_matching(s, edges);
}

// Random linear forest with exactly `size` edges.
inline Matching random_linear_forest(const Cube& cube, std::mt19937_64& rng, int size) {
  const CubeShape& s = cube.shape();
  std::vector<Edge> edges;
  int guard = 0;
  while (int(edges.size()) < size) {
    if (++guard > 100000) throw std::runtime_error("random_forest stuck");
    Edge e = random_edge(cube, rng);
    std::vector<Edge> next = edges;
    next.push_back(e);
    if (is_linear_forest(s, next)) edges = std::move(next);
  }
  Matching f;
  f.edges = edges;
  std::sort(f.edges.begin(), f.edges.end());
  return f;
}

// Distinct random vertices, optionally with fixed parities (even k).
inline std::vector<Vertex> distinct_vertices(const Cube& cube, std::mt19937_64& rng,
                                             const std::vector<int>& parities) {
  std::vector<Vertex> out;
  std::set<Vertex> seen;
  int guard = 0;
  while (out.size() < parities.size()) {
    if (++guard > 100000) throw std::runtime_error("distinct_vertices stuck");
    Vertex v = parities[out.size()] < 0
                   ? random_vertex(cube, rng)
                   : random_vertex_with_parity(cube, rng, parities[out.size()]);
    if (seen.count(v)) continue;
    seen.insert(v);
    out.push_back(v);
  }
  return out;
}

// Deterministic corpus of tiny specs mixing shapes, ranges, holes, pairs
// and required edges; used for oracle-equivalence and pruning-safety.
inline std::vector<ConstraintSpec> tiny_corpus(int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CubeShape> shapes = {{1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 3}};
  std::vector<ConstraintSpec> out;
  while (int(out.size()) < count) {
    CubeShape s = shapes[rng() % shapes.size()];
    Cube cube(s);
    Region region = Region::whole(s);
    if (s.n >= 2 && rng() % 3 == 0) {
      SplitContext ctx = split(s, 1 + int(rng() % s.n));
      int p = int(rng() % s.k);
      int q = p + int(rng() % (s.k - p));
      region = Region::of_range(make_range(ctx, p, q));
    }
    {
      BoundRegion pre(cube, region);
      if (rng() % 4 == 0 && pre.vertices().size() > 6) {
        std::vector<Vertex> forb;
        int nf = 1 + int(rng() % 2);
        for (int i = 0; i < nf; ++i)
          forb.push_back(cube.at(pre.vertices()[rng() % pre.vertices().size()]));
        region = region.minus(forb);
      }
    }
    BoundRegion bound(cube, region);
    auto verts = bound.vertices();
    if (verts.size() < 4) continue;
    ConstraintSpec spec;
    spec.region = region;
    int mode = int(rng() % 3);
    if (mode >= 1 && verts.size() >= 4) {
      // one or two endpoint pairs
      std::vector<VertexId> picks;
      int need = mode * 2;
      while (int(picks.size()) < need) {
        VertexId v = verts[rng() % verts.size()];
        if (std::find(picks.begin(), picks.end(), v) == picks.end()) picks.push_back(v);
      }
      for (int i = 0; i < mode; ++i)
        spec.endpoint_pairs.push_back({cube.at(picks[2 * i]), cube.at(picks[2 * i + 1])});
    }
    if (rng() % 3 == 0) {
      // try to add one required region edge disjoint from the endpoints
      for (int tries = 0; tries < 10; ++tries) {
        VertexId a = verts[rng() % verts.size()];
        std::vector<VertexId> nb;
        cube.neighbors(a, nb);
        VertexId b = nb[rng() % nb.size()];
        if (!bound.edge_ok(a, b)) continue;
        spec.required = Matching{{make_edge(s, cube.at(a), cube.at(b))}};
        break;
      }
    }
    try {
      BoundRegion check(cube, spec.region);
      detail::validate_spec(cube, check, spec);
    } catch (const InputError&) {
      continue;
    }
    out.push_back(std::move(spec));
  }
  return out;
}


}  // namespace kcube::gen
