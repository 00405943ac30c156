#pragma once

// Vertex/edge model of the k-ary n-cube Q_n^k, parity, dimension splits,
// label ranges, matching restriction, and the instance automorphisms used
// to normalize "by symmetry" steps.
//
// Conventions:
//  - vertex digits are 0-based arrays; split dimensions d are 1-based, so
//    dimension d acts on digit d-1
//  - subcube labels are *presented* labels: label(v) = +/-(digit_d(v) -
//    rotation) mod k, so every range [p,q] satisfies 0 <= p <= q <= k-1
//    without wrapping

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "kcube/errors.hpp"

namespace kcube {

struct CubeShape {
  int n = 0;  // dimension count, >= 1
  int k = 0;  // radix, >= 3 (k = 2 hypercubes are out of scope)

  friend bool operator==(const CubeShape&, const CubeShape&) = default;

  uint64_t vertex_count() const {
    uint64_t c = 1;
    for (int i = 0; i < n; ++i) c *= static_cast<uint64_t>(k);
    return c;
  }
};

inline void validate_shape(const CubeShape& s) {
  if (s.n < 1) throw InputError("shape: n must be >= 1");
  if (s.k < 3) throw InputError("shape: k must be >= 3");
}

struct Vertex {
  std::vector<uint8_t> c;  // c[i] in [0, k)

  Vertex() = default;
  explicit Vertex(std::vector<uint8_t> digits) : c(std::move(digits)) {}
  Vertex(std::initializer_list<int> digits) {
    c.reserve(digits.size());
    for (int d : digits) c.push_back(static_cast<uint8_t>(d));
  }

  auto operator<=>(const Vertex&) const = default;
};

inline void validate_vertex(const CubeShape& s, const Vertex& v) {
  if (static_cast<int>(v.c.size()) != s.n)
    throw InputError("vertex: wrong digit count");
  for (uint8_t d : v.c)
    if (d >= s.k) throw InputError("vertex: digit out of range");
}

inline std::string to_string(const Vertex& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(int(v.c[i]));
  }
  return out + ")";
}

// Coordinate-sum parity; 2-colors the cube when k is even.
inline int parity(const CubeShape& s, const Vertex& v) {
  validate_vertex(s, v);
  int sum = 0;
  for (uint8_t d : v.c) sum += d;
  return sum & 1;
}

// Position (1-based) where u and v differ by +-1 mod k, or 0 if not adjacent.
inline int adjacent_dim(const CubeShape& s, const Vertex& u, const Vertex& v) {
  int where = 0;
  for (int i = 0; i < s.n; ++i) {
    if (u.c[i] == v.c[i]) continue;
    if (where != 0) return 0;  // differ in two positions
    int a = u.c[i], b = v.c[i];
    int diff = (a - b + s.k) % s.k;
    if (diff != 1 && diff != s.k - 1) return 0;
    where = i + 1;
  }
  return where;
}

inline std::vector<Vertex> neighbors(const CubeShape& s, const Vertex& v) {
  validate_vertex(s, v);
  std::vector<Vertex> out;
  out.reserve(2 * s.n);
  for (int i = 0; i < s.n; ++i) {
    for (int step : {1, s.k - 1}) {
      Vertex w = v;
      w.c[i] = static_cast<uint8_t>((v.c[i] + step) % s.k);
      if (w != v) out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Torus metric: sum over positions of the cyclic digit distance.
inline int distance(const CubeShape& s, const Vertex& u, const Vertex& v) {
  validate_vertex(s, u);
  validate_vertex(s, v);
  int d = 0;
  for (int i = 0; i < s.n; ++i) {
    int diff = std::abs(int(u.c[i]) - int(v.c[i]));
    d += std::min(diff, s.k - diff);
  }
  return d;
}

struct Edge {
  Vertex a, b;  // canonical: a < b
  int dim = 0;  // 1-based position where the endpoints differ

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b) <=> std::tie(y.a, y.b);
  }

  bool touches(const Vertex& v) const { return a == v || b == v; }
  const Vertex& other(const Vertex& v) const { return a == v ? b : a; }
};

inline Edge make_edge(const CubeShape& s, Vertex u, Vertex v) {
  validate_vertex(s, u);
  validate_vertex(s, v);
  int dim = adjacent_dim(s, u, v);
  if (dim == 0) throw InputError("edge: endpoints are not adjacent");
  if (v < u) std::swap(u, v);
  return Edge{std::move(u), std::move(v), dim};
}

inline std::string to_string(const Edge& e) {
  return to_string(e.a) + "-" + to_string(e.b);
}

struct Matching {
  std::vector<Edge> edges;  // sorted, canonical

  Matching() = default;
  explicit Matching(std::vector<Edge> es) : edges(std::move(es)) {
    std::sort(edges.begin(), edges.end());
  }

  size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  bool contains(const Edge& e) const {
    return std::binary_search(edges.begin(), edges.end(), e);
  }
  bool covers(const Vertex& v) const {
    for (const Edge& e : edges)
      if (e.touches(v)) return true;
    return false;
  }

  friend bool operator==(const Matching&, const Matching&) = default;
};

inline Matching make_matching(const CubeShape& s, const std::vector<Edge>& es) {
  Matching m{es};
  for (size_t i = 0; i < m.edges.size(); ++i) {
    const Edge& e = m.edges[i];
    if (adjacent_dim(s, e.a, e.b) != e.dim)
      throw InputError("matching: edge not valid for shape");
    if (i > 0 && m.edges[i - 1] == e) throw InputError("matching: duplicate edge");
  }
  for (size_t i = 0; i < m.edges.size(); ++i)
    for (size_t j = i + 1; j < m.edges.size(); ++j) {
      const Edge &e = m.edges[i], &f = m.edges[j];
      if (e.touches(f.a) || e.touches(f.b))
        throw InputError("matching: edges share vertex " +
                         to_string(e.touches(f.a) ? f.a : f.b));
    }
  return m;
}

// Edge set each of whose components is a path (degrees <= 2, acyclic).
inline bool is_linear_forest(const CubeShape& s, const std::vector<Edge>& es) {
  std::map<Vertex, int> deg;
  std::map<Vertex, Vertex> parent;
  std::function<Vertex(Vertex)> find = [&](Vertex v) {
    while (parent.count(v) && parent.at(v) != v) v = parent.at(v);
    return v;
  };
  for (const Edge& e : es) {
    if (adjacent_dim(s, e.a, e.b) != e.dim) return false;
    if (++deg[e.a] > 2 || ++deg[e.b] > 2) return false;
    if (!parent.count(e.a)) parent[e.a] = e.a;
    if (!parent.count(e.b)) parent[e.b] = e.b;
    Vertex ra = find(e.a), rb = find(e.b);
    if (ra == rb) return false;  // cycle
    parent[ra] = rb;
  }
  // duplicate edges caught as a cycle of length 2 by union-find above,
  // except identical copies; rule those out explicitly
  std::vector<Edge> sorted = es;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

// ---------------------------------------------------------------------------
// Indexed geometry.  Vertices pack into a single machine word (mixed-radix
// index); equality stays digit equality since the packing is a bijection.

using VertexId = uint32_t;

// Ids pack digits big-endian, so id order equals lexicographic order on
// digit strings; canonical "choose an edge such that ..." scans rely on it.
class Cube {
 public:
  explicit Cube(CubeShape s) : s_(s) {
    validate_shape(s);
    uint64_t c = s.vertex_count();
    if (c > (1ull << 31)) throw CapabilityError("cube too large to index");
    pow_.resize(s.n);
    pow_[s.n - 1] = 1;
    for (int i = s.n - 2; i >= 0; --i) pow_[i] = pow_[i + 1] * uint32_t(s.k);
    count_ = uint32_t(c);
  }

  const CubeShape& shape() const { return s_; }
  uint32_t count() const { return count_; }

  VertexId id_of(const Vertex& v) const {
    validate_vertex(s_, v);
    uint32_t id = 0;
    for (int i = 0; i < s_.n; ++i) id += uint32_t(v.c[i]) * pow_[i];
    return id;
  }

  Vertex at(VertexId id) const {
    Vertex v;
    v.c.resize(s_.n);
    for (int i = 0; i < s_.n; ++i)
      v.c[i] = static_cast<uint8_t>((id / pow_[i]) % uint32_t(s_.k));
    return v;
  }

  int digit(VertexId id, int pos0) const {
    return int((id / pow_[pos0]) % uint32_t(s_.k));
  }

  VertexId with_digit(VertexId id, int pos0, int val) const {
    return id + uint32_t(val - digit(id, pos0)) * pow_[pos0];
  }

  // One +-1 (mod k) step along position pos0.
  VertexId step(VertexId id, int pos0, int delta) const {
    int d = digit(id, pos0);
    int nd = ((d + delta) % s_.k + s_.k) % s_.k;
    return with_digit(id, pos0, nd);
  }

  void neighbors(VertexId id, std::vector<VertexId>& out) const {
    out.clear();
    for (int i = 0; i < s_.n; ++i) {
      out.push_back(step(id, i, 1));
      out.push_back(step(id, i, -1));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

  int parity(VertexId id) const {
    int sum = 0;
    for (int i = 0; i < s_.n; ++i) sum += digit(id, i);
    return sum & 1;
  }

  // 0-based differing position if adjacent, else -1.
  int edge_dim0(VertexId a, VertexId b) const {
    if (a == b) return -1;
    int where = -1;
    for (int i = 0; i < s_.n; ++i) {
      int da = digit(a, i), db = digit(b, i);
      if (da == db) continue;
      if (where >= 0) return -1;
      int diff = (da - db + s_.k) % s_.k;
      if (diff != 1 && diff != s_.k - 1) return -1;
      where = i;
    }
    return where;
  }

  bool adjacent(VertexId a, VertexId b) const { return edge_dim0(a, b) >= 0; }

  int dist(VertexId a, VertexId b) const {
    int d = 0;
    for (int i = 0; i < s_.n; ++i) {
      int diff = std::abs(digit(a, i) - digit(b, i));
      d += std::min(diff, s_.k - diff);
    }
    return d;
  }

 private:
  CubeShape s_;
  std::vector<uint32_t> pow_;
  uint32_t count_ = 0;
};

// ---------------------------------------------------------------------------
// Splits, labels and ranges.

struct SplitContext {
  CubeShape shape;
  int d = 1;          // split dimension, 1-based
  int rotation = 0;   // label offset; chosen so presented ranges never wrap
  bool flipped = false;

  int label_of_digit(int digit) const {
    int k = shape.k;
    return flipped ? ((rotation - digit) % k + k) % k
                   : ((digit - rotation) % k + k) % k;
  }
  int digit_of_label(int label) const {
    int k = shape.k;
    return flipped ? ((rotation - label) % k + k) % k
                   : ((label + rotation) % k + k) % k;
  }
  int label(const Vertex& v) const { return label_of_digit(v.c[d - 1]); }
  Vertex with_label(Vertex v, int l) const {
    v.c[d - 1] = static_cast<uint8_t>(digit_of_label(l));
    return v;
  }

  int label(const Cube& cube, VertexId v) const {
    return label_of_digit(cube.digit(v, d - 1));
  }
  VertexId with_label(const Cube& cube, VertexId v, int l) const {
    return cube.with_digit(v, d - 1, digit_of_label(l));
  }

  // Boundary index of a d-edge: i such that the edge joins labels i, i+1
  // (mod k); i = k-1 is the wrap boundary E_d(k-1, 0).
  int boundary_of(const Edge& e) const {
    int la = label(e.a), lb = label(e.b);
    if ((la + 1) % shape.k == lb) return la;
    return lb;
  }
};

inline SplitContext split(const CubeShape& s, int d) {
  validate_shape(s);
  if (d < 1 || d > s.n) throw InputError("split: dimension out of range");
  return SplitContext{s, d, 0, false};
}

struct RangeView {
  SplitContext ctx;
  int p = 0, q = 0;  // 0 <= p <= q <= k-1 in presented labels

  int width() const { return q - p; }
  RangeView sub(int np, int nq) const {
    RangeView v{ctx, np, nq};
    validate(v);
    return v;
  }
  // Same range presented from the other end: old label q maps to new p.
  RangeView reversed() const {
    SplitContext c = ctx;
    // label'(v) = p + q - label(v); realized by adjusting rotation and flip
    if (!ctx.flipped) {
      c.flipped = true;
      c.rotation = (ctx.rotation + p + q) % ctx.shape.k;
    } else {
      c.flipped = false;
      c.rotation = ((ctx.rotation - p - q) % ctx.shape.k + ctx.shape.k) % ctx.shape.k;
    }
    return RangeView{c, p, q};
  }

  static void validate(const RangeView& v) {
    if (v.p < 0 || v.q >= v.ctx.shape.k || v.p > v.q)
      throw InputError("range: need 0 <= p <= q <= k-1");
  }
};

inline RangeView make_range(const SplitContext& ctx, int p, int q) {
  RangeView v{ctx, p, q};
  RangeView::validate(v);
  return v;
}

// Restriction of a matching to subcubes and boundaries of a split.
struct MatchingSplit {
  std::vector<Matching> per_cube;      // M_i, indexed by presented label
  std::vector<Matching> per_boundary;  // M cap E_d(i, i+1 mod k)

  int crossings_total() const {
    int c = 0;
    for (const Matching& m : per_boundary) c += int(m.size());
    return c;
  }
  // M[p,q]: edges of M inside Q[p,q] (subcube edges plus in-range crossings).
  Matching in_range(int p, int q) const {
    std::vector<Edge> es;
    for (int i = p; i <= q; ++i)
      es.insert(es.end(), per_cube[i].edges.begin(), per_cube[i].edges.end());
    for (int i = p; i < q; ++i)
      es.insert(es.end(), per_boundary[i].edges.begin(), per_boundary[i].edges.end());
    return Matching{std::move(es)};
  }
};

inline MatchingSplit restrict_matching(const Matching& m, const SplitContext& ctx) {
  MatchingSplit out;
  out.per_cube.resize(ctx.shape.k);
  out.per_boundary.resize(ctx.shape.k);
  for (const Edge& e : m.edges) {
    if (e.dim == ctx.d) {
      out.per_boundary[ctx.boundary_of(e)].edges.push_back(e);
    } else {
      out.per_cube[ctx.label(e.a)].edges.push_back(e);
    }
  }
  return out;
}

// Smallest d with |M cap E_d| <= cap, no `avoid` edge a d-edge, minimizing
// |M cap E_d|; deterministic tie-break on d.  Lists all admissible d in
// preference order so callers can apply extra filters.
inline std::vector<int> split_dimension_candidates(const CubeShape& s, const Matching& m,
                                                   int cap, const std::vector<Edge>& avoid) {
  validate_shape(s);
  std::vector<int> count(s.n + 1, 0);
  std::vector<char> blocked(s.n + 1, 0);
  for (const Edge& e : m.edges) count[e.dim]++;
  for (const Edge& e : avoid) blocked[e.dim] = 1;
  std::vector<int> ds;
  for (int d = 1; d <= s.n; ++d)
    if (!blocked[d] && count[d] <= cap) ds.push_back(d);
  std::stable_sort(ds.begin(), ds.end(),
                   [&](int a, int b) { return count[a] < count[b]; });
  return ds;
}

inline int select_split_dimension(const CubeShape& s, const Matching& m, int cap,
                                  const std::vector<Edge>& avoid = {}) {
  auto ds = split_dimension_candidates(s, m, cap, avoid);
  if (ds.empty())
    throw PreconditionError("no split dimension with |M cap E_d| <= " +
                            std::to_string(cap));
  return ds.front();
}

// ---------------------------------------------------------------------------
// Automorphisms: position permutation composed with per-position digit maps
// x -> +-x + c (mod k).  Closed under composition, invertible, and exactly
// the normalizations the constructions need.

struct Transform {
  // result[i] = flip[i] ? (offset[i] - v[perm[i]]) : (v[perm[i]] + offset[i]), mod k
  std::vector<int> perm;
  std::vector<int> offset;
  std::vector<uint8_t> flip;

  static Transform identity(int n) {
    Transform t;
    t.perm.resize(n);
    std::iota(t.perm.begin(), t.perm.end(), 0);
    t.offset.assign(n, 0);
    t.flip.assign(n, 0);
    return t;
  }
};

inline void validate_transform(const CubeShape& s, const Transform& t) {
  if (int(t.perm.size()) != s.n || int(t.offset.size()) != s.n ||
      int(t.flip.size()) != s.n)
    throw InputError("transform: wrong arity");
  std::vector<char> seen(s.n, 0);
  for (int p : t.perm) {
    if (p < 0 || p >= s.n || seen[p]) throw InputError("transform: not a permutation");
    seen[p] = 1;
  }
  for (int o : t.offset)
    if (o < 0 || o >= s.k) throw InputError("transform: offset out of range");
}

inline Vertex apply_transform(const CubeShape& s, const Transform& t, const Vertex& v) {
  validate_vertex(s, v);
  Vertex w;
  w.c.resize(s.n);
  for (int i = 0; i < s.n; ++i) {
    int x = v.c[t.perm[i]];
    int y = t.flip[i] ? (t.offset[i] - x) : (x + t.offset[i]);
    w.c[i] = static_cast<uint8_t>(((y % s.k) + s.k) % s.k);
  }
  return w;
}

inline Edge apply_transform(const CubeShape& s, const Transform& t, const Edge& e) {
  return make_edge(s, apply_transform(s, t, e.a), apply_transform(s, t, e.b));
}

inline Matching apply_transform(const CubeShape& s, const Transform& t, const Matching& m) {
  std::vector<Edge> es;
  es.reserve(m.edges.size());
  for (const Edge& e : m.edges) es.push_back(apply_transform(s, t, e));
  return Matching{std::move(es)};
}

inline Transform compose(const CubeShape& s, const Transform& t2, const Transform& t1) {
  // (t2 * t1)(v) = t2(t1(v))
  Transform r;
  r.perm.resize(s.n);
  r.offset.resize(s.n);
  r.flip.resize(s.n);
  for (int i = 0; i < s.n; ++i) {
    int j = t2.perm[i];  // t1 output position feeding t2 position i
    r.perm[i] = t1.perm[j];
    int s1 = t1.flip[j] ? -1 : 1;
    int s2 = t2.flip[i] ? -1 : 1;
    r.flip[i] = (s1 * s2 < 0) ? 1 : 0;
    int c = s2 * t1.offset[j] + t2.offset[i];
    r.offset[i] = ((c % s.k) + s.k) % s.k;
  }
  return r;
}

inline Transform inverse(const CubeShape& s, const Transform& t) {
  Transform r;
  r.perm.resize(s.n);
  r.offset.resize(s.n);
  r.flip.resize(s.n);
  for (int i = 0; i < s.n; ++i) {
    int j = t.perm[i];
    r.perm[j] = i;
    r.flip[j] = t.flip[i];
    r.offset[j] = t.flip[i] ? t.offset[i] : ((s.k - t.offset[i]) % s.k);
  }
  return r;
}

inline Transform random_transform(const CubeShape& s, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Transform t = Transform::identity(s.n);
  std::shuffle(t.perm.begin(), t.perm.end(), rng);
  for (int i = 0; i < s.n; ++i) {
    t.offset[i] = int(rng() % uint64_t(s.k));
    t.flip[i] = rng() & 1;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Regions: the whole cube, or a label range of one split, optionally minus a
// forbidden vertex set.  The common ground between certify, search and the
// provider contracts.

struct Region {
  CubeShape shape;
  std::optional<RangeView> range;   // whole cube when absent
  std::vector<Vertex> forbidden;    // sorted, unique

  static Region whole(CubeShape s) {
    validate_shape(s);
    return Region{s, std::nullopt, {}};
  }
  static Region of_range(const RangeView& v) {
    RangeView::validate(v);
    return Region{v.ctx.shape, v, {}};
  }
  Region minus(std::vector<Vertex> forbid) const {
    Region r = *this;
    r.forbidden.insert(r.forbidden.end(), forbid.begin(), forbid.end());
    std::sort(r.forbidden.begin(), r.forbidden.end());
    r.forbidden.erase(std::unique(r.forbidden.begin(), r.forbidden.end()),
                      r.forbidden.end());
    return r;
  }
};

class BoundRegion {
 public:
  BoundRegion(const Cube& cube, const Region& r) : cube_(cube), r_(r) {
    if (!(cube.shape() == r.shape)) throw InputError("region: shape mismatch");
    in_.assign(cube.count(), 1);
    if (r.range) {
      const RangeView& v = *r.range;
      for (VertexId id = 0; id < cube.count(); ++id) {
        int l = v.ctx.label(cube, id);
        if (l < v.p || l > v.q) in_[id] = 0;
      }
    }
    for (const Vertex& f : r.forbidden) {
      validate_vertex(cube.shape(), f);
      in_[cube.id_of(f)] = 0;
    }
    for (VertexId id = 0; id < cube.count(); ++id)
      if (in_[id]) verts_.push_back(id);
  }

  const Cube& cube() const { return cube_; }
  const Region& region() const { return r_; }
  bool contains(VertexId id) const { return in_[id] != 0; }
  const std::vector<VertexId>& vertices() const { return verts_; }

  // Both endpoints inside and, for ranges, crossing edges only between
  // consecutive in-range labels (never the wrap boundary).
  bool edge_ok(VertexId a, VertexId b) const {
    if (!in_[a] || !in_[b]) return false;
    int dim0 = cube_.edge_dim0(a, b);
    if (dim0 < 0) return false;
    if (r_.range && dim0 == r_.range->ctx.d - 1) {
      int la = r_.range->ctx.label(cube_, a);
      int lb = r_.range->ctx.label(cube_, b);
      if (la > lb) std::swap(la, lb);
      return lb - la == 1 && la >= r_.range->p && lb <= r_.range->q;
    }
    return true;
  }

 private:
  const Cube& cube_;
  Region r_;
  std::vector<char> in_;
  std::vector<VertexId> verts_;
};

}  // namespace kcube
