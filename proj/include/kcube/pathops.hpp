#pragma once

// Path surgery primitives shared by the provider decompositions and the
// lemma constructions: an edge-soup assembler (union of paths plus bridge
// edges minus removed edges, re-extracted as paths or one cycle), indexed
// views over a single path or cycle, and subcube projection.

#include <algorithm>
#include <array>
#include <vector>

#include "kcube/cube.hpp"

namespace kcube {

using Seq = std::vector<VertexId>;

inline std::vector<std::pair<VertexId, VertexId>> edges_of(const Seq& s) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (size_t i = 0; i + 1 < s.size(); ++i) out.push_back({s[i], s[i + 1]});
  return out;
}

// Degree-<=2 multigraph accumulator.  All constructions assemble their result
// here: add constituent paths, add bridge edges, remove re-routed edges and
// deleted vertices, then extract and let certify judge the outcome.
class EdgeSoup {
 public:
  explicit EdgeSoup(uint32_t universe) : nb_(universe, {-1, -1}), alive_(universe, 0) {}

  void add_seq(const Seq& s) {
    if (s.empty()) throw ConsistencyError("soup: empty constituent path");
    touch(s[0]);
    for (size_t i = 0; i + 1 < s.size(); ++i) add_edge(s[i], s[i + 1]);
  }

  void add_edge(VertexId a, VertexId b) {
    touch(a);
    touch(b);
    link(a, b);
    link(b, a);
  }

  void remove_edge(VertexId a, VertexId b) {
    unlink(a, b);
    unlink(b, a);
  }

  void remove_vertex(VertexId v) {
    for (int64_t w : nb_[v])
      if (w >= 0) unlink(VertexId(w), v);
    nb_[v] = {-1, -1};
    alive_[v] = 0;
  }

  int degree(VertexId v) const {
    return (nb_[v][0] >= 0 ? 1 : 0) + (nb_[v][1] >= 0 ? 1 : 0);
  }

  // All alive vertices arranged into vertex-disjoint paths (isolated alive
  // vertices come out as single-vertex paths).  Throws if a cycle is present.
  std::vector<Seq> paths() const {
    std::vector<Seq> out;
    std::vector<char> used(nb_.size(), 0);
    std::vector<VertexId> order = sorted_touched();
    for (VertexId v : order) {
      if (used[v] || degree(v) > 1) continue;
      out.push_back(walk_from(v, used));
    }
    for (VertexId v : order)
      if (!used[v]) throw ConsistencyError("soup: cycle where paths expected");
    return out;
  }

  // All alive vertices arranged into one cycle.
  Seq cycle() const {
    std::vector<VertexId> order = sorted_touched();
    if (order.empty()) throw ConsistencyError("soup: empty cycle");
    for (VertexId v : order)
      if (degree(v) != 2) throw ConsistencyError("soup: open ends where cycle expected");
    std::vector<char> used(nb_.size(), 0);
    Seq walk;
    VertexId v = order.front();
    int64_t prev = -1;
    while (!used[v]) {
      used[v] = 1;
      walk.push_back(v);
      int64_t next = (nb_[v][0] != prev) ? nb_[v][0] : nb_[v][1];
      prev = v;
      v = VertexId(next);
    }
    if (walk.size() != order.size())
      throw ConsistencyError("soup: multiple cycles where one expected");
    if (VertexId(prev) != walk.back() || v != walk.front())
      throw ConsistencyError("soup: malformed cycle");
    return walk;
  }

 private:
  void touch(VertexId v) {
    if (!alive_[v]) {
      alive_[v] = 1;
      touched_.push_back(v);
    }
  }

  void link(VertexId v, VertexId w) {
    auto& s = nb_[v];
    if (s[0] == int64_t(w) || s[1] == int64_t(w))
      throw ConsistencyError("soup: duplicate edge");
    if (s[0] < 0) s[0] = w;
    else if (s[1] < 0) s[1] = w;
    else throw ConsistencyError("soup: vertex degree exceeds 2");
  }

  void unlink(VertexId v, VertexId w) {
    auto& s = nb_[v];
    if (s[0] == int64_t(w)) s[0] = -1;
    else if (s[1] == int64_t(w)) s[1] = -1;
    else throw ConsistencyError("soup: removing absent edge");
  }

  std::vector<VertexId> sorted_touched() const {
    std::vector<VertexId> order;
    order.reserve(touched_.size());
    for (VertexId v : touched_)
      if (alive_[v]) order.push_back(v);
    std::sort(order.begin(), order.end());
    return order;
  }

  Seq walk_from(VertexId v, std::vector<char>& used) const {
    Seq walk;
    int64_t prev = -1;
    int64_t cur = v;
    while (cur >= 0 && !used[cur]) {
      used[cur] = 1;
      walk.push_back(VertexId(cur));
      const auto& s = nb_[cur];
      int64_t next = (s[0] != prev && s[0] >= 0) ? s[0] : (s[1] != prev ? s[1] : -1);
      prev = cur;
      cur = next;
    }
    return walk;
  }

  std::vector<std::array<int64_t, 2>> nb_;
  std::vector<char> alive_;
  std::vector<VertexId> touched_;
};

// Indexed view over one path: positions, path-neighbors, subpaths, path
// metric, and the "neighbor closer to x" selector the constructions use.
class PathView {
 public:
  PathView(uint32_t universe, Seq s) : seq_(std::move(s)), pos_(universe, -1) {
    for (int i = 0; i < int(seq_.size()); ++i) pos_[seq_[i]] = i;
  }

  const Seq& seq() const { return seq_; }
  bool contains(VertexId v) const { return pos_[v] >= 0; }
  int pos(VertexId v) const { return pos_[v]; }
  VertexId front() const { return seq_.front(); }
  VertexId back() const { return seq_.back(); }

  std::vector<VertexId> nbrs_on(VertexId v) const {
    std::vector<VertexId> out;
    int i = pos_[v];
    if (i > 0) out.push_back(seq_[i - 1]);
    if (i + 1 < int(seq_.size())) out.push_back(seq_[i + 1]);
    return out;
  }

  // Neighbor of u on the subpath toward `target` ("closer to x").
  VertexId nbr_toward(VertexId u, VertexId target) const {
    int iu = pos_[u], it = pos_[target];
    return it < iu ? seq_[iu - 1] : seq_[iu + 1];
  }

  int path_dist(VertexId a, VertexId b) const { return std::abs(pos_[a] - pos_[b]); }
  int path_dist_to_edge(VertexId a, VertexId u, VertexId v) const {
    return std::min(path_dist(a, u), path_dist(a, v));
  }

  Seq subpath(VertexId a, VertexId b) const {
    int ia = pos_[a], ib = pos_[b];
    Seq out;
    int step = ia <= ib ? 1 : -1;
    for (int i = ia; i != ib + step; i += step) out.push_back(seq_[i]);
    return out;
  }

 private:
  Seq seq_;
  std::vector<int32_t> pos_;
};

// Indexed view over one cycle.
class CycleView {
 public:
  CycleView(uint32_t universe, Seq s) : seq_(std::move(s)), pos_(universe, -1) {
    for (int i = 0; i < int(seq_.size()); ++i) pos_[seq_[i]] = i;
  }

  const Seq& seq() const { return seq_; }
  int size() const { return int(seq_.size()); }
  bool contains(VertexId v) const { return pos_[v] >= 0; }
  VertexId at(int i) const { return seq_[((i % size()) + size()) % size()]; }
  int pos(VertexId v) const { return pos_[v]; }

  std::array<VertexId, 2> nbrs_on(VertexId v) const {
    int i = pos_[v];
    return {at(i - 1), at(i + 1)};
  }

  VertexId successor(VertexId v) const { return at(pos_[v] + 1); }

  int cyc_dist(VertexId a, VertexId b) const {
    int d = std::abs(pos_[a] - pos_[b]);
    return std::min(d, size() - d);
  }
  int cyc_dist_to_edge(VertexId a, VertexId u, VertexId v) const {
    return std::min(cyc_dist(a, u), cyc_dist(a, v));
  }

 private:
  Seq seq_;
  std::vector<int32_t> pos_;
};

// Q[label] of a split, presented as its own (n-1)-dimensional cube.
class Projection {
 public:
  Projection(const Cube& parent, const SplitContext& ctx, int label)
      : parent_(parent),
        ctx_(ctx),
        label_(label),
        child_(CubeShape{parent.shape().n - 1, parent.shape().k}) {
    if (parent.shape().n < 2) throw InputError("projection: cannot drop last dimension");
  }

  const Cube& child() const { return child_; }
  int label() const { return label_; }

  Vertex to_child(const Vertex& v) const {
    Vertex w;
    w.c = v.c;
    w.c.erase(w.c.begin() + (ctx_.d - 1));
    return w;
  }
  Vertex to_parent(const Vertex& v) const {
    Vertex w;
    w.c = v.c;
    w.c.insert(w.c.begin() + (ctx_.d - 1), uint8_t(ctx_.digit_of_label(label_)));
    return w;
  }
  VertexId to_child(VertexId id) const { return child_.id_of(to_child(parent_.at(id))); }
  VertexId to_parent(VertexId id) const { return parent_.id_of(to_parent(child_.at(id))); }

  Matching to_child(const Matching& m) const {
    std::vector<Edge> es;
    for (const Edge& e : m.edges)
      es.push_back(make_edge(child_.shape(), to_child(e.a), to_child(e.b)));
    return Matching{std::move(es)};
  }
  Edge to_parent(const Edge& e) const {
    return make_edge(parent_.shape(), to_parent(e.a), to_parent(e.b));
  }

  Seq seq_to_parent(const Seq& s) const {
    Seq out;
    out.reserve(s.size());
    for (VertexId v : s) out.push_back(to_parent(v));
    return out;
  }

 private:
  const Cube& parent_;
  SplitContext ctx_;
  int label_;
  Cube child_;
};

}  // namespace kcube
