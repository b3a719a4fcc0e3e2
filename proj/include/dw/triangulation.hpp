#pragma once

#include "dw/error.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

namespace dw {

using Vertex = std::uint32_t;
using Edge = std::array<Vertex, 2>;
using Triangle = std::array<Vertex, 3>;
using Tet = std::array<Vertex, 4>;

/// Oriented edge <tail, head>; the reverse edge is {head, tail}.
struct OrientedEdge {
  Vertex tail;
  Vertex head;

  OrientedEdge reversed() const noexcept { return {head, tail}; }
  bool is_positive() const noexcept { return tail < head; }
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

namespace detail {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

template <std::size_t N>
std::string simplex_string(const std::array<Vertex, N>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < N; ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + ")";
}

template <std::size_t N>
std::array<Vertex, N - 1> omit(const std::array<Vertex, N>& s, std::size_t j) {
  std::array<Vertex, N - 1> f{};
  for (std::size_t i = 0, o = 0; i < N; ++i)
    if (i != j) f[o++] = s[i];
  return f;
}

/// Sign of the permutation that sorts `s` (entries distinct).
template <std::size_t N>
int sort_sign(std::array<Vertex, N>& s) {
  int sign = 1;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j + 1 < N - i; ++j)
      if (s[j] > s[j + 1]) {
        std::swap(s[j], s[j + 1]);
        sign = -sign;
      }
  return sign;
}

}  // namespace detail

/// Closed, connected, orientable simplicial 3-manifold with ordered vertices.
///
/// Tetrahedra keep their input order; each is stored with ascending
/// vertices. `signs()[i]` is +1 when the ascending order of tetrahedron i
/// agrees with the manifold orientation. Every instance has passed the full
/// validation in `build`, and is immutable afterwards.
class Triangulation {
public:
  /// Validates and orients with tetrahedron 0 positive.
  static Triangulation from_tets(std::size_t vertex_count, std::vector<Tet> tets) {
    return build(vertex_count, std::move(tets), 0, +1);
  }

  /// Validates and orients so that tetrahedron `anchor` gets sign
  /// `anchor_sign`.
  static Triangulation from_tets(std::size_t vertex_count, std::vector<Tet> tets,
                                 std::size_t anchor, int anchor_sign) {
    return build(vertex_count, std::move(tets), anchor, anchor_sign);
  }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Tet>& tets() const noexcept { return tets_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  const std::vector<int>& signs() const noexcept { return signs_; }

  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const {
    if (a > b) std::swap(a, b);
    const Edge e{a, b};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  std::optional<std::size_t> triangle_index(Triangle t) const {
    std::sort(t.begin(), t.end());
    auto it = std::lower_bound(triangles_.begin(), triangles_.end(), t);
    if (it == triangles_.end() || *it != t) return std::nullopt;
    return static_cast<std::size_t>(it - triangles_.begin());
  }

  bool has_tet(Tet t) const {
    std::sort(t.begin(), t.end());
    return std::find(tets_.begin(), tets_.end(), t) != tets_.end();
  }

  /// Indices of the tetrahedra containing `t`; empty if `t` is not a face.
  std::vector<std::size_t> tets_containing(const Triangle& t) const {
    auto idx = triangle_index(t);
    if (!idx) return {};
    return {triangle_tets_[*idx][0], triangle_tets_[*idx][1]};
  }

  /// Edge indices (v0v1, v1v2, v0v2) of triangle i.
  const std::array<std::size_t, 3>& triangle_edges(std::size_t i) const { return triangle_edges_[i]; }

  /// Edge indices of all six edges of tetrahedron i, ordered
  /// 01, 02, 03, 12, 13, 23 by vertex position.
  const std::array<std::size_t, 6>& tet_edges(std::size_t i) const { return tet_edges_[i]; }

  /// Number of tetrahedra containing each vertex.
  std::vector<std::size_t> vertex_degrees() const {
    std::vector<std::size_t> deg(vertex_count_, 0);
    for (const Tet& t : tets_)
      for (Vertex v : t) ++deg[v];
    return deg;
  }

  long long euler_characteristic() const {
    return static_cast<long long>(vertex_count_) - static_cast<long long>(edges_.size()) +
           static_cast<long long>(triangles_.size()) - static_cast<long long>(tets_.size());
  }

  /// Same manifold and orientation, with vertex i renamed perm[i].
  Triangulation relabeled(const std::vector<Vertex>& perm) const {
    if (perm.size() != vertex_count_)
      throw Error("InvalidPermutation", "permutation has " + std::to_string(perm.size()) +
                                            " entries, expected " + std::to_string(vertex_count_));
    std::vector<char> hit(vertex_count_, 0);
    for (Vertex p : perm) {
      if (p >= vertex_count_ || hit[p])
        throw Error("InvalidPermutation", "relabeling is not a permutation of 0.." +
                                              std::to_string(vertex_count_ - 1));
      hit[p] = 1;
    }
    std::vector<Tet> out(tets_.size());
    int sign0 = 1;
    for (std::size_t i = 0; i < tets_.size(); ++i) {
      Tet t{perm[tets_[i][0]], perm[tets_[i][1]], perm[tets_[i][2]], perm[tets_[i][3]]};
      const int s = detail::sort_sign(t);
      if (i == 0) sign0 = s * signs_[0];
      out[i] = t;
    }
    return build(vertex_count_, std::move(out), 0, sign0);
  }

  /// Opposite orientation: every sign negated.
  Triangulation reversed() const {
    Triangulation r = *this;
    for (int& s : r.signs_) s = -s;
    return r;
  }

  /// Text serialization readable by parse_triangulation.
  std::string serialize() const {
    std::ostringstream os;
    os << "dim 3\nvertices " << vertex_count_ << "\n";
    for (const Tet& t : tets_) os << "tet " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << "\n";
    return os.str();
  }

  friend bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.vertex_count_ == b.vertex_count_ && a.tets_ == b.tets_ && a.signs_ == b.signs_;
  }

private:
  Triangulation() = default;

  static Triangulation build(std::size_t vertex_count, std::vector<Tet> tets, std::size_t anchor,
                             int anchor_sign) {
    Triangulation t;
    t.vertex_count_ = vertex_count;
    if (tets.empty()) throw Error("OpenBoundary", "triangulation has no tetrahedra");

    for (Tet& tet : tets) {
      for (Vertex v : tet)
        if (v >= vertex_count)
          throw Error("VertexOutOfRange", "tetrahedron " + detail::simplex_string(tet) +
                                              " uses a vertex >= " + std::to_string(vertex_count));
      std::sort(tet.begin(), tet.end());
      if (std::adjacent_find(tet.begin(), tet.end()) != tet.end())
        throw Error("RepeatedVertexInTet", "tetrahedron " + detail::simplex_string(tet) + " repeats a vertex");
    }
    {
      std::vector<Tet> sorted = tets;
      std::sort(sorted.begin(), sorted.end());
      if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end())
        throw Error("DuplicateTet", "tetrahedron " + detail::simplex_string(*it) + " appears twice");
    }
    t.tets_ = std::move(tets);
    t.index_faces();
    t.check_closed();
    t.check_vertex_links();
    t.check_connected();
    t.orient(anchor, anchor_sign);
    return t;
  }

  void index_faces() {
    for (const Tet& tet : tets_) {
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) edges_.push_back({tet[i], tet[j]});
      for (std::size_t j = 0; j < 4; ++j) triangles_.push_back(detail::omit(tet, j));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    std::sort(triangles_.begin(), triangles_.end());
    triangles_.erase(std::unique(triangles_.begin(), triangles_.end()), triangles_.end());

    triangle_edges_.resize(triangles_.size());
    for (std::size_t i = 0; i < triangles_.size(); ++i) {
      const Triangle& f = triangles_[i];
      triangle_edges_[i] = {*edge_index(f[0], f[1]), *edge_index(f[1], f[2]), *edge_index(f[0], f[2])};
    }
    tet_edges_.resize(tets_.size());
    for (std::size_t i = 0; i < tets_.size(); ++i) {
      const Tet& v = tets_[i];
      tet_edges_[i] = {*edge_index(v[0], v[1]), *edge_index(v[0], v[2]), *edge_index(v[0], v[3]),
                       *edge_index(v[1], v[2]), *edge_index(v[1], v[3]), *edge_index(v[2], v[3])};
    }
  }

  void check_closed() {
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    triangle_tets_.assign(triangles_.size(), {none, none});
    std::vector<std::size_t> count(triangles_.size(), 0);
    for (std::size_t i = 0; i < tets_.size(); ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const std::size_t f = *triangle_index(detail::omit(tets_[i], j));
        if (count[f] < 2) triangle_tets_[f][count[f]] = i;
        ++count[f];
      }
    for (std::size_t f = 0; f < triangles_.size(); ++f)
      if (count[f] != 2)
        throw Error("OpenBoundary", "triangle " + detail::simplex_string(triangles_[f]) + " lies in " +
                                        std::to_string(count[f]) + " tetrahedra, expected 2");
  }

  // Each vertex link must be a connected closed surface with Euler
  // characteristic 2 whose vertices are manifold points (every edge link a
  // single cycle).
  void check_vertex_links() const {
    std::vector<std::vector<std::size_t>> star(vertex_count_);
    for (std::size_t i = 0; i < tets_.size(); ++i)
      for (Vertex v : tets_[i]) star[v].push_back(i);

    for (Vertex v = 0; v < vertex_count_; ++v) {
      const auto fail = [&](const std::string& why) {
        throw Error("NonManifoldVertex", "link of vertex " + std::to_string(v) + " " + why);
      };
      if (star[v].empty()) fail("is empty (vertex unused)");
      std::vector<Vertex> lv;
      std::vector<Edge> le;
      for (std::size_t ti : star[v]) {
        std::array<Vertex, 3> f{};
        for (std::size_t i = 0, o = 0; i < 4; ++i)
          if (tets_[ti][i] != v) f[o++] = tets_[ti][i];
        lv.insert(lv.end(), f.begin(), f.end());
        le.push_back({f[0], f[1]});
        le.push_back({f[0], f[2]});
        le.push_back({f[1], f[2]});
      }
      std::sort(lv.begin(), lv.end());
      lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
      std::sort(le.begin(), le.end());
      le.erase(std::unique(le.begin(), le.end()), le.end());
      const long long chi = static_cast<long long>(lv.size()) - static_cast<long long>(le.size()) +
                            static_cast<long long>(star[v].size());
      if (chi != 2) fail("has Euler characteristic " + std::to_string(chi) + ", expected 2");

      auto local = [&](Vertex w) {
        return static_cast<std::size_t>(std::lower_bound(lv.begin(), lv.end(), w) - lv.begin());
      };
      detail::UnionFind uf(lv.size());
      std::size_t comps = lv.size();
      for (const Edge& e : le)
        if (uf.unite(local(e[0]), local(e[1]))) --comps;
      if (comps != 1) fail("is disconnected");

      // link of w inside link(v): the edges opposite w in triangles of link(v)
      for (Vertex w : lv) {
        std::vector<Edge> ring;
        for (std::size_t ti : star[v]) {
          const Tet& tet = tets_[ti];
          if (std::find(tet.begin(), tet.end(), w) == tet.end()) continue;
          Edge e{};
          for (std::size_t i = 0, o = 0; i < 4; ++i)
            if (tet[i] != v && tet[i] != w) e[o++] = tet[i];
          ring.push_back(e);
        }
        std::vector<Vertex> rv;
        for (const Edge& e : ring) rv.insert(rv.end(), e.begin(), e.end());
        std::sort(rv.begin(), rv.end());
        rv.erase(std::unique(rv.begin(), rv.end()), rv.end());
        detail::UnionFind ruf(rv.size());
        std::size_t rc = rv.size();
        auto rl = [&](Vertex x) {
          return static_cast<std::size_t>(std::lower_bound(rv.begin(), rv.end(), x) - rv.begin());
        };
        for (const Edge& e : ring)
          if (ruf.unite(rl(e[0]), rl(e[1]))) --rc;
        if (rc != 1 || rv.size() != ring.size())
          fail("is singular at vertex " + std::to_string(w) + " (edge link is not a single cycle)");
      }
    }
  }

  void check_connected() const {
    detail::UnionFind uf(tets_.size());
    std::size_t comps = tets_.size();
    for (const auto& pair : triangle_tets_)
      if (uf.unite(pair[0], pair[1])) --comps;
    if (comps != 1)
      throw Error("Disconnected", "tetrahedra form " + std::to_string(comps) + " components");
  }

  // Coherent orientation: across each shared triangle the induced boundary
  // orientations are opposite. Omitting position j of an ascending
  // tetrahedron induces sign (-1)^j on that face.
  void orient(std::size_t anchor, int anchor_sign) {
    if (anchor >= tets_.size()) throw Error("InvalidAnchor", "orientation anchor out of range");
    signs_.assign(tets_.size(), 0);
    signs_[anchor] = anchor_sign >= 0 ? 1 : -1;
    std::queue<std::size_t> queue;
    queue.push(anchor);
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop();
      for (std::size_t j = 0; j < 4; ++j) {
        const Triangle f = detail::omit(tets_[i], j);
        const auto& pair = triangle_tets_[*triangle_index(f)];
        const std::size_t n = pair[0] == i ? pair[1] : pair[0];
        const std::size_t jn = position_of_missing(tets_[n], f);
        const int parity = ((j + jn) % 2 == 0) ? 1 : -1;
        const int want = -signs_[i] * parity;
        if (signs_[n] == 0) {
          signs_[n] = want;
          queue.push(n);
        } else if (signs_[n] != want) {
          throw Error("NonOrientable", "orientation conflict across triangle " + detail::simplex_string(f));
        }
      }
    }
  }

  static std::size_t position_of_missing(const Tet& tet, const Triangle& f) {
    for (std::size_t j = 0; j < 4; ++j)
      if (std::find(f.begin(), f.end(), tet[j]) == f.end()) return j;
    return 4;
  }

  std::size_t vertex_count_ = 0;
  std::vector<Tet> tets_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::vector<std::array<std::size_t, 2>> triangle_tets_;
  std::vector<std::array<std::size_t, 3>> triangle_edges_;
  std::vector<std::array<std::size_t, 6>> tet_edges_;
  std::vector<int> signs_;
};

inline const std::vector<int>& orientation_signs(const Triangulation& t) { return t.signs(); }
inline const std::vector<Edge>& edges_of(const Triangulation& t) { return t.edges(); }
inline const std::vector<Triangle>& triangles_of(const Triangulation& t) { return t.triangles(); }
inline std::vector<std::size_t> tets_containing(const Triangulation& t, const Triangle& f) {
  return t.tets_containing(f);
}

}  // namespace dw
