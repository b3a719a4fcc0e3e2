#pragma once

#include "dw/group.hpp"
#include "dw/rational.hpp"
#include "dw/triangulation.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <thread>
#include <vector>

namespace dw {

/// Group elements on the positive edges (i < j) of a triangulation, indexed
/// like `Triangulation::edges()`. Reversed edges read the inverse.
struct FlatColoring {
  std::vector<Element> assignment;

  Element value(const Triangulation& t, const FiniteGroup& g, OrientedEdge e) const {
    const auto idx = t.edge_index(e.tail, e.head);
    if (!idx) throw Error("NoSuchEdge", "<" + std::to_string(e.tail) + "," + std::to_string(e.head) + "> is not an edge");
    const Element x = assignment[*idx];
    return e.is_positive() ? x : g.inv(x);
  }
};

struct FlatnessCheck {
  bool flat = true;
  std::optional<Triangle> witness;
};

/// Checks phi(v0,v2) = phi(v0,v1) * phi(v1,v2) on every triangle v0<v1<v2;
/// the witness is the first failing triangle in sorted order.
inline FlatnessCheck is_flat(const Triangulation& t, const FiniteGroup& g,
                             std::span<const Element> assignment) {
  if (assignment.size() != t.edges().size())
    throw Error("InvalidColoring", "assignment covers " + std::to_string(assignment.size()) +
                                       " edges, triangulation has " + std::to_string(t.edges().size()));
  for (Element x : assignment)
    if (x >= g.order()) throw Error("InvalidColoring", "assignment uses an element outside the group");
  for (std::size_t f = 0; f < t.triangles().size(); ++f) {
    const auto& e = t.triangle_edges(f);
    if (assignment[e[2]] != g.mul(assignment[e[0]], assignment[e[1]])) return {false, t.triangles()[f]};
  }
  return {};
}

/// Which colorings an enumeration visits.
enum class Gauge {
  /// Every flat coloring, exactly once.
  None,
  /// Only colorings that are the identity on a fixed spanning tree of the
  /// 1-skeleton. Each flat coloring is gauge-equivalent to exactly one of
  /// these under a vertex labeling with s(0) = e, so the full set is
  /// |G|^(a-1) times larger.
  TreeFixed,
};

/// Depth-first enumerator of flat colorings with constraint propagation.
///
/// The edge order is fixed up front: whenever some triangle has two assigned
/// edges its third edge is taken next and its value is forced; otherwise the
/// lowest-index unassigned edge branches over all group elements in
/// ascending order. Each triangle is checked as soon as its last edge is
/// assigned, which prunes dead branches immediately.
class FlatEnumerator {
public:
  FlatEnumerator(const Triangulation& t, const FiniteGroup& g, Gauge gauge = Gauge::None)
      : tri_(&t), group_(&g) {
    plan(gauge);
  }

  /// Number of independent subtrees: |G| if some edge is free, else 1.
  std::size_t branch_count() const noexcept { return first_free_ ? group_->order() : 1; }

  /// Calls visit(span<const Element>) for each coloring, in deterministic order.
  template <class Visit>
  void for_each(Visit&& visit) const {
    for (std::size_t b = 0; b < branch_count(); ++b) for_each_in_branch(b, visit);
  }

  /// Colorings whose first free edge carries element `branch`.
  template <class Visit>
  void for_each_in_branch(std::size_t branch, Visit&& visit) const {
    std::vector<Element> assignment(tri_->edges().size(), 0);
    descend(0, branch, assignment, visit);
  }

  std::size_t free_edge_count() const noexcept {
    std::size_t n = 0;
    for (const Step& s : steps_) n += s.kind == StepKind::Free;
    return n;
  }

private:
  enum class StepKind { Fixed, Forced, Free };
  struct Step {
    std::size_t edge;
    StepKind kind;
    std::size_t triangle = 0;       // forcing triangle when kind == Forced
    std::vector<std::size_t> checks;  // triangles completed by this step
  };

  void plan(Gauge gauge) {
    const Triangulation& t = *tri_;
    const std::size_t E = t.edges().size();
    std::vector<char> assigned(E, 0);

    if (gauge == Gauge::TreeFixed) {
      // BFS tree from vertex 0 over ascending neighbors
      std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(t.vertex_count());
      for (std::size_t i = 0; i < E; ++i) {
        adj[t.edges()[i][0]].push_back({t.edges()[i][1], i});
        adj[t.edges()[i][1]].push_back({t.edges()[i][0], i});
      }
      std::vector<char> seen(t.vertex_count(), 0);
      std::queue<Vertex> q;
      q.push(0);
      seen[0] = 1;
      while (!q.empty()) {
        const Vertex v = q.front();
        q.pop();
        for (auto [w, e] : adj[v])
          if (!seen[w]) {
            seen[w] = 1;
            q.push(w);
            steps_.push_back({e, StepKind::Fixed, 0, {}});
            assigned[e] = 1;
          }
      }
    }

    std::vector<std::size_t> missing(t.triangles().size(), 3);
    std::vector<std::vector<std::size_t>> edge_tris(E);
    for (std::size_t f = 0; f < t.triangles().size(); ++f)
      for (std::size_t e : t.triangle_edges(f)) edge_tris[e].push_back(f);
    for (std::size_t f = 0; f < t.triangles().size(); ++f)
      for (std::size_t e : t.triangle_edges(f)) missing[f] -= assigned[e];

    std::queue<std::size_t> ready;  // triangles with exactly one unassigned edge
    for (std::size_t f = 0; f < missing.size(); ++f)
      if (missing[f] == 1) ready.push(f);

    auto take = [&](std::size_t e) {
      assigned[e] = 1;
      for (std::size_t f : edge_tris[e]) {
        if (--missing[f] == 1) ready.push(f);
      }
    };
    std::size_t next_free = 0;
    std::size_t placed = steps_.size();
    while (placed < E) {
      std::optional<std::size_t> forced_edge;
      std::size_t forcing = 0;
      while (!ready.empty() && !forced_edge) {
        const std::size_t f = ready.front();
        ready.pop();
        if (missing[f] != 1) continue;
        for (std::size_t e : t.triangle_edges(f))
          if (!assigned[e]) {
            forced_edge = e;
            forcing = f;
          }
      }
      if (forced_edge) {
        steps_.push_back({*forced_edge, StepKind::Forced, forcing, {}});
        take(*forced_edge);
      } else {
        while (assigned[next_free]) ++next_free;
        if (!first_free_) first_free_ = steps_.size();
        steps_.push_back({next_free, StepKind::Free, 0, {}});
        take(next_free);
      }
      ++placed;
    }

    std::vector<std::size_t> position(E);
    for (std::size_t s = 0; s < steps_.size(); ++s) position[steps_[s].edge] = s;
    for (std::size_t f = 0; f < t.triangles().size(); ++f) {
      const auto& e = t.triangle_edges(f);
      const std::size_t last = std::max({position[e[0]], position[e[1]], position[e[2]]});
      if (steps_[last].kind == StepKind::Forced && steps_[last].triangle == f) continue;
      steps_[last].checks.push_back(f);
    }
  }

  template <class Visit>
  void descend(std::size_t depth, std::size_t branch, std::vector<Element>& a, Visit& visit) const {
    if (depth == steps_.size()) {
      visit(std::span<const Element>(a));
      return;
    }
    const Step& s = steps_[depth];
    const FiniteGroup& g = *group_;
    switch (s.kind) {
      case StepKind::Fixed:
        a[s.edge] = g.identity();
        if (consistent(s, a)) descend(depth + 1, branch, a, visit);
        return;
      case StepKind::Forced: {
        const auto& e = tri_->triangle_edges(s.triangle);  // (01, 12, 02)
        if (s.edge == e[2])
          a[s.edge] = g.mul(a[e[0]], a[e[1]]);
        else if (s.edge == e[0])
          a[s.edge] = g.mul(a[e[2]], g.inv(a[e[1]]));
        else
          a[s.edge] = g.mul(g.inv(a[e[0]]), a[e[2]]);
        if (consistent(s, a)) descend(depth + 1, branch, a, visit);
        return;
      }
      case StepKind::Free:
        if (first_free_ && depth == *first_free_) {
          a[s.edge] = static_cast<Element>(branch);
          if (consistent(s, a)) descend(depth + 1, branch, a, visit);
          return;
        }
        for (Element x = 0; x < g.order(); ++x) {
          a[s.edge] = x;
          if (consistent(s, a)) descend(depth + 1, branch, a, visit);
        }
        return;
    }
  }

  bool consistent(const Step& s, const std::vector<Element>& a) const {
    for (std::size_t f : s.checks) {
      const auto& e = tri_->triangle_edges(f);
      if (a[e[2]] != group_->mul(a[e[0]], a[e[1]])) return false;
    }
    return true;
  }

  const Triangulation* tri_;
  const FiniteGroup* group_;
  std::vector<Step> steps_;
  std::optional<std::size_t> first_free_;
};

/// Every flat coloring, streamed to `visit` one at a time.
template <class Visit>
void enumerate_flat(const Triangulation& t, const FiniteGroup& g, Visit&& visit) {
  FlatEnumerator(t, g, Gauge::None).for_each([&](std::span<const Element> a) {
    visit(FlatColoring{std::vector<Element>(a.begin(), a.end())});
  });
}

/// Runs `work(branch)` for every branch of `en` on up to `threads` workers.
/// Worker w owns branches w, w + threads, ...; callers merge per-branch
/// results in branch order.
template <class Work>
void run_branches(const FlatEnumerator& en, std::size_t threads, Work&& work) {
  const std::size_t branches = en.branch_count();
  threads = std::max<std::size_t>(1, std::min(threads, branches));
  if (threads == 1) {
    for (std::size_t b = 0; b < branches; ++b) work(b);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t b = w; b < branches; b += threads) work(b);
    });
}

/// Number of flat colorings. With Gauge::TreeFixed only the tree-fixed
/// colorings are enumerated and the total is scaled by |G|^(a-1).
inline Integer count_flat(const Triangulation& t, const FiniteGroup& g, Gauge gauge = Gauge::TreeFixed,
                          std::size_t threads = 1) {
  FlatEnumerator en(t, g, gauge);
  std::vector<std::uint64_t> per_branch(en.branch_count(), 0);
  run_branches(en, threads, [&](std::size_t b) {
    std::uint64_t n = 0;
    en.for_each_in_branch(b, [&](std::span<const Element>) { ++n; });
    per_branch[b] = n;
  });
  Integer total = 0;
  for (auto n : per_branch) total += n;
  if (gauge == Gauge::TreeFixed) total *= ipow(Integer(g.order()), static_cast<unsigned>(t.vertex_count() - 1));
  return total;
}

}  // namespace dw
