#pragma once

#include "dw/statesum.hpp"
#include "dw/triangulation.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace dw {

enum class MoveKind { TwoThree, ThreeTwo, OneFour, FourOne };

inline constexpr MoveKind kAllMoveKinds[] = {MoveKind::TwoThree, MoveKind::ThreeTwo, MoveKind::OneFour,
                                             MoveKind::FourOne};

inline std::string_view to_string(MoveKind k) {
  switch (k) {
    case MoveKind::TwoThree: return "2-3";
    case MoveKind::ThreeTwo: return "3-2";
    case MoveKind::OneFour: return "1-4";
    case MoveKind::FourOne: return "4-1";
  }
  return "?";
}

/// Where a bistellar move acts.
///
/// `center` is the simplex the move is named after: the shared triangle for
/// 2-3, the degree-3 edge for 3-2, the tetrahedron for 1-4 and the interior
/// vertex for 4-1. `tets` are the tetrahedra the move removes.
struct MoveSite {
  MoveKind kind;
  std::vector<Vertex> center;
  std::vector<Tet> tets;
  friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

namespace detail {

inline std::vector<std::size_t> tets_with_edge(const Triangulation& t, std::size_t edge) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.tets().size(); ++i) {
    const auto& e = t.tet_edges(i);
    if (std::find(e.begin(), e.end(), edge) != e.end()) out.push_back(i);
  }
  return out;
}

inline std::vector<Vertex> link_vertices(const std::vector<Tet>& tets, const std::vector<Vertex>& center) {
  std::vector<Vertex> out;
  for (const Tet& tet : tets)
    for (Vertex v : tet)
      if (std::find(center.begin(), center.end(), v) == center.end()) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Tet make_tet(std::initializer_list<Vertex> vs) {
  Tet t{};
  std::copy(vs.begin(), vs.end(), t.begin());
  std::sort(t.begin(), t.end());
  return t;
}

// Tetrahedra a move introduces; the site must already be known applicable.
inline std::vector<Tet> replacement(const MoveSite& site, std::size_t vertex_count) {
  const auto& c = site.center;
  switch (site.kind) {
    case MoveKind::TwoThree: {
      const auto apex = link_vertices(site.tets, c);
      return {make_tet({c[0], c[1], apex[0], apex[1]}), make_tet({c[0], c[2], apex[0], apex[1]}),
              make_tet({c[1], c[2], apex[0], apex[1]})};
    }
    case MoveKind::ThreeTwo: {
      const auto ring = link_vertices(site.tets, c);
      return {make_tet({ring[0], ring[1], ring[2], c[0]}), make_tet({ring[0], ring[1], ring[2], c[1]})};
    }
    case MoveKind::OneFour: {
      const auto n = static_cast<Vertex>(vertex_count);
      return {make_tet({c[0], c[1], c[2], n}), make_tet({c[0], c[1], c[3], n}), make_tet({c[0], c[2], c[3], n}),
              make_tet({c[1], c[2], c[3], n})};
    }
    case MoveKind::FourOne: {
      const auto ring = link_vertices(site.tets, c);
      return {make_tet({ring[0], ring[1], ring[2], ring[3]})};
    }
  }
  return {};
}

inline std::optional<MoveSite> site_at(const Triangulation& t, MoveKind kind, std::vector<Vertex> center) {
  std::sort(center.begin(), center.end());
  MoveSite site{kind, center, {}};
  switch (kind) {
    case MoveKind::TwoThree: {
      if (center.size() != 3) return std::nullopt;
      const auto idx = t.tets_containing({center[0], center[1], center[2]});
      if (idx.size() != 2) return std::nullopt;
      for (auto i : idx) site.tets.push_back(t.tets()[i]);
      const auto apex = link_vertices(site.tets, center);
      if (apex.size() != 2 || t.edge_index(apex[0], apex[1])) return std::nullopt;
      return site;
    }
    case MoveKind::ThreeTwo: {
      if (center.size() != 2) return std::nullopt;
      const auto e = t.edge_index(center[0], center[1]);
      if (!e) return std::nullopt;
      const auto idx = tets_with_edge(t, *e);
      if (idx.size() != 3) return std::nullopt;
      for (auto i : idx) site.tets.push_back(t.tets()[i]);
      const auto ring = link_vertices(site.tets, center);
      if (ring.size() != 3 || t.triangle_index({ring[0], ring[1], ring[2]})) return std::nullopt;
      return site;
    }
    case MoveKind::OneFour: {
      if (center.size() != 4 || !t.has_tet({center[0], center[1], center[2], center[3]})) return std::nullopt;
      site.tets.push_back({center[0], center[1], center[2], center[3]});
      return site;
    }
    case MoveKind::FourOne: {
      if (center.size() != 1 || center[0] >= t.vertex_count()) return std::nullopt;
      for (const Tet& tet : t.tets())
        if (std::find(tet.begin(), tet.end(), center[0]) != tet.end()) site.tets.push_back(tet);
      if (site.tets.size() != 4) return std::nullopt;
      const auto ring = link_vertices(site.tets, center);
      if (ring.size() != 4 || t.has_tet({ring[0], ring[1], ring[2], ring[3]})) return std::nullopt;
      return site;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Every site where `kind` keeps the complex strictly simplicial, in sorted
/// order of the center simplex.
inline std::vector<MoveSite> applicable_sites(const Triangulation& t, MoveKind kind) {
  std::vector<MoveSite> out;
  auto consider = [&](std::vector<Vertex> center) {
    if (auto s = detail::site_at(t, kind, std::move(center))) out.push_back(std::move(*s));
  };
  switch (kind) {
    case MoveKind::TwoThree:
      for (const Triangle& f : t.triangles()) consider({f.begin(), f.end()});
      break;
    case MoveKind::ThreeTwo:
      for (const Edge& e : t.edges()) consider({e.begin(), e.end()});
      break;
    case MoveKind::OneFour:
      for (const Tet& tet : t.tets()) consider({tet.begin(), tet.end()});
      std::sort(out.begin(), out.end(), [](const MoveSite& a, const MoveSite& b) { return a.center < b.center; });
      break;
    case MoveKind::FourOne: {
      const auto deg = t.vertex_degrees();
      for (Vertex v = 0; v < t.vertex_count(); ++v)
        if (deg[v] == 4) consider({v});
      break;
    }
  }
  return out;
}

/// Rewrites `t` at `site`.
///
/// Surviving tetrahedra keep their relative order and orientation; new ones
/// are appended. 1-4 adds vertex a (the next index); 4-1 deletes the center
/// vertex and shifts higher indices down by one, so the relative order of
/// all other vertices is unchanged.
///
/// Errors: NotApplicable; ValidationFailed if the result does not
/// revalidate (an internal error).
inline Triangulation apply_move(const Triangulation& t, const MoveSite& site) {
  const auto current = detail::site_at(t, site.kind, site.center);
  if (!current || current->tets != site.tets) {
    std::string c;
    for (Vertex v : site.center) c += (c.empty() ? "" : ",") + std::to_string(v);
    throw Error("NotApplicable", std::string(to_string(site.kind)) + " move is not applicable at (" + c + ")");
  }

  std::vector<Tet> tets;
  int anchor_sign = 0;
  for (std::size_t i = 0; i < t.tets().size(); ++i) {
    if (std::find(site.tets.begin(), site.tets.end(), t.tets()[i]) != site.tets.end()) continue;
    if (tets.empty()) anchor_sign = t.signs()[i];
    tets.push_back(t.tets()[i]);
  }
  if (tets.empty()) throw Error("ValidationFailed", "move would consume every tetrahedron");
  for (const Tet& n : detail::replacement(site, t.vertex_count())) tets.push_back(n);

  std::size_t vertex_count = t.vertex_count();
  if (site.kind == MoveKind::OneFour) ++vertex_count;
  if (site.kind == MoveKind::FourOne) {
    const Vertex gone = site.center[0];
    for (Tet& tet : tets)
      for (Vertex& v : tet)
        if (v > gone) --v;
    --vertex_count;
  }

  try {
    return Triangulation::from_tets(vertex_count, std::move(tets), 0, anchor_sign);
  } catch (const Error& e) {
    throw Error("ValidationFailed", std::string(to_string(site.kind)) + " move produced an invalid complex: " +
                                        e.code() + ": " + e.what());
  }
}

struct FuzzStep {
  std::size_t step;
  MoveSite site;
  std::size_t vertices;
  std::size_t tets;
  bool equal;
};

struct FuzzFailure {
  std::size_t step;
  MoveSite site;
  std::string before;
  std::string after;
  CyclotomicValue z_before;
  CyclotomicValue z_after;
};

struct FuzzReport {
  bool pass = true;
  std::uint64_t seed = 0;
  std::size_t moves_requested = 0;
  CyclotomicValue reference{1};
  std::vector<FuzzStep> trace;
  std::optional<FuzzFailure> failure;
  Triangulation final_triangulation;
};

/// Applies `moves` random applicable moves, recomputing Z after each one and
/// comparing it exactly with the starting value. Each step draws a kind
/// uniformly among kinds with at least one site, then a site uniformly.
/// Stops at the first divergence.
inline FuzzReport fuzz_invariance(const Triangulation& t, const FiniteGroup& g, const Cochain& alpha,
                                  std::size_t moves, std::uint64_t seed, const StateSumOptions& options = {}) {
  std::mt19937_64 rng(seed);
  FuzzReport report{true, seed, moves, partition_function(t, g, alpha, options).z, {}, std::nullopt, t};
  Triangulation current = t;
  for (std::size_t step = 0; step < moves; ++step) {
    std::vector<std::vector<MoveSite>> options_by_kind;
    for (MoveKind k : kAllMoveKinds) {
      auto sites = applicable_sites(current, k);
      if (!sites.empty()) options_by_kind.push_back(std::move(sites));
    }
    const auto& sites = options_by_kind[rng() % options_by_kind.size()];
    const MoveSite site = sites[rng() % sites.size()];

    Triangulation next = apply_move(current, site);
    const CyclotomicValue z = partition_function(next, g, alpha, options).z;
    const bool equal = cyclotomic_equal(z, report.reference);
    report.trace.push_back({step, site, next.vertex_count(), next.tets().size(), equal});
    if (!equal) {
      report.pass = false;
      report.failure = FuzzFailure{step, site, current.serialize(), next.serialize(),
                                   partition_function(current, g, alpha, options).z, z};
      report.final_triangulation = std::move(next);
      return report;
    }
    current = std::move(next);
  }
  report.final_triangulation = std::move(current);
  return report;
}

}  // namespace dw
