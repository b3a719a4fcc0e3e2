#pragma once

#include "dw/cochain.hpp"
#include "dw/cyclotomic.hpp"
#include "dw/flatness.hpp"
#include "dw/triangulation.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dw {

/// Additive logarithm of a tetrahedron weight: a residue mod k.
struct Weight {
  Residue value = 0;
  friend bool operator==(const Weight&, const Weight&) = default;
};

/// Z_M together with the data that produced its normalization.
struct InvariantValue {
  CyclotomicValue z{1};
  std::size_t group_order = 0;
  std::size_t vertex_count = 0;
  Integer coloring_count = 0;
};

struct StateSumOptions {
  Gauge gauge = Gauge::TreeFixed;
  std::size_t threads = 1;
};

/// alpha[phi(v0,v1) | phi(v1,v2) | phi(v2,v3)] for an ascending tetrahedron.
inline Weight weight(const Triangulation& t, std::size_t tet, std::span<const Element> coloring,
                     const Cochain& alpha) {
  const auto& e = t.tet_edges(tet);  // 01, 02, 03, 12, 13, 23
  return {alpha(coloring[e[0]], coloring[e[3]], coloring[e[5]])};
}

inline Weight weight(const Tet& sigma, const Triangulation& t, const FlatColoring& phi, const FiniteGroup& g,
                     const Cochain& alpha) {
  return {alpha(phi.value(t, g, {sigma[0], sigma[1]}), phi.value(t, g, {sigma[1], sigma[2]}),
                phi.value(t, g, {sigma[2], sigma[3]}))};
}

namespace detail {

inline void require_usable_cocycle(const FiniteGroup& g, const Cochain& alpha) {
  if (alpha.degree() != 3)
    throw Error("DegreeMismatch", "state sum needs a degree-3 cocycle, got degree " + std::to_string(alpha.degree()));
  if (!(alpha.group() == g)) throw Error("GroupMismatch", "cocycle is defined over a different group");
  const CocycleCheck check = is_cocycle(alpha);
  if (!check.is_cocycle) {
    std::string w;
    for (Element x : *check.witness) w += (w.empty() ? "" : ",") + std::to_string(x);
    throw Error("NotACocycle", "coboundary is nonzero at (" + w + ")");
  }
}

}  // namespace detail

/// Z_M = |G|^-a * sum over flat phi of x^(sum_i eps_i W(sigma_i, phi)).
///
/// Per coloring the exponent is accumulated mod k in integers; the
/// histogram of exponents becomes one polynomial and a single exact
/// division normalizes it. Under Gauge::TreeFixed the histogram counts one
/// coloring per gauge orbit representative and the |G|^(a-1) orbit factor
/// cancels against the normalization, leaving a division by |G|.
inline InvariantValue partition_function(const Triangulation& t, const FiniteGroup& g, const Cochain& alpha,
                                         const StateSumOptions& options = {}) {
  detail::require_usable_cocycle(g, alpha);
  const std::size_t k = alpha.modulus();
  const std::size_t m = t.tets().size();

  struct TetEdges {
    std::size_t e01, e12, e23;
    bool positive;
  };
  std::vector<TetEdges> local(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& e = t.tet_edges(i);
    local[i] = {e[0], e[3], e[5], t.signs()[i] > 0};
  }

  FlatEnumerator en(t, g, options.gauge);
  std::vector<std::vector<std::uint64_t>> histogram(en.branch_count(), std::vector<std::uint64_t>(k, 0));
  run_branches(en, options.threads, [&](std::size_t b) {
    auto& h = histogram[b];
    en.for_each_in_branch(b, [&](std::span<const Element> a) {
      std::size_t total = 0;
      for (const TetEdges& te : local) {
        const Residue w = alpha(a[te.e01], a[te.e12], a[te.e23]);
        total += te.positive ? w : (k - w) % k;
      }
      ++h[total % k];
    });
  });

  std::vector<Integer> counts(k, 0);
  for (const auto& h : histogram)
    for (std::size_t j = 0; j < k; ++j) counts[j] += h[j];

  InvariantValue out;
  out.group_order = g.order();
  out.vertex_count = t.vertex_count();
  Integer visited = 0;
  std::vector<Rational> coeffs(k);
  for (std::size_t j = 0; j < k; ++j) {
    visited += counts[j];
    coeffs[j] = Rational(counts[j]);
  }
  Integer norm;
  if (options.gauge == Gauge::TreeFixed) {
    norm = g.order();
    out.coloring_count = visited * ipow(Integer(g.order()), static_cast<unsigned>(t.vertex_count() - 1));
  } else {
    norm = ipow(Integer(g.order()), static_cast<unsigned>(t.vertex_count()));
    out.coloring_count = visited;
  }
  out.z = CyclotomicValue(k, std::move(coeffs)) / norm;
  return out;
}

/// Same sum for the opposite orientation (every eps negated).
inline InvariantValue partition_function_reversed(const Triangulation& t, const FiniteGroup& g,
                                                  const Cochain& alpha, const StateSumOptions& options = {}) {
  return partition_function(t.reversed(), g, alpha, options);
}

}  // namespace dw
