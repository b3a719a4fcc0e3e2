#pragma once

#include "dw/error.hpp"
#include "dw/rational.hpp"

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace dw {

/// A point with exact rational coordinates.
struct RationalPoint {
  std::vector<Rational> coords;

  std::size_t dimension() const noexcept { return coords.size(); }
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// Exact determinant by fraction-based Gaussian elimination.
inline Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

/// det(p_1 - p_0, ..., p_d - p_0) / d! for d+1 points in R^d.
/// Errors: DimensionMismatch.
inline Rational signed_volume(std::span<const RationalPoint> points) {
  if (points.empty()) throw Error("DimensionMismatch", "signed volume needs at least one point");
  const std::size_t d = points.size() - 1;
  for (const auto& p : points)
    if (p.dimension() != d)
      throw Error("DimensionMismatch", "expected " + std::to_string(d + 1) + " points in dimension " +
                                           std::to_string(d) + ", found a point of dimension " +
                                           std::to_string(p.dimension()));
  if (d == 0) return 1;
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = points[i + 1].coords[j] - points[0].coords[j];
  Integer factorial = 1;
  for (std::size_t i = 2; i <= d; ++i) factorial *= i;
  return determinant(std::move(m)) / Rational(factorial);
}

/// sum_j (-1)^j signed_volume(all points but the j-th), for n+2 points in
/// R^n: the signed facet volumes of a projected (n+1)-simplex. The sign
/// attached to a facet is that of the omitted vertex index.
/// Errors: DimensionMismatch.
inline Rational facet_volume_alternating_sum(std::span<const RationalPoint> vertices) {
  if (vertices.size() < 2) throw Error("DimensionMismatch", "need n+2 points in dimension n");
  const std::size_t n = vertices.size() - 2;
  for (const auto& p : vertices)
    if (p.dimension() != n)
      throw Error("DimensionMismatch", "expected " + std::to_string(n + 2) + " points in dimension " +
                                           std::to_string(n) + ", found a point of dimension " +
                                           std::to_string(p.dimension()));
  Rational sum = 0;
  std::vector<RationalPoint> facet;
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    facet.clear();
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (i != j) facet.push_back(vertices[i]);
    const Rational v = signed_volume(facet);
    sum += (j % 2 == 0) ? v : -v;
  }
  return sum;
}

/// `count` points in R^dim with coordinates p/q, |p| <= 20, 1 <= q <= 10.
inline std::vector<RationalPoint> random_rational_points(std::size_t count, std::size_t dim, std::mt19937_64& rng) {
  std::vector<RationalPoint> pts(count);
  for (auto& p : pts) {
    p.coords.resize(dim);
    for (auto& c : p.coords) {
      const auto num = static_cast<long long>(rng() % 41) - 20;
      const auto den = static_cast<long long>(rng() % 10) + 1;
      c = Rational(num, den);
    }
  }
  return pts;
}

}  // namespace dw
