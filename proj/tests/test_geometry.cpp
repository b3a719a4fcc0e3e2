#include "dw/geometry.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace dw;

namespace {

RationalPoint pt(std::initializer_list<Rational> c) { return {std::vector<Rational>(c)}; }

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "ok";
}

// Leibniz expansion, independent of the elimination in determinant().
Rational leibniz(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational total = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) sign = -sign;
    Rational term = sign;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace

TEST_CASE("signed volume examples", "[geometry]") {
  const std::vector<RationalPoint> tri{pt({0, 0}), pt({1, 0}), pt({0, 1})};
  CHECK(signed_volume(tri) == Rational(1, 2));
  const std::vector<RationalPoint> swapped{pt({0, 0}), pt({0, 1}), pt({1, 0})};
  CHECK(signed_volume(swapped) == Rational(-1, 2));
  const std::vector<RationalPoint> line{pt({0, 0}), pt({1, 1}), pt({2, 2})};
  CHECK(signed_volume(line) == 0);
  const std::vector<RationalPoint> unit3{pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})};
  CHECK(signed_volume(unit3) == Rational(1, 6));
  const std::vector<RationalPoint> seg{pt({Rational(1, 3)}), pt({Rational(-1, 2)})};
  CHECK(signed_volume(seg) == Rational(-5, 6));
}

TEST_CASE("determinant matches the Leibniz expansion", "[geometry][property]") {
  std::mt19937_64 rng(13);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
      for (auto& row : m)
        for (auto& x : row) x = Rational(static_cast<long long>(rng() % 11) - 5, static_cast<long long>(rng() % 4) + 1);
      if (trial == 0 && n > 1) m[1] = m[0];
      CHECK(determinant(m) == leibniz(m));
    }
}

TEST_CASE("alternating facet sum vanishes", "[geometry][property]") {
  std::mt19937_64 rng(2718);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int s = 0; s < 200; ++s) {
      const auto pts = random_rational_points(n + 2, n, rng);
      REQUIRE(facet_volume_alternating_sum(pts) == 0);
    }
  // convex quadrilateral: the two diagonal splits have equal area
  const std::vector<RationalPoint> quad{pt({0, 0}), pt({2, 0}), pt({3, 2}), pt({0, 1})};
  CHECK(facet_volume_alternating_sum(quad) == 0);
  const std::vector<RationalPoint> same(5, pt({1, 2, 3}));
  CHECK(facet_volume_alternating_sum(same) == 0);
}

TEST_CASE("signed volume is alternating and multilinear", "[geometry][property]") {
  std::mt19937_64 rng(31);
  for (std::size_t d = 1; d <= 4; ++d)
    for (int trial = 0; trial < 20; ++trial) {
      auto pts = random_rational_points(d + 1, d, rng);
      const Rational v = signed_volume(pts);
      // transposition of two vertices flips the sign
      const std::size_t i = rng() % (d + 1), j = (i + 1 + rng() % d) % (d + 1);
      auto swapped = pts;
      std::swap(swapped[i], swapped[j]);
      CHECK(signed_volume(swapped) == -v);
      // scaling one edge vector p_i - p_0 by c scales the volume by c
      const Rational c(static_cast<long long>(rng() % 7) - 3, 2);
      auto scaled = pts;
      const std::size_t k = 1 + rng() % d;
      for (std::size_t x = 0; x < d; ++x) scaled[k].coords[x] = pts[0].coords[x] + c * (pts[k].coords[x] - pts[0].coords[x]);
      CHECK(signed_volume(scaled) == c * v);
      // translation invariance
      auto moved = pts;
      for (auto& p : moved) p.coords[0] += Rational(7, 3);
      CHECK(signed_volume(moved) == v);
    }
}

TEST_CASE("random points are exact rationals in the documented range", "[geometry]") {
  std::mt19937_64 rng(1);
  for (const auto& p : random_rational_points(50, 3, rng)) {
    REQUIRE(p.dimension() == 3);
    for (const auto& x : p.coords) {
      CHECK(abs(x) <= 20);
      CHECK(denominator(x) <= 10);
    }
  }
}

TEST_CASE("dimension errors", "[geometry][errors]") {
  const std::vector<RationalPoint> bad{pt({0, 0}), pt({1, 0})};
  CHECK(code_of([&] { signed_volume(bad); }) == "DimensionMismatch");
  const std::vector<RationalPoint> mixed{pt({0, 0}), pt({1, 0}), pt({0})};
  CHECK(code_of([&] { signed_volume(mixed); }) == "DimensionMismatch");
  CHECK(code_of([&] { facet_volume_alternating_sum(std::vector<RationalPoint>{pt({0, 0}), pt({1, 0}), pt({0, 1})}); }) ==
        "DimensionMismatch");
  CHECK(code_of([] { signed_volume(std::vector<RationalPoint>{}); }) == "DimensionMismatch");
}
