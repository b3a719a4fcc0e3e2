#include "dw/io.hpp"
#include "dw/pachner.hpp"
#include "dw/statesum.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace dw;

namespace {

Triangulation fixture(const char* name) { return load_triangulation(oracle::fixture(name)); }

const std::vector<const char*> kClosed{"s3_boundary_delta4.tri", "s3_six_vertex.tri", "rp3_11.tri", "s2xs1.tri"};

struct Case {
  FiniteGroup group;
  Cochain alpha;
};

std::vector<Case> cases() {
  return {{cyclic_group(2), trivial_cochain(cyclic_group(2), 2)},
          {cyclic_group(2), product_z2_cocycle()},
          {cyclic_group(3), carry_cocycle(3, 1)}};
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "ok";
}

}  // namespace

TEST_CASE("weight examples", "[statesum]") {
  const auto t = fixture("s3_boundary_delta4.tri");
  const auto z2 = cyclic_group(2);
  std::vector<Element> identity(t.edges().size(), 0);
  for (std::size_t i = 0; i < t.tets().size(); ++i) {
    CHECK(weight(t, i, identity, trivial_cochain(z2, 2)).value == 0);
    CHECK(weight(t, i, identity, carry_cocycle(2, 1)).value == 0);
    CHECK(weight(t, i, identity, carry_cocycle(3, 2)).value == 0);
  }
  // s = (0,1,0,1,0): the tet 0123 reads consecutive edges (1,1,1)
  std::vector<Element> a;
  const std::vector<Element> s{0, 1, 0, 1, 0};
  for (const Edge& e : t.edges()) a.push_back(s[e[0]] ^ s[e[1]]);
  CHECK(weight(t, 0, a, carry_cocycle(2, 1)).value == 1);
  CHECK(weight(t.tets()[0], t, FlatColoring{a}, z2, carry_cocycle(2, 1)).value == 1);
  // tet 0124 reads (1,1,0), tet 0134 reads (1,0,1)
  CHECK(weight(t, 1, a, carry_cocycle(2, 1)).value == 0);
  CHECK(weight(t, 2, a, carry_cocycle(2, 1)).value == 0);
}

TEST_CASE("S3 boundary with Z/2 and trivial cocycle is exactly 1/2", "[statesum]") {
  const auto t = fixture("s3_boundary_delta4.tri");
  const auto z = partition_function(t, cyclic_group(2), trivial_cochain(cyclic_group(2), 2));
  CHECK(z.z.coefficients() == std::vector<Rational>{Rational(1, 2), 0});
  CHECK(z.coloring_count == 16);
  CHECK(z.vertex_count == 5);
  CHECK(z.group_order == 2);
}

TEST_CASE("the 3-sphere gives 1/|G| for every cocycle", "[statesum]") {
  // Every flat coloring of a simply connected complex is a vertex gauge of
  // the identity coloring, whose weight sum is the evaluation of a
  // coboundary on the fundamental cycle.
  for (const char* name : {"s3_boundary_delta4.tri", "s3_six_vertex.tri"}) {
    const auto t = fixture(name);
    for (const auto& c : cases()) {
      const auto z = partition_function(t, c.group, c.alpha).z;
      CHECK(cyclotomic_equal(z, CyclotomicValue::constant(c.alpha.modulus(), Rational(1, c.group.order()))));
    }
    const auto s3 = symmetric_group_3();
    CHECK(cyclotomic_equal(partition_function(t, s3, trivial_cochain(s3, 6)).z, CyclotomicValue::constant(6, Rational(1, 6))));
  }
}

TEST_CASE("S2 x S1 gives 1 for every cyclic cocycle", "[statesum]") {
  // Hom(Z, Z/n) has n elements and each one factors through a circle, which
  // carries no degree-3 class.
  const auto t = fixture("s2xs1.tri");
  for (const auto& c : cases())
    CHECK(cyclotomic_equal(partition_function(t, c.group, c.alpha).z, CyclotomicValue::constant(c.alpha.modulus(), 1)));
}

TEST_CASE("trivial group gives 1", "[statesum]") {
  const auto z1 = cyclic_group(1);
  for (const char* name : kClosed) {
    const auto z = partition_function(fixture(name), z1, trivial_cochain(z1, 1)).z;
    CHECK(cyclotomic_equal(z, CyclotomicValue::constant(1, 1)));
    CHECK(cyclotomic_equal(partition_function_reversed(fixture(name), z1, trivial_cochain(z1, 1)).z,
                           CyclotomicValue::constant(1, 1)));
  }
}

TEST_CASE("RP3 with Z/2 and trivial cocycle is exactly 1", "[statesum][fixture]") {
  const auto t = fixture("rp3_11.tri");
  const auto z = partition_function(t, cyclic_group(2), trivial_cochain(cyclic_group(2), 2));
  CHECK(z.z.coefficients() == std::vector<Rational>{1, 0});
  const Integer homs = oracle::hom_count(oracle::first_homology(t), 2);
  CHECK(cyclotomic_equal(z.z, CyclotomicValue::constant(2, Rational(homs, 2))));
}

TEST_CASE("RP3 with the carry cocycle agrees across Pachner-related triangulations", "[statesum][fixture]") {
  const auto t = fixture("rp3_11.tri");
  const auto z2 = cyclic_group(2);
  const auto alpha = carry_cocycle(2, 1);
  const auto full = partition_function(t, z2, alpha, {Gauge::None, 1}).z;
  CHECK(cyclotomic_equal(full, partition_function(t, z2, alpha).z));

  // a second triangulation: subdivide tet 0, then flip the last 2-3 site
  auto u = apply_move(t, applicable_sites(t, MoveKind::OneFour).front());
  const auto flips = applicable_sites(u, MoveKind::TwoThree);
  REQUIRE_FALSE(flips.empty());
  u = apply_move(u, flips.back());
  CHECK(u.tets().size() == t.tets().size() + 4);
  CHECK(cyclotomic_equal(full, partition_function(u, z2, alpha, {Gauge::None, 1}).z));

  // one gauge class contributes x^0 and the other x^1, so Z = (1 + x)/2,
  // which vanishes in Q(zeta_2)
  CHECK(full.coefficients() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(full.is_zero());
}

TEST_CASE("library state sum matches the brute-force oracle", "[statesum][property]") {
  for (const char* name : {"s3_boundary_delta4.tri", "s3_six_vertex.tri"}) {
    const auto t = fixture(name);
    for (const auto& c : cases()) {
      if (std::pow(static_cast<double>(c.group.order()), static_cast<double>(t.edges().size())) > 59049.0) continue;
      CAPTURE(name, c.group.order(), c.alpha.modulus());
      const auto expected = oracle::brute_force_state_sum(t, c.group, c.alpha);
      CHECK(partition_function(t, c.group, c.alpha, {Gauge::None, 1}).z.coefficients() == expected);
      CHECK(cyclotomic_equal(partition_function(t, c.group, c.alpha).z, CyclotomicValue(c.alpha.modulus(), expected)));
    }
  }
}

TEST_CASE("normalization: trivial cocycle gives count_flat / |G|^a", "[statesum][property]") {
  for (const char* name : kClosed) {
    const auto t = fixture(name);
    for (const auto& g : {cyclic_group(2), cyclic_group(3), symmetric_group_3()}) {
      CAPTURE(name, g.order());
      const Integer count = count_flat(t, g);
      const Rational expected = Rational(count) / Rational(ipow(Integer(g.order()), static_cast<unsigned>(t.vertex_count())));
      const auto z = partition_function(t, g, trivial_cochain(g, g.order()));
      CHECK(z.coloring_count == count);
      std::vector<Rational> coeffs(g.order(), 0);
      coeffs[0] = expected;
      CHECK(z.z.coefficients() == coeffs);
    }
  }
}

TEST_CASE("orientation reversal conjugates", "[statesum][property]") {
  for (const char* name : kClosed) {
    const auto t = fixture(name);
    for (const auto& c : cases()) {
      const auto fwd = partition_function(t, c.group, c.alpha).z;
      const auto rev = partition_function_reversed(t, c.group, c.alpha).z;
      CHECK(rev.coefficients() == fwd.conjugate().coefficients());
    }
  }
}

TEST_CASE("cohomologous cocycles give equal invariants", "[statesum][property]") {
  std::mt19937_64 rng(41);
  for (const char* name : {"s3_boundary_delta4.tri", "rp3_11.tri"}) {
    const auto t = fixture(name);
    for (const auto& c : cases()) {
      const auto base = partition_function(t, c.group, c.alpha).z;
      for (int trial = 0; trial < 20; ++trial) {
        const auto beta = random_cochain(c.group, c.alpha.modulus(), 2, rng);
        const auto perturbed = cohomologous_perturb(c.alpha, beta);
        const auto gauge = partition_function(t, c.group, perturbed).z;
        REQUIRE(cyclotomic_equal(gauge, base));
        if (t.vertex_count() <= 5) REQUIRE(cyclotomic_equal(partition_function(t, c.group, perturbed, {Gauge::None, 1}).z, base));
      }
    }
  }
}

TEST_CASE("relabeling vertices leaves the invariant unchanged", "[statesum][property]") {
  std::mt19937_64 rng(5);
  for (const char* name : kClosed) {
    const auto t = fixture(name);
    for (const auto& c : cases()) {
      const auto base = partition_function(t, c.group, c.alpha).z;
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Vertex> perm(t.vertex_count());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        REQUIRE(cyclotomic_equal(partition_function(t.relabeled(perm), c.group, c.alpha).z, base));
      }
    }
  }
}

TEST_CASE("thread count does not change the result", "[statesum]") {
  const auto t = fixture("s3_six_vertex.tri");
  const auto s3 = symmetric_group_3();
  const auto one = partition_function(t, s3, trivial_cochain(s3, 6), {Gauge::None, 1}).z;
  CHECK(partition_function(t, s3, trivial_cochain(s3, 6), {Gauge::None, 4}).z.coefficients() == one.coefficients());
  const auto rp3 = fixture("rp3_11.tri");
  const auto a = partition_function(rp3, cyclic_group(3), carry_cocycle(3, 1), {Gauge::TreeFixed, 1}).z;
  CHECK(partition_function(rp3, cyclic_group(3), carry_cocycle(3, 1), {Gauge::TreeFixed, 8}).z.coefficients() ==
        a.coefficients());
}

TEST_CASE("state sum refuses bad cocycles", "[statesum][errors]") {
  const auto t = fixture("s3_boundary_delta4.tri");
  const auto z2 = cyclic_group(2);
  const auto bad = Cochain::from_function(z2, 2, 3, [](auto x) { return (x[0] == 1 && x[2] == 1) ? 1 : 0; });
  CHECK(code_of([&] { partition_function(t, z2, bad); }) == "NotACocycle");
  try {
    partition_function(t, z2, bad);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(") != std::string::npos);
  }
  CHECK(code_of([&] { partition_function(t, z2, Cochain(z2, 2, 2)); }) == "DegreeMismatch");
  CHECK(code_of([&] { partition_function(t, cyclic_group(3), product_z2_cocycle()); }) == "GroupMismatch");
}
