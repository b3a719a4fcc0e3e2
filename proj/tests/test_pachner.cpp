#include "dw/io.hpp"
#include "dw/pachner.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

using namespace dw;

namespace {

Triangulation fixture(const char* name) { return load_triangulation(oracle::fixture(name)); }

struct FVector {
  long long a, e, f, m;
  friend bool operator==(const FVector&, const FVector&) = default;
};

FVector fvector(const Triangulation& t) {
  return {static_cast<long long>(t.vertex_count()), static_cast<long long>(t.edges().size()),
          static_cast<long long>(t.triangles().size()), static_cast<long long>(t.tets().size())};
}

FVector expected_delta(MoveKind k) {
  switch (k) {
    case MoveKind::OneFour: return {1, 4, 6, 3};
    case MoveKind::FourOne: return {-1, -4, -6, -3};
    case MoveKind::TwoThree: return {0, 1, 2, 1};
    case MoveKind::ThreeTwo: return {0, -1, -2, -1};
  }
  return {};
}

std::multiset<Tet> tet_multiset(const Triangulation& t) { return {t.tets().begin(), t.tets().end()}; }

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "ok";
}

}  // namespace

TEST_CASE("move names", "[pachner]") {
  CHECK(to_string(MoveKind::TwoThree) == "2-3");
  CHECK(to_string(MoveKind::ThreeTwo) == "3-2");
  CHECK(to_string(MoveKind::OneFour) == "1-4");
  CHECK(to_string(MoveKind::FourOne) == "4-1");
}

TEST_CASE("sites on the 4-simplex boundary", "[pachner]") {
  const auto t = fixture("s3_boundary_delta4.tri");
  CHECK(applicable_sites(t, MoveKind::TwoThree).empty());
  // every edge has degree 3 but its link triangle is already present
  CHECK(applicable_sites(t, MoveKind::ThreeTwo).empty());
  CHECK(applicable_sites(t, MoveKind::OneFour).size() == 5);
  // every vertex has degree 4 but its link tetrahedron is present
  CHECK(applicable_sites(t, MoveKind::FourOne).empty());
}

TEST_CASE("1-4 on tet 1234 and its inverse", "[pachner]") {
  const auto t = fixture("s3_boundary_delta4.tri");
  const auto sites = applicable_sites(t, MoveKind::OneFour);
  const auto site = *std::find_if(sites.begin(), sites.end(),
                                  [](const MoveSite& s) { return s.center == std::vector<Vertex>{1, 2, 3, 4}; });
  const auto u = apply_move(t, site);
  CHECK(u.vertex_count() == 6);
  CHECK(u.tets().size() == 8);
  CHECK(u.euler_characteristic() == 0);
  CHECK(u == fixture("s3_six_vertex.tri"));
  for (const Tet& n : std::vector<Tet>{{1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}}) CHECK(u.has_tet(n));

  // Vertices 0 and 5 are swapped by an automorphism of the result: both
  // have degree 4 and the same absent link tetrahedron 1234.
  const auto back = applicable_sites(u, MoveKind::FourOne);
  REQUIRE(back.size() == 2);
  CHECK(back[0].center == std::vector<Vertex>{0});
  CHECK(back[1].center == std::vector<Vertex>{5});
  const auto w = apply_move(u, back[1]);
  CHECK(tet_multiset(w) == tet_multiset(t));
  CHECK(w.signs() == std::vector<int>{1, -1, 1, -1, 1});
  // removing vertex 0 instead gives the same complex after the index shift
  CHECK(tet_multiset(apply_move(u, back[0])) == tet_multiset(t));
}

TEST_CASE("2-3 then 3-2 at the created edge is the identity on tets", "[pachner]") {
  const auto t = fixture("s3_six_vertex.tri");
  const auto flips = applicable_sites(t, MoveKind::TwoThree);
  REQUIRE_FALSE(flips.empty());
  for (const auto& flip : flips) {
    const auto u = apply_move(t, flip);
    // apex pair of the two consumed tets
    std::vector<Vertex> apex;
    for (const Tet& tet : flip.tets)
      for (Vertex v : tet)
        if (std::find(flip.center.begin(), flip.center.end(), v) == flip.center.end()) apex.push_back(v);
    std::sort(apex.begin(), apex.end());
    REQUIRE(u.edge_index(apex[0], apex[1]));
    const auto sites = applicable_sites(u, MoveKind::ThreeTwo);
    const auto it = std::find_if(sites.begin(), sites.end(), [&](const MoveSite& s) { return s.center == apex; });
    REQUIRE(it != sites.end());
    const auto w = apply_move(u, *it);
    CHECK(tet_multiset(w) == tet_multiset(t));
    CHECK(w.vertex_count() == t.vertex_count());
  }
}

TEST_CASE("moves reject stale or foreign sites", "[pachner][errors]") {
  const auto t = fixture("s3_boundary_delta4.tri");
  CHECK(code_of([&] { apply_move(t, MoveSite{MoveKind::FourOne, {0}, {}}); }) == "NotApplicable");
  CHECK(code_of([&] { apply_move(t, MoveSite{MoveKind::TwoThree, {0, 1, 2}, {}}); }) == "NotApplicable");
  auto site = applicable_sites(t, MoveKind::OneFour).front();
  site.center = {0, 1, 2, 9};
  CHECK(code_of([&] { apply_move(t, site); }) == "NotApplicable");
}

TEST_CASE("random walks keep validity, f-vector bookkeeping and survivor orientation", "[pachner][property]") {
  for (const char* name : {"s3_boundary_delta4.tri", "rp3_11.tri", "s2xs1.tri"}) {
    auto t = fixture(name);
    std::mt19937_64 rng(7);
    for (int step = 0; step < 60; ++step) {
      std::vector<MoveSite> all;
      for (MoveKind k : kAllMoveKinds)
        for (auto& s : applicable_sites(t, k)) all.push_back(std::move(s));
      REQUIRE_FALSE(all.empty());
      const auto site = all[rng() % all.size()];
      const auto u = apply_move(t, site);
      CAPTURE(name, step, to_string(site.kind));

      const FVector before = fvector(t), after = fvector(u), d = expected_delta(site.kind);
      CHECK(after == FVector{before.a + d.a, before.e + d.e, before.f + d.f, before.m + d.m});
      CHECK(u.euler_characteristic() == 0);

      // tets not touched by the move keep their sign
      std::map<Tet, int> old_sign;
      for (std::size_t i = 0; i < t.tets().size(); ++i) old_sign[t.tets()[i]] = t.signs()[i];
      for (std::size_t i = 0; i < u.tets().size(); ++i) {
        Tet original = u.tets()[i];
        if (site.kind == MoveKind::FourOne)
          for (Vertex& v : original)
            if (v >= site.center[0]) ++v;
        const auto it = old_sign.find(original);
        if (it != old_sign.end() && std::find(site.tets.begin(), site.tets.end(), original) == site.tets.end())
          CHECK(u.signs()[i] == it->second);
      }
      t = u;
    }
  }
}

TEST_CASE("fuzz with zero moves passes", "[pachner][fuzz]") {
  const auto t = fixture("s3_boundary_delta4.tri");
  const auto r = fuzz_invariance(t, cyclic_group(2), trivial_cochain(cyclic_group(2), 2), 0, 1);
  CHECK(r.pass);
  CHECK(r.trace.empty());
  CHECK(r.final_triangulation == t);
}

TEST_CASE("fuzz on the 4-simplex boundary keeps Z = 1/2", "[pachner][fuzz]") {
  const auto t = fixture("s3_boundary_delta4.tri");
  const auto z2 = cyclic_group(2);
  const auto r = fuzz_invariance(t, z2, trivial_cochain(z2, 2), 30, 1);
  CHECK(r.pass);
  CHECK(r.trace.size() == 30);
  CHECK(r.reference.coefficients() == std::vector<Rational>{Rational(1, 2), 0});
  for (const auto& s : r.trace) CHECK(s.equal);
  CHECK(partition_function(r.final_triangulation, z2, trivial_cochain(z2, 2)).z.coefficients() ==
        r.reference.coefficients());
}

TEST_CASE("fuzz on RP3 with the carry cocycle", "[pachner][fuzz]") {
  const auto t = fixture("rp3_11.tri");
  const auto z2 = cyclic_group(2);
  const auto r = fuzz_invariance(t, z2, carry_cocycle(2, 1), 30, 3);
  CHECK(r.pass);
  CHECK(cyclotomic_equal(r.reference, partition_function(t, z2, carry_cocycle(2, 1)).z));
  CHECK(cyclotomic_equal(partition_function(r.final_triangulation, z2, carry_cocycle(2, 1)).z, r.reference));
}

TEST_CASE("fuzz is reproducible from its seed", "[pachner][fuzz]") {
  const auto t = fixture("rp3_11.tri");
  const auto z3 = cyclic_group(3);
  const auto a = fuzz_invariance(t, z3, carry_cocycle(3, 1), 15, 11);
  const auto b = fuzz_invariance(t, z3, carry_cocycle(3, 1), 15, 11);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) CHECK(a.trace[i].site == b.trace[i].site);
  CHECK(a.final_triangulation == b.final_triangulation);
}

TEST_CASE("fuzz with full enumeration and unnormalized cohomologous cocycles", "[pachner][fuzz][property]") {
  const auto t = fixture("s3_boundary_delta4.tri");
  const auto z3 = cyclic_group(3);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    const auto alpha = cohomologous_perturb(carry_cocycle(3, 2), random_cochain(z3, 3, 2, rng));
    const auto r = fuzz_invariance(t, z3, alpha, 12, static_cast<std::uint64_t>(trial), {Gauge::None, 1});
    CHECK(r.pass);
  }
}
