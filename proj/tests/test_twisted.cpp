#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "tcsep/twisted.hpp"

using namespace tcsep;
using tcsep::testing::TripleAuto;

namespace {

Element el(std::initializer_list<long> xs) {
  Element v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Element random_element(std::mt19937_64& rng, std::size_t h, long bound) {
  Element g(h);
  for (auto& e : g) e = static_cast<long>(rng() % static_cast<unsigned long>(2 * bound + 1)) - bound;
  return g;
}

Element random_word(std::mt19937_64& rng, const Group& G, const std::vector<Element>& gens, long bound) {
  Element r = G.identity();
  for (int k = 0; k < 3; ++k)
    for (const auto& g : gens) r = G.multiply(r, G.power(g, static_cast<long>(rng() % (2 * bound + 1)) - bound));
  return r;
}

GroupHom h3_auto(long a, long b, long c, long d, long e, long f) {
  return heisenberg_automorphism(heisenberg(), IntMatrix::from_longs({{a, b}, {c, d}}), e, f);
}

std::vector<GroupHom> sample_automorphisms() {
  auto H = heisenberg();
  auto N = dim5_group();
  return {identity_hom(H),
          h3_auto(2, 1, 1, 1, 0, 0),
          h3_auto(0, 1, 1, 0, 1, -2),
          h3_auto(1, 1, 0, 1, 0, 0),
          h3_auto(-1, 0, 0, -1, 3, 1),
          twisted_by_inner(h3_auto(2, 1, 1, 1, 1, 1), el({1, -2, 5})),
          identity_hom(N),
          dim5_automorphism(N),
          twisted_by_inner(dim5_automorphism(N), el({2, -1, 1, 3, 0})),
          inner_automorphism(N, el({1, 1, -1, 0, 2}))};
}

}  // namespace

TEST_CASE("psi is a homomorphism on every level") {
  std::mt19937_64 rng(500);
  for (const auto& phi : sample_automorphisms()) {
    const Group& G = *phi.domain;
    auto chain = twisted_chain(phi);
    for (int i = 1; i <= G.nilpotency_class(); ++i) {
      auto gens = chain.level(i).generators();
      for (int it = 0; it < 500; ++it) {
        Element x = random_word(rng, G, gens, 3), y = random_word(rng, G, gens, 3);
        CHECK(psi(phi, i, G.multiply(x, y)) == add(psi(phi, i, x), psi(phi, i, y)));
      }
    }
  }
}

TEST_CASE("chain levels match the defining displacement condition on balls") {
  for (const auto& phi : sample_automorphisms()) {
    const Group& G = *phi.domain;
    auto chain = twisted_chain(phi);
    auto b = ball(G, standard_generators(G), 4);
    for (const auto& g : b.elements) {
      int depth = G.depth(displacement(phi, g));
      for (int i = 1; i <= G.nilpotency_class() + 1; ++i) CHECK(chain.level(i).contains(g) == (depth >= i));
      for (int i = 1; i <= G.nilpotency_class(); ++i)
        if (depth >= i) CHECK(chain.level(i + 1).contains(g) == is_zero(psi(phi, i, g)));
    }
  }
}

TEST_CASE("chain of the identity") {
  for (auto G : {heisenberg(), dim5_group()}) {
    auto chain = twisted_chain(identity_hom(G));
    for (int i = 1; i <= G->nilpotency_class() + 1; ++i) CHECK(chain.level(i) == Subgroup::whole(G));
    for (const auto& l : chain.levels) {
      CHECK(l.psi_matrix.is_zero());
      CHECK(l.det == 1);
    }
    CHECK(chain.determinant == 1);
    CHECK(chain.twisted_subgroup().rank() == 0);
  }
}

TEST_CASE("Heisenberg cases") {
  auto H = heisenberg();
  auto case1 = twisted_chain(h3_auto(2, 1, 1, 1, 0, 0));
  CHECK(case1.level(2) == Subgroup::closure(H, {el({0, 0, 1})}));
  CHECK(case1.twisted_subgroup().rank() == 0);
  std::mt19937_64 rng(7);
  for (int it = 0; it < 20; ++it) {
    Element X = random_element(rng, 3, 6);
    auto cx = twisted_chain(twisted_by_inner(h3_auto(2, 1, 1, 1, 0, 0), X));
    CHECK(cx.twisted_subgroup().rank() == 0);
    auto c2 = twisted_chain(twisted_by_inner(h3_auto(0, 1, 1, 0, 0, 0), X));
    CHECK(c2.twisted_subgroup().contains(el({2})));
  }
  CHECK(classify_heisenberg(IntMatrix::from_longs({{2, 1}, {1, 1}})) == HeisenbergCase::kNoFixedLine);
  CHECK(classify_heisenberg(IntMatrix::from_longs({{0, 1}, {1, 0}})) == HeisenbergCase::kFixedLine);
  CHECK(classify_heisenberg(IntMatrix::from_longs({{1, 1}, {0, 1}})) == HeisenbergCase::kFixedLine);
  CHECK(classify_heisenberg(IntMatrix::identity(2)) == HeisenbergCase::kIdentity);
}

TEST_CASE("five-dimensional example") {
  auto N = dim5_group();
  GroupHom phi = dim5_automorphism(N);
  Subgroup expected = Subgroup::closure(N, {el({1, 0, 0, 0, 0}), el({0, 1, 0, 0, 0}), el({0, 0, 0, 1, 0}),
                                            el({0, 0, 0, 0, 1})});
  std::mt19937_64 rng(88);
  for (int it = 0; it < 20; ++it) {
    GroupHom phi_x = twisted_by_inner(phi, random_element(rng, 5, 8));
    CHECK(twisted_chain(phi_x).level(2) == expected);
    CHECK(psi(phi_x, 2, el({0, 0, 0, 1, 0})) == el({0, 0}));
    CHECK(psi(phi_x, 2, el({0, 0, 0, 0, 1})) == el({-1, 0}));
  }
}

TEST_CASE("psi examples") {
  std::mt19937_64 rng(3);
  for (auto G : {heisenberg(), dim5_group()})
    for (int it = 0; it < 50; ++it) {
      Element x = random_element(rng, G->hirsch(), 5), y = random_element(rng, G->hirsch(), 5);
      auto inn = inner_automorphism(G, x);
      CHECK(psi(inn, 2, y) == G->layer_coords(G->commutator(y, x), 2));
      CHECK(is_zero(psi(inn, 1, G->identity())));
    }
  CHECK_THROWS_AS(psi(h3_auto(2, 1, 1, 1, 0, 0), 2, el({1, 0, 0})), std::invalid_argument);
}

TEST_CASE("twisted determinant agrees with a Smith-form oracle on random Heisenberg automorphisms") {
  std::mt19937_64 rng(1234);
  std::size_t checked = 0;
  for (int it = 0; it < 120; ++it) {
    IntMatrix A = tcsep::testing::random_unimodular(rng, 2);
    if (A.max_abs_entry() > 6) continue;
    long a = A.at(0, 0).get_si(), b = A.at(0, 1).get_si(), c = A.at(1, 0).get_si(), d = A.at(1, 1).get_si();
    long e = static_cast<long>(rng() % 7) - 3, f = static_cast<long>(rng() % 7) - 3;
    if (rng() % 3 == 0) a = -a, c = -c;  // also sample determinant -1
    TripleAuto oracle(a, b, c, d, e, f);
    // Level 1: the matrix I - A on the abelianization.
    IntMatrix IA = IntMatrix::from_longs({{1 - a, -b}, {-c, 1 - d}});
    Int D1 = 1;
    for (const auto& inv : snf(IA).invariants) D1 *= inv;
    // Level 2: central values of displacements of lifted kernel vectors, plus z -> z^(1 - det).
    Int g = 1 - (a * d - b * c);
    Lattice kerIA = kernel_basis(IA);
    for (const auto& v : kerIA.basis()) {
      IntVec t{v[0], v[1], 0};
      IntVec disp = oracle.displacement(t);
      REQUIRE(disp[0] == 0);
      REQUIRE(disp[1] == 0);
      g = gcd(g, disp[2]);
    }
    Int D2 = g == 0 ? Int(1) : Int(abs(g));
    GroupHom phi = h3_auto(a, b, c, d, e, f);
    REQUIRE(verify_hom(phi, true).ok);
    auto chain = twisted_chain(phi);
    CHECK(chain.levels[0].det == D1);
    CHECK(chain.levels[1].det == D2);
    CHECK(chain.determinant == D1 * D2);
    ++checked;
  }
  CHECK(checked > 40);
  auto shear = twisted_chain(h3_auto(1, 1, 0, 1, 0, 0));
  CHECK(shear.determinant == 1);
}

TEST_CASE("decision agrees with brute-force witness search in the Heisenberg group") {
  auto H = heisenberg();
  auto S = standard_generators(*H);
  auto small = ball(*H, S, 2);
  auto witnesses = ball(*H, S, 6);
  for (const auto& phi : {identity_hom(H), h3_auto(2, 1, 1, 1, 0, 0), h3_auto(0, 1, 1, 0, 0, 0)}) {
    for (const auto& x : small.elements) {
      std::set<Element> reach;
      for (const auto& z : witnesses.elements) reach.insert(H->multiply(H->multiply(z, x), H->inverse(phi.apply(z))));
      for (const auto& y : small.elements) {
        auto d = is_twisted_conjugate(phi, x, y);
        if (reach.count(y)) CHECK(d.conjugate);
        if (!d.conjugate) CHECK_FALSE(reach.count(y));
        if (d.conjugate) {
          REQUIRE(d.witness);
          CHECK(H->multiply(H->multiply(*d.witness, x), H->inverse(phi.apply(*d.witness))) == y);
        }
      }
    }
  }
}

TEST_CASE("identity-twisted classes of x^p") {
  auto H = heisenberg();
  for (long p : {2, 3, 5, 7}) {
    auto yes = is_twisted_conjugate(identity_hom(H), el({p, 0, 0}), el({p, 0, p}));
    CHECK(yes.conjugate);
    auto no = is_twisted_conjugate(identity_hom(H), el({p, 0, 0}), el({p, 0, 1}));
    CHECK_FALSE(no.conjugate);
    CHECK(no.failed_level == 2);
  }
  auto self = is_twisted_conjugate(h3_auto(2, 1, 1, 1, 0, 0), el({3, 1, 4}), el({3, 1, 4}));
  CHECK(self.conjugate);
  CHECK(*self.witness == el({0, 0, 0}));
}

TEST_CASE("abelian twisted classes are cosets of the image of I - A") {
  auto Z2 = free_abelian(2);
  for (const auto& A : {IntMatrix::from_longs({{2, 1}, {1, 1}}), IntMatrix::from_longs({{0, 1}, {1, 0}}),
                        IntMatrix::from_longs({{1, 2}, {0, 1}}), IntMatrix::from_longs({{-1, 0}, {0, -1}})}) {
    GroupHom phi{Z2, Z2, {A.column(0), A.column(1)}};
    IntMatrix IA = IntMatrix::from_longs({{1, 0}, {0, 1}});
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) IA.at(r, c) -= A.at(r, c);
    for (long x0 = -2; x0 <= 2; ++x0)
      for (long x1 = -2; x1 <= 2; ++x1)
        for (long y0 = -3; y0 <= 3; ++y0)
          for (long y1 = -3; y1 <= 3; ++y1) {
            bool oracle = image_membership(IA, el({y0 - x0, y1 - x1})).has_value();
            CHECK(is_twisted_conjugate(phi, el({x0, x1}), el({y0, y1})).conjugate == oracle);
          }
  }
}

TEST_CASE("bounded witnesses") {
  auto H = heisenberg();
  auto S = standard_generators(*H);
  auto w0 = bounded_witness(h3_auto(2, 1, 1, 1, 0, 0), H->identity(), S);
  CHECK(w0.x == H->identity());
  CHECK(*w0.word_length == 0);

  std::mt19937_64 rng(21);
  for (auto G : {heisenberg(), dim5_group()})
    for (int it = 0; it < 30; ++it) {
      Element g = random_element(rng, G->hirsch(), 4), w = random_element(rng, G->hirsch(), 4);
      GroupHom inn = inner_automorphism(G, g);
      auto bw = bounded_witness(inn, G->commutator(w, g), standard_generators(*G), 4);
      CHECK(displacement(inn, bw.x) == G->commutator(w, g));
    }

  GroupHom case2 = h3_auto(0, 1, 1, 0, 0, 0);
  auto bw = bounded_witness(case2, el({0, 0, 2}), S);
  CHECK(displacement(case2, bw.x) == el({0, 0, 2}));
  bool brute = false;
  for (const auto& g : ball(*H, S, 4).elements) brute |= displacement(case2, g) == el({0, 0, 2});
  CHECK(brute);
  CHECK_THROWS_AS(bounded_witness(h3_auto(2, 1, 1, 1, 0, 0), el({0, 0, 1}), S), std::invalid_argument);
}

TEST_CASE("Blackburn constants") {
  auto b22 = blackburn_constants(2, 2);
  CHECK(b22.k == 1);
  CHECK(b22.k_star == 1);
  CHECK(blackburn_constants(3, 2).k == 0);
  CHECK(blackburn_constants(5, 2).k == 0);
  auto b24 = blackburn_constants(2, 4);
  CHECK(b24.k == 4);
  CHECK(b24.p_power == 16);
  CHECK(b24.factorial == 24);
  CHECK(b24.within_factorial());
  CHECK(b24.k_star == 12);
  for (unsigned long p : {2, 3, 5, 7})
    for (int c = 1; c <= 6; ++c) CHECK(blackburn_constants(p, c).within_factorial());
  CHECK_THROWS(blackburn_constants(4, 2));
}

TEST_CASE("Blackburn roots") {
  std::mt19937_64 rng(9);
  for (auto G : {heisenberg(), dim5_group()})
    for (unsigned long p : {2, 3})
      for (unsigned long k : {1, 2}) {
        auto bc = blackburn_constants(p, G->nilpotency_class());
        for (int it = 0; it < 5; ++it) {
          Element g = random_element(rng, G->hirsch(), 3);
          Element x = G->power(g, ipow(Int(p), k + bc.k));
          CHECK(blackburn_root(G, p, k, x) == G->power(g, ipow(Int(p), bc.k)));
        }
      }
  auto Z3 = free_abelian(3);
  CHECK(blackburn_root(Z3, 3, 2, el({9, -18, 27})) == el({1, -2, 3}));
  CHECK_THROWS_AS(blackburn_root(Z3, 3, 2, el({9, -18, 3})), PreconditionError);

  // Every element of N^4 in a box has a square root.
  auto H = heisenberg();
  Subgroup P4 = power_subgroup(H, 4);
  std::size_t members = 0;
  for (long a = -8; a <= 8; ++a)
    for (long b = -8; b <= 8; ++b)
      for (long c = -8; c <= 8; ++c) {
        Element x = el({a, b, c});
        if (!P4.contains(x)) continue;
        ++members;
        auto y = root(*H, x, 2);
        REQUIRE(y);
        CHECK(H->power(*y, 2) == x);
      }
  CHECK(members > 20);
}

TEST_CASE("p-power twisted solver") {
  auto H = heisenberg();
  auto N = dim5_group();
  CHECK(solve_power_twisted(identity_hom(H), 3, 1, el({4, -2, 9})).y == H->identity());
  GroupHom case1 = h3_auto(2, 1, 1, 1, 0, 0);
  CHECK(solve_power_twisted(case1, 2, 1, el({0, 0, 5})).y == H->identity());

  std::mt19937_64 rng(77);
  for (const auto& phi : {h3_auto(0, 1, 1, 0, 0, 0), h3_auto(0, 1, 1, 0, 1, 2), case1, dim5_automorphism(N),
                          twisted_by_inner(dim5_automorphism(N), el({1, 2, 0, -1, 1}))}) {
    const Group& G = *phi.domain;
    auto chain = twisted_chain(phi);
    auto fixed = chain.fixed.generators();
    int c = G.nilpotency_class();
    for (unsigned long p : {2, 3})
      for (unsigned long k : {1, 2}) {
        auto bc = blackburn_constants(p, c);
        Int M = ipow(Int(p), k + bc.k_star + static_cast<unsigned long>(vp(chain.determinant, p)));
        Subgroup target = power_subgroup(phi.domain, ipow(Int(p), k));
        for (int it = 0; it < 10; ++it) {
          Element y0 = G.identity();
          for (int s = 0; s < 2; ++s) y0 = G.multiply(y0, G.power(random_element(rng, G.hirsch(), 3), M));
          Element w = fixed.empty() ? G.identity() : random_word(rng, G, fixed, 2);
          Element x = G.multiply(y0, w);
          auto sol = solve_power_twisted(phi, p, k, x);
          CHECK(displacement(phi, sol.y) == displacement(phi, x));
          CHECK(target.contains(sol.y));
        }
      }
  }
  CHECK_THROWS_AS(solve_power_twisted(h3_auto(0, 1, 1, 0, 0, 0), 3, 1, el({1, 0, 0})), PreconditionError);
}

TEST_CASE("json dumps") {
  GroupHom phi = dim5_automorphism(dim5_group());
  Json j = chain_to_json(twisted_chain(phi));
  CHECK(j["levels"].size() == 2);
  CHECK(j["twisted_determinant"].is_string());
  auto d = is_twisted_conjugate(phi, el({1, 0, 0, 0, 0}), el({1, 0, 0, 0, 0}));
  Json w = witness_to_json(phi, el({1, 0, 0, 0, 0}), el({1, 0, 0, 0, 0}), *d.witness);
  CHECK(w["verified"] == true);
}
