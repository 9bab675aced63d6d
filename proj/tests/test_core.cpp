#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tcsep/io.hpp"
#include "tcsep/subgroup.hpp"

using namespace tcsep;
using tcsep::testing::Mat;
using tcsep::testing::TripleLaw;

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

// Free nilpotent group of class 3 on a, b: c = [b,a], d = [c,a], e = [c,b].
GroupPtr class3_group() {
  Presentation p;
  p.names = {"a", "b", "c", "d", "e"};
  p.weight = {1, 1, 2, 3, 3};
  p.set_commutator(1, 0, el({0, 0, 1, 0, 0}));
  p.set_commutator(2, 0, el({0, 0, 0, 1, 0}));
  p.set_commutator(2, 1, el({0, 0, 0, 0, 1}));
  return std::make_shared<const Group>(p);
}

Mat commutator_mat(const Mat& x, const Mat& y) {
  using namespace tcsep::testing;
  return mat_mul(mat_mul(x, y), mat_unipotent_inverse(mat_mul(y, x)));
}

Element triple(long a, long b, long c) { return heisenberg_from_triple(a, b, c); }

std::vector<GroupPtr> example_groups() { return {heisenberg(), dim5_group(), free_abelian(3), class3_group()}; }

}  // namespace

TEST_CASE("Heisenberg law matches the triple law under the coordinate change") {
  auto H = heisenberg();
  CHECK(heisenberg_to_triple(H->multiply(triple(1, 0, 0), triple(0, 1, 0))) == el({1, 1, 1}));
  CHECK(heisenberg_to_triple(H->multiply(triple(0, 1, 0), triple(1, 0, 0))) == el({1, 1, 0}));
  CHECK(H->commutator(el({1, 0, 0}), el({0, 1, 0})) == el({0, 0, 1}));
  std::mt19937_64 rng(11);
  for (int it = 0; it < 1000; ++it) {
    Element g = random_element(rng, 3, 50), h = random_element(rng, 3, 50);
    IntVec tg = heisenberg_to_triple(g), th = heisenberg_to_triple(h);
    CHECK(heisenberg_to_triple(H->multiply(g, h)) == TripleLaw::mul(tg, th));
    CHECK(heisenberg_to_triple(H->inverse(g)) == TripleLaw::inv(tg));
    CHECK(heisenberg_from_triple(tg[0], tg[1], tg[2]) == g);
  }
}

TEST_CASE("multiply, inverse, commutator and power examples") {
  auto H = heisenberg();
  Element g = el({4, -2, 7});
  CHECK(H->multiply(g, H->identity()) == g);
  CHECK(H->inverse(H->identity()) == H->identity());
  CHECK(H->inverse(el({1, 0, 0})) == el({-1, 0, 0}));
  CHECK(heisenberg_to_triple(H->inverse(triple(1, 1, 0))) == el({-1, -1, 1}));
  CHECK(H->commutator(g, g) == H->identity());
  CHECK(heisenberg_to_triple(H->power(triple(1, 1, 0), 2)) == el({2, 2, 1}));
  CHECK(H->power(g, 0) == H->identity());
  CHECK(H->power(el({0, 0, 1}), 37) == el({0, 0, 37}));

  auto N = dim5_group();
  CHECK(N->commutator(N->generator(1), N->generator(2)) == N->generator(4));
  CHECK(N->commutator(N->generator(0), N->generator(1)) == N->generator(3));
  CHECK(N->commutator(N->generator(0), N->generator(2)) == N->identity());
}

TEST_CASE("class-2 law agrees with the bilinear oracle") {
  for (auto G : {heisenberg(), dim5_group()}) {
    const auto& p = G->presentation();
    std::size_t top = G->layer_rank(1);
    std::vector<std::vector<IntVec>> rel(G->hirsch(), std::vector<IntVec>(G->hirsch()));
    for (std::size_t j = 0; j < G->hirsch(); ++j)
      for (std::size_t i = 0; i < j; ++i) rel[j][i] = p.commutator_relation(j, i);
    std::mt19937_64 rng(29);
    for (int it = 0; it < 1000; ++it) {
      Element g = random_element(rng, G->hirsch(), 30), h = random_element(rng, G->hirsch(), 30);
      CHECK(G->multiply(g, h) == tcsep::testing::class2_mul(rel, top, g, h));
    }
  }
}

TEST_CASE("class-3 law is a homomorphism into unitriangular matrices") {
  using namespace tcsep::testing;
  auto G = class3_group();
  Mat A = mat_identity(4), B = mat_identity(4);
  A[0][1] = 1, A[1][2] = 2, A[2][3] = 1, A[0][2] = 5;
  B[0][1] = 3, B[1][2] = 1, B[2][3] = -2, B[1][3] = 4;
  Mat C = commutator_mat(B, A), D = commutator_mat(C, A), E = commutator_mat(C, B);
  std::vector<Mat> images{A, B, C, D, E};
  auto rho = [&](const Element& g) {
    Mat m = mat_identity(4);
    for (std::size_t i = 0; i < g.size(); ++i) m = mat_mul(m, mat_pow(images[i], g[i]));
    return m;
  };
  std::mt19937_64 rng(3);
  for (int it = 0; it < 300; ++it) {
    Element g = random_element(rng, 5, 12), h = random_element(rng, 5, 12);
    CHECK(rho(G->multiply(g, h)) == mat_mul(rho(g), rho(h)));
    CHECK(rho(G->power(g, 5)) == mat_pow(rho(g), 5));
  }
}

TEST_CASE("associativity and inverse laws on 1000 random triples") {
  std::mt19937_64 rng(2024);
  for (auto G : example_groups()) {
    for (int it = 0; it < 1000; ++it) {
      Element a = random_element(rng, G->hirsch(), 20), b = random_element(rng, G->hirsch(), 20),
              c = random_element(rng, G->hirsch(), 20);
      CHECK(G->multiply(G->multiply(a, b), c) == G->multiply(a, G->multiply(b, c)));
      CHECK(G->is_identity(G->multiply(a, G->inverse(a))));
      CHECK(G->is_identity(G->multiply(G->inverse(a), a)));
    }
  }
}

TEST_CASE("power laws") {
  std::mt19937_64 rng(5);
  for (auto G : example_groups())
    for (int it = 0; it < 100; ++it) {
      Element g = random_element(rng, G->hirsch(), 9);
      long n = static_cast<long>(rng() % 21) - 10;
      Element slow = G->identity();
      for (long k = 0; k < std::abs(n); ++k) slow = G->multiply(slow, g);
      if (n < 0) slow = G->inverse(slow);
      CHECK(G->power(g, n) == slow);
      CHECK(G->power(g, -n) == G->inverse(G->power(g, n)));
    }
}

TEST_CASE("lower central series") {
  auto lh = lower_central_series(*heisenberg());
  REQUIRE(lh.size() == 2);
  CHECK(lh[0].rank == 2);
  CHECK(lh[1].rank == 1);
  CHECK(lh[1].spanning_commutators.size() >= 1);
  auto la = lower_central_series(*free_abelian(4));
  REQUIRE(la.size() == 1);
  CHECK(la[0].rank == 4);
  auto l5 = lower_central_series(*dim5_group());
  REQUIRE(l5.size() == 2);
  CHECK(l5[0].indices == std::vector<std::size_t>{0, 1, 2});
  CHECK(l5[1].indices == std::vector<std::size_t>{3, 4});
  CHECK(l5[1].rank == 2);
  auto l3 = lower_central_series(*class3_group());
  REQUIRE(l3.size() == 3);
  CHECK(l3[2].rank == 2);
}

TEST_CASE("balls and word lengths") {
  auto H = heisenberg();
  auto S = standard_generators(*H);
  auto b1 = ball(*H, S, 1);
  CHECK(b1.elements.size() == 5);
  for (const auto& g : {el({0, 0, 0}), el({1, 0, 0}), el({-1, 0, 0}), el({0, 1, 0}), el({0, -1, 0})})
    CHECK(b1.index.count(g) == 1);
  auto b4 = ball(*H, S, 4);
  CHECK(b4.index.count(el({0, 0, 1})) == 1);
  CHECK(*word_length(*H, S, H->identity(), 10) == 0);
  CHECK(*word_length(*H, S, el({0, 0, 1}), 10) == 4);
  CHECK_FALSE(word_length(*H, S, el({0, 0, 1}), 3));

  auto Z = free_abelian(1);
  for (std::size_t n = 0; n < 12; ++n) CHECK(ball(*Z, standard_generators(*Z), n).elements.size() == 2 * n + 1);

  auto b8 = ball(*H, S, 8);
  for (std::size_t n = 1; n <= 8; ++n) CHECK(b8.count_within(n) >= b8.count_within(n - 1));
  std::mt19937_64 rng(8);
  for (int it = 0; it < 300; ++it) {
    const auto& g = b8.elements[rng() % b8.count_within(4)];
    const auto& h = b8.elements[rng() % b8.count_within(4)];
    CHECK(*b8.length(H->multiply(g, h)) <= *b8.length(g) + *b8.length(h));
  }
  CHECK_THROWS_AS(ball(*H, S, 10, 100), BudgetExceeded);
}

TEST_CASE("central word lengths in the Heisenberg group") {
  auto H = heisenberg();
  auto S = standard_generators(*H);
  auto b = ball(*H, S, 16);
  std::size_t prev = 0;
  for (long m = 1; m <= 16; ++m) {
    auto len = b.length(el({0, 0, m}));
    REQUIRE(len);
    CHECK(*len >= prev);
    prev = *len;
  }
  for (long m = 1; m <= 4; ++m) CHECK(*b.length(el({0, 0, m * m})) <= static_cast<std::size_t>(4 * m));
}

TEST_CASE("subgroup and automorphism norms") {
  auto H = heisenberg();
  auto S = standard_generators(*H);
  CHECK(*subgroup_norm_upper(*H, S, {H->identity()}, 5) == 0);
  CHECK(*subgroup_norm_upper(*H, S, {el({0, 0, 1})}, 5) == 4);
  auto Z = free_abelian(1);
  for (long n = 1; n <= 7; ++n) CHECK(*subgroup_norm_upper(*Z, standard_generators(*Z), {el({n})}, 10) == std::size_t(n));

  CHECK(*automorphism_norm(identity_hom(H), S, 5) == 1);
  GroupHom shear = heisenberg_automorphism(H, IntMatrix::from_longs({{1, 1}, {0, 1}}));
  CHECK(shear.apply(el({0, 1, 0})) == el({1, 1, 0}));
  CHECK(*automorphism_norm(shear, S, 5) == 2);

  std::vector<GroupHom> autos{shear, heisenberg_automorphism(H, IntMatrix::from_longs({{2, 1}, {1, 1}}), 1, -1),
                              heisenberg_automorphism(H, IntMatrix::from_longs({{0, 1}, {1, 0}}), 2, 0)};
  auto b = ball(*H, S, 3);
  for (const auto& f : autos) {
    std::size_t nf = *automorphism_norm(f, S, 8);
    for (const auto& g : autos) {
      std::size_t ng = *automorphism_norm(g, S, 8);
      CHECK(*automorphism_norm(compose(f, g), S, 20) <= nf * ng);
    }
    for (std::size_t k = 0; k < b.elements.size(); ++k)
      CHECK(*word_length(*H, S, f.apply(b.elements[k]), 20) <= nf * b.radius[k]);
  }
}

TEST_CASE("presentation and homomorphism verification") {
  CHECK(verify_presentation(heisenberg()->presentation()).ok);
  CHECK(verify_presentation(dim5_group()->presentation()).ok);
  CHECK(verify_presentation(class3_group()->presentation()).ok);
  CHECK(verify_presentation(free_abelian(3)->presentation()).ok);

  Presentation bad_support = heisenberg()->presentation();
  bad_support.set_commutator(1, 0, el({1, 0, 0}));
  CHECK_FALSE(verify_presentation(bad_support).ok);

  Presentation index_two = heisenberg()->presentation();
  index_two.set_commutator(1, 0, el({0, 0, -2}));
  auto r = verify_presentation(index_two);
  CHECK_FALSE(r.ok);

  auto H = heisenberg();
  GroupHom square_z{H, H, {el({1, 0, 0}), el({0, 1, 0}), el({0, 0, 2})}};
  auto v = verify_hom(square_z, true);
  CHECK_FALSE(v.ok);
  bool saw_det = false;
  for (const auto& m : v.violations) saw_det |= m.find("determinant 2") != std::string::npos;
  CHECK(saw_det);

  auto N = dim5_group();
  CHECK(verify_hom(dim5_automorphism(N), true).ok);
  // a3 -> a1 a3 together with b2 -> b1 b2 does not respect [a2,a3] = b2.
  GroupHom literal = dim5_automorphism(N);
  literal.images[2] = el({1, 0, 1, 0, 0});
  CHECK_FALSE(verify_hom(literal, true).ok);

  for (auto c : {HeisenbergCase::kNoFixedLine, HeisenbergCase::kFixedLine, HeisenbergCase::kIdentity})
    CHECK(verify_hom(heisenberg_automorphism(H, heisenberg_case_matrix(c), 3, -5), true).ok);
  CHECK(verify_hom(inner_automorphism(N, el({2, -1, 3, 0, 1})), true).ok);
}

TEST_CASE("roots") {
  auto H = heisenberg();
  auto r = root(*H, triple(2, 2, 1), 2);
  REQUIRE(r);
  CHECK(heisenberg_to_triple(*r) == el({1, 1, 0}));
  CHECK_FALSE(root(*H, el({0, 0, 1}), 2));
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b)
      for (long c = -6; c <= 6; ++c) CHECK(H->power(el({a, b, c}), 2) != el({0, 0, 1}));

  std::mt19937_64 rng(17);
  for (auto G : example_groups())
    for (int it = 0; it < 200; ++it) {
      Element g = random_element(rng, G->hirsch(), 15);
      long m = 1 + static_cast<long>(rng() % 8);
      auto y = root(*G, G->power(g, m), m);
      REQUIRE(y);
      CHECK(*y == g);
    }
}

TEST_CASE("induced sequences and coset representatives") {
  auto N = dim5_group();
  std::mt19937_64 rng(41);
  for (int it = 0; it < 20; ++it) {
    std::vector<Element> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_element(rng, 5, 4));
    Subgroup K = Subgroup::closure(N, gens, true);
    CHECK(K.is_normal());
    for (const auto& g : gens) CHECK(K.contains(g));
    auto gk = K.generators();
    for (const auto& a : gk)
      for (const auto& b : gk) CHECK(K.contains(N->multiply(a, b)));
    for (int s = 0; s < 10; ++s) {
      Element g = random_element(rng, 5, 6);
      Element k = N->identity();
      for (const auto& x : gk) k = N->multiply(k, N->power(x, static_cast<long>(rng() % 5) - 2));
      CHECK(K.contains(k));
      CHECK(K.coset_rep(N->multiply(g, k)) == K.coset_rep(g));
      auto ex = K.express(k);
      REQUIRE(ex);
      Element back = N->identity();
      for (std::size_t i = 0; i < gk.size(); ++i) back = N->multiply(back, N->power(gk[i], (*ex)[i]));
      CHECK(back == k);
    }
  }
}

TEST_CASE("power subgroups") {
  auto H = heisenberg();
  CHECK(power_subgroup(H, 1) == Subgroup::whole(H));
  for (long p : {3, 5}) {
    Subgroup P = power_subgroup(H, p);
    CHECK(P.index() == p * p * p);
    CHECK(P == Subgroup::closure(H, {el({p, 0, 0}), el({0, p, 0}), el({0, 0, p})}));
  }
  // The basis-power closure has index m^3; the verbal subgroup can be larger.
  CHECK(basis_power_subgroup(H, 2).index() == 8);
  for (long m = 2; m <= 6; ++m) {
    // Oracle: triples mod m^2 form a quotient whose kernel lies in N^m.
    long M = m * m;
    using T = std::array<long, 3>;
    auto mul = [M](const T& g, const T& h) {
      return T{(g[0] + h[0]) % M, (g[1] + h[1]) % M, (g[2] + h[2] + g[0] * h[1]) % M};
    };
    std::vector<T> powers;
    for (long a = 0; a < M; ++a)
      for (long b = 0; b < M; ++b)
        for (long c = 0; c < M; ++c) {
          T q{a, b, c}, r{0, 0, 0};
          for (long k = 0; k < m; ++k) r = mul(r, q);
          powers.push_back(r);
        }
    std::sort(powers.begin(), powers.end());
    powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
    auto sub = tcsep::testing::generated_subgroup(powers, T{0, 0, 0}, mul);
    long oracle_index = M * M * M / static_cast<long>(sub.size());
    CHECK(power_subgroup(H, m).index() == oracle_index);
    CHECK(basis_power_subgroup(H, m).index() == m * m * m);
  }
  CHECK(power_subgroup(H, 2).index() == 4);
  CHECK(power_subgroup(H, 6).index() == 108);

  auto Z3 = free_abelian(3);
  for (long m = 1; m <= 5; ++m) CHECK(power_subgroup(Z3, m).index() == m * m * m);
  auto N = dim5_group();
  Subgroup P = power_subgroup(N, 3);
  CHECK(P.has_finite_index());
  CHECK(P.is_normal());
  CHECK(basis_power_subgroup(N, 3).is_subgroup_of(P));
}

TEST_CASE("subgroups of prime-power index contain the matching power subgroup") {
  auto H = heisenberg();
  std::size_t checked = 0;
  for (long n : {2, 3, 4, 5, 7, 8}) {
    Subgroup Pn = power_subgroup(H, n);
    for (long d1 = 1; d1 <= n; ++d1)
      for (long d2 = 1; d1 * d2 <= n; ++d2) {
        if (n % (d1 * d2)) continue;
        long d3 = n / (d1 * d2);
        for (long u = 0; u < d2; ++u)
          for (long v = 0; v < d3; ++v)
            for (long w = 0; w < d3; ++w) {
              Subgroup S = Subgroup::closure(H, {el({d1, u, v}), el({0, d2, w}), el({0, 0, d3})});
              if (S.index() != n) continue;
              ++checked;
              CHECK(Pn.is_subgroup_of(S));
            }
      }
  }
  CHECK(checked > 50);
}

TEST_CASE("json round trips") {
  auto H = heisenberg();
  Json j = presentation_to_json(H->presentation());
  CHECK(j["commutators"]["y,x"]["z"] == "-1");
  Presentation back = presentation_from_json(j);
  CHECK(back.names == H->presentation().names);
  CHECK(back.commutator_relation(1, 0) == el({0, 0, -1}));
  Json spec_style = Json::parse(R"({"basis":["x","y","z"],"weights":{"x":1,"y":1,"z":2},
      "commutators":{"y,x":{"z":"-1"}},"class":2})");
  Group G(presentation_from_json(spec_style));
  CHECK(G.commutator(el({1, 0, 0}), el({0, 1, 0})) == el({0, 0, 1}));
  CHECK_THROWS(presentation_from_json(Json::parse(R"({"basis":["x","y","z"],"weights":{"x":1,"y":1,"z":2},
      "commutators":{"x,y":{"z":"1"}}})")));

  auto N = dim5_group();
  GroupHom phi = dim5_automorphism(N);
  GroupHom phi2 = hom_from_json(N, N, hom_to_json(phi));
  CHECK(phi2.images == phi.images);
  CHECK(element_from_json(*N, Json::parse(R"({"a3":"-4","b2":12})")) == el({0, 0, -4, 0, 12}));
  Element big{Int("123456789012345678901234567890"), 0, 0};
  CHECK(element_from_json(*H, element_to_json(big)) == big);
}
