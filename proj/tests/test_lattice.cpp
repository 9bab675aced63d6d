#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tcsep/lattice.hpp"

using namespace tcsep;
using tcsep::testing::rational_rank;
using tcsep::testing::random_matrix;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

bool unimodular(const IntMatrix& U) { return abs(determinant(U)) == 1; }

}  // namespace

TEST_CASE("snf of small diagonal matrices") {
  auto r = snf(IntMatrix::from_longs({{2, 0}, {0, 3}}));
  CHECK(r.S == IntMatrix::from_longs({{1, 0}, {0, 6}}));
  auto q = snf(IntMatrix::from_longs({{7, 0}, {0, 7}}));
  CHECK(q.S == IntMatrix::from_longs({{7, 0}, {0, 7}}));
}

TEST_CASE("hnf of the identity layer matrix is the identity") {
  auto h = hnf(IntMatrix::identity(2));
  CHECK(h.H == IntMatrix::identity(2));
  CHECK(h.U == IntMatrix::identity(2));
}

TEST_CASE("hnf and snf round trips on random matrices") {
  std::mt19937_64 rng(20240601);
  for (int it = 0; it < 200; ++it) {
    std::size_t m = 1 + rng() % 5, n = 1 + rng() % 6;
    IntMatrix M = random_matrix(rng, m, n, 9);
    auto h = hnf(M);
    CHECK(h.U * M == h.H);
    CHECK(unimodular(h.U));
    for (std::size_t i = 0; i < h.pivot_cols.size(); ++i) {
      const Int& piv = h.H.at(i, h.pivot_cols[i]);
      CHECK(piv > 0);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(h.H.at(k, h.pivot_cols[i]) >= 0);
        CHECK(h.H.at(k, h.pivot_cols[i]) < piv);
      }
    }
    auto s = snf(M);
    CHECK(s.U * M * s.V == s.S);
    CHECK(unimodular(s.U));
    CHECK(unimodular(s.V));
    for (std::size_t i = 0; i + 1 < s.invariants.size(); ++i) CHECK(divides(s.invariants[i], s.invariants[i + 1]));
    CHECK(s.invariants.size() == rational_rank(M));
  }
}

TEST_CASE("kernel of the example matrix is generated by (3,2,-6)") {
  IntMatrix M = IntMatrix::from_longs({{2, 0, 1}, {0, 3, 1}});
  Lattice K = kernel_basis(M);
  CHECK(K == Lattice::span(3, {iv({3, 2, -6})}));
  auto bk = bounded_kernel_vectors(M);
  REQUIRE(bk.vectors.size() == 1);
  CHECK(bk.vectors[0] == iv({3, 2, -6}));
  CHECK(bk.minor_det == 6);
  CHECK(bk.max_entry == 6);
}

TEST_CASE("kernel of the zero map is everything") {
  CHECK(kernel_basis(IntMatrix(2, 2)) == Lattice::full(2));
}

TEST_CASE("kernel agrees with a rational nullspace oracle") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 100; ++it) {
    std::size_t m = 1 + rng() % 6, n = 1 + rng() % 8;
    IntMatrix M = random_matrix(rng, m, n, 5);
    Lattice K = kernel_basis(M);
    for (const auto& v : K.basis()) CHECK(is_zero(M.apply(v)));
    CHECK(K.rank() == n - rational_rank(M));
    // Integer kernels are saturated.
    CHECK(isolator_index(K) == 1);
    auto bk = bounded_kernel_vectors(M);
    for (const auto& v : bk.vectors) {
      CHECK(is_zero(M.apply(v)));
      CHECK(K.contains(v));
    }
    CHECK(Lattice::span(n, bk.vectors).rank() == K.rank());
  }
}

TEST_CASE("image membership") {
  auto a = image_membership(IntMatrix::from_longs({{2, 0}, {0, 3}}), iv({0, 0}));
  REQUIRE(a);
  CHECK(*a == iv({0, 0}));
  auto b = image_membership(IntMatrix::from_longs({{2, 0}, {0, 3}}), iv({4, 3}));
  REQUIRE(b);
  CHECK(*b == iv({2, 1}));
  CHECK_FALSE(image_membership(IntMatrix::from_longs({{2, 0}, {0, 2}}), iv({1, 0})));
}

TEST_CASE("image membership with codomain torsion") {
  AbelianHom f{IntMatrix::from_longs({{1}, {2}}), AbelianGroup::free(1), AbelianGroup{1, {Int(4)}}};
  CHECK(f.well_defined());
  auto a = image_membership(f, iv({5, 2}));
  REQUIRE(a);
  CHECK(f.apply(*a) == iv({1, 2}));
  CHECK_FALSE(image_membership(f, iv({1, 3})));
}

TEST_CASE("saturation and isolator index") {
  Lattice nz = Lattice::span(1, {iv({12})});
  CHECK(saturation(nz) == Lattice::full(1));
  CHECK(isolator_index(nz) == 12);
  Lattice diag = Lattice::span(2, {iv({1, 9})});
  CHECK(isolator_index(diag) == 1);
  Lattice d23 = Lattice::span(2, {iv({2, 0}), iv({0, 3})});
  CHECK(isolator_index(d23) == 6);
  CHECK(isolator_index(Lattice(3)) == 1);
}

TEST_CASE("saturation is idempotent on random lattices") {
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 1 + rng() % 5, k = 1 + rng() % 4;
    IntMatrix G = random_matrix(rng, k, n, 12);
    Lattice L = Lattice::span(n, G.row_list());
    Lattice S = saturation(L);
    CHECK(saturation(S) == S);
    CHECK(isolator_index(S) == 1);
    CHECK(S.rank() == L.rank());
    for (const auto& v : L.basis()) CHECK(S.contains(v));
  }
}

TEST_CASE("p-power preimage") {
  // Multiplication by p on Z.
  const unsigned long p = 3, k = 2;
  IntMatrix f = IntMatrix::from_longs({{3}});
  CHECK(p_power_preimage(f, iv({27}), p, k) == iv({9}));

  // diag(1,2), p=2, k=1, b=(4,4): brute force the preimages in a box.
  IntMatrix d = IntMatrix::from_longs({{1, 0}, {0, 2}});
  std::vector<IntVec> brute;
  for (long x = -10; x <= 10; ++x)
    for (long y = -10; y <= 10; ++y)
      if (d.apply(iv({x, y})) == iv({4, 4})) brute.push_back(iv({x, y}));
  REQUIRE(brute.size() == 1);
  IntVec a = p_power_preimage(d, iv({4, 4}), 2, 1);
  CHECK(a == brute[0]);
  CHECK(a == iv({4, 2}));

  // Unimodular f: the preimage is f^{-1}(b).
  IntMatrix u = IntMatrix::from_longs({{2, 1}, {1, 1}});
  IntVec b = iv({25, 50});
  IntVec pre = p_power_preimage(u, b, 5, 2);
  CHECK(u.apply(pre) == b);

  CHECK_THROWS_AS(p_power_preimage(d, iv({1, 1}), 2, 1), PreconditionError);
  CHECK_THROWS_AS(p_power_preimage(d, iv({2, 2}), 2, 1), PreconditionError);
}

TEST_CASE("p-power preimage divisibility on random injective maps") {
  std::mt19937_64 rng(4242);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 1 + rng() % 3, m = n + rng() % 2;
    IntMatrix M = random_matrix(rng, m, n, 4);
    if (rational_rank(M) != n) continue;
    unsigned long p = (rng() % 2) ? 2 : 3, k = rng() % 3;
    long v = vp(image_determinant(M), p);
    IntVec x(n);
    for (auto& e : x) e = static_cast<long>(rng() % 7) - 3;
    IntVec b = scale(M.apply(x), ipow(Int(p), k + static_cast<unsigned long>(v)));
    IntVec a = p_power_preimage(M, b, p, k);
    CHECK(M.apply(a) == b);
    for (const auto& e : a) CHECK(divides(ipow(Int(p), k), e));
  }
}

TEST_CASE("cramer preimage") {
  auto r = cramer_preimage(IntMatrix::identity(2), iv({3, -4}));
  REQUIRE(r);
  CHECK(r->a == iv({3, -4}));
  auto d = cramer_preimage(IntMatrix::from_longs({{2, 0}, {0, 2}}), iv({2, 4}));
  REQUIRE(d);
  CHECK(d->a == iv({1, 2}));
  CHECK_FALSE(cramer_preimage(IntMatrix::from_longs({{2, 0}, {0, 2}}), iv({1, 4})));
  CHECK_THROWS(cramer_preimage(IntMatrix::from_longs({{1, 2}, {2, 4}}), iv({1, 1})));

  std::mt19937_64 rng(99);
  for (int it = 0; it < 50; ++it) {
    IntMatrix U = tcsep::testing::random_unimodular(rng, 3);
    IntVec a(3);
    for (auto& e : a) e = static_cast<long>(rng() % 21) - 10;
    auto c = cramer_preimage(U, U.apply(a));
    REQUIRE(c);
    CHECK(c->a == a);
    auto im = image_membership(U, U.apply(a));
    REQUIRE(im);
    CHECK(*im == c->a);
  }
}

TEST_CASE("determinant-norm experiment") {
  auto row = det_norm_row(0, Lattice::span(1, {iv({10})}), {iv({10})});
  CHECK(row.det == 10);
  CHECK(row.ratio == doctest::Approx(1.0));
  auto row2 = det_norm_row(1, Lattice::span(2, {iv({1, 10})}), {iv({1, 10})});
  CHECK(row2.det == 1);
  CHECK(row2.ratio == doctest::Approx(0.1));
  // Hadamard: det <= (sqrt(3) * max entry)^2 for rank-2 sublattices of Z^3.
  auto rep = det_norm_experiment(3, 2, 100, 20, 3.0, 20240601);
  CHECK(rep.rows.size() == 100);
  CHECK(rep.bounded);
  CHECK(rep.csv().rfind("sample_id,rank,norm,det,ratio\n", 0) == 0);
}
