#pragma once

// Independent reference computations used by the tests. None of these call
// into the library's algorithms beyond plain data types.

#include <gmpxx.h>

#include <array>
#include <random>
#include <set>
#include <vector>

#include "tcsep/lattice.hpp"

namespace tcsep::testing {

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, long bound) {
  IntMatrix M(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      M.at(i, j) = static_cast<long>(rng() % static_cast<unsigned long>(2 * bound + 1)) - bound;
  return M;
}

// Rank over Q by fraction Gaussian elimination.
inline std::size_t rational_rank(const IntMatrix& M) {
  std::vector<std::vector<mpq_class>> a(M.rows(), std::vector<mpq_class>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) a[i][j] = mpq_class(M.at(i, j));
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t p = r;
    while (p < M.rows() && a[p][c] == 0) ++p;
    if (p == M.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < M.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Product of random elementary matrices.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix U = IntMatrix::identity(n);
  for (int s = 0; s < 8; ++s) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    long q = static_cast<long>(rng() % 5) - 2;
    for (std::size_t c = 0; c < n; ++c) U.at(i, c) += q * U.at(j, c);
  }
  return U;
}

// Heisenberg triples under (a1,b1,c1)(a2,b2,c2) = (a1+a2, b1+b2, c1+c2+a1*b2).
struct TripleLaw {
  static IntVec mul(const IntVec& g, const IntVec& h) {
    return {g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1]};
  }
  static IntVec inv(const IntVec& g) { return {-g[0], -g[1], -g[2] + g[0] * g[1]}; }
};

inline IntVec triple_pow(const IntVec& g, long n) {
  IntVec base = n < 0 ? TripleLaw::inv(g) : g;
  IntVec r{0, 0, 0};
  for (long k = 0; k < std::labs(n); ++k) r = TripleLaw::mul(r, base);
  return r;
}

// Heisenberg automorphism x -> x^a y^c z^e, y -> x^b y^d z^f, z -> z^(ad-bc), evaluated in
// triple coordinates, where the triple (u,v,w) is the word y^v x^u z^w.
struct TripleAuto {
  IntVec img_x, img_y, img_z;
  TripleAuto(long a, long b, long c, long d, long e, long f)
      : img_x{a, c, a * c + e}, img_y{b, d, b * d + f}, img_z{0, 0, a * d - b * c} {}
  IntVec apply(const IntVec& t) const {
    return TripleLaw::mul(TripleLaw::mul(triple_pow(img_y, t[1].get_si()), triple_pow(img_x, t[0].get_si())),
                          triple_pow(img_z, t[2].get_si()));
  }
  IntVec displacement(const IntVec& t) const { return TripleLaw::mul(t, TripleLaw::inv(apply(t))); }
};

// Class-2 law from bilinearity: a_j^s a_i^t = a_i^t a_j^s [a_j,a_i]^(st) with the layer-2
// part central. `rel[j][i]` holds [a_j,a_i] as a full exponent vector.
inline IntVec class2_mul(const std::vector<std::vector<IntVec>>& rel, std::size_t top, const IntVec& g,
                         const IntVec& h) {
  IntVec r(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) r[k] = g[k] + h[k];
  for (std::size_t j = 0; j < top; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (rel[j][i].empty()) continue;
      mpz_class st = g[j] * h[i];
      for (std::size_t k = top; k < g.size(); ++k) r[k] += st * rel[j][i][k];
    }
  return r;
}

// Square integer matrices for unitriangular representations.
using Mat = std::vector<std::vector<mpz_class>>;

inline Mat mat_identity(std::size_t n) {
  Mat m(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  std::size_t n = a.size();
  Mat c(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Inverse of a unipotent upper triangular matrix by back substitution.
inline Mat mat_unipotent_inverse(const Mat& a) {
  std::size_t n = a.size();
  Mat x = mat_identity(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = c; r-- > 0;) {
      mpz_class s = 0;
      for (std::size_t k = r + 1; k <= c; ++k) s += a[r][k] * x[k][c];
      x[r][c] = -s;
    }
  return x;
}

inline Mat mat_pow(const Mat& a, const mpz_class& e) {
  Mat base = e < 0 ? mat_unipotent_inverse(a) : a;
  mpz_class n = abs(e);
  Mat r = mat_identity(a.size());
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = mat_mul(r, base);
    n >>= 1;
    if (n > 0) base = mat_mul(base, base);
  }
  return r;
}

// Subgroup of a finite group generated by `gens`, by breadth-first closure.
template <class T, class Mul>
std::set<T> generated_subgroup(const std::vector<T>& gens, const T& id, Mul mul) {
  std::set<T> seen{id};
  std::vector<T> frontier{id};
  while (!frontier.empty()) {
    std::vector<T> next;
    for (const auto& a : frontier)
      for (const auto& g : gens) {
        T b = mul(a, g);
        if (seen.insert(b).second) next.push_back(b);
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace tcsep::testing
