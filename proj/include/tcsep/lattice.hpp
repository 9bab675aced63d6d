#pragma once

// Exact integer linear algebra: Hermite/Smith normal forms, kernels, image
// membership, saturation and the constructive preimage lemmas.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tcsep/integer.hpp"

namespace tcsep {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  explicit IntMatrix(const std::vector<IntVec>& rows, std::size_t cols_if_empty = 0);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_longs(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& at(std::size_t r, std::size_t c) { return data_[r][c]; }
  const Int& at(std::size_t r, std::size_t c) const { return data_[r][c]; }
  const IntVec& row(std::size_t r) const { return data_[r]; }
  IntVec& row(std::size_t r) { return data_[r]; }
  const std::vector<IntVec>& row_list() const { return data_; }
  IntVec column(std::size_t c) const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntVec apply(const IntVec& v) const;        // M * v (column vector)
  IntVec apply_left(const IntVec& v) const;   // v * M (row vector)
  bool operator==(const IntMatrix& o) const;
  bool is_zero() const;
  Int max_abs_entry() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<IntVec> data_;
};

// Row-style Hermite form: U*M = H, U unimodular, H in row echelon form with
// positive pivots and entries above each pivot reduced into [0, pivot).
struct HnfResult {
  IntMatrix H, U;
  std::vector<std::size_t> pivot_cols;  // one per nonzero row of H
};
HnfResult hnf(const IntMatrix& M);

// Smith form: U*M*V = S with d_1 | d_2 | ... on the diagonal, all >= 0.
struct SnfResult {
  IntMatrix S, U, V;
  std::vector<Int> invariants;  // nonzero diagonal entries
};
SnfResult snf(const IntMatrix& M);

Int determinant(const IntMatrix& M);
std::size_t rank(const IntMatrix& M);

struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // invariant factors, each >= 2, each dividing the next
  std::size_t dimension() const { return free_rank + torsion.size(); }
  bool valid() const;
  static AbelianGroup free(std::size_t r) { return AbelianGroup{r, {}}; }
};

// Coordinates: torsion components first (in the order of `torsion`), then free ones.
struct AbelianHom {
  IntMatrix matrix;  // codomain.dimension() x domain.dimension(); f(v) = matrix * v
  AbelianGroup domain, codomain;
  static AbelianHom free(const IntMatrix& M);
  bool well_defined() const;
  IntVec apply(const IntVec& v) const;  // reduced modulo codomain torsion
};

// Sublattice of Z^ambient with a Hermite-reduced row basis.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::size_t ambient);
  static Lattice span(std::size_t ambient, const std::vector<IntVec>& gens);
  static Lattice full(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool contains(const IntVec& v) const;
  std::optional<IntVec> coordinates(const IntVec& v) const;  // v = coords * basis
  bool operator==(const Lattice& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  Int max_abs_entry() const;

 private:
  std::size_t ambient_ = 0;
  std::vector<IntVec> basis_;
  std::vector<std::size_t> pivots_;
};

Lattice saturation(const Lattice& L);
Int isolator_index(const Lattice& L);  // [sqrt(L) : L], 1 for the zero lattice
Lattice intersect(const Lattice& a, const Lattice& b);

// Kernel {v : M v = 0} as a lattice in Z^{cols}.
Lattice kernel_basis(const IntMatrix& M);

// Explicit kernel vectors v_j = iota(x_j) - D e_j built from an invertible
// pivot minor with determinant D; they span a finite-index sublattice of the kernel.
struct BoundedKernel {
  std::vector<IntVec> vectors;
  Int minor_det = 0;
  Int max_entry = 0;
  std::vector<std::size_t> pivot_cols;
};
BoundedKernel bounded_kernel_vectors(const IntMatrix& M);

// Some a with M a = b, or nothing.
std::optional<IntVec> image_membership(const IntMatrix& M, const IntVec& b);
std::optional<IntVec> image_membership(const AbelianHom& f, const IntVec& b);

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Returns a in p^k Z^n with M a = b. Requires b in im(M) and b in p^{k+v_p(det M)} Z^m,
// where det M is the isolator index of the image; throws PreconditionError naming
// the failed condition otherwise.
IntVec p_power_preimage(const IntMatrix& M, const IntVec& b, unsigned long p, unsigned long k);
Int image_determinant(const IntMatrix& M);

// Unique preimage of b under a square nonsingular M via Cramer's rule.
struct CramerResult {
  IntVec a;
  Int det = 0;
  Int bound_value = 0;  // max(|M|, |b|)^n / |det|, the unscaled bound of the preimage size
};
std::optional<CramerResult> cramer_preimage(const IntMatrix& M, const IntVec& b);

struct DetNormRow {
  std::size_t sample_id = 0;
  std::size_t rank = 0;
  Int norm = 0;  // max absolute generator entry (upper bound for the subgroup norm)
  Int det = 0;   // isolator index
  double ratio = 0.0;
};
struct DetNormReport {
  std::vector<DetNormRow> rows;
  double max_ratio = 0.0;
  bool bounded = true;  // all ratios <= threshold
  std::string csv() const;
};
// Samples random rank-`sub_rank` sublattices of Z^ambient with entries in [-entry_bound, entry_bound].
DetNormReport det_norm_experiment(std::size_t ambient, std::size_t sub_rank, std::size_t samples,
                                  long entry_bound, double threshold, std::uint64_t seed);
DetNormRow det_norm_row(std::size_t id, const Lattice& L, const std::vector<IntVec>& gens);

}  // namespace tcsep
