#include "tcsep/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tcsep {

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, IntVec(cols, Int(0))) {}

IntMatrix::IntMatrix(const std::vector<IntVec>& rows, std::size_t cols_if_empty)
    : rows_(rows.size()), cols_(rows.empty() ? cols_if_empty : rows[0].size()), data_(rows) {
  for (const auto& r : data_)
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from_longs(const std::vector<std::vector<long>>& rows) {
  std::vector<IntVec> r;
  for (const auto& row : rows) {
    IntVec v;
    for (long x : row) v.emplace_back(x);
    r.push_back(v);
  }
  return IntMatrix(r);
}

IntVec IntMatrix::column(std::size_t c) const {
  IntVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = data_[r][c];
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) T.at(c, r) = data_[r][c];
  return T;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in product");
  IntMatrix P(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (data_[i][k] == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) P.at(i, j) += data_[i][k] * o.at(k, j);
    }
  return P;
}

IntVec IntMatrix::apply(const IntVec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch in apply");
  IntVec r(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += data_[i][j] * v[j];
  return r;
}

IntVec IntMatrix::apply_left(const IntVec& v) const {
  if (v.size() != rows_) throw std::invalid_argument("dimension mismatch in apply_left");
  IntVec r(cols_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j) r[j] += v[i] * data_[i][j];
  }
  return r;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool IntMatrix::is_zero() const {
  for (const auto& r : data_)
    if (!tcsep::is_zero(r)) return false;
  return true;
}

Int IntMatrix::max_abs_entry() const {
  Int m = 0;
  for (const auto& r : data_) m = std::max(m, max_abs(r));
  return m;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ",";
    os << "[";
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << data_[r][c].get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- row and column operations

namespace {

// Replace rows (r, i) by (u*r + v*i, -b/g*r + a/g*i) where a, b are the entries in column c.
// When a divides b this is a plain elimination, never a swap, so loops terminate.
void combine_rows(IntMatrix& A, IntMatrix* U, std::size_t r, std::size_t i, std::size_t c) {
  Int a = A.at(r, c), b = A.at(i, c), u, v, g, s, t;
  if (a != 0 && divides(a, b)) {
    u = 1, v = 0, s = -b / a, t = 1;
  } else {
    g = gcd_ext(a, b, u, v);
    s = -b / g, t = a / g;
  }
  auto apply = [&](IntMatrix& X) {
    for (std::size_t j = 0; j < X.cols(); ++j) {
      Int x = X.at(r, j), y = X.at(i, j);
      X.at(r, j) = u * x + v * y;
      X.at(i, j) = s * x + t * y;
    }
  };
  apply(A);
  if (U) apply(*U);
}

void combine_cols(IntMatrix& A, IntMatrix* V, std::size_t r, std::size_t c, std::size_t j) {
  Int a = A.at(r, c), b = A.at(r, j), u, v, g, s, t;
  if (a != 0 && divides(a, b)) {
    u = 1, v = 0, s = -b / a, t = 1;
  } else {
    g = gcd_ext(a, b, u, v);
    s = -b / g, t = a / g;
  }
  auto apply = [&](IntMatrix& X) {
    for (std::size_t i = 0; i < X.rows(); ++i) {
      Int x = X.at(i, c), y = X.at(i, j);
      X.at(i, c) = u * x + v * y;
      X.at(i, j) = s * x + t * y;
    }
  };
  apply(A);
  if (V) apply(*V);
}

void swap_rows(IntMatrix& A, std::size_t a, std::size_t b) { std::swap(A.row(a), A.row(b)); }

void swap_cols(IntMatrix& A, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < A.rows(); ++i) std::swap(A.at(i, a), A.at(i, b));
}

void negate_row(IntMatrix& A, std::size_t r) {
  for (auto& x : A.row(r)) x = -x;
}

void add_row_multiple(IntMatrix& A, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t j = 0; j < A.cols(); ++j) A.at(dst, j) += q * A.at(src, j);
}

}  // namespace

HnfResult hnf(const IntMatrix& M) {
  HnfResult res{M, IntMatrix::identity(M.rows()), {}};
  IntMatrix& H = res.H;
  IntMatrix& U = res.U;
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
    for (std::size_t i = r + 1; i < H.rows(); ++i)
      if (H.at(i, c) != 0) combine_rows(H, &U, r, i, c);
    if (H.at(r, c) == 0) continue;
    if (H.at(r, c) < 0) {
      negate_row(H, r);
      negate_row(U, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(H.at(i, c), H.at(r, c));
      if (q != 0) {
        add_row_multiple(H, i, r, -q);
        add_row_multiple(U, i, r, -q);
      }
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  return res;
}

SnfResult snf(const IntMatrix& M) {
  SnfResult res{M, IntMatrix::identity(M.rows()), IntMatrix::identity(M.cols()), {}};
  IntMatrix& S = res.S;
  const std::size_t m = S.rows(), n = S.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Bring the smallest nonzero entry of the trailing block to (t,t).
    bool found = false;
    std::size_t bi = 0, bj = 0;
    Int best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (S.at(i, j) != 0 && (!found || abs(S.at(i, j)) < best)) {
          found = true;
          best = abs(S.at(i, j));
          bi = i;
          bj = j;
        }
    if (!found) break;
    if (bi != t) {
      swap_rows(S, t, bi);
      swap_rows(res.U, t, bi);
    }
    if (bj != t) {
      swap_cols(S, t, bj);
      swap_cols(res.V, t, bj);
    }
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i)
        if (S.at(i, t) != 0) combine_rows(S, &res.U, t, i, t);
      for (std::size_t j = t + 1; j < n; ++j)
        if (S.at(t, j) != 0) combine_cols(S, &res.V, t, t, j);
      for (std::size_t i = t + 1; i < m; ++i)
        if (S.at(i, t) != 0) dirty = true;
      if (dirty) continue;
      // Enforce divisibility of the trailing block by the pivot.
      bool fixed = true;
      for (std::size_t i = t + 1; i < m && fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!divides(S.at(t, t), S.at(i, j))) {
            add_row_multiple(S, t, i, Int(1));
            add_row_multiple(res.U, t, i, Int(1));
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (S.at(t, t) < 0) {
      negate_row(S, t);
      negate_row(res.U, t);
    }
  }
  for (std::size_t t = 0; t < std::min(m, n); ++t)
    if (S.at(t, t) != 0) res.invariants.push_back(S.at(t, t));
  return res;
}

Int determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IntMatrix A = M;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A.at(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(A, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = A.at(k, k) * A.at(i, j) - A.at(i, k) * A.at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        A.at(i, j) = v;
      }
    prev = A.at(k, k);
  }
  return sign * A.at(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& M) { return hnf(M).pivot_cols.size(); }

// ---------------------------------------------------------------- abelian groups

bool AbelianGroup::valid() const {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) return false;
    if (i + 1 < torsion.size() && !divides(torsion[i], torsion[i + 1])) return false;
  }
  return true;
}

AbelianHom AbelianHom::free(const IntMatrix& M) {
  return AbelianHom{M, AbelianGroup::free(M.cols()), AbelianGroup::free(M.rows())};
}

bool AbelianHom::well_defined() const {
  if (matrix.rows() != codomain.dimension() || matrix.cols() != domain.dimension()) return false;
  // A domain torsion generator of order d must map to an element killed by d.
  for (std::size_t j = 0; j < domain.torsion.size(); ++j) {
    const Int& d = domain.torsion[j];
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
      Int v = d * matrix.at(i, j);
      if (i < codomain.torsion.size()) {
        if (!divides(codomain.torsion[i], v)) return false;
      } else if (v != 0) {
        return false;
      }
    }
  }
  return true;
}

IntVec AbelianHom::apply(const IntVec& v) const {
  IntVec r = matrix.apply(v);
  for (std::size_t i = 0; i < codomain.torsion.size(); ++i) r[i] = mod_floor(r[i], codomain.torsion[i]);
  return r;
}

// ---------------------------------------------------------------- lattices

Lattice::Lattice(std::size_t ambient) : ambient_(ambient) {}

Lattice Lattice::span(std::size_t ambient, const std::vector<IntVec>& gens) {
  Lattice L(ambient);
  if (gens.empty()) return L;
  HnfResult h = hnf(IntMatrix(gens));
  for (std::size_t i = 0; i < h.pivot_cols.size(); ++i) L.basis_.push_back(h.H.row(i));
  L.pivots_ = h.pivot_cols;
  return L;
}

Lattice Lattice::full(std::size_t ambient) {
  std::vector<IntVec> g;
  for (std::size_t i = 0; i < ambient; ++i) {
    IntVec e = zeros(ambient);
    e[i] = 1;
    g.push_back(e);
  }
  return span(ambient, g);
}

std::optional<IntVec> Lattice::coordinates(const IntVec& v0) const {
  if (v0.size() != ambient_) throw std::invalid_argument("lattice dimension mismatch");
  IntVec v = v0;
  IntVec coords(basis_.size(), Int(0));
  std::size_t col = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (; col < pivots_[i]; ++col)
      if (v[col] != 0) return std::nullopt;
    const Int& piv = basis_[i][pivots_[i]];
    if (!divides(piv, v[pivots_[i]])) return std::nullopt;
    Int q = v[pivots_[i]] / piv;
    coords[i] = q;
    for (std::size_t j = pivots_[i]; j < ambient_; ++j) v[j] -= q * basis_[i][j];
    col = pivots_[i] + 1;
  }
  if (!tcsep::is_zero(v)) return std::nullopt;
  return coords;
}

bool Lattice::contains(const IntVec& v) const { return coordinates(v).has_value(); }

Int Lattice::max_abs_entry() const {
  Int m = 0;
  for (const auto& b : basis_) m = std::max(m, max_abs(b));
  return m;
}

Lattice kernel_basis(const IntMatrix& M) {
  const std::size_t n = M.cols();
  if (M.rows() == 0) return Lattice::full(n);
  HnfResult h = hnf(M.transpose());
  std::vector<IntVec> gens;
  for (std::size_t i = h.pivot_cols.size(); i < n; ++i) gens.push_back(h.U.row(i));
  return Lattice::span(n, gens);
}

Lattice saturation(const Lattice& L) {
  const std::size_t r = L.ambient();
  if (L.rank() == 0) return Lattice(r);
  Lattice perp = kernel_basis(IntMatrix(L.basis()));
  return kernel_basis(IntMatrix(perp.basis(), r));
}

Int isolator_index(const Lattice& L) {
  if (L.rank() == 0) return 1;
  Int idx = 1;
  for (const auto& d : snf(IntMatrix(L.basis())).invariants) idx *= d;
  return idx;
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  const std::size_t r = a.ambient();
  if (a.rank() == 0 || b.rank() == 0) return Lattice(r);
  std::vector<IntVec> rows = a.basis();
  for (const auto& v : b.basis()) rows.push_back(v);
  // Left kernel of the stacked basis: x*A + y*B = 0, then x*A lies in both.
  Lattice k = kernel_basis(IntMatrix(rows).transpose());
  std::vector<IntVec> gens;
  for (const auto& kv : k.basis()) {
    IntVec x(kv.begin(), kv.begin() + static_cast<long>(a.rank()));
    gens.push_back(IntMatrix(a.basis()).apply_left(x));
  }
  return Lattice::span(r, gens);
}

BoundedKernel bounded_kernel_vectors(const IntMatrix& M) {
  BoundedKernel out;
  const std::size_t n = M.cols();
  // Independent rows (pivots of the transposed echelon) and independent columns.
  HnfResult hr = hnf(M.transpose());
  std::vector<std::size_t> rows_sel = hr.pivot_cols;
  std::vector<IntVec> sub_rows;
  for (std::size_t r : rows_sel) sub_rows.push_back(M.row(r));
  if (sub_rows.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      IntVec e = zeros(n);
      e[j] = 1;
      out.vectors.push_back(e);
    }
    out.minor_det = 1;
    out.max_entry = n ? 1 : 0;
    return out;
  }
  IntMatrix R(sub_rows);
  HnfResult hc = hnf(R);
  out.pivot_cols = hc.pivot_cols;
  const std::size_t k = out.pivot_cols.size();
  IntMatrix B(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) B.at(i, j) = R.at(i, out.pivot_cols[j]);
  out.minor_det = determinant(B);
  std::vector<bool> is_pivot(n, false);
  for (auto c : out.pivot_cols) is_pivot[c] = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    // Cramer: x_i = det(B with column i replaced by D*col_j) / D = det(B_i(col_j)).
    IntVec col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = R.at(i, j);
    IntVec v = zeros(n);
    for (std::size_t i = 0; i < k; ++i) {
      IntMatrix Bi = B;
      for (std::size_t r = 0; r < k; ++r) Bi.at(r, i) = col[r];
      v[out.pivot_cols[i]] = determinant(Bi);
    }
    v[j] = -out.minor_det;
    out.vectors.push_back(v);
    out.max_entry = std::max(out.max_entry, max_abs(v));
  }
  return out;
}

std::optional<IntVec> image_membership(const IntMatrix& M, const IntVec& b) {
  if (b.size() != M.rows()) throw std::invalid_argument("image_membership: dimension mismatch");
  if (M.cols() == 0) {
    if (tcsep::is_zero(b)) return IntVec{};
    return std::nullopt;
  }
  HnfResult h = hnf(M.transpose());
  Lattice L(M.rows());
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < h.pivot_cols.size(); ++i) rows.push_back(h.H.row(i));
  L = Lattice::span(M.rows(), rows);
  auto c = L.coordinates(b);
  if (!c) return std::nullopt;
  // L's basis equals the nonzero rows of h.H (already Hermite reduced).
  IntVec cu = zeros(M.cols());
  for (std::size_t i = 0; i < c->size(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) cu[j] += (*c)[i] * h.U.at(i, j);
  return cu;
}

std::optional<IntVec> image_membership(const AbelianHom& f, const IntVec& b) {
  const auto& tor = f.codomain.torsion;
  if (tor.empty()) return image_membership(f.matrix, b);
  IntMatrix A(f.matrix.rows(), f.matrix.cols() + tor.size());
  for (std::size_t i = 0; i < f.matrix.rows(); ++i)
    for (std::size_t j = 0; j < f.matrix.cols(); ++j) A.at(i, j) = f.matrix.at(i, j);
  for (std::size_t t = 0; t < tor.size(); ++t) A.at(t, f.matrix.cols() + t) = tor[t];
  auto a = image_membership(A, b);
  if (!a) return std::nullopt;
  a->resize(f.matrix.cols());
  return a;
}

Int image_determinant(const IntMatrix& M) {
  std::vector<IntVec> cols;
  for (std::size_t j = 0; j < M.cols(); ++j) cols.push_back(M.column(j));
  return isolator_index(Lattice::span(M.rows(), cols));
}

IntVec p_power_preimage(const IntMatrix& M, const IntVec& b, unsigned long p, unsigned long k) {
  if (!is_prime(p)) throw std::invalid_argument("p_power_preimage: p is not prime");
  if (!image_membership(M, b)) throw PreconditionError("p_power_preimage: b is not in the image");
  const long v = vp(image_determinant(M), p);
  const Int pk = ipow(Int(p), k), pv = ipow(Int(p), static_cast<unsigned long>(v));
  const Int big = pk * pv;
  for (const auto& x : b)
    if (!divides(big, x))
      throw PreconditionError("p_power_preimage: b is not divisible by p^(k+v_p(det)) = " + big.get_str());
  IntVec target(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) target[i] = b[i] / pk;  // = p^v * g
  auto at = image_membership(M, target);
  if (!at) throw std::logic_error("p_power_preimage: p^v g outside the image");
  IntVec a = scale(*at, pk);
  if (M.apply(a) != b) throw std::logic_error("p_power_preimage: verification failed");
  return a;
}

std::optional<CramerResult> cramer_preimage(const IntMatrix& M, const IntVec& b) {
  if (M.rows() != M.cols()) throw std::invalid_argument("cramer_preimage: matrix not square");
  const std::size_t n = M.rows();
  CramerResult res;
  res.det = determinant(M);
  if (res.det == 0) throw std::invalid_argument("cramer_preimage: singular matrix");
  res.a.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix Mi = M;
    for (std::size_t r = 0; r < n; ++r) Mi.at(r, i) = b[r];
    Int num = determinant(Mi);
    if (!divides(res.det, num)) return std::nullopt;
    res.a[i] = num / res.det;
  }
  Int base = std::max(M.max_abs_entry(), max_abs(b));
  Int num = ipow(base, n);
  Int d = abs(res.det);
  res.bound_value = (num + d - 1) / d;
  return res;
}

DetNormRow det_norm_row(std::size_t id, const Lattice& L, const std::vector<IntVec>& gens) {
  DetNormRow row;
  row.sample_id = id;
  row.rank = L.rank();
  for (const auto& g : gens) row.norm = std::max(row.norm, max_abs(g));
  row.det = isolator_index(L);
  if (row.norm > 0)
    row.ratio = row.det.get_d() / std::pow(row.norm.get_d(), static_cast<double>(row.rank));
  return row;
}

DetNormReport det_norm_experiment(std::size_t ambient, std::size_t sub_rank, std::size_t samples,
                                  long entry_bound, double threshold, std::uint64_t seed) {
  DetNormReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-entry_bound, entry_bound);
  std::size_t id = 0;
  while (rep.rows.size() < samples) {
    std::vector<IntVec> gens(sub_rank, IntVec(ambient));
    for (auto& g : gens)
      for (auto& x : g) x = dist(rng);
    Lattice L = Lattice::span(ambient, gens);
    if (L.rank() != sub_rank) continue;
    DetNormRow row = det_norm_row(id++, L, gens);
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    if (row.ratio > threshold) rep.bounded = false;
    rep.rows.push_back(row);
  }
  return rep;
}

std::string DetNormReport::csv() const {
  std::ostringstream os;
  os << "sample_id,rank,norm,det,ratio\n";
  for (const auto& r : rows)
    os << r.sample_id << "," << r.rank << "," << r.norm.get_str() << "," << r.det.get_str() << "," << r.ratio << "\n";
  return os.str();
}

}  // namespace tcsep
