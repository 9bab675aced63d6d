#include "tcsep/builtin.hpp"

namespace tcsep {

namespace {

Presentation base(std::vector<std::string> names, std::vector<int> weights) {
  Presentation p;
  p.names = std::move(names);
  p.weight = std::move(weights);
  p.comm.resize(p.names.size());
  return p;
}

Element unit(std::size_t h, std::size_t i, long e) {
  Element v = zeros(h);
  v[i] = e;
  return v;
}

}  // namespace

GroupPtr heisenberg() {
  Presentation p = base({"x", "y", "z"}, {1, 1, 2});
  p.set_commutator(1, 0, unit(3, 2, -1));  // [y,x] = z^-1
  return std::make_shared<const Group>(std::move(p));
}

GroupPtr dim5_group() {
  Presentation p = base({"a1", "a2", "a3", "b1", "b2"}, {1, 1, 1, 2, 2});
  p.set_commutator(1, 0, unit(5, 3, -1));  // [a2,a1] = b1^-1
  p.set_commutator(2, 1, unit(5, 4, -1));  // [a3,a2] = b2^-1
  return std::make_shared<const Group>(std::move(p));
}

GroupPtr free_abelian(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back("t" + std::to_string(i + 1));
  return std::make_shared<const Group>(base(std::move(names), std::vector<int>(k, 1)));
}

Element heisenberg_from_triple(const Int& a, const Int& b, const Int& c) { return {a, b, c - a * b}; }

IntVec heisenberg_to_triple(const Element& g) { return {g[0], g[1], g[2] + g[0] * g[1]}; }

GroupHom heisenberg_automorphism(const GroupPtr& H, const IntMatrix& A, const Int& e, const Int& f) {
  if (A.rows() != 2 || A.cols() != 2) throw std::invalid_argument("expected a 2x2 matrix");
  Int det = determinant(A);
  GroupHom phi{H, H, {}};
  phi.images.push_back({A.at(0, 0), A.at(1, 0), e});
  phi.images.push_back({A.at(0, 1), A.at(1, 1), f});
  phi.images.push_back({0, 0, det});
  return phi;
}

HeisenbergCase classify_heisenberg(const IntMatrix& A) {
  IntMatrix M = A;
  for (std::size_t i = 0; i < 2; ++i) M.at(i, i) -= 1;
  switch (kernel_basis(M).rank()) {
    case 0:
      return HeisenbergCase::kNoFixedLine;
    case 1:
      return HeisenbergCase::kFixedLine;
    default:
      return HeisenbergCase::kIdentity;
  }
}

IntMatrix heisenberg_case_matrix(HeisenbergCase c) {
  switch (c) {
    case HeisenbergCase::kNoFixedLine:
      return IntMatrix::from_longs({{2, 1}, {1, 1}});
    case HeisenbergCase::kFixedLine:
      return IntMatrix::from_longs({{0, 1}, {1, 0}});
    default:
      return IntMatrix::identity(2);
  }
}

GroupHom dim5_automorphism(const GroupPtr& N) {
  GroupHom phi{N, N, {}};
  phi.images = {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {-1, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 1, 1}};
  return phi;
}

}  // namespace tcsep
