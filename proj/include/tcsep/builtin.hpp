#pragma once

// Reference groups and automorphisms used throughout the tests, the CLI and the growth lab.

#include <memory>

#include "tcsep/group.hpp"

namespace tcsep {

using GroupPtr = std::shared_ptr<const Group>;

// Heisenberg group with basis x, y, z and [x,y] = z.
GroupPtr heisenberg();
// Class-2 group of Hirsch length 5: basis a1, a2, a3, b1, b2 with
// [a1,a2] = b1, [a2,a3] = b2 and all other basis commutators trivial.
GroupPtr dim5_group();
GroupPtr free_abelian(std::size_t k);

// The triple (a,b,c) with law (a1,b1,c1)(a2,b2,c2) = (a1+a2, b1+b2, c1+c2+a1*b2),
// i.e. the word y^b x^a z^c, converted to and from the normal form x^a y^b z^c'.
Element heisenberg_from_triple(const Int& a, const Int& b, const Int& c);
IntVec heisenberg_to_triple(const Element& g);

// Automorphism x -> x^a11 y^a21 z^e, y -> x^a12 y^a22 z^f, z -> z^det(A).
GroupHom heisenberg_automorphism(const GroupPtr& H, const IntMatrix& A, const Int& e = 0, const Int& f = 0);

// The three regimes of the eigenvalue-1 eigenspace of A on the abelianization.
enum class HeisenbergCase { kNoFixedLine = 1, kFixedLine = 2, kIdentity = 3 };
HeisenbergCase classify_heisenberg(const IntMatrix& A);
IntMatrix heisenberg_case_matrix(HeisenbergCase c);

// a1 -> a1, a2 -> a2, a3 -> a1^-1 a3, b1 -> b1, b2 -> b1 b2.
GroupHom dim5_automorphism(const GroupPtr& N);

}  // namespace tcsep
