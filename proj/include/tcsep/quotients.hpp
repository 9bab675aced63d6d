#pragma once

// Finite quotients N/K by characteristic or normal finite-index kernels, twisted classes in
// them, congruence depth scans, the pullback reduction check, torsion-free quotients and the
// separation of central subgroups.

#include <functional>
#include <optional>
#include <string>
#include <unordered_set>

#include "tcsep/io.hpp"
#include "tcsep/subgroup.hpp"

namespace tcsep {

using ElementSet = std::unordered_set<Element, IntVecHash>;

enum class KernelKind {
  kVerbal,      // N^m, generated by all m-th powers
  kBasisPower,  // normal closure of the m-th powers of the basis elements
  kCustom,
};
std::string kernel_kind_name(KernelKind k);

constexpr std::size_t kDefaultQuotientLimit = 200'000;

class FiniteQuotient {
 public:
  FiniteQuotient() = default;
  // The kernel must be normal of finite index.
  explicit FiniteQuotient(Subgroup kernel, Int modulus = 0, KernelKind kind = KernelKind::kCustom);

  const Group& group() const { return kernel_.group(); }
  const GroupPtr& group_ptr() const { return kernel_.group_ptr(); }
  const Subgroup& kernel() const { return kernel_; }
  const Int& order() const { return order_; }
  const Int& modulus() const { return modulus_; }
  KernelKind kind() const { return kind_; }

  Element canon(const Element& g) const { return kernel_.coset_rep(g); }
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  bool is_trivial(const Element& g) const { return kernel_.contains(g); }
  // Canonical representatives; throws BudgetExceeded when the order exceeds `limit`.
  std::vector<Element> elements(std::size_t limit = kDefaultQuotientLimit) const;
  // The subgroup of the quotient generated by the images of `gens`, as canonical forms.
  ElementSet generated(const std::vector<Element>& gens, std::size_t limit = kDefaultQuotientLimit) const;

 private:
  Subgroup kernel_;
  Int modulus_ = 0;
  KernelKind kind_ = KernelKind::kCustom;
  Int order_ = 0;
};

// N/N^m; the order is checked against the product over the prime-power parts of m.
FiniteQuotient congruence_quotient(const GroupPtr& G, const Int& m);
FiniteQuotient basis_power_quotient(const GroupPtr& G, const Int& m);

// Visits N/N^m and N/K_m (those accepted by `admit`) of order <= order_budget in increasing
// order, ties broken by smaller modulus and then verbal first, until `visit` returns true.
std::optional<FiniteQuotient> scan_by_order(const GroupPtr& G, const Int& order_budget,
                                            const std::function<bool(const FiniteQuotient&)>& admit,
                                            const std::function<bool(const FiniteQuotient&)>& visit);

struct InducedAutomorphism {
  FiniteQuotient quotient;
  GroupHom phi;
  Element apply(const Element& g) const { return quotient.canon(phi.apply(g)); }
  // Exhaustive check that the induced map permutes the quotient and respects products on generators.
  bool is_bijection(std::size_t limit = kDefaultQuotientLimit) const;
};
// Throws std::invalid_argument unless phi maps the kernel into itself.
InducedAutomorphism induced_automorphism(const FiniteQuotient& q, const GroupHom& phi);

// {z x phi(z)^-1 : z in Q}, by running z over every element of the quotient.
ElementSet twisted_class(const InducedAutomorphism& phi_bar, const Element& x);
// The same orbit grown from x by the action of the basis generators and their inverses.
ElementSet twisted_class_by_generators(const InducedAutomorphism& phi_bar, const Element& x);
bool separates(const FiniteQuotient& q, const GroupHom& phi, const Element& x, const Element& y);

struct DepthProbe {
  Int modulus;
  KernelKind kind;
  Int order;
  bool separated = false;
};
struct DepthResult {
  bool separated = false;
  Int order = 0;
  Int modulus = 0;
  KernelKind kind = KernelKind::kVerbal;
  bool budget_exhausted = false;
  // Every candidate quotient of smaller order was examined and failed.
  bool exhaustive_below = false;
  std::vector<DepthProbe> probes;  // in scan order
};
// Scans N/N^m and, when phi-invariant, N/K_m for all m with quotient order <= order_budget,
// in increasing order (ties: smaller modulus, verbal first). Requires x and y not phi-conjugate.
DepthResult congruence_depth(const GroupHom& phi, const Element& x, const Element& y, const Int& order_budget);

// Twisted subgroup of a finite quotient: displacements q phi(q)^-1 lying in gamma_c(Q).
ElementSet quotient_twisted_subgroup(const InducedAutomorphism& phi_bar, std::size_t limit = kDefaultQuotientLimit);

struct PullbackReport {
  bool holds = false;
  Int twisted_det = 1;  // D of phi_x
  unsigned long k0 = 0;
  Int large_modulus, small_modulus;
  Int large_order, small_order;
  ElementSet projected;  // rho of the twisted subgroup of N/N^{p^{k+k0}}
  ElementSet direct;     // pi_{p^k} of N_{phi_x}
};
// With phi_x = Inn(x) o phi and k0 = v_p(D_{phi_x}) + k*(p, c-1), compares the two sets in N/N^{p^k}.
PullbackReport verify_pullback_reduction(const GroupHom& phi, const Element& x, unsigned long p, unsigned long k,
                                         std::size_t limit = kDefaultQuotientLimit);

// Z(N), as the intersection of the centralizers of the basis elements.
Subgroup center(const GroupPtr& G);

struct QuotientGroup {
  GroupPtr group;
  GroupHom projection;
};
// N/K for a normal K whose layer projections are saturated, so that N/K is torsion-free.
// The new basis keeps the layer structure; throws std::invalid_argument otherwise.
QuotientGroup quotient_group(const GroupPtr& G, const Subgroup& K);

struct CentralQuotient {
  GroupPtr group;
  GroupHom projection;
  Element image_of_z;
  Subgroup center;  // of the quotient, rank 1 and generated by image_of_z
  std::size_t hirsch = 0;
  int steps = 0;    // complements quotiented out
};
// Repeatedly quotients by a complement of <z> in the current center until the center is
// cyclic. Throws std::invalid_argument if z is not a primitive central element.
CentralQuotient one_dim_central_quotient(const GroupPtr& G, const Element& z);

enum class CentralBranch { kInIsolator, kOutsideIsolator };
struct CentralSeparation {
  CentralBranch branch = CentralBranch::kInIsolator;
  GroupHom projection;  // N -> M
  FiniteQuotient quotient;  // finite quotient of M
  Int order;
  unsigned long p = 0, k = 0;          // cyclic separation modulus p^k (first branch)
  unsigned long proof_exponent = 0;    // k + k(p, c(M)) (first branch)
  bool verified = false;
};
// Separates x from the central subgroup H in a finite quotient of N.
CentralSeparation separate_central(const Subgroup& H, const Element& x, const Int& order_budget);

Json depth_to_json(const DepthResult& d);

}  // namespace tcsep
