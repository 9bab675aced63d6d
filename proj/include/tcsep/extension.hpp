#pragma once

// Finite extensions G of a nilpotent kernel N given by an action and a cocycle, twisted
// classes of G as unions of translated twisted classes of N, and separation of such unions
// in finite quotients of G.

#include <memory>
#include <string>
#include <unordered_set>

#include "tcsep/quotients.hpp"

namespace tcsep {

// The element n s_i.
struct ExtElement {
  Element n;
  std::size_t coset = 0;
  bool operator==(const ExtElement& o) const { return coset == o.coset && n == o.n; }
};

struct ExtElementHash {
  std::size_t operator()(const ExtElement& e) const { return IntVecHash{}(e.n) * 31 + e.coset; }
};
using ExtElementSet = std::unordered_set<ExtElement, ExtElementHash>;

// s_i s_j = n s_k
struct CocycleEntry {
  std::size_t coset = 0;
  Element n;
};

class FiniteExtension {
 public:
  // reps[0] is the identity coset. action[i] is conjugation by s_i on N; cocycle[i][j] gives s_i s_j.
  // Throws std::invalid_argument listing every violated condition.
  FiniteExtension(GroupPtr kernel, std::vector<std::string> reps, std::vector<GroupHom> action,
                  std::vector<std::vector<CocycleEntry>> cocycle);

  const Group& kernel() const { return *N_; }
  const GroupPtr& kernel_ptr() const { return N_; }
  std::size_t index() const { return reps_.size(); }
  const std::vector<std::string>& rep_names() const { return reps_; }
  const GroupHom& action(std::size_t i) const { return action_.at(i); }
  const CocycleEntry& cocycle(std::size_t i, std::size_t j) const { return cocycle_.at(i).at(j); }

  ExtElement identity() const { return {N_->identity(), 0}; }
  ExtElement from_kernel(const Element& n) const { return {n, 0}; }
  ExtElement rep(std::size_t i) const { return {N_->identity(), i}; }
  ExtElement multiply(const ExtElement& a, const ExtElement& b) const;
  ExtElement inverse(const ExtElement& a) const;
  bool in_kernel(const ExtElement& a) const { return a.coset == 0; }
  // n -> g n g^-1 on N.
  GroupHom conjugation_on_kernel(const ExtElement& g) const;
  // Kernel basis generators followed by the nontrivial coset representatives.
  std::vector<ExtElement> standard_generators() const;

  std::string format(const ExtElement& a) const;

 private:
  GroupPtr N_;
  std::vector<std::string> reps_;
  std::vector<GroupHom> action_;
  std::vector<std::vector<CocycleEntry>> cocycle_;
  std::vector<std::size_t> inverse_coset_;
};

using ExtPtr = std::shared_ptr<const FiniteExtension>;

// Z semidirect C2, the generator of C2 acting by n -> -n.
ExtPtr infinite_dihedral();
// H3 semidirect C2, the generator of C2 acting by x -> x^-1, y -> y^-1, z -> z.
ExtPtr heisenberg_inversion_extension();

class ExtAutomorphism {
 public:
  // phi(n) = restriction(n) for n in N and phi(s_i) = rep_images[i]. Throws std::invalid_argument
  // unless this defines an automorphism of G.
  ExtAutomorphism(ExtPtr ext, GroupHom restriction, std::vector<ExtElement> rep_images);
  // Reads kernel generator images as extension elements; throws if one leaves N.
  static ExtAutomorphism from_images(ExtPtr ext, const std::vector<ExtElement>& kernel_images,
                                     std::vector<ExtElement> rep_images);
  static ExtAutomorphism identity(ExtPtr ext);

  const FiniteExtension& extension() const { return *ext_; }
  const ExtPtr& extension_ptr() const { return ext_; }
  const GroupHom& restriction() const { return restriction_; }
  const ExtElement& rep_image(std::size_t i) const { return rep_images_.at(i); }
  ExtElement apply(const ExtElement& g) const;

 private:
  ExtPtr ext_;
  GroupHom restriction_;
  std::vector<ExtElement> rep_images_;
};

// One translated piece [1]_psi . translate of a twisted class of G.
struct TwistedPart {
  std::size_t rep = 0;
  ExtElement translate;  // s_i x phi(s_i)^-1
  GroupHom psi;          // conjugation by the translate, after the restriction of phi
};
std::vector<TwistedPart> decompose_twisted_class(const ExtAutomorphism& phi, const ExtElement& x);

struct VirtualDecision {
  bool conjugate = false;
  std::optional<ExtElement> witness;  // g with g x phi(g)^-1 = y
  std::optional<std::size_t> part;    // the piece containing y
};
VirtualDecision is_conjugate_virtual(const ExtAutomorphism& phi, const ExtElement& x, const ExtElement& y);

// The finite quotient G/L for a subgroup L of N that is normal in G and phi-invariant.
class ExtQuotient {
 public:
  ExtQuotient(ExtPtr ext, Subgroup kernel);
  const FiniteExtension& extension() const { return *ext_; }
  const Subgroup& kernel() const { return L_; }
  Int order() const { return L_.index() * ext_->index(); }
  ExtElement canon(const ExtElement& g) const { return {L_.coset_rep(g.n), g.coset}; }
  std::vector<ExtElement> elements(std::size_t limit = kDefaultQuotientLimit) const;
  // N/L, the restriction of the quotient map to the kernel.
  FiniteQuotient restriction() const { return FiniteQuotient(L_); }

 private:
  ExtPtr ext_;
  Subgroup L_;
};

// The orbit of x under q -> g q phi(g)^-1, grown from the generators of G.
ExtElementSet quotient_twisted_class(const ExtQuotient& q, const ExtAutomorphism& phi, const ExtElement& x,
                                     std::size_t limit = kDefaultQuotientLimit);
// The same set computed as {g x phi(g)^-1 : g in Q}.
ExtElementSet quotient_twisted_class_exhaustive(const ExtQuotient& q, const ExtAutomorphism& phi,
                                                const ExtElement& x, std::size_t limit = kDefaultQuotientLimit);

// Finite-index subgroups of N.
Subgroup intersect_finite_index(const Subgroup& a, const Subgroup& b, std::size_t limit = kDefaultQuotientLimit);
Subgroup subgroup_image(const Subgroup& a, const GroupHom& f);
// Intersection of the orbit of K under the actions of the coset representatives and the restriction of phi.
Subgroup stable_core(const ExtAutomorphism& phi, const Subgroup& K, std::size_t limit = kDefaultQuotientLimit);

struct UnionPart {
  std::size_t rep = 0;
  bool outside_coset = false;  // y x_i^-1 lies outside N, so G/N already separates
  DepthResult depth;           // congruence depth of y x_i^-1 from [1]_psi in N (when inside N)
  Int part_order;              // |N/K_i|, or [G:N] when G/N separates
  Int core_order;              // |G/L_i| for the stabilized core of K_i alone
};

struct UnionSeparation {
  std::vector<UnionPart> parts;
  Subgroup combined_kernel;
  Int order;             // |G/L|
  Int union_bound;       // product of the core orders
  Int extension_bound;   // (product of the part orders)^[G:N]
  bool verified = false;  // y outside the twisted class of x in G/L, by orbit and by enumeration
};
// Separates y from the twisted class of x in a finite quotient of G, part by part.
// Throws std::invalid_argument if y is phi-conjugate to x and BudgetExceeded if a part needs
// a quotient of N larger than order_budget.
UnionSeparation farb_depth_union(const ExtAutomorphism& phi, const ExtElement& x, const ExtElement& y,
                                 const Int& order_budget, std::size_t limit = kDefaultQuotientLimit);

struct ExtBall {
  std::vector<ExtElement> elements;
  std::vector<std::size_t> radius;
};
ExtBall ext_ball(const FiniteExtension& G, std::size_t n, std::size_t cap = kDefaultBallCap);

// {"kernel": group, "reps": [names], "action": {rep: hom}, "cocycle": [{"left", "right", "rep", "kernel"}]};
// the identity representative needs no action or cocycle entries.
ExtPtr extension_from_json(const Json& j);
Json extension_to_json(const FiniteExtension& G);
ExtElement ext_element_from_json(const FiniteExtension& G, const Json& j);  // {"kernel": element, "rep": name}
Json ext_element_to_json(const FiniteExtension& G, const ExtElement& e);
// {"kernel": hom on N, "reps": {rep: element}}; omitted reps map to themselves.
ExtAutomorphism ext_automorphism_from_json(const ExtPtr& G, const Json& j);
Json union_to_json(const FiniteExtension& G, const UnionSeparation& u);

}  // namespace tcsep
