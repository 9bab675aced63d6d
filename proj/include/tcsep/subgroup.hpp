#pragma once

// Subgroups of a Mal'cev-presented group held as induced generating sequences:
// at most one generator per basis index, each with positive leading exponent.

#include <optional>
#include <vector>

#include "tcsep/builtin.hpp"

namespace tcsep {

std::size_t lead_index(const Element& g);  // hirsch() for the identity

class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup trivial(GroupPtr G);
  static Subgroup whole(GroupPtr G);
  // Smallest subgroup (or normal subgroup) containing `gens`.
  static Subgroup closure(GroupPtr G, const std::vector<Element>& gens, bool normal = false);
  // Smallest subgroup containing `gens` and closed under conjugation by each of `conjugators`
  // and their inverses.
  static Subgroup closure_under(GroupPtr G, const std::vector<Element>& gens, const std::vector<Element>& conjugators);

  const Group& group() const { return *G_; }
  const GroupPtr& group_ptr() const { return G_; }
  const std::vector<std::optional<Element>>& slots() const { return slots_; }
  std::vector<Element> generators() const;  // slot elements in basis order
  std::size_t hirsch() const;               // number of filled slots

  bool contains(const Element& g) const;
  // Exponents (one per generator, in generators() order) with g = prod gens^e, if g lies in the subgroup.
  std::optional<IntVec> express(const Element& g) const;

  bool has_finite_index() const;
  Int index() const;  // throws std::logic_error for infinite index
  // Canonical representative of the left coset gH; for finite index each exponent at a
  // filled slot lands in [0, leading exponent).
  Element coset_rep(const Element& g) const;

  bool is_subgroup_of(const Subgroup& other) const;
  bool operator==(const Subgroup& o) const { return is_subgroup_of(o) && o.is_subgroup_of(*this); }
  bool is_normal() const;
  bool is_invariant(const GroupHom& phi) const;  // phi(H) inside H

 private:
  GroupPtr G_;
  std::vector<std::optional<Element>> slots_;
  explicit Subgroup(GroupPtr G);
  // Sifts g into the slots; returns the indices whose slot changed.
  void insert(Element g, std::vector<Element>& work, std::vector<std::size_t>& changed);
};

// The subgroup generated by all m-th powers (verbal, hence characteristic).
Subgroup power_subgroup(const GroupPtr& G, const Int& m);
// The normal closure of the m-th powers of the basis elements; contained in power_subgroup.
Subgroup basis_power_subgroup(const GroupPtr& G, const Int& m);

// Enumerates the canonical representatives of G/H for a finite-index H, in mixed-radix order.
std::vector<Element> coset_representatives(const Subgroup& H, std::size_t limit);

}  // namespace tcsep
