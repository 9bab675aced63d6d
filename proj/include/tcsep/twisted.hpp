#pragma once

// Twisted centralizer chains N_1^phi >= N_2^phi >= ... >= N_{c+1}^phi, the layer maps
// psi_{phi,i}(x) = x phi(x)^-1 mod gamma_{i+1}, twisted determinants, the twisted
// conjugacy decision procedure and the p-power solvers.

#include <optional>
#include <string>

#include "tcsep/io.hpp"
#include "tcsep/subgroup.hpp"

namespace tcsep {

// x phi(x)^-1
Element displacement(const GroupHom& phi, const Element& x);

// Layer-i coordinates of x phi(x)^-1; throws std::invalid_argument unless x lies in N_i^phi.
IntVec psi(const GroupHom& phi, int i, const Element& x);

struct ChainLevel {
  int weight = 0;
  Subgroup members;        // N_i^phi (intersected with the starting subgroup)
  std::vector<Element> gens;
  IntMatrix psi_matrix;    // column j = psi_{phi,i}(gens[j])
  Lattice image;           // column span of psi_matrix in layer coordinates
  Int det = 1;             // isolator index of the image
};

struct TwistedChain {
  GroupHom phi;
  std::vector<ChainLevel> levels;  // weights 1..c
  Subgroup fixed;                  // N_{c+1}^phi: the fixed points of phi in the starting subgroup
  Int determinant = 1;             // product of the level determinants

  const Subgroup& level(int i) const;  // i in 1..c+1
  const Lattice& twisted_subgroup() const { return levels.back().image; }  // N_phi in gamma_c coordinates
  std::vector<Int> level_determinants() const;
};

TwistedChain twisted_chain(const GroupHom& phi);
// The same descent started from a subgroup H: level i holds H intersected with N_i^phi.
TwistedChain twisted_chain_from(const GroupHom& phi, const Subgroup& H);

struct TwistedDecision {
  bool conjugate = false;
  std::optional<Element> witness;  // z with z x phi(z)^-1 = y
  // When not conjugate: the level whose layer equation has no solution, and its right-hand side.
  int failed_level = 0;
  IntVec residual;
};

// Decides x ~_phi y by descending the chain of phi_x = Inn(x) o phi.
TwistedDecision is_twisted_conjugate(const GroupHom& phi, const Element& x, const Element& y);
// Solves z phi(z)^-1 = w level by level against a precomputed chain of phi; nothing if w is not a displacement.
std::optional<Element> solve_displacement(const TwistedChain& chain, const Element& w);

struct BoundedWitness {
  Element x;                               // x phi(x)^-1 = y
  std::optional<std::size_t> word_length;  // exact when within the cap
  std::vector<Int> level_coefficient_max;  // largest preimage coefficient used at each level
};
// Throws std::invalid_argument if y is not of the form x phi(x)^-1.
BoundedWitness bounded_witness(const GroupHom& phi, const Element& y, const GeneratingSet& S,
                               std::size_t length_cap = 12);

struct BlackburnConstants {
  unsigned long k = 0;       // sum over i <= c of the largest e with p^e <= i
  unsigned long k_star = 0;  // (c - 1) k
  Int p_power = 1;           // p^k
  Int factorial = 1;         // c!
  bool within_factorial() const { return p_power <= factorial; }
};
BlackburnConstants blackburn_constants(unsigned long p, int c);

// The p^k-th root of x, requiring x in N^{p^{k + k(p,c)}}; throws PreconditionError otherwise.
Element blackburn_root(const GroupPtr& G, unsigned long p, unsigned long k, const Element& x);

struct PowerSolution {
  Element y;                     // y in N^{p^k} with y phi(y)^-1 = x phi(x)^-1
  std::vector<long> level_slack;  // v_p(content) - v_p(D_i) available at each level
};
// Constructive descent: at each level pull the layer displacement back with p-power control.
// Throws PreconditionError naming the level whose divisibility fails.
PowerSolution solve_power_twisted(const GroupHom& phi, unsigned long p, unsigned long k, const Element& x);

Json chain_to_json(const TwistedChain& chain);
Json witness_to_json(const GroupHom& phi, const Element& x, const Element& y, const Element& z);

}  // namespace tcsep
