#pragma once

// Torsion-free nilpotent groups given by weighted Mal'cev presentations.
//
// An element is the exponent vector (e_1..e_h) of the normal form a_1^e_1 ... a_h^e_h.
// Relations are stored as [a_j, a_i] = c_ji for j > i with [x,y] = x y x^-1 y^-1;
// c_ji must be supported on generators of strictly larger weight.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcsep/integer.hpp"
#include "tcsep/lattice.hpp"

namespace tcsep {

using Element = IntVec;

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Presentation {
  std::vector<std::string> names;
  std::vector<int> weight;                 // layer of each generator, nondecreasing
  std::vector<std::vector<Element>> comm;  // comm[j][i] for j > i; empty vector means trivial

  std::size_t hirsch() const { return names.size(); }
  int nilpotency_class() const;
  void set_commutator(std::size_t j, std::size_t i, const Element& c);  // requires j > i
  Element commutator_relation(std::size_t j, std::size_t i) const;      // zero vector if trivial
  std::size_t index_of(const std::string& name) const;                   // throws if unknown
};

class Group {
 public:
  // Throws std::invalid_argument if the weights or relation supports are not adapted.
  explicit Group(Presentation p);

  const Presentation& presentation() const { return p_; }
  std::size_t hirsch() const { return p_.hirsch(); }
  int nilpotency_class() const { return cls_; }
  int weight(std::size_t i) const { return p_.weight[i]; }

  Element identity() const { return zeros(hirsch()); }
  Element generator(std::size_t i, const Int& e = 1) const;
  bool is_identity(const Element& g) const { return is_zero(g); }

  Element multiply(const Element& g, const Element& h) const;
  Element inverse(const Element& g) const;
  Element power(const Element& g, const Int& n) const;
  Element commutator(const Element& g, const Element& h) const;  // g h g^-1 h^-1
  Element conjugate(const Element& by, const Element& g) const;  // by g by^-1
  // Multiplies g in place on the right by a_i^e.
  void mul_gen(Element& g, std::size_t i, const Int& e) const;

  // Lower central series data.
  const std::vector<std::size_t>& layer(int w) const { return layers_.at(static_cast<std::size_t>(w - 1)); }
  std::size_t layer_rank(int w) const { return layer(w).size(); }
  // Smallest weight carrying a nonzero coordinate; class+1 for the identity.
  int depth(const Element& g) const;
  IntVec layer_coords(const Element& g, int w) const;  // coordinates of weight w
  Element from_layer(int w, const IntVec& coords) const;

  std::string format(const Element& g) const;

 private:
  Presentation p_;
  int cls_ = 0;
  std::vector<std::vector<std::size_t>> layers_;
  // conj_images_[i][j] = a_i^-1 a_j a_i for j > i; the coordinates of
  // a_i^-n a_j a_i^n are sum_k binom(n,k) newton_[i][j][k].
  std::vector<std::vector<Element>> conj_images_;
  std::vector<std::vector<std::vector<Element>>> newton_;
  std::vector<std::vector<bool>> conj_trivial_;
  std::vector<bool> acts_trivially_;  // a_i commutes with every later generator

  Element conj_apply(std::size_t i, const Element& t) const;           // a_i^-1 t a_i, t in N_{>i}
  Element conj_pow_image(std::size_t i, std::size_t j, const Int& e) const;
  void build_tables();
};

using GeneratingSet = std::vector<Element>;

// Breadth-first ball for the symmetric closure of a generating set.
struct Ball {
  std::vector<Element> elements;       // in BFS order
  std::vector<std::size_t> radius;     // word length of each element
  std::unordered_map<Element, std::size_t, IntVecHash> index;
  std::size_t complete_radius = 0;     // all elements of length <= this are present
  std::optional<std::size_t> length(const Element& g) const;
  std::size_t count_within(std::size_t n) const;
};

constexpr std::size_t kDefaultBallCap = 10'000'000;

Ball ball(const Group& G, const GeneratingSet& S, std::size_t n, std::size_t cap = kDefaultBallCap);
// Returns the exact word length, or nothing if it exceeds `cap`.
std::optional<std::size_t> word_length(const Group& G, const GeneratingSet& S, const Element& g, std::size_t cap,
                                       std::size_t element_cap = kDefaultBallCap);
// Max word length over the supplied generators: an upper bound for the subgroup norm.
std::optional<std::size_t> subgroup_norm_upper(const Group& G, const GeneratingSet& S,
                                               const std::vector<Element>& gens, std::size_t cap);
GeneratingSet standard_generators(const Group& G);  // the weight-1 basis elements

// Homomorphisms and automorphisms, given by images of basis generators.
struct GroupHom {
  std::shared_ptr<const Group> domain, codomain;
  std::vector<Element> images;

  Element apply(const Element& g) const;
  IntMatrix layer_matrix(int w) const;  // column c = layer-w coordinates of the image of the c-th weight-w generator
};

GroupHom identity_hom(const std::shared_ptr<const Group>& G);
GroupHom compose(const GroupHom& f, const GroupHom& g);  // f after g
GroupHom inner_automorphism(const std::shared_ptr<const Group>& G, const Element& x);  // n -> x n x^-1
GroupHom twisted_by_inner(const GroupHom& phi, const Element& x);  // n -> x phi(n) x^-1
std::optional<std::size_t> automorphism_norm(const GroupHom& phi, const GeneratingSet& S, std::size_t cap);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> violations;
  void fail(const std::string& msg) {
    ok = false;
    violations.push_back(msg);
  }
};

VerifyReport verify_presentation(const Presentation& p);
VerifyReport verify_hom(const GroupHom& f, bool require_automorphism);

struct LayerInfo {
  int weight = 0;
  std::vector<std::size_t> indices;
  std::size_t rank = 0;
  std::vector<Element> spanning_commutators;  // iterated commutators of length `weight`
};
std::vector<LayerInfo> lower_central_series(const Group& G);

// Unique m-th root in the torsion-free group, if it exists.
std::optional<Element> root(const Group& G, const Element& g, const Int& m);

}  // namespace tcsep
