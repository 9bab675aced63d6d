#include "tcsep/twisted.hpp"

namespace tcsep {

Element displacement(const GroupHom& phi, const Element& x) {
  const Group& G = *phi.domain;
  return G.multiply(x, G.inverse(phi.apply(x)));
}

IntVec psi(const GroupHom& phi, int i, const Element& x) {
  const Group& G = *phi.domain;
  if (i < 1 || i > G.nilpotency_class()) throw std::invalid_argument("level out of range");
  Element d = displacement(phi, x);
  if (G.depth(d) < i)
    throw std::invalid_argument("element " + G.format(x) + " is not in twisted centralizer " + std::to_string(i));
  return G.layer_coords(d, i);
}

const Subgroup& TwistedChain::level(int i) const {
  if (i >= 1 && static_cast<std::size_t>(i) <= levels.size()) return levels[static_cast<std::size_t>(i - 1)].members;
  if (static_cast<std::size_t>(i) == levels.size() + 1) return fixed;
  throw std::out_of_range("chain level out of range");
}

std::vector<Int> TwistedChain::level_determinants() const {
  std::vector<Int> out;
  for (const auto& l : levels) out.push_back(l.det);
  return out;
}

namespace {

Element word(const Group& G, const std::vector<Element>& gens, const IntVec& exps) {
  Element r = G.identity();
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (exps[j] != 0) r = G.multiply(r, G.power(gens[j], exps[j]));
  return r;
}

// Reduces a modulo the kernel lattice: at each Hermite pivot the entry lands in [0, pivot).
IntVec reduce_mod(IntVec a, const Lattice& K) {
  for (std::size_t r = 0; r < K.rank(); ++r) {
    std::size_t c = K.pivots()[r];
    const IntVec& v = K.basis()[r];
    Int q = floor_div(a[c], v[c]);
    if (q != 0)
      for (std::size_t j = 0; j < a.size(); ++j) a[j] -= q * v[j];
  }
  return a;
}

struct Descent {
  std::optional<Element> z;
  int failed_level = 0;
  IntVec residual;
  std::vector<Int> coefficient_max;
};

Descent descend(const TwistedChain& chain, Element w) {
  const GroupHom& phi = chain.phi;
  const Group& G = *phi.domain;
  Descent out;
  Element z = G.identity();
  for (const auto& lvl : chain.levels) {
    if (G.depth(w) < lvl.weight) throw std::logic_error("residual left the lower central series term");
    IntVec b = G.layer_coords(w, lvl.weight);
    Int cmax = 0;
    if (!is_zero(b)) {
      auto a = image_membership(lvl.psi_matrix, b);
      if (!a) {
        out.failed_level = lvl.weight;
        out.residual = b;
        return out;
      }
      IntVec red = reduce_mod(*a, kernel_basis(lvl.psi_matrix));
      cmax = max_abs(red);
      Element u = word(G, lvl.gens, red);
      // z' phi(z')^-1 = u^-1 w phi(u) for the remaining factor z'.
      w = G.multiply(G.multiply(G.inverse(u), w), phi.apply(u));
      z = G.multiply(z, u);
    }
    out.coefficient_max.push_back(cmax);
  }
  if (!G.is_identity(w)) throw std::logic_error("descent ended with a nontrivial residual");
  out.z = z;
  return out;
}

}  // namespace

TwistedChain twisted_chain_from(const GroupHom& phi, const Subgroup& H) {
  const GroupPtr& Gp = phi.domain;
  const Group& G = *Gp;
  TwistedChain chain{phi, {}, H, 1};
  Subgroup cur = H;
  for (int i = 1; i <= G.nilpotency_class(); ++i) {
    ChainLevel lvl;
    lvl.weight = i;
    lvl.members = cur;
    lvl.gens = cur.generators();
    const std::size_t r = G.layer_rank(i);
    lvl.psi_matrix = IntMatrix(r, lvl.gens.size());
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < lvl.gens.size(); ++j) {
      IntVec col = psi(phi, i, lvl.gens[j]);
      for (std::size_t k = 0; k < r; ++k) lvl.psi_matrix.at(k, j) = col[k];
      cols.push_back(std::move(col));
    }
    lvl.image = Lattice::span(r, cols);
    lvl.det = isolator_index(lvl.image);
    chain.determinant *= lvl.det;

    // ker psi_i = {prod g_j^k_j : k in ker} together with [N_i, N_i], normal in N_i.
    std::vector<Element> next;
    Lattice ker = kernel_basis(lvl.psi_matrix);
    for (const auto& k : ker.basis()) next.push_back(word(G, lvl.gens, k));
    for (std::size_t a = 0; a < lvl.gens.size(); ++a)
      for (std::size_t b = a + 1; b < lvl.gens.size(); ++b) next.push_back(G.commutator(lvl.gens[a], lvl.gens[b]));
    cur = Subgroup::closure_under(Gp, next, lvl.gens);
    chain.levels.push_back(std::move(lvl));
  }
  chain.fixed = cur;
  return chain;
}

TwistedChain twisted_chain(const GroupHom& phi) { return twisted_chain_from(phi, Subgroup::whole(phi.domain)); }

std::optional<Element> solve_displacement(const TwistedChain& chain, const Element& w) {
  return descend(chain, w).z;
}

TwistedDecision is_twisted_conjugate(const GroupHom& phi, const Element& x, const Element& y) {
  const Group& G = *phi.domain;
  GroupHom phi_x = twisted_by_inner(phi, x);
  Descent d = descend(twisted_chain(phi_x), G.multiply(y, G.inverse(x)));
  TwistedDecision out;
  if (!d.z) {
    out.failed_level = d.failed_level;
    out.residual = d.residual;
    return out;
  }
  const Element& z = *d.z;
  if (G.multiply(G.multiply(z, x), G.inverse(phi.apply(z))) != y)
    throw std::logic_error("twisted conjugacy witness failed verification");
  out.conjugate = true;
  out.witness = z;
  return out;
}

BoundedWitness bounded_witness(const GroupHom& phi, const Element& y, const GeneratingSet& S, std::size_t length_cap) {
  const Group& G = *phi.domain;
  Descent d = descend(twisted_chain(phi), y);
  if (!d.z)
    throw std::invalid_argument("element is not of the form x phi(x)^-1 (level " + std::to_string(d.failed_level) +
                                ")");
  if (displacement(phi, *d.z) != y) throw std::logic_error("bounded witness failed verification");
  BoundedWitness out{*d.z, std::nullopt, d.coefficient_max};
  try {
    out.word_length = word_length(G, S, out.x, length_cap);
  } catch (const BudgetExceeded&) {
    out.word_length = std::nullopt;
  }
  return out;
}

BlackburnConstants blackburn_constants(unsigned long p, int c) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (c < 1) throw std::invalid_argument("class must be positive");
  BlackburnConstants bc;
  for (int i = 1; i <= c; ++i) {
    unsigned long e = 0;
    Int pe = p;
    while (pe <= i) {
      ++e;
      pe *= p;
    }
    bc.k += e;
    bc.factorial *= i;
  }
  bc.k_star = static_cast<unsigned long>(c - 1) * bc.k;
  bc.p_power = ipow(Int(p), bc.k);
  return bc;
}

Element blackburn_root(const GroupPtr& G, unsigned long p, unsigned long k, const Element& x) {
  auto bc = blackburn_constants(p, G->nilpotency_class());
  Int modulus = ipow(Int(p), k + bc.k);
  // Callers sweep many elements against one group and exponent; keep the last power subgroup.
  struct Cached {
    std::weak_ptr<const Group> group;
    Int modulus;
    std::optional<Subgroup> subgroup;
  };
  thread_local Cached cache;
  if (!cache.subgroup || cache.group.lock() != G || cache.modulus != modulus) {
    cache.subgroup.reset();
    cache.subgroup = power_subgroup(G, modulus);
    cache.group = G;
    cache.modulus = modulus;
  }
  const Subgroup& P = *cache.subgroup;
  if (!P.contains(x))
    throw PreconditionError("element is not in the subgroup generated by " + ipow(Int(p), k + bc.k).get_str() +
                            "-th powers");
  auto y = root(*G, x, ipow(Int(p), k));
  if (!y) throw std::logic_error("no root found for a power-subgroup element");
  return *y;
}

PowerSolution solve_power_twisted(const GroupHom& phi, unsigned long p, unsigned long k, const Element& x) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  const Group& G = *phi.domain;
  TwistedChain chain = twisted_chain(phi);
  PowerSolution out;
  Element cur = x, y = G.identity();
  for (const auto& lvl : chain.levels) {
    IntVec b = psi(phi, lvl.weight, cur);
    if (is_zero(b)) {
      out.level_slack.push_back(kInfiniteValuation);
      continue;
    }
    long slack = vp(content(b), p) - vp(lvl.det, p);
    out.level_slack.push_back(slack);
    if (slack < static_cast<long>(k))
      throw PreconditionError("level " + std::to_string(lvl.weight) + ": displacement divisible by p^" +
                              std::to_string(vp(content(b), p)) + " but p^" +
                              std::to_string(k + static_cast<unsigned long>(vp(lvl.det, p))) + " is required");
    IntVec a = p_power_preimage(lvl.psi_matrix, b, p, k);
    Element u = word(G, lvl.gens, a);
    cur = G.multiply(G.inverse(u), cur);
    y = G.multiply(y, u);
  }
  if (phi.apply(cur) != cur) throw std::logic_error("descent did not end at a fixed point");
  if (displacement(phi, y) != displacement(phi, x)) throw std::logic_error("power solution failed verification");
  out.y = y;
  return out;
}

Json chain_to_json(const TwistedChain& chain) {
  Json j;
  Json levels = Json::array();
  for (const auto& l : chain.levels) {
    Json lj;
    lj["level"] = l.weight;
    Json gens = Json::array();
    for (const auto& g : l.gens) gens.push_back(element_to_json(g));
    lj["generators"] = gens;
    Json rows = Json::array();
    for (const auto& r : l.psi_matrix.row_list()) rows.push_back(vec_to_json(r));
    lj["psi_matrix"] = rows;
    Json img = Json::array();
    for (const auto& v : l.image.basis()) img.push_back(vec_to_json(v));
    lj["image_basis"] = img;
    lj["determinant"] = int_to_json(l.det);
    levels.push_back(lj);
  }
  j["levels"] = levels;
  Json fixed = Json::array();
  for (const auto& g : chain.fixed.generators()) fixed.push_back(element_to_json(g));
  j["fixed_subgroup"] = fixed;
  j["twisted_determinant"] = int_to_json(chain.determinant);
  j["automorphism"] = hom_to_json(chain.phi);
  return j;
}

Json witness_to_json(const GroupHom& phi, const Element& x, const Element& y, const Element& z) {
  const Group& G = *phi.domain;
  Element lhs = G.multiply(G.multiply(z, x), G.inverse(phi.apply(z)));
  Json j;
  j["x"] = element_to_json(x);
  j["y"] = element_to_json(y);
  j["z"] = element_to_json(z);
  j["z_x_phi_z_inverse"] = element_to_json(lhs);
  j["verified"] = lhs == y;
  return j;
}

}  // namespace tcsep
