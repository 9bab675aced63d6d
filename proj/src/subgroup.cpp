#include "tcsep/subgroup.hpp"

#include <set>

namespace tcsep {

std::size_t lead_index(const Element& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != 0) return i;
  return g.size();
}

Subgroup::Subgroup(GroupPtr G) : G_(std::move(G)), slots_(G_->hirsch()) {}

Subgroup Subgroup::trivial(GroupPtr G) { return Subgroup(std::move(G)); }

Subgroup Subgroup::whole(GroupPtr G) {
  Subgroup H(G);
  for (std::size_t i = 0; i < G->hirsch(); ++i) H.slots_[i] = G->generator(i);
  return H;
}

void Subgroup::insert(Element g, std::vector<Element>& work, std::vector<std::size_t>& changed) {
  const Group& G = *G_;
  while (true) {
    std::size_t l = lead_index(g);
    if (l == G.hirsch()) return;
    if (!slots_[l]) {
      if (g[l] < 0) g = G.inverse(g);
      slots_[l] = g;
      changed.push_back(l);
      return;
    }
    const Element& s = *slots_[l];
    if (divides(s[l], g[l])) {
      g = G.multiply(G.power(s, -(g[l] / s[l])), g);
      continue;
    }
    Int u, v;
    gcd_ext(s[l], g[l], u, v);
    Element combined = G.multiply(G.power(s, u), G.power(g, v));
    work.push_back(s);
    work.push_back(g);
    slots_[l] = combined;
    changed.push_back(l);
    return;
  }
}

Subgroup Subgroup::closure(GroupPtr G, const std::vector<Element>& gens, bool normal) {
  std::vector<Element> conj;
  if (normal)
    for (std::size_t i = 0; i < G->hirsch(); ++i) conj.push_back(G->generator(i));
  return closure_under(std::move(G), gens, conj);
}

Subgroup Subgroup::closure_under(GroupPtr G, const std::vector<Element>& gens, const std::vector<Element>& conjugators) {
  Subgroup H(G);
  std::vector<Element> inv_conj;
  for (const auto& c : conjugators) inv_conj.push_back(G->inverse(c));
  std::vector<Element> work(gens.rbegin(), gens.rend());
  std::vector<std::size_t> changed;
  while (true) {
    while (!work.empty()) {
      Element g = std::move(work.back());
      work.pop_back();
      H.insert(std::move(g), work, changed);
    }
    if (changed.empty()) break;
    std::set<std::size_t> todo(changed.begin(), changed.end());
    changed.clear();
    for (std::size_t l : todo) {
      if (!H.slots_[l]) continue;
      const Element s = *H.slots_[l];
      for (std::size_t k = 0; k < H.slots_.size(); ++k)
        if (k != l && H.slots_[k]) work.push_back(G->commutator(s, *H.slots_[k]));
      for (std::size_t c = 0; c < conjugators.size(); ++c) {
        work.push_back(G->commutator(conjugators[c], s));
        work.push_back(G->commutator(inv_conj[c], s));
      }
    }
  }
  return H;
}

std::vector<Element> Subgroup::generators() const {
  std::vector<Element> out;
  for (const auto& s : slots_)
    if (s) out.push_back(*s);
  return out;
}

std::size_t Subgroup::hirsch() const {
  std::size_t n = 0;
  for (const auto& s : slots_) n += s.has_value();
  return n;
}

std::optional<IntVec> Subgroup::express(const Element& g) const {
  const Group& G = *G_;
  IntVec exps;
  Element r = g;
  for (std::size_t l = 0; l < slots_.size(); ++l) {
    if (!slots_[l]) {
      if (r[l] != 0) return std::nullopt;
      continue;
    }
    const Element& s = *slots_[l];
    if (!divides(s[l], r[l])) return std::nullopt;
    Int q = r[l] / s[l];
    exps.push_back(q);
    if (q != 0) r = G.multiply(G.power(s, -q), r);
  }
  if (!G.is_identity(r)) return std::nullopt;
  return exps;
}

bool Subgroup::contains(const Element& g) const { return express(g).has_value(); }

bool Subgroup::has_finite_index() const { return hirsch() == slots_.size(); }

Int Subgroup::index() const {
  if (!has_finite_index()) throw std::logic_error("subgroup has infinite index");
  Int n = 1;
  for (std::size_t l = 0; l < slots_.size(); ++l) n *= (*slots_[l])[l];
  return n;
}

Element Subgroup::coset_rep(const Element& g) const {
  const Group& G = *G_;
  Element r = g;
  for (std::size_t l = 0; l < slots_.size(); ++l) {
    if (!slots_[l]) continue;
    const Element& s = *slots_[l];
    Int q = floor_div(r[l], s[l]);
    if (q != 0) r = G.multiply(r, G.power(s, -q));
  }
  return r;
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  for (const auto& g : generators())
    if (!other.contains(g)) return false;
  return true;
}

bool Subgroup::is_normal() const {
  for (const auto& s : generators())
    for (std::size_t i = 0; i < G_->hirsch(); ++i)
      if (!contains(G_->conjugate(G_->generator(i), s)) || !contains(G_->conjugate(G_->generator(i, -1), s)))
        return false;
  return true;
}

bool Subgroup::is_invariant(const GroupHom& phi) const {
  for (const auto& s : generators())
    if (!contains(phi.apply(s))) return false;
  return true;
}

Subgroup basis_power_subgroup(const GroupPtr& G, const Int& m) {
  if (m < 1) throw std::invalid_argument("power must be positive");
  std::vector<Element> gens;
  for (std::size_t i = 0; i < G->hirsch(); ++i) gens.push_back(G->generator(i, m));
  return Subgroup::closure(G, gens, true);
}

Subgroup power_subgroup(const GroupPtr& G, const Int& m) {
  Subgroup K = basis_power_subgroup(G, m);
  if (m == 1) return K;
  // N^m = K * <q^m : q in N/K>. The top layer is central, so (q c)^m = q^m c^m with
  // c^m in K; representatives may therefore drop their top-layer coordinates.
  const int c = G->nilpotency_class();
  std::vector<Element> gens = K.generators();
  std::set<Element> seen;
  std::vector<Int> radix(G->hirsch(), Int(1));
  for (std::size_t l = 0; l < G->hirsch(); ++l)
    if (G->weight(l) < c) radix[l] = (*K.slots()[l])[l];
  Element q = G->identity();
  while (true) {
    Element pw = G->power(q, m);
    if (!K.contains(pw) && seen.insert(pw).second) gens.push_back(pw);
    std::size_t l = 0;
    for (; l < q.size(); ++l) {
      q[l] += 1;
      if (q[l] < radix[l]) break;
      q[l] = 0;
    }
    if (l == q.size()) break;
  }
  return Subgroup::closure(G, gens, true);
}

std::vector<Element> coset_representatives(const Subgroup& H, std::size_t limit) {
  if (!H.has_finite_index()) throw std::logic_error("subgroup has infinite index");
  if (H.index() > limit) throw BudgetExceeded("quotient of order " + H.index().get_str() + " exceeds the limit");
  const Group& G = H.group();
  std::vector<Int> radix;
  for (std::size_t l = 0; l < G.hirsch(); ++l) radix.push_back((*H.slots()[l])[l]);
  std::vector<Element> out;
  Element e = G.identity();
  while (true) {
    out.push_back(e);
    std::size_t l = 0;
    for (; l < e.size(); ++l) {
      e[l] += 1;
      if (e[l] < radix[l]) break;
      e[l] = 0;
    }
    if (l == e.size()) break;
  }
  return out;
}

}  // namespace tcsep
