#include "tcsep/quotients.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>

#include "tcsep/twisted.hpp"

namespace tcsep {

std::string kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::kVerbal:
      return "verbal";
    case KernelKind::kBasisPower:
      return "basis-power";
    case KernelKind::kCustom:
      break;
  }
  return "custom";
}

FiniteQuotient::FiniteQuotient(Subgroup kernel, Int modulus, KernelKind kind)
    : kernel_(std::move(kernel)), modulus_(std::move(modulus)), kind_(kind) {
  if (!kernel_.has_finite_index()) throw std::invalid_argument("kernel has infinite index");
  if (!kernel_.is_normal()) throw std::invalid_argument("kernel is not normal");
  order_ = kernel_.index();
}

Element FiniteQuotient::multiply(const Element& a, const Element& b) const { return canon(group().multiply(a, b)); }

Element FiniteQuotient::inverse(const Element& a) const { return canon(group().inverse(a)); }

std::vector<Element> FiniteQuotient::elements(std::size_t limit) const { return coset_representatives(kernel_, limit); }

ElementSet FiniteQuotient::generated(const std::vector<Element>& gens, std::size_t limit) const {
  ElementSet seen{canon(group().identity())};
  std::deque<Element> todo{*seen.begin()};
  std::vector<Element> steps;
  for (const auto& g : gens) {
    steps.push_back(canon(g));
    steps.push_back(inverse(g));
  }
  while (!todo.empty()) {
    Element cur = std::move(todo.front());
    todo.pop_front();
    for (const auto& s : steps) {
      Element nxt = multiply(cur, s);
      if (seen.insert(nxt).second) {
        if (seen.size() > limit) throw BudgetExceeded("generated subgroup exceeds the limit");
        todo.push_back(std::move(nxt));
      }
    }
  }
  return seen;
}

namespace {

std::vector<std::pair<Int, unsigned long>> factorize(Int n) {
  std::vector<std::pair<Int, unsigned long>> out;
  for (Int p = 2; p * p <= n; ++p) {
    unsigned long e = 0;
    while (divides(p, n)) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Subgroup kernel_of_kind(const GroupPtr& G, const Int& m, KernelKind kind) {
  return kind == KernelKind::kVerbal ? power_subgroup(G, m) : basis_power_subgroup(G, m);
}

FiniteQuotient checked_quotient(const GroupPtr& G, const Int& m, KernelKind kind) {
  if (m < 1) throw std::invalid_argument("modulus must be positive");
  FiniteQuotient q(kernel_of_kind(G, m, kind), m, kind);
  auto parts = factorize(m);
  if (parts.size() > 1) {
    Int prod = 1;
    for (const auto& [p, e] : parts) prod *= kernel_of_kind(G, ipow(p, e), kind).index();
    if (prod != q.order())
      throw std::logic_error("order of the quotient by modulus " + m.get_str() +
                             " does not factor over its prime powers");
  }
  return q;
}

Element word(const Group& G, const std::vector<Element>& gens, const IntVec& exps) {
  Element r = G.identity();
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (exps[j] != 0) r = G.multiply(r, G.power(gens[j], exps[j]));
  return r;
}

Element twist(const InducedAutomorphism& f, const Element& z, const Element& x) {
  const FiniteQuotient& q = f.quotient;
  return q.multiply(q.multiply(z, x), q.inverse(f.apply(z)));
}

}  // namespace

// Kernels are built lazily: |N/K| >= m^{r1} for both kinds, so modulus m is only needed
// once the cheapest pending candidate has order at least m^{r1}.
std::optional<FiniteQuotient> scan_by_order(const GroupPtr& G, const Int& order_budget,
                                            const std::function<bool(const FiniteQuotient&)>& admit,
                                            const std::function<bool(const FiniteQuotient&)>& visit) {
  const std::size_t r1 = G->layer_rank(1);
  auto later = [](const FiniteQuotient& a, const FiniteQuotient& b) {
    if (a.order() != b.order()) return a.order() > b.order();
    if (a.modulus() != b.modulus()) return a.modulus() > b.modulus();
    return a.kind() == KernelKind::kBasisPower && b.kind() == KernelKind::kVerbal;
  };
  std::priority_queue<FiniteQuotient, std::vector<FiniteQuotient>, decltype(later)> pending(later);
  Int m = 2;
  for (;;) {
    while (ipow(m, r1) <= order_budget && (pending.empty() || ipow(m, r1) <= pending.top().order())) {
      for (KernelKind kind : {KernelKind::kVerbal, KernelKind::kBasisPower}) {
        FiniteQuotient q = checked_quotient(G, m, kind);
        if (q.order() <= order_budget && admit(q)) pending.push(std::move(q));
      }
      ++m;
    }
    if (pending.empty()) return std::nullopt;
    FiniteQuotient q = pending.top();
    pending.pop();
    if (visit(q)) return q;
  }
}

FiniteQuotient congruence_quotient(const GroupPtr& G, const Int& m) { return checked_quotient(G, m, KernelKind::kVerbal); }

FiniteQuotient basis_power_quotient(const GroupPtr& G, const Int& m) {
  return checked_quotient(G, m, KernelKind::kBasisPower);
}

bool InducedAutomorphism::is_bijection(std::size_t limit) const {
  const Group& G = quotient.group();
  ElementSet image;
  for (const auto& g : quotient.elements(limit)) image.insert(apply(g));
  if (image.size() != quotient.order()) return false;
  for (std::size_t i = 0; i < G.hirsch(); ++i)
    for (std::size_t j = 0; j < G.hirsch(); ++j) {
      Element a = G.generator(i), b = G.generator(j);
      if (apply(G.multiply(a, b)) != quotient.multiply(apply(a), apply(b))) return false;
    }
  return true;
}

InducedAutomorphism induced_automorphism(const FiniteQuotient& q, const GroupHom& phi) {
  if (phi.domain.get() != &q.group() || phi.codomain.get() != &q.group())
    throw std::invalid_argument("automorphism acts on a different group");
  if (!q.kernel().is_invariant(phi)) throw std::invalid_argument("kernel is not invariant under the automorphism");
  return InducedAutomorphism{q, phi};
}

ElementSet twisted_class(const InducedAutomorphism& f, const Element& x) {
  Element xc = f.quotient.canon(x);
  ElementSet out;
  for (const auto& z : f.quotient.elements()) out.insert(twist(f, z, xc));
  return out;
}

ElementSet twisted_class_by_generators(const InducedAutomorphism& f, const Element& x) {
  const Group& G = f.quotient.group();
  std::vector<Element> steps;
  for (std::size_t i = 0; i < G.hirsch(); ++i) {
    steps.push_back(G.generator(i));
    steps.push_back(G.generator(i, -1));
  }
  Element start = f.quotient.canon(x);
  ElementSet seen{start};
  std::deque<Element> todo{start};
  while (!todo.empty()) {
    Element cur = std::move(todo.front());
    todo.pop_front();
    for (const auto& s : steps) {
      Element nxt = twist(f, s, cur);
      if (seen.insert(nxt).second) todo.push_back(std::move(nxt));
    }
  }
  return seen;
}

bool separates(const FiniteQuotient& q, const GroupHom& phi, const Element& x, const Element& y) {
  return twisted_class(induced_automorphism(q, phi), x).count(q.canon(y)) == 0;
}

DepthResult congruence_depth(const GroupHom& phi, const Element& x, const Element& y, const Int& order_budget) {
  const GroupPtr& G = phi.domain;
  if (is_twisted_conjugate(phi, x, y).conjugate)
    throw std::invalid_argument("elements are twisted conjugate; no quotient separates them");
  const std::size_t r1 = G->nilpotency_class() > 0 ? G->layer_rank(1) : 0;
  if (r1 == 0) throw std::invalid_argument("trivial group");

  DepthResult out;
  auto admit = [&](const FiniteQuotient& q) {
    return q.kind() != KernelKind::kBasisPower || q.kernel().is_invariant(phi);
  };
  auto visit = [&](const FiniteQuotient& q) {
    InducedAutomorphism f = induced_automorphism(q, phi);
    bool sep = twisted_class(f, x).count(q.canon(y)) == 0;
    out.probes.push_back(DepthProbe{q.modulus(), q.kind(), q.order(), sep});
    if (sep && twisted_class_by_generators(f, x).count(q.canon(y)) != 0)
      throw std::logic_error("separating quotient failed the orbit re-check");
    return sep;
  };
  if (auto q = scan_by_order(G, order_budget, admit, visit)) {
    out.separated = true;
    out.order = q->order();
    out.modulus = q->modulus();
    out.kind = q->kind();
    out.exhaustive_below = true;
    return out;
  }
  out.budget_exhausted = true;
  return out;
}

ElementSet quotient_twisted_subgroup(const InducedAutomorphism& f, std::size_t limit) {
  const FiniteQuotient& q = f.quotient;
  const GroupPtr& G = q.group_ptr();
  std::vector<Element> gens = lower_central_series(*G).back().spanning_commutators;
  for (const auto& k : q.kernel().generators()) gens.push_back(k);
  Subgroup bottom = Subgroup::closure(G, gens, true);  // gamma_c(N) K
  ElementSet out;
  for (const auto& z : q.elements(limit)) {
    Element d = q.multiply(z, q.inverse(f.apply(z)));
    if (bottom.contains(d)) out.insert(d);
  }
  return out;
}

PullbackReport verify_pullback_reduction(const GroupHom& phi, const Element& x, unsigned long p, unsigned long k,
                                         std::size_t limit) {
  const GroupPtr& G = phi.domain;
  const int c = G->nilpotency_class();
  GroupHom phi_x = twisted_by_inner(phi, x);
  TwistedChain chain = twisted_chain(phi_x);
  PullbackReport rep;
  rep.twisted_det = chain.determinant;
  unsigned long kstar = c >= 2 ? blackburn_constants(p, c - 1).k_star : 0;
  long v = vp(chain.determinant, p);
  rep.k0 = static_cast<unsigned long>(v) + kstar;
  rep.small_modulus = ipow(Int(p), k);
  rep.large_modulus = ipow(Int(p), k + rep.k0);
  FiniteQuotient small = congruence_quotient(G, rep.small_modulus);
  FiniteQuotient large = congruence_quotient(G, rep.large_modulus);
  rep.small_order = small.order();
  rep.large_order = large.order();
  if (large.order() > limit) throw BudgetExceeded("quotient of order " + large.order().get_str() + " exceeds the limit");

  for (const auto& d : quotient_twisted_subgroup(induced_automorphism(large, phi_x), limit))
    rep.projected.insert(small.canon(d));
  std::vector<Element> gens;
  for (const auto& b : chain.twisted_subgroup().basis()) gens.push_back(G->from_layer(c, b));
  rep.direct = small.generated(gens, limit);
  rep.holds = rep.projected == rep.direct;
  return rep;
}

Subgroup center(const GroupPtr& G) {
  Subgroup H = Subgroup::whole(G);
  for (std::size_t i = 0; i < G->hirsch(); ++i)
    H = twisted_chain_from(inner_automorphism(G, G->generator(i)), H).fixed;
  return H;
}

namespace {

std::string compound_name(const Presentation& p, const std::vector<std::size_t>& idx, const IntVec& coeffs) {
  std::size_t nonzero = 0, last = 0;
  for (std::size_t t = 0; t < coeffs.size(); ++t)
    if (coeffs[t] != 0) {
      ++nonzero;
      last = t;
    }
  if (nonzero == 1 && coeffs[last] == 1) return p.names[idx[last]];
  std::string s;
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    if (coeffs[t] == 0) continue;
    if (!s.empty()) s += "*";
    s += p.names[idx[t]];
    if (coeffs[t] != 1) s += "^" + coeffs[t].get_str();
  }
  return s;
}

// Per layer: V with layer coordinates v = c V^-1, the first `kept_from` coordinates lying in K.
struct LayerChange {
  IntMatrix V, W;  // W = V^-1, rows are the new layer basis
  std::size_t s = 0;
  std::vector<Element> kernel_lifts;  // elements of K realizing rows 0..s-1 of W
  std::vector<Element> lifts;         // new generators, rows s.. of W
};

}  // namespace

QuotientGroup quotient_group(const GroupPtr& Gp, const Subgroup& K) {
  const Group& G = *Gp;
  if (K.group_ptr() != Gp) throw std::invalid_argument("subgroup of a different group");
  if (!K.is_normal()) throw std::invalid_argument("quotient by a subgroup that is not normal");
  const int c = G.nilpotency_class();
  std::vector<LayerChange> changes(static_cast<std::size_t>(c));
  for (int w = 1; w <= c; ++w) {
    LayerChange& ch = changes[static_cast<std::size_t>(w - 1)];
    const auto& idx = G.layer(w);
    const std::size_t r = idx.size();
    std::vector<Element> kgens;
    std::vector<IntVec> rows;
    for (std::size_t l : idx)
      if (K.slots()[l]) {
        kgens.push_back(*K.slots()[l]);
        rows.push_back(G.layer_coords(*K.slots()[l], w));
      }
    Lattice Kw = Lattice::span(r, rows);
    if (isolator_index(Kw) != 1)
      throw std::invalid_argument("quotient has torsion in layer " + std::to_string(w) + " (index " +
                                  isolator_index(Kw).get_str() + ")");
    ch.s = Kw.rank();
    if (ch.s == 0) {
      ch.V = ch.W = IntMatrix::identity(r);
    } else {
      ch.V = snf(IntMatrix(Kw.basis(), r)).V;
      ch.W = hnf(ch.V).U;
      if (!(ch.W * ch.V == IntMatrix::identity(r))) throw std::logic_error("layer change of basis is not unimodular");
    }
    IntMatrix kcols(r, kgens.size());
    for (std::size_t j = 0; j < kgens.size(); ++j)
      for (std::size_t t = 0; t < r; ++t) kcols.at(t, j) = rows[j][t];
    for (std::size_t j = 0; j < r; ++j) {
      const IntVec& target = ch.W.row(j);
      if (j < ch.s) {
        auto a = image_membership(kcols, target);
        if (!a) throw std::logic_error("kernel layer basis vector has no preimage");
        ch.kernel_lifts.push_back(word(G, kgens, *a));
      } else {
        ch.lifts.push_back(G.from_layer(w, target));
      }
    }
  }

  std::vector<Element> lifts;
  for (const auto& ch : changes)
    for (const auto& b : ch.lifts) lifts.push_back(b);
  const std::size_t hM = lifts.size();

  // g K = u_1 u_2 ... u_c K with u_w a word in the layer-w lifts.
  auto convert = [&](const Element& g) {
    IntVec out;
    Element cur = g;
    for (int w = 1; w <= c; ++w) {
      const LayerChange& ch = changes[static_cast<std::size_t>(w - 1)];
      IntVec coords = ch.V.apply_left(G.layer_coords(cur, w));
      IntVec keep(coords.begin() + static_cast<long>(ch.s), coords.end());
      IntVec drop(coords.begin(), coords.begin() + static_cast<long>(ch.s));
      cur = G.multiply(G.inverse(word(G, ch.lifts, keep)), cur);
      cur = G.multiply(cur, G.inverse(word(G, ch.kernel_lifts, drop)));
      if (G.depth(cur) <= w) throw std::logic_error("layer reduction left a residue");
      out.insert(out.end(), keep.begin(), keep.end());
    }
    return out;
  };

  Presentation P;
  std::vector<int> raw_weight;
  for (int w = 1; w <= c; ++w) {
    const LayerChange& ch = changes[static_cast<std::size_t>(w - 1)];
    for (std::size_t j = ch.s; j < ch.W.rows(); ++j) {
      P.names.push_back(compound_name(G.presentation(), G.layer(w), ch.W.row(j)));
      raw_weight.push_back(w);
    }
  }
  // Dense weights: layers emptied by the quotient are skipped.
  std::vector<int> distinct = raw_weight;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (int w : raw_weight)
    P.weight.push_back(static_cast<int>(std::find(distinct.begin(), distinct.end(), w) - distinct.begin()) + 1);
  P.comm.assign(hM, {});
  for (std::size_t b = 0; b < hM; ++b)
    for (std::size_t a = 0; a < b; ++a) P.set_commutator(b, a, convert(G.commutator(lifts[b], lifts[a])));

  QuotientGroup out;
  out.group = std::make_shared<const Group>(std::move(P));
  out.projection = GroupHom{Gp, out.group, {}};
  for (std::size_t i = 0; i < G.hirsch(); ++i) out.projection.images.push_back(convert(G.generator(i)));
  for (const auto& k : K.generators())
    if (!out.group->is_identity(out.projection.apply(k))) throw std::logic_error("kernel survives the projection");
  VerifyReport vr = verify_hom(out.projection, false);
  if (!vr.ok) throw std::logic_error("quotient projection is not a homomorphism: " + vr.violations.front());
  return out;
}

namespace {

IntVec center_coords(const Subgroup& Z, const Element& g) {
  auto e = Z.express(g);
  if (!e) throw std::invalid_argument("element is not central");
  return *e;
}

// Some u with u . v = 1 for a primitive v.
IntVec dual_vector(const IntVec& v) {
  IntMatrix col(v.size(), 1);
  for (std::size_t t = 0; t < v.size(); ++t) col.at(t, 0) = v[t];
  HnfResult h = hnf(col);
  if (h.H.at(0, 0) != 1) throw std::invalid_argument("vector is not primitive");
  return h.U.row(0);
}

}  // namespace

CentralQuotient one_dim_central_quotient(const GroupPtr& G, const Element& z) {
  CentralQuotient out;
  out.group = G;
  out.projection = identity_hom(G);
  out.image_of_z = z;
  for (;;) {
    Subgroup Z = center(out.group);
    IntVec v = center_coords(Z, out.image_of_z);
    if (content(v) != 1)
      throw std::invalid_argument("image of z is not primitive in the center of rank " + std::to_string(Z.hirsch()) +
                                  " (coordinates " + to_string(v) + ")");
    if (Z.hirsch() == 1) {
      out.center = Z;
      break;
    }
    IntMatrix u(1, v.size());
    IntVec d = dual_vector(v);
    for (std::size_t t = 0; t < v.size(); ++t) u.at(0, t) = d[t];
    std::vector<Element> complement;
    Lattice ker = kernel_basis(u);
    for (const auto& cvec : ker.basis()) complement.push_back(word(*out.group, Z.generators(), cvec));
    QuotientGroup q = quotient_group(out.group, Subgroup::closure(out.group, complement, true));
    out.projection = compose(q.projection, out.projection);
    out.image_of_z = q.projection.apply(out.image_of_z);
    out.group = q.group;
    ++out.steps;
    if (out.steps > static_cast<int>(G->hirsch())) throw std::logic_error("center reduction did not terminate");
  }
  out.hirsch = out.group->hirsch();
  return out;
}

namespace {

// Smallest p^k with v_p(a) < v_p(d), k = v_p(a) + 1, so that a is nonzero in Z/p^k and d is not.
std::pair<unsigned long, unsigned long> cyclic_separator(const Int& a, const Int& d) {
  std::optional<std::pair<unsigned long, unsigned long>> best;
  Int best_val = 0;
  for (const auto& [p, e] : factorize(abs(d))) {
    unsigned long pk = p.get_ui();
    long va = a == 0 ? kInfiniteValuation : vp(a, pk);
    if (va >= static_cast<long>(e)) continue;
    unsigned long kk = static_cast<unsigned long>(va) + 1;
    Int val = ipow(p, kk);
    if (!best || val < best_val) {
      best = std::make_pair(pk, kk);
      best_val = val;
    }
  }
  if (!best) throw std::logic_error("no prime power separates the cyclic images");
  return *best;
}

bool separated_in(const FiniteQuotient& q, const std::vector<Element>& H, const Element& x) {
  return q.generated(H).count(q.canon(x)) == 0;
}

}  // namespace

CentralSeparation separate_central(const Subgroup& H, const Element& x, const Int& order_budget) {
  const GroupPtr& G = H.group_ptr();
  if (H.contains(x)) throw std::invalid_argument("element lies in the subgroup");
  Subgroup Z = center(G);
  if (!H.is_subgroup_of(Z)) throw std::invalid_argument("subgroup is not central");

  std::vector<IntVec> hrows;
  for (const auto& h : H.generators()) hrows.push_back(center_coords(Z, h));
  const std::size_t r = Z.hirsch();
  Lattice Hc = Lattice::span(r, hrows);
  Lattice root = saturation(Hc);
  std::vector<Element> root_gens;
  for (const auto& b : root.basis()) root_gens.push_back(word(*G, Z.generators(), b));

  CentralSeparation out;
  bool in_root = Z.contains(x) && root.contains(center_coords(Z, x));
  if (in_root) {
    out.branch = CentralBranch::kInIsolator;
    // A coordinate functional f on Z(N) with f(x) outside f(H); its kernel is a complement to z.
    IntVec xc = center_coords(Z, x);
    SnfResult S = snf(IntMatrix(Hc.basis(), r));
    IntVec y = S.V.apply_left(xc);
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < S.invariants.size() && !pick; ++i)
      if (!divides(S.invariants[i], y[i])) pick = i;
    if (!pick) throw std::logic_error("no invariant factor separates the element");
    IntMatrix W = hnf(S.V).U;
    std::vector<Element> complement;
    for (std::size_t j = 0; j < r; ++j)
      if (j != *pick) complement.push_back(word(*G, Z.generators(), W.row(j)));
    Element zdir = word(*G, Z.generators(), W.row(*pick));
    QuotientGroup q1 = quotient_group(G, Subgroup::closure(G, complement, true));
    CentralQuotient cq = one_dim_central_quotient(q1.group, q1.projection.apply(zdir));
    out.projection = compose(cq.projection, q1.projection);

    const GroupPtr& M = cq.group;
    Element xm = out.projection.apply(x);
    std::vector<Element> hm;
    Int d = 0;
    for (const auto& h : H.generators()) {
      hm.push_back(out.projection.apply(h));
      d = gcd(d, center_coords(cq.center, hm.back())[0]);
    }
    Int a = center_coords(cq.center, xm)[0];
    auto [p, k] = cyclic_separator(a, d);
    out.p = p;
    out.k = k;
    out.proof_exponent = k + blackburn_constants(p, M->nilpotency_class()).k;
    std::optional<FiniteQuotient> best;
    for (unsigned long j = k; j <= out.proof_exponent; ++j)
      for (KernelKind kind : {KernelKind::kVerbal, KernelKind::kBasisPower}) {
        FiniteQuotient q = checked_quotient(M, ipow(Int(p), j), kind);
        if (best && q.order() >= best->order()) continue;
        if (q.order() <= kDefaultQuotientLimit && separated_in(q, hm, xm)) best = std::move(q);
      }
    FiniteQuotient guaranteed = congruence_quotient(M, ipow(Int(p), out.proof_exponent));
    if (guaranteed.order() <= kDefaultQuotientLimit && !separated_in(guaranteed, hm, xm))
      throw std::logic_error("the power quotient M/M^{p^(k+k(p,c))} does not separate");
    if (!best) best = guaranteed;
    out.quotient = *best;
  } else {
    out.branch = CentralBranch::kOutsideIsolator;
    QuotientGroup q = quotient_group(G, Subgroup::closure(G, root_gens, true));
    out.projection = q.projection;
    Element xm = q.projection.apply(x);
    auto any = [](const FiniteQuotient&) { return true; };
    auto sep = scan_by_order(q.group, order_budget, any, [&](const FiniteQuotient& c) { return !c.is_trivial(xm); });
    if (!sep) throw BudgetExceeded("no congruence quotient of order <= " + order_budget.get_str() + " separates");
    out.quotient = std::move(*sep);
  }
  out.order = out.quotient.order();
  if (out.order > order_budget)
    throw BudgetExceeded("separating quotient of order " + out.order.get_str() + " exceeds the budget");

  std::vector<Element> hm;
  for (const auto& h : H.generators()) hm.push_back(out.projection.apply(h));
  out.verified = separated_in(out.quotient, hm, out.projection.apply(x));
  if (!out.verified) throw std::logic_error("central separation failed verification");
  return out;
}

Json depth_to_json(const DepthResult& d) {
  Json j;
  j["separated"] = d.separated;
  j["order"] = int_to_json(d.order);
  j["modulus"] = int_to_json(d.modulus);
  j["kernel"] = kernel_kind_name(d.kind);
  j["budget_exhausted"] = d.budget_exhausted;
  j["exhaustive_below"] = d.exhaustive_below;
  Json probes = Json::array();
  for (const auto& p : d.probes)
    probes.push_back(
        {{"modulus", int_to_json(p.modulus)}, {"kernel", kernel_kind_name(p.kind)}, {"order", int_to_json(p.order)},
         {"separated", p.separated}});
  j["probes"] = probes;
  return j;
}

}  // namespace tcsep
