#include "tcsep/extension.hpp"

#include <deque>
#include <unordered_map>

#include "tcsep/twisted.hpp"

namespace tcsep {

namespace {

bool same_map(const GroupHom& f, const GroupHom& g) { return f.images == g.images; }

std::string join(const std::vector<std::string>& errs) {
  std::string out;
  for (const auto& e : errs) out += (out.empty() ? "" : "; ") + e;
  return out;
}

}  // namespace

FiniteExtension::FiniteExtension(GroupPtr kernel, std::vector<std::string> reps, std::vector<GroupHom> action,
                                 std::vector<std::vector<CocycleEntry>> cocycle)
    : N_(std::move(kernel)), reps_(std::move(reps)), action_(std::move(action)), cocycle_(std::move(cocycle)) {
  const std::size_t r = reps_.size();
  const std::size_t h = N_->hirsch();
  std::vector<std::string> errs;
  if (r == 0) throw std::invalid_argument("an extension needs at least the identity coset");
  if (action_.size() != r) errs.push_back("expected " + std::to_string(r) + " actions");
  if (cocycle_.size() != r) errs.push_back("cocycle table must have " + std::to_string(r) + " rows");
  for (const auto& row : cocycle_)
    if (row.size() != r) errs.push_back("cocycle table must have " + std::to_string(r) + " columns");
  if (!errs.empty()) throw std::invalid_argument(join(errs));

  for (std::size_t i = 0; i < r; ++i) {
    const GroupHom& a = action_[i];
    if (a.domain != N_ || a.codomain != N_ || a.images.size() != h) {
      errs.push_back("action of " + reps_[i] + " is not a map N -> N");
      continue;
    }
    VerifyReport rep = verify_hom(a, true);
    for (const auto& v : rep.violations) errs.push_back("action of " + reps_[i] + ": " + v);
  }
  if (!errs.empty()) throw std::invalid_argument(join(errs));
  if (!same_map(action_[0], identity_hom(N_))) errs.push_back("the first representative must act trivially");

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const CocycleEntry& c = cocycle_[i][j];
      std::string at = "cocycle(" + reps_[i] + "," + reps_[j] + ")";
      if (c.coset >= r) errs.push_back(at + " names an unknown coset");
      if (c.n.size() != h) errs.push_back(at + " has a kernel part of the wrong length");
      if ((i == 0 || j == 0) && (c.coset != i + j || !N_->is_identity(c.n)))
        errs.push_back(at + " must be trivial since the first representative is the identity");
    }
  if (!errs.empty()) throw std::invalid_argument(join(errs));

  for (std::size_t i = 0; i < r; ++i) {
    std::vector<bool> row(r, false), col(r, false);
    for (std::size_t j = 0; j < r; ++j) {
      row[cocycle_[i][j].coset] = true;
      col[cocycle_[j][i].coset] = true;
    }
    for (std::size_t k = 0; k < r; ++k)
      if (!row[k] || !col[k]) {
        errs.push_back("coset products involving " + reps_[i] + " do not form a permutation");
        break;
      }
  }
  if (!errs.empty()) throw std::invalid_argument(join(errs));

  // alpha_i alpha_j = Inn(c_ij) alpha_k
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const CocycleEntry& c = cocycle_[i][j];
      GroupHom lhs = compose(action_[i], action_[j]);
      GroupHom rhs = compose(inner_automorphism(N_, c.n), action_[c.coset]);
      if (!same_map(lhs, rhs))
        errs.push_back("conjugation by " + reps_[i] + " then " + reps_[j] + " disagrees with the cocycle");
    }
  inverse_coset_.assign(r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (cocycle_[i][j].coset == 0) inverse_coset_[i] = j;
  if (errs.empty())
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) {
          ExtElement a = rep(i), b = rep(j), c = rep(k);
          if (!(multiply(multiply(a, b), c) == multiply(a, multiply(b, c))))
            errs.push_back("associativity fails on (" + reps_[i] + "," + reps_[j] + "," + reps_[k] + ")");
        }
  if (!errs.empty()) throw std::invalid_argument(join(errs));
}

ExtElement FiniteExtension::multiply(const ExtElement& a, const ExtElement& b) const {
  // (n s_i)(m s_j) = n alpha_i(m) c_ij s_k
  const CocycleEntry& c = cocycle_[a.coset][b.coset];
  Element n = N_->multiply(N_->multiply(a.n, action_[a.coset].apply(b.n)), c.n);
  return {std::move(n), c.coset};
}

ExtElement FiniteExtension::inverse(const ExtElement& a) const {
  // s_i s_j = c gives s_i^-1 = alpha_j(c^-1) s_j.
  std::size_t j = inverse_coset_[a.coset];
  const Element& c = cocycle_[a.coset][j].n;
  return {action_[j].apply(N_->inverse(N_->multiply(a.n, c))), j};
}

GroupHom FiniteExtension::conjugation_on_kernel(const ExtElement& g) const {
  return compose(inner_automorphism(N_, g.n), action_[g.coset]);
}

std::vector<ExtElement> FiniteExtension::standard_generators() const {
  std::vector<ExtElement> out;
  for (const auto& g : tcsep::standard_generators(*N_)) out.push_back(from_kernel(g));
  for (std::size_t i = 1; i < index(); ++i) out.push_back(rep(i));
  return out;
}

std::string FiniteExtension::format(const ExtElement& a) const {
  std::string n = N_->format(a.n);
  if (a.coset == 0) return n;
  return (N_->is_identity(a.n) ? "" : n + "*") + reps_[a.coset];
}

ExtPtr infinite_dihedral() {
  GroupPtr Z = free_abelian(1);
  GroupHom flip{Z, Z, {{Int(-1)}}};
  std::vector<std::vector<CocycleEntry>> c{{{0, {0}}, {1, {0}}}, {{1, {0}}, {0, {0}}}};
  return std::make_shared<const FiniteExtension>(Z, std::vector<std::string>{"1", "s"},
                                                 std::vector<GroupHom>{identity_hom(Z), flip}, c);
}

ExtPtr heisenberg_inversion_extension() {
  GroupPtr H = heisenberg();
  IntMatrix minus(2, 2);
  minus.at(0, 0) = -1;
  minus.at(1, 1) = -1;
  GroupHom inv = heisenberg_automorphism(H, minus);
  Element e = H->identity();
  std::vector<std::vector<CocycleEntry>> c{{{0, e}, {1, e}}, {{1, e}, {0, e}}};
  return std::make_shared<const FiniteExtension>(H, std::vector<std::string>{"1", "s"},
                                                 std::vector<GroupHom>{identity_hom(H), inv}, c);
}

ExtAutomorphism::ExtAutomorphism(ExtPtr ext, GroupHom restriction, std::vector<ExtElement> rep_images)
    : ext_(std::move(ext)), restriction_(std::move(restriction)), rep_images_(std::move(rep_images)) {
  const FiniteExtension& G = *ext_;
  const std::size_t r = G.index();
  std::vector<std::string> errs;
  if (restriction_.domain != G.kernel_ptr() || restriction_.codomain != G.kernel_ptr())
    throw std::invalid_argument("the restriction must be a map N -> N");
  for (const auto& v : verify_hom(restriction_, true).violations) errs.push_back("restriction: " + v);
  if (rep_images_.size() != r) errs.push_back("expected " + std::to_string(r) + " representative images");
  if (!errs.empty()) throw std::invalid_argument(join(errs));
  if (!(rep_images_[0] == G.identity())) errs.push_back("the identity representative must map to the identity");

  std::vector<bool> hit(r, false);
  for (const auto& im : rep_images_) {
    if (im.coset >= r || im.n.size() != G.kernel().hirsch()) {
      errs.push_back("representative image is not an element of the extension");
      continue;
    }
    hit[im.coset] = true;
  }
  if (!errs.empty()) throw std::invalid_argument(join(errs));
  for (std::size_t k = 0; k < r; ++k)
    if (!hit[k]) errs.push_back("the induced map on G/N is not a permutation");

  for (std::size_t i = 0; i < r; ++i) {
    // phi(s_i n s_i^-1) = phi(s_i) phi(n) phi(s_i)^-1
    GroupHom lhs = compose(restriction_, G.action(i));
    GroupHom rhs = compose(G.conjugation_on_kernel(rep_images_[i]), restriction_);
    if (!same_map(lhs, rhs)) errs.push_back("not compatible with the action of " + G.rep_names()[i]);
    for (std::size_t j = 0; j < r; ++j) {
      const CocycleEntry& c = G.cocycle(i, j);
      ExtElement a = G.multiply(rep_images_[i], rep_images_[j]);
      ExtElement b = G.multiply(G.from_kernel(restriction_.apply(c.n)), rep_images_[c.coset]);
      if (!(a == b))
        errs.push_back("not multiplicative on (" + G.rep_names()[i] + "," + G.rep_names()[j] + ")");
    }
  }
  if (!errs.empty()) throw std::invalid_argument(join(errs));
}

ExtAutomorphism ExtAutomorphism::from_images(ExtPtr ext, const std::vector<ExtElement>& kernel_images,
                                             std::vector<ExtElement> rep_images) {
  const GroupPtr& N = ext->kernel_ptr();
  if (kernel_images.size() != N->hirsch()) throw std::invalid_argument("expected an image for every kernel generator");
  GroupHom f{N, N, {}};
  for (std::size_t k = 0; k < kernel_images.size(); ++k) {
    if (kernel_images[k].coset != 0)
      throw std::invalid_argument("the automorphism does not preserve N: " + N->presentation().names[k] +
                                  " maps to " + ext->format(kernel_images[k]));
    f.images.push_back(kernel_images[k].n);
  }
  return ExtAutomorphism(std::move(ext), std::move(f), std::move(rep_images));
}

ExtAutomorphism ExtAutomorphism::identity(ExtPtr ext) {
  std::vector<ExtElement> reps;
  for (std::size_t i = 0; i < ext->index(); ++i) reps.push_back(ext->rep(i));
  GroupHom id = identity_hom(ext->kernel_ptr());
  return ExtAutomorphism(std::move(ext), std::move(id), std::move(reps));
}

ExtElement ExtAutomorphism::apply(const ExtElement& g) const {
  return ext_->multiply(ext_->from_kernel(restriction_.apply(g.n)), rep_images_[g.coset]);
}

std::vector<TwistedPart> decompose_twisted_class(const ExtAutomorphism& phi, const ExtElement& x) {
  const FiniteExtension& G = phi.extension();
  std::vector<TwistedPart> out;
  for (std::size_t i = 0; i < G.index(); ++i) {
    ExtElement s = G.rep(i);
    ExtElement xi = G.multiply(G.multiply(s, x), G.inverse(phi.apply(s)));
    out.push_back({i, xi, compose(G.conjugation_on_kernel(xi), phi.restriction())});
  }
  return out;
}

VirtualDecision is_conjugate_virtual(const ExtAutomorphism& phi, const ExtElement& x, const ExtElement& y) {
  const FiniteExtension& G = phi.extension();
  VirtualDecision out;
  for (const auto& part : decompose_twisted_class(phi, x)) {
    ExtElement w = G.multiply(y, G.inverse(part.translate));
    if (!G.in_kernel(w)) continue;
    TwistedDecision d = is_twisted_conjugate(part.psi, G.kernel().identity(), w.n);
    if (!d.conjugate) continue;
    // z psi(z)^-1 x_i = y makes z s_i a witness.
    ExtElement g{*d.witness, part.rep};
    if (!(G.multiply(G.multiply(g, x), G.inverse(phi.apply(g))) == y))
      throw std::logic_error("virtual conjugacy witness failed verification");
    out.conjugate = true;
    out.witness = g;
    out.part = part.rep;
    return out;
  }
  return out;
}

ExtQuotient::ExtQuotient(ExtPtr ext, Subgroup kernel) : ext_(std::move(ext)), L_(std::move(kernel)) {
  if (L_.group_ptr() != ext_->kernel_ptr()) throw std::invalid_argument("kernel must be a subgroup of N");
  if (!L_.has_finite_index()) throw std::invalid_argument("kernel must have finite index");
  if (!L_.is_normal()) throw std::invalid_argument("kernel must be normal in N");
  for (std::size_t i = 1; i < ext_->index(); ++i)
    if (!L_.is_invariant(ext_->action(i)))
      throw std::invalid_argument("kernel is not normalized by " + ext_->rep_names()[i]);
}

std::vector<ExtElement> ExtQuotient::elements(std::size_t limit) const {
  if (order() > limit) throw BudgetExceeded("quotient of order " + order().get_str() + " exceeds the limit");
  std::vector<ExtElement> out;
  for (const auto& n : coset_representatives(L_, limit))
    for (std::size_t i = 0; i < ext_->index(); ++i) out.push_back({n, i});
  return out;
}

namespace {

void check_invariant(const ExtQuotient& q, const ExtAutomorphism& phi) {
  if (!q.kernel().is_invariant(phi.restriction()))
    throw std::invalid_argument("the automorphism does not preserve the quotient kernel");
}

}  // namespace

ExtElementSet quotient_twisted_class(const ExtQuotient& q, const ExtAutomorphism& phi, const ExtElement& x,
                                     std::size_t limit) {
  check_invariant(q, phi);
  const FiniteExtension& G = q.extension();
  std::vector<ExtElement> gens = G.standard_generators();
  for (std::size_t k = 0, m = gens.size(); k < m; ++k) gens.push_back(G.inverse(gens[k]));
  std::vector<std::pair<ExtElement, ExtElement>> moves;  // g and phi(g)^-1
  for (const auto& g : gens) moves.emplace_back(g, G.inverse(phi.apply(g)));

  ExtElementSet seen{q.canon(x)};
  std::deque<ExtElement> queue{q.canon(x)};
  while (!queue.empty()) {
    ExtElement cur = queue.front();
    queue.pop_front();
    for (const auto& [g, ginv] : moves) {
      ExtElement nxt = q.canon(G.multiply(G.multiply(g, cur), ginv));
      if (seen.insert(nxt).second) {
        if (seen.size() > limit) throw BudgetExceeded("twisted class exceeds the limit");
        queue.push_back(nxt);
      }
    }
  }
  return seen;
}

ExtElementSet quotient_twisted_class_exhaustive(const ExtQuotient& q, const ExtAutomorphism& phi,
                                                const ExtElement& x, std::size_t limit) {
  check_invariant(q, phi);
  const FiniteExtension& G = q.extension();
  ExtElementSet out;
  for (const auto& g : q.elements(limit)) out.insert(q.canon(G.multiply(G.multiply(g, x), G.inverse(phi.apply(g)))));
  return out;
}

Subgroup intersect_finite_index(const Subgroup& a, const Subgroup& b, std::size_t limit) {
  if (a.group_ptr() != b.group_ptr()) throw std::invalid_argument("subgroups of different groups");
  if (!a.has_finite_index() || !b.has_finite_index()) throw std::invalid_argument("subgroups must have finite index");
  const GroupPtr& Gp = a.group_ptr();
  const Group& G = *Gp;
  // Left multiplication on pairs of cosets; the stabilizer of (A, B) is the intersection.
  auto key = [&](const Element& g) {
    Element k = a.coset_rep(g);
    Element kb = b.coset_rep(g);
    k.insert(k.end(), kb.begin(), kb.end());
    return k;
  };
  std::vector<Element> gens;
  for (std::size_t i = 0; i < G.hirsch(); ++i) gens.push_back(G.generator(i));
  std::unordered_map<Element, Element, IntVecHash> transversal;
  std::vector<Element> order{G.identity()};
  transversal.emplace(key(G.identity()), G.identity());
  std::vector<Element> schreier;
  for (std::size_t at = 0; at < order.size(); ++at) {
    Element t = order[at];
    for (const auto& s : gens) {
      Element u = G.multiply(s, t);
      Element k = key(u);
      auto it = transversal.find(k);
      if (it == transversal.end()) {
        if (transversal.size() >= limit) throw BudgetExceeded("intersection index exceeds the limit");
        transversal.emplace(std::move(k), u);
        order.push_back(u);
      } else {
        Element sg = G.multiply(G.inverse(it->second), u);
        if (!G.is_identity(sg)) schreier.push_back(std::move(sg));
      }
    }
  }
  Subgroup out = Subgroup::closure(Gp, schreier);
  if (out.index() != Int(static_cast<unsigned long>(order.size())))
    throw std::logic_error("intersection index disagrees with the coset count");
  return out;
}

Subgroup subgroup_image(const Subgroup& a, const GroupHom& f) {
  if (a.group_ptr() != f.domain) throw std::invalid_argument("map is not defined on the subgroup");
  std::vector<Element> gens;
  for (const auto& g : a.generators()) gens.push_back(f.apply(g));
  return Subgroup::closure(f.codomain, gens);
}

Subgroup stable_core(const ExtAutomorphism& phi, const Subgroup& K, std::size_t limit) {
  const FiniteExtension& G = phi.extension();
  if (!K.is_normal()) throw std::invalid_argument("subgroup must be normal in N");
  std::vector<GroupHom> maps{phi.restriction()};
  for (std::size_t i = 1; i < G.index(); ++i) maps.push_back(G.action(i));
  std::vector<Subgroup> orbit{K};
  for (std::size_t at = 0; at < orbit.size(); ++at)
    for (const auto& f : maps) {
      Subgroup img = subgroup_image(orbit[at], f);
      bool known = false;
      for (const auto& o : orbit)
        if (o == img) {
          known = true;
          break;
        }
      if (!known) orbit.push_back(std::move(img));
    }
  Subgroup core = orbit[0];
  for (std::size_t k = 1; k < orbit.size(); ++k) core = intersect_finite_index(core, orbit[k], limit);
  return core;
}

UnionSeparation farb_depth_union(const ExtAutomorphism& phi, const ExtElement& x, const ExtElement& y,
                                 const Int& order_budget, std::size_t limit) {
  const ExtPtr& ext = phi.extension_ptr();
  const FiniteExtension& G = *ext;
  const GroupPtr& N = G.kernel_ptr();
  if (is_conjugate_virtual(phi, x, y).conjugate)
    throw std::invalid_argument(G.format(y) + " is twisted-conjugate to " + G.format(x));
  const Int r(static_cast<unsigned long>(G.index()));

  UnionSeparation out;
  out.combined_kernel = Subgroup::whole(N);
  out.union_bound = 1;
  Int part_product = 1;
  for (const auto& part : decompose_twisted_class(phi, x)) {
    UnionPart up;
    up.rep = part.rep;
    ExtElement w = G.multiply(y, G.inverse(part.translate));
    if (!G.in_kernel(w)) {
      up.outside_coset = true;
      up.part_order = r;
      up.core_order = r;
    } else {
      up.depth = congruence_depth(part.psi, N->identity(), w.n, order_budget);
      if (!up.depth.separated)
        throw BudgetExceeded("no separating quotient of N within order " + order_budget.get_str() + " for part " +
                             G.rep_names()[part.rep]);
      Subgroup K = up.depth.kind == KernelKind::kVerbal ? power_subgroup(N, up.depth.modulus)
                                                        : basis_power_subgroup(N, up.depth.modulus);
      Subgroup core = stable_core(phi, K, limit);
      up.part_order = up.depth.order;
      up.core_order = core.index() * r;
      out.combined_kernel = intersect_finite_index(out.combined_kernel, core, limit);
    }
    out.union_bound *= up.core_order;
    part_product *= up.part_order;
    out.parts.push_back(std::move(up));
  }
  out.extension_bound = ipow(part_product, G.index());

  ExtQuotient Q(ext, out.combined_kernel);
  out.order = Q.order();
  ExtElementSet orbit = quotient_twisted_class(Q, phi, x, limit);
  bool ok = !orbit.count(Q.canon(y));
  if (out.order <= limit) {
    ExtElementSet full = quotient_twisted_class_exhaustive(Q, phi, x, limit);
    ok = ok && full == orbit;
  }
  out.verified = ok;
  return out;
}

ExtBall ext_ball(const FiniteExtension& G, std::size_t n, std::size_t cap) {
  std::vector<ExtElement> gens = G.standard_generators();
  for (std::size_t k = 0, m = gens.size(); k < m; ++k) gens.push_back(G.inverse(gens[k]));
  ExtBall out;
  ExtElementSet seen{G.identity()};
  out.elements.push_back(G.identity());
  out.radius.push_back(0);
  for (std::size_t at = 0; at < out.elements.size(); ++at) {
    if (out.radius[at] == n) break;
    for (const auto& s : gens) {
      ExtElement nxt = G.multiply(out.elements[at], s);
      if (seen.insert(nxt).second) {
        if (seen.size() > cap) throw BudgetExceeded("ball exceeds the element cap");
        out.elements.push_back(nxt);
        out.radius.push_back(out.radius[at] + 1);
      }
    }
  }
  return out;
}

namespace {

std::size_t rep_index(const FiniteExtension& G, const std::string& name) {
  const auto& names = G.rep_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw std::invalid_argument("unknown coset representative '" + name + "'");
}

}  // namespace

ExtPtr extension_from_json(const Json& j) {
  GroupPtr N = group_from_json(j.at("kernel"));
  auto reps = j.at("reps").get<std::vector<std::string>>();
  const std::size_t r = reps.size();
  if (r == 0) throw std::invalid_argument("no coset representatives");
  std::unordered_map<std::string, std::size_t> idx;
  std::vector<std::string> errs;
  for (std::size_t i = 0; i < r; ++i)
    if (!idx.emplace(reps[i], i).second) errs.push_back("duplicate representative '" + reps[i] + "'");

  std::vector<GroupHom> action(r, identity_hom(N));
  const Json acts = j.value("action", Json::object());
  for (const auto& [name, hom] : acts.items()) {
    if (!idx.count(name)) {
      errs.push_back("action given for unknown representative '" + name + "'");
      continue;
    }
    try {
      action[idx[name]] = hom_from_json(N, N, hom);
    } catch (const std::exception& e) {
      errs.push_back("action of " + name + ": " + e.what());
    }
  }
  for (std::size_t i = 1; i < r; ++i)
    if (!acts.contains(reps[i])) errs.push_back("no action given for '" + reps[i] + "'");

  std::vector<std::vector<CocycleEntry>> table(r, std::vector<CocycleEntry>(r));
  std::vector<std::vector<bool>> given(r, std::vector<bool>(r, false));
  for (std::size_t i = 0; i < r; ++i) {
    table[0][i] = {i, N->identity()};
    table[i][0] = {i, N->identity()};
  }
  for (const auto& e : j.value("cocycle", Json::array())) {
    try {
      std::string l = e.at("left"), rt = e.at("right"), k = e.at("rep");
      for (const auto& nm : {l, rt, k})
        if (!idx.count(nm)) throw std::invalid_argument("unknown representative '" + nm + "'");
      std::size_t a = idx[l], b = idx[rt];
      if (a == 0 || b == 0) throw std::invalid_argument("entries involving the identity are implicit");
      if (given[a][b]) throw std::invalid_argument("duplicate entry for (" + l + "," + rt + ")");
      given[a][b] = true;
      table[a][b] = {idx[k], e.contains("kernel") ? element_from_json(*N, e.at("kernel")) : N->identity()};
    } catch (const std::exception& ex) {
      errs.push_back(std::string("cocycle entry ") + e.dump() + ": " + ex.what());
    }
  }
  for (std::size_t a = 1; a < r; ++a)
    for (std::size_t b = 1; b < r; ++b)
      if (!given[a][b]) errs.push_back("no cocycle entry for (" + reps[a] + "," + reps[b] + ")");
  if (!errs.empty()) throw std::invalid_argument(join(errs));
  return std::make_shared<const FiniteExtension>(N, reps, action, table);
}

Json extension_to_json(const FiniteExtension& G) {
  Json j;
  j["kernel"] = presentation_to_json(G.kernel().presentation());
  j["reps"] = G.rep_names();
  Json acts = Json::object();
  for (std::size_t i = 1; i < G.index(); ++i) acts[G.rep_names()[i]] = hom_to_json(G.action(i));
  j["action"] = acts;
  Json coc = Json::array();
  for (std::size_t a = 1; a < G.index(); ++a)
    for (std::size_t b = 1; b < G.index(); ++b) {
      const CocycleEntry& c = G.cocycle(a, b);
      coc.push_back({{"left", G.rep_names()[a]},
                     {"right", G.rep_names()[b]},
                     {"rep", G.rep_names()[c.coset]},
                     {"kernel", element_to_json(c.n)}});
    }
  j["cocycle"] = coc;
  return j;
}

ExtElement ext_element_from_json(const FiniteExtension& G, const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("expected {\"kernel\": ..., \"rep\": ...}, got " + j.dump());
  ExtElement e = G.identity();
  if (j.contains("kernel")) e.n = element_from_json(G.kernel(), j.at("kernel"));
  if (j.contains("rep")) e.coset = rep_index(G, j.at("rep").get<std::string>());
  return e;
}

Json ext_element_to_json(const FiniteExtension& G, const ExtElement& e) {
  Json j = Json::object();
  j["kernel"] = element_to_json(e.n);
  j["rep"] = G.rep_names()[e.coset];
  return j;
}

ExtAutomorphism ext_automorphism_from_json(const ExtPtr& G, const Json& j) {
  const Group& N = G->kernel();
  std::vector<ExtElement> kernel_images;
  const Json& k = j.at("kernel");
  for (const auto& name : N.presentation().names) {
    if (!k.contains(name)) throw std::invalid_argument("no image for generator '" + name + "'");
    const Json& im = k.at(name);
    bool ext_form = im.is_object() && (im.contains("rep") || im.contains("kernel"));
    kernel_images.push_back(ext_form ? ext_element_from_json(*G, im) : G->from_kernel(element_from_json(N, im)));
  }
  std::vector<ExtElement> reps;
  for (std::size_t i = 0; i < G->index(); ++i) reps.push_back(G->rep(i));
  const Json rep_images = j.value("reps", Json::object());
  for (const auto& [name, im] : rep_images.items()) reps[rep_index(*G, name)] = ext_element_from_json(*G, im);
  return ExtAutomorphism::from_images(G, kernel_images, reps);
}

Json union_to_json(const FiniteExtension& G, const UnionSeparation& u) {
  Json j;
  Json parts = Json::array();
  for (const auto& p : u.parts) {
    Json pj;
    pj["rep"] = G.rep_names()[p.rep];
    pj["outside_coset"] = p.outside_coset;
    if (!p.outside_coset) pj["depth"] = depth_to_json(p.depth);
    pj["part_order"] = int_to_json(p.part_order);
    pj["core_order"] = int_to_json(p.core_order);
    parts.push_back(pj);
  }
  j["parts"] = parts;
  Json ker = Json::array();
  for (const auto& g : u.combined_kernel.generators()) ker.push_back(element_to_json(g));
  j["kernel_generators"] = ker;
  j["order"] = int_to_json(u.order);
  j["union_bound"] = int_to_json(u.union_bound);
  j["extension_bound"] = int_to_json(u.extension_bound);
  j["verified"] = u.verified;
  return j;
}

}  // namespace tcsep
