#include "tcsep/group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace tcsep {

int Presentation::nilpotency_class() const {
  int c = 0;
  for (int w : weight) c = std::max(c, w);
  return c;
}

void Presentation::set_commutator(std::size_t j, std::size_t i, const Element& c) {
  if (j <= i || j >= hirsch()) throw std::invalid_argument("commutator relation needs j > i");
  if (comm.size() < hirsch()) comm.resize(hirsch());
  if (comm[j].size() < j) comm[j].resize(j);
  comm[j][i] = is_zero(c) ? Element{} : c;
}

Element Presentation::commutator_relation(std::size_t j, std::size_t i) const {
  if (j < comm.size() && i < comm[j].size() && !comm[j][i].empty()) return comm[j][i];
  return zeros(hirsch());
}

std::size_t Presentation::index_of(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::invalid_argument("unknown generator '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

Group::Group(Presentation p) : p_(std::move(p)) {
  const std::size_t h = p_.hirsch();
  if (p_.weight.size() != h) throw std::invalid_argument("weight list does not match the basis");
  for (std::size_t i = 0; i < h; ++i) {
    if (p_.weight[i] < 1) throw std::invalid_argument("weights must be >= 1");
    if (i > 0 && p_.weight[i] < p_.weight[i - 1]) throw std::invalid_argument("weights must be nondecreasing");
  }
  for (std::size_t j = 0; j < p_.comm.size(); ++j)
    for (std::size_t i = 0; i < p_.comm[j].size(); ++i) {
      const Element& c = p_.comm[j][i];
      if (c.empty()) continue;
      if (c.size() != h) throw std::invalid_argument("commutator relation has wrong length");
      int top = std::max(p_.weight[i], p_.weight[j]);
      for (std::size_t k = 0; k < h; ++k)
        if (c[k] != 0 && p_.weight[k] <= top)
          throw std::invalid_argument("relation [" + p_.names[j] + "," + p_.names[i] +
                                      "] is not supported on deeper generators");
    }
  cls_ = p_.nilpotency_class();
  layers_.assign(static_cast<std::size_t>(cls_), {});
  for (std::size_t i = 0; i < h; ++i) layers_[static_cast<std::size_t>(p_.weight[i] - 1)].push_back(i);
  build_tables();
}

Element Group::generator(std::size_t i, const Int& e) const {
  Element g = identity();
  g.at(i) = e;
  return g;
}

Element Group::conj_apply(std::size_t i, const Element& t) const {
  Element r = identity();
  for (std::size_t k = i + 1; k < hirsch(); ++k) {
    if (t[k] == 0) continue;
    if (conj_trivial_[i][k])
      mul_gen(r, k, t[k]);
    else
      r = multiply(r, power(conj_images_[i][k], t[k]));
  }
  return r;
}

Element Group::conj_pow_image(std::size_t i, std::size_t j, const Int& e) const {
  const auto& nw = newton_[i][j];
  Element r = nw[0];
  for (unsigned long k = 1; k < nw.size(); ++k) {
    if (is_zero(nw[k])) continue;
    Int b = binomial(e, k);
    if (b == 0) continue;
    for (std::size_t c = 0; c < r.size(); ++c) r[c] += b * nw[k][c];
  }
  return r;
}

void Group::build_tables() {
  const std::size_t h = hirsch();
  conj_images_.assign(h, std::vector<Element>(h));
  newton_.assign(h, std::vector<std::vector<Element>>(h));
  conj_trivial_.assign(h, std::vector<bool>(h, true));
  acts_trivially_.assign(h, true);
  constexpr std::size_t kMaxPoints = 64;
  for (std::size_t ii = h; ii-- > 0;) {
    // a_i^-1 a_j a_i = (a_i^-1 c a_i) a_j where c = [a_j, a_i].
    for (std::size_t j = h; j-- > ii + 1;) {
      Element c = p_.commutator_relation(j, ii);
      Element img = is_zero(c) ? identity() : conj_apply(ii, c);
      mul_gen(img, j, 1);
      conj_images_[ii][j] = img;
      conj_trivial_[ii][j] = (img == generator(j));
      if (!conj_trivial_[ii][j]) acts_trivially_[ii] = false;
    }
    for (std::size_t j = ii + 1; j < h; ++j) {
      if (conj_trivial_[ii][j]) {
        newton_[ii][j] = {generator(j)};
        continue;
      }
      // Sample n -> a_i^-n a_j a_i^n until two consecutive forward differences vanish.
      std::vector<Element> pts{generator(j)};
      std::vector<Element> diffs;
      bool done = false;
      while (!done) {
        if (pts.size() >= kMaxPoints) throw std::invalid_argument("conjugation action is not polynomial");
        pts.push_back(conj_apply(ii, pts.back()));
        std::vector<Element> row = pts;
        diffs.clear();
        diffs.push_back(row[0]);
        while (row.size() > 1) {
          std::vector<Element> next;
          for (std::size_t k = 0; k + 1 < row.size(); ++k) next.push_back(sub(row[k + 1], row[k]));
          row = std::move(next);
          diffs.push_back(row[0]);
        }
        std::size_t n = diffs.size();
        done = n >= 3 && is_zero(diffs[n - 1]) && is_zero(diffs[n - 2]);
      }
      while (diffs.size() > 1 && is_zero(diffs.back())) diffs.pop_back();
      newton_[ii][j] = std::move(diffs);
    }
  }
}

void Group::mul_gen(Element& g, std::size_t i, const Int& e) const {
  if (e == 0) return;
  bool moves = false;
  if (!acts_trivially_[i])
    for (std::size_t k = i + 1; k < hirsch() && !moves; ++k) moves = g[k] != 0 && !conj_trivial_[i][k];
  if (!moves) {
    g[i] += e;
    return;
  }
  // g a_i^e = P a_i^(g_i + e) (a_i^-e T a_i^e).
  Element t = identity();
  for (std::size_t k = i + 1; k < hirsch(); ++k) {
    if (g[k] == 0) continue;
    if (conj_trivial_[i][k])
      mul_gen(t, k, g[k]);
    else
      t = multiply(t, power(conj_pow_image(i, k, e), g[k]));
  }
  g[i] += e;
  for (std::size_t k = i + 1; k < hirsch(); ++k) g[k] = std::move(t[k]);
}

Element Group::multiply(const Element& g, const Element& h) const {
  Element r = g;
  for (std::size_t i = 0; i < hirsch(); ++i)
    if (h[i] != 0) mul_gen(r, i, h[i]);
  return r;
}

Element Group::inverse(const Element& g) const {
  Element r = identity();
  for (std::size_t i = hirsch(); i-- > 0;)
    if (g[i] != 0) mul_gen(r, i, -g[i]);
  return r;
}

Element Group::power(const Element& g, const Int& n) const {
  std::size_t support = 0, last = 0;
  for (std::size_t i = 0; i < hirsch(); ++i)
    if (g[i] != 0) ++support, last = i;
  if (support == 0 || n == 0) return identity();
  if (support == 1) return generator(last, g[last] * n);
  Element base = n < 0 ? inverse(g) : g;
  Int e = abs(n);
  Element r = identity();
  while (true) {
    if (mpz_odd_p(e.get_mpz_t())) r = multiply(r, base);
    e >>= 1;
    if (e == 0) break;
    base = multiply(base, base);
  }
  return r;
}

Element Group::commutator(const Element& g, const Element& h) const {
  return multiply(multiply(g, h), inverse(multiply(h, g)));
}

Element Group::conjugate(const Element& by, const Element& g) const {
  return multiply(multiply(by, g), inverse(by));
}

int Group::depth(const Element& g) const {
  for (std::size_t i = 0; i < hirsch(); ++i)
    if (g[i] != 0) return p_.weight[i];
  return cls_ + 1;
}

IntVec Group::layer_coords(const Element& g, int w) const {
  IntVec r;
  for (std::size_t i : layer(w)) r.push_back(g[i]);
  return r;
}

Element Group::from_layer(int w, const IntVec& coords) const {
  Element g = identity();
  const auto& idx = layer(w);
  if (coords.size() != idx.size()) throw std::invalid_argument("layer coordinate length mismatch");
  for (std::size_t k = 0; k < idx.size(); ++k) g[idx[k]] = coords[k];
  return g;
}

std::string Group::format(const Element& g) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < hirsch(); ++i) {
    if (g[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << p_.names[i];
    if (g[i] != 1) os << '^' << g[i].get_str();
  }
  if (first) os << '1';
  return os.str();
}

// ---------------------------------------------------------------------------
// Word metric

std::optional<std::size_t> Ball::length(const Element& g) const {
  auto it = index.find(g);
  if (it == index.end()) return std::nullopt;
  return radius[it->second];
}

std::size_t Ball::count_within(std::size_t n) const {
  return static_cast<std::size_t>(std::upper_bound(radius.begin(), radius.end(), n) - radius.begin());
}

namespace {

std::vector<Element> symmetric(const Group& G, const GeneratingSet& S) {
  std::vector<Element> out;
  std::set<Element> seen;
  for (const auto& s : S) {
    if (s.size() != G.hirsch()) throw std::invalid_argument("generator has wrong length");
    for (const Element& t : {s, G.inverse(s)})
      if (!G.is_identity(t) && seen.insert(t).second) out.push_back(t);
  }
  return out;
}

// Grows the ball one sphere at a time; stops early once `target` is found.
Ball grow_ball(const Group& G, const GeneratingSet& S, std::size_t n, std::size_t cap, const Element* target) {
  auto letters = symmetric(G, S);
  Ball b;
  b.elements.push_back(G.identity());
  b.radius.push_back(0);
  b.index.emplace(G.identity(), 0);
  if (target && *target == G.identity()) return b;
  std::size_t begin = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    std::size_t end = b.elements.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (const auto& s : letters) {
        Element g = G.multiply(b.elements[k], s);
        if (b.index.count(g)) continue;
        if (b.elements.size() >= cap)
          throw BudgetExceeded("ball enumeration exceeded the element cap of " + std::to_string(cap));
        b.index.emplace(g, b.elements.size());
        b.elements.push_back(g);
        b.radius.push_back(r);
        if (target && g == *target) return b;
      }
    }
    b.complete_radius = r;
    begin = end;
    if (begin == b.elements.size()) break;
  }
  b.complete_radius = n;
  return b;
}

}  // namespace

Ball ball(const Group& G, const GeneratingSet& S, std::size_t n, std::size_t cap) {
  return grow_ball(G, S, n, cap, nullptr);
}

std::optional<std::size_t> word_length(const Group& G, const GeneratingSet& S, const Element& g, std::size_t cap,
                                       std::size_t element_cap) {
  Ball b = grow_ball(G, S, cap, element_cap, &g);
  return b.length(g);
}

std::optional<std::size_t> subgroup_norm_upper(const Group& G, const GeneratingSet& S,
                                               const std::vector<Element>& gens, std::size_t cap) {
  std::size_t best = 0;
  for (const auto& g : gens) {
    auto l = word_length(G, S, g, cap);
    if (!l) return std::nullopt;
    best = std::max(best, *l);
  }
  return best;
}

GeneratingSet standard_generators(const Group& G) {
  GeneratingSet S;
  for (std::size_t i : G.layer(1)) S.push_back(G.generator(i));
  return S;
}

// ---------------------------------------------------------------------------
// Homomorphisms

Element GroupHom::apply(const Element& g) const {
  Element r = codomain->identity();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != 0) r = codomain->multiply(r, codomain->power(images[i], g[i]));
  return r;
}

IntMatrix GroupHom::layer_matrix(int w) const {
  const auto& dom = domain->layer(w);
  std::size_t rows = w <= codomain->nilpotency_class() ? codomain->layer_rank(w) : 0;
  IntMatrix M(rows, dom.size());
  for (std::size_t c = 0; c < dom.size(); ++c) {
    if (rows == 0) break;
    IntVec col = codomain->layer_coords(images[dom[c]], w);
    for (std::size_t r = 0; r < rows; ++r) M.at(r, c) = col[r];
  }
  return M;
}

GroupHom identity_hom(const std::shared_ptr<const Group>& G) {
  GroupHom f{G, G, {}};
  for (std::size_t i = 0; i < G->hirsch(); ++i) f.images.push_back(G->generator(i));
  return f;
}

GroupHom compose(const GroupHom& f, const GroupHom& g) {
  GroupHom r{g.domain, f.codomain, {}};
  for (const auto& im : g.images) r.images.push_back(f.apply(im));
  return r;
}

GroupHom inner_automorphism(const std::shared_ptr<const Group>& G, const Element& x) {
  GroupHom f{G, G, {}};
  for (std::size_t i = 0; i < G->hirsch(); ++i) f.images.push_back(G->conjugate(x, G->generator(i)));
  return f;
}

GroupHom twisted_by_inner(const GroupHom& phi, const Element& x) {
  GroupHom f{phi.domain, phi.codomain, {}};
  for (const auto& im : phi.images) f.images.push_back(phi.codomain->conjugate(x, im));
  return f;
}

std::optional<std::size_t> automorphism_norm(const GroupHom& phi, const GeneratingSet& S, std::size_t cap) {
  std::size_t best = 0;
  for (const auto& s : S) {
    auto l = word_length(*phi.codomain, S, phi.apply(s), cap);
    if (!l) return std::nullopt;
    best = std::max(best, *l);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Verification

VerifyReport verify_presentation(const Presentation& p) {
  VerifyReport rep;
  const std::size_t h = p.hirsch();
  if (p.weight.size() != h) {
    rep.fail("weight list has " + std::to_string(p.weight.size()) + " entries for " + std::to_string(h) +
             " generators");
    return rep;
  }
  std::set<std::string> names(p.names.begin(), p.names.end());
  if (names.size() != h) rep.fail("generator names are not unique");
  for (std::size_t j = 0; j < h; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      Element c = p.commutator_relation(j, i);
      if (c.size() != h) {
        rep.fail("relation [" + p.names[j] + "," + p.names[i] + "] has wrong length");
        continue;
      }
      for (std::size_t k = 0; k < h; ++k)
        if (c[k] != 0 && p.weight[k] < p.weight[i] + p.weight[j])
          rep.fail("relation [" + p.names[j] + "," + p.names[i] + "] involves " + p.names[k] +
                   " below weight " + std::to_string(p.weight[i] + p.weight[j]));
    }
  std::unique_ptr<Group> G;
  try {
    G = std::make_unique<Group>(p);
  } catch (const std::invalid_argument& e) {
    rep.fail(e.what());
    return rep;
  }
  const int c = G->nilpotency_class();
  for (int w = 1; w <= c; ++w)
    if (G->layer(w).empty()) rep.fail("layer " + std::to_string(w) + " is empty");
  if (!rep.ok) return rep;

  // Relations reproduce under collection, and the law is associative on signed generator triples.
  for (std::size_t j = 0; j < h; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (G->commutator(G->generator(j), G->generator(i)) != p.commutator_relation(j, i))
        rep.fail("collection does not reproduce [" + p.names[j] + "," + p.names[i] + "]");
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      for (std::size_t k = 0; k < h; ++k)
        for (int s = 0; s < 8; ++s) {
          Element a = G->generator(i, (s & 1) ? -1 : 1);
          Element b = G->generator(j, (s & 2) ? -1 : 1);
          Element d = G->generator(k, (s & 4) ? -1 : 1);
          if (G->multiply(G->multiply(a, b), d) != G->multiply(a, G->multiply(b, d))) {
            rep.fail("inconsistent: associativity fails on " + p.names[i] + "," + p.names[j] + "," + p.names[k]);
            return rep;
          }
        }

  // Each deeper layer is spanned by commutators of weight-1 generators with the previous layer.
  for (int w = 2; w <= c; ++w) {
    std::vector<IntVec> gens;
    for (std::size_t a : G->layer(1))
      for (std::size_t b : G->layer(w - 1))
        gens.push_back(G->layer_coords(G->commutator(G->generator(a), G->generator(b)), w));
    Lattice L = Lattice::span(G->layer_rank(w), gens);
    if (!(L == Lattice::full(G->layer_rank(w))))
      rep.fail("layer " + std::to_string(w) + " is not generated by commutators (index " +
               (L.rank() == G->layer_rank(w) ? isolator_index(L).get_str() : std::string("infinite")) + ")");
  }
  return rep;
}

VerifyReport verify_hom(const GroupHom& f, bool require_automorphism) {
  VerifyReport rep;
  const Group& D = *f.domain;
  const Group& C = *f.codomain;
  if (f.images.size() != D.hirsch()) {
    rep.fail("expected " + std::to_string(D.hirsch()) + " images");
    return rep;
  }
  for (std::size_t i = 0; i < D.hirsch(); ++i) {
    if (f.images[i].size() != C.hirsch()) {
      rep.fail("image of " + D.presentation().names[i] + " has wrong length");
      return rep;
    }
    if (C.depth(f.images[i]) < D.weight(i))
      rep.fail("image of " + D.presentation().names[i] + " leaves the weight-" + std::to_string(D.weight(i)) +
               " term of the lower central series");
  }
  for (std::size_t j = 0; j < D.hirsch(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (C.commutator(f.images[j], f.images[i]) != f.apply(D.presentation().commutator_relation(j, i)))
        rep.fail("relation [" + D.presentation().names[j] + "," + D.presentation().names[i] + "] is not preserved");
  if (require_automorphism) {
    if (D.presentation().weight != C.presentation().weight) {
      rep.fail("domain and codomain presentations differ");
      return rep;
    }
    for (int w = 1; w <= D.nilpotency_class(); ++w) {
      Int det = determinant(f.layer_matrix(w));
      if (abs(det) != 1) rep.fail("layer " + std::to_string(w) + " matrix has determinant " + det.get_str());
    }
  }
  return rep;
}

std::vector<LayerInfo> lower_central_series(const Group& G) {
  std::vector<LayerInfo> out;
  std::vector<Element> prev;
  for (int w = 1; w <= G.nilpotency_class(); ++w) {
    LayerInfo L;
    L.weight = w;
    L.indices = G.layer(w);
    L.rank = L.indices.size();
    if (w == 1) {
      for (std::size_t i : L.indices) L.spanning_commutators.push_back(G.generator(i));
    } else {
      std::set<Element> seen;
      for (std::size_t a : G.layer(1))
        for (const auto& b : prev) {
          Element c = G.commutator(G.generator(a), b);
          if (!G.is_identity(c) && seen.insert(c).second) L.spanning_commutators.push_back(c);
        }
    }
    prev = L.spanning_commutators;
    out.push_back(std::move(L));
  }
  return out;
}

std::optional<Element> root(const Group& G, const Element& g, const Int& m) {
  if (m < 1) throw std::invalid_argument("root degree must be positive");
  if (m == 1) return g;
  Element y = G.identity();
  for (int w = 1; w <= G.nilpotency_class(); ++w) {
    // y^-m g lies in the weight-w term; its layer coordinates are m times those of the correction.
    Element d = G.multiply(G.inverse(G.power(y, m)), g);
    IntVec coords = G.layer_coords(d, w);
    for (auto& v : coords) {
      if (!divides(m, v)) return std::nullopt;
      v /= m;
    }
    y = G.multiply(y, G.from_layer(w, coords));
  }
  if (G.power(y, m) != g) return std::nullopt;
  return y;
}

}  // namespace tcsep
