#include "tcsep/growth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "tcsep/twisted.hpp"

namespace tcsep {

namespace {

constexpr double kCurvatureTolerance = 0.05;

Int from_size(std::size_t v) { return Int(static_cast<unsigned long>(v)); }

Element random_exponents(std::mt19937_64& rng, std::size_t h, long bound) {
  Element g;
  for (std::size_t i = 0; i < h; ++i)
    g.emplace_back(static_cast<long>(rng() % static_cast<unsigned long>(2 * bound + 1)) - bound);
  return g;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!group) throw std::invalid_argument("experiment has no group");
  if (automorphisms.empty()) throw std::invalid_argument("experiment has no automorphisms");
  if (radii.empty()) throw std::invalid_argument("experiment has no radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1]) throw std::invalid_argument("radii must be strictly increasing");
  if (ball_cap == 0) throw std::invalid_argument("ball cap must be positive");
  if (order_budget <= 0) throw std::invalid_argument("order budget must be positive");
  for (const auto& a : automorphisms)
    if (a.phi.domain != group || a.phi.codomain != group)
      throw std::invalid_argument("automorphism '" + a.id + "' is not defined on the experiment group");
}

std::vector<NamedAutomorphism> heisenberg_family(const GroupPtr& H, long B) {
  if (B < 0) throw std::invalid_argument("entry bound must be nonnegative");
  std::vector<NamedAutomorphism> out;
  for (long a = -B; a <= B; ++a)
    for (long b = -B; b <= B; ++b)
      for (long c = -B; c <= B; ++c)
        for (long d = -B; d <= B; ++d) {
          long det = a * d - b * c;
          if (det != 1 && det != -1) continue;
          IntMatrix A(2, 2);
          A.at(0, 0) = a;
          A.at(0, 1) = b;
          A.at(1, 0) = c;
          A.at(1, 1) = d;
          for (long e = -B; e <= B; ++e)
            for (long f = -B; f <= B; ++f) {
              std::ostringstream id;
              id << "A=[[" << a << "," << b << "],[" << c << "," << d << "]] e=" << e << " f=" << f;
              out.push_back({id.str(), heisenberg_automorphism(H, A, e, f)});
            }
        }
  return out;
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  c.group = group_from_json(j.at("group"));
  if (j.contains("generators"))
    for (const auto& g : j.at("generators")) c.generators.push_back(element_from_json(*c.group, g));
  if (!j.contains("automorphisms")) {
    c.automorphisms.push_back({"id", identity_hom(c.group)});
  } else if (j.at("automorphisms").is_object()) {
    c.automorphisms = heisenberg_family(c.group, j.at("automorphisms").at("heisenberg_family").get<long>());
  } else {
    for (const auto& a : j.at("automorphisms"))
      c.automorphisms.push_back({a.at("id").get<std::string>(), hom_from_json(c.group, c.group, a.at("map"))});
  }
  const Json& r = j.at("radii");
  if (r.is_object()) {
    for (std::size_t n = 1; n <= r.at("max").get<std::size_t>(); ++n) c.radii.push_back(n);
  } else {
    c.radii = r.get<std::vector<std::size_t>>();
  }
  if (j.contains("ball_cap")) c.ball_cap = j.at("ball_cap").get<std::size_t>();
  if (j.contains("order_budget")) c.order_budget = int_from_json(j.at("order_budget"));
  if (j.contains("sample")) c.sample = j.at("sample").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tconj")) c.tconj = j.at("tconj").get<bool>();
  if (j.contains("csv")) c.csv_path = j.at("csv").get<std::string>();
  if (j.contains("plot")) c.plot_path = j.at("plot").get<std::string>();
  c.validate();
  return c;
}

namespace {

struct SplitEvent {
  std::size_t radius;  // both witnesses lie in the ball of this radius
  Int order, modulus;
  KernelKind kind;
  std::size_t a, b;  // ball indices
};

struct Cell {
  std::vector<std::size_t> members;  // ball indices in BFS order
  bool known_mixed = false;          // contains a non-conjugate pair
};

// Partition refinement of the ball by twisted classes in quotients of increasing order.
std::vector<GrowthRow> measure_one(const ExperimentConfig& cfg, const NamedAutomorphism& na, const Ball& B,
                                   const std::vector<std::size_t>& members, bool exhaustive) {
  const GroupPtr& G = cfg.group;
  const GroupHom& phi = na.phi;
  auto rad = [&](std::size_t i) { return B.radius[i]; };
  auto mixed = [&](const std::vector<std::size_t>& m) {
    for (std::size_t k = 1; k < m.size(); ++k)
      if (!is_twisted_conjugate(phi, B.elements[m[0]], B.elements[m[k]]).conjugate) return true;
    return false;
  };

  std::vector<Cell> cells;
  if (members.size() > 1 && mixed(members)) cells.push_back({members, true});
  std::vector<SplitEvent> events;

  auto admit = [&](const FiniteQuotient& q) {
    return q.kind() != KernelKind::kBasisPower || q.kernel().is_invariant(phi);
  };
  auto visit = [&](const FiniteQuotient& q) {
    InducedAutomorphism f = induced_automorphism(q, phi);
    std::unordered_map<Element, std::size_t, IntVecHash> class_of;
    std::size_t next_class = 0;
    auto class_id = [&](const Element& g) {
      Element c = q.canon(g);
      auto it = class_of.find(c);
      if (it != class_of.end()) return it->second;
      for (const auto& h : twisted_class_by_generators(f, c)) class_of.emplace(h, next_class);
      return next_class++;
    };
    std::vector<Cell> next;
    for (auto& cell : cells) {
      std::map<std::size_t, std::vector<std::size_t>> parts;
      for (std::size_t i : cell.members) parts[class_id(B.elements[i])].push_back(i);
      if (parts.size() == 1) {
        next.push_back(std::move(cell));
        continue;
      }
      std::vector<std::vector<std::size_t>> ps;
      for (auto& [id, m] : parts) ps.push_back(std::move(m));
      std::sort(ps.begin(), ps.end(), [&](const auto& u, const auto& v) { return u[0] < v[0]; });
      events.push_back({std::max(rad(ps[0][0]), rad(ps[1][0])), q.order(), q.modulus(), q.kind(), ps[0][0], ps[1][0]});
      for (auto& m : ps)
        if (m.size() > 1 && mixed(m)) next.push_back({std::move(m), true});
    }
    cells = std::move(next);
    return cells.empty();
  };
  scan_by_order(G, cfg.order_budget, admit, visit);

  // Non-conjugate pairs left together once the budget is spent.
  std::optional<std::size_t> exhausted_at;
  for (const auto& cell : cells) {
    std::vector<std::size_t> reps;  // first member of each true class
    for (std::size_t i : cell.members) {
      bool found = false;
      for (std::size_t r : reps)
        if (is_twisted_conjugate(phi, B.elements[r], B.elements[i]).conjugate) {
          found = true;
          break;
        }
      if (!found) reps.push_back(i);
    }
    if (reps.size() > 1) {
      std::size_t r = std::max(rad(reps[0]), rad(reps[1]));
      exhausted_at = exhausted_at ? std::min(*exhausted_at, r) : r;
    }
  }

  std::vector<GrowthRow> rows;
  std::map<std::pair<std::size_t, std::size_t>, bool> verified;
  for (std::size_t n : cfg.radii) {
    GrowthRow row;
    row.n = n;
    row.automorphism = na.id;
    row.exhaustive = exhaustive;
    row.ball_size = static_cast<std::size_t>(
        std::count_if(members.begin(), members.end(), [&](std::size_t i) { return rad(i) <= n; }));
    row.budget_exhausted = exhausted_at && *exhausted_at <= n;
    const SplitEvent* best = nullptr;
    for (const auto& e : events)
      if (e.radius <= n && (!best || e.order > best->order)) best = &e;
    if (best) {
      row.depth = best->order;
      row.modulus = best->modulus;
      row.kind = best->kind;
      row.x = B.elements[best->a];
      row.y = B.elements[best->b];
      auto key = std::make_pair(best->a, best->b);
      if (!verified.count(key)) {
        DepthResult d = congruence_depth(phi, row.x, row.y, cfg.order_budget);
        verified[key] = d.separated && d.order == best->order && d.modulus == best->modulus && d.kind == best->kind;
      }
      row.verified = verified[key];
    } else {
      row.x = row.y = G->identity();
      row.verified = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<GrowthRow> measure_conj_growth(const ExperimentConfig& cfg) {
  cfg.validate();
  const Group& G = *cfg.group;
  GeneratingSet S = cfg.generators.empty() ? standard_generators(G) : cfg.generators;
  const std::size_t nmax = cfg.radii.back();
  Ball B = ball(G, S, nmax, cfg.ball_cap);

  std::vector<std::size_t> members(B.elements.size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  bool exhaustive = true;
  if (cfg.sample > 0 && cfg.sample < members.size()) {
    std::mt19937_64 rng(cfg.seed);
    std::shuffle(members.begin(), members.end(), rng);
    members.resize(cfg.sample);
    std::sort(members.begin(), members.end());
    exhaustive = false;
  }

  std::vector<GrowthRow> rows;
  std::vector<std::vector<GrowthRow>> per_auto;
  for (const auto& na : cfg.automorphisms) {
    auto r = measure_one(cfg, na, B, members, exhaustive);
    auto norm = automorphism_norm(na.phi, S, nmax);
    for (auto& row : r) row.automorphism_norm = norm;
    rows.insert(rows.end(), r.begin(), r.end());
    per_auto.push_back(std::move(r));
  }
  if (cfg.tconj) {
    for (std::size_t k = 0; k < cfg.radii.size(); ++k) {
      GrowthRow t;
      t.n = cfg.radii[k];
      t.automorphism = "TConj";
      t.exhaustive = exhaustive;
      t.verified = true;
      t.x = t.y = G.identity();
      t.ball_size = per_auto.empty() ? 0 : per_auto[0][k].ball_size;
      for (const auto& r : per_auto) {
        const GrowthRow& row = r[k];
        if (!row.automorphism_norm || *row.automorphism_norm > t.n) continue;
        t.budget_exhausted = t.budget_exhausted || row.budget_exhausted;
        if (row.depth > t.depth) {
          t.depth = row.depth;
          t.x = row.x;
          t.y = row.y;
          t.modulus = row.modulus;
          t.kind = row.kind;
          t.verified = row.verified;
          t.automorphism_norm = row.automorphism_norm;
        }
      }
      rows.push_back(std::move(t));
    }
  }
  return rows;
}

std::string rows_to_csv(const std::vector<GrowthRow>& rows, const Group& G) {
  std::ostringstream os;
  os << "automorphism,n,depth,modulus,kernel,x,y,ball_size,exhaustive,budget_exhausted,verified,automorphism_norm\n";
  for (const auto& r : rows) {
    os << '"' << r.automorphism << "\"," << r.n << ',' << r.depth.get_str() << ',' << r.modulus.get_str() << ','
       << kernel_kind_name(r.kind) << ',' << G.format(r.x) << ',' << G.format(r.y) << ',' << r.ball_size << ','
       << r.exhaustive << ',' << r.budget_exhausted << ',' << r.verified << ','
       << (r.automorphism_norm ? std::to_string(*r.automorphism_norm) : "") << '\n';
  }
  return os.str();
}

std::string plot_script(const std::string& csv_path) {
  std::ostringstream os;
  os << "import csv\n"
        "from collections import defaultdict\n"
        "import matplotlib.pyplot as plt\n\n"
        "series = defaultdict(list)\n"
        "with open(" << Json(csv_path).dump() << ") as f:\n"
        "    for row in csv.DictReader(f):\n"
        "        if int(row['depth']) > 0:\n"
        "            series[row['automorphism']].append((int(row['n']), int(row['depth'])))\n"
        "for name, pts in series.items():\n"
        "    plt.loglog([p[0] for p in pts], [p[1] for p in pts], marker='o', label=name)\n"
        "plt.xlabel('n')\n"
        "plt.ylabel('max congruence depth')\n"
        "plt.legend(fontsize='small')\n"
        "plt.savefig(" << Json(csv_path + ".png").dump() << ", dpi=150)\n";
  return os.str();
}

Fit fit_exponent(const std::vector<std::pair<double, double>>& points) {
  std::vector<double> t, y;
  for (const auto& [n, v] : points)
    if (n > 0 && v > 0) {
      t.push_back(std::log(n));
      y.push_back(std::log(v));
    }
  const std::size_t k = t.size();
  if (k < 3) throw std::invalid_argument("an exponent fit needs at least 3 positive points");
  double tm = 0, ym = 0;
  for (std::size_t i = 0; i < k; ++i) {
    tm += t[i];
    ym += y[i];
  }
  tm /= static_cast<double>(k);
  ym /= static_cast<double>(k);
  double stt = 0, sty = 0, syy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    sty += (t[i] - tm) * (y[i] - ym);
    syy += (y[i] - ym) * (y[i] - ym);
  }
  if (stt == 0) throw std::invalid_argument("an exponent fit needs distinct n values");
  Fit f;
  f.exponent = sty / stt;
  f.intercept = ym - f.exponent * tm;
  double ss_res = 0;
  for (std::size_t i = 0; i < k; ++i) {
    double r = y[i] - (f.intercept + f.exponent * t[i]);
    f.residuals.push_back(r);
    ss_res += r * r;
  }
  f.r2 = syy == 0 ? 1.0 : 1.0 - ss_res / syy;

  // Quadratic fit y = c0 + c1 u + c2 u^2 in centred u = t - tm, by Cramer's rule.
  double s[5] = {0, 0, 0, 0, 0}, b[3] = {0, 0, 0};
  double tmin = t[0], tmax = t[0];
  for (std::size_t i = 0; i < k; ++i) {
    double u = t[i] - tm, p = 1;
    for (int e = 0; e < 5; ++e, p *= u) s[e] += p;
    b[0] += y[i];
    b[1] += y[i] * u;
    b[2] += y[i] * u * u;
    tmin = std::min(tmin, t[i]);
    tmax = std::max(tmax, t[i]);
  }
  auto det3 = [](double a00, double a01, double a02, double a10, double a11, double a12, double a20, double a21,
                 double a22) {
    return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) + a02 * (a10 * a21 - a11 * a20);
  };
  double D = det3(s[0], s[1], s[2], s[1], s[2], s[3], s[2], s[3], s[4]);
  if (std::abs(D) > 1e-12) {
    f.curvature = det3(s[0], s[1], b[0], s[1], s[2], b[1], s[2], s[3], b[2]) / D;
    double span = tmax - tmin;
    f.curved = std::abs(f.curvature) * span * span / 4 > kCurvatureTolerance;
  }
  return f;
}

Fit fit_rows(const std::vector<GrowthRow>& rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) pts.emplace_back(static_cast<double>(r.n), r.depth.get_d());
  return fit_exponent(pts);
}

HeisenbergCaseReport heisenberg_case(const GroupHom& phi, std::size_t samples, std::uint64_t seed) {
  const GroupPtr& H = phi.domain;
  if (!H || phi.codomain != H || H->hirsch() != 3 || H->nilpotency_class() != 2 || H->layer_rank(1) != 2)
    throw std::invalid_argument("not an endomorphism of a Heisenberg-shaped group");
  VerifyReport v = verify_hom(phi, true);
  if (!v.ok) throw std::invalid_argument("not an automorphism: " + v.violations.front());

  HeisenbergCaseReport r;
  r.by_eigenspace = classify_heisenberg(phi.layer_matrix(1));
  r.twisted_centralizer_rank = twisted_chain(phi).level(2).hirsch();
  r.by_rank = static_cast<HeisenbergCase>(r.twisted_centralizer_rank);
  r.consistent = r.by_rank == r.by_eigenspace;
  r.det = phi.layer_matrix(2).at(0, 0);
  if (r.det == -1) {
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      Element X = random_exponents(rng, 3, 6);
      ++r.sampled;
      if (twisted_chain(twisted_by_inner(phi, X)).twisted_subgroup().contains({Int(2)})) ++r.witness_holds;
    }
  }
  switch (r.by_rank) {
    case HeisenbergCase::kNoFixedLine:
      r.expected_growth = r.det == 1 ? "(log n)^3" : "bounded";
      break;
    case HeisenbergCase::kFixedLine:
      r.expected_growth = r.det == -1 ? "log n" : "not covered: fixed line with det 1";
      break;
    case HeisenbergCase::kIdentity:
      r.expected_growth = "n^3";
      break;
  }
  return r;
}

std::size_t central_length_upper(const Group& G, const Element& c) {
  if (G.nilpotency_class() > 2) throw std::invalid_argument("central length bound needs class at most 2");
  if (G.depth(c) < 2) throw std::invalid_argument(G.format(c) + " is not in the commutator subgroup");
  const auto& top = G.layer(2);
  const auto& bottom = G.layer(1);
  std::size_t total = 0;
  Element built = G.identity();
  for (std::size_t k : top) {
    Int t = c[k];
    if (t == 0) continue;
    const Element bk = G.generator(k);
    // A basis commutator [a_i, a_j] equal to b_k or its inverse.
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t i : bottom) {
      for (std::size_t j : bottom) {
        if (i == j) continue;
        if (G.commutator(G.generator(i), G.generator(j)) == bk) {
          pair = std::make_pair(i, j);
          break;
        }
      }
      if (pair) break;
    }
    Int mag = abs(t);
    std::size_t best = mag.get_ui();
    Element word = G.power(bk, t);
    if (pair) {
      for (unsigned long u = 1; Int(u) * Int(u) <= mag; ++u) {
        Int v = mag / u, r = mag - v * u;
        std::size_t len = 2 * u + 2 * v.get_ui() + r.get_ui();
        if (len >= best) continue;
        best = len;
        // [a_i^u, a_j^v] = b_k^{uv}; swapping the entries inverts it.
        std::size_t i = pair->first, j = pair->second;
        if (t < 0) std::swap(i, j);
        Element comm = G.commutator(G.generator(i, Int(u)), G.generator(j, v));
        word = G.multiply(comm, G.power(bk, t < 0 ? Int(-r) : r));
      }
    }
    if (word != G.power(bk, t)) throw std::logic_error("central word does not evaluate to the target");
    built = G.multiply(built, word);
    total += best;
  }
  if (built != c) throw std::logic_error("central word does not evaluate to the target");
  return total;
}

namespace {

// The smaller of the bounds from the echelon basis and from the psi images of the level generators.
std::size_t image_norm_upper(const Group& G, const ChainLevel& lvl) {
  std::size_t from_basis = 0, from_images = 0;
  for (const auto& v : lvl.image.basis()) from_basis = std::max(from_basis, central_length_upper(G, G.from_layer(2, v)));
  for (std::size_t j = 0; j < lvl.psi_matrix.cols(); ++j) {
    IntVec v = lvl.psi_matrix.column(j);
    if (!is_zero(v)) from_images = std::max(from_images, central_length_upper(G, G.from_layer(2, v)));
  }
  return std::min(from_basis, from_images);
}

}  // namespace

Dim5Report dim5_scenario(const Dim5Options& opts) {
  GroupPtr N = dim5_group();
  const Group& G = *N;
  GroupHom phi = dim5_automorphism(N);
  Dim5Report rep;
  rep.automorphism_valid = verify_hom(phi, true).ok;
  if (!rep.automorphism_valid) throw std::logic_error("the five-dimensional automorphism failed verification");

  const std::size_t a1 = G.presentation().index_of("a1"), a2 = G.presentation().index_of("a2"),
                    b1 = G.presentation().index_of("b1"),
                    b2 = G.presentation().index_of("b2");
  Subgroup target = Subgroup::closure(N, {G.generator(a1), G.generator(a2), G.generator(b1), G.generator(b2)});
  IntVec b1_inverse = G.layer_coords(G.generator(b1, -1), 2);

  auto study = [&](const Element& x) {
    Dim5Sample s;
    s.x = x;
    GroupHom phx = twisted_by_inner(phi, x);
    TwistedChain chain = twisted_chain(phx);
    s.n2_matches = chain.level(2) == target;
    s.psi_b1_trivial = is_zero(psi(phx, 2, G.generator(b1)));
    s.psi_b2_is_b1_inverse = psi(phx, 2, G.generator(b2)) == b1_inverse;
    if (s.n2_matches) {
      std::vector<IntVec> cols;
      for (std::size_t g : {a1, a2, b1, b2}) cols.push_back(psi(phx, 2, G.generator(g)));
      s.image_matches = chain.levels[1].image == Lattice::span(G.layer_rank(2), cols);
    }
    s.image_norm_upper = image_norm_upper(G, chain.levels[1]);
    return s;
  };

  std::mt19937_64 rng(opts.seed);
  for (std::size_t k = 0; k < opts.samples; ++k) rep.samples.push_back(study(random_exponents(rng, G.hirsch(), 12)));

  // Elements of length <= n: basis powers and random words over the full basis.
  GeneratingSet S;
  for (std::size_t i = 0; i < G.hirsch(); ++i) S.push_back(G.generator(i));
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n : opts.norm_radii) {
    std::vector<Element> xs;
    for (std::size_t i = 0; i < G.hirsch(); ++i)
      for (long sgn : {1L, -1L}) xs.push_back(G.generator(i, Int(sgn * static_cast<long>(n))));
    for (std::size_t k = 0; k < opts.samples; ++k) {
      Element w = G.identity();
      for (std::size_t l = 0; l < n; ++l) {
        std::size_t i = rng() % G.hirsch();
        w = G.multiply(w, G.generator(i, (rng() & 1) ? 1 : -1));
      }
      xs.push_back(w);
    }
    std::size_t best = 0;
    for (const auto& x : xs) best = std::max(best, image_norm_upper(G, twisted_chain(twisted_by_inner(phi, x)).levels[1]));
    rep.norm_trend.emplace_back(n, best);
    pts.emplace_back(static_cast<double>(n), static_cast<double>(best));
  }
  if (pts.size() >= 3) rep.norm_fit = fit_exponent(pts);

  for (const auto& dir : {G.generator(b1), G.generator(b2), G.multiply(G.generator(b1), G.generator(b2))}) {
    CentralQuotient q = one_dim_central_quotient(N, dir);
    rep.central_quotients.emplace_back(dir, q.hirsch);
    rep.phi_bound = std::max(rep.phi_bound, q.hirsch);
  }

  if (!opts.growth_radii.empty()) {
    ExperimentConfig cfg;
    cfg.group = N;
    cfg.generators = S;
    cfg.automorphisms = {{"dim5", phi}};
    cfg.radii = opts.growth_radii;
    cfg.order_budget = opts.order_budget;
    cfg.seed = opts.seed;
    rep.growth = measure_conj_growth(cfg);
    std::size_t positive = 0;
    for (const auto& r : rep.growth) positive += r.depth > 0;
    if (positive >= 3) rep.growth_fit = fit_rows(rep.growth);
  }
  return rep;
}

std::vector<LowerBoundWitness> lower_bound_witnesses(const std::vector<unsigned long>& primes, const Int& order_budget,
                                                     const ExtPtr& ext_in) {
  ExtPtr ext = ext_in;
  if (!ext) {
    GroupPtr H = heisenberg();
    ext = std::make_shared<const FiniteExtension>(H, std::vector<std::string>{"1"},
                                                  std::vector<GroupHom>{identity_hom(H)},
                                                  std::vector<std::vector<CocycleEntry>>{{{0, H->identity()}}});
  }
  const GroupPtr& Np = ext->kernel_ptr();
  const Group& N = *Np;
  if (N.hirsch() != 3 || N.nilpotency_class() != 2 || N.layer_rank(1) != 2)
    throw std::invalid_argument("lower-bound witnesses need a Heisenberg kernel");
  const Element x = N.generator(0), y = N.generator(1), z = N.generator(2);
  if (N.commutator(x, y) != z) throw std::invalid_argument("kernel basis does not satisfy [x,y] = z");
  const std::size_t r = ext->index();
  ExtAutomorphism id = ExtAutomorphism::identity(ext);
  GroupHom id_n = identity_hom(Np);

  std::vector<LowerBoundWitness> out;
  for (unsigned long p : primes) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (p <= r) throw std::invalid_argument("primes must exceed the index " + std::to_string(r));
    Int cube = ipow(Int(p), 3);
    if (cube > order_budget)
      throw BudgetExceeded("p^3 = " + cube.get_str() + " exceeds the order budget " + order_budget.get_str());
    LowerBoundWitness w;
    w.p = p;
    Element xp = N.power(x, Int(p));
    for (std::size_t i = 1; i <= r + 1; ++i) w.family.push_back(N.multiply(xp, N.power(z, from_size(i))));
    w.pairwise_nonconjugate_in_kernel = true;
    for (std::size_t i = 0; i < w.family.size(); ++i)
      for (std::size_t j = i + 1; j < w.family.size(); ++j)
        if (is_twisted_conjugate(id_n, w.family[i], w.family[j]).conjugate) w.pairwise_nonconjugate_in_kernel = false;
    // i0 by exhaustive testing against the first member.
    for (std::size_t i = 1; i < w.family.size() && w.chosen == 0; ++i)
      if (!is_conjugate_virtual(id, ext->from_kernel(w.family[0]), ext->from_kernel(w.family[i])).conjugate)
        w.chosen = i;
    if (w.chosen == 0) throw std::logic_error("every family member is conjugate to the first in the extension");
    w.a = w.family[0];
    w.b = w.family[w.chosen];
    w.depth = congruence_depth(id_n, w.a, w.b, order_budget);
    w.depth_is_p_cubed = w.depth.separated && w.depth.exhaustive_below && w.depth.order == cube;

    w.coprime_all_conjugate = true;
    auto coprime = [&](const FiniteQuotient& q) {
      Int m = q.modulus();
      if (divides(Int(p), m)) return false;
      // a prime power modulus
      for (unsigned long d = 2; Int(d) <= m; ++d)
        if (divides(Int(d), m)) {
          while (divides(Int(d), m)) m /= d;
          return m == 1;
        }
      return false;
    };
    scan_by_order(Np, order_budget, coprime, [&](const FiniteQuotient& q) {
      ++w.coprime_quotients;
      InducedAutomorphism f = induced_automorphism(q, id_n);
      if (!twisted_class(f, w.a).count(q.canon(w.b))) w.coprime_all_conjugate = false;
      return false;
    });

    UnionSeparation u = farb_depth_union(id, ext->from_kernel(w.a), ext->from_kernel(w.b), order_budget);
    if (!u.verified) throw std::logic_error("extension quotient failed verification");
    w.extension_order = u.order;
    auto len = word_length(N, standard_generators(N), w.a, p + 4);
    w.length_a = len ? *len : 0;
    out.push_back(std::move(w));
  }
  return out;
}

Json growth_row_to_json(const GrowthRow& r, const Group& G) {
  Json j;
  j["automorphism"] = r.automorphism;
  j["n"] = r.n;
  j["depth"] = int_to_json(r.depth);
  j["modulus"] = int_to_json(r.modulus);
  j["kernel"] = kernel_kind_name(r.kind);
  j["x"] = G.format(r.x);
  j["y"] = G.format(r.y);
  j["ball_size"] = r.ball_size;
  j["exhaustive"] = r.exhaustive;
  j["budget_exhausted"] = r.budget_exhausted;
  j["verified"] = r.verified;
  if (r.automorphism_norm) j["automorphism_norm"] = *r.automorphism_norm;
  return j;
}

Json fit_to_json(const Fit& f) {
  return Json{{"exponent", f.exponent}, {"intercept", f.intercept}, {"r2", f.r2},
              {"residuals", f.residuals}, {"curvature", f.curvature}, {"curved", f.curved}};
}

Json heisenberg_report_to_json(const HeisenbergCaseReport& r) {
  Json j;
  j["case_by_eigenspace"] = static_cast<int>(r.by_eigenspace);
  j["case_by_rank"] = static_cast<int>(r.by_rank);
  j["twisted_centralizer_rank"] = r.twisted_centralizer_rank;
  j["det"] = int_to_json(r.det);
  j["consistent"] = r.consistent;
  j["witness_samples"] = r.sampled;
  j["witness_holds"] = r.witness_holds;
  j["expected_growth"] = r.expected_growth;
  return j;
}

Json dim5_report_to_json(const Dim5Report& r, const Group& G) {
  Json j;
  j["automorphism_valid"] = r.automorphism_valid;
  std::size_t n2 = 0, b1 = 0, b2 = 0, img = 0;
  for (const auto& s : r.samples) {
    n2 += s.n2_matches;
    b1 += s.psi_b1_trivial;
    b2 += s.psi_b2_is_b1_inverse;
    img += s.image_matches;
  }
  j["samples"] = r.samples.size();
  j["n2_matches"] = n2;
  j["psi_b1_trivial"] = b1;
  j["psi_b2_is_b1_inverse"] = b2;
  j["image_matches"] = img;
  Json trend = Json::array();
  for (const auto& [n, v] : r.norm_trend) trend.push_back({{"n", n}, {"image_norm_upper", v}});
  j["norm_trend"] = trend;
  j["norm_fit"] = fit_to_json(r.norm_fit);
  Json cq = Json::array();
  for (const auto& [dir, h] : r.central_quotients) cq.push_back({{"direction", G.format(dir)}, {"hirsch", h}});
  j["central_quotients"] = cq;
  j["phi_bound"] = r.phi_bound;
  Json rows = Json::array();
  for (const auto& row : r.growth) rows.push_back(growth_row_to_json(row, G));
  j["growth"] = rows;
  if (r.growth_fit) j["growth_fit"] = fit_to_json(*r.growth_fit);
  return j;
}

Json lower_bound_to_json(const LowerBoundWitness& w, const Group& G) {
  Json j;
  j["p"] = w.p;
  Json fam = Json::array();
  for (const auto& e : w.family) fam.push_back(G.format(e));
  j["family"] = fam;
  j["i0"] = w.chosen + 1;
  j["a"] = G.format(w.a);
  j["b"] = G.format(w.b);
  j["pairwise_nonconjugate_in_kernel"] = w.pairwise_nonconjugate_in_kernel;
  j["depth"] = depth_to_json(w.depth);
  j["depth_is_p_cubed"] = w.depth_is_p_cubed;
  j["coprime_quotients"] = w.coprime_quotients;
  j["coprime_all_conjugate"] = w.coprime_all_conjugate;
  j["extension_order"] = int_to_json(w.extension_order);
  j["length_a"] = w.length_a;
  return j;
}

}  // namespace tcsep
