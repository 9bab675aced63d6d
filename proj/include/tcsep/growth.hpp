#pragma once

// Desk-scale measurement of twisted conjugacy separability growth: maximal congruence depths
// over balls, the Heisenberg and five-dimensional scenarios, lower-bound witness families,
// and log-log exponent fits.

#include <cstdint>
#include <string>

#include "tcsep/extension.hpp"
#include "tcsep/quotients.hpp"

namespace tcsep {

constexpr std::uint64_t kDefaultSeed = 20240917;

struct NamedAutomorphism {
  std::string id;
  GroupHom phi;
};

struct ExperimentConfig {
  GroupPtr group;
  GeneratingSet generators;  // empty: the weight-1 basis elements
  std::vector<NamedAutomorphism> automorphisms;
  std::vector<std::size_t> radii;
  std::size_t ball_cap = 200'000;
  Int order_budget = 1000;
  std::size_t sample = 0;  // 0: every ball element; otherwise a seeded sample of this size
  std::uint64_t seed = kDefaultSeed;
  bool tconj = false;      // also report the maximum over automorphisms with norm <= n
  std::string csv_path, plot_path;

  // Throws std::invalid_argument on nonpositive budgets, unsorted radii or a missing group.
  void validate() const;
};

// All (A, e, f) with entries of A, e and f bounded by entry_bound in absolute value and det A = +-1.
std::vector<NamedAutomorphism> heisenberg_family(const GroupPtr& H, long entry_bound);
// {"group", "generators", "automorphisms": [{"id", "map"}] or {"heisenberg_family": B}, "radii",
//  "ball_cap", "order_budget", "sample", "seed", "tconj", "csv", "plot"}
ExperimentConfig config_from_json(const Json& j);

struct GrowthRow {
  std::size_t n = 0;
  std::string automorphism;  // "TConj" for the maximum over the family
  Int depth = 0;             // 0 when no non-conjugate pair was separated within the budget
  Element x, y;
  Int modulus = 0;
  KernelKind kind = KernelKind::kVerbal;
  std::size_t ball_size = 0;
  bool exhaustive = true;
  bool budget_exhausted = false;  // some non-conjugate pair in the ball stayed unseparated
  bool verified = false;          // the witness pair re-run through congruence_depth gives the same depth
  std::optional<std::size_t> automorphism_norm;
};

// For every radius, the largest congruence depth over non-conjugate pairs of the ball.
std::vector<GrowthRow> measure_conj_growth(const ExperimentConfig& config);
std::string rows_to_csv(const std::vector<GrowthRow>& rows, const Group& G);
// A matplotlib script plotting depth against n on log-log axes from the CSV.
std::string plot_script(const std::string& csv_path);

struct Fit {
  double exponent = 0, intercept = 0, r2 = 0;
  std::vector<double> residuals;
  double curvature = 0;  // quadratic coefficient of the log-log fit
  bool curved = false;
};
// Least squares of log(value) on log(n) over points with n, value > 0; throws
// std::invalid_argument with fewer than 3 such points.
Fit fit_exponent(const std::vector<std::pair<double, double>>& points);
Fit fit_rows(const std::vector<GrowthRow>& rows);

struct HeisenbergCaseReport {
  HeisenbergCase by_eigenspace = HeisenbergCase::kIdentity;
  HeisenbergCase by_rank = HeisenbergCase::kIdentity;
  std::size_t twisted_centralizer_rank = 0;  // Hirsch length of N_2^phi
  Int det = 1;
  bool consistent = false;
  std::size_t sampled = 0;
  std::size_t witness_holds = 0;  // samples X with z^2 in N_{phi_X} (checked when det = -1)
  std::string expected_growth;
};
HeisenbergCaseReport heisenberg_case(const GroupHom& phi, std::size_t samples = 50, std::uint64_t seed = kDefaultSeed);

// Upper bound for the word length of a central element of a class-2 group over the full basis,
// using [a^u, b^v] = [a,b]^{uv} for basis commutators; the word is rebuilt and checked.
std::size_t central_length_upper(const Group& G, const Element& c);

struct Dim5Sample {
  Element x;
  bool n2_matches = false;        // N_2^{phi_x} = <a1, a2, b1, b2>
  bool psi_b1_trivial = false;
  bool psi_b2_is_b1_inverse = false;
  bool image_matches = false;     // level-2 image = span of psi(a1), psi(a2), psi(b1), psi(b2)
  std::size_t image_norm_upper = 0;
};
struct Dim5Report {
  bool automorphism_valid = false;
  std::vector<Dim5Sample> samples;
  std::vector<std::pair<std::size_t, std::size_t>> norm_trend;  // (n, max image norm bound over ||x|| <= n)
  Fit norm_fit;
  std::vector<std::pair<Element, std::size_t>> central_quotients;  // direction and Hirsch length
  std::size_t phi_bound = 0;  // max over the directions
  std::vector<GrowthRow> growth;
  std::optional<Fit> growth_fit;
};
struct Dim5Options {
  std::size_t samples = 50;
  std::vector<std::size_t> norm_radii{4, 8, 12, 16, 20, 24, 28, 32, 36, 40};
  std::vector<std::size_t> growth_radii{1, 2, 3};
  Int order_budget = 1000;
  std::uint64_t seed = kDefaultSeed;
};
Dim5Report dim5_scenario(const Dim5Options& opts = {});

struct LowerBoundWitness {
  unsigned long p = 0;
  std::vector<Element> family;  // x^p z^i for i = 1..[G:N]+1
  std::size_t chosen = 0;       // index i0 with family[0] not conjugate to family[i0] in G
  Element a, b;
  bool pairwise_nonconjugate_in_kernel = false;
  DepthResult depth;            // congruence depth in N
  bool depth_is_p_cubed = false;
  std::size_t coprime_quotients = 0;  // q-power quotients, q != p, within budget
  bool coprime_all_conjugate = false;  // a and b are conjugate in each of them
  Int extension_order = 0;             // order of a separating quotient of G
  std::size_t length_a = 0;            // word length of a
};
// Witnesses for H3 (or an extension of H3 when ext is given). Throws BudgetExceeded if p^3
// exceeds order_budget and std::invalid_argument if p is not prime or the kernel is not H3-shaped.
std::vector<LowerBoundWitness> lower_bound_witnesses(const std::vector<unsigned long>& primes, const Int& order_budget,
                                                     const ExtPtr& ext = nullptr);

Json growth_row_to_json(const GrowthRow& r, const Group& G);
Json fit_to_json(const Fit& f);
Json heisenberg_report_to_json(const HeisenbergCaseReport& r);
Json dim5_report_to_json(const Dim5Report& r, const Group& G);
Json lower_bound_to_json(const LowerBoundWitness& w, const Group& G);

}  // namespace tcsep
