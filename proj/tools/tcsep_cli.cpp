// Command-line front end: group checks, twisted conjugacy decisions, congruence depths,
// growth measurements and the worked examples.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tcsep/builtin.hpp"
#include "tcsep/extension.hpp"
#include "tcsep/growth.hpp"
#include "tcsep/io.hpp"
#include "tcsep/twisted.hpp"

using namespace tcsep;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitBudget = 2;

const char* kCsvHelp =
    "CSV columns written by `growth`:\n"
    "  automorphism      automorphism id, or TConj for the maximum over the family\n"
    "  n                 ball radius\n"
    "  depth             largest congruence depth over non-conjugate pairs (0: none separated)\n"
    "  modulus, kernel   the separating quotient N/N^m (verbal) or N/<a_i^m> (basis-power)\n"
    "  x, y              a witness pair realizing the depth\n"
    "  ball_size         elements of the ball that were examined\n"
    "  exhaustive        1 if every ball element was used, 0 if sampled\n"
    "  budget_exhausted  1 if some non-conjugate pair stayed unseparated within the order budget\n"
    "  verified          1 if the witness pair reproduces the depth in a fresh scan\n"
    "  automorphism_norm max word length of generator images (empty above the largest radius)\n";

// A file path, inline JSON, or a bare word taken as a JSON string.
Json load(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return read_json_file(arg);
  try {
    return Json::parse(arg);
  } catch (const Json::parse_error&) {
    return Json(arg);
  }
}

GroupHom load_hom(const GroupPtr& G, const std::string& arg) {
  if (arg == "id") return identity_hom(G);
  GroupHom f = hom_from_json(G, G, load(arg));
  VerifyReport v = verify_hom(f, true);
  if (!v.ok) throw std::invalid_argument("not an automorphism: " + v.violations.front());
  return f;
}

ExtPtr load_extension(const std::string& arg) {
  if (arg == "dihedral") return infinite_dihedral();
  if (arg == "H3xC2") return heisenberg_inversion_extension();
  return extension_from_json(load(arg));
}

ExtAutomorphism load_ext_auto(const ExtPtr& E, const std::string& arg) {
  if (arg == "id") return ExtAutomorphism::identity(E);
  return ext_automorphism_from_json(E, load(arg));
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<unsigned long> parse_list(const std::string& s) {
  std::vector<unsigned long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted conjugacy separability toolkit for finitely generated nilpotent groups"};
  app.footer(std::string("\nGroups: a presentation file or one of H3, dim5, Z<k>. Automorphisms: a file, inline "
                         "JSON {generator: element}, or id.\nExit codes: 0 success, 1 validation error, 2 budget "
                         "exhausted.\n\n") +
             kCsvHelp);
  app.require_subcommand(1);

  std::string group_arg, phi_arg, x_arg, y_arg, config_arg, ext_arg;
  std::string order_budget = "1000";
  int rc = 0;

  auto* group_cmd = app.add_subcommand("group", "Presentation checks");
  group_cmd->require_subcommand(1);
  auto* verify_cmd = group_cmd->add_subcommand("verify", "Check a presentation file for consistency");
  verify_cmd->add_option("file", group_arg, "presentation JSON")->required();
  verify_cmd->callback([&] {
    Json j = load(group_arg);
    Json out;
    if (j.is_string()) {
      GroupPtr G = group_from_json(j);
      out = {{"ok", true}, {"violations", Json::array()}, {"hirsch", G->hirsch()}, {"class", G->nilpotency_class()}};
    } else {
      VerifyReport v = verify_presentation(presentation_from_json(j));
      out = {{"ok", v.ok}, {"violations", v.violations}};
      if (v.ok) {
        Group G(presentation_from_json(j));
        out["hirsch"] = G.hirsch();
        out["class"] = G.nilpotency_class();
      }
      if (!v.ok) rc = kExitInvalid;
    }
    emit(out);
  });

  auto* twisted_cmd = app.add_subcommand("twisted", "Twisted conjugacy in a nilpotent group");
  twisted_cmd->require_subcommand(1);
  auto* chain_cmd = twisted_cmd->add_subcommand("chain", "The twisted centralizer chain of phi");
  chain_cmd->add_option("group", group_arg)->required();
  chain_cmd->add_option("phi", phi_arg)->required();
  chain_cmd->callback([&] {
    GroupPtr G = group_from_json(load(group_arg));
    emit(chain_to_json(twisted_chain(load_hom(G, phi_arg))));
  });
  auto* decide_cmd = twisted_cmd->add_subcommand("decide", "Decide whether y = z x phi(z)^-1 for some z");
  decide_cmd->add_option("group", group_arg)->required();
  decide_cmd->add_option("phi", phi_arg)->required();
  decide_cmd->add_option("x", x_arg)->required();
  decide_cmd->add_option("y", y_arg)->required();
  decide_cmd->callback([&] {
    GroupPtr G = group_from_json(load(group_arg));
    GroupHom phi = load_hom(G, phi_arg);
    Element x = element_from_json(*G, load(x_arg)), y = element_from_json(*G, load(y_arg));
    TwistedDecision d = is_twisted_conjugate(phi, x, y);
    Json out = {{"conjugate", d.conjugate}, {"x", G->format(x)}, {"y", G->format(y)}};
    if (d.witness) out["witness"] = witness_to_json(phi, x, y, *d.witness);
    emit(out);
  });

  auto* depth_cmd = app.add_subcommand("depth", "Smallest congruence quotient separating y from the class of x");
  depth_cmd->add_option("group", group_arg)->required();
  depth_cmd->add_option("phi", phi_arg)->required();
  depth_cmd->add_option("x", x_arg)->required();
  depth_cmd->add_option("y", y_arg)->required();
  depth_cmd->add_option("--order-budget", order_budget, "largest quotient order to try")->capture_default_str();
  depth_cmd->callback([&] {
    GroupPtr G = group_from_json(load(group_arg));
    GroupHom phi = load_hom(G, phi_arg);
    Element x = element_from_json(*G, load(x_arg)), y = element_from_json(*G, load(y_arg));
    DepthResult d = congruence_depth(phi, x, y, Int(order_budget));
    emit(depth_to_json(d));
    if (!d.separated) rc = kExitBudget;
  });

  std::string csv_out, plot_out;
  auto* growth_cmd = app.add_subcommand("growth", "Measure Conj rows from an experiment config");
  growth_cmd->add_option("config", config_arg, "experiment JSON")->required();
  growth_cmd->add_option("--csv", csv_out, "write CSV here instead of stdout");
  growth_cmd->add_option("--plot", plot_out, "write a matplotlib script here");
  growth_cmd->callback([&] {
    ExperimentConfig cfg = config_from_json(load(config_arg));
    if (!csv_out.empty()) cfg.csv_path = csv_out;
    if (!plot_out.empty()) cfg.plot_path = plot_out;
    auto rows = measure_conj_growth(cfg);
    std::string csv = rows_to_csv(rows, *cfg.group);
    if (cfg.csv_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream(cfg.csv_path) << csv;
    }
    if (!cfg.plot_path.empty())
      std::ofstream(cfg.plot_path) << plot_script(cfg.csv_path.empty() ? "growth.csv" : cfg.csv_path);
    for (const auto& r : rows)
      if (r.budget_exhausted) rc = kExitBudget;
  });

  auto* examples_cmd = app.add_subcommand("examples", "Worked Heisenberg and five-dimensional scenarios");
  examples_cmd->require_subcommand(1);
  std::vector<long> matrix{1, 0, 0, 1};
  long e = 0, f = 0;
  std::size_t samples = 50, radius = 0;
  std::uint64_t seed = kDefaultSeed;
  auto* heis_cmd = examples_cmd->add_subcommand("heisenberg", "Classify an automorphism of H3");
  heis_cmd->add_option("--phi", matrix, "matrix entries a b c d")->expected(4)->capture_default_str();
  heis_cmd->add_option("-e", e, "z-exponent of the image of x")->capture_default_str();
  heis_cmd->add_option("-f", f, "z-exponent of the image of y")->capture_default_str();
  heis_cmd->add_option("--samples", samples)->capture_default_str();
  heis_cmd->add_option("--radius", radius, "also measure Conj rows up to this radius")->capture_default_str();
  heis_cmd->add_option("--order-budget", order_budget)->capture_default_str();
  heis_cmd->add_option("--seed", seed)->capture_default_str();
  heis_cmd->callback([&] {
    GroupPtr H = heisenberg();
    GroupHom phi = heisenberg_automorphism(H, IntMatrix::from_longs({{matrix[0], matrix[1]}, {matrix[2], matrix[3]}}),
                                           e, f);
    Json out = heisenberg_report_to_json(heisenberg_case(phi, samples, seed));
    if (radius > 0) {
      ExperimentConfig cfg;
      cfg.group = H;
      cfg.automorphisms = {{"phi", phi}};
      for (std::size_t n = 1; n <= radius; ++n) cfg.radii.push_back(n);
      cfg.order_budget = Int(order_budget);
      auto rows = measure_conj_growth(cfg);
      Json rj = Json::array();
      for (const auto& r : rows) {
        rj.push_back(growth_row_to_json(r, *H));
        if (r.budget_exhausted) rc = kExitBudget;
      }
      out["rows"] = rj;
      std::vector<GrowthRow> positive;
      for (const auto& r : rows)
        if (r.depth > 0) positive.push_back(r);
      if (positive.size() >= 3) out["fit"] = fit_to_json(fit_rows(positive));
    }
    emit(out);
  });
  std::size_t norm_max = 40;
  auto* dim5_cmd = examples_cmd->add_subcommand("dim5", "The five-dimensional class-2 scenario");
  dim5_cmd->add_option("--samples", samples)->capture_default_str();
  dim5_cmd->add_option("--norm-max", norm_max, "largest |x| in the image-norm trend (step 4)")->capture_default_str();
  dim5_cmd->add_option("--radius", radius, "growth scan radius (0: skip)")->capture_default_str();
  dim5_cmd->add_option("--order-budget", order_budget)->capture_default_str();
  dim5_cmd->add_option("--seed", seed)->capture_default_str();
  dim5_cmd->callback([&] {
    Dim5Options o;
    o.samples = samples;
    o.norm_radii.clear();
    for (std::size_t n = 4; n <= norm_max; n += 4) o.norm_radii.push_back(n);
    o.growth_radii.clear();
    for (std::size_t n = 1; n <= radius; ++n) o.growth_radii.push_back(n);
    o.order_budget = Int(order_budget);
    o.seed = seed;
    Dim5Report r = dim5_scenario(o);
    emit(dim5_report_to_json(r, *dim5_group()));
    for (const auto& g : r.growth)
      if (g.budget_exhausted) rc = kExitBudget;
  });

  auto* witness_cmd = app.add_subcommand("witness", "Lower-bound witness families");
  witness_cmd->require_subcommand(1);
  std::string primes = "2,3,5";
  auto* lb_cmd = witness_cmd->add_subcommand("lower-bound", "Pairs x^p z^i whose depth is p^3");
  lb_cmd->add_option("--primes", primes, "comma-separated primes")->capture_default_str();
  lb_cmd->add_option("--order-budget", order_budget)->capture_default_str();
  lb_cmd->add_option("--extension", ext_arg, "finite extension of H3 (file, or H3xC2)");
  lb_cmd->callback([&] {
    ExtPtr E = ext_arg.empty() ? nullptr : load_extension(ext_arg);
    auto ws = lower_bound_witnesses(parse_list(primes), Int(order_budget), E);
    Json out = Json::array();
    GroupPtr N = E ? E->kernel_ptr() : heisenberg();
    for (const auto& w : ws) out.push_back(lower_bound_to_json(w, *N));
    emit(out);
  });

  auto* virtual_cmd = app.add_subcommand("virtual", "Twisted conjugacy in a finite extension of a nilpotent group");
  virtual_cmd->require_subcommand(1);
  auto* vdecide_cmd = virtual_cmd->add_subcommand("decide", "Decide twisted conjugacy in the extension");
  auto* vdepth_cmd = virtual_cmd->add_subcommand("depth", "Separate y from the class of x part by part");
  for (auto* c : {vdecide_cmd, vdepth_cmd}) {
    c->add_option("extension", ext_arg, "extension file, dihedral, or H3xC2")->required();
    c->add_option("phi", phi_arg, "automorphism file or id")->required();
    c->add_option("x", x_arg, "{\"kernel\": element, \"rep\": name}")->required();
    c->add_option("y", y_arg)->required();
  }
  vdepth_cmd->add_option("--order-budget", order_budget)->capture_default_str();
  vdecide_cmd->callback([&] {
    ExtPtr E = load_extension(ext_arg);
    ExtAutomorphism phi = load_ext_auto(E, phi_arg);
    ExtElement x = ext_element_from_json(*E, load(x_arg)), y = ext_element_from_json(*E, load(y_arg));
    VirtualDecision d = is_conjugate_virtual(phi, x, y);
    Json out = {{"conjugate", d.conjugate}, {"x", E->format(x)}, {"y", E->format(y)}};
    if (d.witness) out["witness"] = ext_element_to_json(*E, *d.witness);
    if (d.part) out["part"] = *d.part;
    emit(out);
  });
  vdepth_cmd->callback([&] {
    ExtPtr E = load_extension(ext_arg);
    ExtAutomorphism phi = load_ext_auto(E, phi_arg);
    ExtElement x = ext_element_from_json(*E, load(x_arg)), y = ext_element_from_json(*E, load(y_arg));
    emit(union_to_json(*E, farb_depth_union(phi, x, y, Int(order_budget))));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : kExitInvalid;
  } catch (const BudgetExceeded& err) {
    std::cerr << "budget exhausted: " << err.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInvalid;
  }
  return rc;
}
