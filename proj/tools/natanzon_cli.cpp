// Command-line front end: list, show, profile, verify, spectrum, psi.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "natanzon/catalog.hpp"
#include "natanzon/errors.hpp"
#include "natanzon/kernels.hpp"
#include "natanzon/potentials.hpp"
#include "natanzon/reduction.hpp"
#include "natanzon/report.hpp"
#include "natanzon/spectra.hpp"

using namespace natanzon;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kUsage = 2, kUnknownClass = 3, kDomain = 4, kNumerical = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string family = "confluent-heun";
  std::string m1 = "0";
  std::string m2 = "0";
  std::array<double, 5> v{};
  double sigma = 1.0;
  double x0 = 0.0;
  std::optional<double> energy;
  std::optional<double> e_min;
  std::optional<double> e_max;
  int nmax = 5;
  std::optional<int> grid;
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::string format;
  std::string out;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int draws = 5;
  std::string specialize;
  bool all = false;
  bool family_given = false;
  bool pair_given = false;
};

void add_class_flags(CLI::App* cmd, Config& c) {
  cmd->add_option("--family", c.family, "confluent-heun, double-confluent-heun, bi-confluent-heun, ...");
  cmd->add_option("--m1", c.m1, "first map exponent (1, -1/2, 0.5, ...)");
  cmd->add_option("--m2", c.m2, "second map exponent");
}

void add_potential_flags(CLI::App* cmd, Config& c) {
  add_class_flags(cmd, c);
  for (int k = 0; k < 5; ++k) cmd->add_option("--v" + std::to_string(k), c.v[k], "table label V" + std::to_string(k));
  cmd->add_option("--sigma", c.sigma, "map scale sigma");
  cmd->add_option("--x0", c.x0, "map shift x0");
}

void add_output_flags(CLI::App* cmd, Config& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "output file (default stdout)");
}

HalfInt parse_exponent(const std::string& flag, const std::string& text) {
  try {
    return HalfInt::parse(text);
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

ClassInfo class_from(const Config& c) {
  const EquationFamily fam = parse_family(c.family);
  return class_info(fam, {parse_exponent("--m1", c.m1), parse_exponent("--m2", c.m2)});
}

PotentialSpec spec_from(const Config& c) {
  if (!(c.sigma != 0.0)) throw UsageError("--sigma must be nonzero");
  return PotentialSpec::from_table(class_from(c), c.v, c.sigma, c.x0);
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot open --out file '" + c.out + "'");
  f << text;
}

std::string render(const Config& c, const CsvTable& table, const nlohmann::json& j) {
  if (c.format == "json") return j.dump(2) + "\n";
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

std::string join_subfamilies(const ClassInfo& info) {
  std::string s;
  for (Subfamily f : info.subfamilies) s += (s.empty() ? "" : ";") + std::string(to_string(f));
  return s;
}

int cmd_list(const Config& c) {
  std::vector<EquationFamily> fams;
  if (c.family_given) fams.push_back(parse_family(c.family));
  else fams.assign(kAllFamilies.begin(), kAllFamilies.end());
  CsvTable t;
  t.header = standard_header("list");
  t.columns = {"family", "m1", "m2", "independent", "mirror", "equivalent_to", "subfamilies", "map", "z_lo", "z_hi"};
  nlohmann::json j = nlohmann::json::array();
  for (EquationFamily fam : fams)
    for (const ExponentPair& pair : enumerate_classes(fam)) {
      const ClassInfo info = class_info(fam, pair);
      j.push_back(to_json(info));
      t.rows.push_back({std::string(to_string(fam)), pair.m1.str(), pair.m2.str(), info.independent ? "1" : "0",
                        info.mirror ? info.mirror->m1.str() + " " + info.mirror->m2.str() : "",
                        info.equivalent_to ? info.equivalent_to->m1.str() + " " + info.equivalent_to->m2.str() : "",
                        join_subfamilies(info), std::string(to_string(info.map_kind)),
                        format_number(info.z_domain.lo), format_number(info.z_domain.hi)});
    }
  emit(c, render(c, t, j));
  return kOk;
}

int cmd_show(const Config& c) {
  const ClassInfo info = class_from(c);
  nlohmann::json card = to_json(info);
  card["potential"] = potential_formula(info);
  card["map"] = map_formula(info);
  CsvTable t;
  t.header = standard_header("show");
  t.columns = {"key", "value"};
  t.rows = {{"family", std::string(to_string(info.family))},
            {"m1", info.exponents.m1.str()},
            {"m2", info.exponents.m2.str()},
            {"potential", "\"" + potential_formula(info) + "\""},
            {"map", "\"" + map_formula(info) + "\""},
            {"map_kind", std::string(to_string(info.map_kind))},
            {"subfamilies", join_subfamilies(info)},
            {"independent", info.independent ? "1" : "0"},
            {"z_lo", format_number(info.z_domain.lo)},
            {"z_hi", format_number(info.z_domain.hi)}};
  emit(c, render(c, t, card));
  return kOk;
}

int cmd_profile(const Config& c) {
  const PotentialSpec spec = spec_from(c);
  auto [lo, hi] = default_profile_range(spec);
  if (c.x_min) lo = *c.x_min;
  if (c.x_max) hi = *c.x_max;
  const int n = c.grid.value_or(201);
  const auto rows = profile_parallel(spec, lo, hi, n);
  CsvTable t;
  t.header = standard_header("profile");
  append_spec_header(t.header, spec);
  t.columns = {"x", "z", "V"};
  nlohmann::json jx = nlohmann::json::array(), jz = nlohmann::json::array(), jv = nlohmann::json::array();
  for (const auto& r : rows) {
    t.rows.push_back({format_number(r.x), format_number(r.z), format_number(r.V)});
    jx.push_back(r.x);
    jz.push_back(r.z);
    jv.push_back(json_number(r.V));
  }
  const nlohmann::json j = {{"units", "2m/hbar^2 = 1"}, {"potential", to_json(spec)}, {"x", jx}, {"z", jz}, {"V", jv}};
  emit(c, render(c, t, j));
  return kOk;
}

int cmd_verify(const Config& c) {
  std::vector<ClassInfo> classes;
  if (c.all) classes = verification_classes();
  else classes.push_back(class_from(c));
  if (c.draws < 1) throw UsageError("--draws must be at least 1");
  const int grid = c.grid.value_or(200);
  const auto plan = verification_plan(classes, c.seed, c.draws);
  const auto outcomes = verify_sweep_parallel(plan, grid);

  CsvTable t;
  t.header = standard_header("verify");
  t.header.push_back("seed: " + std::to_string(c.seed) + ", draws: " + std::to_string(c.draws) +
                     ", grid: " + std::to_string(grid) + ", tol: " + format_number(c.tol));
  t.columns = {"family", "m1", "m2", "v0", "v1", "v2", "v3", "v4", "sigma", "x0", "energy",
               "branch", "residual_identity", "residual_psi", "pass"};
  nlohmann::json records = nlohmann::json::array();
  int failures = 0;
  std::size_t count = 0;
  double worst_id = 0.0, worst_psi = 0.0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o.error.empty()) {
      ++failures;
      std::cerr << "verify: " << to_string(plan[i].spec.info.family) << " " << plan[i].spec.info.exponents.str()
                << " E=" << format_number(plan[i].energy) << ": " << o.error << "\n";
      continue;
    }
    for (const auto& r : o.records) {
      const bool ok = r.residual_identity <= c.tol && r.residual_psi <= c.tol;
      failures += ok ? 0 : 1;
      ++count;
      worst_id = std::max(worst_id, r.residual_identity);
      worst_psi = std::max(worst_psi, r.residual_psi);
      std::vector<std::string> row = {std::string(to_string(r.family)), r.exponents.m1.str(), r.exponents.m2.str()};
      for (double v : r.table) row.push_back(format_number(v));
      for (double v : {r.sigma, r.x0, r.energy}) row.push_back(format_number(v));
      row.push_back(r.branch);
      row.push_back(format_number(r.residual_identity));
      row.push_back(format_number(r.residual_psi));
      row.push_back(ok ? "1" : "0");
      t.rows.push_back(std::move(row));
      auto jr = to_json(r);
      jr["pass"] = ok;
      records.push_back(jr);
    }
  }
  const nlohmann::json j = {{"seed", c.seed},       {"draws", c.draws},
                            {"grid", grid},         {"tol", c.tol},
                            {"records", records},   {"max_residual_identity", worst_id},
                            {"max_residual_psi", worst_psi}, {"failures", failures}};
  emit(c, render(c, t, j));
  std::cerr << "verify: " << count << " solutions from " << plan.size() << " draws, max identity residual "
            << format_number(worst_id) << ", max psi residual " << format_number(worst_psi) << ", " << failures
            << " failure(s), seed " << c.seed << "\n";
  return failures == 0 ? kOk : kVerifyFail;
}

int cmd_spectrum(const Config& c) {
  NumerovOptions opt;
  if (c.grid) opt.grid_n = *c.grid;
  opt.x_lo = c.x_min;
  opt.x_hi = c.x_max;

  CsvTable t;
  t.header = standard_header("spectrum");
  nlohmann::json j;
  if (!c.specialize.empty()) {
    const Specialization name = parse_specialization(c.specialize);
    const ClassInfo info = c.family_given || c.pair_given ? class_from(c) : specialization_spec(name, {}).info;
    const SpecializationParams p =
        specialization_params(name, PotentialSpec::from_table(info, c.v, c.sigma, c.x0));
    const CrossValidation cv = cross_validate(name, p, c.nmax, opt);
    append_spec_header(t.header, cv.spec);
    t.header.push_back("specialization: " + std::string(to_string(name)) +
                       ", max_rel_err: " + format_number(cv.max_rel_err));
    t.columns = {"n", "energy", "oracle", "rel_err"};
    for (std::size_t k = 0; k < cv.numerov.energies.size(); ++k) {
      const bool has = k < cv.oracle.energies.size();
      const double o = has ? cv.oracle.energies[k] : std::numeric_limits<double>::quiet_NaN();
      t.rows.push_back({std::to_string(cv.numerov.node_counts[k]), format_number(cv.numerov.energies[k]),
                        format_number(o), format_number(std::abs(cv.numerov.energies[k] - o) / std::abs(o))});
    }
    j = to_json(cv);
  } else {
    const PotentialSpec spec = spec_from(c);
    if (!c.e_max) throw UsageError("spectrum needs --e-max (or --specialize)");
    const double lo = c.e_min.value_or(-1e6);
    const Spectrum s = numerov_bound_states(spec, {lo, *c.e_max}, c.nmax, opt);
    append_spec_header(t.header, spec);
    t.header.push_back("domain: [" + format_number(s.x_lo) + ", " + format_number(s.x_hi) +
                       "], grid: " + std::to_string(s.grid_n));
    t.columns = {"n", "energy"};
    for (std::size_t k = 0; k < s.energies.size(); ++k)
      t.rows.push_back({std::to_string(s.node_counts[k]), format_number(s.energies[k])});
    j = {{"class", {{"family", std::string(to_string(spec.info.family))},
                    {"m1", spec.info.exponents.m1.str()},
                    {"m2", spec.info.exponents.m2.str()}}},
         {"specialization", nullptr},
         {"energies", s.energies},
         {"node_counts", s.node_counts},
         {"oracle_energies", nlohmann::json::array()},
         {"max_rel_err", nullptr}};
  }
  emit(c, render(c, t, j));
  return kOk;
}

int cmd_psi(const Config& c) {
  const PotentialSpec spec = spec_from(c);
  if (!c.energy) throw UsageError("psi needs --energy");
  const AnsatzResult res = solve_ansatz(spec, *c.energy);
  if (res.solutions.empty()) {
    std::string why;
    for (RootStatus s : res.status) why += (why.empty() ? "" : ", ") + std::string(to_string(s));
    throw DomainError("no real ansatz branch at this energy (slot roots: " + why + ")");
  }
  const int n = c.grid.value_or(201);
  std::vector<double> xs;
  if (c.x_min || c.x_max) {
    auto [lo, hi] = default_profile_range(spec);
    if (c.x_min) lo = *c.x_min;
    if (c.x_max) hi = *c.x_max;
    if (n < 2 || !(hi > lo)) throw UsageError("psi needs --x-max > --x-min and --grid >= 2");
    for (int i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * i / (n - 1));
  } else {
    xs = sample_grid(spec, n);
  }
  CsvTable t;
  t.header = standard_header("psi");
  append_spec_header(t.header, spec);
  t.header.push_back("energy: " + format_number(*c.energy));
  t.columns = {"x", "z"};
  std::vector<std::vector<PsiSample>> cols;
  nlohmann::json branches = nlohmann::json::array();
  for (const WaveSolution& s : res.solutions) {
    t.columns.push_back("psi[" + s.tag() + "]");
    cols.push_back(build_psi(spec, s, xs));
    nlohmann::json jp = nlohmann::json::array();
    for (const auto& p : cols.back()) jp.push_back(json_number(p.psi));
    branches.push_back({{"tag", s.tag()},
                        {"factors", {s.factors.a0, s.factors.a1, s.factors.a2}},
                        {"heun", {{"gamma", s.heun.gamma}, {"delta", s.heun.delta}, {"epsilon", s.heun.epsilon},
                                  {"alpha", s.heun.alpha}, {"q", s.heun.q}}},
                        {"free_parameter_fixed", s.free_parameter_fixed},
                        {"psi", jp}});
  }
  nlohmann::json jx = nlohmann::json::array(), jz = nlohmann::json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::string> row = {format_number(cols[0][i].x), format_number(cols[0][i].z)};
    for (const auto& col : cols) row.push_back(format_number(col[i].psi));
    t.rows.push_back(std::move(row));
    jx.push_back(cols[0][i].x);
    jz.push_back(cols[0][i].z);
  }
  const nlohmann::json j = {{"potential", to_json(spec)}, {"energy", *c.energy}, {"x", jx}, {"z", jz},
                            {"branches", branches}};
  emit(c, render(c, t, j));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exactly solvable potentials: catalog, profiles, verification and spectra (units 2m/hbar^2 = 1)"};
  app.require_subcommand(1);
  Config c;

  auto* list = app.add_subcommand("list", "print the class catalog");
  add_class_flags(list, c);
  add_output_flags(list, c, "csv");

  auto* show = app.add_subcommand("show", "print one class card");
  add_class_flags(show, c);
  add_output_flags(show, c, "json");

  auto* profile = app.add_subcommand("profile", "write an x, z, V grid");
  add_potential_flags(profile, c);
  profile->add_option("--grid", c.grid, "number of points (default 201)");
  profile->add_option("--x-min", c.x_min);
  profile->add_option("--x-max", c.x_max);
  add_output_flags(profile, c, "csv");

  auto* verify = app.add_subcommand("verify", "run the reduction residual suite");
  add_class_flags(verify, c);
  verify->add_flag("--all", c.all, "every verification class");
  verify->add_option("--draws", c.draws, "coefficient draws per class (default 5)");
  verify->add_option("--seed", c.seed, "generator seed (default 1)");
  verify->add_option("--tol", c.tol, "residual gate (default 1e-9)");
  verify->add_option("--grid", c.grid, "grid points per draw (default 200)");
  add_output_flags(verify, c, "csv");

  auto* spectrum = app.add_subcommand("spectrum", "Numerov bound states, with the closed form for a specialization");
  add_potential_flags(spectrum, c);
  spectrum->add_option("--e-min", c.e_min);
  spectrum->add_option("--e-max", c.e_max);
  spectrum->add_option("--nmax", c.nmax, "maximum number of levels (default 5)");
  spectrum->add_option("--grid", c.grid, "Numerov grid points (default 40000)");
  spectrum->add_option("--x-min", c.x_min);
  spectrum->add_option("--x-max", c.x_max);
  spectrum->add_option("--specialize", c.specialize, "eckart, poschl-teller, morse, harmonic or kratzer");
  add_output_flags(spectrum, c, "csv");

  auto* psi = app.add_subcommand("psi", "write psi(x) for every real ansatz branch");
  add_potential_flags(psi, c);
  psi->add_option("--energy", c.energy);
  psi->add_option("--grid", c.grid, "number of points (default 201)");
  psi->add_option("--x-min", c.x_min);
  psi->add_option("--x-max", c.x_max);
  add_output_flags(psi, c, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  c.family_given = cmd->count("--family") > 0;
  c.pair_given = cmd->count("--m1") > 0 || cmd->count("--m2") > 0;

  try {
    if (cmd == list) return cmd_list(c);
    if (cmd == show) return cmd_show(c);
    if (cmd == profile) return cmd_profile(c);
    if (cmd == verify) return cmd_verify(c);
    if (cmd == spectrum) return cmd_spectrum(c);
    if (cmd == psi) return cmd_psi(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CatalogError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnknownClass;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const SingularPointError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
