#include "cmtk/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmtk/error.hpp"
#include "cmtk/falsifier.hpp"
#include "cmtk/matrix_json.hpp"
#include "cmtk/orbits.hpp"
#include "cmtk/registry.hpp"
#include "cmtk/schemes.hpp"
#include "cmtk/suite.hpp"

namespace cmtk {

namespace {

using nlohmann::json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::BadInput, "cannot write '" + path + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::BadInput, "cannot read '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, "'" + path + "': " + e.what());
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoConvergence:
    case ErrorKind::NegativeEigenvalue:
      return kExitNumerical;
    default:
      return kExitUsage;
  }
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

json scheme_to_json(const IdentityScheme& s) {
  return {{"label", s.label},
          {"n", s.n},
          {"L", matrix_to_json(s.left)},
          {"R", matrix_to_json(s.right)},
          {"scale", s.scale}};
}

struct VerifyArgs {
  std::vector<std::string> families;
  std::vector<double> p_grid;
  std::vector<int> dims;
  int trials = 200;
  std::uint64_t seed = 0;
  double tol = kViolationTol;
  std::string out;
  std::string format = "json";
  std::string config;
};

// Fills unset flags from the JSON config file; explicit flags win.
void apply_config(VerifyArgs& a, const CLI::App& cmd) {
  if (a.config.empty()) return;
  const json c = read_json_file(a.config);
  auto unset = [&](const char* flag) { return cmd.get_option(flag)->count() == 0; };
  try {
    if (c.contains("families") && unset("--families")) a.families = c["families"].get<std::vector<std::string>>();
    if (c.contains("p_grid") && unset("--p")) a.p_grid = c["p_grid"].get<std::vector<double>>();
    if (c.contains("dims") && unset("--dims")) a.dims = c["dims"].get<std::vector<int>>();
    if (c.contains("trials") && unset("--trials")) a.trials = c["trials"].get<int>();
    if (c.contains("seed") && unset("--seed")) a.seed = c["seed"].get<std::uint64_t>();
    if (c.contains("tol") && unset("--tol")) a.tol = c["tol"].get<double>();
    if (c.contains("out") && unset("--out")) a.out = c["out"].get<std::string>();
    if (c.contains("format") && unset("--format")) a.format = c["format"].get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, "config: " + std::string(e.what()));
  }
}

int cmd_verify(VerifyArgs a, const CLI::App& cmd, std::ostream& out) {
  apply_config(a, cmd);
  if (a.format != "json" && a.format != "csv") {
    throw Error(ErrorKind::BadInput, "format must be json or csv");
  }
  SuiteConfig cfg;
  cfg.families = a.families;
  if (!a.p_grid.empty()) cfg.p_grid = a.p_grid;
  if (!a.dims.empty()) cfg.dims = a.dims;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.tol = a.tol;
  const SuiteReport report = run_suite(cfg);
  emit(a.format == "csv" ? to_csv(report) : dump(to_json(report, utc_timestamp())), a.out, out);
  if (report.failures() > 0) return kExitNumerical;
  return report.theorem_violations() > 0 ? kExitViolation : kExitOk;
}

int cmd_families(bool as_json, std::ostream& out) {
  if (as_json) {
    json list = json::array();
    for (const auto& f : registry()) {
      json variants = json::array();
      for (const auto& v : f.variants) variants.push_back(v.name);
      list.push_back({{"id", f.spec.id},
                      {"arity", f.spec.arity},
                      {"p_window", f.spec.p_window},
                      {"direction", std::string(to_string(f.spec.direction))},
                      {"status", std::string(to_string(f.spec.status))},
                      {"anchor", f.spec.anchor},
                      {"variants", std::move(variants)}});
    }
    out << dump(list);
    return kExitOk;
  }
  for (const auto& f : registry()) {
    out << std::left << std::setw(16) << f.spec.id << std::setw(12) << to_string(f.spec.status)
        << f.spec.p_window << "  " << f.spec.anchor << "\n";
  }
  return kExitOk;
}

int cmd_identity(int n_max, std::ostream& out) {
  json rows = json::array();
  bool ok = true;
  for (int label = 0; label <= 7; ++label) {
    for (int n = 1; n <= n_max; ++n) {
      const IdentityScheme s = table1_scheme(label, n);
      const double r = s.gram_residual();
      ok = ok && r <= 1e-12;
      rows.push_back({{"label", label}, {"n", n}, {"gram_residual", r}, {"ok", r <= 1e-12}});
    }
  }
  out << dump({{"tolerance", 1e-12}, {"all_ok", ok}, {"schemes", rows}});
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schatten-norm inequality verification and counterexample search", "cmtk"};
  app.require_subcommand(1);

  bool families_json = false;
  auto* families = app.add_subcommand("families", "list the inequality registry");
  families->add_flag("--json", families_json, "emit JSON");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the seeded theorem-family suite");
  verify->add_option("--families", va.families, "family ids (default: all theorems)")->delimiter(',');
  verify->add_option("--p", va.p_grid, "exponent grid")->delimiter(',');
  verify->add_option("--dims", va.dims, "matrix sizes")->delimiter(',');
  verify->add_option("--trials", va.trials, "trials per cell");
  verify->add_option("--seed", va.seed, "master seed");
  verify->add_option("--tol", va.tol, "violation threshold on rel_margin");
  verify->add_option("--out", va.out, "report path (default: stdout)");
  verify->add_option("--format", va.format, "json or csv");
  verify->add_option("--config", va.config, "JSON config; explicit flags override it");

  int identity_n = 4;
  auto* identity = app.add_subcommand("identity", "check Gram equality of every identity scheme");
  identity->add_option("--n-max", identity_n, "largest n");

  SearchTarget target;
  SearchConfig search;
  std::string falsify_out;
  auto* falsify = app.add_subcommand("falsify", "search for a violation of one family");
  falsify->add_option("--target", target.family, "family id")->required();
  falsify->add_option("--p", target.p, "exponent")->required();
  falsify->add_option("--dim", target.dim, "matrix size");
  falsify->add_option("--variant", target.variant, "operand variant");
  falsify->add_option("--branch", target.branch, "case branch to attack");
  falsify->add_option("--restarts", search.restarts, "Nelder-Mead restarts");
  falsify->add_option("--iters", search.iters, "iterations per restart");
  falsify->add_option("--step", search.step, "initial simplex step");
  falsify->add_option("--seed", search.seed, "master seed");
  falsify->add_option("--out", falsify_out, "result path (default: stdout)");

  auto* orbit = app.add_subcommand("orbit", "unitary orbit decompositions");
  orbit->require_subcommand(1);
  std::string pinch_input;
  std::vector<long> pinch_splits;
  std::string orbit_out;
  auto* pinch = orbit->add_subcommand("pinch", "pinching decomposition of a PSD matrix");
  pinch->add_option("--input", pinch_input, "matrix JSON file")->required();
  pinch->add_option("--splits", pinch_splits, "block sizes")->delimiter(',')->required();
  pinch->add_option("--out", orbit_out, "output path");
  std::vector<std::string> circ_inputs;
  auto* circulant = orbit->add_subcommand("circulant", "block-circulant spectrum identity");
  circulant->add_option("--inputs", circ_inputs, "matrix JSON files")->required();
  circulant->add_option("--out", orbit_out, "output path");

  auto* gen = app.add_subcommand("gen", "emit generator output as matrix JSON");
  gen->require_subcommand(1);
  int gen_n = 1;
  int gen_label = 0;
  int gen_dim = 2;
  std::uint64_t gen_seed = 0;
  double gen_p = 2.0;
  std::string gen_kind = "ginibre";
  auto* g_little = gen->add_subcommand("littlewood", "Littlewood matrix L_n");
  g_little->add_option("--n", gen_n, "level")->required();
  auto* g_fourier = gen->add_subcommand("fourier", "unitary Fourier matrix");
  g_fourier->add_option("--n", gen_n, "size")->required();
  auto* g_sign = gen->add_subcommand("sign", "sign-pattern matrix");
  g_sign->add_option("--n", gen_n, "columns")->required();
  auto* g_table5 = gen->add_subcommand("table5", "structured subunitary matrix");
  g_table5->add_option("--label", gen_label, "label")->required();
  g_table5->add_option("--n", gen_n, "size")->required();
  auto* g_scheme = gen->add_subcommand("scheme", "sum-of-squares identity scheme");
  g_scheme->add_option("--label", gen_label, "label")->required();
  g_scheme->add_option("--n", gen_n, "size")->required();
  auto* g_random = gen->add_subcommand("random", "seeded random matrix");
  g_random->add_option("--kind", gen_kind, "ginibre|haar_unitary|psd|hermitian|schatten_unit");
  g_random->add_option("--dim", gen_dim, "size");
  g_random->add_option("--seed", gen_seed, "seed");
  g_random->add_option("--p", gen_p, "exponent for schatten_unit");

  SearchConfig probe_cfg;
  probe_cfg.restarts = 4;
  probe_cfg.iters = 200;
  std::string probe_out;
  auto* probe = app.add_subcommand("probe", "search the open conjectures on a fixed grid");
  probe->add_option("--restarts", probe_cfg.restarts, "restarts per cell");
  probe->add_option("--iters", probe_cfg.iters, "iterations per restart");
  probe->add_option("--seed", probe_cfg.seed, "master seed");
  probe->add_option("--out", probe_out, "output path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return kExitUsage;
  }

  try {
    if (families->parsed()) return cmd_families(families_json, out);
    if (verify->parsed()) return cmd_verify(va, *verify, out);
    if (identity->parsed()) return cmd_identity(identity_n, out);
    if (falsify->parsed()) {
      find_family(target.family);
      const SearchResult r = maximize_violation(target, search);
      emit(dump(to_json(target, r)), falsify_out, out);
      return r.best_rel_margin < -kViolationTol ? kExitViolation : kExitOk;
    }
    if (pinch->parsed()) {
      const Matrix h = read_matrix_file(pinch_input);
      std::vector<Eigen::Index> splits(pinch_splits.begin(), pinch_splits.end());
      const DecompositionResult d = pinch_n(h, splits);
      emit(dump({{"unitaries", matrices_to_json(d.unitaries)},
                 {"summands", matrices_to_json(d.summands)},
                 {"residual", d.residual}}),
           orbit_out, out);
      return kExitOk;
    }
    if (circulant->parsed()) {
      std::vector<Matrix> blocks;
      for (const auto& path : circ_inputs) blocks.push_back(read_matrix_file(path));
      const CirculantCheck c = circulant_identity(blocks);
      auto vec = [](const RealVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
      emit(dump({{"lhs_spectrum", vec(c.lhs_spectrum)},
                 {"rhs_spectrum", vec(c.rhs_spectrum)},
                 {"max_gap", c.max_gap},
                 {"fourier_kron", matrix_to_json(c.fourier_kron)}}),
           orbit_out, out);
      return kExitOk;
    }
    if (g_little->parsed()) out << dump(matrix_to_json(littlewood(gen_n)));
    if (g_fourier->parsed()) out << dump(matrix_to_json(fourier_matrix(gen_n).matrix()));
    if (g_sign->parsed()) out << dump(matrix_to_json(sign_matrix(gen_n)));
    if (g_table5->parsed()) {
      const Table5Entry e = table5_subunitary(gen_label, gen_n);
      out << dump({{"label", gen_label}, {"n", gen_n}, {"U", matrix_to_json(e.u.matrix())},
                   {"scale", e.scale}});
    }
    if (g_scheme->parsed()) out << dump(scheme_to_json(table1_scheme(gen_label, gen_n)));
    if (g_random->parsed()) {
      const EnsembleConfig cfg{gen_dim, parse_ensemble_kind(gen_kind), gen_p, gen_seed};
      out << dump(matrix_to_json(random_matrix(cfg)));
    }
    if (probe->parsed()) {
      const auto cells = probe_conjectures(probe_cfg);
      emit(dump({{"seed", probe_cfg.seed},
                 {"restarts", probe_cfg.restarts},
                 {"iters", probe_cfg.iters},
                 {"cells", to_json(cells)}}),
           probe_out, out);
    }
    return kExitOk;
  } catch (const Error& e) {
    report_error(err, std::string(to_string(e.kind())), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
    return kExitNumerical;
  }
}

}  // namespace cmtk
