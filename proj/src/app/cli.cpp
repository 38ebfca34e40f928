#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "experiments.hpp"

namespace oscfred::app {

namespace {

struct Options {
  std::vector<std::string> kappa;
  std::string n_levels;
  std::string cgm_levels;
  std::string method = "both";
  int order = 2;
  std::string out;
  std::string format = "csv";
  std::string problem;
  bool timing = false;
  double perturb = 0.0;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

template <class T>
T parse_number(const std::string& s, const char* what) {
  std::istringstream is(s);
  T v{};
  if (!(is >> v) || !(is >> std::ws).eof()) throw ConfigError(std::string("invalid ") + what + " '" + s + "'");
  return v;
}

std::vector<double> parse_kappas(const std::vector<std::string>& raw) {
  std::vector<double> out;
  for (const auto& r : raw)
    for (const auto& p : split_commas(r)) out.push_back(parse_number<double>(p, "wavenumber"));
  return out;
}

std::vector<int> parse_levels(const std::string& raw) {
  std::vector<int> out;
  for (const auto& p : split_commas(raw)) out.push_back(parse_number<int>(p, "N level"));
  return out;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError("unknown format '" + s + "'");
}

std::vector<Method> parse_methods(const std::string& s) {
  if (s == "both") return {Method::cgm, Method::opgm};
  if (s == "cgm") return {Method::cgm};
  if (s == "opgm") return {Method::opgm};
  throw ConfigError("unknown method '" + s + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open problem file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Builds config and problem source shared by convergence and sweep.
ExperimentConfig make_config(const Options& o, std::vector<double> default_kappas, std::vector<int> default_levels,
                             ProblemFactory& make) {
  ExperimentConfig cfg;
  cfg.methods = parse_methods(o.method);
  cfg.order = o.order;
  cfg.timing = o.timing;
  cfg.opgm_levels = o.n_levels.empty() ? std::move(default_levels) : parse_levels(o.n_levels);
  if (!o.cgm_levels.empty()) cfg.cgm_levels = parse_levels(o.cgm_levels);

  if (!o.problem.empty()) {
    if (!o.kappa.empty()) throw ConfigError("--kappa cannot be combined with --problem (the file fixes kappa)");
    auto p = std::make_shared<Problem>(problem_from_json(read_file(o.problem)));
    cfg.kappas = {p->kappa()};
    make = [p](double) { return *p; };
  } else {
    cfg.kappas = o.kappa.empty() ? std::move(default_kappas) : parse_kappas(o.kappa);
    make = paper_benchmark;
  }
  return cfg;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--kappa", o.kappa, "Wavenumber(s); repeatable, comma lists allowed");
  cmd->add_option("--n-levels", o.n_levels, "Comma-separated OPGM N values (CGM uses 4x unless --cgm-levels)");
  cmd->add_option("--cgm-levels", o.cgm_levels, "Comma-separated CGM N values");
  cmd->add_option("--method", o.method, "cgm, opgm or both");
  cmd->add_option("--order", o.order, "Spline order m");
  cmd->add_option("--out", o.out, "Output file (default stdout)");
  cmd->add_option("--format", o.format, "csv or json");
  cmd->add_option("--problem", o.problem, "Problem description JSON file (default: benchmark)");
  cmd->add_flag("--timing", o.timing, "Fill the seconds column");
}

int emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream f(o.out);
  if (!f) throw ConfigError("cannot write '" + o.out + "'");
  f << text;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Galerkin solvers for oscillatory Fredholm integral equations", "oscfred"};
  app.require_subcommand(1);
  Options o;

  auto* conv = app.add_subcommand("convergence", "Error and convergence order over N levels");
  add_common(conv, o);
  auto* sweep = app.add_subcommand("sweep", "Error and condition number at fixed N over a wavenumber grid");
  add_common(sweep, o);
  auto* table1 = app.add_subcommand("table1", "Linear interpolation errors of t^2 + sin(kappa t)/kappa^(j-1)");
  table1->add_option("--kappa", o.kappa, "Wavenumber(s); repeatable, comma lists allowed");
  table1->add_option("--out", o.out, "Output file (default stdout)");
  table1->add_option("--format", o.format, "csv or json");
  auto* verify = app.add_subcommand("verify", "Compare closed-form assembly against brute-force quadrature");
  verify->add_option("--out", o.out, "Report file (default stdout)");
  verify->add_option("--inject-perturbation", o.perturb, "Add this value to one operator entry (self-test of the check)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    std::ostringstream buf;
    if (conv->parsed() || sweep->parsed()) {
      const Format fmt = parse_format(o.format);
      ProblemFactory make;
      std::vector<RunRecord> rows;
      if (conv->parsed()) {
        const ExperimentConfig cfg =
            make_config(o, {50.0, 500.0, 5000.0, 50000.0}, {16, 32, 64, 128, 256, 512}, make);
        rows = run_convergence(cfg, make);
      } else {
        const ExperimentConfig cfg = make_config(o, default_sweep_kappas(), {64}, make);
        rows = run_sweep(cfg, make);
      }
      write_records(buf, rows, fmt);
      emit(o, buf.str(), out);
      const bool singular = std::any_of(rows.begin(), rows.end(), [](const RunRecord& r) { return r.singular; });
      if (singular) err << "warning: singular system in at least one run\n";
      return singular ? kExitSingular : kExitOk;
    }
    if (table1->parsed()) {
      const Format fmt = parse_format(o.format);
      const std::vector<double> kappas =
          o.kappa.empty() ? std::vector<double>{40.0, 80.0, 160.0, 320.0, 640.0} : parse_kappas(o.kappa);
      if (kappas.empty()) throw ConfigError("empty wavenumber list");
      for (double k : kappas)
        if (!(k > 0.0)) throw ConfigError("wavenumbers must be positive");
      write_table1(buf, table1_experiment(kappas), fmt);
      return emit(o, buf.str(), out);
    }
    VerifyOptions vo;
    vo.perturb_operator = o.perturb;
    const auto checks = run_verify(vo);
    bool ok = true;
    for (const auto& c : checks) {
      buf << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  max discrepancy " << format_number(c.discrepancy)
          << " (tol " << format_number(c.tolerance) << ")\n";
      ok = ok && c.passed;
    }
    buf << (ok ? "all checks passed\n" : "verification FAILED\n");
    emit(o, buf.str(), out);
    return ok ? kExitOk : kExitVerifyFailed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace oscfred::app
