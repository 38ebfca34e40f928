#include "experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include <json.hpp>

#include "oscfred/oracle.hpp"

namespace oscfred::app {

using json = nlohmann::json;

std::vector<int> ExperimentConfig::levels(Method m) const {
  if (m == Method::opgm) return opgm_levels;
  if (!cgm_levels.empty()) return cgm_levels;
  std::vector<int> out;
  for (int n : opgm_levels) out.push_back(4 * n);
  return out;
}

void ExperimentConfig::validate(bool need_two_levels) const {
  if (methods.empty()) throw ConfigError("no method selected");
  if (kappas.empty()) throw ConfigError("empty wavenumber list");
  for (double k : kappas)
    if (!(k > 1.0) || !std::isfinite(k)) throw ConfigError("wavenumbers must be finite and exceed 1");
  if (order < 1 || order > 8) throw ConfigError("spline order must be in [1, 8]");
  for (Method m : methods) {
    const auto lv = levels(m);
    if (lv.empty()) throw ConfigError("empty N level list");
    if (need_two_levels && lv.size() < 2) throw ConfigError("convergence needs at least two N levels");
    for (int n : lv)
      if (n < 0 || n > 100000) throw ConfigError("N levels must be in [0, 100000]");
  }
}

RunRecord run_single(const Problem& problem, Method method, int n, int order, int threads) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  RunRecord rec;
  rec.method = method;
  rec.kappa = problem.kappa();
  rec.n = n;
  const TrialSpace space = make_trial_space(method, n, order, problem.kappa());
  rec.order = space.dimension();
  const DiscreteSystem sys = assemble(space, problem.kernel, problem.rhs, threads);
  const ComplexMatrix a = sys.matrix();
  try {
    const LUFactorization lu = lu_factor(a);
    const ComplexVector coef = lu_solve(lu, sys.load);
    rec.cond = cond2(a, lu);
    if (problem.exact) {
      rec.error = relative_error_eN([&](double s) { return eval_solution(space, coef, s); },
                                    [&](double s) { return (*problem.exact)(s); }, problem.norm_y);
    }
  } catch (const SingularMatrixError&) {
    rec.singular = true;
    rec.cond = std::numeric_limits<double>::infinity();
  }
  rec.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return rec;
}

std::vector<RunRecord> run_convergence(const ExperimentConfig& cfg, const ProblemFactory& make) {
  cfg.validate(true);
  std::vector<RunRecord> rows;
  for (double kappa : cfg.kappas) {
    const Problem problem = make(kappa);
    for (Method m : cfg.methods) {
      std::optional<double> prev;
      for (int n : cfg.levels(m)) {
        RunRecord rec = run_single(problem, m, n, cfg.order, cfg.threads);
        if (prev && rec.error && *prev > 0.0 && *rec.error > 0.0) rec.co = convergence_order(*prev, *rec.error);
        prev = rec.error;
        if (!cfg.timing) rec.seconds.reset();
        rows.push_back(rec);
      }
    }
  }
  return rows;
}

std::vector<double> default_sweep_kappas() {
  std::vector<double> k(40);
  for (int i = 0; i < 40; ++i) k[static_cast<std::size_t>(i)] = std::pow(10.0, 1.0 + 3.0 * i / 39.0);
  return k;
}

std::vector<RunRecord> run_sweep(const ExperimentConfig& cfg, const ProblemFactory& make) {
  cfg.validate(false);
  std::vector<RunRecord> rows;
  for (Method m : cfg.methods) {
    const int n = cfg.levels(m).front();
    for (double kappa : cfg.kappas) {
      RunRecord rec = run_single(make(kappa), m, n, cfg.order, cfg.threads);
      if (!cfg.timing) rec.seconds.reset();
      rows.push_back(rec);
    }
  }
  return rows;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

std::string opt_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

json opt_json(const std::optional<double>& v) { return v ? number_or_null(*v) : json(nullptr); }

}  // namespace

void write_records(std::ostream& os, const std::vector<RunRecord>& rows, Format fmt) {
  if (fmt == Format::csv) {
    os << "method,kappa,N,order,error,co,cond,seconds\n";
    for (const auto& r : rows) {
      os << to_string(r.method) << ',' << format_number(r.kappa) << ',' << r.n << ',' << r.order << ','
         << opt_field(r.error) << ',' << opt_field(r.co) << ',' << format_number(r.cond) << ','
         << opt_field(r.seconds) << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"method", std::string(to_string(r.method))},
                   {"kappa", number_or_null(r.kappa)},
                   {"N", r.n},
                   {"order", r.order},
                   {"error", opt_json(r.error)},
                   {"co", opt_json(r.co)},
                   {"cond", number_or_null(r.cond)},
                   {"seconds", opt_json(r.seconds)},
                   {"singular", r.singular}});
  }
  os << arr.dump(2) << '\n';
}

void write_table1(std::ostream& os, const std::vector<Table1Row>& rows, Format fmt) {
  if (fmt == Format::csv) {
    os << "kappa,g1,g2,g3\n";
    for (const auto& r : rows)
      os << format_number(r.kappa) << ',' << format_number(r.errors[0]) << ',' << format_number(r.errors[1]) << ','
         << format_number(r.errors[2]) << '\n';
    return;
  }
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"kappa", number_or_null(r.kappa)},
                   {"g1", number_or_null(r.errors[0])},
                   {"g2", number_or_null(r.errors[1])},
                   {"g3", number_or_null(r.errors[2])}});
  os << arr.dump(2) << '\n';
}

namespace {

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

std::vector<VerifyCheck> run_verify(const VerifyOptions& opts) {
  std::vector<VerifyCheck> out;
  auto record = [&](std::string name, double d, double tol) { out.push_back({std::move(name), d, tol, d <= tol}); };

  for (double kappa : {5.0, 20.0}) {
    const Problem p = paper_benchmark(kappa);
    for (Method m : {Method::cgm, Method::opgm}) {
      const TrialSpace space = make_trial_space(m, 4, 2, kappa);
      DiscreteSystem sys = assemble(space, p.kernel, p.rhs);
      sys.op(0, 0) += opts.perturb_operator;
      const auto e = oracle::mass_matrix(space);
      const auto k = oracle::operator_matrix(space, p.kernel);
      const auto f = oracle::load_vector(space, [&](double s) { return p.rhs(s); }, kappa);
      const double d = std::max({max_diff(sys.mass.data(), e.value.data()), max_diff(sys.op.data(), k.value.data()),
                                 max_diff(sys.load, f.value)});
      record("assembly vs oracle, " + std::string(to_string(m)) + " kappa=" + format_number(kappa), d,
             opts.tolerance);
    }
  }

  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (double kappa : {50.0, 500.0, 5000.0}) {
    const Problem p = paper_benchmark(kappa);
    const Problem q = manufactured(p.kernel, *p.exact);
    double d = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double s = unif(rng);
      d = std::max(d, std::abs(p.rhs(s) - q.rhs(s)));
    }
    record("printed f vs closed-form y - Ky, kappa=" + format_number(kappa), d, opts.tolerance);
  }

  {
    const double kappa = 50.0;
    const Problem p = paper_benchmark(kappa);
    const auto y = [&](double t) { return (*p.exact)(t); };
    double d = 0.0;
    for (int i = 0; i < 16; ++i) {
      const double s = unif(rng);
      const auto ky = oracle::apply_operator_at(p.kernel, y, s, kappa);
      d = std::max(d, std::abs(p.rhs(s) - (y(s) - ky.value)));
    }
    record("printed f vs quadrature y - Ky, kappa=50", d, 1e-9);
  }
  return out;
}

namespace {

cplx parse_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError("expected a number or a [re, im] pair, got " + v.dump());
}

StructuredFunction parse_structured(const json& j, double kappa) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ConfigError("structured function needs a \"terms\" array");
  StructuredFunction f(kappa);
  for (const auto& t : j["terms"]) {
    if (!t.contains("tau") || !t["tau"].is_number_integer() || !t.contains("coeffs") || !t["coeffs"].is_array())
      throw ConfigError("each term needs an integer \"tau\" and a \"coeffs\" array");
    const int tau = t["tau"].get<int>();
    if (std::abs(tau) > kMaxTau) throw ConfigError("tau out of range: " + std::to_string(tau));
    std::vector<cplx> c;
    for (const auto& x : t["coeffs"]) c.push_back(parse_complex(x));
    f.add(tau, Polynomial(std::move(c)));
  }
  return f;
}

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

json structured_json(const StructuredFunction& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) {
    json c = json::array();
    for (cplx x : t.amplitude.coeffs()) c.push_back(complex_json(x));
    terms.push_back({{"tau", t.tau}, {"coeffs", c}});
  }
  return {{"terms", terms}};
}

}  // namespace

Problem problem_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("problem file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("problem file must hold a JSON object");
  if (!j.contains("kappa") || !j["kappa"].is_number()) throw ConfigError("problem file needs a numeric \"kappa\"");
  const double kappa = j["kappa"].get<double>();
  if (!(kappa > 1.0) || !std::isfinite(kappa)) throw ConfigError("problem wavenumber must exceed 1");

  if (!j.contains("kernel") || !j["kernel"].contains("poly_st") || !j["kernel"]["poly_st"].is_array())
    throw ConfigError("problem file needs kernel.poly_st");
  std::vector<std::vector<cplx>> kc;
  for (const auto& row : j["kernel"]["poly_st"]) {
    if (!row.is_array()) throw ConfigError("kernel.poly_st rows must be arrays");
    std::vector<cplx> r;
    for (const auto& x : row) r.push_back(parse_complex(x));
    kc.push_back(std::move(r));
  }
  if (!j.contains("rhs")) throw ConfigError("problem file needs \"rhs\"");

  Problem p{OscKernel::polynomial(BivariatePolynomial(std::move(kc)), kappa), parse_structured(j["rhs"], kappa),
            std::nullopt, 1.0, "file"};
  if (j.contains("exact") && !j["exact"].is_null()) {
    p.exact = parse_structured(j["exact"], kappa);
    const double n = sampled_norm([&](double s) { return (*p.exact)(s); });
    if (n > 0.0) p.norm_y = n;
  }
  return p;
}

std::string problem_to_json(const Problem& p) {
  if (!p.kernel.is_polynomial()) throw ConfigError("only polynomial kernels can be serialized");
  const BivariatePolynomial& k = p.kernel.poly();
  json rows = json::array();
  for (int a = 0; a <= k.degree_s(); ++a) {
    json r = json::array();
    for (int b = 0; b <= k.degree_t(); ++b) r.push_back(complex_json(k.coeff(a, b)));
    rows.push_back(r);
  }
  json j = {{"kappa", p.kappa()},
            {"kernel", {{"poly_st", rows}}},
            {"rhs", structured_json(p.rhs)},
            {"exact", p.exact ? structured_json(*p.exact) : json(nullptr)}};
  return j.dump(2);
}

}  // namespace oscfred::app
