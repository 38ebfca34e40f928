#pragma once

// Experiment runners behind the oscfred command line: convergence tables,
// wavenumber sweeps, the interpolation table and the oracle self-test.

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscfred/galerkin.hpp"
#include "oscfred/problems.hpp"

namespace oscfred::app {

/// Bad configuration or input file; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSingular = 3;

/// Builds the problem for one wavenumber.
using ProblemFactory = std::function<Problem(double kappa)>;

struct ExperimentConfig {
  std::vector<Method> methods{Method::cgm, Method::opgm};
  std::vector<double> kappas;
  std::vector<int> opgm_levels{16, 32, 64, 128, 256, 512};
  /// Empty means 4x the OPGM levels.
  std::vector<int> cgm_levels;
  int order = 2;
  /// Fill the seconds column (off by default so output is reproducible).
  bool timing = false;
  int threads = 0;

  std::vector<int> levels(Method m) const;
  /// Throws ConfigError.
  void validate(bool need_two_levels) const;
};

struct RunRecord {
  Method method = Method::opgm;
  double kappa = 0.0;
  int n = 0;
  int order = 0;
  std::optional<double> error;
  std::optional<double> co;
  double cond = 0.0;
  std::optional<double> seconds;
  bool singular = false;
};

/// One solve of problem on the uniform mesh with n interior breakpoints.
RunRecord run_single(const Problem& problem, Method method, int n, int order, int threads = 0);

/// Records in config order: kappa, then method, then level. C.O. is filled
/// against the previous level of the same (kappa, method) series.
std::vector<RunRecord> run_convergence(const ExperimentConfig& cfg, const ProblemFactory& make);

/// 40 log-spaced wavenumbers from 10 to 1e4.
std::vector<double> default_sweep_kappas();

/// Fixed mesh per method (first level of each list) over cfg.kappas; no C.O.
std::vector<RunRecord> run_sweep(const ExperimentConfig& cfg, const ProblemFactory& make);

void write_records(std::ostream& os, const std::vector<RunRecord>& rows, Format fmt);
void write_table1(std::ostream& os, const std::vector<Table1Row>& rows, Format fmt);

/// Six significant digits, "inf"/"nan" spelled out.
std::string format_number(double v);

struct VerifyOptions {
  /// Added to K_d(0, 0) of the assembled matrix before the oracle comparison.
  double perturb_operator = 0.0;
  double tolerance = 1e-10;
};

struct VerifyCheck {
  std::string name;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

std::vector<VerifyCheck> run_verify(const VerifyOptions& opts = {});

/// Problem file I/O; schema documented in README. Throws ConfigError.
Problem problem_from_json(const std::string& text);
std::string problem_to_json(const Problem& p);

}  // namespace oscfred::app
