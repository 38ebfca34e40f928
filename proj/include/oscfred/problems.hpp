#pragma once

// Benchmark problems: the reference equation with a known oscillatory
// solution, manufactured problems for arbitrary structured solutions, and the
// interpolation experiment showing how oscillation amplitude affects accuracy.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oscfred/structured.hpp"

namespace oscfred {

struct Problem {
  OscKernel kernel;
  StructuredFunction rhs;
  std::optional<StructuredFunction> exact;
  /// Normalization of the relative error metric.
  double norm_y = 1.0;
  std::string name;

  double kappa() const { return kernel.kappa(); }
};

/// K = 1, exact solution y(s) = 1 + s^3 exp(i kappa s), norm_y = 4 sqrt(7)/7.
/// Throws std::invalid_argument for kappa <= 1.
Problem paper_benchmark(double kappa);

/// Amplitude degree cap of manufactured right-hand sides.
inline constexpr int kMaxManufacturedDegree = 16;

/// Closed-form K y for a polynomial kernel factor and structured y. Splitting
/// at t = s keeps the result structured. Throws std::invalid_argument for a
/// non-polynomial kernel, std::overflow_error past the degree cap.
StructuredFunction apply_operator(const OscKernel& kernel, const StructuredFunction& y);

/// f = y - K y with y attached as the exact solution; norm_y is the sampled
/// norm of y (1 when y vanishes).
Problem manufactured(const OscKernel& kernel, const StructuredFunction& y);

/// g_j(t) = t^2 + sin(kappa t) / kappa^(j-1).
struct OscProbeFunction {
  int j = 1;
  double kappa = 1.0;
  double operator()(double t) const;
};

/// Interpolation experiment grid conventions.
inline constexpr int kTable1Nodes = 1281;
inline constexpr int kTable1Samples = 2049;

struct Table1Row {
  double kappa = 0.0;
  std::array<double, 3> errors{};
};

/// For each kappa and j = 1, 2, 3: max error of the piecewise-linear
/// interpolant of g_j on 1281 uniform nodes of [-1, 1], sampled on 2049
/// uniform points. Throws std::invalid_argument for non-positive kappa.
std::vector<Table1Row> table1_experiment(std::span<const double> kappas);

}  // namespace oscfred
