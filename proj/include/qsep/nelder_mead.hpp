#pragma once

#include <functional>
#include <vector>

namespace qsep {

struct NelderMeadOptions {
  double initial_step = 0.25;
  /// Stop once the simplex's function spread and its diameter are both below
  /// these bounds.
  double f_tolerance = 1e-10;
  double x_tolerance = 1e-8;
  int max_iterations = 1000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int iterations;
  bool converged;
};

/// Minimizes f with the dimension-adaptive Nelder-Mead coefficients
/// (reflection 1, expansion 1 + 2/n, contraction 0.75 - 1/2n, shrink 1 - 1/n).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, const NelderMeadOptions& options);

}  // namespace qsep
