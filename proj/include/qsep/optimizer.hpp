#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qsep/correlator.hpp"

namespace qsep {

enum class OptimizerMethod {
  /// Exhaustive grid over (theta, phi) per qubit plus a Nelder-Mead polish of
  /// the best cells. Cost grows as grid_points^(2N); the reference answer.
  GridOracle,
  /// Nelder-Mead from `restarts` random product bases, best kept.
  MultistartLocal,
  /// Sweeps of exact single-qubit maximizations from `restarts` random bases.
  CoordinateAscent,
};

std::string_view to_string(OptimizerMethod m);
/// Accepts the CLI spellings grid|multistart|coordinate as well as the long
/// names grid_oracle|multistart_local|coordinate_ascent.
std::optional<OptimizerMethod> parse_optimizer_method(std::string_view name);

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::MultistartLocal;
  int restarts = 32;
  /// Convergence threshold on |C|.
  double tolerance = 1e-8;
  int grid_points_per_angle = 24;
  /// Sweep cap for coordinate ascent; for Nelder-Mead the cap is
  /// max_iterations per optimized angle.
  int max_iterations = 500;
  std::uint64_t seed = 42;

  /// Throws Error(BadConfig) on non-positive counts or tolerance.
  void validate() const;
};

struct CorrelatorResult {
  /// N + log4 |C|^2, or kNoCoherence.
  double q;
  double coherence_modulus;
  ProductBasis basis;
  int restarts_used;
  bool converged;
};

/// Maximizes |C| over local product bases. Deterministic for a fixed config;
/// restart r draws its starting basis from the substream (seed, r). A warm
/// start, when given, is refined first and wins ties.
CorrelatorResult optimize_q(const QuantumState& state, const OptimizerConfig& config,
                            const std::optional<ProductBasis>& warm_start = std::nullopt);

}  // namespace qsep
