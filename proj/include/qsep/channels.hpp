#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsep/optimizer.hpp"
#include "qsep/quantum_state.hpp"

namespace qsep {

enum class ChannelKind { Depolarizing, Dephasing };

std::string_view to_string(ChannelKind k);
std::optional<ChannelKind> parse_channel_kind(std::string_view name);

/// (1 - p) rho + p I / 2^N. Throws BadP outside [0, 1].
QuantumState depolarize(const QuantumState& state, double p);

/// (1 - p/2) rho + (p/2) Z_k rho Z_k on qubit k. Throws BadP outside [0, 1]
/// and IndexOutOfRange for an invalid qubit.
QuantumState dephase(const QuantumState& state, double p, int qubit);

struct NoisePoint {
  double p;
  double q_min;
  double q_mean;
  double q_max;
};

/// Optimized Q along p_grid. Depolarizing gives one value per point;
/// dephasing gives min, mean and max over the qubit that is dephased.
/// Each point is warm-started from the optimum of the noiseless state.
std::vector<NoisePoint> noise_sweep(const QuantumState& state, ChannelKind kind, const std::vector<double>& p_grid,
                                    const OptimizerConfig& optimizer, unsigned threads = 0);

/// CSV `p,q_min,q_mean,q_max,channel,state_label`.
std::string noise_csv(const std::vector<NoisePoint>& curve, ChannelKind kind, std::string_view state_label,
                      const std::vector<std::string>& metadata = {});

}  // namespace qsep
