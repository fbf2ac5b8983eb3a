#pragma once

#include <complex>
#include <cstdint>
#include <limits>

#include <Eigen/Dense>

namespace qsep {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kNoCoherence = -std::numeric_limits<double>::infinity();
/// |C| at or below this is treated as exactly zero.
inline constexpr double kCoherenceFloor = 1e-14;

/// True for the tagged "no coherence" correlator value (|C| = 0).
inline bool is_no_coherence(double q) { return q == kNoCoherence; }

inline std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

}  // namespace qsep
