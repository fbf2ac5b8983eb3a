#pragma once

#include <span>
#include <variant>
#include <vector>

#include "qsep/types.hpp"

namespace qsep {

inline constexpr int kDefaultQubitCap = 12;

/// Dense N-qubit state, either a normalized amplitude vector or a density
/// matrix. Qubit 0 is the most significant bit of the computational-basis
/// index. Instances are immutable once constructed.
class QuantumState {
 public:
  /// Validates and stores a pure state. Norm deviation below 1e-6 is
  /// normalized away; larger deviations throw NormViolation.
  static QuantumState pure(ComplexVector amplitudes, int max_qubits = kDefaultQubitCap);

  /// Validates Hermiticity (1e-10), unit trace (1e-10) and positivity
  /// (eigenvalues >= -1e-8).
  static QuantumState mixed(ComplexMatrix rho, int max_qubits = kDefaultQubitCap);

  /// Skips the O(d^3) positivity check; for results of maps that are known to
  /// preserve the state invariants (channels, mixing, partial trace).
  static QuantumState mixed_unchecked(ComplexMatrix rho);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return dim_of(n_qubits_); }
  bool is_pure() const { return std::holds_alternative<ComplexVector>(payload_); }

  /// Amplitudes of a pure state; throws DimensionMismatch on mixed states.
  const ComplexVector& amplitudes() const;
  /// Stored density matrix of a mixed state; throws on pure states.
  const ComplexMatrix& density() const;

  /// |psi><psi| for pure states, the stored matrix otherwise.
  ComplexMatrix to_density() const;

 private:
  QuantumState(int n, ComplexVector v) : n_qubits_(n), payload_(std::move(v)) {}
  QuantumState(int n, ComplexMatrix m) : n_qubits_(n), payload_(std::move(m)) {}

  int n_qubits_;
  std::variant<ComplexVector, ComplexMatrix> payload_;
};

QuantumState new_pure(ComplexVector amplitudes);
QuantumState new_mixed(ComplexMatrix rho);
ComplexMatrix to_density(const QuantumState& state);

/// Kronecker product a (x) b; a occupies the leading (most significant) qubits.
QuantumState tensor(const QuantumState& a, const QuantumState& b,
                    int max_qubits = kDefaultQubitCap);

/// Reduced state after tracing out `discard`; the remaining qubits keep their
/// relative order.
QuantumState partial_trace(const QuantumState& state, std::span<const int> discard);
QuantumState partial_trace(const QuantumState& state, std::initializer_list<int> discard);

/// sum_i w_i rho_i. Weights must be non-negative and sum to 1 within 1e-10.
QuantumState convex_mix(std::span<const QuantumState> states, std::span<const double> weights);

/// Applies op_k to qubit k. Pure input gives (op_0 (x) ... ) psi renormalized;
/// mixed input gives O rho O^dagger renormalized to unit trace. Throws
/// DimensionMismatch on a wrong operator count and DegenerateOrbit if the
/// result has vanishing norm.
QuantumState apply_local(const QuantumState& state, std::span<const Eigen::Matrix2cd> ops);

/// Amplitude-level helper without renormalization.
ComplexVector apply_local(const ComplexVector& psi, std::span<const Eigen::Matrix2cd> ops);

/// Largest violation of the mixed-state invariants, for property checks.
struct StateDiagnostics {
  double hermiticity_error;
  double trace_error;
  double min_eigenvalue;
};
StateDiagnostics diagnose(const ComplexMatrix& rho);

}  // namespace qsep
