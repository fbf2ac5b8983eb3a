#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsep/optimizer.hpp"
#include "qsep/quantum_state.hpp"

namespace qsep {

/// Largest register the dense propagator accepts.
inline constexpr int kDynamicsQubitCap = 10;

enum class HamiltonianKind {
  /// One-axis twisting: sum_{i>j} Z_i Z_j.
  OAT,
  /// Two-axis counter-twisting: sum_{i>j} (Z_i Z_j - X_i X_j).
  TACT,
};

std::string_view to_string(HamiltonianKind k);
std::optional<HamiltonianKind> parse_hamiltonian_kind(std::string_view name);

struct HamiltonianSpec {
  HamiltonianKind kind = HamiltonianKind::OAT;
  int n_qubits = 3;
  auto operator<=>(const HamiltonianSpec&) const = default;
};

/// Throws BadN for n < 2 and CapExceeded above kDynamicsQubitCap.
ComplexMatrix hamiltonian(const HamiltonianSpec& spec);

/// exp(-i H t) from one Hermitian eigendecomposition, reused for every t.
class Propagator {
 public:
  explicit Propagator(const HamiltonianSpec& spec);
  const HamiltonianSpec& spec() const { return spec_; }
  const ComplexMatrix& hamiltonian() const { return h_; }
  /// Throws DimensionMismatch unless psi0 is pure with matching size.
  QuantumState evolve(const QuantumState& psi0, double t) const;

 private:
  HamiltonianSpec spec_;
  ComplexMatrix h_;
  Eigen::VectorXd energies_;
  ComplexMatrix modes_;
};

/// Process-wide cached propagator for the spec.
std::shared_ptr<const Propagator> propagator_for(const HamiltonianSpec& spec);

/// exp(-i H t)|psi0> using the cached decomposition.
QuantumState evolve(const QuantumState& psi0, const HamiltonianSpec& spec, double t);

/// (|0> + |1>)^{(x)N} / 2^{N/2}.
QuantumState plus_state(int n);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> q_values;
  /// First grid time with Q > N - 2, the genuine-entanglement threshold (1 for
  /// three qubits).
  std::optional<double> t_c;
};

/// Uniform grid 0, dt, 2 dt, ... up to t_max (inclusive within dt/2).
std::vector<double> time_grid(double t_max, double dt);

/// Q(t) from the |+>^N initial state. Every time point gets fresh restarts
/// (evaluated concurrently); a sequential pass then refines each point from
/// the previous point's optimum and keeps the better value.
Trajectory q_trajectory(const HamiltonianSpec& spec, const std::vector<double>& t_grid,
                        const OptimizerConfig& optimizer, unsigned threads = 0);

/// CSV `t,q` followed by `# t_c=<value>` (or `# t_c=none`).
std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& metadata = {});

}  // namespace qsep
