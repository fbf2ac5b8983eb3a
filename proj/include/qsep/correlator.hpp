#pragma once

#include <numbers>
#include <vector>

#include "qsep/quantum_state.hpp"

namespace qsep {

/// Bloch direction of the local "up" state
///   |0~> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>,
/// with |1~> = -e^{-i phi} sin(theta/2)|0> + cos(theta/2)|1> its orthogonal
/// complement. Only the direction matters for |C|; basis phases drop out.
struct BlochDirection {
  double theta = 0.0;
  double phi = 0.0;

  static BlochDirection x() { return {std::numbers::pi / 2, 0.0}; }
  static BlochDirection y() { return {std::numbers::pi / 2, std::numbers::pi / 2}; }
  static BlochDirection z() { return {0.0, 0.0}; }

  /// Direction of a (not necessarily normalized) Bloch vector, with theta in
  /// [0, pi] and phi in [0, 2 pi).
  static BlochDirection from_vector(const Eigen::Vector3d& n);
  /// Maps arbitrary angles onto the canonical ranges without changing the
  /// direction.
  BlochDirection canonical() const;

  Eigen::Vector3d vector() const;
  Eigen::Vector2cd up() const;
  Eigen::Vector2cd down() const;
};

struct ProductBasis {
  std::vector<BlochDirection> directions;

  static ProductBasis uniform(int n, BlochDirection d) {
    return {std::vector<BlochDirection>(static_cast<std::size_t>(n), d)};
  }
  int size() const { return static_cast<int>(directions.size()); }
};

/// C = <0~|^{(x)N} rho |1~>^{(x)N}. |C| <= 1/2 for every state and basis.
Complex coherence_element(const QuantumState& state, const ProductBasis& basis);

/// Q = N + log4 |C|^2 in the given basis; kNoCoherence when C = 0.
double q_fixed_basis(const QuantumState& state, const ProductBasis& basis);

/// Q from a coherence modulus.
double q_from_modulus(int n_qubits, double modulus);

/// 2x2 operator M_k with C = <0~_k| M_k |1~_k> when every qubit except k is
/// held at its basis direction.
Eigen::Matrix2cd reduced_coherence_operator(const QuantumState& state, const ProductBasis& basis,
                                            int qubit);

struct LocalOptimum {
  BlochDirection direction;
  double modulus;
};

/// Exact maximizer of |<0~|M|1~>| over single-qubit directions.
///
/// Writing M = m0 I + m.sigma with m = p + i q (p, q real), the squared
/// modulus as a function of the Bloch unit vector n of |0~> is
///   |p|^2 + |q|^2 - n^T (p p^T + q q^T) n + 2 (p x q).n,
/// so the maximizer solves a trust-region subproblem on the unit sphere.
LocalOptimum best_local_direction(const Eigen::Matrix2cd& m);

}  // namespace qsep
