#include "qsep/correlator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsep/error.hpp"

namespace qsep {

BlochDirection BlochDirection::from_vector(const Eigen::Vector3d& n) {
  const double r = n.norm();
  if (!(r > 0.0)) return z();
  const double ct = std::clamp(n.z() / r, -1.0, 1.0);
  double phi = std::atan2(n.y(), n.x());
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  return {std::acos(ct), phi};
}

BlochDirection BlochDirection::canonical() const { return from_vector(vector()); }

Eigen::Vector3d BlochDirection::vector() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Eigen::Vector2cd BlochDirection::up() const {
  const Complex e = std::polar(1.0, phi);
  return {Complex(std::cos(theta / 2), 0.0), e * std::sin(theta / 2)};
}

Eigen::Vector2cd BlochDirection::down() const {
  const Complex e = std::polar(1.0, -phi);
  return {-e * std::sin(theta / 2), Complex(std::cos(theta / 2), 0.0)};
}

namespace {

void check_basis(const QuantumState& state, const ProductBasis& basis) {
  if (basis.size() != state.n_qubits()) {
    std::ostringstream os;
    os << "basis has " << basis.size() << " directions for a " << state.n_qubits() << "-qubit state";
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

// Product vector k_0 (x) k_1 (x) ... with qubit 0 most significant; `open`
// replaces that qubit's ket by the computational basis vector |open_bit>.
template <typename KetOf>
ComplexVector product_vector(int n, KetOf&& ket_of, int open = -1, int open_bit = 0) {
  ComplexVector out(static_cast<Eigen::Index>(dim_of(n)));
  out(0) = 1.0;
  Eigen::Index len = 1;
  for (int q = 0; q < n; ++q) {
    Eigen::Vector2cd k;
    if (q == open) {
      k = open_bit == 0 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
    } else {
      k = ket_of(q);
    }
    for (Eigen::Index i = len - 1; i >= 0; --i) {
      const Complex v = out(i);
      out(2 * i) = v * k(0);
      out(2 * i + 1) = v * k(1);
    }
    len *= 2;
  }
  return out;
}

}  // namespace

Complex coherence_element(const QuantumState& state, const ProductBasis& basis) {
  check_basis(state, basis);
  const int n = state.n_qubits();
  const auto& dirs = basis.directions;
  const ComplexVector u = product_vector(n, [&](int q) { return dirs[static_cast<std::size_t>(q)].up(); });
  const ComplexVector v = product_vector(n, [&](int q) { return dirs[static_cast<std::size_t>(q)].down(); });
  if (state.is_pure()) {
    const ComplexVector& psi = state.amplitudes();
    return u.dot(psi) * std::conj(v.dot(psi));
  }
  return u.dot(state.density() * v);
}

double q_from_modulus(int n_qubits, double modulus) {
  // Rounding leaves |C| ~ 1e-17 on states with no coherence at all.
  if (!(modulus > kCoherenceFloor)) return kNoCoherence;
  return n_qubits + 2.0 * std::log(modulus) / std::log(4.0);
}

double q_fixed_basis(const QuantumState& state, const ProductBasis& basis) {
  return q_from_modulus(state.n_qubits(), std::abs(coherence_element(state, basis)));
}

Eigen::Matrix2cd reduced_coherence_operator(const QuantumState& state, const ProductBasis& basis,
                                            int qubit) {
  check_basis(state, basis);
  const int n = state.n_qubits();
  if (qubit < 0 || qubit >= n) throw Error(ErrorKind::IndexOutOfRange, "qubit outside the state");
  const auto& dirs = basis.directions;
  auto up = [&](int q) { return dirs[static_cast<std::size_t>(q)].up(); };
  auto down = [&](int q) { return dirs[static_cast<std::size_t>(q)].down(); };
  Eigen::Matrix2cd m;
  if (state.is_pure()) {
    const ComplexVector& psi = state.amplitudes();
    Eigen::Vector2cd a;
    Eigen::Vector2cd b;
    for (int bit = 0; bit < 2; ++bit) {
      a(bit) = product_vector(n, up, qubit, bit).dot(psi);
      b(bit) = product_vector(n, down, qubit, bit).dot(psi);
    }
    m = a * b.adjoint();
  } else {
    const ComplexMatrix& rho = state.density();
    for (int c = 0; c < 2; ++c) {
      const ComplexVector rv = rho * product_vector(n, down, qubit, c);
      for (int r = 0; r < 2; ++r) m(r, c) = product_vector(n, up, qubit, r).dot(rv);
    }
  }
  return m;
}

LocalOptimum best_local_direction(const Eigen::Matrix2cd& m) {
  // Pauli components of M.
  const Complex i1(0.0, 1.0);
  const Eigen::Vector3cd mv((m(0, 1) + m(1, 0)) / 2.0, i1 * (m(0, 1) - m(1, 0)) / 2.0,
                            (m(0, 0) - m(1, 1)) / 2.0);
  const Eigen::Vector3d p = mv.real();
  const Eigen::Vector3d q = mv.imag();
  const double k = p.squaredNorm() + q.squaredNorm();
  const Eigen::Matrix3d s = p * p.transpose() + q * q.transpose();
  const Eigen::Vector3d c = p.cross(q);
  auto value = [&](const Eigen::Vector3d& n) { return k - n.dot(s * n) + 2.0 * c.dot(n); };

  const double scale = std::max(k, 1e-300);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(s);
  const Eigen::Vector3d lam = es.eigenvalues();
  const Eigen::Matrix3d vecs = es.eigenvectors();
  const Eigen::Vector3d d = vecs.transpose() * c;
  const double cnorm = c.norm();

  Eigen::Vector3d best = vecs.col(0);
  if (cnorm > 1e-14 * scale) {
    // Minimize n^T S n - 2 c.n on |n| = 1: n(mu) = (S - mu I)^{-1} c with
    // mu <= lambda_min. Components in the lambda_min eigenspace with
    // negligible weight put us in the "hard case".
    const double degenerate = 1e-12 * scale;
    const double tiny = 1e-13 * cnorm;
    bool hard = true;
    for (int i = 0; i < 3; ++i)
      if (lam(i) - lam(0) <= degenerate && std::abs(d(i)) > tiny) hard = false;

    auto norm2_at = [&](double mu) {
      double acc = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double gap = lam(i) - mu;
        if (gap > 0.0) acc += d(i) * d(i) / (gap * gap);
      }
      return acc;
    };
    Eigen::Vector3d y = Eigen::Vector3d::Zero();
    bool solved = false;
    if (hard) {
      double rest = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double gap = lam(i) - lam(0);
        if (gap > degenerate) {
          y(i) = d(i) / gap;
          rest += y(i) * y(i);
        }
      }
      if (rest <= 1.0) {
        y(0) = std::sqrt(1.0 - rest);
        solved = true;
      }
    }
    if (!solved) {
      // Secular equation |n(mu)| = 1 on (lambda_min - |c|, lambda_min).
      double lo = lam(0) - cnorm;
      double hi = lam(0);
      double mu = lo;
      for (int it = 0; it < 200; ++it) {
        const double n2 = norm2_at(mu);
        // Newton on 1/|n(mu)| - 1, which is concave and decreasing in mu.
        double deriv = 0.0;
        for (int i = 0; i < 3; ++i) {
          const double gap = lam(i) - mu;
          if (gap > 0.0) deriv += d(i) * d(i) / (gap * gap * gap);
        }
        if (n2 > 1.0) hi = mu; else lo = mu;
        const double phi = 1.0 / std::sqrt(n2) - 1.0;
        const double dphi = -deriv / (n2 * std::sqrt(n2));
        double next = (dphi != 0.0 && std::isfinite(phi)) ? mu - phi / dphi : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - mu) <= 1e-16 * std::max(1.0, std::abs(mu)) || hi - lo <= 1e-17 * scale) {
          mu = next;
          break;
        }
        mu = next;
      }
      for (int i = 0; i < 3; ++i) {
        const double gap = lam(i) - mu;
        y(i) = gap > 0.0 ? d(i) / gap : 0.0;
      }
    }
    best = vecs * y;
    if (best.norm() == 0.0) best = vecs.col(0);
    best.normalize();
    // The secular root is exact up to rounding; compare against the axis
    // candidates so a degenerate spectrum can never return a worse point.
    for (const Eigen::Vector3d& cand : {Eigen::Vector3d(c / cnorm), Eigen::Vector3d(vecs.col(0))})
      if (value(cand) > value(best)) best = cand;
  }
  return {BlochDirection::from_vector(best), std::sqrt(std::max(value(best), 0.0))};
}

}  // namespace qsep
