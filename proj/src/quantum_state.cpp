#include "qsep/quantum_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "qsep/error.hpp"

namespace qsep {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorKind::NormViolation: return "NormViolation";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptyRemainder: return "EmptyRemainder";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::BadLabel: return "BadLabel";
    case ErrorKind::BadN: return "BadN";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::BadP: return "BadP";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::BinMismatch: return "BinMismatch";
    case ErrorKind::DegenerateOrbit: return "DegenerateOrbit";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kRenormalizeLimit = 1e-6;
constexpr double kHermitianTolerance = 1e-10;
constexpr double kTraceTolerance = 1e-10;
constexpr double kPsdTolerance = 1e-8;

int qubits_for_dimension(Eigen::Index dim, int max_qubits) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::size_t>(dim))) {
    std::ostringstream os;
    os << "dimension " << dim << " is not a power of two >= 2";
    throw Error(ErrorKind::NotPowerOfTwo, os.str());
  }
  const int n = std::countr_zero(static_cast<std::size_t>(dim));
  if (n > max_qubits) {
    std::ostringstream os;
    os << n << " qubits exceeds the cap of " << max_qubits;
    throw Error(ErrorKind::CapExceeded, os.str());
  }
  return n;
}

}  // namespace

QuantumState QuantumState::pure(ComplexVector amplitudes, int max_qubits) {
  const int n = qubits_for_dimension(amplitudes.size(), max_qubits);
  const double norm2 = amplitudes.squaredNorm();
  if (!std::isfinite(norm2)) throw Error(ErrorKind::NormViolation, "non-finite amplitudes");
  const double deviation = std::abs(std::sqrt(norm2) - 1.0);
  if (deviation >= kRenormalizeLimit) {
    std::ostringstream os;
    os << "norm " << std::sqrt(norm2) << " deviates from 1 by " << deviation;
    throw Error(ErrorKind::NormViolation, os.str());
  }
  if (std::abs(norm2 - 1.0) > kNormTolerance) amplitudes /= std::sqrt(norm2);
  return QuantumState(n, std::move(amplitudes));
}

StateDiagnostics diagnose(const ComplexMatrix& rho) {
  StateDiagnostics d{};
  d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

QuantumState QuantumState::mixed(ComplexMatrix rho, int max_qubits) {
  if (rho.rows() != rho.cols()) {
    std::ostringstream os;
    os << "matrix is " << rho.rows() << "x" << rho.cols();
    throw Error(ErrorKind::NotSquare, os.str());
  }
  const int n = qubits_for_dimension(rho.rows(), max_qubits);
  if (!rho.allFinite()) throw Error(ErrorKind::NotHermitian, "non-finite entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTolerance) {
    std::ostringstream os;
    os << "max |rho - rho^dagger| = " << herm;
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTolerance) {
    std::ostringstream os;
    os << "trace = " << tr.real() << (tr.imag() < 0 ? "" : "+") << tr.imag() << "i";
    throw Error(ErrorKind::TraceNotOne, os.str());
  }
  // rho + eps*I is positive definite iff every eigenvalue of rho exceeds -eps.
  ComplexMatrix shifted = 0.5 * (rho + rho.adjoint());
  shifted.diagonal().array() += kPsdTolerance;
  Eigen::LLT<ComplexMatrix> llt(shifted);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(shifted, Eigen::EigenvaluesOnly);
    std::ostringstream os;
    os << "smallest eigenvalue " << es.eigenvalues().minCoeff() - kPsdTolerance << " < -"
       << kPsdTolerance;
    throw Error(ErrorKind::NotPositive, os.str());
  }
  return QuantumState(n, std::move(rho));
}

QuantumState QuantumState::mixed_unchecked(ComplexMatrix rho) {
  const int n = std::countr_zero(static_cast<std::size_t>(rho.rows()));
  return QuantumState(n, std::move(rho));
}

const ComplexVector& QuantumState::amplitudes() const {
  if (const auto* v = std::get_if<ComplexVector>(&payload_)) return *v;
  throw Error(ErrorKind::DimensionMismatch, "amplitudes requested from a mixed state");
}

const ComplexMatrix& QuantumState::density() const {
  if (const auto* m = std::get_if<ComplexMatrix>(&payload_)) return *m;
  throw Error(ErrorKind::DimensionMismatch, "stored density requested from a pure state");
}

ComplexMatrix QuantumState::to_density() const {
  if (const auto* v = std::get_if<ComplexVector>(&payload_)) return (*v) * v->adjoint();
  return std::get<ComplexMatrix>(payload_);
}

QuantumState new_pure(ComplexVector amplitudes) { return QuantumState::pure(std::move(amplitudes)); }
QuantumState new_mixed(ComplexMatrix rho) { return QuantumState::mixed(std::move(rho)); }
ComplexMatrix to_density(const QuantumState& state) { return state.to_density(); }

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

QuantumState tensor(const QuantumState& a, const QuantumState& b, int max_qubits) {
  const int n = a.n_qubits() + b.n_qubits();
  if (n > max_qubits) {
    std::ostringstream os;
    os << n << " qubits exceeds the cap of " << max_qubits;
    throw Error(ErrorKind::CapExceeded, os.str());
  }
  if (a.is_pure() && b.is_pure())
    return QuantumState::pure(kron(a.amplitudes(), b.amplitudes()), max_qubits);
  return QuantumState::mixed_unchecked(kron(a.to_density(), b.to_density()));
}

QuantumState partial_trace(const QuantumState& state, std::span<const int> discard) {
  const int n = state.n_qubits();
  std::vector<bool> dropped(static_cast<std::size_t>(n), false);
  for (int q : discard) {
    if (q < 0 || q >= n) {
      std::ostringstream os;
      os << "qubit " << q << " not in [0, " << n << ")";
      throw Error(ErrorKind::IndexOutOfRange, os.str());
    }
    dropped[static_cast<std::size_t>(q)] = true;
  }
  std::vector<int> keep;
  std::vector<int> gone;
  for (int q = 0; q < n; ++q) (dropped[static_cast<std::size_t>(q)] ? gone : keep).push_back(q);
  if (gone.empty()) throw Error(ErrorKind::EmptyRemainder, "nothing to discard");
  if (keep.empty()) throw Error(ErrorKind::EmptyRemainder, "all qubits discarded");

  const int nk = static_cast<int>(keep.size());
  const int ng = static_cast<int>(gone.size());
  const std::size_t dk = dim_of(nk);
  const std::size_t dg = dim_of(ng);
  // full index of (kept index r, discarded index s); qubit q sits at bit n-1-q.
  auto full_index = [&](std::size_t r, std::size_t s) {
    std::size_t idx = 0;
    for (int k = 0; k < nk; ++k)
      if ((r >> (nk - 1 - k)) & 1U) idx |= std::size_t{1} << (n - 1 - keep[static_cast<std::size_t>(k)]);
    for (int g = 0; g < ng; ++g)
      if ((s >> (ng - 1 - g)) & 1U) idx |= std::size_t{1} << (n - 1 - gone[static_cast<std::size_t>(g)]);
    return idx;
  };

  ComplexMatrix reduced = ComplexMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  if (state.is_pure()) {
    const ComplexVector& psi = state.amplitudes();
    ComplexMatrix m(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dg));
    for (std::size_t r = 0; r < dk; ++r)
      for (std::size_t s = 0; s < dg; ++s)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) =
            psi(static_cast<Eigen::Index>(full_index(r, s)));
    reduced = m * m.adjoint();
  } else {
    const ComplexMatrix& rho = state.density();
    for (std::size_t r = 0; r < dk; ++r)
      for (std::size_t c = 0; c < dk; ++c) {
        Complex acc = 0.0;
        for (std::size_t s = 0; s < dg; ++s)
          acc += rho(static_cast<Eigen::Index>(full_index(r, s)),
                     static_cast<Eigen::Index>(full_index(c, s)));
        reduced(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
      }
  }
  return QuantumState::mixed_unchecked(std::move(reduced));
}

QuantumState partial_trace(const QuantumState& state, std::initializer_list<int> discard) {
  return partial_trace(state, std::span<const int>(discard.begin(), discard.size()));
}

QuantumState convex_mix(std::span<const QuantumState> states, std::span<const double> weights) {
  if (states.empty() || states.size() != weights.size())
    throw Error(ErrorKind::DimensionMismatch, "need one weight per state");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorKind::BadWeights, "negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "weights sum to " << total;
    throw Error(ErrorKind::BadWeights, os.str());
  }
  const int n = states.front().n_qubits();
  ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_of(n)),
                                          static_cast<Eigen::Index>(dim_of(n)));
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].n_qubits() != n)
      throw Error(ErrorKind::DimensionMismatch, "states have different qubit counts");
    if (weights[i] == 0.0) continue;
    if (states[i].is_pure()) {
      const ComplexVector& v = states[i].amplitudes();
      rho.noalias() += weights[i] * (v * v.adjoint());
    } else {
      rho += weights[i] * states[i].density();
    }
  }
  return QuantumState::mixed_unchecked(std::move(rho));
}

ComplexVector apply_local(const ComplexVector& psi, std::span<const Eigen::Matrix2cd> ops) {
  const auto dim = static_cast<std::size_t>(psi.size());
  const int n = std::countr_zero(dim);
  if (static_cast<int>(ops.size()) != n)
    throw Error(ErrorKind::DimensionMismatch, "one local operator per qubit required");
  ComplexVector out = psi;
  for (int q = 0; q < n; ++q) {
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    const Eigen::Matrix2cd& op = ops[static_cast<std::size_t>(q)];
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & stride) continue;
      const auto i0 = static_cast<Eigen::Index>(i);
      const auto i1 = static_cast<Eigen::Index>(i | stride);
      const Complex a = out(i0);
      const Complex b = out(i1);
      out(i0) = op(0, 0) * a + op(0, 1) * b;
      out(i1) = op(1, 0) * a + op(1, 1) * b;
    }
  }
  return out;
}

QuantumState apply_local(const QuantumState& state, std::span<const Eigen::Matrix2cd> ops) {
  if (static_cast<int>(ops.size()) != state.n_qubits())
    throw Error(ErrorKind::DimensionMismatch, "one local operator per qubit required");
  if (state.is_pure()) {
    ComplexVector out = apply_local(state.amplitudes(), ops);
    const double norm = out.norm();
    if (!(norm > 1e-12)) throw Error(ErrorKind::DegenerateOrbit, "local operators annihilate the state");
    out /= norm;
    return QuantumState::pure(std::move(out));
  }
  // O rho O^dagger: apply O to every column, then to every column of the adjoint.
  const ComplexMatrix& rho = state.density();
  ComplexMatrix left(rho.rows(), rho.cols());
  for (Eigen::Index c = 0; c < rho.cols(); ++c) left.col(c) = apply_local(ComplexVector(rho.col(c)), ops);
  ComplexMatrix left_adj = left.adjoint();
  ComplexMatrix out(rho.rows(), rho.cols());
  for (Eigen::Index c = 0; c < rho.cols(); ++c) out.col(c) = apply_local(ComplexVector(left_adj.col(c)), ops);
  const Complex tr = out.trace();
  if (!(std::abs(tr) > 1e-12)) throw Error(ErrorKind::DegenerateOrbit, "local operators annihilate the state");
  out /= tr.real();
  out = 0.5 * (out + out.adjoint()).eval();
  return QuantumState::mixed_unchecked(std::move(out));
}

}  // namespace qsep
