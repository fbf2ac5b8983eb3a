#include "qsep/dynamics.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <sstream>

#include "qsep/error.hpp"
#include "qsep/format.hpp"
#include "qsep/parallel.hpp"

namespace qsep {

std::string_view to_string(HamiltonianKind k) { return k == HamiltonianKind::OAT ? "oat" : "tact"; }

std::optional<HamiltonianKind> parse_hamiltonian_kind(std::string_view name) {
  if (name == "oat" || name == "OAT") return HamiltonianKind::OAT;
  if (name == "tact" || name == "TACT") return HamiltonianKind::TACT;
  return std::nullopt;
}

ComplexMatrix hamiltonian(const HamiltonianSpec& spec) {
  const int n = spec.n_qubits;
  if (n < 2) throw Error(ErrorKind::BadN, "Hamiltonians need n >= 2");
  if (n > kDynamicsQubitCap) {
    std::ostringstream os;
    os << "n = " << n << " exceeds the dynamics cap of " << kDynamicsQubitCap << " qubits";
    throw Error(ErrorKind::CapExceeded, os.str());
  }
  const auto dim = static_cast<Eigen::Index>(dim_of(n));
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  auto bit = [n](Eigen::Index s, int q) { return (s >> (n - 1 - q)) & 1; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      for (Eigen::Index s = 0; s < dim; ++s) {
        h(s, s) += bit(s, i) == bit(s, j) ? 1.0 : -1.0;
        if (spec.kind == HamiltonianKind::TACT) {
          const Eigen::Index flipped = s ^ (Eigen::Index{1} << (n - 1 - i)) ^ (Eigen::Index{1} << (n - 1 - j));
          h(flipped, s) -= 1.0;
        }
      }
    }
  return h;
}

Propagator::Propagator(const HamiltonianSpec& spec) : spec_(spec), h_(qsep::hamiltonian(spec)) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h_);
  energies_ = es.eigenvalues();
  modes_ = es.eigenvectors();
}

QuantumState Propagator::evolve(const QuantumState& psi0, double t) const {
  if (!psi0.is_pure() || psi0.n_qubits() != spec_.n_qubits)
    throw Error(ErrorKind::DimensionMismatch, "evolution needs a pure state of the Hamiltonian's size");
  ComplexVector c = modes_.adjoint() * psi0.amplitudes();
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -energies_(k) * t);
  return QuantumState::pure(modes_ * c);
}

std::shared_ptr<const Propagator> propagator_for(const HamiltonianSpec& spec) {
  static std::mutex mutex;
  static std::map<HamiltonianSpec, std::shared_ptr<const Propagator>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[spec];
  if (!slot) slot = std::make_shared<const Propagator>(spec);
  return slot;
}

QuantumState evolve(const QuantumState& psi0, const HamiltonianSpec& spec, double t) {
  return propagator_for(spec)->evolve(psi0, t);
}

QuantumState plus_state(int n) {
  if (n < 1) throw Error(ErrorKind::BadN, "plus_state needs n >= 1");
  const auto dim = static_cast<Eigen::Index>(dim_of(n));
  return QuantumState::pure(ComplexVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

std::vector<double> time_grid(double t_max, double dt) {
  if (!(dt > 0.0) || !(t_max >= 0.0) || !std::isfinite(t_max))
    throw Error(ErrorKind::BadConfig, "time grid needs dt > 0 and a finite t_max >= 0");
  const auto steps = static_cast<long>(std::floor(t_max / dt + 0.5));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k) out.push_back(k * dt);
  return out;
}

Trajectory q_trajectory(const HamiltonianSpec& spec, const std::vector<double>& t_grid,
                        const OptimizerConfig& optimizer, unsigned threads) {
  optimizer.validate();
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw Error(ErrorKind::BadConfig, "time grid must be strictly increasing");
  const auto prop = propagator_for(spec);
  const QuantumState psi0 = plus_state(spec.n_qubits);

  std::vector<QuantumState> states;
  states.reserve(t_grid.size());
  for (double t : t_grid) states.push_back(prop->evolve(psi0, t));

  std::vector<CorrelatorResult> fresh(t_grid.size());
  parallel_for(t_grid.size(), threads, [&](std::size_t i) { fresh[i] = optimize_q(states[i], optimizer); });

  Trajectory traj;
  traj.times = t_grid;
  traj.q_values.resize(t_grid.size());
  OptimizerConfig warm_cfg = optimizer;
  warm_cfg.restarts = 1;
  const double threshold = spec.n_qubits - 2.0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    CorrelatorResult best = fresh[i];
    if (i > 0) {
      const ProductBasis& prev = fresh[i - 1].basis;
      CorrelatorResult warm = optimize_q(states[i], warm_cfg, prev);
      if (warm.coherence_modulus > best.coherence_modulus) best = std::move(warm);
      fresh[i] = best;
    }
    traj.q_values[i] = best.q;
    if (!traj.t_c && best.q > threshold) traj.t_c = t_grid[i];
  }
  return traj;
}

std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& metadata) {
  std::ostringstream os;
  for (const auto& m : metadata) os << "# " << m << '\n';
  os << "t,q\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    os << format_real(traj.times[i]) << ',' << format_real(traj.q_values[i]) << '\n';
  os << "# t_c=" << (traj.t_c ? format_real(*traj.t_c) : std::string("none")) << '\n';
  return os.str();
}

}  // namespace qsep
