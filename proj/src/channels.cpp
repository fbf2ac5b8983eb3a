#include "qsep/channels.hpp"

#include <cmath>
#include <sstream>

#include "qsep/error.hpp"
#include "qsep/format.hpp"
#include "qsep/parallel.hpp"

namespace qsep {

std::string_view to_string(ChannelKind k) {
  return k == ChannelKind::Depolarizing ? "depolarizing" : "dephasing";
}

std::optional<ChannelKind> parse_channel_kind(std::string_view name) {
  if (name == "depolarizing") return ChannelKind::Depolarizing;
  if (name == "dephasing") return ChannelKind::Dephasing;
  return std::nullopt;
}

namespace {

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "noise strength p = " << p << " outside [0, 1]";
    throw Error(ErrorKind::BadP, os.str());
  }
}

}  // namespace

QuantumState depolarize(const QuantumState& state, double p) {
  check_p(p);
  ComplexMatrix rho = (1.0 - p) * state.to_density();
  rho.diagonal().array() += p / static_cast<double>(state.dim());
  return QuantumState::mixed_unchecked(std::move(rho));
}

QuantumState dephase(const QuantumState& state, double p, int qubit) {
  check_p(p);
  const int n = state.n_qubits();
  if (qubit < 0 || qubit >= n) {
    std::ostringstream os;
    os << "qubit " << qubit << " outside a " << n << "-qubit state";
    throw Error(ErrorKind::IndexOutOfRange, os.str());
  }
  // Z_k rho Z_k flips the sign of elements whose row and column differ in
  // bit k, so those are scaled by 1 - p and the rest are untouched.
  ComplexMatrix rho = state.to_density();
  const Eigen::Index mask = Eigen::Index{1} << (n - 1 - qubit);
  for (Eigen::Index c = 0; c < rho.cols(); ++c)
    for (Eigen::Index r = 0; r < rho.rows(); ++r)
      if (((r ^ c) & mask) != 0) rho(r, c) *= 1.0 - p;
  return QuantumState::mixed_unchecked(std::move(rho));
}

std::vector<NoisePoint> noise_sweep(const QuantumState& state, ChannelKind kind, const std::vector<double>& p_grid,
                                    const OptimizerConfig& optimizer, unsigned threads) {
  optimizer.validate();
  for (double p : p_grid) check_p(p);
  const ProductBasis warm = optimize_q(state, optimizer).basis;
  std::vector<NoisePoint> out(p_grid.size());
  parallel_for(p_grid.size(), threads, [&](std::size_t i) {
    const double p = p_grid[i];
    NoisePoint pt{p, 0.0, 0.0, 0.0};
    if (kind == ChannelKind::Depolarizing) {
      const double q = optimize_q(depolarize(state, p), optimizer, warm).q;
      pt.q_min = pt.q_mean = pt.q_max = q;
    } else {
      const int n = state.n_qubits();
      double lo = 0.0, hi = 0.0, sum = 0.0;
      for (int k = 0; k < n; ++k) {
        const double q = optimize_q(dephase(state, p, k), optimizer, warm).q;
        lo = k == 0 ? q : std::min(lo, q);
        hi = k == 0 ? q : std::max(hi, q);
        sum += q;
      }
      pt.q_min = lo;
      pt.q_max = hi;
      pt.q_mean = sum / n;
    }
    out[i] = pt;
  });
  return out;
}

std::string noise_csv(const std::vector<NoisePoint>& curve, ChannelKind kind, std::string_view state_label,
                      const std::vector<std::string>& metadata) {
  std::ostringstream os;
  for (const auto& m : metadata) os << "# " << m << '\n';
  os << "p,q_min,q_mean,q_max,channel,state_label\n";
  for (const auto& pt : curve)
    os << format_real(pt.p) << ',' << format_real(pt.q_min) << ',' << format_real(pt.q_mean) << ','
       << format_real(pt.q_max) << ',' << to_string(kind) << ',' << state_label << '\n';
  return os.str();
}

}  // namespace qsep
