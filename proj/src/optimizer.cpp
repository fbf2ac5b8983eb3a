#include "qsep/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsep/error.hpp"
#include "qsep/nelder_mead.hpp"
#include "qsep/rng.hpp"

namespace qsep {

std::string_view to_string(OptimizerMethod m) {
  switch (m) {
    case OptimizerMethod::GridOracle: return "grid_oracle";
    case OptimizerMethod::MultistartLocal: return "multistart_local";
    case OptimizerMethod::CoordinateAscent: return "coordinate_ascent";
  }
  return "unknown";
}

std::optional<OptimizerMethod> parse_optimizer_method(std::string_view name) {
  if (name == "grid" || name == "grid_oracle") return OptimizerMethod::GridOracle;
  if (name == "multistart" || name == "multistart_local") return OptimizerMethod::MultistartLocal;
  if (name == "coordinate" || name == "coordinate_ascent") return OptimizerMethod::CoordinateAscent;
  return std::nullopt;
}

void OptimizerConfig::validate() const {
  std::ostringstream os;
  if (restarts < 1) os << "restarts must be >= 1; ";
  if (!(tolerance > 0.0)) os << "tolerance must be > 0; ";
  if (grid_points_per_angle < 2) os << "grid_points_per_angle must be >= 2; ";
  if (max_iterations < 1) os << "max_iterations must be >= 1; ";
  const std::string msg = os.str();
  if (!msg.empty()) throw Error(ErrorKind::BadConfig, msg.substr(0, msg.size() - 2));
}

namespace {

using Angles = std::vector<double>;

// |C| as a function of the 2N angles (theta_0, phi_0, theta_1, ...). Holds
// scratch buffers, so each thread needs its own instance.
class CoherenceObjective {
 public:
  explicit CoherenceObjective(const QuantumState& state)
      : state_(state), n_(state.n_qubits()), u_(static_cast<Eigen::Index>(state.dim())),
        v_(static_cast<Eigen::Index>(state.dim())) {}

  int n_qubits() const { return n_; }

  double modulus(const Angles& x) {
    build(x);
    if (state_.is_pure()) {
      const ComplexVector& psi = state_.amplitudes();
      return std::abs(u_.dot(psi)) * std::abs(v_.dot(psi));
    }
    return std::abs(u_.dot(state_.density() * v_));
  }

 private:
  void build(const Angles& x) {
    u_(0) = 1.0;
    v_(0) = 1.0;
    Eigen::Index len = 1;
    for (int q = 0; q < n_; ++q) {
      const BlochDirection d{x[2 * static_cast<std::size_t>(q)], x[2 * static_cast<std::size_t>(q) + 1]};
      const Eigen::Vector2cd a = d.up();
      const Eigen::Vector2cd b = d.down();
      for (Eigen::Index i = len - 1; i >= 0; --i) {
        const Complex ui = u_(i);
        const Complex vi = v_(i);
        u_(2 * i) = ui * a(0);
        u_(2 * i + 1) = ui * a(1);
        v_(2 * i) = vi * b(0);
        v_(2 * i + 1) = vi * b(1);
      }
      len *= 2;
    }
  }

  const QuantumState& state_;
  int n_;
  ComplexVector u_;
  ComplexVector v_;
};

Angles to_angles(const ProductBasis& b) {
  Angles x;
  x.reserve(2 * b.directions.size());
  for (const auto& d : b.directions) {
    x.push_back(d.theta);
    x.push_back(d.phi);
  }
  return x;
}

ProductBasis to_basis(const Angles& x) {
  ProductBasis b;
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) b.directions.push_back(BlochDirection{x[i], x[i + 1]}.canonical());
  return b;
}

ProductBasis random_basis(int n, Rng& rng) {
  ProductBasis b;
  for (int q = 0; q < n; ++q) {
    const double theta = std::acos(1.0 - 2.0 * rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    b.directions.push_back({theta, phi});
  }
  return b;
}

struct Candidate {
  ProductBasis basis;
  double modulus = -1.0;
  bool converged = false;
};

// Nelder-Mead on -|C|, restarted from its own optimum until a restart gains
// less than the tolerance.
Candidate nelder_mead_search(CoherenceObjective& obj, const ProductBasis& start,
                             const OptimizerConfig& cfg, double step) {
  const auto f = [&obj](const Angles& x) { return -obj.modulus(x); };
  NelderMeadOptions opts;
  opts.initial_step = step;
  opts.f_tolerance = 0.1 * cfg.tolerance;
  opts.x_tolerance = 1e-7;
  opts.max_iterations = cfg.max_iterations * 2 * obj.n_qubits();
  NelderMeadResult r = nelder_mead(f, to_angles(start), opts);
  bool converged = r.converged;
  for (int round = 0; round < 4; ++round) {
    opts.initial_step = 0.05;
    NelderMeadResult again = nelder_mead(f, r.x, opts);
    const double gain = r.value - again.value;
    if (again.value <= r.value) r = again;
    converged = again.converged;
    if (gain < cfg.tolerance) break;
  }
  return {to_basis(r.x), -r.value, converged};
}

Candidate coordinate_search(const QuantumState& state, CoherenceObjective& obj, ProductBasis basis,
                            const OptimizerConfig& cfg) {
  const int n = state.n_qubits();
  double current = obj.modulus(to_angles(basis));
  for (int sweep = 0; sweep < cfg.max_iterations; ++sweep) {
    for (int k = 0; k < n; ++k) {
      const LocalOptimum lo = best_local_direction(reduced_coherence_operator(state, basis, k));
      basis.directions[static_cast<std::size_t>(k)] = lo.direction;
    }
    const double next = obj.modulus(to_angles(basis));
    const double gain = next - current;
    current = std::max(current, next);
    if (gain < cfg.tolerance) return {basis, current, true};
  }
  return {basis, current, false};
}

// Exhaustive enumeration of grid directions with the contraction shared
// across prefixes, keeping the best few mutually non-adjacent cells.
class GridSearch {
 public:
  GridSearch(const QuantumState& state, int points) : state_(state), n_(state.n_qubits()), g_(points) {
    for (int i = 0; i < g_; ++i) {
      const double theta = std::numbers::pi * i / (g_ - 1);
      const bool pole = i == 0 || i == g_ - 1;
      for (int j = 0; j < (pole ? 1 : g_); ++j) {
        const BlochDirection d{theta, 2.0 * std::numbers::pi * j / g_};
        cells_.push_back({d, d.up().conjugate(), d.down().conjugate(), i, j});
      }
    }
    choice_.assign(static_cast<std::size_t>(n_), 0);
  }

  std::vector<ProductBasis> best(std::size_t keep) {
    keep_ = keep;
    if (state_.is_pure()) {
      const ComplexVector& psi = state_.amplitudes();
      descend_pure(0, psi, psi);
    } else {
      descend_mixed(0, state_.density());
    }
    std::vector<ProductBasis> out;
    for (const auto& e : top_) {
      ProductBasis b;
      for (int c : e.cells) b.directions.push_back(cells_[static_cast<std::size_t>(c)].dir);
      out.push_back(std::move(b));
    }
    return out;
  }

 private:
  struct Cell {
    BlochDirection dir;
    Eigen::Vector2cd up_conj;
    Eigen::Vector2cd down_conj;
    int ti;
    int pj;
  };
  struct Entry {
    double value;
    std::vector<int> cells;
  };

  bool adjacent(const std::vector<int>& a, const std::vector<int>& b) const {
    for (std::size_t q = 0; q < a.size(); ++q) {
      const Cell& x = cells_[static_cast<std::size_t>(a[q])];
      const Cell& y = cells_[static_cast<std::size_t>(b[q])];
      if (std::abs(x.ti - y.ti) > 1) return false;
      const bool pole = x.ti == 0 || x.ti == g_ - 1 || y.ti == 0 || y.ti == g_ - 1;
      const int dp = std::abs(x.pj - y.pj);
      if (!pole && std::min(dp, g_ - dp) > 1) return false;
    }
    return true;
  }

  void offer(double value) {
    if (top_.size() == keep_ && value <= top_.back().value) return;
    for (std::size_t i = 0; i < top_.size(); ++i) {
      if (!adjacent(top_[i].cells, choice_)) continue;
      if (top_[i].value >= value) return;
      top_.erase(top_.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
    auto pos = std::find_if(top_.begin(), top_.end(), [&](const Entry& e) { return e.value < value; });
    top_.insert(pos, Entry{value, choice_});
    if (top_.size() > keep_) top_.pop_back();
  }

  void descend_pure(int level, const ComplexVector& a, const ComplexVector& b) {
    const Eigen::Index half = a.size() / 2;
    if (level == n_ - 1) {
      for (std::size_t c = 0; c < cells_.size(); ++c) {
        const Cell& cell = cells_[c];
        const double value = std::abs(cell.up_conj(0) * a(0) + cell.up_conj(1) * a(1)) *
                             std::abs(cell.down_conj(0) * b(0) + cell.down_conj(1) * b(1));
        if (top_.size() == keep_ && value <= top_.back().value) continue;
        choice_[static_cast<std::size_t>(level)] = static_cast<int>(c);
        offer(value);
      }
      return;
    }
    ComplexVector na(half);
    ComplexVector nb(half);
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      const Cell& cell = cells_[c];
      na = cell.up_conj(0) * a.head(half) + cell.up_conj(1) * a.tail(half);
      nb = cell.down_conj(0) * b.head(half) + cell.down_conj(1) * b.tail(half);
      choice_[static_cast<std::size_t>(level)] = static_cast<int>(c);
      descend_pure(level + 1, na, nb);
    }
  }

  void descend_mixed(int level, const ComplexMatrix& t) {
    const Eigen::Index h = t.rows() / 2;
    if (level == n_ - 1) {
      for (std::size_t c = 0; c < cells_.size(); ++c) {
        const Cell& cell = cells_[c];
        // <u| T |v> with u* and v* stored: sum_rc u*_r T_rc v_c.
        const Complex v0 = std::conj(cell.down_conj(0));
        const Complex v1 = std::conj(cell.down_conj(1));
        const Complex val = cell.up_conj(0) * (t(0, 0) * v0 + t(0, 1) * v1) +
                            cell.up_conj(1) * (t(1, 0) * v0 + t(1, 1) * v1);
        const double value = std::abs(val);
        if (top_.size() == keep_ && value <= top_.back().value) continue;
        choice_[static_cast<std::size_t>(level)] = static_cast<int>(c);
        offer(value);
      }
      return;
    }
    ComplexMatrix next(h, h);
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      const Cell& cell = cells_[c];
      const Complex v0 = std::conj(cell.down_conj(0));
      const Complex v1 = std::conj(cell.down_conj(1));
      next = cell.up_conj(0) * (v0 * t.topLeftCorner(h, h) + v1 * t.topRightCorner(h, h)) +
             cell.up_conj(1) * (v0 * t.bottomLeftCorner(h, h) + v1 * t.bottomRightCorner(h, h));
      choice_[static_cast<std::size_t>(level)] = static_cast<int>(c);
      descend_mixed(level + 1, next);
    }
  }

  const QuantumState& state_;
  int n_;
  int g_;
  std::vector<Cell> cells_;
  std::vector<int> choice_;
  std::vector<Entry> top_;
  std::size_t keep_ = 1;
};

constexpr std::size_t kGridCandidates = 8;

}  // namespace

CorrelatorResult optimize_q(const QuantumState& state, const OptimizerConfig& config,
                            const std::optional<ProductBasis>& warm_start) {
  config.validate();
  const int n = state.n_qubits();
  if (warm_start && warm_start->size() != n)
    throw Error(ErrorKind::DimensionMismatch, "warm-start basis has the wrong length");
  CoherenceObjective obj(state);

  Candidate best;
  int used = 0;
  auto consider = [&](Candidate c) {
    ++used;
    if (c.modulus > best.modulus) best = std::move(c);
  };

  switch (config.method) {
    case OptimizerMethod::GridOracle: {
      const double step = std::numbers::pi / (config.grid_points_per_angle - 1);
      std::vector<ProductBasis> starts = GridSearch(state, config.grid_points_per_angle).best(kGridCandidates);
      if (warm_start) starts.insert(starts.begin(), *warm_start);
      for (const auto& s : starts) consider(nelder_mead_search(obj, s, config, 0.5 * step));
      break;
    }
    case OptimizerMethod::MultistartLocal: {
      if (warm_start) consider(nelder_mead_search(obj, *warm_start, config, 0.05));
      for (int r = 0; r < config.restarts; ++r) {
        Rng rng(config.seed, static_cast<std::uint64_t>(r));
        consider(nelder_mead_search(obj, random_basis(n, rng), config, 0.3));
      }
      break;
    }
    case OptimizerMethod::CoordinateAscent: {
      if (warm_start) consider(coordinate_search(state, obj, *warm_start, config));
      for (int r = 0; r < config.restarts; ++r) {
        Rng rng(config.seed, static_cast<std::uint64_t>(r));
        consider(coordinate_search(state, obj, random_basis(n, rng), config));
      }
      break;
    }
  }

  CorrelatorResult out;
  out.basis = best.basis;
  for (auto& d : out.basis.directions) d = d.canonical();
  // Recompute in the reported basis so q, |C| and the basis agree exactly.
  out.coherence_modulus = std::abs(coherence_element(state, out.basis));
  out.q = q_from_modulus(n, out.coherence_modulus);
  if (is_no_coherence(out.q)) out.coherence_modulus = 0.0;
  out.restarts_used = used;
  out.converged = best.converged;
  return out;
}

}  // namespace qsep
