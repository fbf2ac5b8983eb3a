#include "qsep/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "qsep/error.hpp"
#include "qsep/format.hpp"
#include "qsep/parallel.hpp"
#include "qsep/state_zoo.hpp"

namespace qsep {

std::string_view to_string(Class3 c) {
  switch (c) {
    case Class3::Separable: return "separable";
    case Class3::BipartiteAB_C: return "bipartite_AB_C";
    case Class3::BipartiteAC_B: return "bipartite_AC_B";
    case Class3::BipartiteBC_A: return "bipartite_BC_A";
    case Class3::W: return "W";
    case Class3::GHZ: return "GHZ";
  }
  return "?";
}

std::optional<Class3> parse_class3(std::string_view name) {
  for (Class3 c : kClass3All)
    if (to_string(c) == name) return c;
  return std::nullopt;
}

bool is_bipartite(Class3 c) {
  return c == Class3::BipartiteAB_C || c == Class3::BipartiteAC_B || c == Class3::BipartiteBC_A;
}

Histogram Histogram::uniform(int bins, double q_min, double q_max) {
  if (bins < 2 || !(q_min < q_max)) throw Error(ErrorKind::BadConfig, "histogram needs bins >= 2 and q_min < q_max");
  Histogram h;
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.bin_edges[static_cast<std::size_t>(i)] = q_min + (q_max - q_min) * i / bins;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  return h;
}

void Histogram::add(double q) {
  const double lo = bin_edges.front();
  const double hi = bin_edges.back();
  if (!(q >= lo)) {
    ++underflow;
    return;
  }
  const std::size_t bins = counts.size();
  auto idx = static_cast<std::size_t>(std::min<double>(std::floor((q - lo) / (hi - lo) * bins), bins - 1.0));
  ++counts[idx];
}

std::uint64_t Histogram::total() const {
  std::uint64_t t = underflow;
  for (auto c : counts) t += c;
  return t;
}

std::vector<double> Histogram::normalized() const {
  const double t = static_cast<double>(total());
  std::vector<double> out(counts.size(), 0.0);
  if (t > 0)
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] = counts[i] / t;
  return out;
}

double Histogram::underflow_probability() const {
  const auto t = total();
  return t > 0 ? static_cast<double>(underflow) / static_cast<double>(t) : 0.0;
}

double Histogram::mode(int window) const {
  const auto bins = static_cast<long>(counts.size());
  long best_i = 0;
  double best = -1.0;
  for (long i = 0; i < bins; ++i) {
    double acc = 0.0;
    for (long j = std::max(0L, i - window); j <= std::min(bins - 1, i + window); ++j)
      acc += static_cast<double>(counts[static_cast<std::size_t>(j)]);
    if (acc > best) {
      best = acc;
      best_i = i;
    }
  }
  const auto i = static_cast<std::size_t>(best_i);
  return 0.5 * (bin_edges[i] + bin_edges[i + 1]);
}

void SamplerConfig::validate() const {
  std::ostringstream os;
  if (n_samples < 1) os << "n_samples must be >= 1; ";
  if (bins < 2) os << "bins must be >= 2; ";
  if (!(q_min < q_max)) os << "q_min must be below q_max; ";
  const std::string msg = os.str();
  if (!msg.empty()) throw Error(ErrorKind::BadConfig, msg.substr(0, msg.size() - 2));
}

OptimizerConfig default_sampling_optimizer(std::uint64_t seed) {
  OptimizerConfig c;
  c.method = OptimizerMethod::CoordinateAscent;
  c.restarts = 6;
  c.max_iterations = 200;
  c.tolerance = 1e-10;
  c.seed = seed;
  return c;
}

ComplexMatrix haar_unitary(int dim, Rng& rng) {
  if (dim < 2) throw Error(ErrorKind::BadN, "haar_unitary needs dim >= 2");
  ComplexMatrix z(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) z(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    q.col(i) *= a > 0.0 ? d / a : Complex(1.0);
  }
  return q;
}

namespace {

Eigen::Vector2cd haar_qubit(Rng& rng) { return haar_unitary(2, rng).col(0); }

// amp[a b c] = pair[x y] * single[s] with (x, y, s) the qubits of the class.
ComplexVector bipartite_vector(Class3 c, const ComplexVector& pair, const Eigen::Vector2cd& single) {
  ComplexVector v(8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int cc = 0; cc < 2; ++cc) {
        Complex amp;
        switch (c) {
          case Class3::BipartiteAB_C: amp = pair(2 * a + b) * single(cc); break;
          case Class3::BipartiteAC_B: amp = pair(2 * a + cc) * single(b); break;
          default: amp = pair(2 * b + cc) * single(a); break;
        }
        v(4 * a + 2 * b + cc) = amp;
      }
  return v;
}

}  // namespace

QuantumState sample_class3(Class3 c, Rng& rng) {
  switch (c) {
    case Class3::Separable: {
      const Eigen::Vector2cd a = haar_qubit(rng);
      const Eigen::Vector2cd b = haar_qubit(rng);
      const Eigen::Vector2cd d = haar_qubit(rng);
      ComplexVector v(8);
      for (int i = 0; i < 8; ++i) v(i) = a(i >> 2) * b((i >> 1) & 1) * d(i & 1);
      return QuantumState::pure(std::move(v));
    }
    case Class3::BipartiteAB_C:
    case Class3::BipartiteAC_B:
    case Class3::BipartiteBC_A: {
      const ComplexVector pair = haar_unitary(4, rng).col(0);
      const Eigen::Vector2cd single = haar_qubit(rng);
      return QuantumState::pure(bipartite_vector(c, pair, single));
    }
    case Class3::W: {
      ComplexVector v = ComplexVector::Zero(8);
      for (int idx : {0b000, 0b100, 0b101, 0b110}) v(idx) = rng.uniform();
      if (!(v.norm() > 0.0)) v(0b100) = 1.0;
      v.normalize();
      std::array<Eigen::Matrix2cd, 3> ops;
      for (auto& u : ops) u = haar_unitary(2, rng);
      return QuantumState::pure(apply_local(v, ops));
    }
    case Class3::GHZ: {
      return QuantumState::pure(haar_unitary(8, rng).col(0));
    }
  }
  throw Error(ErrorKind::BadLabel, "unknown class");
}

namespace {

// Edges read back from CSV carry 12 significant digits.
bool same_edges(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-9 * std::max(1.0, std::abs(a[i]))) return false;
  return true;
}

constexpr std::uint64_t kOrbitStream = 0x6f72626974ULL;
constexpr std::uint64_t kReferenceStream = 0x726566ULL;

std::uint64_t class_stream(std::uint64_t seed, Class3 c) {
  return substream_seed(seed, 0x636c617373ULL + static_cast<std::uint64_t>(c));
}

OptimizerConfig per_sample(const OptimizerConfig& base, std::size_t i) {
  OptimizerConfig c = base;
  c.seed = substream_seed(base.seed, i);
  return c;
}

}  // namespace

Histogram q_distribution(Class3 c, const SamplerConfig& config, const OptimizerConfig& optimizer) {
  config.validate();
  optimizer.validate();
  const auto n = static_cast<std::size_t>(config.n_samples);
  std::vector<double> qs(n);
  const std::uint64_t stream = class_stream(config.seed, c);
  parallel_for(n, config.threads, [&](std::size_t i) {
    Rng rng(stream, i);
    qs[i] = optimize_q(sample_class3(c, rng), per_sample(optimizer, i)).q;
  });
  Histogram h = Histogram::uniform(config.bins, config.q_min, config.q_max);
  for (double q : qs) h.add(q);
  return h;
}

double wootters_distance(const Histogram& p, const Histogram& q) {
  if (!same_edges(p.bin_edges, q.bin_edges))
    throw Error(ErrorKind::BinMismatch, "histograms have different bin edges");
  const auto a = p.normalized();
  const auto b = q.normalized();
  double bc = std::sqrt(p.underflow_probability() * q.underflow_probability());
  for (std::size_t i = 0; i < a.size(); ++i) bc += std::sqrt(a[i] * b[i]);
  return std::clamp(1.0 - bc, 0.0, 1.0);
}

namespace {

Eigen::Matrix2cd ginibre_invertible(Rng& rng) {
  for (;;) {
    Eigen::Matrix2cd m;
    for (int c = 0; c < 2; ++c)
      for (int r = 0; r < 2; ++r) m(r, c) = rng.complex_normal();
    const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
    const auto s = svd.singularValues();
    if (s(1) > 0.0 && s(0) / s(1) <= 1e3) return m;
  }
}

}  // namespace

QuantumState class3_representative(Class3 c) {
  ComplexVector zero(2);
  zero << 1.0, 0.0;
  const QuantumState z = new_pure(zero);
  switch (c) {
    case Class3::Separable: return tensor(tensor(z, z), z);
    case Class3::BipartiteAB_C: return tensor(ghz(2), z);
    case Class3::BipartiteAC_B: {
      ComplexVector v = ComplexVector::Zero(8);
      v(0) = v(5) = std::sqrt(0.5);
      return new_pure(v);
    }
    case Class3::BipartiteBC_A: return tensor(z, ghz(2));
    case Class3::W: return dicke(DickeLabel::from_excitations(3, 1));
    case Class3::GHZ: return ghz(3);
  }
  throw Error(ErrorKind::BadConfig, "unknown class");
}

Histogram orbit_distribution(const QuantumState& state, const SamplerConfig& config, const OptimizerConfig& optimizer) {
  config.validate();
  optimizer.validate();
  if (!state.is_pure() || state.n_qubits() != 3)
    throw Error(ErrorKind::DimensionMismatch, "orbit sampling needs a pure three-qubit state");
  const auto n = static_cast<std::size_t>(config.n_samples);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> qs(n, nan);
  const std::uint64_t stream = substream_seed(config.seed, kOrbitStream);
  parallel_for(n, config.threads, [&](std::size_t i) {
    Rng rng(stream, i);
    std::array<Eigen::Matrix2cd, 3> ops;
    for (auto& m : ops) m = ginibre_invertible(rng);
    ComplexVector v = apply_local(state.amplitudes(), ops);
    const double norm = v.norm();
    if (!(norm > 1e-12)) return;
    qs[i] = optimize_q(QuantumState::pure(v / norm), per_sample(optimizer, i)).q;
  });
  Histogram h = Histogram::uniform(config.bins, config.q_min, config.q_max);
  for (double q : qs)
    if (!std::isnan(q)) h.add(q);
  if (h.total() == 0) throw Error(ErrorKind::DegenerateOrbit, "every orbit state lost its norm");
  return h;
}

std::map<Class3, Histogram> orbit_references(const SamplerConfig& config, const OptimizerConfig& optimizer) {
  std::map<Class3, Histogram> out;
  for (Class3 c : {Class3::Separable, Class3::BipartiteAB_C, Class3::W, Class3::GHZ}) {
    SamplerConfig own = config;
    own.seed = substream_seed(config.seed, kReferenceStream + static_cast<std::uint64_t>(c));
    out[c] = orbit_distribution(class3_representative(c), own, optimizer);
  }
  return out;
}

OrbitClassification classify_by_orbit(const QuantumState& state, const std::map<Class3, Histogram>& references,
                                      const SamplerConfig& config, const OptimizerConfig& optimizer) {
  config.validate();
  optimizer.validate();
  if (!state.is_pure() || state.n_qubits() != 3)
    throw Error(ErrorKind::DimensionMismatch, "orbit classification needs a pure three-qubit state");
  if (references.empty()) throw Error(ErrorKind::BadConfig, "no reference histograms");
  const auto& edges = references.begin()->second.bin_edges;
  for (const auto& [c, h] : references)
    if (!same_edges(h.bin_edges, edges)) throw Error(ErrorKind::BinMismatch, "reference histograms have different bin edges");

  OrbitClassification out;
  out.orbit = orbit_distribution(state, config, optimizer);
  if (!same_edges(out.orbit.bin_edges, edges))
    throw Error(ErrorKind::BinMismatch, "orbit histogram and references have different bin edges");

  double best = std::numeric_limits<double>::infinity();
  out.label = references.begin()->first;
  for (const auto& [c, h] : references) {
    const double d = wootters_distance(out.orbit, h);
    out.distances[c] = d;
    if (d < best) {
      best = d;
      out.label = c;
    }
  }
  if (is_bipartite(out.label)) {
    // The entangled pair is the one left after discarding its complement.
    const std::array<Class3, 3> by_discard = {Class3::BipartiteBC_A, Class3::BipartiteAC_B, Class3::BipartiteAB_C};
    double best_pair = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
      const double q = optimize_q(partial_trace(state, {k}), optimizer).q;
      if (q > best_pair) {
        best_pair = q;
        out.label = by_discard[static_cast<std::size_t>(k)];
      }
    }
  }
  return out;
}

std::string histogram_csv(const Histogram& h, const std::vector<std::string>& metadata) {
  std::ostringstream os;
  for (const auto& m : metadata) os << "# " << m << '\n';
  os << "q_lo,q_hi,count,probability\n";
  os << "-inf," << format_real(h.bin_edges.front()) << ',' << h.underflow << ','
     << format_real(h.underflow_probability()) << '\n';
  const auto p = h.normalized();
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    os << format_real(h.bin_edges[i]) << ',' << format_real(h.bin_edges[i + 1]) << ',' << h.counts[i] << ','
       << format_real(p[i]) << '\n';
  return os.str();
}

Histogram parse_histogram_csv(std::string_view text) {
  Histogram h;
  std::istringstream is{std::string(text)};
  std::string line;
  bool header = false;
  bool first_row = true;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Schema, "histogram CSV line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "q_lo,q_hi,count,probability") fail("expected header q_lo,q_hi,count,probability");
      header = true;
      continue;
    }
    std::array<std::string, 4> f;
    std::istringstream ls(line);
    for (auto& s : f)
      if (!std::getline(ls, s, ',')) fail("expected 4 fields");
    auto num = [&](const std::string& s) {
      if (s == "-inf") return -std::numeric_limits<double>::infinity();
      try {
        std::size_t used = 0;
        const double x = std::stod(s, &used);
        if (used != s.size()) fail("bad number '" + s + "'");
        return x;
      } catch (const std::logic_error&) {
        fail("bad number '" + s + "'");
      }
      return 0.0;
    };
    std::uint64_t count = 0;
    const auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), count);
    if (ec != std::errc() || ptr != f[2].data() + f[2].size()) fail("bad count '" + f[2] + "'");
    const double lo = num(f[0]);
    const double hi = num(f[1]);
    if (first_row && std::isinf(lo)) {
      h.underflow = count;
      first_row = false;
      continue;
    }
    first_row = false;
    if (h.bin_edges.empty())
      h.bin_edges.push_back(lo);
    else if (h.bin_edges.back() != lo)
      fail("bins are not contiguous");
    if (!(hi > lo)) fail("bin edges must increase");
    h.bin_edges.push_back(hi);
    h.counts.push_back(count);
  }
  if (h.counts.size() < 2) throw Error(ErrorKind::Schema, "histogram CSV has fewer than two bins");
  return h;
}

}  // namespace qsep
