#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsep/optimizer.hpp"
#include "qsep/quantum_state.hpp"
#include "qsep/rng.hpp"

namespace qsep {

/// The six SLOCC classes of three-qubit pure states.
enum class Class3 { Separable, BipartiteAB_C, BipartiteAC_B, BipartiteBC_A, W, GHZ };
inline constexpr std::array<Class3, 6> kClass3All = {Class3::Separable,     Class3::BipartiteAB_C,
                                                     Class3::BipartiteAC_B, Class3::BipartiteBC_A,
                                                     Class3::W,             Class3::GHZ};

std::string_view to_string(Class3 c);
std::optional<Class3> parse_class3(std::string_view name);
bool is_bipartite(Class3 c);

/// Uniform bins over [q_min, q_max]. Values below q_min (including the
/// no-coherence tag) land in a separate underflow bin that takes part in the
/// normalization; values above q_max are clamped into the last bin.
struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t underflow = 0;

  static Histogram uniform(int bins, double q_min, double q_max);
  void add(double q);
  std::uint64_t total() const;
  /// Probability per bin; the underflow probability is underflow_probability().
  std::vector<double> normalized() const;
  double underflow_probability() const;
  /// Center of the bin whose (2 window + 1)-bin neighbourhood holds the most
  /// counts; window = 0 is the plain fullest bin.
  double mode(int window = 0) const;
};

struct SamplerConfig {
  int n_samples = 20000;
  std::uint64_t seed = 42;
  int bins = 80;
  double q_min = -1.0;
  double q_max = 2.0;
  /// 0 means one worker per logical core.
  unsigned threads = 0;

  /// Throws BadConfig unless n_samples >= 1, bins >= 2 and q_min < q_max.
  void validate() const;
};

/// Description of the sampling ensembles, written into CSV metadata.
inline constexpr std::string_view kSamplerDescription =
    "haar-local-unitaries; W lambda uniform [0,1]^4 then L2-normalized; "
    "GHZ class Haar-random 8-dim vector";

/// Haar-random unitary: Ginibre matrix, QR, columns rephased by the diagonal
/// of R.
ComplexMatrix haar_unitary(int dim, Rng& rng);

/// One pure three-qubit state from the class ensemble.
QuantumState sample_class3(Class3 c, Rng& rng);

/// Histogram of optimized Q over n_samples draws. Sample i uses the substream
/// (seed ^ class, i), so the result does not depend on the thread count.
Histogram q_distribution(Class3 c, const SamplerConfig& config, const OptimizerConfig& optimizer);

/// 1 - sum_n sqrt(p_n q_n), underflow bin included. Throws BinMismatch when the
/// edges differ.
double wootters_distance(const Histogram& p, const Histogram& q);

struct OrbitClassification {
  Class3 label;
  std::map<Class3, double> distances;
  Histogram orbit;
};

/// Maximal representative of each class: |000>, a Bell pair next to |0>, W_3
/// and GHZ_3.
QuantumState class3_representative(Class3 c);

/// Histogram of Q over the orbit of a pure three-qubit state under random
/// invertible local operators (complex Ginibre entries, condition number
/// <= 1e3, output renormalized). Throws DegenerateOrbit when no orbit state
/// keeps its norm.
Histogram orbit_distribution(const QuantumState& state, const SamplerConfig& config, const OptimizerConfig& optimizer);

/// Orbit histograms of the representatives of the separable, bipartite
/// (keyed BipartiteAB_C), W and GHZ classes. The operator ensemble skews Q
/// well below the Haar class histograms, so these are the references that
/// match classify_by_orbit. Each class draws from its own substream of
/// config.seed.
std::map<Class3, Histogram> orbit_references(const SamplerConfig& config, const OptimizerConfig& optimizer);

/// Black-box classification of a pure three-qubit state: its orbit histogram
/// compared with each reference histogram. The bipartite classes share one Q
/// distribution, so a bipartite verdict names the pair whose two-qubit
/// marginal carries the largest Q.
OrbitClassification classify_by_orbit(const QuantumState& state, const std::map<Class3, Histogram>& references,
                                      const SamplerConfig& config, const OptimizerConfig& optimizer);

/// CSV `q_lo,q_hi,count,probability` with `#` metadata lines. The underflow
/// bin is the first row with q_lo = -inf.
std::string histogram_csv(const Histogram& h, const std::vector<std::string>& metadata);
/// Parses histogram_csv output (metadata lines are skipped).
Histogram parse_histogram_csv(std::string_view text);

/// Optimizer used for the sampling experiments when none is given.
OptimizerConfig default_sampling_optimizer(std::uint64_t seed);

}  // namespace qsep
