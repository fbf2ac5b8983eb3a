#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsep/certify.hpp"
#include "qsep/optimizer.hpp"
#include "qsep/sampling.hpp"
#include "qsep/state_zoo.hpp"

namespace qsep {

/// Rounding slack subtracted from q before certification, so a value that
/// sits on an exact bound (GHZ at N - 1, products at 0) certifies nothing
/// beyond what the bound allows.
inline constexpr double kCertifyMargin = 1e-9;

/// Values at or below this render as "-" in tables: no entanglement signal.
inline constexpr double kNullThreshold = 1e-6;

struct Report {
  std::string label;
  int n_qubits = 0;
  double q = 0.0;
  double coherence_modulus = 0.0;
  ProductBasis basis;
  SeparabilityCertificate certificate;
  /// Discarded qubit -> optimized Q of the remaining state.
  std::optional<std::map<int, double>> traced;
};

/// Optimizes Q and certifies it. with_traces (N >= 3) adds the Q of each
/// single-qubit partial trace. Trace variants run concurrently.
Report report_state(const QuantumState& state, const std::string& label, const OptimizerConfig& optimizer,
                    bool with_traces, unsigned threads = 0);

/// {label, n, q, c_abs, basis:[{theta, phi}], certificate:{k_min_excluded,
/// genuine, depth}, traced:{"0": q|null, ...}}. The no-coherence tag and
/// absent certificate fields are null.
nlohmann::json report_json(const Report& r);
std::string report_text(const Report& r);

/// True when a value renders as "-": no coherence or q <= kNullThreshold.
bool is_null_value(double q);

struct Table1 {
  std::vector<int> n_values;
  /// rows[r][c]: statement for r < Q <= r + 1 at N = n_values[c].
  std::vector<std::vector<std::string>> rows;
};

/// Non-k-separability statements per unit Q interval; each N must be >= 3.
Table1 table1(const std::vector<int>& n_values);
std::string table1_csv(const Table1& t);
std::string table1_text(const Table1& t);

/// Biseparable, W and GHZ, in that order.
inline constexpr std::array<Class3, 3> kTable2Classes = {Class3::BipartiteAB_C, Class3::W, Class3::GHZ};
inline constexpr std::array<const char*, 3> kTable2Labels = {"B-S", "W", "GHZ"};

struct Table2 {
  std::array<std::array<double, 3>, 3> distance{};
  std::array<Histogram, 3> histograms;
};

Table2 table2(const SamplerConfig& config, const OptimizerConfig& optimizer);
std::string table2_csv(const Table2& t);

/// Reports with traces for the nine four-qubit class representatives.
std::vector<Report> table3(const OptimizerConfig& optimizer, unsigned threads = 0);
std::string table3_csv(const std::vector<Report>& rows);
std::string table3_text(const std::vector<Report>& rows);

}  // namespace qsep
