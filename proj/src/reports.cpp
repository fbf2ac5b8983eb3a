#include "qsep/reports.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qsep/error.hpp"
#include "qsep/format.hpp"
#include "qsep/parallel.hpp"

namespace qsep {

bool is_null_value(double q) { return is_no_coherence(q) || q <= kNullThreshold; }

Report report_state(const QuantumState& state, const std::string& label, const OptimizerConfig& optimizer,
                    bool with_traces, unsigned threads) {
  const int n = state.n_qubits();
  if (with_traces && n < 3) throw Error(ErrorKind::BadN, "traced variants need n >= 3");
  const CorrelatorResult best = optimize_q(state, optimizer);
  Report r;
  r.label = label;
  r.n_qubits = n;
  r.q = best.q;
  r.coherence_modulus = best.coherence_modulus;
  r.basis = best.basis;
  r.certificate = certify(best.q, n, kCertifyMargin);
  if (with_traces) {
    std::vector<double> qs(static_cast<std::size_t>(n));
    parallel_for(qs.size(), threads, [&](std::size_t k) {
      qs[k] = optimize_q(partial_trace(state, {static_cast<int>(k)}), optimizer).q;
    });
    r.traced.emplace();
    for (int k = 0; k < n; ++k) (*r.traced)[k] = qs[static_cast<std::size_t>(k)];
  }
  return r;
}

namespace {

nlohmann::json real_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

std::string cell(double q) {
  if (is_null_value(q)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", q);
  return buf;
}

}  // namespace

nlohmann::json report_json(const Report& r) {
  nlohmann::json j;
  j["label"] = r.label;
  j["n"] = r.n_qubits;
  j["q"] = real_or_null(r.q);
  j["c_abs"] = round12(r.coherence_modulus);
  j["basis"] = nlohmann::json::array();
  for (const auto& d : r.basis.directions) j["basis"].push_back({{"theta", round12(d.theta)}, {"phi", round12(d.phi)}});
  const auto& c = r.certificate;
  j["certificate"] = {{"k_min_excluded", c.k_min_excluded ? nlohmann::json(*c.k_min_excluded) : nullptr},
                      {"genuine", c.genuinely_entangled},
                      {"depth", c.depth_indicator ? nlohmann::json(*c.depth_indicator) : nullptr}};
  if (r.traced) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [k, q] : *r.traced) t[std::to_string(k)] = real_or_null(q);
    j["traced"] = t;
  } else {
    j["traced"] = nullptr;
  }
  return j;
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << "state: " << r.label << " (" << r.n_qubits << " qubits)\n";
  os << "Q: " << format_real(r.q) << "\n";
  os << "|C|: " << format_real(r.coherence_modulus) << "\n";
  os << "basis (theta, phi):";
  for (const auto& d : r.basis.directions) os << " (" << format_real(d.theta) << ", " << format_real(d.phi) << ")";
  os << "\n";
  const auto& c = r.certificate;
  if (c.k_min_excluded)
    os << "not k-separable for k >= " << *c.k_min_excluded << "\n";
  else
    os << "no non-k-separability certified\n";
  os << "genuinely entangled: " << (c.genuinely_entangled ? "yes" : "no") << "\n";
  if (c.depth_indicator) os << "depth indicator (single-block partitions): " << *c.depth_indicator << "\n";
  if (r.traced) {
    os << "after discarding one qubit:";
    for (const auto& [k, q] : *r.traced) os << " " << k << ":" << (is_null_value(q) ? std::string("-") : format_real(q));
    os << "\n";
  }
  return os.str();
}

Table1 table1(const std::vector<int>& n_values) {
  Table1 t;
  t.n_values = n_values;
  int rows = 0;
  for (int n : n_values) {
    if (n < 3) throw Error(ErrorKind::BadN, "table 1 columns need N >= 3");
    rows = std::max(rows, n - 1);
  }
  t.rows.assign(static_cast<std::size_t>(rows), std::vector<std::string>(n_values.size()));
  for (int r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < n_values.size(); ++c) {
      const int n = n_values[c];
      std::string s = "---";
      // Every q in (r, r+1] certifies the same thing; the midpoint stands in.
      const SeparabilityCertificate cert = certify(r + 0.5, n);
      if (r + 1 <= n - 1 && cert.k_min_excluded) {
        s = cert.genuinely_entangled ? "gen. ent." : "k < " + std::to_string(*cert.k_min_excluded);
      }
      t.rows[static_cast<std::size_t>(r)][c] = s;
    }
  return t;
}

std::string table1_csv(const Table1& t) {
  std::ostringstream os;
  os << "interval";
  for (int n : t.n_values) os << ",N=" << n;
  os << "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << r << "<Q<=" << r + 1;
    for (const auto& s : t.rows[r]) os << ',' << s;
    os << "\n";
  }
  return os.str();
}

std::string table1_text(const Table1& t) {
  std::ostringstream os;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-12s", "");
  os << buf;
  for (int n : t.n_values) {
    std::snprintf(buf, sizeof buf, " %-10s", ("N=" + std::to_string(n)).c_str());
    os << buf;
  }
  os << "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%-12s", (std::to_string(r) + "<Q<=" + std::to_string(r + 1)).c_str());
    os << buf;
    for (const auto& s : t.rows[r]) {
      std::snprintf(buf, sizeof buf, " %-10s", s.c_str());
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

Table2 table2(const SamplerConfig& config, const OptimizerConfig& optimizer) {
  Table2 t;
  for (std::size_t i = 0; i < 3; ++i) t.histograms[i] = q_distribution(kTable2Classes[i], config, optimizer);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      t.distance[i][j] = i == j ? 0.0 : j < i ? t.distance[j][i] : wootters_distance(t.histograms[i], t.histograms[j]);
  return t;
}

std::string table2_csv(const Table2& t) {
  std::ostringstream os;
  os << "class";
  for (const char* l : kTable2Labels) os << ',' << l;
  os << "\n";
  for (std::size_t i = 0; i < 3; ++i) {
    os << kTable2Labels[i];
    for (std::size_t j = 0; j < 3; ++j) os << ',' << format_real(t.distance[i][j]);
    os << "\n";
  }
  return os.str();
}

std::vector<Report> table3(const OptimizerConfig& optimizer, unsigned threads) {
  std::vector<Report> rows(kFourQubitClasses.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const FourQubitClass c = kFourQubitClasses[i];
    rows[i] = report_state(four_qubit_class(c), std::string(to_string(c)), optimizer, true, 1);
  });
  return rows;
}

std::string table3_csv(const std::vector<Report>& rows) {
  std::ostringstream os;
  os << "state,none,i=1,i=2,i=3,i=4\n";
  for (const auto& r : rows) {
    os << r.label << ',' << format_real(r.q);
    if (r.traced)
      for (const auto& [k, q] : *r.traced) os << ',' << (is_null_value(q) ? std::string("-") : format_real(q));
    os << "\n";
  }
  return os.str();
}

std::string table3_text(const std::vector<Report>& rows) {
  std::ostringstream os;
  char buf[64];
  os << "State   None    i=1     i=2     i=3     i=4\n";
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-7s %-7s", r.label.c_str(), cell(r.q).c_str());
    os << buf;
    if (r.traced)
      for (const auto& [k, q] : *r.traced) {
        std::snprintf(buf, sizeof buf, " %-7s", cell(q).c_str());
        os << buf;
      }
    os << "\n";
  }
  return os.str();
}

}  // namespace qsep
