// Command-line front end: q <subcommand> [flags]. Exit status 0 on success,
// 2 on invalid usage, 1 when a computation fails.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsep/channels.hpp"
#include "qsep/dynamics.hpp"
#include "qsep/error.hpp"
#include "qsep/format.hpp"
#include "qsep/optimizer.hpp"
#include "qsep/reports.hpp"
#include "qsep/sampling.hpp"
#include "qsep/state_io.hpp"
#include "qsep/state_zoo.hpp"

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 42;
  int threads = -1;
  std::string out;
  bool deterministic = false;

  unsigned worker_count() const {
    if (threads >= 0) return static_cast<unsigned>(threads);
    if (const char* env = std::getenv("QSEP_THREADS")) {
      try {
        const int v = std::stoi(env);
        if (v >= 0) return static_cast<unsigned>(v);
      } catch (const std::exception&) {
      }
      throw UsageError(std::string("QSEP_THREADS must be a non-negative integer, got '") + env + "'");
    }
    return 0;
  }
};

std::vector<std::string> metadata(const Globals& g, std::vector<std::string> lines) {
  lines.insert(lines.begin(), "seed=" + std::to_string(g.seed));
  if (!g.deterministic) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    lines.push_back(std::string("generated=") + buf);
  }
  return lines;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw qsep::Error(qsep::ErrorKind::Schema, "cannot write " + path.string());
  f << text;
  if (!f) throw qsep::Error(qsep::ErrorKind::Schema, "failed writing " + path.string());
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_file(g.out, text);
}

std::string optimizer_label(const qsep::OptimizerConfig& c) {
  std::ostringstream os;
  os << qsep::to_string(c.method) << " restarts=" << c.restarts << " tolerance=" << qsep::format_real(c.tolerance)
     << " max_iterations=" << c.max_iterations;
  return os.str();
}

qsep::OptimizerConfig make_optimizer(const Globals& g, const std::string& method, int restarts) {
  qsep::OptimizerConfig c;
  const auto m = qsep::parse_optimizer_method(method);
  if (!m) throw UsageError("--optimizer must be grid, multistart or coordinate");
  c.method = *m;
  c.restarts = restarts;
  c.seed = g.seed;
  if (restarts < 1) throw UsageError("--restarts must be >= 1");
  return c;
}

qsep::SamplerConfig make_sampler(const Globals& g, int samples, int bins) {
  qsep::SamplerConfig s;
  s.n_samples = samples;
  s.bins = bins;
  s.seed = g.seed;
  s.threads = g.worker_count();
  try {
    s.validate();
  } catch (const qsep::Error& e) {
    throw UsageError(e.what());
  }
  return s;
}

std::string hist_name(qsep::Class3 c) { return "hist_" + std::string(qsep::to_string(c)) + ".csv"; }
std::string orbit_name(qsep::Class3 c) { return "orbit_" + std::string(qsep::to_string(c)) + ".csv"; }

std::string read_text(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw qsep::Error(qsep::ErrorKind::Schema, "cannot read " + p.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipartite entanglement detection with the optimized GHZ-coherence correlator"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed (default 42)");
  app.add_option("--threads", g.threads, "Worker threads; 0 = one per core (env QSEP_THREADS)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "Output file (directory for classify3)");
  app.add_flag("--deterministic", g.deterministic, "Omit the timestamp comment from CSV output");

  // compute
  auto* compute = app.add_subcommand("compute", "Optimized Q and certificate of a state file");
  std::string state_file, method = "multistart", fmt = "json";
  int restarts = 32;
  bool traces = false;
  compute->add_option("--state", state_file, "State JSON file")->required();
  compute->add_option("--optimizer", method, "grid|multistart|coordinate");
  compute->add_option("--restarts", restarts, "Optimizer restarts");
  compute->add_flag("--traces", traces, "Also report Q after discarding each single qubit");
  compute->add_option("--format", fmt, "json|text")->check(CLI::IsMember({"json", "text"}));

  // state
  auto* state = app.add_subcommand("state", "Write a zoo state as JSON");
  std::string name, class_name = "G";
  int n = 3;
  double m = 0.0;
  state->add_option("--name", name, "ghz|w|dicke|ame|class4")
      ->required()
      ->check(CLI::IsMember({"ghz", "w", "dicke", "ame", "class4"}));
  state->add_option("--n", n, "Number of qubits");
  state->add_option("--m", m, "Dicke magnetization m");
  state->add_option("--class", class_name, "Four-qubit class G|E1..E8");

  // classify3
  auto* classify3 = app.add_subcommand("classify3", "Three-qubit class histograms and the distance table");
  int samples = 20000, bins = 80;
  classify3->add_option("--samples", samples, "Samples per class");
  classify3->add_option("--bins", bins, "Histogram bins on [-1, 2]");
  int reference_samples = 2000;
  classify3->add_option("--orbit-samples", reference_samples, "Orbit samples per reference class (0 skips them)");

  // orbit-classify
  auto* orbit = app.add_subcommand("orbit-classify", "Black-box class of a three-qubit state");
  std::string refs;
  int orbit_samples = 2000;
  orbit->add_option("--state", state_file, "State JSON file")->required();
  orbit->add_option("--refs", refs, "Directory written by classify3 (orbit_*.csv preferred over hist_*.csv)")->required();
  orbit->add_option("--samples", orbit_samples, "Orbit samples");

  // noise
  auto* noise = app.add_subcommand("noise", "Q under a noise channel over a p grid");
  std::string channel;
  double pmin = 0.0, pmax = 1.0;
  int steps = 21;
  noise->add_option("--state", state_file, "State JSON file")->required();
  noise->add_option("--channel", channel, "depolarizing|dephasing")
      ->required()
      ->check(CLI::IsMember({"depolarizing", "dephasing"}));
  noise->add_option("--pmin", pmin, "Smallest p");
  noise->add_option("--pmax", pmax, "Largest p");
  noise->add_option("--steps", steps, "Grid points");
  noise->add_option("--restarts", restarts, "Optimizer restarts");

  // dynamics
  auto* dynamics = app.add_subcommand("dynamics", "Q(t) under one-axis or two-axis twisting");
  std::string ham;
  double tmax = 3.14159265358979, dt = 0.01;
  dynamics->add_option("--hamiltonian", ham, "oat|tact")->required()->check(CLI::IsMember({"oat", "tact"}));
  dynamics->add_option("--n", n, "Number of qubits");
  dynamics->add_option("--tmax", tmax, "Final time");
  dynamics->add_option("--dt", dt, "Time step");
  dynamics->add_option("--restarts", restarts, "Optimizer restarts");

  // table
  auto* table = app.add_subcommand("table", "Regenerate a results table as CSV");
  int which = 1;
  std::string table_fmt = "csv";
  table->add_option("--which", which, "1|2|3")->required()->check(CLI::IsMember({1, 2, 3}));
  table->add_option("--samples", samples, "Samples per class (table 2)");
  table->add_option("--bins", bins, "Histogram bins (table 2)");
  table->add_option("--format", table_fmt, "csv|text")->check(CLI::IsMember({"csv", "text"}));

  // dicke
  auto* dicke = app.add_subcommand("dicke", "Q of a Dicke state");
  bool exact = false, asymptotic = false;
  dicke->add_option("--n", n, "Number of qubits")->required();
  dicke->add_option("--m", m, "Magnetization m")->required();
  dicke->add_flag("--exact", exact, "Closed form instead of optimization");
  dicke->add_flag("--asymptotic", asymptotic, "Large-N expansion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const unsigned threads = g.worker_count();
    if (*compute) {
      const auto opt = make_optimizer(g, method, restarts);
      const auto st = qsep::read_state_file(state_file);
      if (traces && st.n_qubits() < 3) throw UsageError("--traces needs at least three qubits");
      const auto rep = qsep::report_state(st, fs::path(state_file).stem().string(), opt, traces, threads);
      emit(g, fmt == "json" ? qsep::report_json(rep).dump(2) + "\n" : qsep::report_text(rep));
    } else if (*state) {
      if (g.out.empty()) throw UsageError("state needs --out <file.json>");
      std::optional<qsep::QuantumState> st;
      try {
        if (name == "ghz") st = qsep::ghz(n);
        else if (name == "w") st = qsep::dicke(qsep::DickeLabel::from_excitations(n, 1));
        else if (name == "dicke") st = qsep::dicke(qsep::DickeLabel::from_m(n, m));
        else if (name == "ame") st = qsep::ame(n);
        else {
          const auto c = qsep::parse_four_qubit_class(class_name);
          if (!c) throw UsageError("--class must be one of G, E1..E8");
          st = qsep::four_qubit_class(*c);
        }
      } catch (const qsep::Error& e) {
        throw UsageError(e.what());
      }
      qsep::write_state_file(g.out, *st);
    } else if (*classify3) {
      if (g.out.empty()) throw UsageError("classify3 needs --out <dir>");
      const auto sc = make_sampler(g, samples, bins);
      const auto opt = qsep::default_sampling_optimizer(g.seed);
      fs::create_directories(g.out);
      std::map<qsep::Class3, qsep::Histogram> hists;
      for (auto c : qsep::kClass3All) {
        hists[c] = qsep::q_distribution(c, sc, opt);
        const auto meta = metadata(g, {"class=" + std::string(qsep::to_string(c)),
                                       "n_samples=" + std::to_string(samples), "optimizer=" + optimizer_label(opt),
                                       "sampler=" + std::string(qsep::kSamplerDescription)});
        write_file(fs::path(g.out) / hist_name(c), qsep::histogram_csv(hists[c], meta));
      }
      qsep::Table2 t;
      for (std::size_t i = 0; i < 3; ++i) t.histograms[i] = hists[qsep::kTable2Classes[i]];
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) t.distance[i][j] = qsep::wootters_distance(t.histograms[i], t.histograms[j]);
      write_file(fs::path(g.out) / "table2.csv", qsep::table2_csv(t));
      if (reference_samples < 0) throw UsageError("--orbit-samples must be >= 0");
      if (reference_samples > 0) {
        const auto rc = make_sampler(g, reference_samples, bins);
        for (const auto& [c, h] : qsep::orbit_references(rc, opt)) {
          const auto meta = metadata(g, {"class=" + std::string(qsep::to_string(c)), "orbit_reference=1",
                                         "n_samples=" + std::to_string(reference_samples),
                                         "optimizer=" + optimizer_label(opt)});
          write_file(fs::path(g.out) / orbit_name(c), qsep::histogram_csv(h, meta));
        }
      }
    } else if (*orbit) {
      const auto sc = make_sampler(g, orbit_samples, 80);
      // Orbit references match the classifier's ensemble; the Haar class
      // histograms are the fallback.
      std::map<qsep::Class3, qsep::Histogram> references;
      for (auto name : {orbit_name, hist_name}) {
        for (auto c : qsep::kClass3All) {
          const fs::path p = fs::path(refs) / name(c);
          if (fs::exists(p)) references[c] = qsep::parse_histogram_csv(read_text(p));
        }
        if (!references.empty()) break;
      }
      if (references.empty()) throw UsageError("no orbit_<class>.csv or hist_<class>.csv files in " + refs);
      const auto st = qsep::read_state_file(state_file);
      qsep::SamplerConfig orbit_cfg = sc;
      orbit_cfg.bins = static_cast<int>(references.begin()->second.counts.size());
      const auto res = qsep::classify_by_orbit(st, references, orbit_cfg, qsep::default_sampling_optimizer(g.seed));
      nlohmann::json j;
      j["class"] = std::string(qsep::to_string(res.label));
      j["distances"] = nlohmann::json::object();
      for (const auto& [c, d] : res.distances) j["distances"][std::string(qsep::to_string(c))] = qsep::round12(d);
      emit(g, j.dump(2) + "\n");
    } else if (*noise) {
      if (steps < 1) throw UsageError("--steps must be >= 1");
      if (!(pmin >= 0.0 && pmax <= 1.0 && pmin <= pmax)) throw UsageError("need 0 <= pmin <= pmax <= 1");
      const auto opt = make_optimizer(g, "multistart", restarts);
      const auto st = qsep::read_state_file(state_file);
      std::vector<double> grid;
      for (int i = 0; i < steps; ++i) grid.push_back(steps == 1 ? pmin : pmin + (pmax - pmin) * i / (steps - 1));
      const auto kind = *qsep::parse_channel_kind(channel);
      const auto curve = qsep::noise_sweep(st, kind, grid, opt, threads);
      emit(g, qsep::noise_csv(curve, kind, fs::path(state_file).stem().string(),
                              metadata(g, {"optimizer=" + optimizer_label(opt)})));
    } else if (*dynamics) {
      if (!(dt > 0.0) || !(tmax >= 0.0)) throw UsageError("need --dt > 0 and --tmax >= 0");
      if (n < 2 || n > qsep::kDynamicsQubitCap) throw UsageError("--n must be in [2, 10]");
      const auto opt = make_optimizer(g, "multistart", restarts);
      const qsep::HamiltonianSpec spec{*qsep::parse_hamiltonian_kind(ham), n};
      const auto traj = qsep::q_trajectory(spec, qsep::time_grid(tmax, dt), opt, threads);
      emit(g, qsep::trajectory_csv(traj, metadata(g, {"hamiltonian=" + ham, "n=" + std::to_string(n),
                                                      "optimizer=" + optimizer_label(opt)})));
    } else if (*table) {
      const bool text = table_fmt == "text";
      if (which == 1) {
        const auto t = qsep::table1({3, 4, 5, 6});
        emit(g, text ? qsep::table1_text(t) : qsep::table1_csv(t));
      } else if (which == 2) {
        const auto sc = make_sampler(g, samples, bins);
        const auto t = qsep::table2(sc, qsep::default_sampling_optimizer(g.seed));
        emit(g, qsep::table2_csv(t));
      } else {
        const auto opt = make_optimizer(g, "multistart", restarts);
        const auto rows = qsep::table3(opt, threads);
        emit(g, text ? qsep::table3_text(rows) : qsep::table3_csv(rows));
      }
    } else if (*dicke) {
      std::optional<qsep::DickeLabel> label;
      try {
        label = qsep::DickeLabel::from_m(n, m);
      } catch (const qsep::Error& e) {
        throw UsageError(e.what());
      }
      double q;
      if (exact) {
        q = qsep::dicke_q_exact(*label);
      } else if (asymptotic) {
        q = qsep::dicke_q_asymptotic(*label);
      } else {
        if (n > qsep::kDefaultQubitCap) throw UsageError("optimization is limited to 12 qubits; use --exact");
        q = qsep::optimize_q(qsep::dicke(*label), make_optimizer(g, "multistart", restarts)).q;
      }
      emit(g, qsep::format_real(q) + "\n");
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
