// Bounded search over the free parameters of the four-qubit class
// representatives, maximizing the optimized correlator. Prints one JSON object
// per class; its output is what default_params() stores.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsep/error.hpp"
#include "qsep/format.hpp"
#include "qsep/nelder_mead.hpp"
#include "qsep/optimizer.hpp"
#include "qsep/rng.hpp"
#include "qsep/state_zoo.hpp"

namespace {

using qsep::FourQubitClass;
using qsep::FourQubitParams;

FourQubitParams unpack(FourQubitClass c, const std::vector<double>& x) {
  FourQubitParams p = qsep::default_params(c);
  double* slots[] = {&p.a, &p.b, &p.c, &p.d};
  for (std::size_t i = 0; i < x.size(); ++i) *slots[i] = x[i];
  return p;
}

double q_at(FourQubitClass c, const FourQubitParams& p, const qsep::OptimizerConfig& cfg) {
  try {
    return qsep::optimize_q(qsep::four_qubit_class(c, p), cfg).q;
  } catch (const qsep::Error&) {
    return -1e9;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded parameter search for four-qubit class representatives"};
  std::vector<std::string> names;
  double radius = 3.0;
  int starts = 12;
  int restarts = 12;
  std::uint64_t seed = 7;
  app.add_option("--class", names, "Classes to search (default: all parametrized)");
  app.add_option("--radius", radius, "Half-width of the parameter box")->check(CLI::PositiveNumber);
  app.add_option("--starts", starts, "Outer Nelder-Mead starts")->check(CLI::PositiveNumber);
  app.add_option("--restarts", restarts, "Inner optimizer restarts")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed");
  CLI11_PARSE(app, argc, argv);

  std::vector<FourQubitClass> classes;
  if (names.empty()) {
    for (auto c : qsep::kFourQubitClasses)
      if (qsep::parameter_count(c) > 0) classes.push_back(c);
  } else {
    for (const auto& n : names) {
      const auto c = qsep::parse_four_qubit_class(n);
      if (!c) {
        std::cerr << "unknown class " << n << "\n";
        return 2;
      }
      classes.push_back(*c);
    }
  }

  qsep::OptimizerConfig inner;
  inner.method = qsep::OptimizerMethod::CoordinateAscent;
  inner.restarts = restarts;
  inner.seed = seed;
  qsep::OptimizerConfig polish = inner;
  polish.method = qsep::OptimizerMethod::MultistartLocal;
  polish.restarts = 4 * restarts;

  for (FourQubitClass c : classes) {
    const int k = qsep::parameter_count(c);
    // Parameters outside the box are clamped onto its surface.
    auto clamp = [&](std::vector<double> x) {
      for (double& v : x) v = std::clamp(v, -radius, radius);
      return x;
    };
    auto objective = [&](const std::vector<double>& x) { return -q_at(c, unpack(c, clamp(x)), inner); };
    std::vector<double> best_x;
    double best = -1e9;
    qsep::Rng rng(seed, static_cast<std::uint64_t>(c));
    qsep::NelderMeadOptions opts;
    opts.initial_step = 0.25 * radius;
    opts.max_iterations = 300;
    opts.f_tolerance = 1e-9;
    for (int s = 0; s < starts; ++s) {
      std::vector<double> x0(static_cast<std::size_t>(k));
      for (double& v : x0) v = rng.uniform(-radius, radius);
      const auto res = qsep::nelder_mead(objective, x0, opts);
      const double q = -res.value;
      if (q > best) {
        best = q;
        best_x = clamp(res.x);
      }
    }
    const FourQubitParams p = unpack(c, best_x);
    const double q = q_at(c, p, polish);
    nlohmann::json out = {{"class", std::string(qsep::to_string(c))},
                          {"radius", radius},
                          {"a", qsep::round12(p.a)},
                          {"b", qsep::round12(p.b)},
                          {"c", qsep::round12(p.c)},
                          {"d", qsep::round12(p.d)},
                          {"q", qsep::round12(q)}};
    std::cout << out.dump() << std::endl;
  }
  return 0;
}
