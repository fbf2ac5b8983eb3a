#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qsep/channels.hpp"
#include "qsep/error.hpp"
#include "qsep/state_zoo.hpp"

using namespace qsep;

namespace {

OptimizerConfig quick() {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  return cfg;
}

}  // namespace

TEST_SUITE("channels") {
  TEST_CASE("identity at p = 0") {
    const auto g = ghz(3);
    CHECK((depolarize(g, 0.0).to_density() - g.to_density()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((dephase(g, 0.0, 1).to_density() - g.to_density()).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("depolarizing law on GHZ") {
    const auto g = ghz(3);
    for (double p : {0.1, 0.25, 0.5, 0.9}) {
      const double q = optimize_q(depolarize(g, p), quick()).q;
      CHECK(q == doctest::Approx(2.0 + 2.0 * std::log(1.0 - p) / std::log(4.0)).epsilon(1e-6));
    }
    CHECK(optimize_q(depolarize(g, 0.5), quick()).q == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(is_no_coherence(optimize_q(depolarize(g, 1.0), quick()).q));
  }

  TEST_CASE("dephasing in the computational basis") {
    const auto g = ghz(3);
    const auto z = ProductBasis::uniform(3, BlochDirection::z());
    for (double p : {0.2, 0.5, 0.8})
      CHECK(q_fixed_basis(dephase(g, p, 0), z) ==
            doctest::Approx(2.0 + 2.0 * std::log(1.0 - p) / std::log(4.0)).epsilon(1e-9));
    CHECK(is_no_coherence(q_fixed_basis(dephase(g, 1.0, 2), z)));
    // (|0..0><0..0| + |1..1><1..1|)/2 has C = (prod_k a_k + prod_k (-a_k))/2
    // with a_k = -e^{-i phi_k} sin(theta_k)/2: zero for odd N, and |C| = 2^-N
    // (Q = 0) at best for even N.
    CHECK(is_no_coherence(optimize_q(dephase(g, 1.0, 2), quick()).q));
    CHECK(optimize_q(dephase(ghz(4), 1.0, 2), quick()).q == doctest::Approx(0.0).epsilon(1e-6));
  }

  TEST_CASE("dephasing matches the Kraus form") {
    Rng rng(3);
    const ComplexMatrix rho = oracle::random_mixed(3, rng);
    Eigen::Matrix2cd zm;
    zm << 1, 0, 0, -1;
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    const double p = 0.3;
    for (int k = 0; k < 3; ++k) {
      ComplexMatrix zk = ComplexMatrix::Identity(1, 1);
      for (int q = 0; q < 3; ++q) zk = oracle::kron(zk, q == k ? ComplexMatrix(zm) : id);
      const ComplexMatrix expect = (1 - p / 2) * rho + (p / 2) * zk * rho * zk;
      CHECK((dephase(new_mixed(rho), p, k).to_density() - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
  }

  TEST_CASE("argument errors") {
    const auto g = ghz(3);
    CHECK_THROWS_AS(depolarize(g, -0.1), Error);
    CHECK_THROWS_AS(depolarize(g, 1.1), Error);
    CHECK_THROWS_AS(dephase(g, 0.5, 3), Error);
    CHECK_THROWS_AS(dephase(g, 0.5, -1), Error);
    CHECK_THROWS_AS(dephase(g, std::nan(""), 0), Error);
    try {
      depolarize(g, 2.0);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BadP);
    }
    CHECK(parse_channel_kind("dephasing") == ChannelKind::Dephasing);
    CHECK_FALSE(parse_channel_kind("amplitude").has_value());
  }

  TEST_CASE("trace and positivity are preserved") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
      const int n = 1 + i % 4;
      const auto s = new_mixed(oracle::random_mixed(n, rng, 1 + i % 3));
      const double p = rng.uniform();
      for (const auto& out : {depolarize(s, p), dephase(s, p, i % n)}) {
        const ComplexMatrix r = out.to_density();
        CHECK(std::abs(r.trace() - 1.0) < 1e-12);
        CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(oracle::min_eigenvalue(r) > -1e-12);
      }
    }
  }

  TEST_CASE("noise sweeps") {
    const std::vector<double> grid = {0.0, 0.1, 0.2};
    const auto dep = noise_sweep(ghz(3), ChannelKind::Depolarizing, grid, quick(), 1);
    REQUIRE(dep.size() == 3);
    for (const auto& pt : dep) {
      CHECK(pt.q_min == pt.q_max);
      CHECK(pt.q_mean == doctest::Approx(2.0 + 2.0 * std::log(1.0 - pt.p) / std::log(4.0)).epsilon(1e-6));
    }
    const auto bell = noise_sweep(ghz(2), ChannelKind::Dephasing, grid, quick(), 1);
    for (const auto& pt : bell) {
      CHECK(pt.q_min <= pt.q_mean);
      CHECK(pt.q_mean <= pt.q_max);
    }
    for (std::size_t i = 1; i < bell.size(); ++i) CHECK(bell[i].q_max <= bell[i - 1].q_max + 1e-9);
    const auto csv = noise_csv(dep, ChannelKind::Depolarizing, "ghz3", {"seed=1"});
    CHECK(csv.find("p,q_min,q_mean,q_max,channel,state_label\n") != std::string::npos);
    CHECK(csv.find(",depolarizing,ghz3") != std::string::npos);
  }
}
