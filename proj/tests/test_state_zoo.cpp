#include <doctest.h>

#include <bit>
#include <fstream>

#include <json.hpp>

#include "oracles.hpp"
#include "qsep/error.hpp"
#include "qsep/optimizer.hpp"
#include "qsep/state_zoo.hpp"

using namespace qsep;

namespace {

// Every reduction of an AME(N,2) state to floor(N/2) qubits is I / 2^floor(N/2).
double ame_marginal_error(int n) {
  const auto s = ame(n);
  const int keep = n / 2;
  double worst = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != n - keep) continue;
    std::vector<int> discard;
    for (int q = 0; q < n; ++q)
      if (mask & (1u << q)) discard.push_back(q);
    const ComplexMatrix r = oracle::partial_trace(s.to_density(), n, discard);
    const ComplexMatrix target = ComplexMatrix::Identity(r.rows(), r.cols()) / static_cast<double>(r.rows());
    worst = std::max(worst, (r - target).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

TEST_SUITE("state-zoo") {
  TEST_CASE("ghz") {
    const auto g = ghz(3);
    CHECK(std::abs(g.amplitudes()(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(g.amplitudes()(7) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(ghz(2).n_qubits() == 2);
    CHECK_THROWS_AS(ghz(1), Error);
    OptimizerConfig cfg;
    CHECK(optimize_q(ghz(2), cfg).q == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("dicke states") {
    const auto w = dicke(DickeLabel::from_m(3, -0.5));
    for (int idx : {1, 2, 4}) CHECK(std::abs(w.amplitudes()(idx) - 1.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(w.amplitudes().norm() - 1.0) < 1e-12);
    const auto top = dicke(DickeLabel::from_m(5, 2.5));
    CHECK(std::abs(top.amplitudes()(31)) == doctest::Approx(1.0));
    const auto d4 = dicke(DickeLabel::from_m(4, 0));
    int nonzero = 0;
    for (const auto& a : d4.amplitudes())
      if (std::abs(a) > 0) {
        ++nonzero;
        CHECK(std::abs(a - 1.0 / std::sqrt(6.0)) < 1e-15);
      }
    CHECK(nonzero == 6);
    CHECK_THROWS_AS(DickeLabel::from_m(4, 0.5), Error);
    CHECK_THROWS_AS(DickeLabel::from_m(4, 3), Error);
    CHECK_THROWS_AS(DickeLabel::from_m(1, 0.5), Error);
    // Weight-k enumeration agrees with a popcount filter.
    for (int n = 2; n <= 8; ++n)
      for (int k = 0; k <= n; ++k) {
        const auto s = dicke(DickeLabel::from_excitations(n, k));
        for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i)
          CHECK((std::abs(s.amplitudes()(i)) > 0) == (std::popcount(static_cast<unsigned>(i)) == k));
      }
  }

  TEST_CASE("dicke closed forms") {
    CHECK(dicke_q_exact(DickeLabel::from_m(3, -0.5)) == doctest::Approx(std::log2(3.0)));
    CHECK(dicke_q_exact(DickeLabel::from_m(4, 0)) == doctest::Approx(std::log2(6.0)));
    CHECK(dicke_q_exact(DickeLabel::from_m(7, 3.5)) == doctest::Approx(0.0));
    for (int n = 2; n <= 30; ++n)
      for (int k = 0; k <= n; ++k)
        CHECK(dicke_q_exact(DickeLabel::from_excitations(n, k)) ==
              doctest::Approx(std::log2(oracle::binomial(n, k))).epsilon(1e-12));
    auto gap = [](int n, double m) {
      const auto l = DickeLabel::from_m(n, m);
      return std::abs(dicke_q_exact(l) - dicke_q_asymptotic(l));
    };
    CHECK(gap(100, 0) < 0.01);
    CHECK(gap(1000, 0) < 0.002);
    CHECK(gap(100, 5) <= 0.05);
  }

  TEST_CASE("ame data") {
    const auto a5 = ame_coefficients(5);
    CHECK(a5.size() == 32);
    for (int i = 0; i < 5; ++i) CHECK(a5[static_cast<std::size_t>(i)] == 1);
    CHECK(ame_coefficients(6).size() == 64);
    CHECK(ame_checksum(5) == 68);
    CHECK(ame_checksum(6) == -520);
    CHECK_THROWS_AS(ame(4), Error);
    const auto a5_state = ame(5);
    for (const auto& z : a5_state.amplitudes()) CHECK(std::abs(std::abs(z) - std::pow(2.0, -2.5)) < 1e-15);
    CHECK(ame_marginal_error(5) < 1e-10);
    CHECK(ame_marginal_error(6) < 1e-10);
  }

  TEST_CASE("ame(6) two-qubit marginals") {
    const auto s = ame(6).to_density();
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        std::vector<int> discard;
        for (int q = 0; q < 6; ++q)
          if (q != i && q != j) discard.push_back(q);
        CHECK((oracle::partial_trace(s, 6, discard) - ComplexMatrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() <
              1e-10);
      }
  }

  TEST_CASE("the five-qubit completion is the only AME one") {
    // The 31 printed signs; try every position and sign for the missing one.
    const std::vector<int> printed = {1, 1, 1, 1, 1,  -1, -1, 1, 1,  -1, -1, 1, 1, 1,  1, 1,
                                      1, -1, -1, 1, -1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1};
    REQUIRE(printed.size() == 31);
    const auto full = ame_coefficients(5);
    int ame_completions = 0;
    std::vector<int> found;
    for (int pos = 0; pos <= 31; ++pos)
      for (int sign : {-1, 1}) {
        std::vector<int> c = printed;
        c.insert(c.begin() + pos, sign);
        ComplexVector v(32);
        for (int i = 0; i < 32; ++i) v(i) = c[static_cast<std::size_t>(i)] / std::sqrt(32.0);
        const ComplexMatrix rho = v * v.adjoint();
        bool ok = true;
        for (int a = 0; a < 5 && ok; ++a)
          for (int b = a + 1; b < 5 && ok; ++b) {
            std::vector<int> discard;
            for (int q = 0; q < 5; ++q)
              if (q != a && q != b) discard.push_back(q);
            ok = (oracle::partial_trace(rho, 5, discard) - ComplexMatrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() <
                 1e-10;
          }
        if (ok) {
          ++ame_completions;
          if (found.empty()) found = c;
          CHECK(c == found);
        }
      }
    CHECK(ame_completions > 0);
    CHECK(found == std::vector<int>(full.begin(), full.end()));
  }

  TEST_CASE("four-qubit representatives") {
    const auto e8 = four_qubit_class(FourQubitClass::E8);
    ComplexVector zero(2);
    zero << 1.0, 0.0;
    CHECK((e8.amplitudes() - tensor(new_pure(zero), ghz(3)).amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
    const auto g = four_qubit_class(FourQubitClass::G, {1, 1, 1, 1});
    for (int idx : {0b0000, 0b0101, 0b1010, 0b1111}) CHECK(std::abs(g.amplitudes()(idx) - 0.5) < 1e-15);
    OptimizerConfig cfg;
    CHECK(optimize_q(g, cfg).q == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(optimize_q(e8, cfg).q == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(optimize_q(four_qubit_class(FourQubitClass::E7), cfg).q == doctest::Approx(1.76).epsilon(0.02 / 1.76));
    CHECK_THROWS_AS(four_qubit_class(FourQubitClass::G, {0, 0, 0, 0}), Error);
    // E3 and E4 carry imaginary amplitudes.
    const auto e4 = four_qubit_amplitudes(FourQubitClass::E4, {1, 0, 0, 0});
    CHECK(e4(0b0001) == Complex(0, 1));
    CHECK(e4(0b1011) == Complex(0, -1));
    CHECK(std::abs(four_qubit_amplitudes(FourQubitClass::E3, {1, 0, 0, 0})(0b0111).imag() - 1 / std::sqrt(2.0)) <
          1e-15);
    for (auto c : kFourQubitClasses) {
      CHECK(parse_four_qubit_class(to_string(c)) == c);
      CHECK(std::abs(four_qubit_class(c).amplitudes().norm() - 1.0) < 1e-12);
    }
    CHECK_FALSE(parse_four_qubit_class("E9"));
  }

  TEST_CASE("stored defaults match the data file") {
    std::ifstream f(QSEP_SOURCE_DIR "/data/class4_defaults.json");
    REQUIRE(f);
    const auto doc = nlohmann::json::parse(f);
    CHECK(doc["version"] == std::string(kFourQubitDefaultsVersion));
    OptimizerConfig cfg;
    for (auto c : kFourQubitClasses) {
      const auto& row = doc["classes"][std::string(to_string(c))];
      const auto p = default_params(c);
      CHECK(row["a"].get<double>() == p.a);
      CHECK(row["b"].get<double>() == p.b);
      CHECK(row["c"].get<double>() == p.c);
      CHECK(row["d"].get<double>() == p.d);
      CHECK(optimize_q(four_qubit_class(c), cfg).q == doctest::Approx(row["q"].get<double>()).epsilon(1e-4));
    }
  }

  TEST_CASE("product states") {
    CHECK(std::abs(product_state(ProductBasis::uniform(3, BlochDirection::z())).amplitudes()(0) - 1.0) < 1e-15);
    const auto one = product_state(ProductBasis{{BlochDirection{1.0, 2.0}}});
    CHECK(one.n_qubits() == 1);
    CHECK(std::abs(one.amplitudes()(1) - std::polar(std::sin(0.5), 2.0)) < 1e-15);
  }
}
