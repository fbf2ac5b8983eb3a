#include "qsep/state_zoo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qsep/error.hpp"

namespace qsep {

QuantumState ghz(int n, const std::optional<ProductBasis>& axes) {
  if (n < 2) throw Error(ErrorKind::BadN, "GHZ needs n >= 2");
  const ProductBasis basis = axes ? *axes : ProductBasis::uniform(n, BlochDirection::z());
  if (basis.size() != n) throw Error(ErrorKind::DimensionMismatch, "one axis per qubit required");
  ComplexVector up = ComplexVector::Ones(1);
  ComplexVector down = ComplexVector::Ones(1);
  for (const auto& d : basis.directions) {
    const Eigen::Vector2cd a = d.up();
    const Eigen::Vector2cd b = d.down();
    ComplexVector nu(up.size() * 2);
    ComplexVector nd(down.size() * 2);
    for (Eigen::Index i = 0; i < up.size(); ++i) {
      nu(2 * i) = up(i) * a(0);
      nu(2 * i + 1) = up(i) * a(1);
      nd(2 * i) = down(i) * b(0);
      nd(2 * i + 1) = down(i) * b(1);
    }
    up = std::move(nu);
    down = std::move(nd);
  }
  return QuantumState::pure((up + down) / std::sqrt(2.0));
}

QuantumState product_state(const ProductBasis& directions) {
  if (directions.size() < 1) throw Error(ErrorKind::BadN, "product state needs at least one qubit");
  ComplexVector v = ComplexVector::Ones(1);
  for (const auto& d : directions.directions) {
    const Eigen::Vector2cd a = d.up();
    ComplexVector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * a(0);
      next(2 * i + 1) = v(i) * a(1);
    }
    v = std::move(next);
  }
  return QuantumState::pure(std::move(v));
}

DickeLabel DickeLabel::from_m(int n_qubits, double m) {
  if (n_qubits < 2) throw Error(ErrorKind::BadLabel, "Dicke states need N >= 2");
  const double k = m + n_qubits / 2.0;
  const double kr = std::round(k);
  if (std::abs(k - kr) > 1e-9 || kr < 0 || kr > n_qubits) {
    std::ostringstream os;
    os << "m = " << m << " is not a magnetization of " << n_qubits << " qubits";
    throw Error(ErrorKind::BadLabel, os.str());
  }
  return DickeLabel(n_qubits, static_cast<int>(kr));
}

DickeLabel DickeLabel::from_excitations(int n_qubits, int excitations) {
  if (n_qubits < 2) throw Error(ErrorKind::BadLabel, "Dicke states need N >= 2");
  if (excitations < 0 || excitations > n_qubits) throw Error(ErrorKind::BadLabel, "excitations outside [0, N]");
  return DickeLabel(n_qubits, excitations);
}

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

QuantumState dicke(const DickeLabel& label) {
  const int n = label.n_qubits();
  const int k = label.excitations();
  if (n > kDefaultQubitCap) throw Error(ErrorKind::CapExceeded, "Dicke state exceeds the qubit cap");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim_of(n)));
  const double amp = std::exp(-0.5 * log_binomial(n, k));
  // Gosper's hack: successive integers with exactly k set bits.
  if (k == 0) {
    v(0) = 1.0;
  } else {
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t x = (std::uint64_t{1} << k) - 1; x < limit;) {
      v(static_cast<Eigen::Index>(x)) = amp;
      const std::uint64_t c = x & (~x + 1);
      const std::uint64_t r = x + c;
      x = (((r ^ x) >> 2) / c) | r;
    }
  }
  return QuantumState::pure(std::move(v));
}

double dicke_q_exact(const DickeLabel& label) {
  // 2 log4 x = log2 x.
  return log_binomial(label.n_qubits(), label.excitations()) / std::numbers::ln2;
}

double dicke_q_asymptotic(const DickeLabel& label) {
  const double n = label.n_qubits();
  const double m = label.m();
  const double ln4 = std::log(4.0);
  return n - std::log(n) / ln4 - 4.0 * (m * m / n) / ln4 + std::log(2.0 / std::numbers::pi) / ln4;
}

namespace {

// The printed five-qubit list has 31 entries. Inserting a single +1 into the
// run of ones at indices 11..17 is the only completion whose one- and
// two-qubit marginals are maximally mixed (brute force over all 64 insertions).
constexpr std::array<std::int8_t, 32> kAme5 = {
    1, 1, 1, 1, 1, -1, -1, 1, 1, -1, -1, 1,  1, 1, 1,  1,
    1, 1, -1, -1, 1, -1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1};

constexpr std::array<std::int8_t, 64> kAme6 = {
    -1, -1, -1, 1,  -1, 1,  1,  1,  -1, -1, -1, 1,  1,  -1, -1, -1,
    -1, -1, 1,  -1, -1, 1,  -1, -1, 1,  1,  -1, 1,  -1, 1,  -1, -1,
    -1, 1,  -1, -1, -1, -1, 1,  -1, 1,  -1, 1,  1,  -1, -1, 1,  -1,
    1,  -1, -1, -1, 1,  1,  1,  -1, 1,  -1, -1, -1, -1, -1, -1, 1};

}  // namespace

std::span<const std::int8_t> ame_coefficients(int n) {
  if (n == 5) return kAme5;
  if (n == 6) return kAme6;
  std::ostringstream os;
  os << "AME(N,2) coefficients exist for N in {5, 6}, got " << n;
  throw Error(ErrorKind::BadN, os.str());
}

std::int64_t ame_checksum(int n) {
  std::int64_t sum = 0;
  const auto coeffs = ame_coefficients(n);
  for (std::size_t i = 0; i < coeffs.size(); ++i) sum += static_cast<std::int64_t>(i + 1) * coeffs[i];
  return sum;
}

QuantumState ame(int n) {
  const auto coeffs = ame_coefficients(n);
  ComplexVector v(static_cast<Eigen::Index>(coeffs.size()));
  const double scale = std::pow(2.0, -n / 2.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) v(static_cast<Eigen::Index>(i)) = scale * coeffs[i];
  return QuantumState::pure(std::move(v));
}

std::string_view to_string(FourQubitClass c) {
  switch (c) {
    case FourQubitClass::G: return "G";
    case FourQubitClass::E1: return "E1";
    case FourQubitClass::E2: return "E2";
    case FourQubitClass::E3: return "E3";
    case FourQubitClass::E4: return "E4";
    case FourQubitClass::E5: return "E5";
    case FourQubitClass::E6: return "E6";
    case FourQubitClass::E7: return "E7";
    case FourQubitClass::E8: return "E8";
  }
  return "?";
}

std::optional<FourQubitClass> parse_four_qubit_class(std::string_view name) {
  for (FourQubitClass c : kFourQubitClasses)
    if (to_string(c) == name) return c;
  return std::nullopt;
}

int parameter_count(FourQubitClass c) {
  switch (c) {
    case FourQubitClass::G: return 4;
    case FourQubitClass::E1: return 3;
    case FourQubitClass::E2:
    case FourQubitClass::E3: return 2;
    case FourQubitClass::E4:
    case FourQubitClass::E5: return 1;
    default: return 0;
  }
}

FourQubitParams default_params(FourQubitClass c) {
  // tools/class4_search --radius 10, with components below 1e-4 set to zero
  // (data/class4_defaults.json). E1, E2, E3 and E5 sit on the box surface:
  // their suprema are approached only as the parameters grow without bound.
  switch (c) {
    case FourQubitClass::G: return {10.0, 0.0, 10.0, 0.0};
    case FourQubitClass::E1: return {10.0, 10.0, 0.0, 0.0};
    case FourQubitClass::E2: return {0.0, -10.0, 0.0, 0.0};
    case FourQubitClass::E3: return {-10.0, 0.0, 0.0, 0.0};
    case FourQubitClass::E4: return {1.34164064978, 0.0, 0.0, 0.0};
    case FourQubitClass::E5: return {10.0, 0.0, 0.0, 0.0};
    default: return {0.0, 0.0, 0.0, 0.0};
  }
}

ComplexVector four_qubit_amplitudes(FourQubitClass cls, const FourQubitParams& p) {
  ComplexVector v = ComplexVector::Zero(16);
  auto add = [&v](unsigned index, Complex amp) { v(index) += amp; };
  const Complex i1(0.0, 1.0);
  const double a = p.a, b = p.b, c = p.c, d = p.d;
  switch (cls) {
    case FourQubitClass::G:
      add(0b0000, (a + b) / 2); add(0b1111, (a + b) / 2);
      add(0b0011, (a - d) / 2); add(0b1100, (a - d) / 2);
      add(0b0101, (b + c) / 2); add(0b1010, (b + c) / 2);
      add(0b0110, (b - c) / 2); add(0b1001, (b - c) / 2);
      break;
    case FourQubitClass::E1:
      add(0b0000, (a + b) / 2); add(0b1111, (a + b) / 2);
      add(0b0011, (a - b) / 2); add(0b1100, (a - b) / 2);
      add(0b0101, c); add(0b1010, c);
      add(0b0110, 1.0);
      break;
    case FourQubitClass::E2:
      add(0b0000, a); add(0b1111, a);
      add(0b0101, b); add(0b1010, b);
      add(0b0110, 1.0); add(0b0011, 1.0);
      break;
    case FourQubitClass::E3: {
      add(0b0000, a); add(0b1111, a);
      add(0b0101, (a + b) / 2); add(0b1010, (a + b) / 2);
      add(0b0110, (a - b) / 2); add(0b1001, (a - b) / 2);
      const Complex t = i1 / std::sqrt(2.0);
      add(0b0001, t); add(0b0010, t); add(0b0111, t); add(0b1011, t);
      break;
    }
    case FourQubitClass::E4:
      add(0b0000, a); add(0b0101, a); add(0b1010, a); add(0b1111, a);
      add(0b0001, i1); add(0b0110, 1.0); add(0b1011, -i1);
      break;
    case FourQubitClass::E5:
      add(0b0000, a); add(0b1111, a);
      add(0b0011, 1.0); add(0b0101, 1.0); add(0b0110, 1.0);
      break;
    case FourQubitClass::E6:
      add(0b0000, 1.0); add(0b0101, 1.0); add(0b1000, 1.0); add(0b1110, 1.0);
      break;
    case FourQubitClass::E7:
      add(0b0000, 1.0); add(0b1011, 1.0); add(0b1101, 1.0); add(0b1110, 1.0);
      break;
    case FourQubitClass::E8:
      add(0b0000, 1.0); add(0b0111, 1.0);
      break;
  }
  return v;
}

QuantumState four_qubit_class(FourQubitClass c, const FourQubitParams& params) {
  ComplexVector v = four_qubit_amplitudes(c, params);
  const double norm = v.norm();
  if (!(norm > 1e-12) || !std::isfinite(norm)) {
    std::ostringstream os;
    os << "parameters give a zero-norm " << to_string(c) << " representative";
    throw Error(ErrorKind::BadParams, os.str());
  }
  return QuantumState::pure(v / norm);
}

QuantumState four_qubit_class(FourQubitClass c) { return four_qubit_class(c, default_params(c)); }

}  // namespace qsep
