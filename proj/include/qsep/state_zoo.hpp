#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "qsep/correlator.hpp"
#include "qsep/quantum_state.hpp"

namespace qsep {

/// (|0~...0~> + |1~...1~>)/sqrt(2) in the given per-qubit axes (z by default).
QuantumState ghz(int n, const std::optional<ProductBasis>& axes = std::nullopt);

/// Tensor product of the |0~> states of each direction.
QuantumState product_state(const ProductBasis& directions);

/// Symmetric Dicke state |J = N/2, m>, stored as twice the magnetization so
/// half-integer m is exact. Excitations k = m + N/2.
class DickeLabel {
 public:
  /// Throws BadLabel unless N >= 2, |m| <= N/2 and m + N/2 is an integer.
  static DickeLabel from_m(int n_qubits, double m);
  static DickeLabel from_excitations(int n_qubits, int excitations);

  int n_qubits() const { return n_; }
  int excitations() const { return k_; }
  double m() const { return k_ - n_ / 2.0; }

 private:
  DickeLabel(int n, int k) : n_(n), k_(k) {}
  int n_;
  int k_;
};

QuantumState dicke(const DickeLabel& label);

/// Q = 2 log4 binom(N, k), evaluated through lgamma so large N is fine.
double dicke_q_exact(const DickeLabel& label);

/// Large-N form N - log4 N - 4 (m^2/N) log4 e + log4(2/pi).
double dicke_q_asymptotic(const DickeLabel& label);

/// AME(N,2) for N in {5, 6}: 2^{-N/2} sum_i alpha_i |i>.
QuantumState ame(int n);
std::span<const std::int8_t> ame_coefficients(int n);
/// Position-weighted checksum sum_i (i+1) alpha_i of an embedded list.
std::int64_t ame_checksum(int n);

enum class FourQubitClass { G, E1, E2, E3, E4, E5, E6, E7, E8 };
inline constexpr std::array<FourQubitClass, 9> kFourQubitClasses = {
    FourQubitClass::G,  FourQubitClass::E1, FourQubitClass::E2, FourQubitClass::E3, FourQubitClass::E4,
    FourQubitClass::E5, FourQubitClass::E6, FourQubitClass::E7, FourQubitClass::E8};

std::string_view to_string(FourQubitClass c);
std::optional<FourQubitClass> parse_four_qubit_class(std::string_view name);
/// Number of the parameters a, b, c, d the class representative uses.
int parameter_count(FourQubitClass c);

struct FourQubitParams {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double d = 1.0;
};

/// Stored defaults from the bounded parameter search (tools/class4_search).
inline constexpr std::string_view kFourQubitDefaultsVersion = "class4-defaults-v1";
FourQubitParams default_params(FourQubitClass c);

/// Normalized class representative; throws BadParams on a zero-norm result.
QuantumState four_qubit_class(FourQubitClass c, const FourQubitParams& params);
QuantumState four_qubit_class(FourQubitClass c);

/// Unnormalized amplitudes of the representative.
ComplexVector four_qubit_amplitudes(FourQubitClass c, const FourQubitParams& params);

}  // namespace qsep
