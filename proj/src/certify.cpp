#include "qsep/certify.hpp"

#include <cmath>
#include <sstream>

#include "qsep/error.hpp"
#include "qsep/types.hpp"

namespace qsep {

SeparabilityCertificate certify(double q, int n_qubits, double margin) {
  if (n_qubits < 2) {
    std::ostringstream os;
    os << "certification needs n_qubits >= 2, got " << n_qubits;
    throw Error(ErrorKind::BadN, os.str());
  }
  SeparabilityCertificate cert;
  cert.n_qubits = n_qubits;
  cert.q = q;
  if (is_no_coherence(q) || std::isnan(q)) return cert;
  const double x = q - margin;
  const int n = n_qubits;
  // N-separable states obey q <= 0, the k = N row of q <= N - k.
  if (x > 0.0) {
    int k = static_cast<int>(std::floor(static_cast<double>(n) - x)) + 1;
    if (k < 2) k = 2;
    if (k <= n) cert.k_min_excluded = k;
    // On a boundary q = N-1-n the larger n (weaker depth claim) wins.
    int singles = static_cast<int>(std::floor(static_cast<double>(n - 1) - x));
    if (singles < 0) singles = 0;
    cert.depth_indicator = n - singles;
  }
  cert.genuinely_entangled = x > static_cast<double>(n - 2);
  return cert;
}

}  // namespace qsep
