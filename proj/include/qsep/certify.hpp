#pragma once

#include <optional>

namespace qsep {

/// What a correlator value certifies about an N-qubit state.
///
/// k_min_excluded is the smallest k >= 2 with q > N - k: the state is not
/// k-separable for any k >= k_min_excluded. depth_indicator applies the
/// single-block partition bound N-1-(n+1) < q <= N-1-n and reports
/// d_e = N - n; it is only meaningful under that partition assumption, so it
/// is kept apart from the unconditional separability fields.
struct SeparabilityCertificate {
  int n_qubits = 0;
  double q = 0.0;
  std::optional<int> k_min_excluded;
  bool genuinely_entangled = false;
  std::optional<int> depth_indicator;
};

/// `margin` is subtracted from q before the comparisons; reports use a small
/// positive margin so rounding above an exact bound certifies nothing.
SeparabilityCertificate certify(double q, int n_qubits, double margin = 0.0);

}  // namespace qsep
