#pragma once

#include <string>

namespace qsep {

/// 12 significant digits; -inf prints as the literal token "-inf".
std::string format_real(double x);

/// x rounded to 12 significant digits (non-finite values pass through).
double round12(double x);

}  // namespace qsep
