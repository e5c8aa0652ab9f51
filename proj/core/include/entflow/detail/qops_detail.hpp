#pragma once

#include "entflow/qops.hpp"

// Individual concurrence routes, exposed for cross-checking in tests.
namespace entflow::qops::detail {

// Nonzero entries only on the diagonal and anti-diagonal (exact zeros elsewhere).
bool is_x_form(const ComplexMatrix& m);

// 2 max{0, |r03| - sqrt(r11 r22), |r12| - sqrt(r00 r33)}.
double wootters_x_form(const ComplexMatrix& m);

// Spectral route valid for any two-qubit density matrix.
double wootters_general(const ComplexMatrix& m);

}  // namespace entflow::qops::detail
