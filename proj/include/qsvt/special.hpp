#pragma once

#include <stdexcept>

namespace qsvt {

/// Bessel function of the first kind J_m(x), integer order m >= 0.
/// Computed by Miller's backward recurrence with series normalization;
/// accurate to ~1e-14 absolute for moderate |x|.
double bessel_j(int m, double x);

/// Chebyshev polynomial of the first kind T_k(x), valid for all real x.
double chebyshev_t(int k, double x);

/// Principal branch of the Lambert W function, W(x) e^{W(x)} = x.
/// Requires x >= -1/e; throws std::domain_error otherwise.
double lambert_w(double x);

}  // namespace qsvt
