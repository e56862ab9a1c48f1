// special.hpp — Bessel and Chebyshev functions of integer order
#pragma once

#include <vector>

namespace vibrolang::special {

/// Bessel function of the first kind J_n(x) for integer n >= 0 and real x.
/// Uses the ascending series for small x, the Hankel expansion when x >> n^2,
/// and Miller's backward recurrence otherwise.
double bessel_j(int n, double x);

/// J_0(x) .. J_nmax(x) from a single recurrence pass.
std::vector<double> bessel_j_sequence(int nmax, double x);

/// J_1(x)/x, finite at x = 0 (value 1/2).
double bessel_j1_over_x(double x);

/// Modified Bessel function I_n(x), integer n (I_{-n} = I_n).
double bessel_i(int n, double x);

/// e^{-|x|} I_n(x); usable where I_n itself would overflow.
double bessel_i_scaled(int n, double x);

/// Chebyshev polynomials of the first and second kind.
double chebyshev_t(int n, double x);
double chebyshev_u(int n, double x);

} // namespace vibrolang::special
