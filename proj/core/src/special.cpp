// special.cpp — Bessel and Chebyshev functions of integer order
#include "vibrolang/special.hpp"

#include "vibrolang/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vibrolang::special {
namespace {

constexpr double kRescale = 1e250;

bool use_series(int n, double x) { return x < 1.0 || 0.25 * x * x < 0.5 * (n + 1); }

bool use_hankel(int n, double x) { return x > std::max(40.0, 2.0 * double(n) * double(n)); }

// Ascending series; x >= 0.
double j_series(int n, double x) {
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    const double lead = std::exp(n * std::log(0.5 * x) - std::lgamma(n + 1.0));
    if (lead == 0.0) return 0.0;
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= -q / (double(k) * double(n + k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return lead * sum;
}

// Hankel asymptotic expansion for x >> n^2.
double j_hankel(int n, double x) {
    const double mu = 4.0 * double(n) * double(n);
    const double z = 8.0 * x;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = 1e300;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (double(k) * z);
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        // k odd feeds Q, k even feeds P; signs alternate in pairs.
        const int r = k % 4;
        if (r == 1) q += term;
        else if (r == 2) p -= term;
        else if (r == 3) q -= term;
        else p += term;
        if (std::abs(term) < 1e-17) break;
    }
    const double chi = x - (0.5 * n + 0.25) * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

int miller_start(int n, double x) {
    const double top = std::max(double(n), x);
    const int m = int(top) + 30 + int(std::sqrt(160.0 * top));
    return 2 * ((m + 1) / 2);
}

// Miller backward recurrence normalised by J_0 + 2 sum J_2k = 1. Fills out[0..nmax].
void j_miller(int nmax, double x, std::vector<double>& out) {
    out.assign(nmax + 1, 0.0);
    const int m = miller_start(nmax, x);
    double next = 0.0, cur = 1e-300, norm = 0.0;
    for (int k = m; k >= 1; --k) {
        const double prev = 2.0 * k / x * cur - next;
        next = cur;
        cur = prev; // now holds order k-1
        if (k - 1 <= nmax) out[k - 1] = cur;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
        if (std::abs(cur) > kRescale) {
            cur /= kRescale;
            next /= kRescale;
            norm /= kRescale;
            for (int i = k - 1; i <= nmax; ++i) out[i] /= kRescale;
        }
    }
    norm += cur;
    for (double& v : out) v /= norm;
}

double j_nonnegative(int n, double x) {
    if (use_series(n, x)) return j_series(n, x);
    if (use_hankel(n, x)) return j_hankel(n, x);
    std::vector<double> seq;
    j_miller(n, x, seq);
    return seq[n];
}

// Ascending series of e^{-x} I_n(x), x >= 0.
double i_series_scaled(int n, double x) {
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    const double lead = std::exp(n * std::log(0.5 * x) - std::lgamma(n + 1.0) - x);
    if (lead == 0.0) return 0.0;
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (double(k) * double(n + k));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return lead * sum;
}

double i_miller_scaled(int n, double x) {
    const int m = n + 30 + int(10.0 * std::sqrt(x) + std::sqrt(160.0 * std::max(n, 1)));
    double next = 0.0, cur = 1e-300, norm = 0.0, at_n = 0.0;
    for (int k = m; k >= 1; --k) {
        const double prev = 2.0 * k / x * cur + next;
        next = cur;
        cur = prev;
        if (k - 1 == n) at_n = cur;
        if (k - 1 > 0) norm += 2.0 * cur;
        if (cur > kRescale) {
            cur /= kRescale;
            next /= kRescale;
            norm /= kRescale;
            at_n /= kRescale;
        }
    }
    norm += cur;
    return at_n / norm;
}

} // namespace

double bessel_j(int n, double x) {
    if (n < 0) {
        const double v = bessel_j(-n, x);
        return (n % 2 == 0) ? v : -v;
    }
    if (x < 0.0) {
        const double v = j_nonnegative(n, -x);
        return (n % 2 == 0) ? v : -v;
    }
    return j_nonnegative(n, x);
}

std::vector<double> bessel_j_sequence(int nmax, double x) {
    if (nmax < 0) throw DomainError("bessel_j_sequence: nmax must be >= 0");
    std::vector<double> out(nmax + 1, 0.0);
    const double ax = std::abs(x);
    if (ax == 0.0) {
        out[0] = 1.0;
    } else if (ax > double(nmax)) {
        out[0] = j_nonnegative(0, ax);
        if (nmax >= 1) out[1] = j_nonnegative(1, ax);
        for (int k = 1; k < nmax; ++k) out[k + 1] = 2.0 * k / ax * out[k] - out[k - 1];
    } else if (use_series(nmax, ax) && ax < 1.0) {
        for (int k = 0; k <= nmax; ++k) out[k] = j_series(k, ax);
    } else {
        j_miller(nmax, ax, out);
    }
    if (x < 0.0)
        for (int k = 1; k <= nmax; k += 2) out[k] = -out[k];
    return out;
}

double bessel_j1_over_x(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-3) {
        const double q = ax * ax;
        return 0.5 - q / 16.0 + q * q / 384.0;
    }
    return bessel_j(1, ax) / ax;
}

double bessel_i_scaled(int n, double x) {
    n = std::abs(n);
    const double ax = std::abs(x);
    double v = use_series(n, ax) ? i_series_scaled(n, ax) : i_miller_scaled(n, ax);
    if (x < 0.0 && n % 2 == 1) v = -v;
    return v;
}

double bessel_i(int n, double x) { return bessel_i_scaled(n, x) * std::exp(std::abs(x)); }

double chebyshev_t(int n, double x) {
    if (n < 0) throw DomainError("chebyshev_t: order must be >= 0");
    if (n == 0) return 1.0;
    double a = 1.0, b = x;
    for (int k = 1; k < n; ++k) {
        const double c = 2.0 * x * b - a;
        a = b;
        b = c;
    }
    return b;
}

double chebyshev_u(int n, double x) {
    if (n < -1) throw DomainError("chebyshev_u: order must be >= -1");
    if (n == -1) return 0.0;
    if (n == 0) return 1.0;
    double a = 1.0, b = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double c = 2.0 * x * b - a;
        a = b;
        b = c;
    }
    return b;
}

} // namespace vibrolang::special
