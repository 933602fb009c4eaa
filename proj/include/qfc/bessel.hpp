// bessel.hpp — Bessel functions of the first kind J_n(x), integer order.
//
// Validated range |x| <= 50, absolute error <= 1e-12. Ascending power series
// for |x| <= 12, Miller backward recurrence with normalization above that.
// Accumulation in long double keeps the alternating-series cancellation at
// x ~ 12 below the error budget.

#pragma once

#include <cmath>
#include <cstdlib>

#include "qfc/errors.hpp"

namespace qfc {

namespace detail {

inline double bessel_series(int n, double x) {
    // J_n(x) = sum_m (-1)^m (x/2)^(n+2m) / (m! (n+m)!),  n >= 0, 0 < x <= 12
    const long double half = 0.5L * static_cast<long double>(x);
    long double term = std::exp(static_cast<long double>(n) * std::log(half)
                                - std::lgamma(static_cast<long double>(n) + 1.0L));
    long double sum = term;
    const long double h2 = half * half;
    for (int m = 1; m <= 400; ++m) {
        term *= -h2 / (static_cast<long double>(m) * (static_cast<long double>(n) + m));
        sum += term;
        if (std::abs(term) < 1e-20L * (std::abs(sum) + 1e-30L)) break;
    }
    return static_cast<double>(sum);
}

inline double bessel_miller(int n, double x) {
    // Downward recurrence f_{k-1} = (2k/x) f_k - f_{k+1}, normalized with
    // J_0 + 2*sum_{k even} J_k = 1. Start well above both n and x.
    const int start = std::max(n, static_cast<int>(std::ceil(x))) + 50;
    long double fkp1 = 0.0L;
    long double fk = 1e-300L;
    long double norm = 0.0L;
    long double fn = 0.0L;
    for (int k = start; k >= 1; --k) {
        const long double fkm1 = (2.0L * k / x) * fk - fkp1;
        fkp1 = fk;
        fk = fkm1;
        if (k - 1 == n) fn = fk;
        if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? fk : 2.0L * fk;
        if (std::abs(fk) > 1e280L) {
            const long double s = 1e-280L;
            fk *= s;
            fkp1 *= s;
            norm *= s;
            fn *= s;
        }
    }
    return static_cast<double>(fn / norm);
}

}  // namespace detail

inline double bessel_j(int order, double argument) {
    if (!std::isfinite(argument) || std::abs(argument) > 50.0)
        throw RangeError("bessel_j: |argument| outside validated range [0, 50]");

    // J_{-n}(x) = (-1)^n J_n(x);  J_n(-x) = (-1)^n J_n(x)
    int n = order;
    double x = argument;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (n % 2 != 0) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n % 2 != 0) sign = -sign;
    }
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;

    const double v = (x <= 12.0) ? detail::bessel_series(n, x) : detail::bessel_miller(n, x);
    return sign * v;
}

}  // namespace qfc
