#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qfc/bessel.hpp"
#include "oracles.hpp"

using qfc::bessel_j;

TEST_CASE("J_0(0) is exactly 1, higher orders vanish at 0") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(bessel_j(-3, 0.0) == 0.0);
    CHECK(bessel_j(17, 0.0) == 0.0);
}

TEST_CASE("J_1(1) matches the frozen series-oracle value") {
    // oracles::bessel_series(1, 1.0) summed to long double tolerance:
    const double expected = 0.4400505857449335;
    CHECK(std::abs(bessel_j(1, 1.0) - expected) < 1e-12);
    CHECK(std::abs(oracles::bessel_series(1, 1.0) - expected) < 1e-15);
}

TEST_CASE("series region agrees with the independent oracle") {
    for (int n = 0; n <= 24; ++n) {
        for (double x : {0.05, 0.7, 1.0, 2.5, 5.0, 8.0, 10.0, 11.9, 12.0}) {
            CHECK(std::abs(bessel_j(n, x) - oracles::bessel_series(n, x)) < 1e-13);
        }
    }
}

TEST_CASE("Miller region agrees with the oracle where the oracle is reliable") {
    for (int n = 0; n <= 24; ++n) {
        for (double x : {12.1, 13.0, 14.5, 16.0}) {
            CHECK(std::abs(bessel_j(n, x) - oracles::bessel_series(n, x)) < 1e-12);
        }
    }
}

TEST_CASE("normalization identity holds across the validated range") {
    // sum_n J_n(x)^2 = 1 with N >= |x| + 20
    for (double x : {0.0, 0.5, 2.0, 7.3, 12.0, 12.5, 19.0, 25.0, 37.0, 50.0}) {
        const int nmax = static_cast<int>(std::ceil(std::abs(x))) + 25;
        double s = 0.0;
        for (int n = -nmax; n <= nmax; ++n) {
            const double j = bessel_j(n, x);
            s += j * j;
        }
        CHECK(std::abs(s - 1.0) < 1e-12);
    }
}

TEST_CASE("spec example: sum over n of J_n(2)^2") {
    double s = 0.0;
    for (int n = -30; n <= 30; ++n) s += bessel_j(n, 2.0) * bessel_j(n, 2.0);
    CHECK(std::abs(s - 1.0) < 1e-12);
}

TEST_CASE("negative order and negative argument reflections") {
    for (int n : {0, 1, 2, 5, 8}) {
        for (double x : {0.3, 1.7, 6.0, 14.0, 33.0}) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            CHECK(bessel_j(-n, x) == sign * bessel_j(n, x));
            CHECK(bessel_j(n, -x) == sign * bessel_j(n, x));
        }
    }
}

TEST_CASE("three-term recurrence residual is tiny in the Miller region") {
    // J_{n-1}(x) + J_{n+1}(x) = (2n/x) J_n(x)
    for (double x : {14.0, 21.0, 30.0, 44.0, 50.0}) {
        for (int n = 1; n <= 30; ++n) {
            const double lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
            const double rhs = (2.0 * n / x) * bessel_j(n, x);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("arguments outside the validated range are rejected") {
    CHECK_THROWS_AS(bessel_j(0, 50.0001), qfc::RangeError);
    CHECK_THROWS_AS(bessel_j(3, -51.0), qfc::RangeError);
    CHECK_THROWS_AS(bessel_j(0, std::nan("")), qfc::RangeError);
    CHECK_NOTHROW(bessel_j(0, 50.0));
}
