// test_states.hpp — Small state builders shared across test files.

#pragma once

#include <cmath>
#include <complex>

#include "qfc/comb.hpp"

namespace teststates {

constexpr double kTestPi = 3.141592653589793238462643383279502884;

using qfc::BiphotonAmplitude;
using qfc::ComplexMatrix;
using qfc::cx;

// d-dimensional maximally entangled comb (single central anti-diagonal)
inline BiphotonAmplitude mes(int d) {
    qfc::ModeConvention conv{2 * d + 1, false};
    return qfc::diagonal_component(conv, 0);
}

// (|1,-1> + e^{i phi}|1,-2> + e^{i phi}|2,-1> + |2,-2>)/2
inline BiphotonAmplitude pes(double phi) {
    ComplexMatrix a(2, 2);  // signal {1,2}, idler {-2,-1}
    const cx e = std::polar(0.5, phi);
    a(0, 1) = 0.5;  // |1,-1>
    a(0, 0) = e;    // |1,-2>
    a(1, 1) = e;    // |2,-1>
    a(1, 0) = 0.5;  // |2,-2>
    return BiphotonAmplitude::make({1, 2}, {-2, -1}, std::move(a));
}

// (Bell + c e^{i pi theta} |21>)/sqrt(1+c^2) on signal {1,2}, idler {-2,-1};
// |ab> is shorthand for |a>_s |-b>_i.
inline BiphotonAmplitude two_dim_family(double c, double theta = 0.0) {
    ComplexMatrix a(2, 2);
    const double z = 1.0 / std::sqrt(1.0 + c * c);
    a(0, 1) = z / std::sqrt(2.0);                       // |1,-1>
    a(1, 0) = z / std::sqrt(2.0);                       // |2,-2>
    a(1, 1) = std::polar(c * z, kTestPi * theta);  // |2,-1>
    return BiphotonAmplitude::make({1, 2}, {-2, -1}, std::move(a));
}

// (Bell3 + c1 e^{i pi theta}(|21>+|32>) + c2 e^{i pi v}|31>)/Z on
// signal {1,2,3}, idler {-3,-2,-1}
inline BiphotonAmplitude three_dim_family(double c1, double c2, double theta = 0.0,
                                          double v = 0.0) {
    ComplexMatrix a(3, 3);
    const double z = 1.0 / std::sqrt(1.0 + 2.0 * c1 * c1 + c2 * c2);
    auto slot_i = [](int mode) { return mode + 3; };  // idler -3,-2,-1 -> 0,1,2
    a(0, slot_i(-1)) = z / std::sqrt(3.0);
    a(1, slot_i(-2)) = z / std::sqrt(3.0);
    a(2, slot_i(-3)) = z / std::sqrt(3.0);
    a(1, slot_i(-1)) = std::polar(c1 * z, kTestPi * theta);
    a(2, slot_i(-2)) = std::polar(c1 * z, kTestPi * theta);
    a(2, slot_i(-1)) = std::polar(c2 * z, kTestPi * v);
    return BiphotonAmplitude::make({1, 2, 3}, {-3, -2, -1}, std::move(a));
}

}  // namespace teststates
