#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qfc/comb.hpp"
#include "qfc/rng.hpp"
#include "test_states.hpp"

using namespace qfc;

namespace {

cx inner(const BiphotonAmplitude& a, const BiphotonAmplitude& b) {
    cx s(0.0, 0.0);
    for (std::size_t r = 0; r < a.amplitudes().rows(); ++r)
        for (std::size_t c = 0; c < a.amplitudes().cols(); ++c)
            s += std::conj(a.amplitudes()(r, c)) * b.amplitudes()(r, c);
    return s;
}

}  // namespace

TEST_CASE("central diagonal of the N=17 comb without the degenerate bin") {
    ModeConvention conv{17, false};
    const auto psi = diagonal_component(conv, 0);
    REQUIRE(psi.signal_modes().size() == 8);
    REQUIRE(psi.idler_modes().size() == 8);
    int terms = 0;
    for (int k = 1; k <= 8; ++k) {
        const cx v = psi.amplitudes()(psi.signal_slot(k), psi.idler_slot(-k));
        CHECK(std::abs(v - cx(1.0 / std::sqrt(8.0), 0.0)) < 1e-14);
        ++terms;
    }
    CHECK(terms == 8);
    CHECK(std::abs(psi.norm_squared() - 1.0) < 1e-12);
}

TEST_CASE("first upper diagonal: 7 kets |k>|-(k-1)> with weight 1/sqrt(7)") {
    ModeConvention conv{17, false};
    const auto psi = diagonal_component(conv, +1);
    for (int k = 2; k <= 8; ++k) {
        const cx v = psi.amplitudes()(psi.signal_slot(k), psi.idler_slot(-(k - 1)));
        CHECK(std::abs(v - cx(1.0 / std::sqrt(7.0), 0.0)) < 1e-14);
    }
    double occupied = 0.0;
    for (const cx& v : psi.amplitudes().data())
        if (std::abs(v) > 0) occupied += 1.0;
    CHECK(occupied == 7.0);
}

TEST_CASE("degenerate-included central diagonal of N=5 has 3 terms at 1/sqrt(3)") {
    ModeConvention conv{5, true};
    const auto psi = diagonal_component(conv, 0);
    for (int k = 0; k <= 2; ++k) {
        const cx v = psi.amplitudes()(psi.signal_slot(k), psi.idler_slot(-k));
        CHECK(std::abs(v - cx(1.0 / std::sqrt(3.0), 0.0)) < 1e-14);
    }
}

TEST_CASE("lower diagonals mirror the upper ones") {
    ModeConvention conv{17, false};
    const auto lo = diagonal_component(conv, -2);
    // q=-2, k=3..8: |k-2>_s |-k>_i
    for (int k = 3; k <= 8; ++k)
        CHECK(std::abs(lo.amplitudes()(lo.signal_slot(k - 2), lo.idler_slot(-k))) > 0.0);
    CHECK(std::abs(lo.norm_squared() - 1.0) < 1e-12);
}

TEST_CASE("diagonal order outside the mode range is rejected") {
    ModeConvention conv{17, false};
    CHECK_NOTHROW(diagonal_component(conv, 7));
    CHECK_THROWS_AS(diagonal_component(conv, 8), DomainError);
    CHECK_THROWS_AS(diagonal_component(conv, -8), DomainError);
}

TEST_CASE("distinct diagonals are orthogonal") {
    ModeConvention conv{17, false};
    for (int q1 = -3; q1 <= 3; ++q1)
        for (int q2 = q1 + 1; q2 <= 3; ++q2)
            CHECK(std::abs(inner(diagonal_component(conv, q1), diagonal_component(conv, q2))) <
                  1e-12);
}

TEST_CASE("Gaussian weights follow the stated envelope") {
    const auto w = gaussian_weights(WeightSpec::gaussian(1.0, 0.0, 1.0, 2));
    CHECK(std::abs(w.at(0) - cx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(w.at(1) - cx(std::exp(-1.0), 0.0)) < 1e-14);
    CHECK(std::abs(w.at(-1) - cx(std::exp(-1.0), 0.0)) < 1e-14);
    CHECK(std::abs(w.at(2) - cx(std::exp(-4.0), 0.0)) < 1e-14);

    SECTION("flat limit at huge sigma") {
        const auto flat = gaussian_weights(WeightSpec::gaussian(0.7, 0.0, 1e6, 2));
        for (int q = -2; q <= 2; ++q) CHECK(std::abs(flat.at(q) - cx(0.7, 0.0)) < 1e-10);
    }
    SECTION("sigma' -> 0 keeps only the central diagonal") {
        const auto narrow = gaussian_weights(
            WeightSpec::gaussian(1.0, 0.0, 1e-3, 2, WeightSpec::GaussianForm::WidthSigmaPrime));
        CHECK(std::abs(narrow.at(0)) == Catch::Approx(1.0));
        CHECK(std::abs(narrow.at(1)) < 1e-300);
    }
    SECTION("invalid sigma") {
        CHECK_THROWS_AS(gaussian_weights(WeightSpec::gaussian(1.0, 0.0, 0.0, 2)), DomainError);
        CHECK_THROWS_AS(gaussian_weights(WeightSpec::gaussian(1.0, 0.0, -1.0, 2)), DomainError);
    }
}

TEST_CASE("sigma'-form weights equal sigma-form weights after conversion") {
    const double sp = 1.3;
    const auto a = gaussian_weights(
        WeightSpec::gaussian(1.0, 0.0, sp, 3, WeightSpec::GaussianForm::WidthSigmaPrime));
    const auto b = gaussian_weights(WeightSpec::gaussian(1.0, 0.0, std::sqrt(2.0) * sp, 3));
    for (int q = -3; q <= 3; ++q) CHECK(std::abs(a.at(q) - b.at(q)) < 1e-14);
}

TEST_CASE("synthesize: single central diagonal gives the d=8 MES") {
    ModeConvention conv{17, false};
    const auto psi = synthesize(conv, WeightSpec::explicit_weights({{0, 1.0}}));
    const auto mes = diagonal_component(conv, 0);
    CHECK(std::abs(std::abs(inner(psi, mes)) - 1.0) < 1e-12);
}

TEST_CASE("synthesize: equal-weight D=3 JSI shows exactly three lines") {
    ModeConvention conv{17, false};
    const auto psi =
        synthesize(conv, WeightSpec::explicit_weights({{-1, 1.0}, {0, 1.0}, {1, 1.0}}));
    const RealMatrix j = jsi(psi);
    CHECK(std::abs(j.sum() - 1.0) < 1e-12);
    // occupied cells sit on |q| <= 1 only
    for (std::size_t r = 0; r < j.rows; ++r)
        for (std::size_t c = 0; c < j.cols; ++c) {
            const int q = psi.signal_modes()[r] + psi.idler_modes()[c];
            if (std::abs(q) > 1) CHECK(j(r, c) == 0.0);
        }
}

TEST_CASE("synthesize normalization and weight-scaling invariance") {
    ModeConvention conv{17, false};
    qfc::Rng rng(404);
    for (int rep = 0; rep < 5; ++rep) {
        std::map<int, cx> w;
        for (int q = -2; q <= 2; ++q) w[q] = cx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        const auto a = synthesize(conv, WeightSpec::explicit_weights(w));
        CHECK(std::abs(a.norm_squared() - 1.0) < 1e-12);
        std::map<int, cx> w2;
        const cx alpha(rng.uniform(0.1, 3.0), rng.uniform(-2.0, 2.0));
        for (const auto& [q, v] : w) w2[q] = alpha * v;
        const auto b = synthesize(conv, WeightSpec::explicit_weights(w2));
        CHECK(std::abs(std::abs(inner(a, b)) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(synthesize(conv, WeightSpec::explicit_weights({{0, 0.0}})), DomainError);
    CHECK_THROWS_AS(synthesize(conv, WeightSpec::explicit_weights({{9, 1.0}})), DomainError);
}

TEST_CASE("Gaussian sigma=2 D=5 line weights scale as |a_q|^2") {
    ModeConvention conv{17, false};
    const auto psi = synthesize(conv, WeightSpec::gaussian(1.0, 0.0, 2.0, 2));
    const RealMatrix j = jsi(psi);
    // sum the JSI along each anti-diagonal line
    std::map<int, double> line;
    for (std::size_t r = 0; r < j.rows; ++r)
        for (std::size_t c = 0; c < j.cols; ++c)
            line[psi.signal_modes()[r] + psi.idler_modes()[c]] += j(r, c);
    const auto w = gaussian_weights(WeightSpec::gaussian(1.0, 0.0, 2.0, 2));
    double z = 0.0;
    for (int q = -2; q <= 2; ++q) z += std::norm(w.at(q));
    for (int q = -2; q <= 2; ++q)
        CHECK(line[q] == Catch::Approx(std::norm(w.at(q)) / z).margin(1e-12));
}

TEST_CASE("phase masks preserve the JSI and compose as pure phases") {
    ModeConvention conv{17, false};
    const auto psi = synthesize(conv, WeightSpec::gaussian(1.0, 0.0, 2.0, 2));
    std::vector<int> all_modes;
    for (int m = -8; m <= 8; ++m) all_modes.push_back(m);

    SECTION("all-zero mask is the identity") {
        const auto same = apply_phase_mask(psi, PhaseMask::uniform(all_modes, 0.0));
        for (std::size_t k = 0; k < psi.amplitudes().data().size(); ++k)
            CHECK(std::abs(same.amplitudes().data()[k] - psi.amplitudes().data()[k]) < 1e-15);
    }
    SECTION("JSI is invariant under any mask (1 ulp of each modulus)") {
        qfc::Rng rng(7);
        PhaseMask m;
        for (int mode : all_modes) m.phases[mode] = rng.uniform(0.0, 6.28);
        const auto masked = apply_phase_mask(psi, m);
        const RealMatrix j0 = jsi(psi);
        const RealMatrix j1 = jsi(masked);
        for (std::size_t k = 0; k < j0.a.size(); ++k)
            CHECK(std::abs(j0.a[k] - j1.a[k]) <= 4e-16 * j0.a[k]);
    }
    SECTION("uncovered occupied mode is an error") {
        PhaseMask partial = PhaseMask::uniform({1, 2, 3}, 0.0);
        CHECK_THROWS_AS(apply_phase_mask(psi, partial), DomainError);
    }
}

TEST_CASE("pi on signal 2 and idler -2 turns the phi=0 PES into the phi=pi PES") {
    const auto p0 = teststates::pes(0.0);
    PhaseMask ms, mi;
    ms.phases = {{1, 0.0}, {2, kPi}};
    mi.phases = {{-1, 0.0}, {-2, kPi}};
    const auto flipped = apply_phase_mask(p0, ms, mi);
    const auto expect = teststates::pes(kPi);
    for (std::size_t k = 0; k < expect.amplitudes().data().size(); ++k)
        CHECK(std::abs(flipped.amplitudes().data()[k] - expect.amplitudes().data()[k]) < 1e-15);
}

TEST_CASE("postselecting the MES onto a 2x2 block yields the Bell state") {
    const auto mes = teststates::mes(8);
    const auto bell = subspace_postselect(mes, {1, 2}, {-1, -2});
    CHECK(std::abs(bell.amplitudes()(bell.signal_slot(1), bell.idler_slot(-1)) -
                   cx(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);
    CHECK(std::abs(bell.amplitudes()(bell.signal_slot(2), bell.idler_slot(-2)) -
                   cx(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);
    CHECK(std::abs(bell.norm_squared() - 1.0) < 1e-12);
}

TEST_CASE("postselecting an MES onto any aligned r x r block is an r-dim MES") {
    const auto mes = teststates::mes(8);
    for (int r : {2, 3, 5}) {
        std::vector<int> sm, im;
        for (int k = 2; k < 2 + r; ++k) {
            sm.push_back(k);
            im.push_back(-k);
        }
        const auto sub = subspace_postselect(mes, sm, im);
        for (int k = 2; k < 2 + r; ++k)
            CHECK(std::abs(sub.amplitudes()(sub.signal_slot(k), sub.idler_slot(-k)) -
                           cx(1.0 / std::sqrt(double(r)), 0.0)) < 1e-12);
    }
}

TEST_CASE("two-line comb restricted to 2x2 matches the Bell + c|21> family") {
    ModeConvention conv{17, false};
    const double w0 = 1.0, w1 = 0.55;
    const auto psi =
        synthesize(conv, WeightSpec::explicit_weights({{0, w0}, {1, w1}}));
    const auto sub = subspace_postselect(psi, {1, 2}, {-1, -2});
    const int d = conv.dimension();
    const double c = (w1 / std::sqrt(double(d - 1))) / (std::sqrt(2.0) * w0 / std::sqrt(double(d)));
    const auto expect = teststates::two_dim_family(c, 0.0);
    for (int s : {1, 2})
        for (int i : {-1, -2})
            CHECK(std::abs(sub.amplitudes()(sub.signal_slot(s), sub.idler_slot(i)) -
                           expect.amplitudes()(expect.signal_slot(s), expect.idler_slot(i))) <
                  1e-12);
}

TEST_CASE("postselection onto zero-amplitude modes fails loudly") {
    ModeConvention conv{17, false};
    const auto mes = diagonal_component(conv, 0);
    // the q=+1 line is unoccupied for a pure MES: pick the corner cell {8} x {-1}
    CHECK_THROWS_AS(subspace_postselect(mes, {8}, {-1}), PostselectError);
    // modes not present at all are a domain error instead
    CHECK_THROWS_AS(subspace_postselect(mes, {9}, {-1}), DomainError);
}
