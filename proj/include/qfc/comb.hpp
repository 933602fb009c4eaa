// comb.hpp — Biphoton frequency-comb states with configurable anti-diagonal
// structure: per-diagonal components, weighted synthesis, phase masks, joint
// spectral intensities, and qudit post-selection.
//
// Modes carry physical lattice indices (..., -2, -1, 0, 1, 2, ...): signal
// modes positive, idler modes negative, the degenerate bin 0 optional. Using
// the physical indices everywhere keeps the |k>_s |-k>_i anti-correlation
// convention free of sign bookkeeping.

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "qfc/matrix.hpp"

namespace qfc {

constexpr double kNormTol = 1e-12;
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kHalfPi = 0.5 * kPi;

// ------------------------------ mode grid --------------------------------

struct ModeConvention {
    int total_modes = 17;             // N, odd, >= 3
    bool include_degenerate = false;  // keep the central bin 0?

    void validate() const {
        if (total_modes < 3 || total_modes % 2 == 0)
            throw DomainError("ModeConvention: total_modes must be odd and >= 3");
    }

    int dimension() const { return (total_modes - 1) / 2; }  // d

    // highest |q| with at least one basis ket left on the diagonal
    int max_diagonal() const { return dimension() - 1; }

    std::vector<int> signal_modes() const {
        validate();
        std::vector<int> m;
        for (int k = include_degenerate ? 0 : 1; k <= dimension(); ++k) m.push_back(k);
        return m;
    }

    std::vector<int> idler_modes() const {
        validate();
        std::vector<int> m;
        for (int k = -dimension(); k <= (include_degenerate ? 0 : -1); ++k) m.push_back(k);
        return m;
    }
};

// ------------------------------ weights ----------------------------------

// Per-diagonal complex weights a_q, explicit or Gaussian-parameterized.
// Two Gaussian conventions appear in the source material:
//   WidthSigma:      a_q = a0 exp(-((|q|-mu)/sigma)^2)
//   WidthSigmaPrime: a_q ∝ exp(-q^2/(2 sigma'^2)), handled by converting
//                    sigma = sqrt(2) sigma', mu = 0.
struct WeightSpec {
    enum class Kind { Explicit, Gaussian };
    enum class GaussianForm { WidthSigma, WidthSigmaPrime };

    Kind kind = Kind::Explicit;
    std::map<int, cx> weights;  // explicit form

    double a0 = 1.0, mu = 0.0, sigma = 1.0;
    int p = 0;  // |q| <= p, D = 2p+1
    GaussianForm form = GaussianForm::WidthSigma;

    static WeightSpec explicit_weights(std::map<int, cx> w) {
        WeightSpec s;
        s.kind = Kind::Explicit;
        s.weights = std::move(w);
        return s;
    }

    static WeightSpec gaussian(double a0, double mu, double sigma, int p,
                               GaussianForm form = GaussianForm::WidthSigma) {
        WeightSpec s;
        s.kind = Kind::Gaussian;
        s.a0 = a0;
        s.mu = mu;
        s.sigma = sigma;
        s.p = p;
        s.form = form;
        return s;
    }
};

inline std::map<int, cx> gaussian_weights(const WeightSpec& spec) {
    if (spec.kind != WeightSpec::Kind::Gaussian)
        throw DomainError("gaussian_weights: spec is not Gaussian-form");
    if (!(spec.sigma > 0.0)) throw DomainError("gaussian_weights: sigma must be > 0");
    if (spec.p < 0) throw DomainError("gaussian_weights: p must be >= 0");
    double sigma = spec.sigma;
    double mu = spec.mu;
    if (spec.form == WeightSpec::GaussianForm::WidthSigmaPrime) {
        sigma = std::sqrt(2.0) * spec.sigma;
        mu = 0.0;
    }
    std::map<int, cx> w;
    for (int q = -spec.p; q <= spec.p; ++q) {
        const double t = (std::abs(q) - mu) / sigma;
        w[q] = spec.a0 * std::exp(-t * t);
    }
    return w;
}

// ------------------------------ phase masks ------------------------------

struct PhaseMask {
    std::map<int, double> phases;  // lattice mode -> phase (radians)

    bool covers(int mode) const { return phases.count(mode) != 0; }
    double phase(int mode) const { return phases.at(mode); }

    static PhaseMask uniform(const std::vector<int>& modes, double phi) {
        PhaseMask m;
        for (int k : modes) m.phases[k] = phi;
        return m;
    }

    // phi_odd on odd |mode|, phi_even on even |mode| (the PF1 patterns)
    static PhaseMask alternating(const std::vector<int>& modes, double phi_odd, double phi_even) {
        PhaseMask m;
        for (int k : modes) m.phases[k] = (k % 2 != 0) ? phi_odd : phi_even;
        return m;
    }
};

// ------------------------------ the state --------------------------------

class BiphotonAmplitude {
public:
    // amp indexed (signal slot, idler slot); mode lists strictly increasing.
    // `make` requires unit norm; `make_normalized` rescales first.
    static BiphotonAmplitude make(std::vector<int> signal_modes, std::vector<int> idler_modes,
                                  ComplexMatrix amp) {
        BiphotonAmplitude s(std::move(signal_modes), std::move(idler_modes), std::move(amp));
        if (std::abs(s.norm_squared() - 1.0) > kNormTol)
            throw ContractError("BiphotonAmplitude: state not normalized");
        return s;
    }

    static BiphotonAmplitude make_normalized(std::vector<int> signal_modes,
                                             std::vector<int> idler_modes, ComplexMatrix amp) {
        BiphotonAmplitude s(std::move(signal_modes), std::move(idler_modes), std::move(amp));
        const double n2 = s.norm_squared();
        if (n2 < 1e-24) throw DomainError("BiphotonAmplitude: zero norm");
        s.amp_ *= cx(1.0 / std::sqrt(n2), 0.0);
        return s;
    }

    const std::vector<int>& signal_modes() const { return signal_modes_; }
    const std::vector<int>& idler_modes() const { return idler_modes_; }
    const ComplexMatrix& amplitudes() const { return amp_; }

    std::size_t signal_count() const { return signal_modes_.size(); }
    std::size_t idler_count() const { return idler_modes_.size(); }

    // slot of a lattice mode, or -1 when the arm does not carry it
    int signal_slot(int mode) const { return slot_of(signal_modes_, mode); }
    int idler_slot(int mode) const { return slot_of(idler_modes_, mode); }

    double norm_squared() const {
        double s = 0.0;
        for (const cx& v : amp_.data()) s += std::norm(v);
        return s;
    }

private:
    BiphotonAmplitude(std::vector<int> sm, std::vector<int> im, ComplexMatrix amp)
        : signal_modes_(std::move(sm)), idler_modes_(std::move(im)), amp_(std::move(amp)) {
        require_increasing(signal_modes_, "signal");
        require_increasing(idler_modes_, "idler");
        if (amp_.rows() != signal_modes_.size() || amp_.cols() != idler_modes_.size())
            throw ContractError("BiphotonAmplitude: amplitude shape does not match mode maps");
        if (!amp_.all_finite()) throw ContractError("BiphotonAmplitude: non-finite amplitude");
    }

    static void require_increasing(const std::vector<int>& m, const char* arm) {
        if (m.empty()) throw DomainError(std::string("BiphotonAmplitude: empty ") + arm + " arm");
        for (std::size_t i = 0; i + 1 < m.size(); ++i)
            if (m[i] >= m[i + 1])
                throw ContractError(std::string("BiphotonAmplitude: ") + arm +
                                    " mode map not strictly increasing");
    }

    static int slot_of(const std::vector<int>& m, int mode) {
        auto it = std::lower_bound(m.begin(), m.end(), mode);
        if (it == m.end() || *it != mode) return -1;
        return static_cast<int>(it - m.begin());
    }

    std::vector<int> signal_modes_, idler_modes_;
    ComplexMatrix amp_;
};

// ------------------------------ operations -------------------------------

// The q-th anti-diagonal component: equal amplitudes over the kets the
// diagonal supports. Term count: d - |q| with the degenerate bin excluded,
// d - (|q| - 1) with it included.
inline BiphotonAmplitude diagonal_component(const ModeConvention& conv, int q) {
    conv.validate();
    const int d = conv.dimension();
    if (std::abs(q) > conv.max_diagonal())
        throw DomainError("diagonal_component: |q| too large for the mode range");

    const std::vector<int> sm = conv.signal_modes();
    const std::vector<int> im = conv.idler_modes();
    ComplexMatrix amp(sm.size(), im.size());

    const int k_lo = std::abs(q) + (conv.include_degenerate ? 0 : 1);
    const int terms = d - k_lo + 1;
    const double a = 1.0 / std::sqrt(static_cast<double>(terms));

    const int s_base = conv.include_degenerate ? 0 : 1;
    auto s_slot = [&](int mode) { return mode - s_base; };
    auto i_slot = [&](int mode) { return mode + d; };

    for (int k = k_lo; k <= d; ++k) {
        int ms, mi;
        if (q < 0) {
            ms = k + q;
            mi = -k;
        } else if (q == 0) {
            ms = k;
            mi = -k;
        } else {
            ms = k;
            mi = -(k - q);
        }
        amp(s_slot(ms), i_slot(mi)) = a;
    }
    return BiphotonAmplitude::make(sm, im, std::move(amp));
}

// |psi> = normalized sum_q a_q |psi_q>; the normalization is computed
// numerically. Explicit weights must fit the mode range; Gaussian weights
// are evaluated on the diagonals that fit.
inline BiphotonAmplitude synthesize(const ModeConvention& conv, const WeightSpec& spec) {
    conv.validate();
    std::map<int, cx> w;
    if (spec.kind == WeightSpec::Kind::Gaussian) {
        for (const auto& [q, a] : gaussian_weights(spec))
            if (std::abs(q) <= conv.max_diagonal()) w[q] = a;
    } else {
        for (const auto& [q, a] : spec.weights) {
            if (std::abs(q) > conv.max_diagonal())
                throw DomainError("synthesize: explicit weight outside the mode range");
            w[q] = a;
        }
    }

    const std::vector<int> sm = conv.signal_modes();
    const std::vector<int> im = conv.idler_modes();
    ComplexMatrix total(sm.size(), im.size());
    bool any = false;
    for (const auto& [q, a] : w) {
        if (a == cx(0.0, 0.0)) continue;
        any = true;
        const BiphotonAmplitude comp = diagonal_component(conv, q);
        for (std::size_t r = 0; r < total.rows(); ++r)
            for (std::size_t c = 0; c < total.cols(); ++c)
                total(r, c) += a * comp.amplitudes()(r, c);
    }
    if (!any) throw DomainError("synthesize: all weights zero");
    return BiphotonAmplitude::make_normalized(sm, im, std::move(total));
}

// A'[s,i] = e^{i(phi_s + phi_i)} A[s,i]; moduli (and hence the JSI) unchanged.
inline BiphotonAmplitude apply_phase_mask(const BiphotonAmplitude& state,
                                          const PhaseMask& mask_signal,
                                          const PhaseMask& mask_idler) {
    const ComplexMatrix& a = state.amplitudes();
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            const cx v = a(r, c);
            if (v == cx(0.0, 0.0)) {
                continue;
            }
            const int ms = state.signal_modes()[r];
            const int mi = state.idler_modes()[c];
            if (!mask_signal.covers(ms) || !mask_idler.covers(mi))
                throw DomainError("apply_phase_mask: mask does not cover an occupied mode");
            out(r, c) = v * std::polar(1.0, mask_signal.phase(ms) + mask_idler.phase(mi));
        }
    }
    return BiphotonAmplitude::make(state.signal_modes(), state.idler_modes(), std::move(out));
}

// shared mask on both arms
inline BiphotonAmplitude apply_phase_mask(const BiphotonAmplitude& state, const PhaseMask& mask) {
    return apply_phase_mask(state, mask, mask);
}

// |A|^2 elementwise; sums to 1 for a valid state.
inline RealMatrix jsi(const BiphotonAmplitude& state) {
    const ComplexMatrix& a = state.amplitudes();
    RealMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = std::norm(a(r, c));
    return out;
}

// Restriction to the requested modes, renormalized.
inline BiphotonAmplitude subspace_postselect(const BiphotonAmplitude& state,
                                             const std::vector<int>& signal_modes,
                                             const std::vector<int>& idler_modes) {
    std::vector<int> sm = signal_modes, im = idler_modes;
    std::sort(sm.begin(), sm.end());
    std::sort(im.begin(), im.end());
    ComplexMatrix amp(sm.empty() ? 1 : sm.size(), im.empty() ? 1 : im.size());
    if (sm.empty() || im.empty()) throw DomainError("subspace_postselect: empty mode list");
    for (std::size_t r = 0; r < sm.size(); ++r) {
        const int rs = state.signal_slot(sm[r]);
        if (rs < 0) throw DomainError("subspace_postselect: signal mode not in the state");
        for (std::size_t c = 0; c < im.size(); ++c) {
            const int ci = state.idler_slot(im[c]);
            if (ci < 0) throw DomainError("subspace_postselect: idler mode not in the state");
            amp(r, c) = state.amplitudes()(rs, ci);
        }
    }
    double n2 = 0.0;
    for (const cx& v : amp.data()) n2 += std::norm(v);
    if (n2 < 1e-24) throw PostselectError("subspace_postselect: zero amplitude in the subspace");
    amp *= cx(1.0 / std::sqrt(n2), 0.0);
    return BiphotonAmplitude::make(std::move(sm), std::move(im), std::move(amp));
}

}  // namespace qfc
