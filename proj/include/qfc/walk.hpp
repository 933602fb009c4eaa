// walk.hpp — Frequency-lattice quantum walk driven by an electro-optic
// modulator: the sideband unitary, two-photon evolution, energy observables,
// the chi-expectation steering theory, desynchronization averaging, and
// modulation-depth sweeps with slope extraction.
//
// Conventions. The unitary with modulation depth delta is the exact time
// evolution of the nearest-neighbor hopping Hamiltonian
//     H = sum_a (g1 b†_{a+1} b_a + h.c.),   g1 = |g1| e^{i phi_RF},
// for dimensionless time t = delta with Omega = 2 g1 = 1. Under this
// identification the sideband amplitudes are
//     U[m+n, m] = J_n(delta) e^{i n (phi_RF - pi/2)},
// i.e. at the stabilized operating point phi_RF = pi/2 the unitary is the
// real Bessel matrix, and the energy-transfer rate below reproduces
// +-2|g1|Omega_FSR for the phi = 0 / pi partially entangled states.
// Energies are reported in Omega_FSR units relative to the omega_CEO
// baseline, so only mode indices enter.

#pragma once

#include <cmath>
#include <vector>

#include "qfc/bessel.hpp"
#include "qfc/comb.hpp"
#include "qfc/matrix.hpp"

namespace qfc {

// ------------------------------ configuration ----------------------------

struct EomConfig {
    double delta = 0.0;          // modulation depth (Bessel argument)
    double rf_phase = kHalfPi;   // phi_RF of the drive
    int lattice_min = -16;       // full simulated range, inclusive
    int lattice_max = 16;
    int guard = 8;               // modes per side absorbing walk spread

    int required_guard() const {
        return std::max(8, static_cast<int>(std::ceil(delta)) + 8);
    }

    void validate() const {
        if (!(delta >= 0.0) || !std::isfinite(delta))
            throw ConfigError("EomConfig: delta must be finite and >= 0");
        if (!std::isfinite(rf_phase)) throw ConfigError("EomConfig: rf_phase must be finite");
        if (guard < required_guard())
            throw ConfigError("EomConfig: guard must be >= ceil(delta) + 8 and >= 8");
        if (lattice_max - lattice_min + 1 < 2 * guard + 1)
            throw ConfigError("EomConfig: lattice too small for the guard bands");
    }

    std::size_t size() const { return static_cast<std::size_t>(lattice_max - lattice_min + 1); }
    int interior_min() const { return lattice_min + guard; }
    int interior_max() const { return lattice_max - guard; }
    std::size_t index(int mode) const { return static_cast<std::size_t>(mode - lattice_min); }

    // lattice = occupied state modes plus guard bands on both sides
    static EomConfig for_state(const BiphotonAmplitude& state, double delta,
                               double rf_phase = kHalfPi, int guard = -1) {
        EomConfig cfg;
        cfg.delta = delta;
        cfg.rf_phase = rf_phase;
        cfg.guard = (guard > 0) ? guard : cfg.required_guard();
        const int lo = std::min(state.signal_modes().front(), state.idler_modes().front());
        const int hi = std::max(state.signal_modes().back(), state.idler_modes().back());
        cfg.lattice_min = lo - cfg.guard;
        cfg.lattice_max = hi + cfg.guard;
        cfg.validate();
        return cfg;
    }
};

// |g1| e^{i phi_RF} plus the comb frequency scales; the default magnitude
// 1/2 is the Omega = 2 g1 = 1 calibration that makes rates commensurate
// with d<E>/d(delta) of the simulated walk.
struct EnergyScale {
    double omega_ceo = 0.0;
    double omega_fsr = 1.0;
    double g1_magnitude = 0.5;
    double rf_phase = kHalfPi;

    void validate() const {
        if (!(omega_fsr > 0.0)) throw DomainError("EnergyScale: omega_fsr must be > 0");
        if (!(g1_magnitude >= 0.0)) throw DomainError("EnergyScale: |g1| must be >= 0");
    }
    cx g1() const { return std::polar(g1_magnitude, rf_phase); }
};

// ------------------------------ EOM unitary ------------------------------

inline ComplexMatrix eom_unitary(const EomConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.size();
    const double grid_phase = cfg.rf_phase - kHalfPi;  // per-sideband phase
    ComplexMatrix u(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t row = 0; row < n; ++row) {
            const int shift = static_cast<int>(row) - static_cast<int>(col);
            const double j = bessel_j(shift, cfg.delta);
            if (j == 0.0) continue;
            u(row, col) = std::polar(1.0, grid_phase * shift) * j;
        }
    }
    // interior unitarity: the guard must absorb the full Bessel sum
    const ComplexMatrix g = u.dagger() * u;
    const std::size_t ilo = cfg.index(cfg.interior_min());
    const std::size_t ihi = cfg.index(cfg.interior_max());
    for (std::size_t r = ilo; r <= ihi; ++r) {
        for (std::size_t c = ilo; c <= ihi; ++c) {
            const cx expect = (r == c) ? cx(1.0, 0.0) : cx(0.0, 0.0);
            if (std::abs(g(r, c) - expect) > 1e-10)
                throw ConfigError("eom_unitary: interior unitarity fails; guard too small");
        }
    }
    return u;
}

// ------------------------------ evolution --------------------------------

// A' = U A U^T: the same single-photon unitary acts on the signal and the
// idler arm. Output lives on the full lattice. Probability reaching the
// outermost two guard modes aborts instead of being silently truncated.
inline BiphotonAmplitude evolve(const BiphotonAmplitude& state, const EomConfig& cfg) {
    cfg.validate();
    for (int m : state.signal_modes())
        if (m < cfg.interior_min() || m > cfg.interior_max())
            throw ConfigError("evolve: state mode outside the lattice interior");
    for (int m : state.idler_modes())
        if (m < cfg.interior_min() || m > cfg.interior_max())
            throw ConfigError("evolve: state mode outside the lattice interior");

    const std::size_t n = cfg.size();
    ComplexMatrix full(n, n);
    for (std::size_t s = 0; s < state.signal_count(); ++s)
        for (std::size_t i = 0; i < state.idler_count(); ++i)
            full(cfg.index(state.signal_modes()[s]), cfg.index(state.idler_modes()[i])) =
                state.amplitudes()(s, i);

    const ComplexMatrix u = eom_unitary(cfg);
    ComplexMatrix evolved = u * full * u.transpose();

    double edge_mass = 0.0, total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double p = std::norm(evolved(r, c));
            total += p;
            if (r < 2 || r >= n - 2 || c < 2 || c >= n - 2) edge_mass += p;
        }
    }
    if (edge_mass > 1e-9) throw ConfigError("evolve: probability leaked into the guard edge");
    if (std::abs(total - 1.0) > 1e-9) throw ContractError("evolve: norm not conserved");

    std::vector<int> modes(n);
    for (std::size_t k = 0; k < n; ++k) modes[k] = cfg.lattice_min + static_cast<int>(k);
    return BiphotonAmplitude::make_normalized(modes, modes, std::move(evolved));
}

// ------------------------------ observables ------------------------------

// sum_{s,i} (m_s + m_i) |A[s,i]|^2, in Omega_FSR units
inline double mean_total_energy(const BiphotonAmplitude& state) {
    double e = 0.0;
    for (std::size_t s = 0; s < state.signal_count(); ++s)
        for (std::size_t i = 0; i < state.idler_count(); ++i)
            e += (state.signal_modes()[s] + state.idler_modes()[i]) *
                 std::norm(state.amplitudes()(s, i));
    return e;
}

// probability over the total mode index m_s + m_i
struct EnergyMarginal {
    int total_min = 0;  // total index of p.front()
    std::vector<double> p;
};

inline EnergyMarginal total_energy_marginal(const BiphotonAmplitude& state) {
    EnergyMarginal m;
    m.total_min = state.signal_modes().front() + state.idler_modes().front();
    const int total_max = state.signal_modes().back() + state.idler_modes().back();
    m.p.assign(static_cast<std::size_t>(total_max - m.total_min + 1), 0.0);
    for (std::size_t s = 0; s < state.signal_count(); ++s)
        for (std::size_t i = 0; i < state.idler_count(); ++i)
            m.p[static_cast<std::size_t>(state.signal_modes()[s] + state.idler_modes()[i] -
                                         m.total_min)] += std::norm(state.amplitudes()(s, i));
    return m;
}

// <psi| sum_a b†_{a+1} b_a |psi> over both arms' mode ladders
inline cx chi_expectation(const BiphotonAmplitude& state) {
    const ComplexMatrix& a = state.amplitudes();
    cx chi(0.0, 0.0);
    for (std::size_t s = 0; s < state.signal_count(); ++s) {
        const int up = state.signal_slot(state.signal_modes()[s] + 1);
        if (up < 0) continue;
        for (std::size_t i = 0; i < state.idler_count(); ++i)
            chi += std::conj(a(static_cast<std::size_t>(up), i)) * a(s, i);
    }
    for (std::size_t i = 0; i < state.idler_count(); ++i) {
        const int up = state.idler_slot(state.idler_modes()[i] + 1);
        if (up < 0) continue;
        for (std::size_t s = 0; s < state.signal_count(); ++s)
            chi += std::conj(a(s, static_cast<std::size_t>(up))) * a(s, i);
    }
    return chi;
}

// tr(H'_QFC rho) = 2 Omega_FSR Im(g1 <chi>)
inline double energy_transfer_rate(const BiphotonAmplitude& state, const EnergyScale& scale) {
    scale.validate();
    return 2.0 * scale.omega_fsr * std::imag(scale.g1() * chi_expectation(state));
}

// mean rate over an equally spaced phi_RF grid on [0, 2pi); models an
// unsynchronized drive and vanishes for every state
inline double desync_average(const BiphotonAmplitude& state, const EnergyScale& scale,
                             int grid) {
    if (grid < 4) throw DomainError("desync_average: grid must be >= 4");
    scale.validate();
    const cx chi = chi_expectation(state);
    double acc = 0.0;
    for (int k = 0; k < grid; ++k) {
        const double phi = 2.0 * kPi * k / grid;
        acc += 2.0 * scale.omega_fsr * std::imag(std::polar(scale.g1_magnitude, phi) * chi);
    }
    return acc / grid;
}

// ------------------------------ sweeps ------------------------------------

struct SweepPoint {
    double delta = 0.0;
    double mean_total_energy = 0.0;
    EnergyMarginal marginal;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double slope = 0.0;      // least-squares d<E>/d(delta) over the grid
    double intercept = 0.0;
    double residual = 0.0;   // rms of the linear fit
};

struct SweepConfig {
    double rf_phase = kHalfPi;
    int guard = -1;  // <= 0: automatic per the guard policy at max delta
};

// For each delta: apply the mask to both arms, evolve, record the total-
// energy marginal and mean. One lattice (sized for the largest delta) is
// shared so marginals are comparable across the grid.
inline SweepResult sweep_and_slope(const BiphotonAmplitude& state, const PhaseMask& mask,
                                   const std::vector<double>& delta_grid,
                                   const SweepConfig& sweep_cfg = {}) {
    if (delta_grid.empty() || delta_grid.front() != 0.0)
        throw DomainError("sweep_and_slope: delta grid must start at 0");
    for (std::size_t k = 0; k + 1 < delta_grid.size(); ++k)
        if (!(delta_grid[k] < delta_grid[k + 1]))
            throw DomainError("sweep_and_slope: delta grid must be ascending");

    const BiphotonAmplitude masked = apply_phase_mask(state, mask);
    EomConfig lattice_cfg =
        EomConfig::for_state(masked, delta_grid.back(), sweep_cfg.rf_phase, sweep_cfg.guard);

    SweepResult out;
    for (double delta : delta_grid) {
        EomConfig cfg = lattice_cfg;
        cfg.delta = delta;
        const BiphotonAmplitude evolved = evolve(masked, cfg);
        SweepPoint pt;
        pt.delta = delta;
        pt.mean_total_energy = mean_total_energy(evolved);
        pt.marginal = total_energy_marginal(evolved);
        out.points.push_back(std::move(pt));
    }

    const std::size_t n = out.points.size();
    double dbar = 0.0, ebar = 0.0;
    for (const SweepPoint& pt : out.points) {
        dbar += pt.delta;
        ebar += pt.mean_total_energy;
    }
    dbar /= n;
    ebar /= n;
    double num = 0.0, den = 0.0;
    for (const SweepPoint& pt : out.points) {
        num += (pt.delta - dbar) * (pt.mean_total_energy - ebar);
        den += (pt.delta - dbar) * (pt.delta - dbar);
    }
    out.slope = (den > 0.0) ? num / den : 0.0;
    out.intercept = ebar - out.slope * dbar;
    double ss = 0.0;
    for (const SweepPoint& pt : out.points) {
        const double r = pt.mean_total_energy - (out.intercept + out.slope * pt.delta);
        ss += r * r;
    }
    out.residual = std::sqrt(ss / n);
    return out;
}

}  // namespace qfc
