// tomography.hpp — Simulated quantum state tomography for the d = 2 and
// d = 3 subspaces: projector quorums, expected/Poisson coincidence counts,
// linear inversion through the B matrix, and a physicality-preserving
// maximum-likelihood reconstruction (rho = T†T / tr(T†T), T lower
// triangular).
//
// Count bookkeeping mirrors the measurement procedure: single-mode
// projectors (d = 2 only) lose intensity to blocked modes, so simulation
// divides by the correction factor and reconstruction multiplies it back.

#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qfc/eigen.hpp"
#include "qfc/entanglement.hpp"
#include "qfc/matrix.hpp"
#include "qfc/rng.hpp"

namespace qfc {

// ------------------------------ qudit basis -------------------------------

// Tomography works in the qudit basis |k>_s |l>_i, k,l = 1..d, where |l>_i
// stands for idler mode -l. This reorders the idler arm of a post-selected
// comb state (whose slots ascend in physical index) accordingly.
inline DensityMatrix qudit_density(const BiphotonAmplitude& state) {
    const int d = static_cast<int>(state.signal_count());
    if (state.idler_count() != static_cast<std::size_t>(d))
        throw ContractError("qudit_density: arms must have equal dimension");
    for (int k = 1; k <= d; ++k)
        if (state.signal_slot(k) < 0 || state.idler_slot(-k) < 0)
            throw ContractError("qudit_density: expected signal modes 1..d, idler -1..-d");
    std::vector<cx> psi(static_cast<std::size_t>(d) * d);
    for (int k = 1; k <= d; ++k)
        for (int l = 1; l <= d; ++l)
            psi[static_cast<std::size_t>(k - 1) * d + (l - 1)] =
                state.amplitudes()(state.signal_slot(k), state.idler_slot(-l));
    ComplexMatrix rho(psi.size(), psi.size());
    for (std::size_t r = 0; r < psi.size(); ++r)
        for (std::size_t c = 0; c < psi.size(); ++c) rho(r, c) = psi[r] * std::conj(psi[c]);
    return DensityMatrix(std::move(rho), d, d);
}

// ------------------------------ projectors --------------------------------

struct Projector {
    std::string label;
    std::vector<cx> signal_state;  // unit norm, dimension d
    std::vector<cx> idler_state;
    double correction = 1.0;  // counts multiplier undoing blocked-mode loss
};

struct ProjectorSet {
    int d = 2;
    std::vector<Projector> items;
};

namespace detail {

struct ArmState {
    std::string label;
    std::vector<cx> amp;
    bool single_mode = false;
};

inline std::vector<ArmState> arm_states_d2() {
    const double r = 1.0 / std::sqrt(2.0);
    return {
        {"m1", {1.0, 0.0}, true},
        {"m2", {0.0, 1.0}, true},
        {"p12", {r, r}, false},
        {"q12", {r, cx(0.0, r)}, false},
    };
}

inline std::vector<ArmState> arm_states_d3() {
    // two-mode superpositions (a,b) x relative phases {1, w, w*}, w = e^{2pi i/3}
    const double r = 1.0 / std::sqrt(2.0);
    const cx w = std::polar(1.0, 2.0 * kPi / 3.0);
    const cx wc = std::conj(w);
    std::vector<ArmState> out;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    const cx phases[3][2] = {{cx(1.0, 0.0), cx(1.0, 0.0)}, {w, wc}, {wc, w}};
    const char* tag[3] = {"0", "p", "m"};
    for (const auto& pr : pairs) {
        for (int ph = 0; ph < 3; ++ph) {
            ArmState s;
            s.label = "s" + std::to_string(pr[0] + 1) + std::to_string(pr[1] + 1) + tag[ph];
            s.amp.assign(3, cx(0.0, 0.0));
            s.amp[pr[0]] = r * phases[ph][0];
            s.amp[pr[1]] = r * phases[ph][1];
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace detail

// d = 2: the 16 pairs from {|1>, |2>, (|1>+|2>)/sqrt2, (|1>+i|2>)/sqrt2},
// corrections x2 with one single-mode arm and x4 with two. d = 3: the 81
// pairs of two-mode superpositions, no corrections.
inline ProjectorSet projector_set(int d) {
    if (d != 2 && d != 3) throw DomainError("projector_set: d must be 2 or 3");
    const auto arms = (d == 2) ? detail::arm_states_d2() : detail::arm_states_d3();
    ProjectorSet set;
    set.d = d;
    for (const auto& s : arms) {
        for (const auto& i : arms) {
            Projector p;
            p.label = s.label + "x" + i.label;
            p.signal_state = s.amp;
            p.idler_state = i.amp;
            const int blocked = (s.single_mode ? 1 : 0) + (i.single_mode ? 1 : 0);
            p.correction = (blocked == 2) ? 4.0 : (blocked == 1 ? 2.0 : 1.0);
            set.items.push_back(std::move(p));
        }
    }
    return set;
}

// ------------------------------ Gamma basis -------------------------------

struct HermitianBasis {
    int d = 2;
    std::vector<ComplexMatrix> gammas;  // d^4 matrices over the d^2 space
};

namespace detail {

// identity + generalized Gell-Mann matrices, trace-orthogonal
inline std::vector<ComplexMatrix> single_arm_generators(int d) {
    std::vector<ComplexMatrix> g;
    g.push_back(ComplexMatrix::identity(d));
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix sym(d, d);
            sym(j, k) = 1.0;
            sym(k, j) = 1.0;
            g.push_back(sym);
            ComplexMatrix asym(d, d);
            asym(j, k) = cx(0.0, -1.0);
            asym(k, j) = cx(0.0, 1.0);
            g.push_back(asym);
        }
    }
    for (int l = 1; l < d; ++l) {
        ComplexMatrix diag(d, d);
        const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int j = 0; j < l; ++j) diag(j, j) = norm;
        diag(l, l) = -l * norm;
        g.push_back(diag);
    }
    return g;
}

}  // namespace detail

inline HermitianBasis gamma_basis(int d) {
    if (d != 2 && d != 3) throw DomainError("gamma_basis: d must be 2 or 3");
    const auto arm = detail::single_arm_generators(d);
    HermitianBasis basis;
    basis.d = d;
    for (const auto& a : arm)
        for (const auto& b : arm) basis.gammas.push_back(kron(a, b));
    return basis;
}

// ------------------------------ B matrix ----------------------------------

namespace detail {

inline std::vector<cx> projector_vector(const Projector& p) {
    return kron(p.signal_state, p.idler_state);
}

inline double expectation(const std::vector<cx>& psi, const ComplexMatrix& m) {
    cx acc(0.0, 0.0);
    for (std::size_t r = 0; r < psi.size(); ++r) {
        if (psi[r] == cx(0.0, 0.0)) continue;
        for (std::size_t c = 0; c < psi.size(); ++c)
            acc += std::conj(psi[r]) * m(r, c) * psi[c];
    }
    return acc.real();
}

}  // namespace detail

// B[nu, x] = <psi_nu| Gamma_x |psi_nu>; real by Hermiticity. Invertibility
// (smallest singular value > 1e-8 x largest) certifies the quorum.
inline ComplexMatrix b_matrix(const ProjectorSet& projs, const HermitianBasis& basis) {
    const std::size_t n = basis.gammas.size();
    if (projs.d != basis.d || projs.items.size() != n)
        throw ContractError("b_matrix: projector/basis dimension mismatch");
    ComplexMatrix b(n, n);
    for (std::size_t nu = 0; nu < n; ++nu) {
        const auto psi = detail::projector_vector(projs.items[nu]);
        for (std::size_t x = 0; x < n; ++x)
            b(nu, x) = detail::expectation(psi, basis.gammas[x]);
    }
    const EigenSystem sv = hermitian_eigensystem(b.dagger() * b);
    const double smax = std::sqrt(std::max(sv.values.back(), 0.0));
    const double smin = std::sqrt(std::max(sv.values.front(), 0.0));
    if (!(smin > 1e-8 * smax))
        throw QuorumError("b_matrix: singular B, quorum is tomographically incomplete");
    return b;
}

// ------------------------------ counts ------------------------------------

enum class CountNoise { Exact, Poisson };

struct CountRecord {
    std::string label;
    double count = 0.0;
    double correction = 1.0;
};

// n_nu = C <psi_nu| rho |psi_nu> / correction; Poisson mode draws each
// count with that mean, seeded and bit-reproducible.
inline std::vector<CountRecord> simulate_counts(const DensityMatrix& rho,
                                                const ProjectorSet& projs, double scale,
                                                CountNoise noise = CountNoise::Exact,
                                                std::uint64_t seed = 0) {
    if (!(scale > 0.0)) throw DomainError("simulate_counts: scale C must be > 0");
    if (rho.dim_total() != static_cast<std::size_t>(projs.d) * projs.d)
        throw ContractError("simulate_counts: density matrix does not match the quorum");
    Rng rng(seed);
    std::vector<CountRecord> out;
    for (const auto& p : projs.items) {
        const auto psi = detail::projector_vector(p);
        const double mean = scale * detail::expectation(psi, rho.matrix()) / p.correction;
        CountRecord rec;
        rec.label = p.label;
        rec.correction = p.correction;
        rec.count = (noise == CountNoise::Exact)
                        ? std::max(mean, 0.0)
                        : static_cast<double>(poisson(rng, std::max(mean, 0.0)));
        out.push_back(std::move(rec));
    }
    return out;
}

// ------------------------------ linear inversion --------------------------

namespace detail {

struct ReconstructionOperators {
    std::vector<ComplexMatrix> m_nu;  // M_nu = sum_x Gamma_x (B^-1)_{x,nu}
    std::vector<double> trace_m;      // tr M_nu: C = sum_nu tr(M_nu) n_nu
};

inline ReconstructionOperators reconstruction_operators(const ProjectorSet& projs,
                                                        const HermitianBasis& basis) {
    const ComplexMatrix b = b_matrix(projs, basis);
    const std::size_t n = basis.gammas.size();
    const ComplexMatrix binv = solve_linear(b, ComplexMatrix::identity(n));
    ReconstructionOperators ops;
    const std::size_t dim = basis.gammas.front().rows();
    for (std::size_t nu = 0; nu < n; ++nu) {
        ComplexMatrix m(dim, dim);
        for (std::size_t x = 0; x < n; ++x) {
            const cx coeff = binv(x, nu);
            if (coeff == cx(0.0, 0.0)) continue;
            m += basis.gammas[x] * coeff;
        }
        ops.trace_m.push_back(m.trace().real());
        ops.m_nu.push_back(std::move(m));
    }
    return ops;
}

// corrected counts in quorum order; throws on missing/duplicate labels
inline std::vector<double> corrected_counts(const std::vector<CountRecord>& counts,
                                            const ProjectorSet& projs) {
    std::map<std::string, double> by_label;
    for (const auto& rec : counts) {
        if (!(rec.count >= 0.0) || !std::isfinite(rec.count))
            throw DomainError("counts: negative or non-finite count");
        if (!by_label.emplace(rec.label, rec.count * rec.correction).second)
            throw QuorumError("counts: duplicate label " + rec.label);
    }
    std::vector<double> n;
    for (const auto& p : projs.items) {
        auto it = by_label.find(p.label);
        if (it == by_label.end())
            throw QuorumError("counts: quorum entry missing: " + p.label);
        n.push_back(it->second);
    }
    return n;
}

}  // namespace detail

// rho = C^-1 sum_nu M_nu n_nu with C = sum_nu tr(M_nu) n_nu. Hermitian and
// unit trace; not necessarily PSD for noisy counts (which is what motivates
// the MLE below).
inline ComplexMatrix linear_reconstruct(const std::vector<CountRecord>& counts,
                                        const ProjectorSet& projs, const HermitianBasis& basis) {
    const auto ops = detail::reconstruction_operators(projs, basis);
    const auto n = detail::corrected_counts(counts, projs);
    double c_scale = 0.0;
    for (std::size_t nu = 0; nu < n.size(); ++nu) c_scale += ops.trace_m[nu] * n[nu];
    if (!(c_scale > 0.0)) throw QuorumError("linear_reconstruct: counts sum to zero");
    const std::size_t dim = ops.m_nu.front().rows();
    ComplexMatrix rho(dim, dim);
    for (std::size_t nu = 0; nu < n.size(); ++nu) {
        if (n[nu] == 0.0) continue;
        rho += ops.m_nu[nu] * cx(n[nu] / c_scale, 0.0);
    }
    return rho.symmetrized();
}

// ------------------------------ MLE ---------------------------------------

// Non-convergence carries the best physical iterate found so far.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, ComplexMatrix best)
        : Error(what), best_iterate(std::move(best)) {}
    ComplexMatrix best_iterate;
};

namespace detail {

// lower-triangular T from a PSD matrix: rho = T†T (reversed Cholesky)
inline ComplexMatrix lower_factor(const ComplexMatrix& rho_in) {
    const std::size_t n = rho_in.rows();
    // flip, Cholesky with a tiny ridge, flip back
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = rho_in(n - 1 - r, n - 1 - c);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += 1e-12;
    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        cx diag = m(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * std::conj(l(j, k));
        const double dr = std::max(diag.real(), 1e-15);
        l(j, j) = std::sqrt(dr);
        for (std::size_t i = j + 1; i < n; ++i) {
            cx v = m(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * std::conj(l(j, k));
            l(i, j) = v / l(j, j);
        }
    }
    // m = l l†  =>  rho = (J l J)(J l† J) = t† t with t = J l† J lower
    ComplexMatrix t(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) t(r, c) = std::conj(l(n - 1 - c, n - 1 - r));
    return t;
}

inline ComplexMatrix density_of_factor(const ComplexMatrix& t) {
    ComplexMatrix rho = t.dagger() * t;
    const double tr = rho.trace().real();
    rho *= cx(1.0 / tr, 0.0);
    return rho.symmetrized();
}

}  // namespace detail

struct MleOptions {
    std::size_t max_iterations = 100000;
    double relative_tolerance = 1e-10;
    double variance_floor = 1.0;  // counts
};

// Gaussian-approximated Poisson objective
//   sum_nu (C p_nu - n_nu)^2 / (2 max(C p_nu, eps)),  p_nu = <psi|rho|psi>,
// minimized over rho = T†T/tr(T†T) by gradient descent with backtracking;
// C is re-estimated from the current p each iteration. Always returns a
// PSD, unit-trace matrix.
inline DensityMatrix mle_reconstruct(const std::vector<CountRecord>& counts,
                                     const ProjectorSet& projs,
                                     const ComplexMatrix* init = nullptr,
                                     const MleOptions& opts = {}) {
    const HermitianBasis basis = gamma_basis(projs.d);
    const auto n = detail::corrected_counts(counts, projs);
    const std::size_t dim = static_cast<std::size_t>(projs.d) * projs.d;

    // initial iterate: PSD projection of the linear reconstruction
    ComplexMatrix rho0(dim, dim);
    if (init != nullptr) {
        rho0 = init->symmetrized();
    } else {
        rho0 = linear_reconstruct(counts, projs, basis);
    }
    {
        const EigenSystem es = hermitian_eigensystem(rho0);
        ComplexMatrix clipped(dim, dim);
        double tr = 0.0;
        for (std::size_t k = 0; k < dim; ++k) tr += std::max(es.values[k], 0.0);
        if (!(tr > 0.0)) tr = 1.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double lam = std::max(es.values[k], 0.0) / tr;
            if (lam == 0.0) continue;
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    clipped(i, j) +=
                        lam * es.vectors(i, k) * std::conj(es.vectors(j, k));
        }
        rho0 = clipped.symmetrized();
    }
    ComplexMatrix t = detail::lower_factor(rho0);
    {  // scale invariance: keep T at unit Frobenius norm
        const double f = t.frobenius_norm();
        if (f > 0.0) t *= cx(1.0 / f, 0.0);
    }

    std::vector<std::vector<cx>> psi;
    for (const auto& p : projs.items) psi.push_back(detail::projector_vector(p));

    auto probabilities = [&](const ComplexMatrix& tt, std::vector<double>& p_out) {
        const std::size_t nproj = psi.size();
        p_out.assign(nproj, 0.0);
        double norm = 0.0;
        for (const cx& v : tt.data()) norm += std::norm(v);
        for (std::size_t nu = 0; nu < nproj; ++nu) {
            double q = 0.0;  // |T psi|^2
            for (std::size_t r = 0; r < dim; ++r) {
                cx acc(0.0, 0.0);
                for (std::size_t c = 0; c <= r; ++c) acc += tt(r, c) * psi[nu][c];
                q += std::norm(acc);
            }
            p_out[nu] = q / norm;
        }
        return norm;
    };

    auto estimate_scale = [&](const std::vector<double>& p) {
        // minimizer of the objective over C: C^2 = (sum n^2/p) / (sum p)
        double num = 0.0, den = 0.0;
        for (std::size_t nu = 0; nu < n.size(); ++nu) {
            const double pf = std::max(p[nu], 1e-15);
            num += n[nu] * n[nu] / pf;
            den += pf;
        }
        return std::sqrt(num / std::max(den, 1e-300));
    };

    auto objective = [&](const std::vector<double>& p, double c_scale) {
        double f = 0.0;
        for (std::size_t nu = 0; nu < n.size(); ++nu) {
            const double mean = c_scale * p[nu];
            const double r = mean - n[nu];
            f += r * r / (2.0 * std::max(mean, opts.variance_floor));
        }
        return f;
    };

    std::vector<double> p;
    probabilities(t, p);
    double c_scale = estimate_scale(p);
    double f_prev = objective(p, c_scale);
    double step = 1.0;
    bool converged = false;

    for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
        // gradient of the frozen-weight quadratic in the T entries:
        // d f = sum_nu alpha_nu dQ_nu + beta dN, with
        //   dQ_nu/dT = 2 (T psi_nu) psi_nu†, dN/dT = 2 T
        const double norm = [&] {
            double s = 0.0;
            for (const cx& v : t.data()) s += std::norm(v);
            return s;
        }();
        ComplexMatrix grad(dim, dim);
        double beta = 0.0;
        for (std::size_t nu = 0; nu < n.size(); ++nu) {
            const double mean = c_scale * p[nu];
            const double w = 1.0 / std::max(mean, opts.variance_floor);
            const double alpha = w * (mean - n[nu]) * c_scale / norm;
            if (alpha == 0.0) continue;
            beta -= w * (mean - n[nu]) * c_scale * p[nu] / norm;
            std::vector<cx> tpsi(dim, cx(0.0, 0.0));
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c <= r; ++c) tpsi[r] += t(r, c) * psi[nu][c];
            for (std::size_t r = 0; r < dim; ++r) {
                if (tpsi[r] == cx(0.0, 0.0)) continue;
                for (std::size_t c = 0; c <= r; ++c)
                    grad(r, c) += cx(2.0 * alpha, 0.0) * tpsi[r] * std::conj(psi[nu][c]);
            }
        }
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c <= r; ++c) grad(r, c) += cx(2.0 * beta, 0.0) * t(r, c);
        for (std::size_t r = 0; r < dim; ++r)
            grad(r, r) = cx(grad(r, r).real(), 0.0);  // diagonal stays real

        const double gnorm = grad.frobenius_norm();
        if (gnorm < 1e-300) {
            converged = true;
            break;
        }

        // backtracking line search on the true objective
        double f_new = f_prev;
        ComplexMatrix t_new = t;
        std::vector<double> p_new;
        bool improved = false;
        for (int bt = 0; bt < 60; ++bt) {
            ComplexMatrix cand = t;
            cand -= grad * cx(step, 0.0);
            const double fn = cand.frobenius_norm();
            if (fn > 0.0) cand *= cx(1.0 / fn, 0.0);
            probabilities(cand, p_new);
            const double c_cand = estimate_scale(p_new);
            const double f_cand = objective(p_new, c_cand);
            if (f_cand < f_prev) {
                t_new = std::move(cand);
                f_new = f_cand;
                c_scale = c_cand;
                improved = true;
                step *= 1.6;  // grow while progress is easy
                break;
            }
            step *= 0.5;
            if (step < 1e-18) break;
        }
        if (!improved) {
            converged = true;  // no descent direction left at machine scale
            break;
        }
        t = std::move(t_new);
        p = std::move(p_new);
        const double drop = (f_prev - f_new) / std::max(f_prev, 1e-300);
        f_prev = f_new;
        if (drop < opts.relative_tolerance || f_new < 1e-18) {
            converged = true;
            break;
        }
    }

    ComplexMatrix rho = detail::density_of_factor(t);
    if (!converged)
        throw ConvergenceError("mle_reconstruct: iteration cap reached", std::move(rho));
    return DensityMatrix(std::move(rho), projs.d, projs.d);
}

}  // namespace qfc
