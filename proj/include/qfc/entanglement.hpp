// entanglement.hpp — Density-matrix algebra and the entanglement/quality
// measures used throughout: Von Neumann entropy (absolute bits and
// normalized), fidelity, purity, concurrence / entanglement of formation
// (two qubits only), logarithmic negativity, and the depolarizing noise
// model.

#pragma once

#include <cmath>
#include <vector>

#include "qfc/comb.hpp"
#include "qfc/eigen.hpp"
#include "qfc/matrix.hpp"

namespace qfc {

enum class Arm { Signal, Idler };

// Hermitian (1e-10), PSD (eigenvalues >= -1e-10), unit-trace (1e-10) complex
// matrix over the two-party space, with declared subsystem dimensions.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix rho, std::size_t dim_signal, std::size_t dim_idler)
        : rho_(std::move(rho)), dim_s_(dim_signal), dim_i_(dim_idler) {
        if (!rho_.square() || rho_.rows() != dim_s_ * dim_i_)
            throw ContractError("DensityMatrix: size does not match subsystem dimensions");
        if (!rho_.all_finite()) throw ContractError("DensityMatrix: non-finite entries");
        if (rho_.hermiticity_defect() > 1e-10)
            throw ContractError("DensityMatrix: not Hermitian within 1e-10");
        rho_ = rho_.symmetrized();
        if (std::abs(rho_.trace().real() - 1.0) > 1e-10)
            throw ContractError("DensityMatrix: trace differs from 1 beyond 1e-10");
        const EigenSystem es = hermitian_eigensystem(rho_);
        if (es.values.front() < -1e-10)
            throw ContractError("DensityMatrix: negative eigenvalue beyond -1e-10");
    }

    const ComplexMatrix& matrix() const { return rho_; }
    std::size_t dim_signal() const { return dim_s_; }
    std::size_t dim_idler() const { return dim_i_; }
    std::size_t dim_total() const { return dim_s_ * dim_i_; }

private:
    ComplexMatrix rho_;
    std::size_t dim_s_, dim_i_;
};

struct EntropyReport {
    std::vector<double> eigenvalues;  // descending
    double absolute_bits = 0.0;       // S_A, log base 2
    double normalized = 0.0;          // S_N, log base log_base_dim
    std::size_t log_base_dim = 2;     // r
    std::size_t numerical_rank = 0;   // eigenvalues > 1e-10 * largest
};

// ----------------------------- construction ------------------------------

// |psi><psi| over (signal slot) x (idler slot), signal-major vectorization.
inline DensityMatrix density_from_pure(const BiphotonAmplitude& state) {
    const std::size_t ns = state.signal_count(), ni = state.idler_count();
    const std::size_t n = ns * ni;
    std::vector<cx> psi(n);
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t i = 0; i < ni; ++i) psi[s * ni + i] = state.amplitudes()(s, i);
    ComplexMatrix rho(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) rho(r, c) = psi[r] * std::conj(psi[c]);
    return DensityMatrix(std::move(rho), ns, ni);
}

// p rho + (1-p) I/d^2
inline DensityMatrix depolarize(const DensityMatrix& rho, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("depolarize: p must lie in [0,1]");
    const std::size_t n = rho.dim_total();
    ComplexMatrix out = rho.matrix();
    out *= cx(p, 0.0);
    const double mix = (1.0 - p) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) += mix;
    return DensityMatrix(std::move(out), rho.dim_signal(), rho.dim_idler());
}

// ----------------------------- reductions --------------------------------

inline ComplexMatrix partial_trace(const DensityMatrix& rho, Arm keep) {
    const std::size_t ns = rho.dim_signal(), ni = rho.dim_idler();
    const ComplexMatrix& m = rho.matrix();
    if (keep == Arm::Signal) {
        ComplexMatrix red(ns, ns);
        for (std::size_t s = 0; s < ns; ++s)
            for (std::size_t t = 0; t < ns; ++t)
                for (std::size_t i = 0; i < ni; ++i) red(s, t) += m(s * ni + i, t * ni + i);
        return red.symmetrized();
    }
    ComplexMatrix red(ni, ni);
    for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t j = 0; j < ni; ++j)
            for (std::size_t s = 0; s < ns; ++s) red(i, j) += m(s * ni + i, s * ni + j);
    return red.symmetrized();
}

// Partial transpose on the signal arm. The trace norm downstream is
// invariant to which arm is transposed.
inline ComplexMatrix partial_transpose_signal(const DensityMatrix& rho) {
    const std::size_t ns = rho.dim_signal(), ni = rho.dim_idler();
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix out(ns * ni, ns * ni);
    for (std::size_t a = 0; a < ns; ++a)
        for (std::size_t b = 0; b < ni; ++b)
            for (std::size_t c = 0; c < ns; ++c)
                for (std::size_t d = 0; d < ni; ++d)
                    out(a * ni + b, c * ni + d) = m(c * ni + b, a * ni + d);
    return out;
}

// ----------------------------- measures ----------------------------------

// S_A = -sum lambda log2 lambda (0 log 0 := 0, clip 1e-12); S_N uses log
// base r = base_dim, the Schmidt-rank upper bound of the arm.
inline EntropyReport entropy_report(const ComplexMatrix& reduced, std::size_t base_dim) {
    if (base_dim < 2) throw DomainError("entropy_report: base_dim must be >= 2");
    if (!reduced.square()) throw ContractError("entropy_report: matrix not square");
    if (std::abs(reduced.trace().real() - 1.0) > 1e-9)
        throw ContractError("entropy_report: trace differs from 1");
    EigenSystem es = hermitian_eigensystem(reduced);
    if (es.values.front() < -1e-9) throw ContractError("entropy_report: input not PSD");

    EntropyReport rep;
    rep.log_base_dim = base_dim;
    rep.eigenvalues.assign(es.values.rbegin(), es.values.rend());
    const double lmax = rep.eigenvalues.empty() ? 0.0 : rep.eigenvalues.front();
    double s = 0.0;
    for (double lam : rep.eigenvalues) {
        if (lam > 1e-10 * lmax) ++rep.numerical_rank;
        if (lam >= kPsdClip) s -= lam * std::log2(lam);
    }
    rep.absolute_bits = s;
    rep.normalized = s / std::log2(static_cast<double>(base_dim));
    return rep;
}

// F = (tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2, square roots by clipped
// eigendecomposition.
inline double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim_total() != rho2.dim_total())
        throw ContractError("fidelity: dimension mismatch");
    const ComplexMatrix s1 = psd_sqrt(rho1.matrix());
    const ComplexMatrix inner = (s1 * rho2.matrix() * s1).symmetrized();
    const EigenSystem es = hermitian_eigensystem(inner);
    double tr = 0.0;
    for (double lam : es.values)
        if (lam >= kPsdClip) tr += std::sqrt(lam);
    const double f = tr * tr;
    if (f > 1.0 + 1e-6) throw ContractError("fidelity: result exceeds 1 beyond tolerance");
    return std::min(std::max(f, 0.0), 1.0);
}

inline double purity(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    double s = 0.0;  // tr(rho^2) = sum |rho_{rc}|^2 for Hermitian rho
    for (const cx& v : m.data()) s += std::norm(v);
    return s;
}

struct ConcurrenceResult {
    double concurrence = 0.0;
    double entanglement_of_formation = 0.0;
};

inline double binary_entropy(double x) {
    double h = 0.0;
    if (x > kPsdClip) h -= x * std::log2(x);
    if (1.0 - x > kPsdClip) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

// Two-qubit concurrence C = max{0, l1-l2-l3-l4} from R = sqrt(sqrt(rho)
// rho~ sqrt(rho)), rho~ = (Y x Y) rho* (Y x Y); E_f = h((1+sqrt(1-C^2))/2).
// There is no explicit formula beyond 2x2 subsystems, so larger inputs are
// rejected rather than approximated.
inline ConcurrenceResult concurrence_and_eof(const DensityMatrix& rho) {
    if (rho.dim_signal() != 2 || rho.dim_idler() != 2)
        throw ContractError("concurrence_and_eof: defined for 2x2 subsystems only");
    ComplexMatrix yy(4, 4);  // (Y x Y): antidiagonal -1, +1, +1, -1
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const ComplexMatrix spin_flipped = yy * rho.matrix().conjugate() * yy;
    const ComplexMatrix s = psd_sqrt(rho.matrix());
    const ComplexMatrix inner = (s * spin_flipped * s).symmetrized();
    const EigenSystem es = hermitian_eigensystem(inner);
    // eigenvalues of R are the square roots, descending
    std::vector<double> lam;
    for (auto it = es.values.rbegin(); it != es.values.rend(); ++it)
        lam.push_back(*it >= kPsdClip ? std::sqrt(*it) : 0.0);
    ConcurrenceResult out;
    out.concurrence = std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
    const double c2 = std::min(out.concurrence * out.concurrence, 1.0);
    out.entanglement_of_formation = binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c2)));
    return out;
}

// E_N = log2 || rho^(T_A) ||_1
inline double log_negativity(const DensityMatrix& rho) {
    return std::log2(trace_norm(partial_transpose_signal(rho)));
}

}  // namespace qfc
