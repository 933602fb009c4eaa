// eigen.hpp — Hermitian eigendecomposition by cyclic Jacobi rotations,
// trace norm, and the clipped PSD matrix functions built on them.
//
// Contracts: input Hermitian within 1e-12 (max norm), n <= 512. Output
// satisfies H = V diag(w) V† within 1e-10 max norm with V unitary to the
// same tolerance; eigenvalues ascending. Within a degenerate cluster the
// eigenvector columns are determined only up to rotation.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qfc/matrix.hpp"

namespace qfc {

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns; H = V diag(values) V†
};

inline EigenSystem hermitian_eigensystem(const ComplexMatrix& h_in) {
    if (!h_in.square()) throw ContractError("hermitian_eigensystem: matrix not square");
    const std::size_t n = h_in.rows();
    if (n > 512) throw ContractError("hermitian_eigensystem: size exceeds 512");
    if (!h_in.all_finite()) throw ContractError("hermitian_eigensystem: non-finite entries");
    if (h_in.hermiticity_defect() > 1e-12)
        throw ContractError("hermitian_eigensystem: input not Hermitian within 1e-12");

    ComplexMatrix a = h_in.symmetrized();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double norm_f = a.frobenius_norm();

    if (n > 1 && norm_f > 0.0) {
        const double stop = 1e-14 * norm_f;
        const double skip = 1e-18 * norm_f / static_cast<double>(n);
        for (int sweep = 0; sweep < 100; ++sweep) {
            double off = 0.0;
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
            off = std::sqrt(2.0 * off);
            if (off < stop) break;

            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const cx apq = a(p, q);
                    const double r = std::abs(apq);
                    if (r <= skip) continue;
                    const cx u = apq / r;  // phase of the off-diagonal entry
                    const double app = a(p, p).real();
                    const double aqq = a(q, q).real();
                    const double tau = (aqq - app) / (2.0 * r);
                    const double hyp = std::sqrt(1.0 + tau * tau);
                    const double t = (tau >= 0.0) ? -1.0 / (tau + hyp) : 1.0 / (-tau + hyp);
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;

                    // G restricted to (p,q): [[c, -s], [conj(u) s, conj(u) c]]
                    const cx gpp(c, 0.0), gpq(-s, 0.0);
                    const cx gqp = std::conj(u) * s, gqq = std::conj(u) * c;

                    for (std::size_t i = 0; i < n; ++i) {  // A <- A G, V <- V G
                        const cx aip = a(i, p), aiq = a(i, q);
                        a(i, p) = aip * gpp + aiq * gqp;
                        a(i, q) = aip * gpq + aiq * gqq;
                        const cx vip = v(i, p), viq = v(i, q);
                        v(i, p) = vip * gpp + viq * gqp;
                        v(i, q) = vip * gpq + viq * gqq;
                    }
                    for (std::size_t j = 0; j < n; ++j) {  // A <- G† A
                        const cx apj = a(p, j), aqj = a(q, j);
                        a(p, j) = std::conj(gpp) * apj + std::conj(gqp) * aqj;
                        a(q, j) = std::conj(gpq) * apj + std::conj(gqq) * aqj;
                    }
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    a(p, p) = cx(a(p, p).real(), 0.0);
                    a(q, q) = cx(a(q, q).real(), 0.0);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

// Eigenvalue clip used before every log/sqrt of a PSD spectrum; keeps
// roundoff-level spurious eigenvalues out of square-root sums.
constexpr double kPsdClip = 1e-12;

// Sum of singular values, via the spectrum of M†M with tiny entries clipped.
inline double trace_norm(const ComplexMatrix& m) {
    if (!m.square()) throw ContractError("trace_norm: matrix not square");
    const EigenSystem es = hermitian_eigensystem(m.dagger() * m);
    double s = 0.0;
    for (double lam : es.values)
        if (lam >= kPsdClip) s += std::sqrt(lam);
    return s;
}

// V f(Lambda) V† with eigenvalues below kPsdClip clipped to zero.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
    const EigenSystem es = hermitian_eigensystem(h);
    const std::size_t n = h.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = es.values[k];
        if (lam < kPsdClip) continue;
        const double f = std::sqrt(lam);
        for (std::size_t i = 0; i < n; ++i) {
            const cx vik = es.vectors(i, k);
            if (vik == cx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += f * vik * std::conj(es.vectors(j, k));
        }
    }
    return out.symmetrized();
}

}  // namespace qfc
