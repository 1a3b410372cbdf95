#pragma once

// Transitivity machinery: explicit unit-norm matrices inside a structure
// mapping a given unit vector to another, and the sampled decision procedure
// for the norm-characterization condition (every unit pair admits such a
// map exactly when the structured singular value equals the operator norm).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssv/complex_matrix.hpp"
#include "ssv/linalg.hpp"
#include "ssv/optimize.hpp"
#include "ssv/rng.hpp"
#include "ssv/structure.hpp"

namespace ssv {

inline void require_unit(const CVector& v, const char* op) {
    if (std::abs(norm(v) - 1.0) > 1e-10)
        throw Error(Err::not_unit_vector, std::string(op) + ": vector is not unit");
}

/// Deterministic unitary whose first column is u (Gram-Schmidt completion
/// over the standard basis, two orthogonalization passes).
[[nodiscard]] inline CMatrix unitary_from_first_column(const CVector& u) {
    const int n = static_cast<int>(u.size());
    std::vector<CVector> cols;
    cols.push_back(normalized(u));
    for (int cand = 0; cand < n && static_cast<int>(cols.size()) < n; ++cand) {
        CVector r = unit_vector(n, cand);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& c : cols) {
                const Complex ip = inner(r, c);
                for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] -= ip * c[static_cast<std::size_t>(i)];
            }
        }
        if (norm(r) > 0.3) cols.push_back(normalized(r));
    }
    if (static_cast<int>(cols.size()) != n)
        throw Error(Err::degenerate_gram, "unitary_from_first_column: completion failed");
    CMatrix w(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) w(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    return w;
}

namespace detail {

/// Unitary sending the orthonormal columns of q to those of p, completed
/// deterministically on the orthogonal complements: W = P Q*.
[[nodiscard]] inline CMatrix match_frames(const std::vector<CVector>& q,
                                          const std::vector<CVector>& p, int n) {
    auto complete = [&](std::vector<CVector> cols) {
        for (int cand = 0; cand < n && static_cast<int>(cols.size()) < n; ++cand) {
            CVector r = unit_vector(n, cand);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& c : cols) {
                    const Complex ip = inner(r, c);
                    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] -= ip * c[static_cast<std::size_t>(i)];
                }
            }
            if (norm(r) > 0.3) cols.push_back(normalized(r));
        }
        if (static_cast<int>(cols.size()) != n)
            throw Error(Err::degenerate_gram, "match_frames: completion failed");
        CMatrix m(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) m(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        return m;
    };
    const CMatrix qm = complete(q);
    const CMatrix pm = complete(p);
    return pm * adjoint(qm);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Explicit unit-norm constructions
// ---------------------------------------------------------------------------

/// Symmetric unitary A in M_2 with A u = v. Phase conventions are fixed
/// (arg 0 = 0), so the construction is deterministic.
[[nodiscard]] inline CMatrix symmetric_unitary_2x2(const CVector& u, const CVector& v) {
    if (u.size() != 2 || v.size() != 2)
        throw Error(Err::shape_mismatch, "symmetric_unitary_2x2: vectors must have length 2");
    require_unit(u, "symmetric_unitary_2x2");
    require_unit(v, "symmetric_unitary_2x2");
    const CMatrix w = unitary_from_first_column(u);
    const CVector wv = transpose(w) * v;
    const Complex alpha = wv[0];
    const Complex beta = wv[1];
    Complex gamma(1.0);
    if (std::abs(beta) > 1e-14) {
        const Complex ph = std::conj(beta) / std::abs(beta);
        gamma = ph * ph;  // conj(beta) = gamma * beta
    }
    const CMatrix b = {{alpha, beta}, {beta, -std::conj(gamma) * std::conj(alpha)}};
    return conj(w) * b * adjoint(w);
}

/// Symmetric unitary U in M_n with U u = v, built from the bilinear pairing
/// zeta = u^t v: a two-column frame match sends u to the canonical vector
/// y = (e^{i theta/2} sqrt((1+|zeta|)/2), i e^{i theta/2} sqrt((1-|zeta|)/2), 0, ...)
/// and conj(v) to conj(y); then U = W^t W.
[[nodiscard]] inline CMatrix symmetric_unitary_nxn(const CVector& u, const CVector& v) {
    const int n = static_cast<int>(u.size());
    if (n < 2 || static_cast<int>(v.size()) != n)
        throw Error(Err::shape_mismatch, "symmetric_unitary_nxn: need matching length >= 2");
    require_unit(u, "symmetric_unitary_nxn");
    require_unit(v, "symmetric_unitary_nxn");

    Complex zeta = 0;
    for (int i = 0; i < n; ++i) zeta += u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    const double az = std::min(std::abs(zeta), 1.0);
    const double theta = (std::abs(zeta) > 0.0) ? std::arg(zeta) : 0.0;
    const Complex half_phase(std::cos(theta / 2), std::sin(theta / 2));
    CVector y(static_cast<std::size_t>(n), Complex(0));
    y[0] = half_phase * std::sqrt((1.0 + az) / 2.0);
    y[1] = Complex(0, 1) * half_phase * std::sqrt((1.0 - az) / 2.0);

    const CVector vbar = conj(v);
    const CVector ybar = conj(y);

    std::vector<CVector> q{u};
    std::vector<CVector> p{y};
    // Residuals of the second frame vector have equal length on both sides
    // (the Gram matrices of (u, conj(v)) and (y, conj(y)) coincide).
    CVector r = vbar;
    {
        const Complex ip = inner(vbar, u);
        for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] -= ip * u[static_cast<std::size_t>(i)];
    }
    if (norm(r) > 1e-6) {
        q.push_back(normalized(r));
        CVector rp = ybar;
        const Complex ip = inner(ybar, y);
        for (int i = 0; i < n; ++i) rp[static_cast<std::size_t>(i)] -= ip * y[static_cast<std::size_t>(i)];
        if (norm(rp) < 1e-12)
            throw Error(Err::degenerate_gram, "symmetric_unitary_nxn: frame mismatch");
        p.push_back(normalized(rp));
    }
    const CMatrix w = detail::match_frames(q, p, n);
    return transpose(w) * w;
}

/// Unitary A in the theta structure with A u = v, via the phase similarity
/// S = diag(1, e^{i theta/2}) to the symmetric case.
[[nodiscard]] inline CMatrix theta_unitary(const CVector& u, const CVector& v, double theta) {
    if (u.size() != 2 || v.size() != 2)
        throw Error(Err::shape_mismatch, "theta_unitary: vectors must have length 2");
    require_unit(u, "theta_unitary");
    require_unit(v, "theta_unitary");
    const Complex ph(std::cos(theta / 2), std::sin(theta / 2));
    const CMatrix s = CMatrix::diag({Complex(1.0), ph});
    const CMatrix sstar = adjoint(s);
    const CMatrix b = symmetric_unitary_2x2(sstar * u, sstar * v);
    return s * b * sstar;
}

/// Unitary A with tr(M* A) = 0 and A u = v, for unitary M: a trace-zero
/// unitary U with U u = M* v is conjugated into place, A = M U.
[[nodiscard]] inline CMatrix traceorth_unitary(const CMatrix& m, const CVector& u,
                                               const CVector& v) {
    if (m.rows != 2 || m.cols != 2)
        throw Error(Err::shape_mismatch, "traceorth_unitary: M must be 2x2");
    if (unitary_defect(m) > 1e-10)
        throw Error(Err::not_unitary, "traceorth_unitary: M is not unitary");
    if (u.size() != 2 || v.size() != 2)
        throw Error(Err::shape_mismatch, "traceorth_unitary: vectors must have length 2");
    require_unit(u, "traceorth_unitary");
    require_unit(v, "traceorth_unitary");
    const CVector v0 = adjoint(m) * v;
    const CMatrix w = unitary_from_first_column(u);
    const CVector wv = adjoint(w) * v0;
    const Complex alpha = wv[0];
    const Complex beta = wv[1];
    Complex gamma(-1.0);
    if (std::abs(alpha) > 1e-14) {
        const Complex ph = alpha / std::abs(alpha);
        gamma = -ph * ph;  // alpha = -gamma * conj(alpha)
    }
    const CMatrix b = {{alpha, -gamma * std::conj(beta)}, {beta, gamma * std::conj(alpha)}};
    return m * (w * b * adjoint(w));
}

// ---------------------------------------------------------------------------
// Min-norm interpolation and the sampled norm-equality check
// ---------------------------------------------------------------------------

struct Interpolant {
    CMatrix x;
    double norm_value = 0;
};

/// Smallest operator norm of X in E with X u = v, or nullopt when the linear
/// system X(c) u = v has no solution in E (infeasible is a verdict, not a
/// failure). The minimum is never below 1 for unit u, v.
[[nodiscard]] inline std::optional<Interpolant> min_norm_interpolant(const Structure& e,
                                                                     const CVector& u,
                                                                     const CVector& v) {
    require_unit(u, "min_norm_interpolant");
    require_unit(v, "min_norm_interpolant");
    if (static_cast<int>(u.size()) != e.n)
        throw Error(Err::shape_mismatch, "min_norm_interpolant: vector length mismatch");
    const int n = e.n;
    const int k = e.dim();
    CMatrix g(n, k);
    for (int j = 0; j < k; ++j) {
        const CVector gj = e.onb[static_cast<std::size_t>(j)] * u;
        for (int i = 0; i < n; ++i) g(i, j) = gj[static_cast<std::size_t>(i)];
    }
    const LstSq ls = least_squares_with_null(g, v);
    if (ls.residual > 1e-9) return std::nullopt;

    AffineSet set;
    set.offset = expand(e, ls.solution);
    for (const auto& z : ls.null) set.directions.push_back(expand(e, z));
    const auto res = min_spectral_norm_affine(set, 1.0, 1e-7);
    return Interpolant{res.x, res.value};
}

struct TransitivityReport {
    std::string structure_label;
    int pairs_tested = 0;
    double max_map_residual = 0;
    double max_norm_defect = 0;
    double max_membership_residual = 0;
    bool pass = false;
    std::string detail;
    std::optional<std::pair<CVector, CVector>> witness_pair;
};

/// Samples unit-vector pairs and decides whether every pair admits a
/// unit-norm interpolant in E. Fails fast when dim(E) < n, which already
/// rules the property out.
[[nodiscard]] inline TransitivityReport norm_equality_check(const Structure& e, int samples,
                                                            std::uint64_t seed) {
    TransitivityReport rep;
    rep.structure_label = e.label();
    if (e.dim() < e.n) {
        rep.pass = false;
        rep.detail = "dimension " + std::to_string(e.dim()) + " below order " +
                     std::to_string(e.n) + "; surjectivity onto C^n is impossible";
        return rep;
    }
    Rng rng(seed);
    bool ok = true;
    for (int s = 0; s < samples; ++s) {
        const CVector u = rng.random_unit_vector(e.n);
        const CVector v = rng.random_unit_vector(e.n);
        const auto interp = min_norm_interpolant(e, u, v);
        ++rep.pairs_tested;
        if (!interp) {
            ok = false;
            if (!rep.witness_pair) {
                rep.witness_pair = {u, v};
                rep.detail = "no matrix in the structure maps the witness pair";
            }
            continue;
        }
        const double defect = std::abs(interp->norm_value - 1.0);
        const double map_res = norm(interp->x * u - v);
        const double mem_res = member_residual(e, interp->x);
        rep.max_norm_defect = std::max(rep.max_norm_defect, defect);
        rep.max_map_residual = std::max(rep.max_map_residual, map_res);
        rep.max_membership_residual = std::max(rep.max_membership_residual, mem_res);
        if (defect > 1e-6 || map_res > 1e-6 || mem_res > 1e-6) {
            ok = false;
            if (!rep.witness_pair) {
                rep.witness_pair = {u, v};
                rep.detail = "min interpolation norm " + std::to_string(interp->norm_value) +
                             " deviates from 1";
            }
        }
    }
    rep.pass = ok;
    if (ok) rep.detail = "all sampled pairs admit unit-norm interpolants";
    return rep;
}

}  // namespace ssv
