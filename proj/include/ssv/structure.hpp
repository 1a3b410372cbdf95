#pragma once

// Linear subspaces of M_n(C) ("structures"): named builders for the scalar,
// diagonal, upper-triangular-equal-diagonal, upper-triangular, symmetric,
// phase-coupled and trace-orthogonal families, plus Hilbert-Schmidt
// projections, complements, conjugation and rank-one pencil search.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssv/complex_matrix.hpp"
#include "ssv/linalg.hpp"

namespace ssv {

enum class StructureTag {
    scalar,
    diag,
    penta,
    hexa,
    symm,
    theta,
    trace_orth,
    full,
    custom,
};

[[nodiscard]] inline std::string tag_name(StructureTag t) {
    switch (t) {
        case StructureTag::scalar: return "scalar";
        case StructureTag::diag: return "diag";
        case StructureTag::penta: return "penta";
        case StructureTag::hexa: return "hexa";
        case StructureTag::symm: return "symm";
        case StructureTag::theta: return "theta";
        case StructureTag::trace_orth: return "trace_orth";
        case StructureTag::full: return "full";
        case StructureTag::custom: return "custom";
    }
    return "custom";
}

/// A structure E: a linear subspace of M_n(C) with a validated basis and an
/// HS-orthonormalized working copy. Immutable after construction.
struct Structure {
    int n = 0;
    StructureTag tag = StructureTag::custom;
    std::vector<CMatrix> basis;  // as given
    std::vector<CMatrix> onb;    // HS-orthonormal span of `basis`
    double theta = 0.0;          // theta tag only
    CMatrix trace_m;             // trace_orth tag only
    bool trace_m_unitary = false;

    [[nodiscard]] int dim() const { return static_cast<int>(onb.size()); }
    [[nodiscard]] std::string label() const {
        std::string s = tag_name(tag) + "(n=" + std::to_string(n) + ")";
        if (tag == StructureTag::theta) s += " theta=" + std::to_string(theta);
        return s;
    }
};

using CoefVector = std::vector<Complex>;

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

[[nodiscard]] inline Structure make_structure(int n, std::vector<CMatrix> basis,
                                              StructureTag tag = StructureTag::custom) {
    if (n <= 0 || n > kMaxOrder)
        throw Error(Err::unsupported_dimension, "make_structure: order out of range");
    if (basis.empty()) throw Error(Err::bad_param, "make_structure: empty basis");
    for (const auto& b : basis) {
        if (b.rows != n || b.cols != n)
            throw Error(Err::shape_mismatch, "make_structure: basis element has wrong shape");
    }
    const int k = static_cast<int>(basis.size());
    if (k > n * n) throw Error(Err::bad_param, "make_structure: more elements than n^2");

    // Independence gate: smallest eigenvalue of the Gram matrix of the
    // unit-normalized basis must clear 1e-10. Degenerate inputs are rejected,
    // never silently pruned.
    std::vector<CMatrix> unit(basis.begin(), basis.end());
    for (auto& b : unit) {
        const double f = frobenius_norm(b);
        if (f < 1e-300) throw Error(Err::bad_param, "make_structure: zero basis element");
        b = Complex(1.0 / f) * b;
    }
    CMatrix gram(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            gram(i, j) = hs_inner(unit[static_cast<std::size_t>(i)], unit[static_cast<std::size_t>(j)]);
    const auto gram_eigs = hermitian_eigenvalues(gram);
    if (gram_eigs.front() < 1e-10)
        throw Error(Err::bad_param, "make_structure: basis numerically dependent (Gram sigma_min "
                                    "below 1e-10)");

    // Modified Gram-Schmidt with one reorthogonalization pass.
    Structure e;
    e.n = n;
    e.tag = tag;
    e.basis = std::move(basis);
    for (const auto& b : e.basis) {
        CMatrix q = b;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& prev : e.onb) {
                const Complex c = hs_inner(q, prev);
                q = q - c * prev;
            }
        }
        const double f = frobenius_norm(q);
        if (f < 1e-12)
            throw Error(Err::bad_param, "make_structure: basis numerically dependent");
        e.onb.push_back(Complex(1.0 / f) * q);
    }
    return e;
}

struct NamedParams {
    double theta = 0.0;
    std::optional<CMatrix> m;  // trace_orth
};

[[nodiscard]] Structure make_named(StructureTag tag, int n, const NamedParams& params = {});

[[nodiscard]] inline Structure make_theta_structure(double theta) {
    NamedParams p;
    p.theta = theta;
    return make_named(StructureTag::theta, 2, p);
}

[[nodiscard]] inline Structure make_trace_orth_structure(const CMatrix& m) {
    NamedParams p;
    p.m = m;
    return make_named(StructureTag::trace_orth, 2, p);
}

// ---------------------------------------------------------------------------
// Projections and membership
// ---------------------------------------------------------------------------

/// Coefficients of the HS-orthogonal projection of X onto span(E), relative
/// to the orthonormal working basis E.onb.
[[nodiscard]] inline CoefVector coeffs_of(const Structure& e, const CMatrix& x) {
    if (x.rows != e.n || x.cols != e.n)
        throw Error(Err::shape_mismatch, "coeffs_of: shape mismatch");
    CoefVector c;
    c.reserve(e.onb.size());
    for (const auto& q : e.onb) c.push_back(hs_inner(x, q));
    return c;
}

/// X(c) = sum_j c_j Q_j over the orthonormal working basis.
[[nodiscard]] inline CMatrix expand(const Structure& e, const CoefVector& c) {
    if (c.size() != e.onb.size()) throw Error(Err::shape_mismatch, "expand: coefficient count");
    CMatrix x(e.n, e.n);
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == Complex(0)) continue;
        x = x + c[j] * e.onb[j];
    }
    return x;
}

/// HS distance from X to span(E); zero (up to 1e-12) iff X lies in E.
[[nodiscard]] inline double member_residual(const Structure& e, const CMatrix& x) {
    const CoefVector c = coeffs_of(e, x);
    return frobenius_norm(x - expand(e, c));
}

/// True when every basis direction of `inner` lies in `outer` within tol.
[[nodiscard]] inline bool subspace_contains(const Structure& outer, const Structure& inner,
                                            double tol = 1e-9) {
    if (outer.n != inner.n) return false;
    for (const auto& q : inner.onb)
        if (member_residual(outer, q) > tol) return false;
    return true;
}

[[nodiscard]] inline bool same_span(const Structure& a, const Structure& b, double tol = 1e-9) {
    return a.dim() == b.dim() && subspace_contains(a, b, tol) && subspace_contains(b, a, tol);
}

// ---------------------------------------------------------------------------
// Complement, conjugation, rank-one search
// ---------------------------------------------------------------------------

/// HS-orthogonal complement; dimension is n^2 - dim(E) by construction.
[[nodiscard]] inline Structure hs_complement(const Structure& e) {
    const int n = e.n;
    std::vector<CMatrix> comp;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            CMatrix q = CMatrix::unit(n, i, j);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& p : e.onb) q = q - hs_inner(q, p) * p;
                for (const auto& p : comp) q = q - hs_inner(q, p) * p;
            }
            const double f = frobenius_norm(q);
            if (f > 1e-8) comp.push_back(Complex(1.0 / f) * q);
        }
    }
    if (static_cast<int>(comp.size()) != n * n - e.dim())
        throw Error(Err::convergence_failure, "hs_complement: dimension mismatch");
    if (comp.empty()) throw Error(Err::bad_param, "hs_complement: complement is trivial");
    return make_structure(n, std::move(comp), StructureTag::custom);
}

/// E_U = U E U*. Requires U unitary within 1e-10. The result is tagged custom.
[[nodiscard]] inline Structure conjugate(const Structure& e, const CMatrix& u) {
    if (u.rows != e.n || u.cols != e.n)
        throw Error(Err::shape_mismatch, "conjugate: unitary has wrong shape");
    if (unitary_defect(u) > 1e-10) throw Error(Err::not_unitary, "conjugate: U is not unitary");
    const CMatrix ustar = adjoint(u);
    std::vector<CMatrix> basis;
    basis.reserve(e.basis.size());
    for (const auto& b : e.basis) basis.push_back(u * b * ustar);
    return make_structure(e.n, std::move(basis), StructureTag::custom);
}

/// A rank-one element of E (order 2 only), found by solving the quadratic
/// pencil det(alpha*A + B) = 0 with coefficients det A,
/// tr(A)tr(B) - tr(AB), det B. Returns nullopt when E = span of a single
/// invertible generator.
[[nodiscard]] inline std::optional<CMatrix> find_rank_one(const Structure& e) {
    if (e.n != 2) throw Error(Err::unsupported_dimension, "find_rank_one: order must be 2");
    const double dtol = 1e-12;
    for (const auto& q : e.onb) {
        if (std::abs(det(q)) <= dtol) return Complex(1.0 / frobenius_norm(q)) * q;
    }
    if (e.dim() < 2) return std::nullopt;
    // Both leading generators are invertible here; the quadratic has full degree.
    const CMatrix& a = e.onb[0];
    const CMatrix& b = e.onb[1];
    const Complex da = det(a);
    const Complex db = det(b);
    const Complex m = trace(a) * trace(b) - trace(a * b);
    const Complex disc = std::sqrt(m * m - 4.0 * da * db);
    const Complex r1 = (-m + disc) / (2.0 * da);
    const Complex r2 = (-m - disc) / (2.0 * da);
    CMatrix x1 = r1 * a + b;
    CMatrix x2 = r2 * a + b;
    const CMatrix& pick =
        (std::abs(det(x1)) * frobenius_norm(x2) * frobenius_norm(x2) <=
         std::abs(det(x2)) * frobenius_norm(x1) * frobenius_norm(x1))
            ? x1
            : x2;
    return Complex(1.0 / frobenius_norm(pick)) * pick;
}

/// For a proper subspace E of the diagonal structure, returns a unimodular
/// diagonal W = diag(w_1..w_n), |w_j| = 1, lying outside E: pick P
/// orthogonal to E inside the diagonal space and set w_j to the phase of p_j
/// (1 where p_j = 0), so that <W, P> = sum |p_j| > 0.
[[nodiscard]] inline CMatrix unimodular_diag_outside(const Structure& e) {
    const int n = e.n;
    for (const auto& q : e.onb) {
        CMatrix off = q;
        for (int i = 0; i < n; ++i) off(i, i) = 0;
        if (frobenius_norm(off) > 1e-12)
            throw Error(Err::not_proper_subspace,
                        "unimodular_diag_outside: structure is not diagonal");
    }
    if (e.dim() >= n)
        throw Error(Err::not_proper_subspace,
                    "unimodular_diag_outside: structure already spans all diagonals");

    // Diagonal vectors of the working basis span a proper subspace of C^n.
    std::vector<CVector> qdiag;
    for (const auto& q : e.onb) {
        CVector d(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = q(i, i);
        qdiag.push_back(std::move(d));
    }
    CVector p;
    double best = -1.0;
    for (int cand = 0; cand < n; ++cand) {
        CVector r = unit_vector(n, cand);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& d : qdiag) {
                const Complex c = inner(r, d);
                for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] -= c * d[static_cast<std::size_t>(i)];
            }
        }
        const double nr = norm(r);
        if (nr > best) {
            best = nr;
            p = std::move(r);
        }
    }
    if (best < 1e-8)
        throw Error(Err::convergence_failure, "unimodular_diag_outside: no orthogonal direction");
    CVector w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Complex pi = p[static_cast<std::size_t>(i)];
        w[static_cast<std::size_t>(i)] = (std::abs(pi) > 1e-14) ? pi / std::abs(pi) : Complex(1.0);
    }
    return CMatrix::diag(w);
}

// ---------------------------------------------------------------------------
// Named builders
// ---------------------------------------------------------------------------

inline Structure make_named(StructureTag tag, int n, const NamedParams& params) {
    if (n <= 0 || n > kMaxOrder)
        throw Error(Err::unsupported_dimension, "make_named: order out of range");
    switch (tag) {
        case StructureTag::scalar:
            return make_structure(n, {CMatrix::identity(n)}, tag);
        case StructureTag::diag: {
            std::vector<CMatrix> basis;
            for (int j = 0; j < n; ++j) basis.push_back(CMatrix::unit(n, j, j));
            return make_structure(n, std::move(basis), tag);
        }
        case StructureTag::penta: {
            if (n != 2) throw Error(Err::unsupported_dimension, "make_named: penta requires n=2");
            return make_structure(2, {CMatrix::identity(2), CMatrix::unit(2, 0, 1)}, tag);
        }
        case StructureTag::hexa: {
            if (n != 2) throw Error(Err::unsupported_dimension, "make_named: hexa requires n=2");
            return make_structure(
                2, {CMatrix::unit(2, 0, 0), CMatrix::unit(2, 1, 1), CMatrix::unit(2, 0, 1)}, tag);
        }
        case StructureTag::symm: {
            std::vector<CMatrix> basis;
            for (int j = 0; j < n; ++j) basis.push_back(CMatrix::unit(n, j, j));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    basis.push_back(CMatrix::unit(n, i, j) + CMatrix::unit(n, j, i));
            return make_structure(n, std::move(basis), tag);
        }
        case StructureTag::theta: {
            if (n != 2) throw Error(Err::unsupported_dimension, "make_named: theta requires n=2");
            const Complex phase(std::cos(params.theta), std::sin(params.theta));
            Structure e = make_structure(
                2,
                {CMatrix::unit(2, 0, 0), CMatrix::unit(2, 1, 1),
                 CMatrix::unit(2, 0, 1) + phase * CMatrix::unit(2, 1, 0)},
                tag);
            e.theta = params.theta;
            return e;
        }
        case StructureTag::trace_orth: {
            if (n != 2)
                throw Error(Err::unsupported_dimension, "make_named: trace_orth requires n=2");
            if (!params.m) throw Error(Err::bad_param, "make_named: trace_orth requires M");
            const CMatrix& m = *params.m;
            if (m.rows != 2 || m.cols != 2)
                throw Error(Err::shape_mismatch, "make_named: M must be 2x2");
            if (frobenius_norm(m) < 1e-12)
                throw Error(Err::bad_param, "make_named: M must be nonzero");
            const Structure span_m = make_structure(2, {m});
            Structure e = hs_complement(span_m);
            e.tag = tag;
            e.trace_m = m;
            e.trace_m_unitary = unitary_defect(m) <= 1e-10;
            return e;
        }
        case StructureTag::full: {
            std::vector<CMatrix> basis;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) basis.push_back(CMatrix::unit(n, i, j));
            return make_structure(n, std::move(basis), tag);
        }
        case StructureTag::custom:
            throw Error(Err::bad_param, "make_named: custom requires an explicit basis");
    }
    throw Error(Err::bad_param, "make_named: unknown tag");
}

}  // namespace ssv
