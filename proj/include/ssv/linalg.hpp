#pragma once

// Classical matrix functionals on small dense complex matrices:
// operator norm, spectral radius, numerical radius, determinants,
// eigenvalues and singular value decompositions for order <= 8.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ssv/complex_matrix.hpp"

namespace ssv {

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Determinant and characteristic polynomial
// ---------------------------------------------------------------------------

[[nodiscard]] inline Complex det(const CMatrix& a) {
    require_square(a, "det");
    require_small(a, "det");
    const int n = a.rows;
    if (n == 1) return a(0, 0);
    if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    // LU with partial pivoting.
    CMatrix lu = a;
    Complex d = 1.0;
    for (int i = 0; i < n; ++i) {
        int piv = i;
        double best = std::abs(lu(i, i));
        for (int r = i + 1; r < n; ++r) {
            if (std::abs(lu(r, i)) > best) {
                best = std::abs(lu(r, i));
                piv = r;
            }
        }
        if (best == 0.0) return Complex(0);
        if (piv != i) {
            for (int c = 0; c < n; ++c) std::swap(lu(i, c), lu(piv, c));
            d = -d;
        }
        d *= lu(i, i);
        for (int r = i + 1; r < n; ++r) {
            const Complex f = lu(r, i) / lu(i, i);
            for (int c = i; c < n; ++c) lu(r, c) -= f * lu(i, c);
        }
    }
    return d;
}

/// Solve A x = b by Gaussian elimination with partial pivoting (A square,
/// well-conditioned use only; meant for small normal-equation systems).
[[nodiscard]] inline CVector solve_linear(CMatrix a, CVector b) {
    require_square(a, "solve_linear");
    const int n = a.rows;
    if (static_cast<int>(b.size()) != n)
        throw Error(Err::shape_mismatch, "solve_linear: rhs length");
    for (int i = 0; i < n; ++i) {
        int piv = i;
        double bestv = std::abs(a(i, i));
        for (int r = i + 1; r < n; ++r) {
            if (std::abs(a(r, i)) > bestv) {
                bestv = std::abs(a(r, i));
                piv = r;
            }
        }
        if (bestv < 1e-300) throw Error(Err::convergence_failure, "solve_linear: singular system");
        if (piv != i) {
            for (int c = 0; c < n; ++c) std::swap(a(i, c), a(piv, c));
            std::swap(b[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(piv)]);
        }
        for (int r = i + 1; r < n; ++r) {
            const Complex f = a(r, i) / a(i, i);
            if (f == Complex(0)) continue;
            for (int c = i; c < n; ++c) a(r, c) -= f * a(i, c);
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(i)];
        }
    }
    CVector x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        Complex s = b[static_cast<std::size_t>(i)];
        for (int c = i + 1; c < n; ++c) s -= a(i, c) * x[static_cast<std::size_t>(c)];
        x[static_cast<std::size_t>(i)] = s / a(i, i);
    }
    return x;
}

/// Coefficients c_1..c_n of p(x) = x^n + c_1 x^(n-1) + ... + c_n = det(xI - A),
/// by the Faddeev-LeVerrier recurrence. Note det(I - zA) = 1 + sum_k c_k z^k.
[[nodiscard]] inline std::vector<Complex> char_poly(const CMatrix& a) {
    require_square(a, "char_poly");
    require_small(a, "char_poly");
    const int n = a.rows;
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    c[0] = 1.0;
    CMatrix b = a;
    c[1] = -trace(b);
    for (int k = 2; k <= n; ++k) {
        b = a * (b + c[static_cast<std::size_t>(k - 1)] * CMatrix::identity(n));
        c[static_cast<std::size_t>(k)] = -trace(b) / static_cast<double>(k);
    }
    c.erase(c.begin());
    return c;
}

// ---------------------------------------------------------------------------
// Polynomial roots: Durand-Kerner simultaneous iteration
// ---------------------------------------------------------------------------

/// Roots of the monic polynomial x^n + c[0] x^(n-1) + ... + c[n-1].
/// Deterministically seeded on a scaled circle; at most 500 iterations,
/// failure is reported, never silently returned.
[[nodiscard]] inline std::vector<Complex> durand_kerner(const std::vector<Complex>& c) {
    const int n = static_cast<int>(c.size());
    if (n == 0) return {};
    // Fujiwara-style root radius bound.
    double radius = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double m = std::pow(std::abs(c[static_cast<std::size_t>(k - 1)]),
                                  1.0 / static_cast<double>(k));
        radius = std::max(radius, m);
    }
    radius = 2.0 * radius + 0.5;

    auto eval = [&](Complex x) {
        Complex p = 1.0;
        for (int k = 0; k < n; ++k) p = p * x + c[static_cast<std::size_t>(k)];
        return p;
    };

    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double a = 2.0 * kPi * j / n + 0.4;
        z[static_cast<std::size_t>(j)] = radius * Complex(std::cos(a), std::sin(a));
    }
    const double tol = 1e-12 * std::max(1.0, radius);
    for (int iter = 0; iter < 500; ++iter) {
        double step = 0.0;
        for (int j = 0; j < n; ++j) {
            Complex denom = 1.0;
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                denom *= z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(k)];
            }
            if (denom == Complex(0)) denom = Complex(1e-30);
            const Complex d = eval(z[static_cast<std::size_t>(j)]) / denom;
            z[static_cast<std::size_t>(j)] -= d;
            step = std::max(step, std::abs(d));
        }
        if (step <= tol) return z;
    }
    throw Error(Err::convergence_failure, "durand_kerner: no convergence in 500 iterations");
}

// ---------------------------------------------------------------------------
// Eigenvalues
// ---------------------------------------------------------------------------

[[nodiscard]] inline std::array<Complex, 2> eig_2x2(const CMatrix& a) {
    require_square(a, "eig_2x2");
    if (a.rows != 2) throw Error(Err::shape_mismatch, "eig_2x2: order must be 2");
    const Complex t = trace(a);
    const Complex d = det(a);
    const Complex disc = std::sqrt(t * t - 4.0 * d);
    Complex l1 = (t + disc) / 2.0;
    Complex l2 = (t - disc) / 2.0;
    if (std::abs(l1) < std::abs(l2)) std::swap(l1, l2);
    if (std::abs(l1) > 0.0) l2 = d / l1;  // product of the roots equals det
    return {l1, l2};
}

[[nodiscard]] inline std::vector<Complex> eigenvalues(const CMatrix& a) {
    require_square(a, "eigenvalues");
    require_small(a, "eigenvalues");
    const int n = a.rows;
    if (n == 1) return {a(0, 0)};
    if (n == 2) {
        const auto e = eig_2x2(a);
        return {e[0], e[1]};
    }
    return durand_kerner(char_poly(a));
}

[[nodiscard]] inline double spectral_radius(const CMatrix& a) {
    double r = 0.0;
    for (const auto& l : eigenvalues(a)) r = std::max(r, std::abs(l));
    return r;
}

// ---------------------------------------------------------------------------
// Hermitian eigenvalues: cyclic complex Jacobi
// ---------------------------------------------------------------------------

namespace detail {

/// One Jacobi rotation for the Hermitian 2x2 block [[app, apq], [conj(apq), aqq]].
/// Returns the unitary [[jpp, jpq], [jqp, jqq]] whose conjugation diagonalizes it.
struct JacobiRot {
    Complex pp, pq, qp, qq;
};

[[nodiscard]] inline JacobiRot jacobi_rotation(double app, double aqq, Complex apq) {
    const double ah = std::abs(apq);
    const Complex phase = (ah > 0.0) ? apq / ah : Complex(1.0);
    // Phase split so the reduced block is real symmetric.
    Complex fp = 1.0, fq = 1.0;
    {
        const Complex ph = std::sqrt(phase);
        fp = ph;
        fq = std::conj(ph);
    }
    const double tau = (aqq - app) / (2.0 * ah);
    const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double cc = 1.0 / std::sqrt(1.0 + t * t);
    const double ss = t * cc;
    return {fp * cc, fp * ss, -fq * ss, fq * cc};
}

}  // namespace detail

/// Eigenvalues (ascending) of a Hermitian matrix; optionally accumulates the
/// unitary of eigenvectors into *vecs (columns). Accepts orders up to 64 so
/// Gram matrices of structure bases (k <= n^2) can be analyzed.
[[nodiscard]] inline std::vector<double> hermitian_eigenvalues(const CMatrix& h0,
                                                               CMatrix* vecs = nullptr) {
    require_square(h0, "hermitian_eigenvalues");
    if (h0.rows > kMaxOrder * kMaxOrder)
        throw Error(Err::unsupported_dimension, "hermitian_eigenvalues: order exceeds 64");
    const int n = h0.rows;
    CMatrix h = h0;
    CMatrix v = CMatrix::identity(n);
    const double scale = std::max(frobenius_norm(h), 1e-300);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(h(p, q));
        if (std::sqrt(off) <= 1e-15 * scale) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(h(p, q)) <= 1e-18 * scale) continue;
                const auto j =
                    detail::jacobi_rotation(h(p, p).real(), h(q, q).real(), h(p, q));
                // H <- J* H J on rows/cols p, q.
                for (int i = 0; i < n; ++i) {
                    const Complex hip = h(i, p), hiq = h(i, q);
                    h(i, p) = hip * j.pp + hiq * j.qp;
                    h(i, q) = hip * j.pq + hiq * j.qq;
                }
                for (int i = 0; i < n; ++i) {
                    const Complex hpi = h(p, i), hqi = h(q, i);
                    h(p, i) = std::conj(j.pp) * hpi + std::conj(j.qp) * hqi;
                    h(q, i) = std::conj(j.pq) * hpi + std::conj(j.qq) * hqi;
                }
                for (int i = 0; i < n; ++i) {
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * j.pp + viq * j.qp;
                    v(i, q) = vip * j.pq + viq * j.qq;
                }
            }
        }
    }
    std::vector<double> eigs(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        eigs[static_cast<std::size_t>(i)] = h(i, i).real();
        order[static_cast<std::size_t>(i)] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return eigs[static_cast<std::size_t>(x)] < eigs[static_cast<std::size_t>(y)]; });
    std::vector<double> sorted(static_cast<std::size_t>(n));
    CMatrix vs(n, n);
    for (int k = 0; k < n; ++k) {
        sorted[static_cast<std::size_t>(k)] = eigs[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
        for (int i = 0; i < n; ++i) vs(i, k) = v(i, order[static_cast<std::size_t>(k)]);
    }
    if (vecs) *vecs = vs;
    return sorted;
}

// ---------------------------------------------------------------------------
// Singular value decomposition: one-sided Jacobi
// ---------------------------------------------------------------------------

struct Svd {
    CMatrix u;                  // left singular vectors (columns)
    std::vector<double> sigma;  // descending
    CMatrix v;                  // right singular vectors (columns); A = U diag(sigma) V*
};

[[nodiscard]] inline Svd svd(const CMatrix& a) {
    require_square(a, "svd");
    require_small(a, "svd");
    const int n = a.rows;
    CMatrix g = a;
    CMatrix v = CMatrix::identity(n);
    const double scale = std::max(frobenius_norm(a), 1e-300);
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double alpha = 0, beta = 0;
                Complex gamma = 0;
                for (int i = 0; i < n; ++i) {
                    alpha += std::norm(g(i, p));
                    beta += std::norm(g(i, q));
                    gamma += std::conj(g(i, p)) * g(i, q);
                }
                if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) + 1e-30 * scale * scale)
                    continue;
                rotated = true;
                const auto j = detail::jacobi_rotation(alpha, beta, gamma);
                for (int i = 0; i < n; ++i) {
                    const Complex gip = g(i, p), giq = g(i, q);
                    g(i, p) = gip * j.pp + giq * j.qp;
                    g(i, q) = gip * j.pq + giq * j.qq;
                }
                for (int i = 0; i < n; ++i) {
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * j.pp + viq * j.qp;
                    v(i, q) = vip * j.pq + viq * j.qq;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sig(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += std::norm(g(i, j));
        sig[static_cast<std::size_t>(j)] = std::sqrt(s);
        order[static_cast<std::size_t>(j)] = j;
    }
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return sig[static_cast<std::size_t>(x)] > sig[static_cast<std::size_t>(y)]; });
    Svd out;
    out.sigma.resize(static_cast<std::size_t>(n));
    out.u = CMatrix(n, n);
    out.v = CMatrix(n, n);
    const double smax = sig[static_cast<std::size_t>(order[0])];
    for (int k = 0; k < n; ++k) {
        const int j = order[static_cast<std::size_t>(k)];
        out.sigma[static_cast<std::size_t>(k)] = sig[static_cast<std::size_t>(j)];
        for (int i = 0; i < n; ++i) out.v(i, k) = v(i, j);
        if (sig[static_cast<std::size_t>(j)] > 1e-14 * std::max(smax, 1e-300)) {
            for (int i = 0; i < n; ++i) out.u(i, k) = g(i, j) / sig[static_cast<std::size_t>(j)];
        }
    }
    // Complete any null left-columns to an orthonormal basis.
    for (int k = 0; k < n; ++k) {
        CVector col = column(out.u, k);
        if (norm(col) > 0.5) continue;
        for (int cand = 0; cand < n; ++cand) {
            CVector e = unit_vector(n, cand);
            for (int m = 0; m < n; ++m) {
                if (m == k) continue;
                const CVector um = column(out.u, m);
                if (norm(um) < 0.5) continue;
                const Complex c = inner(e, um);
                for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] -= c * um[static_cast<std::size_t>(i)];
            }
            if (norm(e) > 1e-6) {
                e = normalized(e);
                for (int i = 0; i < n; ++i) out.u(i, k) = e[static_cast<std::size_t>(i)];
                break;
            }
        }
    }
    return out;
}

[[nodiscard]] inline std::vector<double> singular_values(const CMatrix& a) {
    require_square(a, "singular_values");
    if (a.rows == 1) return {std::abs(a(0, 0))};
    if (a.rows == 2) {
        const double f2 = std::norm(a(0, 0)) + std::norm(a(0, 1)) + std::norm(a(1, 0)) +
                          std::norm(a(1, 1));
        const double d = std::abs(det(a));
        const double disc = std::sqrt(std::max(f2 * f2 - 4.0 * d * d, 0.0));
        const double s1 = std::sqrt(std::max((f2 + disc) / 2.0, 0.0));
        const double s2 = (s1 > 0.0) ? d / s1 : 0.0;
        return {s1, s2};
    }
    std::vector<double> out;
    const auto eigs = hermitian_eigenvalues(adjoint(a) * a);
    for (auto it = eigs.rbegin(); it != eigs.rend(); ++it)
        out.push_back(std::sqrt(std::max(*it, 0.0)));
    return out;
}

/// Largest singular value. Closed form for order 2, Jacobi iteration above.
[[nodiscard]] inline double op_norm(const CMatrix& a) {
    if (a.rows == 0 || a.cols == 0) throw Error(Err::bad_param, "op_norm: empty matrix");
    if (a.rows == a.cols) return singular_values(a)[0];
    // Rectangular inputs only arise internally; square up through A*A.
    const CMatrix h = adjoint(a) * a;
    const auto eigs = hermitian_eigenvalues(h);
    return std::sqrt(std::max(eigs.back(), 0.0));
}

[[nodiscard]] inline double smallest_singular_value(const CMatrix& a) {
    const auto s = singular_values(a);
    return s.back();
}

// ---------------------------------------------------------------------------
// Numerical radius
// ---------------------------------------------------------------------------

namespace detail {

[[nodiscard]] inline double herm_lambda_max(const CMatrix& h) {
    if (h.rows == 2) {
        const double a = h(0, 0).real();
        const double d = h(1, 1).real();
        const double m = (a - d) / 2.0;
        return (a + d) / 2.0 + std::sqrt(m * m + std::norm(h(0, 1)));
    }
    return hermitian_eigenvalues(h).back();
}

[[nodiscard]] inline double rotated_herm_max(const CMatrix& a, const CMatrix& astar, double theta) {
    const Complex w(std::cos(theta), std::sin(theta));
    CMatrix h = a;
    for (std::size_t i = 0; i < h.entries.size(); ++i)
        h.entries[i] = 0.5 * (w * a.entries[i] + std::conj(w) * astar.entries[i]);
    return herm_lambda_max(h);
}

}  // namespace detail

/// w(A) = sup over unit x of |x* A x|, computed as the maximum over theta of
/// lambda_max((e^{i theta} A + e^{-i theta} A*) / 2) on a 1024-point grid with
/// golden-section refinement of the winning bracket.
[[nodiscard]] inline double numerical_radius(const CMatrix& a) {
    require_square(a, "numerical_radius");
    require_small(a, "numerical_radius");
    const CMatrix astar = adjoint(a);
    constexpr int kGrid = 1024;
    double best = -1e300;
    int best_k = 0;
    for (int k = 0; k < kGrid; ++k) {
        const double th = 2.0 * kPi * k / kGrid;
        const double f = detail::rotated_herm_max(a, astar, th);
        if (f > best) {
            best = f;
            best_k = k;
        }
    }
    // Golden-section refinement to 1e-10 in theta around the winning node.
    double lo = 2.0 * kPi * (best_k - 1) / kGrid;
    double hi = 2.0 * kPi * (best_k + 1) / kGrid;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = detail::rotated_herm_max(a, astar, x1);
    double f2 = detail::rotated_herm_max(a, astar, x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = detail::rotated_herm_max(a, astar, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = detail::rotated_herm_max(a, astar, x1);
        }
    }
    return std::max(best, std::max(f1, f2));
}

}  // namespace ssv
