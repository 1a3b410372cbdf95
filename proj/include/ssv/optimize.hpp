#pragma once

// Small deterministic optimizers shared by the mu solvers: Nelder-Mead,
// direction-set polish for nonsmooth convex objectives, alternating
// projections between an affine set and the spectral-norm ball, and a
// least-squares helper exposing the constraint null space.

#include <functional>
#include <limits>
#include <vector>

#include "ssv/complex_matrix.hpp"
#include "ssv/linalg.hpp"
#include "ssv/rng.hpp"

namespace ssv {

using RealVec = std::vector<double>;
using RealFn = std::function<double(const RealVec&)>;

// ---------------------------------------------------------------------------
// Nelder-Mead
// ---------------------------------------------------------------------------

struct NmResult {
    RealVec x;
    double fx = 0;
    int evals = 0;
};

[[nodiscard]] inline NmResult nelder_mead(const RealFn& f, const RealVec& x0, double step,
                                          int max_iter = 2000, double ftol = 1e-12) {
    const std::size_t n = x0.size();
    int evals = 0;
    auto eval = [&](const RealVec& x) {
        ++evals;
        return f(x);
    };
    std::vector<RealVec> xs(n + 1, x0);
    RealVec fs(n + 1);
    for (std::size_t i = 1; i <= n; ++i) xs[i][i - 1] += step;
    for (std::size_t i = 0; i <= n; ++i) fs[i] = eval(xs[i]);

    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        std::vector<RealVec> xs2(n + 1);
        RealVec fs2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs = std::move(xs2);
        fs = std::move(fs2);
        if (fs[n] - fs[0] <= ftol * (1.0 + std::abs(fs[0]))) break;

        RealVec centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += xs[i][j] / static_cast<double>(n);

        auto blend = [&](double coef) {
            RealVec x(n);
            for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + coef * (xs[n][j] - centroid[j]);
            return x;
        };

        const RealVec xr = blend(-1.0);
        const double fr = eval(xr);
        if (fr < fs[0]) {
            const RealVec xe = blend(-2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            const bool outside = fr < fs[n];
            const RealVec xc = blend(outside ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, fs[n])) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) xs[i][j] = xs[0][j] + 0.5 * (xs[i][j] - xs[0][j]);
                    fs[i] = eval(xs[i]);
                }
            }
        }
        if (evals >= max_iter * 2) break;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fs[i] < fs[best]) best = i;
    return {xs[best], fs[best], evals};
}

// ---------------------------------------------------------------------------
// Direction-set polish
// ---------------------------------------------------------------------------

/// Coordinate directions plus seeded random directions, with step halving on
/// stall. Intended as a final polish; on convex objectives it converges to
/// the global minimum up to the final step size.
[[nodiscard]] inline NmResult pattern_polish(const RealFn& f, RealVec x, double step0,
                                             double step_min, std::uint64_t seed = 7) {
    const int n = static_cast<int>(x.size());
    double fx = f(x);
    int evals = 1;
    double step = step0;
    Rng rng(seed);
    std::vector<RealVec> extra;
    auto regen_extra = [&]() {
        extra.clear();
        for (int k = 0; k < std::max(4, n); ++k) {
            RealVec d(static_cast<std::size_t>(n));
            double nn = 0;
            for (auto& v : d) {
                v = rng.gauss();
                nn += v * v;
            }
            nn = std::sqrt(std::max(nn, 1e-30));
            for (auto& v : d) v /= nn;
            extra.push_back(std::move(d));
        }
    };
    regen_extra();
    while (step > step_min) {
        bool improved = false;
        auto try_dir = [&](const RealVec& d) {
            for (double sgn : {1.0, -1.0}) {
                RealVec y = x;
                for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] += sgn * step * d[static_cast<std::size_t>(j)];
                const double fy = f(y);
                ++evals;
                if (fy < fx - 1e-18) {
                    x = std::move(y);
                    fx = fy;
                    improved = true;
                    // greedy doubling along the same direction
                    while (true) {
                        RealVec z = x;
                        for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] += sgn * step * d[static_cast<std::size_t>(j)];
                        const double fz = f(z);
                        ++evals;
                        if (fz < fx - 1e-18) {
                            x = std::move(z);
                            fx = fz;
                        } else {
                            break;
                        }
                    }
                    return true;
                }
            }
            return false;
        };
        for (int j = 0; j < n; ++j) {
            RealVec d(static_cast<std::size_t>(n), 0.0);
            d[static_cast<std::size_t>(j)] = 1.0;
            try_dir(d);
        }
        for (const auto& d : extra) try_dir(d);
        if (!improved) {
            step *= 0.5;
            regen_extra();
        }
        if (evals > 200000) break;
    }
    return {std::move(x), fx, evals};
}

// ---------------------------------------------------------------------------
// Spectral-ball projection and alternating projections
// ---------------------------------------------------------------------------

/// Nearest matrix (in HS norm) with operator norm at most t: clip the
/// singular values.
[[nodiscard]] inline CMatrix spectral_clip(const CMatrix& x, double t) {
    const auto s = svd(x);
    if (s.sigma.empty() || s.sigma[0] <= t) return x;
    const int n = x.rows;
    CMatrix out(n, n);
    for (int k = 0; k < n; ++k) {
        const double sk = std::min(s.sigma[static_cast<std::size_t>(k)], t);
        if (sk == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(i, j) += s.u(i, k) * sk * std::conj(s.v(j, k));
    }
    return out;
}

/// Affine set given by a feasible offset plus an HS-orthonormal list of
/// direction matrices.
struct AffineSet {
    CMatrix offset;
    std::vector<CMatrix> directions;

    [[nodiscard]] CMatrix project(const CMatrix& x) const {
        CMatrix out = offset;
        for (const auto& d : directions) out = out + hs_inner(x - offset, d) * d;
        return out;
    }

    [[nodiscard]] CVector coords(const CMatrix& x) const {
        CVector z;
        z.reserve(directions.size());
        for (const auto& d : directions) z.push_back(hs_inner(x - offset, d));
        return z;
    }

    [[nodiscard]] CMatrix at(const CVector& z) const {
        CMatrix out = offset;
        for (std::size_t j = 0; j < directions.size(); ++j) out = out + z[j] * directions[j];
        return out;
    }
};

struct MinNormResult {
    CMatrix x;
    double value = 0;
};

namespace detail {

/// True when the whole affine family consists of diagonal matrices.
[[nodiscard]] inline bool family_is_diagonal(const AffineSet& set) {
    auto diag_only = [](const CMatrix& m) {
        double off = 0;
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j)
                if (i != j) off += std::norm(m(i, j));
        return std::sqrt(off) <= 1e-13 * std::max(1.0, frobenius_norm(m));
    };
    if (!set.offset.square() || !diag_only(set.offset)) return false;
    for (const auto& d : set.directions)
        if (!diag_only(d)) return false;
    return true;
}

/// Lawson iteratively-reweighted least squares for the complex Chebyshev
/// problem min_z max_j |a_j + (B z)_j|. The weighted least-squares value is a
/// lower bound on the minimax value for any probability weights, so the
/// iteration carries a certified two-sided bracket.
[[nodiscard]] inline MinNormResult lawson_diag_minimax(const AffineSet& set) {
    const int n = set.offset.rows;
    const std::size_t m = set.directions.size();
    CVector a(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)] = set.offset(j, j);
    CMatrix b(n, static_cast<int>(m));
    for (std::size_t k = 0; k < m; ++k)
        for (int j = 0; j < n; ++j) b(j, static_cast<int>(k)) = set.directions[k](j, j);

    std::vector<double> w(static_cast<std::size_t>(n), 1.0 / n);
    CVector z(m, Complex(0));
    double best_max = std::numeric_limits<double>::infinity();
    CVector best_z = z;
    for (int it = 0; it < 20000; ++it) {
        // weighted normal equations (B* W B) z = -B* W a
        CMatrix h(static_cast<int>(m), static_cast<int>(m));
        CVector rhs(m, Complex(0));
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = 0; q < m; ++q) {
                Complex s = 0;
                for (int j = 0; j < n; ++j)
                    s += w[static_cast<std::size_t>(j)] * std::conj(b(j, static_cast<int>(p))) *
                         b(j, static_cast<int>(q));
                h(static_cast<int>(p), static_cast<int>(q)) = s;
            }
            Complex s = 0;
            for (int j = 0; j < n; ++j)
                s += w[static_cast<std::size_t>(j)] * std::conj(b(j, static_cast<int>(p))) *
                     a[static_cast<std::size_t>(j)];
            rhs[p] = -s;
        }
        // Tikhonov whisper keeps degenerate weight patterns solvable.
        for (std::size_t p = 0; p < m; ++p) h(static_cast<int>(p), static_cast<int>(p)) += 1e-300;
        try {
            z = solve_linear(h, rhs);
        } catch (const Error&) {
            break;
        }
        double maxr = 0, wsum2 = 0;
        std::vector<double> vals(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            Complex r = a[static_cast<std::size_t>(j)];
            for (std::size_t k = 0; k < m; ++k) r += b(j, static_cast<int>(k)) * z[k];
            const double v = std::abs(r);
            vals[static_cast<std::size_t>(j)] = v;
            maxr = std::max(maxr, v);
            wsum2 += w[static_cast<std::size_t>(j)] * v * v;
        }
        if (maxr < best_max) {
            best_max = maxr;
            best_z = z;
        }
        const double lower = std::sqrt(std::max(wsum2, 0.0));
        if (best_max - lower <= 1e-12 * std::max(1.0, best_max)) break;
        double tot = 0;
        for (int j = 0; j < n; ++j) {
            w[static_cast<std::size_t>(j)] *= std::max(vals[static_cast<std::size_t>(j)], 1e-300);
            tot += w[static_cast<std::size_t>(j)];
        }
        if (tot < 1e-280) break;
        for (auto& wj : w) wj /= tot;
    }
    return {set.at(best_z), best_max};
}

}  // namespace detail

/// Minimize the operator norm over an affine set of matrices (a convex
/// problem). Diagonal families go through Lawson's minimax iteration with a
/// certified bracket. General families run a bisection on the radius t whose
/// feasibility oracle minimizes the smooth convex distance
/// dist^2(X(z), {||.|| <= t}) = sum_i max(sigma_i - t, 0)^2, followed by a
/// direct polish of the norm itself.
[[nodiscard]] inline MinNormResult min_spectral_norm_affine(const AffineSet& set,
                                                            double floor_value, double tol) {
    CMatrix best = set.offset;
    double hi = op_norm(best);
    const double lo0 = std::max(floor_value, 0.0);
    if (set.directions.empty() || hi <= lo0 * (1.0 + 1e-12) + 1e-300) return {best, hi};
    if (detail::family_is_diagonal(set)) return detail::lawson_diag_minimax(set);

    const std::size_t m = set.directions.size();
    auto matrix_at = [&](const RealVec& v) {
        CVector z(m);
        for (std::size_t j = 0; j < m; ++j) z[j] = Complex(v[2 * j], v[2 * j + 1]);
        return set.at(z);
    };
    auto ball_dist = [&](const CMatrix& x, double t) {
        double s = 0;
        for (double sv : singular_values(x)) {
            const double e = std::max(sv - t, 0.0);
            s += e * e;
        }
        return std::sqrt(s);
    };

    RealVec z_warm(2 * m, 0.0);
    RealVec z_best = z_warm;
    double lo = lo0;
    // (t, dist) samples on the infeasible side drive a secant estimate.
    double t1 = -1, d1 = -1, t2 = -1, d2 = -1;
    const double target = std::max(tol, 1e-9);

    for (int it = 0; it < 64 && (hi - lo) > target * std::max(1.0, hi); ++it) {
        double t = 0.5 * (lo + hi);
        if (d1 > 0 && d2 > 0 && std::abs(d1 - d2) > 1e-300) {
            // secant root of the (locally linear) infeasibility gap
            const double sec = t2 + d2 * (t2 - t1) / (d1 - d2);
            const double margin = 0.05 * (hi - lo);
            if (sec > lo + margin && sec < hi - margin) t = sec + margin * 0.2;
        }
        auto g = [&](const RealVec& v) { return ball_dist(matrix_at(v), t); };
        auto nm = nelder_mead(g, z_warm, 0.25 * std::max(hi - lo, 0.05 * hi),
                              500 * static_cast<int>(m) + 500, 1e-16);
        auto pol = pattern_polish(g, nm.x, 0.02 * hi, 1e-13 * std::max(1.0, hi),
                                  /*seed=*/11 + static_cast<std::uint64_t>(it));
        const CMatrix x = matrix_at(pol.x);
        const double s = op_norm(x);
        if (pol.fx <= 1e-10 * std::max(1.0, t) || s <= t * (1.0 + 1e-9)) {
            if (s < hi) {
                hi = s;
                best = x;
                z_best = pol.x;
            }
            z_warm = pol.x;
        } else {
            lo = std::max(lo, t);
            t1 = t2;
            d1 = d2;
            t2 = t;
            d2 = pol.fx;
            z_warm = pol.x;
        }
    }

    // Direct polish of the norm from the best feasible point.
    {
        auto f = [&](const RealVec& v) { return op_norm(matrix_at(v)); };
        auto nm = nelder_mead(f, z_best, 0.02 * std::max(1.0, hi),
                              300 * static_cast<int>(m) + 300, 1e-15);
        auto pol = pattern_polish(f, nm.x, 5e-3 * std::max(1.0, hi), 1e-12 * std::max(1.0, hi));
        if (pol.fx < hi) {
            hi = pol.fx;
            best = matrix_at(pol.x);
        }
    }
    return {best, hi};
}

// ---------------------------------------------------------------------------
// Least squares with null space
// ---------------------------------------------------------------------------

struct LstSq {
    CVector solution;             // minimum-norm least-squares solution
    std::vector<CVector> null;    // orthonormal basis of the null space
    double residual = 0;             // || G c - rhs ||
};

/// Solve G c = rhs in the least-squares sense via the normal equations
/// (eigendecomposition of G* G), exposing the null-space directions.
[[nodiscard]] inline LstSq least_squares_with_null(const CMatrix& g, const CVector& rhs,
                                                   double rank_tol = 1e-9) {
    const int k = g.cols;
    CMatrix h = adjoint(g) * g;
    CMatrix vecs;
    const auto eigs = hermitian_eigenvalues(h, &vecs);
    const double lead = std::max(eigs.back(), 0.0);
    const double cut = std::max(lead, 1.0) * rank_tol * rank_tol;

    const CVector gtv = adjoint(g) * rhs;
    LstSq out;
    out.solution.assign(static_cast<std::size_t>(k), Complex(0));
    for (int j = 0; j < k; ++j) {
        const double lam = eigs[static_cast<std::size_t>(j)];
        CVector vj = column(vecs, j);
        if (lam <= cut) {
            out.null.push_back(std::move(vj));
            continue;
        }
        const Complex coef = inner(gtv, vj) / lam;
        for (int i = 0; i < k; ++i) out.solution[static_cast<std::size_t>(i)] += coef * vj[static_cast<std::size_t>(i)];
    }
    CVector r = g * out.solution;
    for (std::size_t i = 0; i < rhs.size(); ++i) r[i] -= rhs[i];
    out.residual = norm(r);
    return out;
}

}  // namespace ssv
