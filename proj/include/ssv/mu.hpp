#pragma once

// Structured singular value mu_E(A) = 1 / inf{ ||X|| : X in E, det(I - AX) = 0 },
// zero when no X in E makes I - AX singular.
//
// Dispatch: exact spectral/norm routes for the scalar and full structures,
// constructive norm routes for transitive structures, a convex affine
// minimization for rank-one A, parameter-elimination reductions for the
// order-2 diagonal and triangular families, and a generic bisection solver.
// Every positive value ships with a feasible witness X; zero values carry
// either an exact vanishing certificate or a search-exhausted note.

#include <optional>
#include <string>
#include <vector>

#include "ssv/complex_matrix.hpp"
#include "ssv/linalg.hpp"
#include "ssv/optimize.hpp"
#include "ssv/rng.hpp"
#include "ssv/structure.hpp"
#include "ssv/transitivity.hpp"

namespace ssv {

struct SolverOptions {
    double tol = 1e-8;
    int starts = 32;
    double search_radius = 1000.0;
    std::uint64_t seed = kDefaultSeed;
};

enum class MuMethod {
    exact_spectral,
    exact_norm,
    rank_one_formula,
    reduction_2x2,
    bisection_generic,
    oracle_grid,
};

[[nodiscard]] inline std::string method_name(MuMethod m) {
    switch (m) {
        case MuMethod::exact_spectral: return "exact_spectral";
        case MuMethod::exact_norm: return "exact_norm";
        case MuMethod::rank_one_formula: return "rank_one_formula";
        case MuMethod::reduction_2x2: return "reduction_2x2";
        case MuMethod::bisection_generic: return "bisection_generic";
        case MuMethod::oracle_grid: return "oracle_grid";
    }
    return "unknown";
}

enum class ZeroKind { none, certified, search_exhausted };

struct MuResult {
    double value = 0;
    std::optional<CMatrix> witness;  // feasible minimizer candidate
    double det_residual = 0;         // |det(I - A X)| at the witness
    double lower_bound = 0;          // 1/||witness|| when the witness certifies
    MuMethod method = MuMethod::bisection_generic;
    ZeroKind zero_kind = ZeroKind::none;
    std::string zero_certificate;    // explanation when value == 0
};

namespace detail {

[[nodiscard]] inline MuResult finish_with_witness(const CMatrix& a, double value,
                                                  CMatrix witness, MuMethod method) {
    MuResult r;
    r.value = value;
    r.method = method;
    r.det_residual = std::abs(det(CMatrix::identity(a.rows) - a * witness));
    const double wn = op_norm(witness);
    if (r.det_residual <= 1e-9 && wn > 0) r.lower_bound = 1.0 / wn;
    r.witness = std::move(witness);
    return r;
}

[[nodiscard]] inline MuResult certified_zero(std::string note, MuMethod method) {
    MuResult r;
    r.value = 0;
    r.method = method;
    r.zero_kind = ZeroKind::certified;
    r.zero_certificate = std::move(note);
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Rank-one inputs: det(I - uv* X) = 1 - v* X u is affine in X
// ---------------------------------------------------------------------------

/// mu_E(u v*). The constraint v* X(c) u = 1 is an affine hyperplane in the
/// coefficients; either the functional vanishes identically on the basis
/// (certified zero) or the minimum operator norm over the hyperplane is
/// computed by alternating projections plus a convex polish.
[[nodiscard]] inline MuResult mu_rank_one(const CVector& u, const CVector& v,
                                          const Structure& e, const SolverOptions& opts = {}) {
    (void)opts;
    if (norm(u) < 1e-300 || norm(v) < 1e-300)
        throw Error(Err::bad_param, "mu_rank_one: zero vector");
    if (static_cast<int>(u.size()) != e.n || static_cast<int>(v.size()) != e.n)
        throw Error(Err::shape_mismatch, "mu_rank_one: vector length mismatch");
    const double scale = norm(u) * norm(v);
    const int k = e.dim();
    CoefVector ell(static_cast<std::size_t>(k));
    double lmax = 0;
    for (int j = 0; j < k; ++j) {
        ell[static_cast<std::size_t>(j)] = inner(e.onb[static_cast<std::size_t>(j)] * u, v);
        lmax = std::max(lmax, std::abs(ell[static_cast<std::size_t>(j)]));
    }
    if (lmax <= 1e-13 * scale) {
        return detail::certified_zero(
            "det(I - AX) = 1 - v*Xu and v*(.)u vanishes on every basis element "
            "(max |l_j| = " + std::to_string(lmax) + "); det(I - AX) = 1 on E",
            MuMethod::rank_one_formula);
    }

    // Offset: minimum-HS solution of l(c) = 1; directions: null(l).
    double l2 = 0;
    for (const auto& z : ell) l2 += std::norm(z);
    CoefVector c0(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) c0[static_cast<std::size_t>(j)] = std::conj(ell[static_cast<std::size_t>(j)]) / l2;

    AffineSet set;
    set.offset = expand(e, c0);
    {
        // Orthonormal basis of conj(l)-perp in coefficient space.
        std::vector<CVector> cols{normalized(conj(ell))};
        for (int cand = 0; cand < k && static_cast<int>(cols.size()) < k; ++cand) {
            CVector r = unit_vector(k, cand);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& c : cols) {
                    const Complex ip = inner(r, c);
                    for (int i = 0; i < k; ++i) r[static_cast<std::size_t>(i)] -= ip * c[static_cast<std::size_t>(i)];
                }
            }
            if (norm(r) > 0.3) cols.push_back(normalized(r));
        }
        for (std::size_t j = 1; j < cols.size(); ++j) set.directions.push_back(expand(e, cols[j]));
    }
    const auto res = min_spectral_norm_affine(set, 1.0 / scale, 1e-9);
    return detail::finish_with_witness(outer(u, v), 1.0 / res.value, res.x,
                                       MuMethod::rank_one_formula);
}

// ---------------------------------------------------------------------------
// Order-2 reductions: the determinant constraint is affine in one parameter
// ---------------------------------------------------------------------------

namespace detail {

struct ReductionState {
    double best = 1e300;
    CMatrix witness;
    bool found = false;

    void offer(double value, const CMatrix& x) {
        if (value < best) {
            best = value;
            witness = x;
            found = true;
        }
    }
};

/// ||[[z, w], [0, z]]|| = |w|/2 + sqrt(|z|^2 + |w|^2/4).
[[nodiscard]] inline double penta_norm(Complex z, Complex w) {
    const double aw = std::abs(w);
    return aw / 2.0 + std::sqrt(std::norm(z) + aw * aw / 4.0);
}

[[nodiscard]] inline double upper_tri_norm(Complex z1, Complex w, Complex z2) {
    const double f2 = std::norm(z1) + std::norm(w) + std::norm(z2);
    const double d = std::abs(z1 * z2);
    const double disc = std::sqrt(std::max(f2 * f2 - 4.0 * d * d, 0.0));
    return std::sqrt(std::max((f2 + disc) / 2.0, 0.0));
}

}  // namespace detail

/// mu for order-2 diagonal / equal-diagonal-triangular / triangular
/// structures, by eliminating the parameter in which det(I - AX) is affine
/// and scanning the remaining free complex parameters on polar grids with
/// local refinement.
[[nodiscard]] inline MuResult mu_reduction_2x2(const CMatrix& a, StructureTag tag,
                                               const SolverOptions& opts = {}) {
    require_square(a, "mu_reduction_2x2");
    if (a.rows != 2) throw Error(Err::unsupported_dimension, "mu_reduction_2x2: order must be 2");
    if (tag != StructureTag::diag && tag != StructureTag::penta && tag != StructureTag::hexa)
        throw Error(Err::bad_param, "mu_reduction_2x2: tag must be diag, penta or hexa");

    const Complex a11 = a(0, 0), a12 = a(0, 1), a21 = a(1, 0), a22 = a(1, 1);
    const Complex tr = a11 + a22;
    const Complex dt = a11 * a22 - a12 * a21;
    const double asc = std::max(frobenius_norm(a), 1e-300);
    constexpr int kAng = 64, kRad = 64;

    detail::ReductionState st;

    if (tag == StructureTag::diag) {
        // det(I - AX) = 1 - a11 z1 - a22 z2 + det(A) z1 z2.
        if (std::abs(a11) <= 1e-14 * asc && std::abs(a22) <= 1e-14 * asc &&
            std::abs(dt) <= 1e-14 * asc * asc) {
            return detail::certified_zero(
                "det(I - A diag(z1,z2)) = 1 - a11 z1 - a22 z2 + det(A) z1 z2 = 1 identically",
                MuMethod::reduction_2x2);
        }
        if (std::abs(a11) > 1e-14 * asc)
            st.offer(1.0 / std::abs(a11), CMatrix::diag({1.0 / a11, Complex(0)}));
        if (std::abs(a22) > 1e-14 * asc)
            st.offer(1.0 / std::abs(a22), CMatrix::diag({Complex(0), 1.0 / a22}));
        if (std::abs(dt) > 1e-14 * asc * asc && std::abs(a11) <= 1e-14 * asc &&
            std::abs(a22) <= 1e-14 * asc) {
            // Anti-diagonal A: det = 1 + det(A) z1 z2, balanced solution.
            const Complex z1(1.0 / std::sqrt(std::abs(dt)), 0.0);
            const Complex z2 = -1.0 / (dt * z1);
            st.offer(std::max(std::abs(z1), std::abs(z2)), CMatrix::diag({z1, z2}));
        }

        const double r_max = st.best * 1.0000001;
        auto z2_of = [&](Complex z1) -> std::optional<Complex> {
            const Complex den = a22 - dt * z1;
            const Complex num = 1.0 - a11 * z1;
            if (std::abs(den) < 1e-14 * asc * std::max(1.0, std::abs(z1))) return std::nullopt;
            return num / den;
        };
        auto z1_of = [&](Complex z2) -> std::optional<Complex> {
            const Complex den = a11 - dt * z2;
            const Complex num = 1.0 - a22 * z2;
            if (std::abs(den) < 1e-14 * asc * std::max(1.0, std::abs(z2))) return std::nullopt;
            return num / den;
        };
        auto scan = [&](auto solve, bool first_free) {
            double local_best = 1e300;
            Complex local_arg;
            for (int ia = 0; ia < kAng; ++ia) {
                const double ang = 2.0 * kPi * ia / kAng;
                const Complex dir(std::cos(ang), std::sin(ang));
                for (int ir = 1; ir <= kRad; ++ir) {
                    const Complex zf = (r_max * ir / kRad) * dir;
                    const auto zs = solve(zf);
                    if (!zs) continue;
                    const double val = std::max(std::abs(zf), std::abs(*zs));
                    if (val < local_best) {
                        local_best = val;
                        local_arg = zf;
                    }
                }
            }
            if (local_best >= 1e300) return;
            auto obj = [&](const RealVec& x) {
                const Complex zf(x[0], x[1]);
                const auto zs = solve(zf);
                if (!zs) return 1e300;
                return std::max(std::abs(zf), std::abs(*zs));
            };
            RealVec x0 = {local_arg.real(), local_arg.imag()};
            auto nm = nelder_mead(obj, x0, 0.5 * r_max / kRad, 600, 1e-15);
            auto pol = pattern_polish(obj, nm.x, 0.1 * r_max / kRad, 1e-12 * std::max(r_max, 1.0));
            const Complex zf(pol.x[0], pol.x[1]);
            const auto zs = solve(zf);
            if (zs) {
                const Complex z1 = first_free ? zf : *zs;
                const Complex z2 = first_free ? *zs : zf;
                st.offer(std::max(std::abs(z1), std::abs(z2)), CMatrix::diag({z1, z2}));
            }
        };
        scan(z2_of, true);
        scan(z1_of, false);
    } else if (tag == StructureTag::penta) {
        // det(I - AX) = (1 - tr(A) z + det(A) z^2) - a21 w.
        if (std::abs(a21) <= 1e-14 * asc) {
            if (std::abs(a11) <= 1e-14 * asc && std::abs(a22) <= 1e-14 * asc) {
                return detail::certified_zero(
                    "det(I - AX) = (1 - a11 z)(1 - a22 z) = 1 identically on the structure",
                    MuMethod::reduction_2x2);
            }
            if (std::abs(a11) >= std::abs(a22))
                st.offer(1.0 / std::abs(a11), (1.0 / a11) * CMatrix::identity(2));
            else
                st.offer(1.0 / std::abs(a22), (1.0 / a22) * CMatrix::identity(2));
        } else {
            auto w_of = [&](Complex z) { return (1.0 - tr * z + dt * z * z) / a21; };
            auto make_x = [&](Complex z) {
                CMatrix x(2, 2);
                x(0, 0) = z;
                x(1, 1) = z;
                x(0, 1) = w_of(z);
                return x;
            };
            st.offer(detail::penta_norm(Complex(0), w_of(Complex(0))), make_x(Complex(0)));
            const double r_max = st.best * 1.0000001;
            double local_best = 1e300;
            Complex local_arg = 0;
            for (int ia = 0; ia < kAng; ++ia) {
                const double ang = 2.0 * kPi * ia / kAng;
                const Complex dir(std::cos(ang), std::sin(ang));
                for (int ir = 1; ir <= kRad; ++ir) {
                    const Complex z = (r_max * ir / kRad) * dir;
                    const double val = detail::penta_norm(z, w_of(z));
                    if (val < local_best) {
                        local_best = val;
                        local_arg = z;
                    }
                }
            }
            auto obj = [&](const RealVec& x) {
                const Complex z(x[0], x[1]);
                return detail::penta_norm(z, w_of(z));
            };
            RealVec x0 = {local_arg.real(), local_arg.imag()};
            auto nm = nelder_mead(obj, x0, 0.5 * r_max / kRad, 600, 1e-15);
            auto pol = pattern_polish(obj, nm.x, 0.1 * r_max / kRad, 1e-12 * std::max(r_max, 1.0));
            st.offer(pol.fx, make_x(Complex(pol.x[0], pol.x[1])));
        }
    } else {
        // hexa: det(I - AX) = (1 - a11 z1)(1 - a22 z2) - a12 a21 z1 z2 - a21 w.
        if (std::abs(a21) <= 1e-14 * asc) {
            if (std::abs(a11) <= 1e-14 * asc && std::abs(a22) <= 1e-14 * asc) {
                return detail::certified_zero(
                    "det(I - AX) = (1 - a11 z1)(1 - a22 z2) = 1 identically on the structure",
                    MuMethod::reduction_2x2);
            }
            if (std::abs(a11) >= std::abs(a22)) {
                CMatrix x(2, 2);
                x(0, 0) = 1.0 / a11;
                st.offer(1.0 / std::abs(a11), x);
            } else {
                CMatrix x(2, 2);
                x(1, 1) = 1.0 / a22;
                st.offer(1.0 / std::abs(a22), x);
            }
        } else {
            auto w_of = [&](Complex z1, Complex z2) {
                return ((1.0 - a11 * z1) * (1.0 - a22 * z2) - a12 * a21 * z1 * z2) / a21;
            };
            auto make_x = [&](Complex z1, Complex z2) {
                CMatrix x(2, 2);
                x(0, 0) = z1;
                x(1, 1) = z2;
                x(0, 1) = w_of(z1, z2);
                return x;
            };
            auto value_at = [&](Complex z1, Complex z2) {
                return detail::upper_tri_norm(z1, w_of(z1, z2), z2);
            };
            st.offer(value_at(Complex(0), Complex(0)), make_x(Complex(0), Complex(0)));
            if (std::abs(a11) > 1e-14 * asc)
                st.offer(value_at(1.0 / a11, Complex(0)), make_x(1.0 / a11, Complex(0)));
            if (std::abs(a22) > 1e-14 * asc)
                st.offer(value_at(Complex(0), 1.0 / a22), make_x(Complex(0), 1.0 / a22));

            const double r_max = st.best * 1.0000001;
            // Joint polar scan over (z1, z2); coarser than the 1-parameter
            // scans, then refined from the best separated nodes.
            constexpr int kAng2 = 24, kRad2 = 12;
            struct Node {
                double val;
                Complex z1, z2;
            };
            std::vector<Node> top;
            auto consider = [&](const Node& nd) {
                for (auto& t : top) {
                    if (std::abs(t.z1 - nd.z1) + std::abs(t.z2 - nd.z2) < 0.25 * r_max) {
                        if (nd.val < t.val) t = nd;
                        return;
                    }
                }
                top.push_back(nd);
                std::sort(top.begin(), top.end(), [](const Node& a_, const Node& b_) {
                    return a_.val < b_.val;
                });
                if (top.size() > 6) top.pop_back();
            };
            std::vector<Complex> nodes;
            nodes.push_back(Complex(0));
            for (int ia = 0; ia < kAng2; ++ia) {
                const double ang = 2.0 * kPi * ia / kAng2;
                const Complex dir(std::cos(ang), std::sin(ang));
                for (int ir = 1; ir <= kRad2; ++ir) nodes.push_back((r_max * ir / kRad2) * dir);
            }
            for (const auto& z1 : nodes) {
                for (const auto& z2 : nodes) {
                    const double val = value_at(z1, z2);
                    if (val < st.best * 1.25) consider({val, z1, z2});
                }
            }
            // Seeds from the diagonal sub-family (its witnesses have w = 0
            // here) and the equal-diagonal slice.
            try {
                const auto dsub = mu_reduction_2x2(a, StructureTag::diag, opts);
                if (dsub.witness) {
                    const Complex z1 = (*dsub.witness)(0, 0);
                    const Complex z2 = (*dsub.witness)(1, 1);
                    top.push_back({value_at(z1, z2), z1, z2});
                }
            } catch (const Error&) {
            }
            {
                double bestv = 1e300;
                Complex bestz;
                for (const auto& z : nodes) {
                    const double v = value_at(z, z);
                    if (v < bestv) {
                        bestv = v;
                        bestz = z;
                    }
                }
                top.push_back({bestv, bestz, bestz});
            }
            auto obj = [&](const RealVec& x) {
                return value_at(Complex(x[0], x[1]), Complex(x[2], x[3]));
            };
            for (const auto& nd : top) {
                RealVec x0 = {nd.z1.real(), nd.z1.imag(), nd.z2.real(), nd.z2.imag()};
                auto nm = nelder_mead(obj, x0, 0.7 * r_max / kRad2, 900, 1e-15);
                auto pol =
                    pattern_polish(obj, nm.x, 0.2 * r_max / kRad2, 1e-12 * std::max(r_max, 1.0));
                st.offer(pol.fx, make_x(Complex(pol.x[0], pol.x[1]), Complex(pol.x[2], pol.x[3])));
            }
        }
    }

    if (!st.found || st.best <= 0)
        throw Error(Err::convergence_failure, "mu_reduction_2x2: scan found no feasible point");
    (void)opts;
    return detail::finish_with_witness(a, 1.0 / st.best, st.witness, MuMethod::reduction_2x2);
}

// ---------------------------------------------------------------------------
// Generic bisection solver
// ---------------------------------------------------------------------------

/// Bisection on the radius t with a seeded multistart Nelder-Mead feasibility
/// search of |det(I - A X(c))|^2 over the ball ||X(c)|| <= t. Never claims a
/// certified zero: exhausting the search radius is reported as such.
[[nodiscard]] inline MuResult mu_bisection(const CMatrix& a, const Structure& e,
                                           const SolverOptions& opts = {}) {
    require_square(a, "mu_bisection");
    if (a.rows != e.n) throw Error(Err::shape_mismatch, "mu_bisection: shape mismatch");
    const double an = op_norm(a);
    if (an < 1e-300) {
        return detail::certified_zero("A = 0, so det(I - AX) = 1 for every X",
                                      MuMethod::bisection_generic);
    }
    const int k = e.dim();
    const int n = e.n;
    const double t_max = opts.search_radius / std::max(an, 1.0);

    auto assemble = [&](const RealVec& x) {
        CoefVector c(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) c[static_cast<std::size_t>(j)] = Complex(x[2 * j], x[2 * j + 1]);
        return expand(e, c);
    };

    double best_norm = 1e300;
    CMatrix best_witness;
    bool have_witness = false;

    auto accept = [&](const RealVec& x, double t) {
        CMatrix xm = assemble(x);
        const double xn = op_norm(xm);
        if (xn > t && xn > 0) xm = Complex(t / xn) * xm;  // exact radial feasibility
        const double dv = std::norm(det(CMatrix::identity(n) - a * xm));
        if (dv > 1e-16) return false;
        const double wn = op_norm(xm);
        if (wn < best_norm) {
            best_norm = wn;
            best_witness = xm;
            have_witness = true;
        }
        return true;
    };

    auto feasible_at = [&](double t, std::uint64_t label) {
        auto f = [&](const RealVec& x) {
            const CMatrix xm = assemble(x);
            const double excess = std::max(0.0, op_norm(xm) - t);
            const Complex d = det(CMatrix::identity(n) - a * xm);
            return std::norm(d) + 1e6 * excess * excess;
        };
        if (have_witness) {
            // warm start: previous witness scaled onto the current ball, with
            // locality-preserving small steps
            const double bw = op_norm(best_witness);
            const CMatrix seed_x = (bw > t) ? Complex(t / bw) * best_witness : best_witness;
            const CVector c = coeffs_of(e, seed_x);
            RealVec x0(2 * static_cast<std::size_t>(k));
            for (int j = 0; j < k; ++j) {
                x0[2 * j] = c[static_cast<std::size_t>(j)].real();
                x0[2 * j + 1] = c[static_cast<std::size_t>(j)].imag();
            }
            auto nm = nelder_mead(f, x0, 0.02 * t, 200 * k, 1e-24);
            auto pol = pattern_polish(f, nm.x, 5e-3 * t, 1e-12 * t, label);
            if (accept(pol.x, t)) return true;
        }
        RealVec best_x;
        double best_f = 1e300;
        for (int s = 0; s < std::max(1, opts.starts); ++s) {
            Rng rng(split_seed(opts.seed, label * 1000 + static_cast<std::uint64_t>(s)));
            RealVec x0(2 * static_cast<std::size_t>(k), 0.0);
            if (s > 0) {
                double nn = 0;
                for (auto& xi : x0) {
                    xi = rng.gauss();
                    nn += xi * xi;
                }
                const double radius = t * (0.15 + 1.2 * rng.unif());
                for (auto& xi : x0) xi *= radius / std::max(std::sqrt(nn), 1e-30);
            }
            auto nm = nelder_mead(f, x0, 0.35 * t, 260 * k, 1e-22);
            if (accept(nm.x, t)) return true;
            if (nm.fx < best_f) {
                best_f = nm.fx;
                best_x = nm.x;
            }
        }
        // One polish of the best near-miss before declaring infeasible.
        if (!best_x.empty()) {
            auto pol = pattern_polish(f, best_x, 0.02 * t, 1e-10 * t, label);
            if (accept(pol.x, t)) return true;
        }
        return false;
    };

    // Exponential bracket up from the norm floor 1/||A||.
    double lo = 0.0;
    double hi = -1.0;
    double t = 1.0 / an;
    std::uint64_t label = 1;
    while (t <= t_max) {
        if (feasible_at(t, label++)) {
            hi = t;
            break;
        }
        lo = t;
        t *= 2.0;
    }
    if (hi < 0) {
        MuResult r;
        r.value = 0;
        r.method = MuMethod::bisection_generic;
        r.zero_kind = ZeroKind::search_exhausted;
        r.zero_certificate = "no feasible X with ||X|| <= " + std::to_string(t_max) +
                             " (search radius exhausted; not a certified zero)";
        return r;
    }
    for (int it = 0; it < 60 && (hi - lo) > 1e-7 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible_at(mid, label++))
            hi = mid;
        else
            lo = mid;
    }
    if (!have_witness)
        throw Error(Err::convergence_failure, "mu_bisection: bracket without witness");

    // Witness polish: penalty continuation on ||X|| + rho |det(I - AX)|^2,
    // then a pure determinant descent to restore exact feasibility.
    {
        const double scale = std::max(best_norm, 1e-12);
        CVector c = coeffs_of(e, best_witness);
        RealVec x(2 * static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
            x[2 * j] = c[static_cast<std::size_t>(j)].real();
            x[2 * j + 1] = c[static_cast<std::size_t>(j)].imag();
        }
        for (double rho : {1e6, 1e9, 1e12}) {
            auto f = [&](const RealVec& v) {
                const CMatrix xm = assemble(v);
                const Complex d = det(CMatrix::identity(n) - a * xm);
                return op_norm(xm) + rho * std::norm(d);
            };
            auto nm = nelder_mead(f, x, 1e-2 * scale, 260 * k, 1e-24);
            auto pol = pattern_polish(f, nm.x, 2e-3 * scale, 1e-12 * scale, 97);
            x = pol.x;
        }
        auto fdet = [&](const RealVec& v) {
            const CMatrix xm = assemble(v);
            return std::norm(det(CMatrix::identity(n) - a * xm));
        };
        auto res = pattern_polish(fdet, x, 1e-6 * scale, 1e-14 * scale, 98);
        (void)accept(res.x, 1e300);  // no rescale; keep only if det vanishes and norm improves
    }
    return detail::finish_with_witness(a, 1.0 / best_norm, best_witness,
                                       MuMethod::bisection_generic);
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

[[nodiscard]] inline MuResult mu(const CMatrix& a, const Structure& e,
                                 const SolverOptions& opts = {}) {
    require_square(a, "mu");
    if (a.rows != e.n) throw Error(Err::shape_mismatch, "mu: matrix order differs from E.n");
    const int n = e.n;
    const double afro = frobenius_norm(a);
    if (afro < 1e-300)
        return detail::certified_zero("A = 0, so det(I - AX) = 1 for every X",
                                      MuMethod::exact_norm);

    // (a) scalar structure: mu = spectral radius.
    if (e.tag == StructureTag::scalar) {
        const auto coeffs = char_poly(a);
        bool all_zero = true;
        double pw = afro;
        for (const auto& c : coeffs) {
            if (std::abs(c) > 1e-12 * std::max(1.0, pw)) all_zero = false;
            pw *= afro;
        }
        if (all_zero) {
            return detail::certified_zero(
                "all elementary symmetric functions of the spectrum vanish, so "
                "det(I - zA) = 1 identically",
                MuMethod::exact_spectral);
        }
        const auto eigs = eigenvalues(a);
        Complex peripheral = eigs[0];
        for (const auto& l : eigs) {
            if (std::abs(l) > std::abs(peripheral) + 1e-15 ||
                (std::abs(std::abs(l) - std::abs(peripheral)) <= 1e-15 &&
                 std::arg(l) < std::arg(peripheral)))
                peripheral = l;
        }
        const double r = std::abs(peripheral);
        if (r <= 1e-12 * afro) {
            return detail::certified_zero(
                "spectrum is {0}: det(I - zA) = 1 identically", MuMethod::exact_spectral);
        }
        CMatrix x = (1.0 / peripheral) * CMatrix::identity(n);
        return detail::finish_with_witness(a, r, std::move(x), MuMethod::exact_spectral);
    }

    // (b) full structure: mu = operator norm, witness from the top singular pair.
    if (e.dim() == n * n) {
        const auto s = svd(a);
        const double s1 = s.sigma[0];
        const CVector u1 = column(s.u, 0);
        const CVector v1 = column(s.v, 0);
        const CMatrix x = Complex(1.0 / s1) * outer(v1, u1);
        return detail::finish_with_witness(a, s1, x, MuMethod::exact_norm);
    }

    // (b') transitive structures: mu = operator norm with a constructive
    // witness mapping the top right-singular pair.
    const bool transitive_tag =
        e.tag == StructureTag::symm || e.tag == StructureTag::theta ||
        (e.tag == StructureTag::trace_orth && e.trace_m_unitary);
    if (transitive_tag) {
        const auto s = svd(a);
        const double s1 = s.sigma[0];
        const CVector u1 = column(s.u, 0);
        const CVector v1 = column(s.v, 0);
        CMatrix map;  // unit-norm element of E sending u1 to v1
        if (e.tag == StructureTag::symm)
            map = (n == 2) ? symmetric_unitary_2x2(u1, v1) : symmetric_unitary_nxn(u1, v1);
        else if (e.tag == StructureTag::theta)
            map = theta_unitary(u1, v1, e.theta);
        else
            map = traceorth_unitary(e.trace_m, u1, v1);
        const CMatrix x = Complex(1.0 / s1) * map;
        return detail::finish_with_witness(a, s1, x, MuMethod::exact_norm);
    }

    // (c) rank-one A: convex affine route.
    {
        const auto sig = singular_values(a);
        if (sig[1] <= 1e-12 * sig[0]) {
            const auto s = svd(a);
            const CVector u = scaled(column(s.u, 0), Complex(s.sigma[0]));
            const CVector v = column(s.v, 0);
            return mu_rank_one(u, v, e, opts);
        }
    }

    // (d) order-2 reductions for the named triangular/diagonal tags.
    if (n == 2 && (e.tag == StructureTag::diag || e.tag == StructureTag::penta ||
                   e.tag == StructureTag::hexa)) {
        return mu_reduction_2x2(a, e.tag, opts);
    }

    // (e) everything else.
    return mu_bisection(a, e, opts);
}

}  // namespace ssv
