#pragma once

// Deterministic random sources for solvers and sampled test suites.
// All draws are derived from a 64-bit seed; identical seeds reproduce
// identical streams on any platform.

#include <cstdint>
#include <random>

#include "ssv/complex_matrix.hpp"

namespace ssv {

/// Default seed used by solvers and sampled suites (0x5EED).
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// splitmix64 step, used to derive independent sub-seeds from one seed.
[[nodiscard]] inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t label) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (label + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1), derived portably from raw 64-bit draws.
    [[nodiscard]] double unif() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    [[nodiscard]] double unif(double lo, double hi) { return lo + (hi - lo) * unif(); }

    [[nodiscard]] double gauss() {
        // Box-Muller, pair cached.
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0;
        do {
            u1 = unif();
        } while (u1 <= 1e-300);
        const double u2 = unif();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    [[nodiscard]] Complex gauss_complex() {
        const double re = gauss();
        const double im = gauss();
        return Complex(re, im);
    }

    /// Uniform point on the unit circle.
    [[nodiscard]] Complex unit_complex() {
        const double a = unif(0.0, 2.0 * 3.14159265358979323846);
        return Complex(std::cos(a), std::sin(a));
    }

    [[nodiscard]] CVector gaussian_vector(int n) {
        CVector v(static_cast<std::size_t>(n));
        for (auto& x : v) x = gauss_complex();
        return v;
    }

    [[nodiscard]] CVector random_unit_vector(int n) {
        CVector v;
        double nv = 0;
        do {
            v = gaussian_vector(n);
            nv = norm(v);
        } while (nv < 1e-8);
        return scaled(v, Complex(1.0 / nv));
    }

    [[nodiscard]] CMatrix gaussian_matrix(int r, int c) {
        CMatrix m(r, c);
        for (auto& x : m.entries) x = gauss_complex();
        return m;
    }

    /// Haar-like random unitary: Gram-Schmidt of a Ginibre matrix with
    /// positive-diagonal phase fix.
    [[nodiscard]] CMatrix random_unitary(int n) {
        CMatrix g = gaussian_matrix(n, n);
        CMatrix q(n, n);
        for (int j = 0; j < n; ++j) {
            CVector v = column(g, j);
            for (int k = 0; k < j; ++k) {
                const CVector qk = column(q, k);
                const Complex c = inner(v, qk);
                for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= c * qk[static_cast<std::size_t>(i)];
            }
            const double nv = norm(v);
            if (nv < 1e-10) return random_unitary(n);  // resample on degenerate draw
            Complex phase(1.0);
            const Complex lead = v[static_cast<std::size_t>(j)];
            if (std::abs(lead) > 1e-14) phase = std::abs(lead) / lead;
            for (int i = 0; i < n; ++i) q(i, j) = v[static_cast<std::size_t>(i)] * phase / nv;
        }
        return q;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0;
};

}  // namespace ssv
