#include <catch2/catch_amalgamated.hpp>

#include <ssv/linalg.hpp>
#include <ssv/rng.hpp>

#include "oracles.hpp"

using namespace ssv;

namespace {
const CMatrix kA = {{-1.0, -1.0}, {1.0, 1.0}};
const CMatrix kB = {{0.0, 0.0}, {1.0, 0.0}};
const CMatrix kC = {{0.0, 1.0}, {0.0, 0.0}};
}  // namespace

TEST_CASE("op_norm on fixtures") {
    CHECK(op_norm(kA) == Catch::Approx(2.0).margin(1e-12));
    CHECK(op_norm(CMatrix::identity(3)) == Catch::Approx(1.0).margin(1e-13));
    CHECK(op_norm(kB) == Catch::Approx(1.0).margin(1e-13));
    CHECK(op_norm(kC) == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("op_norm matches long power iteration on random 4x4") {
    Rng rng(split_seed(kDefaultSeed, 10));
    for (int rep = 0; rep < 10; ++rep) {
        const CMatrix a = rng.gaussian_matrix(4, 4);
        const double ref = oracle::power_iteration_norm(a);
        CHECK(op_norm(a) == Catch::Approx(ref).margin(1e-10 * std::max(1.0, ref)));
    }
}

TEST_CASE("spectral radius closed forms and nilpotency") {
    CHECK(spectral_radius(kA) == Catch::Approx(0.0).margin(1e-12));
    CHECK(spectral_radius(kB) == Catch::Approx(0.0).margin(1e-12));
    const CMatrix d = CMatrix::diag({Complex(0.3, 0.0), Complex(0.0, -0.7)});
    CHECK(spectral_radius(d) == Catch::Approx(0.7).margin(1e-12));
    CHECK_THROWS_AS(spectral_radius(CMatrix(2, 3)), Error);
}

TEST_CASE("eigenvalues via characteristic polynomial match known spectra") {
    // diag(1, 2i, -3) embedded in a unitary conjugation keeps the spectrum.
    Rng rng(split_seed(kDefaultSeed, 11));
    const CMatrix u = rng.random_unitary(3);
    const CMatrix d = CMatrix::diag({Complex(1, 0), Complex(0, 2), Complex(-3, 0)});
    const CMatrix a = u * d * adjoint(u);
    auto eigs = eigenvalues(a);
    std::sort(eigs.begin(), eigs.end(),
              [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
    CHECK(std::abs(eigs[0] - Complex(1, 0)) < 1e-9);
    CHECK(std::abs(eigs[1] - Complex(0, 2)) < 1e-9);
    CHECK(std::abs(eigs[2] - Complex(-3, 0)) < 1e-9);
}

TEST_CASE("numerical radius fixtures") {
    CHECK(numerical_radius(CMatrix::unit(2, 0, 1)) == Catch::Approx(0.5).margin(1e-8));
    CHECK(numerical_radius(CMatrix::unit(2, 1, 0)) == Catch::Approx(0.5).margin(1e-8));
    CHECK(numerical_radius(CMatrix::identity(2)) == Catch::Approx(1.0).margin(1e-8));
    CHECK_THROWS_AS(numerical_radius(CMatrix(2, 3)), Error);
}

TEST_CASE("numerical radius dominates sampled quadratic forms") {
    Rng rng(split_seed(kDefaultSeed, 12));
    for (int rep = 0; rep < 5; ++rep) {
        const CMatrix a = rng.gaussian_matrix(3, 3);
        const double w = numerical_radius(a);
        const double lower = oracle::sampled_numerical_radius(a, 100000, split_seed(kDefaultSeed, 100 + rep));
        CHECK(lower <= w + 1e-7);
        CHECK(w <= lower + 0.05 * std::max(1.0, w));  // dense sampling gets close
    }
}

TEST_CASE("hs inner product") {
    CHECK(std::abs(hs_inner(CMatrix::unit(2, 0, 0), CMatrix::unit(2, 0, 0)) - 1.0) < 1e-15);
    CHECK(std::abs(hs_inner(CMatrix::unit(2, 0, 1), CMatrix::unit(2, 1, 0))) < 1e-15);
    Rng rng(split_seed(kDefaultSeed, 13));
    const CMatrix a = rng.gaussian_matrix(3, 3);
    double ssum = 0;
    for (const auto& x : a.entries) ssum += std::norm(x);
    CHECK(hs_inner(a, a).real() == Catch::Approx(ssum).margin(1e-12 * ssum));
    CHECK(std::abs(hs_inner(a, a).imag()) < 1e-12 * ssum);
    CHECK_THROWS_AS(hs_inner(CMatrix(2, 2), CMatrix(3, 3)), Error);
}

TEST_CASE("determinants") {
    CHECK(std::abs(det(kA)) < 1e-15);
    CHECK(std::abs(det(CMatrix::identity(4)) - 1.0) < 1e-15);
    Rng rng(split_seed(kDefaultSeed, 14));
    for (int rep = 0; rep < 20; ++rep) {
        const CMatrix a = rng.gaussian_matrix(3, 3);
        CHECK(std::abs(det(a) - oracle::cofactor_det(a)) < 1e-10);
    }
    for (int rep = 0; rep < 10; ++rep) {
        const CMatrix a = rng.gaussian_matrix(5, 5);
        CHECK(std::abs(det(a) - oracle::cofactor_det(a)) < 1e-8);
    }
}

TEST_CASE("svd reconstructs the matrix") {
    Rng rng(split_seed(kDefaultSeed, 15));
    for (int n : {2, 3, 5, 8}) {
        const CMatrix a = rng.gaussian_matrix(n, n);
        const auto s = svd(a);
        CMatrix recon(n, n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    recon(i, j) += s.u(i, k) * s.sigma[static_cast<std::size_t>(k)] *
                                   std::conj(s.v(j, k));
        CHECK(frobenius_norm(recon - a) < 1e-10 * std::max(1.0, frobenius_norm(a)));
        CHECK(unitary_defect(s.u) < 1e-10);
        CHECK(unitary_defect(s.v) < 1e-10);
        for (std::size_t k = 1; k < s.sigma.size(); ++k) CHECK(s.sigma[k - 1] >= s.sigma[k]);
    }
}

TEST_CASE("hermitian eigensolver reconstructs") {
    Rng rng(split_seed(kDefaultSeed, 16));
    const CMatrix g = rng.gaussian_matrix(4, 4);
    const CMatrix h = g + adjoint(g);
    CMatrix v;
    const auto eigs = hermitian_eigenvalues(h, &v);
    CMatrix recon(4, 4);
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                recon(i, j) += v(i, k) * eigs[static_cast<std::size_t>(k)] * std::conj(v(j, k));
    CHECK(frobenius_norm(recon - h) < 1e-10 * frobenius_norm(h));
}

TEST_CASE("functional sandwich and homogeneity properties") {
    Rng rng(split_seed(kDefaultSeed, 17));
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng.unif() * 3);
        const CMatrix a = rng.gaussian_matrix(n, n);
        const double r = spectral_radius(a);
        const double w = numerical_radius(a);
        const double nm = op_norm(a);
        const double fr = frobenius_norm(a);
        CHECK(std::max(r, nm / 2.0) <= w + 1e-7);
        CHECK(w <= nm + 1e-7);
        CHECK(nm <= fr + 1e-7);

        const Complex c = rng.gauss_complex();
        CHECK(op_norm(c * a) == Catch::Approx(std::abs(c) * nm).margin(1e-9 * (1 + nm)));
        CHECK(numerical_radius(c * a) ==
              Catch::Approx(std::abs(c) * w).margin(1e-8 * (1 + std::abs(c)) * (1 + w)));
    }
}

TEST_CASE("unitary invariance of the operator norm") {
    Rng rng(split_seed(kDefaultSeed, 18));
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + static_cast<int>(rng.unif() * 3);
        const CMatrix a = rng.gaussian_matrix(n, n);
        const CMatrix u = rng.random_unitary(n);
        const CMatrix v = rng.random_unitary(n);
        CHECK(std::abs(op_norm(u * a * v) - op_norm(a)) < 1e-10 * std::max(1.0, op_norm(a)));
    }
}

TEST_CASE("spectral radius powers") {
    Rng rng(split_seed(kDefaultSeed, 19));
    for (int rep = 0; rep < 20; ++rep) {
        const CMatrix a = rng.gaussian_matrix(2, 2);
        CMatrix p = a;
        const double r = spectral_radius(a);
        for (int k = 2; k <= 4; ++k) {
            p = p * a;
            CHECK(spectral_radius(p) ==
                  Catch::Approx(std::pow(r, k)).margin(1e-8 * std::max(1.0, std::pow(r, k))));
        }
    }
}

TEST_CASE("durand-kerner recovers planted roots") {
    // (x - 1)(x - 2i)(x + 3)(x - 0.5 + 0.5i) expanded.
    const std::vector<Complex> roots = {Complex(1, 0), Complex(0, 2), Complex(-3, 0),
                                        Complex(0.5, -0.5)};
    std::vector<Complex> coeff = {Complex(1, 0)};
    for (const auto& r : roots) {
        std::vector<Complex> next(coeff.size() + 1, Complex(0));
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            next[i] += coeff[i];
            next[i + 1] -= coeff[i] * r;
        }
        coeff = next;
    }
    auto found = durand_kerner(std::vector<Complex>(coeff.begin() + 1, coeff.end()));
    for (const auto& r : roots) {
        double best = 1e300;
        for (const auto& f : found) best = std::min(best, std::abs(f - r));
        CHECK(best < 1e-9);
    }
}
