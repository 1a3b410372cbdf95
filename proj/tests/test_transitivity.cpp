#include <catch2/catch_amalgamated.hpp>

#include <ssv/rng.hpp>
#include <ssv/transitivity.hpp>

using namespace ssv;

namespace {

struct Guarantees {
    double map_residual;
    double unitary_residual;
    double membership_residual;
};

Guarantees check_construction(const CMatrix& x, const Structure& e, const CVector& u,
                              const CVector& v) {
    return {norm(x * u - v), unitary_defect(x), member_residual(e, x)};
}

}  // namespace

TEST_CASE("symmetric unitary 2x2: permutation-like and identity-like pairs") {
    const Structure symm = make_named(StructureTag::symm, 2);
    {
        const CMatrix a = symmetric_unitary_2x2(unit_vector(2, 0), unit_vector(2, 1));
        const auto g = check_construction(a, symm, unit_vector(2, 0), unit_vector(2, 1));
        CHECK(g.map_residual < 1e-11);
        CHECK(g.unitary_residual < 1e-11);
        CHECK(g.membership_residual < 1e-11);
        CHECK(frobenius_norm(a - transpose(a)) < 1e-12);
    }
    {
        const CMatrix a = symmetric_unitary_2x2(unit_vector(2, 0), unit_vector(2, 0));
        CHECK(norm(a * unit_vector(2, 0) - unit_vector(2, 0)) < 1e-11);
        CHECK(unitary_defect(a) < 1e-11);
    }
    CHECK_THROWS_AS(symmetric_unitary_2x2(scaled(unit_vector(2, 0), 2.0), unit_vector(2, 1)),
                    Error);
}

TEST_CASE("symmetric unitary 2x2: 500 seeded pairs meet the guarantees") {
    Rng rng(split_seed(kDefaultSeed, 40));
    const Structure symm = make_named(StructureTag::symm, 2);
    double worst = 0;
    for (int rep = 0; rep < 500; ++rep) {
        const CVector u = rng.random_unit_vector(2);
        const CVector v = rng.random_unit_vector(2);
        const CMatrix a = symmetric_unitary_2x2(u, v);
        const auto g = check_construction(a, symm, u, v);
        worst = std::max({worst, g.map_residual, g.unitary_residual, g.membership_residual});
    }
    CHECK(worst < 1e-11);
}

TEST_CASE("symmetric unitary nxn: guarantees across orders") {
    Rng rng(split_seed(kDefaultSeed, 41));
    for (int n = 2; n <= 6; ++n) {
        const Structure symm = make_named(StructureTag::symm, n);
        double worst = 0;
        for (int rep = 0; rep < 100; ++rep) {
            const CVector u = rng.random_unit_vector(n);
            const CVector v = rng.random_unit_vector(n);
            const CMatrix a = symmetric_unitary_nxn(u, v);
            const auto g = check_construction(a, symm, u, v);
            worst = std::max({worst, g.map_residual, g.unitary_residual, g.membership_residual});
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("symmetric unitary nxn: standard-basis pair and colinear degeneracy") {
    const CMatrix a = symmetric_unitary_nxn(unit_vector(5, 0), unit_vector(5, 2));
    CHECK(norm(a * unit_vector(5, 0) - unit_vector(5, 2)) < 1e-10);
    CHECK(unitary_defect(a) < 1e-10);
    CHECK(frobenius_norm(a - transpose(a)) < 1e-10);

    // |zeta| = 1: u and conj(v) colinear; the one-vector branch applies.
    Rng rng(split_seed(kDefaultSeed, 42));
    const CVector u = rng.random_unit_vector(3);
    const CVector v = conj(u);
    const CMatrix b = symmetric_unitary_nxn(u, v);
    CHECK(norm(b * u - v) < 1e-10);
    CHECK(unitary_defect(b) < 1e-10);
    CHECK(frobenius_norm(b - transpose(b)) < 1e-10);

    // real positive pairing keeps theta at zero
    const CVector e0 = unit_vector(4, 0);
    const CMatrix c = symmetric_unitary_nxn(e0, e0);
    CHECK(norm(c * e0 - e0) < 1e-10);
}

TEST_CASE("theta construction lands inside the phase-coupled structure") {
    Rng rng(split_seed(kDefaultSeed, 43));
    for (double theta : {0.0, kPi / 2, kPi, 2.2, -1.0}) {
        const Structure et = make_theta_structure(theta);
        double worst = 0;
        for (int rep = 0; rep < 100; ++rep) {
            const CVector u = rng.random_unit_vector(2);
            const CVector v = rng.random_unit_vector(2);
            const CMatrix a = theta_unitary(u, v, theta);
            const auto g = check_construction(a, et, u, v);
            worst = std::max({worst, g.map_residual, g.unitary_residual, g.membership_residual});
        }
        CHECK(worst < 1e-10);
    }
    const CMatrix a = theta_unitary(unit_vector(2, 0), unit_vector(2, 1), kPi);
    CHECK(member_residual(make_theta_structure(kPi), a) < 1e-11);
    CHECK(norm(a * unit_vector(2, 0) - unit_vector(2, 1)) < 1e-11);
}

TEST_CASE("trace-orthogonal construction") {
    Rng rng(split_seed(kDefaultSeed, 44));
    {
        const CMatrix a = traceorth_unitary(CMatrix::identity(2), unit_vector(2, 0),
                                            unit_vector(2, 1));
        CHECK(norm(a * unit_vector(2, 0) - unit_vector(2, 1)) < 1e-11);
        CHECK(unitary_defect(a) < 1e-11);
        CHECK(std::abs(trace(a)) < 1e-11);
    }
    {
        const CMatrix m = CMatrix::diag({Complex(1), Complex(-1)});
        const CMatrix a = traceorth_unitary(m, unit_vector(2, 0), unit_vector(2, 0));
        CHECK(norm(a * unit_vector(2, 0) - unit_vector(2, 0)) < 1e-11);
        CHECK(std::abs(hs_inner(a, m)) < 1e-11);  // tr(M*A) = 0
    }
    for (int rep = 0; rep < 200; ++rep) {
        const CMatrix m = rng.random_unitary(2);
        const Structure em = make_trace_orth_structure(m);
        const CVector u = rng.random_unit_vector(2);
        const CVector v = rng.random_unit_vector(2);
        const CMatrix a = traceorth_unitary(m, u, v);
        const auto g = check_construction(a, em, u, v);
        CHECK(g.map_residual < 1e-11);
        CHECK(g.unitary_residual < 1e-11);
        CHECK(g.membership_residual < 1e-11);
    }
    const CMatrix bad = {{1.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(traceorth_unitary(bad, unit_vector(2, 0), unit_vector(2, 1)), Error);
}

TEST_CASE("min-norm interpolation: full structure and structural infeasibility") {
    const Structure full = make_named(StructureTag::full, 2);
    Rng rng(split_seed(kDefaultSeed, 45));
    for (int rep = 0; rep < 10; ++rep) {
        const CVector u = rng.random_unit_vector(2);
        const CVector v = rng.random_unit_vector(2);
        const auto interp = min_norm_interpolant(full, u, v);
        REQUIRE(interp.has_value());
        CHECK(interp->norm_value == Catch::Approx(1.0).margin(1e-6));
        CHECK(norm(interp->x * u - v) < 1e-9);
    }
    const Structure diag = make_named(StructureTag::diag, 2);
    CHECK_FALSE(min_norm_interpolant(diag, unit_vector(2, 0), unit_vector(2, 1)).has_value());
}

TEST_CASE("min-norm never dips below the unit floor") {
    Rng rng(split_seed(kDefaultSeed, 46));
    for (int rep = 0; rep < 25; ++rep) {
        const int n = 2 + static_cast<int>(rng.unif() * 2);
        const int k = n + static_cast<int>(rng.unif() * (n * n - n));
        std::vector<CMatrix> basis;
        for (int i = 0; i < k; ++i) basis.push_back(rng.gaussian_matrix(n, n));
        const Structure e = make_structure(n, std::move(basis));
        const CVector u = rng.random_unit_vector(n);
        const CVector v = rng.random_unit_vector(n);
        const auto interp = min_norm_interpolant(e, u, v);
        if (interp) CHECK(interp->norm_value >= 1.0 - 1e-9);
    }
}

TEST_CASE("min-norm matches the symmetric construction") {
    Rng rng(split_seed(kDefaultSeed, 47));
    for (int n : {2, 3}) {
        const Structure symm = make_named(StructureTag::symm, n);
        for (int rep = 0; rep < 30; ++rep) {
            const CVector u = rng.random_unit_vector(n);
            const CVector v = rng.random_unit_vector(n);
            const auto interp = min_norm_interpolant(symm, u, v);
            REQUIRE(interp.has_value());
            CHECK(interp->norm_value == Catch::Approx(1.0).margin(1e-6));
        }
    }
}

TEST_CASE("norm equality verdicts") {
    const auto pass4 = norm_equality_check(make_named(StructureTag::symm, 4), 40,
                                           split_seed(kDefaultSeed, 48));
    CHECK(pass4.pass);
    CHECK(pass4.max_norm_defect < 1e-6);

    const auto fail_penta = norm_equality_check(make_named(StructureTag::penta, 2), 40,
                                                split_seed(kDefaultSeed, 49));
    CHECK_FALSE(fail_penta.pass);
    CHECK(fail_penta.witness_pair.has_value());

    const auto fail_scalar = norm_equality_check(make_named(StructureTag::scalar, 2), 5,
                                                 split_seed(kDefaultSeed, 50));
    CHECK_FALSE(fail_scalar.pass);
    CHECK(fail_scalar.pairs_tested == 0);  // dimension fail-fast
}
