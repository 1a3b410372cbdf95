#include <catch2/catch_amalgamated.hpp>

#include <ssv/rng.hpp>
#include <ssv/structure.hpp>

#include "oracles.hpp"

using namespace ssv;

namespace {

Structure random_subspace(Rng& rng, int n, int k) {
    std::vector<CMatrix> basis;
    for (int i = 0; i < k; ++i) basis.push_back(rng.gaussian_matrix(n, n));
    return make_structure(n, std::move(basis));
}

}  // namespace

TEST_CASE("named builders have the stated bases and dimensions") {
    const Structure diag2 = make_named(StructureTag::diag, 2);
    CHECK(diag2.dim() == 2);
    CHECK(member_residual(diag2, CMatrix::unit(2, 0, 0)) < 1e-14);
    CHECK(member_residual(diag2, CMatrix::unit(2, 1, 1)) < 1e-14);

    const Structure penta = make_named(StructureTag::penta, 2);
    CHECK(penta.dim() == 2);
    CHECK(member_residual(penta, CMatrix::identity(2)) < 1e-14);

    const Structure hexa = make_named(StructureTag::hexa, 2);
    CHECK(hexa.dim() == 3);

    const Structure symm3 = make_named(StructureTag::symm, 3);
    CHECK(symm3.dim() == 6);

    const Structure full2 = make_named(StructureTag::full, 2);
    CHECK(full2.dim() == 4);

    CHECK_THROWS_AS(make_named(StructureTag::penta, 3), Error);
}

TEST_CASE("theta builder at zero phase spans the symmetric structure") {
    const Structure t0 = make_theta_structure(0.0);
    const Structure symm2 = make_named(StructureTag::symm, 2);
    CHECK(t0.dim() == 3);
    CHECK(same_span(t0, symm2));

    const Structure tpi = make_theta_structure(kPi);
    CHECK(tpi.dim() == 3);
    CHECK_FALSE(same_span(tpi, symm2));
}

TEST_CASE("trace-orthogonal builder") {
    const Structure em = make_trace_orth_structure(CMatrix::identity(2));
    CHECK(em.dim() == 3);
    CHECK(em.trace_m_unitary);
    for (const auto& q : em.onb) CHECK(std::abs(trace(q)) < 1e-12);
    // identity is HS-orthogonal to every traceless matrix
    CHECK(member_residual(em, CMatrix::identity(2)) > 0.9);

    const CMatrix m_nonunitary = {{2.0, 0.0}, {0.0, 1.0}};
    const Structure em2 = make_trace_orth_structure(m_nonunitary);
    CHECK_FALSE(em2.trace_m_unitary);
    for (const auto& q : em2.onb) CHECK(std::abs(hs_inner(q, m_nonunitary)) < 1e-12);
}

TEST_CASE("inclusion chains among named structures") {
    const Structure scalar = make_named(StructureTag::scalar, 2);
    const Structure diag = make_named(StructureTag::diag, 2);
    const Structure penta = make_named(StructureTag::penta, 2);
    const Structure hexa = make_named(StructureTag::hexa, 2);
    const Structure full = make_named(StructureTag::full, 2);
    CHECK(subspace_contains(diag, scalar));
    CHECK(subspace_contains(hexa, diag));
    CHECK(subspace_contains(penta, scalar));
    CHECK(subspace_contains(hexa, penta));
    CHECK(subspace_contains(full, hexa));
    CHECK_FALSE(subspace_contains(diag, penta));
    CHECK_FALSE(subspace_contains(penta, diag));
}

TEST_CASE("membership residuals") {
    const Structure diag = make_named(StructureTag::diag, 2);
    CHECK(member_residual(diag, CMatrix::unit(2, 0, 1)) == Catch::Approx(1.0).margin(1e-13));
    const Structure penta = make_named(StructureTag::penta, 2);
    CHECK(member_residual(penta, CMatrix::identity(2)) < 1e-13);

    Rng rng(split_seed(kDefaultSeed, 20));
    for (int rep = 0; rep < 20; ++rep) {
        const Structure e = random_subspace(rng, 3, 4);
        const CMatrix x = rng.gaussian_matrix(3, 3);
        const CMatrix proj = expand(e, coeffs_of(e, x));
        CHECK(member_residual(e, proj) < 1e-13 * std::max(1.0, frobenius_norm(proj)));
    }
}

TEST_CASE("random elements from coefficients are members, complement vectors are not") {
    Rng rng(split_seed(kDefaultSeed, 21));
    const std::vector<Structure> named = {
        make_named(StructureTag::diag, 3),
        make_named(StructureTag::penta, 2),
        make_named(StructureTag::hexa, 2),
        make_named(StructureTag::symm, 3),
        make_theta_structure(1.1),
    };
    for (const auto& e : named) {
        const Structure comp = hs_complement(e);
        for (int rep = 0; rep < 100; ++rep) {
            CoefVector c(static_cast<std::size_t>(e.dim()));
            for (auto& z : c) z = rng.gauss_complex();
            const CMatrix x = expand(e, c);
            CHECK(member_residual(e, x) <= 1e-13 * std::max(1.0, frobenius_norm(x)));
        }
        for (const auto& q : comp.onb) CHECK(member_residual(e, q) > 0.9);
    }
}

TEST_CASE("hs complement dimensions and involution") {
    const Structure hexa = make_named(StructureTag::hexa, 2);
    const Structure hexa_c = hs_complement(hexa);
    CHECK(hexa_c.dim() == 1);
    CHECK(member_residual(hexa_c, CMatrix::unit(2, 1, 0)) < 1e-12);

    const CMatrix n_mat = {{1.0, Complex(0.3, -0.2)}, {0.0, Complex(-0.5, 0.1)}};
    const Structure span_n = make_structure(2, {n_mat});
    const Structure span_n_c = hs_complement(span_n);
    CHECK(span_n_c.dim() == 3);
    CHECK(member_residual(span_n_c, CMatrix::unit(2, 1, 0)) < 1e-12);

    Rng rng(split_seed(kDefaultSeed, 22));
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng.unif() * 2);
        const int k = 1 + static_cast<int>(rng.unif() * (n * n - 1));
        const Structure e = random_subspace(rng, n, k);
        const Structure c = hs_complement(e);
        CHECK(e.dim() + c.dim() == n * n);
        for (const auto& q : c.onb)
            for (const auto& p : e.onb) CHECK(std::abs(hs_inner(q, p)) < 1e-12);
        const Structure cc = hs_complement(c);
        CHECK(cc.dim() == e.dim());
        CHECK(subspace_contains(cc, e, 1e-11));
        CHECK(subspace_contains(e, cc, 1e-11));
    }
}

TEST_CASE("find_rank_one on named and pencil cases") {
    const auto d = find_rank_one(make_named(StructureTag::diag, 2));
    REQUIRE(d.has_value());
    CHECK(std::abs(det(*d)) < 1e-10);
    CHECK(op_norm(*d) > 1e-8);

    const CMatrix b = {{1.0, 1.0}, {0.0, -1.0}};
    const Structure pencil = make_structure(2, {CMatrix::identity(2), b});
    const auto x = find_rank_one(pencil);
    REQUIRE(x.has_value());
    CHECK(std::abs(oracle::cofactor_det(*x)) < 1e-10);
    CHECK(member_residual(pencil, *x) < 1e-10);

    CHECK_FALSE(find_rank_one(make_named(StructureTag::scalar, 2)).has_value());
}

TEST_CASE("find_rank_one output is genuinely rank one") {
    Rng rng(split_seed(kDefaultSeed, 23));
    for (int rep = 0; rep < 50; ++rep) {
        const int k = 2 + static_cast<int>(rng.unif() * 3);
        const Structure e = random_subspace(rng, 2, k);
        const auto x = find_rank_one(e);
        REQUIRE(x.has_value());
        const auto s = singular_values(*x);
        CHECK(s[1] <= 1e-9 * s[0]);
        CHECK(member_residual(e, *x) < 1e-9);
    }
}

TEST_CASE("conjugation preserves dimension and is an involution") {
    const Structure diag = make_named(StructureTag::diag, 2);
    const Structure same = conjugate(diag, CMatrix::identity(2));
    CHECK(same_span(same, diag));

    Rng rng(split_seed(kDefaultSeed, 24));
    const Structure symm = make_named(StructureTag::symm, 2);
    for (int rep = 0; rep < 10; ++rep) {
        const CMatrix u = rng.random_unitary(2);
        const Structure eu = conjugate(symm, u);
        CHECK(eu.dim() == 3);
        const Structure back = conjugate(eu, adjoint(u));
        CHECK(subspace_contains(back, symm, 1e-12));
        CHECK(subspace_contains(symm, back, 1e-12));
        // identity stays inside conjugates of unital structures
        CHECK(member_residual(eu, CMatrix::identity(2)) < 1e-12);
    }
    const CMatrix not_unitary = {{1.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(conjugate(diag, not_unitary), Error);
}

TEST_CASE("unimodular diagonal outside a proper diagonal subspace") {
    const Structure scalar2 = make_named(StructureTag::scalar, 2);
    const CMatrix w = unimodular_diag_outside(scalar2);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(std::abs(w(i, i)) - 1.0) < 1e-14);
    CHECK(member_residual(scalar2, w) > 0.5);

    const Structure line3 =
        make_structure(3, {CMatrix::diag({Complex(1), Complex(1), Complex(0)})});
    const CMatrix w3 = unimodular_diag_outside(line3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(std::abs(w3(i, i)) - 1.0) < 1e-14);
    CHECK(member_residual(line3, w3) > 0.5);

    CHECK_THROWS_AS(unimodular_diag_outside(make_named(StructureTag::diag, 2)), Error);
    CHECK_THROWS_AS(unimodular_diag_outside(make_named(StructureTag::penta, 2)), Error);
}

TEST_CASE("degenerate bases are rejected") {
    const CMatrix a = CMatrix::unit(2, 0, 0);
    const CMatrix nearly = a + Complex(1e-8) * CMatrix::unit(2, 1, 1);
    CHECK_THROWS_AS(make_structure(2, {a, a}), Error);
    CHECK_THROWS_AS(make_structure(2, {a, nearly}), Error);
    CHECK_THROWS_AS(make_structure(2, {CMatrix(2, 2)}), Error);
}
