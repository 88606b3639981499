#include <doctest.h>

#include <cmath>

#include "bfly/analysis.hpp"
#include "bfly/elimination.hpp"

using namespace bfly;

namespace {

DenseMatrix random_matrix(std::size_t n, Rng& rng) {
    DenseMatrix a(n, n);
    for (double& v : a.data()) v = rng.uniform() * 2.0 - 1.0;
    return a;
}

const PivotStrategy kGenp{Scheme::genp, std::nullopt};
const PivotStrategy kGepp{Scheme::gepp, std::nullopt};
const PivotStrategy kGerp{Scheme::gerp, std::nullopt};
const PivotStrategy kGecpTol{Scheme::gecp, 1e3};
const PivotStrategy kGecpNoTol{Scheme::gecp, std::nullopt};

}  // namespace

TEST_CASE("identity factorizes trivially under every strategy") {
    const DenseMatrix i8 = DenseMatrix::identity(8);
    for (const auto& strat : {kGenp, kGepp, kGerp, kGecpTol, kGecpNoTol}) {
        const GeFactorization f = factorize(i8, strat);
        CHECK(f.p.is_identity());
        CHECK(f.q.is_identity());
        CHECK(approx_equal(f.l, i8, 0.0));
        CHECK(approx_equal(f.u, i8, 0.0));
        CHECK(growth_factor_max(f, i8) == 1.0);
        CHECK(growth_factor_inf(f, i8) == 1.0);
    }
}

TEST_CASE("GENP on a rotation gives the closed-form factors") {
    const double t = kPi / 7;  // |tan| < 1
    const DenseMatrix r = rotation(t);
    const GeFactorization f = factorize(r, kGenp);
    CHECK(f.l(1, 0) == doctest::Approx(-std::tan(t)).epsilon(1e-15));
    CHECK(f.u(0, 0) == doctest::Approx(std::cos(t)));
    CHECK(f.u(0, 1) == doctest::Approx(std::sin(t)));
    CHECK(f.u(1, 1) == doctest::Approx(1.0 / std::cos(t)));
}

TEST_CASE("GEPP swaps rows of a steep rotation") {
    const DenseMatrix r = rotation(1.2);  // |tan(1.2)| > 1
    const GeFactorization f = factorize(r, kGepp);
    CHECK(f.row_cycles() == "(1 2)");
    CHECK(f.q.is_identity());
    CHECK(max_norm(f.l) <= 1.0);
}

TEST_CASE("reconstruction and |L| <= 1 for pivoted schemes") {
    Rng rng(101);
    for (std::size_t n : {5ul, 16ul, 64ul}) {
        const DenseMatrix a = random_matrix(n, rng);
        for (const auto& strat : {kGenp, kGepp, kGerp, kGecpTol, kGecpNoTol}) {
            const GeFactorization f = factorize(a, strat);
            CHECK(max_norm(apply_permutations(f.p, a, f.q) - f.l * f.u) <= 1e-10 * max_norm(a));
            if (strat.scheme != Scheme::genp) CHECK(max_norm(f.l) <= 1.0 + 1e-15);
            CHECK(f.step_max[0] == max_norm(a));
            if (strat.scheme == Scheme::genp || strat.scheme == Scheme::gepp)
                CHECK(f.q.is_identity());
        }
    }
}

TEST_CASE("GECP pivots equal the block maxima") {
    Rng rng(103);
    const DenseMatrix a = random_matrix(24, rng);
    for (const auto& strat : {kGecpTol, kGecpNoTol}) {
        const GeFactorization f = factorize(a, strat);
        for (std::size_t k = 0; k < a.rows(); ++k)
            CHECK(std::fabs(f.u(k, k)) == doctest::Approx(f.step_max[k]).epsilon(1e-12));
        // The pivot dominates the rest of its own row of U.
        for (std::size_t k = 0; k < a.rows(); ++k)
            for (std::size_t j = k + 1; j < a.rows(); ++j)
                CHECK(std::fabs(f.u(k, j)) <= std::fabs(f.u(k, k)) + 1e-12);
    }
}

TEST_CASE("singular input raises naming the step") {
    const DenseMatrix s{{1.0, 2.0}, {2.0, 4.0}};
    CHECK_THROWS_AS(factorize(s, kGepp), SingularityError);
    // Zero leading minor with a nonsingular matrix: GENP must fail, GEPP walks
    // around it.
    const DenseMatrix m{{0.0, 1.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(factorize(m, kGenp), SingularityError);
    CHECK_NOTHROW(factorize(m, kGepp));
}

TEST_CASE("growth factors on butterfly matrices") {
    // theta = pi/4 everywhere maximizes the growth at N for every strategy.
    for (std::size_t n : {2ul, 4ul}) {
        const AngleVector theta(ButterflyKind::scalar_simple, n,
                                std::vector<double>(n, kPi / 4));
        const DenseMatrix b = build(theta);
        for (const auto& strat : {kGenp, kGepp, kGerp, kGecpTol}) {
            const GeFactorization f = factorize(b, strat);
            CHECK(growth_factor_max(f, b) == doctest::Approx(static_cast<double>(b.rows())));
        }
    }

    // Random Haar draw: GEPP growth equals the closed form.
    Rng rng(107);
    const AngleVector theta = sample(ButterflyKind::scalar_simple, 6, rng);
    const DenseMatrix b = build(theta);
    const GeFactorization f = factorize(b, kGepp);
    CHECK(growth_factor_max(f, b) ==
          doctest::Approx(predicted_growth(theta)).epsilon(1e-10));
}

TEST_CASE("completely pivoted checks") {
    // Sylvester-style Kronecker powers of H stay completely pivoted.
    const DenseMatrix h{{1.0, 1.0}, {-1.0, 1.0}};
    DenseMatrix power = h;
    for (int reps = 0; reps < 2; ++reps) {
        CHECK(is_completely_pivoted(power));
        power = kron(power, h);
    }

    // Monotone butterfly angles (descending |tan| <= 1).
    const AngleVector good(ButterflyKind::scalar_simple, 3,
                           {std::atan(0.9), std::atan(0.5), std::atan(0.2)});
    CHECK(is_completely_pivoted(build(good)));

    // All-ones matrix counts as completely pivoted (ties allowed)...
    const DenseMatrix ones{{1.0, 1.0}, {1.0, 1.0}};
    CHECK(is_completely_pivoted(ones));
    // ...but H kron ones is not, and the diagnostic names the step.
    std::string diag;
    CHECK_FALSE(is_completely_pivoted(kron(h, ones), 1e3 * kEpsMachine, &diag));
    CHECK(diag.find("step 2") != std::string::npos);
}

TEST_CASE("kron with rotations keeps complete pivoting in the right order") {
    const AngleVector theta(ButterflyKind::scalar_simple, 2, {std::atan(0.8), std::atan(0.5)});
    const DenseMatrix b = build(theta);
    REQUIRE(is_completely_pivoted(b));
    // Outer factor needs the smaller |tan|, inner the larger.
    CHECK(is_completely_pivoted(kron(rotation(std::atan(0.3)), b)));
    CHECK(is_completely_pivoted(kron(b, rotation(std::atan(0.9)))));
    CHECK_FALSE(is_completely_pivoted(kron(b, rotation(std::atan(0.1)))));
}

TEST_CASE("genp_intermediate closed form") {
    Rng rng(109);
    const AngleVector tilde = monotone_reorder(sample(ButterflyKind::scalar_simple, 3, rng));
    const std::size_t N = tilde.order();

    // k = 1 is the matrix itself.
    CHECK(approx_equal(genp_intermediate(tilde, 1), build(tilde), 1e-14));

    // k = N is upper triangular and matches the engine's U.
    const DenseMatrix full = genp_intermediate(tilde, N);
    const GeFactorization genp = factorize(build(tilde), kGenp);
    CHECK(max_norm(full - genp.u) < 1e-13);
    for (std::size_t i = 1; i < N; ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(full(i, j) == 0.0);

    // Every step matches the traced engine run.
    FactorizeOptions opts;
    opts.trace = true;
    const GeFactorization traced = factorize(build(tilde), kGenp, opts);
    REQUIRE(traced.trace.size() == N);
    for (std::size_t k = 1; k <= N; ++k)
        CHECK(max_norm(traced.trace[k - 1] - genp_intermediate(tilde, k)) < 1e-12);

    CHECK_THROWS_AS(genp_intermediate(AngleVector(ButterflyKind::scalar_simple, 1, {kPi / 2}), 1),
                    DegenerateAngleError);
}

TEST_CASE("gecp trailing-block inequality") {
    const AngleVector tilde(ButterflyKind::scalar_simple, 3,
                            {std::atan(0.7), std::atan(0.4), std::atan(0.1)});
    // eta = eps = 0 gives 0 <= 0.
    const GecpBoundReport zero = verify_gecp_inequality(tilde, 0.0, 0.0, 2);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs == 0.0);
    CHECK(zero.holds);

    // eta = 0, eps = 1: trailing block of B^(k) never beats the pivot.
    for (std::size_t k = 1; k <= tilde.order(); ++k) {
        const GecpBoundReport r = verify_gecp_inequality(tilde, 0.0, 1.0, k);
        const DenseMatrix u = genp_intermediate(tilde, tilde.order());
        CHECK(r.rhs == doctest::Approx(std::fabs(u(k - 1, k - 1))));
        CHECK(r.holds);
    }

    CHECK_THROWS_AS(verify_gecp_inequality(tilde, 1.0, 3.0, 1), std::invalid_argument);
    const AngleVector steep(ButterflyKind::scalar_simple, 1, {1.2});
    CHECK_THROWS_AS(verify_gecp_inequality(steep, 0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("trace mode snapshots first and last states") {
    Rng rng(113);
    const DenseMatrix a = random_matrix(6, rng);
    FactorizeOptions opts;
    opts.trace = true;
    const GeFactorization f = factorize(a, kGenp, opts);
    CHECK(approx_equal(f.trace.front(), a, 0.0));
    CHECK(approx_equal(f.trace.back(), f.u, 0.0));
}

TEST_CASE("serial reference matches the engine bitwise") {
    Rng rng(127);
    const DenseMatrix a = random_matrix(48, rng);
    const DenseMatrix b = build(sample(ButterflyKind::scalar_simple, 5, rng));
    for (const DenseMatrix& m : {a, b}) {
        for (const auto& strat : {kGenp, kGepp, kGerp, kGecpTol, kGecpNoTol}) {
            const GeFactorization fast = factorize(m, strat);
            const GeFactorization ref = factorize_serial_reference(m, strat);
            CHECK(fast.p == ref.p);
            CHECK(fast.q == ref.q);
            CHECK(max_norm(fast.l - ref.l) == 0.0);
            CHECK(max_norm(fast.u - ref.u) == 0.0);
            CHECK(fast.step_max == ref.step_max);
            REQUIRE(fast.pivot_log.size() == ref.pivot_log.size());
            for (std::size_t k = 0; k < fast.pivot_log.size(); ++k) {
                CHECK(fast.pivot_log[k].row_swap == ref.pivot_log[k].row_swap);
                CHECK(fast.pivot_log[k].col_swap == ref.pivot_log[k].col_swap);
            }
        }
    }
}
