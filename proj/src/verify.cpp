#include "bfly/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "bfly/analysis.hpp"
#include "bfly/elimination.hpp"
#include "bfly/emit.hpp"
#include "bfly/hadamard.hpp"
#include "bfly/stats.hpp"

namespace bfly {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t salt_seed(const VerifyConfig& cfg, std::uint64_t salt) {
    return Rng::for_stream(cfg.seed, salt).next_u64();
}

std::size_t scaled(const VerifyConfig& cfg, std::size_t trials) {
    const auto t = static_cast<std::size_t>(std::ceil(static_cast<double>(trials) * cfg.scale));
    return t == 0 ? 1 : t;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

const DenseMatrix kH2{{1.0, 1.0}, {-1.0, 1.0}};

// ---- acceptance criteria -------------------------------------------------

PropertyResult completely_pivoted_monotone(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "criterion-01 completely pivoted monotone butterflies";
    double worst = 0.0;
    std::size_t cases = 0;
    bool ok = true;
    for (std::size_t n = 2; n <= 8 && ok; ++n) {
        const std::size_t trials = scaled(cfg, 200);
        for (std::size_t t = 0; t < trials && ok; ++t) {
            Rng rng = Rng::for_stream(salt_seed(cfg, 100 + n), t);
            const AngleVector tilde =
                monotone_reorder(sample(ButterflyKind::scalar_simple, n, rng));
            const DenseMatrix b = build(tilde);
            const GeFactorization gecp = factorize(b, {Scheme::gecp, 1e3});
            const GeFactorization genp = factorize(b, {Scheme::genp, std::nullopt});
            const double gap = std::max(max_norm(gecp.l - genp.l), max_norm(gecp.u - genp.u));
            worst = std::max(worst, gap);
            if (!gecp.p.is_identity() || !gecp.q.is_identity() || gap > 1e-10) ok = false;
            ++cases;
        }
    }
    r.pass = ok;
    r.detail = std::to_string(cases) + " matrices, max |L,U gap| = " + num(worst);
    return r;
}

PropertyResult growth_oracle(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "criterion-02 GEPP growth matches closed form";
    const std::size_t trials = scaled(cfg, 500);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_stream(salt_seed(cfg, 200), t);
        const std::size_t n = 1 + t % 8;
        const AngleVector theta = sample(ButterflyKind::scalar_simple, n, rng);
        const DenseMatrix b = build(theta);
        const GeFactorization gepp = factorize(b, {Scheme::gepp, std::nullopt});
        const double rho = growth_factor_max(gepp, b);
        const double want = predicted_growth(theta);
        worst = std::max(worst, std::fabs(rho - want) / want);
    }
    r.pass = worst <= 1e-10;
    r.detail = std::to_string(trials) + " draws, max relative gap = " + num(worst);
    return r;
}

PropertyResult gecp_gepp_growth_match(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "criterion-03 GECP growth equals GEPP growth";
    const std::size_t trials = scaled(cfg, 500);
    double worst_tol = 0.0, worst_notol = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_stream(salt_seed(cfg, 300), t);
        const AngleVector theta = sample(ButterflyKind::scalar_simple, 6, rng);
        const DenseMatrix b = build(theta);
        const double rho_gepp =
            growth_factor_max(factorize(b, {Scheme::gepp, std::nullopt}), b);
        const double rho_tol = growth_factor_max(factorize(b, {Scheme::gecp, 1e3}), b);
        const double rho_notol =
            growth_factor_max(factorize(b, {Scheme::gecp, std::nullopt}), b);
        worst_tol = std::max(worst_tol, std::fabs(rho_gepp - rho_tol));
        worst_notol = std::max(worst_notol, std::fabs(rho_gepp - rho_notol));
    }
    r.pass = worst_tol <= 1e-10 && worst_notol <= 1e-10;
    r.detail = std::to_string(trials) + " trials at N=64, max gap tol/notol = " + num(worst_tol) +
               "/" + num(worst_notol);
    return r;
}

PropertyResult growth_law_ks(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "criterion-04 growth factor distribution (KS)";
    const std::size_t trials = scaled(cfg, 2000);
    const std::size_t n = 6;
    std::vector<double> gepp_emp(trials), gepp_law(trials), genp_emp(trials), genp_law(trials);
    Rng law_rng(salt_seed(cfg, 401));
    for (std::size_t t = 0; t < trials; ++t) {
        gepp_law[t] = sample_growth_law({GrowthScheme::gepp_or_gerp, n}, law_rng);
        genp_law[t] = sample_growth_law({GrowthScheme::genp, n}, law_rng);
    }
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_stream(salt_seed(cfg, 402), t);
        const AngleVector theta = sample(ButterflyKind::scalar_simple, n, rng);
        const DenseMatrix b = build(theta);
        gepp_emp[t] = growth_factor_max(factorize(b, {Scheme::gepp, std::nullopt}), b);
        // GENP draws keep angles away from the degenerate multiples of pi/2.
        std::vector<double> guarded = theta.angles;
        for (double& a : guarded)
            while (std::min(std::fabs(std::cos(a)), std::fabs(std::sin(a))) < 1e-6)
                a = rng.uniform_angle();
        const AngleVector safe(ButterflyKind::scalar_simple, n, guarded);
        const DenseMatrix bs = build(safe);
        genp_emp[t] =
            growth_factor_pivot_ratio(factorize(bs, {Scheme::genp, std::nullopt}));
    }
    const KsResult ks_gepp = ks_two_sample(gepp_emp, gepp_law);
    const KsResult ks_genp = ks_two_sample(genp_emp, genp_law);
    r.pass = ks_gepp.p_value > 0.01 && ks_genp.p_value > 0.01;
    r.detail = "2x" + std::to_string(trials) + " samples, p(gepp) = " + num(ks_gepp.p_value) +
               ", p(genp) = " + num(ks_genp.p_value);
    return r;
}

PropertyResult intermediate_oracle(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "criterion-05 GENP intermediates match block recursion";
    double worst = 0.0;
    std::size_t cases = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
        const std::size_t trials = scaled(cfg, 100);
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = Rng::for_stream(salt_seed(cfg, 500 + n), t);
            const AngleVector tilde =
                monotone_reorder(sample(ButterflyKind::scalar_simple, n, rng));
            FactorizeOptions opts;
            opts.trace = true;
            const GeFactorization genp =
                factorize(build(tilde), {Scheme::genp, std::nullopt}, opts);
            for (std::size_t k = 1; k <= tilde.order(); ++k) {
                const DenseMatrix oracle = genp_intermediate(tilde, k);
                worst = std::max(worst, max_norm(genp.trace[k - 1] - oracle));
            }
            ++cases;
        }
    }
    r.pass = worst <= 1e-12;
    r.detail = std::to_string(cases) + " traced runs, max |gap| = " + num(worst);
    return r;
}

PropertyResult gecp_inequality_sweep(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "criterion-06 trailing-block bound sweep";
    const std::size_t trials = scaled(cfg, 500);
    std::size_t violations = 0;
    double worst_slack = 0.0;
    Rng rng(salt_seed(cfg, 600));
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = 1 + t % 5;
        const AngleVector tilde = monotone_reorder(sample(ButterflyKind::scalar_simple, n, rng));
        double eta, eps;
        do {
            eta = (rng.uniform() - 0.5) * 4.0;
            eps = (rng.uniform() - 0.5) * 4.0;
        } while (!(std::fabs(eps) <= std::fabs(eta - eps)));
        const std::size_t k = 1 + rng.below(tilde.order());
        const GecpBoundReport rep = verify_gecp_inequality(tilde, eta, eps, k);
        if (!rep.holds) ++violations;
        worst_slack = std::max(worst_slack, rep.lhs - rep.rhs);
    }
    r.pass = violations == 0;
    r.detail = std::to_string(trials) + " draws, violations = " + std::to_string(violations) +
               ", max lhs-rhs = " + num(worst_slack);
    return r;
}

PropertyResult alignment_criteria(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "criterion-07 rearranged GECP permutation alignment";
    bool ok = true;
    std::string detail;
    for (std::size_t n = 1; n <= 3; ++n) {
        const AlignmentResult res = alignment_experiment(n, scaled(cfg, 5), 1e3,
                                                         salt_seed(cfg, 700 + n));
        if (res.summary.mismatching_rearrangements != 0) ok = false;
        detail += "n=" + std::to_string(n) + ":" +
                  std::to_string(res.summary.mismatching_rearrangements) + " ";
    }

    // Known 16x16 instance: with slot tangents (.4, .2, .6, .8) the computed
    // and predicted factored forms must be exactly these, with the first
    // divergence at step 5 and candidates at (6,6) and (9,9).
    const std::string want_rows = "(12 14)(10 15)(8 10)(7 9)(6 14)(5 6)(4 13)(3 5)(2 9)";
    const std::string want_pred = "(14 15)(12 15)(10 11)(8 14)(7 10)(6 10)(5 9)(4 13)(3 5)(2 9)";
    const AngleVector tilde(ButterflyKind::scalar_simple, 4,
                            {std::atan(0.8), std::atan(0.6), std::atan(0.4), std::atan(0.2)});
    const std::vector<std::size_t> rearr = {2, 3, 1, 0};
    const DivergenceReport rep = alignment_instance(tilde, rearr, 1e3);
    auto has_candidate = [&](std::size_t i, std::size_t j) {
        for (auto& [a, b] : rep.candidates_at_divergence)
            if (a == i && b == j) return true;
        return false;
    };
    const bool instance_ok = rep.fact.row_cycles() == want_rows &&
                             rep.predicted_p.cycle_transpositions() == want_pred &&
                             rep.first_divergence_step == 5 && has_candidate(6, 6) &&
                             has_candidate(9, 9);
    if (!instance_ok) ok = false;
    detail += instance_ok ? "| explicit n=4 instance reproduced " : "| explicit instance FAILED ";

    // Repeat the explicit instance on random strictly-monotone draws.
    for (std::size_t t = 0; t < 3 && ok; ++t) {
        Rng rng = Rng::for_stream(salt_seed(cfg, 710), t);
        const AngleVector rt = monotone_reorder(sample(ButterflyKind::scalar_simple, 4, rng));
        const DivergenceReport rr = alignment_instance(rt, rearr, 1e3);
        if (rr.fact.row_cycles() != want_rows || rr.first_divergence_step != 5) ok = false;
    }

    // Growth stays rearrangement-invariant under GECP; reported, not asserted.
    {
        const double base = growth_factor_max(factorize(build(tilde), {Scheme::gepp, std::nullopt}),
                                              build(tilde));
        double worst = 0.0;
        std::vector<std::size_t> rr{0, 1, 2, 3};
        do {
            const DenseMatrix bb = build(rearrange(tilde, rr));
            worst = std::max(worst,
                             std::fabs(growth_factor_max(factorize(bb, {Scheme::gecp, 1e3}), bb) -
                                       base));
        } while (std::next_permutation(rr.begin(), rr.end()));
        detail += "| gecp growth drift over rearrangements " + num(worst) + " ";
    }

    // Sample-dependent mismatch counts, reported but not asserted.
    const AlignmentResult n4 = alignment_experiment(4, scaled(cfg, 5), 1e3, salt_seed(cfg, 704));
    const AlignmentResult n5 = alignment_experiment(5, scaled(cfg, 3), 1e3, salt_seed(cfg, 705));
    detail += "| observed n=4: " + std::to_string(n4.summary.mismatching_rearrangements) + "/24" +
              ", n=5: " + std::to_string(n5.summary.mismatching_rearrangements) + "/120";
    if (n4.summary.mismatching_rearrangements == 0) ok = false;  // existence claim

    r.pass = ok;
    r.detail = detail;
    return r;
}

PropertyResult hadamard_counts(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "criterion-08 Hadamard exactness and counts";
    (void)cfg;
    bool ok = true;
    std::string detail;
    auto check = [&](ButterflyKind kind, std::size_t n) {
        const auto set = enumerate_hadamard(kind, n);
        const std::size_t want = std::size_t{1} << count_hadamard_log2(kind, n);
        detail += std::string(kind_name(kind)) + "/n=" + std::to_string(n) + ": " +
                  std::to_string(set.size()) + (set.size() == want ? " == " : " != ") +
                  std::to_string(want) + "; ";
        if (set.size() != want) ok = false;
    };
    for (auto kind : {ButterflyKind::scalar_simple, ButterflyKind::scalar_nonsimple,
                      ButterflyKind::diagonal_simple, ButterflyKind::diagonal_nonsimple})
        check(kind, 2);
    check(ButterflyKind::scalar_simple, 3);
    check(ButterflyKind::scalar_nonsimple, 3);
    check(ButterflyKind::diagonal_simple, 3);
    r.pass = ok;
    if (!ok)
        detail += "(enumeration over every sign input contradicts the closed-form counts "
                  "for the diagonal kinds; every constructed matrix still verifies "
                  "H*H^T = N*I exactly)";
    r.detail = detail;
    return r;
}

PropertyResult lipschitz_sweep(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "criterion-09 Lipschitz bound sweep";
    std::size_t violations = 0, cases = 0;
    double worst = 0.0;
    std::uint64_t salt = 900;
    for (auto kind : {ButterflyKind::scalar_simple, ButterflyKind::scalar_nonsimple,
                      ButterflyKind::diagonal_simple, ButterflyKind::diagonal_nonsimple}) {
        for (std::size_t n = 1; n <= 5; ++n) {
            Rng rng(salt_seed(cfg, salt++));
            const std::size_t trials = scaled(cfg, 200);
            for (std::size_t t = 0; t < trials; ++t) {
                const AngleVector theta = sample(kind, n, rng);
                std::vector<double> eps(theta.angles.size());
                for (double& e : eps) e = (rng.uniform() - 0.5) * 2.0 * kPi;
                const LipschitzReport rep = lipschitz_check(theta, eps);
                if (!rep.holds) ++violations;
                if (rep.rhs > 0.0) worst = std::max(worst, rep.lhs / rep.rhs);
                ++cases;
            }
        }
    }
    r.pass = violations == 0;
    r.detail = std::to_string(cases) + " perturbations, worst lhs/rhs = " + num(worst);
    return r;
}

PropertyResult max_growth_hadamard(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "criterion-10 maximal growth of sign-pattern butterflies";
    (void)cfg;
    bool ok = true;
    for (std::size_t n = 1; n <= 8; ++n) {
        const AngleVector theta(ButterflyKind::scalar_simple, n,
                                std::vector<double>(n, kPi / 4));
        const HadamardMatrix h = butterfly_hadamard(theta);
        const DenseMatrix hd = h.to_dense();
        const GeFactorization gecp = factorize(hd, {Scheme::gecp, 1e3});
        const double rho = growth_factor_max(gecp, hd);
        if (rho != static_cast<double>(theta.order())) ok = false;
        for (std::size_t k = 0; k < hd.rows(); ++k) {
            int exp = 0;
            if (std::frexp(std::fabs(gecp.u(k, k)), &exp) != 0.5) ok = false;  // power of two
        }
    }
    r.pass = ok;
    r.detail = "n = 1..8, rho == N with power-of-two pivots";
    return r;
}

PropertyResult tornheim_closure(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "criterion-11 complete pivoting closed under kron with H";
    bool ok = true;
    Rng rng(salt_seed(cfg, 1100));
    const std::size_t trials = scaled(cfg, 50);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = 1 + t % 4;
        const AngleVector tilde = monotone_reorder(sample(ButterflyKind::scalar_simple, n, rng));
        const DenseMatrix a = build(tilde);
        if (!is_completely_pivoted(a)) ok = false;
        if (!is_completely_pivoted(kron(a, kH2))) ok = false;
    }
    const DenseMatrix ones{{1.0, 1.0}, {1.0, 1.0}};
    if (!is_completely_pivoted(ones)) ok = false;
    if (is_completely_pivoted(kron(kH2, ones))) ok = false;  // the asymmetric counterexample
    r.pass = ok;
    r.detail = std::to_string(trials) + " pivoted butterflies plus the 4x4 counterexample";
    return r;
}

// ---- module property sweeps ---------------------------------------------

PropertyResult orthogonality_sweep(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "property orthogonality of all butterfly kinds";
    double worst = 0.0;
    std::uint64_t salt = 1200;
    for (auto kind : {ButterflyKind::scalar_simple, ButterflyKind::scalar_nonsimple,
                      ButterflyKind::diagonal_simple, ButterflyKind::diagonal_nonsimple})
        for (std::size_t n = 1; n <= 7; ++n) {
            Rng rng(salt_seed(cfg, salt++));
            for (std::size_t t = 0; t < scaled(cfg, 5); ++t) {
                const DenseMatrix b = build(sample(kind, n, rng));
                worst = std::max(
                    worst, max_norm(b * transpose(b) - DenseMatrix::identity(b.rows())));
            }
        }
    r.pass = worst <= 1e-12;
    r.detail = "max |B B^T - I| = " + num(worst);
    return r;
}

PropertyResult reconstruction_sweep(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "property P*A*Q = L*U reconstruction";
    double worst = 0.0;
    Rng rng(salt_seed(cfg, 1300));
    for (std::size_t nn : {5, 16, 64, 256}) {
        for (auto scheme : {Scheme::genp, Scheme::gepp, Scheme::gerp, Scheme::gecp}) {
            DenseMatrix a(nn, nn);
            for (double& v : a.data()) v = rng.uniform() * 2.0 - 1.0;
            const PivotStrategy strat{scheme,
                                      scheme == Scheme::gecp ? std::optional<double>(1e3)
                                                             : std::nullopt};
            const GeFactorization f = factorize(a, strat);
            const double gap =
                max_norm(apply_permutations(f.p, a, f.q) - f.l * f.u) / max_norm(a);
            worst = std::max(worst, gap);
        }
    }
    r.pass = worst <= 1e-10;
    r.detail = "max relative |PAQ - LU| = " + num(worst);
    return r;
}

PropertyResult gepp_gerp_alignment(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "property GERP equals GEPP on Haar butterflies";
    bool ok = true;
    for (std::size_t t = 0; t < scaled(cfg, 100); ++t) {
        Rng rng = Rng::for_stream(salt_seed(cfg, 1400), t);
        const DenseMatrix b = build(sample(ButterflyKind::scalar_simple, 6, rng));
        const GeFactorization gepp = factorize(b, {Scheme::gepp, std::nullopt});
        const GeFactorization gerp = factorize(b, {Scheme::gerp, std::nullopt});
        if (!(gepp.p == gerp.p) || !gerp.q.is_identity()) ok = false;
        if (max_norm(gepp.l - gerp.l) != 0.0 || max_norm(gepp.u - gerp.u) != 0.0) ok = false;
    }
    r.pass = ok;
    r.detail = "identical P, L, U per trial";
    return r;
}

PropertyResult gepp_minimal_growth(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "property GEPP growth minimal among schemes";
    bool ok = true;
    for (std::size_t t = 0; t < scaled(cfg, 100); ++t) {
        Rng rng = Rng::for_stream(salt_seed(cfg, 1500), t);
        const DenseMatrix b = build(sample(ButterflyKind::scalar_simple, 5, rng));
        const double gepp = growth_factor_max(factorize(b, {Scheme::gepp, std::nullopt}), b);
        for (auto scheme : {Scheme::genp, Scheme::gerp, Scheme::gecp}) {
            const PivotStrategy strat{scheme,
                                      scheme == Scheme::gecp ? std::optional<double>(1e3)
                                                             : std::nullopt};
            if (growth_factor_max(factorize(b, strat), b) < gepp - 1e-10) ok = false;
        }
    }
    r.pass = ok;
    r.detail = "rho_gepp <= rho_scheme per trial";
    return r;
}

PropertyResult rho_inf_distribution(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "property rho_inf separates GEPP from GECP";
    const std::size_t trials = scaled(cfg, 2000);
    std::vector<double> inf_gepp(trials), inf_tol(trials), inf_notol(trials);
    double worst_rho_gap = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : worst_rho_gap)
#endif
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_stream(salt_seed(cfg, 1600), t);
        const DenseMatrix b = build(sample(ButterflyKind::scalar_simple, 6, rng));
        const GeFactorization gepp = factorize(b, {Scheme::gepp, std::nullopt});
        const GeFactorization tol = factorize(b, {Scheme::gecp, 1e3});
        const GeFactorization notol = factorize(b, {Scheme::gecp, std::nullopt});
        inf_gepp[t] = growth_factor_inf(gepp, b);
        inf_tol[t] = growth_factor_inf(tol, b);
        inf_notol[t] = growth_factor_inf(notol, b);
        worst_rho_gap = std::max(worst_rho_gap, std::fabs(growth_factor_max(gepp, b) -
                                                          growth_factor_max(tol, b)));
    }
    const KsResult ks_tol = ks_two_sample(inf_gepp, inf_tol);
    const KsResult ks_notol = ks_two_sample(inf_gepp, inf_notol);
    auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    r.pass = ks_tol.p_value < 0.01 && ks_notol.p_value < 0.01 && worst_rho_gap <= 1e-10;
    // The mean comparison is reported, not asserted.
    r.detail = "KS p(tol) = " + num(ks_tol.p_value) + ", p(notol) = " + num(ks_notol.p_value) +
               ", max rho gap = " + num(worst_rho_gap) + ", mean rho_inf gepp/tol/notol = " +
               num(mean(inf_gepp)) + "/" + num(mean(inf_tol)) + "/" + num(mean(inf_notol));
    return r;
}

PropertyResult sparsity_symmetry(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "property L and U^T sparsity symmetry (soft)";
    r.soft = true;
    const double thr = 1e4 * kEpsMachine;
    std::size_t asymmetric = 0;
    for (std::size_t t = 0; t < scaled(cfg, 20); ++t) {
        Rng rng = Rng::for_stream(salt_seed(cfg, 1700), t);
        const DenseMatrix b = build(sample(ButterflyKind::scalar_simple, 7, rng));
        const GeFactorization gecp = factorize(b, {Scheme::gecp, 1e3});
        bool sym = true;
        for (std::size_t i = 0; i < b.rows() && sym; ++i)
            for (std::size_t j = 0; j < b.rows(); ++j)
                if ((std::fabs(gecp.l(i, j)) > thr) != (std::fabs(gecp.u(j, i)) > thr)) {
                    sym = false;
                    break;
                }
        if (!sym) ++asymmetric;
    }
    r.pass = asymmetric == 0;
    r.detail = std::to_string(asymmetric) + " asymmetric patterns";
    return r;
}

PropertyResult parallel_matches_reference(const VerifyConfig& cfg) {
    PropertyResult r;
    r.name = "property OpenMP kernels match serial reference";
    bool ok = true;
    Rng rng(salt_seed(cfg, 1800));
    for (std::size_t t = 0; t < scaled(cfg, 8); ++t) {
        DenseMatrix a(160, 160);
        for (double& v : a.data()) v = rng.uniform() * 2.0 - 1.0;
        AngleVector theta = sample(ButterflyKind::scalar_simple, 7, rng);
        for (const DenseMatrix& m : {a, build(theta)}) {
            for (auto scheme : {Scheme::genp, Scheme::gepp, Scheme::gerp, Scheme::gecp}) {
                const PivotStrategy strat{scheme,
                                          scheme == Scheme::gecp ? std::optional<double>(1e3)
                                                                 : std::nullopt};
                const GeFactorization par = factorize(m, strat);
                const GeFactorization ser = factorize_serial_reference(m, strat);
                if (!(par.p == ser.p) || !(par.q == ser.q)) ok = false;
                if (max_norm(par.l - ser.l) != 0.0 || max_norm(par.u - ser.u) != 0.0) ok = false;
                if (par.step_max != ser.step_max) ok = false;
            }
        }
    }
    r.pass = ok;
    r.detail = "bitwise identical factors across schemes";
    return r;
}

}  // namespace

std::vector<PropertyResult> run_acceptance_suite(const VerifyConfig& config) {
    std::vector<PropertyResult> results;
    const std::vector<std::function<PropertyResult(const VerifyConfig&)>> checks = {
        completely_pivoted_monotone,
        growth_oracle,
        gecp_gepp_growth_match,
        growth_law_ks,
        intermediate_oracle,
        gecp_inequality_sweep,
        alignment_criteria,
        hadamard_counts,
        lipschitz_sweep,
        max_growth_hadamard,
        tornheim_closure,
        orthogonality_sweep,
        reconstruction_sweep,
        gepp_gerp_alignment,
        gepp_minimal_growth,
        rho_inf_distribution,
        sparsity_symmetry,
        parallel_matches_reference,
    };
    for (const auto& check : checks) {
        const auto start = Clock::now();
        PropertyResult res = check(config);
        res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        results.push_back(std::move(res));
    }
    return results;
}

bool all_passed(const std::vector<PropertyResult>& results) {
    for (const auto& r : results)
        if (!r.soft && !r.pass) return false;
    return true;
}

std::string results_to_json(const std::vector<PropertyResult>& results) {
    std::string out = "{\n  \"checks\": [\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        out += "    {\"name\": \"" + r.name + "\", \"pass\": " + (r.pass ? "true" : "false") +
               ", \"soft\": " + (r.soft ? "true" : "false") + ", \"seconds\": " +
               fmt_g17(r.seconds) + ", \"detail\": \"" + r.detail + "\"}";
        out += (i + 1 == results.size()) ? "\n" : ",\n";
    }
    out += "  ],\n  \"all_passed\": ";
    out += all_passed(results) ? "true" : "false";
    out += "\n}\n";
    return out;
}

}  // namespace bfly
