#include "bfly/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace bfly {

namespace {

void require_scalar_simple(const AngleVector& theta, const char* who) {
    if (theta.kind != ButterflyKind::scalar_simple)
        throw std::invalid_argument(std::string(who) + ": scalar_simple angles required");
}

void require_nondegenerate(double theta, const char* who) {
    if (std::fmod(theta, kPi / 2) == 0.0)
        throw DegenerateAngleError(std::string(who) + ": angle is a multiple of pi/2");
}

}  // namespace

double predicted_growth(const AngleVector& theta) {
    require_scalar_simple(theta, "predicted_growth");
    double rho = 1.0;
    for (double a : theta.angles) {
        require_nondegenerate(a, "predicted_growth");
        const double t = std::fabs(std::tan(a));
        const double m = std::min(t, 1.0 / t);
        rho *= 1.0 + m * m;
    }
    return rho;
}

AngleVector monotone_reorder(const AngleVector& theta) {
    require_scalar_simple(theta, "monotone_reorder");
    std::vector<double> hat(theta.angles.size());
    for (std::size_t j = 0; j < hat.size(); ++j) {
        const double a = theta.angles[j];
        require_nondegenerate(a, "monotone_reorder");
        hat[j] = std::fabs(std::tan(a)) <= 1.0 ? a : reduce_angle(kPi / 2 - a);
    }
    std::stable_sort(hat.begin(), hat.end(), [](double x, double y) {
        return std::fabs(std::tan(x)) > std::fabs(std::tan(y));
    });
    return AngleVector(theta.kind, theta.n, std::move(hat));
}

AngleVector reorder_by_max_tan_cot(const AngleVector& theta) {
    require_scalar_simple(theta, "reorder_by_max_tan_cot");
    std::vector<double> a = theta.angles;
    for (double v : a) require_nondegenerate(v, "reorder_by_max_tan_cot");
    // The innermost slot must carry the angle closest to pi/4, so
    // min(|tan|,|cot|) is non-increasing across the stored angles (matching
    // the hat-transformed ordering, where min = |tan|).
    auto key = [](double x) {
        const double t = std::fabs(std::tan(x));
        return std::min(t, 1.0 / t);
    };
    std::stable_sort(a.begin(), a.end(), [&](double x, double y) { return key(x) > key(y); });
    return AngleVector(theta.kind, theta.n, std::move(a));
}

double sample_growth_law(const GrowthLaw& law, Rng& rng) {
    double prod = 1.0;
    for (std::size_t j = 0; j < law.n; ++j) {
        double y;
        do {
            y = std::fabs(std::tan(rng.uniform_half_angle()));
        } while (law.scheme == GrowthScheme::gepp_or_gerp && y > 1.0);
        prod *= 1.0 + y * y;
    }
    return prod;
}

AngleVector rearrange(const AngleVector& theta, std::span<const std::size_t> r) {
    require_scalar_simple(theta, "rearrange");
    if (r.size() != theta.n) throw DimensionError("rearrange: wrong length");
    std::vector<double> v(theta.n);
    for (std::size_t j = 0; j < theta.n; ++j) v[j] = theta.angles[r[j]];
    return AngleVector(theta.kind, theta.n, std::move(v));
}

Permutation shuffle_for_rearrangement(std::span<const std::size_t> r) {
    const std::size_t n = r.size();
    const std::size_t N = std::size_t{1} << n;
    std::vector<std::size_t> im(N);
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t out = 0;
        for (std::size_t l = 0; l < n; ++l) out |= ((i >> r[l]) & 1u) << l;
        im[i] = out;
    }
    return Permutation(std::move(im));
}

Permutation layer_shuffle(std::size_t left, std::size_t right) {
    const std::size_t n = left + 2 + right;
    // Swap the two adjacent Kronecker slots right+1 and right+2 (1-based).
    std::vector<std::size_t> r(n);
    for (std::size_t l = 0; l < n; ++l) r[l] = l;
    std::swap(r[right], r[right + 1]);
    return shuffle_for_rearrangement(r);
}

Permutation gepp_butterfly_permutation(const AngleVector& theta) {
    require_scalar_simple(theta, "gepp_butterfly_permutation");
    std::size_t mask = 0;
    for (std::size_t j = 0; j < theta.n; ++j)
        if (std::fabs(std::tan(theta.angles[j])) > 1.0) mask |= std::size_t{1} << j;
    const std::size_t N = theta.order();
    std::vector<std::size_t> im(N);
    for (std::size_t i = 0; i < N; ++i) im[i] = i ^ mask;
    return Permutation(std::move(im));
}

std::pair<Permutation, Permutation> predicted_gecp_permutations(
    const AngleVector& theta_tilde, std::span<const std::size_t> r) {
    const AngleVector v = rearrange(theta_tilde, r);
    const Permutation shuffle = shuffle_for_rearrangement(r);
    const Permutation p = gepp_butterfly_permutation(v) * shuffle;
    return {p, shuffle.inverse()};
}

std::uint64_t lehmer_code(std::span<const std::size_t> perm) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        std::uint64_t smaller = 0;
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[j] < perm[i]) ++smaller;
        code = code * (perm.size() - i) + smaller;
    }
    return code;
}

AlignmentResult alignment_experiment(std::size_t n, std::size_t trials, double tol_mult,
                                     std::uint64_t seed) {
    std::vector<std::vector<std::size_t>> rearrangements;
    {
        std::vector<std::size_t> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = i;
        do {
            rearrangements.push_back(r);
        } while (std::next_permutation(r.begin(), r.end()));
    }
    const std::size_t n_perm = rearrangements.size();

    AlignmentResult result;
    result.records.resize(trials * n_perm);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::for_stream(seed, trial);
        const AngleVector theta = sample(ButterflyKind::scalar_simple, n, rng);
        const AngleVector tilde = monotone_reorder(theta);
        for (std::size_t s = 0; s < n_perm; ++s) {
            const auto& r = rearrangements[s];
            const AngleVector v = rearrange(tilde, r);
            PivotStrategy strat{Scheme::gecp, tol_mult};
            const GeFactorization fact = factorize(build(v), strat);
            const auto [pp, pq] = predicted_gecp_permutations(tilde, r);
            AlignmentRecord rec;
            rec.trial = trial;
            rec.rearrangement = r;
            rec.lehmer = lehmer_code(r);
            rec.p_matches_shuffle = (fact.p == pp);
            rec.q_matches_shuffle = (fact.q == pq);
            result.records[trial * n_perm + s] = std::move(rec);
        }
    }

    // A rearrangement counts as mismatching when any trial failed on it.
    result.summary.n = n;
    result.summary.total_rearrangements = n_perm;
    for (std::size_t s = 0; s < n_perm; ++s) {
        bool failed = false;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const AlignmentRecord& rec = result.records[trial * n_perm + s];
            if (!rec.p_matches_shuffle || !rec.q_matches_shuffle) failed = true;
        }
        if (failed) ++result.summary.mismatching_rearrangements;
    }
    result.summary.percent =
        100.0 * static_cast<double>(result.summary.mismatching_rearrangements) /
        static_cast<double>(n_perm);
    return result;
}

DivergenceReport alignment_instance(const AngleVector& theta_tilde,
                                    std::span<const std::size_t> r, double tol_mult) {
    DivergenceReport rep;
    const AngleVector v = rearrange(theta_tilde, r);
    PivotStrategy strat{Scheme::gecp, tol_mult};
    FactorizeOptions opts;
    opts.record_candidates = true;
    rep.fact = factorize(build(v), strat, opts);
    auto [pp, pq] = predicted_gecp_permutations(theta_tilde, r);
    rep.p_match = (rep.fact.p == pp);
    rep.q_match = (rep.fact.q == pq);

    // Compare the engine's row transpositions against the factored form of the
    // prediction, step by step.
    std::vector<std::size_t> predicted_swap(pp.size());
    {
        std::vector<std::size_t> w(pp.size());
        for (std::size_t i = 0; i < pp.size(); ++i) w[i] = i;
        for (std::size_t k = 0; k < pp.size(); ++k) {
            std::size_t t = k;
            while (w[t] != pp[k]) ++t;
            predicted_swap[k] = t;
            std::swap(w[k], w[t]);
        }
    }
    for (std::size_t k = 0; k < pp.size(); ++k) {
        if (rep.fact.pivot_log[k].row_swap != predicted_swap[k] + 1) {
            rep.first_divergence_step = k + 1;
            if (k < rep.fact.candidates.size())
                rep.candidates_at_divergence = rep.fact.candidates[k];
            break;
        }
    }
    rep.predicted_p = std::move(pp);
    rep.predicted_q = std::move(pq);
    return rep;
}

}  // namespace bfly
