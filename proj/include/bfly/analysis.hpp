#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bfly/butterfly.hpp"
#include "bfly/elimination.hpp"
#include "bfly/permutation.hpp"

namespace bfly {

// Closed-form GEPP/GERP growth factor of a scalar-simple butterfly:
// prod_j (1 + min(|tan theta_j|, |cot theta_j|)^2)
//   = prod_j min(sec theta_j, csc theta_j)^2.
// Throws DegenerateAngleError on exact multiples of pi/2.
double predicted_growth(const AngleVector& theta);

// Map each angle to pi/2 - theta when |tan theta| > 1, then sort by |tan|
// descending. The result has |tan t_1| >= ... >= |tan t_n| with every
// |tan| <= 1, and build() of it is completely pivoted.
AngleVector monotone_reorder(const AngleVector& theta);

// Sort by min(|tan|, |cot|) descending (equivalently max(|tan|, |cot|)
// ascending) without the hat transform; GEPP, GERP and GECP factorizations of
// the result coincide.
AngleVector reorder_by_max_tan_cot(const AngleVector& theta);

enum class GrowthScheme { genp, gepp_or_gerp };

// Law of the butterfly growth factor: prod_{j=1}^n (1 + Y_j^2), Y_j iid
// |Cauchy(1)| for GENP and |Cauchy(1)| conditioned <= 1 for GEPP/GERP.
struct GrowthLaw {
    GrowthScheme scheme = GrowthScheme::gepp_or_gerp;
    std::size_t n = 0;
};

double sample_growth_law(const GrowthLaw& law, Rng& rng);

// theta'[j] = theta[rearrangement[j]] (0-based slot sources).
AngleVector rearrange(const AngleVector& theta, std::span<const std::size_t> rearrangement);

// Order-2^n permutation conjugating B(rearrange(theta, r)) back to B(theta):
// bit l of the image of i is bit r[l] of i. Composition of the layer shuffles
// I_{2^i} kron Q_2 kron I_{2^j}.
Permutation shuffle_for_rearrangement(std::span<const std::size_t> rearrangement);

// Adjacent-factor shuffle I_{2^left} kron Q_2 kron I_{2^right}.
Permutation layer_shuffle(std::size_t left, std::size_t right);

// GEPP row permutation of a scalar-simple butterfly: the Kronecker product of
// the per-factor 2x2 swaps, one wherever |tan theta_j| > 1.
Permutation gepp_butterfly_permutation(const AngleVector& theta);

// Expected GECP factors (P, Q) for B(rearrange(theta_tilde, r)) when
// theta_tilde is monotone: P the GEPP butterfly permutation composed with the
// rearrangement shuffle, Q the shuffle transpose.
std::pair<Permutation, Permutation> predicted_gecp_permutations(
    const AngleVector& theta_tilde, std::span<const std::size_t> rearrangement);

struct AlignmentRecord {
    std::size_t trial = 0;
    std::vector<std::size_t> rearrangement;  // 0-based slot sources
    std::uint64_t lehmer = 0;
    bool p_matches_shuffle = false;
    bool q_matches_shuffle = false;
};

struct AlignmentSummary {
    std::size_t n = 0;
    std::size_t total_rearrangements = 0;     // n!
    std::size_t mismatching_rearrangements = 0;  // rearrangements failing in any trial
    double percent = 0.0;
};

struct AlignmentResult {
    std::vector<AlignmentRecord> records;
    AlignmentSummary summary;
};

// For `trials` random angle draws, monotone-reorder and run tolerance-GECP on
// every one of the n! rearrangements, comparing the computed (P, Q) with the
// perfect-shuffle prediction.
AlignmentResult alignment_experiment(std::size_t n, std::size_t trials, double tol_mult,
                                     std::uint64_t seed);

struct DivergenceReport {
    GeFactorization fact;
    Permutation predicted_p;
    Permutation predicted_q;
    bool p_match = false;
    bool q_match = false;
    // First 1-based step whose row transposition differs from the predicted
    // factored form; 0 when they agree everywhere.
    std::size_t first_divergence_step = 0;
    std::vector<std::pair<std::size_t, std::size_t>> candidates_at_divergence;
};

// Single rearrangement run with full pivot bookkeeping.
DivergenceReport alignment_instance(const AngleVector& theta_tilde,
                                    std::span<const std::size_t> rearrangement, double tol_mult);

std::uint64_t lehmer_code(std::span<const std::size_t> perm);

}  // namespace bfly
