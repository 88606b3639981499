#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bfly/analysis.hpp"

namespace bfly {

// Shared knobs for the report-producing experiment runs. The seed fully
// determines every random draw; reruns are byte-identical.
struct ExperimentConfig {
    std::size_t n = 6;
    std::size_t trials = 500;
    std::uint64_t seed = 1729;
    double tol_mult = 1e3;           // GECP candidate tolerance (eps multiples)
    double sparsity_tol_mult = 1e4;  // |entry| > tol*eps counts as nonzero
    std::string output_dir = ".";
    std::set<std::string> emit_formats = {"csv", "json", "svg", "pbm"};
    std::vector<std::string> strategies = {"gepp", "gecp", "gecp-notol"};
};

// Per-seed derivation for sub-experiments.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

// P/L+U/Q sparsity bitmaps of the tolerance and no-tolerance GECP
// factorizations of a reordered random butterfly; emits P.pbm, LU.pbm, Q.pbm,
// factors.csv and *_notol counterparts.
struct SparsityStats {
    std::size_t pixels_tol = 0;
    std::size_t pixels_notol = 0;
    bool q_tol_identity = false;
};
SparsityStats run_sparsity(const ExperimentConfig& config);
// Same emission for caller-provided angles, used as given.
SparsityStats run_sparsity(const ExperimentConfig& config, const AngleVector& theta);

// growth.csv plus overlaid log-scale histograms of rho and rho_inf for
// GEPP / GECP with tolerance / GECP without tolerance.
struct GrowthHistStats {
    double max_rho_gap_tol = 0.0;    // max |rho_gepp - rho_gecp_tol|
    double max_rho_gap_notol = 0.0;  // max |rho_gepp - rho_gecp_notol|
};
GrowthHistStats run_growth_hist(const ExperimentConfig& config);

// align.csv with one row per (trial, rearrangement) and align_summary.csv
// with the (n, |S_n|, mismatches, percent) row.
AlignmentResult run_align(const ExperimentConfig& config);

// table1.csv: one summary row per n = 1..config.n.
std::vector<AlignmentSummary> run_table1(const ExperimentConfig& config);

// lipschitz.csv: per kind and n <= config.n, worst lhs/rhs ratio over
// config.trials random perturbations.
struct LipschitzRow {
    std::string kind;
    std::size_t n = 0;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double worst_ratio = 0.0;
};
std::vector<LipschitzRow> run_lipschitz(const ExperimentConfig& config);

}  // namespace bfly
