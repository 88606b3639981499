#include "bfly/experiments.hpp"

#include <cmath>

#include "bfly/emit.hpp"
#include "bfly/rng.hpp"

namespace bfly {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return Rng::for_stream(seed, salt).next_u64();
}

namespace {

bool wants(const ExperimentConfig& c, const std::string& fmt) {
    return c.emit_formats.count(fmt) > 0;
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir + "/" + name;
}

void emit_sparsity_set(const ExperimentConfig& config, const std::string& suffix,
                       const GeFactorization& fact, double threshold, SparsityStats& stats,
                       bool tol_variant) {
    const std::size_t N = fact.u.rows();
    const DenseMatrix lu = fact.l + fact.u;
    auto lu_bit = [&](std::size_t i, std::size_t j) { return std::fabs(lu(i, j)) > threshold; };
    std::size_t pixels = 0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (lu_bit(i, j)) ++pixels;
    if (tol_variant) {
        stats.pixels_tol = pixels;
        stats.q_tol_identity = fact.q.is_identity();
    } else {
        stats.pixels_notol = pixels;
    }

    if (wants(config, "pbm")) {
        write_file(join_path(config.output_dir, "P" + suffix + ".pbm"),
                   pbm_p4(N, N, [&](std::size_t i, std::size_t j) { return fact.p[i] == j; }));
        write_file(join_path(config.output_dir, "Q" + suffix + ".pbm"),
                   pbm_p4(N, N, [&](std::size_t i, std::size_t j) { return fact.q[i] == j; }));
        write_file(join_path(config.output_dir, "LU" + suffix + ".pbm"), pbm_p4(N, N, lu_bit));
    }
    if (wants(config, "csv")) {
        std::string csv = "# artifact: sparsity_factors" + suffix + "\n";
        csv += to_csv(lu - DenseMatrix::identity(N));
        write_file(join_path(config.output_dir, "factors" + suffix + ".csv"), csv);
    }
}

}  // namespace

SparsityStats run_sparsity(const ExperimentConfig& config) {
    if (config.n > 12) throw std::invalid_argument("run_sparsity: n > 12");
    Rng rng = Rng::for_stream(config.seed, 0);
    const AngleVector theta = sample(ButterflyKind::scalar_simple, config.n, rng);
    return run_sparsity(config, reorder_by_max_tan_cot(theta));
}

SparsityStats run_sparsity(const ExperimentConfig& config, const AngleVector& theta) {
    const DenseMatrix b = build(theta);
    const double threshold = config.sparsity_tol_mult * kEpsMachine;

    SparsityStats stats;
    const GeFactorization with_tol =
        factorize(b, PivotStrategy{Scheme::gecp, config.tol_mult});
    emit_sparsity_set(config, "", with_tol, threshold, stats, true);
    const GeFactorization no_tol = factorize(b, PivotStrategy{Scheme::gecp, std::nullopt});
    emit_sparsity_set(config, "_notol", no_tol, threshold, stats, false);
    return stats;
}

GrowthHistStats run_growth_hist(const ExperimentConfig& config) {
    const std::size_t trials = config.trials;
    std::vector<double> rho(3 * trials), rho_inf(3 * trials);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_stream(config.seed, t);
        const AngleVector theta = sample(ButterflyKind::scalar_simple, config.n, rng);
        const DenseMatrix b = build(theta);
        const GeFactorization gepp = factorize(b, PivotStrategy{Scheme::gepp, std::nullopt});
        const GeFactorization gecp_tol =
            factorize(b, PivotStrategy{Scheme::gecp, config.tol_mult});
        const GeFactorization gecp_notol =
            factorize(b, PivotStrategy{Scheme::gecp, std::nullopt});
        rho[t] = growth_factor_max(gepp, b);
        rho[trials + t] = growth_factor_max(gecp_tol, b);
        rho[2 * trials + t] = growth_factor_max(gecp_notol, b);
        rho_inf[t] = growth_factor_inf(gepp, b);
        rho_inf[trials + t] = growth_factor_inf(gecp_tol, b);
        rho_inf[2 * trials + t] = growth_factor_inf(gecp_notol, b);
    }

    GrowthHistStats stats;
    for (std::size_t t = 0; t < trials; ++t) {
        stats.max_rho_gap_tol = std::max(stats.max_rho_gap_tol,
                                         std::fabs(rho[t] - rho[trials + t]));
        stats.max_rho_gap_notol = std::max(stats.max_rho_gap_notol,
                                           std::fabs(rho[t] - rho[2 * trials + t]));
    }

    if (wants(config, "csv")) {
        const std::vector<std::string> cols = {"trial",        "rho_gepp",
                                               "rho_gecp_tol", "rho_gecp_notol",
                                               "rhoinf_gepp",  "rhoinf_gecp_tol",
                                               "rhoinf_gecp_notol"};
        std::string csv = csv_preamble("growth_hist", cols);
        for (std::size_t t = 0; t < trials; ++t) {
            csv += std::to_string(t) + "," + fmt_g17(rho[t]) + "," + fmt_g17(rho[trials + t]) +
                   "," + fmt_g17(rho[2 * trials + t]) + "," + fmt_g17(rho_inf[t]) + "," +
                   fmt_g17(rho_inf[trials + t]) + "," + fmt_g17(rho_inf[2 * trials + t]) + "\n";
        }
        write_file(join_path(config.output_dir, "growth.csv"), csv);
    }
    if (wants(config, "svg")) {
        auto slice = [&](const std::vector<double>& v, std::size_t s) {
            return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(s * trials),
                                       v.begin() + static_cast<std::ptrdiff_t>((s + 1) * trials));
        };
        const std::vector<HistogramSeries> rho_series = {{"gepp", slice(rho, 0)},
                                                         {"gecp tol", slice(rho, 1)},
                                                         {"gecp no tol", slice(rho, 2)}};
        write_file(join_path(config.output_dir, "rho_hist.svg"),
                   svg_log_histogram("growth factor rho", rho_series));
        const std::vector<HistogramSeries> inf_series = {{"gepp", slice(rho_inf, 0)},
                                                         {"gecp tol", slice(rho_inf, 1)},
                                                         {"gecp no tol", slice(rho_inf, 2)}};
        write_file(join_path(config.output_dir, "rho_inf_hist.svg"),
                   svg_log_histogram("growth factor rho_inf", inf_series));
    }
    return stats;
}

AlignmentResult run_align(const ExperimentConfig& config) {
    AlignmentResult result =
        alignment_experiment(config.n, config.trials, config.tol_mult, config.seed);
    if (wants(config, "csv")) {
        const std::vector<std::string> cols = {"trial", "sigma_lehmer_code", "p_match", "q_match"};
        std::string csv = csv_preamble("alignment", cols);
        for (const auto& rec : result.records)
            csv += std::to_string(rec.trial) + "," + std::to_string(rec.lehmer) + "," +
                   std::to_string(rec.p_matches_shuffle ? 1 : 0) + "," +
                   std::to_string(rec.q_matches_shuffle ? 1 : 0) + "\n";
        write_file(join_path(config.output_dir, "align.csv"), csv);

        const std::vector<std::string> sum_cols = {"n", "rearrangements", "mismatch_count",
                                                   "percent"};
        std::string sum = csv_preamble("table1", sum_cols);
        sum += std::to_string(result.summary.n) + "," +
               std::to_string(result.summary.total_rearrangements) + "," +
               std::to_string(result.summary.mismatching_rearrangements) + "," +
               fmt_g17(result.summary.percent) + "\n";
        write_file(join_path(config.output_dir, "align_summary.csv"), sum);
    }
    return result;
}

std::vector<AlignmentSummary> run_table1(const ExperimentConfig& config) {
    std::vector<AlignmentSummary> rows;
    for (std::size_t n = 1; n <= config.n; ++n) {
        AlignmentResult r = alignment_experiment(n, config.trials, config.tol_mult,
                                                 derive_seed(config.seed, n));
        rows.push_back(r.summary);
    }
    if (wants(config, "csv")) {
        const std::vector<std::string> cols = {"n", "rearrangements", "mismatch_count", "percent"};
        std::string csv = csv_preamble("table1", cols);
        for (const auto& row : rows)
            csv += std::to_string(row.n) + "," + std::to_string(row.total_rearrangements) + "," +
                   std::to_string(row.mismatching_rearrangements) + "," + fmt_g17(row.percent) +
                   "\n";
        write_file(join_path(config.output_dir, "table1.csv"), csv);
    }
    return rows;
}

std::vector<LipschitzRow> run_lipschitz(const ExperimentConfig& config) {
    std::vector<LipschitzRow> rows;
    std::uint64_t salt = 0;
    for (auto kind : {ButterflyKind::scalar_simple, ButterflyKind::scalar_nonsimple,
                      ButterflyKind::diagonal_simple, ButterflyKind::diagonal_nonsimple}) {
        for (std::size_t n = 1; n <= config.n; ++n) {
            Rng rng = Rng::for_stream(config.seed, salt++);
            LipschitzRow row;
            row.kind = kind_name(kind);
            row.n = n;
            row.samples = config.trials;
            for (std::size_t t = 0; t < config.trials; ++t) {
                const AngleVector theta = sample(kind, n, rng);
                std::vector<double> eps(theta.angles.size());
                for (double& e : eps) e = (rng.uniform() - 0.5) * 2.0 * kPi;
                const LipschitzReport rep = lipschitz_check(theta, eps);
                if (!rep.holds) ++row.violations;
                if (rep.rhs > 0.0) row.worst_ratio = std::max(row.worst_ratio, rep.lhs / rep.rhs);
            }
            rows.push_back(row);
        }
    }
    if (wants(config, "csv")) {
        const std::vector<std::string> cols = {"kind", "n", "samples", "violations",
                                               "worst_ratio"};
        std::string csv = csv_preamble("lipschitz", cols);
        for (const auto& row : rows)
            csv += row.kind + "," + std::to_string(row.n) + "," + std::to_string(row.samples) +
                   "," + std::to_string(row.violations) + "," + fmt_g17(row.worst_ratio) + "\n";
        write_file(join_path(config.output_dir, "lipschitz.csv"), csv);
    }
    return rows;
}

}  // namespace bfly
