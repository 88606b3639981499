#include "bfly/elimination.hpp"

#include <algorithm>
#include <cmath>

namespace bfly {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::genp: return "genp";
        case Scheme::gepp: return "gepp";
        case Scheme::gerp: return "gerp";
        case Scheme::gecp: return "gecp";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    for (auto s : {Scheme::genp, Scheme::gepp, Scheme::gerp, Scheme::gecp})
        if (name == scheme_name(s)) return s;
    throw std::invalid_argument("unknown pivoting scheme: " + name);
}

namespace {

std::string cycles_from_log(const std::vector<PivotStep>& log, bool rows) {
    std::string out;
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        const std::size_t target = rows ? it->row_swap : it->col_swap;
        if (target != it->step)
            out += "(" + std::to_string(it->step) + " " + std::to_string(target) + ")";
    }
    return out;
}

// Working state for one factorization. W holds the untriangularized block and
// the finished U rows; multipliers go to L so eliminated entries in W are
// exact zeros.
struct Engine {
    std::size_t n;
    DenseMatrix w;
    DenseMatrix l;
    std::vector<std::size_t> rowg, colg;
    bool parallel;

    explicit Engine(const DenseMatrix& a, bool par)
        : n(a.rows()), w(a), l(DenseMatrix::identity(a.rows())), rowg(a.rows()), colg(a.rows()),
          parallel(par) {
        for (std::size_t i = 0; i < n; ++i) rowg[i] = colg[i] = i;
    }

    // OpenMP kernels engage only when the block is large enough to amortize
    // the team fork; small blocks take the plain loops.
    static constexpr std::size_t kParallelCutoff = 256;

    double block_max(std::size_t k) const {
        double m = 0.0;
        const std::size_t nn = n;
#ifdef _OPENMP
        if (parallel && nn - k >= kParallelCutoff) {
#pragma omp parallel for reduction(max : m)
            for (std::size_t i = k; i < nn; ++i) {
                const double* row = w.row_ptr(i);
                double local = 0.0;
                for (std::size_t j = k; j < nn; ++j) local = std::max(local, std::fabs(row[j]));
                m = std::max(m, local);
            }
            return m;
        }
#endif
        for (std::size_t i = k; i < nn; ++i) {
            const double* row = w.row_ptr(i);
            for (std::size_t j = k; j < nn; ++j) m = std::max(m, std::fabs(row[j]));
        }
        return m;
    }

    // Column search: first row index attaining the column max on rows >= k.
    std::size_t col_argmax(std::size_t k, std::size_t col) const {
        std::size_t best_i = k;
        double best = -1.0;
        for (std::size_t i = k; i < n; ++i) {
            const double v = std::fabs(w(i, col));
            if (v > best) {
                best = v;
                best_i = i;
            }
        }
        return best_i;
    }

    std::size_t row_argmax(std::size_t k, std::size_t row) const {
        std::size_t best_j = k;
        double best = -1.0;
        const double* r = w.row_ptr(row);
        for (std::size_t j = k; j < n; ++j) {
            const double v = std::fabs(r[j]);
            if (v > best) {
                best = v;
                best_j = j;
            }
        }
        return best_j;
    }

    // First strict max in a column-major scan of the block.
    std::pair<std::size_t, std::size_t> column_major_argmax(std::size_t k) const {
        std::size_t pi = k, pj = k;
        double best = -1.0;
        for (std::size_t j = k; j < n; ++j)
            for (std::size_t i = k; i < n; ++i) {
                const double v = std::fabs(w(i, j));
                if (v > best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        return {pi, pj};
    }

    void swap_rows(std::size_t a, std::size_t b, std::size_t k) {
        if (a == b) return;
        for (std::size_t j = 0; j < n; ++j) std::swap(w(a, j), w(b, j));
        // Multiplier columns settled so far travel with their rows.
        for (std::size_t j = 0; j < k; ++j) std::swap(l(a, j), l(b, j));
        std::swap(rowg[a], rowg[b]);
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < n; ++i) std::swap(w(i, a), w(i, b));
        std::swap(colg[a], colg[b]);
    }

    void eliminate(std::size_t k) {
        const double pivot = w(k, k);
        const std::size_t nn = n;
        const double* wk = w.row_ptr(k);
        auto update_row = [&](std::size_t i) {
            double* wi = w.row_ptr(i);
            const double m = wi[k] / pivot;
            l(i, k) = m;
            wi[k] = 0.0;
            if (m != 0.0)
                for (std::size_t j = k + 1; j < nn; ++j) wi[j] -= m * wk[j];
        };
#ifdef _OPENMP
        if (parallel && nn - k >= kParallelCutoff) {
#pragma omp parallel for
            for (std::size_t i = k + 1; i < nn; ++i) update_row(i);
            return;
        }
#endif
        for (std::size_t i = k + 1; i < nn; ++i) update_row(i);
    }
};

}  // namespace

std::string GeFactorization::row_cycles() const { return cycles_from_log(pivot_log, true); }
std::string GeFactorization::col_cycles() const { return cycles_from_log(pivot_log, false); }

GeFactorization factorize(const DenseMatrix& a, const PivotStrategy& strategy,
                          const FactorizeOptions& options) {
    if (!a.square()) throw DimensionError("factorize: matrix must be square");
    const std::size_t n = a.rows();
    Engine eng(a, options.parallel);

    GeFactorization fact;
    fact.pivot_log.reserve(n);
    fact.step_max.reserve(n);
    if (options.trace) fact.trace.reserve(n);

    for (std::size_t k = 0; k < n; ++k) {
        if (options.trace) fact.trace.push_back(eng.w);
        const double block_max = eng.block_max(k);
        fact.step_max.push_back(block_max);

        std::size_t pi = k, pj = k;
        switch (strategy.scheme) {
            case Scheme::genp:
                break;
            case Scheme::gepp:
                pi = eng.col_argmax(k, k);
                break;
            case Scheme::gerp: {
                pi = eng.col_argmax(k, k);
                // Alternate row/column searches until maximal in both.
                for (;;) {
                    const std::size_t j2 = eng.row_argmax(k, pi);
                    if (std::fabs(eng.w(pi, j2)) <= std::fabs(eng.w(pi, pj))) break;
                    pj = j2;
                    const std::size_t i2 = eng.col_argmax(k, pj);
                    if (std::fabs(eng.w(i2, pj)) <= std::fabs(eng.w(pi, pj))) break;
                    pi = i2;
                }
                break;
            }
            case Scheme::gecp: {
                if (strategy.candidate_tolerance) {
                    const double slack = *strategy.candidate_tolerance * kEpsMachine * block_max;
                    std::vector<std::pair<std::size_t, std::size_t>> cand;
                    for (std::size_t j = k; j < n; ++j)
                        for (std::size_t i = k; i < n; ++i)
                            if (block_max - std::fabs(eng.w(i, j)) <= slack)
                                cand.emplace_back(i, j);
                    pi = cand.front().first;
                    pj = cand.front().second;
                    if (options.record_candidates) {
                        std::vector<std::pair<std::size_t, std::size_t>> one_based;
                        one_based.reserve(cand.size());
                        for (auto& [i, j] : cand) one_based.emplace_back(i + 1, j + 1);
                        fact.candidates.push_back(std::move(one_based));
                    }
                } else {
                    auto [i, j] = eng.column_major_argmax(k);
                    pi = i;
                    pj = j;
                    if (options.record_candidates)
                        fact.candidates.push_back({{pi + 1, pj + 1}});
                }
                break;
            }
        }

        eng.swap_rows(k, pi, k);
        eng.swap_cols(k, pj);
        const double pivot = eng.w(k, k);
        fact.pivot_log.push_back({k + 1, pi + 1, pj + 1, pivot});
        if (std::fabs(pivot) < kSingularPivot) {
            if (strategy.scheme == Scheme::genp)
                throw SingularityError("genp: singular leading minor at step " +
                                       std::to_string(k + 1));
            throw SingularityError(std::string(scheme_name(strategy.scheme)) +
                                   ": pivot below 1e-300 at step " + std::to_string(k + 1));
        }
        if (k + 1 < n) eng.eliminate(k);
    }

    // U is what is left in the working matrix; eliminated entries are zeros.
    fact.u = std::move(eng.w);
    fact.l = std::move(eng.l);
    fact.p = Permutation(std::move(eng.rowg));
    fact.q = Permutation(std::move(eng.colg)).inverse();
    return fact;
}

// Straightforward single-threaded elimination, written independently of the
// Engine kernels; the OpenMP path is required to match it bit for bit.
GeFactorization factorize_serial_reference(const DenseMatrix& a, const PivotStrategy& strategy) {
    if (!a.square()) throw DimensionError("factorize: matrix must be square");
    const std::size_t n = a.rows();
    DenseMatrix w = a;
    DenseMatrix l = DenseMatrix::identity(n);
    std::vector<std::size_t> rowg(n), colg(n);
    for (std::size_t i = 0; i < n; ++i) rowg[i] = colg[i] = i;

    GeFactorization fact;
    for (std::size_t k = 0; k < n; ++k) {
        double block_max = 0.0;
        for (std::size_t j = k; j < n; ++j)
            for (std::size_t i = k; i < n; ++i) block_max = std::max(block_max, std::fabs(w(i, j)));
        fact.step_max.push_back(block_max);

        std::size_t pi = k, pj = k;
        auto col_argmax = [&](std::size_t col) {
            std::size_t best_i = k;
            double best = -1.0;
            for (std::size_t i = k; i < n; ++i)
                if (std::fabs(w(i, col)) > best) { best = std::fabs(w(i, col)); best_i = i; }
            return best_i;
        };
        auto row_argmax = [&](std::size_t row) {
            std::size_t best_j = k;
            double best = -1.0;
            for (std::size_t j = k; j < n; ++j)
                if (std::fabs(w(row, j)) > best) { best = std::fabs(w(row, j)); best_j = j; }
            return best_j;
        };
        switch (strategy.scheme) {
            case Scheme::genp:
                break;
            case Scheme::gepp:
                pi = col_argmax(k);
                break;
            case Scheme::gerp:
                pi = col_argmax(k);
                for (;;) {
                    std::size_t j2 = row_argmax(pi);
                    if (std::fabs(w(pi, j2)) <= std::fabs(w(pi, pj))) break;
                    pj = j2;
                    std::size_t i2 = col_argmax(pj);
                    if (std::fabs(w(i2, pj)) <= std::fabs(w(pi, pj))) break;
                    pi = i2;
                }
                break;
            case Scheme::gecp:
                if (strategy.candidate_tolerance) {
                    const double slack = *strategy.candidate_tolerance * kEpsMachine * block_max;
                    bool found = false;
                    for (std::size_t j = k; j < n && !found; ++j)
                        for (std::size_t i = k; i < n && !found; ++i)
                            if (block_max - std::fabs(w(i, j)) <= slack) {
                                pi = i;
                                pj = j;
                                found = true;
                            }
                } else {
                    double best = -1.0;
                    for (std::size_t j = k; j < n; ++j)
                        for (std::size_t i = k; i < n; ++i)
                            if (std::fabs(w(i, j)) > best) {
                                best = std::fabs(w(i, j));
                                pi = i;
                                pj = j;
                            }
                }
                break;
        }

        if (pi != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(pi, j));
            for (std::size_t j = 0; j < k; ++j) std::swap(l(k, j), l(pi, j));
            std::swap(rowg[k], rowg[pi]);
        }
        if (pj != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(w(i, k), w(i, pj));
            std::swap(colg[k], colg[pj]);
        }
        const double pivot = w(k, k);
        fact.pivot_log.push_back({k + 1, pi + 1, pj + 1, pivot});
        if (std::fabs(pivot) < kSingularPivot)
            throw SingularityError(std::string(scheme_name(strategy.scheme)) +
                                   ": pivot below 1e-300 at step " + std::to_string(k + 1));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = w(i, k) / pivot;
            l(i, k) = m;
            w(i, k) = 0.0;
            if (m != 0.0)
                for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= m * w(k, j);
        }
    }
    fact.u = std::move(w);
    fact.l = std::move(l);
    fact.p = Permutation(std::move(rowg));
    fact.q = Permutation(std::move(colg)).inverse();
    return fact;
}

double growth_factor_max(const GeFactorization& fact, const DenseMatrix& a) {
    const double denom = max_norm(a);
    double top = 0.0;
    for (double v : fact.step_max) top = std::max(top, v);
    return top / denom;
}

double growth_factor_inf(const GeFactorization& fact, const DenseMatrix& a) {
    return inf_norm(fact.l) * inf_norm(fact.u) / inf_norm(a);
}

double growth_factor_pivot_ratio(const GeFactorization& fact) {
    double top = 0.0;
    for (std::size_t j = 0; j < fact.u.rows(); ++j)
        top = std::max(top, std::fabs(fact.u(j, j)));
    return top / std::fabs(fact.u(0, 0));
}

bool is_completely_pivoted(const DenseMatrix& a, double tol, std::string* diagnostic) {
    if (!a.square()) throw DimensionError("is_completely_pivoted: matrix must be square");
    const std::size_t n = a.rows();
    const double slack = tol * max_norm(a);
    DenseMatrix w = a;
    for (std::size_t k = 0; k < n; ++k) {
        double block_max = 0.0;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j) block_max = std::max(block_max, std::fabs(w(i, j)));
        const double pivot = std::fabs(w(k, k));
        if (pivot < block_max - slack) {
            if (diagnostic)
                *diagnostic = "pivot dominated at step " + std::to_string(k + 1) +
                              (pivot < kSingularPivot ? " (singular pivot)" : "");
            return false;
        }
        if (pivot < kSingularPivot) {
            // Nothing left above the tolerance; the remaining steps are trivially
            // dominated and elimination cannot continue.
            if (diagnostic)
                *diagnostic = "singular pivot at step " + std::to_string(k + 1) +
                              ", remaining block negligible";
            return true;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = w(i, k) / w(k, k);
            w(i, k) = 0.0;
            if (m != 0.0)
                for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= m * w(k, j);
        }
    }
    return true;
}

namespace {

void require_scalar_simple(const AngleVector& theta, const char* who) {
    if (theta.kind != ButterflyKind::scalar_simple)
        throw std::invalid_argument(std::string(who) + ": scalar_simple angles required");
}

// A^(k) of B = R_theta kron A, assembled from the intermediates of A.
DenseMatrix genp_intermediate_rec(std::span<const double> angles, std::size_t k) {
    const std::size_t n = angles.size();
    if (n == 0) return DenseMatrix{{1.0}};
    const std::size_t N = std::size_t{1} << n;
    const std::size_t half = N / 2;
    const double top = angles[n - 1];
    const double c = std::cos(top), s = std::sin(top), sec = 1.0 / c;
    if (std::fabs(c) < 1e-12)
        throw DegenerateAngleError("genp_intermediate: cos(theta) vanishes");
    auto sub = angles.first(n - 1);
    DenseMatrix b(N, N);
    if (k <= half) {
        const DenseMatrix ak = genp_intermediate_rec(sub, k);
        const DenseMatrix a = genp_intermediate_rec(sub, 1);
        // Zero pattern keeps only rows >= k of A^(k).
        for (std::size_t i = 0; i < half; ++i)
            for (std::size_t j = 0; j < half; ++j) {
                const double zak = (i + 1 >= k) ? ak(i, j) : 0.0;
                b(i, j) = c * ak(i, j);
                b(i, half + j) = s * ak(i, j);
                b(half + i, j) = -s * zak;
                b(half + i, half + j) = sec * (a(i, j) - s * s * zak);
            }
    } else {
        const std::size_t j_step = k - half;
        const DenseMatrix u_half = genp_intermediate_rec(sub, half);
        const DenseMatrix aj = genp_intermediate_rec(sub, j_step);
        for (std::size_t i = 0; i < half; ++i)
            for (std::size_t j = 0; j < half; ++j) {
                b(i, j) = c * u_half(i, j);
                b(i, half + j) = s * u_half(i, j);
                b(half + i, half + j) = sec * aj(i, j);
            }
    }
    return b;
}

}  // namespace

DenseMatrix genp_intermediate(const AngleVector& theta, std::size_t k) {
    require_scalar_simple(theta, "genp_intermediate");
    if (k == 0 || k > theta.order())
        throw std::invalid_argument("genp_intermediate: k out of range");
    return genp_intermediate_rec(theta.angles, k);
}

GecpBoundReport verify_gecp_inequality(const AngleVector& theta, double eta, double eps,
                                       std::size_t k) {
    require_scalar_simple(theta, "verify_gecp_inequality");
    const std::size_t N = theta.order();
    if (k == 0 || k > N) throw std::invalid_argument("verify_gecp_inequality: k out of range");
    // angles[0] carries the largest |tan|, non-increasing from there.
    for (std::size_t j = 0; j < theta.n; ++j) {
        const double t = std::fabs(std::tan(theta.angles[j]));
        if (t > 1.0 + 1e-12)
            throw std::invalid_argument("verify_gecp_inequality: |tan(theta_j)| must be <= 1");
        if (j > 0 && t > std::fabs(std::tan(theta.angles[j - 1])) + 1e-12)
            throw std::invalid_argument("verify_gecp_inequality: |tan| must be non-increasing");
    }
    if (!(std::fabs(eps) <= std::fabs(eta - eps)))
        throw std::invalid_argument("verify_gecp_inequality: need |eps| <= |eta - eps|");

    const DenseMatrix b = build(theta);
    const DenseMatrix bk = genp_intermediate(theta, k);
    const DenseMatrix u = genp_intermediate(theta, N);
    GecpBoundReport rep;
    for (std::size_t i = k - 1; i < N; ++i)
        for (std::size_t j = k - 1; j < N; ++j)
            rep.lhs = std::max(rep.lhs, std::fabs(eta * b(i, j) - eps * bk(i, j)));
    rep.rhs = std::fabs(eta - eps) * std::fabs(u(k - 1, k - 1));
    rep.holds = rep.lhs <= rep.rhs + 1e-12 * max_norm(b);
    return rep;
}

}  // namespace bfly
