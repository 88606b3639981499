#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfly/butterfly.hpp"
#include "bfly/matrix.hpp"
#include "bfly/permutation.hpp"

namespace bfly {

enum class Scheme { genp, gepp, gerp, gecp };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Pivot selection rules, all 1-based positions in the current working matrix:
//  genp  - diagonal entry, no search.
//  gepp  - max |entry| in the leading column, ties to the smallest row.
//  gerp  - alternating column/row searches until the candidate is maximal in
//          both, starting from the leading column; ties to smallest index.
//  gecp  - max |entry| over the untriangularized block. With
//          candidate_tolerance set, every entry within
//          tol*eps_machine*(block max) of the block max is a candidate and
//          the column-major lexicographically first one (smallest column,
//          then smallest row) is chosen; without it, the first strict max in
//          a column-major scan wins.
struct PivotStrategy {
    Scheme scheme = Scheme::gepp;
    // Multiplier of eps_machine widening the GECP candidate search.
    std::optional<double> candidate_tolerance;
};

struct PivotStep {
    std::size_t step = 0;      // 1-based elimination step k
    std::size_t row_swap = 0;  // i_k >= k, equal to k when no swap
    std::size_t col_swap = 0;  // j_k >= k, equal to k when no swap
    double pivot_value = 0.0;
};

struct FactorizeOptions {
    bool trace = false;              // keep every intermediate state A^(k)
    bool record_candidates = false;  // keep the GECP candidate set per step
    bool parallel = true;            // OpenMP kernels for large blocks
};

struct GeFactorization {
    Permutation p;  // row permutation, P*A*Q = L*U
    Permutation q;  // column permutation; identity for genp/gepp
    DenseMatrix l;  // unit lower triangular
    DenseMatrix u;  // upper triangular
    std::vector<PivotStep> pivot_log;
    // Max |entry| of the untriangularized block at each step; step_max[0] is
    // ||A||_max.
    std::vector<double> step_max;
    // Optional: A^(1)..A^(N) snapshots (eliminated entries exactly zero).
    std::vector<DenseMatrix> trace;
    // Optional: 1-based candidate positions per GECP step, in the coordinates
    // of the working matrix at that step.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> candidates;

    // Pivot-log transpositions "(k i_k)...(2 i_2)(1 i_1)", largest k leftmost.
    std::string row_cycles() const;
    std::string col_cycles() const;
};

GeFactorization factorize(const DenseMatrix& a, const PivotStrategy& strategy,
                          const FactorizeOptions& options = {});

// Plain-loop single-threaded implementation kept as the reference the OpenMP
// kernels are tested against.
GeFactorization factorize_serial_reference(const DenseMatrix& a, const PivotStrategy& strategy);

// rho(A) = max_k ||A^(k)||_max / ||A||_max.
double growth_factor_max(const GeFactorization& fact, const DenseMatrix& a);

// rho_inf(A) = ||L||_inf * ||U||_inf / ||A||_inf.
double growth_factor_inf(const GeFactorization& fact, const DenseMatrix& a);

// max_j |U_jj| / |U_11|; identical to growth_factor_max for pivoted schemes
// on butterfly matrices, and the form the GENP distributional law is stated
// for.
double growth_factor_pivot_ratio(const GeFactorization& fact);

// True iff the diagonal pivot dominates the untriangularized block at every
// GENP step: |A^(k)_kk| >= block max - tol*||A||_max. Ties count as
// dominated. tol defaults to 1e3 * eps_machine.
bool is_completely_pivoted(const DenseMatrix& a, double tol = 1e3 * kEpsMachine,
                           std::string* diagnostic = nullptr);

// Closed-form GENP intermediate A^(k) of a scalar-simple butterfly matrix,
// computed by the block recursion, no elimination run. k in [1, N]; every
// cos(theta_j) must be nonzero.
DenseMatrix genp_intermediate(const AngleVector& theta, std::size_t k);

struct GecpBoundReport {
    double lhs = 0.0;  // trailing-block max of eta*B - eps*B^(k)
    double rhs = 0.0;  // |eta - eps| * |U_kk|
    bool holds = false;
};

// Trailing-block bound for scalar-simple theta with |tan(theta_{j+1})| <=
// |tan(theta_j)| <= 1 and |eps| <= |eta - eps|.
GecpBoundReport verify_gecp_inequality(const AngleVector& theta, double eta, double eps,
                                       std::size_t k);

}  // namespace bfly
