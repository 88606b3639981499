#include "bfly/butterfly.hpp"

#include <cmath>
#include <stdexcept>

namespace bfly {

const char* kind_name(ButterflyKind kind) {
    switch (kind) {
        case ButterflyKind::scalar_simple: return "scalar_simple";
        case ButterflyKind::scalar_nonsimple: return "scalar_nonsimple";
        case ButterflyKind::diagonal_simple: return "diagonal_simple";
        case ButterflyKind::diagonal_nonsimple: return "diagonal_nonsimple";
    }
    return "?";
}

ButterflyKind kind_from_name(const std::string& name) {
    for (auto k : {ButterflyKind::scalar_simple, ButterflyKind::scalar_nonsimple,
                   ButterflyKind::diagonal_simple, ButterflyKind::diagonal_nonsimple})
        if (name == kind_name(k)) return k;
    throw std::invalid_argument("unknown butterfly kind: " + name);
}

std::size_t angle_count(ButterflyKind kind, std::size_t n) {
    const std::size_t N = std::size_t{1} << n;
    switch (kind) {
        case ButterflyKind::scalar_simple: return n;
        case ButterflyKind::scalar_nonsimple: return N - 1;
        case ButterflyKind::diagonal_simple: return N - 1;
        case ButterflyKind::diagonal_nonsimple: return n * (N / 2);
    }
    return 0;
}

AngleVector::AngleVector(ButterflyKind kind_, std::size_t n_, std::vector<double> angles_)
    : kind(kind_), n(n_), angles(std::move(angles_)) {
    if (angles.size() != angle_count(kind, n))
        throw DimensionError("AngleVector: wrong number of angles");
    for (double& a : angles) a = reduce_angle(a);
}

std::size_t angle_index(const AngleVector& theta, std::size_t level, std::size_t block,
                        std::size_t slot) {
    const std::size_t n = theta.n;
    switch (theta.kind) {
        case ButterflyKind::scalar_simple:
            return level - 1;
        case ButterflyKind::scalar_nonsimple:
            return (std::size_t{1} << (n - level)) - 1 + block;
        case ButterflyKind::diagonal_simple:
            return (std::size_t{1} << n) - (std::size_t{1} << level) + slot;
        case ButterflyKind::diagonal_nonsimple:
            return (n - level) * (std::size_t{1} << (n - 1)) +
                   block * (std::size_t{1} << (level - 1)) + slot;
    }
    return 0;
}

DenseMatrix rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return DenseMatrix{{c, s}, {-s, c}};
}

namespace {

DenseMatrix build_node(const AngleVector& theta, std::size_t level, std::size_t block) {
    if (level == 0) return DenseMatrix{{1.0}};
    const bool simple = theta.kind == ButterflyKind::scalar_simple ||
                        theta.kind == ButterflyKind::diagonal_simple;
    const DenseMatrix a1 = build_node(theta, level - 1, simple ? 0 : 2 * block);
    const DenseMatrix a2 = simple ? a1 : build_node(theta, level - 1, 2 * block + 1);
    const bool scalar = theta.kind == ButterflyKind::scalar_simple ||
                        theta.kind == ButterflyKind::scalar_nonsimple;
    const std::size_t half = std::size_t{1} << (level - 1);
    DenseMatrix b(2 * half, 2 * half);
    // [[C*A1, S*A2], [-S*A1, C*A2]] with diagonal (C,S); scalar kinds use one
    // angle for every slot of the level.
    for (std::size_t t = 0; t < half; ++t) {
        const double ang = theta.angles[angle_index(theta, level, block, scalar ? 0 : t)];
        const double c = std::cos(ang), s = std::sin(ang);
        for (std::size_t j = 0; j < half; ++j) {
            b(t, j) = c * a1(t, j);
            b(t, half + j) = s * a2(t, j);
            b(half + t, j) = -s * a1(t, j);
            b(half + t, half + j) = c * a2(t, j);
        }
    }
    return b;
}

}  // namespace

DenseMatrix build(const AngleVector& theta) { return build_node(theta, theta.n, 0); }

std::vector<double> fast_apply(const AngleVector& theta, std::span<const double> x,
                               FlopCount* count) {
    const std::size_t N = theta.order();
    if (x.size() != N) throw DimensionError("fast_apply: vector length mismatch");
    const bool scalar = theta.kind == ButterflyKind::scalar_simple ||
                        theta.kind == ButterflyKind::scalar_nonsimple;
    std::vector<double> y(x.begin(), x.end());
    // Innermost level first; each level rotates N/2 disjoint pairs.
    for (std::size_t level = 1; level <= theta.n; ++level) {
        const std::size_t half = std::size_t{1} << (level - 1);
        const std::size_t block_size = half * 2;
        for (std::size_t block = 0; block < N / block_size; ++block) {
            const std::size_t base = block * block_size;
            for (std::size_t t = 0; t < half; ++t) {
                const double ang =
                    theta.angles[angle_index(theta, level, block, scalar ? 0 : t)];
                const double c = std::cos(ang), s = std::sin(ang);
                const double u = y[base + t], v = y[base + half + t];
                y[base + t] = c * u + s * v;
                y[base + half + t] = -s * u + c * v;
            }
        }
    }
    if (count) count->flops += 6 * (N / 2) * theta.n;
    return y;
}

AngleVector sample(ButterflyKind kind, std::size_t n, Rng& rng) {
    std::vector<double> angles(angle_count(kind, n));
    for (double& a : angles) a = rng.uniform_angle();
    return AngleVector(kind, n, std::move(angles));
}

double lipschitz_constant(ButterflyKind kind, std::size_t n) {
    const double N = static_cast<double>(std::size_t{1} << n);
    switch (kind) {
        case ButterflyKind::scalar_simple: return std::sqrt(N);
        case ButterflyKind::scalar_nonsimple: return std::sqrt(2.0 * (N - 1.0));
        case ButterflyKind::diagonal_simple: return std::sqrt(2.0 * (N - 1.0));
        case ButterflyKind::diagonal_nonsimple: return std::sqrt(2.0 * static_cast<double>(n));
    }
    return 0.0;
}

LipschitzReport lipschitz_check(const AngleVector& theta, std::span<const double> eps) {
    if (eps.size() != theta.angles.size())
        throw DimensionError("lipschitz_check: perturbation length mismatch");
    std::vector<double> shifted = theta.angles;
    double eps_norm_sq = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        shifted[i] += eps[i];
        eps_norm_sq += eps[i] * eps[i];
    }
    const AngleVector perturbed(theta.kind, theta.n, std::move(shifted));
    LipschitzReport r;
    r.lhs = frobenius_norm(build(theta) - build(perturbed));
    r.rhs = lipschitz_constant(theta.kind, theta.n) * std::sqrt(eps_norm_sq);
    r.holds = r.lhs <= r.rhs + 1e-12;
    return r;
}

DenseMatrix givens(double theta, std::size_t i, std::size_t j, std::size_t n_total) {
    if (!(i < j && j < n_total)) throw std::invalid_argument("givens: need i < j < n_total");
    DenseMatrix g = DenseMatrix::identity(n_total);
    const double c = std::cos(theta), s = std::sin(theta);
    g(i, i) = c;
    g(i, j) = s;
    g(j, i) = -s;
    g(j, j) = c;
    return g;
}

DenseMatrix so_rotation(std::span<const double> thetas, std::size_t n_total) {
    if (thetas.size() != n_total * (n_total - 1) / 2)
        throw DimensionError("so_rotation: need n(n-1)/2 angles");
    DenseMatrix a = DenseMatrix::identity(n_total);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n_total; ++i)
        for (std::size_t j = i + 1; j < n_total; ++j) a = a * givens(thetas[idx++], i, j, n_total);
    return a;
}

}  // namespace bfly
