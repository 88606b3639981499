#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bfly/matrix.hpp"
#include "bfly/rng.hpp"

namespace bfly {

// The four butterfly families: (C,S) scalar or diagonal per recursion level,
// sub-blocks shared (simple) or independent (nonsimple).
enum class ButterflyKind { scalar_simple, scalar_nonsimple, diagonal_simple, diagonal_nonsimple };

const char* kind_name(ButterflyKind kind);
ButterflyKind kind_from_name(const std::string& name);

// Number of input angles for order N = 2^n: n, 2^n-1, 2^n-1, n*2^(n-1).
std::size_t angle_count(ButterflyKind kind, std::size_t n);

// Angle vector generating a butterfly matrix of order 2^n. Storage order:
// scalar_simple keeps angles[j-1] = theta_j with theta_n the outermost
// Kronecker factor; the other kinds store levels top-down (level n first),
// blocks left to right within a level, diagonal slots in order within a
// block. Angles are reduced into [0, 2*pi).
struct AngleVector {
    ButterflyKind kind = ButterflyKind::scalar_simple;
    std::size_t n = 0;
    std::vector<double> angles;

    AngleVector() = default;
    AngleVector(ButterflyKind kind, std::size_t n, std::vector<double> angles);

    std::size_t order() const { return std::size_t{1} << n; }
};

// Index into AngleVector::angles for recursion level (1-based, level n is the
// top), block within the level, and diagonal slot within the block.
std::size_t angle_index(const AngleVector& theta, std::size_t level, std::size_t block,
                        std::size_t slot);

// Clockwise rotation [[cos,sin],[-sin,cos]].
DenseMatrix rotation(double theta);

// Dense butterfly matrix, assembled by the block recursion.
DenseMatrix build(const AngleVector& theta);

struct FlopCount {
    std::uint64_t flops = 0;
};

// B(theta)*x via n in-place stride rotation passes; O(N log N) flops.
std::vector<double> fast_apply(const AngleVector& theta, std::span<const double> x,
                               FlopCount* count = nullptr);

// All angles iid Uniform[0, 2*pi); scalar_simple draws are Haar on the group.
AngleVector sample(ButterflyKind kind, std::size_t n, Rng& rng);

// Lipschitz constant of theta -> B(theta) from the 2-norm on angles to the
// Frobenius norm: sqrt(N), sqrt(2(N-1)), sqrt(2(N-1)), sqrt(2n).
double lipschitz_constant(ButterflyKind kind, std::size_t n);

struct LipschitzReport {
    double lhs = 0.0;  // ||B(theta) - B(theta+eps)||_F
    double rhs = 0.0;  // constant * ||eps||_2
    bool holds = false;
};

// eps is used raw in the bound (not reduced mod 2*pi).
LipschitzReport lipschitz_check(const AngleVector& theta, std::span<const double> eps);

// Givens rotation: identity with the rotation embedded at rows/cols i < j.
DenseMatrix givens(double theta, std::size_t i, std::size_t j, std::size_t n_total);

// Product of n(n-1)/2 Givens rotations in lexicographic (i,j) order; spans
// SO(n_total) and is Lipschitz with constant sqrt(n(n-1)).
DenseMatrix so_rotation(std::span<const double> thetas, std::size_t n_total);

}  // namespace bfly
