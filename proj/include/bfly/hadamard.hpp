#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfly/butterfly.hpp"
#include "bfly/matrix.hpp"

namespace bfly {

// Componentwise sign of a real matrix; entries in {-1, 0, +1}.
struct SignMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::int8_t> entries;

    std::int8_t operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
    bool is_plus_minus_one() const;
};

SignMatrix sign_matrix(const DenseMatrix& a);

// Exact +-1 matrix of order N with H*H^T = N*I, verified in integer
// arithmetic on construction.
class HadamardMatrix {
  public:
    HadamardMatrix(std::size_t n_order, std::vector<std::int8_t> entries);

    std::size_t order() const { return n_; }
    std::int8_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    const std::vector<std::int8_t>& entries() const { return entries_; }

    // Row-major byte key used for deduplication.
    std::string byte_key() const;
    DenseMatrix to_dense() const;

    // Text format: first line N, then N lines of '+'/'-' characters.
    std::string to_text() const;
    static HadamardMatrix from_text(const std::string& text);

  private:
    std::size_t n_ = 0;
    std::vector<std::int8_t> entries_;
};

// H*H^T == N*I in 64-bit integer arithmetic; no tolerance.
bool hadamard_orthogonal(std::size_t n, const std::vector<std::int8_t>& entries);

// Quadrant representative pi/4 * (2*floor(2*theta/pi) + 1); every output is
// in {pi/4, 3pi/4, 5pi/4, 7pi/4}. Throws on multiples of pi/2.
struct HatAngles {
    AngleVector angles;
    explicit HatAngles(AngleVector hat);
};

HatAngles hat_angles(const AngleVector& theta);

// sgn(B(theta)) as an exact Hadamard matrix; equals sqrt(N)*B(hat(theta)).
HadamardMatrix butterfly_hadamard(const AngleVector& theta);

// log2 of the number of distinct butterfly Hadamard matrices of the kind:
// n+1, 3*2^(n-1)-1, 2^n-n+1, 2^(n-1)*n+1.
std::uint64_t count_hadamard_log2(ButterflyKind kind, std::size_t n);
// Same count as a decimal string (the counts overflow 64 bits quickly).
std::string count_hadamard(ButterflyKind kind, std::size_t n);

// All distinct Hadamard matrices over the 4^M hat-angle inputs. Refuses
// M > 12.
std::vector<HadamardMatrix> enumerate_hadamard(ButterflyKind kind, std::size_t n);

// Uniform hat angles, then butterfly_hadamard.
HadamardMatrix sample_hadamard(ButterflyKind kind, std::size_t n, Rng& rng);

// Signed-permutation equivalence, brute force; only orders <= 4.
bool hadamard_equivalent(const HadamardMatrix& a, const HadamardMatrix& b);

}  // namespace bfly
