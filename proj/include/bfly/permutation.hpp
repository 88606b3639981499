#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bfly/matrix.hpp"

namespace bfly {

// Permutation in one-line notation, 0-based. The array is read in gather
// form: the matrix of p has row i equal to standard basis vector e_{p[i]},
// so (to_matrix(p) * A) picks row p[i] of A into row i.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> images);
    static Permutation identity(std::size_t n);
    // Single transposition (a b) on {0..n-1}.
    static Permutation transposition(std::size_t n, std::size_t a, std::size_t b);

    std::size_t size() const { return images_.size(); }
    std::size_t operator[](std::size_t i) const { return images_[i]; }
    const std::vector<std::size_t>& images() const { return images_; }

    bool is_identity() const;
    Permutation inverse() const;

    bool operator==(const Permutation& other) const { return images_ == other.images_; }

    DenseMatrix to_matrix() const;

    // Factored transposition form "(k i_k)...(2 i_2)(1 i_1)" with i_k >= k,
    // 1-based, printed with the largest k leftmost; empty string for the
    // identity. Applying the printed swaps right-to-left to the identity
    // array reproduces the one-line form.
    std::string cycle_transpositions() const;
    static Permutation from_cycle_transpositions(const std::string& text, std::size_t n);

    // 1-based image list, e.g. [1,3,2].
    std::vector<std::size_t> one_based() const;

  private:
    std::vector<std::size_t> images_;
};

// Matrix-product composition: to_matrix(a*b) == to_matrix(a)*to_matrix(b).
Permutation operator*(const Permutation& a, const Permutation& b);

// P*A*Q for permutation matrices P = to_matrix(p), Q = to_matrix(q), applied
// as index reorderings without forming the permutation matrices.
DenseMatrix apply_permutations(const Permutation& p, const DenseMatrix& a, const Permutation& q);

// Perfect shuffle P with P*(A kron I_k)*P^T = I_k kron A for every A of
// order n_total/k. Requires k to divide n_total.
Permutation perfect_shuffle(std::size_t k, std::size_t n_total);

}  // namespace bfly
