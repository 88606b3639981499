#include "bfly/permutation.hpp"

#include <algorithm>
#include <sstream>

namespace bfly {

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t v : images_) {
        if (v >= images_.size() || seen[v])
            throw std::invalid_argument("Permutation: image array is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> im(n);
    for (std::size_t i = 0; i < n; ++i) im[i] = i;
    return Permutation(std::move(im));
}

Permutation Permutation::transposition(std::size_t n, std::size_t a, std::size_t b) {
    auto p = identity(n);
    std::swap(p.images_[a], p.images_[b]);
    return p;
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
}

DenseMatrix Permutation::to_matrix() const {
    DenseMatrix m(size(), size());
    for (std::size_t i = 0; i < size(); ++i) m(i, images_[i]) = 1.0;
    return m;
}

std::string Permutation::cycle_transpositions() const {
    // Peel off swaps (k i_k) in increasing k; print in decreasing k.
    std::vector<std::size_t> w(size());
    for (std::size_t i = 0; i < size(); ++i) w[i] = i;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 0; k < size(); ++k) {
        std::size_t r = k;
        while (w[r] != images_[k]) ++r;
        if (r != k) {
            std::swap(w[k], w[r]);
            pairs.emplace_back(k + 1, r + 1);
        }
    }
    std::string out;
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it)
        out += "(" + std::to_string(it->first) + " " + std::to_string(it->second) + ")";
    return out;
}

Permutation Permutation::from_cycle_transpositions(const std::string& text, std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t pos = 0;
    while ((pos = text.find('(', pos)) != std::string::npos) {
        std::size_t close = text.find(')', pos);
        if (close == std::string::npos)
            throw std::invalid_argument("cycle form: unbalanced parenthesis");
        std::istringstream body(text.substr(pos + 1, close - pos - 1));
        std::size_t a = 0, b = 0;
        if (!(body >> a >> b) || a == 0 || b == 0 || a > n || b > n)
            throw std::invalid_argument("cycle form: bad transposition");
        pairs.emplace_back(a - 1, b - 1);
        pos = close + 1;
    }
    std::vector<std::size_t> im(n);
    for (std::size_t i = 0; i < n; ++i) im[i] = i;
    // Right-to-left: the rightmost printed swap is applied first.
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) std::swap(im[it->first], im[it->second]);
    return Permutation(std::move(im));
}

std::vector<std::size_t> Permutation::one_based() const {
    std::vector<std::size_t> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[i] = images_[i] + 1;
    return v;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw DimensionError("permutation compose: size mismatch");
    std::vector<std::size_t> im(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) im[i] = b[a[i]];
    return Permutation(std::move(im));
}

DenseMatrix apply_permutations(const Permutation& p, const DenseMatrix& a, const Permutation& q) {
    if (p.size() != a.rows() || q.size() != a.cols())
        throw DimensionError("apply_permutations: shape mismatch");
    const Permutation qinv = q.inverse();
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(p[i], qinv[j]);
    return out;
}

Permutation perfect_shuffle(std::size_t k, std::size_t n_total) {
    if (k == 0 || n_total % k != 0)
        throw std::invalid_argument("perfect_shuffle: k must divide n_total");
    const std::size_t m = n_total / k;
    std::vector<std::size_t> im(n_total);
    for (std::size_t beta = 0; beta < k; ++beta)
        for (std::size_t alpha = 0; alpha < m; ++alpha) im[beta * m + alpha] = alpha * k + beta;
    return Permutation(std::move(im));
}

}  // namespace bfly
