#include "bfly/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace bfly {

bool SignMatrix::is_plus_minus_one() const {
    for (std::int8_t v : entries)
        if (v == 0) return false;
    return true;
}

SignMatrix sign_matrix(const DenseMatrix& a) {
    SignMatrix s;
    s.rows = a.rows();
    s.cols = a.cols();
    s.entries.resize(a.rows() * a.cols());
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        const double v = a.data()[i];
        s.entries[i] = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    }
    return s;
}

bool hadamard_orthogonal(std::size_t n, const std::vector<std::int8_t>& entries) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = i; r < n; ++r) {
            std::int64_t dot = 0;
            for (std::size_t j = 0; j < n; ++j)
                dot += static_cast<std::int64_t>(entries[i * n + j]) *
                       static_cast<std::int64_t>(entries[r * n + j]);
            const std::int64_t want = (i == r) ? static_cast<std::int64_t>(n) : 0;
            if (dot != want) return false;
        }
    return true;
}

HadamardMatrix::HadamardMatrix(std::size_t n_order, std::vector<std::int8_t> entries)
    : n_(n_order), entries_(std::move(entries)) {
    if (entries_.size() != n_ * n_) throw DimensionError("HadamardMatrix: wrong entry count");
    for (std::int8_t v : entries_)
        if (v != 1 && v != -1) throw std::invalid_argument("HadamardMatrix: entries must be +-1");
    if (!hadamard_orthogonal(n_, entries_))
        throw std::invalid_argument("HadamardMatrix: H*H^T != N*I");
}

std::string HadamardMatrix::byte_key() const {
    std::string key(entries_.size(), '\0');
    for (std::size_t i = 0; i < entries_.size(); ++i) key[i] = entries_[i] > 0 ? '+' : '-';
    return key;
}

DenseMatrix HadamardMatrix::to_dense() const {
    DenseMatrix d(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) d(i, j) = (*this)(i, j);
    return d;
}

std::string HadamardMatrix::to_text() const {
    std::string out = std::to_string(n_) + "\n";
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) out += (*this)(i, j) > 0 ? '+' : '-';
        out += '\n';
    }
    return out;
}

HadamardMatrix HadamardMatrix::from_text(const std::string& text) {
    std::istringstream in(text);
    std::size_t n = 0;
    in >> n;
    std::string line;
    std::getline(in, line);
    std::vector<std::int8_t> entries;
    entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::getline(in, line);
        if (line.size() < n) throw std::invalid_argument("hadamard text: short row");
        for (std::size_t j = 0; j < n; ++j) {
            if (line[j] != '+' && line[j] != '-')
                throw std::invalid_argument("hadamard text: bad character");
            entries.push_back(line[j] == '+' ? 1 : -1);
        }
    }
    return HadamardMatrix(n, std::move(entries));
}

HatAngles::HatAngles(AngleVector hat) : angles(std::move(hat)) {
    for (double a : angles.angles) {
        const double q = a / (kPi / 4.0);
        const double nearest = std::round(q);
        const bool odd = std::fabs(std::fmod(nearest, 2.0)) == 1.0;
        if (!odd || std::fabs(q - nearest) > 1e-9)
            throw std::invalid_argument("HatAngles: angle not of the form pi/4 + m*pi/2");
    }
}

HatAngles hat_angles(const AngleVector& theta) {
    std::vector<double> hat(theta.angles.size());
    for (std::size_t j = 0; j < hat.size(); ++j) {
        const double a = theta.angles[j];
        if (std::fmod(a, kPi / 2) == 0.0)
            throw DegenerateAngleError("hat_angles: angle is a multiple of pi/2");
        hat[j] = (kPi / 4.0) * (2.0 * std::floor(2.0 * a / kPi) + 1.0);
    }
    return HatAngles(AngleVector(theta.kind, theta.n, std::move(hat)));
}

HadamardMatrix butterfly_hadamard(const AngleVector& theta) {
    const SignMatrix s = sign_matrix(build(theta));
    if (!s.is_plus_minus_one())
        throw DegenerateAngleError("butterfly_hadamard: zero entry; degenerate angle");
    return HadamardMatrix(s.rows, s.entries);
}

std::uint64_t count_hadamard_log2(ButterflyKind kind, std::size_t n) {
    const std::uint64_t N = std::uint64_t{1} << n;
    switch (kind) {
        case ButterflyKind::scalar_simple: return n + 1;
        case ButterflyKind::scalar_nonsimple: return 3 * (N / 2) - 1;
        case ButterflyKind::diagonal_simple: return N - n + 1;
        case ButterflyKind::diagonal_nonsimple: return (N / 2) * n + 1;
    }
    return 0;
}

std::string count_hadamard(ButterflyKind kind, std::size_t n) {
    // Decimal string of 2^e by repeated doubling of a digit vector.
    std::uint64_t e = count_hadamard_log2(kind, n);
    std::vector<int> digits{1};
    while (e-- > 0) {
        int carry = 0;
        for (int& d : digits) {
            const int v = d * 2 + carry;
            d = v % 10;
            carry = v / 10;
        }
        if (carry) digits.push_back(carry);
    }
    std::string out(digits.size(), '0');
    for (std::size_t i = 0; i < digits.size(); ++i)
        out[digits.size() - 1 - i] = static_cast<char>('0' + digits[i]);
    return out;
}

std::vector<HadamardMatrix> enumerate_hadamard(ButterflyKind kind, std::size_t n) {
    static constexpr double kHat[4] = {kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4};
    const std::size_t M = angle_count(kind, n);
    if (M > 12)
        throw std::invalid_argument("enumerate_hadamard: 4^" + std::to_string(M) +
                                    " inputs is infeasible");
    const std::uint64_t total = std::uint64_t{1} << (2 * M);

    std::set<std::string> keys;
    std::vector<HadamardMatrix> out;
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::set<std::string> local;
        std::vector<std::pair<std::string, std::vector<std::int8_t>>> found;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64)
#endif
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<double> angles(M);
            for (std::size_t j = 0; j < M; ++j) angles[j] = kHat[(code >> (2 * j)) & 3u];
            const HadamardMatrix h = butterfly_hadamard(AngleVector(kind, n, std::move(angles)));
            std::string key = h.byte_key();
            if (local.insert(key).second) found.emplace_back(std::move(key), h.entries());
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        for (auto& [key, entries] : found)
            if (keys.insert(key).second)
                out.emplace_back(HadamardMatrix(std::size_t{1} << n, std::move(entries)));
    }
    std::sort(out.begin(), out.end(), [](const HadamardMatrix& a, const HadamardMatrix& b) {
        return a.byte_key() < b.byte_key();
    });
    return out;
}

HadamardMatrix sample_hadamard(ButterflyKind kind, std::size_t n, Rng& rng) {
    static constexpr double kHat[4] = {kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4};
    std::vector<double> angles(angle_count(kind, n));
    for (double& a : angles) a = kHat[rng.below(4)];
    return butterfly_hadamard(AngleVector(kind, n, std::move(angles)));
}

bool hadamard_equivalent(const HadamardMatrix& a, const HadamardMatrix& b) {
    const std::size_t n = a.order();
    if (b.order() != n) return false;
    if (n > 4) throw std::invalid_argument("hadamard_equivalent: brute force limited to N <= 4");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end());
    do {
        for (std::size_t signs = 0; signs < (std::size_t{1} << n); ++signs) {
            // M = S P a; equivalent iff (b^T M)/n is a signed permutation.
            std::vector<int> m(n * n);
            for (std::size_t i = 0; i < n; ++i) {
                const int s = (signs >> i) & 1u ? -1 : 1;
                for (std::size_t j = 0; j < n; ++j) m[i * n + j] = s * a(perm[i], j);
            }
            std::vector<int> c(n * n, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    int dot = 0;
                    for (std::size_t t = 0; t < n; ++t) dot += b(t, i) * m[t * n + j];
                    c[i * n + j] = dot;
                }
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                std::size_t nonzero = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    const int v = c[i * n + j];
                    if (v != 0) {
                        ++nonzero;
                        if (std::abs(v) != static_cast<int>(n)) ok = false;
                    }
                }
                if (nonzero != 1) ok = false;
            }
            if (ok) return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace bfly
