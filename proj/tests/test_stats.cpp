#include <doctest.h>

#include <cmath>
#include <vector>

#include "bfly/rng.hpp"
#include "bfly/stats.hpp"

using namespace bfly;

TEST_CASE("kolmogorov survival endpoints") {
    CHECK(kolmogorov_q(0.0) == 1.0);
    CHECK(kolmogorov_q(10.0) < 1e-12);
    CHECK(kolmogorov_q(0.8) > kolmogorov_q(1.2));
}

TEST_CASE("ks accepts identical distributions and rejects shifted ones") {
    Rng rng(191);
    std::vector<double> a(3000), b(3000), c(3000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.uniform();
        b[i] = rng.uniform();
        c[i] = rng.uniform() + 0.15;
    }
    CHECK(ks_two_sample(a, b).p_value > 0.01);
    CHECK(ks_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("gamma_q against known values") {
    // Q(1/2, x/2) = erfc(sqrt(x/2)) for chi^2 with one degree of freedom.
    for (double x : {0.5, 1.0, 4.0}) {
        CHECK(gamma_q(0.5, 0.5 * x) == doctest::Approx(std::erfc(std::sqrt(0.5 * x))).epsilon(1e-10));
    }
    // Q(1, x) = exp(-x).
    CHECK(gamma_q(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("chi squared uniformity") {
    const std::vector<std::size_t> even{100, 104, 96, 100};
    CHECK(chi_squared_uniform_p(even) > 0.5);
    const std::vector<std::size_t> skew{10, 300, 10, 80};
    CHECK(chi_squared_uniform_p(skew) < 1e-6);
}

TEST_CASE("rng streams are independent of order") {
    Rng a = Rng::for_stream(1234, 7);
    Rng b = Rng::for_stream(1234, 7);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(Rng::for_stream(1234, 7).next_u64() != Rng::for_stream(1234, 8).next_u64());
    Rng u(5);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}
