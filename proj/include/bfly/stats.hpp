#pragma once

#include <span>
#include <vector>

namespace bfly {

struct KsResult {
    double statistic = 0.0;  // sup |F1 - F2|
    double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Kolmogorov survival function Q(lambda) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

// Chi-squared goodness-of-fit p-value against equal expected counts.
double chi_squared_uniform_p(std::span<const std::size_t> counts);

// Upper regularized incomplete gamma Q(a, x).
double gamma_q(double a, double x);

}  // namespace bfly
