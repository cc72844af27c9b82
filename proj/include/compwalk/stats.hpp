#pragma once

#include <cstdint>
#include <vector>

namespace compwalk {

/// Pearson statistic sum (O-E)^2/E; expected counts must be positive.
double chi_square_stat(const std::vector<double>& expected, const std::vector<std::uint64_t>& observed);

/// Upper-tail p-value of the chi-square distribution with df degrees of freedom.
double chi_square_pvalue(double stat, int df);

/// Two-sample homogeneity statistic over shared bins; df = bins - 1.
double two_sample_chi_square(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

/// Binomial standard error sqrt(p(1-p)/trials).
double binomial_std_err(double p, std::uint64_t trials);

}  // namespace compwalk
