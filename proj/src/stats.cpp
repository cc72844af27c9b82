#include "compwalk/stats.hpp"

#include "compwalk/numeric.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

namespace compwalk {

double chi_square_stat(const std::vector<double>& expected,
                       const std::vector<std::uint64_t>& observed) {
    if (expected.size() != observed.size())
        throw DomainError("chi_square_stat: bin count mismatch");
    double stat = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (expected[i] <= 0.0) throw DomainError("chi_square_stat: nonpositive expected count");
        const double d = static_cast<double>(observed[i]) - expected[i];
        stat += d * d / expected[i];
    }
    return stat;
}

double chi_square_pvalue(double stat, int df) {
    if (df < 1) throw DomainError("chi_square_pvalue: need df >= 1");
    if (stat <= 0.0) return 1.0;
    return boost::math::gamma_q(df / 2.0, stat / 2.0);
}

double two_sample_chi_square(const std::vector<std::uint64_t>& a,
                             const std::vector<std::uint64_t>& b) {
    if (a.size() != b.size()) throw DomainError("two_sample_chi_square: bin count mismatch");
    double na = 0, nb = 0;
    for (auto v : a) na += static_cast<double>(v);
    for (auto v : b) nb += static_cast<double>(v);
    if (na == 0 || nb == 0) throw DomainError("two_sample_chi_square: empty sample");
    const double ra = std::sqrt(nb / na), rb = std::sqrt(na / nb);
    double stat = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = static_cast<double>(a[i]), bi = static_cast<double>(b[i]);
        if (ai + bi == 0.0) continue;
        const double d = ra * ai - rb * bi;
        stat += d * d / (ai + bi);
    }
    return stat;
}

double binomial_std_err(double p, std::uint64_t trials) {
    if (trials == 0) throw DomainError("binomial_std_err: zero trials");
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace compwalk
