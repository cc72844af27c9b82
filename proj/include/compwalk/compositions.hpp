#pragma once

#include "compwalk/numeric.hpp"

#include <vector>

namespace compwalk {

// Exact counts of composition pairs with equal part counts whose proper
// prefix sums never coincide at the same index, together with totals and
// the induced probability p(n) = f(n) / C(2n-2, n-1).
struct CountTable {
    int n_max = 0;
    int k_max = 0;  // 0: the (n,k)-resolved tables were not built

    // f2[n][k], totals2[n][k] for 1 <= k <= min(n, k_max); row index 0 unused.
    std::vector<std::vector<BigInt>> f2;
    std::vector<std::vector<BigInt>> totals2;

    std::vector<BigInt> f1;       // f1[n], 1 <= n <= n_max
    std::vector<BigInt> totals1;  // C(2n-2, n-1)

    bool has_two_var() const { return k_max > 0; }

    const BigInt& f(int n) const;
    const BigInt& total(int n) const;
    const BigInt& f(int n, int k) const;
    const BigInt& total(int n, int k) const;
    BigRat p_exact(int n) const;

    /// Checks every structural invariant; throws DomainError on violation.
    void verify() const;
};

/// C(n-1, k-1)^2: ordered pairs of compositions of n into k parts.
BigInt total_pairs2(int n, int k);

/// C(2n-2, n-1): ordered pairs of compositions of n into equal part counts.
BigInt total_pairs1(int n);

/// One-variable renewal inversion: f(n) = T(n) - sum_{m<n} f(m) T(n-m).
CountTable irreducible_counts1(int n_max);

/// Two-variable renewal inversion over (n, k); also fills the 1-D arrays.
CountTable irreducible_counts2(int n_max, int k_max);

struct BruteForceCounts {
    int n = 0;
    BigInt f1;
    std::vector<BigInt> f2_row;  // f2_row[k], 1 <= k <= n
    BigInt pairs_checked;
};

/// Independent oracle: enumerates every pair of equal-length compositions of n
/// (as cut-point subsets of {1..n-1}) and tests the prefix-sum condition
/// literally. Refuses n > 14.
BruteForceCounts brute_force_irreducible(int n);

/// f(n) / C(2n-2, n-1) from a computed table; range-checked.
BigRat irreducible_probability(const CountTable& t, int n);

}  // namespace compwalk
