#include "compwalk/compositions.hpp"

#include <algorithm>
#include <cstdint>

namespace compwalk {

namespace {

void check_n(int n, int n_max, const char* what) {
    if (n < 1 || n > n_max)
        throw DomainError(std::string(what) + ": n=" + std::to_string(n) + " outside computed range [1," +
                          std::to_string(n_max) + "]");
}

}  // namespace

const BigInt& CountTable::f(int n) const {
    check_n(n, n_max, "CountTable::f");
    return f1[n];
}

const BigInt& CountTable::total(int n) const {
    check_n(n, n_max, "CountTable::total");
    return totals1[n];
}

const BigInt& CountTable::f(int n, int k) const {
    check_n(n, n_max, "CountTable::f2");
    if (k < 1 || k > k_max || k > n) throw DomainError("CountTable::f2: k out of range");
    return f2[n][k];
}

const BigInt& CountTable::total(int n, int k) const {
    check_n(n, n_max, "CountTable::totals2");
    if (k < 1 || k > k_max || k > n) throw DomainError("CountTable::totals2: k out of range");
    return totals2[n][k];
}

BigRat CountTable::p_exact(int n) const {
    check_n(n, n_max, "CountTable::p_exact");
    return BigRat(f1[n], totals1[n]);
}

void CountTable::verify() const {
    for (int n = 1; n <= n_max; ++n) {
        if (totals1[n] != total_pairs1(n)) throw DomainError("CountTable: totals1 mismatch");
        if (n >= 2 && f1[n] >= totals1[n]) throw DomainError("CountTable: f1 not below total");
        BigInt bound = BigInt(1) << (2 * (n - 1));  // 4^(n-1)
        if (n >= 2 && f1[n] >= bound) throw DomainError("CountTable: f1 exceeds 4^(n-1)");
    }
    if (f1[1] != 1) throw DomainError("CountTable: f(1) != 1");
    if (has_two_var()) {
        for (int n = 1; n <= n_max; ++n) {
            BigInt row_f = 0, row_t = 0;
            int klim = std::min(n, k_max);
            for (int k = 1; k <= klim; ++k) {
                if (f2[n][k] > totals2[n][k]) throw DomainError("CountTable: f2 > totals2");
                if (totals2[n][k] != total_pairs2(n, k)) throw DomainError("CountTable: totals2 mismatch");
                row_f += f2[n][k];
                row_t += totals2[n][k];
            }
            if (f2[n][1] != 1) throw DomainError("CountTable: f2(n,1) != 1");
            if (n >= 2 && n <= k_max && f2[n][n] != 0) throw DomainError("CountTable: f2(n,n) != 0");
            if (k_max >= n) {
                if (row_f != f1[n]) throw DomainError("CountTable: column sum != f1");
                if (row_t != totals1[n]) throw DomainError("CountTable: totals column sum != totals1");
            }
        }
    }
}

BigInt total_pairs2(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw DomainError("total_pairs2: need 1 <= k <= n");
    BigInt b = binomial(n - 1, k - 1);
    return b * b;
}

BigInt total_pairs1(int n) {
    if (n < 1) throw DomainError("total_pairs1: need n >= 1");
    return binomial(2 * n - 2, n - 1);
}

CountTable irreducible_counts1(int n_max) {
    if (n_max < 1) throw DomainError("irreducible_counts1: need n_max >= 1");
    CountTable t;
    t.n_max = n_max;
    t.totals1.resize(n_max + 1);
    t.f1.resize(n_max + 1);
    t.totals1[1] = 1;
    for (int n = 1; n < n_max; ++n) {
        // C(2n, n) = C(2n-2, n-1) * 2(2n-1)/n, exact after the multiply
        t.totals1[n + 1] = t.totals1[n] * (2 * (2 * n - 1)) / n;
    }
    for (int n = 1; n <= n_max; ++n) {
        BigInt s = 0;
        for (int m = 1; m < n; ++m) s += t.f1[m] * t.totals1[n - m];
        t.f1[n] = t.totals1[n] - s;
    }
    return t;
}

CountTable irreducible_counts2(int n_max, int k_max) {
    if (n_max < 1 || k_max < 1 || k_max > n_max)
        throw DomainError("irreducible_counts2: need 1 <= k_max <= n_max");
    CountTable t = irreducible_counts1(n_max);
    t.k_max = k_max;
    t.f2.assign(n_max + 1, {});
    t.totals2.assign(n_max + 1, {});
    for (int n = 1; n <= n_max; ++n) {
        int klim = std::min(n, k_max);
        t.f2[n].assign(klim + 1, 0);
        t.totals2[n].assign(klim + 1, 0);
        for (int k = 1; k <= klim; ++k) t.totals2[n][k] = total_pairs2(n, k);
    }
    // T(n,k) = f(n,k) + sum_{m<n, j<k} f(m,j) T(n-m, k-j), inverted row-major.
    for (int n = 1; n <= n_max; ++n) {
        int klim = std::min(n, k_max);
        for (int k = 1; k <= klim; ++k) {
            BigInt s = 0;
            for (int m = 1; m < n; ++m) {
                int jlim = std::min({k - 1, m, static_cast<int>(t.f2[m].size()) - 1});
                for (int j = 1; j <= jlim; ++j) {
                    if (k - j > n - m) continue;
                    s += t.f2[m][j] * t.totals2[n - m][k - j];
                }
            }
            t.f2[n][k] = t.totals2[n][k] - s;
        }
    }
    return t;
}

BruteForceCounts brute_force_irreducible(int n) {
    if (n < 1) throw DomainError("brute_force_irreducible: need n >= 1");
    if (n > 14)
        throw DomainError("brute_force_irreducible: n=" + std::to_string(n) +
                          " too large for exhaustive enumeration (limit 14)");
    // A composition of n is a subset of cut points {1..n-1}; the sorted cut
    // list is exactly its list of proper prefix sums.
    std::vector<std::vector<std::vector<int>>> cuts_by_k(n + 1);
    const std::uint32_t masks = n >= 1 ? (1u << (n - 1)) : 1u;
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        std::vector<int> cuts;
        for (int pos = 1; pos <= n - 1; ++pos)
            if (mask & (1u << (pos - 1))) cuts.push_back(pos);
        cuts_by_k[static_cast<int>(cuts.size()) + 1].push_back(std::move(cuts));
    }
    BruteForceCounts r;
    r.n = n;
    r.f2_row.assign(n + 1, 0);
    for (int k = 1; k <= n; ++k) {
        const auto& bucket = cuts_by_k[k];
        long long count = 0;
        for (const auto& a : bucket) {
            for (const auto& b : bucket) {
                bool irreducible = true;
                for (int j = 0; j < k - 1; ++j) {
                    if (a[j] == b[j]) {
                        irreducible = false;
                        break;
                    }
                }
                count += irreducible;
            }
        }
        r.f2_row[k] = count;
        r.f1 += count;
        r.pairs_checked += BigInt(bucket.size()) * BigInt(bucket.size());
    }
    return r;
}

BigRat irreducible_probability(const CountTable& t, int n) {
    return t.p_exact(n);
}

}  // namespace compwalk
