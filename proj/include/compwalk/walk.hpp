#pragma once

#include "compwalk/numeric.hpp"

#include <string>
#include <vector>

namespace compwalk {

enum class WalkMode { exact, floating };

struct StepAtom {
    long offset;
    BigRat prob;
};

/// A validated integer step law. Probabilities are exact rationals summing to
/// one; `weights` holds them over the common denominator `weight_den`, the
/// representation the exact convolution engine works in.
struct StepSpec {
    std::vector<StepAtom> support;  // sorted by offset, offsets unique
    std::string name = "custom";
    BigRat mean;
    BigRat variance;
    long min_offset = 0;
    long max_offset = 0;
    bool symmetric = false;

    // gcd of step counts n >= 1 at which position 1 is reachable (0: never).
    long one_period_gcd = 0;
    // gcd of step counts n >= 1 at which position 0 is reachable (0: never).
    // This is the period of the return sequence; a_n = 0 off its multiples.
    long return_period_gcd = 0;
    bool aperiodic = false;  // one_period_gcd == 1

    BigInt weight_den;
    std::vector<BigInt> weights;

    bool mean_zero() const { return mean == 0; }
    long max_abs_offset() const { return std::max(std::labs(min_offset), std::labs(max_offset)); }
};

/// gcd of {n >= 1 : target is expressible as a sum of exactly n offsets}, or 0
/// if no such n exists. Exact for any finite offset list.
long reach_times_gcd(std::vector<long> offsets, long target);

/// Validates a raw support list: merges duplicate offsets, requires positive
/// probabilities summing to exactly 1, rejects single-atom (degenerate) laws,
/// and computes mean, variance and both period gcds.
StepSpec validate_step(std::vector<StepAtom> raw, std::string name = "custom");

/// Built-in laws: "pm1", "dice-diff", "uniform5", "m1p2", "geom2-diff:B".
StepSpec named_law(const std::string& name);

/// The distribution of S_n over a lattice window.
struct LatticeSlice {
    int n = 0;
    long lo = 0, hi = -1;  // inclusive window; empty when hi < lo
    WalkMode mode = WalkMode::floating;
    std::vector<double> pf;
    std::vector<BigRat> pr;
    double truncated_mass = 0.0;

    double at(long x) const;
    BigRat at_exact(long x) const;
};

/// Distributions of S_1..S_n by iterated convolution. Float mode prunes
/// window edges carrying less than tail_threshold of mass (accounted in
/// truncated_mass). Refuses requests whose materialized size exceeds the
/// cell budget; use return_table / killed_table for long horizons.
std::vector<LatticeSlice> step_power(const StepSpec& spec, int n_max, WalkMode mode,
                                     double tail_threshold = 1e-18,
                                     std::size_t max_cells = 30'000'000);

/// Return probabilities a'_n = P(S_n = 0), first-return probabilities a_n and
/// survival tail sums Q_n = P(tau > n). Exact mode stores integer numerators
/// at scale step_den^n.
struct ReturnTable {
    WalkMode mode = WalkMode::floating;
    int n_max = 0;
    BigInt step_den;
    std::vector<BigInt> a_prime_num, a_num, q_num;
    std::vector<double> a_prime_f, a_f, q_f;

    BigRat a_prime_exact(int n) const;
    BigRat a_exact(int n) const;
    BigRat q_exact(int n) const;
    double a_prime(int n) const;
    double a(int n) const;
    double q(int n) const;

    /// Renewal identity, 0 <= a_n <= a'_n, Q non-increasing; throws on violation.
    void verify() const;
};

ReturnTable return_table(const StepSpec& spec, int n_max, WalkMode mode,
                         double tail_threshold = 1e-18);

/// Taboo probabilities q_n(0,x) (origin forbidden at times 1..n-1), free
/// probabilities p_n(0,x), increments delta_n(x) = |p_n(0,x) - p_{n+1}(0,x)|,
/// and survival-from-x probabilities Qx(m,x), all resolved on |x| <= window.
/// Aggregates (origin value, full row sum, full row max) cover the whole line.
struct KilledTable {
    WalkMode mode = WalkMode::floating;
    int n_max = 0;
    int window = 0;
    BigInt step_den;

    // exact numerators at scale step_den^n (delta at step_den^(n+1))
    std::vector<std::vector<BigInt>> q_win_num, p_win_num, delta_win_num, qx_num;
    std::vector<BigInt> q_origin_num, q_row_sum_num, q_row_max_num;
    // float
    std::vector<std::vector<double>> q_win_f, p_win_f, delta_win_f, qx_f;
    std::vector<double> q_origin_f, q_row_sum_f, q_row_max_f;
    double truncated_mass = 0.0;

    double q(int n, long x) const;
    double p(int n, long x) const;
    double delta(int n, long x) const;
    double qx(int m, long x) const;
    double q_origin(int n) const;
    double q_row_sum(int n) const;
    double q_row_max(int n) const;
    BigRat q_exact(int n, long x) const;
    BigRat qx_exact(int m, long x) const;
    BigRat q_origin_exact(int n) const;
    BigRat q_row_sum_exact(int n) const;

    /// Taboo identities against a matching ReturnTable plus monotonicity and
    /// (for symmetric laws) window symmetry; throws on violation.
    void verify(const StepSpec& spec, const ReturnTable& rt) const;
};

KilledTable killed_table(const StepSpec& spec, int n_max, int window_radius, WalkMode mode,
                         double tail_threshold = 1e-18);

/// p_n(0,x) by trapezoidal quadrature of the characteristic-function inversion
/// integral. With points == 0 the rule is sized to integrate the trigonometric
/// polynomial exactly; an explicit smaller count sets accuracy_warning.
struct CharfunResult {
    double value = 0.0;
    int points = 0;
    bool accuracy_warning = false;
};

CharfunResult charfun_return(const StepSpec& spec, int n, long x, int quadrature_points = 0);

/// Scaled increment/taboo sequences whose boundedness reproduces the
/// regularity estimates: n^{5/2}|a_{n+s} - a_n|, n^{3/2} delta_n(x),
/// (1+x^2) sqrt(n) delta_n(x), n^{3/2} q_n(0,x)/sqrt(1+|x|), n q_n(0,x).
/// The increment stride s is the law's return period.
struct RegularityReport {
    int stride = 1;
    int window = 0;
    std::vector<long> ns;                // 1..n_max
    std::vector<double> a_increment;     // n^{5/2} |a_{n+s} - a_n|
    std::vector<double> delta_small;     // max over window of n^{3/2} delta_n(x)
    std::vector<double> delta_large;     // max over window of (1+x^2) sqrt(n) delta_n(x)
    std::vector<double> q_small;         // max over window of n^{3/2} q_n(0,x)/sqrt(1+|x|)
    std::vector<double> q_large;         // n * max over all x of q_n(0,x)

    /// Supremum of one sequence over n in [n_lo, n_hi].
    double window_sup(const std::vector<double>& seq, long n_lo, long n_hi) const;
};

RegularityReport regularity_check(const StepSpec& spec, int n_max, int window_radius,
                                  WalkMode mode = WalkMode::floating);

}  // namespace compwalk
