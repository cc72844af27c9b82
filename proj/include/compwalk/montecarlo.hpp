#pragma once

#include "compwalk/numeric.hpp"
#include "compwalk/walk.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace compwalk {

/// Worker substream seed: a SplitMix64 finalizer over (seed, worker index).
/// Every simulation routine in this module derives its per-worker generator
/// this way, which makes results a pure function of (seed, workers, params).
std::uint64_t substream_seed(std::uint64_t seed, std::uint32_t worker);

/// Unbiased uniform draw in [0, bound) by masked rejection.
std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t bound);

/// Geometric with P(k) = 2^-k, k >= 1, sampled exactly from random bits.
int geometric_half(std::mt19937_64& g);

/// First-return-time histogram from repeated trials.
struct SimResult {
    std::uint64_t trials = 0;
    std::uint64_t horizon = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::vector<std::uint64_t> histogram;  // histogram[n] = #{tau == n}, index 0 unused
    std::uint64_t censored = 0;            // trials with tau > horizon

    void merge(const SimResult& other);
    std::uint64_t tail_count(std::uint64_t n) const;  // #{tau > n}, needs n <= horizon
    void verify() const;                              // mass accounting
};

/// Two tokens advance by independent uniform die rolls until they collide.
SimResult simulate_game(int faces, std::uint64_t trials, std::uint64_t horizon, std::uint64_t seed,
                        int workers);
/// Single-substream variant (worker w of a multi-worker run).
SimResult simulate_game_stream(int faces, std::uint64_t trials, std::uint64_t horizon,
                               std::uint64_t seed, std::uint32_t worker);

/// First return to the origin for a validated finite-support law. Steps are
/// sampled exactly: an integer below the common denominator selects the atom.
SimResult simulate_walk(const StepSpec& spec, std::uint64_t trials, std::uint64_t horizon,
                        std::uint64_t seed, int workers);
SimResult simulate_walk_stream(const StepSpec& spec, std::uint64_t trials, std::uint64_t horizon,
                               std::uint64_t seed, std::uint32_t worker);

/// Named-law front end; "geom2-diff" runs the untruncated geometric-difference
/// sampler (two geometric draws per step), other names go through named_law().
SimResult simulate_walk_named(const std::string& law, std::uint64_t trials, std::uint64_t horizon,
                              std::uint64_t seed, int workers);

/// One uniform pair of equal-length compositions of n.
struct PairSample {
    int n = 0;
    int k = 0;
    std::vector<int> parts_a, parts_b;
    bool irreducible = false;
};

/// Cumulative big-integer weights C(n-1,k-1)^2 for drawing the part count.
class PairSampler {
  public:
    explicit PairSampler(int n);
    PairSample sample(std::mt19937_64& g) const;
    int n() const { return n_; }
    const BigInt& total() const { return total_; }

  private:
    int draw_k(std::mt19937_64& g) const;
    std::vector<int> draw_cuts(int k, std::mt19937_64& g) const;

    int n_;
    std::vector<BigInt> cumulative_;  // cumulative_[k-1] = sum_{j<=k} C(n-1,j-1)^2
    BigInt total_;
    int total_bits_;
};

struct PairStats {
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t irreducible = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::vector<std::uint64_t> k_histogram;  // k_histogram[k]
    void merge(const PairStats& other);
};

PairStats sample_pairs(int n, std::uint64_t samples, std::uint64_t seed, int workers);
PairStats sample_pairs_stream(int n, std::uint64_t samples, std::uint64_t seed,
                              std::uint32_t worker);

/// Uniform composition of n from geometric parts stopped at total >= n.
std::vector<int> poissonized_composition(int n, std::mt19937_64& g);

struct PoissonizedStats {
    int n = 0;
    std::uint64_t draws = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    // composition histogram keyed by cut bitmask (only kept for n <= 20)
    std::vector<std::uint64_t> composition_histogram;
    double part_count_sum = 0.0;
    double part_count_sq_sum = 0.0;
    double mean_parts() const { return part_count_sum / draws; }
    void merge(const PoissonizedStats& other);
};

PoissonizedStats simulate_poissonized(int n, std::uint64_t draws, std::uint64_t seed, int workers);
PoissonizedStats simulate_poissonized_stream(int n, std::uint64_t draws, std::uint64_t seed,
                                             std::uint32_t worker);

/// Worker count after applying the FIRST_RETURN_THREADS cap; >= 1.
int effective_parallelism(int requested_workers);

}  // namespace compwalk
