#include "compwalk/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <thread>

namespace compwalk {

namespace mp = boost::multiprecision;

std::uint64_t substream_seed(std::uint64_t seed, std::uint32_t worker) {
    // SplitMix64 finalizer over the (seed, worker) pair.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(worker) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t bound) {
    if (bound < 2) return 0;
    const int bits = 64 - std::countl_zero(bound - 1);
    const std::uint64_t mask = bits >= 64 ? ~0ull : (1ull << bits) - 1;
    for (;;) {
        std::uint64_t v = g() & mask;
        if (v < bound) return v;
    }
}

int geometric_half(std::mt19937_64& g) {
    int k = 1;
    for (;;) {
        const std::uint64_t w = g();
        if (w != 0) return k + std::countr_zero(w);
        k += 64;  // 64 tails in a row; continue in the next word
    }
}

int effective_parallelism(int requested_workers) {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (const char* env = std::getenv("FIRST_RETURN_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) cap = std::min<long>(cap, v);
    }
    return std::max(1, std::min(requested_workers, cap));
}

namespace {

std::uint64_t worker_share(std::uint64_t total, int workers, std::uint32_t w) {
    const std::uint64_t base = total / workers;
    return base + (w < total % workers ? 1 : 0);
}

// Runs fn(worker) for each logical worker; the OS-thread count is capped by
// FIRST_RETURN_THREADS but the result only depends on the logical layout.
template <typename R, typename F>
R run_workers(int workers, F&& fn) {
    workers = std::max(1, workers);
    std::vector<R> results(workers);
    const int par = effective_parallelism(workers);
    if (par == 1) {
        for (int w = 0; w < workers; ++w) results[w] = fn(static_cast<std::uint32_t>(w));
    } else {
        std::atomic<int> next{0};
        auto pump = [&] {
            for (;;) {
                const int w = next.fetch_add(1);
                if (w >= workers) break;
                results[w] = fn(static_cast<std::uint32_t>(w));
            }
        };
        std::vector<std::thread> threads;
        threads.reserve(par);
        for (int i = 0; i < par; ++i) threads.emplace_back(pump);
        for (auto& t : threads) t.join();
    }
    R total = std::move(results[0]);
    for (int w = 1; w < workers; ++w) total.merge(results[w]);
    return total;
}

template <typename StepFn>
SimResult first_return_trials(StepFn&& step, std::uint64_t trials, std::uint64_t horizon,
                              std::uint64_t seed, std::uint32_t worker) {
    if (horizon < 1) throw DomainError("simulate: need horizon >= 1");
    SimResult r;
    r.trials = trials;
    r.horizon = horizon;
    r.seed = seed;
    r.histogram.assign(horizon + 1, 0);
    std::mt19937_64 g(substream_seed(seed, worker));
    for (std::uint64_t t = 0; t < trials; ++t) {
        long long pos = 0;
        bool returned = false;
        for (std::uint64_t k = 1; k <= horizon; ++k) {
            pos += step(g);
            if (pos == 0) {
                ++r.histogram[k];
                returned = true;
                break;
            }
        }
        if (!returned) ++r.censored;
    }
    return r;
}

// Exact finite-support sampler: a uniform draw below the common denominator
// selects the atom through cumulative integer weights.
struct FiniteSampler {
    std::vector<std::uint64_t> cum;
    std::vector<long> offsets;
    std::uint64_t den;

    explicit FiniteSampler(const StepSpec& spec) {
        if (msb(spec.weight_den) >= 63)
            throw ResourceError("simulate: common denominator of the step law exceeds 2^63");
        den = spec.weight_den.convert_to<std::uint64_t>();
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < spec.support.size(); ++i) {
            acc += spec.weights[i].convert_to<std::uint64_t>();
            cum.push_back(acc);
            offsets.push_back(spec.support[i].offset);
        }
    }

    long operator()(std::mt19937_64& g) const {
        const std::uint64_t r = uniform_below(g, den);
        std::size_t i = 0;
        while (cum[i] <= r) ++i;
        return offsets[i];
    }
};

}  // namespace

void SimResult::merge(const SimResult& other) {
    if (horizon != other.horizon || seed != other.seed)
        throw DomainError("SimResult::merge: mismatched runs");
    trials += other.trials;
    censored += other.censored;
    if (histogram.size() < other.histogram.size()) histogram.resize(other.histogram.size(), 0);
    for (std::size_t i = 0; i < other.histogram.size(); ++i) histogram[i] += other.histogram[i];
}

std::uint64_t SimResult::tail_count(std::uint64_t n) const {
    if (n > horizon) throw DomainError("SimResult::tail_count: n beyond horizon");
    std::uint64_t c = censored;
    for (std::uint64_t k = n + 1; k < histogram.size(); ++k) c += histogram[k];
    return c;
}

void SimResult::verify() const {
    std::uint64_t total = censored;
    for (auto c : histogram) total += c;
    if (total != trials) throw DomainError("SimResult: histogram + censored != trials");
}

SimResult simulate_game_stream(int faces, std::uint64_t trials, std::uint64_t horizon,
                               std::uint64_t seed, std::uint32_t worker) {
    if (faces < 2) throw DomainError("simulate game: need faces >= 2");
    const std::uint64_t f = static_cast<std::uint64_t>(faces);
    auto step = [f](std::mt19937_64& g) {
        return static_cast<long long>(uniform_below(g, f)) -
               static_cast<long long>(uniform_below(g, f));
    };
    return first_return_trials(step, trials, horizon, seed, worker);
}

SimResult simulate_game(int faces, std::uint64_t trials, std::uint64_t horizon, std::uint64_t seed,
                        int workers) {
    if (trials < 1) throw DomainError("simulate game: need trials >= 1");
    workers = std::max(1, workers);
    SimResult r = run_workers<SimResult>(workers, [&](std::uint32_t w) {
        return simulate_game_stream(faces, worker_share(trials, workers, w), horizon, seed, w);
    });
    r.workers = workers;
    return r;
}

SimResult simulate_walk_stream(const StepSpec& spec, std::uint64_t trials, std::uint64_t horizon,
                               std::uint64_t seed, std::uint32_t worker) {
    FiniteSampler sampler(spec);
    auto step = [&sampler](std::mt19937_64& g) { return static_cast<long long>(sampler(g)); };
    return first_return_trials(step, trials, horizon, seed, worker);
}

SimResult simulate_walk(const StepSpec& spec, std::uint64_t trials, std::uint64_t horizon,
                        std::uint64_t seed, int workers) {
    if (trials < 1) throw DomainError("simulate walk: need trials >= 1");
    workers = std::max(1, workers);
    SimResult r = run_workers<SimResult>(workers, [&](std::uint32_t w) {
        return simulate_walk_stream(spec, worker_share(trials, workers, w), horizon, seed, w);
    });
    r.workers = workers;
    return r;
}

SimResult simulate_walk_named(const std::string& law, std::uint64_t trials, std::uint64_t horizon,
                              std::uint64_t seed, int workers) {
    if (trials < 1) throw DomainError("simulate walk: need trials >= 1");
    workers = std::max(1, workers);
    if (law == "geom2-diff") {
        auto stream = [&](std::uint32_t w) {
            auto step = [](std::mt19937_64& g) {
                return static_cast<long long>(geometric_half(g)) -
                       static_cast<long long>(geometric_half(g));
            };
            return first_return_trials(step, worker_share(trials, workers, w), horizon, seed, w);
        };
        SimResult r = run_workers<SimResult>(workers, stream);
        r.workers = workers;
        return r;
    }
    return simulate_walk(named_law(law), trials, horizon, seed, workers);
}

// ---------------------------------------------------------------------------
// Composition pairs
// ---------------------------------------------------------------------------

namespace {

BigInt draw_big_below(std::mt19937_64& g, int bits, const BigInt& bound) {
    for (;;) {
        BigInt v = 0;
        int remaining = bits;
        while (remaining > 0) {
            const std::uint64_t w = g();
            const int take = std::min(64, remaining);
            v <<= take;
            v |= BigInt(w >> (64 - take));
            remaining -= take;
        }
        if (v < bound) return v;
    }
}

}  // namespace

PairSampler::PairSampler(int n) : n_(n) {
    if (n < 1) throw DomainError("PairSampler: need n >= 1");
    BigInt acc = 0;
    for (int k = 1; k <= n; ++k) {
        BigInt b = binomial(n - 1, k - 1);
        acc += b * b;
        cumulative_.push_back(acc);
    }
    total_ = acc;
    total_bits_ = static_cast<int>(msb(total_)) + 1;
}

int PairSampler::draw_k(std::mt19937_64& g) const {
    if (n_ == 1) return 1;
    BigInt r = draw_big_below(g, total_bits_, total_);
    // first k with cumulative > r
    int lo = 0, hi = n_ - 1;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (cumulative_[mid] > r) hi = mid; else lo = mid + 1;
    }
    return lo + 1;
}

std::vector<int> PairSampler::draw_cuts(int k, std::mt19937_64& g) const {
    // Floyd's uniform (k-1)-subset of {1..n-1}
    std::vector<int> cuts;
    std::vector<char> in(n_, 0);
    for (int j = n_ - k + 1; j <= n_ - 1; ++j) {
        const int t = static_cast<int>(uniform_below(g, static_cast<std::uint64_t>(j))) + 1;
        if (in[t]) {
            in[j] = 1;
            cuts.push_back(j);
        } else {
            in[t] = 1;
            cuts.push_back(t);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

PairSample PairSampler::sample(std::mt19937_64& g) const {
    PairSample s;
    s.n = n_;
    s.k = draw_k(g);
    const auto ca = draw_cuts(s.k, g);
    const auto cb = draw_cuts(s.k, g);
    s.irreducible = true;
    for (std::size_t j = 0; j < ca.size(); ++j) {
        if (ca[j] == cb[j]) {
            s.irreducible = false;
            break;
        }
    }
    auto to_parts = [this](const std::vector<int>& cuts) {
        std::vector<int> parts;
        int prev = 0;
        for (int c : cuts) {
            parts.push_back(c - prev);
            prev = c;
        }
        parts.push_back(n_ - prev);
        return parts;
    };
    s.parts_a = to_parts(ca);
    s.parts_b = to_parts(cb);
    return s;
}

void PairStats::merge(const PairStats& other) {
    if (n != other.n || seed != other.seed) throw DomainError("PairStats::merge: mismatched runs");
    samples += other.samples;
    irreducible += other.irreducible;
    for (std::size_t i = 0; i < other.k_histogram.size(); ++i) k_histogram[i] += other.k_histogram[i];
}

PairStats sample_pairs_stream(int n, std::uint64_t samples, std::uint64_t seed,
                              std::uint32_t worker) {
    PairSampler sampler(n);
    PairStats st;
    st.n = n;
    st.samples = samples;
    st.seed = seed;
    st.k_histogram.assign(n + 1, 0);
    std::mt19937_64 g(substream_seed(seed, worker));
    for (std::uint64_t i = 0; i < samples; ++i) {
        PairSample s = sampler.sample(g);
        ++st.k_histogram[s.k];
        st.irreducible += s.irreducible;
    }
    return st;
}

PairStats sample_pairs(int n, std::uint64_t samples, std::uint64_t seed, int workers) {
    if (samples < 1) throw DomainError("sample_pairs: need samples >= 1");
    workers = std::max(1, workers);
    PairStats r = run_workers<PairStats>(workers, [&](std::uint32_t w) {
        return sample_pairs_stream(n, worker_share(samples, workers, w), seed, w);
    });
    r.workers = workers;
    return r;
}

// ---------------------------------------------------------------------------
// Poissonized compositions
// ---------------------------------------------------------------------------

std::vector<int> poissonized_composition(int n, std::mt19937_64& g) {
    if (n < 1) throw DomainError("poissonized_composition: need n >= 1");
    std::vector<int> parts;
    int total = 0;
    for (;;) {
        const int y = geometric_half(g);
        if (total + y >= n) {
            parts.push_back(n - total);
            return parts;
        }
        parts.push_back(y);
        total += y;
    }
}

void PoissonizedStats::merge(const PoissonizedStats& other) {
    if (n != other.n || seed != other.seed)
        throw DomainError("PoissonizedStats::merge: mismatched runs");
    draws += other.draws;
    part_count_sum += other.part_count_sum;
    part_count_sq_sum += other.part_count_sq_sum;
    for (std::size_t i = 0; i < other.composition_histogram.size(); ++i)
        composition_histogram[i] += other.composition_histogram[i];
}

PoissonizedStats simulate_poissonized_stream(int n, std::uint64_t draws, std::uint64_t seed,
                                             std::uint32_t worker) {
    PoissonizedStats st;
    st.n = n;
    st.draws = draws;
    st.seed = seed;
    const bool keep_hist = n <= 20;
    if (keep_hist) st.composition_histogram.assign(std::size_t(1) << (n - 1), 0);
    std::mt19937_64 g(substream_seed(seed, worker));
    for (std::uint64_t i = 0; i < draws; ++i) {
        const auto parts = poissonized_composition(n, g);
        const double t = static_cast<double>(parts.size());
        st.part_count_sum += t;
        st.part_count_sq_sum += t * t;
        if (keep_hist) {
            std::uint64_t mask = 0;
            int prefix = 0;
            for (std::size_t j = 0; j + 1 < parts.size(); ++j) {
                prefix += parts[j];
                mask |= std::uint64_t(1) << (prefix - 1);
            }
            ++st.composition_histogram[mask];
        }
    }
    return st;
}

PoissonizedStats simulate_poissonized(int n, std::uint64_t draws, std::uint64_t seed, int workers) {
    if (draws < 1) throw DomainError("simulate_poissonized: need draws >= 1");
    workers = std::max(1, workers);
    PoissonizedStats r = run_workers<PoissonizedStats>(workers, [&](std::uint32_t w) {
        return simulate_poissonized_stream(n, worker_share(draws, workers, w), seed, w);
    });
    r.workers = workers;
    return r;
}

}  // namespace compwalk
