#include "compwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>

namespace compwalk {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------------------
// Period structure
// ---------------------------------------------------------------------------

namespace {

long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// Inverse of a modulo m for gcd(a, m) == 1 (extended Euclid).
long mod_inverse(long a, long m) {
    long t = 0, new_t = 1, r = m, new_r = mod_pos(a, m);
    while (new_r != 0) {
        long q = r / new_r;
        long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return mod_pos(t, m);
}

// One-sided supports (all offsets >= 0, at least one > 0): positions never
// decrease, so reachability of a fixed target is a finite DP.
long one_sided_gcd(const std::vector<long>& offsets, long target) {
    bool has_zero = offsets.front() == 0;
    if (target == 0) return has_zero ? 1 : 0;
    if (target < 0) return 0;
    std::vector<char> cur(target + 1, 0), next(target + 1, 0);
    cur[0] = 1;
    long g = 0;
    for (long n = 1; n <= target; ++n) {
        std::fill(next.begin(), next.end(), 0);
        for (long pos = 0; pos <= target; ++pos) {
            if (!cur[pos]) continue;
            for (long o : offsets)
                if (o > 0 && pos + o <= target) next[pos + o] = 1;
        }
        if (next[target]) {
            // zero offsets pad a path to every longer length
            if (has_zero) return 1;
            g = std::gcd(g, n);
        }
        std::swap(cur, next);
    }
    return g;
}

}  // namespace

long reach_times_gcd(std::vector<long> offsets, long target) {
    if (offsets.empty()) throw DomainError("reach_times_gcd: empty support");
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    if (offsets.size() == 1) {
        long o = offsets.front();
        if (o == 0) return target == 0 ? 1 : 0;
        if (target % o == 0 && target / o >= 1) return target / o;
        return 0;
    }
    bool has_neg = offsets.front() < 0, has_pos = offsets.back() > 0;
    if (!(has_neg && has_pos)) {
        if (!has_pos) {
            for (long& o : offsets) o = -o;
            std::sort(offsets.begin(), offsets.end());
            target = -target;
        }
        return one_sided_gcd(offsets, target);
    }
    // Two-sided support. Every position after n steps is congruent to
    // n*o0 mod h where h = gcd of offset differences, and conversely every
    // admissible residue class of n is realized from some point on. The
    // reachable times therefore form (a tail of) the arithmetic progression
    // solving n*o0 = target (mod h), whose gcd is gcd(a, h/g).
    long o0 = offsets.front();
    long h = 0;
    for (long o : offsets) h = std::gcd(h, o - o0);
    long r = mod_pos(o0, h);
    long t = mod_pos(target, h);
    long g = std::gcd(r, h);
    if (g == 0) g = h;
    if (t % g != 0) return 0;
    long m = h / g;
    long a;
    if (m == 1) {
        a = 1;
    } else {
        a = mod_pos(mod_inverse(r / g, m) * ((t / g) % m), m);
        if (a == 0) a = m;
    }
    return std::gcd(a, m);
}

// ---------------------------------------------------------------------------
// StepSpec
// ---------------------------------------------------------------------------

StepSpec validate_step(std::vector<StepAtom> raw, std::string name) {
    if (raw.empty()) throw DomainError("step law: empty support");
    std::map<long, BigRat> merged;
    for (const auto& a : raw) {
        if (a.prob <= 0) throw DomainError("step law: probabilities must be positive");
        merged[a.offset] += a.prob;
    }
    StepSpec s;
    s.name = std::move(name);
    BigRat sum;
    for (auto& [off, p] : merged) {
        sum += p;
        s.support.push_back({off, p});
    }
    if (sum != 1)
        throw DomainError("step law: probabilities must sum to exactly 1 (got " + rat_to_string(sum) +
                          ")");
    if (s.support.size() == 1)
        throw DomainError(s.support[0].offset == 0
                              ? "step law: degenerate walk (all offsets zero)"
                              : "step law: degenerate walk (deterministic step)");
    for (const auto& a : s.support) {
        s.mean += BigRat(a.offset) * a.prob;
        s.variance += BigRat(a.offset) * BigRat(a.offset) * a.prob;
    }
    s.variance -= s.mean * s.mean;
    s.min_offset = s.support.front().offset;
    s.max_offset = s.support.back().offset;
    s.symmetric = true;
    for (const auto& a : s.support) {
        auto it = merged.find(-a.offset);
        if (it == merged.end() || it->second != a.prob) {
            s.symmetric = false;
            break;
        }
    }
    std::vector<long> offsets;
    for (const auto& a : s.support) offsets.push_back(a.offset);
    s.one_period_gcd = reach_times_gcd(offsets, 1);
    s.return_period_gcd = reach_times_gcd(offsets, 0);
    s.aperiodic = s.one_period_gcd == 1;
    s.weight_den = 1;
    for (const auto& a : s.support)
        s.weight_den = lcm(s.weight_den, BigInt(mp::denominator(a.prob)));
    for (const auto& a : s.support)
        s.weights.push_back(BigInt(mp::numerator(a.prob)) * (s.weight_den / mp::denominator(a.prob)));
    return s;
}

StepSpec named_law(const std::string& name) {
    std::vector<StepAtom> atoms;
    if (name == "pm1") {
        atoms = {{-1, BigRat(1, 2)}, {1, BigRat(1, 2)}};
    } else if (name == "dice-diff") {
        for (long i = -5; i <= 5; ++i) atoms.push_back({i, BigRat(6 - std::labs(i), 36)});
    } else if (name == "uniform5") {
        for (long i = -2; i <= 2; ++i) atoms.push_back({i, BigRat(1, 5)});
    } else if (name == "m1p2") {
        atoms = {{-1, BigRat(2, 3)}, {2, BigRat(1, 3)}};
    } else if (name.rfind("geom2-diff", 0) == 0) {
        if (name == "geom2-diff")
            throw DomainError(
                "geom2-diff requires a truncation bound for exact tables: use geom2-diff:B "
                "(the simulator handles the untruncated law)");
        long b;
        try {
            b = std::stol(name.substr(std::string("geom2-diff:").size()));
        } catch (const std::exception&) {
            throw DomainError("malformed law name: " + name);
        }
        if (b < 1 || b > 60) throw DomainError("geom2-diff:B needs 1 <= B <= 60");
        BigRat total;
        for (long i = -b; i <= b; ++i) total += BigRat(1, BigInt(1) << std::labs(i));
        for (long i = -b; i <= b; ++i)
            atoms.push_back({i, BigRat(1, BigInt(1) << std::labs(i)) / total});
    } else {
        throw DomainError("unknown law name: " + name +
                          " (known: pm1, dice-diff, uniform5, m1p2, geom2-diff:B)");
    }
    return validate_step(std::move(atoms), name);
}

// ---------------------------------------------------------------------------
// Convolution walkers
// ---------------------------------------------------------------------------

namespace {

class FloatWalker {
  public:
    FloatWalker(const StepSpec& spec, double tail_threshold)
        : threshold_(tail_threshold), lo_(0), n_(0), truncated_(0.0) {
        for (const auto& a : spec.support) {
            offs_.push_back(a.offset);
            probs_.push_back(rat_as_double(a.prob));
        }
        min_off_ = spec.min_offset;
        span_ = static_cast<std::size_t>(spec.max_offset - spec.min_offset);
        cur_.assign(1, 1.0);
    }

    void advance() {
        next_.assign(cur_.size() + span_, 0.0);
        for (std::size_t i = 0; i < offs_.size(); ++i) {
            const double p = probs_[i];
            const std::size_t base = static_cast<std::size_t>(offs_[i] - min_off_);
            double* out = next_.data() + base;
            const double* in = cur_.data();
            const std::size_t len = cur_.size();
            for (std::size_t j = 0; j < len; ++j) out[j] += p * in[j];
        }
        lo_ += min_off_;
        ++n_;
        cur_.swap(next_);
        prune();
    }

    void kill_origin() {
        if (lo_ <= 0 && static_cast<std::size_t>(-lo_) < cur_.size()) cur_[-lo_] = 0.0;
    }

    int n() const { return n_; }
    long lo() const { return lo_; }
    const std::vector<double>& vals() const { return cur_; }
    double truncated() const { return truncated_; }

    double at(long x) const {
        long i = x - lo_;
        if (i < 0 || static_cast<std::size_t>(i) >= cur_.size()) return 0.0;
        return cur_[i];
    }

    double sum() const {  // compensated: feeds exact-identity checks
        double s = 0.0, c = 0.0;
        for (double v : cur_) {
            double y = v - c;
            double t = s + y;
            c = (t - s) - y;
            s = t;
        }
        return s;
    }

    double max_val() const { return cur_.empty() ? 0.0 : *std::max_element(cur_.begin(), cur_.end()); }

  private:
    void prune() {
        std::size_t b = 0, e = cur_.size();
        while (b < e && cur_[b] < threshold_) truncated_ += cur_[b++];
        while (e > b && cur_[e - 1] < threshold_) truncated_ += cur_[--e];
        if (b == 0 && e == cur_.size()) return;
        if (b > 0) std::copy(cur_.begin() + b, cur_.begin() + e, cur_.begin());
        cur_.resize(e - b);
        lo_ += static_cast<long>(b);
    }

    std::vector<long> offs_;
    std::vector<double> probs_;
    long min_off_ = 0;
    std::size_t span_ = 0;
    double threshold_;
    std::vector<double> cur_, next_;
    long lo_;
    int n_;
    double truncated_;
};

// Numerators of P(S_n = x) at implicit scale weight_den^n.
class ExactWalker {
  public:
    explicit ExactWalker(const StepSpec& spec) : lo_(0), n_(0) {
        for (const auto& a : spec.support) offs_.push_back(a.offset);
        weights_ = spec.weights;
        min_off_ = spec.min_offset;
        span_ = static_cast<std::size_t>(spec.max_offset - spec.min_offset);
        cur_.assign(1, BigInt(1));
    }

    void advance() {
        next_.assign(cur_.size() + span_, BigInt(0));
        for (std::size_t i = 0; i < offs_.size(); ++i) {
            const std::size_t base = static_cast<std::size_t>(offs_[i] - min_off_);
            const BigInt& w = weights_[i];
            for (std::size_t j = 0; j < cur_.size(); ++j) {
                if (cur_[j] != 0) next_[base + j] += w * cur_[j];
            }
        }
        lo_ += min_off_;
        ++n_;
        cur_.swap(next_);
    }

    void kill_origin() {
        if (lo_ <= 0 && static_cast<std::size_t>(-lo_) < cur_.size()) cur_[-lo_] = 0;
    }

    int n() const { return n_; }
    long lo() const { return lo_; }
    const std::vector<BigInt>& vals() const { return cur_; }

    BigInt at(long x) const {
        long i = x - lo_;
        if (i < 0 || static_cast<std::size_t>(i) >= cur_.size()) return 0;
        return cur_[i];
    }

    BigInt sum() const {
        BigInt s = 0;
        for (const auto& v : cur_) s += v;
        return s;
    }

    BigInt max_val() const {
        BigInt m = 0;
        for (const auto& v : cur_) if (v > m) m = v;
        return m;
    }

  private:
    std::vector<long> offs_;
    std::vector<BigInt> weights_;
    long min_off_ = 0;
    std::size_t span_ = 0;
    std::vector<BigInt> cur_, next_;
    long lo_;
    int n_;
};

void check_exact_budget(const StepSpec& spec, long n_max, const char* what) {
    // Final-slice footprint: span*n cells of ~n*log2(D)/8 bytes each.
    double bits = static_cast<double>(msb(spec.weight_den) + 1);
    double span = static_cast<double>(spec.max_offset - spec.min_offset);
    double bytes = span * static_cast<double>(n_max) * static_cast<double>(n_max) * bits / 8.0;
    if (bytes > 512.0 * 1024 * 1024)
        throw ResourceError(std::string(what) +
                            ": exact mode at this horizon would need >512 MiB for one lattice "
                            "slice; use float mode");
}

}  // namespace

// ---------------------------------------------------------------------------
// step_power
// ---------------------------------------------------------------------------

double LatticeSlice::at(long x) const {
    if (x < lo || x > hi) return 0.0;
    if (mode == WalkMode::floating) return pf[x - lo];
    return rat_as_double(pr[x - lo]);
}

BigRat LatticeSlice::at_exact(long x) const {
    if (mode != WalkMode::exact) throw DomainError("LatticeSlice: exact access on float slice");
    if (x < lo || x > hi) return BigRat(0);
    return pr[x - lo];
}

std::vector<LatticeSlice> step_power(const StepSpec& spec, int n_max, WalkMode mode,
                                     double tail_threshold, std::size_t max_cells) {
    if (n_max < 1) throw DomainError("step_power: need n_max >= 1");
    const std::size_t span = static_cast<std::size_t>(spec.max_offset - spec.min_offset);
    const std::size_t est = (static_cast<std::size_t>(n_max) * (n_max + 1) / 2) * span + n_max;
    if (est > max_cells)
        throw ResourceError("step_power: ~" + std::to_string(est) +
                            " lattice cells exceed the budget; use return_table/killed_table "
                            "streaming APIs or float mode with a tail threshold");
    std::vector<LatticeSlice> out;
    out.reserve(n_max);
    if (mode == WalkMode::floating) {
        FloatWalker w(spec, tail_threshold);
        for (int n = 1; n <= n_max; ++n) {
            w.advance();
            LatticeSlice s;
            s.n = n;
            s.mode = mode;
            s.lo = w.lo();
            s.hi = w.lo() + static_cast<long>(w.vals().size()) - 1;
            s.pf = w.vals();
            s.truncated_mass = w.truncated();
            out.push_back(std::move(s));
        }
    } else {
        check_exact_budget(spec, n_max, "step_power");
        ExactWalker w(spec);
        BigInt den = 1;
        for (int n = 1; n <= n_max; ++n) {
            w.advance();
            den *= spec.weight_den;
            LatticeSlice s;
            s.n = n;
            s.mode = mode;
            s.lo = w.lo();
            s.hi = w.lo() + static_cast<long>(w.vals().size()) - 1;
            s.pr.reserve(w.vals().size());
            for (const auto& v : w.vals()) s.pr.emplace_back(v, den);
            out.push_back(std::move(s));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// ReturnTable
// ---------------------------------------------------------------------------

namespace {

void check_n_range(int n, int n_max, const char* what) {
    if (n < 0 || n > n_max) throw DomainError(std::string(what) + ": index out of range");
}

BigInt pow_big(const BigInt& b, int e) {
    BigInt r = 1, x = b;
    while (e > 0) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

}  // namespace

BigRat ReturnTable::a_prime_exact(int n) const {
    check_n_range(n, n_max, "a_prime");
    if (mode != WalkMode::exact) throw DomainError("ReturnTable: exact access in float mode");
    return BigRat(a_prime_num[n], pow_big(step_den, n));
}

BigRat ReturnTable::a_exact(int n) const {
    check_n_range(n, n_max, "a");
    if (mode != WalkMode::exact) throw DomainError("ReturnTable: exact access in float mode");
    return BigRat(a_num[n], pow_big(step_den, n));
}

BigRat ReturnTable::q_exact(int n) const {
    check_n_range(n, n_max, "q");
    if (mode != WalkMode::exact) throw DomainError("ReturnTable: exact access in float mode");
    return BigRat(q_num[n], pow_big(step_den, n));
}

double ReturnTable::a_prime(int n) const {
    check_n_range(n, n_max, "a_prime");
    if (mode == WalkMode::floating) return a_prime_f[n];
    return ratio_as_double(a_prime_num[n], pow_big(step_den, n));
}

double ReturnTable::a(int n) const {
    check_n_range(n, n_max, "a");
    if (mode == WalkMode::floating) return a_f[n];
    return ratio_as_double(a_num[n], pow_big(step_den, n));
}

double ReturnTable::q(int n) const {
    check_n_range(n, n_max, "q");
    if (mode == WalkMode::floating) return q_f[n];
    return ratio_as_double(q_num[n], pow_big(step_den, n));
}

void ReturnTable::verify() const {
    if (mode == WalkMode::exact) {
        BigInt q_prev = 1;
        for (int n = 1; n <= n_max; ++n) {
            BigInt conv = 0;
            for (int k = 1; k <= n; ++k) conv += a_num[k] * a_prime_num[n - k];
            if (conv != a_prime_num[n]) throw DomainError("ReturnTable: renewal identity violated");
            if (a_num[n] < 0 || a_num[n] > a_prime_num[n])
                throw DomainError("ReturnTable: 0 <= a_n <= a'_n violated");
            BigInt expect_q = step_den * q_prev - a_num[n];
            if (expect_q != q_num[n]) throw DomainError("ReturnTable: Q tail-sum identity violated");
            if (q_num[n] > step_den * q_prev) throw DomainError("ReturnTable: Q not non-increasing");
            q_prev = q_num[n];
        }
    } else {
        for (int n = 1; n <= n_max; ++n) {
            double conv = 0.0;
            for (int k = 1; k <= n; ++k) conv += a_f[k] * a_prime_f[n - k];
            if (std::fabs(conv - a_prime_f[n]) > 1e-9)
                throw DomainError("ReturnTable: renewal identity violated (float)");
            if (a_f[n] < -1e-15 || a_f[n] > a_prime_f[n] + 1e-12)
                throw DomainError("ReturnTable: 0 <= a_n <= a'_n violated (float)");
            if (q_f[n] > q_f[n - 1] + 1e-15)
                throw DomainError("ReturnTable: Q not non-increasing (float)");
        }
    }
}

ReturnTable return_table(const StepSpec& spec, int n_max, WalkMode mode, double tail_threshold) {
    if (n_max < 1) throw DomainError("return_table: need n_max >= 1");
    ReturnTable t;
    t.mode = mode;
    t.n_max = n_max;
    t.step_den = spec.weight_den;
    if (mode == WalkMode::exact) {
        check_exact_budget(spec, n_max, "return_table");
        ExactWalker w(spec);
        t.a_prime_num.assign(n_max + 1, 0);
        t.a_num.assign(n_max + 1, 0);
        t.q_num.assign(n_max + 1, 0);
        t.a_prime_num[0] = 1;
        for (int n = 1; n <= n_max; ++n) {
            w.advance();
            t.a_prime_num[n] = w.at(0);
        }
        // a_n = a'_n - sum_{k<n} a_k a'_{n-k}; scales match at step_den^n
        for (int n = 1; n <= n_max; ++n) {
            BigInt s = 0;
            for (int k = 1; k < n; ++k) s += t.a_num[k] * t.a_prime_num[n - k];
            t.a_num[n] = t.a_prime_num[n] - s;
        }
        t.q_num[0] = 1;
        for (int n = 1; n <= n_max; ++n) t.q_num[n] = spec.weight_den * t.q_num[n - 1] - t.a_num[n];
    } else {
        FloatWalker w(spec, tail_threshold);
        t.a_prime_f.assign(n_max + 1, 0.0);
        t.a_f.assign(n_max + 1, 0.0);
        t.q_f.assign(n_max + 1, 0.0);
        t.a_prime_f[0] = 1.0;
        for (int n = 1; n <= n_max; ++n) {
            w.advance();
            t.a_prime_f[n] = w.at(0);
        }
        const double* ap = t.a_prime_f.data();
        double* a = t.a_f.data();
        for (int n = 1; n <= n_max; ++n) {
            double s = 0.0;
            for (int k = 1; k < n; ++k) s += a[k] * ap[n - k];
            a[n] = ap[n] - s;
        }
        t.q_f[0] = 1.0;
        for (int n = 1; n <= n_max; ++n) t.q_f[n] = t.q_f[n - 1] - t.a_f[n];
    }
    return t;
}

// ---------------------------------------------------------------------------
// KilledTable
// ---------------------------------------------------------------------------

namespace {

template <typename T>
std::vector<T> window_copy_generic(const std::vector<T>& vals, long lo, int window, const T& zero) {
    std::vector<T> row(2 * window + 1, zero);
    for (long x = -window; x <= window; ++x) {
        long i = x - lo;
        if (i >= 0 && static_cast<std::size_t>(i) < vals.size()) row[x + window] = vals[i];
    }
    return row;
}

}  // namespace

double KilledTable::q(int n, long x) const {
    check_n_range(n, n_max, "q");
    if (std::labs(x) > window) throw DomainError("KilledTable: x outside window");
    if (mode == WalkMode::floating) return q_win_f[n][x + window];
    return ratio_as_double(q_win_num[n][x + window], pow_big(step_den, n));
}

double KilledTable::p(int n, long x) const {
    check_n_range(n, n_max, "p");
    if (std::labs(x) > window) throw DomainError("KilledTable: x outside window");
    if (mode == WalkMode::floating) return p_win_f[n][x + window];
    return ratio_as_double(p_win_num[n][x + window], pow_big(step_den, n));
}

double KilledTable::delta(int n, long x) const {
    check_n_range(n, n_max, "delta");
    if (std::labs(x) > window) throw DomainError("KilledTable: x outside window");
    if (mode == WalkMode::floating) return delta_win_f[n][x + window];
    return ratio_as_double(delta_win_num[n][x + window], pow_big(step_den, n + 1));
}

double KilledTable::qx(int m, long x) const {
    check_n_range(m, n_max, "qx");
    if (std::labs(x) > window) throw DomainError("KilledTable: x outside window");
    if (mode == WalkMode::floating) return qx_f[m][x + window];
    return ratio_as_double(qx_num[m][x + window], pow_big(step_den, m));
}

double KilledTable::q_origin(int n) const {
    check_n_range(n, n_max, "q_origin");
    if (mode == WalkMode::floating) return q_origin_f[n];
    return ratio_as_double(q_origin_num[n], pow_big(step_den, n));
}

double KilledTable::q_row_sum(int n) const {
    check_n_range(n, n_max, "q_row_sum");
    if (mode == WalkMode::floating) return q_row_sum_f[n];
    return ratio_as_double(q_row_sum_num[n], pow_big(step_den, n));
}

double KilledTable::q_row_max(int n) const {
    check_n_range(n, n_max, "q_row_max");
    if (mode == WalkMode::floating) return q_row_max_f[n];
    return ratio_as_double(q_row_max_num[n], pow_big(step_den, n));
}

BigRat KilledTable::q_exact(int n, long x) const {
    if (mode != WalkMode::exact) throw DomainError("KilledTable: exact access in float mode");
    check_n_range(n, n_max, "q");
    if (std::labs(x) > window) throw DomainError("KilledTable: x outside window");
    return BigRat(q_win_num[n][x + window], pow_big(step_den, n));
}

BigRat KilledTable::qx_exact(int m, long x) const {
    if (mode != WalkMode::exact) throw DomainError("KilledTable: exact access in float mode");
    check_n_range(m, n_max, "qx");
    if (std::labs(x) > window) throw DomainError("KilledTable: x outside window");
    return BigRat(qx_num[m][x + window], pow_big(step_den, m));
}

BigRat KilledTable::q_origin_exact(int n) const {
    if (mode != WalkMode::exact) throw DomainError("KilledTable: exact access in float mode");
    check_n_range(n, n_max, "q_origin");
    return BigRat(q_origin_num[n], pow_big(step_den, n));
}

BigRat KilledTable::q_row_sum_exact(int n) const {
    if (mode != WalkMode::exact) throw DomainError("KilledTable: exact access in float mode");
    check_n_range(n, n_max, "q_row_sum");
    return BigRat(q_row_sum_num[n], pow_big(step_den, n));
}

void KilledTable::verify(const StepSpec& spec, const ReturnTable& rt) const {
    const int lim = std::min(n_max, rt.n_max);
    if (mode == WalkMode::exact && rt.mode == WalkMode::exact) {
        for (int n = 1; n <= lim; ++n) {
            if (q_origin_num[n] != rt.a_num[n])
                throw DomainError("KilledTable: q_n(0,0) != a_n");
            if (q_row_sum_num[n] != step_den * rt.q_num[n - 1])
                throw DomainError("KilledTable: row sum != Q_{n-1}");
            if (qx_num[n][window] > step_den * qx_num[n - 1][window])
                throw DomainError("KilledTable: Qx(.,0) not non-increasing");
            if (qx_num[n][window] != rt.q_num[n])
                throw DomainError("KilledTable: Qx(m,0) != Q_m");
        }
        for (long x = -window; x <= window; ++x)
            for (int m = 1; m <= n_max; ++m)
                if (qx_num[m][x + window] > step_den * qx_num[m - 1][x + window])
                    throw DomainError("KilledTable: Qx not non-increasing in m");
        if (spec.symmetric) {
            for (int n = 1; n <= n_max; ++n)
                for (long x = 1; x <= window; ++x) {
                    if (q_win_num[n][window + x] != q_win_num[n][window - x])
                        throw DomainError("KilledTable: q symmetry violated");
                    if (p_win_num[n][window + x] != p_win_num[n][window - x])
                        throw DomainError("KilledTable: p symmetry violated");
                }
        }
    } else if (mode == WalkMode::floating && rt.mode == WalkMode::floating) {
        for (int n = 1; n <= lim; ++n) {
            if (std::fabs(q_origin_f[n] - rt.a_f[n]) > 1e-12)
                throw DomainError("KilledTable: q_n(0,0) != a_n (float)");
            if (std::fabs(q_row_sum_f[n] - rt.q_f[n - 1]) > 1e-12)
                throw DomainError("KilledTable: row sum != Q_{n-1} (float)");
        }
        for (long x = -window; x <= window; ++x)
            for (int m = 1; m <= n_max; ++m)
                if (qx_f[m][x + window] > qx_f[m - 1][x + window] + 1e-15)
                    throw DomainError("KilledTable: Qx not non-increasing in m (float)");
        if (spec.symmetric) {
            for (int n = 1; n <= n_max; ++n)
                for (long x = 1; x <= window; ++x)
                    if (std::fabs(q_win_f[n][window + x] - q_win_f[n][window - x]) > 1e-12)
                        throw DomainError("KilledTable: q symmetry violated (float)");
        }
    } else {
        throw DomainError("KilledTable::verify: mode mismatch with ReturnTable");
    }
}

KilledTable killed_table(const StepSpec& spec, int n_max, int window_radius, WalkMode mode,
                         double tail_threshold) {
    if (n_max < 1) throw DomainError("killed_table: need n_max >= 1");
    if (window_radius < 0) throw DomainError("killed_table: need window >= 0");
    KilledTable t;
    t.mode = mode;
    t.n_max = n_max;
    t.window = window_radius;
    t.step_den = spec.weight_den;
    const int W = window_radius;
    const long max_abs = spec.max_abs_offset();

    if (mode == WalkMode::exact) {
        check_exact_budget(spec, n_max + 1, "killed_table");
        ExactWalker killed(spec);
        ExactWalker free(spec);
        t.q_win_num.assign(n_max + 1, {});
        t.p_win_num.assign(n_max + 1, {});
        t.delta_win_num.assign(n_max + 1, {});
        t.q_origin_num.assign(n_max + 1, 0);
        t.q_row_sum_num.assign(n_max + 1, 0);
        t.q_row_max_num.assign(n_max + 1, 0);
        t.q_origin_num[0] = 0;  // a_0 = 0
        t.q_row_sum_num[0] = 0;
        std::vector<BigInt> prev_p;  // free window at n-1, scale D^{n-1}
        for (int n = 1; n <= n_max + 1; ++n) {
            free.advance();
            auto p_row = window_copy_generic(free.vals(), free.lo(), W, BigInt(0));
            if (n <= n_max) t.p_win_num[n] = p_row;
            if (n >= 2) {
                // delta_{n-1}(x) = |D p_{n-1} - p_n| at scale D^n
                std::vector<BigInt> d(2 * W + 1);
                for (int i = 0; i <= 2 * W; ++i) d[i] = abs(spec.weight_den * prev_p[i] - p_row[i]);
                t.delta_win_num[n - 1] = std::move(d);
            }
            prev_p = std::move(p_row);
            if (n <= n_max) {
                killed.advance();
                t.q_win_num[n] = window_copy_generic(killed.vals(), killed.lo(), W, BigInt(0));
                t.q_origin_num[n] = killed.at(0);
                t.q_row_sum_num[n] = killed.sum();
                t.q_row_max_num[n] = killed.max_val();
                killed.kill_origin();
            }
        }
        // Backward survival DP: qx_num[m][x], scale D^m, exact "1" boundary.
        const long R = W + static_cast<long>(n_max) * max_abs;
        std::vector<BigInt> old_(2 * R + 1, BigInt(1)), new_(2 * R + 1);
        t.qx_num.assign(n_max + 1, {});
        t.qx_num[0] = window_copy_generic(old_, -R, W, BigInt(0));
        BigInt boundary = 1;  // scaled 1 at level m-1
        for (int m = 1; m <= n_max; ++m) {
            for (long x = -R; x <= R; ++x) {
                BigInt acc = 0;
                for (std::size_t i = 0; i < spec.support.size(); ++i) {
                    long y = x + spec.support[i].offset;
                    if (y == 0) continue;
                    const BigInt& v = (y < -R || y > R) ? boundary : old_[y + R];
                    acc += spec.weights[i] * v;
                }
                new_[x + R] = std::move(acc);
            }
            old_.swap(new_);
            boundary *= spec.weight_den;
            t.qx_num[m] = window_copy_generic(old_, -R, W, BigInt(0));
        }
    } else {
        FloatWalker killed(spec, tail_threshold);
        FloatWalker free(spec, tail_threshold);
        t.q_win_f.assign(n_max + 1, {});
        t.p_win_f.assign(n_max + 1, {});
        t.delta_win_f.assign(n_max + 1, {});
        t.q_origin_f.assign(n_max + 1, 0.0);
        t.q_row_sum_f.assign(n_max + 1, 0.0);
        t.q_row_max_f.assign(n_max + 1, 0.0);
        std::vector<double> prev_p;
        for (int n = 1; n <= n_max + 1; ++n) {
            free.advance();
            auto p_row = window_copy_generic(free.vals(), free.lo(), W, 0.0);
            if (n <= n_max) t.p_win_f[n] = p_row;
            if (n >= 2) {
                std::vector<double> d(2 * W + 1);
                for (int i = 0; i <= 2 * W; ++i) d[i] = std::fabs(prev_p[i] - p_row[i]);
                t.delta_win_f[n - 1] = std::move(d);
            }
            prev_p = std::move(p_row);
            if (n <= n_max) {
                killed.advance();
                t.q_win_f[n] = window_copy_generic(killed.vals(), killed.lo(), W, 0.0);
                t.q_origin_f[n] = killed.at(0);
                t.q_row_sum_f[n] = killed.sum();
                t.q_row_max_f[n] = killed.max_val();
                killed.kill_origin();
            }
        }
        t.truncated_mass = killed.truncated();
        const double v = rat_as_double(spec.variance);
        long reach = static_cast<long>(std::ceil(12.0 * std::sqrt(v * n_max))) + max_abs;
        const long R = W + std::min(static_cast<long>(n_max) * max_abs, reach);
        std::vector<double> old_(2 * R + 1, 1.0), new_(2 * R + 1);
        std::vector<double> probs;
        for (const auto& a : spec.support) probs.push_back(rat_as_double(a.prob));
        t.qx_f.assign(n_max + 1, {});
        t.qx_f[0] = window_copy_generic(old_, -R, W, 0.0);
        for (int m = 1; m <= n_max; ++m) {
            for (long x = -R; x <= R; ++x) {
                double acc = 0.0;
                for (std::size_t i = 0; i < spec.support.size(); ++i) {
                    long y = x + spec.support[i].offset;
                    if (y == 0) continue;
                    double val = (y < -R || y > R) ? 1.0 : old_[y + R];
                    acc += probs[i] * val;
                }
                new_[x + R] = acc;
            }
            old_.swap(new_);
            t.qx_f[m] = window_copy_generic(old_, -R, W, 0.0);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Characteristic-function quadrature
// ---------------------------------------------------------------------------

namespace {

std::complex<double> cpow_int(std::complex<double> b, long e) {
    std::complex<double> r{1.0, 0.0};
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

}  // namespace

CharfunResult charfun_return(const StepSpec& spec, int n, long x, int quadrature_points) {
    if (n < 1) throw DomainError("charfun_return: need n >= 1");
    // The integrand is a trigonometric polynomial with modes in
    // [n*min_offset - x, n*max_offset - x]; a uniform rule with more points
    // than the largest |mode| integrates it exactly.
    long hi = static_cast<long>(n) * spec.max_offset - x;
    long lo = static_cast<long>(n) * spec.min_offset - x;
    long needed = std::max(std::labs(hi), std::labs(lo)) + 1;
    CharfunResult r;
    if (quadrature_points <= 0) {
        r.points = static_cast<int>(std::max<long>(needed, 8));
    } else {
        r.points = quadrature_points;
        r.accuracy_warning = quadrature_points < needed;
    }
    std::vector<double> probs;
    std::vector<long> offs;
    for (const auto& a : spec.support) {
        probs.push_back(rat_as_double(a.prob));
        offs.push_back(a.offset);
    }
    const double step = 2.0 * M_PI / r.points;
    double acc = 0.0;
    for (int j = 0; j < r.points; ++j) {
        const double theta = step * j;
        std::complex<double> phi{0.0, 0.0};
        for (std::size_t i = 0; i < offs.size(); ++i)
            phi += probs[i] * std::polar(1.0, theta * offs[i]);
        acc += (cpow_int(phi, n) * std::polar(1.0, -theta * x)).real();
    }
    r.value = acc / r.points;
    return r;
}

// ---------------------------------------------------------------------------
// Regularity sequences
// ---------------------------------------------------------------------------

double RegularityReport::window_sup(const std::vector<double>& seq, long n_lo, long n_hi) const {
    double s = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i)
        if (ns[i] >= n_lo && ns[i] <= n_hi) s = std::max(s, seq[i]);
    return s;
}

RegularityReport regularity_check(const StepSpec& spec, int n_max, int window_radius,
                                  WalkMode mode) {
    if (n_max < 2) throw DomainError("regularity_check: need n_max >= 2");
    RegularityReport rep;
    rep.stride = static_cast<int>(std::max<long>(1, spec.return_period_gcd));
    rep.window = window_radius;
    ReturnTable rt = return_table(spec, n_max + rep.stride, mode);
    KilledTable kt = killed_table(spec, n_max, window_radius, mode);
    for (int n = 1; n <= n_max; ++n) {
        rep.ns.push_back(n);
        const double nd = static_cast<double>(n);
        rep.a_increment.push_back(std::pow(nd, 2.5) * std::fabs(rt.a(n + rep.stride) - rt.a(n)));
        double dsmall = 0.0, dlarge = 0.0, qsmall = 0.0;
        for (long x = -window_radius; x <= window_radius; ++x) {
            const double d = kt.delta(n, x);
            dsmall = std::max(dsmall, d);
            dlarge = std::max(dlarge, (1.0 + static_cast<double>(x) * x) * d);
            qsmall = std::max(qsmall, kt.q(n, x) / std::sqrt(1.0 + std::labs(x)));
        }
        rep.delta_small.push_back(std::pow(nd, 1.5) * dsmall);
        rep.delta_large.push_back(std::sqrt(nd) * dlarge);
        rep.q_small.push_back(std::pow(nd, 1.5) * qsmall);
        rep.q_large.push_back(nd * kt.q_row_max(n));
    }
    return rep;
}

}  // namespace compwalk
