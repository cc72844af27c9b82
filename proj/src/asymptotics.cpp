#include "compwalk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace compwalk {

std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::first_return: return "first-return";
        case Quantity::return_prob: return "return-prob";
        case Quantity::survival: return "survival";
        case Quantity::irreducible_prob: return "irreducible-prob";
        case Quantity::count_f: return "count-f";
    }
    throw DomainError("quantity_name: bad enum");
}

Quantity quantity_from_name(const std::string& s) {
    if (s == "first-return") return Quantity::first_return;
    if (s == "return-prob") return Quantity::return_prob;
    if (s == "survival") return Quantity::survival;
    if (s == "irreducible-prob") return Quantity::irreducible_prob;
    if (s == "count-f") return Quantity::count_f;
    throw DomainError("unknown quantity: " + s +
                      " (known: first-return, return-prob, survival, irreducible-prob, count-f)");
}

void AsymptoticReport::verify() const {
    if (target_constant == 0.0) throw DomainError("AsymptoticReport: zero target constant");
    const double expect = std::fabs(extrapolated_limit - target_constant) / target_constant;
    if (std::fabs(expect - rel_err) > 1e-12) throw DomainError("AsymptoticReport: rel_err mismatch");
    if (scaled_values.empty()) throw DomainError("AsymptoticReport: no scaled values");
}

std::vector<ScaledPoint> scaled_sequence(const std::vector<double>& values, double alpha,
                                         const std::vector<long>& ns) {
    std::vector<ScaledPoint> out;
    out.reserve(ns.size());
    for (long n : ns) {
        if (n < 0 || static_cast<std::size_t>(n) >= values.size())
            throw DomainError("scaled_sequence: n outside the computed range");
        out.push_back({n, std::pow(static_cast<double>(n), alpha) * values[n]});
    }
    return out;
}

std::vector<long> geometric_ladder(long n_max, int points, long multiple) {
    if (multiple < 1) multiple = 1;
    long top = (n_max / multiple) * multiple;
    if (top < multiple) throw DomainError("geometric_ladder: n_max below one period");
    std::vector<long> ns;
    long n = top;
    for (int i = 0; i < points && n >= multiple; ++i) {
        ns.push_back(n);
        n = (n / 2 / multiple) * multiple;
    }
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

double extrapolate_sqrt_correction(const std::vector<ScaledPoint>& points) {
    if (points.size() < 2)
        throw DomainError("extrapolate: insufficient data (need at least 2 scaled points)");
    const ScaledPoint& p1 = points[points.size() - 2];
    const ScaledPoint& p2 = points[points.size() - 1];
    if (p1.n >= p2.n) throw DomainError("extrapolate: points must be increasing in n");
    const double r1 = std::sqrt(static_cast<double>(p1.n));
    const double r2 = std::sqrt(static_cast<double>(p2.n));
    return (p2.scaled * r2 - p1.scaled * r1) / (r2 - r1);
}

double walk_target_constant(Quantity q, const StepSpec& spec) {
    const double v = rat_as_double(spec.variance);
    switch (q) {
        case Quantity::first_return: return std::sqrt(v / (2.0 * M_PI));
        case Quantity::return_prob: return 1.0 / std::sqrt(2.0 * M_PI * v);
        case Quantity::survival: return std::sqrt(2.0 * v / M_PI);
        default: throw DomainError("walk_target_constant: not a walk quantity");
    }
}

namespace {

long lattice_span(const StepSpec& spec) {
    long g = 0;
    for (const auto& a : spec.support) g = std::gcd(g, std::labs(a.offset));
    return g;
}

void check_walk_hypotheses(const StepSpec& spec, bool period_adjust, long& period_out) {
    if (!spec.mean_zero())
        throw DomainError("asymptotic report refused: law '" + spec.name + "' has mean " +
                          rat_to_string(spec.mean) +
                          "; the first-return asymptotics require mean zero, finite variance and "
                          "no periodicity");
    const long span = lattice_span(spec);
    if (span > 1)
        throw DomainError("asymptotic report refused: law '" + spec.name +
                          "' lives on the sublattice " + std::to_string(span) +
                          "Z; rescale offsets by 1/" + std::to_string(span));
    const long p = spec.return_period_gcd;
    if (p == 0)
        throw DomainError("asymptotic report refused: law '" + spec.name +
                          "' never returns to the origin");
    if (p > 1 && !period_adjust)
        throw DomainError("asymptotic report refused: law '" + spec.name +
                          "' is periodic (returns only at multiples of " + std::to_string(p) +
                          "), outside the aperiodicity hypothesis; pass period adjustment to "
                          "compare along the return subsequence");
    period_out = p;
}

std::string provenance_walk(Quantity q, const StepSpec& spec, long period) {
    std::string v = rat_to_string(spec.variance);
    std::string s;
    switch (q) {
        case Quantity::first_return: s = "sqrt(V/(2*pi)) with V = " + v; break;
        case Quantity::return_prob: s = "1/sqrt(2*pi*V) with V = " + v; break;
        case Quantity::survival: s = "sqrt(2*V/pi) with V = " + v; break;
        default: break;
    }
    if (period > 1 && q != Quantity::survival)
        s += "; sequence evaluated on multiples of " + std::to_string(period) +
             " and divided by the period";
    return s;
}

}  // namespace

AsymptoticReport report_walk_from_table(const StepSpec& spec, const ReturnTable& table, Quantity q,
                                        bool period_adjust) {
    if (q != Quantity::first_return && q != Quantity::return_prob && q != Quantity::survival)
        throw DomainError("report_walk: not a walk quantity");
    long period = 1;
    check_walk_hypotheses(spec, period_adjust, period);

    AsymptoticReport rep;
    rep.quantity = q;
    rep.subject = spec.name;
    rep.period = q == Quantity::survival ? 1 : period;
    rep.exponent = q == Quantity::first_return ? 1.5 : 0.5;
    rep.target_constant = walk_target_constant(q, spec);
    rep.target_provenance = provenance_walk(q, spec, rep.period);

    const std::vector<long> ns = geometric_ladder(table.n_max, 8, rep.period);
    for (long n : ns) {
        double value;
        switch (q) {
            case Quantity::first_return: value = table.a(static_cast<int>(n)); break;
            case Quantity::return_prob: value = table.a_prime(static_cast<int>(n)); break;
            default: value = table.q(static_cast<int>(n)); break;
        }
        const double scaled =
            std::pow(static_cast<double>(n), rep.exponent) * value / static_cast<double>(rep.period);
        rep.scaled_values.push_back({n, scaled});
    }
    rep.raw_last = rep.scaled_values.back().scaled;
    rep.extrapolated_limit = extrapolate_sqrt_correction(rep.scaled_values);
    rep.rel_err = std::fabs(rep.extrapolated_limit - rep.target_constant) / rep.target_constant;
    return rep;
}

AsymptoticReport report_walk(const StepSpec& spec, Quantity q, int n_max, WalkMode mode,
                             bool period_adjust) {
    long period = 1;
    check_walk_hypotheses(spec, period_adjust, period);  // refuse before paying for the table
    ReturnTable table = return_table(spec, n_max, mode);
    return report_walk_from_table(spec, table, q, period_adjust);
}

AsymptoticReport report_compositions_from_table(const CountTable& table, Quantity q) {
    AsymptoticReport rep;
    rep.quantity = q;
    rep.subject = "compositions";
    const std::vector<long> ns = geometric_ladder(table.n_max, 8, 1);
    if (q == Quantity::irreducible_prob) {
        rep.exponent = 1.0;
        rep.target_constant = 8.0;
        rep.target_provenance = "n * f(n) / C(2n-2, n-1) -> 8";
        for (long n : ns) {
            const double p = rat_as_double(table.p_exact(static_cast<int>(n)));
            rep.scaled_values.push_back({n, static_cast<double>(n) * p});
        }
    } else if (q == Quantity::count_f) {
        rep.exponent = 1.5;
        rep.target_constant = 2.0 / std::sqrt(M_PI);
        rep.target_provenance = "n^{3/2} f(n) / 4^n -> 2/sqrt(pi)";
        for (long n : ns) {
            const double ratio = ratio_as_double(table.f(static_cast<int>(n)), BigInt(1) << (2 * n));
            rep.scaled_values.push_back({n, std::pow(static_cast<double>(n), 1.5) * ratio});
        }
    } else {
        throw DomainError("report_compositions: quantity must be irreducible-prob or count-f");
    }
    rep.raw_last = rep.scaled_values.back().scaled;
    rep.extrapolated_limit = extrapolate_sqrt_correction(rep.scaled_values);
    rep.rel_err = std::fabs(rep.extrapolated_limit - rep.target_constant) / rep.target_constant;
    return rep;
}

AsymptoticReport report_compositions(Quantity q, int n_max) {
    if (n_max < 2) throw DomainError("report_compositions: need n_max >= 2");
    CountTable table = irreducible_counts1(n_max);
    return report_compositions_from_table(table, q);
}

}  // namespace compwalk
