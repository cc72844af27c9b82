#pragma once

#include "compwalk/compositions.hpp"
#include "compwalk/walk.hpp"

#include <string>
#include <vector>

namespace compwalk {

enum class Quantity { first_return, return_prob, survival, irreducible_prob, count_f };

std::string quantity_name(Quantity q);
Quantity quantity_from_name(const std::string& s);

struct ScaledPoint {
    long n = 0;
    double scaled = 0.0;
};

/// Comparison of a computed sequence against its limiting constant.
/// `period` > 1 means the sequence was evaluated along multiples of the
/// law's return period and divided by it (the density-normalized limit).
struct AsymptoticReport {
    Quantity quantity = Quantity::first_return;
    std::string subject;
    double exponent = 0.0;
    double target_constant = 0.0;
    std::string target_provenance;
    std::vector<ScaledPoint> scaled_values;
    double raw_last = 0.0;
    double extrapolated_limit = 0.0;
    double rel_err = 0.0;
    long period = 1;

    void verify() const;  // rel_err consistency with the stored fields
};

/// n^alpha * value(n) over the given n values (values indexed by n).
std::vector<ScaledPoint> scaled_sequence(const std::vector<double>& values, double alpha,
                                         const std::vector<long>& ns);

/// Geometrically spaced sample points <= n_max, each a positive multiple of
/// `multiple`, largest first point n_max rounded down.
std::vector<long> geometric_ladder(long n_max, int points, long multiple);

/// Limit estimate assuming s(n) = L + c n^{-1/2}, from the two largest points.
double extrapolate_sqrt_correction(const std::vector<ScaledPoint>& points);

/// Limiting constant for a walk quantity, from the law's exact variance.
double walk_target_constant(Quantity q, const StepSpec& spec);

/// Walk-quantity report. Refuses laws outside the first-return theorem's
/// hypotheses: nonzero mean, lattice span > 1, or (unless period_adjust)
/// periodic returns.
AsymptoticReport report_walk(const StepSpec& spec, Quantity q, int n_max, WalkMode mode,
                             bool period_adjust = false);
AsymptoticReport report_walk_from_table(const StepSpec& spec, const ReturnTable& table, Quantity q,
                                        bool period_adjust = false);

/// Composition-side report: irreducible_prob (n p_n -> 8) or count_f
/// (n^{3/2} f(n)/4^n -> 2/sqrt(pi)).
AsymptoticReport report_compositions(Quantity q, int n_max);
AsymptoticReport report_compositions_from_table(const CountTable& table, Quantity q);

}  // namespace compwalk
