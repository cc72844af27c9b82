#include "compwalk/cli.hpp"

#include "compwalk/asymptotics.hpp"
#include "compwalk/compositions.hpp"
#include "compwalk/montecarlo.hpp"
#include "compwalk/series.hpp"
#include "compwalk/stats.hpp"
#include "compwalk/table.hpp"
#include "compwalk/walk.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

namespace compwalk {

namespace {

// ---------------------------------------------------------------------------
// Shared option plumbing
// ---------------------------------------------------------------------------

struct CommonOpts {
    std::string out_format = "csv";
    std::string output_path;
    bool verify = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", c.output_path, "write to this path instead of stdout");
    cmd->add_flag("--verify", c.verify, "run the invariant suite on the produced table");
}

struct LawOpts {
    std::string name;
    std::string file;
};

void add_law(CLI::App* cmd, LawOpts& l) {
    auto* a = cmd->add_option("--law", l.name, "named law (pm1, dice-diff, uniform5, m1p2, geom2-diff:B)");
    auto* b = cmd->add_option("--law-file", l.file, "JSON step-law file");
    a->excludes(b);  // resolve_law reports the missing-law case
}

StepSpec load_law_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open law file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("malformed law file " + path + ": " + e.what());
    }
    if (!j.contains("support") || !j["support"].is_array())
        throw DomainError("law file must contain a \"support\" array");
    std::vector<StepAtom> atoms;
    for (const auto& entry : j["support"]) {
        if (!entry.contains("offset") || !entry.contains("prob"))
            throw DomainError("law file entries need \"offset\" and \"prob\"");
        StepAtom a;
        a.offset = entry["offset"].get<long>();
        if (entry["prob"].is_string())
            a.prob = parse_rational(entry["prob"].get<std::string>());
        else
            throw DomainError("law file probabilities must be \"num/den\" strings");
        atoms.push_back(std::move(a));
    }
    return validate_step(std::move(atoms), "file:" + path);
}

StepSpec resolve_law(const LawOpts& l) {
    if (!l.name.empty() && !l.file.empty())
        throw DomainError("pass either --law or --law-file, not both");
    if (!l.name.empty()) return named_law(l.name);
    if (!l.file.empty()) return load_law_file(l.file);
    throw DomainError("a step law is required: pass --law or --law-file");
}

WalkMode parse_mode(const std::string& m) {
    if (m == "exact") return WalkMode::exact;
    if (m == "float") return WalkMode::floating;
    throw DomainError("mode must be exact or float");
}

void write_result(const std::string& text, const CommonOpts& c, std::ostream& out) {
    if (c.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.output_path, std::ios::binary);
    if (!f) throw ResourceError("cannot open output path: " + c.output_path);
    f << text;
    if (!f) throw ResourceError("failed writing output path: " + c.output_path);
}

void emit_table(const OutputTable& t, const CommonOpts& c, std::ostream& out) {
    write_result(c.out_format == "json" ? emit_json(t) : emit_csv(t), c, out);
}

void emit_raw_json(const nlohmann::ordered_json& j, const CommonOpts& c, std::ostream& out) {
    write_result(j.dump(2) + "\n", c, out);
}

std::string fmt_count(const BigInt& v) { return v.str(); }

// ---------------------------------------------------------------------------
// compositions
// ---------------------------------------------------------------------------

void run_compositions_count(int n, bool two_var, int k_max, const CommonOpts& c,
                            std::ostream& out) {
    OutputTable t;
    t.columns = {"n", "k", "f", "total", "p_num", "p_den"};
    if (two_var) {
        if (k_max <= 0) k_max = n;
        CountTable ct = irreducible_counts2(n, k_max);
        if (c.verify) ct.verify();
        t.meta = {{"command", "compositions count"}, {"n_max", std::to_string(n)},
                  {"k_max", std::to_string(k_max)}};
        for (int nn = 1; nn <= n; ++nn) {
            const int klim = std::min(nn, k_max);
            for (int k = 1; k <= klim; ++k) {
                BigRat p(ct.f(nn, k), ct.total(nn, k) == 0 ? BigInt(1) : ct.total(nn, k));
                t.rows.push_back({std::to_string(nn), std::to_string(k), fmt_count(ct.f(nn, k)),
                                  fmt_count(ct.total(nn, k)),
                                  boost::multiprecision::numerator(p).str(),
                                  boost::multiprecision::denominator(p).str()});
            }
        }
    } else {
        CountTable ct = irreducible_counts1(n);
        if (c.verify) ct.verify();
        t.meta = {{"command", "compositions count"}, {"n_max", std::to_string(n)}};
        for (int nn = 1; nn <= n; ++nn) {
            BigRat p = ct.p_exact(nn);
            t.rows.push_back({std::to_string(nn), "", fmt_count(ct.f(nn)), fmt_count(ct.total(nn)),
                              boost::multiprecision::numerator(p).str(),
                              boost::multiprecision::denominator(p).str()});
        }
    }
    emit_table(t, c, out);
}

void run_compositions_oracle(int n, const CommonOpts& c, std::ostream& out) {
    BruteForceCounts b = brute_force_irreducible(n);
    OutputTable t;
    t.columns = {"n", "k", "f", "total", "p_num", "p_den"};
    t.meta = {{"command", "compositions oracle"}, {"n", std::to_string(n)},
              {"pairs_checked", b.pairs_checked.str()}, {"f_total", b.f1.str()}};
    for (int k = 1; k <= n; ++k) {
        BigInt total = total_pairs2(n, k);
        BigRat p(b.f2_row[k], total);
        t.rows.push_back({std::to_string(n), std::to_string(k), fmt_count(b.f2_row[k]),
                          fmt_count(total), boost::multiprecision::numerator(p).str(),
                          boost::multiprecision::denominator(p).str()});
    }
    emit_table(t, c, out);
}

void run_compositions_probability(int n, const CommonOpts& c, std::ostream& out) {
    CountTable ct = irreducible_counts1(n);
    if (c.verify) ct.verify();
    BigRat p = ct.p_exact(n);
    OutputTable t;
    t.columns = {"n", "p_num", "p_den", "p_float", "n_times_p"};
    t.meta = {{"command", "compositions probability"}};
    t.rows.push_back({std::to_string(n), boost::multiprecision::numerator(p).str(),
                      boost::multiprecision::denominator(p).str(),
                      double_to_string(rat_as_double(p)),
                      double_to_string(n * rat_as_double(p))});
    emit_table(t, c, out);
}

// ---------------------------------------------------------------------------
// series
// ---------------------------------------------------------------------------

void run_series_thm1(int order, const CommonOpts& c, std::ostream& out) {
    Series1 s = thm1_series(order);
    nlohmann::ordered_json j;
    j["command"] = "series thm1";
    j["order"] = order;
    std::vector<std::string> coeffs;
    for (int i = 0; i <= s.order(); ++i) {
        if (c.verify && (!is_integer(s.coeff(i)) || s.coeff(i) < 0))
            throw DomainError("series thm1: coefficient " + std::to_string(i) +
                              " is not a non-negative integer");
        coeffs.push_back(rat_to_string(s.coeff(i)));
    }
    j["coefficients"] = coeffs;
    emit_raw_json(j, c, out);
}

void run_series_thm1_2d(int ox, int oy, const CommonOpts& c, std::ostream& out) {
    Series2 s = thm1_series_2d(ox, oy);
    nlohmann::ordered_json j;
    j["command"] = "series thm1-2d";
    j["order_x"] = ox;
    j["order_y"] = oy;
    std::vector<std::vector<std::string>> coeffs;
    for (int n = 0; n <= s.order_x(); ++n) {
        std::vector<std::string> row;
        for (int k = 0; k <= s.order_y(); ++k) {
            if (c.verify && (!is_integer(s.coeff(n, k)) || s.coeff(n, k) < 0))
                throw DomainError("series thm1-2d: coefficient is not a non-negative integer");
            row.push_back(rat_to_string(s.coeff(n, k)));
        }
        coeffs.push_back(std::move(row));
    }
    j["coefficients"] = coeffs;
    emit_raw_json(j, c, out);
}

void run_series_legendre(int n, const std::string& y, const CommonOpts& c, std::ostream& out) {
    BigRat yr = parse_rational(y);
    bool ok = legendre_identity_check(n, yr);
    nlohmann::ordered_json j;
    j["command"] = "series check-legendre";
    j["n"] = n;
    j["y"] = rat_to_string(yr);
    j["holds"] = ok;
    emit_raw_json(j, c, out);
    if (!ok) throw DomainError("legendre identity check failed");
}

void run_series_master(int ox, int oy, const CommonOpts& c, std::ostream& out) {
    bool ok = master_gf_check(ox, oy);
    nlohmann::ordered_json j;
    j["command"] = "series master-check";
    j["order_x"] = ox;
    j["order_y"] = oy;
    j["holds"] = ok;
    emit_raw_json(j, c, out);
    if (!ok) throw DomainError("master generating-function check failed");
}

// ---------------------------------------------------------------------------
// walk
// ---------------------------------------------------------------------------

void run_walk_validate(const LawOpts& law, const CommonOpts& c, std::ostream& out) {
    StepSpec s = resolve_law(law);
    nlohmann::ordered_json j;
    j["command"] = "walk validate";
    j["law"] = s.name;
    nlohmann::ordered_json support = nlohmann::ordered_json::array();
    for (const auto& a : s.support)
        support.push_back({{"offset", a.offset}, {"prob", rat_to_string(a.prob)}});
    j["support"] = support;
    j["mean"] = rat_to_string(s.mean);
    j["variance"] = rat_to_string(s.variance);
    j["variance_float"] = rat_as_double(s.variance);
    j["one_period_gcd"] = s.one_period_gcd;
    j["return_period_gcd"] = s.return_period_gcd;
    j["aperiodic"] = s.aperiodic;
    j["symmetric"] = s.symmetric;
    if (s.name.rfind("geom2-diff:", 0) == 0) {
        // truncation effect relative to the untruncated law (V = 4)
        j["untruncated_variance"] = 4.0;
        j["truncation_variance_deficit"] = 4.0 - rat_as_double(s.variance);
    }
    emit_raw_json(j, c, out);
}

void run_walk_table(const LawOpts& law, int n, const std::string& mode_s, double tail,
                    const CommonOpts& c, std::ostream& out) {
    StepSpec s = resolve_law(law);
    WalkMode mode = parse_mode(mode_s);
    ReturnTable rt = return_table(s, n, mode, tail);
    if (c.verify) rt.verify();
    OutputTable t;
    t.columns = {"n", "a_prime", "a", "Q"};
    t.meta = {{"command", "walk table"}, {"law", s.name}, {"mode", mode_s},
              {"n_max", std::to_string(n)}};
    for (int i = 0; i <= n; ++i) {
        if (mode == WalkMode::exact) {
            t.rows.push_back({std::to_string(i), rat_to_string(rt.a_prime_exact(i)),
                              rat_to_string(rt.a_exact(i)), rat_to_string(rt.q_exact(i))});
        } else {
            t.rows.push_back({std::to_string(i), double_to_string(rt.a_prime_f[i]),
                              double_to_string(rt.a_f[i]), double_to_string(rt.q_f[i])});
        }
    }
    emit_table(t, c, out);
}

void run_walk_killed(const LawOpts& law, int n, int window, const std::string& mode_s, double tail,
                     const CommonOpts& c, std::ostream& out) {
    StepSpec s = resolve_law(law);
    WalkMode mode = parse_mode(mode_s);
    KilledTable kt = killed_table(s, n, window, mode, tail);
    if (c.verify) {
        ReturnTable rt = return_table(s, n, mode, tail);
        kt.verify(s, rt);
    }
    OutputTable t;
    t.columns = {"n", "x", "q", "p", "delta", "qx"};
    t.meta = {{"command", "walk killed"}, {"law", s.name}, {"mode", mode_s},
              {"n_max", std::to_string(n)}, {"window", std::to_string(window)},
              {"truncated_mass", double_to_string(kt.truncated_mass)}};
    for (int i = 1; i <= n; ++i)
        for (long x = -window; x <= window; ++x) {
            if (mode == WalkMode::exact) {
                t.rows.push_back({std::to_string(i), std::to_string(x),
                                  rat_to_string(kt.q_exact(i, x)),
                                  rat_to_string(BigRat(kt.p_win_num[i][x + window],
                                                       boost::multiprecision::pow(
                                                           kt.step_den, static_cast<unsigned>(i)))),
                                  double_to_string(kt.delta(i, x)),
                                  rat_to_string(kt.qx_exact(i, x))});
            } else {
                t.rows.push_back({std::to_string(i), std::to_string(x), double_to_string(kt.q(i, x)),
                                  double_to_string(kt.p(i, x)), double_to_string(kt.delta(i, x)),
                                  double_to_string(kt.qx(i, x))});
            }
        }
    emit_table(t, c, out);
}

void run_walk_charfun(const LawOpts& law, int n, long x, int points, const CommonOpts& c,
                      std::ostream& out, std::ostream& err) {
    StepSpec s = resolve_law(law);
    CharfunResult r = charfun_return(s, n, x, points);
    if (r.accuracy_warning)
        err << "warning: " << r.points
            << " quadrature points are below the exactness threshold for n=" << n << "\n";
    OutputTable t;
    t.columns = {"n", "x", "p", "points", "accuracy_warning"};
    t.meta = {{"command", "walk charfun"}, {"law", s.name}};
    t.rows.push_back({std::to_string(n), std::to_string(x), double_to_string(r.value),
                      std::to_string(r.points), r.accuracy_warning ? "true" : "false"});
    emit_table(t, c, out);
}

void run_walk_regularity(const LawOpts& law, int n, int window, const std::string& mode_s,
                         const CommonOpts& c, std::ostream& out) {
    StepSpec s = resolve_law(law);
    RegularityReport rep = regularity_check(s, n, window, parse_mode(mode_s));
    OutputTable t;
    t.columns = {"n", "a_increment", "delta_small", "delta_large", "q_small", "q_large"};
    t.meta = {{"command", "walk regularity"}, {"law", s.name},
              {"stride", std::to_string(rep.stride)}, {"window", std::to_string(rep.window)}};
    for (std::size_t i = 0; i < rep.ns.size(); ++i)
        t.rows.push_back({std::to_string(rep.ns[i]), double_to_string(rep.a_increment[i]),
                          double_to_string(rep.delta_small[i]), double_to_string(rep.delta_large[i]),
                          double_to_string(rep.q_small[i]), double_to_string(rep.q_large[i])});
    emit_table(t, c, out);
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

void emit_sim_result(const SimResult& r, const std::string& command, const std::string& subject,
                     const StepSpec* exact_law, const CommonOpts& c, std::ostream& out) {
    if (c.verify) r.verify();
    // reference values from the float-mode renewal inversion when available
    std::vector<double> exact_a;
    std::uint64_t last = 0;
    for (std::uint64_t k = 1; k < r.histogram.size(); ++k)
        if (r.histogram[k]) last = k;
    if (exact_law != nullptr && last >= 1) {
        const int lim = static_cast<int>(std::min<std::uint64_t>(last, 20000));
        ReturnTable rt = return_table(*exact_law, lim, WalkMode::floating);
        exact_a.assign(rt.a_f.begin(), rt.a_f.end());
    }
    OutputTable t;
    t.columns = {"n", "count", "freq", "exact", "std_err"};
    t.meta = {{"command", command},
              {"subject", subject},
              {"trials", std::to_string(r.trials)},
              {"horizon", std::to_string(r.horizon)},
              {"seed", std::to_string(r.seed)},
              {"workers", std::to_string(r.workers)},
              {"censored", std::to_string(r.censored)}};
    const double trials = static_cast<double>(r.trials);
    for (std::uint64_t n = 1; n <= last; ++n) {
        const double freq = static_cast<double>(r.histogram[n]) / trials;
        std::string exact;
        if (n < exact_a.size()) exact = double_to_string(exact_a[n]);
        t.rows.push_back({std::to_string(n), std::to_string(r.histogram[n]), double_to_string(freq),
                          exact, double_to_string(binomial_std_err(freq, r.trials))});
    }
    emit_table(t, c, out);
}

// difference of two fair `faces`-sided dice
StepSpec dice_difference_law(int faces) {
    std::vector<StepAtom> atoms;
    for (long i = -(faces - 1); i <= faces - 1; ++i)
        atoms.push_back({i, BigRat(faces - std::labs(i), static_cast<long>(faces) * faces)});
    return validate_step(std::move(atoms), "dice" + std::to_string(faces) + "-diff");
}

void run_simulate_game(int faces, std::uint64_t trials, std::uint64_t horizon, std::uint64_t seed,
                       int workers, const CommonOpts& c, std::ostream& out) {
    SimResult r = simulate_game(faces, trials, horizon, seed, workers);
    StepSpec law = dice_difference_law(faces);
    emit_sim_result(r, "simulate game", "faces=" + std::to_string(faces), &law, c, out);
}

void run_simulate_walk(const std::string& law, std::uint64_t trials, std::uint64_t horizon,
                       std::uint64_t seed, int workers, const CommonOpts& c, std::ostream& out) {
    SimResult r = simulate_walk_named(law, trials, horizon, seed, workers);
    std::unique_ptr<StepSpec> ref;
    if (law != "geom2-diff") ref = std::make_unique<StepSpec>(named_law(law));
    emit_sim_result(r, "simulate walk", law, ref.get(), c, out);
}

void run_simulate_pairs(int n, std::uint64_t samples, std::uint64_t seed, int workers,
                        const CommonOpts& c, std::ostream& out) {
    PairStats st = sample_pairs(n, samples, seed, workers);
    OutputTable t;
    t.columns = {"k", "count", "freq", "exact", "std_err"};
    const double total_d = static_cast<double>(st.samples);
    const BigInt total = total_pairs1(n);
    t.meta = {{"command", "simulate pairs"},
              {"n", std::to_string(n)},
              {"samples", std::to_string(st.samples)},
              {"seed", std::to_string(seed)},
              {"workers", std::to_string(st.workers)},
              {"irreducible", std::to_string(st.irreducible)},
              {"irreducible_freq", double_to_string(st.irreducible / total_d)}};
    for (int k = 1; k <= n; ++k) {
        const double freq = st.k_histogram[k] / total_d;
        const double exact = ratio_as_double(total_pairs2(n, k), total);
        t.rows.push_back({std::to_string(k), std::to_string(st.k_histogram[k]),
                          double_to_string(freq), double_to_string(exact),
                          double_to_string(binomial_std_err(freq, st.samples))});
    }
    emit_table(t, c, out);
}

void run_simulate_poissonized(int n, std::uint64_t draws, std::uint64_t seed, int workers,
                              const CommonOpts& c, std::ostream& out) {
    PoissonizedStats st = simulate_poissonized(n, draws, seed, workers);
    OutputTable t;
    t.meta = {{"command", "simulate poissonized"},
              {"n", std::to_string(n)},
              {"draws", std::to_string(st.draws)},
              {"seed", std::to_string(seed)},
              {"workers", std::to_string(st.workers)},
              {"mean_parts", double_to_string(st.mean_parts())}};
    const double total = static_cast<double>(st.draws);
    if (!st.composition_histogram.empty()) {
        t.columns = {"composition", "count", "freq", "exact", "std_err"};
        const double uniform = std::ldexp(1.0, -(n - 1));
        for (std::size_t mask = 0; mask < st.composition_histogram.size(); ++mask) {
            std::string comp;
            int prev = 0;
            for (int pos = 1; pos <= n - 1; ++pos)
                if (mask & (std::size_t(1) << (pos - 1))) {
                    if (!comp.empty()) comp += '-';
                    comp += std::to_string(pos - prev);
                    prev = pos;
                }
            if (!comp.empty()) comp += '-';
            comp += std::to_string(n - prev);
            const double freq = st.composition_histogram[mask] / total;
            t.rows.push_back({comp, std::to_string(st.composition_histogram[mask]),
                              double_to_string(freq), double_to_string(uniform),
                              double_to_string(binomial_std_err(freq, st.draws))});
        }
    } else {
        t.columns = {"statistic", "value"};
        t.rows.push_back({"mean_parts", double_to_string(st.mean_parts())});
        t.rows.push_back(
            {"var_parts", double_to_string(st.part_count_sq_sum / total -
                                           st.mean_parts() * st.mean_parts())});
    }
    emit_table(t, c, out);
}

// ---------------------------------------------------------------------------
// asympt
// ---------------------------------------------------------------------------

void run_asympt_report(const std::string& quantity, const LawOpts& law, int n,
                       const std::string& mode_s, bool period_adjust, const CommonOpts& c,
                       std::ostream& out) {
    Quantity q = quantity_from_name(quantity);
    AsymptoticReport rep;
    if (q == Quantity::irreducible_prob || q == Quantity::count_f) {
        rep = report_compositions(q, n);
    } else {
        StepSpec s = resolve_law(law);
        rep = report_walk(s, q, n, parse_mode(mode_s), period_adjust);
    }
    if (c.verify) rep.verify();
    if (c.out_format == "json") {
        nlohmann::ordered_json j;
        j["command"] = "asympt report";
        j["quantity"] = quantity_name(rep.quantity);
        j["subject"] = rep.subject;
        j["exponent"] = rep.exponent;
        j["target_constant"] = rep.target_constant;
        j["target_provenance"] = rep.target_provenance;
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        for (const auto& p : rep.scaled_values) pts.push_back({{"n", p.n}, {"scaled", p.scaled}});
        j["scaled_values"] = pts;
        j["raw_last"] = rep.raw_last;
        j["extrapolated_limit"] = rep.extrapolated_limit;
        j["rel_err"] = rep.rel_err;
        j["period"] = rep.period;
        emit_raw_json(j, c, out);
    } else {
        OutputTable t;
        t.columns = {"n", "scaled"};
        t.meta = {{"command", "asympt report"},
                  {"quantity", quantity_name(rep.quantity)},
                  {"subject", rep.subject},
                  {"exponent", double_to_string(rep.exponent)},
                  {"target_constant", double_to_string(rep.target_constant)},
                  {"target_provenance", rep.target_provenance},
                  {"raw_last", double_to_string(rep.raw_last)},
                  {"extrapolated_limit", double_to_string(rep.extrapolated_limit)},
                  {"rel_err", double_to_string(rep.rel_err)},
                  {"period", std::to_string(rep.period)}};
        for (const auto& p : rep.scaled_values)
            t.rows.push_back({std::to_string(p.n), double_to_string(p.scaled)});
        emit_table(t, c, out);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Parser assembly
// ---------------------------------------------------------------------------

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact and simulated first-return statistics for composition pairs and "
                 "mean-zero integer walks"};
    app.require_subcommand(1);
    std::function<void()> action;

    // compositions ----------------------------------------------------------
    auto* compositions = app.add_subcommand("compositions", "irreducible composition-pair counts");
    compositions->require_subcommand(1);
    {
        auto* count = compositions->add_subcommand("count", "exact counts by renewal inversion");
        auto n = std::make_shared<int>(10);
        auto two_var = std::make_shared<bool>(false);
        auto k_max = std::make_shared<int>(0);
        auto c = std::make_shared<CommonOpts>();
        count->add_option("--n", *n, "max n")->required()->check(CLI::PositiveNumber);
        count->add_flag("--two-var", *two_var, "resolve counts by part count k");
        count->add_option("--k-max", *k_max, "max k for --two-var (default n)");
        add_common(count, *c);
        count->callback([=, &out] { run_compositions_count(*n, *two_var, *k_max, *c, out); });

        auto* oracle = compositions->add_subcommand("oracle", "brute-force enumeration (n <= 14)");
        auto no = std::make_shared<int>(8);
        auto co = std::make_shared<CommonOpts>();
        oracle->add_option("--n", *no, "n to enumerate")->required()->check(CLI::PositiveNumber);
        add_common(oracle, *co);
        oracle->callback([=, &out] { run_compositions_oracle(*no, *co, out); });

        auto* prob = compositions->add_subcommand("probability", "exact p(n) = f(n)/C(2n-2,n-1)");
        auto np = std::make_shared<int>(10);
        auto cp = std::make_shared<CommonOpts>();
        prob->add_option("--n", *np, "n")->required()->check(CLI::PositiveNumber);
        add_common(prob, *cp);
        prob->callback([=, &out] { run_compositions_probability(*np, *cp, out); });
    }

    // series ------------------------------------------------------------------
    auto* series = app.add_subcommand("series", "exact generating-function expansions");
    series->require_subcommand(1);
    {
        auto* thm1 = series->add_subcommand("thm1", "z/(sqrt(1-4z)+z) coefficients");
        auto order = std::make_shared<int>(20);
        auto c = std::make_shared<CommonOpts>();
        thm1->add_option("--order", *order, "truncation order")->required()->check(CLI::PositiveNumber);
        add_common(thm1, *c);
        thm1->callback([=, &out] { run_series_thm1(*order, *c, out); });

        auto* thm12d = series->add_subcommand("thm1-2d", "two-variable coefficients f(n,k)");
        auto ox = std::make_shared<int>(10);
        auto oy = std::make_shared<int>(10);
        auto c2 = std::make_shared<CommonOpts>();
        thm12d->add_option("--order-x", *ox, "x truncation")->required()->check(CLI::PositiveNumber);
        thm12d->add_option("--order-y", *oy, "y truncation")->required()->check(CLI::PositiveNumber);
        add_common(thm12d, *c2);
        thm12d->callback([=, &out] { run_series_thm1_2d(*ox, *oy, *c2, out); });

        auto* leg = series->add_subcommand("check-legendre",
                                           "sum C(n,k)^2 y^k == (1-y)^n P_n((1+y)/(1-y))");
        auto n = std::make_shared<int>(10);
        auto y = std::make_shared<std::string>("1/2");
        auto c3 = std::make_shared<CommonOpts>();
        leg->add_option("--n", *n, "degree")->required();
        leg->add_option("--y", *y, "rational evaluation point p/q")->required();
        add_common(leg, *c3);
        leg->callback([=, &out] { run_series_legendre(*n, *y, *c3, out); });

        auto* master = series->add_subcommand("master-check",
                                              "F/(1-F) == xy/sqrt(1-2x(1+y)+x^2(1-y)^2) == "
                                              "binomial squares");
        auto mx = std::make_shared<int>(20);
        auto my = std::make_shared<int>(20);
        auto c4 = std::make_shared<CommonOpts>();
        master->add_option("--order-x", *mx, "x truncation")->required()->check(CLI::PositiveNumber);
        master->add_option("--order-y", *my, "y truncation")->required()->check(CLI::PositiveNumber);
        add_common(master, *c4);
        master->callback([=, &out] { run_series_master(*mx, *my, *c4, out); });
    }

    // walk ----------------------------------------------------------------
    auto* walk = app.add_subcommand("walk", "exact/float lattice-walk tables");
    walk->require_subcommand(1);
    {
        auto* validate = walk->add_subcommand("validate", "validate a step law");
        auto law = std::make_shared<LawOpts>();
        auto c = std::make_shared<CommonOpts>();
        add_law(validate, *law);
        add_common(validate, *c);
        validate->callback([=, &out] { run_walk_validate(*law, *c, out); });

        auto* table = walk->add_subcommand("table", "a'_n, a_n, Q_n");
        auto law2 = std::make_shared<LawOpts>();
        auto n2 = std::make_shared<int>(100);
        auto mode2 = std::make_shared<std::string>("exact");
        auto tail2 = std::make_shared<double>(1e-18);
        auto c2 = std::make_shared<CommonOpts>();
        add_law(table, *law2);
        table->add_option("--n", *n2, "horizon")->required()->check(CLI::PositiveNumber);
        table->add_option("--mode", *mode2, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        table->add_option("--tail-threshold", *tail2, "float-mode pruning threshold");
        add_common(table, *c2);
        table->callback([=, &out] { run_walk_table(*law2, *n2, *mode2, *tail2, *c2, out); });

        auto* killed = walk->add_subcommand("killed", "taboo probabilities and survival from x");
        auto law3 = std::make_shared<LawOpts>();
        auto n3 = std::make_shared<int>(50);
        auto w3 = std::make_shared<int>(10);
        auto mode3 = std::make_shared<std::string>("exact");
        auto tail3 = std::make_shared<double>(1e-18);
        auto c3 = std::make_shared<CommonOpts>();
        add_law(killed, *law3);
        killed->add_option("--n", *n3, "horizon")->required()->check(CLI::PositiveNumber);
        killed->add_option("--window", *w3, "|x| <= window resolution");
        killed->add_option("--mode", *mode3, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        killed->add_option("--tail-threshold", *tail3, "float-mode pruning threshold");
        add_common(killed, *c3);
        killed->callback([=, &out] { run_walk_killed(*law3, *n3, *w3, *mode3, *tail3, *c3, out); });

        auto* charfun = walk->add_subcommand("charfun", "p_n(0,x) by inversion-integral quadrature");
        auto law4 = std::make_shared<LawOpts>();
        auto n4 = std::make_shared<int>(10);
        auto x4 = std::make_shared<long>(0);
        auto pts4 = std::make_shared<int>(0);
        auto c4 = std::make_shared<CommonOpts>();
        add_law(charfun, *law4);
        charfun->add_option("--n", *n4, "step count")->required()->check(CLI::PositiveNumber);
        charfun->add_option("--x", *x4, "endpoint");
        charfun->add_option("--points", *pts4, "quadrature points (0 = exact rule)");
        add_common(charfun, *c4);
        charfun->callback([=, &out, &err] { run_walk_charfun(*law4, *n4, *x4, *pts4, *c4, out, err); });

        auto* reg = walk->add_subcommand("regularity", "scaled increment/taboo sequences");
        auto law5 = std::make_shared<LawOpts>();
        auto n5 = std::make_shared<int>(1000);
        auto w5 = std::make_shared<int>(25);
        auto mode5 = std::make_shared<std::string>("float");
        auto c5 = std::make_shared<CommonOpts>();
        add_law(reg, *law5);
        reg->add_option("--n", *n5, "horizon")->required()->check(CLI::PositiveNumber);
        reg->add_option("--window", *w5, "|x| <= window for delta/taboo maxima");
        reg->add_option("--mode", *mode5, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        add_common(reg, *c5);
        reg->callback([=, &out] { run_walk_regularity(*law5, *n5, *w5, *mode5, *c5, out); });
    }

    // simulate --------------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo");
    simulate->require_subcommand(1);
    {
        auto* game = simulate->add_subcommand("game", "two tokens advance by die rolls until collision");
        auto faces = std::make_shared<int>(6);
        auto trials = std::make_shared<std::uint64_t>(1000000);
        auto horizon = std::make_shared<std::uint64_t>(100000);
        auto seed = std::make_shared<std::uint64_t>(42);
        auto workers = std::make_shared<int>(1);
        auto c = std::make_shared<CommonOpts>();
        game->add_option("--faces", *faces, "die faces")->check(CLI::Range(2, 1000000));
        game->add_option("--trials", *trials, "trial count")->required();
        game->add_option("--horizon", *horizon, "max steps per trial");
        game->add_option("--seed", *seed, "RNG seed");
        game->add_option("--workers", *workers, "logical substreams")->check(CLI::PositiveNumber);
        add_common(game, *c);
        game->callback([=, &out] {
            run_simulate_game(*faces, *trials, *horizon, *seed, *workers, *c, out);
        });

        auto* walk_sim = simulate->add_subcommand("walk", "first return of a step law");
        auto law = std::make_shared<std::string>();
        auto trials2 = std::make_shared<std::uint64_t>(1000000);
        auto horizon2 = std::make_shared<std::uint64_t>(100000);
        auto seed2 = std::make_shared<std::uint64_t>(42);
        auto workers2 = std::make_shared<int>(1);
        auto c2 = std::make_shared<CommonOpts>();
        walk_sim->add_option("--law", *law, "named law; geom2-diff runs untruncated")->required();
        walk_sim->add_option("--trials", *trials2, "trial count")->required();
        walk_sim->add_option("--horizon", *horizon2, "max steps per trial");
        walk_sim->add_option("--seed", *seed2, "RNG seed");
        walk_sim->add_option("--workers", *workers2, "logical substreams")->check(CLI::PositiveNumber);
        add_common(walk_sim, *c2);
        walk_sim->callback([=, &out] {
            run_simulate_walk(*law, *trials2, *horizon2, *seed2, *workers2, *c2, out);
        });

        auto* pairs = simulate->add_subcommand("pairs", "uniform random composition pairs");
        auto n = std::make_shared<int>(100);
        auto samples = std::make_shared<std::uint64_t>(100000);
        auto seed3 = std::make_shared<std::uint64_t>(7);
        auto workers3 = std::make_shared<int>(1);
        auto c3 = std::make_shared<CommonOpts>();
        pairs->add_option("--n", *n, "composition size")->required()->check(CLI::PositiveNumber);
        pairs->add_option("--samples", *samples, "sample count")->required();
        pairs->add_option("--seed", *seed3, "RNG seed");
        pairs->add_option("--workers", *workers3, "logical substreams")->check(CLI::PositiveNumber);
        add_common(pairs, *c3);
        pairs->callback([=, &out] {
            run_simulate_pairs(*n, *samples, *seed3, *workers3, *c3, out);
        });

        auto* poisson = simulate->add_subcommand("poissonized",
                                                 "uniform compositions from geometric parts");
        auto n4 = std::make_shared<int>(10);
        auto draws = std::make_shared<std::uint64_t>(100000);
        auto seed4 = std::make_shared<std::uint64_t>(7);
        auto workers4 = std::make_shared<int>(1);
        auto c4 = std::make_shared<CommonOpts>();
        poisson->add_option("--n", *n4, "composition size")->required()->check(CLI::PositiveNumber);
        poisson->add_option("--draws", *draws, "draw count")->required();
        poisson->add_option("--seed", *seed4, "RNG seed");
        poisson->add_option("--workers", *workers4, "logical substreams")->check(CLI::PositiveNumber);
        add_common(poisson, *c4);
        poisson->callback([=, &out] {
            run_simulate_poissonized(*n4, *draws, *seed4, *workers4, *c4, out);
        });
    }

    // asympt ------------------------------------------------------------------
    auto* asympt = app.add_subcommand("asympt", "asymptotic-constant comparisons");
    asympt->require_subcommand(1);
    {
        auto* report = asympt->add_subcommand("report", "scaled sequence, extrapolation, target");
        auto quantity = std::make_shared<std::string>();
        auto law = std::make_shared<LawOpts>();
        auto n = std::make_shared<int>(10000);
        auto mode = std::make_shared<std::string>("float");
        auto adjust = std::make_shared<bool>(false);
        auto c = std::make_shared<CommonOpts>();
        report->add_option("--quantity", *quantity,
                           "first-return | return-prob | survival | irreducible-prob | count-f")
            ->required();
        add_law(report, *law);
        report->add_option("--n", *n, "horizon")->required()->check(CLI::PositiveNumber);
        report->add_option("--mode", *mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        report->add_flag("--period-adjust", *adjust,
                         "evaluate periodic laws along the return subsequence, normalized by the period");
        add_common(report, *c);
        report->callback([=, &out] {
            run_asympt_report(*quantity, *law, *n, *mode, *adjust, *c, out);
        });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error[usage]: " << e.what() << "\n";
        err << app.help();
        return 1;
    } catch (const ResourceError& e) {
        err << "error[resource]: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error[domain]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error[internal]: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int parse_and_dispatch(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace compwalk
