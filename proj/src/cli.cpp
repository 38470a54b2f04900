#include "robinlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>

#include "robinlab/arithmetic.hpp"
#include "robinlab/errors.hpp"
#include "robinlab/euler_products.hpp"
#include "robinlab/gap_series.hpp"
#include "robinlab/primes.hpp"
#include "robinlab/report.hpp"
#include "robinlab/robin.hpp"

namespace robinlab::cli {

namespace {

constexpr std::uint64_t reference_limit = 10'000'000;
constexpr double reference_sum = 1.231;
constexpr double reference_upper = 1.232;
constexpr double reference_tolerance = 0.01;

SieveOptions sieve_options(const RunConfig& cfg) {
    return {static_cast<std::size_t>(cfg.segment_size), cfg.threads};
}

std::uint64_t require_limit(const RunConfig& cfg, const char* command) {
    if (!cfg.limit) throw DomainError(std::string(command) + " needs --limit");
    return *cfg.limit;
}

std::string exponents_string(const std::vector<std::uint32_t>& exps) {
    std::string s;
    for (std::size_t i = 0; i < exps.size(); ++i) s += (i ? "." : "") + std::to_string(exps[i]);
    return s;
}

Value optional_value(const std::optional<std::uint64_t>& v) {
    return v ? Value{*v} : Value{};
}

std::vector<Value> robin_row(Value n, Value sigma, const RobinEvaluation& e) {
    return {std::move(n), std::move(sigma), e.sigma_ratio, e.robin_rhs_ratio, e.delta, e.violates};
}

const std::vector<std::string> robin_columns{"n", "sigma", "sigma_ratio", "bound_ratio", "delta", "violates"};

// --- subcommands ---------------------------------------------------------

struct PrimesArgs {
    bool count_only = false;
    std::uint64_t nth = 0;
};

Report cmd_primes(const RunConfig& cfg, const PrimesArgs& a) {
    Report report;
    if (a.nth) {
        const auto table = primes_covering_count(a.nth, sieve_options(cfg));
        report.add_section("primes", {"n", "p_n"}).rows.push_back({a.nth, table.nth(a.nth)});
        return report;
    }
    const auto table = primes_up_to(require_limit(cfg, "primes"), sieve_options(cfg));
    auto& s = report.add_section("primes", {"n", "p_n"});
    if (!a.count_only) {
        const auto ps = table.primes();
        for (std::size_t i = 0; i < ps.size(); ++i) s.rows.push_back({std::uint64_t{i + 1}, ps[i]});
    }
    report.note("limit", table.limit());
    report.note("count", std::uint64_t{table.count()});
    report.note("largest", table.count() ? Value{table.primes().back()} : Value{});
    return report;
}

Report cmd_theta(const RunConfig& cfg, std::vector<std::uint64_t> at) {
    const std::uint64_t limit = at.empty() ? require_limit(cfg, "theta")
                                           : std::max(cfg.limit.value_or(0), *std::max_element(at.begin(), at.end()));
    if (at.empty()) at.push_back(limit);
    const auto table = primes_up_to(limit, sieve_options(cfg));
    Report report;
    auto& s = report.add_section("theta", {"x", "theta", "pi_x"});
    for (std::uint64_t x : at) {
        const auto r = chebyshev_theta(x, table);
        s.rows.push_back({r.x, r.theta, r.pi_x});
    }
    const auto last = chebyshev_theta(at.back(), table);
    if (last.x > 0) report.note("theta_over_x", last.theta / static_cast<double>(last.x));
    return report;
}

struct ScanArgs {
    std::uint64_t lo = 3;
    std::optional<std::uint64_t> hi;
    bool odd_only = false;
    std::size_t top = 10;
};

Report cmd_robin_scan(const RunConfig& cfg, const ScanArgs& a) {
    const std::uint64_t hi = a.hi ? *a.hi : require_limit(cfg, "robin-scan (or --hi)");
    ScanOptions opts;
    opts.odd_only = a.odd_only;
    opts.threads = cfg.threads;
    opts.top_records = a.top;
    const auto result = scan_range(a.lo, hi, opts);
    Report report;
    auto& v = report.add_section("violators", robin_columns);
    for (const auto& r : result.violators) v.rows.push_back(robin_row(r.n, r.sigma, r.eval));
    auto& t = report.add_section("top_delta", robin_columns);
    for (const auto& r : result.max_delta_records) t.rows.push_back(robin_row(r.n, r.sigma, r.eval));
    report.note("lo", a.lo);
    report.note("hi", hi);
    report.note("odd_only", a.odd_only);
    report.note("evaluated", result.evaluated);
    report.note("violators", std::uint64_t{result.violators.size()});
    report.note("max_violator", result.violators.empty() ? Value{} : Value{result.violators.back().n});
    std::string ties;
    for (std::uint64_t n : result.near_ties) ties += (ties.empty() ? "" : " ") + std::to_string(n);
    report.note("near_ties", ties);
    return report;
}

struct EvalArgs {
    std::optional<std::uint64_t> n;
    std::string factors;
    double c = 1.0;
};

Report cmd_robin_eval(const EvalArgs& a) {
    if (a.n.has_value() == !a.factors.empty()) throw DomainError("robin-eval needs exactly one of --n or --factors");
    const Factorization f = a.n ? factorize(*a.n) : Factorization::parse(a.factors);
    const auto e = robin_check(f);
    const auto n = f.value();
    Value sigma;
    try {
        sigma = sigma_of(f);
    } catch (const CapacityError&) {
    }
    Report report;
    report.add_section("robin", robin_columns)
        .rows.push_back(robin_row(n ? Value{*n} : Value{f.to_string()}, sigma, e));
    auto& b = report.add_section("bounds", {"variant", "c", "rhs_ratio", "satisfied"});
    const std::pair<const char*, BoundVariant> variants[] = {{"scaled", BoundVariant::scaled_argument},
                                                             {"subexp", BoundVariant::subexp_argument},
                                                             {"additive", BoundVariant::additive_error}};
    for (const auto& [name, variant] : variants) {
        if (variant != BoundVariant::scaled_argument && e.log_n < std::log(3.0)) continue;
        const double rhs = bound_rhs(variant, f, a.c);
        b.rows.push_back({std::string(name), a.c, rhs, e.sigma_ratio <= rhs});
    }
    report.note("factorization", f.to_string());
    report.note("log_n", e.log_n);
    report.note("loglog_n", e.loglog_n);
    report.note("special", std::string(e.special == RobinSpecial::normal ? "normal" : "loglog_nonpositive"));
    report.note("near_tie", e.near_tie);
    return report;
}

struct ExtremalArgs {
    std::size_t m_max = 20;
    std::size_t budget = 1000;
    bool records_only = false;
};

Report cmd_robin_extremal(const ExtremalArgs& a) {
    ExtremalCandidateGenerator gen(a.m_max, a.budget, {a.records_only});
    Report report;
    auto& s = report.add_section("candidates", {"index", "exponents", "n", "log_n", "sigma_ratio", "bound_ratio",
                                                "delta", "violates"});
    std::uint64_t index = 0;
    double best = -INFINITY;
    std::string best_at;
    bool any_violation = false;
    while (auto c = gen.next()) {
        const auto e = robin_check(c->factorization);
        ++index;
        Value delta;
        if (e.log_n >= std::log(3.0)) {
            delta = e.delta;
            if (e.delta > best) {
                best = e.delta;
                best_at = c->factorization.to_string();
            }
        }
        any_violation = any_violation || e.violates;
        s.rows.push_back({index, exponents_string(c->exponents), optional_value(c->factorization.value()),
                          e.log_n, e.sigma_ratio, e.robin_rhs_ratio, delta, e.violates});
    }
    report.note("emitted", index);
    report.note("max_delta", index ? Value{best} : Value{});
    report.note("max_delta_at", best_at);
    report.note("any_violation", any_violation);
    return report;
}

struct ConditionArgs {
    std::optional<std::size_t> m_max;
    std::vector<unsigned> ks{1};
};

Report cmd_condition7(const RunConfig& cfg, const ConditionArgs& a) {
    std::size_t m_max = 0;
    std::optional<PrimeTable> primes;
    if (a.m_max) {
        m_max = *a.m_max;
        primes = primes_covering_count(m_max, sieve_options(cfg));
    } else {
        primes = primes_up_to(require_limit(cfg, "condition7 (or --m-max)"), sieve_options(cfg));
        m_max = primes->count();
    }
    if (a.ks.empty()) throw DomainError("condition7 needs at least one k");
    const unsigned k_max = *std::max_element(a.ks.begin(), a.ks.end());
    const EulerProductTable table(*primes, m_max, k_max);
    const auto sweep = mertens_condition_sweep(table, m_max, a.ks, cfg.checkpoint_every.value_or(1));

    Report report;
    auto& prod = report.add_section("condition7", {"m", "p_m", "k", "lhs_log", "rhs_log", "holds"});
    auto& excess = report.add_section("condition16", {"m", "p_m", "k", "E", "rhs_sum", "holds"});
    for (const auto& r : sweep.rows) {
        prod.rows.push_back({std::uint64_t{r.m}, r.p_m, std::uint64_t{r.k}, r.product_form.lhs_log,
                             r.product_form.rhs_log, r.product_form.holds});
        excess.rows.push_back({std::uint64_t{r.m}, r.p_m, std::uint64_t{r.k}, r.excess_form.E,
                               r.excess_form.rhs_sum, r.excess_form.holds});
    }
    report.note("m_max", std::uint64_t{m_max});
    report.note("p_m_max", table.prime(m_max));
    for (const auto& s : sweep.summary) {
        const std::string k = std::to_string(s.k);
        report.note("first_hold_m_k" + k, optional_value(s.first_hold_m));
        report.note("last_fail_m_k" + k, optional_value(s.last_fail_m));
        report.note("forms_agree_k" + k, s.forms_agree);
    }
    report.note("final_E", table.E_of(m_max));
    return report;
}

std::optional<double> zeta_reference(unsigned s) {
    using std::numbers::pi;
    switch (s) {
        case 2: return pi * pi / 6.0;
        case 3: return 1.2020569031595942854;
        case 4: return std::pow(pi, 4) / 90.0;
        case 5: return 1.0369277551433699263;
        case 6: return std::pow(pi, 6) / 945.0;
        case 8: return std::pow(pi, 8) / 9450.0;
        default: return std::nullopt;
    }
}

Report cmd_zeta(const RunConfig& cfg, const std::vector<unsigned>& ks, const std::vector<std::size_t>& ms) {
    if (ks.empty() || ms.empty()) throw DomainError("zeta needs at least one k and one m");
    const unsigned k_max = *std::max_element(ks.begin(), ks.end());
    const std::size_t m_max = *std::max_element(ms.begin(), ms.end());
    if (std::find(ms.begin(), ms.end(), std::size_t{0}) != ms.end()) throw DomainError("m must be at least 1");
    const auto table = EulerProductTable::with_prime_count(m_max, k_max, sieve_options(cfg));
    Report report;
    auto& s = report.add_section("zeta", {"k", "m", "p_m", "lo", "hi", "width", "tail_bound_log", "reference",
                                          "contains_reference"});
    for (unsigned k : ks)
        for (std::size_t m : ms) {
            const auto iv = table.zeta_enclosure(k, m);
            const auto ref = zeta_reference(k + 1);
            s.rows.push_back({std::uint64_t{k}, std::uint64_t{m}, table.prime(m), iv.lo, iv.hi, iv.width(),
                              tail_bound_log(k + 1.0, static_cast<double>(table.prime(m))),
                              ref ? Value{*ref} : Value{}, ref ? Value{iv.contains(*ref)} : Value{}});
        }
    return report;
}

struct GapArgs {
    std::string preset;
};

Report cmd_gap_series(const RunConfig& cfg, const GapArgs& a) {
    const bool reference_run = !a.preset.empty();
    if (reference_run && a.preset != "paper45" && a.preset != "reference-1e7")
        throw DomainError("unknown preset '" + a.preset + "'");
    const std::uint64_t limit = reference_run ? reference_limit : require_limit(cfg, "gap-series");
    const auto table = primes_up_to(limit, sieve_options(cfg));
    Report report;
    auto& s = report.add_section("gap_series", {"n", "p_n", "gap", "term", "partial_sum", "running_sup"});
    SeriesScanOptions opts;
    opts.checkpoint_every = cfg.checkpoint_every.value_or(100000);
    opts.on_checkpoint = [&](const GapCheckpoint& c) {
        s.rows.push_back({c.n, c.p_n, c.gap, c.term, c.partial_sum, c.running_sup});
    };
    const auto state = series_scan(table, limit, opts);
    const auto theta = theta_inequality_check(table, limit, state.running_sup);
    report.note("limit", limit);
    report.note("S(limit)", state.partial_sum);
    report.note("sup", state.running_sup);
    report.note("sup_at", state.sup_at);
    report.note("max_c_needed", theta.max_c_needed);
    if (reference_run) {
        report.note("reference", reference_sum);
        report.note("at_most_1.232", state.partial_sum <= reference_upper);
        report.note("within_0.01_of_reference", std::fabs(state.partial_sum - reference_sum) <= reference_tolerance);
    }
    return report;
}

struct ThetaCheckArgs {
    std::optional<double> c0;
    std::string c0_source;
};

Report cmd_theta_check(const RunConfig& cfg, const ThetaCheckArgs& a) {
    const std::uint64_t limit = require_limit(cfg, "theta-check");
    std::string source = a.c0_source.empty() ? (a.c0 ? "explicit" : "series_sup") : a.c0_source;
    if (source != "explicit" && source != "series_sup") throw DomainError("--c0-source must be series_sup or explicit");
    if (source == "explicit" && !a.c0) throw DomainError("--c0-source explicit needs --c0");
    const auto table = primes_up_to(std::max<std::uint64_t>(limit, 3), sieve_options(cfg));

    Report report;
    double c0 = a.c0.value_or(0.0);
    std::optional<GapSeriesState> series;
    if (source == "series_sup") {
        if (limit < 3) throw DomainError("series_sup needs --limit >= 3");
        series = series_scan(table, limit);
        c0 = series->running_sup;
    }
    auto& s = report.add_section("theta_check", {"p_n", "theta", "c_needed", "satisfied"});
    const std::uint64_t every = cfg.checkpoint_every.value_or(100000);
    const std::size_t total = table.count_up_to(limit);
    std::uint64_t index = 0;
    const auto result = theta_inequality_check(table, limit, c0, [&](const ThetaCheckRecord& r) {
        ++index;
        if (index % every == 0 || index == total || !r.satisfied)
            s.rows.push_back({r.p_n, r.theta, r.c_needed, r.satisfied});
    });
    report.note("limit", limit);
    report.note("c0", c0);
    report.note("c0_source", source);
    if (series) report.note("series_sup_at", series->sup_at);
    report.note("checked", result.checked);
    report.note("all_satisfied", result.all_satisfied);
    report.note("max_c_needed", result.checked ? Value{result.max_c_needed} : Value{});
    report.note("max_c_at", result.checked ? Value{result.max_c_at} : Value{});
    report.note("first_failure_p", result.first_failure ? Value{result.first_failure->p_n} : Value{});
    return report;
}

}  // namespace

void RunConfig::validate() const {
    if (threads == 0) throw DomainError("--threads must be at least 1");
    if (segment_size < (std::uint64_t{1} << 16) || !std::has_single_bit(segment_size))
        throw DomainError("--segment-size must be a power of two >= 65536");
    if (checkpoint_every && *checkpoint_every == 0) throw DomainError("--checkpoint-every must be at least 1");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Robin inequality, Euler product and prime-gap series verification", "robinlab"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string format = "csv";
    app.add_option("--limit", cfg.limit, "Sieve / scan bound");
    app.add_option("--format", format, "Output encoding")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", cfg.threads, "Worker threads (output does not depend on it)");
    app.add_option("--segment-size", cfg.segment_size, "Sieve segment size in odd entries");
    app.add_option("--checkpoint-every", cfg.checkpoint_every, "Row cadence for long scans");
    app.add_option("--out", cfg.output_path, "Write output to PATH instead of stdout");

    std::function<Report()> action;

    PrimesArgs primes_args;
    auto* primes = app.add_subcommand("primes", "List primes up to --limit");
    primes->add_flag("--count-only", primes_args.count_only, "Only print the summary");
    primes->add_option("--nth", primes_args.nth, "Print p_n instead")->check(CLI::PositiveNumber);
    primes->callback([&] { action = [&] { return cmd_primes(cfg, primes_args); }; });

    std::vector<std::uint64_t> theta_at;
    auto* theta = app.add_subcommand("theta", "Chebyshev theta(x)");
    theta->add_option("--at", theta_at, "Evaluation points (default: --limit)");
    theta->callback([&] { action = [&] { return cmd_theta(cfg, theta_at); }; });

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("robin-scan", "Exhaustive Robin inequality scan of [lo, hi]");
    scan->add_option("--lo", scan_args.lo, "First n (default 3)");
    scan->add_option("--hi", scan_args.hi, "Last n (default --limit)");
    scan->add_flag("--odd-only", scan_args.odd_only, "Only odd n");
    scan->add_option("--top", scan_args.top, "Number of top-delta records (default 10)");
    scan->callback([&] { action = [&] { return cmd_robin_scan(cfg, scan_args); }; });

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("robin-eval", "Evaluate Robin's inequality and related bounds for one n");
    eval->add_option("--n", eval_args.n, "n < 2^64");
    eval->add_option("--factors", eval_args.factors, "n as a factorization, e.g. 2^4*3^2*5*7");
    eval->add_option("--c", eval_args.c, "Constant for the bound variants (>= 1)");
    eval->callback([&] { action = [&] { return cmd_robin_eval(eval_args); }; });

    ExtremalArgs ext_args;
    auto* ext = app.add_subcommand("robin-extremal", "Enumerate superabundant-shaped candidates");
    ext->add_option("--m-max", ext_args.m_max, "Number of leading primes (default 20)");
    ext->add_option("--budget", ext_args.budget, "Maximum candidates emitted (default 1000)");
    ext->add_flag("--records-only", ext_args.records_only, "Only sigma(n)/n records");
    ext->callback([&] { action = [&] { return cmd_robin_extremal(ext_args); }; });

    ConditionArgs cond_args;
    auto* cond = app.add_subcommand("condition7", "Mertens-product condition sweep, both forms");
    cond->add_option("--m-max", cond_args.m_max, "Largest m (default: pi(--limit))");
    cond->add_option("--k", cond_args.ks, "Exponents k (default 1)")->delimiter(',');
    cond->callback([&] { action = [&] { return cmd_condition7(cfg, cond_args); }; });

    std::vector<unsigned> zeta_ks{1};
    std::vector<std::size_t> zeta_ms{1, 10, 100, 1000};
    auto* zeta = app.add_subcommand("zeta", "Enclosures of zeta(k+1) from partial Euler products");
    zeta->add_option("--k", zeta_ks, "Exponents k (default 1)")->delimiter(',');
    zeta->add_option("--m", zeta_ms, "Prime counts m (default 1,10,100,1000)")->delimiter(',');
    zeta->callback([&] { action = [&] { return cmd_zeta(cfg, zeta_ks, zeta_ms); }; });

    GapArgs gap_args;
    auto* gap = app.add_subcommand("gap-series", "Prime-gap series partial sums and running sup");
    gap->add_option("--preset", gap_args.preset, "paper45: reference run at limit 10^7");
    gap->callback([&] { action = [&] { return cmd_gap_series(cfg, gap_args); }; });

    ThetaCheckArgs tc_args;
    auto* tc = app.add_subcommand("theta-check", "theta(p) <= p + c0 sqrt(p) log^2 p for all p <= --limit");
    tc->add_option("--c0", tc_args.c0, "Explicit constant");
    tc->add_option("--c0-source", tc_args.c0_source, "series_sup or explicit");
    tc->callback([&] { action = [&] { return cmd_theta_check(cfg, tc_args); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
        cfg.validate();
        const Report report = action();
        std::ofstream file;
        std::ostream* sink = &out;
        if (!cfg.output_path.empty()) {
            file.open(cfg.output_path, std::ios::binary);
            if (!file) throw DomainError("cannot open '" + cfg.output_path + "' for writing");
            sink = &file;
        }
        if (cfg.format == OutputFormat::json)
            write_json(*sink, report);
        else
            write_csv(*sink, report);
        sink->flush();
        if (!*sink) throw CapacityError("write failed");
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace robinlab::cli
