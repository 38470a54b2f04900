#include "robinlab/gap_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "robinlab/errors.hpp"
#include "robinlab/summation.hpp"

namespace robinlab {

namespace {

void check_pair(std::uint64_t p, std::uint64_t p_next) {
    if (p < 2) throw DomainError("gap term needs p >= 2");
    if (p_next <= p) throw DomainError("gap term needs p_next > p");
}

}  // namespace

double gap_term(std::uint64_t p, std::uint64_t p_next) {
    check_pair(p, p_next);
    const double x = static_cast<double>(p);
    const double log_p = std::log(x);
    return (log_p - static_cast<double>(p_next - p)) / (std::sqrt(x) * log_p * log_p);
}

double gap_term_ratio_form(std::uint64_t p, std::uint64_t p_next) {
    check_pair(p, p_next);
    const double x = static_cast<double>(p);
    const double log_p = std::log(x);
    return (1.0 - static_cast<double>(p_next - p) / log_p) / (std::sqrt(x) * log_p);
}

GapCheckpoint GapSeriesAccumulator::push(std::uint64_t p, std::uint64_t p_next) {
    const double term = gap_term(p, p_next);
    // Neumaier step, inlined so the carry is observable in the state
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term))
        carry_ += (sum_ - t) + term;
    else
        carry_ += (term - t) + sum_;
    sum_ = t;
    ++n_;
    p_n_ = p;
    const double s = sum_ + carry_;
    if (n_ == 1 || s > sup_) {
        sup_ = s;
        sup_at_ = n_;
    }
    return {n_, p, p_next - p, term, s, sup_};
}

GapSeriesState GapSeriesAccumulator::state() const {
    return {n_, p_n_, sum_ + carry_, carry_, sup_, sup_at_};
}

GapSeriesState series_scan(const PrimeTable& table, std::uint64_t limit, const SeriesScanOptions& options) {
    if (limit < 3) throw DomainError("gap series needs limit >= 3");
    if (limit > table.limit()) throw RangeError("gap series limit exceeds the sieved range");
    if (options.checkpoint_every == 0) throw DomainError("checkpoint cadence must be at least 1");
    const auto primes = table.primes().first(table.count_up_to(limit));
    GapSeriesAccumulator acc;
    GapCheckpoint last{};
    bool last_emitted = false;
    for (std::size_t i = 0; i + 1 < primes.size(); ++i) {
        last = acc.push(primes[i], primes[i + 1]);
        if (options.on_term) options.on_term(last);
        last_emitted = last.n % options.checkpoint_every == 0;
        if (last_emitted && options.on_checkpoint) options.on_checkpoint(last);
    }
    if (!last_emitted && options.on_checkpoint) options.on_checkpoint(last);
    return acc.state();
}

GapSeriesState series_scan(std::uint64_t limit, const SeriesScanOptions& options, const SieveOptions& sieve) {
    if (limit < 3) throw DomainError("gap series needs limit >= 3");
    return series_scan(primes_up_to(limit, sieve), limit, options);
}

EquivalenceReport equivalence_check(const PrimeTable& table, std::span<const std::size_t> indices,
                                    double tolerance) {
    EquivalenceReport report;
    for (std::size_t n : indices) {
        const std::uint64_t p = table.nth(n);
        const std::uint64_t gap = table.gap(n);
        const double a = gap_term(p, p + gap);
        const double b = gap_term_ratio_form(p, p + gap);
        const double log_p = std::log(static_cast<double>(p));
        const double scale = (log_p + static_cast<double>(gap)) /
                             (std::sqrt(static_cast<double>(p)) * log_p * log_p);
        const double err = std::fabs(a - b) / scale;
        if (err > report.max_scaled_error) {
            report.max_scaled_error = err;
            report.worst_index = n;
        }
        if (!(err <= tolerance)) report.agree = false;
    }
    return report;
}

CRecursion c_recursion(const PrimeTable& table, std::uint64_t limit) {
    if (limit < 3) throw DomainError("c recursion needs limit >= 3");
    if (limit > table.limit()) throw RangeError("c recursion limit exceeds the sieved range");
    const auto primes = table.primes().first(table.count_up_to(limit));
    CRecursion out;
    out.values.reserve(primes.size());
    double c_step = 0.0;
    CompensatedSum closed;
    for (std::size_t i = 0; i + 1 < primes.size(); ++i) {
        const double term = gap_term(primes[i], primes[i + 1]);
        c_step = c_step + term;
        closed.add(term);
        out.values.emplace_back(i + 2, closed.value());
        out.max_abs_difference = std::max(out.max_abs_difference, std::fabs(c_step - closed.value()));
    }
    return out;
}

ThetaCheckResult theta_inequality_check(const PrimeTable& table, std::uint64_t limit, double c0,
                                        const std::function<void(const ThetaCheckRecord&)>& on_record) {
    if (!std::isfinite(c0)) throw DomainError("c0 must be finite");
    if (limit > table.limit()) throw RangeError("theta check limit exceeds the sieved range");
    ThetaCheckResult result;
    CompensatedSum theta;
    for (std::uint64_t p : table.primes().first(table.count_up_to(limit))) {
        const double x = static_cast<double>(p);
        const double log_p = std::log(x);
        theta.add(log_p);
        const double scale = std::sqrt(x) * log_p * log_p;
        ThetaCheckRecord rec;
        rec.p_n = p;
        rec.theta = theta.value();
        rec.c_needed = (rec.theta - x) / scale;
        rec.satisfied = rec.c_needed <= c0;
        if (result.checked == 0 || rec.c_needed > result.max_c_needed) {
            result.max_c_needed = rec.c_needed;
            result.max_c_at = p;
        }
        ++result.checked;
        if (!rec.satisfied) {
            result.all_satisfied = false;
            if (!result.first_failure) result.first_failure = rec;
        }
        if (on_record) on_record(rec);
    }
    result.final_theta = theta.value();
    return result;
}

}  // namespace robinlab
