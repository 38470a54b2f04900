#include "robinlab/euler_products.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "robinlab/errors.hpp"
#include "robinlab/robin.hpp"
#include "robinlab/summation.hpp"

namespace robinlab {

double tail_bound_log(double s, double x) {
    if (!(s > 1.0)) throw DomainError("tail bound needs s > 1");
    if (!(x > 0.0)) throw DomainError("tail bound needs x > 0");
    return s / (s - 1.0) * std::pow(x, 1.0 - s);
}

EulerProductTable::EulerProductTable(const PrimeTable& primes, std::size_t m_max, unsigned k_max)
    : k_max_(k_max) {
    if (m_max == 0) throw DomainError("m_max must be at least 1");
    if (k_max > max_zeta_exponent) throw DomainError("k is capped at " + std::to_string(max_zeta_exponent));
    if (m_max > primes.count())
        throw CapacityError("m_max " + std::to_string(m_max) + " exceeds the " +
                            std::to_string(primes.count()) + " sieved primes");
    require_memory(8ull * m_max * (k_max + 2), "Euler product table");

    const auto ps = primes.primes().first(m_max);
    primes_.assign(ps.begin(), ps.end());
    log_mertens_.reserve(m_max);
    CompensatedSum mertens;
    for (std::uint64_t p : primes_) {
        mertens.add(-std::log1p(-1.0 / static_cast<double>(p)));
        log_mertens_.push_back(mertens.value());
    }
    log_zeta_.resize(k_max);
    for (unsigned k = 1; k <= k_max; ++k) {
        auto& column = log_zeta_[k - 1];
        column.reserve(m_max);
        CompensatedSum sum;
        for (std::uint64_t p : primes_) {
            sum.add(-std::log1p(-std::pow(static_cast<double>(p), -static_cast<double>(k + 1))));
            column.push_back(sum.value());
        }
    }
}

EulerProductTable EulerProductTable::with_prime_count(std::size_t m_max, unsigned k_max,
                                                      const SieveOptions& options) {
    if (m_max == 0) throw DomainError("m_max must be at least 1");
    return EulerProductTable(primes_covering_count(m_max, options), m_max, k_max);
}

void EulerProductTable::check_m(std::size_t m) const {
    if (m == 0) throw DomainError("m must be at least 1");
    if (m > primes_.size())
        throw CapacityError("m = " + std::to_string(m) + " exceeds table of " +
                            std::to_string(primes_.size()) + " primes");
}

void EulerProductTable::check_k(unsigned k) const {
    if (k == 0) throw DomainError("k must be at least 1");
    if (k > max_zeta_exponent) throw DomainError("k is capped at " + std::to_string(max_zeta_exponent));
    if (k > k_max_) throw RangeError("k = " + std::to_string(k) + " not precomputed (k_max " +
                                     std::to_string(k_max_) + ")");
}

std::uint64_t EulerProductTable::prime(std::size_t m) const {
    check_m(m);
    return primes_[m - 1];
}

double EulerProductTable::mertens_product_log(std::size_t m) const {
    check_m(m);
    return log_mertens_[m - 1];
}

double EulerProductTable::E_of(std::size_t m) const {
    check_m(m);
    const double loglog_p = std::log(std::log(static_cast<double>(primes_[m - 1])));
    return log_mertens_[m - 1] - (loglog_p + constants::euler_gamma);
}

double EulerProductTable::log_zeta_partial(unsigned k, std::size_t m) const {
    check_k(k);
    check_m(m);
    return log_zeta_[k - 1][m - 1];
}

MertensConditionResult EulerProductTable::mertens_condition(std::size_t m, unsigned k) const {
    MertensConditionResult r;
    r.lhs_log = mertens_product_log(m) - log_zeta_partial(k, m);
    r.rhs_log = constants::euler_gamma + std::log(std::log(static_cast<double>(primes_[m - 1])));
    r.holds = r.lhs_log <= r.rhs_log;
    return r;
}

ExcessConditionResult EulerProductTable::excess_condition(std::size_t m, unsigned k) const {
    ExcessConditionResult r;
    r.E = E_of(m);
    r.rhs_sum = log_zeta_partial(k, m);
    r.holds = r.E <= r.rhs_sum;
    return r;
}

Interval EulerProductTable::zeta_enclosure(unsigned k, std::size_t m) const {
    const double log_partial = log_zeta_partial(k, m);
    const double tail = tail_bound_log(static_cast<double>(k) + 1.0, static_cast<double>(primes_[m - 1]));
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {std::nextafter(std::exp(log_partial), 0.0), std::nextafter(std::exp(log_partial + tail), inf)};
}

ProductState EulerProductTable::state(std::size_t m, std::optional<unsigned> k) const {
    ProductState s;
    s.m = m;
    s.p_m = prime(m);
    s.log_mertens = mertens_product_log(m);
    s.E = E_of(m);
    s.k = k;
    if (k) s.log_zeta_partial = log_zeta_partial(*k, m);
    return s;
}

ConditionSweep mertens_condition_sweep(const EulerProductTable& table, std::size_t m_max,
                               const std::vector<unsigned>& ks, std::size_t row_every) {
    if (row_every == 0) throw DomainError("row cadence must be at least 1");
    if (m_max == 0) throw DomainError("m_max must be at least 1");
    ConditionSweep sweep;
    for (unsigned k : ks) sweep.summary.push_back({k, std::nullopt, std::nullopt, true});
    std::vector<std::optional<bool>> previous(ks.size());
    for (std::size_t m = 1; m <= m_max; ++m) {
        for (std::size_t j = 0; j < ks.size(); ++j) {
            ConditionSweepRow row{m, table.prime(m), ks[j], table.mertens_condition(m, ks[j]),
                                  table.excess_condition(m, ks[j])};
            auto& s = sweep.summary[j];
            const bool holds = row.product_form.holds;
            if (holds != row.excess_form.holds) s.forms_agree = false;
            if (holds && !s.first_hold_m) s.first_hold_m = m;
            if (!holds) s.last_fail_m = m;
            const bool changed = previous[j] && *previous[j] != holds;
            previous[j] = holds;
            if (m == 1 || m == m_max || m % row_every == 0 || changed) sweep.rows.push_back(row);
        }
    }
    return sweep;
}

}  // namespace robinlab
