#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "robinlab/primes.hpp"

namespace robinlab {

// Closed interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return lo <= x && x <= hi; }
    double width() const { return hi - lo; }
};

inline constexpr unsigned max_zeta_exponent = 60;

struct ProductState {
    std::size_t m = 0;
    std::uint64_t p_m = 0;
    double log_mertens = 0.0;  // log prod_{i<=m} (1 - 1/p_i)^-1
    double E = 0.0;            // log_mertens - (log log p_m + gamma)
    std::optional<unsigned> k;
    double log_zeta_partial = 0.0;  // log prod_{i<=m} (1 - p_i^-(k+1))^-1, when k is set
};

struct MertensConditionResult {
    double lhs_log = 0.0;  // log of the truncated Mertens product times prod (1 - p_i^-(k+1))
    double rhs_log = 0.0;  // gamma + log log p_m
    bool holds = false;
};

struct ExcessConditionResult {
    double E = 0.0;
    double rhs_sum = 0.0;  // sum -log(1 - p_i^-(k+1))
    bool holds = false;
};

// log R_s(x) <= s/(s-1) x^(1-s): upper bound for the log of the Euler-product
// tail over primes p > x. Throws DomainError unless s > 1 and x > 0.
double tail_bound_log(double s, double x);

// Prefix sums of -log(1 - 1/p_i) and -log(1 - p_i^-(k+1)) for i <= m_max,
// 1 <= k <= k_max. Immutable after construction.
class EulerProductTable {
public:
    EulerProductTable(const PrimeTable& primes, std::size_t m_max, unsigned k_max);

    // Sieves enough primes for m_max.
    static EulerProductTable with_prime_count(std::size_t m_max, unsigned k_max,
                                              const SieveOptions& options = {});

    std::size_t m_max() const { return primes_.size(); }
    unsigned k_max() const { return k_max_; }
    std::uint64_t prime(std::size_t m) const;

    double mertens_product_log(std::size_t m) const;
    double E_of(std::size_t m) const;
    double log_zeta_partial(unsigned k, std::size_t m) const;

    // prod (1 - 1/p_i)^-1 prod (1 - p_i^-(k+1)) <= e^gamma log p_m, on the log scale
    MertensConditionResult mertens_condition(std::size_t m, unsigned k) const;
    // E(p_m) <= sum -log(1 - p_i^-(k+1)); algebraically the same test
    ExcessConditionResult excess_condition(std::size_t m, unsigned k) const;

    // [P, P exp(tail_bound_log(k+1, p_m))] with P the partial product over p <= p_m;
    // endpoints are widened outward by one ulp.
    Interval zeta_enclosure(unsigned k, std::size_t m) const;

    ProductState state(std::size_t m, std::optional<unsigned> k = std::nullopt) const;

private:
    void check_m(std::size_t m) const;
    void check_k(unsigned k) const;

    std::vector<std::uint64_t> primes_;
    std::vector<double> log_mertens_;            // index m - 1
    std::vector<std::vector<double>> log_zeta_;  // [k - 1][m - 1]
    unsigned k_max_ = 0;
};

struct ConditionSweepRow {
    std::size_t m = 0;
    std::uint64_t p_m = 0;
    unsigned k = 0;
    MertensConditionResult product_form;
    ExcessConditionResult excess_form;
};

struct ConditionSweepSummary {
    unsigned k = 0;
    std::optional<std::size_t> first_hold_m;
    std::optional<std::size_t> last_fail_m;
    bool forms_agree = true;
};

struct ConditionSweep {
    std::vector<ConditionSweepRow> rows;
    std::vector<ConditionSweepSummary> summary;  // one per requested k, in request order
};

// Evaluates both forms for every m <= m_max and each k. Rows are kept for
// m = 1, m = m_max, multiples of `row_every`, and wherever the verdict changes.
ConditionSweep mertens_condition_sweep(const EulerProductTable& table, std::size_t m_max,
                               const std::vector<unsigned>& ks, std::size_t row_every = 1);

}  // namespace robinlab
