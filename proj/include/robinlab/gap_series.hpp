#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "robinlab/primes.hpp"

namespace robinlab {

// (log p - (p_next - p)) / (sqrt(p) log^2 p). Throws DomainError if p_next <= p or p < 2.
double gap_term(std::uint64_t p, std::uint64_t p_next);

// Same term written as (1 - (p_next - p)/log p) / (sqrt(p) log p).
double gap_term_ratio_form(std::uint64_t p, std::uint64_t p_next);

// Partial sum S_n of gap terms after n consecutive pairs.
struct GapSeriesState {
    std::uint64_t n = 0;
    std::uint64_t p_n = 0;
    double partial_sum = 0.0;
    double compensation = 0.0;
    double running_sup = 0.0;  // sup_{m<=n} S_m; meaningless while n == 0
    std::uint64_t sup_at = 0;
};

struct GapCheckpoint {
    std::uint64_t n = 0;
    std::uint64_t p_n = 0;
    std::uint64_t gap = 0;
    double term = 0.0;
    double partial_sum = 0.0;
    double running_sup = 0.0;
};

// Adds terms in the order given; the sup is tracked over every prefix.
class GapSeriesAccumulator {
public:
    GapCheckpoint push(std::uint64_t p, std::uint64_t p_next);
    GapSeriesState state() const;

private:
    std::uint64_t n_ = 0;
    std::uint64_t p_n_ = 0;
    double sum_ = 0.0;
    double carry_ = 0.0;
    double sup_ = 0.0;
    std::uint64_t sup_at_ = 0;
};

struct SeriesScanOptions {
    std::uint64_t checkpoint_every = 100000;
    // Called at every multiple of checkpoint_every and once more for the final term.
    std::function<void(const GapCheckpoint&)> on_checkpoint;
    // Called for every term; for tests and dense runs.
    std::function<void(const GapCheckpoint&)> on_term;
};

// Sums the terms of every consecutive pair p_n < p_{n+1} <= limit in ascending
// order. Throws DomainError for limit < 3 and RangeError if limit > table.limit().
GapSeriesState series_scan(const PrimeTable& table, std::uint64_t limit,
                           const SeriesScanOptions& options = {});
GapSeriesState series_scan(std::uint64_t limit, const SeriesScanOptions& options = {},
                           const SieveOptions& sieve = {});

struct EquivalenceReport {
    bool agree = true;
    double max_scaled_error = 0.0;
    std::optional<std::size_t> worst_index;
};

// Compares both forms of the term at each index n (pair p_n, p_{n+1}).
// The difference is measured relative to (log p_n + gap) / (sqrt(p_n) log^2 p_n),
// the magnitude of the summands before cancellation.
EquivalenceReport equivalence_check(const PrimeTable& table, std::span<const std::size_t> indices,
                                    double tolerance = 1e-12);

struct CRecursion {
    std::vector<std::pair<std::uint64_t, double>> values;  // (n + 1, c_{n+1}) by the closed form
    double max_abs_difference = 0.0;                      // step recursion vs closed form
};

// c_{n+1} = c_n + term(n) with c_1 = 0, against the closed form
// c_{n+1} = sum_{i<=n} term(i), for every pair with p_{n+1} <= limit.
CRecursion c_recursion(const PrimeTable& table, std::uint64_t limit);

struct ThetaCheckRecord {
    std::uint64_t p_n = 0;
    double theta = 0.0;
    double c_needed = 0.0;  // (theta(p_n) - p_n) / (sqrt(p_n) log^2 p_n)
    bool satisfied = false;  // theta(p_n) <= p_n + c0 sqrt(p_n) log^2 p_n
};

struct ThetaCheckResult {
    std::uint64_t checked = 0;
    bool all_satisfied = true;
    double max_c_needed = 0.0;
    std::uint64_t max_c_at = 0;
    std::optional<ThetaCheckRecord> first_failure;
    double final_theta = 0.0;
};

// Tests theta(p) against p + c0 sqrt(p) log^2 p for every prime p <= limit,
// accumulating theta incrementally in ascending order.
ThetaCheckResult theta_inequality_check(const PrimeTable& table, std::uint64_t limit, double c0,
                                        const std::function<void(const ThetaCheckRecord&)>& on_record = {});

}  // namespace robinlab
