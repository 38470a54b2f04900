#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace robinlab {

// Memory cap for sieve and table allocations, read from
// ROBINLAB_MEM_BUDGET_MB (default 4096 MiB).
std::uint64_t memory_budget_bytes();

// Throws CapacityError when `bytes` exceeds memory_budget_bytes().
void require_memory(std::uint64_t bytes, std::string_view what);

struct SieveOptions {
    // Odd entries per segment; a power of two.
    std::size_t segment_size = std::size_t{1} << 20;
    unsigned threads = 1;
};

// All primes <= limit in ascending order. Immutable once built.
class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes);

    std::uint64_t limit() const { return limit_; }
    std::span<const std::uint64_t> primes() const { return primes_; }
    std::size_t count() const { return primes_.size(); }

    // p_n, 1-based. Throws DomainError for n = 0 and RangeError past the end.
    std::uint64_t nth(std::size_t n) const;

    // p_{n+1} - p_n. Both primes must be in the table.
    std::uint64_t gap(std::size_t n) const;

    // Number of primes <= x; x must not exceed limit().
    std::size_t count_up_to(std::uint64_t x) const;

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> primes_;
};

PrimeTable primes_up_to(std::uint64_t limit, const SieveOptions& options = {});

// Primes in the half-open window [lo, hi), sieved with base primes up to sqrt(hi).
std::vector<std::uint64_t> primes_in_window(std::uint64_t lo, std::uint64_t hi,
                                            const SieveOptions& options = {});

// Upper bound for p_n valid for every n >= 1.
std::uint64_t nth_prime_upper_bound(std::uint64_t n);

// Table holding at least n primes.
PrimeTable primes_covering_count(std::size_t n, const SieveOptions& options = {});

// p_n, sieving as far as needed.
std::uint64_t nth_prime(std::uint64_t n);

struct ThetaRecord {
    std::uint64_t x = 0;
    double theta = 0.0;  // sum of log p over p <= x
    std::uint64_t pi_x = 0;
};

// Compensated sum of log p in ascending prime order.
ThetaRecord chebyshev_theta(std::uint64_t x, const PrimeTable& table);

}  // namespace robinlab
