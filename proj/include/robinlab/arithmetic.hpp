#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace robinlab {

struct PrimePower {
    std::uint64_t prime = 0;
    std::uint32_t exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// n = q_1^l_1 * ... * q_m^l_m with q_i strictly increasing primes and l_i >= 1.
// The represented n may be far beyond 64 bits; it is never materialized.
class Factorization {
public:
    struct trusted_t {};
    static constexpr trusted_t trusted{};

    Factorization() = default;  // n = 1

    // Validates ordering, exponents, and primality of every q_i.
    explicit Factorization(std::vector<PrimePower> factors);

    // Skips the primality test; ordering and exponents are still checked.
    Factorization(std::vector<PrimePower> factors, trusted_t);

    std::span<const PrimePower> factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    bool is_one() const { return factors_.empty(); }

    // n itself, or nullopt when it does not fit in 64 bits.
    std::optional<std::uint64_t> value() const;

    // "2^4*3^2*5*7"; "1" for the empty factorization.
    std::string to_string() const;

    // Inverse of to_string(). Throws DomainError on malformed input.
    static Factorization parse(std::string_view text);

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    std::vector<PrimePower> factors_;
};

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

// Complete factorization of 1 <= n < 2^64. Throws DomainError for n = 0.
Factorization factorize(std::uint64_t n);

// Exact sigma(n). Throws CapacityError if sigma(n) does not fit in 64 bits.
std::uint64_t sigma_of(const Factorization& f);

// sigma(n)/n as prod (1 - q^(-l-1)) / (1 - 1/q), evaluated per factor in floating point.
double sigma_ratio_of(const Factorization& f);

// log n = sum l_i log q_i.
double log_n_of(const Factorization& f);

struct SigmaTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> sigma;  // sigma[0] unused

    std::uint64_t operator[](std::uint64_t n) const { return sigma[n]; }
};

// sigma(n) for every 1 <= n <= limit by a linear sieve.
SigmaTable sigma_sieve(std::uint64_t limit);

// sigma(n) for n in [lo, hi) with 1 <= lo. `base_primes` must contain every
// prime <= sqrt(hi - 1) in ascending order. Element i holds sigma(lo + i).
std::vector<std::uint64_t> sigma_block(std::uint64_t lo, std::uint64_t hi,
                                       std::span<const std::uint64_t> base_primes);

}  // namespace robinlab
