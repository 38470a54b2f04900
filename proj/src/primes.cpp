#include "robinlab/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "robinlab/errors.hpp"
#include "robinlab/summation.hpp"

namespace robinlab {

namespace {

constexpr std::uint64_t default_budget_mb = 4096;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Plain sieve for the base primes; sqrt of any 64-bit limit stays below 2^32.
std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

// Odd primes in [lo, hi) where lo is odd; base holds the odd primes <= sqrt(hi - 1).
void sieve_odd_segment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint64_t> base,
                       std::vector<unsigned char>& marks, std::vector<std::uint64_t>& out) {
    if (hi <= lo) return;
    const std::uint64_t entries = (hi - lo + 1) / 2;
    marks.assign(entries, 1);
    for (std::uint64_t p : base) {
        const auto pp = static_cast<unsigned __int128>(p) * p;
        if (pp >= hi) break;
        std::uint64_t start;
        if (pp >= lo) {
            start = static_cast<std::uint64_t>(pp);
        } else {
            start = (lo + p - 1) / p * p;
            if (start % 2 == 0) start += p;
        }
        for (std::uint64_t j = (start - lo) / 2; j < entries; j += p) marks[j] = 0;
    }
    for (std::uint64_t j = 0; j < entries; ++j) {
        const std::uint64_t v = lo + 2 * j;
        if (marks[j] && v > 1) out.push_back(v);
    }
}

void validate(const SieveOptions& options) {
    if (options.segment_size < 2 || !std::has_single_bit(options.segment_size))
        throw DomainError("segment size must be a power of two");
    if (options.threads == 0) throw DomainError("thread count must be at least 1");
}

// Primes in [lo, hi) split into segments, optionally sieved on several threads.
std::vector<std::uint64_t> sieve_range(std::uint64_t lo, std::uint64_t hi,
                                       const SieveOptions& options) {
    validate(options);
    std::vector<std::uint64_t> result;
    if (hi <= lo || hi <= 2) return result;
    if (lo <= 2) {
        result.push_back(2);
        lo = 3;
    }
    if (lo % 2 == 0) ++lo;
    if (hi <= lo) return result;

    auto base = small_primes(isqrt(hi - 1));
    std::erase(base, 2);

    const std::uint64_t span_per_segment = 2 * static_cast<std::uint64_t>(options.segment_size);
    const std::uint64_t segments = (hi - lo + span_per_segment - 1) / span_per_segment;
    std::vector<std::vector<std::uint64_t>> found(segments);

    auto work = [&](std::uint64_t first, std::uint64_t stride) {
        std::vector<unsigned char> marks;
        for (std::uint64_t s = first; s < segments; s += stride) {
            const std::uint64_t a = lo + s * span_per_segment;
            const std::uint64_t b = std::min(hi, a + span_per_segment);
            sieve_odd_segment(a, b, base, marks, found[s]);
        }
    };

    const unsigned threads = static_cast<unsigned>(
        std::min<std::uint64_t>(options.threads, std::max<std::uint64_t>(segments, 1)));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    }

    std::size_t total = result.size();
    for (const auto& f : found) total += f.size();
    result.reserve(total);
    for (auto& f : found) result.insert(result.end(), f.begin(), f.end());
    return result;
}

std::uint64_t estimated_table_bytes(std::uint64_t limit, const SieveOptions& options) {
    // pi(x) < 1.25506 x / log x for x > 1
    const double x = static_cast<double>(std::max<std::uint64_t>(limit, 17));
    const double count = 1.25506 * x / std::log(x) + 16.0;
    const double segments = static_cast<double>(options.segment_size) * options.threads;
    return static_cast<std::uint64_t>(8.0 * count + segments + 8.0 * std::sqrt(x));
}

}  // namespace

std::uint64_t memory_budget_bytes() {
    std::uint64_t mb = default_budget_mb;
    if (const char* env = std::getenv("ROBINLAB_MEM_BUDGET_MB"); env && *env) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') mb = v;
    }
    return mb * 1024 * 1024;
}

void require_memory(std::uint64_t bytes, std::string_view what) {
    const std::uint64_t budget = memory_budget_bytes();
    if (bytes > budget)
        throw CapacityError(std::string(what) + " needs " + std::to_string(bytes >> 20) +
                            " MiB, budget is " + std::to_string(budget >> 20) + " MiB");
}

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
    : limit_(limit), primes_(std::move(primes)) {}

std::uint64_t PrimeTable::nth(std::size_t n) const {
    if (n == 0) throw DomainError("prime index must be at least 1");
    if (n > primes_.size())
        throw RangeError("prime index " + std::to_string(n) + " beyond table of " +
                         std::to_string(primes_.size()) + " primes");
    return primes_[n - 1];
}

std::uint64_t PrimeTable::gap(std::size_t n) const {
    if (n == 0) throw DomainError("gap index must be at least 1");
    if (n + 1 > primes_.size())
        throw RangeError("gap index " + std::to_string(n) + " needs p_" + std::to_string(n + 1) +
                         " beyond the sieved range");
    return primes_[n] - primes_[n - 1];
}

std::size_t PrimeTable::count_up_to(std::uint64_t x) const {
    if (x > limit_) throw RangeError("x exceeds the sieve limit");
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                    primes_.begin());
}

PrimeTable primes_up_to(std::uint64_t limit, const SieveOptions& options) {
    validate(options);
    if (limit == UINT64_MAX) throw CapacityError("sieve limit must be below 2^64 - 1");
    require_memory(estimated_table_bytes(limit, options), "prime table");
    return PrimeTable(limit, sieve_range(0, limit + 1, options));
}

std::vector<std::uint64_t> primes_in_window(std::uint64_t lo, std::uint64_t hi,
                                            const SieveOptions& options) {
    if (hi > lo) require_memory(estimated_table_bytes(hi - lo, options), "prime window");
    return sieve_range(lo, hi, options);
}

std::uint64_t nth_prime_upper_bound(std::uint64_t n) {
    if (n < 6) return 13;
    // Rosser: p_n < n (log n + log log n) for n >= 6
    const double x = static_cast<double>(n);
    return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 1;
}

PrimeTable primes_covering_count(std::size_t n, const SieveOptions& options) {
    return primes_up_to(nth_prime_upper_bound(std::max<std::size_t>(n, 1)), options);
}

std::uint64_t nth_prime(std::uint64_t n) {
    if (n == 0) throw DomainError("prime index must be at least 1");
    return primes_covering_count(n).nth(n);
}

ThetaRecord chebyshev_theta(std::uint64_t x, const PrimeTable& table) {
    if (x > table.limit())
        throw RangeError("theta argument " + std::to_string(x) + " exceeds sieve limit " +
                         std::to_string(table.limit()));
    ThetaRecord record;
    record.x = x;
    record.pi_x = table.count_up_to(x);
    CompensatedSum sum;
    for (std::uint64_t p : table.primes().first(record.pi_x))
        sum.add(std::log(static_cast<double>(p)));
    record.theta = sum.value();
    return record;
}

}  // namespace robinlab
