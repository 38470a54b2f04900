#include "robinlab/arithmetic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "robinlab/errors.hpp"
#include "robinlab/primes.hpp"
#include "robinlab/summation.hpp"

namespace robinlab {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t trial_division_bound = 1000;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

const std::vector<std::uint64_t>& trial_primes() {
    static const std::vector<std::uint64_t> primes = [] {
        std::vector<std::uint64_t> out;
        for (std::uint64_t n = 2; n < trial_division_bound; ++n) {
            bool prime = true;
            for (std::uint64_t d = 2; d * d <= n; ++d)
                if (n % d == 0) {
                    prime = false;
                    break;
                }
            if (prime) out.push_back(n);
        }
        return out;
    }();
    return primes;
}

// Brent's variant of Pollard rho; n odd composite, not a prime power of a small prime.
std::uint64_t find_divisor(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        constexpr std::uint64_t batch = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += batch;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    const std::uint64_t d = find_divisor(n);
    split(d, out);
    split(n / d, out);
}

void check_shape(const std::vector<PrimePower>& factors) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].exponent == 0) throw DomainError("exponents must be at least 1");
        if (factors[i].prime < 2) throw DomainError("factor below 2");
        if (i > 0 && factors[i - 1].prime >= factors[i].prime)
            throw DomainError("factor primes must be strictly increasing");
    }
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Witness set proven sufficient for all n < 2^64.
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Factorization::Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
    check_shape(factors_);
    for (const auto& f : factors_)
        if (!is_prime_u64(f.prime))
            throw DomainError("factor " + std::to_string(f.prime) + " is not prime");
}

Factorization::Factorization(std::vector<PrimePower> factors, trusted_t)
    : factors_(std::move(factors)) {
    check_shape(factors_);
}

std::optional<std::uint64_t> Factorization::value() const {
    std::uint64_t n = 1;
    for (const auto& [q, e] : factors_)
        for (std::uint32_t i = 0; i < e; ++i)
            if (__builtin_mul_overflow(n, q, &n)) return std::nullopt;
    return n;
}

std::string Factorization::to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& [q, e] : factors_) {
        if (!out.empty()) out += '*';
        out += std::to_string(q);
        if (e > 1) out += '^' + std::to_string(e);
    }
    return out;
}

Factorization Factorization::parse(std::string_view text) {
    auto bad = [&] { return DomainError("malformed factorization '" + std::string(text) + "'"); };
    if (text == "1") return {};
    std::vector<PrimePower> factors;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('*', pos), text.size());
        const std::string_view term = text.substr(pos, end - pos);
        const std::size_t caret = term.find('^');
        PrimePower pp{0, 1};
        const std::string_view base = term.substr(0, caret);
        auto r = std::from_chars(base.data(), base.data() + base.size(), pp.prime);
        if (base.empty() || r.ec != std::errc{} || r.ptr != base.data() + base.size()) throw bad();
        if (caret != std::string_view::npos) {
            const std::string_view ex = term.substr(caret + 1);
            r = std::from_chars(ex.data(), ex.data() + ex.size(), pp.exponent);
            if (ex.empty() || r.ec != std::errc{} || r.ptr != ex.data() + ex.size()) throw bad();
        }
        factors.push_back(pp);
        if (end == text.size()) break;
        pos = end + 1;
    }
    return Factorization(std::move(factors));
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw DomainError("cannot factorize 0");
    std::vector<PrimePower> factors;
    for (std::uint64_t p : trial_primes()) {
        if (p * p > n) break;
        if (n % p) continue;
        PrimePower pp{p, 0};
        while (n % p == 0) {
            n /= p;
            ++pp.exponent;
        }
        factors.push_back(pp);
    }
    if (n > 1) {
        std::vector<std::uint64_t> rest;
        split(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::uint64_t q : rest) {
            if (!factors.empty() && factors.back().prime == q)
                ++factors.back().exponent;
            else
                factors.push_back({q, 1});
        }
    }
    return Factorization(std::move(factors), Factorization::trusted);
}

std::uint64_t sigma_of(const Factorization& f) {
    std::uint64_t sigma = 1;
    for (const auto& [q, e] : f.factors()) {
        // 1 + q + ... + q^e
        std::uint64_t power = 1, local = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            if (__builtin_mul_overflow(power, q, &power) ||
                __builtin_add_overflow(local, power, &local))
                throw CapacityError("sigma(" + f.to_string() + ") overflows 64 bits");
        }
        if (__builtin_mul_overflow(sigma, local, &sigma))
            throw CapacityError("sigma(" + f.to_string() + ") overflows 64 bits");
    }
    return sigma;
}

double sigma_ratio_of(const Factorization& f) {
    double ratio = 1.0;
    for (const auto& [q, e] : f.factors()) {
        const double log_q = std::log(static_cast<double>(q));
        ratio *= std::expm1(-(static_cast<double>(e) + 1.0) * log_q) / std::expm1(-log_q);
    }
    return ratio;
}

double log_n_of(const Factorization& f) {
    CompensatedSum sum;
    for (const auto& [q, e] : f.factors())
        sum.add(static_cast<double>(e) * std::log(static_cast<double>(q)));
    return sum.value();
}

SigmaTable sigma_sieve(std::uint64_t limit) {
    if (limit == 0) throw DomainError("sigma sieve limit must be at least 1");
    if (limit >= (std::uint64_t{1} << 32)) throw CapacityError("sigma sieve limit must be below 2^32");
    require_memory(12 * (limit + 1) + 4 * (limit / 8 + 64), "sigma sieve");

    SigmaTable table;
    table.limit = limit;
    table.sigma.assign(limit + 1, 0);
    // Power of the smallest prime dividing n, p^e with p^e || n.
    std::vector<std::uint32_t> low_power(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    auto& sigma = table.sigma;
    sigma[1] = 1;
    low_power[1] = 1;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (sigma[i] == 0) {
            primes.push_back(static_cast<std::uint32_t>(i));
            sigma[i] = i + 1;
            low_power[i] = static_cast<std::uint32_t>(i);
        }
        for (std::uint32_t p : primes) {
            const std::uint64_t ip = i * p;
            if (ip > limit) break;
            if (i % p == 0) {
                const std::uint64_t pe = low_power[i];
                const std::uint64_t rest = i / pe;
                const std::uint64_t pe1 = pe * p;
                low_power[ip] = static_cast<std::uint32_t>(pe1);
                sigma[ip] = sigma[rest] * ((pe1 * p - 1) / (p - 1));
                break;
            }
            low_power[ip] = p;
            sigma[ip] = sigma[i] * (p + 1);
        }
    }
    return table;
}

std::vector<std::uint64_t> sigma_block(std::uint64_t lo, std::uint64_t hi,
                                       std::span<const std::uint64_t> base_primes) {
    if (lo == 0) throw DomainError("sigma block must start at 1 or above");
    if (hi <= lo) return {};
    const std::uint64_t size = hi - lo;
    std::vector<std::uint64_t> sigma(size, 1);
    std::vector<std::uint64_t> rest(size);
    std::iota(rest.begin(), rest.end(), lo);
    for (std::uint64_t p : base_primes) {
        if (static_cast<u128>(p) * p > hi - 1) break;
        for (std::uint64_t j = (lo + p - 1) / p * p - lo; j < size; j += p) {
            std::uint64_t power_sum = 1, power = 1;
            do {
                rest[j] /= p;
                power *= p;
                power_sum += power;
            } while (rest[j] % p == 0);
            sigma[j] *= power_sum;
        }
    }
    for (std::uint64_t j = 0; j < size; ++j)
        if (rest[j] > 1) sigma[j] *= rest[j] + 1;
    return sigma;
}

}  // namespace robinlab
