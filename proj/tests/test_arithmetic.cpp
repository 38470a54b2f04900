#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "robinlab/arithmetic.hpp"
#include "robinlab/errors.hpp"

using namespace robinlab;

namespace {

std::uint64_t multiply_back(const Factorization& f) {
    std::uint64_t n = 1;
    for (const auto& [q, e] : f.factors())
        for (std::uint32_t i = 0; i < e; ++i) n *= q;
    return n;
}

}  // namespace

TEST_CASE("factorize examples") {
    CHECK(factorize(1).is_one());
    const auto f = factorize(5040);
    CHECK(std::vector<PrimePower>(f.factors().begin(), f.factors().end()) ==
          std::vector<PrimePower>{{2, 4}, {3, 2}, {5, 1}, {7, 1}});
    CHECK(multiply_back(f) == 5040);
    const auto p = factorize(9999991);
    REQUIRE(p.size() == 1);
    CHECK(p.factors()[0] == PrimePower{9999991, 1});
    CHECK_THROWS_AS(factorize(0), DomainError);
}

TEST_CASE("factorize hard 64-bit inputs") {
    // semiprime of two 32-bit primes, a prime square, and the largest 64-bit prime
    const std::uint64_t p = 4294967291ull, q = 4294967279ull;
    const auto f = factorize(p * q);
    CHECK(f.size() == 2);
    CHECK(multiply_back(f) == p * q);
    CHECK(factorize(p * p).factors()[0] == PrimePower{p, 2});
    CHECK(factorize(18446744073709551557ull).size() == 1);
    CHECK(multiply_back(factorize(18446744073709551615ull)) == 18446744073709551615ull);
}

TEST_CASE("is_prime_u64 agrees with trial division") {
    for (std::uint64_t n = 0; n < 100000; ++n) REQUIRE(is_prime_u64(n) == oracle::is_prime(n));
    // strong pseudoprimes to several small bases
    CHECK_FALSE(is_prime_u64(3215031751ull));
    CHECK_FALSE(is_prime_u64(3825123056546413051ull));
    CHECK_FALSE(is_prime_u64(341550071728321ull));
}

TEST_CASE("round-trip on random n below 2^50") {
    std::mt19937_64 rng(50);
    std::uniform_int_distribution<std::uint64_t> dist(1, (std::uint64_t{1} << 50) - 1);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t n = dist(rng);
        const auto f = factorize(n);
        REQUIRE(multiply_back(f) == n);
        REQUIRE(f.value() == n);
        for (std::size_t j = 0; j < f.size(); ++j) {
            REQUIRE(is_prime_u64(f.factors()[j].prime));
            if (j) REQUIRE(f.factors()[j - 1].prime < f.factors()[j].prime);
        }
    }
}

TEST_CASE("sigma_of") {
    CHECK(sigma_of(factorize(1)) == 1);
    CHECK(sigma_of(factorize(6)) == 12);
    CHECK(sigma_of(factorize(5040)) == 19344);
    CHECK(oracle::divisor_sum(5040) == 19344);
    CHECK_THROWS_AS(sigma_of(Factorization({{2, 63}, {3, 1}})), CapacityError);
    CHECK_THROWS_AS(sigma_of(Factorization({{2, 64}})), CapacityError);
}

TEST_CASE("sigma_ratio_of and log_n_of") {
    CHECK(sigma_ratio_of(Factorization{}) == 1.0);
    CHECK(sigma_ratio_of(Factorization({{7, 1}})) == doctest::Approx(8.0 / 7.0).epsilon(1e-15));
    CHECK(sigma_ratio_of(Factorization({{7, 1}})) <= 1.167);
    CHECK(sigma_ratio_of(factorize(5040)) == doctest::Approx(19344.0 / 5040.0).epsilon(1e-15));
    CHECK(log_n_of(Factorization{}) == 0.0);
    CHECK(log_n_of(Factorization({{2, 1}})) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
    CHECK(log_n_of(factorize(5040)) == doctest::Approx(8.5251613611).epsilon(1e-11));
}

TEST_CASE("ratio and log consistency for n <= 10^5") {
    const auto table = sigma_sieve(100000);
    for (std::uint64_t n = 1; n <= 100000; ++n) {
        const auto f = factorize(n);
        REQUIRE(std::fabs(sigma_ratio_of(f) - static_cast<double>(table[n]) / n) <= 1e-12);
        REQUIRE(std::fabs(log_n_of(f) - std::log(static_cast<double>(n))) <= 1e-12);
        if (n > 1) REQUIRE(sigma_ratio_of(f) > 1.0);
    }
}

TEST_CASE("factorization exceeding 64 bits") {
    const Factorization f({{2, 100}, {3, 50}, {5, 20}});
    CHECK_FALSE(f.value().has_value());
    CHECK(log_n_of(f) == doctest::Approx(100 * std::log(2.0) + 50 * std::log(3.0) + 20 * std::log(5.0)));
    const double expected = (2.0 - std::pow(2.0, -100)) * (1.5 - 0.5 * std::pow(3.0, -50)) *
                            (1.25 - 0.25 * std::pow(5.0, -20));
    CHECK(sigma_ratio_of(f) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("factorization validation and parsing") {
    CHECK_THROWS_AS(Factorization({{4, 1}}), DomainError);
    CHECK_THROWS_AS(Factorization({{3, 1}, {2, 1}}), DomainError);
    CHECK_THROWS_AS(Factorization({{2, 0}}), DomainError);
    CHECK(Factorization::parse("2^4*3^2*5*7") == factorize(5040));
    CHECK(Factorization::parse("1").is_one());
    CHECK(factorize(5040).to_string() == "2^4*3^2*5*7");
    CHECK_THROWS_AS(Factorization::parse("2^*3"), DomainError);
    CHECK_THROWS_AS(Factorization::parse(""), DomainError);
    CHECK_THROWS_AS(Factorization::parse("2*x"), DomainError);
}

TEST_CASE("sigma sieve") {
    CHECK(sigma_sieve(1)[1] == 1);
    CHECK(sigma_sieve(12)[12] == 28);
    const auto t = sigma_sieve(10000);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        REQUIRE(t[n] == sigma_of(factorize(n)));
        REQUIRE(t[n] == oracle::divisor_sum(n));
    }
    CHECK_THROWS_AS(sigma_sieve(0), DomainError);
}

TEST_CASE("sigma is multiplicative on coprime pairs") {
    const auto t = sigma_sieve(1000000);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> dist(1, 1000);
    int checked = 0;
    while (checked < 5000) {
        const std::uint64_t a = dist(rng), b = dist(rng);
        if (std::gcd(a, b) != 1) continue;
        REQUIRE(t[a * b] == t[a] * t[b]);
        ++checked;
    }
}

TEST_CASE("sigma block agrees with the linear sieve") {
    const auto t = sigma_sieve(300000);
    const std::vector<std::uint64_t> base = oracle::plain_sieve(600);
    for (std::uint64_t lo : {1ull, 2ull, 97ull, 65536ull, 250001ull}) {
        const auto block = sigma_block(lo, lo + 50000, base);
        for (std::uint64_t i = 0; i < block.size(); ++i) REQUIRE(block[i] == t[lo + i]);
    }
}
