#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "robinlab/errors.hpp"
#include "robinlab/robin.hpp"

using namespace robinlab;

namespace {

// Violators of Robin's inequality in [3, 10^4], found by exact divisor sums
// compared against a long-double bound.
std::vector<std::uint64_t> oracle_violators(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo; n <= hi; ++n)
        if (oracle::robin_violates(n, oracle::divisor_sum(n))) out.push_back(n);
    return out;
}

// Depth-first enumeration of non-increasing exponent vectors with log n <= bound.
void enumerate_vectors(const std::vector<double>& log_p, double bound, std::vector<std::uint32_t>& cur,
                       double log_n, std::set<std::vector<std::uint32_t>>& out) {
    if (!cur.empty()) out.insert(cur);
    const std::size_t i = cur.size();
    if (i == log_p.size()) return;
    const std::uint32_t cap = i == 0 ? 1000 : cur.back();
    for (std::uint32_t e = 1; e <= cap && log_n + e * log_p[i] <= bound; ++e) {
        cur.push_back(e);
        enumerate_vectors(log_p, bound, cur, log_n + e * log_p[i], out);
        cur.pop_back();
    }
}

}  // namespace

TEST_CASE("constants") {
    const auto c = math_constants();
    CHECK(std::fabs(c.exp_gamma - std::exp(c.euler_gamma)) <= 1e-15 * c.exp_gamma);
    CHECK(c.ramanujan_limsup > -1.3933);
    CHECK(c.ramanujan_limsup < -1.3931);
}

TEST_CASE("ramanujan constant") {
    const double r = ramanujan_constant();
    // long-double evaluation of the closed form
    CHECK(r == doctest::Approx(-1.393218441773).epsilon(1e-11));
    CHECK(r < 0.0);
    CHECK(std::log(4.0 * std::numbers::pi) > 4.0 - 2.0 * std::numbers::sqrt2 + constants::euler_gamma);
    CHECK(std::fabs(r - -1.39) < 0.01);
}

TEST_CASE("robin_check examples") {
    const auto e5040 = robin_check(factorize(5040));
    CHECK(e5040.violates);
    CHECK(e5040.sigma_ratio == doctest::Approx(3.8380952381).epsilon(1e-11));
    CHECK(e5040.robin_rhs_ratio == doctest::Approx(3.8168772880).epsilon(1e-10));
    CHECK(e5040.special == RobinSpecial::normal);
    CHECK_FALSE(e5040.near_tie);

    const auto e5041 = robin_check(factorize(5041));
    CHECK_FALSE(e5041.violates);
    CHECK(e5041.sigma_ratio == doctest::Approx(5113.0 / 5041.0));

    const auto e7 = robin_check(factorize(7));
    CHECK(e7.robin_rhs_ratio == doctest::Approx(1.1857130035).epsilon(1e-10));
    CHECK(std::floor(e7.robin_rhs_ratio * 100) / 100 == doctest::Approx(1.18));
    CHECK_FALSE(e7.violates);
}

TEST_CASE("robin_check special cases") {
    CHECK_THROWS_AS(robin_check(Factorization{}), DomainError);
    const auto e2 = robin_check(factorize(2));
    CHECK(e2.special == RobinSpecial::loglog_nonpositive);
    CHECK(e2.loglog_n < 0.0);
    CHECK_FALSE(e2.violates);
}

TEST_CASE("robin_delta examples") {
    CHECK(robin_delta(factorize(5040)) == doctest::Approx(0.0619519138).epsilon(1e-9));
    CHECK(robin_delta(factorize(16)) == doctest::Approx(0.2018035847).epsilon(1e-9));
    CHECK(robin_delta(factorize(3)) == doctest::Approx(1.2219585168).epsilon(1e-9));
    CHECK(robin_delta(factorize(5041)) == doctest::Approx(-8.1831974648).epsilon(1e-9));
    CHECK_THROWS_AS(robin_delta(factorize(2)), DomainError);
    CHECK_THROWS_AS(robin_delta(Factorization{}), DomainError);
}

TEST_CASE("delta and violation agree, and factorization path matches exact sigma") {
    for (std::uint64_t n = 3; n <= 100000; ++n) {
        const auto e = robin_check(factorize(n));
        REQUIRE(e.violates == (e.delta > 0.0));
        REQUIRE(e.violates == oracle::robin_violates(n, oracle::divisor_sum(n)));
    }
}

TEST_CASE("scan_range small interval matches the oracle") {
    const auto r = scan_range(3, 10000);
    std::vector<std::uint64_t> got;
    for (const auto& row : r.violators) got.push_back(row.n);
    CHECK(got == oracle_violators(3, 10000));
    CHECK(got.back() == 5040);
    CHECK(got.size() == 26);
    CHECK(r.evaluated == 9998);
    for (const auto& row : r.violators) CHECK(row.sigma == oracle::divisor_sum(row.n));
}

TEST_CASE("scan_range verdict equals robin_check for n <= 10^5") {
    ScanOptions opts;
    opts.block_size = 4096;
    const auto r = scan_range(2, 100000, opts);
    std::set<std::uint64_t> violators;
    for (const auto& row : r.violators) violators.insert(row.n);
    CHECK_FALSE(violators.count(2));
    for (std::uint64_t n = 3; n <= 100000; ++n) REQUIRE(robin_check(factorize(n)).violates == violators.count(n));
}

TEST_CASE("scan_range top records") {
    const auto r = scan_range(3, 100000);
    REQUIRE(r.max_delta_records.size() == 10);
    for (std::size_t i = 1; i < r.max_delta_records.size(); ++i)
        CHECK(r.max_delta_records[i - 1].eval.delta >= r.max_delta_records[i].eval.delta);
    // n = 4 carries the largest statistic in this range
    long double best = -1e9L;
    std::uint64_t best_n = 0;
    for (std::uint64_t n = 3; n <= 100000; ++n) {
        const auto d = oracle::robin_delta(n, oracle::divisor_sum(n));
        if (d > best) {
            best = d;
            best_n = n;
        }
    }
    CHECK(r.max_delta_records.front().n == best_n);
    CHECK(r.max_delta_records.front().eval.delta == doctest::Approx(static_cast<double>(best)).epsilon(1e-12));
}

TEST_CASE("scan_range is independent of threads and block size") {
    ScanOptions a;
    ScanOptions b;
    b.threads = 4;
    b.block_size = 1000;
    const auto ra = scan_range(3, 300000, a);
    const auto rb = scan_range(3, 300000, b);
    REQUIRE(ra.violators.size() == rb.violators.size());
    for (std::size_t i = 0; i < ra.violators.size(); ++i) CHECK(ra.violators[i].n == rb.violators[i].n);
    REQUIRE(ra.max_delta_records.size() == rb.max_delta_records.size());
    for (std::size_t i = 0; i < ra.max_delta_records.size(); ++i) {
        CHECK(ra.max_delta_records[i].n == rb.max_delta_records[i].n);
        CHECK(ra.max_delta_records[i].eval.delta == rb.max_delta_records[i].eval.delta);
    }
}

TEST_CASE("scan_range odd only and errors") {
    ScanOptions odd;
    odd.odd_only = true;
    const auto r = scan_range(17, 200000, odd);
    CHECK(r.violators.empty());
    CHECK(r.evaluated == (200000 - 17) / 2 + 1);
    const auto small = scan_range(3, 16, odd);
    std::vector<std::uint64_t> got;
    for (const auto& row : small.violators) got.push_back(row.n);
    CHECK(got == std::vector<std::uint64_t>{3, 5, 9});
    CHECK_THROWS_AS(scan_range(1, 10), DomainError);
    CHECK_THROWS_AS(scan_range(10, 9), DomainError);
    CHECK_THROWS_AS(scan_range(3, std::uint64_t{1} << 60), CapacityError);
}

TEST_CASE("bound_rhs") {
    const auto f3 = factorize(3);
    CHECK(bound_rhs(BoundVariant::scaled_argument, f3, 1.0) == doctest::Approx(0.16750).epsilon(1e-4));
    const auto f5040 = factorize(5040);
    CHECK(bound_rhs(BoundVariant::additive_error, f5040, 1.0) == doctest::Approx(5.2974003203).epsilon(1e-10));
    CHECK(bound_rhs(BoundVariant::subexp_argument, f5040, 1.0) == doctest::Approx(5.4349271467).epsilon(1e-10));
    CHECK_NOTHROW(bound_rhs(BoundVariant::scaled_argument, factorize(2), 1.0));
    CHECK_THROWS_AS(bound_rhs(BoundVariant::subexp_argument, factorize(2), 1.0), DomainError);
    CHECK_THROWS_AS(bound_rhs(BoundVariant::additive_error, factorize(2), 1.0), DomainError);
    CHECK_THROWS_AS(bound_rhs(BoundVariant::scaled_argument, f5040, 0.5), DomainError);
    CHECK_THROWS_AS(bound_rhs(BoundVariant::scaled_argument, Factorization{}, 1.0), DomainError);
}

TEST_CASE("scaled bound at c = 1 reduces to the Robin bound") {
    for (std::uint64_t n = 3; n < 20000; n += 7) {
        const auto f = factorize(n);
        const double a = bound_rhs(BoundVariant::scaled_argument, f, 1.0);
        const double b = robin_check(f).robin_rhs_ratio;
        REQUIRE(std::fabs(a - b) <= 1e-14 * std::fabs(b) + 1e-300);
    }
}

TEST_CASE("bound ordering and implication direction") {
    const std::uint64_t samples[] = {3, 12, 120, 720, 5040, 5041, 55440, 720720, 1000003, 963761198400ull};
    for (std::uint64_t n : samples) {
        CAPTURE(n);
        const auto f = factorize(n);
        const double r = sigma_ratio_of(f);
        for (double c : {1.0, 2.0, 10.0}) {
            const double scaled = bound_rhs(BoundVariant::scaled_argument, f, c);
            const double subexp = bound_rhs(BoundVariant::subexp_argument, f, c);
            const double additive = bound_rhs(BoundVariant::additive_error, f, constants::exp_gamma * (1.0 + std::log(c)));
            CHECK(scaled <= subexp);
            CHECK(subexp <= additive * (1 + 1e-15));
            if (r <= scaled) CHECK(r <= subexp);
            if (r <= subexp) CHECK(r <= additive);
        }
    }
}

TEST_CASE("extremal candidates single prime") {
    const auto c = extremal_candidates(1, 3);
    REQUIRE(c.size() == 3);
    CHECK(c[0].factorization.value() == 2);
    CHECK(c[1].factorization.value() == 4);
    CHECK(c[2].factorization.value() == 8);
    CHECK(c[2].exponents == std::vector<std::uint32_t>{3});
    CHECK_THROWS_AS(extremal_candidates(0, 3), DomainError);
}

TEST_CASE("extremal candidates match exhaustive enumeration below 5040") {
    const double bound = std::log(5040.0) + 1e-9;
    const std::vector<double> log_p{std::log(2.0), std::log(3.0), std::log(5.0), std::log(7.0), std::log(11.0)};
    std::set<std::vector<std::uint32_t>> expected;
    std::vector<std::uint32_t> cur;
    enumerate_vectors(log_p, bound, cur, 0.0, expected);

    ExtremalCandidateGenerator gen(5, 100000);
    std::set<std::vector<std::uint32_t>> got;
    double prev = 0.0, best = -1e9;
    std::uint64_t best_n = 0;
    while (auto c = gen.next()) {
        if (c->log_n > bound) break;
        CHECK(c->log_n >= prev);
        prev = c->log_n;
        for (std::size_t i = 1; i < c->exponents.size(); ++i) REQUIRE(c->exponents[i - 1] >= c->exponents[i]);
        got.insert(c->exponents);
        if (c->log_n >= std::log(3.0)) {
            const double d = robin_delta(c->factorization);
            if (d > best) {
                best = d;
                best_n = *c->factorization.value();
            }
        }
    }
    CHECK(got == expected);
    // The largest statistic over candidates is at n = 4, which is below 5040;
    // restricted to candidates that violate at the top of the range, 5040 wins.
    CHECK(best_n == 4);
}

TEST_CASE("5040 is the largest-delta candidate among violators of its size class") {
    // Candidates in (2520, 5040] by log n: the maximum of the statistic is at 5040.
    double best = -1e9;
    std::uint64_t best_n = 0;
    for (const auto& c : extremal_candidates(6, 100000)) {
        if (c.log_n > std::log(5040.0) + 1e-9) break;
        if (c.log_n <= std::log(2520.0) + 1e-9) continue;
        const double d = robin_delta(c.factorization);
        if (d > best) {
            best = d;
            best_n = *c.factorization.value();
        }
    }
    CHECK(best_n == 5040);
}

TEST_CASE("candidates with log n in [10, 50] satisfy Robin's inequality") {
    ExtremalCandidateGenerator gen(20, 2000000);
    std::size_t seen = 0;
    while (auto c = gen.next()) {
        if (c->log_n > 50.0) break;
        if (c->log_n < 10.0) continue;
        ++seen;
        REQUIRE_FALSE(robin_check(c->factorization).violates);
    }
    CHECK(seen > 1000);
}

TEST_CASE("candidates dominate the delta statistic below 10^5") {
    const auto sigma = sigma_sieve(100000);
    const auto cands = extremal_candidates(8, 100000);
    double cand_best = -1e9;
    std::size_t ci = 0;
    double n_best = -1e9;
    for (std::uint64_t n = 4; n <= 100000; ++n) {
        while (ci < cands.size() && cands[ci].log_n <= std::log(static_cast<double>(n)) + 1e-12) {
            if (cands[ci].log_n >= std::log(3.0)) cand_best = std::max(cand_best, robin_delta(cands[ci].factorization));
            ++ci;
        }
        const double r = static_cast<double>(sigma[n]) / static_cast<double>(n);
        n_best = std::max(n_best, evaluate_robin(r, std::log(static_cast<double>(n))).delta);
        REQUIRE(n_best <= cand_best + 1e-9);
    }
}

TEST_CASE("records_only emits superabundant numbers") {
    const auto c = extremal_candidates(10, 15, {true});
    std::vector<std::uint64_t> got;
    for (const auto& x : c) got.push_back(*x.factorization.value());
    // superabundant numbers (OEIS A004394), excluding 1
    CHECK(got == std::vector<std::uint64_t>{2, 4, 6, 12, 24, 36, 48, 60, 120, 180, 240, 360, 720, 840, 1260});
}
