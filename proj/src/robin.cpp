#include "robinlab/robin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "robinlab/errors.hpp"
#include "robinlab/primes.hpp"
#include "robinlab/summation.hpp"

namespace robinlab {

namespace {

bool is_two(const Factorization& f) {
    return f.size() == 1 && f.factors()[0] == PrimePower{2, 1};
}

bool ranks_higher(const ScanRow& a, const ScanRow& b) {
    if (a.eval.delta != b.eval.delta) return a.eval.delta > b.eval.delta;
    return a.n < b.n;
}

struct BlockResult {
    std::uint64_t evaluated = 0;
    std::vector<ScanRow> violators;
    std::vector<ScanRow> records;
    std::vector<std::uint64_t> near_ties;
};

void keep_top(std::vector<ScanRow>& records, const ScanRow& row, std::size_t limit) {
    if (limit == 0) return;
    if (records.size() < limit) {
        records.push_back(row);
        std::push_heap(records.begin(), records.end(), ranks_higher);
        return;
    }
    // records is a heap whose front is the lowest-ranked entry
    if (!ranks_higher(row, records.front())) return;
    std::pop_heap(records.begin(), records.end(), ranks_higher);
    records.back() = row;
    std::push_heap(records.begin(), records.end(), ranks_higher);
}

BlockResult scan_block(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint64_t> base,
                       const ScanOptions& options) {
    BlockResult out;
    const auto sigma = sigma_block(lo, hi, base);
    for (std::uint64_t n = lo; n < hi; ++n) {
        if (n == 2) continue;
        if (options.odd_only && n % 2 == 0) continue;
        const std::uint64_t s = sigma[n - lo];
        const double ratio = static_cast<double>(s) / static_cast<double>(n);
        ScanRow row{n, s, evaluate_robin(ratio, std::log(static_cast<double>(n)))};
        ++out.evaluated;
        if (row.eval.violates) out.violators.push_back(row);
        if (row.eval.near_tie) out.near_ties.push_back(n);
        keep_top(out.records, row, options.top_records);
    }
    return out;
}

}  // namespace

MathConstants math_constants() {
    return {constants::euler_gamma, constants::exp_gamma, ramanujan_constant()};
}

double ramanujan_constant() {
    return constants::exp_gamma *
           (4.0 - 2.0 * std::numbers::sqrt2 + constants::euler_gamma - std::log(4.0 * std::numbers::pi));
}

RobinEvaluation evaluate_robin(double sigma_ratio, double log_n) {
    if (!(log_n > 0.0)) throw DomainError("Robin evaluation needs n >= 2");
    RobinEvaluation e;
    e.log_n = log_n;
    e.loglog_n = std::log(log_n);
    e.sigma_ratio = sigma_ratio;
    e.robin_rhs_ratio = constants::exp_gamma * e.loglog_n;
    e.delta = (sigma_ratio - e.robin_rhs_ratio) * std::sqrt(log_n);
    e.special = e.loglog_n > 0.0 ? RobinSpecial::normal : RobinSpecial::loglog_nonpositive;
    e.violates = e.special == RobinSpecial::normal && sigma_ratio > e.robin_rhs_ratio;
    e.near_tie = std::fabs(sigma_ratio - e.robin_rhs_ratio) < tie_warning_band;
    return e;
}

RobinEvaluation robin_check(const Factorization& f) {
    if (f.is_one()) throw DomainError("Robin's inequality is undefined at n = 1");
    return evaluate_robin(sigma_ratio_of(f), log_n_of(f));
}

double robin_delta(const Factorization& f) {
    if (f.is_one() || is_two(f)) throw DomainError("delta statistic needs n >= 3");
    return robin_check(f).delta;
}

double bound_rhs(BoundVariant variant, const Factorization& f, double c) {
    if (!(c >= 1.0) || !std::isfinite(c)) throw DomainError("bound constant c must be finite and >= 1");
    if (f.is_one()) throw DomainError("bounds need n >= 2");
    if (variant != BoundVariant::scaled_argument && is_two(f))
        throw DomainError("this bound needs n >= 3");
    const double log_n = log_n_of(f);
    const double log_c = std::log(c);
    switch (variant) {
        case BoundVariant::scaled_argument:
            return constants::exp_gamma * std::log(log_c + log_n);
        case BoundVariant::subexp_argument: {
            const double inner = std::sqrt(log_n) * std::exp(std::sqrt(std::log(log_n)));
            return constants::exp_gamma * std::log(log_c + log_n + inner);
        }
        case BoundVariant::additive_error: {
            const double loglog = std::log(log_n);
            return constants::exp_gamma * loglog + c * std::exp(std::sqrt(loglog)) / std::sqrt(log_n);
        }
    }
    throw DomainError("unknown bound variant");
}

ScanResult scan_range(std::uint64_t lo, std::uint64_t hi, const ScanOptions& options) {
    if (lo < 2) throw DomainError("scan must start at n >= 2");
    if (hi < lo) throw DomainError("scan range is empty (hi < lo)");
    if (options.threads == 0) throw DomainError("thread count must be at least 1");
    if (options.block_size == 0) throw DomainError("block size must be positive");
    if (hi >= (std::uint64_t{1} << 53)) throw CapacityError("scan bound must stay below 2^53");
    require_memory(16 * options.block_size * options.threads, "sigma scan blocks");

    const auto base_table = primes_up_to(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1);
    const auto base = base_table.primes();

    const std::uint64_t end = hi + 1;
    const std::uint64_t blocks = (end - lo + options.block_size - 1) / options.block_size;
    std::vector<BlockResult> results(blocks);
    auto work = [&](std::uint64_t first, std::uint64_t stride) {
        for (std::uint64_t b = first; b < blocks; b += stride) {
            const std::uint64_t a = lo + b * options.block_size;
            results[b] = scan_block(a, std::min(end, a + options.block_size), base, options);
        }
    };
    const auto threads = std::min<std::uint64_t>(options.threads, blocks);
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::uint64_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    }

    ScanResult out;
    out.lo = lo;
    out.hi = hi;
    for (auto& r : results) {
        out.evaluated += r.evaluated;
        out.violators.insert(out.violators.end(), r.violators.begin(), r.violators.end());
        out.near_ties.insert(out.near_ties.end(), r.near_ties.begin(), r.near_ties.end());
        out.max_delta_records.insert(out.max_delta_records.end(), r.records.begin(), r.records.end());
    }
    std::sort(out.max_delta_records.begin(), out.max_delta_records.end(), ranks_higher);
    if (out.max_delta_records.size() > options.top_records) out.max_delta_records.resize(options.top_records);
    return out;
}

bool ExtremalCandidateGenerator::Later::operator()(const Node& a, const Node& b) const {
    if (a.log_n != b.log_n) return a.log_n > b.log_n;
    return a.exponents > b.exponents;
}

ExtremalCandidateGenerator::ExtremalCandidateGenerator(std::size_t m_max, std::size_t budget,
                                                       ExtremalOptions options)
    : budget_(budget), options_(options) {
    if (m_max == 0) throw DomainError("m_max must be at least 1");
    const auto table = primes_covering_count(m_max);
    primes_.assign(table.primes().begin(), table.primes().begin() + static_cast<std::ptrdiff_t>(m_max));
    for (std::uint64_t p : primes_) log_primes_.push_back(std::log(static_cast<double>(p)));
    std::vector<std::uint32_t> root{1};
    frontier_.push({log_of(root), std::move(root)});
}

double ExtremalCandidateGenerator::log_of(const std::vector<std::uint32_t>& exponents) const {
    CompensatedSum sum;
    for (std::size_t i = 0; i < exponents.size(); ++i) sum.add(exponents[i] * log_primes_[i]);
    return sum.value();
}

ExtremalCandidate ExtremalCandidateGenerator::make(Node node) const {
    std::vector<PrimePower> factors;
    factors.reserve(node.exponents.size());
    for (std::size_t i = 0; i < node.exponents.size(); ++i) factors.push_back({primes_[i], node.exponents[i]});
    ExtremalCandidate c;
    c.factorization = Factorization(std::move(factors), Factorization::trusted);
    c.exponents = std::move(node.exponents);
    c.log_n = node.log_n;
    c.sigma_ratio = sigma_ratio_of(c.factorization);
    return c;
}

std::optional<ExtremalCandidate> ExtremalCandidateGenerator::next() {
    while (emitted_ < budget_ && !frontier_.empty()) {
        Node node = frontier_.top();
        frontier_.pop();
        // Each vector has exactly one parent: itself with the last exponent
        // lowered by one (dropped when it reaches zero).
        const auto& e = node.exponents;
        const std::size_t len = e.size();
        if (len == 1 || e[len - 2] > e[len - 1]) {
            auto child = e;
            ++child.back();
            frontier_.push({log_of(child), std::move(child)});
        }
        if (len < primes_.size()) {
            auto child = e;
            child.push_back(1);
            frontier_.push({log_of(child), std::move(child)});
        }
        ExtremalCandidate candidate = make(std::move(node));
        if (options_.records_only) {
            if (candidate.sigma_ratio <= best_ratio_) continue;
            best_ratio_ = candidate.sigma_ratio;
        }
        ++emitted_;
        return candidate;
    }
    return std::nullopt;
}

std::vector<ExtremalCandidate> extremal_candidates(std::size_t m_max, std::size_t budget,
                                                   ExtremalOptions options) {
    ExtremalCandidateGenerator gen(m_max, budget, options);
    std::vector<ExtremalCandidate> out;
    while (auto c = gen.next()) out.push_back(std::move(*c));
    return out;
}

}  // namespace robinlab
