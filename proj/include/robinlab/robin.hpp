#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "robinlab/arithmetic.hpp"

namespace robinlab {

namespace constants {
inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double exp_gamma = 1.7810724179901979852;
}  // namespace constants

struct MathConstants {
    double euler_gamma;
    double exp_gamma;
    // e^gamma (4 - 2 sqrt 2 + gamma - log 4 pi), Ramanujan's limsup of the delta statistic under RH
    double ramanujan_limsup;
};

MathConstants math_constants();

double ramanujan_constant();

enum class RobinSpecial { normal, loglog_nonpositive };

// Verdicts whose two sides differ by less than this are flagged for inspection.
inline constexpr double tie_warning_band = 1e-12;

struct RobinEvaluation {
    double log_n = 0.0;
    double loglog_n = 0.0;
    double sigma_ratio = 0.0;      // sigma(n)/n
    double robin_rhs_ratio = 0.0;  // e^gamma log log n
    double delta = 0.0;            // (sigma_ratio - robin_rhs_ratio) sqrt(log n)
    bool violates = false;         // strict; always false unless special == normal
    RobinSpecial special = RobinSpecial::normal;
    bool near_tie = false;
};

// Evaluation from precomputed sigma(n)/n and log n; used by both the
// factorization path and the sieve scan.
RobinEvaluation evaluate_robin(double sigma_ratio, double log_n);

// Throws DomainError for n = 1. n = 2 is reported as loglog_nonpositive.
RobinEvaluation robin_check(const Factorization& f);

// Throws DomainError for n < 3.
double robin_delta(const Factorization& f);

// Right-hand sides of the strengthened/weakened Robin-type bounds, on the
// sigma(n)/n scale, with constant c >= 1:
//   scaled_argument:  e^g log log(c n)
//   subexp_argument:  e^g log log(c n exp(sqrt(log n) exp(sqrt(log log n))))
//   additive_error:   e^g log log n + c exp(sqrt(log log n)) / sqrt(log n)
enum class BoundVariant { scaled_argument, subexp_argument, additive_error };

double bound_rhs(BoundVariant variant, const Factorization& f, double c);

struct ScanRow {
    std::uint64_t n = 0;
    std::uint64_t sigma = 0;
    RobinEvaluation eval;
};

struct ScanOptions {
    bool odd_only = false;
    unsigned threads = 1;
    std::uint64_t block_size = std::uint64_t{1} << 18;
    std::size_t top_records = 10;
};

struct ScanResult {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t evaluated = 0;
    std::vector<ScanRow> violators;          // ascending n
    std::vector<ScanRow> max_delta_records;  // descending delta, ties by ascending n
    std::vector<std::uint64_t> near_ties;    // ascending n
};

// Exhaustive Robin scan of [lo, hi] with exact sieve sigma. n = 2 is never a violator.
ScanResult scan_range(std::uint64_t lo, std::uint64_t hi, const ScanOptions& options = {});

struct ExtremalCandidate {
    std::vector<std::uint32_t> exponents;  // over p_1..p_m, non-increasing
    Factorization factorization;
    double log_n = 0.0;
    double sigma_ratio = 0.0;
};

struct ExtremalOptions {
    // Only emit candidates whose sigma(n)/n beats every smaller candidate
    // (the superabundant records).
    bool records_only = false;
};

// Enumerates n = p_1^l_1 ... p_m^l_m with l_1 >= ... >= l_m >= 1 and m <= m_max
// in increasing n, stopping after `budget` emitted candidates.
class ExtremalCandidateGenerator {
public:
    ExtremalCandidateGenerator(std::size_t m_max, std::size_t budget, ExtremalOptions options = {});

    std::optional<ExtremalCandidate> next();

private:
    struct Node {
        double log_n;
        std::vector<std::uint32_t> exponents;
    };
    struct Later {
        bool operator()(const Node& a, const Node& b) const;
    };

    double log_of(const std::vector<std::uint32_t>& exponents) const;
    ExtremalCandidate make(Node node) const;

    std::vector<std::uint64_t> primes_;
    std::vector<double> log_primes_;
    std::size_t budget_;
    std::size_t emitted_ = 0;
    ExtremalOptions options_;
    double best_ratio_ = 0.0;
    std::priority_queue<Node, std::vector<Node>, Later> frontier_;
};

std::vector<ExtremalCandidate> extremal_candidates(std::size_t m_max, std::size_t budget,
                                                   ExtremalOptions options = {});

}  // namespace robinlab
