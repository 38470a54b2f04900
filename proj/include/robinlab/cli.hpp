#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace robinlab::cli {

enum class OutputFormat { csv, json };

// Global flags shared by every subcommand.
struct RunConfig {
    std::optional<std::uint64_t> limit;
    OutputFormat format = OutputFormat::csv;
    unsigned threads = 1;
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    std::optional<std::uint64_t> checkpoint_every;  // each subcommand has its own default
    std::string output_path;                        // empty: standard output

    // Throws DomainError on threads == 0, a segment size that is not a power
    // of two >= 2^16, or checkpoint_every == 0.
    void validate() const;
};

// Runs the command line (args[0] is the program name). Returns 0 on a
// completed run, 2 on configuration or capacity errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robinlab::cli
