#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "foldnet/arch_spec.hpp"

namespace foldnet::cli {

enum class Command { Gen, Analyze, Spectrum, Compare, ArchSpec, Table1, Fig5 };
enum class OutputFormat { Json, Csv, Svg, Text };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInvalidArguments = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kInternal = 3;
}  // namespace exit_code

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::Gen;
    std::size_t fold_depth = 1;
    std::optional<std::size_t> layers;  // --nodes n is stored as n - 2
    std::optional<std::filesystem::path> input;
    std::optional<std::filesystem::path> input_b;
    std::optional<std::filesystem::path> output;  // directory for fig5
    OutputFormat format = OutputFormat::Json;

    // archspec
    std::size_t blocks_per_stage = 24;
    BlockKind block_kind = BlockKind::Bottleneck;
    std::size_t num_classes = 10;
    std::optional<std::uint64_t> seed;
};

// Reference incoherence values for t = 1..4, printed next to table1 results.
inline constexpr double kReferenceQ[] = {0.8523, 0.8904, 0.8950, 0.9124};

/// Parses argv into a RunConfig. Returns nullopt when help was printed.
/// Throws UsageError on bad flags or values.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Executes a parsed command; returns one of the exit codes above.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with error reporting on `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace foldnet::cli
