#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "foldnet/arch_graph.hpp"
#include "foldnet/metrics.hpp"

namespace foldnet {

inline constexpr std::string_view kGraphFormat = "foldnet-graph/1";

/// Graph document with edges sorted lexicographically. "num_layers" is the
/// stored value, or nodes - 2 for hand-built graphs; "fold_depth" is null
/// when unknown.
std::string graph_to_json(const ArchGraph& graph);

/// Parses and validates a graph document. Throws ParseError / VersionError on
/// malformed input and InvalidGraphError when the graph breaks an invariant.
ArchGraph graph_from_json(std::string_view text);

/// {"q", "mean_distance", "levels", "spectrum", "cdf"}; reals printed with
/// 17 significant digits, path counts as decimal strings.
std::string metrics_to_json(const TrophicReport& trophic, const PathSpectrum& spectrum);

/// "length,count,cdf" followed by one row per support point.
std::string cdf_to_csv(const PathSpectrum& spectrum);

std::string dominance_to_json(const DominanceReport& report);
std::string dominance_to_text(const DominanceReport& report);

/// %.17g formatting, shared by every text output.
std::string format_real(double value);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace foldnet
