#pragma once

#include "hscm/graph.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace hscm::io {

/// Writes `content` to a temporary file next to `path` and renames it into
/// place. Throws IoError.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_text(const std::filesystem::path& path);

/// "# hscm v1 n=<n> seed=<seed>" followed by "u v" lines.
std::string format_edge_list(const Graph& g, std::uint64_t seed);
void write_edge_list(const std::filesystem::path& path, const Graph& g, std::uint64_t seed);

struct EdgeListFile
{
    std::optional<std::int64_t> header_n;
    std::optional<std::uint64_t> header_seed;
    std::vector<Edge> edges; ///< raw pairs as read, in file order
    std::int64_t max_id = -1;
    std::int64_t min_id = -1;
};

/// Parses whitespace-separated "u v" lines; '#' starts a comment line.
/// Throws ParseError carrying the 1-based line number.
EdgeListFile parse_edge_list(std::istream& in);
EdgeListFile parse_edge_list_file(const std::filesystem::path& path);

/// Reads a file written by write_edge_list back into a Graph.
Graph read_edge_list(const std::filesystem::path& path);

/// CSV with a header row; values printed with 17 significant digits.
std::string format_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

} // namespace hscm::io
