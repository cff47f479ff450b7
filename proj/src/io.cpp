#include "hscm/io.hpp"

#include "hscm/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hscm::io {

void atomic_write(const std::filesystem::path& path, const std::string& content)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path(), ec);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw IoError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_edge_list(const Graph& g, std::uint64_t seed)
{
    std::string out = "# hscm v1 n=" + std::to_string(g.n) + " seed=" + std::to_string(seed) + "\n";
    out.reserve(out.size() + g.edges.size() * 14);
    char buf[32];
    for (const auto& [u, v] : g.edges) {
        const int len = std::snprintf(buf, sizeof buf, "%u %u\n", u, v);
        out.append(buf, static_cast<std::size_t>(len));
    }
    return out;
}

void write_edge_list(const std::filesystem::path& path, const Graph& g, std::uint64_t seed)
{
    atomic_write(path, format_edge_list(g, seed));
}

namespace {

template <class T>
bool parse_number(std::string_view token, T& value)
{
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

void parse_header(std::string_view line, EdgeListFile& file, std::size_t lineno)
{
    const auto tokens = split(line.substr(1));
    if (tokens.size() < 2 || tokens[0] != "hscm")
        return; // ordinary comment
    for (std::size_t t = 2; t < tokens.size(); ++t) {
        const auto tok = tokens[t];
        if (tok.starts_with("n=")) {
            std::int64_t n = 0;
            if (!parse_number(tok.substr(2), n) || n < 0)
                throw ParseError("bad node count in header", lineno);
            file.header_n = n;
        } else if (tok.starts_with("seed=")) {
            std::uint64_t seed = 0;
            if (!parse_number(tok.substr(5), seed))
                throw ParseError("bad seed in header", lineno);
            file.header_seed = seed;
        }
    }
}

} // namespace

EdgeListFile parse_edge_list(std::istream& in)
{
    EdgeListFile file;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = split(line);
        if (tokens.empty())
            continue;
        if (tokens[0].front() == '#') {
            if (lineno == 1)
                parse_header(line, file, lineno);
            continue;
        }
        if (tokens.size() != 2)
            throw ParseError("expected exactly two node ids", lineno);
        std::int64_t u = 0;
        std::int64_t v = 0;
        if (!parse_number(tokens[0], u) || !parse_number(tokens[1], v))
            throw ParseError("node ids must be non-negative integers", lineno);
        if (u < 0 || v < 0 || u >= (std::int64_t{1} << 31) || v >= (std::int64_t{1} << 31))
            throw ParseError("node id out of range", lineno);
        file.edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
        const std::int64_t lo = std::min(u, v);
        const std::int64_t hi = std::max(u, v);
        file.max_id = std::max(file.max_id, hi);
        file.min_id = file.min_id < 0 ? lo : std::min(file.min_id, lo);
    }
    if (in.bad())
        throw IoError("read error");
    return file;
}

EdgeListFile parse_edge_list_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    return parse_edge_list(in);
}

Graph read_edge_list(const std::filesystem::path& path)
{
    auto file = parse_edge_list_file(path);
    Graph g;
    g.n = file.header_n.value_or(file.max_id + 1);
    if (file.max_id >= g.n)
        throw ParseError("node id " + std::to_string(file.max_id) + " exceeds header n", 1);
    g.edges = std::move(file.edges);
    canonicalize(g.edges);
    return g;
}

std::string format_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows)
{
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i)
            out += ',';
        out += header[i];
    }
    out += '\n';
    char buf[40];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            const double v = row[i];
            int len;
            if (v == std::floor(v) && std::abs(v) < 1e15)
                len = std::snprintf(buf, sizeof buf, "%.0f", v);
            else
                len = std::snprintf(buf, sizeof buf, "%.17g", v);
            out.append(buf, static_cast<std::size_t>(len));
        }
        out += '\n';
    }
    return out;
}

} // namespace hscm::io
