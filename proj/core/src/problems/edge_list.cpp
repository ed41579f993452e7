#include "codediter/problems/edge_list.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "codediter/error.hpp"

namespace codediter {

namespace {

bool parse_id(std::string_view token, std::int64_t& out) {
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc{} && ptr == end && out >= 0;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const auto start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

}  // namespace

SparseMatrix read_edge_list(std::istream& in, bool undirected) {
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = split_ws(line);
        if (tokens.empty() || tokens.front().front() == '#') continue;
        std::int64_t src = 0;
        std::int64_t dst = 0;
        if (tokens.size() != 2 || !parse_id(tokens[0], src) || !parse_id(tokens[1], dst))
            throw IoError("edge list line " + std::to_string(line_no) + ": expected two non-negative integers");
        edges.emplace_back(src, dst);
    }
    if (edges.empty()) throw IoError("edge list has no edges");

    std::vector<std::int64_t> ids;
    ids.reserve(edges.size() * 2);
    for (const auto& [s, d] : edges) {
        ids.push_back(s);
        ids.push_back(d);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto compact = [&](std::int64_t id) {
        return static_cast<std::int64_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    const auto N = static_cast<std::int64_t>(ids.size());
    std::vector<Triplet> t;
    t.reserve(edges.size() * (undirected ? 2 : 1));
    for (const auto& [s, d] : edges) {
        t.push_back({compact(d), compact(s), 1.0});
        if (undirected && s != d) t.push_back({compact(s), compact(d), 1.0});
    }
    SparseMatrix summed = SparseMatrix::from_triplets(N, N, t);
    std::vector<double> ones(summed.nnz(), 1.0);
    return SparseMatrix(N, N, {summed.row_offsets().begin(), summed.row_offsets().end()},
                        {summed.col_indices().begin(), summed.col_indices().end()}, std::move(ones));
}

SparseMatrix load_edge_list(const std::filesystem::path& path, bool undirected) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list " + path.string());
    return read_edge_list(in, undirected);
}

void write_edge_list(std::ostream& out, const SparseMatrix& adjacency, bool undirected) {
    const auto offsets = adjacency.row_offsets();
    const auto cols = adjacency.col_indices();
    for (std::int64_t r = 0; r < adjacency.rows(); ++r)
        for (auto p = offsets[r]; p < offsets[r + 1]; ++p)
            if (!undirected || cols[p] <= r) out << cols[p] << ' ' << r << '\n';
}

void write_edge_list(const std::filesystem::path& path, const SparseMatrix& adjacency, bool undirected) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write edge list " + path.string());
    write_edge_list(out, adjacency, undirected);
    if (!out) throw IoError("failed while writing " + path.string());
}

}  // namespace codediter
