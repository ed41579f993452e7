#include "codediter/codes/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "codediter/error.hpp"

namespace codediter {

namespace {

std::vector<std::int64_t> draw_support(std::int64_t k, std::int64_t d, Rng& rng) {
    std::vector<std::int64_t> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    for (std::int64_t i = 0; i < d; ++i) {
        std::uniform_int_distribution<std::int64_t> pick(i, k - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(static_cast<std::size_t>(d));
    std::sort(idx.begin(), idx.end());
    return idx;
}

void check_support(std::int64_t k, const std::vector<std::int64_t>& support) {
    for (auto s : support)
        if (s < 0 || s >= k) throw ConfigError("cyclic support index out of range");
    auto sorted = support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ConfigError("cyclic support has repeated entries");
}

}  // namespace

SparsityPattern SparsityPattern::from_mask(std::int64_t P, std::int64_t k, std::vector<std::uint8_t> mask) {
    if (P <= 0 || k <= 0) throw ConfigError("pattern needs P > 0 and k > 0");
    if (mask.size() != static_cast<std::size_t>(P * k)) throw DimensionError("pattern mask has wrong size");
    for (auto& m : mask) {
        if (m > 1) throw ConfigError("pattern mask must be binary");
    }
    SparsityPattern p;
    p.params_ = {P, k, 0};
    p.mask_ = std::move(mask);
    const auto degrees = p.row_degrees();
    if (std::adjacent_find(degrees.begin(), degrees.end(), std::not_equal_to<>()) == degrees.end())
        p.params_.d = degrees.front();
    return p;
}

std::vector<std::int64_t> SparsityPattern::row_support(std::int64_t worker) const {
    std::vector<std::int64_t> out;
    for (std::int64_t j = 0; j < params_.k; ++j)
        if (at(worker, j)) out.push_back(j);
    return out;
}

std::vector<std::int64_t> SparsityPattern::holders(std::int64_t block) const {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 0; i < params_.P; ++i)
        if (at(i, block)) out.push_back(i);
    return out;
}

std::vector<std::int64_t> SparsityPattern::row_degrees() const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(params_.P), 0);
    for (std::int64_t i = 0; i < params_.P; ++i)
        for (std::int64_t j = 0; j < params_.k; ++j) out[i] += at(i, j);
    return out;
}

std::vector<std::int64_t> SparsityPattern::column_degrees() const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(params_.k), 0);
    for (std::int64_t i = 0; i < params_.P; ++i)
        for (std::int64_t j = 0; j < params_.k; ++j) out[j] += at(i, j);
    return out;
}

std::int64_t SparsityPattern::nnz() const {
    return std::count(mask_.begin(), mask_.end(), std::uint8_t{1});
}

std::string SparsityPattern::to_text() const {
    std::string out;
    out.reserve(static_cast<std::size_t>(params_.P * (params_.k + 1)));
    for (std::int64_t i = 0; i < params_.P; ++i) {
        for (std::int64_t j = 0; j < params_.k; ++j) out.push_back(at(i, j) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

SparsityPattern SparsityPattern::parse(std::string_view text) {
    std::vector<std::uint8_t> mask;
    std::int64_t rows = 0;
    std::int64_t k = -1;
    std::istringstream in{std::string(text)};
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (k < 0) k = static_cast<std::int64_t>(line.size());
        if (static_cast<std::int64_t>(line.size()) != k)
            throw IoError("pattern line " + std::to_string(line_no) + ": expected " + std::to_string(k) +
                          " characters");
        for (char c : line) {
            if (c != '0' && c != '1')
                throw IoError("pattern line " + std::to_string(line_no) + ": characters must be 0 or 1");
            mask.push_back(c == '1');
        }
        ++rows;
    }
    if (rows == 0) throw IoError("pattern text is empty");
    return from_mask(rows, k, std::move(mask));
}

SparsityPattern make_combined_cyclic(std::int64_t k, const std::vector<std::int64_t>& support1,
                                     const std::vector<std::int64_t>& support2) {
    if (k <= 0) throw ConfigError("combined-cyclic pattern needs k > 0");
    if (support1.size() != support2.size() || support1.empty())
        throw ConfigError("cyclic supports must be non-empty and of equal size");
    check_support(k, support1);
    check_support(k, support2);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(2 * k * k), 0);
    for (std::int64_t i = 0; i < k; ++i) {
        for (auto s : support1) mask[i * k + (s + i) % k] = 1;
        for (auto s : support2) mask[(k + i) * k + (s + i) % k] = 1;
    }
    return SparsityPattern::from_mask(2 * k, k, std::move(mask));
}

SparsityPattern make_combined_cyclic(std::int64_t k, std::int64_t d, Rng& rng) {
    if (k <= 0 || d < 1) throw ConfigError("combined-cyclic pattern needs k > 0 and d >= 1");
    if (d > k) throw ConfigError("degree d = " + std::to_string(d) + " exceeds k = " + std::to_string(k));
    const auto s1 = draw_support(k, d, rng);
    auto s2 = draw_support(k, d, rng);
    const bool waived = d == k;
    while (!waived && s2 == s1) s2 = draw_support(k, d, rng);
    auto pattern = make_combined_cyclic(k, s1, s2);
    pattern.set_distinctness_waived(waived);
    return pattern;
}

SparsityPattern make_random_regular(std::int64_t P, std::int64_t k, std::int64_t d, Rng& rng) {
    if (P <= 0 || k <= 0 || d < 1) throw ConfigError("random-regular pattern needs P, k > 0 and d >= 1");
    if (d > k) throw ConfigError("degree d = " + std::to_string(d) + " exceeds k = " + std::to_string(k));
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(P * k), 0);
    for (std::int64_t i = 0; i < P; ++i)
        for (auto j : draw_support(k, d, rng)) mask[i * k + j] = 1;
    return SparsityPattern::from_mask(P, k, std::move(mask));
}

SparsityPattern make_identity_pattern(std::int64_t k) {
    if (k <= 0) throw ConfigError("identity pattern needs k > 0");
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(k * k), 0);
    for (std::int64_t i = 0; i < k; ++i) mask[i * k + i] = 1;
    return SparsityPattern::from_mask(k, k, std::move(mask));
}

SparsityPattern make_replication_pattern(std::int64_t k, std::int64_t copies) {
    if (k <= 0 || copies <= 0) throw ConfigError("replication pattern needs k > 0 and copies > 0");
    const auto P = k * copies;
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(P * k), 0);
    for (std::int64_t i = 0; i < P; ++i) mask[i * k + i / copies] = 1;
    return SparsityPattern::from_mask(P, k, std::move(mask));
}

SparsityPattern make_fractional_repetition(std::int64_t P, std::int64_t k) {
    if (P <= 0 || k <= 0 || k % 2 != 0) throw ConfigError("fractional repetition needs P > 0 and even k");
    const auto groups = k / 2;
    if (P % groups != 0) throw ConfigError("fractional repetition needs P divisible by k/2");
    const auto per_group = P / groups;
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(P * k), 0);
    for (std::int64_t i = 0; i < P; ++i) {
        const auto g = i / per_group;
        mask[i * k + 2 * g] = 1;
        mask[i * k + 2 * g + 1] = 1;
    }
    return SparsityPattern::from_mask(P, k, std::move(mask));
}

}  // namespace codediter
