#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "codediter/random.hpp"

namespace codediter {

struct CodeParams {
    std::int64_t P = 0;  ///< workers
    std::int64_t k = 0;  ///< splits
    std::int64_t d = 0;  ///< ones per row; 0 when rows are not all the same degree

    double rate() const { return static_cast<double>(k) / static_cast<double>(P); }
};

/// Binary P x k placement: worker i stores block j iff at(i, j).
class SparsityPattern {
public:
    SparsityPattern() = default;

    /// mask is row-major with P*k entries in {0, 1}.
    static SparsityPattern from_mask(std::int64_t P, std::int64_t k, std::vector<std::uint8_t> mask);

    const CodeParams& params() const noexcept { return params_; }
    std::int64_t workers() const noexcept { return params_.P; }
    std::int64_t splits() const noexcept { return params_.k; }

    bool at(std::int64_t worker, std::int64_t block) const { return mask_[worker * params_.k + block] != 0; }
    std::vector<std::int64_t> row_support(std::int64_t worker) const;
    /// Workers that store block j, ascending.
    std::vector<std::int64_t> holders(std::int64_t block) const;
    std::vector<std::int64_t> row_degrees() const;
    std::vector<std::int64_t> column_degrees() const;
    std::int64_t nnz() const;

    /// Set when the two cyclic supports could not be made distinct (d == k).
    bool distinctness_waived() const noexcept { return waived_; }
    void set_distinctness_waived(bool w) noexcept { waived_ = w; }

    const std::vector<std::uint8_t>& mask() const noexcept { return mask_; }

    /// One line per row, k characters of '0'/'1'.
    std::string to_text() const;
    static SparsityPattern parse(std::string_view text);

    friend bool operator==(const SparsityPattern& a, const SparsityPattern& b) {
        return a.params_.P == b.params_.P && a.params_.k == b.params_.k && a.mask_ == b.mask_;
    }

private:
    CodeParams params_;
    std::vector<std::uint8_t> mask_;
    bool waived_ = false;
};

/// Two stacked k x k cyclic blocks; row i of a block has ones at (s + i) mod k for s in its support.
SparsityPattern make_combined_cyclic(std::int64_t k, std::int64_t d, Rng& rng);
SparsityPattern make_combined_cyclic(std::int64_t k, const std::vector<std::int64_t>& support1,
                                     const std::vector<std::int64_t>& support2);

/// Each row gets d ones placed uniformly at random without replacement. Columns are not balanced.
SparsityPattern make_random_regular(std::int64_t P, std::int64_t k, std::int64_t d, Rng& rng);

/// Uncoded placement: P == k, worker i holds block i.
SparsityPattern make_identity_pattern(std::int64_t k);

/// Each of k blocks held by `copies` consecutive workers: worker i holds block i / copies.
SparsityPattern make_replication_pattern(std::int64_t k, std::int64_t copies);

/// Fractional repetition: k/2 block pairs, pair g = {2g, 2g+1} held by 2P/k consecutive workers.
SparsityPattern make_fractional_repetition(std::int64_t P, std::int64_t k);

}  // namespace codediter
