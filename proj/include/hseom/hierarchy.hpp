// hierarchy.hpp - truncated multi-index space {n : n_k >= 0, sum n_k <= N_max}
//
// Indices are stored in graded lexicographic order (by level, then
// lexicographically ascending in (n_0, n_1, ...)), so every level occupies a
// contiguous range and position 0 is the zero vector (the reduced wave
// function). Neighbor tables are flat integer arrays with kAbsent marking
// moves that leave the space.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hseom/linalg.hpp"

namespace hseom {

inline constexpr int kAbsent = -1;

// binomial(K + N_max, N_max); throws std::overflow_error beyond 64 bits.
std::uint64_t awf_count(int K, int N_max);

struct OccupiedMode {
    int mode;        // k
    int occupation;  // n_k > 0
    int lowered;     // position of n - e_k
};

class HierarchySpace {
public:
    static constexpr std::uint64_t kDefaultBudget = 20'000'000;

    HierarchySpace(int K, int N_max, std::uint64_t max_indices = kDefaultBudget);

    int K() const noexcept { return K_; }
    int N_max() const noexcept { return N_max_; }
    int size() const noexcept { return size_; }

    std::span<const std::uint16_t> index(int pos) const
    {
        return {indices_.data() + static_cast<std::size_t>(pos) * K_, static_cast<std::size_t>(K_)};
    }
    int level(int pos) const noexcept { return levels_[pos]; }
    // [first, last) positions of a level.
    std::pair<int, int> level_range(int level) const;

    // kAbsent when n is not a valid index of this space.
    int position(std::span<const int> n) const;

    int raise(int pos, int k) const noexcept { return raise_[static_cast<std::size_t>(pos) * K_ + k]; }
    int lower(int pos, int k) const noexcept;
    // Position of n - e_k + e_kp, kAbsent when n_k = 0.
    int exchange(int pos, int k, int kp) const noexcept;

    std::span<const OccupiedMode> occupied(int pos) const
    {
        return {occupied_.data() + occupied_offsets_[pos],
                static_cast<std::size_t>(occupied_offsets_[pos + 1] - occupied_offsets_[pos])};
    }

private:
    // Rank of a sparse index (sorted occupied modes) within the whole space.
    int rank(std::span<const OccupiedMode> modes, int level) const;
    std::uint64_t binom(int n, int r) const;

    int K_;
    int N_max_;
    int size_;
    std::vector<std::uint16_t> indices_;
    std::vector<int> levels_;
    std::vector<int> level_offsets_;
    std::vector<int> raise_;
    std::vector<OccupiedMode> occupied_;
    std::vector<int> occupied_offsets_;
    std::vector<std::uint64_t> binom_;
    int binom_stride_ = 0;
};

} // namespace hseom
