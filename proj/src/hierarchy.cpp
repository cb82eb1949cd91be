// hierarchy.cpp - multi-index enumeration, combinatorial ranking and neighbor tables

#include "hseom/hierarchy.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace hseom {

std::uint64_t awf_count(int K, int N_max)
{
    if (K < 1 || N_max < 0) throw std::invalid_argument("awf_count requires K >= 1 and N_max >= 0");
    unsigned __int128 c = 1;
    for (int i = 1; i <= N_max; ++i) {
        c = c * static_cast<unsigned __int128>(K + i) / static_cast<unsigned __int128>(i);
        if (c > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("awf_count exceeds 64 bits for K = " + std::to_string(K) +
                                      ", N_max = " + std::to_string(N_max));
    }
    return static_cast<std::uint64_t>(c);
}

HierarchySpace::HierarchySpace(int K, int N_max, std::uint64_t max_indices) : K_(K), N_max_(N_max)
{
    if (K < 1 || N_max < 0) throw std::invalid_argument("HierarchySpace requires K >= 1 and N_max >= 0");
    if (K > std::numeric_limits<std::uint16_t>::max() || N_max > std::numeric_limits<std::uint16_t>::max())
        throw std::invalid_argument("HierarchySpace: K and N_max must fit in 16 bits");
    const std::uint64_t count = awf_count(K, N_max);
    if (count > max_indices || count > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw ResourceError("hierarchy of " + std::to_string(count) + " indices exceeds the budget of " +
                                std::to_string(max_indices),
                            count);
    size_ = static_cast<int>(count);

    // T[d][r] = C(d + r, r) for d <= N_max + 1.
    binom_stride_ = K + 2;
    binom_.assign(static_cast<std::size_t>(N_max + 2) * binom_stride_, 0);
    for (int d = 0; d <= N_max + 1; ++d)
        for (int r = 0; r < binom_stride_; ++r)
            binom_[d * binom_stride_ + r] =
                (d == 0 || r == 0) ? 1 : binom_[(d - 1) * binom_stride_ + r] + binom_[d * binom_stride_ + r - 1];

    level_offsets_.assign(N_max + 2, 0);
    for (int l = 0; l <= N_max; ++l)
        level_offsets_[l + 1] = level_offsets_[l] + static_cast<int>(binom(l + K - 1, K - 1));

    indices_.reserve(static_cast<std::size_t>(size_) * K);
    levels_.reserve(size_);
    std::vector<std::uint16_t> work(K, 0);
    // Lexicographically ascending compositions of `remaining` into positions i..K-1.
    auto emit = [&](auto&& self, int i, int remaining, int level) -> void {
        if (i == K - 1) {
            work[i] = static_cast<std::uint16_t>(remaining);
            indices_.insert(indices_.end(), work.begin(), work.end());
            levels_.push_back(level);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            work[i] = static_cast<std::uint16_t>(v);
            self(self, i + 1, remaining - v, level);
        }
        work[i] = 0;
    };
    for (int l = 0; l <= N_max; ++l) emit(emit, 0, l, l);

    occupied_offsets_.assign(size_ + 1, 0);
    for (int p = 0; p < size_; ++p) {
        const auto n = index(p);
        int cnt = 0;
        for (int k = 0; k < K; ++k) cnt += n[k] > 0;
        occupied_offsets_[p + 1] = occupied_offsets_[p] + cnt;
    }
    occupied_.resize(occupied_offsets_[size_]);
    for (int p = 0; p < size_; ++p) {
        const auto n = index(p);
        int o = occupied_offsets_[p];
        for (int k = 0; k < K; ++k)
            if (n[k] > 0) occupied_[o++] = OccupiedMode{k, n[k], kAbsent};
    }

    std::vector<OccupiedMode> buf;
    buf.reserve(N_max + 1);
    for (int p = 0; p < size_; ++p) {
        const auto occ = occupied(p);
        for (std::size_t j = 0; j < occ.size(); ++j) {
            buf.assign(occ.begin(), occ.end());
            if (--buf[j].occupation == 0) buf.erase(buf.begin() + static_cast<std::ptrdiff_t>(j));
            occupied_[occupied_offsets_[p] + j].lowered = rank(buf, levels_[p] - 1);
        }
    }

    raise_.assign(static_cast<std::size_t>(size_) * K, kAbsent);
    for (int p = 0; p < size_; ++p) {
        if (levels_[p] >= N_max) continue;
        const auto occ = occupied(p);
        for (int k = 0; k < K; ++k) {
            buf.assign(occ.begin(), occ.end());
            auto it = std::lower_bound(buf.begin(), buf.end(), k,
                                       [](const OccupiedMode& m, int key) { return m.mode < key; });
            if (it != buf.end() && it->mode == k)
                ++it->occupation;
            else
                buf.insert(it, OccupiedMode{k, 1, kAbsent});
            raise_[static_cast<std::size_t>(p) * K + k] = rank(buf, levels_[p] + 1);
        }
    }
}

std::uint64_t HierarchySpace::binom(int n, int r) const
{
    const int d = n - r;
    if (r < 0 || d < 0) return 0;
    return binom_[static_cast<std::size_t>(d) * binom_stride_ + r];
}

int HierarchySpace::rank(std::span<const OccupiedMode> modes, int level) const
{
    std::uint64_t r = static_cast<std::uint64_t>(level_offsets_[level]);
    int remaining = level;
    for (const auto& m : modes) {
        if (m.mode < K_ - 1) {
            const int parts = K_ - m.mode - 2;
            r += binom(remaining + parts + 1, parts + 1) - binom(remaining - m.occupation + parts + 1, parts + 1);
        }
        remaining -= m.occupation;
    }
    return static_cast<int>(r);
}

std::pair<int, int> HierarchySpace::level_range(int level) const
{
    if (level < 0 || level > N_max_) return {0, 0};
    return {level_offsets_[level], level_offsets_[level + 1]};
}

int HierarchySpace::position(std::span<const int> n) const
{
    if (static_cast<int>(n.size()) != K_) return kAbsent;
    std::vector<OccupiedMode> modes;
    int level = 0;
    for (int k = 0; k < K_; ++k) {
        if (n[k] < 0) return kAbsent;
        if (n[k] > 0) modes.push_back(OccupiedMode{k, n[k], kAbsent});
        level += n[k];
        if (level > N_max_) return kAbsent;
    }
    return rank(modes, level);
}

int HierarchySpace::lower(int pos, int k) const noexcept
{
    for (const auto& m : occupied(pos))
        if (m.mode == k) return m.lowered;
    return kAbsent;
}

int HierarchySpace::exchange(int pos, int k, int kp) const noexcept
{
    const int down = lower(pos, k);
    if (down == kAbsent) return kAbsent;
    return raise(down, kp);
}

} // namespace hseom
