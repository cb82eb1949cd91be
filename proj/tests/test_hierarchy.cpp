// test_hierarchy.cpp - multi-index enumeration and neighbor tables

#include <numeric>
#include <vector>

#include "doctest.h"
#include "hseom/hierarchy.hpp"

using namespace hseom;

TEST_CASE("awf counts")
{
    CHECK(awf_count(1, 0) == 1);
    CHECK(awf_count(80, 3) == 91881);
    CHECK(awf_count(20, 3) == 1771);
    CHECK(awf_count(5, 3) == 56);
    CHECK(awf_count(5, 5) == 252);
    for (int K = 1; K <= 12; ++K) CHECK(awf_count(K, 1) == static_cast<std::uint64_t>(K + 1));
    CHECK_THROWS_AS(awf_count(1000, 1000), std::overflow_error);
}

TEST_CASE("built spaces match the closed form")
{
    CHECK(HierarchySpace(80, 3).size() == 91881);
    CHECK(HierarchySpace(20, 3).size() == 1771);
    CHECK(HierarchySpace(5, 3).size() == 56);
    CHECK(HierarchySpace(5, 5).size() == 252);
    for (int K = 1; K <= 12; ++K)
        for (int N = 0; N <= 6; ++N) CHECK(static_cast<std::uint64_t>(HierarchySpace(K, N).size()) == awf_count(K, N));
}

TEST_CASE("budget refusal reports the requested count")
{
    try {
        HierarchySpace(80, 3, 1000);
        FAIL("expected a resource refusal");
    } catch (const ResourceError& e) {
        CHECK(e.requested() == 91881);
    }
}

TEST_CASE("ordering, round trip and neighbor consistency")
{
    const HierarchySpace space(6, 4);
    const int K = space.K();
    CHECK(space.level(0) == 0);
    for (int k = 0; k < K; ++k) CHECK(space.index(0)[k] == 0);
    for (int p = 0; p < space.size(); ++p) {
        const auto idx = space.index(p);
        const std::vector<int> n(idx.begin(), idx.end());
        CHECK(std::accumulate(n.begin(), n.end(), 0) == space.level(p));
        CHECK(space.position(n) == p);
        if (p > 0) {
            CHECK(space.level(p) >= space.level(p - 1));
            if (space.level(p) == space.level(p - 1)) {
                const auto prev = space.index(p - 1);
                CHECK(std::lexicographical_compare(prev.begin(), prev.end(), idx.begin(), idx.end()));
            }
        }
        for (int k = 0; k < K; ++k) {
            const int up = space.raise(p, k);
            if (space.level(p) == space.N_max()) {
                CHECK(up == kAbsent);
            } else {
                REQUIRE(up != kAbsent);
                CHECK(space.lower(up, k) == p);
                CHECK(space.index(up)[k] == n[k] + 1);
            }
            CHECK((space.lower(p, k) == kAbsent) == (n[k] == 0));
            for (int kp = 0; kp < K; ++kp) {
                const int ex = space.exchange(p, k, kp);
                if (n[k] == 0) {
                    CHECK(ex == kAbsent);
                } else {
                    std::vector<int> m = n;
                    --m[k];
                    ++m[kp];
                    CHECK(ex == space.position(m));
                }
            }
        }
        int occupied = 0;
        for (const auto& m : space.occupied(p)) {
            CHECK(m.occupation == n[m.mode]);
            CHECK(m.lowered == space.lower(p, m.mode));
            ++occupied;
        }
        CHECK(occupied == K - std::count(n.begin(), n.end(), 0));
    }
    for (int l = 0; l <= space.N_max(); ++l) {
        const auto [a, b] = space.level_range(l);
        for (int p = a; p < b; ++p) CHECK(space.level(p) == l);
    }
    const std::vector<int> outside{5, 0, 0, 0, 0, 0};
    CHECK(space.position(outside) == kAbsent);
}
