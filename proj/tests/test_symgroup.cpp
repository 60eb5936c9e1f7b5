/*
   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ssv/symgroup.hpp"

using namespace ssv;

TEST_CASE("partition enumeration") {
    auto p3 = enumerate_partitions(3);
    REQUIRE(p3.size() == 3);
    CHECK(p3[0] == Partition{3});
    CHECK(p3[1] == Partition{2, 1});
    CHECK(p3[2] == Partition{1, 1, 1});

    CHECK(enumerate_partitions(1) == std::vector<Partition>{Partition{1}});
    CHECK(enumerate_partitions(6).size() == 11);

    CHECK_THROWS(enumerate_partitions(0));
    CHECK_THROWS(enumerate_partitions(17));
}

TEST_CASE("conjugacy class sizes sum to d!") {
    for (int d = 1; d <= 8; ++d) {
        long long total = 0;
        for (const auto& cls : conjugacy_classes(d)) total += cls.class_size;
        CHECK(total == factorial(d));
    }
}

TEST_CASE("S_3 character table") {
    Partition id{1, 1, 1}, transp{2, 1}, cyc3{3};
    // chi_3
    CHECK(character(Partition{3}, id) == 1);
    CHECK(character(Partition{3}, transp) == 1);
    CHECK(character(Partition{3}, cyc3) == 1);
    // chi_21
    CHECK(character(Partition{2, 1}, id) == 2);
    CHECK(character(Partition{2, 1}, transp) == 0);
    CHECK(character(Partition{2, 1}, cyc3) == -1);
    // chi_111
    CHECK(character(Partition{1, 1, 1}, id) == 1);
    CHECK(character(Partition{1, 1, 1}, transp) == -1);
    CHECK(character(Partition{1, 1, 1}, cyc3) == 1);
}

TEST_CASE("character size mismatch throws") {
    CHECK_THROWS(character(Partition{2, 1}, Partition{2, 2}));
}

TEST_CASE("trivial rep character is 1 on every class") {
    for (int d = 1; d <= 8; ++d)
        for (const auto& cls : conjugacy_classes(d))
            CHECK(character(Partition{std::vector<int>{d}},
                            cls.cycle_lengths) == 1);
}

TEST_CASE("irrep dimensions") {
    CHECK(irrep_dimension(Partition{2, 1}) == 2);
    CHECK(irrep_dimension(Partition{2, 1, 1}) == 3);
    CHECK(irrep_dimension(Partition{3, 1}) == 3);
    for (int d = 1; d <= 6; ++d)
        CHECK(irrep_dimension(Partition{std::vector<int>{d}}) == 1);
}

TEST_CASE("character at identity equals hook-length dimension") {
    for (int d = 1; d <= 10; ++d) {
        Partition id(std::vector<int>(d, 1));
        for (const auto& pi : enumerate_partitions(d))
            CHECK(character(pi, id) == irrep_dimension(pi));
    }
}

TEST_CASE("sum of squared dimensions is d!") {
    for (int d = 1; d <= 8; ++d) {
        long long s = 0;
        for (const auto& pi : enumerate_partitions(d)) {
            long long dim = irrep_dimension(pi);
            s += dim * dim;
        }
        CHECK(s == factorial(d));
    }
}

TEST_CASE("invariant multiplicity examples") {
    Partition p21{2, 1}, p3{3};
    // (2^16 + 2) / 6 style count: at j = 4 the closed form gives 3
    CHECK(invariant_multiplicity({p21, p21, p21, p21}) == 3);
    CHECK(invariant_multiplicity({p3, p3}) == 1);
    // <chi_21^j, chi_3> = (2^{j-1} - (-1)^{j-1}) / 3
    for (int j = 1; j <= 8; ++j) {
        std::vector<Partition> pis(j, p21);
        pis.push_back(p3);
        long long expect =
            ((1ll << (j - 1)) - ((j - 1) % 2 == 0 ? 1 : -1)) / 3;
        CHECK(invariant_multiplicity(pis) == expect);
    }
}

TEST_CASE("invariant multiplicity is symmetric and self-dual") {
    std::mt19937 rng(7);
    for (int d = 2; d <= 6; ++d) {
        auto parts = enumerate_partitions(d);
        for (const auto& pi : parts)
            CHECK(invariant_multiplicity({pi, pi}) == 1);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Partition> pis;
            for (int i = 0; i < 3; ++i)
                pis.push_back(parts[rng() % parts.size()]);
            long long m = invariant_multiplicity(pis);
            std::vector<Partition> shuffled = pis;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            CHECK(invariant_multiplicity(shuffled) == m);
        }
    }
}
