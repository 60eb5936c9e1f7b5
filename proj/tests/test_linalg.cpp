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

#include <random>

#include "ssv/linalg.hpp"
#include "ssv/points.hpp"

using namespace ssv;

TEST_CASE("default primes are distinct 61-bit primes") {
    auto primes = default_primes(4);
    REQUIRE(primes.size() == 4);
    CHECK(primes[0] == PrimeField::kMersenne61);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        CHECK(is_prime_u64(primes[i]));
        CHECK(primes[i] > (1ull << 59));
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            CHECK(primes[i] != primes[j]);
    }
}

TEST_CASE("primality test on known values") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64((1ull << 61) - 1));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64((1ull << 61) - 3));
    CHECK_FALSE(is_prime_u64(3215031751ull)); // strong pseudoprime base 2,3,5,7
}

TEST_CASE("mersenne fast multiply agrees with generic reduction") {
    PrimeField f(PrimeField::kMersenne61);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        uint64_t a = rng() % f.prime(), b = rng() % f.prime();
        unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
        CHECK(f.mul(a, b) == static_cast<uint64_t>(x % f.prime()));
    }
}

TEST_CASE("field inverse and power") {
    for (uint64_t p : default_primes(2)) {
        PrimeField f(p);
        std::mt19937_64 rng(5);
        for (int i = 0; i < 200; ++i) {
            uint64_t a = 1 + rng() % (f.prime() - 1);
            CHECK(f.mul(a, f.inv(a)) == 1);
        }
        CHECK_THROWS(f.inv(0));
        CHECK(f.pow(3, f.prime() - 1) == 1); // Fermat
    }
    CHECK_THROWS(PrimeField(97));
}

namespace {

FpMat random_matrix(int rows, int cols, int rank, Rng& rng,
                    const PrimeField& f) {
    // product of random rows x cols factors through a rank-`rank` middle
    FpMat left(rows, FpVec(rank)), right(rank, FpVec(cols));
    for (auto& r : left)
        for (auto& x : r) x = random_field_elem(rng, f);
    for (auto& r : right)
        for (auto& x : r) x = random_field_elem(rng, f);
    FpMat m(rows, FpVec(cols, 0));
    for (int i = 0; i < rows; ++i)
        for (int t = 0; t < rank; ++t)
            for (int j = 0; j < cols; ++j)
                m[i][j] = f.add(m[i][j], f.mul(left[i][t], right[t][j]));
    return m;
}

} // namespace

TEST_CASE("rank of structured random matrices") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 2 + static_cast<int>(rng() % 30);
        int cols = 2 + static_cast<int>(rng() % 30);
        int rank = static_cast<int>(rng() % (std::min(rows, cols) + 1));
        FpMat m = random_matrix(rows, cols, rank, rng, f);

        FpMat a = m, b = m;
        std::size_t rp = fp_rank(a, f);
        std::size_t rs = fp_rank_serial(b, f);
        CHECK(rp == rs);
        // a random low-rank product has full middle rank w.h.p.
        CHECK(rp == static_cast<std::size_t>(rank));

        RowEchelon ech(f, cols);
        for (const auto& row : m) ech.absorb(row);
        CHECK(ech.rank() == rp);

        FpMat kernel = fp_kernel(m, f);
        CHECK(kernel.size() + rp == static_cast<std::size_t>(cols));
        for (const auto& x : kernel)
            for (const auto& row : m) {
                uint64_t dot = 0;
                for (int j = 0; j < cols; ++j)
                    dot = f.add(dot, f.mul(row[j], x[j]));
                CHECK(dot == 0);
            }
    }
}

TEST_CASE("row echelon independence probe") {
    PrimeField f(default_primes(1)[0]);
    RowEchelon ech(f, 3);
    CHECK(ech.absorb({1, 2, 3}));
    CHECK(ech.absorb({0, 1, 1}));
    CHECK_FALSE(ech.independent({2, 5, 7})); // row1 + row2
    CHECK(ech.independent({0, 0, 1}));
    CHECK(ech.rank() == 2);
}

TEST_CASE("rational rank") {
    using Q = mpq_class;
    std::vector<std::vector<Q>> m = {
        {Q(1), Q(1, 2), Q(1, 3)},
        {Q(1, 2), Q(1, 3), Q(1, 4)},
        {Q(1, 3), Q(1, 4), Q(1, 5)},
    };
    CHECK(rational_rank(m) == 3); // Hilbert matrix is invertible

    std::vector<std::vector<Q>> sing = {
        {Q(1), Q(2), Q(3)},
        {Q(2), Q(4), Q(6)},
        {Q(0), Q(1), Q(1)},
    };
    CHECK(rational_rank(sing) == 2);
    CHECK(rational_rank({}) == 0);
}

TEST_CASE("cross-prime rank agreement on integer matrices") {
    auto primes = default_primes(2);
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 4 + static_cast<int>(rng() % 6);
        std::vector<std::vector<mpq_class>> q(n, std::vector<mpq_class>(n));
        FpMat m0(n, FpVec(n)), m1(n, FpVec(n));
        PrimeField f0(primes[0]), f1(primes[1]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long v = static_cast<long>(rng() % 19) - 9;
                q[i][j] = v;
                m0[i][j] = f0.reduce_signed(v);
                m1[i][j] = f1.reduce_signed(v);
            }
        std::size_t rq = rational_rank(q);
        CHECK(fp_rank(m0, f0) == rq);
        CHECK(fp_rank(m1, f1) == rq);
    }
}
