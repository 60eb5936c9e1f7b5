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
#include <functional>
#include <numeric>

#include "ssv/eval.hpp"
#include "ssv/secant.hpp"

using namespace ssv;

namespace {

// cofactor-expansion determinant, independent of the library kernels
uint64_t naive_det(const std::vector<FpVec>& m, const PrimeField& f) {
    int n = static_cast<int>(m.size());
    if (n == 1) return m[0][0];
    uint64_t acc = 0;
    for (int j = 0; j < n; ++j) {
        std::vector<FpVec> sub;
        for (int i = 1; i < n; ++i) {
            FpVec row;
            for (int c = 0; c < n; ++c)
                if (c != j) row.push_back(m[i][c]);
            sub.push_back(std::move(row));
        }
        uint64_t term = f.mul(m[0][j], naive_det(sub, f));
        acc = j % 2 == 0 ? f.add(acc, term) : f.sub(acc, term);
    }
    return acc;
}

uint64_t naive_eval_raw(const MinorProductForm& form,
                        const std::vector<RankOnePoint>& args,
                        const PrimeField& f) {
    uint64_t acc = 1;
    for (int i = 0; i < form.num_factors(); ++i)
        for (const MinorGroup& g : form.factors[i]) {
            int s = g.size();
            std::vector<FpVec> m;
            for (int slot : g.slots) {
                FpVec row(args[slot].vecs[i].begin(),
                          args[slot].vecs[i].begin() + s);
                m.push_back(std::move(row));
            }
            acc = f.mul(acc, naive_det(m, f));
        }
    return acc;
}

uint64_t naive_symmetrized(const MinorProductForm& form,
                           const std::vector<RankOnePoint>& args,
                           const PrimeField& f) {
    std::vector<int> perm(form.degree);
    std::iota(perm.begin(), perm.end(), 0);
    uint64_t acc = 0;
    do {
        std::vector<RankOnePoint> permuted(form.degree);
        for (int i = 0; i < form.degree; ++i) permuted[i] = args[perm[i]];
        acc = f.add(acc, naive_eval_raw(form, permuted, f));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

} // namespace

TEST_CASE("eval_raw agrees with a cofactor-expansion oracle") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(31);
    for (const auto& entry : form_catalog())
        for (const auto& form : entry.forms) {
            auto args = sample_rank_ones(form.dims, form.degree, rng, f);
            CHECK(eval_raw(form, args, f) == naive_eval_raw(form, args, f));
        }
}

TEST_CASE("eval_symmetrized agrees with explicit permutation sums") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(37);
    const auto& form = catalog_lookup("ex-211-211-211").forms[0];
    for (int trial = 0; trial < 3; ++trial) {
        auto args = sample_rank_ones(form.dims, form.degree, rng, f);
        uint64_t expect = naive_symmetrized(form, args, f);
        CHECK(eval_symmetrized(form, args, f, true) == expect);
        CHECK(eval_symmetrized(form, args, f, false) == expect);
    }
}

TEST_CASE("symmetrized catalog forms are not identically zero") {
    PrimeField f(default_primes(1)[0]);
    for (const auto& entry : form_catalog())
        for (const auto& form : entry.forms) {
            if (form.degree > 9) continue;
            bool nonzero = false;
            Rng rng(41);
            for (int trial = 0; trial < 4 && !nonzero; ++trial) {
                auto args = sample_rank_ones(form.dims, form.degree, rng, f);
                nonzero = eval_symmetrized(form, args, f) != 0;
            }
            CHECK_MESSAGE(nonzero, entry.name);
        }
}

TEST_CASE("pattern sums: serial and parallel kernels agree") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(43);
    const auto& form = catalog_lookup("deg6-222").forms[0];
    auto points = sample_rank_ones(form.dims, 3, rng, f);
    MinorTables tables(form, points, f);
    for (const auto& pat : all_patterns(form.degree, 3)) {
        uint64_t serial = tables.pattern_sum(pat, f, false);
        CHECK(tables.pattern_sum(pat, f, true) == serial);
    }
}

TEST_CASE("pattern sums partition the full assignment sum") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(47);
    const auto& form = catalog_lookup("ex-211-211-211").forms[0];
    const int r = 3;
    auto points = sample_rank_ones(form.dims, r, rng, f);
    MinorTables tables(form, points, f);

    // sum of pattern_sum over every composition of d into r counts
    uint64_t total = 0;
    std::vector<int> counts(r, 0);
    std::function<void(int, int)> walk = [&](int point, int left) {
        if (point == r - 1) {
            counts[point] = left;
            total = f.add(total,
                          tables.pattern_sum(HomogeneityPattern{counts}, f));
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[point] = c;
            walk(point + 1, left - c);
        }
    };
    walk(0, form.degree);

    CHECK(tables.full_sum_brute(f) == total);
    CHECK(tables.full_sum(f) == total);
}

TEST_CASE("tensor-network contraction matches brute force") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(53);
    for (const char* name : {"deg6-222", "deg9-333"}) {
        const auto& form = catalog_lookup(name).forms[0];
        for (int r : {2, 3}) {
            auto points = sample_rank_ones(form.dims, r, rng, f);
            MinorTables tables(form, points, f);
            CHECK(tables.full_sum(f) == tables.full_sum_brute(f));
        }
    }
}

TEST_CASE("elimination width guard throws") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(59);
    const auto& form = catalog_lookup("deg9-333").forms[0];
    auto points = sample_rank_ones(form.dims, 4, rng, f);
    MinorTables tables(form, points, f);
    CHECK_THROWS_AS(tables.full_sum(f, 2), std::length_error);
}

TEST_CASE("eval_pattern consistency between primes") {
    auto primes = default_primes(2);
    Rng seed_rng(61);
    const auto& form = catalog_lookup("ex-211-211-211").forms[0];
    // a pattern evaluation that is zero mod one prime by accident would
    // not be zero mod the other; exercise both code paths
    for (uint64_t p : primes) {
        PrimeField f(p);
        Rng rng(77);
        auto points = sample_rank_ones(form.dims, 2, rng, f);
        HomogeneityPattern pat{{2, 2}};
        uint64_t direct = eval_pattern(form, points, pat, f);
        MinorTables tables(form, points, f);
        CHECK(tables.pattern_sum(pat, f) == direct);
    }
}

TEST_CASE("eval_at_sum equals the evaluation on replicated points") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(67);
    const auto& form = catalog_lookup("ex-211-211-211").forms[0];
    auto points = sample_rank_ones(form.dims, 1, rng, f);
    // at a single rank-one point every assignment is the same leaf
    std::vector<RankOnePoint> reps(form.degree, points[0]);
    CHECK(eval_at_sum(form, points, f) == naive_eval_raw(form, reps, f));
}

TEST_CASE("weight basis transforms change values but not vanishing") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(71);
    const auto& form = catalog_lookup("ex-211-211-211").forms[0];
    auto points = sample_rank_ones(form.dims, form.degree, rng, f);
    WeightBasis wb = random_weight_basis(form.dims, rng, f);
    for (auto& m : wb.mats) {
        REQUIRE(m.size() == 3);
    }
    uint64_t plain = eval_symmetrized(form, points, f);
    uint64_t twisted = eval_symmetrized(form, points, f, true, &wb);
    // generic basis change gives a different but still nonzero value
    CHECK(plain != 0);
    CHECK(twisted != 0);
}

TEST_CASE("naive symmetrization guard for large degrees") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(73);
    const auto& form = catalog_lookup("deg12-3333").forms[0];
    auto args = sample_rank_ones(form.dims, form.degree, rng, f);
    CHECK_THROWS_AS(eval_symmetrized(form, args, f), std::length_error);
}

TEST_CASE("all_patterns enumerates padded partitions") {
    auto pats = all_patterns(6, 5);
    CHECK(pats.size() == 10); // partitions of 6 minus the length-6 one
    for (const auto& p : pats) {
        CHECK(p.multiplicities.size() == 5);
        CHECK(p.total() == 6);
        for (std::size_t i = 1; i < p.multiplicities.size(); ++i)
            CHECK(p.multiplicities[i - 1] >= p.multiplicities[i]);
    }
    CHECK(all_patterns(3, 8).size() == 3);
}

TEST_CASE("linear independence of the catalog quadruple") {
    PrimeField f(default_primes(1)[0]);
    const auto& forms = catalog_lookup("ex-321-321-3111").forms;
    CHECK(linear_independence(forms, 12, 5, f) == 4);
}
