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

#include <set>

#include "ssv/secant.hpp"

using namespace ssv;

namespace {

ModuleLabel make_label(std::vector<Partition> parts, long long mult) {
    ModuleLabel l;
    l.partitions = std::move(parts);
    l.multiplicity_in_Sd = mult;
    return l;
}

ModuleLabel find_label(int d, const std::vector<int>& dims,
                       const std::string& str) {
    for (const auto& l : decompose_symmetric_power(d, dims))
        if (l.str() == str) return l;
    throw std::runtime_error("label not found: " + str);
}

} // namespace

TEST_CASE("stream seeds separate by tag and salt") {
    std::set<uint64_t> seen;
    for (uint64_t salt = 0; salt < 4; ++salt)
        for (const char* tag : {"a", "b", "ab", ""})
            seen.insert(stream_seed(1, salt, tag));
    CHECK(seen.size() == 16);
    CHECK(stream_seed(1, 0, "x") == stream_seed(1, 0, "x"));
    CHECK(stream_seed(1, 0, "x") != stream_seed(2, 0, "x"));
}

TEST_CASE("secant point sampling is deterministic per seed") {
    PrimeField f(default_primes(1)[0]);
    SecantSpec spec{{3, 3, 4}, 4, 11};
    auto a = sample_secant_point(spec, f);
    auto b = sample_secant_point(spec, f);
    REQUIRE(a.size() == 4);
    for (std::size_t p = 0; p < a.size(); ++p) {
        REQUIRE(a[p].vecs.size() == 3);
        CHECK(a[p].vecs[0].size() == 3);
        CHECK(a[p].vecs[2].size() == 4);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(a[p].vecs[i] == b[p].vecs[i]);
    }
    SecantSpec other{{3, 3, 4}, 4, 12};
    auto c = sample_secant_point(other, f);
    CHECK(a[0].vecs[0] != c[0].vecs[0]);
}

TEST_CASE("terracini dimensions of matrix spaces") {
    PrimeField f(default_primes(1)[0]);
    // sigma_r of m x n matrices has cone dimension r(m + n - r)
    for (int m = 2; m <= 5; ++m)
        for (int n = m; n <= 5; ++n)
            for (int r = 1; r <= m; ++r) {
                SecantSpec spec{{m, n}, r, 5};
                CHECK(terracini_dimension(spec, f) ==
                      static_cast<std::size_t>(r * (m + n - r)));
            }
}

TEST_CASE("terracini is monotone and bounded") {
    PrimeField f(default_primes(1)[0]);
    std::vector<int> dims{3, 3, 3};
    std::size_t prev = 0;
    for (int r = 1; r <= 6; ++r) {
        SecantSpec spec{dims, r, 5};
        std::size_t dim = terracini_dimension(spec, f);
        CHECK(dim >= prev);
        CHECK(dim <= std::min<std::size_t>(27, r * (3 + 3 + 3 - 2)));
        prev = dim;
    }
    CHECK(prev == 27);
}

TEST_CASE("reduction filters") {
    SecantSpec spec{{3, 3, 4}, 4, 1};

    // d <= r: skip
    auto skip = reduction_filters(
        make_label({Partition{2, 1}, Partition{2, 1}, Partition{1, 1, 1}}, 1),
        3, spec);
    CHECK(skip.action == FilterAction::Skip);

    // trivial partition: delegate to the remaining factors
    auto transfer = reduction_filters(
        make_label({Partition{6}, Partition{3, 3}, Partition{2, 2, 2}}, 1), 6,
        spec);
    CHECK(transfer.action == FilterAction::Transfer);
    CHECK(transfer.transfer_factors == std::vector<int>{1, 2});

    // surviving label: dims drop to partition lengths
    auto keep = reduction_filters(
        make_label({Partition{3, 2, 1}, Partition{3, 2, 1},
                    Partition{3, 1, 1, 1}},
                   4),
        6, spec);
    CHECK(keep.action == FilterAction::Keep);
    CHECK(keep.eval_dims == std::vector<int>{3, 3, 4});

    auto inherited = reduction_filters(
        make_label({Partition{2, 2}, Partition{2, 2}, Partition{2, 1, 1}}, 1),
        4, SecantSpec{{3, 3, 4}, 3, 1});
    CHECK(inherited.action == FilterAction::Keep);
    CHECK(inherited.eval_dims == std::vector<int>{2, 2, 3});
}

TEST_CASE("realize_label_basis fills multiplicity-one labels") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(9);
    ModuleLabel label = find_label(4, {3, 3, 3}, "211|211|211");
    REQUIRE(label.multiplicity_in_Sd == 1);
    FormBasis basis = realize_label_basis(label, 4, {3, 3, 3}, f, rng);
    CHECK(basis.complete);
    CHECK(basis.forms.size() == 1);
}

TEST_CASE("realize_label_basis reaches the degree-6 multiplicity") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(13);
    ModuleLabel label = find_label(6, {3, 3, 4}, "321|321|3111");
    REQUIRE(label.multiplicity_in_Sd == 4);
    FormBasis basis = realize_label_basis(label, 6, {3, 3, 4}, f, rng);
    CHECK(basis.complete);
    CHECK(basis.forms.size() == 4);
}

TEST_CASE("pattern evaluation matrix shape") {
    PrimeField f(default_primes(1)[0]);
    Rng rng(15);
    const auto& forms = catalog_lookup("ex-321-321-3111").forms;
    int point_sets = 2, r = 4;
    FpMat m = pattern_evaluation_matrix(forms, r, point_sets, f, rng);
    REQUIRE(m.size() == forms.size());
    std::size_t pats = all_patterns(6, r).size();
    for (const auto& row : m) CHECK(row.size() == pats * point_sets);
}

TEST_CASE("scan of the filled secant variety is empty") {
    SecantSpec spec{{2, 2, 2}, 2, 21};
    ScanReport rep = scan_ideal(3, spec);
    CHECK(rep.ideal_dimension() == 0);
    for (const auto& v : rep.entries) CHECK(v.multiplicity_in_ideal == 0);
}

TEST_CASE("scan reproduces the flattening cubics count") {
    for (std::vector<int> dims : {std::vector<int>{2, 2, 3},
                                  std::vector<int>{2, 3, 3}}) {
        SecantSpec spec{dims, 2, 23};
        ScanReport rep = scan_ideal(3, spec);
        CHECK(rep.ideal_dimension() == cubic_ideal_dimension(dims));
    }
}

TEST_CASE("low degrees are skipped outright") {
    SecantSpec spec{{3, 3, 3}, 3, 25};
    ScanReport rep = scan_ideal(3, spec); // d = r: nothing to test
    for (const auto& v : rep.entries) {
        CHECK(v.status == "skipped-low-degree");
        CHECK(v.multiplicity_in_ideal == 0);
    }
}

TEST_CASE("label filter restricts the scan") {
    SecantSpec spec{{3, 3, 3}, 3, 27};
    ScanOptions opts;
    opts.label_filter = {"211|211|211"};
    ScanReport rep = scan_ideal(4, spec, opts);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.entries[0].label.str() == "211|211|211");
    CHECK(rep.entries[0].multiplicity_in_ideal == 1);
    CHECK(rep.ideal_dimension() == 27);
}

TEST_CASE("delegated labels inherit the sub-product verdict") {
    // a trivial partition in one factor delegates to the smaller product
    SecantSpec spec{{2, 2, 2}, 2, 29};
    ModuleLabel label = find_label(4, {2, 2, 2}, "4|22|22");
    LabelVerdict v = test_label(label, 4, spec);
    CHECK(v.status == "delegated");
    // 2x2 matrices of rank <= 2: everything, so nothing is in the ideal
    CHECK(v.multiplicity_in_ideal == 0);
}

TEST_CASE("verdict bookkeeping records sampling effort") {
    SecantSpec spec{{3, 3, 3}, 3, 31};
    ModuleLabel label = find_label(4, {3, 3, 3}, "211|211|211");
    ScanOptions opts;
    opts.point_sets = 4;
    LabelVerdict v = test_label(label, 4, spec, opts);
    CHECK(v.status == "tested");
    CHECK(v.primes.size() == 2);
    CHECK(v.point_sets >= 4);
    CHECK(v.patterns_tested == static_cast<int>(all_patterns(4, 3).size()));
    CHECK(v.forms_realized == 1);
    REQUIRE(v.coefficients.size() == 1);
}

TEST_CASE("kernel oracle agrees with the scanner on small labels") {
    SecantSpec spec{{3, 3, 3}, 3, 33};
    for (const char* name : {"211|211|211", "22|22|1111"}) {
        ModuleLabel label = [&] {
            try {
                return find_label(4, {3, 3, 3}, name);
            } catch (const std::runtime_error&) {
                return make_label({}, 0);
            }
        }();
        if (label.partitions.empty()) continue;
        LabelVerdict v = test_label(label, 4, spec);
        CHECK(kernel_oracle(label, 4, spec) == v.multiplicity_in_ideal);
    }
}

TEST_CASE("independent reruns with salted streams agree") {
    SecantSpec spec{{3, 3, 3}, 3, 35};
    ModuleLabel label = find_label(4, {3, 3, 3}, "211|211|211");
    ScanOptions a, b;
    b.salt = 99;
    b.use_weight_basis = true;
    LabelVerdict va = test_label(label, 4, spec, a);
    LabelVerdict vb = test_label(label, 4, spec, b);
    CHECK(va.multiplicity_in_ideal == vb.multiplicity_in_ideal);
}
