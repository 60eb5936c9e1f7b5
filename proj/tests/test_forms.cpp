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

#include "ssv/forms.hpp"

using namespace ssv;

namespace {

Perm iota(int d) {
    Perm p(d);
    for (int i = 0; i < d; ++i) p[i] = i;
    return p;
}

} // namespace

TEST_CASE("build_form canonical group layout") {
    // partition (2,1): one size-1 group then one size-2 group
    auto form = build_form({Partition{2, 1}, Partition{2, 1}},
                           {iota(3), iota(3)}, {2, 2});
    REQUIRE(form.factors.size() == 2);
    REQUIRE(form.factors[0].size() == 2);
    CHECK(form.factors[0][0].slots == std::vector<int>{0});
    CHECK(form.factors[0][1].slots == std::vector<int>{1, 2});

    // tau reroutes the canonical slots
    auto routed = build_form({Partition{2, 1}, Partition{2, 1}},
                             {Perm{2, 0, 1}, iota(3)}, {2, 2});
    CHECK(routed.factors[0][0].slots == std::vector<int>{2});
    CHECK(routed.factors[0][1].slots == std::vector<int>{0, 1});
}

TEST_CASE("build_form rejects malformed input") {
    CHECK_THROWS(build_form({Partition{2, 1}}, {iota(3)}, {1})); // too long
    CHECK_THROWS(build_form({Partition{2, 1}, Partition{2, 1}},
                            {iota(2), iota(3)}, {2, 2})); // bad perm size
    CHECK_THROWS(build_form({Partition{2, 1}, Partition{2, 2}},
                            {iota(3), iota(3)}, {2, 2})); // degrees differ
}

TEST_CASE("form validation catches bad slot covers") {
    MinorProductForm f;
    f.degree = 2;
    f.dims = {2, 2};
    f.partitions = {Partition{1, 1}, Partition{2}};
    f.factors = {{MinorGroup{{0, 1}}}, {MinorGroup{{0}}, MinorGroup{{0}}}};
    CHECK_THROWS(f.validate()); // slot 0 used twice, slot 1 uncovered
}

TEST_CASE("catalog entries are well formed") {
    const auto& cat = form_catalog();
    REQUIRE(!cat.empty());
    for (const auto& e : cat) {
        CHECK(!e.name.empty());
        CHECK(!e.forms.empty());
        for (const auto& form : e.forms) {
            CHECK_NOTHROW(form.validate());
            CHECK(form.degree == form.partitions[0].size());
        }
    }
    CHECK(catalog_lookup("ex-321-321-3111").forms.size() == 4);
    CHECK_THROWS(catalog_lookup("no-such-entry"));
}

TEST_CASE("slot graph edges mean never wedged together") {
    const auto& form = catalog_lookup("deg6-222").forms[0];
    SlotGraph g = slot_graph(form);
    REQUIRE(g.vertices == 6);
    // slots 0 and 3 never share a group: edge
    CHECK(g.adj[0][3]);
    // slots 0 and 1 share the first A determinant: no edge
    CHECK_FALSE(g.adj[0][1]);
    for (int v = 0; v < g.vertices; ++v) CHECK_FALSE(g.adj[v][v]);
}

TEST_CASE("degree-8 catalog graphs are triangle free") {
    CHECK(triangle_free(slot_graph(catalog_lookup("deg8-5111-2222").forms[0])));
    CHECK(triangle_free(slot_graph(catalog_lookup("deg8-3311-2222").forms[0])));
}

TEST_CASE("triangle detection on a known triangle") {
    // a form with three pairwise unwedged slots
    MinorProductForm f;
    f.degree = 3;
    f.dims = {3};
    f.partitions = {Partition{1, 1, 1}};
    f.factors = {{MinorGroup{{0}}, MinorGroup{{1}}, MinorGroup{{2}}}};
    f.validate();
    CHECK_FALSE(triangle_free(slot_graph(f)));
}
