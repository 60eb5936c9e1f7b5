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

#include "ssv/forms.hpp"

#include <stdexcept>

namespace ssv {

void MinorProductForm::validate() const {
    if (partitions.size() != factors.size() || dims.size() != factors.size())
        throw std::invalid_argument("form: factor count mismatch");
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (partitions[i].size() != degree)
            throw std::invalid_argument("form: partition size != degree");
        if (partitions[i].length() > dims[i])
            throw std::invalid_argument("form: partition too long for factor");
        std::vector<int> seen(degree, 0);
        for (const MinorGroup& g : factors[i]) {
            if (g.size() > dims[i])
                throw std::invalid_argument("form: minor larger than factor dim");
            for (int s : g.slots) {
                if (s < 0 || s >= degree || seen[s]++)
                    throw std::invalid_argument("form: bad slot cover");
            }
        }
        for (int s = 0; s < degree; ++s)
            if (!seen[s])
                throw std::invalid_argument("form: slot not covered");
    }
}

MinorProductForm build_form(const std::vector<Partition>& partitions,
                            const std::vector<Perm>& taus,
                            const std::vector<int>& dims) {
    const int k = static_cast<int>(partitions.size());
    if (taus.size() != partitions.size() || dims.size() != partitions.size())
        throw std::invalid_argument("build_form: size mismatch");
    MinorProductForm form;
    form.degree = partitions[0].size();
    form.dims = dims;
    form.partitions = partitions;
    form.factors.resize(k);
    for (int i = 0; i < k; ++i) {
        const Partition& pi = partitions[i];
        if (pi.size() != form.degree)
            throw std::invalid_argument("build_form: partition sizes differ");
        if (pi.length() > dims[i])
            throw std::invalid_argument("build_form: partition too long");
        const Perm& tau = taus[i];
        if (static_cast<int>(tau.size()) != form.degree)
            throw std::invalid_argument("build_form: bad permutation size");
        int f = pi.length();
        int pos = 0;
        // column structure: (p_s - p_{s+1}) groups of size s, s = 1..f
        for (int s = 1; s <= f; ++s) {
            int count = pi.parts[s - 1] - (s < f ? pi.parts[s] : 0);
            for (int c = 0; c < count; ++c) {
                MinorGroup g;
                for (int t = 0; t < s; ++t) g.slots.push_back(tau[pos++]);
                form.factors[i].push_back(std::move(g));
            }
        }
    }
    form.validate();
    return form;
}

namespace {

Perm identity_perm(int d) {
    Perm p(d);
    for (int i = 0; i < d; ++i) p[i] = i;
    return p;
}

// Groups written with 1-based slot labels, matching hand transcriptions.
MinorProductForm make_form(int degree, std::vector<int> dims,
                           std::vector<Partition> partitions,
                           std::vector<std::vector<std::vector<int>>> groups) {
    MinorProductForm form;
    form.degree = degree;
    form.dims = std::move(dims);
    form.partitions = std::move(partitions);
    for (auto& factor : groups) {
        std::vector<MinorGroup> fg;
        for (auto& g : factor) {
            MinorGroup mg;
            for (int s : g) mg.slots.push_back(s - 1);
            fg.push_back(std::move(mg));
        }
        form.factors.push_back(std::move(fg));
    }
    form.validate();
    return form;
}

// F_{tau,mu} of the degree-6 (321,321,3111) family; tau routes the B minors,
// mu the C minors (1-based image tables).
MinorProductForm form_321_321_3111(const std::vector<int>& tau,
                                   const std::vector<int>& mu) {
    auto t = [&](int i) { return tau[i - 1]; };
    auto m = [&](int i) { return mu[i - 1]; };
    return make_form(
        6, {3, 3, 4}, {Partition{3, 2, 1}, Partition{3, 2, 1}, Partition{3, 1, 1, 1}},
        {{{1, 2, 3}, {5, 6}, {4}},
         {{t(1), t(2), t(3)}, {t(4), t(5)}, {t(6)}},
         {{m(1), m(2), m(3), m(4)}, {m(5)}, {m(6)}}});
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> cat;

    cat.push_back(
        {"ex-211-211-211",
         "degree-4 form for S_211 x S_211 x S_211 at dims (3,3,3); staggered "
         "single slots, nonzero after symmetrization",
         {make_form(4, {3, 3, 3},
                    {Partition{2, 1, 1}, Partition{2, 1, 1}, Partition{2, 1, 1}},
                    {{{1}, {2, 3, 4}}, {{2}, {1, 3, 4}}, {{3}, {1, 2, 4}}})}});

    {
        CatalogEntry e;
        e.name = "ex-321-321-3111";
        e.description =
            "four independent degree-6 forms for S_321 x S_321 x S_3111 at "
            "dims (3,3,4)";
        e.forms.push_back(
            form_321_321_3111({3, 4, 5, 1, 2, 6}, {1, 4, 5, 6, 2, 3}));
        e.forms.push_back(
            form_321_321_3111({3, 4, 5, 1, 2, 6}, {2, 3, 5, 6, 1, 4}));
        e.forms.push_back(
            form_321_321_3111({3, 4, 5, 1, 2, 6}, {2, 3, 4, 5, 1, 6}));
        e.forms.push_back(
            form_321_321_3111({3, 4, 6, 1, 2, 5}, {2, 3, 4, 5, 1, 6}));
        cat.push_back(std::move(e));
    }

    cat.push_back(
        {"deg6-222",
         "degree-6 form for S_222 x S_222 x S_222 at dims (3,3,3); staggered "
         "determinant triples",
         {make_form(6, {3, 3, 3},
                    {Partition{2, 2, 2}, Partition{2, 2, 2}, Partition{2, 2, 2}},
                    {{{1, 2, 3}, {4, 5, 6}},
                     {{2, 3, 4}, {5, 6, 1}},
                     {{3, 4, 5}, {6, 1, 2}}})}});

    cat.push_back(
        {"deg9-333",
         "degree-9 form for S_333 x S_333 x S_333 at dims (3,3,3); nine 3x3 "
         "determinants",
         {make_form(9, {3, 3, 3},
                    {Partition{3, 3, 3}, Partition{3, 3, 3}, Partition{3, 3, 3}},
                    {{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}},
                     {{2, 3, 4}, {5, 6, 7}, {1, 8, 9}},
                     {{3, 4, 5}, {6, 7, 8}, {1, 2, 9}}})}});

    cat.push_back(
        {"deg8-5111-2222",
         "degree-8 form for S_5111 x S_2222 x S_2222 at dims (4,4,4); "
         "triangle-free slot graph",
         {make_form(
             8, {4, 4, 4},
             {Partition{5, 1, 1, 1}, Partition{2, 2, 2, 2}, Partition{2, 2, 2, 2}},
             {{{1}, {2}, {5}, {6}, {3, 4, 7, 8}},
              {{1, 2, 3, 8}, {4, 5, 6, 7}},
              {{1, 2, 3, 4}, {5, 6, 7, 8}}})}});

    cat.push_back(
        {"deg8-3311-2222",
         "degree-8 form for S_3311 x S_2222 x S_2222 at dims (4,4,4); "
         "triangle-free slot graph",
         {make_form(
             8, {4, 4, 4},
             {Partition{3, 3, 1, 1}, Partition{2, 2, 2, 2}, Partition{2, 2, 2, 2}},
             {{{1, 3}, {5, 7}, {2, 4, 6, 8}},
              {{1, 2, 5, 6}, {3, 4, 7, 8}},
              {{1, 2, 3, 4}, {5, 6, 7, 8}}})}});

    cat.push_back(
        {"deg12-3333",
         "degree-12 form for S_3333 x S_3333 x S_3333 at dims (4,4,4); nine "
         "4x4 determinants",
         {make_form(
             12, {4, 4, 4},
             {Partition{3, 3, 3, 3}, Partition{3, 3, 3, 3}, Partition{3, 3, 3, 3}},
             {{{1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}},
              {{1, 2, 5, 6}, {3, 7, 9, 10}, {4, 8, 11, 12}},
              {{1, 7, 9, 12}, {3, 5, 8, 10}, {2, 4, 6, 11}}})}});

    return cat;
}

} // namespace

const std::vector<CatalogEntry>& form_catalog() {
    static const std::vector<CatalogEntry> cat = build_catalog();
    return cat;
}

const CatalogEntry& catalog_lookup(const std::string& name) {
    for (const CatalogEntry& e : form_catalog())
        if (e.name == name) return e;
    throw std::out_of_range("unknown catalog entry: " + name);
}

SlotGraph slot_graph(const MinorProductForm& form) {
    SlotGraph g;
    g.vertices = form.degree;
    g.adj.assign(form.degree, std::vector<bool>(form.degree, true));
    for (int v = 0; v < form.degree; ++v) g.adj[v][v] = false;
    for (const auto& factor : form.factors)
        for (const MinorGroup& grp : factor)
            for (std::size_t a = 0; a < grp.slots.size(); ++a)
                for (std::size_t b = a + 1; b < grp.slots.size(); ++b) {
                    g.adj[grp.slots[a]][grp.slots[b]] = false;
                    g.adj[grp.slots[b]][grp.slots[a]] = false;
                }
    return g;
}

bool triangle_free(const SlotGraph& g) {
    for (int a = 0; a < g.vertices; ++a)
        for (int b = a + 1; b < g.vertices; ++b) {
            if (!g.adj[a][b]) continue;
            for (int c = b + 1; c < g.vertices; ++c)
                if (g.adj[a][c] && g.adj[b][c]) return false;
        }
    return true;
}

} // namespace ssv
