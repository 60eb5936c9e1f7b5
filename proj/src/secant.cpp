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

#include "ssv/secant.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ssv {

uint64_t stream_seed(uint64_t seed, uint64_t salt, const std::string& tag) {
    // FNV-1a over the tag, then splitmix finalization with seed and salt
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ull;
    }
    uint64_t z = h + seed * 0x9e3779b97f4a7c15ull + salt * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::vector<RankOnePoint> sample_secant_point(const SecantSpec& spec,
                                              const PrimeField& f) {
    Rng rng(stream_seed(spec.seed, 0, "secant-point"));
    return sample_rank_ones(spec.dims, spec.r, rng, f);
}

std::size_t terracini_dimension(const SecantSpec& spec, const PrimeField& f) {
    std::size_t ambient = 1;
    for (int n : spec.dims) ambient *= n;
    if (ambient > 10000)
        throw std::length_error("terracini_dimension: ambient dim > 10^4");
    auto points = sample_secant_point(spec, f);
    FpMat rows;
    for (const RankOnePoint& p : points) {
        for (std::size_t i = 0; i < spec.dims.size(); ++i) {
            for (int e = 0; e < spec.dims[i]; ++e) {
                RankOnePoint t = p;
                t.vecs[i].assign(spec.dims[i], 0);
                t.vecs[i][e] = 1;
                rows.push_back(tensor_coords({t}, spec.dims, f));
            }
        }
    }
    return fp_rank(rows, f);
}

FilterDecision reduction_filters(const ModuleLabel& label, int d,
                                 const SecantSpec& spec) {
    FilterDecision dec;
    if (d <= spec.r) {
        dec.action = FilterAction::Skip;
        return dec;
    }
    bool has_trivial = false;
    for (std::size_t i = 0; i < label.partitions.size(); ++i) {
        if (label.partitions[i].length() == 1)
            has_trivial = true;
        else
            dec.transfer_factors.push_back(static_cast<int>(i));
    }
    if (has_trivial) {
        dec.action = FilterAction::Transfer;
        return dec;
    }
    for (std::size_t i = 0; i < label.partitions.size(); ++i)
        dec.eval_dims.push_back(
            std::min(spec.dims[i], label.partitions[i].length()));
    return dec;
}

namespace {

FpMat transpose(const FpMat& m) {
    if (m.empty()) return {};
    FpMat t(m[0].size(), FpVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

Perm random_perm(int d, Rng& rng) {
    Perm p(d);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

std::vector<MinorProductForm> matching_catalog_forms(
    const ModuleLabel& label, int d, const std::vector<int>& dims) {
    std::vector<MinorProductForm> out;
    for (const CatalogEntry& e : form_catalog())
        for (const MinorProductForm& fm : e.forms)
            if (fm.degree == d && fm.dims == dims &&
                fm.partitions == label.partitions)
                out.push_back(fm);
    return out;
}

} // namespace

FormBasis realize_label_basis(const ModuleLabel& label, int d,
                              const std::vector<int>& eval_dims,
                              const PrimeField& f, Rng& rng, int budget_factor,
                              const WeightBasis* wb) {
    const long long m = label.multiplicity_in_Sd;
    const int k = static_cast<int>(label.partitions.size());
    FormBasis basis;
    if (m == 0) {
        basis.complete = true;
        return basis;
    }

    const int cols = static_cast<int>(m) + 6;
    std::vector<std::vector<RankOnePoint>> arg_tuples;
    for (int c = 0; c < cols; ++c)
        arg_tuples.push_back(sample_rank_ones(eval_dims, d, rng, f));

    RowEchelon echelon(f, cols);
    auto try_form = [&](const MinorProductForm& form) {
        FpVec row(cols);
        for (int c = 0; c < cols; ++c)
            row[c] = eval_symmetrized(form, arg_tuples[c], f, true, wb);
        if (echelon.absorb(std::move(row))) basis.forms.push_back(form);
    };

    for (const MinorProductForm& fm : matching_catalog_forms(label, d, eval_dims)) {
        try_form(fm);
        if (echelon.rank() == static_cast<std::size_t>(m)) break;
    }

    Perm id(d);
    std::iota(id.begin(), id.end(), 0);
    long long budget = budget_factor * m;
    for (long long trial = 0;
         trial < budget && echelon.rank() < static_cast<std::size_t>(m);
         ++trial) {
        std::vector<Perm> taus(k);
        taus[0] = id;
        for (int i = 1; i < k; ++i)
            taus[i] = (trial == 0) ? id : random_perm(d, rng);
        try_form(build_form(label.partitions, taus, eval_dims));
    }
    basis.complete = echelon.rank() == static_cast<std::size_t>(m);
    return basis;
}

FpMat pattern_evaluation_matrix(const std::vector<MinorProductForm>& forms,
                                int r, int point_sets, const PrimeField& f,
                                Rng& rng, const WeightBasis* wb) {
    FpMat rows(forms.size());
    if (forms.empty()) return rows;
    const int d = forms[0].degree;
    auto patterns = all_patterns(d, r);
    for (int s = 0; s < point_sets; ++s) {
        auto points = sample_rank_ones(forms[0].dims, r, rng, f);
        std::vector<MinorTables> tables;
        for (const auto& fm : forms) tables.emplace_back(fm, points, f, wb);
        for (const auto& pat : patterns)
            for (std::size_t i = 0; i < forms.size(); ++i)
                rows[i].push_back(tables[i].pattern_sum(pat, f));
    }
    return rows;
}

LabelVerdict test_label(const ModuleLabel& label, int d,
                        const SecantSpec& spec, const ScanOptions& opts) {
    LabelVerdict v;
    v.label = label;

    FilterDecision dec = reduction_filters(label, d, spec);
    if (dec.action == FilterAction::Skip) {
        v.status = "skipped-low-degree";
        return v;
    }
    if (dec.action == FilterAction::Transfer) {
        v.status = "delegated";
        if (dec.transfer_factors.size() < 2) return v;
        ModuleLabel sub;
        SecantSpec sub_spec;
        for (int i : dec.transfer_factors) {
            sub.partitions.push_back(label.partitions[i]);
            sub_spec.dims.push_back(spec.dims[i]);
        }
        sub.multiplicity_in_Sd = invariant_multiplicity(sub.partitions);
        sub_spec.r = spec.r;
        sub_spec.seed = spec.seed;
        LabelVerdict inner = test_label(sub, d, sub_spec, opts);
        v.multiplicity_in_ideal = inner.multiplicity_in_ideal;
        v.forms_realized = inner.forms_realized;
        v.primes = inner.primes;
        v.point_sets = inner.point_sets;
        v.patterns_tested = inner.patterns_tested;
        v.coefficients = inner.coefficients;
        return v;
    }

    v.primes = default_primes(opts.num_primes);
    const std::string tag = label.str() + "#d" + std::to_string(d) + "#r" +
                            std::to_string(spec.r);

    PrimeField f0(v.primes[0]);
    FormBasis basis;
    if (d <= 9) {
        Rng tau_rng(stream_seed(spec.seed, opts.salt, "tau|" + tag));
        WeightBasis wb0;
        const WeightBasis* wbp = nullptr;
        if (opts.use_weight_basis) {
            Rng wrng(stream_seed(spec.seed, opts.salt, "wb0|" + tag));
            wb0 = random_weight_basis(dec.eval_dims, wrng, f0);
            wbp = &wb0;
        }
        basis = realize_label_basis(label, d, dec.eval_dims, f0, tau_rng,
                                    opts.tau_budget_factor, wbp);
    } else {
        // beyond the naive symmetrization range only catalog forms are used
        basis.forms = matching_catalog_forms(label, d, dec.eval_dims);
        basis.complete =
            basis.forms.size() ==
            static_cast<std::size_t>(label.multiplicity_in_Sd);
        if (basis.forms.empty()) {
            v.status = "skipped-degree";
            return v;
        }
    }
    v.forms_realized = static_cast<long long>(basis.forms.size());
    v.status = basis.complete ? "tested" : "incomplete-basis";
    if (basis.forms.empty()) return v;

    v.patterns_tested = static_cast<int>(all_patterns(d, spec.r).size());

    std::size_t rank = 0;
    FpMat matrix0;
    for (std::size_t pi = 0; pi < v.primes.size(); ++pi) {
        PrimeField f(v.primes[pi]);
        WeightBasis wb;
        const WeightBasis* wbp = nullptr;
        if (opts.use_weight_basis) {
            Rng wrng(stream_seed(spec.seed, opts.salt,
                                 "wb" + std::to_string(pi) + "|" + tag));
            wb = random_weight_basis(dec.eval_dims, wrng, f);
            wbp = &wb;
        }
        Rng eval_rng(stream_seed(spec.seed, opts.salt,
                                 "eval" + std::to_string(pi) + "|" + tag));
        int sets = opts.point_sets;
        FpMat matrix = pattern_evaluation_matrix(basis.forms, spec.r, sets, f,
                                                 eval_rng, wbp);
        FpMat copy = matrix;
        std::size_t rk = fp_rank(copy, f);
        // grow the column set until the rank is stable across a fresh batch
        while (rk < basis.forms.size() && sets < opts.point_sets + 8) {
            FpMat extra = pattern_evaluation_matrix(basis.forms, spec.r, 2, f,
                                                    eval_rng, wbp);
            for (std::size_t i = 0; i < matrix.size(); ++i)
                matrix[i].insert(matrix[i].end(), extra[i].begin(),
                                 extra[i].end());
            sets += 2;
            copy = matrix;
            std::size_t rk2 = fp_rank(copy, f);
            if (rk2 == rk) break;
            rk = rk2;
        }
        v.point_sets = sets;
        rank = std::max(rank, rk);
        if (pi == 0) matrix0 = std::move(matrix);
    }

    v.multiplicity_in_ideal =
        static_cast<long long>(basis.forms.size()) -
        static_cast<long long>(rank);
    if (v.multiplicity_in_ideal > 0)
        v.coefficients = fp_kernel(transpose(matrix0), f0);
    return v;
}

ScanReport scan_ideal(int d, const SecantSpec& spec, const ScanOptions& opts) {
    ScanReport report;
    report.degree = d;
    report.spec = spec;
    for (const ModuleLabel& label : decompose_symmetric_power(d, spec.dims)) {
        if (!opts.label_filter.empty() &&
            std::find(opts.label_filter.begin(), opts.label_filter.end(),
                      label.str()) == opts.label_filter.end())
            continue;
        report.entries.push_back(test_label(label, d, spec, opts));
    }
    return report;
}

long long ScanReport::ideal_dimension() const {
    long long total = 0;
    for (const LabelVerdict& v : entries) {
        if (v.multiplicity_in_ideal <= 0) continue;
        long long prod = 1;
        for (std::size_t i = 0; i < v.label.partitions.size(); ++i)
            prod *= gl_dimension(v.label.partitions[i], spec.dims[i]);
        total += v.multiplicity_in_ideal * prod;
    }
    return total;
}

long long kernel_oracle(const ModuleLabel& label, int d,
                        const SecantSpec& spec, uint64_t salt) {
    ScanOptions opts;
    opts.salt = 0x5ca27u + salt;
    opts.use_weight_basis = true;
    return test_label(label, d, spec, opts).multiplicity_in_ideal;
}

} // namespace ssv
