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

#include "ssv/eval.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ssv {

namespace {

// determinant of an s x s matrix given as s row vectors, s <= 8
uint64_t small_det(std::array<std::array<uint64_t, 8>, 8>& m, int s,
                   const PrimeField& f) {
    uint64_t det = 1;
    for (int col = 0; col < s; ++col) {
        int piv = -1;
        for (int i = col; i < s; ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = f.neg(det);
        }
        det = f.mul(det, m[col][col]);
        uint64_t inv = f.inv(m[col][col]);
        for (int i = col + 1; i < s; ++i) {
            if (m[i][col] == 0) continue;
            uint64_t q = f.mul(inv, m[i][col]);
            for (int j = col; j < s; ++j)
                m[i][j] = f.sub(m[i][j], f.mul(q, m[col][j]));
        }
    }
    return det;
}

// minor: rows = leading `s` coordinates of the given vectors, in order
uint64_t minor_value(const std::vector<const FpVec*>& rows,
                     const PrimeField& f) {
    const int s = static_cast<int>(rows.size());
    if (s == 1) return (*rows[0])[0];
    std::array<std::array<uint64_t, 8>, 8> m;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) m[i][j] = (*rows[i])[j];
    return small_det(m, s, f);
}

FpVec apply_matrix(const FpMat& w, const FpVec& v, const PrimeField& f) {
    FpVec out(w.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        uint64_t acc = 0;
        for (std::size_t j = 0; j < v.size(); ++j)
            acc = f.add(acc, f.mul(w[i][j], v[j]));
        out[i] = acc;
    }
    return out;
}

std::vector<RankOnePoint> transform_points(
    const std::vector<RankOnePoint>& points, const WeightBasis* wb,
    const PrimeField& f) {
    if (!wb) return points;
    std::vector<RankOnePoint> out = points;
    for (RankOnePoint& p : out)
        for (std::size_t i = 0; i < p.vecs.size(); ++i)
            p.vecs[i] = apply_matrix(wb->mats[i], p.vecs[i], f);
    return out;
}

} // namespace

WeightBasis random_weight_basis(const std::vector<int>& dims, Rng& rng,
                                const PrimeField& f) {
    WeightBasis wb;
    for (int n : dims) {
        for (;;) {
            FpMat w(n, FpVec(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    w[i][j] = random_field_elem(rng, f);
            std::array<std::array<uint64_t, 8>, 8> m;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m[i][j] = w[i][j];
            if (small_det(m, n, f) != 0) {
                wb.mats.push_back(std::move(w));
                break;
            }
        }
    }
    return wb;
}

uint64_t eval_raw(const MinorProductForm& form,
                  const std::vector<RankOnePoint>& args, const PrimeField& f) {
    if (static_cast<int>(args.size()) != form.degree)
        throw std::invalid_argument("eval_raw: argument count != degree");
    for (const RankOnePoint& p : args) {
        if (p.vecs.size() != form.dims.size())
            throw std::invalid_argument("eval_raw: factor count mismatch");
        for (std::size_t i = 0; i < p.vecs.size(); ++i)
            if (static_cast<int>(p.vecs[i].size()) != form.dims[i])
                throw std::invalid_argument("eval_raw: dimension mismatch");
    }
    uint64_t prod = 1;
    std::vector<const FpVec*> rows;
    for (int i = 0; i < form.num_factors() && prod != 0; ++i) {
        for (const MinorGroup& g : form.factors[i]) {
            rows.clear();
            for (int s : g.slots) rows.push_back(&args[s].vecs[i]);
            prod = f.mul(prod, minor_value(rows, f));
            if (prod == 0) break;
        }
    }
    return prod;
}

MinorTables::MinorTables(const MinorProductForm& form,
                         const std::vector<RankOnePoint>& points,
                         const PrimeField& f, const WeightBasis* wb)
    : form_(&form), r_(static_cast<int>(points.size())) {
    auto pts = transform_points(points, wb, f);
    group_index_.resize(form.num_factors());
    for (int i = 0; i < form.num_factors(); ++i) {
        for (const MinorGroup& g : form.factors[i]) {
            Factor fac;
            fac.scope = g.slots;
            std::sort(fac.scope.begin(), fac.scope.end());
            const int s = g.size();
            std::size_t tsize = 1;
            for (int t = 0; t < s; ++t) tsize *= r_;
            fac.table.resize(tsize);
            // position of each listed slot within the sorted scope
            std::vector<int> listed_pos(s);
            for (int t = 0; t < s; ++t)
                listed_pos[t] = static_cast<int>(
                    std::lower_bound(fac.scope.begin(), fac.scope.end(),
                                     g.slots[t]) -
                    fac.scope.begin());
            std::vector<int> tuple(s, 0);
            std::vector<const FpVec*> rows(s);
            for (std::size_t idx = 0; idx < tsize; ++idx) {
                for (int t = 0; t < s; ++t)
                    rows[t] = &pts[tuple[listed_pos[t]]].vecs[i];
                fac.table[idx] = minor_value(rows, f);
                for (int t = s - 1; t >= 0; --t) {
                    if (++tuple[t] < r_) break;
                    tuple[t] = 0;
                }
            }
            group_index_[i].push_back(static_cast<int>(factors_.size()));
            factors_.push_back(std::move(fac));
        }
    }
}

uint64_t MinorTables::lookup(int factor, int group,
                             const std::vector<int>& assignment) const {
    const Factor& fac = factors_[group_index_[factor][group]];
    std::size_t idx = 0;
    for (int v : fac.scope) idx = idx * r_ + assignment[v];
    return fac.table[idx];
}

uint64_t MinorTables::leaf_product(const std::vector<int>& assignment,
                                   const PrimeField& f) const {
    uint64_t prod = 1;
    for (const Factor& fac : factors_) {
        std::size_t idx = 0;
        for (int v : fac.scope) idx = idx * r_ + assignment[v];
        prod = f.mul(prod, fac.table[idx]);
        if (prod == 0) return 0;
    }
    return prod;
}

namespace {

struct PatternWalk {
    // groups completed when a given slot is assigned (slot = max of scope)
    std::vector<std::vector<int>> completing; // slot -> factor indices
};

} // namespace

uint64_t MinorTables::pattern_sum(const HomogeneityPattern& pattern,
                                  const PrimeField& f, bool parallel) const {
    const int d = form_->degree;
    if (pattern.total() != d)
        throw std::invalid_argument("pattern does not sum to degree");
    if (static_cast<int>(pattern.multiplicities.size()) > r_)
        throw std::invalid_argument("pattern longer than point count");

    // completing[v]: factors whose scope maximum is v
    std::vector<std::vector<int>> completing(d);
    for (std::size_t fi = 0; fi < factors_.size(); ++fi)
        completing[factors_[fi].scope.back()].push_back(static_cast<int>(fi));

    std::vector<int> base_counts(r_, 0);
    for (std::size_t j = 0; j < pattern.multiplicities.size(); ++j)
        base_counts[j] = pattern.multiplicities[j];

    // serial recursion over slots with running product
    auto run = [&](std::vector<int> counts, std::vector<int> assignment,
                   int first_slot, uint64_t first_prod) -> uint64_t {
        uint64_t total = 0;
        std::vector<uint64_t> prod_stack(d + 1, 0);
        prod_stack[first_slot] = first_prod;
        auto rec = [&](auto&& self, int slot) -> void {
            if (slot == d) {
                total = f.add(total, prod_stack[d]);
                return;
            }
            for (int p = 0; p < r_; ++p) {
                if (counts[p] == 0) continue;
                counts[p]--;
                assignment[slot] = p;
                uint64_t prod = prod_stack[slot];
                for (int fi : completing[slot]) {
                    const Factor& fac = factors_[fi];
                    std::size_t idx = 0;
                    for (int v : fac.scope) idx = idx * r_ + assignment[v];
                    prod = f.mul(prod, fac.table[idx]);
                    if (prod == 0) break;
                }
                if (prod != 0) {
                    prod_stack[slot + 1] = prod;
                    self(self, slot + 1);
                }
                counts[p]++;
            }
        };
        rec(rec, first_slot);
        return total;
    };

    if (!parallel || d < 2)
        return run(base_counts, std::vector<int>(d, 0), 0, 1);

    // branch on the first slot's point; field addition is exact, so the
    // reduction order cannot change the result
    std::vector<uint64_t> partial(r_, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int p0 = 0; p0 < r_; ++p0) {
        if (base_counts[p0] == 0) continue;
        std::vector<int> counts = base_counts;
        counts[p0]--;
        std::vector<int> assignment(d, 0);
        assignment[0] = p0;
        uint64_t prod = 1;
        for (int fi : completing[0]) {
            const Factor& fac = factors_[fi];
            std::size_t idx = 0;
            for (int v : fac.scope) idx = idx * r_ + assignment[v];
            prod = f.mul(prod, fac.table[idx]);
        }
        if (prod != 0) partial[p0] = run(counts, assignment, 1, prod);
    }
    uint64_t total = 0;
    for (int p = 0; p < r_; ++p) total = f.add(total, partial[p]);
    return total;
}

uint64_t MinorTables::full_sum_brute(const PrimeField& f) const {
    const int d = form_->degree;
    std::vector<int> assignment(d, 0);
    uint64_t total = 0;
    for (;;) {
        total = f.add(total, leaf_product(assignment, f));
        int v = d - 1;
        while (v >= 0 && ++assignment[v] == r_) assignment[v--] = 0;
        if (v < 0) break;
    }
    return total;
}

uint64_t MinorTables::full_sum(const PrimeField& f,
                               std::size_t table_guard) const {
    struct Live {
        std::vector<int> scope;
        FpVec table;
    };
    std::vector<Live> live;
    for (const Factor& fac : factors_) live.push_back({fac.scope, fac.table});
    std::vector<bool> var_alive(form_->degree, true);
    uint64_t scalar = 1;

    auto pow_r = [&](std::size_t e) {
        std::size_t v = 1;
        for (std::size_t i = 0; i < e; ++i) v *= r_;
        return v;
    };

    int vars_left = form_->degree;
    std::size_t worst_width = 0;
    while (vars_left > 0) {
        // greedy: eliminate the variable with the smallest merged scope
        int best_var = -1;
        std::size_t best_size = static_cast<std::size_t>(-1);
        for (int v = 0; v < form_->degree; ++v) {
            if (!var_alive[v]) continue;
            std::vector<int> merged;
            for (const Live& l : live)
                if (std::find(l.scope.begin(), l.scope.end(), v) != l.scope.end())
                    for (int x : l.scope)
                        if (x != v &&
                            std::find(merged.begin(), merged.end(), x) ==
                                merged.end())
                            merged.push_back(x);
            std::size_t sz = merged.size();
            if (sz < best_size) {
                best_size = sz;
                best_var = v;
            }
        }
        worst_width = std::max(worst_width, best_size + 1);
        if (pow_r(best_size) > table_guard)
            throw std::length_error(
                "elimination width exceeds memory guard; best width " +
                std::to_string(best_size + 1));

        std::vector<Live> involved, rest;
        for (Live& l : live) {
            if (std::find(l.scope.begin(), l.scope.end(), best_var) !=
                l.scope.end())
                involved.push_back(std::move(l));
            else
                rest.push_back(std::move(l));
        }
        std::vector<int> out_scope;
        for (const Live& l : involved)
            for (int x : l.scope)
                if (x != best_var &&
                    std::find(out_scope.begin(), out_scope.end(), x) ==
                        out_scope.end())
                    out_scope.push_back(x);
        std::sort(out_scope.begin(), out_scope.end());

        const std::size_t out_size = pow_r(out_scope.size());
        FpVec out_table(out_size, 0);
        const int ds = static_cast<int>(out_scope.size());

        // per-involved-factor index offsets as a function of out-assignment
        // digits and the eliminated variable's value
        struct Proj {
            std::vector<std::size_t> strides; // per out digit, 0 if absent
            std::size_t var_stride = 0;
            const FpVec* table;
        };
        std::vector<Proj> projs;
        for (const Live& l : involved) {
            Proj pr;
            pr.strides.assign(ds, 0);
            pr.table = &l.table;
            std::size_t stride = 1;
            for (int t = static_cast<int>(l.scope.size()) - 1; t >= 0; --t) {
                int v = l.scope[t];
                if (v == best_var) {
                    pr.var_stride = stride;
                } else {
                    int pos = static_cast<int>(
                        std::lower_bound(out_scope.begin(), out_scope.end(), v) -
                        out_scope.begin());
                    pr.strides[pos] = stride;
                }
                stride *= r_;
            }
            projs.push_back(std::move(pr));
        }

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (out_size > 1024)
#endif
        for (std::size_t oi = 0; oi < out_size; ++oi) {
            // digits of oi over out_scope (first slowest)
            std::vector<std::size_t> bases(projs.size(), 0);
            std::size_t rem = oi;
            for (int t = ds - 1; t >= 0; --t) {
                std::size_t digit = rem % r_;
                rem /= r_;
                for (std::size_t pi = 0; pi < projs.size(); ++pi)
                    bases[pi] += digit * projs[pi].strides[t];
            }
            uint64_t acc = 0;
            for (int xv = 0; xv < r_; ++xv) {
                uint64_t prod = 1;
                for (std::size_t pi = 0; pi < projs.size(); ++pi) {
                    prod = f.mul(prod, (*projs[pi].table)[bases[pi] +
                                                         xv * projs[pi].var_stride]);
                    if (prod == 0) break;
                }
                acc = f.add(acc, prod);
            }
            out_table[oi] = acc;
        }

        var_alive[best_var] = false;
        --vars_left;
        live = std::move(rest);
        if (out_scope.empty())
            scalar = f.mul(scalar, out_table[0]);
        else
            live.push_back({std::move(out_scope), std::move(out_table)});
    }
    for (const Live& l : live)
        scalar = f.mul(scalar, l.table[0]); // empty-scope leftovers
    return scalar;
}

uint64_t eval_symmetrized(const MinorProductForm& form,
                          const std::vector<RankOnePoint>& args,
                          const PrimeField& f, bool parallel,
                          const WeightBasis* wb) {
    if (form.degree > 9)
        throw std::length_error(
            "eval_symmetrized: d > 9; use eval_at_sum / eval_pattern");
    if (static_cast<int>(args.size()) != form.degree)
        throw std::invalid_argument("eval_symmetrized: need d arguments");
    MinorTables tables(form, args, f, wb);
    HomogeneityPattern ones;
    ones.multiplicities.assign(form.degree, 1);
    return tables.pattern_sum(ones, f, parallel);
}

uint64_t eval_pattern(const MinorProductForm& form,
                      const std::vector<RankOnePoint>& points,
                      const HomogeneityPattern& pattern, const PrimeField& f,
                      bool parallel, const WeightBasis* wb) {
    MinorTables tables(form, points, f, wb);
    return tables.pattern_sum(pattern, f, parallel);
}

uint64_t eval_at_sum(const MinorProductForm& form,
                     const std::vector<RankOnePoint>& points,
                     const PrimeField& f) {
    MinorTables tables(form, points, f);
    double leaves = 1;
    for (int i = 0; i < form.degree; ++i) leaves *= points.size();
    if (leaves <= 1e6) return tables.full_sum_brute(f);
    return tables.full_sum(f);
}

std::size_t linear_independence(const std::vector<MinorProductForm>& forms,
                                int trial_count, uint64_t seed,
                                const PrimeField& f) {
    if (forms.empty()) return 0;
    const int d = forms[0].degree;
    const auto& dims = forms[0].dims;
    for (const auto& fm : forms)
        if (fm.degree != d || fm.dims != dims)
            throw std::invalid_argument(
                "linear_independence: mixed degrees or dims");
    Rng rng(seed);
    FpMat rows(forms.size());
    for (int t = 0; t < trial_count; ++t) {
        auto args = sample_rank_ones(dims, d, rng, f);
        for (std::size_t i = 0; i < forms.size(); ++i)
            rows[i].push_back(eval_symmetrized(forms[i], args, f));
    }
    return fp_rank(rows, f);
}

std::vector<HomogeneityPattern> all_patterns(int d, int r) {
    std::vector<HomogeneityPattern> out;
    for (const Partition& p : enumerate_partitions_max_length(d, r)) {
        HomogeneityPattern pat;
        pat.multiplicities.assign(r, 0);
        for (int i = 0; i < p.length(); ++i) pat.multiplicities[i] = p.parts[i];
        out.push_back(std::move(pat));
    }
    return out;
}

} // namespace ssv
