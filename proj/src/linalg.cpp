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

#include "ssv/linalg.hpp"

#include <algorithm>
#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ssv {

bool RowEchelon::reduce(FpVec& row, std::size_t& lead) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        uint64_t c = row[lead_[i]];
        if (c == 0) continue;
        const FpVec& b = rows_[i];
        uint64_t q = f_.neg(c);
        for (std::size_t j = lead_[i]; j < cols_; ++j)
            row[j] = f_.add(row[j], f_.mul(q, b[j]));
    }
    lead = cols_;
    for (std::size_t j = 0; j < cols_; ++j)
        if (row[j] != 0) { lead = j; break; }
    return lead < cols_;
}

bool RowEchelon::absorb(FpVec row) {
    std::size_t lead;
    if (!reduce(row, lead)) return false;
    uint64_t s = f_.inv(row[lead]);
    for (std::size_t j = lead; j < cols_; ++j) row[j] = f_.mul(row[j], s);
    rows_.push_back(std::move(row));
    lead_.push_back(lead);
    return true;
}

bool RowEchelon::independent(FpVec row) const {
    std::size_t lead;
    return reduce(row, lead);
}

namespace {

// Row-oriented elimination; `parallel` toggles the OpenMP update loop.
std::size_t gauss(FpMat& m, const PrimeField& f, bool parallel) {
    const std::size_t nr = m.size();
    if (nr == 0) return 0;
    const std::size_t nc = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv = nr;
        for (std::size_t i = rank; i < nr; ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv == nr) continue;
        std::swap(m[rank], m[piv]);
        uint64_t s = f.inv(m[rank][col]);
        for (std::size_t j = col; j < nc; ++j)
            m[rank][j] = f.mul(m[rank][j], s);
        const FpVec& prow = m[rank];
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && nr > 64)
#endif
        for (std::size_t i = rank + 1; i < nr; ++i) {
            uint64_t c = m[i][col];
            if (c == 0) continue;
            uint64_t q = f.neg(c);
            FpVec& row = m[i];
            for (std::size_t j = col; j < nc; ++j)
                row[j] = f.add(row[j], f.mul(q, prow[j]));
        }
        ++rank;
    }
    return rank;
}

} // namespace

std::size_t fp_rank(FpMat& m, const PrimeField& f) { return gauss(m, f, true); }

std::size_t fp_rank_serial(FpMat& m, const PrimeField& f) {
    return gauss(m, f, false);
}

FpMat fp_kernel(FpMat m, const PrimeField& f) {
    const std::size_t nr = m.size();
    if (nr == 0) return {};
    const std::size_t nc = m[0].size();
    // reduced row echelon form with pivot bookkeeping
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv = nr;
        for (std::size_t i = rank; i < nr; ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv == nr) continue;
        std::swap(m[rank], m[piv]);
        uint64_t s = f.inv(m[rank][col]);
        for (std::size_t j = col; j < nc; ++j)
            m[rank][j] = f.mul(m[rank][j], s);
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            uint64_t q = f.neg(m[i][col]);
            for (std::size_t j = col; j < nc; ++j)
                m[i][j] = f.add(m[i][j], f.mul(q, m[rank][j]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(nc, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    FpMat basis;
    for (std::size_t freec = 0; freec < nc; ++freec) {
        if (is_pivot[freec]) continue;
        FpVec v(nc, 0);
        v[freec] = 1;
        for (std::size_t i = 0; i < rank; ++i)
            v[pivot_col[i]] = f.neg(m[i][freec]);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rational_rank(std::vector<std::vector<mpq_class>> m) {
    const std::size_t nr = m.size();
    if (nr == 0) return 0;
    const std::size_t nc = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv = nr;
        for (std::size_t i = rank; i < nr; ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv == nr) continue;
        std::swap(m[rank], m[piv]);
        mpq_class s = m[rank][col];
        for (std::size_t j = col; j < nc; ++j) m[rank][j] /= s;
        for (std::size_t i = rank + 1; i < nr; ++i) {
            if (m[i][col] == 0) continue;
            mpq_class q = m[i][col];
            for (std::size_t j = col; j < nc; ++j)
                m[i][j] -= q * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace ssv
