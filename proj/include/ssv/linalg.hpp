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

#ifndef SSV_LINALG_HPP
#define SSV_LINALG_HPP

#include <cstdint>
#include <gmpxx.h>
#include <vector>

#include "ssv/fp.hpp"

namespace ssv {

using FpVec = std::vector<uint64_t>;
using FpMat = std::vector<FpVec>;

/// Incremental row echelon over a prime field.  Rows are absorbed one at a
/// time; rank() is exact for the rows seen so far.
class RowEchelon {
public:
    RowEchelon(const PrimeField& f, std::size_t cols)
        : f_(f), cols_(cols) {}

    /// Reduces `row` against the current basis.  Returns true (and keeps the
    /// reduced row) if it increases the rank.
    bool absorb(FpVec row);

    /// Reduces a copy of `row` without storing it; true iff independent.
    bool independent(FpVec row) const;

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

private:
    bool reduce(FpVec& row, std::size_t& lead) const;

    const PrimeField& f_;
    std::size_t cols_;
    std::vector<FpVec> rows_;       // normalized, leading entry 1
    std::vector<std::size_t> lead_; // pivot column per stored row
};

/// Rank by in-place Gaussian elimination.  The matrix is destroyed.
std::size_t fp_rank(FpMat& m, const PrimeField& f);
/// Serial reference for fp_rank; identical result.
std::size_t fp_rank_serial(FpMat& m, const PrimeField& f);

/// Basis of the right null space {x : m x = 0}.  Does not modify `m`.
FpMat fp_kernel(FpMat m, const PrimeField& f);

/// Rank over the rationals.
std::size_t rational_rank(std::vector<std::vector<mpq_class>> m);

} // namespace ssv

#endif
