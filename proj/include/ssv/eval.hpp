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

#ifndef SSV_EVAL_HPP
#define SSV_EVAL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ssv/forms.hpp"
#include "ssv/linalg.hpp"
#include "ssv/points.hpp"

namespace ssv {

/// Multidegree of a symmetrized polynomial component on a sum of rank-one
/// points: multiplicities per point, summing to the degree.
struct HomogeneityPattern {
    std::vector<int> multiplicities;
    int total() const {
        int s = 0;
        for (int m : multiplicities) s += m;
        return s;
    }
};

/// Optional per-factor basis change: point vectors are replaced by W_i v
/// before taking leading minors.  Used for randomized weight bases.
struct WeightBasis {
    std::vector<FpMat> mats; // one invertible dims[i] x dims[i] matrix each
};

WeightBasis random_weight_basis(const std::vector<int>& dims, Rng& rng,
                                const PrimeField& f);

/// Product over all minor groups of the corresponding minors at the given
/// d argument points (no symmetrization).
uint64_t eval_raw(const MinorProductForm& form,
                  const std::vector<RankOnePoint>& args, const PrimeField& f);

/// Precomputed minor value tables for evaluation on r fixed points: for each
/// group, the minor value for every tuple of point indices.
class MinorTables {
public:
    MinorTables(const MinorProductForm& form,
                const std::vector<RankOnePoint>& points, const PrimeField& f,
                const WeightBasis* wb = nullptr);

    int num_points() const { return r_; }
    int degree() const { return form_->degree; }
    const MinorProductForm& form() const { return *form_; }

    /// value of group g of factor i at the point assignment (table lookup)
    uint64_t lookup(int factor, int group,
                    const std::vector<int>& assignment) const;

    /// Sum of eval_raw over all assignments with the given per-point
    /// multiplicities.  `parallel` selects the OpenMP kernel; the serial
    /// path is the reference implementation.
    uint64_t pattern_sum(const HomogeneityPattern& pattern, const PrimeField& f,
                         bool parallel = true) const;

    /// Sum of eval_raw over ALL r^d assignments by greedy variable
    /// elimination over slot variables.  Throws std::length_error when the
    /// elimination width exceeds `table_guard` entries.
    uint64_t full_sum(const PrimeField& f,
                      std::size_t table_guard = 200000000) const;

    /// Brute-force reference for full_sum (r^d leaves).
    uint64_t full_sum_brute(const PrimeField& f) const;

private:
    struct Factor {
        std::vector<int> scope; // slot variables, ascending
        FpVec table;            // mixed-radix r over scope, first var slowest
    };

    uint64_t leaf_product(const std::vector<int>& assignment,
                          const PrimeField& f) const;

    const MinorProductForm* form_;
    int r_;
    std::vector<Factor> factors_;
    // (factor, group) -> index into factors_ and group arity
    std::vector<std::vector<int>> group_index_;
};

/// Sum over all d! slot permutations of eval_raw.  Naive path, d <= 9.
uint64_t eval_symmetrized(const MinorProductForm& form,
                          const std::vector<RankOnePoint>& args,
                          const PrimeField& f, bool parallel = true,
                          const WeightBasis* wb = nullptr);

/// Homogeneous component of the symmetrized polynomial at a sum of rank-one
/// points, of multidegree `pattern`.
uint64_t eval_pattern(const MinorProductForm& form,
                      const std::vector<RankOnePoint>& points,
                      const HomogeneityPattern& pattern, const PrimeField& f,
                      bool parallel = true, const WeightBasis* wb = nullptr);

/// Value of the symmetrized polynomial at the full sum of the given
/// rank-one points (tensor-network path with brute-force fallback for tiny
/// instances).
uint64_t eval_at_sum(const MinorProductForm& form,
                     const std::vector<RankOnePoint>& points,
                     const PrimeField& f);

/// Rank of the evaluation matrix of the symmetrized forms at random full
/// multilinear argument tuples.
std::size_t linear_independence(const std::vector<MinorProductForm>& forms,
                                int trial_count, uint64_t seed,
                                const PrimeField& f);

/// All homogeneity patterns for degree d on r points, one per partition of
/// d with at most r parts (padded with zeros).
std::vector<HomogeneityPattern> all_patterns(int d, int r);

} // namespace ssv

#endif
