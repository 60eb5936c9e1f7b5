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

#ifndef SSV_POINTS_HPP
#define SSV_POINTS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "ssv/linalg.hpp"

namespace ssv {

/// One coordinate vector per tensor factor; a point of the cone over the
/// Segre variety.
struct RankOnePoint {
    std::vector<FpVec> vecs;
};

using Rng = std::mt19937_64;

inline uint64_t random_field_elem(Rng& rng, const PrimeField& f) {
    // rejection sampling for uniformity
    uint64_t mask = (1ull << 62) - 1;
    for (;;) {
        uint64_t x = rng() & mask;
        if (x < f.prime()) return x;
    }
}

RankOnePoint sample_rank_one(const std::vector<int>& dims, Rng& rng,
                             const PrimeField& f);

std::vector<RankOnePoint> sample_rank_ones(const std::vector<int>& dims, int r,
                                           Rng& rng, const PrimeField& f);

/// Coordinates of sum of rank-one tensors, factor-major (last factor
/// fastest).  Length = prod(dims).
FpVec tensor_coords(const std::vector<RankOnePoint>& points,
                    const std::vector<int>& dims, const PrimeField& f);

} // namespace ssv

#endif
