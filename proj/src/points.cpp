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

#include "ssv/points.hpp"

namespace ssv {

RankOnePoint sample_rank_one(const std::vector<int>& dims, Rng& rng,
                             const PrimeField& f) {
    RankOnePoint p;
    for (int n : dims) {
        FpVec v(n);
        bool nonzero = false;
        do {
            for (int i = 0; i < n; ++i) {
                v[i] = random_field_elem(rng, f);
                if (v[i] != 0) nonzero = true;
            }
        } while (!nonzero);
        p.vecs.push_back(std::move(v));
    }
    return p;
}

std::vector<RankOnePoint> sample_rank_ones(const std::vector<int>& dims, int r,
                                           Rng& rng, const PrimeField& f) {
    std::vector<RankOnePoint> out;
    out.reserve(r);
    for (int i = 0; i < r; ++i) out.push_back(sample_rank_one(dims, rng, f));
    return out;
}

FpVec tensor_coords(const std::vector<RankOnePoint>& points,
                    const std::vector<int>& dims, const PrimeField& f) {
    std::size_t total = 1;
    for (int n : dims) total *= static_cast<std::size_t>(n);
    FpVec out(total, 0);
    const int k = static_cast<int>(dims.size());
    std::vector<int> idx(k, 0);
    for (const RankOnePoint& p : points) {
        std::fill(idx.begin(), idx.end(), 0);
        for (std::size_t lin = 0; lin < total; ++lin) {
            uint64_t prod = 1;
            for (int i = 0; i < k; ++i) prod = f.mul(prod, p.vecs[i][idx[i]]);
            out[lin] = f.add(out[lin], prod);
            for (int i = k - 1; i >= 0; --i) {
                if (++idx[i] < dims[i]) break;
                idx[i] = 0;
            }
        }
    }
    return out;
}

} // namespace ssv
