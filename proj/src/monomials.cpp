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

#include "ssv/monomials.hpp"

#include <stdexcept>

namespace ssv {

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d) {
    std::vector<int> expo(n, 0);
    // lexicographically decreasing exponent vectors of total degree d
    std::vector<std::pair<int, int>> cur;
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == n - 1) {
            if (remaining > 0) cur.emplace_back(var, remaining);
            expo[var] = remaining;
            index_.emplace(expo, sparse_.size());
            sparse_.push_back(cur);
            if (remaining > 0) cur.pop_back();
            expo[var] = 0;
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            expo[var] = e;
            if (e > 0) cur.emplace_back(var, e);
            self(self, var + 1, remaining - e);
            if (e > 0) cur.pop_back();
            expo[var] = 0;
        }
    };
    rec(rec, 0, d);
}

std::size_t MonomialBasis::index(const std::vector<int>& expo) const {
    auto it = index_.find(expo);
    if (it == index_.end())
        throw std::invalid_argument("monomial not in basis");
    return it->second;
}

FpVec MonomialBasis::evaluate(const FpVec& point, const PrimeField& f) const {
    // power table: pw[v][e] = point[v]^e
    std::vector<FpVec> pw(n_, FpVec(d_ + 1, 1));
    for (int v = 0; v < n_; ++v)
        for (int e = 1; e <= d_; ++e) pw[v][e] = f.mul(pw[v][e - 1], point[v]);
    FpVec out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        uint64_t val = 1;
        for (auto [v, e] : sparse_[i]) val = f.mul(val, pw[v][e]);
        out[i] = val;
    }
    return out;
}

mpz_class binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

} // namespace ssv
