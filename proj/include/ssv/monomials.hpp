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

#ifndef SSV_MONOMIALS_HPP
#define SSV_MONOMIALS_HPP

#include <cstdint>
#include <gmpxx.h>
#include <map>
#include <vector>

#include "ssv/linalg.hpp"

namespace ssv {

/// Monomial basis of S^d of an n-dimensional space, graded-lex order
/// (exponent vectors in lexicographically decreasing order).
class MonomialBasis {
public:
    MonomialBasis(int n, int d);

    int vars() const { return n_; }
    int degree() const { return d_; }
    std::size_t size() const { return sparse_.size(); }

    /// index of a monomial given its exponent vector
    std::size_t index(const std::vector<int>& expo) const;

    /// sparse form of monomial i: list of (variable, exponent)
    const std::vector<std::pair<int, int>>& sparse(std::size_t i) const {
        return sparse_[i];
    }

    /// values of all monomials at a point
    FpVec evaluate(const FpVec& point, const PrimeField& f) const;

private:
    int n_, d_;
    std::vector<std::vector<std::pair<int, int>>> sparse_;
    std::map<std::vector<int>, std::size_t> index_;
};

mpz_class binomial(long long n, long long k);

} // namespace ssv

#endif
