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

#ifndef SSV_FP_HPP
#define SSV_FP_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ssv {

/// Arithmetic in Z/p for an odd prime p with 2^59 < p < 2^62.
/// Values are canonical representatives in [0, p).
class PrimeField {
public:
    static constexpr uint64_t kMersenne61 = (1ull << 61) - 1;

    explicit PrimeField(uint64_t p) : p_(p) {
        if (p < (1ull << 59) || p >= (1ull << 62))
            throw std::invalid_argument("prime out of supported range");
    }

    uint64_t prime() const { return p_; }

    uint64_t reduce_signed(long long x) const {
        long long r = x % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<uint64_t>(r);
    }

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }

    uint64_t sub(uint64_t a, uint64_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }

    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p_ - a; }

    uint64_t mul(uint64_t a, uint64_t b) const {
        unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
        if (p_ == kMersenne61) {
            // fold the 122-bit product; avoids the 128-bit division
            uint64_t r = (static_cast<uint64_t>(x) & kMersenne61) +
                         static_cast<uint64_t>(x >> 61);
            if (r >= kMersenne61) r -= kMersenne61;
            if (r >= kMersenne61) r -= kMersenne61;
            return r;
        }
        return static_cast<uint64_t>(x % p_);
    }

    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    uint64_t inv(uint64_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return pow(a, p_ - 2);
    }

private:
    uint64_t p_;
};

bool is_prime_u64(uint64_t n);

/// The n largest 61-bit primes, in decreasing order, starting at 2^61 - 1.
std::vector<uint64_t> default_primes(int n);

} // namespace ssv

#endif
