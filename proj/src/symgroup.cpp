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

#include "ssv/symgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace ssv {

long long factorial(int d) {
    long long r = 1;
    for (int i = 2; i <= d; ++i) r *= i;
    return r;
}

std::vector<CycleType> conjugacy_classes(int d) {
    std::vector<CycleType> out;
    for (const Partition& mu : enumerate_partitions(d)) {
        // |class| = d! / prod_i (i^{m_i} m_i!)
        long long denom = 1;
        int i = 0;
        while (i < mu.length()) {
            int j = i;
            while (j < mu.length() && mu.parts[j] == mu.parts[i]) ++j;
            int mult = j - i;
            for (int t = 0; t < mult; ++t) denom *= mu.parts[i];
            denom *= factorial(mult);
            i = j;
        }
        out.push_back({mu, factorial(d) / denom});
    }
    return out;
}

namespace {

// Murnaghan-Nakayama on beta-numbers: a rim hook of length t is a move of
// one bead down by t on the abacus, with sign given by the beads jumped over.
long long mn(std::vector<int> beta, std::vector<int> cycles) {
    if (cycles.empty()) return 1;
    int t = cycles.back();
    cycles.pop_back();
    std::set<int> occupied(beta.begin(), beta.end());
    long long total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        int target = beta[i] - t;
        if (target < 0 || occupied.count(target)) continue;
        int jumped = 0;
        for (int b : beta)
            if (b > target && b < beta[i]) ++jumped;
        std::vector<int> nb = beta;
        nb[i] = target;
        std::sort(nb.begin(), nb.end(), std::greater<int>());
        long long sub = mn(nb, cycles);
        total += (jumped % 2 == 0) ? sub : -sub;
    }
    return total;
}

std::vector<int> beta_numbers(const Partition& pi) {
    int f = pi.length();
    std::vector<int> beta(f);
    for (int i = 0; i < f; ++i) beta[i] = pi.parts[i] + (f - 1 - i);
    return beta;
}

} // namespace

long long character(const Partition& pi, const Partition& mu) {
    if (pi.size() != mu.size())
        throw std::invalid_argument("character: |pi| != |mu|");
    if (pi.size() == 0) return 1;

    using Key = std::pair<std::vector<int>, std::vector<int>>;
    static std::map<Key, long long> memo;
    static std::mutex memo_mutex;
    Key key{pi.parts, mu.parts};
    {
        std::lock_guard<std::mutex> lk(memo_mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    // consume cycles smallest-first (back of the sorted parts)
    long long val = mn(beta_numbers(pi), mu.parts);
    std::lock_guard<std::mutex> lk(memo_mutex);
    memo.emplace(std::move(key), val);
    return val;
}

long long irrep_dimension(const Partition& pi) {
    int d = pi.size();
    if (d > 16) throw std::invalid_argument("irrep_dimension: |pi| > 16");
    if (d == 0) return 1;
    // hook length formula; both d! and the hook product fit in 64 bits
    long long hooks = 1;
    int f = pi.length();
    for (int i = 0; i < f; ++i) {
        for (int j = 0; j < pi.parts[i]; ++j) {
            int arm = pi.parts[i] - j - 1;
            int leg = 0;
            for (int r = i + 1; r < f; ++r)
                if (pi.parts[r] > j) ++leg;
            hooks *= arm + leg + 1;
        }
    }
    return factorial(d) / hooks;
}

long long invariant_multiplicity(const std::vector<Partition>& pis) {
    if (pis.empty())
        throw std::invalid_argument("invariant_multiplicity: empty input");
    int d = pis[0].size();
    for (const auto& pi : pis)
        if (pi.size() != d)
            throw std::invalid_argument("invariant_multiplicity: size mismatch");
    __int128 total = 0;
    for (const CycleType& cls : conjugacy_classes(d)) {
        __int128 prod = cls.class_size;
        for (const auto& pi : pis) prod *= character(pi, cls.cycle_lengths);
        total += prod;
    }
    long long dfact = factorial(d);
    if (total % dfact != 0)
        std::abort(); // class sum must be divisible by d!
    long long m = static_cast<long long>(total / dfact);
    if (m < 0) std::abort();
    return m;
}

} // namespace ssv
