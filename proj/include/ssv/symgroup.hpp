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

#ifndef SSV_SYMGROUP_HPP
#define SSV_SYMGROUP_HPP

#include <cstdint>
#include <vector>

#include "ssv/partition.hpp"

namespace ssv {

/// A conjugacy class of S_d, named by its cycle type.
struct CycleType {
    Partition cycle_lengths;
    long long class_size = 0;
};

long long factorial(int d);

/// All conjugacy classes of S_d.  Class sizes sum to d!.
std::vector<CycleType> conjugacy_classes(int d);

/// Irreducible character chi_pi on the class of cycle type mu
/// (Murnaghan-Nakayama; memoized).  Requires |pi| = |mu|.
long long character(const Partition& pi, const Partition& mu);

/// dim [pi] by the hook length formula.  Requires |pi| <= 16.
long long irrep_dimension(const Partition& pi);

/// dim ([pi_1] x ... x [pi_k])^{S_d}: number of copies of the trivial
/// representation in the tensor product, via the class sum of character
/// products divided by d!.  Aborts if the sum is not divisible by d!.
long long invariant_multiplicity(const std::vector<Partition>& pis);

} // namespace ssv

#endif
