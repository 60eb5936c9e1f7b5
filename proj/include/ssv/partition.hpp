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

#ifndef SSV_PARTITION_HPP
#define SSV_PARTITION_HPP

#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssv {

/// A partition: weakly decreasing sequence of positive integers.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    Partition(std::initializer_list<int> p) : parts(p) { validate(); }
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {
        validate();
    }

    int size() const {
        return std::accumulate(parts.begin(), parts.end(), 0);
    }
    int length() const { return static_cast<int>(parts.size()); }
    bool empty() const { return parts.empty(); }

    auto operator<=>(const Partition&) const = default;

    /// Compact digit form, e.g. (3,2,1) -> "321"; parts >= 10 separated by dots.
    std::string str() const;

    void validate() const {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0)
                throw std::invalid_argument("partition parts must be positive");
            if (i + 1 < parts.size() && parts[i] < parts[i + 1])
                throw std::invalid_argument("partition must be weakly decreasing");
        }
    }
};

/// All partitions of d in lexicographically decreasing order; (d) first,
/// (1,...,1) last.  Requires 1 <= d <= 16.
std::vector<Partition> enumerate_partitions(int d);

/// Partitions of d with at most max_parts parts, same order.
std::vector<Partition> enumerate_partitions_max_length(int d, int max_parts);

} // namespace ssv

#endif
