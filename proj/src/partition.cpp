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

#include "ssv/partition.hpp"

namespace ssv {

std::string Partition::str() const {
    bool wide = false;
    for (int p : parts)
        if (p >= 10) wide = true;
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (wide && i > 0) s += '.';
        s += std::to_string(parts[i]);
    }
    return s;
}

namespace {

void rec(int remaining, int max_part, int max_parts, std::vector<int>& cur,
         std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    if (max_parts == 0) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        rec(remaining - p, p, max_parts - 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Partition> enumerate_partitions(int d) {
    if (d < 1 || d > 16)
        throw std::invalid_argument("enumerate_partitions: d out of range [1,16]");
    return enumerate_partitions_max_length(d, d);
}

std::vector<Partition> enumerate_partitions_max_length(int d, int max_parts) {
    if (d < 1 || d > 16)
        throw std::invalid_argument("enumerate_partitions: d out of range [1,16]");
    std::vector<Partition> out;
    std::vector<int> cur;
    rec(d, d, max_parts, cur, out);
    return out;
}

} // namespace ssv
