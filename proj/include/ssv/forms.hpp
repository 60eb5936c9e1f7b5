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

#ifndef SSV_FORMS_HPP
#define SSV_FORMS_HPP

#include <string>
#include <vector>

#include "ssv/partition.hpp"

namespace ssv {

/// One minor of a candidate form: an s x s determinant whose rows are the
/// listed slots (in order) and whose columns are the first s dual basis
/// covectors of the factor.  s = 1 is a plain covector evaluation.
struct MinorGroup {
    std::vector<int> slots; // 0-based, distinct
    int size() const { return static_cast<int>(slots.size()); }
};

/// Product of minors over slot positions: the pre-symmetrization
/// representation of a candidate highest weight polynomial.
struct MinorProductForm {
    int degree = 0;
    std::vector<int> dims;              // factor dimensions
    std::vector<Partition> partitions;  // one per factor
    std::vector<std::vector<MinorGroup>> factors;

    int num_factors() const { return static_cast<int>(factors.size()); }
    void validate() const;
};

/// A permutation of 0..d-1 as an image table.
using Perm = std::vector<int>;

/// Builds the form whose factor-i minors realize the column structure of
/// partitions[i], with factor i's canonical slot positions routed through
/// taus[i].  Canonical layout: size-1 groups first, then size-2, etc.
MinorProductForm build_form(const std::vector<Partition>& partitions,
                            const std::vector<Perm>& taus,
                            const std::vector<int>& dims);

struct CatalogEntry {
    std::string name;
    std::string description;
    std::vector<MinorProductForm> forms;
};

/// The named forms transcribed from the worked low-degree cases.
const std::vector<CatalogEntry>& form_catalog();
const CatalogEntry& catalog_lookup(const std::string& name);

/// Graph on slots: edge iff the two slots never share a minor group in any
/// factor.
struct SlotGraph {
    int vertices = 0;
    std::vector<std::vector<bool>> adj;
};

SlotGraph slot_graph(const MinorProductForm& form);
bool triangle_free(const SlotGraph& g);

} // namespace ssv

#endif
