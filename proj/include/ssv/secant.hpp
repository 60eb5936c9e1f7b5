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

#ifndef SSV_SECANT_HPP
#define SSV_SECANT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ssv/eval.hpp"
#include "ssv/schur.hpp"

namespace ssv {

struct SecantSpec {
    std::vector<int> dims;
    int r = 1;
    uint64_t seed = 0;
};

/// r independent random rank-one points; deterministic per spec.seed.
std::vector<RankOnePoint> sample_secant_point(const SecantSpec& spec,
                                              const PrimeField& f);

/// Affine cone dimension of sigma_r: rank of the stacked tangent spaces
/// A x b x c + a x B x c + a x b x C at r random smooth points.
std::size_t terracini_dimension(const SecantSpec& spec, const PrimeField& f);

enum class FilterAction { Keep, Skip, Transfer };

struct FilterDecision {
    FilterAction action = FilterAction::Keep;
    std::vector<int> eval_dims;        // Keep: reduced evaluation dims
    std::vector<int> transfer_factors; // Transfer: surviving factor indices
};

/// Degree/label reduction: d <= r degrees are skipped outright, factors
/// carrying the trivial partition delegate to the smaller Segre product,
/// and surviving labels evaluate at dims lowered to the partition lengths.
FilterDecision reduction_filters(const ModuleLabel& label, int d,
                                 const SecantSpec& spec);

struct FormBasis {
    std::vector<MinorProductForm> forms;
    bool complete = false; // reached the full isotypic multiplicity
};

/// Random tau search (tau_1 = identity) for a spanning set of independent
/// symmetrized forms of the label, rank-tracked against random multilinear
/// evaluation columns.  Budget: budget_factor * multiplicity trials.
FormBasis realize_label_basis(const ModuleLabel& label, int d,
                              const std::vector<int>& eval_dims,
                              const PrimeField& f, Rng& rng,
                              int budget_factor = 50,
                              const WeightBasis* wb = nullptr);

/// Rows = forms, columns = (secant point set, homogeneity pattern) pairs.
FpMat pattern_evaluation_matrix(const std::vector<MinorProductForm>& forms,
                                int r, int point_sets, const PrimeField& f,
                                Rng& rng, const WeightBasis* wb = nullptr);

struct LabelVerdict {
    ModuleLabel label;
    std::string status; // tested | skipped-low-degree | delegated |
                        // incomplete-basis | skipped-degree
    long long multiplicity_in_ideal = 0;
    long long forms_realized = 0;
    std::vector<uint64_t> primes;
    int point_sets = 0;
    int patterns_tested = 0;
    FpMat coefficients; // kernel vectors over primes[0], catalog/tau basis
};

struct ScanReport {
    int degree = 0;
    SecantSpec spec;
    std::vector<LabelVerdict> entries;

    /// Sum over in-ideal labels of multiplicity * product of GL dimensions
    /// at the spec dims.
    long long ideal_dimension() const;
};

struct ScanOptions {
    int point_sets = 3;
    int num_primes = 2;
    int tau_budget_factor = 50;
    int margin = 6;
    std::vector<std::string> label_filter; // label.str() values; empty = all
    bool use_weight_basis = false;
    uint64_t salt = 0; // stream separation for independent reruns
};

/// Part One / Part Two pipeline over all labels of S^d (after filters).
ScanReport scan_ideal(int d, const SecantSpec& spec,
                      const ScanOptions& opts = {});

/// Verdict for a single label (same machinery, callable directly).
LabelVerdict test_label(const ModuleLabel& label, int d,
                        const SecantSpec& spec, const ScanOptions& opts = {});

/// Independent recomputation of a label verdict from a distinct tau stream
/// and randomized weight bases.
long long kernel_oracle(const ModuleLabel& label, int d,
                        const SecantSpec& spec, uint64_t salt = 1);

/// Stable 64-bit stream hash used to derive per-label seeds.
uint64_t stream_seed(uint64_t seed, uint64_t salt, const std::string& tag);

} // namespace ssv

#endif
