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

#ifndef SSV_FLATTEN_HPP
#define SSV_FLATTEN_HPP

#include <array>
#include <gmpxx.h>
#include <string>
#include <vector>

namespace ssv {

using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;

/// Dense k-factor tensor over the rationals, factor-major coordinates
/// (last factor index fastest).
struct QTensor {
    std::vector<int> dims;
    QVec coords;

    std::size_t size() const { return coords.size(); }
    bool is_zero() const;
};

QTensor zero_tensor(const std::vector<int>& dims);

/// Outer product of one vector per factor.
QTensor outer(const std::vector<QVec>& vecs);

void tensor_add(QTensor& t, const QTensor& other);

/// Matricization over the bipartition (row_factors, rest), both sides
/// row-major in ascending factor order.
QMat matricize(const QTensor& t, const std::vector<int>& row_factors);

/// Exact rank of the matricization.
std::size_t flattening_rank(const QTensor& t,
                            const std::vector<int>& row_factors);

/// Constructive sigma_2 membership certificate.  Vectors may live in a real
/// quadratic extension Q(sqrt(disc)); surd parts are zero in the rational
/// case.
struct Sigma2Certificate {
    enum class Kind { RankOne, RankTwo, Tangent, Witness };
    Kind kind = Kind::RankOne;
    bool degenerate = false; // zero tensor

    // RankOne / RankTwo
    std::vector<QVec> point1, point2;
    std::vector<QVec> point1_surd, point2_surd;
    mpq_class disc = 0;

    // Tangent: sum over i of base with slot i replaced by perturbation[i]
    std::vector<QVec> base, perturbation;

    // Witness: an exactly nonzero 3x3 minor of a flattening
    std::vector<int> split;            // row-side factors
    std::array<int, 3> rows{}, cols{}; // indices into the matricization
    mpq_class minor_value = 0;
};

/// Certifies membership in sigma_2 of the Segre cone, or exhibits a
/// violated 3x3 flattening minor.  Requires k >= 3 factors.
Sigma2Certificate gss_sigma2_test(const QTensor& t);

/// Exact reconstruction / violation check of a certificate against t.
bool verify_certificate(const Sigma2Certificate& cert, const QTensor& t);

/// Dimension of the span of all (r+1)x(r+1) flattening minors inside
/// S^{r+1} V*.
std::size_t minor_span_dimension(const std::vector<int>& dims, int r);

} // namespace ssv

#endif
