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

#ifndef SSV_SCHUR_HPP
#define SSV_SCHUR_HPP

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <vector>

#include "ssv/linalg.hpp"
#include "ssv/monomials.hpp"
#include "ssv/partition.hpp"
#include "ssv/symgroup.hpp"

namespace ssv {

/// An isotypic component of S^d(A_1 x ... x A_k): one partition of d per
/// factor plus its multiplicity.
struct ModuleLabel {
    std::vector<Partition> partitions;
    long long multiplicity_in_Sd = 0;

    std::string str() const; // "321|321|3111"
};

/// dim S_pi(C^n); 0 when pi has more than n parts (hook content formula).
long long gl_dimension(const Partition& pi, int n);

/// All labels of S^d(A_1 x ... x A_k) with positive multiplicity and
/// partition lengths within dims, in deterministic (lex decreasing) order.
/// Aborts if the total dimension does not match binomial(prod dims + d-1, d).
std::vector<ModuleLabel> decompose_symmetric_power(
    int d, const std::vector<int>& dims);

struct CubicFamily {
    std::string assignment; // one of "3","21","111" per factor, joined by '|'
    long long multiplicity;
    long long dimension; // multiplicity * product of GL dimensions
};

/// dim I_3(sigma_2(Segre)) by summation over the module families of the
/// cubic-ideal theorem.  k >= 3.
long long cubic_ideal_dimension(const std::vector<int>& dims,
                                std::vector<CubicFamily>* breakdown = nullptr);

/// Printed closed-form polynomials for the 3- and 4-factor cubic counts.
/// Kept as cross-checks only; a mismatch with cubic_ideal_dimension is
/// reported by callers as a diagnostic, never treated as authoritative.
mpq_class cubic_closed_form_3(long long a, long long b, long long c);
mpq_class cubic_closed_form_4(long long a, long long b, long long c,
                              long long d);

/// A system of quadrics on an n-dimensional space, rows = coefficient
/// vectors over MonomialBasis(n, 2).
struct QuadricSystem {
    int ambient_dim = 0;
    FpMat basis;
};

/// Basis of the p-th prolongation (A (x) S^p V*) cap S^{p+2} V*, rows over
/// MonomialBasis(n, p+2).  Guard: dim S^{p+2} <= 10^6.
FpMat prolongation(const QuadricSystem& A, int p, const PrimeField& f);

/// dim of the space of degree-`degree` forms vanishing at random points of
/// sigma_r(Segre(dims)); evaluation-kernel rank, dimension only.
std::size_t ideal_component_dimension(const std::vector<int>& dims, int degree,
                                      int r, const PrimeField& f,
                                      uint64_t seed);

/// Same, but returns a kernel basis (rows over MonomialBasis(n, degree)).
/// Guard: basis size <= 5000.
FpMat ideal_component_basis(const std::vector<int>& dims, int degree, int r,
                            const PrimeField& f, uint64_t seed);

/// I_2 of the Segre variety itself (r = 1) as a quadric system.
QuadricSystem segre_quadrics(const std::vector<int>& dims, const PrimeField& f,
                             uint64_t seed);

} // namespace ssv

#endif
