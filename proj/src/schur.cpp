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

#include "ssv/schur.hpp"

#include <cstdlib>
#include <stdexcept>

#include "ssv/points.hpp"

namespace ssv {

std::string ModuleLabel::str() const {
    std::string s;
    for (std::size_t i = 0; i < partitions.size(); ++i) {
        if (i) s += '|';
        s += partitions[i].str();
    }
    return s;
}

long long gl_dimension(const Partition& pi, int n) {
    if (pi.length() > n) return 0;
    mpz_class num = 1, den = 1;
    int f = pi.length();
    for (int i = 0; i < f; ++i) {
        for (int j = 0; j < pi.parts[i]; ++j) {
            num *= n + j - i;
            int arm = pi.parts[i] - j - 1;
            int leg = 0;
            for (int r = i + 1; r < f; ++r)
                if (pi.parts[r] > j) ++leg;
            den *= arm + leg + 1;
        }
    }
    mpz_class q = num / den;
    if (!q.fits_slong_p())
        throw std::overflow_error("gl_dimension overflow");
    return q.get_si();
}

std::vector<ModuleLabel> decompose_symmetric_power(
    int d, const std::vector<int>& dims) {
    if (d > 12) throw std::invalid_argument("decompose: d > 12");
    const int k = static_cast<int>(dims.size());
    if (k < 2) throw std::invalid_argument("decompose: k < 2");

    const auto parts = enumerate_partitions(d);
    const auto classes = conjugacy_classes(d);
    const std::size_t np = parts.size(), ncls = classes.size();
    // full character table, indexed [partition][class]
    std::vector<std::vector<long long>> chi(np, std::vector<long long>(ncls));
    for (std::size_t p = 0; p < np; ++p)
        for (std::size_t c = 0; c < ncls; ++c)
            chi[p][c] = character(parts[p], classes[c].cycle_lengths);

    // admissible partitions per factor (length filter)
    std::vector<std::vector<std::size_t>> admissible(k);
    for (int i = 0; i < k; ++i)
        for (std::size_t p = 0; p < np; ++p)
            if (parts[p].length() <= dims[i]) admissible[i].push_back(p);

    const long long dfact = factorial(d);
    std::vector<ModuleLabel> out;
    mpz_class dim_total = 0;

    std::vector<std::size_t> tuple(k, 0);
    auto rec = [&](auto&& self, int factor) -> void {
        if (factor == k) {
            __int128 sum = 0;
            for (std::size_t c = 0; c < ncls; ++c) {
                __int128 prod = classes[c].class_size;
                for (int i = 0; i < k; ++i) prod *= chi[tuple[i]][c];
                sum += prod;
            }
            if (sum % dfact != 0) std::abort();
            long long mult = static_cast<long long>(sum / dfact);
            if (mult < 0) std::abort();
            if (mult == 0) return;
            ModuleLabel lab;
            for (int i = 0; i < k; ++i) lab.partitions.push_back(parts[tuple[i]]);
            lab.multiplicity_in_Sd = mult;
            mpz_class dim = static_cast<long>(mult);
            for (int i = 0; i < k; ++i)
                dim *= static_cast<long>(gl_dimension(lab.partitions[i], dims[i]));
            dim_total += dim;
            out.push_back(std::move(lab));
            return;
        }
        for (std::size_t p : admissible[factor]) {
            tuple[factor] = p;
            self(self, factor + 1);
        }
    };
    rec(rec, 0);

    long long prod_dims = 1;
    for (int n : dims) prod_dims *= n;
    if (dim_total != binomial(prod_dims + d - 1, d))
        std::abort(); // dimension-sum consistency failure
    return out;
}

namespace {

long long s21_chain_multiplicity(int j) {
    // (2^{j-1} - (-1)^{j-1}) / 3
    long long v = (1ll << (j - 1)) - ((j - 1) % 2 == 0 ? 1 : -1);
    return v / 3;
}

} // namespace

long long cubic_ideal_dimension(const std::vector<int>& dims,
                                std::vector<CubicFamily>* breakdown) {
    const int k = static_cast<int>(dims.size());
    if (k < 3) throw std::invalid_argument("cubic_ideal_dimension: k < 3");
    const Partition p3{3}, p21{2, 1}, p111{1, 1, 1};

    long long total = 0;
    // each factor belongs to I (S_3), J (S_21) or L (S_111)
    std::vector<int> cls(k, 0);
    auto rec = [&](auto&& self, int factor) -> void {
        if (factor < k) {
            for (int c = 0; c < 3; ++c) {
                cls[factor] = c;
                self(self, factor + 1);
            }
            return;
        }
        int nj = 0, nl = 0;
        for (int c : cls) {
            if (c == 1) ++nj;
            if (c == 2) ++nl;
        }
        long long mult = 0;
        if (nj > 1)
            mult = s21_chain_multiplicity(nj) - (nl == 0 ? 1 : 0);
        else if (nj == 0 && nl > 0 && nl % 2 == 0)
            mult = 1;
        if (mult <= 0) return;
        long long dim = mult;
        std::string name;
        for (int i = 0; i < k; ++i) {
            const Partition& pi = cls[i] == 0 ? p3 : (cls[i] == 1 ? p21 : p111);
            dim *= gl_dimension(pi, dims[i]);
            if (i) name += '|';
            name += pi.str();
        }
        if (dim == 0) return;
        if (breakdown) breakdown->push_back({name, mult, dim});
        total += dim;
    };
    rec(rec, 0);
    return total;
}

mpq_class cubic_closed_form_3(long long a, long long b, long long c) {
    mpq_class A = static_cast<long>(a), B = static_cast<long>(b), C = static_cast<long>(c);
    mpq_class s = -6 * (A * B + A * C + B * C) - 8 * (A + B + C) + 16 +
                  27 * A * B * C -
                  5 * (A * A * B * B * C + A * A * B * C * C + A * B * B * C * C) -
                  3 * (A * A * B * C + A * B * B * C + A * B * C * C) +
                  5 * A * A * B * B * C * C +
                  2 * (A * A * B + A * A * C + A * B * B + A * C * C +
                       B * B * C + B * C * C) +
                  2 * (A * A * B * B + 2 * A * A * C * C + 2 * B * B * C * C);
    return A * B * C / 72 * s;
}

mpq_class cubic_closed_form_4(long long a, long long b, long long c,
                              long long d) {
    mpq_class A = static_cast<long>(a), B = static_cast<long>(b), C = static_cast<long>(c), D = static_cast<long>(d);
    auto sq = [](const mpq_class& x) { return x * x; };
    mpq_class s =
        368 -
        72 * (A + B + C + D + A * B + A * C + A * D + B * C + B * D + C * D) -
        8 * (sq(A) + sq(B) + sq(C) + sq(D)) -
        54 * (A * B * C + A * B * D + A * C * D + B * C * D) +
        8 * (sq(A) * sq(B) + sq(A) * sq(C) + sq(B) * sq(C) + sq(A) * sq(D) +
             sq(B) * sq(D) + sq(C) * sq(D)) +
        567 * A * B * C * D +
        18 * (sq(A) * B * C + A * sq(B) * C + A * B * sq(C) + sq(A) * B * D +
              A * sq(B) * D + sq(A) * C * D + sq(B) * C * D + A * sq(C) * D +
              B * sq(C) * D + A * B * sq(D) + A * C * sq(D) + B * C * sq(D)) -
        27 * A * B * C * D * (A + B + C + D) +
        18 * (sq(A) * sq(B) * C + sq(A) * B * sq(C) + A * sq(B) * sq(C) +
              sq(B) * sq(C) * D + sq(A) * sq(B) * D + sq(A) * sq(C) * D +
              sq(B) * C * sq(D) + sq(A) * B * sq(D) + A * sq(B) * sq(D) +
              sq(A) * C * sq(D) + A * sq(C) * sq(D) + B * sq(C) * sq(D)) +
        10 * (sq(A) * sq(B) * sq(C) + sq(B) * sq(C) * sq(D) +
              sq(A) * sq(B) * sq(D) + sq(A) * sq(C) * sq(D)) -
        45 * A * B * C * D * (C * D + B * D + A * D + B * C + A * C + A * B) -
        63 * A * B * C * D * (A * B * C + A * B * D + A * D * C + B * C * D) +
        143 * sq(A) * sq(B) * sq(C) * sq(D);
    return A * B * C * D / 1296 * s;
}

FpMat prolongation(const QuadricSystem& A, int p, const PrimeField& f) {
    const int n = A.ambient_dim;
    MonomialBasis b2(n, 2), bp(n, p), btop(n, p + 2);
    if (btop.size() > 1000000)
        throw std::length_error("prolongation: target space too large");

    // annihilator of span(A) inside (S^2 V*)^* ~ coefficient functionals
    FpMat annihilator;
    if (A.basis.empty()) {
        // A = 0: annihilator is everything, prolongation is 0
        annihilator.resize(b2.size());
        for (std::size_t i = 0; i < b2.size(); ++i) {
            annihilator[i].assign(b2.size(), 0);
            annihilator[i][i] = 1;
        }
    } else {
        annihilator = fp_kernel(A.basis, f);
    }
    if (annihilator.empty()) {
        // A is all of S^2: no constraint, prolongation is all of S^{p+2}
        FpMat all(btop.size(), FpVec(btop.size(), 0));
        for (std::size_t i = 0; i < btop.size(); ++i) all[i][i] = 1;
        return all;
    }

    // P lies in the prolongation iff every order-p partial of P lies in A.
    FpMat constraints;
    std::vector<int> gamma(n);
    for (std::size_t bi = 0; bi < bp.size(); ++bi) {
        std::vector<int> beta(n, 0);
        for (auto [v, e] : bp.sparse(bi)) beta[v] = e;
        // row pattern: coeff_mu(d^beta P) = c_{beta+mu} * D(beta+mu, beta)
        std::vector<std::pair<std::size_t, uint64_t>> pattern(b2.size());
        for (std::size_t mi = 0; mi < b2.size(); ++mi) {
            std::vector<int> mu(n, 0);
            for (auto [v, e] : b2.sparse(mi)) mu[v] = e;
            for (int v = 0; v < n; ++v) gamma[v] = beta[v] + mu[v];
            long long dcoef = 1;
            for (int v = 0; v < n; ++v)
                for (int t = mu[v] + 1; t <= gamma[v]; ++t) dcoef *= t;
            pattern[mi] = {btop.index(gamma), f.reduce_signed(dcoef)};
        }
        for (const FpVec& y : annihilator) {
            FpVec row(btop.size(), 0);
            for (std::size_t mi = 0; mi < b2.size(); ++mi)
                row[pattern[mi].first] = f.add(
                    row[pattern[mi].first], f.mul(y[mi], pattern[mi].second));
            constraints.push_back(std::move(row));
        }
    }
    return fp_kernel(std::move(constraints), f);
}

std::size_t ideal_component_dimension(const std::vector<int>& dims, int degree,
                                      int r, const PrimeField& f,
                                      uint64_t seed) {
    long long n = 1;
    for (int x : dims) n *= x;
    MonomialBasis basis(static_cast<int>(n), degree);
    RowEchelon ech(f, basis.size());
    Rng rng(seed);
    const int stall_limit = 40;
    int stall = 0;
    while (stall < stall_limit && ech.rank() < basis.size()) {
        auto pts = sample_rank_ones(dims, r, rng, f);
        FpVec coords = tensor_coords(pts, dims, f);
        if (ech.absorb(basis.evaluate(coords, f)))
            stall = 0;
        else
            ++stall;
    }
    return basis.size() - ech.rank();
}

FpMat ideal_component_basis(const std::vector<int>& dims, int degree, int r,
                            const PrimeField& f, uint64_t seed) {
    long long n = 1;
    for (int x : dims) n *= x;
    MonomialBasis basis(static_cast<int>(n), degree);
    if (basis.size() > 5000)
        throw std::length_error("ideal_component_basis: space too large");
    Rng rng(seed);
    FpMat rows;
    const std::size_t nrows = basis.size() + 40;
    for (std::size_t i = 0; i < nrows; ++i) {
        auto pts = sample_rank_ones(dims, r, rng, f);
        rows.push_back(basis.evaluate(tensor_coords(pts, dims, f), f));
    }
    return fp_kernel(std::move(rows), f);
}

QuadricSystem segre_quadrics(const std::vector<int>& dims, const PrimeField& f,
                             uint64_t seed) {
    long long n = 1;
    for (int x : dims) n *= x;
    QuadricSystem q;
    q.ambient_dim = static_cast<int>(n);
    q.basis = ideal_component_basis(dims, 2, 1, f, seed);
    return q;
}

} // namespace ssv
