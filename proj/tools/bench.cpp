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

// Compares the OpenMP kernels against their serial reference
// implementations: homogeneity pattern sums and Gaussian elimination.

#include <chrono>
#include <cstdio>
#include <random>

#include "ssv/eval.hpp"
#include "ssv/forms.hpp"
#include "ssv/linalg.hpp"
#include "ssv/points.hpp"
#include "ssv/secant.hpp"

using namespace ssv;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0)
        .count();
}

void bench_pattern_sum(const PrimeField& f) {
    const CatalogEntry& e = catalog_lookup("deg12-3333");
    const MinorProductForm& form = e.forms[0];
    Rng rng(7);
    auto points = sample_rank_ones(form.dims, 6, rng, f);
    MinorTables tables(form, points, f);
    HomogeneityPattern pat{{3, 3, 2, 2, 1, 1}};

    Clock::time_point t0 = Clock::now();
    uint64_t serial = tables.pattern_sum(pat, f, false);
    double t_serial = ms_since(t0);

    t0 = Clock::now();
    uint64_t parallel = tables.pattern_sum(pat, f, true);
    double t_parallel = ms_since(t0);

    std::printf("pattern_sum deg12-3333 r=6 pattern 332211\n");
    std::printf("  serial   %10.2f ms  value %llu\n", t_serial,
                (unsigned long long)serial);
    std::printf("  parallel %10.2f ms  value %llu  speedup %.2fx\n",
                t_parallel, (unsigned long long)parallel,
                t_serial / t_parallel);
    if (serial != parallel) std::printf("  MISMATCH\n");
}

void bench_rank(const PrimeField& f) {
    const int n = 600;
    Rng rng(11);
    FpMat a(n, FpVec(n));
    for (auto& row : a)
        for (auto& x : row) x = random_field_elem(rng, f);
    FpMat b = a;

    Clock::time_point t0 = Clock::now();
    std::size_t rs = fp_rank_serial(a, f);
    double t_serial = ms_since(t0);

    t0 = Clock::now();
    std::size_t rp = fp_rank(b, f);
    double t_parallel = ms_since(t0);

    std::printf("fp_rank %dx%d random\n", n, n);
    std::printf("  serial   %10.2f ms  rank %zu\n", t_serial, rs);
    std::printf("  parallel %10.2f ms  rank %zu  speedup %.2fx\n", t_parallel,
                rp, t_serial / t_parallel);
    if (rs != rp) std::printf("  MISMATCH\n");
}

} // namespace

int main() {
    PrimeField f(default_primes(1)[0]);
    bench_pattern_sum(f);
    bench_rank(f);
    return 0;
}
