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

#include "ssv/flatten.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "ssv/linalg.hpp"
#include "ssv/monomials.hpp"

namespace ssv {

bool QTensor::is_zero() const {
    for (const mpq_class& c : coords)
        if (c != 0) return false;
    return true;
}

QTensor zero_tensor(const std::vector<int>& dims) {
    QTensor t;
    t.dims = dims;
    std::size_t n = 1;
    for (int d : dims) n *= d;
    t.coords.assign(n, mpq_class(0));
    return t;
}

QTensor outer(const std::vector<QVec>& vecs) {
    QTensor t;
    std::size_t n = 1;
    for (const QVec& v : vecs) {
        t.dims.push_back(static_cast<int>(v.size()));
        n *= v.size();
    }
    t.coords.assign(n, mpq_class(1));
    std::size_t block = n;
    for (const QVec& v : vecs) {
        block /= v.size();
        for (std::size_t i = 0; i < n; ++i)
            t.coords[i] *= v[(i / block) % v.size()];
    }
    return t;
}

void tensor_add(QTensor& t, const QTensor& other) {
    if (t.dims != other.dims)
        throw std::invalid_argument("tensor_add: shape mismatch");
    for (std::size_t i = 0; i < t.coords.size(); ++i)
        t.coords[i] += other.coords[i];
}

QMat matricize(const QTensor& t, const std::vector<int>& row_factors) {
    const int k = static_cast<int>(t.dims.size());
    std::vector<bool> is_row(k, false);
    for (int f : row_factors) is_row[f] = true;
    std::vector<int> rf, cf;
    for (int f = 0; f < k; ++f) (is_row[f] ? rf : cf).push_back(f);
    if (rf.empty() || cf.empty())
        throw std::invalid_argument("matricize: empty side");
    std::vector<std::size_t> stride(k);
    std::size_t s = 1;
    for (int f = k - 1; f >= 0; --f) {
        stride[f] = s;
        s *= t.dims[f];
    }
    std::size_t nrows = 1, ncols = 1;
    for (int f : rf) nrows *= t.dims[f];
    for (int f : cf) ncols *= t.dims[f];
    QMat m(nrows, QVec(ncols));
    for (std::size_t r = 0; r < nrows; ++r) {
        std::size_t base = 0, rem = r;
        for (int idx = static_cast<int>(rf.size()) - 1; idx >= 0; --idx) {
            int f = rf[idx];
            base += (rem % t.dims[f]) * stride[f];
            rem /= t.dims[f];
        }
        for (std::size_t c = 0; c < ncols; ++c) {
            std::size_t off = 0, crem = c;
            for (int idx = static_cast<int>(cf.size()) - 1; idx >= 0; --idx) {
                int f = cf[idx];
                off += (crem % t.dims[f]) * stride[f];
                crem /= t.dims[f];
            }
            m[r][c] = t.coords[base + off];
        }
    }
    return m;
}

std::size_t flattening_rank(const QTensor& t,
                            const std::vector<int>& row_factors) {
    return rational_rank(matricize(t, row_factors));
}

namespace {

// ---- rational linear algebra helpers ----

// indices of the first `limit` linearly independent rows (all if limit = 0)
std::vector<int> independent_rows(const QMat& m, std::size_t limit) {
    std::vector<int> picked;
    QMat basis;
    std::vector<std::size_t> lead;
    for (std::size_t i = 0; i < m.size(); ++i) {
        QVec row = m[i];
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (row[lead[b]] == 0) continue;
            mpq_class q = row[lead[b]];
            for (std::size_t j = 0; j < row.size(); ++j)
                row[j] -= q * basis[b][j];
        }
        std::size_t l = 0;
        while (l < row.size() && row[l] == 0) ++l;
        if (l == row.size()) continue;
        mpq_class inv = 1 / row[l];
        for (std::size_t j = 0; j < row.size(); ++j) row[j] *= inv;
        basis.push_back(std::move(row));
        lead.push_back(l);
        picked.push_back(static_cast<int>(i));
        if (limit && picked.size() == limit) break;
    }
    return picked;
}

QMat qmat_transpose(const QMat& m) {
    if (m.empty()) return {};
    QMat t(m[0].size(), QVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

mpq_class det2(const QMat& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

QMat inv_small(const QMat& m) {
    if (m.size() == 1) {
        if (m[0][0] == 0) throw std::logic_error("inv_small: singular");
        return {{1 / m[0][0]}};
    }
    mpq_class d = det2(m);
    if (d == 0) throw std::logic_error("inv_small: singular");
    return {{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}};
}

QMat qmat_mul(const QMat& a, const QMat& b) {
    QMat c(a.size(), QVec(b[0].size(), mpq_class(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t l = 0; l < b.size(); ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j)
                c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

// F = sum_u col(A_u) * row(B_u); A = pivot columns of F
struct RankFactor {
    QMat a; // rank vectors of length nrows
    QMat b; // rank vectors of length ncols
    std::size_t rank = 0;
};

RankFactor rank_factor(const QMat& f) {
    RankFactor rf;
    QMat ft = qmat_transpose(f);
    std::vector<int> piv_cols = independent_rows(ft, 0);
    rf.rank = piv_cols.size();
    if (rf.rank == 0) return rf;
    for (int c : piv_cols) rf.a.push_back(ft[c]);
    QMat acols = qmat_transpose(rf.a); // nrows x rank
    // rows of the original matrix giving an invertible rank x rank block
    std::vector<int> piv_rows = independent_rows(acols, rf.rank);
    QMat block(rf.rank, QVec(rf.rank));
    QMat rhs(rf.rank, QVec(f[0].size()));
    for (std::size_t u = 0; u < rf.rank; ++u) {
        for (std::size_t v = 0; v < rf.rank; ++v)
            block[u][v] = acols[piv_rows[u]][v];
        rhs[u] = f[piv_rows[u]];
    }
    rf.b = qmat_mul(inv_small(block), rhs);
    return rf;
}

// ---- small quadratic extension Q(sqrt(D)) ----

struct QuadExt {
    mpq_class a, b; // a + b * sqrt(D)
    QuadExt() : a(0), b(0) {}
    QuadExt(mpq_class x) : a(std::move(x)), b(0) {}
    QuadExt(mpq_class x, mpq_class y) : a(std::move(x)), b(std::move(y)) {}
};

struct QuadField {
    mpq_class D;
    QuadExt mul(const QuadExt& x, const QuadExt& y) const {
        return {x.a * y.a + x.b * y.b * D, x.a * y.b + x.b * y.a};
    }
    QuadExt div(const QuadExt& x, const QuadExt& y) const {
        mpq_class n = y.a * y.a - y.b * y.b * D;
        if (n == 0) throw std::logic_error("QuadField: division by zero");
        return mul(x, {y.a / n, -y.b / n});
    }
};

bool qe_zero(const QuadExt& x) { return x.a == 0 && x.b == 0; }

// one level of rank-one factoring: T = u (x) rest along the leading mode
template <class Elem, class Mul, class Div, class IsZero>
std::optional<std::pair<std::vector<Elem>, std::vector<Elem>>> split_mode0(
    const std::vector<Elem>& cur, int d0, Mul mul, Div div, IsZero zero) {
    const std::size_t rest = cur.size() / d0;
    std::size_t c0 = rest;
    for (std::size_t c = 0; c < rest && c0 == rest; ++c)
        for (int i = 0; i < d0; ++i)
            if (!zero(cur[i * rest + c])) {
                c0 = c;
                break;
            }
    if (c0 == rest) return std::nullopt; // zero
    std::vector<Elem> u(d0);
    for (int i = 0; i < d0; ++i) u[i] = cur[i * rest + c0];
    for (std::size_t c = 0; c < rest; ++c)
        for (int i = 0; i < d0; ++i)
            for (int j = i + 1; j < d0; ++j) {
                Elem lhs = mul(cur[i * rest + c], u[j]);
                Elem rhs = mul(cur[j * rest + c], u[i]);
                if (!zero(Elem{lhs.a - rhs.a, lhs.b - rhs.b}))
                    return std::nullopt;
            }
    int p = 0;
    while (zero(u[p])) ++p;
    std::vector<Elem> next(rest);
    for (std::size_t c = 0; c < rest; ++c)
        next[c] = div(cur[p * rest + c], u[p]);
    return std::make_pair(std::move(u), std::move(next));
}

// rational specialization (mpq_class has no .a/.b); kept separate
std::optional<std::pair<QVec, QVec>> split_mode0_q(const QVec& cur, int d0) {
    const std::size_t rest = cur.size() / d0;
    std::size_t c0 = rest;
    for (std::size_t c = 0; c < rest && c0 == rest; ++c)
        for (int i = 0; i < d0; ++i)
            if (cur[i * rest + c] != 0) {
                c0 = c;
                break;
            }
    if (c0 == rest) return std::nullopt;
    QVec u(d0);
    for (int i = 0; i < d0; ++i) u[i] = cur[i * rest + c0];
    for (std::size_t c = 0; c < rest; ++c)
        for (int i = 0; i < d0; ++i)
            for (int j = i + 1; j < d0; ++j)
                if (cur[i * rest + c] * u[j] != cur[j * rest + c] * u[i])
                    return std::nullopt;
    int p = 0;
    while (u[p] == 0) ++p;
    QVec next(rest);
    for (std::size_t c = 0; c < rest; ++c) next[c] = cur[p * rest + c] / u[p];
    return std::make_pair(std::move(u), std::move(next));
}

std::optional<std::vector<QVec>> factor_rank_one_q(QVec cur,
                                                   std::vector<int> dims) {
    std::vector<QVec> out;
    while (dims.size() > 1) {
        auto step = split_mode0_q(cur, dims[0]);
        if (!step) return std::nullopt;
        out.push_back(std::move(step->first));
        cur = std::move(step->second);
        dims.erase(dims.begin());
    }
    out.push_back(std::move(cur));
    return out;
}

std::optional<std::vector<std::vector<QuadExt>>> factor_rank_one_qe(
    std::vector<QuadExt> cur, std::vector<int> dims, const QuadField& qf) {
    auto mul = [&](const QuadExt& x, const QuadExt& y) { return qf.mul(x, y); };
    auto div = [&](const QuadExt& x, const QuadExt& y) { return qf.div(x, y); };
    std::vector<std::vector<QuadExt>> out;
    while (dims.size() > 1) {
        auto step = split_mode0<QuadExt>(cur, dims[0], mul, div, qe_zero);
        if (!step) return std::nullopt;
        out.push_back(std::move(step->first));
        cur = std::move(step->second);
        dims.erase(dims.begin());
    }
    out.push_back(std::move(cur));
    return out;
}

// ---- reduced certificate (all dims <= 2) ----

struct RCert {
    enum Kind { Zero, One, Two, Tan } kind = Zero;
    std::vector<QVec> p1, p2;
    std::vector<QVec> p1s, p2s; // surd parts of Two
    mpq_class disc = 0;
    std::vector<QVec> base, pert;
};

void rcert_insert(RCert& c, int pos, const QVec& v) {
    QVec z(v.size(), mpq_class(0));
    switch (c.kind) {
    case RCert::Zero:
        break;
    case RCert::One:
        c.p1.insert(c.p1.begin() + pos, v);
        break;
    case RCert::Two:
        c.p1.insert(c.p1.begin() + pos, v);
        c.p2.insert(c.p2.begin() + pos, v);
        if (c.disc != 0) {
            c.p1s.insert(c.p1s.begin() + pos, z);
            c.p2s.insert(c.p2s.begin() + pos, z);
        }
        break;
    case RCert::Tan:
        c.base.insert(c.base.begin() + pos, v);
        c.pert.insert(c.pert.begin() + pos, z);
        break;
    }
}

QTensor subtensor(QVec coords, std::vector<int> dims) {
    QTensor t;
    t.dims = std::move(dims);
    t.coords = std::move(coords);
    return t;
}

// contraction of the leading mode with a covector
QTensor contract0(const QTensor& t, const QVec& phi) {
    std::vector<int> tail(t.dims.begin() + 1, t.dims.end());
    QTensor out = zero_tensor(tail);
    std::size_t rest = out.coords.size();
    for (int i = 0; i < t.dims[0]; ++i) {
        if (phi[i] == 0) continue;
        for (std::size_t c = 0; c < rest; ++c)
            out.coords[c] += phi[i] * t.coords[i * rest + c];
    }
    return out;
}

QTensor outer_prepend(const QVec& v, const QTensor& t) {
    QTensor out;
    out.dims = t.dims;
    out.dims.insert(out.dims.begin(), static_cast<int>(v.size()));
    out.coords.reserve(v.size() * t.coords.size());
    for (const mpq_class& a : v)
        for (const mpq_class& b : t.coords) out.coords.push_back(a * b);
    return out;
}

std::optional<mpq_class> proportionality(const QTensor& num,
                                         const QTensor& den) {
    // num = c * den, den nonzero
    std::size_t p = 0;
    while (p < den.coords.size() && den.coords[p] == 0) ++p;
    if (p == den.coords.size()) return std::nullopt;
    mpq_class c = num.coords[p] / den.coords[p];
    for (std::size_t i = 0; i < den.coords.size(); ++i)
        if (num.coords[i] != c * den.coords[i]) return std::nullopt;
    return c;
}

bool is_square(const mpq_class& x, mpq_class& root) {
    if (x < 0) return false;
    mpq_class c = x;
    c.canonicalize();
    if (!mpz_perfect_square_p(c.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(c.get_den().get_mpz_t()))
        return false;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), c.get_den().get_mpz_t());
    root = mpq_class(n) / mpq_class(d);
    return true;
}

std::optional<RCert> certify(const QTensor& t);

// T = prefix factors (rank-one slots) tensor S: certify S and prepend
std::optional<RCert> certify_with_prefix(const std::vector<QVec>& prefix,
                                         const QTensor& s) {
    auto rec = certify(s);
    if (!rec) return std::nullopt;
    for (int i = static_cast<int>(prefix.size()) - 1; i >= 0; --i)
        rcert_insert(*rec, 0, prefix[i]);
    return rec;
}

QVec scaled(const QVec& v, const mpq_class& c) {
    QVec out = v;
    for (mpq_class& x : out) x *= c;
    return out;
}

QTensor scaled_tensor(const QTensor& t, const mpq_class& c) {
    QTensor out = t;
    for (mpq_class& x : out.coords) x *= c;
    return out;
}

QTensor tensor_sub(const QTensor& a, const QTensor& b) {
    QTensor out = a;
    for (std::size_t i = 0; i < out.coords.size(); ++i)
        out.coords[i] -= b.coords[i];
    return out;
}

// tangent-branch induction over the remaining factors
std::optional<RCert> tangent_induction(std::vector<QVec> a,
                                       std::vector<QVec> ap, QTensor c,
                                       QTensor cp) {
    while (c.dims.size() >= 2) {
        if (c.is_zero()) {
            // T collapses to a product times cp
            return certify_with_prefix(a, cp);
        }
        auto step = split_mode0_q(c.coords, c.dims[0]);
        if (!step) return std::nullopt; // leading mode of C not rank one
        QVec anext = step->first;
        std::vector<int> tail(c.dims.begin() + 1, c.dims.end());
        QTensor cnext = subtensor(step->second, tail);

        QVec phi = {-anext[1], anext[0]};
        QTensor dpart = contract0(cp, phi);
        std::optional<mpq_class> coef;
        if (dpart.is_zero())
            coef = mpq_class(0);
        else
            coef = proportionality(dpart, cnext);
        if (!coef) return std::nullopt;
        QVec w(2, mpq_class(0));
        if (phi[0] != 0)
            w[0] = 1 / phi[0];
        else
            w[1] = 1 / phi[1];
        QVec apnext = scaled(w, *coef);

        QTensor restpart = tensor_sub(cp, outer_prepend(apnext, cnext));
        int p = anext[0] != 0 ? 0 : 1;
        QVec psi(2, mpq_class(0));
        psi[p] = 1 / anext[p];
        QTensor cpnext = contract0(restpart, psi);
        if (tensor_sub(restpart, outer_prepend(anext, cpnext)).is_zero() ==
            false)
            return std::nullopt;

        a.push_back(std::move(anext));
        ap.push_back(std::move(apnext));
        c = std::move(cnext);
        cp = std::move(cpnext);
    }
    RCert out;
    out.kind = RCert::Tan;
    out.base = a;
    out.base.push_back(c.coords);
    out.pert = ap;
    out.pert.push_back(cp.coords);
    return out;
}

std::optional<RCert> certify(const QTensor& t) {
    const int k = static_cast<int>(t.dims.size());
    if (t.is_zero()) return RCert{};
    if (k == 1) {
        RCert c;
        c.kind = RCert::One;
        c.p1 = {t.coords};
        return c;
    }
    for (int i = 0; i < k; ++i) {
        if (t.dims[i] != 1) continue;
        std::vector<int> sub_dims = t.dims;
        sub_dims.erase(sub_dims.begin() + i);
        auto rec = certify(subtensor(t.coords, sub_dims));
        if (!rec) return std::nullopt;
        rcert_insert(*rec, i, QVec{mpq_class(1)});
        return rec;
    }
    if (k == 2) {
        QMat m = matricize(t, {0});
        auto fm = factor_rank_one_q(t.coords, t.dims);
        if (fm) {
            RCert c;
            c.kind = RCert::One;
            c.p1 = *fm;
            return c;
        }
        RCert c;
        c.kind = RCert::Two;
        c.p1 = {{mpq_class(1), mpq_class(0)}, m[0]};
        c.p2 = {{mpq_class(0), mpq_class(1)}, m[1]};
        return c;
    }

    // k >= 3, all dims = 2: pencil analysis over the {0,1} flattening
    QMat flat = matricize(t, {0, 1});
    RankFactor rf = rank_factor(flat);
    if (rf.rank > 2) return std::nullopt;
    std::vector<int> tail(t.dims.begin() + 2, t.dims.end());

    auto as_mat = [](const QVec& v) -> QMat {
        return {{v[0], v[1]}, {v[2], v[3]}};
    };

    if (rf.rank == 1) {
        QMat m = as_mat(rf.a[0]);
        QTensor s = subtensor(rf.b[0], tail);
        auto fm = factor_rank_one_q(rf.a[0], {2, 2});
        if (fm) return certify_with_prefix({(*fm)[0], (*fm)[1]}, s);
        // M invertible: need S rank one
        auto fs = factor_rank_one_q(s.coords, s.dims);
        if (!fs) return std::nullopt;
        RCert c;
        c.kind = RCert::Two;
        c.p1 = {{mpq_class(1), mpq_class(0)}, m[0]};
        c.p2 = {{mpq_class(0), mpq_class(1)}, m[1]};
        for (const QVec& v : *fs) {
            c.p1.push_back(v);
            c.p2.push_back(v);
        }
        return c;
    }

    // rank 2: T = M (x) S1 + M' (x) S2
    QMat m1 = as_mat(rf.a[0]), m2 = as_mat(rf.a[1]);
    QTensor s1 = subtensor(rf.b[0], tail), s2 = subtensor(rf.b[1], tail);

    // find an invertible pencil member
    static const int cand[5][2] = {{1, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}};
    int c0 = 0, c1 = 0;
    bool found = false;
    for (auto& cd : cand) {
        QMat n = {{cd[0] * m1[0][0] + cd[1] * m2[0][0],
                   cd[0] * m1[0][1] + cd[1] * m2[0][1]},
                  {cd[0] * m1[1][0] + cd[1] * m2[1][0],
                   cd[0] * m1[1][1] + cd[1] * m2[1][1]}};
        if (det2(n) != 0) {
            c0 = cd[0];
            c1 = cd[1];
            found = true;
            break;
        }
    }
    if (!found) {
        // all-singular pencil: shared row or column direction
        QVec dir;
        for (const QMat* m : {&m1, &m2})
            for (int i = 0; i < 2 && dir.empty(); ++i)
                if ((*m)[i][0] != 0 || (*m)[i][1] != 0) dir = (*m)[i];
        auto rows_match = [&](const QMat& m) {
            for (int i = 0; i < 2; ++i)
                if (m[i][0] * dir[1] != m[i][1] * dir[0]) return false;
            return true;
        };
        if (rows_match(m1) && rows_match(m2)) {
            // common second-factor direction
            int j0 = dir[0] != 0 ? 0 : 1;
            std::vector<int> udims = t.dims;
            udims.erase(udims.begin() + 1);
            QTensor u = zero_tensor(udims);
            std::size_t rest = 1;
            for (int d : tail) rest *= d;
            for (int i = 0; i < 2; ++i)
                for (std::size_t c = 0; c < rest; ++c)
                    u.coords[i * rest + c] =
                        t.coords[(i * 2 + j0) * rest + c] / dir[j0];
            auto rec = certify(u);
            if (!rec) return std::nullopt;
            rcert_insert(*rec, 1, dir);
            return rec;
        }
        // common first-factor direction
        QVec col;
        for (const QMat* m : {&m1, &m2})
            for (int j = 0; j < 2 && col.empty(); ++j)
                if ((*m)[0][j] != 0 || (*m)[1][j] != 0)
                    col = {(*m)[0][j], (*m)[1][j]};
        int j0 = col[0] != 0 ? 0 : 1;
        std::vector<int> wdims(t.dims.begin() + 1, t.dims.end());
        QTensor w = zero_tensor(wdims);
        std::size_t rest = 1;
        for (int d : tail) rest *= d;
        for (int i = 0; i < 2; ++i)
            for (std::size_t c = 0; c < rest; ++c)
                w.coords[i * rest + c] =
                    t.coords[(j0 * 2 + i) * rest + c] / col[j0];
        auto rec = certify(w);
        if (!rec) return std::nullopt;
        rcert_insert(*rec, 0, col);
        return rec;
    }

    int d0 = (c0 == 1 && c1 == 0) ? 0 : 1;
    int d1 = 1 - d0;
    QMat n(2, QVec(2)), g2(2, QVec(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            n[i][j] = c0 * m1[i][j] + c1 * m2[i][j];
            g2[i][j] = d0 * m1[i][j] + d1 * m2[i][j];
        }
    // T = N (x) u + G2 (x) v
    mpq_class den = mpq_class(c0) * d1 - mpq_class(c1) * d0;
    QTensor u = zero_tensor(tail), v = zero_tensor(tail);
    for (std::size_t i = 0; i < u.coords.size(); ++i) {
        u.coords[i] = (d1 * s1.coords[i] - d0 * s2.coords[i]) / den;
        v.coords[i] = (-c1 * s1.coords[i] + c0 * s2.coords[i]) / den;
    }

    mpq_class dn = det2(n), dg = det2(g2);
    QMat sum = {{n[0][0] + g2[0][0], n[0][1] + g2[0][1]},
                {n[1][0] + g2[1][0], n[1][1] + g2[1][1]}};
    mpq_class mixed = det2(sum) - dn - dg;
    mpq_class delta = mixed * mixed - 4 * dn * dg;

    auto pencil_at = [&](const mpq_class& tval) {
        QMat r(2, QVec(2));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r[i][j] = tval * n[i][j] + g2[i][j];
        return r;
    };

    if (delta == 0) {
        // non-diagonalizable pencil: tangent branch
        mpq_class t0 = -mixed / (2 * dn);
        QMat g = pencil_at(t0);
        QVec gflat = {g[0][0], g[0][1], g[1][0], g[1][1]};
        auto fg = factor_rank_one_q(gflat, {2, 2});
        if (!fg) return std::nullopt;
        QVec g1v = (*fg)[0], g2v = (*fg)[1];
        // T = G (x) cv + N (x) cn
        QTensor cv = v;
        QTensor cn = tensor_sub(u, scaled_tensor(v, t0));
        // complete bases and express N
        QVec a1c = (g1v[0] != 0) ? QVec{mpq_class(0), mpq_class(1)}
                                 : QVec{mpq_class(1), mpq_class(0)};
        QVec a2c = (g2v[0] != 0) ? QVec{mpq_class(0), mpq_class(1)}
                                 : QVec{mpq_class(1), mpq_class(0)};
        QMat p = qmat_transpose(QMat{g1v, a1c});
        QMat q = qmat_transpose(QMat{g2v, a2c});
        QMat coef = qmat_mul(qmat_mul(inv_small(p), n),
                             qmat_transpose(inv_small(q)));
        // coef = [[alpha, beta], [gamma, delta']] with delta' = 0
        if (coef[1][1] != 0) return std::nullopt;
        mpq_class alpha = coef[0][0], beta = coef[0][1], gamma = coef[1][0];
        if (beta == 0 || gamma == 0) return std::nullopt;
        QVec a1p = scaled(a1c, gamma);
        QVec a2p = scaled(a2c, beta);
        // T = (a1' x a2 + a1 x a2') (x) C + a1 x a2 (x) C'
        QTensor cbig = cn;
        QTensor cpbig = cv;
        tensor_add(cpbig, scaled_tensor(cn, alpha));
        return tangent_induction({g1v, g2v}, {a1p, a2p}, cbig, cpbig);
    }

    mpq_class root;
    if (is_square(delta, root)) {
        mpq_class t1v = (-mixed + root) / (2 * dn);
        mpq_class t2v = (-mixed - root) / (2 * dn);
        QMat r1 = pencil_at(t1v), r2 = pencil_at(t2v);
        auto f1 = factor_rank_one_q({r1[0][0], r1[0][1], r1[1][0], r1[1][1]},
                                    {2, 2});
        auto f2 = factor_rank_one_q({r2[0][0], r2[0][1], r2[1][0], r2[1][1]},
                                    {2, 2});
        if (!f1 || !f2) return std::nullopt;
        // u = t1 U1 + t2 U2, v = U1 + U2
        QTensor u1 = zero_tensor(tail), u2 = zero_tensor(tail);
        for (std::size_t i = 0; i < u1.coords.size(); ++i) {
            u1.coords[i] = (u.coords[i] - t2v * v.coords[i]) / (t1v - t2v);
            u2.coords[i] = v.coords[i] - u1.coords[i];
        }
        auto fu1 = factor_rank_one_q(u1.coords, tail);
        auto fu2 = factor_rank_one_q(u2.coords, tail);
        if (!fu1 || !fu2) return std::nullopt;
        RCert c;
        c.kind = RCert::Two;
        c.p1 = {(*f1)[0], (*f1)[1]};
        c.p2 = {(*f2)[0], (*f2)[1]};
        for (const QVec& w : *fu1) c.p1.push_back(w);
        for (const QVec& w : *fu2) c.p2.push_back(w);
        return c;
    }

    // irrational pencil: work in Q(sqrt(delta))
    QuadField qf{delta};
    mpq_class alpha = -mixed / (2 * dn);
    mpq_class beta = mpq_class(1) / (2 * dn);
    std::vector<QuadExt> r1(4);
    QVec nflat = {n[0][0], n[0][1], n[1][0], n[1][1]};
    QVec gflat = {g2[0][0], g2[0][1], g2[1][0], g2[1][1]};
    for (int i = 0; i < 4; ++i)
        r1[i] = QuadExt(alpha * nflat[i] + gflat[i], beta * nflat[i]);
    auto fr = factor_rank_one_qe(r1, {2, 2}, qf);
    if (!fr) return std::nullopt;
    // U = p + q sqrt(delta), p = v/2, q = (u/2 - alpha p) / (beta delta)
    std::vector<QuadExt> uq(u.coords.size());
    for (std::size_t i = 0; i < u.coords.size(); ++i) {
        mpq_class pp = v.coords[i] / 2;
        mpq_class qq = (u.coords[i] / 2 - alpha * pp) / (beta * delta);
        uq[i] = QuadExt(pp, qq);
    }
    auto fu = factor_rank_one_qe(uq, tail, qf);
    if (!fu) return std::nullopt;
    RCert c;
    c.kind = RCert::Two;
    c.disc = delta;
    auto push_pair = [&](const std::vector<QuadExt>& vec) {
        QVec ra(vec.size()), rb(vec.size());
        for (std::size_t i = 0; i < vec.size(); ++i) {
            ra[i] = vec[i].a;
            rb[i] = vec[i].b;
        }
        c.p1.push_back(ra);
        c.p1s.push_back(rb);
        c.p2.push_back(ra);
        QVec nb = rb;
        for (mpq_class& x : nb) x = -x;
        c.p2s.push_back(nb);
    };
    push_pair((*fr)[0]);
    push_pair((*fr)[1]);
    for (const auto& w : *fu) push_pair(w);
    return c;
}

// ---- witness search ----

std::optional<Sigma2Certificate> witness_search(const QTensor& t, int order) {
    const int k = static_cast<int>(t.dims.size());
    for (int mask = 1; mask < (1 << (k - 1)); ++mask) {
        std::vector<int> split = {0};
        for (int f = 1; f < k; ++f)
            if (mask & (1 << (f - 1))) split.push_back(f);
        if (static_cast<int>(split.size()) == k) continue;
        QMat m = matricize(t, split);
        if (m.size() < static_cast<std::size_t>(order) ||
            m[0].size() < static_cast<std::size_t>(order))
            continue;
        std::vector<int> rows = independent_rows(m, order);
        if (static_cast<int>(rows.size()) < order) continue;
        QMat sub(order);
        for (int i = 0; i < order; ++i) sub[i] = m[rows[i]];
        std::vector<int> cols = independent_rows(qmat_transpose(sub), order);
        QMat minor(order, QVec(order));
        for (int i = 0; i < order; ++i)
            for (int j = 0; j < order; ++j) minor[i][j] = sub[i][cols[j]];
        mpq_class det = minor[0][0] * (minor[1][1] * minor[2][2] -
                                       minor[1][2] * minor[2][1]) -
                        minor[0][1] * (minor[1][0] * minor[2][2] -
                                       minor[1][2] * minor[2][0]) +
                        minor[0][2] * (minor[1][0] * minor[2][1] -
                                       minor[1][1] * minor[2][0]);
        if (det == 0) continue;
        Sigma2Certificate cert;
        cert.kind = Sigma2Certificate::Kind::Witness;
        cert.split = split;
        cert.rows = {rows[0], rows[1], rows[2]};
        cert.cols = {cols[0], cols[1], cols[2]};
        cert.minor_value = det;
        return cert;
    }
    return std::nullopt;
}

QMat mode_map_inverse(const QMat& basis_cols) {
    // basis_cols: r vectors of length dim (independent); returns the r x dim
    // map sending a vector in their span to its coordinates
    std::size_t r = basis_cols.size();
    std::size_t dim = basis_cols[0].size();
    QMat cols = qmat_transpose(basis_cols); // dim x r
    std::vector<int> piv = independent_rows(cols, r);
    QMat block(r, QVec(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) block[i][j] = cols[piv[i]][j];
    QMat inv = inv_small(block);
    QMat out(r, QVec(dim, mpq_class(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) out[i][piv[j]] = inv[i][j];
    return out;
}

QTensor mode_apply(const QTensor& t, int mode, const QMat& map) {
    std::vector<int> out_dims = t.dims;
    out_dims[mode] = static_cast<int>(map.size());
    QTensor out = zero_tensor(out_dims);
    std::size_t inner = 1;
    for (std::size_t f = mode + 1; f < t.dims.size(); ++f) inner *= t.dims[f];
    std::size_t outer_cnt = t.coords.size() / (inner * t.dims[mode]);
    std::size_t out_block = inner * map.size();
    std::size_t in_block = inner * t.dims[mode];
    for (std::size_t o = 0; o < outer_cnt; ++o)
        for (std::size_t ni = 0; ni < map.size(); ++ni)
            for (std::size_t j = 0; j < static_cast<std::size_t>(t.dims[mode]);
                 ++j) {
                if (map[ni][j] == 0) continue;
                for (std::size_t c = 0; c < inner; ++c)
                    out.coords[o * out_block + ni * inner + c] +=
                        map[ni][j] * t.coords[o * in_block + j * inner + c];
            }
    return out;
}

QVec apply_q(const QMat& cols, const QVec& x) {
    // cols: list of basis vectors; returns sum x_i * cols[i]
    QVec out(cols[0].size(), mpq_class(0));
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] += x[i] * cols[i][j];
    return out;
}

} // namespace

Sigma2Certificate gss_sigma2_test(const QTensor& t) {
    const int k = static_cast<int>(t.dims.size());
    if (k < 3) throw std::invalid_argument("gss_sigma2_test: need k >= 3");
    Sigma2Certificate cert;
    if (t.is_zero()) {
        cert.kind = Sigma2Certificate::Kind::RankOne;
        cert.degenerate = true;
        for (int d : t.dims) cert.point1.push_back(QVec(d, mpq_class(0)));
        return cert;
    }

    // reduce each factor to the image of its flattening
    QTensor red = t;
    std::vector<QMat> bases(k); // per factor, list of basis vectors
    for (int i = 0; i < k; ++i) {
        QMat flat = matricize(red, {i});
        QMat cols = qmat_transpose(flat);
        std::vector<int> piv = independent_rows(cols, 3);
        if (piv.size() >= 3) {
            auto w = witness_search(t, 3);
            if (!w) throw std::logic_error("gss: missing witness");
            return *w;
        }
        for (int c : piv) bases[i].push_back(cols[c]);
        red = mode_apply(red, i, mode_map_inverse(bases[i]));
    }

    auto rc = certify(red);
    if (!rc) {
        auto w = witness_search(t, 3);
        if (!w) throw std::logic_error("gss: certification failed without "
                                       "witness");
        return *w;
    }

    auto map_back = [&](const std::vector<QVec>& vecs) {
        std::vector<QVec> out;
        for (int i = 0; i < k; ++i) out.push_back(apply_q(bases[i], vecs[i]));
        return out;
    };

    switch (rc->kind) {
    case RCert::Zero:
        throw std::logic_error("gss: nonzero tensor reduced to zero");
    case RCert::One:
        cert.kind = Sigma2Certificate::Kind::RankOne;
        cert.point1 = map_back(rc->p1);
        break;
    case RCert::Two:
        cert.kind = Sigma2Certificate::Kind::RankTwo;
        cert.disc = rc->disc;
        cert.point1 = map_back(rc->p1);
        cert.point2 = map_back(rc->p2);
        if (rc->disc != 0) {
            cert.point1_surd = map_back(rc->p1s);
            cert.point2_surd = map_back(rc->p2s);
        }
        break;
    case RCert::Tan:
        cert.kind = Sigma2Certificate::Kind::Tangent;
        cert.base = map_back(rc->base);
        cert.perturbation = map_back(rc->pert);
        break;
    }
    if (!verify_certificate(cert, t))
        throw std::logic_error("gss: certificate reconstruction mismatch");
    return cert;
}

namespace {

// outer product over Q(sqrt(D)); returns rational and surd coordinate parts
std::pair<QVec, QVec> outer_surd(const std::vector<QVec>& rat,
                                 const std::vector<QVec>& surd,
                                 const mpq_class& d) {
    QVec a = {mpq_class(1)}, b = {mpq_class(0)};
    for (std::size_t f = 0; f < rat.size(); ++f) {
        std::size_t n = rat[f].size();
        QVec na(a.size() * n), nb(a.size() * n);
        const QVec& u = rat[f];
        const QVec* s = surd.empty() ? nullptr : &surd[f];
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class sv = s ? (*s)[j] : mpq_class(0);
                na[i * n + j] = a[i] * u[j] + d * b[i] * sv;
                nb[i * n + j] = a[i] * sv + b[i] * u[j];
            }
        a = std::move(na);
        b = std::move(nb);
    }
    return {a, b};
}

} // namespace

bool verify_certificate(const Sigma2Certificate& cert, const QTensor& t) {
    using Kind = Sigma2Certificate::Kind;
    switch (cert.kind) {
    case Kind::RankOne: {
        QTensor rec = outer(cert.point1);
        if (rec.dims != t.dims) return false;
        return rec.coords == t.coords;
    }
    case Kind::RankTwo: {
        auto [a1, b1] = outer_surd(cert.point1, cert.point1_surd, cert.disc);
        auto [a2, b2] = outer_surd(cert.point2, cert.point2_surd, cert.disc);
        for (std::size_t i = 0; i < a1.size(); ++i) {
            if (b1[i] + b2[i] != 0) return false;
            if (a1[i] + a2[i] != t.coords[i]) return false;
        }
        return true;
    }
    case Kind::Tangent: {
        QTensor rec = zero_tensor(t.dims);
        for (std::size_t i = 0; i < cert.base.size(); ++i) {
            std::vector<QVec> term = cert.base;
            term[i] = cert.perturbation[i];
            tensor_add(rec, outer(term));
        }
        return rec.coords == t.coords;
    }
    case Kind::Witness: {
        QMat m = matricize(t, cert.split);
        QMat minor(3, QVec(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                minor[i][j] = m[cert.rows[i]][cert.cols[j]];
        mpq_class det =
            minor[0][0] *
                (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1]) -
            minor[0][1] *
                (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0]) +
            minor[0][2] *
                (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
        return det != 0 && det == cert.minor_value;
    }
    }
    return false;
}

std::size_t minor_span_dimension(const std::vector<int>& dims, int r) {
    const int k = static_cast<int>(dims.size());
    std::size_t ambient = 1;
    for (int d : dims) ambient *= d;
    if (ambient > 1000)
        throw std::length_error("minor_span_dimension: ambient dim > 10^3");
    const int order = r + 1;
    MonomialBasis basis(static_cast<int>(ambient), order);
    if (basis.size() > 500000)
        throw std::length_error("minor_span_dimension: monomial basis guard");

    std::vector<std::size_t> stride(k);
    std::size_t s = 1;
    for (int f = k - 1; f >= 0; --f) {
        stride[f] = s;
        s *= dims[f];
    }

    auto primes = default_primes(2);
    std::size_t result = 0;
    for (std::size_t pi = 0; pi < primes.size(); ++pi) {
        PrimeField f(primes[pi]);
        RowEchelon ech(f, basis.size());

        for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
            std::vector<int> rside = {0}, cside;
            for (int fa = 1; fa < k; ++fa)
                if (mask & (1 << (fa - 1)))
                    rside.push_back(fa);
                else
                    cside.push_back(fa);
            if (cside.empty()) continue;
            std::size_t nrows = 1, ncols = 1;
            for (int fa : rside) nrows *= dims[fa];
            for (int fa : cside) ncols *= dims[fa];
            if (nrows < static_cast<std::size_t>(order) ||
                ncols < static_cast<std::size_t>(order))
                continue;

            auto unrank = [&](std::size_t idx, const std::vector<int>& side) {
                std::size_t off = 0;
                for (int p = static_cast<int>(side.size()) - 1; p >= 0; --p) {
                    int fa = side[p];
                    off += (idx % dims[fa]) * stride[fa];
                    idx /= dims[fa];
                }
                return off;
            };

            std::vector<int> rows(order), cols(order);
            std::iota(rows.begin(), rows.end(), 0);
            auto next_comb = [](std::vector<int>& c, std::size_t n) {
                int i = static_cast<int>(c.size()) - 1;
                while (i >= 0 &&
                       c[i] == static_cast<int>(n) -
                                   (static_cast<int>(c.size()) - i))
                    --i;
                if (i < 0) return false;
                ++c[i];
                for (std::size_t j = i + 1; j < c.size(); ++j)
                    c[j] = c[j - 1] + 1;
                return true;
            };

            std::vector<int> perm(order);
            do {
                std::vector<std::size_t> row_off(order), col_off(order);
                for (int i = 0; i < order; ++i)
                    row_off[i] = unrank(rows[i], rside);
                std::iota(cols.begin(), cols.end(), 0);
                do {
                    for (int j = 0; j < order; ++j)
                        col_off[j] = unrank(cols[j], cside);
                    FpVec coeffs(basis.size(), 0);
                    std::iota(perm.begin(), perm.end(), 0);
                    // permutation expansion of the determinant
                    std::vector<int> expo(static_cast<int>(ambient));
                    do {
                        int sign = 1;
                        for (int i = 0; i < order; ++i)
                            for (int j = i + 1; j < order; ++j)
                                if (perm[i] > perm[j]) sign = -sign;
                        std::fill(expo.begin(), expo.end(), 0);
                        for (int i = 0; i < order; ++i)
                            expo[row_off[i] + col_off[perm[i]]] += 1;
                        std::size_t idx = basis.index(expo);
                        coeffs[idx] = f.add(
                            coeffs[idx],
                            sign > 0 ? 1 : f.prime() - 1);
                    } while (std::next_permutation(perm.begin(), perm.end()));
                    ech.absorb(std::move(coeffs));
                } while (next_comb(cols, ncols));
            } while (next_comb(rows, nrows));
        }
        if (pi == 0)
            result = ech.rank();
        else if (ech.rank() != result)
            throw std::logic_error("minor_span_dimension: prime disagreement");
    }
    return result;
}

} // namespace ssv
