#include "hochkit/s1.hpp"

#include "hochkit/keyed.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace hochkit::s1 {

using lin::Matrix;
using lin::SparseMap;
using lin::SparseVec;

Matrix S1Complex::delta(int j, int d) const
{
    if (j >= 0 && j < static_cast<int>(deltas.size())) return deltas[j].block(d);
    return Matrix(space.dim(d + 1 - 2 * j), space.dim(d), field);
}

S1Complex make_s1(const lin::GradedSpace& space, std::vector<std::map<int, Matrix>> deltas, Field f)
{
    S1Complex p;
    p.space = space;
    p.field = f;
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        SparseMap m(space, space, 1 - 2 * static_cast<int>(j), f);
        for (auto& [d, b] : deltas[j])
            if (b.rows() && b.cols()) m.set_block(d, std::move(b));
        p.deltas.push_back(std::move(m));
    }
    p.strict = p.deltas.size() <= 2;
    return p;
}

AxiomReport verify_axioms(const S1Complex& p)
{
    AxiomReport r;
    int J = p.J();
    int K = p.complete ? 2 * J : J;
    if (p.strict) K = std::max(K, 2);
    for (int k = 0; k <= K; ++k) {
        bool ok = true;
        for (int d : p.space.degrees()) {
            Matrix sum(p.space.dim(d + 2 - 2 * k), p.space.dim(d), p.field);
            for (int j = 0; j <= k; ++j) sum = sum + p.delta(j, d + 1 - 2 * (k - j)) * p.delta(k - j, d);
            ok = ok && sum.is_zero();
        }
        r.relation[k] = ok;
        r.pass = r.pass && ok;
    }
    for (int k = K + 1; k <= 2 * J; ++k) r.skipped.push_back(k);
    return r;
}

namespace {

Matrix component_block(const std::vector<SparseMap>& f, int i, int d, int rows, int cols, Field fld)
{
    if (i < 0 || i >= static_cast<int>(f.size())) return Matrix(rows, cols, fld);
    return f[i].block(d);
}

}  // namespace

PreMorphism premorphism_boundary(const PreMorphism& f)
{
    const S1Complex& P = f.source;
    const S1Complex& Q = f.target;
    PreMorphism out{P, Q, f.degree + 1, {}};
    int n = static_cast<int>(f.components.size());
    int top = n - 1 + std::max(P.J(), Q.J());
    Scalar sign = sign_scalar(f.degree, P.field);
    for (int s = 0; s <= top; ++s) {
        int shift = f.degree + 1 - 2 * s;
        SparseMap m(P.space, Q.space, shift, P.field);
        for (int d : P.space.degrees()) {
            Matrix acc(Q.space.dim(d + shift), P.space.dim(d), P.field);
            for (int i = 0; i <= s && i < n; ++i) {
                int mid = d + 1 - 2 * (s - i);
                acc = acc + component_block(f.components, i, mid, Q.space.dim(d + shift), P.space.dim(mid), P.field) *
                                P.delta(s - i, d);
            }
            for (int j = 0; j <= s && j < n; ++j) {
                int mid = d + f.degree - 2 * j;
                acc = acc - (Q.delta(s - j, mid) *
                             component_block(f.components, j, d, Q.space.dim(mid), P.space.dim(d), P.field))
                                .scaled(sign);
            }
            if (!acc.is_zero()) m.set_block(d, std::move(acc));
        }
        out.components.push_back(std::move(m));
    }
    return out;
}

PreMorphism identity_premorphism(const S1Complex& p)
{
    SparseMap id(p.space, p.space, 0, p.field);
    for (int d : p.space.degrees()) id.set_block(d, Matrix::identity(p.space.dim(d), p.field));
    return PreMorphism{p, p, 0, {id}};
}

namespace {

int max_degree(const lin::GradedSpace& s)
{
    auto ds = s.degrees();
    return ds.empty() ? 0 : ds.back();
}

int min_degree(const lin::GradedSpace& s)
{
    auto ds = s.degrees();
    return ds.empty() ? 0 : ds.front();
}

}  // namespace

lin::BoundedComplex derived_tensor(const S1Complex& q, const S1Complex& p, int D)
{
    using K = std::tuple<int, int, int, int, int>;  // (|q|, q index, t-power, |p|, p index)
    KeyedBasis<K> basis;
    for (int dq : q.space.degrees())
        for (int iq = 0; iq < q.space.dim(dq); ++iq)
            for (int t = 0; t <= D; ++t)
                for (int dp : p.space.degrees())
                    for (int ip = 0; ip < p.space.dim(dp); ++ip) basis.add({dq, iq, t, dp, ip}, dq - 2 * t + dp);
    Field f = p.field;
    auto op = [&](const K& k) {
        auto [dq, iq, t, dp, ip] = k;
        std::map<K, Scalar> out;
        Scalar sp = sign_scalar(dp, f);
        for (int i = 0; i <= t; ++i) {
            SparseVec eq{{iq, Scalar(1, f)}}, ep{{ip, Scalar(1, f)}};
            for (const auto& [r, v] : q.delta(i, dq).apply(eq)) add_to(out, K{dq + 1 - 2 * i, r, t - i, dp, ip}, v * sp);
            for (const auto& [r, v] : p.delta(i, dp).apply(ep)) add_to(out, K{dq, iq, t - i, dp + 1 - 2 * i, r}, v);
        }
        return out;
    };
    auto degs = basis.degrees();
    std::map<int, Matrix> d;
    for (int k : degs) d[k] = basis.block(k, 1, f, op, false);
    auto space = basis.space([&](const K& k) {
        auto [dq, iq, t, dp, ip] = k;
        return q.space.labels(dq)[iq] + "(x)t^" + std::to_string(t) + "(x)" + p.space.labels(dp)[ip];
    });
    int lo = degs.empty() ? 0 : degs.front(), hi = degs.empty() ? 0 : degs.back();
    auto c = lin::make_complex(space, d, lo, hi, f);
    c.lo_cut = c.hi_cut = false;
    int missing = max_degree(q.space) + max_degree(p.space) - 2 * (D + 1);
    for (int m = lo; m <= std::min(hi, missing + 1); ++m) c.incomplete.insert(m);
    return c;
}

std::string mode_name(UMode m)
{
    switch (m) {
    case UMode::Orbits: return "orbits";
    case UMode::Fixed: return "fixed";
    case UMode::Tate: return "tate";
    }
    return "?";
}

std::string u_label(const std::string& base, int exponent)
{
    return exponent == 0 ? base : base + " u^" + std::to_string(exponent);
}

namespace {

using UKey = std::tuple<int, int, int>;  // (|v|, v index, exponent)

struct UModel {
    KeyedBasis<UKey> basis;
    lin::BoundedComplex complex;
};

UModel build_u(const S1Complex& p, int U, int lo, int hi, UMode mode)
{
    if (U < 1) throw std::invalid_argument("u-order must be at least 1");
    int emin = mode == UMode::Fixed ? 0 : -(U - 1);
    int emax = mode == UMode::Orbits ? 0 : U - 1;
    UModel um;
    for (int e = emin; e <= emax; ++e)
        for (int dv : p.space.degrees())
            for (int i = 0; i < p.space.dim(dv); ++i) {
                int deg = dv + 2 * e;
                if (deg >= lo - 1 && deg <= hi + 1) um.basis.add({dv, i, e}, deg);
            }
    auto op = [&](const UKey& k) {
        auto [dv, i, e] = k;
        std::map<UKey, Scalar> out;
        SparseVec ev{{i, Scalar(1, p.field)}};
        for (int j = 0; j <= p.J() && e + j <= emax; ++j)
            for (const auto& [r, v] : p.delta(j, dv).apply(ev)) add_to(out, UKey{dv + 1 - 2 * j, r, e + j}, v);
        return out;
    };
    std::map<int, Matrix> d;
    for (int k = lo - 1; k <= hi; ++k) d[k] = um.basis.block(k, 1, p.field, op, false);
    auto space = um.basis.space([&](const UKey& k) {
        auto [dv, i, e] = k;
        return u_label(p.space.labels(dv)[i], e);
    });
    um.complex = lin::make_complex(space, d, lo, hi, p.field);
    um.complex.lo_cut = um.complex.hi_cut = false;
    return um;
}

}  // namespace

lin::BoundedComplex u_model(const S1Complex& p, int U, int lo, int hi, UMode mode)
{
    return build_u(p, U, lo, hi, mode).complex;
}

S1Complex diagonal(const S1Complex& p, const S1Complex& q)
{
    using K = std::tuple<int, int, int, int>;
    KeyedBasis<K> basis;
    for (int dp : p.space.degrees())
        for (int ip = 0; ip < p.space.dim(dp); ++ip)
            for (int dq : q.space.degrees())
                for (int iq = 0; iq < q.space.dim(dq); ++iq) basis.add({dp, ip, dq, iq}, dp + dq);
    Field f = p.field;
    int J = std::max(p.J(), q.J());
    std::vector<std::map<int, Matrix>> deltas(J + 1);
    for (int k = 0; k <= J; ++k) {
        auto op = [&](const K& key) {
            auto [dp, ip, dq, iq] = key;
            std::map<K, Scalar> out;
            SparseVec ep{{ip, Scalar(1, f)}}, eq{{iq, Scalar(1, f)}};
            Scalar sq = sign_scalar(dq, f);
            for (const auto& [r, v] : p.delta(k, dp).apply(ep)) add_to(out, K{dp + 1 - 2 * k, r, dq, iq}, v * sq);
            for (const auto& [r, v] : q.delta(k, dq).apply(eq)) add_to(out, K{dp, ip, dq + 1 - 2 * k, r}, v);
            return out;
        };
        for (int d : basis.degrees()) deltas[k][d] = basis.block(d, 1 - 2 * k, f, op, false);
    }
    auto space = basis.space([&](const K& key) {
        auto [dp, ip, dq, iq] = key;
        return p.space.labels(dp)[ip] + "(x)" + q.space.labels(dq)[iq];
    });
    S1Complex out = make_s1(space, std::move(deltas), f);
    out.strict = p.strict && q.strict;
    out.complete = p.complete && q.complete;
    return out;
}

S1Complex trivial(int r, Field f)
{
    lin::GradedSpace s;
    for (int i = 0; i < r; ++i) s.add(0, "k" + std::to_string(i));
    S1Complex p = make_s1(s, {{}}, f);
    p.strict = p.complete = true;
    return p;
}

namespace {

// Random invertible matrix: lower unitriangular times a diagonal of nonzero entries.
Matrix random_invertible(std::mt19937& rng, int n)
{
    std::uniform_int_distribution<int> entry(-2, 2), diag(1, 3);
    std::vector<std::vector<long>> rows(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) {
        rows[i][i] = diag(rng) * (rng() % 2 ? 1 : -1);
        for (int j = 0; j < i; ++j) rows[i][j] = entry(rng);
    }
    return Matrix::from_rows(rows);
}

Matrix inverse(const Matrix& m)
{
    lin::Reduction r(m);
    Matrix inv(m.cols(), m.rows(), m.field());
    for (int i = 0; i < m.rows(); ++i) {
        auto x = r.solve(SparseVec{{i, Scalar(1, m.field())}});
        if (!x) throw std::logic_error("matrix is not invertible");
        inv.set_col(i, *x);
    }
    return inv;
}

SparseMap zero_map(const lin::GradedSpace& s, int shift, Field f) { return SparseMap(s, s, shift, f); }

}  // namespace

S1Complex random_complex(std::mt19937& rng, int max_dim_per_degree, bool gauge)
{
    // Cells: 0 = trivial, 1 = free (delta_1 x = y, |y| = |x| - 1), 2 = acyclic (delta_0 x = y, |y| = |x| + 1).
    std::vector<int> count(9, 0);  // degrees -4..4
    struct Cell {
        int type, deg;
    };
    std::vector<Cell> cells;
    std::uniform_int_distribution<int> kind(0, 2), deg(-3, 3);
    int n_cells = 1 + static_cast<int>(rng() % (2 * std::max(1, max_dim_per_degree)));
    for (int c = 0; c < n_cells; ++c) {
        Cell cell{kind(rng), deg(rng)};
        int need_a = cell.deg + 4;
        int need_b = cell.type == 1 ? need_a - 1 : need_a + 1;
        if (count[need_a] >= max_dim_per_degree) continue;
        if (cell.type != 0 && count[need_b] >= max_dim_per_degree) continue;
        count[need_a]++;
        if (cell.type != 0) count[need_b]++;
        cells.push_back(cell);
    }
    lin::GradedSpace space;
    std::vector<int> next(9, 0);
    std::vector<std::tuple<int, int, int, int, int>> arrows;  // (j, src deg, src idx, tgt deg, tgt idx)
    auto fresh = [&](int d) {
        int i = next[d + 4]++;
        space.add(d, "g" + std::to_string(d < 0 ? -d : d) + (d < 0 ? "m" : "p") + std::to_string(i));
        return i;
    };
    for (const auto& c : cells) {
        int x = fresh(c.deg);
        if (c.type == 1) arrows.emplace_back(1, c.deg, x, c.deg - 1, fresh(c.deg - 1));
        if (c.type == 2) arrows.emplace_back(0, c.deg, x, c.deg + 1, fresh(c.deg + 1));
    }
    Field f = Field::Q;
    std::vector<SparseMap> base{zero_map(space, 1, f), zero_map(space, -1, f)};
    for (auto [j, sd, si, td, ti] : arrows) base[j].add(sd, ti, si, Scalar(1, f));

    SparseMap g(space, space, 0, f), ginv(space, space, 0, f);
    for (int d : space.degrees()) {
        Matrix m = random_invertible(rng, space.dim(d));
        ginv.set_block(d, inverse(m));
        g.set_block(d, std::move(m));
    }
    std::vector<SparseMap> conj;
    for (const auto& dj : base) conj.push_back(g.compose(dj).compose(ginv));

    S1Complex p;
    p.space = space;
    p.field = f;
    p.complete = true;
    if (!gauge) {
        p.deltas = std::move(conj);
        p.strict = true;
        return p;
    }
    // Twist by G = 1 + g_1 u + g_2 u^2 with g_j of degree -2j.
    int span = max_degree(space) - min_degree(space);
    int N = span / 2 + 3;
    std::vector<SparseMap> G{zero_map(space, 0, f)}, H{zero_map(space, 0, f)};
    for (int d : space.degrees()) {
        G[0].set_block(d, Matrix::identity(space.dim(d), f));
        H[0].set_block(d, Matrix::identity(space.dim(d), f));
    }
    std::uniform_int_distribution<int> entry(-1, 1);
    for (int j = 1; j <= 2; ++j) {
        SparseMap gj = zero_map(space, -2 * j, f);
        for (int d : space.degrees())
            for (int r = 0; r < space.dim(d - 2 * j); ++r)
                for (int c = 0; c < space.dim(d); ++c)
                    if (int v = entry(rng)) gj.add(d, r, c, Scalar(v, f));
        G.push_back(std::move(gj));
    }
    for (int j = 1; j <= N; ++j) {
        SparseMap hj = zero_map(space, -2 * j, f);
        for (int i = 1; i <= j && i < static_cast<int>(G.size()); ++i) hj = hj + G[i].compose(H[j - i]).scaled(Scalar(-1, f));
        H.push_back(std::move(hj));
    }
    for (int k = 0; k <= N; ++k) {
        SparseMap dk = zero_map(space, 1 - 2 * k, f);
        for (int a = 0; a < static_cast<int>(G.size()) && a <= k; ++a)
            for (int b = 0; b < static_cast<int>(conj.size()) && a + b <= k; ++b)
                dk = dk + G[a].compose(conj[b]).compose(H[k - a - b]);
        p.deltas.push_back(std::move(dk));
    }
    while (p.deltas.size() > 1 && p.deltas.back().is_zero()) p.deltas.pop_back();
    p.strict = p.deltas.size() <= 2;
    return p;
}

namespace {

lin::HomologyBasis homology_at(const lin::BoundedComplex& c, int k)
{
    return lin::HomologyBasis(c.d(k - 1), c.d(k), c.space.dim(k));
}

Matrix induced(const std::function<SparseVec(const SparseVec&)>& f, const lin::HomologyBasis& src,
               const lin::HomologyBasis& tgt, Field fld)
{
    Matrix m(tgt.dim(), src.dim(), fld);
    for (int j = 0; j < src.dim(); ++j) {
        auto co = tgt.coords(f(src.reps()[j]));
        for (int i = 0; i < tgt.dim(); ++i)
            if (!co[i].is_zero()) m.add(i, j, co[i]);
    }
    return m;
}

LesNode node(const std::string& group, int degree, int dim, const Matrix& in, const Matrix& out)
{
    LesNode n;
    n.group = group;
    n.degree = degree;
    n.dim = dim;
    n.rank_in = lin::rank(in);
    n.rank_out = lin::rank(out);
    n.composite_zero = (out * in).is_zero();
    n.exact = n.composite_zero && n.rank_in == dim - n.rank_out;
    return n;
}

}  // namespace

LesReport les_report(const LesInputs& in, int lo, int hi)
{
    LesReport r;
    r.lo = lo;
    r.hi = hi;
    Field f = in.P.field();
    std::map<int, lin::HomologyBasis> hp, ho, ho1;
    for (int m = lo; m <= hi + 1; ++m) hp.emplace(m, homology_at(in.P, m));
    for (int m = lo; m <= hi; ++m) {
        ho.emplace(m, homology_at(in.O, m));
        ho1.emplace(m + 2, homology_at(in.O1, m + 2));
    }
    for (int m = lo; m <= hi; ++m) {
        r.I[m] = induced([&](const SparseVec& v) { return in.inclusion(m, v); }, hp.at(m), ho.at(m), f);
        r.S[m] = induced([&](const SparseVec& v) { return in.projection(m, v); }, ho.at(m), ho1.at(m + 2), f);
        r.B[m] = induced([&](const SparseVec& v) { return in.connecting(m, v); }, ho1.at(m + 2), hp.at(m + 1), f);
        r.rank_I[m] = lin::rank(r.I[m]);
        r.rank_S[m] = lin::rank(r.S[m]);
        r.rank_B[m] = lin::rank(r.B[m]);
    }
    for (int m = lo; m <= hi; ++m) {
        if (m > lo) r.nodes.push_back(node("P", m, hp.at(m).dim(), r.B[m - 1], r.I[m]));
        r.nodes.push_back(node("U", m, ho.at(m).dim(), r.I[m], r.S[m]));
        r.nodes.push_back(node("U-1", m + 2, ho1.at(m + 2).dim(), r.S[m], r.B[m]));
    }
    for (auto& n : r.nodes) {
        n.reliable = in.reliable(n.group, n.degree);
        if (n.reliable) r.exact = r.exact && n.exact;
    }
    return r;
}

namespace {

struct GysinData {
    UModel O, O1;
    lin::BoundedComplex P;
};

lin::BoundedComplex delta0_complex(const S1Complex& p, int lo, int hi)
{
    std::map<int, Matrix> d;
    for (int k = lo - 1; k <= hi; ++k) d[k] = p.delta(0, k);
    auto c = lin::make_complex(p.space, d, lo, hi, p.field);
    c.lo_cut = c.hi_cut = false;
    return c;
}

SparseVec include_u0(const S1Complex& p, const UModel& O, int m, const SparseVec& v)
{
    std::map<UKey, Scalar> e;
    for (const auto& [i, c] : v) e.emplace(UKey{m, i, 0}, c);
    (void)p;
    return O.basis.vec(e);
}

SparseVec shift_down(const UModel& O, const UModel& O1, int m, const SparseVec& v)
{
    std::map<UKey, Scalar> e;
    for (const auto& [k, c] : O.basis.elem(m, v)) {
        auto [dv, i, ex] = k;
        if (ex < 0) e.emplace(UKey{dv, i, ex + 1}, c);
    }
    return O1.basis.vec(e);
}

Matrix matrix_of(const std::function<SparseVec(const SparseVec&)>& f, int rows, int cols, Field fld)
{
    Matrix m(rows, cols, fld);
    for (int j = 0; j < cols; ++j) m.set_col(j, f(SparseVec{{j, Scalar(1, fld)}}));
    return m;
}

SparseVec snake(const S1Complex& p, const GysinData& g, int m, const SparseVec& z)
{
    Field f = p.field;
    Matrix S = matrix_of([&](const SparseVec& v) { return shift_down(g.O, g.O1, m, v); }, g.O1.basis.dim(m + 2),
                         g.O.basis.dim(m), f);
    auto y = lin::Reduction(S).solve(z);
    if (!y) throw std::logic_error("projection is not surjective");
    SparseVec dy = g.O.complex.d(m).apply(*y);
    Matrix iota = matrix_of([&](const SparseVec& v) { return include_u0(p, g.O, m + 1, v); }, g.O.basis.dim(m + 1),
                            p.space.dim(m + 1), f);
    auto x = lin::Reduction(iota).solve(dy);
    if (!x) throw std::invalid_argument("input is not a cycle of the quotient");
    return *x;
}

}  // namespace

LesReport gysin_check(const S1Complex& p, int U, int lo, int hi)
{
    if (U < 2) throw std::invalid_argument("Gysin sequence needs u-order at least 2");
    GysinData g{build_u(p, U, lo, hi + 1, UMode::Orbits), build_u(p, U - 1, lo + 2, hi + 2, UMode::Orbits),
                delta0_complex(p, lo, hi + 1)};
    LesInputs in;
    in.P = g.P;
    in.O = g.O.complex;
    in.O1 = g.O1.complex;
    in.inclusion = [&](int m, const SparseVec& v) { return include_u0(p, g.O, m, v); };
    in.projection = [&](int m, const SparseVec& v) { return shift_down(g.O, g.O1, m, v); };
    in.connecting = [&](int m, const SparseVec& v) { return snake(p, g, m, v); };
    return les_report(in, lo, hi);
}

SparseVec snake_connecting(const S1Complex& p, int U, int m, const SparseVec& z)
{
    GysinData g{build_u(p, U, m, m + 1, UMode::Orbits), build_u(p, U - 1, m + 2, m + 2, UMode::Orbits),
                delta0_complex(p, m, m + 1)};
    return snake(p, g, m, z);
}

SparseVec marking_formula(const S1Complex& p, int m, const std::vector<SparseVec>& beta)
{
    int K = static_cast<int>(beta.size());
    for (int l = 0; l < K; ++l) {
        SparseVec acc;
        for (int k = l; k < K; ++k) lin::axpy(acc, Scalar(1, p.field), p.delta(k - l, m + 2 * k).apply(beta[k]));
        if (!acc.empty()) throw std::invalid_argument("beta is not an equivariant cocycle");
    }
    SparseVec out;
    for (int k = 0; k < K; ++k) lin::axpy(out, Scalar(1, p.field), p.delta(k + 1, m + 2 * k).apply(beta[k]));
    if (!p.delta(0, m - 1).apply(out).empty()) throw std::logic_error("marking chain is not closed");
    return out;
}

}  // namespace hochkit::s1
