#include "hochkit/koszul.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>

namespace hochkit::ksz {

using alg::Combo;
using alg::FiniteAlgebra;
using alg::Word;

namespace {

int rd(const FiniteAlgebra& a, int i) { return a.basis[i].degree - 1; }

int bar_degree(const FiniteAlgebra& a, const hoch::Tensor& w)
{
    int d = 0;
    for (int x : w) d += rd(a, x);
    return d;
}

// Largest reduced degree in the ideal, or nothing when the ideal is zero.
std::optional<int> top_reduced_degree(const AugmentedAlgebra& a)
{
    std::optional<int> m;
    for (int i : a.ideal) m = std::max(m.value_or(INT_MIN), rd(a.algebra, i));
    return m;
}

// Every bar degree >= the returned value is complete at this length bound.
std::optional<int> complete_from(const AugmentedAlgebra& a, int B)
{
    auto m = top_reduced_degree(a);
    if (!m) return INT_MIN;
    if (*m >= 0) return std::nullopt;
    return -B;
}

std::vector<hoch::Tensor> ideal_words(const AugmentedAlgebra& a, int B, int min_degree)
{
    const auto& alg = a.algebra;
    int slack = std::max(0, top_reduced_degree(a).value_or(0));
    std::vector<hoch::Tensor> out;
    std::vector<hoch::Tensor> layer{{}};
    for (int len = 1; len <= B; ++len) {
        std::vector<hoch::Tensor> next;
        for (const auto& w : layer)
            for (int x : a.ideal) {
                if (!w.empty() && alg.basis[w.back()].src != alg.basis[x].tgt) continue;
                hoch::Tensor n = w;
                n.push_back(x);
                if (bar_degree(alg, n) + slack * (B - len) < min_degree) continue;
                next.push_back(std::move(n));
            }
        for (const auto& w : next)
            if (bar_degree(alg, w) >= min_degree) out.push_back(w);
        layer = std::move(next);
    }
    return out;
}

lin::HomologyTable table_from(const lin::BoundedComplex& c, int lo, int hi)
{
    lin::HomologyTable out;
    for (int k = lo; k <= hi; ++k) {
        int n = c.space.dim(k);
        lin::HomologyEntry e;
        e.dim = n - (n ? lin::rank(c.d(k)) : 0) - (n && c.space.dim(k - 1) ? lin::rank(c.d(k - 1)) : 0);
        out[k] = e;
    }
    return out;
}

}  // namespace

namespace {

// Whether products of enough ideal elements vanish: I^(k+1) is spanned by operations of arity >= 2
// on ideal elements with one argument taken from I^(k).
bool ideal_nilpotent(const FiniteAlgebra& a, const std::vector<int>& ideal)
{
    std::vector<lin::SparseVec> power;
    for (int i : ideal) power.push_back({{i, Scalar(1, a.field)}});
    for (int step = 0; step <= a.dim() + 1; ++step) {
        if (power.empty()) return true;
        lin::Matrix next(a.dim(), 0, a.field);
        std::vector<lin::SparseVec> cols;
        for (int j = 2; j <= a.max_arity(); ++j)
            for (int pos = 0; pos < j; ++pos)
                for (const auto& p : power) {
                    std::vector<int> args(j, 0);
                    std::function<void(int)> rec = [&](int slot) {
                        if (slot == j) {
                            lin::SparseVec v;
                            for (const auto& [b, c] : p) {
                                args[pos] = b;
                                auto r = a.mu(args);
                                lin::axpy(v, c, lin::SparseVec(r.begin(), r.end()));
                            }
                            if (!v.empty()) cols.push_back(std::move(v));
                            return;
                        }
                        if (slot == pos) return rec(slot + 1);
                        for (int i : ideal) {
                            args[slot] = i;
                            rec(slot + 1);
                        }
                    };
                    rec(0);
                }
        lin::Matrix m(a.dim(), static_cast<int>(cols.size()), a.field);
        for (std::size_t c = 0; c < cols.size(); ++c) m.set_col(static_cast<int>(c), cols[c]);
        lin::Reduction red(m);
        std::vector<lin::SparseVec> basis;
        for (int c = 0; c < m.cols(); ++c)
            if (red.is_pivot_column(c)) basis.push_back(m.col(c));
        power = std::move(basis);
    }
    return false;
}

}  // namespace

AugmentedAlgebra augment(const FiniteAlgebra& a)
{
    AugmentedAlgebra out{a, {}};
    for (int v = 0; v < a.base.size(); ++v)
        if (a.unit[v] < 0) throw std::invalid_argument("idempotent " + a.base.idempotents[v] + " is not in the basis");
    for (int i = 0; i < a.dim(); ++i)
        if (!a.is_idempotent(i)) out.ideal.push_back(i);
    auto leaves = [&](const alg::Coeffs& c) {
        return std::any_of(c.begin(), c.end(), [&](const auto& t) { return a.is_idempotent(t.first); });
    };
    for (const auto& [i, c] : a.diff)
        if (leaves(c)) throw std::invalid_argument("differential leaves the augmentation ideal");
    for (const auto& [ij, c] : a.mul)
        if (!a.is_idempotent(ij.first) && !a.is_idempotent(ij.second) && leaves(c))
            throw std::invalid_argument("product leaves the augmentation ideal");
    for (const auto& [args, c] : a.higher)
        if (leaves(c)) throw std::invalid_argument("higher operation leaves the augmentation ideal");
    out.nilpotent = ideal_nilpotent(a, out.ideal);
    return out;
}

int BarCoalgebra::degree(const BarWord& w) const { return bar_degree(source.algebra, w.letters); }

std::string BarCoalgebra::label(const BarWord& w) const
{
    const auto& a = source.algebra;
    if (w.letters.empty()) return a.base.idempotents[w.vertex];
    std::string s;
    for (std::size_t i = 0; i < w.letters.size(); ++i) s += (i ? "|" : "") + a.basis[w.letters[i]].label;
    return s;
}

BarCoalgebra bar(const AugmentedAlgebra& a, int max_length, int min_degree)
{
    if (max_length < 1) throw std::invalid_argument("bar length bound must be >= 1");
    BarCoalgebra c;
    c.source = a;
    c.max_length = max_length;
    c.min_degree = min_degree;
    const auto& alg = a.algebra;
    if (min_degree <= 0)
        for (int v = 0; v < alg.base.size(); ++v) c.basis.add(BarWord{v, {}}, 0);
    for (auto& w : ideal_words(a, max_length, min_degree)) {
        int d = bar_degree(alg, w);
        c.basis.add(BarWord{-1, std::move(w)}, d);
    }
    auto degs = c.basis.degrees();
    int lo = degs.empty() ? 0 : degs.front();
    int hi = degs.empty() ? 0 : degs.back();
    auto op = [&](const BarWord& w) {
        std::map<BarWord, Scalar> out;
        if (w.letters.empty()) return out;
        for (const auto& [k, s] : hoch::bar_b_prime(alg, hoch::hat(w.letters, Scalar(1, alg.field))))
            add_to(out, BarWord{-1, k.word}, s);
        return out;
    };
    std::map<int, lin::Matrix> blocks;
    for (int d : degs) blocks[d] = c.basis.block(d, 1, alg.field, op, false);
    c.complex = lin::make_complex(c.basis.space([&](const BarWord& w) { return c.label(w); }), blocks, lo, hi, alg.field);
    c.complex.hi_cut = false;
    c.complex.lo_cut = min_degree > -1000000;
    auto from = complete_from(a, max_length);
    for (int d = lo; d <= hi; ++d)
        if (!from || d < *from) c.complex.incomplete.insert(d);
    if (auto bad = lin::d_squared_failures(c.complex); !bad.empty())
        throw std::runtime_error("bar differential squares to nonzero in degree " + std::to_string(bad.front()));
    return c;
}

alg::TruncatedDGAlgebra dual_algebra(const BarCoalgebra& c)
{
    const auto& a = c.source.algebra;
    alg::TruncatedDGAlgebra out;
    out.quiver.base = a.base;
    out.weight_bound = c.max_length;
    out.field = a.field;
    std::map<int, int> gen;  // ideal basis index -> arrow
    for (int x : c.source.ideal) {
        gen[x] = static_cast<int>(out.quiver.arrows.size());
        out.quiver.arrows.push_back({a.basis[x].label + "#", a.basis[x].tgt, a.basis[x].src, 1 - a.basis[x].degree});
    }
    // d x# = sum over bar words w whose full fold mu(w) contains x, of that coefficient times the dual of w
    for (int d : c.basis.degrees())
        for (const auto& w : c.basis.keys(d)) {
            if (w.letters.empty()) continue;
            for (const auto& [r, s] : a.mu(w.letters)) {
                Word dual;
                for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) dual.arrows.push_back(gen.at(*it));
                alg::add_term(out.generator_diff[gen.at(r)], dual, s);
            }
        }
    std::erase_if(out.generator_diff, [](const auto& kv) { return kv.second.empty(); });
    return out;
}

lin::BoundedComplex dual_complex(const BarCoalgebra& c)
{
    const auto& a = c.source.algebra;
    lin::GradedSpace space;
    for (int d : c.basis.degrees())
        for (const auto& w : c.basis.keys(d)) {
            std::string s;
            if (w.letters.empty()) s = a.base.idempotents[w.vertex];
            for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
                s += (s.empty() ? "" : "*") + a.basis[*it].label + "#";
            space.add(-d, s);
        }
    std::map<int, lin::Matrix> blocks;
    for (int d : c.basis.degrees()) {
        // transpose of b' from bar degree d - 1 to d: dual degree -d -> -d + 1
        if (c.basis.dim(d - 1) == 0) continue;
        blocks[-d] = c.complex.d(d - 1).transpose();
    }
    auto degs = space.degrees();
    auto out = lin::make_complex(space, blocks, degs.empty() ? 0 : degs.front(), degs.empty() ? 0 : degs.back(), a.field);
    out.lo_cut = false;
    out.hi_cut = c.complex.lo_cut;
    for (int d : c.complex.incomplete) out.incomplete.insert(-d);
    return out;
}

alg::TruncatedDGAlgebra completed_cobar(const BarCoalgebra& c, int P)
{
    if (P < 1) throw std::invalid_argument("cobar filtration level must be >= 1");
    const auto& a = c.source.algebra;
    alg::TruncatedDGAlgebra out;
    out.quiver.base = a.base;
    out.weight_bound = P - 1;
    out.field = a.field;
    std::map<hoch::Tensor, int> gen;
    for (int d : c.basis.degrees())
        for (const auto& w : c.basis.keys(d)) {
            if (w.letters.empty()) continue;
            gen[w.letters] = static_cast<int>(out.quiver.arrows.size());
            out.quiver.arrows.push_back(
                {"[" + c.label(w) + "]", a.basis[w.letters.front()].tgt, a.basis[w.letters.back()].src, d + 1});
        }
    auto lookup = [&](const hoch::Tensor& w) {
        auto it = gen.find(w);
        if (it == gen.end()) throw std::out_of_range("cobar term leaves the bar truncation");
        return it->second;
    };
    // d[w] = [b'(w)] + sum over splits w = L|R of (-1)^{|R|} [R][L]
    for (const auto& [w, g] : gen) {
        Combo d;
        for (const auto& [k, s] : hoch::bar_b_prime(a, hoch::hat(w, Scalar(1, a.field))))
            alg::add_term(d, Word::path({lookup(k.word)}), s);
        for (std::size_t i = 1; i < w.size(); ++i) {
            hoch::Tensor left(w.begin(), w.begin() + i), right(w.begin() + i, w.end());
            alg::add_term(d, Word::path({lookup(right), lookup(left)}), sign_scalar(bar_degree(a, right), a.field));
        }
        if (!d.empty()) out.generator_diff[g] = std::move(d);
    }
    return out;
}

// Rank of H^k(Omega C / F^P) -> H^k(Omega C / F^Q), Q < P.
int image_rank(const alg::TruncatedDGAlgebra& cobar, int P, int Q, int k)
{
    auto top = cobar;
    top.weight_bound = P - 1;
    auto low = cobar;
    low.weight_bound = Q - 1;
    auto ct = alg::word_complex(top, k - 1, k + 1);
    auto cl = alg::word_complex(low, k - 1, k + 1);
    int n = ct.space.dim(k);
    if (n == 0) return 0;
    lin::Matrix out = ct.space.dim(k + 1) ? ct.d(k) : lin::Matrix(0, n, cobar.field);
    auto cycles = lin::Reduction(out).kernel();
    const auto& labels = ct.space.labels(k);
    int m = cl.space.dim(k);
    lin::Matrix in = cl.space.dim(k - 1) ? cl.d(k - 1) : lin::Matrix(m, 0, cobar.field);
    lin::Matrix all(m, in.cols() + static_cast<int>(cycles.size()), cobar.field);
    for (int j = 0; j < in.cols(); ++j) all.set_col(j, in.col(j));
    for (std::size_t z = 0; z < cycles.size(); ++z) {
        lin::SparseVec v;
        for (const auto& [r, s] : cycles[z])
            if (auto i = cl.space.index(k, labels[r])) v.emplace_back(*i, s);
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        all.set_col(in.cols() + static_cast<int>(z), std::move(v));
    }
    return lin::rank(all) - lin::rank(in);
}

lin::HomologyTable cobar_betti(const BarCoalgebra& c, int P, int lo, int hi)
{
    if (P < 3) throw std::invalid_argument("cobar Betti numbers need P >= 3");
    auto cobar = completed_cobar(c, P + 1);
    auto from = complete_from(c.source, c.max_length);
    lin::HomologyTable out;
    for (int k = lo; k <= hi; ++k) {
        lin::HomologyEntry e;
        e.dim = image_rank(cobar, P, P - 2, k);
        // a cobar word of degree k - 1 holds generators of bar length at most 2 - k
        bool complete = from && (*from == INT_MIN || 2 - k <= c.max_length) && c.min_degree == -1000000;
        if (!c.source.nilpotent) {
            e.reliable = false;
            e.note = "ideal not nilpotent";
        } else if (!complete) {
            e.reliable = false;
            e.note = "truncated";
        } else if (image_rank(cobar, P + 1, P - 2, k) != e.dim || image_rank(cobar, P + 1, P - 1, k) != e.dim) {
            e.reliable = false;
            e.note = "unstable in P";
        }
        out[k] = e;
    }
    return out;
}

lin::HomologyTable algebra_betti(const FiniteAlgebra& a)
{
    lin::GradedSpace space;
    std::map<int, std::pair<int, int>> where;
    for (int i = 0; i < a.dim(); ++i) {
        where[i] = {a.basis[i].degree, space.dim(a.basis[i].degree)};
        space.add(a.basis[i].degree, a.basis[i].label);
    }
    std::map<int, lin::Matrix> blocks;
    for (const auto& [i, c] : a.diff) {
        int d = a.basis[i].degree;
        auto it = blocks.find(d);
        if (it == blocks.end()) it = blocks.emplace(d, lin::Matrix(space.dim(d + 1), space.dim(d), a.field)).first;
        for (const auto& [j, s] : c) it->second.add(where.at(j).second, where.at(i).second, s);
    }
    auto degs = space.degrees();
    if (degs.empty()) return {};
    auto cx = lin::make_complex(space, blocks, degs.front(), degs.back(), a.field);
    return table_from(cx, degs.front(), degs.back());
}

lin::HomologyTable ext_betti(const AugmentedAlgebra& a, int lo, int hi, int B)
{
    auto at = [&](int b) {
        auto c = bar(a, b, -hi - 1);
        return std::make_pair(table_from(dual_complex(c), lo, hi), complete_from(a, b));
    };
    auto [t, from] = at(B);
    auto [t1, from1] = at(B + 1);
    for (auto& [k, e] : t) {
        // dual degree k sees bar degrees -k - 1 and -k
        if (!from || -k - 1 < *from) {
            e.reliable = false;
            e.note = "truncated";
        } else if (t1.at(k).dim != e.dim) {
            e.reliable = false;
            e.note = "unstable in B";
        }
    }
    return t;
}

}  // namespace hochkit::ksz
