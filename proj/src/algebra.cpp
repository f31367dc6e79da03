#include "hochkit/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hochkit::alg {

int SemisimpleBase::index(const std::string& label) const
{
    for (int i = 0; i < size(); ++i)
        if (idempotents[i] == label) return i;
    throw std::invalid_argument("unknown vertex: " + label);
}

int GradedQuiver::arrow_index(const std::string& label) const
{
    for (int i = 0; i < static_cast<int>(arrows.size()); ++i)
        if (arrows[i].label == label) return i;
    throw std::invalid_argument("unknown arrow: " + label);
}

void GradedQuiver::validate() const
{
    if (base.idempotents.empty()) throw std::invalid_argument("quiver has no vertices");
    for (std::size_t i = 0; i < base.idempotents.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (base.idempotents[i] == base.idempotents[j]) throw std::invalid_argument("duplicate vertex " + base.idempotents[i]);
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        const auto& a = arrows[i];
        if (a.src < 0 || a.src >= base.size() || a.tgt < 0 || a.tgt >= base.size())
            throw std::invalid_argument("arrow " + a.label + " has an invalid endpoint");
        for (std::size_t j = 0; j < i; ++j)
            if (arrows[j].label == a.label) throw std::invalid_argument("duplicate arrow " + a.label);
    }
}

int word_src(const GradedQuiver& q, const Word& w)
{
    return w.is_idempotent() ? w.vertex : q.arrows[w.arrows.back()].src;
}

int word_tgt(const GradedQuiver& q, const Word& w)
{
    return w.is_idempotent() ? w.vertex : q.arrows[w.arrows.front()].tgt;
}

int word_degree(const GradedQuiver& q, const Word& w)
{
    int d = 0;
    for (int a : w.arrows) d += q.arrows[a].degree;
    return d;
}

std::optional<Word> concat(const GradedQuiver& q, const Word& u, const Word& v)
{
    if (word_src(q, u) != word_tgt(q, v)) return std::nullopt;
    if (u.is_idempotent()) return v;
    if (v.is_idempotent()) return u;
    Word w = u;
    w.arrows.insert(w.arrows.end(), v.arrows.begin(), v.arrows.end());
    return w;
}

std::string word_label(const GradedQuiver& q, const Word& w)
{
    if (w.is_idempotent()) return q.base.idempotents[w.vertex];
    std::string s;
    for (std::size_t i = 0; i < w.arrows.size(); ++i) {
        if (i) s += '*';
        s += q.arrows[w.arrows[i]].label;
    }
    return s;
}

bool word_order(const GradedQuiver& q, const Word& a, const Word& b)
{
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    if (a.is_idempotent()) return a.vertex < b.vertex;
    for (std::size_t i = 0; i < a.arrows.size(); ++i) {
        const auto& la = q.arrows[a.arrows[i]].label;
        const auto& lb = q.arrows[b.arrows[i]].label;
        if (la != lb) return la < lb;
    }
    return false;
}

void add_term(Combo& c, const Word& w, const Scalar& s)
{
    if (s.is_zero()) return;
    auto it = c.find(w);
    if (it == c.end()) {
        c.emplace(w, s);
        return;
    }
    it->second += s;
    if (it->second.is_zero()) c.erase(it);
}

void add_combo(Combo& c, const Combo& o, const Scalar& s)
{
    for (const auto& [w, v] : o) add_term(c, w, v * s);
}

Combo multiply(const GradedQuiver& q, const Combo& a, const Combo& b, int max_weight)
{
    Combo out;
    for (const auto& [u, x] : a)
        for (const auto& [v, y] : b) {
            if (max_weight >= 0 && u.weight() + v.weight() > max_weight) continue;
            if (auto w = concat(q, u, v)) add_term(out, *w, x * y);
        }
    return out;
}

std::string combo_label(const GradedQuiver& q, const Combo& c)
{
    if (c.empty()) return "0";
    std::vector<std::pair<Word, Scalar>> terms(c.begin(), c.end());
    std::sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) { return word_order(q, x.first, y.first); });
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, s] : terms) {
        std::string coef = s.str();
        bool neg = coef[0] == '-';
        if (neg) coef = coef.substr(1);
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        if (coef != "1") os << coef << " ";
        os << word_label(q, w);
        first = false;
    }
    return os.str();
}

std::vector<Word> enumerate_words(const GradedQuiver& q, int max_weight, int lo, int hi)
{
    int up = 0, down = 0;  // most any one arrow can raise or lower the degree
    for (const auto& a : q.arrows) {
        up = std::max(up, a.degree);
        down = std::min(down, a.degree);
    }
    std::vector<Word> layer;
    for (int v = 0; v < q.base.size(); ++v) layer.push_back(Word::idempotent(v));
    std::vector<Word> all = layer;
    for (int k = 1; k <= max_weight; ++k) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a)
                if (q.arrows[a].src == word_tgt(q, w)) {
                    Word n = Word::path({a});
                    if (!w.is_idempotent()) n.arrows.insert(n.arrows.end(), w.arrows.begin(), w.arrows.end());
                    // drop prefixes that can no longer reach the degree window
                    int d = word_degree(q, n);
                    if (d + up * (max_weight - k) < lo || d + down * (max_weight - k) > hi) continue;
                    next.push_back(std::move(n));
                }
        if (next.empty()) break;
        all.insert(all.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    std::vector<Word> out;
    for (auto& w : all) {
        int d = word_degree(q, w);
        if (d >= lo && d <= hi) out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) { return word_order(q, a, b); });
    return out;
}

lin::GradedSpace words_space(const GradedQuiver& q, int max_weight, int lo, int hi)
{
    lin::GradedSpace s;
    for (const auto& w : enumerate_words(q, max_weight, lo, hi)) s.add(word_degree(q, w), word_label(q, w));
    return s;
}

void TruncatedDGAlgebra::validate() const
{
    quiver.validate();
    for (const auto& [a, c] : generator_diff) {
        const Arrow& ar = quiver.arrows.at(a);
        for (const auto& [w, s] : c) {
            if (s.field() != field) throw FieldMismatch();
            if (word_degree(quiver, w) != ar.degree + 1)
                throw std::invalid_argument("d(" + ar.label + ") has a term of the wrong degree: " + word_label(quiver, w));
            if (word_src(quiver, w) != ar.src || word_tgt(quiver, w) != ar.tgt)
                throw std::invalid_argument("d(" + ar.label + ") does not respect endpoints: " + word_label(quiver, w));
        }
    }
}

namespace {

Combo leibniz(const TruncatedDGAlgebra& a, const Word& w, bool drop)
{
    Combo out;
    if (w.is_idempotent()) return out;
    const auto& q = a.quiver;
    int prefix_deg = 0;
    for (std::size_t p = 0; p < w.arrows.size(); ++p) {
        int arrow = w.arrows[p];
        auto it = a.generator_diff.find(arrow);
        if (it != a.generator_diff.end() && !it->second.empty()) {
            Scalar sign = sign_scalar(prefix_deg, a.field);
            Word left = Word::path(std::vector<int>(w.arrows.begin(), w.arrows.begin() + p));
            Word right = Word::path(std::vector<int>(w.arrows.begin() + p + 1, w.arrows.end()));
            int rest = w.weight() - 1;
            for (const auto& [m, s] : it->second) {
                Word t;
                t.arrows = left.arrows;
                t.arrows.insert(t.arrows.end(), m.arrows.begin(), m.arrows.end());
                t.arrows.insert(t.arrows.end(), right.arrows.begin(), right.arrows.end());
                if (t.arrows.empty()) t = Word::idempotent(word_src(q, m));
                if (rest + m.weight() > a.weight_bound) {
                    if (drop) continue;
                    throw TruncationOverflow("d(" + word_label(q, w) + ") exceeds weight bound " + std::to_string(a.weight_bound));
                }
                add_term(out, t, sign * s);
            }
        }
        prefix_deg += q.arrows[arrow].degree;
    }
    return out;
}

}  // namespace

Combo leibniz_extend(const TruncatedDGAlgebra& a, const Word& w) { return leibniz(a, w, false); }

Combo differential_mod_weight(const TruncatedDGAlgebra& a, const Word& w) { return leibniz(a, w, true); }

Combo differential_mod_weight(const TruncatedDGAlgebra& a, const Combo& c)
{
    Combo out;
    for (const auto& [w, s] : c) add_combo(out, leibniz(a, w, true), s);
    return out;
}

DSquaredReport check_d_squared(const TruncatedDGAlgebra& a)
{
    DSquaredReport r;
    for (const auto& [arrow, dg] : a.generator_diff) {
        Combo dd = differential_mod_weight(a, dg);
        if (!dd.empty()) {
            r.pass = false;
            r.failures.emplace_back(a.quiver.arrows[arrow].label, combo_label(a.quiver, dd));
        }
    }
    return r;
}

lin::BoundedComplex word_complex(const TruncatedDGAlgebra& a, int lo, int hi)
{
    const auto& q = a.quiver;
    auto words = enumerate_words(q, a.weight_bound, lo - 1, hi + 1);
    lin::GradedSpace space;
    std::map<Word, std::pair<int, int>> where;
    for (const auto& w : words) {
        int d = word_degree(q, w);
        where[w] = {d, space.dim(d)};
        space.add(d, word_label(q, w));
    }
    std::map<int, lin::Matrix> blocks;
    for (const auto& w : words) {
        auto [d, col] = where[w];
        if (d > hi) continue;
        Combo dw = differential_mod_weight(a, w);
        if (dw.empty()) continue;
        auto it = blocks.find(d);
        if (it == blocks.end()) it = blocks.emplace(d, lin::Matrix(space.dim(d + 1), space.dim(d), a.field)).first;
        for (const auto& [t, s] : dw) it->second.add(where.at(t).second, col, s);
    }
    auto c = lin::make_complex(space, blocks, lo, hi, a.field);
    c.lo_cut = c.hi_cut = false;
    return c;
}

int FiniteAlgebra::index(const std::string& label) const
{
    for (int i = 0; i < dim(); ++i)
        if (basis[i].label == label) return i;
    throw std::invalid_argument("unknown basis element: " + label);
}

bool FiniteAlgebra::is_idempotent(int i) const
{
    return std::find(unit.begin(), unit.end(), i) != unit.end();
}

int FiniteAlgebra::max_arity() const
{
    int k = 2;
    for (const auto& [args, c] : higher) k = std::max(k, static_cast<int>(args.size()));
    return k;
}

Coeffs FiniteAlgebra::mu(const std::vector<int>& args) const
{
    if (args.size() == 1) {
        auto it = diff.find(args[0]);
        if (it == diff.end()) return {};
        return coeffs_add({}, it->second, sign_scalar(basis[args[0]].degree, field));
    }
    if (args.size() == 2) {
        auto it = mul.find({args[0], args[1]});
        if (it == mul.end()) return {};
        return coeffs_add({}, it->second, sign_scalar(basis[args[1]].degree, field));
    }
    if (static_cast<int>(args.size()) > arity) return {};
    auto it = higher.find(args);
    return it == higher.end() ? Coeffs{} : it->second;
}

FiniteAlgebra FiniteAlgebra::in_field(Field f) const
{
    FiniteAlgebra a = *this;
    a.field = f;
    auto conv = [f](Coeffs& c) {
        Coeffs out;
        for (auto& [i, s] : c) {
            Scalar t = s.in(f);
            if (!t.is_zero()) out.emplace_back(i, t);
        }
        c = std::move(out);
    };
    for (auto& [k, c] : a.mul) conv(c);
    for (auto& [k, c] : a.diff) conv(c);
    for (auto& [k, c] : a.higher) conv(c);
    return a;
}

Coeffs coeffs_add(const Coeffs& a, const Coeffs& b, const Scalar& s)
{
    lin::SparseVec x(a.begin(), a.end());
    lin::axpy(x, s, lin::SparseVec(b.begin(), b.end()));
    return Coeffs(x.begin(), x.end());
}

void set_product(FiniteAlgebra& a, int i, int j, Coeffs c)
{
    std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    if (c.empty()) a.mul.erase({i, j});
    else a.mul[{i, j}] = std::move(c);
}

AlgebraReport validate(const FiniteAlgebra& a)
{
    AlgebraReport r;
    auto fail = [&](const std::string& s) {
        r.pass = false;
        if (r.problems.size() < 20) r.problems.push_back(s);
    };
    int n = a.dim();
    if (static_cast<int>(a.unit.size()) != a.base.size()) fail("unit list does not match the base");
    for (int v = 0; v < static_cast<int>(a.unit.size()); ++v) {
        int u = a.unit[v];
        if (u < 0) continue;
        const auto& e = a.basis[u];
        if (e.degree != 0 || e.src != v || e.tgt != v) fail("unit " + e.label + " is not a degree-0 loop at its vertex");
    }
    auto slot_ok = [&](const Coeffs& c, int deg, int src, int tgt, const std::string& what) {
        for (const auto& [k, s] : c) {
            const auto& e = a.basis.at(k);
            if (e.degree != deg || e.src != src || e.tgt != tgt) fail(what + " has a term " + e.label + " in the wrong slot");
            if (s.field() != a.field) fail(what + " has a coefficient in the wrong field");
        }
    };
    for (const auto& [ij, c] : a.mul) {
        auto [i, j] = ij;
        if (!a.composable(i, j)) fail("product of non-composable " + a.basis[i].label + ", " + a.basis[j].label);
        slot_ok(c, a.basis[i].degree + a.basis[j].degree, a.basis[j].src, a.basis[i].tgt,
                a.basis[i].label + "*" + a.basis[j].label);
    }
    for (const auto& [i, c] : a.diff) slot_ok(c, a.basis[i].degree + 1, a.basis[i].src, a.basis[i].tgt, "d " + a.basis[i].label);
    for (const auto& [args, c] : a.higher) {
        int deg = 2 - static_cast<int>(args.size());
        for (int x : args) deg += a.basis[x].degree;
        slot_ok(c, deg, a.basis[args.back()].src, a.basis[args.front()].tgt, "mu^" + std::to_string(args.size()));
        if (static_cast<int>(args.size()) > a.arity) fail("operation beyond the arity bound");
        for (int x : args)
            if (a.is_idempotent(x)) fail("higher operation with a unit input");
    }
    // unit axioms
    for (int x = 0; x < n; ++x) {
        int ut = a.unit.empty() ? -1 : a.unit[a.basis[x].tgt];
        int us = a.unit.empty() ? -1 : a.unit[a.basis[x].src];
        Coeffs self{{x, Scalar(1, a.field)}};
        if (ut >= 0) {
            auto it = a.mul.find({ut, x});
            if (it == a.mul.end() || it->second != self) fail("left unit fails on " + a.basis[x].label);
        }
        if (us >= 0) {
            auto it = a.mul.find({x, us});
            if (it == a.mul.end() || it->second != self) fail("right unit fails on " + a.basis[x].label);
        }
    }
    // A-infinity relations (dg: d^2 = 0, Leibniz, associativity) on all composable tuples
    int top = a.max_arity() + 1;
    std::vector<int> tuple;
    auto reduced = [&](int i) { return a.basis[i].degree - 1; };
    std::function<void(int)> rec = [&](int len) {
        if (!r.pass && r.problems.size() >= 20) return;
        if (static_cast<int>(tuple.size()) == len) {
            // tuple is (x_d, ..., x_1)
            int d = len;
            lin::SparseVec total;
            for (int m = 1; m <= d; ++m)
                for (int nn = 0; nn + m <= d; ++nn) {
                    int sgn = 0;
                    for (int i = 1; i <= nn; ++i) sgn += reduced(tuple[d - i]);
                    std::vector<int> inner(tuple.begin() + (d - nn - m), tuple.begin() + (d - nn));
                    Coeffs in = a.mu(inner);
                    for (const auto& [y, c] : in) {
                        std::vector<int> outer(tuple.begin(), tuple.begin() + (d - nn - m));
                        outer.push_back(y);
                        outer.insert(outer.end(), tuple.begin() + (d - nn), tuple.end());
                        Coeffs o = a.mu(outer);
                        lin::axpy(total, c * sign_scalar(sgn, a.field), lin::SparseVec(o.begin(), o.end()));
                    }
                }
            if (!total.empty()) {
                std::string s;
                for (int x : tuple) s += (s.empty() ? "" : ",") + a.basis[x].label;
                fail("A-infinity relation fails on (" + s + ")");
            }
            return;
        }
        for (int x = 0; x < n; ++x) {
            if (!tuple.empty() && a.basis[tuple.back()].src != a.basis[x].tgt) continue;
            tuple.push_back(x);
            rec(len);
            tuple.pop_back();
        }
    };
    for (int len = 1; len <= top; ++len) rec(len);
    return r;
}

lin::Reduction ideal_reduction(const TruncatedDGAlgebra& a, const std::vector<Combo>& relations, const std::vector<Word>& words)
{
    const auto& q = a.quiver;
    std::map<Word, int> idx;
    for (int i = 0; i < static_cast<int>(words.size()); ++i) idx[words[i]] = i;
    std::vector<lin::SparseVec> gens;
    for (const auto& rel : relations) {
        if (rel.empty()) continue;
        int deg = word_degree(q, rel.begin()->first);
        for (const auto& [w, s] : rel)
            if (word_degree(q, w) != deg) throw std::invalid_argument("ideal not homogeneous: " + combo_label(q, rel));
        for (const auto& u : words)
            for (const auto& v : words) {
                lin::SparseVec vec;
                for (const auto& [w, s] : rel) {
                    if (u.weight() + w.weight() + v.weight() > a.weight_bound) continue;
                    auto uw = concat(q, u, w);
                    if (!uw) continue;
                    auto uwv = concat(q, *uw, v);
                    if (!uwv) continue;
                    lin::axpy(vec, s, lin::SparseVec{{idx.at(*uwv), Scalar(1, a.field)}});
                }
                if (!vec.empty()) gens.push_back(std::move(vec));
            }
    }
    lin::Matrix m(static_cast<int>(words.size()), static_cast<int>(gens.size()), a.field);
    for (int c = 0; c < static_cast<int>(gens.size()); ++c) m.set_col(c, gens[c]);
    return lin::Reduction(m);
}

FiniteAlgebra quotient_truncated(const TruncatedDGAlgebra& a, const std::vector<Combo>& relations)
{
    const auto& q = a.quiver;
    a.validate();
    auto words = enumerate_words(q, a.weight_bound, -1000000, 1000000);
    std::map<Word, int> idx;
    for (int i = 0; i < static_cast<int>(words.size()); ++i) idx[words[i]] = i;
    lin::Reduction red = ideal_reduction(a, relations, words);

    FiniteAlgebra out;
    out.base = q.base;
    out.field = a.field;
    out.unit.assign(q.base.size(), -1);
    std::vector<int> new_index(words.size(), -1);
    for (int i = 0; i < static_cast<int>(words.size()); ++i) {
        if (red.is_pivot_row(i)) continue;
        // a word that is not a pivot row survives as a basis element, unless the ideal kills it entirely
        new_index[i] = out.dim();
        const Word& w = words[i];
        out.basis.push_back({word_label(q, w), word_degree(q, w), word_src(q, w), word_tgt(q, w)});
        if (w.is_idempotent()) out.unit[w.vertex] = new_index[i];
    }
    auto to_coeffs = [&](const lin::SparseVec& v) {
        Coeffs c;
        for (const auto& [r, s] : red.normal_form(v)) c.emplace_back(new_index.at(r), s);
        std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return c;
    };
    auto combo_vec = [&](const Combo& c) {
        lin::SparseVec v;
        for (const auto& [w, s] : c) lin::axpy(v, s, lin::SparseVec{{idx.at(w), Scalar(1, a.field)}});
        return v;
    };
    std::vector<int> survivors;
    for (int i = 0; i < static_cast<int>(words.size()); ++i)
        if (new_index[i] >= 0) survivors.push_back(i);
    for (int i : survivors)
        for (int j : survivors) {
            if (words[i].weight() + words[j].weight() > a.weight_bound) continue;
            auto w = concat(q, words[i], words[j]);
            if (!w) continue;
            Coeffs c = to_coeffs({{idx.at(*w), Scalar(1, a.field)}});
            if (!c.empty()) out.mul[{new_index[i], new_index[j]}] = std::move(c);
        }
    if (!a.generator_diff.empty()) {
        // d must preserve the ideal: check d of every ideal generator reduces to zero
        for (const auto& rel : relations) {
            lin::SparseVec dv = combo_vec(differential_mod_weight(a, rel));
            if (!red.normal_form(dv).empty()) throw std::invalid_argument("ideal is not closed under the differential");
        }
        for (int i : survivors) {
            Coeffs c = to_coeffs(combo_vec(differential_mod_weight(a, words[i])));
            if (!c.empty()) out.diff[new_index[i]] = std::move(c);
        }
    }
    return out;
}

namespace samples {

namespace {

FiniteAlgebra one_vertex(std::vector<std::pair<std::string, int>> elems)
{
    FiniteAlgebra a;
    a.base.idempotents = {"e"};
    for (auto& [l, d] : elems) a.basis.push_back({l, d, 0, 0});
    a.unit = {0};
    for (int i = 0; i < a.dim(); ++i) {
        set_product(a, 0, i, {{i, Scalar(1)}});
        set_product(a, i, 0, {{i, Scalar(1)}});
    }
    return a;
}

// Structure constants of a matrix subalgebra spanned by `mats`, with d = [D, -].
using Mat = std::vector<std::vector<mpq_class>>;

Mat mat_mul(const Mat& x, const Mat& y)
{
    std::size_t n = x.size();
    Mat z(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (x[i][k] != 0)
                for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
}

FiniteAlgebra from_matrices(const std::vector<std::string>& names, const std::vector<Mat>& mats, const std::vector<int>& degs,
                            const Mat* D)
{
    FiniteAlgebra a;
    a.base.idempotents = {"e"};
    a.unit = {0};
    std::size_t n = mats[0].size();
    int m = static_cast<int>(mats.size());
    lin::Matrix coords(static_cast<int>(n * n), m);
    for (int c = 0; c < m; ++c) {
        a.basis.push_back({names[c], degs[c], 0, 0});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (mats[c][i][j] != 0) coords.add(static_cast<int>(i * n + j), c, Scalar(mats[c][i][j]));
    }
    lin::Reduction red(coords);
    auto expand = [&](const Mat& x) {
        lin::SparseVec v;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (x[i][j] != 0) v.emplace_back(static_cast<int>(i * n + j), Scalar(x[i][j]));
        if (v.empty()) return Coeffs{};
        auto s = red.solve(v);
        if (!s) throw std::logic_error("matrix span is not closed");
        return Coeffs(s->begin(), s->end());
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) set_product(a, i, j, expand(mat_mul(mats[i], mats[j])));
    if (D) {
        for (int i = 0; i < m; ++i) {
            Mat l = mat_mul(*D, mats[i]);
            Mat r = mat_mul(mats[i], *D);
            int s = (degs[i] % 2 == 0) ? 1 : -1;
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) l[p][q] -= s * r[p][q];
            Coeffs c = expand(l);
            if (!c.empty()) a.diff[i] = c;
        }
    }
    return a;
}

Mat unit_mat(int i, int j, int n = 2)
{
    Mat x(n, std::vector<mpq_class>(n, 0));
    x[i][j] = 1;
    return x;
}

Mat id_mat(int n = 2)
{
    Mat x(n, std::vector<mpq_class>(n, 0));
    for (int i = 0; i < n; ++i) x[i][i] = 1;
    return x;
}

}  // namespace

FiniteAlgebra ground(int r)
{
    FiniteAlgebra a;
    for (int i = 0; i < r; ++i) {
        std::string l = "e" + std::to_string(i + 1);
        a.base.idempotents.push_back(l);
        a.basis.push_back({l, 0, i, i});
        a.unit.push_back(i);
        set_product(a, i, i, {{i, Scalar(1)}});
    }
    return a;
}

FiniteAlgebra dual_numbers(int deg) { return truncated_poly(2, deg); }

FiniteAlgebra truncated_poly(int n, int deg)
{
    std::vector<std::pair<std::string, int>> elems{{"1", 0}};
    for (int k = 1; k < n; ++k) elems.emplace_back(k == 1 ? "x" : "x^" + std::to_string(k), k * deg);
    FiniteAlgebra a = one_vertex(elems);
    for (int i = 1; i < n; ++i)
        for (int j = 1; i + j < n; ++j) set_product(a, i, j, {{i + j, Scalar(1)}});
    return a;
}

FiniteAlgebra product_qq()
{
    FiniteAlgebra a = one_vertex({{"1", 0}, {"p", 0}});
    set_product(a, 1, 1, {{1, Scalar(1)}});
    return a;
}

FiniteAlgebra product_qq_split() { return ground(2); }

FiniteAlgebra upper_triangular()
{
    FiniteAlgebra a = ground(2);
    a.basis.push_back({"a", 0, 0, 1});
    set_product(a, 1, 2, {{2, Scalar(1)}});
    set_product(a, 2, 0, {{2, Scalar(1)}});
    return a;
}

FiniteAlgebra matrix_dg()
{
    // V = V0 (degree 0) + V1 (degree 1); E_ij : V_j -> V_i has degree g_i - g_j.
    Mat D = unit_mat(1, 0);
    return from_matrices({"1", "E00", "E01", "E10"}, {id_mat(), unit_mat(0, 0), unit_mat(0, 1), unit_mat(1, 0)},
                         {0, 0, -1, 1}, &D);
}

FiniteAlgebra matrix_dg_sub()
{
    Mat D = unit_mat(1, 0);
    return from_matrices({"1", "E00", "E10"}, {id_mat(), unit_mat(0, 0), unit_mat(1, 0)}, {0, 0, 1}, &D);
}

FiniteAlgebra truncated_free(int dx, int dy, bool with_d)
{
    // words in x, y of length < 3
    std::vector<std::string> words{""};
    for (int len = 1; len < 3; ++len) {
        std::vector<std::string> add;
        for (const auto& w : words)
            if (static_cast<int>(w.size()) == len - 1)
                for (char c : {'x', 'y'}) add.push_back(w + c);
        words.insert(words.end(), add.begin(), add.end());
    }
    auto deg = [&](const std::string& w) {
        int d = 0;
        for (char c : w) d += c == 'x' ? dx : dy;
        return d;
    };
    std::vector<std::pair<std::string, int>> elems;
    for (const auto& w : words) elems.emplace_back(w.empty() ? "1" : w, deg(w));
    FiniteAlgebra a = one_vertex(elems);
    auto find = [&](const std::string& w) {
        for (int i = 0; i < static_cast<int>(words.size()); ++i)
            if (words[i] == w) return i;
        return -1;
    };
    for (int i = 1; i < static_cast<int>(words.size()); ++i)
        for (int j = 1; j < static_cast<int>(words.size()); ++j) {
            int k = find(words[i] + words[j]);
            if (k >= 0) set_product(a, i, j, {{k, Scalar(1)}});
        }
    if (with_d) {
        if (dx != dy + 1) throw std::invalid_argument("d y = x needs |x| = |y| + 1");
        for (int i = 1; i < static_cast<int>(words.size()); ++i) {
            const auto& w = words[i];
            lin::SparseVec v;
            int s = 0;
            for (std::size_t p = 0; p < w.size(); ++p) {
                if (w[p] == 'y') {
                    std::string t = w;
                    t[p] = 'x';
                    lin::axpy(v, sign_scalar(s, Field::Q), lin::SparseVec{{find(t), Scalar(1)}});
                }
                s += w[p] == 'x' ? dx : dy;
            }
            std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            if (!v.empty()) a.diff[i] = Coeffs(v.begin(), v.end());
        }
    }
    return a;
}

FiniteAlgebra minimal_ainf(int g, int k)
{
    FiniteAlgebra a = one_vertex({{"e", 0}, {"v", g}, {"top", k * g + 2 - k}});
    a.higher[std::vector<int>(k, 1)] = {{2, Scalar(1)}};
    return a;
}

std::vector<std::pair<std::string, FiniteAlgebra>> test_algebras()
{
    return {{"k", ground(1)}, {"dual", dual_numbers(0)}, {"qxq", product_qq()}, {"upper", upper_triangular()}};
}

std::vector<std::pair<std::string, FiniteAlgebra>> zoo()
{
    return {{"k", ground(1)},
            {"k2", ground(2)},
            {"dual0", dual_numbers(0)},
            {"dual1", dual_numbers(1)},
            {"dual2", dual_numbers(2)},
            {"dual-1", dual_numbers(-1)},
            {"qxq", product_qq()},
            {"upper", upper_triangular()},
            {"matrix_dg", matrix_dg()},
            {"matrix_dg_sub", matrix_dg_sub()},
            {"poly3", truncated_poly(3, 0)},
            {"poly3_odd", truncated_poly(3, 1)},
            {"minimal_ainf0", minimal_ainf(0)},
            {"minimal_ainf1", minimal_ainf(1)},
            {"minimal_ainf2", minimal_ainf(2)},
            {"minimal_mu4_0", minimal_ainf(0, 4)},
            {"minimal_mu4_1", minimal_ainf(1, 4)}};
}

FiniteAlgebra random_unital(std::mt19937& rng, int max_dim)
{
    std::vector<FiniteAlgebra> pool;
    for (auto& [name, a] : zoo())
        if (a.dim() <= max_dim) pool.push_back(a);
    FiniteAlgebra a = pool[rng() % pool.size()];
    int n = a.dim();
    // new basis vector i = scale_i * old_i + sum of earlier elements in the same slot
    std::uniform_int_distribution<int> coef(-2, 2);
    lin::Matrix P = lin::Matrix::identity(n);
    for (int i = 0; i < n; ++i) {
        if (a.is_idempotent(i)) continue;
        lin::SparseVec col;
        int s = coef(rng);
        if (s == 0) s = 1;
        col.emplace_back(i, Scalar(s));
        for (int j = 0; j < i; ++j) {
            const auto& x = a.basis[i];
            const auto& y = a.basis[j];
            if (x.degree != y.degree || x.src != y.src || x.tgt != y.tgt) continue;
            int c = coef(rng);
            if (c) col.emplace_back(j, Scalar(c));
        }
        std::sort(col.begin(), col.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        P.set_col(i, col);
    }
    lin::Reduction inv(P);
    auto to_new = [&](const lin::SparseVec& old) {
        auto x = inv.solve(old);
        return Coeffs(x->begin(), x->end());
    };
    auto old_of = [&](int i) { return P.col(i); };
    FiniteAlgebra b = a;
    b.mul.clear();
    b.diff.clear();
    b.higher.clear();
    auto eval = [&](const std::vector<int>& args, auto&& op) {
        // multilinear expansion of op over the old basis
        lin::SparseVec total;
        std::vector<int> cur(args.size());
        std::function<void(std::size_t, Scalar)> rec = [&](std::size_t p, Scalar c) {
            if (p == args.size()) {
                Coeffs r = op(cur);
                lin::axpy(total, c, lin::SparseVec(r.begin(), r.end()));
                return;
            }
            for (const auto& [k, s] : old_of(args[p])) {
                cur[p] = k;
                rec(p + 1, c * s);
            }
        };
        rec(0, Scalar(1));
        return total;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!a.composable(i, j)) continue;
            auto v = eval({i, j}, [&](const std::vector<int>& c) {
                auto it = a.mul.find({c[0], c[1]});
                return it == a.mul.end() ? Coeffs{} : it->second;
            });
            if (!v.empty()) b.mul[{i, j}] = to_new(v);
        }
    for (int i = 0; i < n; ++i) {
        auto v = eval({i}, [&](const std::vector<int>& c) {
            auto it = a.diff.find(c[0]);
            return it == a.diff.end() ? Coeffs{} : it->second;
        });
        if (!v.empty()) b.diff[i] = to_new(v);
    }
    if (!a.higher.empty()) {
        int k = a.max_arity();
        std::vector<int> args(k);
        std::function<void(int)> rec = [&](int p) {
            if (p == k) {
                for (int x : args)
                    if (b.is_idempotent(x)) return;
                auto v = eval(args, [&](const std::vector<int>& c) {
                    auto it = a.higher.find(c);
                    return it == a.higher.end() ? Coeffs{} : it->second;
                });
                if (!v.empty()) b.higher[args] = to_new(v);
                return;
            }
            for (int x = 0; x < n; ++x) {
                args[p] = x;
                rec(p + 1);
            }
        };
        rec(0);
    }
    return b;
}

}  // namespace samples

}  // namespace hochkit::alg
