#include "hochkit/hochschild.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <stdexcept>

namespace hochkit::hoch {
namespace {

using alg::FiniteAlgebra;

int rd(const FiniteAlgebra& a, int i) { return a.basis[i].degree - 1; }

// Sum of reduced degrees of x_i..x_j (1-based, x_k = w[d-k]).
int sm(const FiniteAlgebra& a, const Tensor& w, int i, int j)
{
    int d = static_cast<int>(w.size());
    int s = 0;
    for (int k = i; k <= j; ++k) s += rd(a, w[d - k]);
    return s;
}

Scalar sgn(int parity, const FiniteAlgebra& a) { return sign_scalar(parity, a.field); }

using TermMap = std::map<Tensor, Scalar>;

void put(TermMap& m, Tensor w, const Scalar& c) { add_to(m, w, c); }

// Folds mu^j(x_{s+j} .. x_{s+1}) with sign (-1)^{sum_1^s}.
bool flipped(const SignFlip* f, SignFlip::Op op, int length, int term)
{
    return f && f->op == op && f->length == length && f->term == term;
}

TermMap folds(const FiniteAlgebra& a, const Tensor& w, const SignFlip* flip = nullptr)
{
    TermMap out;
    int d = static_cast<int>(w.size());
    int term = -1;
    auto x = [&](int k) { return w[d - k]; };
    for (int s = 0; s < d; ++s) {
        for (int j = 1; j <= std::min(a.arity, d - s); ++j) {
            ++term;
            std::vector<int> args;
            for (int k = s + j; k > s; --k) args.push_back(x(k));
            auto res = a.mu(args);
            if (res.empty()) continue;
            Scalar sign = sgn(sm(a, w, 1, s) + flipped(flip, SignFlip::Op::Fold, d, term), a);
            for (const auto& [r, c] : res) {
                Tensor nw;
                for (int k = d; k > s + j; --k) nw.push_back(x(k));
                nw.push_back(r);
                for (int k = s; k > 0; --k) nw.push_back(x(k));
                put(out, std::move(nw), c * sign);
            }
        }
    }
    return out;
}

// Folds through the special slot: mu(x_i..x_1, x_d..x_{d-m+1}) placed in front.
TermMap wraps(const FiniteAlgebra& a, const Tensor& w, const SignFlip* flip = nullptr)
{
    TermMap out;
    int d = static_cast<int>(w.size());
    int term = -1;
    auto x = [&](int k) { return w[d - k]; };
    for (int i = 1; i < d; ++i) {
        for (int m = 1; m <= d - i && i + m <= a.arity; ++m) {
            ++term;
            std::vector<int> args;
            for (int k = i; k > 0; --k) args.push_back(x(k));
            for (int k = d; k > d - m; --k) args.push_back(x(k));
            auto res = a.mu(args);
            if (res.empty()) continue;
            int e = sm(a, w, 1, i) * sm(a, w, i + 1, d) + sm(a, w, i + 1, d - m) +
                    flipped(flip, SignFlip::Op::Wrap, d, term);
            Scalar sign = sgn(e, a);
            for (const auto& [r, c] : res) {
                Tensor nw{r};
                for (int k = d - m; k > i; --k) nw.push_back(x(k));
                put(out, std::move(nw), c * sign);
            }
        }
    }
    return out;
}

int tau(const FiniteAlgebra& a, const Tensor& w) { return rd(a, w[0]); }

TermMap b_word(const FiniteAlgebra& a, const Tensor& w, const SignFlip* flip = nullptr)
{
    TermMap out;
    TermMap raw = folds(a, w, flip);
    add_to(raw, wraps(a, w, flip), Scalar(1, a.field));
    for (const auto& [nw, c] : raw) put(out, nw, c * sgn(tau(a, w) + tau(a, nw), a));
    return out;
}

TermMap dwv_word(const FiniteAlgebra& a, const Tensor& w, const SignFlip* flip = nullptr)
{
    TermMap out;
    int d = static_cast<int>(w.size());
    auto x = [&](int k) { return w[d - k]; };
    int s2 = sm(a, w, 2, d);
    Tensor rot{x(1)};
    for (int k = d; k > 1; --k) rot.push_back(x(k));
    put(out, rot, sgn(s2 + rd(a, x(1)) * s2 + 1 + flipped(flip, SignFlip::Op::WedgeVee, d, 0), a));
    put(out, w, sgn(sm(a, w, 1, d - 1) + flipped(flip, SignFlip::Op::WedgeVee, d, 1), a));
    return out;
}

TermMap Bnu_word(const FiniteAlgebra& a, const Tensor& w, const SignFlip* flip = nullptr)
{
    TermMap out;
    int k = static_cast<int>(w.size());
    auto x = [&](int j) { return w[k - j]; };
    int total = sm(a, w, 1, k);
    for (int i = 1; i <= k; ++i) {
        int e = sm(a, w, 1, i) * sm(a, w, i + 1, k) + rd(a, x(k)) + total + 1 +
                flipped(flip, SignFlip::Op::Connes, k, i - 1);
        Tensor nw;
        for (int j = i; j > 0; --j) nw.push_back(x(j));
        for (int j = k; j > i; --j) nw.push_back(x(j));
        put(out, std::move(nw), sgn(e, a));
    }
    return out;
}

TermMap lambda_word(const FiniteAlgebra& a, const Tensor& w)
{
    int k = static_cast<int>(w.size());
    auto x = [&](int j) { return w[k - j]; };
    int s2 = sm(a, w, 2, k);
    Tensor nw{x(1)};
    for (int j = k; j > 1; --j) nw.push_back(x(j));
    TermMap out;
    put(out, nw, sgn(rd(a, x(1)) * s2 + rd(a, x(1)) + rd(a, x(k)), a));
    return out;
}

template <class F>
Element apply_check(const FiniteAlgebra& a, const Element& x, bool out_hat, F f, const char* what)
{
    Element out;
    for (const auto& [k, c] : x) {
        if (k.hat) throw std::invalid_argument(std::string(what) + " expects check input");
        for (const auto& [w, cc] : f(a, k.word)) add_to(out, Key{out_hat, w}, c * cc);
    }
    return out;
}

// Data bounding which elements are absent from a length-L truncation.
struct Reach {
    int top = 0;            // max |x|
    int bottom = 0;         // min |x| - 1, valid when `bounded`
    bool bounded = false;   // no candidates for non-special slots: every word has length 1
    std::optional<int> length_bound;  // degrees <= this may miss long words; nullopt: no guarantee
};

Reach reach(const FiniteAlgebra& a, int L, bool reduced)
{
    Reach r;
    r.top = INT_MIN;
    int lowest = INT_MAX;
    int m1 = INT_MIN;
    bool any = false;
    for (int i = 0; i < a.dim(); ++i) {
        r.top = std::max(r.top, a.basis[i].degree);
        lowest = std::min(lowest, a.basis[i].degree);
        if (reduced && a.is_idempotent(i)) continue;
        any = true;
        m1 = std::max(m1, rd(a, i));
    }
    r.bottom = lowest - 1;
    if (!any) {
        r.bounded = true;
        r.length_bound = INT_MIN / 4;
    } else if (m1 <= -1) {
        r.length_bound = r.top - L;
    }
    return r;
}

// Words with check degree in [lo, hi], length <= L, cyclically composable.
std::vector<Tensor> generate(const FiniteAlgebra& a, int L, bool reduced, int lo, int hi)
{
    std::vector<int> tail;
    int m1 = INT_MIN;
    for (int i = 0; i < a.dim(); ++i)
        if (!(reduced && a.is_idempotent(i))) {
            tail.push_back(i);
            m1 = std::max(m1, rd(a, i));
        }
    bool prune = m1 <= -1;
    std::vector<Tensor> out;
    Tensor w;
    std::function<void(int)> rec = [&](int deg) {
        const auto& last = a.basis[w.back()];
        if (a.basis[w[0]].tgt == last.src && deg >= lo && deg <= hi) out.push_back(w);
        if (static_cast<int>(w.size()) == L) return;
        if (prune && deg <= lo) return;
        for (int i : tail) {
            if (a.basis[i].tgt != last.src) continue;
            w.push_back(i);
            rec(deg + rd(a, i));
            w.pop_back();
        }
    };
    for (int i = 0; i < a.dim(); ++i) {
        w = {i};
        rec(a.basis[i].degree);
    }
    return out;
}

std::string word_text(const FiniteAlgebra& a, const Tensor& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "|";
        s += a.basis[w[i]].label;
    }
    return s;
}

}  // namespace

Element check(const Tensor& w, const Scalar& c) { return {{Key{false, w}, c}}; }
Element hat(const Tensor& w, const Scalar& c) { return {{Key{true, w}, c}}; }

int degree(const FiniteAlgebra& a, const Key& k)
{
    int d = 1;
    for (int i : k.word) d += rd(a, i);
    return k.hat ? d - 1 : d;
}

std::string label(const FiniteAlgebra& a, const Key& k) { return (k.hat ? "^" : "") + word_text(a, k.word); }

bool cyclically_composable(const FiniteAlgebra& a, const Tensor& w)
{
    int n = static_cast<int>(w.size());
    for (int p = 0; p < n; ++p)
        if (a.basis[w[p]].src != a.basis[w[(p + 1) % n]].tgt) return false;
    return n > 0;
}

Element hochschild_b(const FiniteAlgebra& a, const Element& x) { return apply_check(a, x, false, [](const FiniteAlgebra& al, const Tensor& w) { return b_word(al, w); }, "hochschild_b"); }

Element bar_b_prime(const FiniteAlgebra& a, const Element& x)
{
    Element out;
    for (const auto& [k, c] : x) {
        if (!k.hat) throw std::invalid_argument("bar_b_prime expects hat input");
        for (const auto& [w, cc] : folds(a, k.word)) add_to(out, Key{true, w}, c * cc);
    }
    return out;
}

Element d_wedge_vee(const FiniteAlgebra& a, const Element& x)
{
    Element out;
    for (const auto& [k, c] : x) {
        if (!k.hat) throw std::invalid_argument("d_wedge_vee expects hat input");
        for (const auto& [w, cc] : dwv_word(a, k.word)) add_to(out, Key{false, w}, c * cc);
    }
    return out;
}

namespace {

Element b_nu_impl(const FiniteAlgebra& a, const Element& x, const SignFlip* flip)
{
    Element out;
    for (const auto& [k, c] : x) {
        if (!k.hat) {
            for (const auto& [w, cc] : b_word(a, k.word, flip)) add_to(out, Key{false, w}, c * cc);
        } else {
            for (const auto& [w, cc] : folds(a, k.word, flip)) add_to(out, Key{true, w}, c * cc);
            for (const auto& [w, cc] : dwv_word(a, k.word, flip)) add_to(out, Key{false, w}, c * cc);
        }
    }
    return out;
}

Element B_nu_impl(const FiniteAlgebra& a, const Element& x, const SignFlip* flip)
{
    Element out;
    for (const auto& [k, c] : x)
        if (!k.hat)
            for (const auto& [w, cc] : Bnu_word(a, k.word, flip)) add_to(out, Key{true, w}, c * cc);
    return out;
}

}  // namespace

Element b_nu(const FiniteAlgebra& a, const Element& x) { return b_nu_impl(a, x, nullptr); }

Element B_nu(const FiniteAlgebra& a, const Element& x) { return B_nu_impl(a, x, nullptr); }

Element cyclic_lambda(const FiniteAlgebra& a, const Element& x) { return apply_check(a, x, false, lambda_word, "lambda"); }

Element cyclic_norm(const FiniteAlgebra& a, const Element& x)
{
    Element out;
    for (const auto& [k, c] : x) {
        if (k.hat) throw std::invalid_argument("norm expects check input");
        Element cur{{k, c}};
        for (std::size_t i = 0; i < k.word.size(); ++i) {
            add_to(out, cur, Scalar(1, a.field));
            cur = cyclic_lambda(a, cur);
        }
    }
    return out;
}

Element s_nu(const FiniteAlgebra& a, const Element& x)
{
    Element out;
    for (const auto& [k, c] : x) {
        if (k.hat) throw std::invalid_argument("s_nu expects check input");
        int e = sm(a, k.word, 1, static_cast<int>(k.word.size())) + rd(a, k.word[0]) + 1;
        add_to(out, Key{true, k.word}, c * sgn(e, a));
    }
    return out;
}

Element reduce_degenerate(const FiniteAlgebra& a, const Element& x)
{
    Element out;
    for (const auto& [k, c] : x) {
        bool degenerate = false;
        for (std::size_t i = 1; i < k.word.size(); ++i) degenerate = degenerate || a.is_idempotent(k.word[i]);
        if (!degenerate) out.emplace(k, c);
    }
    return out;
}

std::optional<int> completeness_bound(const FiniteAlgebra& a, int L, bool reduced) { return reach(a, L, reduced).length_bound; }

namespace {

bool missing_at(const std::optional<int>& bound, int m) { return !bound || m <= *bound; }

std::set<int> incomplete_degrees(int lo, int hi, const std::function<bool(int)>& missing)
{
    std::set<int> out;
    for (int m = lo; m <= hi; ++m)
        if (missing(m)) out.insert(m);
    return out;
}

void add_words(KeyedBasis<Key>& basis, const FiniteAlgebra& a, const std::vector<Tensor>& words, bool with_check,
               bool with_hat, int lo, int hi)
{
    for (const auto& w : words) {
        if (with_check) {
            Key k{false, w};
            int d = degree(a, k);
            if (d >= lo && d <= hi) basis.add(k, d);
        }
        if (with_hat) {
            Key k{true, w};
            int d = degree(a, k);
            if (d >= lo && d <= hi) basis.add(k, d);
        }
    }
}

}  // namespace

HochschildComplex build_hochschild_complex(const FiniteAlgebra& a, int L, int lo, int hi, bool reduced)
{
    HochschildComplex h;
    add_words(h.basis, a, generate(a, L, reduced, lo - 1, hi + 1), true, false, lo - 1, hi + 1);
    std::map<int, lin::Matrix> d;
    auto op = [&](const Key& k) {
        Element e = hochschild_b(a, {{k, Scalar(1, a.field)}});
        return reduced ? reduce_degenerate(a, e) : e;
    };
    for (int k = lo - 1; k <= hi; ++k) d[k] = h.basis.block(k, 1, a.field, op, false);
    h.complex = lin::make_complex(h.basis.space([&](const Key& k) { return label(a, k); }), d, lo, hi, a.field);
    h.complex.lo_cut = h.complex.hi_cut = false;
    auto bound = reach(a, L, reduced).length_bound;
    h.complex.incomplete = incomplete_degrees(lo - 1, hi + 1, [&](int m) { return missing_at(bound, m); });
    return h;
}

std::string describe(const SignFlip& f)
{
    static const char* names[] = {"fold", "wrap", "wedge-vee", "connes"};
    return std::string(names[static_cast<int>(f.op)]) + " length " + std::to_string(f.length) + " term " +
           std::to_string(f.term);
}

std::vector<SignFlip> sign_flip_sites(int L, int arity)
{
    std::vector<SignFlip> out;
    for (int d = 1; d <= L; ++d) {
        int n = 0;
        for (int s = 0; s < d; ++s) n += std::min(arity, d - s);
        for (int t = 0; t < n; ++t) out.push_back({SignFlip::Op::Fold, d, t});
        int m = 0;
        for (int i = 1; i < d; ++i)
            for (int j = 1; j <= d - i && i + j <= arity; ++j) ++m;
        for (int t = 0; t < m; ++t) out.push_back({SignFlip::Op::Wrap, d, t});
        for (int t = 0; t < 2; ++t) out.push_back({SignFlip::Op::WedgeVee, d, t});
        for (int t = 0; t < d; ++t) out.push_back({SignFlip::Op::Connes, d, t});
    }
    return out;
}

s1::S1Complex chnu_s1(const FiniteAlgebra& a, int L, const std::optional<SignFlip>& flip)
{
    const SignFlip* f = flip ? &*flip : nullptr;
    KeyedBasis<Key> basis;
    add_words(basis, a, generate(a, L, false, INT_MIN / 4, INT_MAX / 4), true, true, INT_MIN / 4, INT_MAX / 4);
    std::map<int, lin::Matrix> d, bc;
    auto one = [&](const Key& k) { return Element{{k, Scalar(1, a.field)}}; };
    for (int k : basis.degrees()) {
        d[k] = basis.block(k, 1, a.field, [&](const Key& key) { return b_nu_impl(a, one(key), f); }, false);
        bc[k] = basis.block(k, -1, a.field, [&](const Key& key) { return B_nu_impl(a, one(key), f); }, false);
    }
    auto p = s1::make_s1(basis.space([&](const Key& k) { return label(a, k); }), {d, bc}, a.field);
    p.strict = true;
    p.complete = true;
    return p;
}

ChnuComplex build_chnu_complex(const FiniteAlgebra& a, int L, int lo, int hi, bool export_s1)
{
    ChnuComplex h;
    add_words(h.basis, a, generate(a, L, false, lo - 1, hi + 2), true, true, lo - 1, hi + 1);
    std::map<int, lin::Matrix> d;
    auto one = [&](const Key& k) { return Element{{k, Scalar(1, a.field)}}; };
    for (int k = lo - 1; k <= hi; ++k) d[k] = h.basis.block(k, 1, a.field, [&](const Key& key) { return b_nu(a, one(key)); }, false);
    auto space = h.basis.space([&](const Key& k) { return label(a, k); });
    h.complex = lin::make_complex(space, d, lo, hi, a.field);
    h.complex.lo_cut = h.complex.hi_cut = false;
    auto bound = reach(a, L, false).length_bound;
    h.complex.incomplete = incomplete_degrees(lo - 1, hi + 1, [&](int m) { return missing_at(bound, m); });
    if (export_s1) h.s1 = chnu_s1(a, L);
    return h;
}

namespace {

// A re-run only vouches for degree k when it enlarged the chain spaces in degrees k - 1 or k.
lin::HomologyTable stable_table(const lin::BoundedComplex& base_c, const lin::BoundedComplex& rerun_c)
{
    lin::HomologyTable base = lin::homology(base_c);
    lin::HomologyTable rerun = lin::homology(rerun_c);
    lin::HomologyTable out = base;
    for (auto& [k, e] : out) {
        bool edge = e.note == "window edge";
        bool certified = !base_c.incomplete.count(k) && !base_c.incomplete.count(k - 1);
        bool touched = false;
        for (int j = k - 1; j <= k; ++j) touched = touched || rerun_c.space.dim(j) != base_c.space.dim(j);
        bool stable = rerun.count(k) && rerun.at(k).dim == e.dim;
        e.reliable = !edge && stable && (certified || touched);
        if (!edge) e.note = !stable ? "truncated" : certified ? "" : "stable";
    }
    return out;
}

}  // namespace

lin::HomologyTable hh_table(const FiniteAlgebra& a, int L, int lo, int hi, bool reduced)
{
    return stable_table(build_hochschild_complex(a, L, lo, hi, reduced).complex,
                        build_hochschild_complex(a, L + 1, lo, hi, reduced).complex);
}

std::string mode_name(CyclicMode m)
{
    switch (m) {
    case CyclicMode::Positive: return "positive";
    case CyclicMode::Negative: return "negative";
    case CyclicMode::Periodic: return "periodic";
    }
    return "?";
}

namespace {

std::pair<int, int> exponent_range(CyclicMode mode, int U)
{
    switch (mode) {
    case CyclicMode::Positive: return {-(U - 1), 0};
    case CyclicMode::Negative: return {0, U - 1};
    case CyclicMode::Periodic: return {-(U - 1), U - 1};
    }
    return {0, 0};
}

}  // namespace

UElement b_eq(const FiniteAlgebra& a, const UElement& x, CyclicMode mode, int U)
{
    auto [emin, emax] = exponent_range(mode, U);
    UElement out;
    for (const auto& [uk, c] : x) {
        Element one{{uk.key, c}};
        for (const auto& [k, v] : b_nu(a, one)) add_to(out, UKey{k, uk.exponent}, v);
        if (uk.exponent + 1 <= emax)
            for (const auto& [k, v] : B_nu(a, one)) add_to(out, UKey{k, uk.exponent + 1}, v);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->first.exponent < emin ? out.erase(it) : std::next(it);
    return out;
}

CyclicComplex cyclic_complex(const FiniteAlgebra& a, int L, int lo, int hi, int U, CyclicMode mode)
{
    if (U < 1) throw std::invalid_argument("u-order must be at least 1");
    auto [emin, emax] = exponent_range(mode, U);
    CyclicComplex cc;
    cc.mode = mode;
    cc.U = U;
    int wlo = lo - 1 - 2 * emax, whi = hi + 1 - 2 * emin;
    auto words = generate(a, L, false, wlo, whi + 1);
    for (int e = emin; e <= emax; ++e)
        for (const auto& w : words)
            for (bool h : {false, true}) {
                Key k{h, w};
                int d = degree(a, k) + 2 * e;
                if (d >= lo - 1 && d <= hi + 1) cc.basis.add(UKey{k, e}, d);
            }
    std::map<int, lin::Matrix> d;
    for (int k = lo - 1; k <= hi; ++k)
        d[k] = cc.basis.block(k, 1, a.field,
                              [&](const UKey& key) { return b_eq(a, {{key, Scalar(1, a.field)}}, mode, U); }, false);
    auto space = cc.basis.space([&](const UKey& k) { return s1::u_label(label(a, k.key), k.exponent); });
    cc.complex = lin::make_complex(space, d, lo, hi, a.field);
    cc.complex.lo_cut = cc.complex.hi_cut = false;

    Reach r = reach(a, L, false);
    auto missing = [&](int m) {
        bool low_side = mode != CyclicMode::Negative;
        bool high_side = mode != CyclicMode::Positive;
        if (missing_at(r.length_bound, m - 2 * emax)) return true;
        if (low_side && m <= r.top - 2 * U) return true;
        if (high_side && (!r.bounded || m >= r.bottom + 2 * U - 1)) return true;
        return false;
    };
    cc.complex.incomplete = incomplete_degrees(lo - 1, hi + 1, missing);
    return cc;
}

lin::HomologyTable hc_table(const FiniteAlgebra& a, int L, int lo, int hi, int U, CyclicMode mode)
{
    return stable_table(cyclic_complex(a, L, lo, hi, U, mode).complex,
                        cyclic_complex(a, L + 1, lo, hi, U + 1, mode).complex);
}

Element connecting_chase(const FiniteAlgebra& a, const UElement& z, int U)
{
    UElement lift;
    for (const auto& [k, c] : z) {
        if (k.exponent > 0) throw std::invalid_argument("connecting map expects a positive-mode chain");
        lift.emplace(UKey{k.key, k.exponent - 1}, c);
    }
    Element out;
    for (const auto& [k, c] : b_eq(a, lift, CyclicMode::Positive, U + 1)) {
        if (k.exponent != 0) throw std::invalid_argument("connecting map applied to a non-cycle");
        out.emplace(k.key, c);
    }
    return out;
}

s1::LesReport connes_les(const FiniteAlgebra& a, int L, int lo, int hi, int U)
{
    if (U < 2) throw std::invalid_argument("Connes sequence needs u-order at least 2");
    ChnuComplex P = build_chnu_complex(a, L, lo, hi + 1, false);
    CyclicComplex O = cyclic_complex(a, L, lo, hi, U, CyclicMode::Positive);
    CyclicComplex O1 = cyclic_complex(a, L, lo + 2, hi + 2, U - 1, CyclicMode::Positive);
    s1::LesInputs in;
    in.P = P.complex;
    in.O = O.complex;
    in.O1 = O1.complex;
    in.inclusion = [&](int m, const lin::SparseVec& v) {
        UElement e;
        for (const auto& [k, c] : P.basis.elem(m, v)) e.emplace(UKey{k, 0}, c);
        return O.basis.vec(e);
    };
    in.projection = [&](int m, const lin::SparseVec& v) {
        UElement e;
        for (const auto& [k, c] : O.basis.elem(m, v))
            if (k.exponent < 0) e.emplace(UKey{k.key, k.exponent + 1}, c);
        return O1.basis.vec(e);
    };
    in.connecting = [&](int m, const lin::SparseVec& v) {
        return P.basis.vec(connecting_chase(a, O1.basis.elem(m + 2, v), U - 1));
    };
    in.reliable = [&](const std::string& group, int deg) {
        const auto& inc = group == "P" ? P.complex.incomplete : group == "U" ? O.complex.incomplete : O1.complex.incomplete;
        return !inc.count(deg) && !inc.count(deg - 1) && !inc.count(deg + 1);
    };
    return s1::les_report(in, lo, hi);
}

UElement to_uelement(const UChain& c)
{
    UElement out;
    int sign = c.mode == CyclicMode::Positive ? -1 : 1;
    for (std::size_t k = 0; k < c.coeffs.size(); ++k)
        for (const auto& [key, v] : c.coeffs[k]) out.emplace(UKey{key, sign * static_cast<int>(k)}, v);
    return out;
}

UChain from_uelement(const UElement& e, int U)
{
    UChain c;
    c.U = U;
    c.coeffs.assign(U, {});
    for (const auto& [k, v] : e) {
        if (k.exponent > 0 || -k.exponent >= U) throw std::invalid_argument("not a positive-mode chain");
        c.coeffs[-k.exponent].emplace(k.key, v);
    }
    return c;
}

lin::SparseVec marking_chain(const s1::S1Complex& p, int m, const std::vector<lin::SparseVec>& beta)
{
    return s1::marking_formula(p, m, beta);
}

Element marking_chain(const FiniteAlgebra& a, const UChain& beta)
{
    if (beta.mode != CyclicMode::Positive) throw std::invalid_argument("marking map needs a positive-mode chain");
    int U = std::max<int>(beta.U, static_cast<int>(beta.coeffs.size()));
    if (!b_eq(a, to_uelement(beta), CyclicMode::Positive, U).empty())
        throw std::invalid_argument("beta is not an equivariant cocycle");
    Element out = beta.coeffs.empty() ? Element{} : B_nu(a, beta.coeffs[0]);
    if (!b_nu(a, out).empty()) throw std::logic_error("marking chain is not closed");
    return out;
}

std::string verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Found: return "found";
    case Verdict::None: return "none";
    case Verdict::Inconclusive: return "inconclusive-at-truncation";
    }
    return "?";
}

WitnessResult exactness_witness(const FiniteAlgebra& a, int L, int U, const Element& eta)
{
    WitnessResult res;
    if (!b_nu(a, eta).empty()) throw std::invalid_argument("eta is not a b_nu-cycle");
    if (eta.empty()) {
        res.verdict = Verdict::Found;
        res.witness = UChain{std::vector<Element>(U), CyclicMode::Positive, U};
        return res;
    }
    int n = -degree(a, eta.begin()->first);
    for (const auto& [k, c] : eta)
        if (degree(a, k) != -n) throw std::invalid_argument("eta is not homogeneous");

    int zdeg = -n + 1;
    CyclicComplex cc = cyclic_complex(a, L, zdeg, zdeg, U, CyclicMode::Positive);
    ChnuComplex ch = build_chnu_complex(a, L, -n - 1, -n, false);
    // Unknowns (z, w), z in CC^{zdeg}, w in CH^{-n-1}; equations b_eq z = 0 and B(c_0 z) + b_nu w = eta.
    int nz = cc.basis.dim(zdeg), nw = ch.basis.dim(-n - 1);
    int r1 = cc.basis.dim(zdeg + 1), r2 = ch.basis.dim(-n);
    lin::Matrix M(r1 + r2, nz + nw, a.field);
    lin::Matrix bz = cc.complex.d(zdeg);
    for (int j = 0; j < nz; ++j) {
        lin::SparseVec col;
        if (bz.cols() == nz)
            for (const auto& [r, v] : bz.col(j)) col.emplace_back(r, v);
        const UKey& key = cc.basis.keys(zdeg)[j];
        if (key.exponent == 0)
            for (const auto& [r, v] : ch.basis.vec(B_nu(a, {{key.key, Scalar(1, a.field)}})))
                col.emplace_back(r1 + r, v);
        M.set_col(j, std::move(col));
    }
    lin::Matrix bw = ch.complex.d(-n - 1);
    for (int j = 0; j < nw; ++j) {
        lin::SparseVec col;
        if (bw.cols() == nw)
            for (const auto& [r, v] : bw.col(j)) col.emplace_back(r1 + r, v);
        M.set_col(nz + j, std::move(col));
    }
    lin::SparseVec rhs;
    for (const auto& [r, v] : ch.basis.vec(eta)) rhs.emplace_back(r1 + r, v);
    auto sol = lin::Reduction(M).solve(rhs);
    if (sol) {
        lin::SparseVec zv, wv;
        for (const auto& [j, v] : *sol) (j < nz ? zv : wv).emplace_back(j < nz ? j : j - nz, v);
        res.verdict = Verdict::Found;
        res.witness = from_uelement(cc.basis.elem(zdeg, zv), U);
        res.correction = ch.basis.elem(-n - 1, wv);
        return res;
    }
    bool complete = !cc.complex.incomplete.count(zdeg) && !ch.complex.incomplete.count(-n - 1) &&
                    !ch.complex.incomplete.count(-n);
    res.verdict = complete ? Verdict::None : Verdict::Inconclusive;
    return res;
}

}  // namespace hochkit::hoch
