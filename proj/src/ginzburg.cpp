#include "hochkit/ginzburg.hpp"

#include <algorithm>
#include <set>

namespace hochkit::gz {

using alg::Combo;
using alg::GradedQuiver;
using alg::Word;

namespace {

int path_degree(const GradedQuiver& q, const std::vector<int>& arrows, std::size_t from, std::size_t to)
{
    int d = 0;
    for (std::size_t i = from; i < to; ++i) d += q.arrows[arrows[i]].degree;
    return d;
}

bool is_cycle(const GradedQuiver& q, const std::vector<int>& c)
{
    if (c.empty()) return false;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (q.arrows[c[i]].src != q.arrows[c[i + 1]].tgt) return false;
    return q.arrows[c.back()].src == q.arrows[c.front()].tgt;
}

}  // namespace

std::pair<std::vector<int>, int> canonical_rotation(const GradedQuiver& q, const std::vector<int>& cycle)
{
    // rotating P S to S P costs (-1)^{|P||S|}
    const std::size_t m = cycle.size();
    const int total = path_degree(q, cycle, 0, m);
    std::vector<int> best;
    int sign = 0;
    bool clash = false;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<int> r(cycle.begin() + i, cycle.end());
        r.insert(r.end(), cycle.begin(), cycle.begin() + i);
        int p = path_degree(q, cycle, 0, i);
        int s = ((p * (total - p)) & 1) ? -1 : 1;
        if (best.empty() || r < best) {
            best = std::move(r);
            sign = s;
            clash = false;
        } else if (r == best && s != sign) {
            clash = true;
        }
    }
    return {best, clash ? 0 : sign};
}

void Potential::add(const GradedQuiver& q, const std::vector<int>& cycle, const Scalar& s)
{
    if (!is_cycle(q, cycle)) throw std::invalid_argument("potential term is not a cycle");
    auto [rep, sign] = canonical_rotation(q, cycle);
    if (sign == 0 || s.is_zero()) return;
    auto it = terms_.find(rep);
    Scalar v = sign > 0 ? s : -s;
    if (it == terms_.end()) {
        terms_.emplace(std::move(rep), v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
}

void Potential::add(const GradedQuiver& q, const Potential& o, const Scalar& s)
{
    for (const auto& [c, v] : o.terms_) add(q, c, v * s);
}

std::string potential_label(const GradedQuiver& q, const Potential& w)
{
    Combo c;
    for (const auto& [cycle, s] : w.terms()) alg::add_term(c, Word::path(cycle), s);
    return alg::combo_label(q, c);
}

Combo cyclic_derivative(const GradedQuiver& q, const Potential& w, int arrow)
{
    Combo out;
    for (const auto& [c, s] : w.terms()) {
        const std::size_t m = c.size();
        const int total = path_degree(q, c, 0, m);
        for (std::size_t i = 0; i < m; ++i) {
            if (c[i] != arrow) continue;
            int p = path_degree(q, c, 0, i);
            int rest = total - p;  // |a| + |S|
            std::vector<int> sp(c.begin() + i + 1, c.end());
            sp.insert(sp.end(), c.begin(), c.begin() + i);
            Word term = sp.empty() ? Word::idempotent(q.arrows[arrow].src) : Word::path(sp);
            alg::add_term(out, term, ((p * rest) & 1) ? -s : s);
        }
    }
    return out;
}

GinzburgPresentation build_ginzburg(const GradedQuiver& q, const Potential& w, int n, int W,
                                    const std::map<std::string, std::string>& dual_labels, int lo, int hi)
{
    q.validate();
    const int na = static_cast<int>(q.arrows.size());
    for (const auto& [c, s] : w.terms()) {
        if (c.size() < 2) throw GinzburgError("potential has a term of length 1");
        for (int a : c)
            if (a < 0 || a >= na) throw GinzburgError("potential uses an arrow outside the quiver");
        if (path_degree(q, c, 0, c.size()) != 3 - n)
            throw GinzburgError("potential term " + alg::word_label(q, Word::path(c)) + " has degree " +
                                std::to_string(path_degree(q, c, 0, c.size())) + ", expected " + std::to_string(3 - n));
    }

    GinzburgPresentation g;
    g.n = n;
    g.n_arrows = na;
    auto& a = g.algebra;
    a.quiver = q;
    a.weight_bound = W;
    a.lo = lo;
    a.hi = hi;
    for (const auto& arr : q.arrows) {
        auto it = dual_labels.find(arr.label);
        std::string label = it != dual_labels.end() ? it->second : arr.label + "'";
        a.quiver.arrows.push_back({label, arr.tgt, arr.src, 2 - n - arr.degree});
    }
    const int nv = q.base.size();
    for (int v = 0; v < nv; ++v)
        a.quiver.arrows.push_back({nv == 1 ? "t" : "t_" + q.base.idempotents[v], v, v, 1 - n});
    std::set<std::string> seen;
    for (const auto& arr : a.quiver.arrows)
        if (!seen.insert(arr.label).second) throw GinzburgError("duplicate generator label " + arr.label);

    // d a* = (-1)^{|a|} d_a w
    for (int i = 0; i < na; ++i) {
        Combo d = cyclic_derivative(q, w, i);
        if (q.arrows[i].degree & 1)
            for (auto& [word, s] : d) s = -s;
        if (!d.empty()) a.generator_diff[g.dual(i)] = std::move(d);
    }
    // d t_v = sum over arrows into v of a a* - sum over arrows out of v of (-1)^{|a||a*|} a* a
    for (int v = 0; v < nv; ++v) {
        Combo d;
        for (int i = 0; i < na; ++i) {
            const auto& arr = q.arrows[i];
            if (arr.tgt == v) alg::add_term(d, Word::path({i, g.dual(i)}), Scalar(1));
            if (arr.src == v) {
                int dd = a.quiver.arrows[g.dual(i)].degree;
                alg::add_term(d, Word::path({g.dual(i), i}), Scalar(((arr.degree * dd) & 1) ? 1 : -1));
            }
        }
        if (!d.empty()) a.generator_diff[g.loop(v)] = std::move(d);
    }
    for (const auto& [gen, d] : a.generator_diff)
        for (const auto& [word, s] : d)
            if (alg::word_degree(a.quiver, word) != a.quiver.arrows[gen].degree + 1)
                throw GinzburgError("differential of " + a.quiver.arrows[gen].label + " is not of degree +1");
    g.certificate = alg::check_d_squared(a);
    if (!g.certificate.pass)
        throw DSquaredError("d^2 != 0 on " + g.certificate.failures.front().first + ": " +
                            g.certificate.failures.front().second);
    return g;
}

alg::FiniteAlgebra jacobi_algebra(const GradedQuiver& q, const Potential& w, int W, const std::vector<Combo>& extra)
{
    for (const auto& arr : q.arrows)
        if (arr.degree != 0) throw GinzburgError("jacobi algebra needs arrows in degree 0");
    std::vector<Combo> rels;
    for (int i = 0; i < static_cast<int>(q.arrows.size()); ++i) {
        Combo d = cyclic_derivative(q, w, i);
        if (!d.empty()) rels.push_back(std::move(d));
    }
    rels.insert(rels.end(), extra.begin(), extra.end());
    alg::TruncatedDGAlgebra a{q, {}, W};
    return alg::quotient_truncated(a, rels);
}

std::vector<int> jacobi_dimensions(const GradedQuiver& q, const Potential& w, int W, const std::vector<Combo>& extra)
{
    std::vector<int> out;
    int prev = 0;
    for (int k = 0; k <= W; ++k) {
        int d = jacobi_algebra(q, w, k, extra).dim();
        out.push_back(d - prev);
        prev = d;
    }
    return out;
}

GinzburgHomology ginzburg_homology(const GinzburgPresentation& g, int lo, int hi)
{
    GinzburgHomology out;
    for (int k = 0; k <= g.algebra.weight_bound; ++k) {
        auto a = g.algebra;
        a.weight_bound = k;
        auto table = lin::homology(alg::word_complex(a, lo, hi));
        for (const auto& [deg, e] : table) out.cumulative[k][deg] = e.dim;
        if (k == g.algebra.weight_bound) out.table = std::move(table);
    }
    return out;
}

alg::FiniteAlgebra truncated_algebra(const GinzburgPresentation& g)
{
    return alg::quotient_truncated(g.algebra, {});
}

GradedQuiver loop_quiver()
{
    GradedQuiver q;
    q.base.idempotents = {"v"};
    q.arrows = {{"x", 0, 0, 0}};
    return q;
}

QuiverWithPotential random_quiver_with_potential(std::mt19937& rng, int n)
{
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    QuiverWithPotential out;
    auto& q = out.quiver;
    int nv = pick(1, 3);
    for (int v = 0; v < nv; ++v) q.base.idempotents.push_back("v" + std::to_string(v));
    int na = pick(1, 4);
    for (int i = 0; i < na; ++i) {
        int deg = pick(0, 4) < 3 ? 0 : pick(-1, 1);
        q.arrows.push_back({"a" + std::to_string(i), pick(0, nv - 1), pick(0, nv - 1), deg});
    }
    std::vector<std::vector<int>> cycles;
    for (const auto& word : alg::enumerate_words(q, 4, 3 - n, 3 - n))
        if (word.weight() >= 2 && alg::word_src(q, word) == alg::word_tgt(q, word)) cycles.push_back(word.arrows);
    if (cycles.empty()) return out;
    int terms = pick(1, 3);
    for (int i = 0; i < terms; ++i)
        out.potential.add(q, cycles[pick(0, static_cast<int>(cycles.size()) - 1)], Scalar(pick(-3, 3)));
    return out;
}

}  // namespace hochkit::gz
