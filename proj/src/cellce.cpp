#include "hochkit/cellce.hpp"

#include <algorithm>

namespace hochkit::ce {

int FrontComplex::add_cell(std::string label, int dim, std::vector<int> boundary)
{
    if (dim < 0 || dim > 2) throw FrontError("cell " + label + " has dimension " + std::to_string(dim));
    if (find(label)) throw FrontError("duplicate cell " + label);
    cells_.push_back({std::move(label), dim, std::move(boundary), {}});
    return static_cast<int>(cells_.size()) - 1;
}

void FrontComplex::add_sheet(int cell, std::string name, int maslov, long height)
{
    auto& sheets = cells_.at(cell).sheets;
    if (sheet_index(cell, name)) throw FrontError("duplicate sheet " + name + " over " + cells_[cell].label);
    Sheet s{std::move(name), maslov, height};
    auto pos = std::find_if(sheets.begin(), sheets.end(), [&](const Sheet& t) {
        return t.height < s.height || (t.height == s.height && t.name > s.name);
    });
    sheets.insert(pos, std::move(s));
}

void FrontComplex::match(int edge, int end, const std::string& from, const std::string& to)
{
    matchings_[{edge, end, from}] = to;
}

std::optional<int> FrontComplex::find(const std::string& label) const
{
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i].label == label) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> FrontComplex::sheet_index(int cell, const std::string& name) const
{
    const auto& sheets = cells_.at(cell).sheets;
    for (std::size_t i = 0; i < sheets.size(); ++i)
        if (sheets[i].name == name) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> FrontComplex::matched(int edge, int end, int sheet) const
{
    const auto& name = cells_.at(edge).sheets.at(sheet).name;
    auto it = matchings_.find({edge, end, name});
    if (it == matchings_.end()) return sheet_index(end, name);
    if (it->second.empty()) return std::nullopt;
    return sheet_index(end, it->second);
}

bool FrontComplex::precedes(int cell, int m, int n) const
{
    const auto& s = cells_.at(cell).sheets;
    return s.at(m).height > s.at(n).height;
}

void FrontComplex::validate() const
{
    const int nc = static_cast<int>(cells_.size());
    for (const auto& c : cells_) {
        const std::size_t want = c.dim == 0 ? 0 : 2;
        if (c.dim != 2 && c.boundary.size() != want)
            throw FrontError("cell " + c.label + " needs " + std::to_string(want) + " boundary cells");
        if (c.dim == 2 && c.boundary.empty()) throw FrontError("2-cell " + c.label + " has no boundary");
        for (int b : c.boundary)
            if (b < 0 || b >= nc || cells_[b].dim != c.dim - 1)
                throw FrontError("cell " + c.label + " has a boundary cell of the wrong dimension");
        if (c.dim > 0)
            for (std::size_t i = 0; i + 1 < c.sheets.size(); ++i)
                if (c.sheets[i].height == c.sheets[i + 1].height)
                    throw FrontError("sheet pair " + c.sheets[i].name + ", " + c.sheets[i + 1].name +
                                     " without defined order over " + c.label);
    }
    for (const auto& [key, to] : matchings_) {
        const auto& [edge, end, from] = key;
        const auto& e = cells_.at(edge);
        if (e.dim != 1 || std::find(e.boundary.begin(), e.boundary.end(), end) == e.boundary.end())
            throw FrontError("matching on " + e.label + " names a cell that is not its endpoint");
        if (!sheet_index(edge, from)) throw FrontError("unmatched sheet " + from + " over " + e.label);
        if (!to.empty() && !sheet_index(end, to))
            throw FrontError("unmatched sheet " + to + " over " + cells_[end].label);
    }
    for (int edge = 0; edge < nc; ++edge) {
        const auto& e = cells_[edge];
        if (e.dim != 1) continue;
        for (int end : e.boundary) {
            std::vector<std::optional<int>> image;
            for (int i = 0; i < static_cast<int>(e.sheets.size()); ++i) image.push_back(matched(edge, end, i));
            const auto& target = cells_[end].sheets;
            for (std::size_t i = 0; i < image.size(); ++i) {
                if (!image[i]) continue;
                if (target[*image[i]].maslov != e.sheets[i].maslov)
                    throw FrontError("sheet " + e.sheets[i].name + " changes potential from " + e.label + " to " +
                                     cells_[end].label);
                for (std::size_t j = i + 1; j < image.size(); ++j) {
                    if (!image[j]) continue;
                    if (*image[i] == *image[j])
                        throw FrontError("two sheets over " + e.label + " meet one sheet over " + cells_[end].label);
                    if (target[*image[i]].height < target[*image[j]].height)
                        throw FrontError("sheets over " + e.label + " change order at " + cells_[end].label);
                }
            }
        }
    }
}

void toggle(Poly& p, const Monomial& m)
{
    if (!p.erase(m)) p.insert(m);
}

Poly operator+(const Poly& x, const Poly& y)
{
    Poly out = x;
    for (const auto& m : y) toggle(out, m);
    return out;
}

Poly operator*(const Poly& x, const Poly& y)
{
    Poly out;
    for (const auto& u : x)
        for (const auto& v : y) {
            Monomial w = u;
            w.insert(w.end(), v.begin(), v.end());
            toggle(out, w);
        }
    return out;
}

std::optional<int> CEGenerators::find(int cell, int upper, int lower) const
{
    auto it = index.find({cell, upper, lower});
    if (it == index.end()) return std::nullopt;
    return it->second;
}

std::string CEGenerators::label(int id) const
{
    const auto& g = generators.at(id);
    const auto& c = front.cell(g.cell);
    const char* kind = g.kind == Kind::a ? "a" : g.kind == Kind::b ? "b" : "c";
    return std::string(kind) + "(" + c.label + ";" + c.sheets[g.upper].name + "," + c.sheets[g.lower].name + ")";
}

std::string CEGenerators::label(const Poly& p) const
{
    if (p.empty()) return "0";
    std::string out;
    for (const auto& m : p) {
        if (!out.empty()) out += " + ";
        if (m.empty()) out += "1";
        for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "*" : "") + label(m[i]);
    }
    return out;
}

int CEGenerators::degree(const Monomial& m) const
{
    int d = 0;
    for (int x : m) d += generators.at(x).degree;
    return d;
}

int CEGenerators::alive_count() const
{
    return static_cast<int>(std::count(alive.begin(), alive.end(), 1));
}

CEGenerators grade_generators(const FrontComplex& f)
{
    f.validate();
    CEGenerators g;
    g.front = f;
    for (int c = 0; c < static_cast<int>(f.cells().size()); ++c) {
        const auto& cell = f.cell(c);
        const Kind kind = cell.dim == 0 ? Kind::a : cell.dim == 1 ? Kind::b : Kind::c;
        const int n = static_cast<int>(cell.sheets.size());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (!f.precedes(c, i, j)) continue;
                int degree = cell.sheets[j].maslov - cell.sheets[i].maslov + 1 - cell.dim;
                g.index[{c, i, j}] = static_cast<int>(g.generators.size());
                g.generators.push_back({kind, c, i, j, degree});
            }
    }
    g.alive.assign(g.generators.size(), 1);
    for (int id = 0; id < static_cast<int>(g.generators.size()); ++id)
        if (g.generators[id].kind == Kind::b) {
            Poly d = b_differential(g, id);
            if (!d.empty()) g.differential[id] = std::move(d);
        }
    return g;
}

Poly b_differential(const CEGenerators& g, int b)
{
    const auto& gen = g.generators.at(b);
    if (gen.kind != Kind::b) throw std::invalid_argument(g.label(b) + " is not a 1-cell generator");
    const auto& f = g.front;
    const int edge = gen.cell;
    const int alpha = f.cell(edge).boundary[0], gamma = f.cell(edge).boundary[1];
    auto a_at = [&](int end, int i, int j) -> std::optional<int> {
        auto mi = f.matched(edge, end, i), mj = f.matched(edge, end, j);
        if (!mi || !mj) return std::nullopt;
        return g.find(end, *mi, *mj);
    };
    const int m = gen.upper, n = gen.lower;
    Poly d;
    if (auto a = a_at(alpha, m, n)) toggle(d, {*a});
    if (auto a = a_at(gamma, m, n)) toggle(d, {*a});
    for (int k = m + 1; k < n; ++k) {
        if (auto a = a_at(alpha, m, k)) toggle(d, {*a, *g.find(edge, k, n)});
        if (auto a = a_at(gamma, k, n)) toggle(d, {*g.find(edge, m, k), *a});
    }
    return d;
}

namespace {

// The degree-1 a that b can be cancelled against, if b is eligible.
std::optional<int> partner(const CEGenerators& g, int b)
{
    auto it = g.differential.find(b);
    if (!g.alive[b] || it == g.differential.end()) return std::nullopt;
    std::optional<int> linear;
    for (const auto& m : it->second) {
        if (m.size() != 1) continue;
        if (linear) return std::nullopt;
        linear = m[0];
    }
    if (!linear) return std::nullopt;
    const auto& a = g.generators[*linear];
    if (a.kind != Kind::a || a.degree != 1) return std::nullopt;
    for (const auto& m : it->second)
        if (m.size() > 1 && std::find(m.begin(), m.end(), *linear) != m.end()) return std::nullopt;
    return linear;
}

Poly substitute(const Poly& p, int a, const Poly& replacement, int b)
{
    Poly out;
    for (const auto& m : p) {
        Poly term{{}};
        for (int x : m) {
            if (x == b) {
                term.clear();
                break;
            }
            term = term * (x == a ? replacement : Poly{{x}});
        }
        out = out + term;
    }
    return out;
}

Elimination eliminate(CEGenerators& g, int b, int a, const std::vector<Elimination>& log)
{
    if (!g.alive[a] || !g.alive[b])
        throw CancellationError("elimination revisits " + g.label(g.alive[a] ? b : a), log);
    Poly rest = g.differential.at(b);
    toggle(rest, {a});
    g.alive[a] = g.alive[b] = 0;
    g.differential.erase(b);
    for (auto it = g.differential.begin(); it != g.differential.end();) {
        it->second = substitute(it->second, a, rest, b);
        it = it->second.empty() ? g.differential.erase(it) : std::next(it);
    }
    return {b, a, std::move(rest)};
}

}  // namespace

Cancellation cancel_positive(const CEGenerators& g)
{
    Cancellation out{g, {}};
    for (;;) {
        std::optional<std::pair<int, int>> pick;
        for (const auto& [b, d] : out.reduced.differential)
            if (auto a = partner(out.reduced, b)) {
                pick = {b, *a};
                break;
            }
        if (!pick) return out;
        out.log.push_back(eliminate(out.reduced, pick->first, pick->second, out.log));
    }
}

CEGenerators replay(const CEGenerators& g, const std::vector<Elimination>& log)
{
    CEGenerators out = g;
    std::vector<Elimination> done;
    for (const auto& step : log) {
        if (step.b < 0 || step.b >= static_cast<int>(g.generators.size()) || step.a < 0 ||
            step.a >= static_cast<int>(g.generators.size()))
            throw CancellationError("log names an unknown generator", done);
        if (!out.alive[step.a] || !out.alive[step.b])
            throw CancellationError("elimination revisits " + out.label(out.alive[step.a] ? step.b : step.a), done);
        if (partner(out, step.b) != step.a)
            throw CancellationError(out.label(step.b) + " is not eligible against " + out.label(step.a), done);
        done.push_back(eliminate(out, step.b, step.a, done));
        if (done.back().replacement != step.replacement)
            throw CancellationError("replacement for " + out.label(step.a) + " differs from the log", done);
    }
    return out;
}

std::map<int, int> degree_spectrum(const CEGenerators& g)
{
    std::map<int, int> out;
    for (std::size_t i = 0; i < g.generators.size(); ++i)
        if (g.alive[i]) ++out[g.generators[i].degree];
    return out;
}

std::vector<int> grading_failures(const CEGenerators& g)
{
    std::vector<int> out;
    for (int id = 0; id < static_cast<int>(g.generators.size()); ++id) {
        const auto& gen = g.generators[id];
        const auto& sheets = g.front.cell(gen.cell).sheets;
        const int gap = sheets[gen.lower].maslov - sheets[gen.upper].maslov;
        const int want = gen.kind == Kind::a ? gap + 1 : gen.kind == Kind::b ? gap : gap - 1;
        if (gen.degree != want || sheets[gen.upper].height <= sheets[gen.lower].height) out.push_back(id);
    }
    return out;
}

}  // namespace hochkit::ce
