#include "hochkit/io.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

namespace hochkit::io {

namespace {

std::string located(const std::string& file, int line, int column, const std::string& message)
{
    std::string where = file;
    if (line > 0) where += (where.empty() ? "line " : ":") + std::to_string(line) + ":" + std::to_string(column);
    return where.empty() ? message : where + ": " + message;
}

struct Token {
    std::string text;
    int column = 0;
};

struct Line {
    int number = 0;
    std::vector<Token> tokens;

    [[noreturn]] void fail(std::size_t token, const std::string& message) const
    {
        int col = token < tokens.size() ? tokens[token].column : tokens.empty() ? 1 : tokens.back().column;
        throw ParseError(number, col, message);
    }
    const std::string& at(std::size_t i, const char* what) const
    {
        if (i >= tokens.size()) fail(i, std::string("expected ") + what);
        return tokens[i].text;
    }
    void expect(std::size_t i, const std::string& text) const
    {
        if (at(i, text.c_str()) != text) fail(i, "expected '" + text + "', found '" + tokens[i].text + "'");
    }
    void end(std::size_t i) const
    {
        if (i < tokens.size()) fail(i, "unexpected '" + tokens[i].text + "'");
    }
};

std::vector<Token> tokenize(const std::string& s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    auto push = [&](std::size_t from, std::size_t to) {
        out.push_back({s.substr(from, to - from), static_cast<int>(from) + 1});
    };
    auto punct = [](char c) { return c == ':' || c == '(' || c == ')' || c == '=' || c == '*' || c == '+'; };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (punct(c)) {
            push(i, i + 1);
            ++i;
        } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            push(i, i + 2);
            i += 2;
        } else if (c == '-' && (i + 1 == s.size() || !std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            push(i, i + 1);
            ++i;
        } else {
            std::size_t j = i + 1;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && !punct(s[j]) &&
                   !(s[j] == '-' && j + 1 < s.size() && s[j + 1] == '>'))
                ++j;
            push(i, j);
            i = j;
        }
    }
    return out;
}

// Splits into sections and calls on_line(section, line) for each statement.
void scan(std::istream& in, const std::set<std::string>& sections,
          const std::function<void(const std::string&, const Line&)>& on_line)
{
    std::string raw, section;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = raw.find_last_not_of(" \t\r");
        if (raw[first] == '[') {
            if (raw[last] != ']') throw ParseError(number, static_cast<int>(first) + 1, "unterminated section header");
            std::string name = raw.substr(first + 1, last - first - 1);
            if (!sections.count(name)) throw ParseError(number, static_cast<int>(first) + 1, "unknown section [" + name + "]");
            section = name;
            continue;
        }
        Line line{number, tokenize(raw)};
        if (section.empty()) line.fail(0, "statement outside a section");
        on_line(section, line);
    }
}

bool is_rational(const std::string& s)
{
    static const std::regex re("-?[0-9]+(/[0-9]+)?");
    return std::regex_match(s, re);
}

Scalar rational(const Line& line, std::size_t i)
{
    const auto& s = line.at(i, "a number");
    if (!is_rational(s)) line.fail(i, "'" + s + "' is not a number");
    mpq_class q(s);
    if (q.get_den() == 0) line.fail(i, "zero denominator");
    q.canonicalize();
    return Scalar(q);
}

int integer(const Line& line, std::size_t i)
{
    const auto& s = line.at(i, "an integer");
    static const std::regex re("-?[0-9]+");
    if (!std::regex_match(s, re)) line.fail(i, "'" + s + "' is not an integer");
    try {
        return std::stoi(s);
    } catch (const std::out_of_range&) {
        line.fail(i, "'" + s + "' is out of range");
    }
}

long long_integer(const Line& line, std::size_t i)
{
    const auto& s = line.at(i, "an integer");
    static const std::regex re("-?[0-9]+");
    if (!std::regex_match(s, re)) line.fail(i, "'" + s + "' is not an integer");
    try {
        return std::stol(s);
    } catch (const std::out_of_range&) {
        line.fail(i, "'" + s + "' is out of range");
    }
}

void check_label(const Line& line, std::size_t i)
{
    const auto& s = line.at(i, "a label");
    if (s == "-" || s == "->" || (s.size() == 1 && std::string(":()=*+").find(s[0]) != std::string::npos))
        line.fail(i, "'" + s + "' is not a label");
}

int vertex(const alg::SemisimpleBase& base, const Line& line, std::size_t i)
{
    const auto& s = line.at(i, "a vertex");
    for (int v = 0; v < base.size(); ++v)
        if (base.idempotents[v] == s) return v;
    line.fail(i, "dangling vertex '" + s + "'");
}

void add_vertex(alg::SemisimpleBase& base, const Line& line, std::size_t i)
{
    check_label(line, i);
    const auto& s = line.tokens[i].text;
    for (const auto& v : base.idempotents)
        if (v == s) line.fail(i, "duplicate vertex '" + s + "'");
    base.idempotents.push_back(s);
}

// `label : src -> tgt deg d`, returns the index just past the degree
std::size_t edge_statement(const alg::SemisimpleBase& base, const Line& line, std::string& label, int& src, int& tgt,
                           int& degree)
{
    check_label(line, 0);
    label = line.tokens[0].text;
    line.expect(1, ":");
    src = vertex(base, line, 2);
    line.expect(3, "->");
    tgt = vertex(base, line, 4);
    line.expect(5, "deg");
    degree = integer(line, 6);
    return 7;
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message, const std::string& file)
    : std::runtime_error(located(file, line, column, message)), line(line), column(column), message(message), file(file)
{
}

QuiverFile parse_quiver(std::istream& in)
{
    QuiverFile out;
    auto& q = out.quiver;
    scan(in, {"vertices", "arrows", "duals", "potential"}, [&](const std::string& section, const Line& line) {
        if (section == "vertices") {
            for (std::size_t i = 0; i < line.tokens.size(); ++i) add_vertex(q.base, line, i);
        } else if (section == "arrows") {
            alg::Arrow a;
            line.end(edge_statement(q.base, line, a.label, a.src, a.tgt, a.degree));
            for (const auto& b : q.arrows)
                if (b.label == a.label) line.fail(0, "duplicate arrow '" + a.label + "'");
            q.arrows.push_back(a);
        } else if (section == "duals") {
            check_label(line, 0);
            line.expect(1, "dual");
            check_label(line, 2);
            line.end(3);
            const auto& x = line.tokens[0].text;
            bool known = false;
            for (const auto& a : q.arrows) known |= a.label == x;
            if (!known) line.fail(0, "unknown arrow '" + x + "'");
            out.dual_labels[x] = line.tokens[2].text;
        } else {
            std::size_t i = 0;
            Scalar c(1);
            if (line.at(0, "a coefficient") != "cycle") c = rational(line, i++);
            line.expect(i++, "cycle");
            line.expect(i++, "(");
            std::vector<int> cycle;
            std::string word;
            for (; line.at(i, "')'") != ")"; ++i) {
                int a = -1;
                for (int k = 0; k < static_cast<int>(q.arrows.size()); ++k)
                    if (q.arrows[k].label == line.tokens[i].text) a = k;
                if (a < 0) line.fail(i, "unknown arrow '" + line.tokens[i].text + "'");
                cycle.push_back(a);
                word += (word.empty() ? "" : " ") + line.tokens[i].text;
            }
            line.end(i + 1);
            if (cycle.empty()) line.fail(i, "empty cycle");
            try {
                out.potential.add(q, cycle, c);
            } catch (const std::invalid_argument&) {
                line.fail(0, "potential word '" + word + "' is not a cycle: endpoints do not match");
            }
        }
    });
    if (q.base.idempotents.empty()) throw ParseError(0, 0, "quiver has no vertices");
    return out;
}

alg::FiniteAlgebra parse_algebra(std::istream& in, int arity)
{
    alg::FiniteAlgebra a;
    a.arity = arity;
    std::map<std::pair<int, int>, int> product_line;
    auto element = [&](const Line& line, std::size_t i) {
        const auto& s = line.at(i, "a basis element");
        for (int k = 0; k < a.dim(); ++k)
            if (a.basis[k].label == s) return k;
        line.fail(i, "unknown basis element '" + s + "'");
    };
    auto combo = [&](const Line& line, std::size_t i) {
        std::map<int, Scalar> terms;
        if (line.at(i, "a linear combination") == "0") {
            line.end(i + 1);
            return alg::Coeffs{};
        }
        bool first = true;
        while (i < line.tokens.size()) {
            Scalar sign(1);
            const auto& t = line.tokens[i].text;
            if (t == "+" || t == "-") {
                if (t == "-") sign = Scalar(-1);
                ++i;
            } else if (!first) {
                line.fail(i, "expected '+' or '-'");
            }
            // a number is a coefficient when a label follows it
            Scalar c(1);
            if (is_rational(line.at(i, "a term")) && i + 1 < line.tokens.size() && line.tokens[i + 1].text != "+" &&
                line.tokens[i + 1].text != "-")
                c = rational(line, i++);
            terms[element(line, i++)] += sign * c;
            first = false;
        }
        alg::Coeffs out;
        for (const auto& [k, s] : terms)
            if (!s.is_zero()) out.emplace_back(k, s);
        return out;
    };
    scan(in, {"vertices", "basis", "algebra"}, [&](const std::string& section, const Line& line) {
        if (section == "vertices") {
            for (std::size_t i = 0; i < line.tokens.size(); ++i) add_vertex(a.base, line, i);
            a.unit.resize(a.base.size(), -1);
        } else if (section == "basis") {
            alg::BasisElement e;
            std::size_t i = edge_statement(a.base, line, e.label, e.src, e.tgt, e.degree);
            for (const auto& b : a.basis)
                if (b.label == e.label) line.fail(0, "duplicate basis element '" + e.label + "'");
            if (i < line.tokens.size() && line.tokens[i].text == "unit") {
                if (e.src != e.tgt || e.degree != 0) line.fail(i, "a unit must be a degree-0 loop");
                if (a.unit[e.src] >= 0) line.fail(i, "vertex already has a unit");
                a.unit[e.src] = a.dim();
                ++i;
            }
            line.end(i);
            a.basis.push_back(e);
        } else if (line.at(0, "a statement") == "d") {
            int x = element(line, 1);
            line.expect(2, "=");
            auto c = combo(line, 3);
            if (!c.empty()) a.diff[x] = c;
        } else if (line.tokens[0].text == "mu") {
            std::vector<int> args;
            std::size_t i = 1;
            for (; line.at(i, "'='") != "="; ++i) args.push_back(element(line, i));
            if (args.size() < 3) line.fail(1, "mu needs at least three arguments; use '*' and 'd'");
            if (static_cast<int>(args.size()) > arity)
                line.fail(1, "mu^" + std::to_string(args.size()) + " exceeds the arity bound " + std::to_string(arity));
            auto c = combo(line, i + 1);
            if (!c.empty()) a.higher[args] = c;
        } else {
            int x = element(line, 0);
            line.expect(1, "*");
            int y = element(line, 2);
            line.expect(3, "=");
            if (a.is_idempotent(x) || a.is_idempotent(y)) line.fail(0, "products with units are implied");
            auto c = combo(line, 4);
            if (!c.empty()) a.mul[{x, y}] = c;
        }
    });
    if (a.base.idempotents.empty()) throw ParseError(0, 0, "algebra has no vertices");
    for (int v = 0; v < a.base.size(); ++v) {
        int u = a.unit[v];
        if (u < 0) continue;
        for (int i = 0; i < a.dim(); ++i) {
            if (a.basis[i].tgt == v) a.mul[{u, i}] = {{i, Scalar(1)}};
            if (a.basis[i].src == v) a.mul[{i, u}] = {{i, Scalar(1)}};
        }
    }
    return a;
}

ce::FrontComplex parse_front(std::istream& in)
{
    ce::FrontComplex f;
    auto cell = [&](const Line& line, std::size_t i) {
        auto c = f.find(line.at(i, "a cell"));
        if (!c) line.fail(i, "unknown cell '" + line.tokens[i].text + "'");
        return *c;
    };
    auto sheet = [&](const Line& line, std::size_t i, int c) {
        const auto& s = line.at(i, "a sheet");
        if (!f.sheet_index(c, s)) line.fail(i, "unmatched sheet '" + s + "' over " + f.cell(c).label);
    };
    scan(in, {"cells", "sheets", "matchings"}, [&](const std::string& section, const Line& line) {
        if (section == "cells") {
            check_label(line, 0);
            if (f.find(line.tokens[0].text)) line.fail(0, "duplicate cell '" + line.tokens[0].text + "'");
            int dim = integer(line, 1);
            if (dim < 0 || dim > 2) line.fail(1, "cell dimension must be 0, 1 or 2");
            std::vector<int> boundary;
            for (std::size_t i = 2; i < line.tokens.size(); ++i) {
                int b = cell(line, i);
                if (f.cell(b).dim != dim - 1) line.fail(i, "boundary cell of the wrong dimension");
                boundary.push_back(b);
            }
            if (dim == 1 && boundary.size() != 2) line.fail(1, "a 1-cell needs two endpoints");
            if (dim == 0 && !boundary.empty()) line.fail(2, "a 0-cell has no boundary");
            if (dim == 2 && boundary.empty()) line.fail(1, "a 2-cell needs its bounding 1-cells");
            f.add_cell(line.tokens[0].text, dim, boundary);
        } else if (section == "sheets") {
            int c = cell(line, 0);
            check_label(line, 1);
            if (f.sheet_index(c, line.tokens[1].text)) line.fail(1, "duplicate sheet '" + line.tokens[1].text + "'");
            int mu = integer(line, 2);
            long h = long_integer(line, 3);
            line.end(4);
            f.add_sheet(c, line.tokens[1].text, mu, h);
        } else {
            int edge = cell(line, 0);
            if (f.cell(edge).dim != 1) line.fail(0, "matchings are given on 1-cells");
            int end = cell(line, 1);
            const auto& bd = f.cell(edge).boundary;
            if (std::find(bd.begin(), bd.end(), end) == bd.end()) line.fail(1, "not an endpoint of " + f.cell(edge).label);
            sheet(line, 2, edge);
            line.expect(3, "->");
            std::string to = line.at(4, "a sheet or '-'");
            if (to == "-") to.clear();
            else sheet(line, 4, end);
            line.end(5);
            f.match(edge, end, line.tokens[2].text, to);
        }
    });
    try {
        f.validate();
    } catch (const ce::FrontError& e) {
        throw ParseError(0, 0, e.what());
    }
    return f;
}

hoch::Element parse_chain(const alg::FiniteAlgebra& a, const std::string& text)
{
    Line line{1, tokenize(text)};
    hoch::Element out;
    if (line.at(0, "a chain") == "0") {
        line.end(1);
        return out;
    }
    std::size_t i = 0;
    bool first = true;
    while (i < line.tokens.size()) {
        Scalar c(1, a.field);
        const auto& t = line.tokens[i].text;
        if (t == "+" || t == "-") {
            if (t == "-") c = Scalar(-1, a.field);
            ++i;
        } else if (!first) {
            line.fail(i, "expected '+' or '-'");
        }
        if (is_rational(line.at(i, "a term"))) c *= rational(line, i++).in(a.field);
        const auto& kind = line.at(i, "'check' or 'hat'");
        if (kind != "check" && kind != "hat") line.fail(i, "expected 'check' or 'hat'");
        line.expect(++i, "(");
        hoch::Tensor w;
        for (++i; line.at(i, "')'") != ")"; ++i) {
            try {
                w.push_back(a.index(line.tokens[i].text));
            } catch (const std::invalid_argument&) {
                line.fail(i, "unknown basis element '" + line.tokens[i].text + "'");
            }
        }
        ++i;
        if (w.empty()) line.fail(i - 1, "empty word");
        add_to(out, kind == "hat" ? hoch::hat(w, c) : hoch::check(w, c), Scalar(1, a.field));
        first = false;
    }
    return out;
}

namespace {

template <class F>
auto load(const std::string& path, F parse)
{
    std::ifstream in(path);
    if (!in) throw ParseError(0, 0, "cannot open file", path);
    try {
        return parse(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line, e.column, e.message, path);
    }
}

}  // namespace

QuiverFile load_quiver(const std::string& path)
{
    return load(path, [](std::istream& in) { return parse_quiver(in); });
}

alg::FiniteAlgebra load_algebra(const std::string& path, int arity)
{
    return load(path, [&](std::istream& in) { return parse_algebra(in, arity); });
}

ce::FrontComplex load_front(const std::string& path)
{
    return load(path, [](std::istream& in) { return parse_front(in); });
}

}  // namespace hochkit::io
