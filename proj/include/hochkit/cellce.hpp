#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace hochkit::ce {

struct FrontError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Sheet {
    std::string name;
    int maslov = 0;
    long height = 0;
};

struct Cell {
    std::string label;
    int dim = 0;
    std::vector<int> boundary;  // 1-cell: {initial, terminal} 0-cells; 2-cell: bounding 1-cells
    std::vector<Sheet> sheets;  // highest first
};

// Cells over the base with the sheets above each one. Sheets continue from a 1-cell to its
// endpoints by name unless a matching says otherwise.
class FrontComplex {
public:
    int add_cell(std::string label, int dim, std::vector<int> boundary = {});
    void add_sheet(int cell, std::string name, int maslov, long height);
    // sheet `from` over `edge` continues to sheet `to` over `end`; an empty `to` leaves it unmatched
    void match(int edge, int end, const std::string& from, const std::string& to);

    const std::vector<Cell>& cells() const { return cells_; }
    const Cell& cell(int i) const { return cells_.at(i); }
    std::optional<int> find(const std::string& label) const;
    std::optional<int> sheet_index(int cell, const std::string& name) const;
    // index over `end` of sheet `sheet` of `edge`, if it continues there
    std::optional<int> matched(int edge, int end, int sheet) const;
    // S_m precedes S_n over the cell when S_m is strictly higher
    bool precedes(int cell, int m, int n) const;

    // Throws FrontError on malformed incidence, clashing names, equal heights over a 1- or 2-cell,
    // or matchings that are not order-compatible injections.
    void validate() const;

private:
    std::vector<Cell> cells_;
    std::map<std::tuple<int, int, std::string>, std::string> matchings_;
};

enum class Kind { a, b, c };

struct Generator {
    Kind kind = Kind::a;
    int cell = 0;
    int upper = 0;  // sheet indices over the cell, upper strictly higher than lower
    int lower = 0;
    int degree = 0;
};

// Noncommutative polynomials over Z/2: a set of words in generator ids.
using Monomial = std::vector<int>;
using Poly = std::set<Monomial>;

void toggle(Poly& p, const Monomial& m);
Poly operator+(const Poly& x, const Poly& y);
Poly operator*(const Poly& x, const Poly& y);

struct CEGenerators {
    FrontComplex front;
    std::vector<Generator> generators;  // ordered by cell, then sheet pair
    std::vector<char> alive;
    std::map<int, Poly> differential;   // b generators only
    std::map<std::tuple<int, int, int>, int> index;

    std::optional<int> find(int cell, int upper, int lower) const;
    std::string label(int id) const;
    std::string label(const Poly& p) const;
    int degree(const Monomial& m) const;
    int alive_count() const;

    friend bool operator==(const CEGenerators& x, const CEGenerators& y)
    {
        return x.generators.size() == y.generators.size() && x.alive == y.alive && x.differential == y.differential;
    }
};

// One generator per comparable sheet pair over each cell, with
// |a| = mu(lower) - mu(upper) + 1, |b| = mu(lower) - mu(upper), |c| = mu(lower) - mu(upper) - 1.
CEGenerators grade_generators(const FrontComplex& f);

// d b^{m,n} over the 1-cell with initial end alpha and terminal end gamma:
// a_alpha^{m,n} + a_gamma^{m,n} + sum_k a_alpha^{m,k} b^{k,n} + sum_k b^{m,k} a_gamma^{k,n}.
// Pairs that do not continue to an endpoint, or are not comparable there, contribute zero.
Poly b_differential(const CEGenerators& g, int b);

struct Elimination {
    int b = 0;
    int a = 0;
    Poly replacement;
};

struct CancellationError : std::runtime_error {
    CancellationError(const std::string& what, std::vector<Elimination> log)
        : std::runtime_error(what), log(std::move(log))
    {
    }
    std::vector<Elimination> log;
};

struct Cancellation {
    CEGenerators reduced;
    std::vector<Elimination> log;
};

// b is eligible when its differential has exactly one linear term, that term is an a of degree 1,
// and that a occurs in no other term. Eliminates the smallest eligible b with its a
// (a := rest of d b, b := 0) until none is left.
Cancellation cancel_positive(const CEGenerators& g);
// Replays a logged order, checking each step is eligible.
CEGenerators replay(const CEGenerators& g, const std::vector<Elimination>& log);

std::map<int, int> degree_spectrum(const CEGenerators& g);

// Generators whose degree disagrees with the potentials recomputed from the front.
std::vector<int> grading_failures(const CEGenerators& g);

}  // namespace hochkit::ce
