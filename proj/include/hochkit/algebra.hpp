#pragma once

#include "hochkit/linalg.hpp"
#include "hochkit/scalar.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hochkit::alg {

struct SemisimpleBase {
    std::vector<std::string> idempotents;

    int size() const { return static_cast<int>(idempotents.size()); }
    int index(const std::string& label) const;
};

struct Arrow {
    std::string label;
    int src = 0;
    int tgt = 0;
    int degree = 0;
};

struct GradedQuiver {
    SemisimpleBase base;
    std::vector<Arrow> arrows;

    int arrow_index(const std::string& label) const;
    void validate() const;
};

// A path a_k ... a_1 written left to right (a_1 acts first), or an idempotent.
struct Word {
    int vertex = -1;  // set only for idempotent words
    std::vector<int> arrows;

    static Word idempotent(int v) { return Word{v, {}}; }
    static Word path(std::vector<int> a) { return Word{-1, std::move(a)}; }
    bool is_idempotent() const { return arrows.empty(); }
    int weight() const { return static_cast<int>(arrows.size()); }
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;
};

int word_src(const GradedQuiver& q, const Word& w);
int word_tgt(const GradedQuiver& q, const Word& w);
int word_degree(const GradedQuiver& q, const Word& w);
// u v (u after v), or nothing when not composable.
std::optional<Word> concat(const GradedQuiver& q, const Word& u, const Word& v);
std::string word_label(const GradedQuiver& q, const Word& w);
// Deterministic order: weight, then lexicographic by arrow labels (idempotents by vertex).
bool word_order(const GradedQuiver& q, const Word& a, const Word& b);

using Combo = std::map<Word, Scalar>;
void add_term(Combo& c, const Word& w, const Scalar& s);
void add_combo(Combo& c, const Combo& o, const Scalar& s);
// Product of combinations; terms of weight above `max_weight` are dropped (negative: keep all).
Combo multiply(const GradedQuiver& q, const Combo& a, const Combo& b, int max_weight = -1);
std::string combo_label(const GradedQuiver& q, const Combo& c);

std::vector<Word> enumerate_words(const GradedQuiver& q, int max_weight, int lo, int hi);
lin::GradedSpace words_space(const GradedQuiver& q, int max_weight, int lo, int hi);

struct TruncationOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncatedDGAlgebra {
    GradedQuiver quiver;
    std::map<int, Combo> generator_diff;  // arrow index -> d(arrow)
    int weight_bound = 6;
    int lo = -1000000, hi = 1000000;
    bool completed = false;
    Field field = Field::Q;

    void validate() const;
};

// d(w) by the Leibniz rule d(xy) = dx y + (-1)^{|x|} x dy. Throws TruncationOverflow
// when a term exceeds the weight bound.
Combo leibniz_extend(const TruncatedDGAlgebra& a, const Word& w);
// Same, with terms above the weight bound dropped (the quotient by words of larger weight).
Combo differential_mod_weight(const TruncatedDGAlgebra& a, const Word& w);
Combo differential_mod_weight(const TruncatedDGAlgebra& a, const Combo& c);

struct DSquaredReport {
    bool pass = true;
    std::vector<std::pair<std::string, std::string>> failures;  // generator, residue
};
DSquaredReport check_d_squared(const TruncatedDGAlgebra& a);

// Cochain complex spanned by words of weight <= W modulo longer words, in degrees lo - 1 .. hi + 1
// (differentials out of lo - 1 .. hi only).
lin::BoundedComplex word_complex(const TruncatedDGAlgebra& a, int lo, int hi);

struct BasisElement {
    std::string label;
    int degree = 0;
    int src = 0;
    int tgt = 0;
};

using Coeffs = std::vector<std::pair<int, Scalar>>;  // sorted by basis index

struct FiniteAlgebra {
    SemisimpleBase base;
    std::vector<BasisElement> basis;
    std::vector<int> unit;  // basis index of each idempotent, -1 when absent
    std::map<std::pair<int, int>, Coeffs> mul;  // basis[i] * basis[j]
    std::map<int, Coeffs> diff;
    std::map<std::vector<int>, Coeffs> higher;  // mu^k on basis indices (x_k, ..., x_1), k >= 3
    int arity = 4;
    Field field = Field::Q;

    int dim() const { return static_cast<int>(basis.size()); }
    int index(const std::string& label) const;
    bool is_idempotent(int i) const;
    bool composable(int a, int b) const { return basis[a].src == basis[b].tgt; }  // a after b
    int max_arity() const;
    // Seidel-sign operations: mu1(a) = (-1)^{|a|} da, mu2(a2, a1) = (-1)^{|a1|} a2 a1, mu^k stored.
    // args in the order (x_k, ..., x_1).
    Coeffs mu(const std::vector<int>& args) const;
    FiniteAlgebra in_field(Field f) const;
};

struct AlgebraReport {
    bool pass = true;
    std::vector<std::string> problems;
};
AlgebraReport validate(const FiniteAlgebra& a);

// Builder helpers for structure constants.
void set_product(FiniteAlgebra& a, int i, int j, Coeffs c);
Coeffs coeffs_add(const Coeffs& a, const Coeffs& b, const Scalar& s);

lin::Reduction ideal_reduction(const TruncatedDGAlgebra& a, const std::vector<Combo>& relations,
                               const std::vector<Word>& words);

FiniteAlgebra quotient_truncated(const TruncatedDGAlgebra& a, const std::vector<Combo>& relations);

// Small test algebras.
namespace samples {
FiniteAlgebra ground(int r);                    // the base itself, r idempotents
FiniteAlgebra dual_numbers(int deg = 0);        // Q[x]/(x^2)
FiniteAlgebra product_qq();                     // Q x Q over the base Q
FiniteAlgebra product_qq_split();               // Q x Q over its two idempotents
FiniteAlgebra upper_triangular();               // 2x2 upper triangular over two idempotents
FiniteAlgebra matrix_dg();                      // End(V0 + V1[-1]) with d = [E10, -]
FiniteAlgebra matrix_dg_sub();                  // span{1, E00, E10} in matrix_dg
FiniteAlgebra truncated_poly(int n, int deg);   // Q[x]/(x^n)
FiniteAlgebra truncated_free(int dx, int dy, bool with_d);  // Q<x,y>/(length >= 3), d y = x
FiniteAlgebra minimal_ainf(int g, int k = 3);   // {e, v, top}, mu^k(v,...,v) = top
std::vector<std::pair<std::string, FiniteAlgebra>> test_algebras();  // the four named ones
std::vector<std::pair<std::string, FiniteAlgebra>> zoo();            // every sample
// Random algebra of dim <= max_dim: a sample with a random change of basis.
FiniteAlgebra random_unital(std::mt19937& rng, int max_dim = 4);
}  // namespace samples

}  // namespace hochkit::alg
