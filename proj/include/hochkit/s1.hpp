#pragma once

#include "hochkit/linalg.hpp"

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace hochkit::s1 {

// Graded space with operations delta_j of degree 1 - 2j, j = 0..J.
struct S1Complex {
    lin::GradedSpace space;
    std::vector<lin::SparseMap> deltas;
    bool strict = false;    // delta_j = 0 for j >= 2
    bool complete = false;  // delta_j = 0 for j > J (relations up to 2J are then checkable)
    Field field = Field::Q;

    int J() const { return static_cast<int>(deltas.size()) - 1; }
    lin::Matrix delta(int j, int d) const;  // block of delta_j from degree d (zero when j > J)
};

S1Complex make_s1(const lin::GradedSpace& space, std::vector<std::map<int, lin::Matrix>> deltas, Field f);

struct AxiomReport {
    bool pass = true;
    std::map<int, bool> relation;  // k -> sum_j delta_j delta_{k-j} == 0
    std::vector<int> skipped;      // relations that would need unstored delta's
};

AxiomReport verify_axioms(const S1Complex& p);

struct PreMorphism {
    S1Complex source, target;
    int degree = 0;
    std::vector<lin::SparseMap> components;  // F^d with shift degree - 2d
};

PreMorphism premorphism_boundary(const PreMorphism& f);
PreMorphism identity_premorphism(const S1Complex& p);

// Q (x)^L_{S1} P truncated at t-power D; basis q (x) t^d (x) p in degree |q| - 2d + |p|.
lin::BoundedComplex derived_tensor(const S1Complex& q, const S1Complex& p, int D);

enum class UMode { Orbits, Fixed, Tate };
std::string mode_name(UMode m);

// u-linear model with equivariant differential sum_j delta_j u^j, exponents truncated by U.
// Orbits: exponents -(U-1)..0; fixed: 0..U-1 (mod u^U); Tate: -(U-1)..U-1.
lin::BoundedComplex u_model(const S1Complex& p, int U, int lo, int hi, UMode mode);
std::string u_label(const std::string& base, int exponent);

S1Complex diagonal(const S1Complex& p, const S1Complex& q);
S1Complex trivial(int r, Field f = Field::Q);

// Random strict complex: free cells and acyclic pairs, conjugated by a random graded automorphism.
// With `gauge` the result is twisted by 1 + g_1 u + g_2 u^2, which produces nonzero delta_2, delta_3.
S1Complex random_complex(std::mt19937& rng, int max_dim_per_degree, bool gauge = false);

// Long exact sequence report, shared by the Connes sequence and the Gysin triangle.
// For each degree m the nodes are H^m(P) -> H^m(orbits_U) -> H^{m+2}(orbits_{U-1}) -> H^{m+1}(P).
struct LesNode {
    std::string group;  // "P", "U", "U-1"
    int degree = 0;
    int dim = 0;
    int rank_in = 0;
    int rank_out = 0;
    bool composite_zero = true;
    bool exact = true;
    bool reliable = true;
};

struct LesReport {
    int lo = 0, hi = 0;
    std::map<int, int> rank_I, rank_S, rank_B;  // keyed by the source degree m
    std::map<int, lin::Matrix> I, S, B;
    std::vector<LesNode> nodes;
    bool exact = true;  // over reliable nodes
};

struct LesInputs {
    lin::BoundedComplex P, O, O1;  // P, orbits at U, orbits at U-1
    std::function<lin::SparseVec(int, const lin::SparseVec&)> inclusion;   // P^m -> O^m
    std::function<lin::SparseVec(int, const lin::SparseVec&)> projection;  // O^m -> O1^{m+2}
    // H^{m+2}(O1) -> H^{m+1}(P) on chain level
    std::function<lin::SparseVec(int, const lin::SparseVec&)> connecting;
    std::function<bool(const std::string&, int)> reliable = [](const std::string&, int) { return true; };
};

LesReport les_report(const LesInputs& in, int lo, int hi);

LesReport gysin_check(const S1Complex& p, int U, int lo, int hi);

// Snake-lemma connecting map of 0 -> P -> orbits_U -> orbits_{U-1}[2] -> 0 on a cycle in degree m+2.
lin::SparseVec snake_connecting(const S1Complex& p, int U, int m, const lin::SparseVec& z);

// sum_k delta_{k+1}(beta_k), with beta_k in degree m + 2k (beta = sum beta_k u^{-k} of degree m).
lin::SparseVec marking_formula(const S1Complex& p, int m, const std::vector<lin::SparseVec>& beta);

}  // namespace hochkit::s1
