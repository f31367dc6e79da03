#pragma once

#include "hochkit/algebra.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace hochkit::gz {

// Linear combination of cycles, each stored in its lexicographically minimal rotation.
class Potential {
public:
    // Adds s times the cycle (arrow indices, left to right). Throws if it is not a closed path.
    void add(const alg::GradedQuiver& q, const std::vector<int>& cycle, const Scalar& s);
    void add(const alg::GradedQuiver& q, const Potential& o, const Scalar& s);

    const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    friend bool operator==(const Potential&, const Potential&) = default;

private:
    std::map<std::vector<int>, Scalar> terms_;
};

// Canonical rotation of a cycle and the Koszul sign relating it to the input (0 if the cycle
// is odd under one of its own rotations).
std::pair<std::vector<int>, int> canonical_rotation(const alg::GradedQuiver& q, const std::vector<int>& cycle);

std::string potential_label(const alg::GradedQuiver& q, const Potential& w);

// Sum over occurrences of `arrow` in each cycle P a S of sign(P) S P, sign(P) = (-1)^{|P|(|a|+|S|)}.
alg::Combo cyclic_derivative(const alg::GradedQuiver& q, const Potential& w, int arrow);

struct GinzburgPresentation {
    alg::TruncatedDGAlgebra algebra;  // arrows of Q, then their duals, then one loop per vertex
    int n = 3;
    int n_arrows = 0;
    alg::DSquaredReport certificate;

    int dual(int arrow) const { return n_arrows + arrow; }
    int loop(int vertex) const { return 2 * n_arrows + vertex; }
};

struct GinzburgError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The built differential does not square to zero.
struct DSquaredError : GinzburgError {
    using GinzburgError::GinzburgError;
};

// Dual labels default to the arrow label with a trailing quote; `dual_labels` overrides them.
GinzburgPresentation build_ginzburg(const alg::GradedQuiver& q, const Potential& w, int n, int W,
                                    const std::map<std::string, std::string>& dual_labels = {},
                                    int lo = -1000000, int hi = 1000000);

// Path algebra of Q modulo (d_a w) and any extra relations, truncated at weight W.
alg::FiniteAlgebra jacobi_algebra(const alg::GradedQuiver& q, const Potential& w, int W,
                                  const std::vector<alg::Combo>& extra = {});
// Dimensions of the weight-k pieces, k = 0..W, from the cumulative truncations.
std::vector<int> jacobi_dimensions(const alg::GradedQuiver& q, const Potential& w, int W,
                                   const std::vector<alg::Combo>& extra = {});

struct GinzburgHomology {
    // Homology of G modulo words of weight > k, for k = 0..W: weight bound -> degree -> dim.
    std::map<int, std::map<int, int>> cumulative;
    lin::HomologyTable table;  // at the full weight bound
};

GinzburgHomology ginzburg_homology(const GinzburgPresentation& g, int lo, int hi);

// The weight-truncated dg algebra as a finite algebra.
alg::FiniteAlgebra truncated_algebra(const GinzburgPresentation& g);

// One vertex with a degree-0 loop x whose dual is named y.
alg::GradedQuiver loop_quiver();

struct QuiverWithPotential {
    alg::GradedQuiver quiver;
    Potential potential;
};

// Random quiver (<= 3 vertices, <= 4 arrows) with a potential of cycles of length 2..4 and degree 3 - n.
QuiverWithPotential random_quiver_with_potential(std::mt19937& rng, int n);

}  // namespace hochkit::gz
