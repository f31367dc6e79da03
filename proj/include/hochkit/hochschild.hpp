#pragma once

#include "hochkit/algebra.hpp"
#include "hochkit/keyed.hpp"
#include "hochkit/s1.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hochkit::hoch {

// Tensor word x_d (x) ... (x) x_1 with word[0] = x_d, the special slot.
using Tensor = std::vector<int>;

struct Key {
    bool hat = false;
    Tensor word;
    friend bool operator==(const Key&, const Key&) = default;
    friend auto operator<=>(const Key&, const Key&) = default;
};

using Element = std::map<Key, Scalar>;

Element check(const Tensor& w, const Scalar& c);
Element hat(const Tensor& w, const Scalar& c);

int degree(const alg::FiniteAlgebra& a, const Key& k);
std::string label(const alg::FiniteAlgebra& a, const Key& k);
bool cyclically_composable(const alg::FiniteAlgebra& a, const Tensor& w);

// The operators. Each acts linearly; inputs of the wrong tag throw.
Element hochschild_b(const alg::FiniteAlgebra& a, const Element& x);
Element bar_b_prime(const alg::FiniteAlgebra& a, const Element& x);
Element d_wedge_vee(const alg::FiniteAlgebra& a, const Element& x);
Element b_nu(const alg::FiniteAlgebra& a, const Element& x);
Element B_nu(const alg::FiniteAlgebra& a, const Element& x);
Element cyclic_lambda(const alg::FiniteAlgebra& a, const Element& x);
Element cyclic_norm(const alg::FiniteAlgebra& a, const Element& x);
Element s_nu(const alg::FiniteAlgebra& a, const Element& x);
// Drop terms with an idempotent in a non-special slot (the normalized quotient).
Element reduce_degenerate(const alg::FiniteAlgebra& a, const Element& x);

// Degrees strictly above this bound contain no word longer than L, so they are exact.
std::optional<int> completeness_bound(const alg::FiniteAlgebra& a, int L, bool reduced);

struct HochschildComplex {
    KeyedBasis<Key> basis;
    lin::BoundedComplex complex;  // incomplete degrees are flagged
};

HochschildComplex build_hochschild_complex(const alg::FiniteAlgebra& a, int L, int lo, int hi, bool reduced = true);

struct ChnuComplex {
    KeyedBasis<Key> basis;
    lin::BoundedComplex complex;
    // The whole length-L truncation (all degrees): delta_0 = b_nu, delta_1 = B_nu. A degree window
    // is not closed under delta_1, so the export ignores the window.
    s1::S1Complex s1;
};

ChnuComplex build_chnu_complex(const alg::FiniteAlgebra& a, int L, int lo, int hi, bool export_s1 = true);

// One term of one formula with its sign reversed, for mutation testing of the axiom checks.
struct SignFlip {
    enum class Op { Fold, Wrap, WedgeVee, Connes } op = Op::Fold;
    int length = 1;  // acts on words of this length
    int term = 0;    // position of the term in the formula's sum
};
std::string describe(const SignFlip& f);
std::vector<SignFlip> sign_flip_sites(int L, int arity);

s1::S1Complex chnu_s1(const alg::FiniteAlgebra& a, int L, const std::optional<SignFlip>& flip = std::nullopt);

// Homology tables whose reliability is stability under a (L+1, U+1) re-run, away from window edges.
lin::HomologyTable hh_table(const alg::FiniteAlgebra& a, int L, int lo, int hi, bool reduced = true);


enum class CyclicMode { Positive, Negative, Periodic };
std::string mode_name(CyclicMode m);

struct UKey {
    Key key;
    int exponent = 0;  // the element is key * u^exponent
    friend bool operator==(const UKey&, const UKey&) = default;
    friend auto operator<=>(const UKey&, const UKey&) = default;
};

using UElement = std::map<UKey, Scalar>;

struct CyclicComplex {
    CyclicMode mode = CyclicMode::Positive;
    int U = 1;
    KeyedBasis<UKey> basis;
    lin::BoundedComplex complex;
};

// b_eq = b_nu + u B_nu on the positive, negative or periodic u-complex.
UElement b_eq(const alg::FiniteAlgebra& a, const UElement& x, CyclicMode mode, int U);
CyclicComplex cyclic_complex(const alg::FiniteAlgebra& a, int L, int lo, int hi, int U, CyclicMode mode);
lin::HomologyTable hc_table(const alg::FiniteAlgebra& a, int L, int lo, int hi, int U, CyclicMode mode);

// Connecting map on chain level by the chase: lift sum c_k u^{-k} to sum c_k u^{-k-1}, apply b_eq,
// read off the u^0 part.
Element connecting_chase(const alg::FiniteAlgebra& a, const UElement& z, int U);

s1::LesReport connes_les(const alg::FiniteAlgebra& a, int L, int lo, int hi, int U);

// Positive-mode cocycle: coeffs[k] multiplies u^{-k}.
struct UChain {
    std::vector<Element> coeffs;
    CyclicMode mode = CyclicMode::Positive;
    int U = 1;
};

UElement to_uelement(const UChain& c);
UChain from_uelement(const UElement& e, int U);

// sum_k delta_{k+1}(beta_k) on an abstract S1-complex; throws when beta is not an equivariant cocycle.
lin::SparseVec marking_chain(const s1::S1Complex& p, int m, const std::vector<lin::SparseVec>& beta);
// The same formula on CH^nu, where only delta_1 = B_nu survives.
Element marking_chain(const alg::FiniteAlgebra& a, const UChain& beta);

enum class Verdict { Found, None, Inconclusive };
std::string verdict_name(Verdict v);

struct WitnessResult {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<UChain> witness;
    Element correction;  // w with B(witness) + b_nu(w) = eta
};

WitnessResult exactness_witness(const alg::FiniteAlgebra& a, int L, int U, const Element& eta);

}  // namespace hochkit::hoch
