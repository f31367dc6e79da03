#pragma once

#include "hochkit/algebra.hpp"
#include "hochkit/hochschild.hpp"
#include "hochkit/keyed.hpp"

#include <optional>
#include <vector>

namespace hochkit::ksz {

// Algebra with the trivial augmentation: projection onto the idempotents.
struct AugmentedAlgebra {
    alg::FiniteAlgebra algebra;
    std::vector<int> ideal;  // basis indices spanning the augmentation ideal
    bool nilpotent = true;   // long enough products of ideal elements vanish
};

// Throws if some idempotent is missing from the basis or the operations leave the ideal.
AugmentedAlgebra augment(const alg::FiniteAlgebra& a);

// Word x_k | ... | x_1 over the ideal (letters[0] = x_k), or the empty word at a vertex.
struct BarWord {
    int vertex = -1;
    hoch::Tensor letters;
    friend bool operator==(const BarWord&, const BarWord&) = default;
    friend auto operator<=>(const BarWord&, const BarWord&) = default;
};

struct BarCoalgebra {
    AugmentedAlgebra source;
    int max_length = 0;
    int min_degree = 0;
    KeyedBasis<BarWord> basis;
    lin::BoundedComplex complex;  // b' on words of length <= max_length and degree >= min_degree

    int degree(const BarWord& w) const;
    std::string label(const BarWord& w) const;
};

// Degree of a bar word is the sum of |x_i| - 1.
BarCoalgebra bar(const AugmentedAlgebra& a, int max_length, int min_degree = -1000000);

// Convolution algebra on the graded dual: generator x# of degree 1 - |x| with reversed endpoints,
// the dual of x_k | ... | x_1 is the word x_1# ... x_k#.
alg::TruncatedDGAlgebra dual_algebra(const BarCoalgebra& c);
// The dual cochain complex, built as the transpose of the bar differential.
lin::BoundedComplex dual_complex(const BarCoalgebra& c);

// Cobar generators [w] for nonempty bar words, of degree |w| + 1; the quotient by F^P keeps
// words of fewer than P generators.
alg::TruncatedDGAlgebra completed_cobar(const BarCoalgebra& c, int P);

// Rank of H^k(Omega C / F^P) -> H^k(Omega C / F^Q) for Q < P, computed on the given cobar generators.
int image_rank(const alg::TruncatedDGAlgebra& cobar, int P, int Q, int k);

// Homology of the completed cobar: rank of H(Omega C / F^P) -> H(Omega C / F^{P-2}) per degree.
// Reliable when the ideal is nilpotent, the bar truncation is complete there, and the rank does not change when P is raised
// to P + 1 with either the same or the next lower level.
lin::HomologyTable cobar_betti(const BarCoalgebra& c, int P, int lo, int hi);

// Homology of (A, mu^1).
lin::HomologyTable algebra_betti(const alg::FiniteAlgebra& a);

// Ext of the base over A, as the homology of the dual of the bar construction.
// Reliable when the bar truncation is complete there and stable under B -> B + 1.
lin::HomologyTable ext_betti(const AugmentedAlgebra& a, int lo, int hi, int B);

}  // namespace hochkit::ksz
