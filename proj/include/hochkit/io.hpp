#pragma once

#include "hochkit/algebra.hpp"
#include "hochkit/cellce.hpp"
#include "hochkit/ginzburg.hpp"
#include "hochkit/hochschild.hpp"

#include <istream>
#include <map>
#include <stdexcept>
#include <string>

namespace hochkit::io {

// Syntax or semantic error in an input file; line and column are 1-based, 0 when not tied to a token.
struct ParseError : std::runtime_error {
    ParseError(int line, int column, const std::string& message, const std::string& file = {});
    int line = 0;
    int column = 0;
    std::string message;
    std::string file;
};

struct QuiverFile {
    alg::GradedQuiver quiver;
    gz::Potential potential;
    std::map<std::string, std::string> dual_labels;
};

// [vertices] names; [arrows] `x: v -> w deg d`; [duals] `x dual y`; [potential] `coeff cycle(a b c)`.
QuiverFile parse_quiver(std::istream& in);

// [vertices]; [basis] `x: v -> w deg d` with a trailing `unit` on idempotents;
// [algebra] `x * y = combo`, `d x = combo`, `mu x3 x2 x1 = combo` with combo like `2 y - 1/2 z` or `0`.
// Products with units are implied. Higher operations above `arity` are rejected.
alg::FiniteAlgebra parse_algebra(std::istream& in, int arity = 4);

// [cells] `label dim boundary...`; [sheets] `cell sheet maslov height`;
// [matchings] `edge end sheet -> sheet` or `edge end sheet -> -` for an unmatched sheet.
ce::FrontComplex parse_front(std::istream& in);

// Chain in CH^nu such as `hat(x) - 1/2 check(x y)`; letters are listed x_d first.
hoch::Element parse_chain(const alg::FiniteAlgebra& a, const std::string& text);

// Reads a file; errors carry the path in their message.
QuiverFile load_quiver(const std::string& path);
alg::FiniteAlgebra load_algebra(const std::string& path, int arity = 4);
ce::FrontComplex load_front(const std::string& path);

}  // namespace hochkit::io
