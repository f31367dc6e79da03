#pragma once

#include "hochkit/scalar.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hochkit::lin {

// Sparse column vector: (row, value) pairs sorted by row, no zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x);  // y += a x
SparseVec scaled(const SparseVec& x, const Scalar& a);
SparseVec from_dense(const std::vector<Scalar>& v);
std::vector<Scalar> to_dense(const SparseVec& v, int n, Field f);

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, Field f = Field::Q);
    static Matrix identity(int n, Field f = Field::Q);
    static Matrix from_rows(const std::vector<std::vector<long>>& rows, Field f = Field::Q);

    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(cols_.size()); }
    Field field() const { return field_; }

    void add(int r, int c, const Scalar& v);
    Scalar at(int r, int c) const;
    const SparseVec& col(int c) const { return cols_[c]; }
    void set_col(int c, SparseVec v) { cols_[c] = std::move(v); }

    SparseVec apply(const SparseVec& x) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& a) const;
    Matrix transpose() const;
    bool is_zero() const;
    std::size_t nnz() const;
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    int rows_ = 0;
    Field field_ = Field::Q;
    std::vector<SparseVec> cols_;
};

// Column reduction with leftmost-lowest pivots: columns processed left to right,
// each reduced until its lowest nonzero row is not a pivot of an earlier column.
class Reduction {
public:
    explicit Reduction(const Matrix& m);

    int rank() const { return rank_; }
    // Basis of the kernel, as source vectors.
    std::vector<SparseVec> kernel() const;
    // x with m x = y, or nothing when y is outside the image.
    std::optional<SparseVec> solve(const SparseVec& y) const;
    bool in_image(const SparseVec& y) const { return solve(y).has_value(); }
    // y minus a combination of columns such that no entry sits on a pivot row.
    SparseVec normal_form(const SparseVec& y) const;
    bool is_pivot_row(int r) const { return pivot_col_.count(r) > 0; }
    // Whether column j is independent of the columns to its left.
    bool is_pivot_column(int j) const { return !reduced_[j].empty(); }

private:
    Field field_;
    int rank_ = 0;
    std::vector<SparseVec> reduced_;
    std::vector<SparseVec> transform_;
    std::unordered_map<int, int> pivot_col_;  // row -> column
};

int rank(const Matrix& m);

// Graded vector space with opaque labels.
class GradedSpace {
public:
    void add(int degree, const std::string& label);
    int dim(int degree) const;
    int total_dim() const;
    const std::vector<std::string>& labels(int degree) const;
    std::optional<int> index(int degree, const std::string& label) const;
    std::vector<int> degrees() const;
    bool empty() const { return labels_.empty(); }

private:
    std::map<int, std::vector<std::string>> labels_;
    std::map<int, std::unordered_map<std::string, int>> index_;
};

struct Entry {
    std::string target;
    std::string source;
    Scalar value;
};

// Degree-homogeneous linear map, stored as one block per source degree.
class SparseMap {
public:
    SparseMap() = default;
    SparseMap(GradedSpace source, GradedSpace target, int shift, Field f = Field::Q);

    const GradedSpace& source() const { return source_; }
    const GradedSpace& target() const { return target_; }
    int shift() const { return shift_; }
    Field field() const { return field_; }

    // Block from source degree d to target degree d + shift (zero-sized if absent).
    Matrix block(int d) const;
    void set_block(int d, Matrix m);
    void add(int source_degree, int row, int col, const Scalar& v);
    std::vector<Entry> entries() const;
    std::vector<int> block_degrees() const;

    SparseMap compose(const SparseMap& inner) const;  // this o inner
    SparseMap operator+(const SparseMap& o) const;
    SparseMap scaled(const Scalar& a) const;
    bool is_zero() const;

private:
    GradedSpace source_, target_;
    int shift_ = 0;
    Field field_ = Field::Q;
    std::map<int, Matrix> blocks_;
};

int rank(const SparseMap& m);

struct GradedVector {
    int degree = 0;
    SparseVec coords;
};

std::optional<GradedVector> solve(const SparseMap& m, const GradedVector& y);

struct HomologyEntry {
    int dim = 0;
    bool reliable = true;
    std::string note;
};

using HomologyTable = std::map<int, HomologyEntry>;

// Cochain complex truncated to a degree window. Degrees outside the window are absent.
struct BoundedComplex {
    GradedSpace space;
    SparseMap differential;  // shift +1
    int lo = 0, hi = 0;
    bool lo_cut = true;  // degree lo misses incoming boundaries because of the window
    bool hi_cut = true;  // degree hi misses outgoing differential because of the window
    std::set<int> incomplete;  // degrees where the space itself is truncated

    Field field() const { return differential.field(); }
    Matrix d(int k) const { return differential.block(k); }
};

// Build a complex from per-degree dimensions and differential blocks.
BoundedComplex make_complex(const GradedSpace& space, const std::map<int, Matrix>& d, int lo, int hi, Field f);

// Degrees k in (lo, hi-1) with d_{k+1} d_k != 0.
std::vector<int> d_squared_failures(const BoundedComplex& c);

HomologyTable homology(const BoundedComplex& c);

// Homology of C^k with chosen cycle representatives.
class HomologyBasis {
public:
    HomologyBasis(const Matrix& d_in, const Matrix& d_out, int dim);

    int dim() const { return static_cast<int>(reps_.size()); }
    const std::vector<SparseVec>& reps() const { return reps_; }
    // Coordinates of a cycle in the basis of representatives.
    std::vector<Scalar> coords(const SparseVec& cycle) const;
    bool is_boundary(const SparseVec& v) const;

private:
    Field field_;
    std::vector<SparseVec> reps_;
    std::optional<Reduction> combined_;  // [boundaries | reps]
    std::optional<Reduction> boundaries_;
    int n_boundary_cols_ = 0;
};

// Matrix of the map induced on homology by a chain map f: C^k -> D^j.
Matrix induced_map(const Matrix& f, const HomologyBasis& src, const HomologyBasis& tgt);

}  // namespace hochkit::lin
