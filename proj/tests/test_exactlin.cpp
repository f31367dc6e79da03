#include <doctest.h>

#include "hochkit/linalg.hpp"

#include <algorithm>
#include <random>

using namespace hochkit;
using namespace hochkit::lin;

namespace {

Matrix random_matrix(std::mt19937& rng, int rows, int cols, double density)
{
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> v(-3, 3);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (u(rng) < density) {
                int x = v(rng);
                if (x) m.add(r, c, Scalar(x));
            }
    return m;
}

BoundedComplex two_term(const Matrix& m)
{
    GradedSpace s;
    for (int i = 0; i < m.cols(); ++i) s.add(0, "x" + std::to_string(i));
    for (int i = 0; i < m.rows(); ++i) s.add(1, "y" + std::to_string(i));
    auto c = make_complex(s, {{0, m}}, 0, 1, Field::Q);
    c.lo_cut = c.hi_cut = false;
    return c;
}

}  // namespace

TEST_SUITE("exactlin")
{
    TEST_CASE("scalar arithmetic over both fields")
    {
        CHECK(Scalar::ratio(1, 2) + Scalar::ratio(1, 3) == Scalar::ratio(5, 6));
        CHECK((Scalar(1, Field::F2) + Scalar(1, Field::F2)).is_zero());
        CHECK(Scalar(-3, Field::F2).is_one());
        CHECK_THROWS_AS(Scalar(1, Field::Q) + Scalar(1, Field::F2), FieldMismatch);
    }

    TEST_CASE("rank examples")
    {
        CHECK(rank(Matrix(3, 4)) == 0);
        CHECK(rank(Matrix::identity(3)) == 3);
        CHECK(rank(Matrix::from_rows({{1, 2}, {2, 4}})) == 1);
        CHECK(rank(Matrix::from_rows({{1, 1}, {1, 1}}, Field::F2)) == 1);
        CHECK(rank(Matrix::from_rows({{1, 1}, {1, -1}}, Field::F2)) == 1);
        CHECK(rank(Matrix::from_rows({{1, 1}, {1, -1}})) == 2);
    }

    TEST_CASE("solve examples")
    {
        Reduction id(Matrix::identity(2));
        auto x = id.solve({{0, Scalar(1)}});
        REQUIRE(x);
        CHECK(*x == SparseVec{{0, Scalar(1)}});
        CHECK_FALSE(Reduction(Matrix(2, 2)).solve({{1, Scalar(1)}}));
        auto y = Reduction(Matrix::from_rows({{1, 1}, {0, 0}})).solve({{0, Scalar(2)}});
        REQUIRE(y);
        CHECK(*y == SparseVec{{0, Scalar(2)}});
    }

    TEST_CASE("homology examples")
    {
        GradedSpace one;
        one.add(0, "v");
        auto c0 = make_complex(one, {}, 0, 0, Field::Q);
        c0.lo_cut = c0.hi_cut = false;
        CHECK(homology(c0).at(0).dim == 1);

        auto acyclic = two_term(Matrix::identity(1));
        auto h = homology(acyclic);
        CHECK(h.at(0).dim == 0);
        CHECK(h.at(1).dim == 0);

        auto rk1 = two_term(Matrix::from_rows({{1, 0}, {0, 0}}));
        auto h1 = homology(rk1);
        CHECK(h1.at(0).dim == 1);
        CHECK(h1.at(1).dim == 1);
    }

    TEST_CASE("window edges are flagged")
    {
        auto c = two_term(Matrix::identity(1));
        c.lo_cut = true;
        auto h = homology(c);
        CHECK_FALSE(h.at(0).reliable);
        CHECK(h.at(1).reliable);
    }

    TEST_CASE("d squared nonzero is rejected")
    {
        GradedSpace s;
        s.add(0, "a");
        s.add(1, "b");
        s.add(2, "c");
        Matrix d0(1, 1), d1(1, 1);
        d0.add(0, 0, Scalar(1));
        d1.add(0, 0, Scalar(1));
        auto c = make_complex(s, {{0, d0}, {1, d1}}, 0, 3, Field::Q);
        CHECK(d_squared_failures(c) == std::vector<int>{0});
        CHECK_THROWS(homology(c));
    }

    TEST_CASE("rank-nullity on random sparse maps")
    {
        std::mt19937 rng(7);
        for (int t = 0; t < 500; ++t) {
            int r = 1 + static_cast<int>(rng() % 8), c = 1 + static_cast<int>(rng() % 8);
            Matrix m = random_matrix(rng, r, c, 0.4);
            Reduction red(m);
            auto ker = red.kernel();
            CHECK(red.rank() + static_cast<int>(ker.size()) == c);
            for (const auto& k : ker) CHECK(m.apply(k).empty());
        }
    }

    TEST_CASE("solve re-multiplies to the target")
    {
        std::mt19937 rng(11);
        for (int t = 0; t < 300; ++t) {
            Matrix m = random_matrix(rng, 5, 4, 0.5);
            SparseVec y;
            if (t % 2) {
                y = m.apply({{static_cast<int>(rng() % 4), Scalar(2)}, });
            } else {
                Matrix v = random_matrix(rng, 5, 1, 0.6);
                y = v.col(0);
            }
            Reduction red(m);
            if (auto x = red.solve(y)) CHECK(m.apply(*x) == y);
            else CHECK(t % 2 == 0);
        }
    }

    TEST_CASE("homology is invariant under basis permutation")
    {
        std::mt19937 rng(3);
        for (int t = 0; t < 50; ++t) {
            // d1 d0 = 0 by construction: d1 = random, d0 = kernel columns of d1
            Matrix d1 = random_matrix(rng, 3, 5, 0.5);
            auto ker = Reduction(d1).kernel();
            Matrix d0(5, static_cast<int>(ker.size()));
            for (std::size_t i = 0; i + 1 < ker.size(); ++i) d0.set_col(static_cast<int>(i), ker[i]);
            std::vector<int> perm{0, 1, 2, 3, 4};
            std::shuffle(perm.begin(), perm.end(), rng);
            Matrix p(5, 5);
            for (int i = 0; i < 5; ++i) p.add(perm[i], i, Scalar(1));
            Matrix pinv = p.transpose();
            auto build = [&](const Matrix& a, const Matrix& b) {
                GradedSpace s;
                for (int i = 0; i < a.cols(); ++i) s.add(0, "a" + std::to_string(i));
                for (int i = 0; i < 5; ++i) s.add(1, "b" + std::to_string(i));
                for (int i = 0; i < 3; ++i) s.add(2, "c" + std::to_string(i));
                auto c = make_complex(s, {{0, a}, {1, b}}, 0, 2, Field::Q);
                c.lo_cut = c.hi_cut = false;
                return homology(c);
            };
            auto h0 = build(d0, d1);
            auto h1 = build(p * d0, d1 * pinv);
            for (int k = 0; k <= 2; ++k) CHECK(h0.at(k).dim == h1.at(k).dim);
        }
    }

    TEST_CASE("homology basis coordinates")
    {
        // C^0 = <a>, C^1 = <b, c>, d a = b. H^1 spanned by c.
        Matrix d0(2, 1);
        d0.add(0, 0, Scalar(1));
        HomologyBasis h(d0, Matrix(0, 2), 2);
        REQUIRE(h.dim() == 1);
        auto co = h.coords({{0, Scalar(5)}, {1, Scalar(3)}});
        CHECK(co[0] * h.reps()[0][0].second == Scalar(3));
        CHECK(h.is_boundary({{0, Scalar(2)}}));
    }
}
