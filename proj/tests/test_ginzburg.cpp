#include <doctest.h>

#include "hochkit/ginzburg.hpp"

#include <random>

using namespace hochkit;
using namespace hochkit::alg;
using namespace hochkit::gz;

namespace {

GradedQuiver triangle()
{
    GradedQuiver q;
    q.base.idempotents = {"1", "2", "3"};
    q.arrows = {{"x", 1, 0, 0}, {"y", 2, 1, 0}, {"z", 0, 2, 0}};
    return q;
}

std::string diff_label(const GinzburgPresentation& g, int gen)
{
    auto it = g.algebra.generator_diff.find(gen);
    return it == g.algebra.generator_diff.end() ? "0" : combo_label(g.algebra.quiver, it->second);
}

Combo commutator(const GradedQuiver& q)
{
    Combo c;
    add_term(c, Word::path({q.arrow_index("x"), q.arrow_index("y")}), Scalar(1));
    add_term(c, Word::path({q.arrow_index("y"), q.arrow_index("x")}), Scalar(-1));
    return c;
}

GradedQuiver two_loops()
{
    GradedQuiver q;
    q.base.idempotents = {"v"};
    q.arrows = {{"x", 0, 0, 0}, {"y", 0, 0, 0}};
    return q;
}

}  // namespace

TEST_SUITE("ginzburg")
{
    TEST_CASE("canonical rotation")
    {
        auto q = triangle();  // x y z is a 3-cycle
        auto [r, s] = canonical_rotation(q, {1, 2, 0});
        CHECK(r == std::vector<int>{0, 1, 2});
        CHECK(s == 1);

        GradedQuiver odd;
        odd.base.idempotents = {"v"};
        odd.arrows = {{"a", 0, 0, 1}, {"b", 0, 0, 1}};
        auto [r2, s2] = canonical_rotation(odd, {1, 0});
        CHECK(r2 == std::vector<int>{0, 1});
        CHECK(s2 == -1);
        // a a is odd under its own rotation
        CHECK(canonical_rotation(odd, {0, 0}).second == 0);

        Potential w;
        w.add(odd, {0, 1}, Scalar(1));
        w.add(odd, {1, 0}, Scalar(1));
        CHECK(w.empty());
        CHECK_THROWS(w.add(q, {0, 1}, Scalar(1)));
    }

    TEST_CASE("cyclic derivative examples")
    {
        auto q = triangle();
        Potential zero;
        for (int a = 0; a < 3; ++a) CHECK(cyclic_derivative(q, zero, a).empty());

        Potential w;
        w.add(q, {0, 1, 2}, Scalar(1));
        CHECK(combo_label(q, cyclic_derivative(q, w, 0)) == "y*z");
        CHECK(combo_label(q, cyclic_derivative(q, w, 1)) == "z*x");
        CHECK(combo_label(q, cyclic_derivative(q, w, 2)) == "x*y");

        auto l = loop_quiver();
        Potential cube;
        cube.add(l, {0, 0, 0}, Scalar(1));
        CHECK(combo_label(l, cyclic_derivative(l, cube, 0)) == "3 x*x");
    }

    TEST_CASE("loop quiver with zero potential")
    {
        auto g = build_ginzburg(loop_quiver(), {}, 3, 4, {{"x", "y"}});
        const auto& q = g.algebra.quiver;
        REQUIRE(q.arrows.size() == 3);
        CHECK(q.arrows[0].label == "x");
        CHECK(q.arrows[0].degree == 0);
        CHECK(q.arrows[1].label == "y");
        CHECK(q.arrows[1].degree == -1);
        CHECK(q.arrows[2].label == "t");
        CHECK(q.arrows[2].degree == -2);
        CHECK(diff_label(g, 0) == "0");
        CHECK(diff_label(g, 1) == "0");
        CHECK(diff_label(g, 2) == "x*y - y*x");
        CHECK(g.certificate.pass);

        auto d = build_ginzburg(loop_quiver(), {}, 3, 4);
        CHECK(d.algebra.quiver.arrows[1].label == "x'");
    }

    TEST_CASE("A2 quiver with zero potential")
    {
        GradedQuiver q;
        q.base.idempotents = {"1", "2"};
        q.arrows = {{"a", 0, 1, 0}};
        auto g = build_ginzburg(q, {}, 3, 4);
        CHECK(g.algebra.quiver.arrows[2].label == "t_1");
        CHECK(g.algebra.quiver.arrows[3].label == "t_2");
        CHECK(diff_label(g, g.loop(0)) == "-a'*a");
        CHECK(diff_label(g, g.loop(1)) == "a*a'");
        CHECK(g.certificate.pass);
    }

    TEST_CASE("cubic potential")
    {
        auto l = loop_quiver();
        Potential cube;
        cube.add(l, {0, 0, 0}, Scalar(1));
        auto g = build_ginzburg(l, cube, 3, 5);
        CHECK(diff_label(g, g.dual(0)) == "3 x*x");
        CHECK(g.certificate.pass);
        // x x x has degree 0, which needs n = 3
        CHECK_THROWS_AS(build_ginzburg(l, cube, 2, 5), GinzburgError);
    }

    TEST_CASE("inconsistent potentials are rejected")
    {
        GradedQuiver q;
        q.base.idempotents = {"v"};
        q.arrows = {{"x", 0, 0, 0}, {"y", 0, 0, 1}};
        Potential mixed;
        mixed.add(q, {0, 0, 0}, Scalar(1));
        mixed.add(q, {0, 1, 1}, Scalar(1));
        CHECK_THROWS_AS(build_ginzburg(q, mixed, 3, 5), GinzburgError);

        Potential single;
        single.add(q, {0}, Scalar(1));
        CHECK_THROWS_AS(build_ginzburg(q, single, 3, 5), GinzburgError);
    }

    TEST_CASE("d squared on random quivers with potential")
    {
        std::mt19937 rng(2024);
        int nonzero = 0;
        for (int t = 0; t < 100; ++t) {
            auto qp = random_quiver_with_potential(rng, 3);
            if (!qp.potential.empty()) ++nonzero;
            INFO(potential_label(qp.quiver, qp.potential));
            auto g = build_ginzburg(qp.quiver, qp.potential, 3, 6);
            CHECK(g.certificate.pass);
            CHECK(check_d_squared(g.algebra).pass);
        }
        CHECK(nonzero >= 50);
    }

    TEST_CASE("d squared in other dimensions")
    {
        std::mt19937 rng(99);
        for (int n : {2, 4, 5})
            for (int t = 0; t < 30; ++t) {
                auto qp = random_quiver_with_potential(rng, n);
                auto g = build_ginzburg(qp.quiver, qp.potential, n, 5);
                CHECK(g.certificate.pass);
            }
    }

    TEST_CASE("Euler identity")
    {
        std::mt19937 rng(31);
        int tested = 0;
        for (int t = 0; t < 100; ++t) {
            auto qp = random_quiver_with_potential(rng, 3);
            const auto& q = qp.quiver;
            Potential lhs;
            for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a)
                for (const auto& [w, s] : cyclic_derivative(q, qp.potential, a)) {
                    std::vector<int> c{a};
                    c.insert(c.end(), w.arrows.begin(), w.arrows.end());
                    lhs.add(q, c, s);
                }
            Potential rhs;
            for (const auto& [c, s] : qp.potential.terms())
                rhs.add(q, c, s * Scalar(static_cast<long>(c.size())));
            CHECK(lhs == rhs);
            if (!qp.potential.empty()) ++tested;
        }
        CHECK(tested >= 50);
    }

    TEST_CASE("jacobi algebra examples")
    {
        auto l = loop_quiver();
        CHECK(jacobi_dimensions(l, {}, 4) == std::vector<int>{1, 1, 1, 1, 1});
        Potential cube;
        cube.add(l, {0, 0, 0}, Scalar(1));
        CHECK(jacobi_dimensions(l, cube, 4) == std::vector<int>{1, 1, 0, 0, 0});
        CHECK(validate(jacobi_algebra(l, cube, 4)).pass);

        auto q = two_loops();
        CHECK(jacobi_dimensions(q, {}, 3) == std::vector<int>{1, 2, 4, 8});
        CHECK(jacobi_dimensions(q, {}, 4, {commutator(q)}) == std::vector<int>{1, 2, 3, 4, 5});

        auto tri = triangle();
        Potential w;
        w.add(tri, {0, 1, 2}, Scalar(1));
        // every path of length 2 is a relation
        CHECK(jacobi_dimensions(tri, w, 3) == std::vector<int>{3, 3, 0, 0});
    }

    TEST_CASE("jacobi dimensions shrink when relations are added")
    {
        std::mt19937 rng(8);
        auto q = two_loops();
        auto words = enumerate_words(q, 3, 0, 0);
        for (int t = 0; t < 20; ++t) {
            std::vector<Combo> rels;
            auto prev = jacobi_dimensions(q, {}, 3);
            for (int k = 0; k < 3; ++k) {
                Combo r;
                int len = 1 + static_cast<int>(rng() % 3);
                for (int i = 0; i < 2; ++i) {
                    std::vector<Word> same;
                    for (const auto& w : words)
                        if (w.weight() == len) same.push_back(w);
                    add_term(r, same[rng() % same.size()], Scalar(static_cast<long>(rng() % 5) - 2));
                }
                if (r.empty()) continue;
                rels.push_back(r);
                auto cur = jacobi_dimensions(q, {}, 3, rels);
                for (std::size_t i = 0; i < cur.size(); ++i) CHECK(cur[i] <= prev[i]);
                prev = cur;
            }
        }
    }

    TEST_CASE("homology of the loop quiver")
    {
        auto g2 = build_ginzburg(loop_quiver(), {}, 2, 3, {{"x", "y"}});
        auto h = ginzburg_homology(g2, -3, 2);
        CHECK(h.cumulative.at(0).at(0) == 1);
        CHECK(h.cumulative.at(1).at(0) == 3);
        CHECK(h.cumulative.at(2).at(0) == 6);
        CHECK(h.cumulative.at(3).at(0) == 10);
        for (const auto& [k, row] : h.cumulative)
            for (const auto& [deg, dim] : row)
                if (deg > 0) CHECK(dim == 0);
        CHECK(g2.certificate.pass);

        auto g3 = build_ginzburg(loop_quiver(), {}, 3, 3, {{"x", "y"}});
        auto h3 = ginzburg_homology(g3, -4, 1);
        CHECK(h3.cumulative.at(3).at(1) == 0);
        // in dimension 3 the commutator has degree -1, so degree 0 is the free algebra on x
        CHECK(h3.cumulative.at(3).at(0) == 4);
    }

    TEST_CASE("exported truncation is a dg algebra")
    {
        auto g = build_ginzburg(loop_quiver(), {}, 3, 2, {{"x", "y"}});
        auto f = truncated_algebra(g);
        CHECK(f.dim() == 13);
        CHECK(validate(f).pass);
        CHECK_FALSE(f.diff.empty());

        std::mt19937 rng(4);
        for (int t = 0; t < 20; ++t) {
            auto qp = random_quiver_with_potential(rng, 3);
            auto gg = build_ginzburg(qp.quiver, qp.potential, 3, 2);
            CHECK(validate(truncated_algebra(gg)).pass);
        }
    }
}
