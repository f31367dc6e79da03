#include <doctest.h>

#include "hochkit/cellce.hpp"
#include "hochkit/io.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace hochkit;
using namespace hochkit::ce;

namespace {

struct SheetSpec {
    std::string name;
    int maslov;
    long height;
};

// Two 0-cells joined by a 1-cell with a 2-cell on it, the same sheets everywhere unless overridden.
FrontComplex segment(const std::vector<SheetSpec>& sheets, const std::vector<SheetSpec>& right = {})
{
    FrontComplex f;
    int v0 = f.add_cell("v0", 0), v1 = f.add_cell("v1", 0);
    int e = f.add_cell("e", 1, {v0, v1});
    int c = f.add_cell("f", 2, {e});
    for (int cell : {v0, e, c})
        for (const auto& s : sheets) f.add_sheet(cell, s.name, s.maslov, s.height);
    for (const auto& s : right.empty() ? sheets : right) f.add_sheet(v1, s.name, s.maslov, s.height);
    return f;
}

int the(const CEGenerators& g, const std::string& label)
{
    for (int i = 0; i < static_cast<int>(g.generators.size()); ++i)
        if (g.label(i) == label) return i;
    FAIL("no generator " << label);
    return -1;
}

int max_alive_degree(const CEGenerators& g)
{
    auto s = degree_spectrum(g);
    return s.empty() ? INT_MIN : s.rbegin()->first;
}

int positive_count(const CEGenerators& g)
{
    int n = 0;
    for (const auto& [d, k] : degree_spectrum(g))
        if (d > 0) n += k;
    return n;
}

// Degrees recomputed from the sheets of the front alone.
std::map<int, int> spectrum_from_front(const FrontComplex& f)
{
    std::map<int, int> out;
    for (const auto& c : f.cells())
        for (std::size_t i = 0; i < c.sheets.size(); ++i)
            for (std::size_t j = 0; j < c.sheets.size(); ++j)
                if (c.sheets[i].height > c.sheets[j].height)
                    ++out[c.sheets[j].maslov - c.sheets[i].maslov + (c.dim == 0 ? 1 : c.dim == 1 ? 0 : -1)];
    return out;
}

void check_homogeneous(const CEGenerators& g)
{
    for (const auto& [b, d] : g.differential)
        for (const auto& m : d) {
            INFO(g.label(b), " -> ", g.label(Poly{m}));
            CHECK(g.degree(m) == g.generators[b].degree + 1);
            for (int x : m) CHECK(g.alive[x]);
        }
}

void check_cancellation(const CEGenerators& g, const Cancellation& r)
{
    auto before = degree_spectrum(g), after = degree_spectrum(r.reduced);
    const int steps = static_cast<int>(r.log.size());
    CHECK(r.reduced.alive_count() == g.alive_count() - 2 * steps);
    std::set<int> degrees;
    for (const auto& [d, k] : before) degrees.insert(d);
    for (const auto& [d, k] : after) degrees.insert(d);
    for (int d : degrees) {
        int x = before.count(d) ? before.at(d) : 0, y = after.count(d) ? after.at(d) : 0;
        if (d == 0 || d == 1) CHECK(x - y == steps);
        else CHECK(x == y);
    }
    // one positive generator less per step
    CEGenerators state = g;
    for (std::size_t i = 0; i < r.log.size(); ++i) {
        int p = positive_count(state);
        state = replay(state, {r.log[i]});
        CHECK(positive_count(state) == p - 1);
    }
    CHECK(state == r.reduced);
    CHECK(replay(g, r.log) == r.reduced);
    check_homogeneous(r.reduced);
}

// A front over a line of 0-cells whose strands only cross, with a random potential per strand.
FrontComplex random_front(std::mt19937& rng, int strands, int vertices)
{
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    FrontComplex f;
    std::vector<int> order(strands), maslov(strands);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (auto& m : maslov) m = pick(-1, 1);
    auto add_sheets = [&](int cell, std::optional<int> tie) {
        for (int pos = 0; pos < strands; ++pos) {
            long h = 10L * (strands - pos);
            if (tie && pos == *tie + 1) h += 10;
            int s = order[pos];
            f.add_sheet(cell, "s" + std::to_string(s), maslov[s], h);
        }
    };
    int prev = -1;
    for (int v = 0; v < vertices; ++v) {
        int cell = f.add_cell("v" + std::to_string(v), 0);
        if (prev >= 0) {
            int e = f.add_cell("e" + std::to_string(v - 1), 1, {prev, cell});
            int c = f.add_cell("f" + std::to_string(v - 1), 2, {e});
            add_sheets(e, {});
            add_sheets(c, {});
        }
        std::optional<int> tie;
        if (v > 0 && v + 1 < vertices && pick(0, 2) == 0) {
            int j = pick(0, strands - 2);
            if (maslov[order[j]] == maslov[order[j + 1]]) tie = j;
        }
        add_sheets(cell, tie);
        if (tie) std::swap(order[*tie], order[*tie + 1]);
        prev = cell;
    }
    return f;
}

}  // namespace

TEST_SUITE("cellce")
{
    TEST_CASE("grading formulas on two sheets")
    {
        auto g = grade_generators(segment({{"U", 1, 2}, {"L", 0, 1}}));
        CHECK(g.generators[the(g, "a(v0;U,L)")].degree == 0);
        CHECK(g.generators[the(g, "b(e;U,L)")].degree == -1);
        CHECK(g.generators[the(g, "c(f;U,L)")].degree == -2);
        CHECK(degree_spectrum(g) == std::map<int, int>{{-2, 1}, {-1, 1}, {0, 2}});

        auto eq = grade_generators(segment({{"U", 0, 2}, {"L", 0, 1}}));
        CHECK(eq.generators[the(eq, "a(v1;U,L)")].degree == 1);
        CHECK(grading_failures(eq).empty());
    }

    TEST_CASE("empty front")
    {
        auto g = grade_generators(FrontComplex{});
        CHECK(degree_spectrum(g).empty());
        auto r = cancel_positive(g);
        CHECK(r.log.empty());
    }

    TEST_CASE("order needs distinct heights over 1- and 2-cells")
    {
        CHECK_THROWS_AS(grade_generators(segment({{"U", 0, 1}, {"L", 0, 1}})), FrontError);
        // a crossing 0-cell is fine, and the tied pair has no generator there
        auto g = grade_generators(segment({{"U", 0, 2}, {"L", 0, 1}}, {{"U", 0, 1}, {"L", 0, 1}}));
        CHECK_FALSE(g.find(g.front.find("v1").value(), 0, 1));
        // sheets may not change order at an endpoint
        CHECK_THROWS_AS(grade_generators(segment({{"U", 0, 2}, {"L", 0, 1}}, {{"U", 0, 1}, {"L", 0, 2}})), FrontError);
        // or change potential
        CHECK_THROWS_AS(grade_generators(segment({{"U", 0, 2}, {"L", 0, 1}}, {{"U", 1, 2}, {"L", 0, 1}})), FrontError);
    }

    TEST_CASE("b differential on two sheets")
    {
        auto g = grade_generators(segment({{"U", 0, 2}, {"L", -1, 1}}));
        int b = the(g, "b(e;U,L)");
        CHECK(g.label(b_differential(g, b)) == "a(v0;U,L) + a(v1;U,L)");
        CHECK_THROWS(b_differential(g, the(g, "a(v0;U,L)")));
    }

    TEST_CASE("b differential on three sheets")
    {
        auto g = grade_generators(segment({{"S1", 1, 3}, {"S2", 0, 2}, {"S3", -2, 1}}));
        int b = the(g, "b(e;S1,S3)");
        Poly want;
        toggle(want, {the(g, "a(v0;S1,S3)")});
        toggle(want, {the(g, "a(v1;S1,S3)")});
        toggle(want, {the(g, "a(v0;S1,S2)"), the(g, "b(e;S2,S3)")});
        toggle(want, {the(g, "b(e;S1,S2)"), the(g, "a(v1;S2,S3)")});
        CHECK(b_differential(g, b) == want);
        CHECK(g.differential.at(b) == want);
        for (const auto& m : want) CHECK(g.degree(m) == g.generators[b].degree + 1);
        check_homogeneous(g);
    }

    TEST_CASE("unmatched sheets contribute zero")
    {
        auto f = segment({{"U", 0, 2}, {"L", 0, 1}}, {{"L", 0, 1}});
        auto g = grade_generators(f);
        CHECK(g.label(g.differential.at(the(g, "b(e;U,L)"))) == "a(v0;U,L)");

        auto renamed = segment({{"U", 0, 2}, {"L", 0, 1}}, {{"P", 0, 2}, {"L", 0, 1}});
        auto plain = grade_generators(renamed);
        CHECK(plain.differential.at(the(plain, "b(e;U,L)")).size() == 1);
        renamed.match(2, 1, "U", "P");
        auto r = grade_generators(renamed);
        CHECK(r.label(r.differential.at(the(r, "b(e;U,L)"))) == "a(v0;U,L) + a(v1;P,L)");
    }

    TEST_CASE("no equal potentials means nothing to cancel")
    {
        auto g = grade_generators(segment({{"S1", 1, 3}, {"S2", 0, 2}, {"S3", -2, 1}}));
        CHECK(positive_count(g) == 0);
        auto r = cancel_positive(g);
        CHECK(r.log.empty());
        CHECK(r.reduced == g);
    }

    TEST_CASE("single cancellation")
    {
        // the upper sheet ends at a cusp over v1
        auto g = grade_generators(segment({{"U", 0, 2}, {"L", 0, 1}}, {{"L", 0, 1}}));
        CHECK(positive_count(g) == 1);
        auto r = cancel_positive(g);
        REQUIRE(r.log.size() == 1);
        CHECK(g.label(r.log[0].b) == "b(e;U,L)");
        CHECK(g.label(r.log[0].a) == "a(v0;U,L)");
        CHECK(r.log[0].replacement.empty());
        CHECK(max_alive_degree(r.reduced) <= 0);
        check_cancellation(g, r);

        // both ends present: two linear terms, nothing is eligible
        auto both = grade_generators(segment({{"U", 0, 2}, {"L", 0, 1}}));
        CHECK(cancel_positive(both).log.empty());
    }

    TEST_CASE("replaying a log twice revisits a generator")
    {
        auto g = grade_generators(segment({{"U", 0, 2}, {"L", 0, 1}}, {{"L", 0, 1}}));
        auto r = cancel_positive(g);
        auto twice = r.log;
        twice.insert(twice.end(), r.log.begin(), r.log.end());
        try {
            replay(g, twice);
            FAIL("expected a cancellation error");
        } catch (const CancellationError& e) {
            CHECK(e.log.size() == 1);
        }
        // a step that is not eligible is refused
        auto bogus = r.log;
        bogus[0].replacement = Poly{{}};
        CHECK_THROWS_AS(replay(g, bogus), CancellationError);
    }

    TEST_CASE("random fronts keep the cancellation invariants")
    {
        std::mt19937 rng(77);
        int eliminated = 0;
        for (int t = 0; t < 40; ++t) {
            auto f = random_front(rng, 4, 7);
            auto g = grade_generators(f);
            CHECK(grading_failures(g).empty());
            CHECK(degree_spectrum(g) == spectrum_from_front(f));
            check_homogeneous(g);
            auto r = cancel_positive(g);
            eliminated += static_cast<int>(r.log.size());
            check_cancellation(g, r);
        }
        CHECK(eliminated > 0);
    }

    TEST_CASE("shipped front: positive generators cancel")
    {
        auto f = io::load_front(std::string(HOCHKIT_DATA_DIR) + "/lambda3333.front");
        auto g = grade_generators(f);
        CHECK(grading_failures(g).empty());
        CHECK(degree_spectrum(g) == spectrum_from_front(f));
        auto before = degree_spectrum(g);
        REQUIRE(before.count(1));
        CHECK(before.at(1) >= 1);
        CHECK(max_alive_degree(g) == 1);
        // b and c generators are never positive
        for (std::size_t i = 0; i < g.generators.size(); ++i)
            if (g.generators[i].kind != Kind::a) CHECK(g.generators[i].degree <= 0);
        check_homogeneous(g);

        auto r = cancel_positive(g);
        CHECK(static_cast<int>(r.log.size()) == before.at(1));
        CHECK(max_alive_degree(r.reduced) <= 0);
        check_cancellation(g, r);
        CHECK(cancel_positive(g).log.size() == r.log.size());
    }
}
