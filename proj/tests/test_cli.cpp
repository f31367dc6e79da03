#include <doctest.h>

#include "hochkit/cli.hpp"
#include "hochkit/hochschild.hpp"
#include "hochkit/io.hpp"
#include "hochkit/koszul.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hochkit;
using json = nlohmann::json;

namespace {

const std::string data = HOCHKIT_DATA_DIR;

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
    auto path = std::filesystem::temp_directory_path() / ("hochkit_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

io::ParseError parse_error(const std::function<void()>& f)
{
    try {
        f();
    } catch (const io::ParseError& e) {
        return e;
    }
    FAIL("no parse error");
    return io::ParseError(0, 0, "");
}

io::QuiverFile quiver_text(const std::string& s)
{
    std::istringstream in(s);
    return io::parse_quiver(in);
}

alg::FiniteAlgebra algebra_text(const std::string& s, int arity = 4)
{
    std::istringstream in(s);
    return io::parse_algebra(in, arity);
}

ce::FrontComplex front_text(const std::string& s)
{
    std::istringstream in(s);
    return io::parse_front(in);
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("loop quiver file")
    {
        auto f = io::load_quiver(data + "/q100.quiver");
        const auto& q = f.quiver;
        REQUIRE(q.base.size() == 1);
        REQUIRE(q.arrows.size() == 1);
        CHECK(q.arrows[0].label == "x");
        CHECK(q.arrows[0].src == 0);
        CHECK(q.arrows[0].tgt == 0);
        CHECK(q.arrows[0].degree == 0);
        CHECK(f.potential.empty());
        CHECK(f.dual_labels.at("x") == "y");
    }

    TEST_CASE("quiver grammar")
    {
        auto bare = quiver_text("[vertices]\n1 2\n[arrows]\n# none\n");
        CHECK(bare.quiver.base.size() == 2);
        CHECK(bare.quiver.arrows.empty());

        auto tri = quiver_text(
            "[vertices]\n1 2 3\n[arrows]\nx: 1 -> 2 deg 0\ny:2->3 deg 0\nz : 3 -> 1 deg 0\n"
            "[potential]\n-3/2 cycle(z y x)   # rotated\n");
        CHECK(gz::potential_label(tri.quiver, tri.potential) == "-3/2 x*z*y");

        auto open = parse_error([] { quiver_text("[vertices]\n1 2\n[arrows]\na: 1 -> 2 deg 0\n[potential]\n1 cycle(a a)\n"); });
        CHECK(open.line == 6);
        CHECK(open.message.find("'a a'") != std::string::npos);

        auto dangling = parse_error([] { quiver_text("[vertices]\nv\n[arrows]\nx: v -> w deg 0\n"); });
        CHECK(dangling.line == 4);
        CHECK(dangling.column == 9);
        CHECK(dangling.message.find("dangling vertex") != std::string::npos);

        auto syntax = parse_error([] { quiver_text("[vertices]\nv\n[arrows]\nx v -> v deg 0\n"); });
        CHECK(syntax.line == 4);
        CHECK(syntax.column == 3);
        CHECK_THROWS_AS(quiver_text("x: v -> v deg 0\n"), io::ParseError);
        CHECK_THROWS_AS(quiver_text("[edges]\n"), io::ParseError);
    }

    TEST_CASE("algebra files match the built-in samples")
    {
        auto d = io::load_algebra(data + "/dual.alg");
        auto s = alg::samples::dual_numbers(0);
        CHECK(d.dim() == s.dim());
        CHECK(d.mul == s.mul);
        CHECK(d.unit == s.unit);
        CHECK(alg::validate(d).pass);

        auto u = io::load_algebra(data + "/upper.alg");
        auto su = alg::samples::upper_triangular();
        CHECK(u.mul == su.mul);
        CHECK(alg::validate(u).pass);

        auto m = algebra_text(
            "[vertices]\ne\n[basis]\ne: e -> e deg 0 unit\nv: e -> e deg 0\ntop: e -> e deg -1\n"
            "[algebra]\nmu v v v = top\n");
        auto sm = alg::samples::minimal_ainf(0);
        CHECK(m.higher.size() == 1);
        CHECK(m.higher.begin()->second == sm.higher.begin()->second);
        CHECK(alg::validate(m).pass);

        auto c = algebra_text("[vertices]\ne\n[basis]\n1: e -> e deg 0 unit\nx: e -> e deg 0\ny: e -> e deg 0\n"
                              "[algebra]\nx * x = 2 y - 1/2 y + 1\nd y = 0\n");
        REQUIRE(c.mul.count({1, 1}));
        CHECK(c.mul.at({1, 1}) == alg::Coeffs{{0, Scalar(1)}, {2, Scalar::ratio(3, 2)}});
    }

    TEST_CASE("algebra grammar errors")
    {
        const std::string head = "[vertices]\ne\n[basis]\n1: e -> e deg 0 unit\nx: e -> e deg 0\n[algebra]\n";
        auto arity = parse_error([&] { algebra_text(head + "mu x x x x x = x\n"); });
        CHECK(arity.line == 7);
        CHECK(arity.message.find("arity") != std::string::npos);
        CHECK_NOTHROW(algebra_text(head + "mu x x x x x = x\n", 5));
        auto unknown = parse_error([&] { algebra_text(head + "x * z = x\n"); });
        CHECK(unknown.column == 5);
        CHECK_THROWS_AS(algebra_text(head + "1 * x = x\n"), io::ParseError);
        CHECK_THROWS_AS(algebra_text(head + "x * x = 2 x 3\n"), io::ParseError);
    }

    TEST_CASE("front grammar")
    {
        const std::string base = "[cells]\nv0 0\nv1 0\ne 1 v0 v1\n[sheets]\n"
                                 "v0 U 0 2\nv0 L 0 1\nv1 L 0 1\ne U 0 2\ne L 0 1\n";
        auto f = front_text(base);
        CHECK(f.cells().size() == 3);
        auto g = ce::grade_generators(f);
        CHECK(ce::degree_spectrum(g) == std::map<int, int>{{0, 1}, {1, 1}});

        auto bad = parse_error([&] { front_text(base + "[matchings]\ne v1 U -> P\n"); });
        CHECK(bad.line == 12);
        CHECK(bad.message.find("unmatched sheet 'P'") != std::string::npos);
        CHECK_NOTHROW(front_text(base + "[matchings]\ne v1 U -> -\n"));
        auto tie = parse_error([&] { front_text("[cells]\nv 0\nw 0\ne 1 v w\n[sheets]\ne A 0 1\ne B 0 1\n"); });
        CHECK(tie.message.find("without defined order") != std::string::npos);
        CHECK_THROWS_AS(front_text("[cells]\nv 0\ne 1 v\n"), io::ParseError);
        CHECK_THROWS_AS(front_text("[cells]\nv 3\n"), io::ParseError);
    }

    TEST_CASE("chains")
    {
        auto a = alg::samples::dual_numbers(0);
        auto e = io::parse_chain(a, "hat(x) - 1/2 check(x 1)");
        CHECK(e.size() == 2);
        CHECK(e.at(hoch::Key{true, {1}}) == Scalar(1));
        CHECK(e.at(hoch::Key{false, {1, 0}}) == Scalar::ratio(-1, 2));
        CHECK(io::parse_chain(a, "0").empty());
        CHECK_THROWS_AS(io::parse_chain(a, "hat(q)"), io::ParseError);
    }

    TEST_CASE("hh on the dual numbers")
    {
        auto r = run({"hh", data + "/dual.alg", "--window", "-4:0", "--format", "structured"});
        REQUIRE(r.code == 0);
        auto j = json::parse(r.out);
        // dims from the 2-periodic bimodule resolution: HH^0 = 2, HH^{-n} = 1 for n >= 1
        std::map<int, int> want{{-4, 1}, {-3, 1}, {-2, 1}, {-1, 1}, {0, 2}};
        auto lib = hoch::hh_table(alg::samples::dual_numbers(0), 5, -4, 0);
        for (const auto& row : j["table"]) {
            int k = row["degree"];
            CHECK(row["dim"] == want.at(k));
            CHECK(row["dim"] == lib.at(k).dim);
            CHECK(row["reliable"] == lib.at(k).reliable);
        }
        CHECK(j["table"].size() == 5);

        auto table = run({"hh", data + "/dual.alg", "--window", "-4:0"});
        CHECK(table.code == 0);
        CHECK(table.out.find("reliable") != std::string::npos);
    }

    TEST_CASE("structured output round-trips")
    {
        auto r = run({"koszul", "ext", data + "/dual.alg", "--window", "0:4", "--format", "structured"});
        REQUIRE(r.code == 0);
        auto j = json::parse(r.out);
        auto lib = ksz::ext_betti(ksz::augment(alg::samples::dual_numbers(0)), 0, 4, 6);
        REQUIRE(j["table"].size() == lib.size());
        for (const auto& row : j["table"]) {
            CHECK(row["dim"] == lib.at(row["degree"]).dim);
            CHECK(row["reliable"] == lib.at(row["degree"]).reliable);
        }
        CHECK(j["truncation"]["B"] == 6);
        CHECK(json::parse(j.dump()) == j);

        auto gz = json::parse(run({"ginzburg", "jacobi", data + "/cubic.quiver", "--weight", "4", "--format", "structured"}).out);
        CHECK(gz["jacobi_dims"] == json::array({1, 1, 0, 0, 0}));
    }

    TEST_CASE("ginzburg commands")
    {
        auto r = run({"ginzburg", "check", data + "/q100.quiver"});
        CHECK(r.code == 0);
        CHECK(r.out.find("d x = 0") != std::string::npos);
        CHECK(r.out.find("d y = 0") != std::string::npos);
        CHECK(r.out.find("d t = x*y - y*x") != std::string::npos);
        CHECK(r.out.find("d^2 = 0: pass") != std::string::npos);

        auto h = run({"ginzburg", "hh", data + "/q100.quiver", "--dim", "2", "--weight", "3", "--window", "-2:1",
                      "--format", "structured"});
        REQUIRE(h.code == 0);
        auto j = json::parse(h.out);
        CHECK(j["cumulative"][3]["dims"]["0"] == 10);

        // x^3 has degree 0, which does not fit n = 2
        auto wrong = run({"ginzburg", "check", data + "/cubic.quiver", "--dim", "2"});
        CHECK(wrong.code == 2);
        CHECK(wrong.err.find("degree") != std::string::npos);
    }

    TEST_CASE("ce commands")
    {
        auto r = run({"ce", "cancel", data + "/lambda3333.front"});
        CHECK(r.code == 0);
        CHECK(r.out.find("max surviving degree: 0") != std::string::npos);

        auto g = json::parse(run({"ce", "grade", data + "/lambda3333.front", "--format", "structured"}).out);
        CHECK(g["spectrum"]["1"] >= 1);
        CHECK(g["grading_failures"] == 0);

        // both ends carry the equal-potential pair, so nothing cancels
        auto stuck = temp_file("stuck.front", "[cells]\nv0 0\nv1 0\ne 1 v0 v1\n[sheets]\n"
                                              "v0 U 0 2\nv0 L 0 1\nv1 U 0 2\nv1 L 0 1\ne U 0 2\ne L 0 1\n");
        auto s = run({"ce", "cancel", stuck});
        CHECK(s.code == 1);
        CHECK(s.out.find("max surviving degree: 1") != std::string::npos);
    }

    TEST_CASE("witness command")
    {
        auto r = run({"witness", data + "/dual.alg", "--eta", "hat(x)", "--format", "structured"});
        CHECK(r.code == 0);
        CHECK(json::parse(r.out)["verdict"] == hoch::verdict_name(hoch::Verdict::Found));
        auto none = run({"witness", data + "/dual.alg", "--eta", "check(1)"});
        CHECK(none.code == 0);
        CHECK(none.out.find(hoch::verdict_name(hoch::Verdict::None)) != std::string::npos);
        CHECK(run({"witness", data + "/dual.alg", "--eta", "hat(1 x)"}).code == 2);
    }

    TEST_CASE("exit codes for bad input")
    {
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"hh", data + "/missing.alg"}).code == 2);
        CHECK(run({"hh", data + "/dual.alg", "--window", "3:1"}).code == 2);
        CHECK(run({"hh", data + "/dual.alg", "--window", "x"}).code == 2);
        CHECK(run({"hh", data + "/dual.alg", "--length", "0"}).code == 2);
        CHECK(run({"hh", data + "/dual.alg", "--field", "r"}).code == 2);
        CHECK(run({"koszul", "ext", data + "/lambda3333.front"}).code == 2);
        auto bad = run({"hh", temp_file("bad.alg", "[vertices]\ne\n[basis]\nx: e -> f deg 0\n")});
        CHECK(bad.code == 2);
        CHECK(bad.err.find(":4:9:") != std::string::npos);
        CHECK(run({"--help"}).code == 0);
    }

    TEST_CASE("selftest is deterministic")
    {
        auto a = run({"selftest", "--seed", "42", "--format", "structured"});
        auto b = run({"selftest", "--seed", "42", "--format", "structured"});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(json::parse(a.out)["seed"] == 42);
    }
}
