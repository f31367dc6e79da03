#include "hochkit/cellce.hpp"
#include "hochkit/ginzburg.hpp"
#include "hochkit/hochschild.hpp"
#include "hochkit/io.hpp"
#include "hochkit/koszul.hpp"
#include "hochkit/s1.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace hochkit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures as short messages; the first few end up in the report line.
struct Tally {
    int checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok) failures.push_back(what);
    }

    Outcome outcome(const std::string& summary) const
    {
        std::ostringstream s;
        s << summary << "; " << checks << " checks";
        if (!failures.empty()) {
            s << ", " << failures.size() << " failed:";
            for (std::size_t i = 0; i < std::min<std::size_t>(3, failures.size()); ++i) s << " [" << failures[i] << "]";
        }
        return {failures.empty(), s.str()};
    }
};

const std::string data_dir = HOCHKIT_DATA_DIR;

Scalar one(const alg::FiniteAlgebra& a) { return Scalar(1, a.field); }

hoch::Element sum(hoch::Element x, const hoch::Element& y, const Scalar& c)
{
    add_to(x, y, c);
    return x;
}

// 1. axioms on random strict complexes and on CH^nu of random algebras; sign-flip mutants are caught
Outcome s1_axioms()
{
    Tally t;
    std::mt19937 rng(1);
    int strict = 0;
    for (int i = 0; i < 200; ++i) {
        auto p = s1::random_complex(rng, 8);
        strict += p.strict;
        t.expect(s1::verify_axioms(p).pass, "random complex " + std::to_string(i));
    }
    t.expect(strict == 200, "all generated complexes strict");

    std::mt19937 arng(2024);
    for (int i = 0; i < 20; ++i) {
        auto a = alg::samples::random_unital(arng, 4);
        t.expect(s1::verify_axioms(hoch::chnu_s1(a, 5)).pass, "random algebra " + std::to_string(i));
    }

    auto sites = hoch::sign_flip_sites(5, 4);
    std::mt19937 mrng(50);
    std::shuffle(sites.begin(), sites.end(), mrng);
    sites.resize(std::min<std::size_t>(50, sites.size()));
    auto zoo = alg::samples::zoo();
    int detected = 0;
    for (const auto& f : sites) {
        bool seen = false;
        for (const auto& [name, a] : zoo) {
            if (!s1::verify_axioms(hoch::chnu_s1(a, 5, f)).pass) {
                seen = true;
                break;
            }
        }
        detected += seen;
        t.expect(seen, "undetected mutant " + hoch::describe(f));
    }
    t.expect(sites.size() == 50, "50 mutation trials");
    return t.outcome("200 strict complexes, 20 algebras, mutants detected " + std::to_string(detected) + "/" +
                     std::to_string(sites.size()));
}

// 2. operator identities on every basis word of the length-5 truncation
Outcome hochschild_identities()
{
    Tally t;
    int words = 0;
    for (const auto& [name, a] : alg::samples::test_algebras()) {
        auto ch = hoch::build_chnu_complex(a, 5, -100, 100, false);
        for (int d : ch.basis.degrees())
            for (const auto& k : ch.basis.keys(d)) {
                ++words;
                hoch::Element x{{k, one(a)}};
                std::string where = name + " " + hoch::label(a, k);
                t.expect(hoch::b_nu(a, hoch::b_nu(a, x)).empty(), "b^2 " + where);
                t.expect(hoch::B_nu(a, hoch::B_nu(a, x)).empty(), "B^2 " + where);
                t.expect(sum(hoch::b_nu(a, hoch::B_nu(a, x)), hoch::B_nu(a, hoch::b_nu(a, x)), one(a)).empty(),
                         "bB + Bb " + where);
                if (!k.hat)
                    t.expect(hoch::B_nu(a, x) == hoch::s_nu(a, hoch::cyclic_norm(a, x)), "B = sN " + where);
                else
                    t.expect(hoch::B_nu(a, x).empty(), "B vanishes on hat " + where);
            }
    }
    return t.outcome(std::to_string(words) + " basis words");
}

// 3. CH and CH^nu have the same Betti numbers in degrees 0..3
Outcome quasi_isomorphism()
{
    Tally t;
    std::ostringstream s;
    for (const auto& [name, a] : alg::samples::test_algebras()) {
        auto h = lin::homology(hoch::build_hochschild_complex(a, 5, -4, 1).complex);
        auto nu = lin::homology(hoch::build_chnu_complex(a, 5, -4, 1, false).complex);
        s << " " << name << ":";
        for (int n = 0; n <= 3; ++n) {
            const auto& x = h.at(-n);
            const auto& y = nu.at(-n);
            std::string where = name + " degree " + std::to_string(n);
            t.expect(x.reliable && y.reliable, "unreliable " + where);
            t.expect(x.dim == y.dim, "betti " + where + ": " + std::to_string(x.dim) + " vs " + std::to_string(y.dim));
            s << (n ? "," : "") << x.dim;
        }
    }
    return t.outcome("Betti" + s.str());
}

// dim HH_n of Q[x]/(x^2) from the 2-periodic bimodule resolution tensored with A:
// A <-0- A <-2x- A <-0- A <-2x- ...
int dual_numbers_oracle(int n)
{
    lin::Matrix zero(2, 2), twice_x(2, 2);
    twice_x.add(1, 0, Scalar(2));
    auto map_in = [&](int k) { return k % 2 == 1 ? zero : twice_x; };
    int out = n == 0 ? 0 : lin::rank(map_in(n));
    int in = lin::rank(map_in(n + 1));
    return 2 - out - in;
}

// 4. HH of the dual numbers against the resolution
Outcome hochschild_oracle()
{
    Tally t;
    auto a = alg::samples::dual_numbers(0);
    auto table = hoch::hh_table(a, 5, -4, 0);
    std::ostringstream s;
    for (int n = 0; n <= 4; ++n) {
        int want = dual_numbers_oracle(n);
        const auto& e = table.at(-n);
        t.expect(e.reliable, "degree " + std::to_string(n) + " unreliable");
        t.expect(e.dim == want, "degree " + std::to_string(n) + ": " + std::to_string(e.dim) + " vs " +
                                    std::to_string(want));
        s << (n ? "," : "") << e.dim;
    }
    t.expect(dual_numbers_oracle(0) == 2, "oracle HH_0 = 2");
    return t.outcome("HH_0..4 = " + s.str());
}

// 5. Connes sequence and Gysin triangle: exact, and the same maps
Outcome connes_gysin()
{
    Tally t;
    int nodes = 0;
    for (const auto& [name, a] : alg::samples::test_algebras()) {
        auto c = hoch::connes_les(a, 5, -3, 0, 4);
        auto g = s1::gysin_check(hoch::chnu_s1(a, 5), 4, -3, 0);
        t.expect(c.exact, name + " Connes sequence not exact");
        t.expect(g.exact, name + " Gysin triangle not exact");
        for (const auto& n : c.nodes)
            if (n.reliable) {
                ++nodes;
                t.expect(n.exact, name + " node " + n.group + std::to_string(n.degree));
            }
        t.expect(c.rank_I == g.rank_I, name + " I ranks differ");
        t.expect(c.rank_S == g.rank_S, name + " S ranks differ");
        t.expect(c.rank_B == g.rank_B, name + " B ranks differ");
        t.expect(c.nodes.size() == g.nodes.size(), name + " node count");
        for (std::size_t i = 0; i < std::min(c.nodes.size(), g.nodes.size()); ++i)
            if (c.nodes[i].reliable)
                t.expect(c.nodes[i].dim == g.nodes[i].dim, name + " dim at node " + c.nodes[i].group +
                                                                std::to_string(c.nodes[i].degree));
    }
    return t.outcome(std::to_string(nodes) + " reliable nodes");
}

// 6. marking formula vs the snake connecting map on strict complexes
Outcome marking_vs_snake()
{
    Tally t;
    std::mt19937 rng(51);
    int checked = 0;
    const int U = 4;
    for (int trial = 0; trial < 1000 && checked < 50; ++trial) {
        auto p = s1::random_complex(rng, 4);
        int m = static_cast<int>(rng() % 7) - 4;
        auto o = s1::u_model(p, U - 1, m + 2, m + 2, s1::UMode::Orbits);
        auto cycles = lin::Reduction(o.d(m + 2)).kernel();
        if (cycles.empty()) continue;
        lin::SparseVec z;
        for (const auto& c : cycles) lin::axpy(z, Scalar(static_cast<long>(rng() % 7) - 3), c);
        if (z.empty()) continue;
        std::vector<lin::SparseVec> beta(U - 1);
        const auto& labels = o.space.labels(m + 2);
        for (const auto& [i, v] : z) {
            const std::string& l = labels[i];
            auto pos = l.find(" u^");
            int e = pos == std::string::npos ? 0 : std::stoi(l.substr(pos + 3));
            std::string base = pos == std::string::npos ? l : l.substr(0, pos);
            beta[-e].emplace_back(*p.space.index(m + 2 - 2 * e, base), v);
        }
        for (auto& b : beta) std::sort(b.begin(), b.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        auto mark = hoch::marking_chain(p, m + 2, beta);
        auto snake = s1::snake_connecting(p, U, m, z);
        lin::SparseVec diff = mark;
        lin::axpy(diff, Scalar(-1), snake);
        lin::HomologyBasis target(p.delta(0, m), p.delta(0, m + 1), p.space.dim(m + 1));
        t.expect(p.delta(0, m + 1).apply(mark).empty(), "marking chain not closed, trial " + std::to_string(trial));
        t.expect(target.is_boundary(diff), "classes differ, trial " + std::to_string(trial));
        ++checked;
    }
    t.expect(checked == 50, "50 cocycles");
    return t.outcome(std::to_string(checked) + " cocycles");
}

// 7. Ginzburg algebra of the one-loop quiver, and d^2 on random quivers with potential
Outcome ginzburg()
{
    Tally t;
    auto q = io::load_quiver(data_dir + "/q100.quiver");
    auto g = gz::build_ginzburg(q.quiver, q.potential, 3, 6, q.dual_labels);
    auto diff = [&](int gen) {
        auto it = g.algebra.generator_diff.find(gen);
        return it == g.algebra.generator_diff.end() ? std::string("0") : alg::combo_label(g.algebra.quiver, it->second);
    };
    const auto& arrows = g.algebra.quiver.arrows;
    t.expect(arrows.size() == 3, "three generators");
    if (arrows.size() == 3) {
        t.expect(arrows[0].label == "x" && arrows[1].label == "y" && arrows[2].label == "t", "labels x, y, t");
        t.expect(diff(0) == "0", "d x = " + diff(0));
        t.expect(diff(1) == "0", "d y = " + diff(1));
        t.expect(diff(2) == "x*y - y*x", "d t = " + diff(2));
    }
    t.expect(g.certificate.pass, "certificate on the loop quiver");

    std::mt19937 rng(2024);
    for (int i = 0; i < 100; ++i) {
        auto qp = gz::random_quiver_with_potential(rng, 3);
        auto r = gz::build_ginzburg(qp.quiver, qp.potential, 3, 6);
        t.expect(r.certificate.pass && alg::check_d_squared(r.algebra).pass,
                 "d^2 on " + gz::potential_label(qp.quiver, qp.potential));
    }
    return t.outcome("d t = " + diff(2) + ", 100 random (Q, w)");
}

// 8. completed cobar of the bar construction recovers H(A) on reliable degrees
Outcome bar_cobar()
{
    Tally t;
    auto algebras = alg::samples::test_algebras();
    algebras.emplace_back("qxq_split", alg::samples::product_qq_split());
    std::ostringstream s;
    for (const auto& [name, a] : algebras) {
        auto h = ksz::cobar_betti(ksz::bar(ksz::augment(a), 6), 5, -3, 3);
        auto ha = ksz::algebra_betti(a);
        int reliable = 0;
        for (const auto& [k, e] : h) {
            if (!e.reliable) continue;
            ++reliable;
            int want = ha.count(k) ? ha.at(k).dim : 0;
            t.expect(e.dim == want, name + " degree " + std::to_string(k) + ": " + std::to_string(e.dim) + " vs " +
                                        std::to_string(want));
        }
        s << " " << name << " " << reliable << " reliable";
    }
    return t.outcome(s.str().substr(1));
}

// 9. the shipped front: degree-1 generators exist, cancel to degrees <= 0, log replays
Outcome cellular()
{
    Tally t;
    auto front = io::load_front(data_dir + "/lambda3333.front");
    auto g = ce::grade_generators(front);
    int positive = 0;
    for (const auto& x : g.generators) positive += x.kind == ce::Kind::a && x.degree == 1;
    t.expect(positive > 0, "no degree-1 a generator");
    auto c = ce::cancel_positive(g);
    int top = -1000000;
    for (const auto& [d, n] : ce::degree_spectrum(c.reduced)) top = std::max(top, d);
    t.expect(top <= 0, "max surviving degree " + std::to_string(top));
    t.expect(ce::replay(g, c.log) == c.reduced, "replay differs");
    return t.outcome(std::to_string(positive) + " degree-1 a before, " + std::to_string(c.log.size()) +
                     " eliminations, max surviving degree " + std::to_string(top));
}

std::string quote(const std::string& s)
{
    std::string out = "'";
    for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
    return out + "'";
}

std::pair<int, std::string> run_cli(const std::vector<std::string>& args)
{
    std::string cmd = quote(HOCHKIT_CLI);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// 10. every command, run twice as a separate process with a fixed seed, prints the same bytes
Outcome determinism()
{
    Tally t;
    const std::string alg_file = data_dir + "/dual.alg";
    const std::vector<std::vector<std::string>> commands = {
        {"hh", alg_file},
        {"hh", data_dir + "/upper.alg", "--unreduced"},
        {"hc", alg_file},
        {"les", alg_file},
        {"gysin", alg_file},
        {"ginzburg", "check", data_dir + "/q100.quiver"},
        {"ginzburg", "jacobi", data_dir + "/cubic.quiver"},
        {"ginzburg", "hh", data_dir + "/q100.quiver", "--dim", "2", "--weight", "3", "--window", "-2:1"},
        {"koszul", "ext", alg_file, "--window", "0:4"},
        {"ce", "grade", data_dir + "/lambda3333.front"},
        {"ce", "cancel", data_dir + "/lambda3333.front"},
        {"witness", alg_file, "--eta", "hat(x)"},
        {"selftest"},
    };
    for (auto args : commands) {
        args.insert(args.end(), {"--seed", "42", "--format", "structured"});
        auto first = run_cli(args);
        auto second = run_cli(args);
        std::string name = args[0] + (args[1].find('/') == std::string::npos ? " " + args[1] : "");
        t.expect(first.first == 0 || first.first == 1, name + " exit " + std::to_string(first.first));
        t.expect(!first.second.empty(), name + " printed nothing");
        t.expect(first == second, name + " output differs");
    }
    return t.outcome(std::to_string(commands.size()) + " commands");
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"S1 axioms and mutation detection", s1_axioms},
        {"non-unital Hochschild identities", hochschild_identities},
        {"CH and CH^nu Betti numbers", quasi_isomorphism},
        {"HH of the dual numbers", hochschild_oracle},
        {"Connes sequence and Gysin triangle", connes_gysin},
        {"marking formula vs snake map", marking_vs_snake},
        {"Ginzburg construction", ginzburg},
        {"bar-cobar Betti numbers", bar_cobar},
        {"cellular CE cancellation", cellular},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::printf("criterion %2zu %s  %s (%s) [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
