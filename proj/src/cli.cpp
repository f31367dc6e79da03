#include "hochkit/cli.hpp"

#include "hochkit/cellce.hpp"
#include "hochkit/ginzburg.hpp"
#include "hochkit/hochschild.hpp"
#include "hochkit/io.hpp"
#include "hochkit/koszul.hpp"
#include "hochkit/s1.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <random>
#include <sstream>

namespace hochkit::cli {

namespace {

using json = nlohmann::ordered_json;

struct JobConfig {
    std::string command, action, input, eta;
    std::string field = "q";
    int W = 6, L = 5, U = 4, B = 6, P = 5, arity = 4, dim = 3;
    std::string window = "-4:4";
    int lo = -4, hi = 4;
    unsigned seed = 42;
    std::string format = "table";
    bool unreduced = false;
};

struct Report {
    json data;
    std::ostringstream table;
    int code = ok;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void parse_window(JobConfig& cfg)
{
    auto colon = cfg.window.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument("");
        std::size_t used = 0;
        cfg.lo = std::stoi(cfg.window.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
        auto rest = cfg.window.substr(colon + 1);
        cfg.hi = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw UsageError("--window expects lo:hi, got '" + cfg.window + "'");
    }
    if (cfg.lo > cfg.hi) throw UsageError("--window " + cfg.window + " is empty");
}

Field field_of(const JobConfig& cfg) { return cfg.field == "f2" ? Field::F2 : Field::Q; }

alg::FiniteAlgebra algebra(const JobConfig& cfg)
{
    auto a = io::load_algebra(cfg.input, cfg.arity);
    if (field_of(cfg) != Field::Q) a = a.in_field(field_of(cfg));
    auto report = alg::validate(a);
    if (!report.pass) throw std::invalid_argument(cfg.input + ": not an A-infinity algebra: " + report.problems.front());
    return a;
}

json homology_json(const lin::HomologyTable& t)
{
    json rows = json::array();
    for (const auto& [k, e] : t) rows.push_back({{"degree", k}, {"dim", e.dim}, {"reliable", e.reliable}, {"note", e.note}});
    return rows;
}

void homology_text(std::ostream& os, const lin::HomologyTable& t)
{
    os << std::setw(8) << "degree" << std::setw(6) << "dim" << "  reliable\n";
    for (const auto& [k, e] : t) {
        os << std::setw(8) << k << std::setw(6) << e.dim << "  " << (e.reliable ? "yes" : "no");
        if (!e.note.empty()) os << "  (" << e.note << ")";
        os << "\n";
    }
}

json les_json(const s1::LesReport& r)
{
    json nodes = json::array();
    for (const auto& n : r.nodes)
        nodes.push_back({{"group", n.group},
                         {"degree", n.degree},
                         {"dim", n.dim},
                         {"rank_in", n.rank_in},
                         {"rank_out", n.rank_out},
                         {"composite_zero", n.composite_zero},
                         {"exact", n.exact},
                         {"reliable", n.reliable}});
    auto ranks = [](const std::map<int, int>& m) {
        json o = json::object();
        for (const auto& [k, v] : m) o[std::to_string(k)] = v;
        return o;
    };
    return {{"window", {r.lo, r.hi}},
            {"rank_I", ranks(r.rank_I)},
            {"rank_S", ranks(r.rank_S)},
            {"rank_B", ranks(r.rank_B)},
            {"nodes", nodes},
            {"exact", r.exact}};
}

void les_text(std::ostream& os, const s1::LesReport& r)
{
    os << std::setw(6) << "group" << std::setw(8) << "degree" << std::setw(6) << "dim" << std::setw(6) << "in"
       << std::setw(6) << "out" << "  exact  reliable\n";
    for (const auto& n : r.nodes)
        os << std::setw(6) << n.group << std::setw(8) << n.degree << std::setw(6) << n.dim << std::setw(6) << n.rank_in
           << std::setw(6) << n.rank_out << "  " << std::setw(5) << std::left << (n.exact && n.composite_zero ? "yes" : "NO")
           << std::right << "  " << (n.reliable ? "yes" : "no") << "\n";
    os << "exact at every reliable node: " << (r.exact ? "yes" : "no") << "\n";
}

void cmd_hh(const JobConfig& cfg, Report& r)
{
    auto t = hoch::hh_table(algebra(cfg), cfg.L, cfg.lo, cfg.hi, !cfg.unreduced);
    r.data["reduced"] = !cfg.unreduced;
    r.data["table"] = homology_json(t);
    r.table << "Hochschild homology, L = " << cfg.L << (cfg.unreduced ? ", unreduced" : ", reduced") << "\n";
    homology_text(r.table, t);
}

void cmd_hc(const JobConfig& cfg, Report& r)
{
    auto a = algebra(cfg);
    for (auto mode : {hoch::CyclicMode::Positive, hoch::CyclicMode::Negative, hoch::CyclicMode::Periodic}) {
        auto t = hoch::hc_table(a, cfg.L, cfg.lo, cfg.hi, cfg.U, mode);
        r.data["modes"][hoch::mode_name(mode)] = homology_json(t);
        r.table << hoch::mode_name(mode) << " cyclic homology, L = " << cfg.L << ", U = " << cfg.U << "\n";
        homology_text(r.table, t);
    }
}

void cmd_les(const JobConfig& cfg, Report& r)
{
    auto les = hoch::connes_les(algebra(cfg), cfg.L, cfg.lo, cfg.hi, cfg.U);
    r.data["les"] = les_json(les);
    r.table << "Connes long exact sequence, L = " << cfg.L << ", U = " << cfg.U << "\n";
    les_text(r.table, les);
    if (!les.exact) r.code = failed;
}

void cmd_gysin(const JobConfig& cfg, Report& r)
{
    auto p = hoch::chnu_s1(algebra(cfg), cfg.L);
    auto axioms = s1::verify_axioms(p);
    auto les = s1::gysin_check(p, cfg.U, cfg.lo, cfg.hi);
    r.data["axioms"] = axioms.pass;
    r.data["les"] = les_json(les);
    r.table << "Gysin triangle of CH^nu, L = " << cfg.L << ", U = " << cfg.U << "\n"
            << "S1 axioms: " << (axioms.pass ? "pass" : "FAIL") << "\n";
    les_text(r.table, les);
    if (!les.exact || !axioms.pass) r.code = failed;
}

void cmd_ginzburg(const JobConfig& cfg, Report& r)
{
    if (field_of(cfg) != Field::Q) throw UsageError("ginzburg works over Q only");
    auto qf = io::load_quiver(cfg.input);
    const auto& q = qf.quiver;
    r.data["action"] = cfg.action;
    r.data["n"] = cfg.dim;
    r.data["potential"] = gz::potential_label(q, qf.potential);
    if (cfg.action == "jacobi") {
        auto dims = gz::jacobi_dimensions(q, qf.potential, cfg.W);
        r.data["jacobi_dims"] = dims;
        r.table << "Jacobi algebra dimensions by weight, W = " << cfg.W << "\n";
        for (std::size_t k = 0; k < dims.size(); ++k) r.table << std::setw(8) << k << std::setw(6) << dims[k] << "\n";
        return;
    }
    gz::GinzburgPresentation g;
    try {
        g = gz::build_ginzburg(q, qf.potential, cfg.dim, cfg.W, qf.dual_labels);
    } catch (const gz::DSquaredError& e) {
        r.data["d_squared"] = false;
        r.data["failure"] = e.what();
        r.table << "d^2 = 0: FAIL (" << e.what() << ")\n";
        r.code = failed;
        return;
    }
    if (cfg.action == "check") {
        const auto& gq = g.algebra.quiver;
        json gens = json::array();
        r.table << "Ginzburg algebra, n = " << cfg.dim << ", W = " << cfg.W << "\n";
        for (int i = 0; i < static_cast<int>(gq.arrows.size()); ++i) {
            const auto& a = gq.arrows[i];
            auto it = g.algebra.generator_diff.find(i);
            std::string d = it == g.algebra.generator_diff.end() ? "0" : alg::combo_label(gq, it->second);
            gens.push_back({{"label", a.label},
                            {"src", gq.base.idempotents[a.src]},
                            {"tgt", gq.base.idempotents[a.tgt]},
                            {"degree", a.degree},
                            {"d", d}});
            r.table << "  " << a.label << ": " << gq.base.idempotents[a.src] << " -> " << gq.base.idempotents[a.tgt]
                    << " deg " << a.degree << "   d " << a.label << " = " << d << "\n";
        }
        r.data["generators"] = gens;
        r.data["d_squared"] = g.certificate.pass;
        r.table << "d^2 = 0: " << (g.certificate.pass ? "pass" : "FAIL") << "\n";
        return;
    }
    auto h = gz::ginzburg_homology(g, cfg.lo, cfg.hi);
    json cumulative = json::array();
    r.table << "Homology of the Ginzburg algebra modulo weight > k, n = " << cfg.dim << "\n" << std::setw(4) << "k";
    for (int d = cfg.lo; d <= cfg.hi; ++d) r.table << std::setw(6) << d;
    r.table << "\n";
    for (const auto& [k, row] : h.cumulative) {
        json dims = json::object();
        r.table << std::setw(4) << k;
        for (int d = cfg.lo; d <= cfg.hi; ++d) {
            int v = row.count(d) ? row.at(d) : 0;
            dims[std::to_string(d)] = v;
            r.table << std::setw(6) << v;
        }
        r.table << "\n";
        cumulative.push_back({{"weight_bound", k}, {"dims", dims}});
    }
    r.data["cumulative"] = cumulative;
}

void cmd_koszul(const JobConfig& cfg, Report& r)
{
    auto t = ksz::ext_betti(ksz::augment(algebra(cfg)), cfg.lo, cfg.hi, cfg.B);
    r.data["action"] = "ext";
    r.data["table"] = homology_json(t);
    r.table << "Ext of the base over the algebra, bar length B = " << cfg.B << "\n";
    homology_text(r.table, t);
}

json spectrum_json(const std::map<int, int>& s)
{
    json o = json::object();
    for (const auto& [d, k] : s) o[std::to_string(d)] = k;
    return o;
}

void spectrum_text(std::ostream& os, const std::map<int, int>& s)
{
    for (const auto& [d, k] : s) os << std::setw(8) << d << std::setw(8) << k << "\n";
}

void cmd_ce(const JobConfig& cfg, Report& r)
{
    auto g = ce::grade_generators(io::load_front(cfg.input));
    auto before = ce::degree_spectrum(g);
    auto bad = ce::grading_failures(g);
    r.data["action"] = cfg.action;
    r.data["generators"] = g.generators.size();
    r.data["spectrum"] = spectrum_json(before);
    r.data["grading_failures"] = bad.size();
    r.table << "generators: " << g.generators.size() << "\n" << std::setw(8) << "degree" << std::setw(8) << "count" << "\n";
    spectrum_text(r.table, before);
    r.table << "grading re-check: " << (bad.empty() ? "pass" : "FAIL") << "\n";
    if (!bad.empty()) r.code = failed;
    if (cfg.action == "grade") return;

    json log = json::array();
    auto emit = [&](const std::vector<ce::Elimination>& steps) {
        r.table << "eliminations: " << steps.size() << "\n";
        for (const auto& e : steps) {
            log.push_back({{"b", g.label(e.b)}, {"a", g.label(e.a)}, {"replacement", g.label(e.replacement)}});
            r.table << "  " << g.label(e.b) << " cancels " << g.label(e.a) << " := " << g.label(e.replacement) << "\n";
        }
        r.data["log"] = log;
    };
    try {
        auto result = ce::cancel_positive(g);
        emit(result.log);
        auto after = ce::degree_spectrum(result.reduced);
        int top = after.empty() ? 0 : after.rbegin()->first;
        r.data["reduced_spectrum"] = spectrum_json(after);
        r.data["max_surviving_degree"] = top;
        r.table << "surviving generators\n";
        spectrum_text(r.table, after);
        r.table << "max surviving degree: " << top << "\n";
        if (top > 0) r.code = failed;
    } catch (const ce::CancellationError& e) {
        emit(e.log);
        r.data["error"] = e.what();
        r.table << "cancellation aborted: " << e.what() << "\n";
        r.code = failed;
    }
}

void cmd_witness(const JobConfig& cfg, Report& r)
{
    auto a = algebra(cfg);
    if (cfg.eta.empty()) throw UsageError("witness needs --eta");
    auto eta = io::parse_chain(a, cfg.eta);
    auto w = hoch::exactness_witness(a, cfg.L, cfg.U, eta);
    r.data["eta"] = cfg.eta;
    r.data["verdict"] = hoch::verdict_name(w.verdict);
    r.table << "eta = " << cfg.eta << "\nverdict: " << hoch::verdict_name(w.verdict) << "\n";
    if (w.witness) {
        json coeffs = json::array();
        for (std::size_t k = 0; k < w.witness->coeffs.size(); ++k) {
            std::string s;
            for (const auto& [key, c] : w.witness->coeffs[k])
                s += (s.empty() ? "" : " + ") + c.str() + " " + hoch::label(a, key);
            coeffs.push_back(s.empty() ? "0" : s);
            r.table << "  u^-" << k << ": " << (s.empty() ? "0" : s) << "\n";
        }
        r.data["witness"] = coeffs;
    }
}

// Seeded property suites; each entry is (name, trials, failures).
void cmd_selftest(const JobConfig& cfg, Report& r)
{
    std::mt19937 rng(cfg.seed);
    json suites = json::array();
    auto suite = [&](const std::string& name, int trials, const std::function<bool()>& trial) {
        int fails = 0;
        for (int t = 0; t < trials; ++t)
            if (!trial()) ++fails;
        suites.push_back({{"suite", name}, {"trials", trials}, {"failures", fails}});
        r.table << std::setw(36) << std::left << name << std::right << std::setw(5) << trials << " trials  "
                << (fails ? std::to_string(fails) + " FAILED" : std::string("pass")) << "\n";
        if (fails) r.code = failed;
    };
    suite("S1 axioms on random complexes", 50, [&] { return s1::verify_axioms(s1::random_complex(rng, 4, true)).pass; });
    suite("S1 axioms on CH^nu", 10, [&] {
        return s1::verify_axioms(hoch::chnu_s1(alg::samples::random_unital(rng, 3), 4)).pass;
    });
    suite("Ginzburg d^2 = 0", 40, [&] {
        auto qp = gz::random_quiver_with_potential(rng, 3);
        try {
            return gz::build_ginzburg(qp.quiver, qp.potential, 3, 4).certificate.pass;
        } catch (const gz::DSquaredError&) {
            return false;
        }
    });
    suite("bar and cobar d^2 = 0", 20, [&] {
        auto a = alg::samples::random_unital(rng, 3);
        ksz::AugmentedAlgebra aug;
        try {
            aug = ksz::augment(a);
        } catch (const std::invalid_argument&) {
            return true;
        }
        auto c = ksz::bar(aug, 3);
        return lin::d_squared_failures(c.complex).empty() && alg::check_d_squared(ksz::completed_cobar(c, 3)).pass;
    });
    r.data["seed"] = cfg.seed;
    r.data["suites"] = suites;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    JobConfig cfg;
    CLI::App app{"Exact homological algebra: Hochschild, cyclic, Ginzburg, Koszul and cellular computations"};
    app.name("hochkit");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--field", cfg.field, "Coefficient field")->check(CLI::IsMember({"q", "f2"}));
    app.add_option("--weight", cfg.W, "Word weight bound W")->check(CLI::PositiveNumber);
    app.add_option("--length", cfg.L, "Tensor length bound L")->check(CLI::PositiveNumber);
    app.add_option("--u-order", cfg.U, "Power of u kept, U")->check(CLI::PositiveNumber);
    app.add_option("--bar", cfg.B, "Bar length B")->check(CLI::PositiveNumber);
    app.add_option("--cobar", cfg.P, "Cobar filtration depth P")->check(CLI::PositiveNumber);
    app.add_option("--arity", cfg.arity, "Highest mu^k accepted")->check(CLI::PositiveNumber);
    app.add_option("--window", cfg.window, "Degree window lo:hi");
    app.add_option("--seed", cfg.seed, "Seed for randomized suites");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "structured"}));

    auto with_input = [&](CLI::App* sub) { sub->add_option("input", cfg.input, "Input file")->required(); };
    auto* hh = app.add_subcommand("hh", "Hochschild homology table");
    with_input(hh);
    hh->add_flag("--unreduced", cfg.unreduced, "Use the unreduced complex");
    with_input(app.add_subcommand("hc", "Positive, negative and periodic cyclic homology"));
    with_input(app.add_subcommand("les", "Connes long exact sequence ranks and exactness"));
    with_input(app.add_subcommand("gysin", "Gysin triangle of the exported S1-complex"));
    auto* gzc = app.add_subcommand("ginzburg", "Ginzburg algebra of a quiver with potential");
    gzc->add_option("action", cfg.action, "check | jacobi | hh")->required()->check(CLI::IsMember({"check", "jacobi", "hh"}));
    with_input(gzc);
    gzc->add_option("--dim", cfg.dim, "Calabi-Yau dimension n");
    auto* kz = app.add_subcommand("koszul", "Koszul duality computations");
    kz->add_option("action", cfg.action, "ext")->required()->check(CLI::IsMember({"ext"}));
    with_input(kz);
    auto* cec = app.add_subcommand("ce", "Cellular generators of a front");
    cec->add_option("action", cfg.action, "grade | cancel")->required()->check(CLI::IsMember({"grade", "cancel"}));
    with_input(cec);
    auto* wit = app.add_subcommand("witness", "Search for an exactness witness of a Hochschild class");
    with_input(wit);
    wit->add_option("--eta", cfg.eta, "Chain such as 'hat(x) - check(x x)'")->required();
    app.add_subcommand("selftest", "Seeded property suites");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        parse_window(cfg);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "hochkit: " << e.what() << "\n";
        return bad_input;
    } catch (const UsageError& e) {
        err << "hochkit: " << e.what() << "\n";
        return bad_input;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    Report r;
    r.data["command"] = cfg.command;
    if (!cfg.input.empty()) r.data["input"] = cfg.input;
    r.data["field"] = cfg.field;
    r.data["truncation"] = {{"W", cfg.W}, {"L", cfg.L}, {"U", cfg.U}, {"B", cfg.B}, {"P", cfg.P}, {"arity", cfg.arity}};
    r.data["window"] = {cfg.lo, cfg.hi};
    try {
        if (cfg.command == "hh") cmd_hh(cfg, r);
        else if (cfg.command == "hc") cmd_hc(cfg, r);
        else if (cfg.command == "les") cmd_les(cfg, r);
        else if (cfg.command == "gysin") cmd_gysin(cfg, r);
        else if (cfg.command == "ginzburg") cmd_ginzburg(cfg, r);
        else if (cfg.command == "koszul") cmd_koszul(cfg, r);
        else if (cfg.command == "ce") cmd_ce(cfg, r);
        else if (cfg.command == "witness") cmd_witness(cfg, r);
        else cmd_selftest(cfg, r);
    } catch (const io::ParseError& e) {
        err << "hochkit: " << e.what() << "\n";
        return bad_input;
    } catch (const std::invalid_argument& e) {
        err << "hochkit: " << e.what() << "\n";
        return bad_input;
    } catch (const ce::FrontError& e) {
        err << "hochkit: " << e.what() << "\n";
        return bad_input;
    } catch (const std::exception& e) {
        err << "hochkit: " << cfg.command << " failed: " << e.what() << "\n";
        return failed;
    }
    r.data["exit_code"] = r.code;
    if (cfg.format == "structured") out << r.data.dump(2) << "\n";
    else out << r.table.str();
    return r.code;
}

}  // namespace hochkit::cli
