#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "sidonkit/analysis.hpp"
#include "sidonkit/curveoracle.hpp"
#include "sidonkit/decomposer.hpp"
#include "sidonkit/deletionlab.hpp"
#include "sidonkit/error.hpp"
#include "sidonkit/io.hpp"
#include "sidonkit/numbertheory.hpp"
#include "sidonkit/randommodel.hpp"
#include "sidonkit/sidoncore.hpp"
#include "sidonkit/sunflower.hpp"

using namespace sidonkit;
using io::Json;

namespace {

// Raised for bad flag values discovered after parsing; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string out;
    std::string format = "json";
    unsigned threads = 1;
};

// What a subcommand produces: the resolved parameters (hashed) and either a
// JSON payload or raw text for csv/jsonl formats.
struct Outcome {
    Json params;
    Json payload;
    std::optional<std::string> text;
    bool files_written = false;  // --out already consumed; the document goes to stdout
};

using Handler = std::function<Outcome()>;

Rational parse_rational(const std::string& flag, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const Error&) {
        throw UsageError(flag + ": expected an exact rational p/q, got '" + text + "'");
    }
}

std::vector<std::uint64_t> parse_list(const std::string& flag, const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(flag + ": expected a comma-separated list of integers, got '" + text + "'");
        }
    }
    return out;
}

Ambient parse_mode(const std::string& mode, const ModSet& set) {
    if (mode == "cyclic") return Ambient::cyclic(set.modulus());
    if (mode == "integer") return Ambient::integer();
    throw UsageError("--mode: expected integer or cyclic, got '" + mode + "'");
}

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
    for (auto f : allowed)
        if (c.format == f) return;
    throw UsageError("--format: '" + c.format + "' is not available for this command");
}

Json witness_json(const deletionlab::RemovalWitness& w) { return {{"element", w.element}, {"witness", w.tuple}}; }

Json lift_json(const deletionlab::LiftResult& r) {
    Json removed = Json::array();
    for (const auto& w : r.removed) removed.push_back(witness_json(w));
    return {{"survivors", std::vector<std::uint64_t>(r.survivors.elements().begin(), r.survivors.elements().end())},
            {"removed", removed},
            {"passes", r.passes}};
}

// The sampling flags shared by sample / expectation / delta / montecarlo.
struct ModelFlags {
    std::string gamma = "7/11";
    std::uint64_t m = 100;
    std::uint64_t horizon = 100000;
    std::uint64_t seed = 0;
    std::string residues;
    std::uint64_t ruzsa = 0;

    void attach(CLI::App* app) {
        app->add_option("--gamma", gamma, "exponent gamma as p/q");
        app->add_option("--m", m, "threshold m");
        app->add_option("--horizon", horizon, "largest integer considered");
        app->add_option("--seed", seed, "seed");
        app->add_option("--residues", residues, "ModSet file restricting residues");
        app->add_option("--ruzsa", ruzsa, "restrict residues to the Ruzsa set for prime p");
    }

    SampleConfig resolve() const {
        SampleConfig cfg;
        cfg.gamma = parse_rational("--gamma", gamma);
        cfg.m = m;
        cfg.horizon = horizon;
        cfg.seed = seed;
        if (!residues.empty() && ruzsa) throw UsageError("--residues and --ruzsa are exclusive");
        if (!residues.empty()) cfg.residues = io::read_modset(residues);
        if (ruzsa) cfg.residues = sidoncore::ruzsa_set(ruzsa, numbertheory::primitive_root(ruzsa));
        try {
            cfg.validate();
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        return cfg;
    }
};

int emit(const Common& c, const std::string& command, const Outcome& o) {
    std::string text;
    if (o.text) {
        text = *o.text;
    } else {
        Json doc;
        doc["status"] = "ok";
        doc["command"] = command;
        doc["configHash"] = io::config_hash(o.params);
        doc["params"] = o.params;
        doc["payload"] = o.payload;
        text = doc.dump(2) + "\n";
    }
    if (c.out.empty() || o.files_written) {
        std::cout << text;
    } else {
        io::write_file(c.out, text);
    }
    return 0;
}

int emit_error(const std::string& command, const Error& e) {
    Json doc;
    doc["status"] = "error";
    doc["command"] = command;
    doc["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    std::cout << doc.dump(2) << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sidon sets, additive bases and random sequence experiments"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--out", common.out, "write output to this file");
    app.add_option("--format", common.format, "json, csv or jsonl")->check(CLI::IsMember({"json", "csv", "jsonl"}));
    app.add_option("--threads", common.threads, "worker threads (results do not depend on it)")
        ->check(CLI::Range(1u, 256u));
    app.fallthrough();

    std::string command;
    Handler handler;
    auto bind = [&](CLI::App* sub, std::string name, Handler h) {
        sub->callback([&command, &handler, name = std::move(name), h = std::move(h)] {
            command = name;
            handler = h;
        });
    };

    // construct
    auto* construct = app.add_subcommand("construct", "build a Sidon set")->require_subcommand(1);
    std::uint64_t cons_p = 0, cons_g = 0;
    auto* et = construct->add_subcommand("erdos-turan", "x + (x^2 mod p) 2p, an integer Sidon set");
    et->add_option("-p", cons_p, "odd prime")->required();
    bind(et, "construct erdos-turan", [&] {
        return Outcome{{{"p", cons_p}}, io::to_json(sidoncore::erdos_turan_set(cons_p)), {}};
    });
    auto* rz = construct->add_subcommand("ruzsa", "{(x, g^x)} flattened into Z_(p-1)p");
    rz->add_option("-p", cons_p, "prime")->required();
    rz->add_option("-g", cons_g, "generator (default: least primitive root)");
    bind(rz, "construct ruzsa", [&] {
        const auto g = cons_g ? cons_g : numbertheory::primitive_root(cons_p);
        return Outcome{{{"p", cons_p}, {"g", g}}, io::to_json(sidoncore::ruzsa_set(cons_p, g)), {}};
    });

    // verify
    auto* verify = app.add_subcommand("verify", "check a set")->require_subcommand(1);
    std::string ver_in, ver_mode = "cyclic", ver_rep = "allowed";
    unsigned ver_h = 3;
    auto* vs = verify->add_subcommand("sidon", "Sidon property with a collision witness");
    auto* vb = verify->add_subcommand("b2g", "largest number of representations a + a'");
    auto* vbasis = verify->add_subcommand("basis", "is every residue a sum of h elements");
    for (auto* sub : {vs, vb, vbasis}) sub->add_option("--in", ver_in, "ModSet file (JSON or text)")->required();
    for (auto* sub : {vs, vb}) sub->add_option("--mode", ver_mode, "integer or cyclic");
    vbasis->add_option("-H,--order", ver_h, "order h");
    vbasis->add_option("--repetition", ver_rep, "allowed or forbidden");
    bind(vs, "verify sidon", [&] {
        const auto set = io::read_modset(ver_in);
        const auto w = sidoncore::is_sidon(set.elements(), parse_mode(ver_mode, set));
        Json witness = nullptr;
        if (w.collision) witness = *w.collision;
        return Outcome{{{"set", io::to_json(set)}, {"mode", ver_mode}}, {{"sidon", w.sidon}, {"witness", witness}}, {}};
    });
    bind(vb, "verify b2g", [&] {
        const auto set = io::read_modset(ver_in);
        const auto g = sidoncore::b2g_bound(set.elements(), parse_mode(ver_mode, set));
        return Outcome{{{"set", io::to_json(set)}, {"mode", ver_mode}}, {{"g", g}}, {}};
    });
    bind(vbasis, "verify basis", [&] {
        const auto set = io::read_modset(ver_in);
        if (ver_rep != "allowed" && ver_rep != "forbidden")
            throw UsageError("--repetition: expected allowed or forbidden, got '" + ver_rep + "'");
        const auto rep = ver_rep == "allowed" ? sidoncore::Repetition::Allowed : sidoncore::Repetition::Forbidden;
        const auto r = sidoncore::basis_order_check(set, ver_h, rep, common.threads);
        return Outcome{{{"set", io::to_json(set)}, {"h", ver_h}, {"repetition", ver_rep}},
                       {{"basis", r.basis}, {"uncovered", r.uncovered}},
                       {}};
    });

    // curve
    auto* curve = app.add_subcommand("curve", "elliptic-curve counts and the quadric")->require_subcommand(1);
    std::uint64_t cv_p = 0, cv_b = 0, cv_lambda = 1, cv_g = 0;
    std::int64_t cv_r1 = 0, cv_r2 = 0;
    unsigned cv_level = 2;
    auto* cc = curve->add_subcommand("count", "points with V != 0 on U^2 = 4V^3 + (bV + lambda)^2");
    cc->add_option("-p", cv_p, "odd prime")->required();
    cc->add_option("-b", cv_b, "coefficient b");
    cc->add_option("--lambda", cv_lambda, "nonzero lambda");
    bind(cc, "curve count", [&] {
        const curveoracle::CurveParams cp{cv_p, cv_b, cv_lambda};
        return Outcome{{{"p", cv_p}, {"b", cv_b}, {"lambda", cv_lambda}},
                       {{"points", curveoracle::curve_point_count(cp)},
                        {"hasseGap", curveoracle::hasse_gap(cp)},
                        {"tolerance", curveoracle::hasse_tolerance(cv_p)}},
                       {}};
    });
    auto* ci = curve->add_subcommand("identity", "triple counts against curve counts for every target");
    ci->add_option("-p", cv_p, "prime")->required();
    ci->add_option("-g", cv_g, "generator (default: least primitive root)");
    bind(ci, "curve identity", [&] {
        const auto g = cv_g ? cv_g : numbertheory::primitive_root(cv_p);
        const auto table = curveoracle::triple_rep_table(cv_p, g);
        std::uint64_t mismatches = 0, max_repeated = 0;
        for (std::uint64_t a = 0; a + 1 < cv_p; ++a)
            for (std::uint64_t b = 0; b < cv_p; ++b) {
                const auto lambda = numbertheory::pow_mod(g, a, cv_p);
                if (table[a * cv_p + b] != curveoracle::curve_point_count({cv_p, b, lambda})) ++mismatches;
                max_repeated = std::max(max_repeated, curveoracle::repeated_coordinate_count(cv_p, g, a, b));
            }
        return Outcome{{{"p", cv_p}, {"g", g}},
                       {{"targets", (cv_p - 1) * cv_p}, {"mismatches", mismatches}, {"maxRepeated", max_repeated}},
                       {}};
    });
    auto* cq = curve->add_subcommand("quadric", "points of x1^2 + x2^2 + (x1 + x2 - r1)^2 = r2");
    auto* ccov = curve->add_subcommand("coverage", "empty dyadic boxes of the torus cloud");
    for (auto* sub : {cq, ccov}) {
        sub->add_option("-p", cv_p, "prime = 1 mod 3")->required();
        sub->add_option("--r1", cv_r1, "r1")->required();
        sub->add_option("--r2", cv_r2, "r2")->required();
    }
    ccov->add_option("--level", cv_level, "box level in [1, 6]");
    bind(cq, "curve quadric", [&] {
        require_format(common, {"json", "csv"});
        const auto sols = curveoracle::enumerate_quadric({cv_p, cv_r1, cv_r2});
        Outcome o{{{"p", cv_p}, {"r1", cv_r1}, {"r2", cv_r2}}, {}, {}};
        if (common.format == "csv") {
            o.text = io::torus_to_csv(sols);
            return o;
        }
        Json pts = Json::array();
        for (auto [x1, x2] : sols.points) pts.push_back({x1, x2});
        o.payload = {{"reducible", sols.reducible}, {"count", sols.points.size()}, {"points", pts}};
        return o;
    });
    bind(ccov, "curve coverage", [&] {
        const auto cloud = curveoracle::torus_points(curveoracle::QuadricParams{cv_p, cv_r1, cv_r2});
        const auto cov = curveoracle::dyadic_box_coverage(cloud, cv_level);
        return Outcome{{{"p", cv_p}, {"r1", cv_r1}, {"r2", cv_r2}, {"level", cv_level}},
                       {{"empty", cov.empty}, {"total", cov.total}, {"points", cloud.points.size()}},
                       {}};
    });

    // decompose
    auto* decompose = app.add_subcommand("decompose", "sums of three or four set elements")->require_subcommand(1);
    std::uint64_t dc_p = 0, dc_g = 0, dc_a = 0, dc_b = 0, dc_N = 0, dc_n = 0;
    bool dc_distinct = false;
    std::string dc_search = "exhaustive";
    auto* d3 = decompose->add_subcommand("ruzsa3", "three Ruzsa elements summing to (a, b)");
    auto* d4 = decompose->add_subcommand("ruzsa4", "four pairwise-distinct Ruzsa elements");
    for (auto* sub : {d3, d4}) {
        sub->add_option("-p", dc_p, "prime")->required();
        sub->add_option("-g", dc_g, "generator (default: least primitive root)");
        sub->add_option("-a", dc_a, "target in Z_(p-1)")->required();
        sub->add_option("-b", dc_b, "target in Z_p")->required();
    }
    d3->add_flag("--distinct", dc_distinct, "require pairwise-distinct parts");
    bind(d3, "decompose ruzsa3", [&] {
        const auto g = dc_g ? dc_g : numbertheory::primitive_root(dc_p);
        const Json params = {{"p", dc_p}, {"g", g}, {"a", dc_a}, {"b", dc_b}, {"distinct", dc_distinct}};
        return Outcome{params, io::to_json(decomposer::decompose3_ruzsa(dc_p, g, dc_a, dc_b, dc_distinct)), {}};
    });
    bind(d4, "decompose ruzsa4", [&] {
        const auto g = dc_g ? dc_g : numbertheory::primitive_root(dc_p);
        const Json params = {{"p", dc_p}, {"g", g}, {"a", dc_a}, {"b", dc_b}};
        return Outcome{params, io::to_json(decomposer::decompose4_ruzsa(dc_p, g, dc_a, dc_b)), {}};
    });
    auto* dz = decompose->add_subcommand("zn", "three Erdos-Turan elements summing to n in Z_N");
    dz->add_option("-N", dc_N, "modulus")->required();
    dz->add_option("-n", dc_n, "target residue")->required();
    dz->add_option("-p", dc_p, "window prime (default: searched)");
    dz->add_option("--search", dc_search, "box or exhaustive")->check(CLI::IsMember({"box", "exhaustive"}));
    bind(dz, "decompose zn", [&] {
        const auto search = dc_search == "box" ? decomposer::Search::Box : decomposer::Search::Exhaustive;
        const auto p = dc_p ? dc_p : numbertheory::find_window_prime(dc_N);
        const Json params = {{"N", dc_N}, {"n", dc_n}, {"p", p}, {"search", dc_search}};
        return Outcome{params, io::to_json(decomposer::decompose3_ZN(dc_n, dc_N, p, search)), {}};
    });

    // sample
    auto* sample = app.add_subcommand("sample", "draw a random sequence");
    ModelFlags sample_flags;
    sample_flags.attach(sample);
    bind(sample, "sample", [&] {
        const auto cfg = sample_flags.resolve();
        const auto A = randommodel::sample_sequence(cfg, common.threads);
        const auto cfg_json = io::to_json(cfg);
        if (!common.out.empty()) {
            io::write_intseq(common.out, A);
            Outcome o{cfg_json, io::intseq_sidecar(A), {}};
            o.files_written = true;
            return o;
        }
        return Outcome{cfg_json,
                       {{"count", A.size()},
                        {"elements", std::vector<std::uint64_t>(A.elements().begin(), A.elements().end())}},
                       {}};
    });

    // lift
    auto* lift = app.add_subcommand("lift", "delete elements until Sidon or B2[2]")->require_subcommand(1);
    std::string lift_in;
    bool lift_fix = false;
    auto* ls = lift->add_subcommand("sidon", "Sidon lifting");
    auto* lb = lift->add_subcommand("b22", "B2[2] lifting");
    for (auto* sub : {ls, lb}) {
        sub->add_option("--in", lift_in, "sequence file (one integer per line)")->required();
        sub->add_flag("--fixpoint", lift_fix, "iterate until nothing is removed");
    }
    bind(ls, "lift sidon", [&] {
        const auto A = io::read_intseq(lift_in);
        return Outcome{{{"in", io::intseq_sidecar(A)}, {"fixpoint", lift_fix}},
                       lift_json(deletionlab::sidon_lift(A, lift_fix)), {}};
    });
    bind(lb, "lift b22", [&] {
        const auto A = io::read_intseq(lift_in);
        return Outcome{{{"in", io::intseq_sidecar(A)}, {"fixpoint", lift_fix}},
                       lift_json(deletionlab::b2_2_lift(A, lift_fix)), {}};
    });

    // family
    auto* family = app.add_subcommand("family", "representation and obstruction families")->require_subcommand(1);
    auto* fe = family->add_subcommand("enumerate", "every member with coordinates in the sequence");
    std::string fam_in, fam_kind, fam_eps;
    std::int64_t fam_target = 0;
    std::uint64_t fam_mod = 1;
    fe->add_option("--in", fam_in, "sequence file")->required();
    fe->add_option("--kind", fam_kind, "Q, R, T, B, U2, U3, V2, V3 or W")->required();
    fe->add_option("--target", fam_target, "n or r")->required();
    fe->add_option("-N,--modulus", fam_mod, "modulus N (1 disables residue conditions)");
    fe->add_option("--epsilon", fam_eps, "epsilon as p/q (R and B)");
    bind(fe, "family enumerate", [&] {
        require_format(common, {"json", "jsonl"});
        const auto A = io::read_intseq(fam_in);
        deletionlab::FamilySpec spec{deletionlab::parse_family_kind(fam_kind), fam_target, fam_mod, std::nullopt};
        if (!fam_eps.empty()) spec.epsilon = parse_rational("--epsilon", fam_eps);
        const auto fam = deletionlab::enumerate_family(A, spec);
        Json params = {{"in", io::intseq_sidecar(A)}, {"kind", fam_kind}, {"target", fam_target}, {"modulus", fam_mod}};
        if (spec.epsilon) params["epsilon"] = io::to_json(*spec.epsilon);
        Outcome o{params, {}, {}};
        if (common.format == "jsonl") {
            o.text = io::family_to_jsonl(fam);
            return o;
        }
        o.payload = {{"kind", fam_kind}, {"convention", fam.convention()}, {"size", fam.size()}, {"members", fam.members}};
        return o;
    });

    // sunflower
    auto* sunflower = app.add_subcommand("sunflower", "vectorial sunflowers")->require_subcommand(1);
    std::string sf_in, sf_type;
    std::size_t sf_k = 2;
    bool sf_no_fallback = false;
    auto* sff = sunflower->add_subcommand("find", "find k petals");
    auto* sfc = sunflower->add_subcommand("check", "is the whole input a sunflower of the given type");
    for (auto* sub : {sff, sfc}) sub->add_option("--in", sf_in, "tuples (JSON array or JSON lines)")->required();
    sff->add_option("-k", sf_k, "petals")->check(CLI::PositiveNumber);
    sff->add_flag("--no-fallback", sf_no_fallback, "skip the exhaustive search");
    sfc->add_option("--type", sf_type, "1-based positions, comma separated");
    bind(sff, "sunflower find", [&] {
        const auto fam = io::read_tuples(sf_in);
        const auto cert = sunflower::find_vectorial_sunflower(fam, sf_k, {.exact_fallback = !sf_no_fallback});
        const Json params = {{"family", fam}, {"k", sf_k}, {"fallback", !sf_no_fallback}};
        Json payload = {{"found", cert.has_value()}, {"bound", sunflower::vectorial_bound(
                                                                   fam.empty() ? 0 : static_cast<unsigned>(fam[0].size()), sf_k)}};
        if (cert) payload["certificate"] = io::to_json(*cert, fam);
        return Outcome{params, payload, {}};
    });
    bind(sfc, "sunflower check", [&] {
        const auto fam = io::read_tuples(sf_in);
        std::vector<unsigned> type;
        for (auto v : parse_list("--type", sf_type)) type.push_back(static_cast<unsigned>(v));
        return Outcome{{{"family", fam}, {"type", type}},
                       {{"sunflower", sunflower::is_vectorial_sunflower(fam, type)}}, {}};
    });

    // analyze
    auto* analyze = app.add_subcommand("analyze", "numeric audits of the expected-value lemmas")->require_subcommand(1);
    std::string an_alpha = "7/11", an_beta = "7/11", an_gamma = "7/11", an_ms = "0,10,100", an_values = "1,10,100",
                an_targets, an_kind = "T", an_eps;
    std::uint64_t an_n = 10, an_m = 0, an_nmax = 100000, an_master = 0;
    std::size_t an_points = 30, an_trials = 50;
    double an_tol = 1e-9, an_exponent = 0;
    auto* asig = analyze->add_subcommand("sigma", "sum over x + y = n of x^-alpha y^-beta");
    auto* atau = analyze->add_subcommand("tau", "sum over x - y = n of x^-alpha y^-beta");
    for (auto* sub : {asig, atau}) {
        sub->add_option("--alpha", an_alpha, "alpha as p/q");
        sub->add_option("--beta", an_beta, "beta as p/q");
        sub->add_option("-n", an_n, "n");
        sub->add_option("-m", an_m, "m");
    }
    atau->add_option("--tol", an_tol, "tail tolerance");
    bind(asig, "analyze sigma", [&] {
        const analysis::SumSpec s{parse_rational("--alpha", an_alpha), parse_rational("--beta", an_beta), an_n, an_m};
        return Outcome{{{"alpha", s.alpha.str()}, {"beta", s.beta.str()}, {"n", an_n}, {"m", an_m}},
                       {{"value", static_cast<double>(analysis::sigma(s))}}, {}};
    });
    bind(atau, "analyze tau", [&] {
        const analysis::SumSpec s{parse_rational("--alpha", an_alpha), parse_rational("--beta", an_beta), an_n, an_m,
                                  an_tol};
        const auto v = analysis::tau(s);
        return Outcome{{{"alpha", s.alpha.str()}, {"beta", s.beta.str()}, {"n", an_n}, {"m", an_m}, {"tol", an_tol}},
                       {{"value", static_cast<double>(v.value)},
                        {"errorBound", static_cast<double>(v.error_bound)},
                        {"cutoff", v.cutoff}},
                       {}};
    });
    auto* aab = analyze->add_subcommand("lemma-ab", "sup of sigma and tau times (n+m)^(alpha+beta-1)");
    aab->add_option("--alpha", an_alpha, "alpha as p/q");
    aab->add_option("--beta", an_beta, "beta as p/q");
    aab->add_option("--nmax", an_nmax, "largest n of the log grid");
    aab->add_option("--points", an_points, "grid points");
    aab->add_option("--ms", an_ms, "values of m, comma separated");
    bind(aab, "analyze lemma-ab", [&] {
        require_format(common, {"json", "csv"});
        const auto alpha = parse_rational("--alpha", an_alpha);
        const auto beta = parse_rational("--beta", an_beta);
        const auto r = analysis::check_lemma_ab(alpha, beta, analysis::log_grid(2, an_nmax, an_points),
                                                parse_list("--ms", an_ms));
        Outcome o{{{"alpha", alpha.str()}, {"beta", beta.str()}, {"nmax", an_nmax}, {"points", an_points}, {"ms", an_ms}},
                  {{"sigma", io::to_json(r.sigma)}, {"tau", io::to_json(r.tau)}}, {}};
        if (common.format == "csv") o.text = "# sigma\n" + io::report_to_csv(r.sigma) + "# tau\n" + io::report_to_csv(r.tau);
        return o;
    });
    auto* aabab = analyze->add_subcommand("lemma-abab", "three-factor series against (ab)^(1-2 gamma)");
    aabab->add_option("--gamma", an_gamma, "gamma as p/q");
    aabab->add_option("--values", an_values, "values of a and b, comma separated");
    bind(aabab, "analyze lemma-abab", [&] {
        require_format(common, {"json", "csv"});
        const auto gamma = parse_rational("--gamma", an_gamma);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
        const auto vals = parse_list("--values", an_values);
        for (auto a : vals)
            for (auto b : vals) pairs.emplace_back(a, b);
        const auto r = analysis::check_lemma_abab(gamma, pairs);
        Outcome o{{{"gamma", gamma.str()}, {"values", an_values}}, io::to_json(r), {}};
        if (common.format == "csv") o.text = io::report_to_csv(r);
        return o;
    });
    auto* aexp = analyze->add_subcommand("expectation", "exact expected size of Q_n");
    auto* adel = analyze->add_subcommand("delta", "exact dependency sum of Q_n");
    ModelFlags an_model;
    for (auto* sub : {aexp, adel}) {
        an_model.attach(sub);
        sub->add_option("-n", an_n, "n")->required();
    }
    bind(aexp, "analyze expectation", [&] {
        const auto cfg = an_model.resolve();
        return Outcome{{{"config", io::to_json(cfg)}, {"n", an_n}},
                       {{"value", static_cast<double>(analysis::exact_expectation_Q(an_n, cfg))}}, {}};
    });
    bind(adel, "analyze delta", [&] {
        const auto cfg = an_model.resolve();
        return Outcome{{{"config", io::to_json(cfg)}, {"n", an_n}},
                       {{"value", static_cast<double>(analysis::exact_delta_Q(an_n, cfg))}}, {}};
    });
    auto* amc = analyze->add_subcommand("montecarlo", "sample means of family sizes");
    an_model.attach(amc);
    amc->add_option("--kind", an_kind, "family kind");
    amc->add_option("--targets", an_targets, "targets, comma separated")->required();
    amc->add_option("--trials", an_trials, "independent samples");
    amc->add_option("--master-seed", an_master, "seeds are derived from this");
    amc->add_option("--epsilon", an_eps, "epsilon as p/q (R and B)");
    amc->add_option("--exponent", an_exponent, "normalization exponent");
    bind(amc, "analyze montecarlo", [&] {
        require_format(common, {"json", "csv"});
        analysis::McRequest req;
        req.kind = deletionlab::parse_family_kind(an_kind);
        for (auto t : parse_list("--targets", an_targets)) req.targets.push_back(static_cast<std::int64_t>(t));
        req.cfg = an_model.resolve();
        req.trials = an_trials;
        req.master_seed = an_master;
        if (!an_eps.empty()) req.epsilon = parse_rational("--epsilon", an_eps);
        req.exponent = an_exponent;
        req.threads = common.threads;
        const auto rows = analysis::monte_carlo_family_mean(req);
        Json params = {{"config", io::to_json(req.cfg)}, {"kind", an_kind},       {"targets", req.targets},
                       {"trials", an_trials},             {"masterSeed", an_master}, {"exponent", an_exponent}};
        if (req.epsilon) params["epsilon"] = io::to_json(*req.epsilon);
        Json table = Json::array();
        for (const auto& r : rows)
            table.push_back({{"target", r.target},
                             {"mean", static_cast<double>(r.mean)},
                             {"stderr", static_cast<double>(r.stderr_)},
                             {"normalized", static_cast<double>(r.normalized)}});
        Outcome o{params, {{"rows", table}}, {}};
        if (common.format == "csv") o.text = io::rows_to_csv(rows);
        return o;
    });

    // audit
    auto* audit = app.add_subcommand("audit", "representations destroyed by lifting")->require_subcommand(1);
    auto* ad = audit->add_subcommand("destruction", "check |Q_n(lifted)| >= |Q_n| - |T_n| (or R/B)");
    std::string au_in, au_mode = "QT", au_eps;
    std::uint64_t au_n = 0, au_N = 1;
    ad->add_option("--in", au_in, "sequence file")->required();
    ad->add_option("-n", au_n, "target n")->required();
    ad->add_option("-N,--modulus", au_N, "modulus N");
    ad->add_option("--mode", au_mode, "QT or RB")->check(CLI::IsMember({"QT", "RB"}));
    ad->add_option("--epsilon", au_eps, "epsilon as p/q (RB)");
    bind(ad, "audit destruction", [&] {
        const auto A = io::read_intseq(au_in);
        const auto mode = au_mode == "QT" ? deletionlab::AuditMode::QT : deletionlab::AuditMode::RB;
        std::optional<Rational> eps;
        if (!au_eps.empty()) eps = parse_rational("--epsilon", au_eps);
        const auto r = deletionlab::destruction_audit(A, au_n, au_N, mode, eps);
        Json params = {{"in", io::intseq_sidecar(A)}, {"n", au_n}, {"N", au_N}, {"mode", au_mode}};
        if (eps) params["epsilon"] = io::to_json(*eps);
        return Outcome{params,
                       {{"before", r.before}, {"after", r.after}, {"obstruction", r.obstruction}, {"holds", r.holds}},
                       {}};
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (!handler) {
        std::cerr << app.help();
        return 2;
    }
    try {
        const auto outcome = handler();
        return emit(common, command, outcome);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        return emit_error(command, e);
    }
}
