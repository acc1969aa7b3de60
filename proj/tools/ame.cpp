// Command-line surface for the ame library.
//
// Subcommands: verify, invariant, moment, reduce, construct, enphase, phases,
// generate, state.  Every command prints a structured report (text by default,
// JSON with --json) and exits 0 on success/pass, 1 on a failed verdict, 2 on
// usage or input errors.
//
// Operator arguments are either paths to sparse-operator files or one of the
// built-in objects builtin:p9, builtin:p16, builtin:u36.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ame/ame.hpp>

namespace {

using ame::BipartiteOperator;
using ame::cxd;
using nlohmann::json;

// FNV-1a over the raw bytes of a file; builtins are identified by name.
std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ame::ParseError("cannot open '" + path + "'");
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= (unsigned char)c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", (unsigned long long)h);
    return buf;
}

bool is_builtin(const std::string& arg) { return arg.rfind("builtin:", 0) == 0; }

BipartiteOperator load_operator(const std::string& arg, json& rep) {
    rep["input"] = arg;
    if (is_builtin(arg)) {
        rep["input_digest"] = arg;
        const std::string name = arg.substr(8);
        if (name == "p9") return ame::p9().to_operator();
        if (name == "p16") {
            ame::OlsPair pair = ame::odls4();
            return ame::gate_from_ols(pair.K, pair.L).to_operator();
        }
        if (name == "u36") return ame::load_u36();
        throw ame::ParseError("unknown builtin '" + arg + "' (expected p9, p16 or u36)");
    }
    rep["input_digest"] = digest_file(arg);
    return ame::read_sparse_operator(arg);
}

ame::PermTuple load_perms(const std::string& arg) {
    if (arg == "builtin:n4") return ame::canonical_n4_tuple();
    if (is_builtin(arg)) throw ame::ParseError("unknown builtin '" + arg + "' (expected n4)");
    return ame::read_perm_tuple(arg);
}

json complex_json(cxd v) { return {{"re", v.real()}, {"im", v.imag()}}; }

json deficits_json(const ame::UnitarityReport& r) {
    return {{"u", r.deficit_u}, {"realign", r.deficit_r}, {"ptrans", r.deficit_g}};
}

std::string verdict_string(const ame::UnitarityReport& r) {
    if (!r.is_unitary) return "not unitary";
    if (r.is_two_unitary) return "2-unitary";
    if (r.is_dual) return "dual unitary";
    if (r.is_tdual) return "T-dual unitary";
    return "unitary";
}

// theta family: the diagonal row family for the golden operator, a single
// phased entry (lexicographically first nonzero) for everything else.
BipartiteOperator apply_theta(const BipartiteOperator& u, double theta, bool golden) {
    if (golden) {
        BipartiteOperator v = u;
        v.m = ame::u36_dtheta(theta).asDiagonal() * v.m;
        return v;
    }
    auto nz = u.nonzeros(1e-14);
    if (nz.empty()) throw ame::ParseError("operator has no nonzero entries");
    BipartiteOperator v = u;
    v.at(nz[0].i, nz[0].j, nz[0].k, nz[0].l) *= std::polar(1.0, theta);
    return v;
}

void print_text(const json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            print_text(v, prefix.empty() ? k : prefix + "." + k, os);
    } else if (j.is_array()) {
        int i = 0;
        for (const auto& v : j) print_text(v, prefix + "[" + std::to_string(i++) + "]", os);
    } else if (j.is_string()) {
        os << prefix << ": " << j.get<std::string>() << "\n";
    } else {
        os << prefix << ": " << j.dump() << "\n";
    }
}

struct AnglesLine {
    int i, j, k, l;
    double theta;
};

// Phase list file: one `i j k l theta` per line, indices 1-based, '#' comments.
std::vector<AnglesLine> read_angles(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ame::ParseError("cannot open '" + path + "'");
    std::vector<AnglesLine> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        AnglesLine a;
        if (!(ls >> a.i)) continue;  // blank
        if (!(ls >> a.j >> a.k >> a.l >> a.theta))
            throw ame::ParseError("expected 'i j k l theta' (line " + std::to_string(lineno) +
                                  ")");
        out.push_back(a);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ame: construct, verify and classify 2-unitary operators and AME states"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    app.add_flag("--json", as_json, "emit the report as JSON");

    std::string input, out_path, perms_arg = "builtin:n4", angles_path, squares_out;
    double tol = 1e-10, theta = 0.0;
    int order_k = 1, dim = 0, max_iter = 2000;
    std::uint64_t seed = 0;

    json rep;
    int verdict_code = 0;

    // verify -------------------------------------------------------------
    auto* sub_verify = app.add_subcommand("verify", "classify an operator (unitary / dual / T-dual / 2-unitary)");
    sub_verify->add_option("input", input, "operator file or builtin:{p9,p16,u36}")->required();
    sub_verify->add_option("--tol", tol, "deficit tolerance")->capture_default_str();
    sub_verify->callback([&] {
        BipartiteOperator u = load_operator(input, rep);
        ame::UnitarityReport r = ame::classify(u, tol);
        rep["d"] = u.d;
        rep["nonzeros"] = u.nonzeros(1e-14).size();
        rep["tol"] = tol;
        rep["deficits"] = deficits_json(r);
        rep["verdict"] = verdict_string(r);
        rep["pass"] = r.is_two_unitary;
        verdict_code = r.is_two_unitary ? 0 : 1;
    });

    // invariant ----------------------------------------------------------
    auto* sub_inv = app.add_subcommand("invariant", "permutation-indexed LU invariant of an operator");
    sub_inv->add_option("input", input, "operator file or builtin:{p9,p16,u36}")->required();
    auto* inv_theta = sub_inv->add_option("--theta", theta, "family parameter (phases the operator before contracting)");
    sub_inv->add_option("--perms", perms_arg, "permutation tuple file or builtin:n4")->capture_default_str();
    sub_inv->callback([&] {
        BipartiteOperator u = load_operator(input, rep);
        ame::PermTuple t = load_perms(perms_arg);
        rep["perms"] = perms_arg;
        rep["n"] = t.n;
        rep["latin_rectangle"] = ame::latin_rectangle_check(t);
        if (inv_theta->count()) {
            u = apply_theta(u, theta, input == "builtin:u36");
            rep["theta"] = theta;
        }
        rep["value"] = complex_json(ame::contract_invariant(u, t));
    });

    // moment -------------------------------------------------------------
    auto* sub_mom = app.add_subcommand("moment", "k-th moment of the four-party operator L");
    sub_mom->add_option("input", input, "operator file or builtin:{p9,p16,u36}")->required();
    sub_mom->add_option("-k,--order", order_k, "moment order (k >= 1)")->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub_mom->callback([&] {
        BipartiteOperator u = load_operator(input, rep);
        rep["order"] = order_k;
        rep["value"] = complex_json(ame::moment(u, order_k));
        rep["dual_law_reference"] = double(u.d) * double(u.d);
    });

    // reduce -------------------------------------------------------------
    auto* sub_red = app.add_subcommand("reduce", "factor a qutrit 2-unitary into locals around the canonical order-9 gate");
    sub_red->add_option("input", input, "operator file or builtin:p9")->required();
    sub_red->add_option("--seed", seed, "seed for the product-pair search")->capture_default_str();
    sub_red->add_option("--tol", tol, "residual threshold for the pass verdict")->capture_default_str();
    sub_red->callback([&] {
        BipartiteOperator u = load_operator(input, rep);
        rep["seed"] = seed;
        rep["tol"] = tol;
        try {
            ame::LuFactorization f = ame::reduce_to_p9(u, seed);
            rep["residual"] = f.residual;
            json stages = json::array();
            for (const ame::StageRecord& s : f.stage_log)
                stages.push_back({{"stage", s.stage}, {"deficit", s.deficit}});
            rep["stages"] = stages;
            const bool ok = f.residual < tol && ame::verify_factorization(u, f);
            rep["pass"] = ok;
            rep["verdict"] = ok ? "LU-equivalent to the order-9 gate" : "factorization residual too large";
            verdict_code = ok ? 0 : 1;
        } catch (const ame::NoProductPairError& ex) {
            rep["pass"] = false;
            rep["verdict"] = std::string("no fixed product pair: ") + ex.what();
            verdict_code = 1;
        } catch (const ame::ZeroPatternError& ex) {
            rep["pass"] = false;
            rep["verdict"] = std::string("zero-pattern stage failed: ") + ex.what();
            verdict_code = 1;
        }
    });

    // construct ----------------------------------------------------------
    auto* sub_con = app.add_subcommand("construct", "build the 2-unitary permutation gate from an orthogonal-diagonal Latin pair");
    sub_con->add_option("-d,--dim", dim, "local dimension (not 2, 3 or 6)")->required();
    sub_con->add_option("--out", out_path, "write the operator to this file");
    sub_con->add_option("--squares-out", squares_out, "write the Latin pair to this file");
    sub_con->add_option("--tol", tol, "deficit tolerance for the verdict")->capture_default_str();
    sub_con->callback([&] {
        ame::OlsPair pair = ame::construct_odls(dim);  // domain_error -> usage error
        BipartiteOperator u = ame::gate_from_ols(pair.K, pair.L).to_operator();
        rep["d"] = dim;
        rep["diagonal"] = pair.diagonal_flag;
        ame::UnitarityReport r = ame::classify(u, tol);
        rep["tol"] = tol;
        rep["deficits"] = deficits_json(r);
        rep["verdict"] = verdict_string(r);
        rep["pass"] = r.is_two_unitary;
        if (!out_path.empty()) {
            ame::write_sparse_operator(out_path, u);
            rep["out"] = out_path;
        }
        if (!squares_out.empty()) {
            std::ofstream os(squares_out);
            if (!os) throw ame::ParseError("cannot open '" + squares_out + "'");
            ame::write_latin_squares(os, {pair.K, pair.L});
            rep["squares_out"] = squares_out;
        }
        verdict_code = r.is_two_unitary ? 0 : 1;
    });

    // enphase ------------------------------------------------------------
    auto* sub_enp = app.add_subcommand("enphase", "multiply selected nonzero entries by unit phases");
    sub_enp->add_option("input", input, "operator file or builtin:{p9,p16,u36}")->required();
    auto* enp_theta = sub_enp->add_option("--theta", theta, "single-parameter family (see invariant --theta)");
    sub_enp->add_option("--angles", angles_path, "phase list file: lines 'i j k l theta', 1-based");
    sub_enp->add_option("--out", out_path, "write the enphased operator to this file");
    sub_enp->add_option("--tol", tol, "deficit tolerance for the reported classification")->capture_default_str();
    sub_enp->callback([&] {
        BipartiteOperator u = load_operator(input, rep);
        rep["before"] = {{"verdict", verdict_string(ame::classify(u, tol))}};
        if (enp_theta->count()) {
            u = apply_theta(u, theta, input == "builtin:u36");
            rep["theta"] = theta;
        }
        if (!angles_path.empty()) {
            int applied = 0;
            for (const AnglesLine& a : read_angles(angles_path)) {
                if (a.i < 1 || a.i > u.d || a.j < 1 || a.j > u.d || a.k < 1 || a.k > u.d ||
                    a.l < 1 || a.l > u.d)
                    throw ame::ParseError("phase cell outside 1.." + std::to_string(u.d));
                cxd& e = u.at(a.i - 1, a.j - 1, a.k - 1, a.l - 1);
                if (std::abs(e) <= 1e-14)
                    throw ame::ParseError("phase targets a zero entry at (" +
                                          std::to_string(a.i) + "," + std::to_string(a.j) +
                                          "," + std::to_string(a.k) + "," +
                                          std::to_string(a.l) + ")");
                e *= std::polar(1.0, a.theta);
                ++applied;
            }
            rep["angles"] = angles_path;
            rep["applied"] = applied;
        }
        rep["after"] = {{"verdict", verdict_string(ame::classify(u, tol))}};
        if (!out_path.empty()) {
            ame::write_sparse_operator(out_path, u);
            rep["out"] = out_path;
        }
    });

    // phases -------------------------------------------------------------
    auto* sub_ph = app.add_subcommand("phases", "phase-difference system of a support pattern: equations, exact rank, kernel");
    sub_ph->add_option("input", input, "operator file or builtin:{p9,p16,u36}")->required();
    sub_ph->callback([&] {
        BipartiteOperator u = load_operator(input, rep);
        ame::PhaseSystem sys = ame::build_phase_system(u);
        rep["support"] = sys.support.size();
        rep["equations"] = {{"total", sys.rows.size()},
                            {"u", sys.equations_for('U')},
                            {"ptrans", sys.equations_for('G')},
                            {"realign", sys.equations_for('R')}};
        const int rank = ame::exact_rank(sys);
        rep["rank"] = rank;
        rep["nullity"] = (int)sys.support.size() - rank;
        rep["kernel_basis_vectors"] = ame::nullspace_basis(sys).size();
    });

    // generate -----------------------------------------------------------
    auto* sub_gen = app.add_subcommand("generate", "seeded alternating-projection search for a 2-unitary");
    sub_gen->add_option("-d,--dim", dim, "local dimension")->required();
    sub_gen->add_option("--seed", seed, "random seed")->capture_default_str();
    sub_gen->add_option("--max-iter", max_iter, "iteration budget")->capture_default_str();
    sub_gen->add_option("--tol", tol, "convergence tolerance on the worst deficit")->capture_default_str();
    sub_gen->add_option("--out", out_path, "write the final operator to this file");
    sub_gen->callback([&] {
        ame::SearchOptions opt;
        opt.max_iter = max_iter;
        opt.tol = tol;
        ame::SearchResult r = ame::search_two_unitary(dim, seed, opt);
        rep["d"] = dim;
        rep["seed"] = seed;
        rep["max_iter"] = max_iter;
        rep["tol"] = tol;
        rep["iterations"] = r.iterations;
        rep["restarts"] = r.restarts;
        if (!r.deficits.empty()) {
            const ame::DeficitTriple& t = r.deficits.back();
            rep["deficits"] = {{"u", t.u}, {"realign", t.r}, {"ptrans", t.g}};
        }
        rep["pass"] = r.converged;
        rep["verdict"] = r.converged ? "converged to a 2-unitary" : "did not converge";
        if (!out_path.empty()) {
            ame::write_sparse_operator(out_path, r.U);
            rep["out"] = out_path;
        }
        verdict_code = r.converged ? 0 : 1;
    });

    // state --------------------------------------------------------------
    auto* sub_st = app.add_subcommand("state", "vectorize an operator and test all bipartition marginals");
    sub_st->add_option("input", input, "operator file or builtin:{p9,p16,u36}")->required();
    sub_st->add_option("--tol", tol, "flatness tolerance for the AME verdict")->capture_default_str();
    sub_st->callback([&] {
        BipartiteOperator u = load_operator(input, rep);
        ame::StateVector psi = ame::vectorize(u);
        rep["d"] = u.d;
        rep["norm"] = psi.norm();
        rep["tol"] = tol;
        const double flat = 1.0 / (double(u.d) * double(u.d));
        bool ame_state = true;
        const std::pair<ame::Bipartition, const char*> parts[] = {
            {ame::Bipartition::AB_CD, "AB|CD"},
            {ame::Bipartition::AC_BD, "AC|BD"},
            {ame::Bipartition::AD_BC, "AD|BC"}};
        for (const auto& [bp, name] : parts) {
            const std::vector<double> ev = ame::marginal_spectrum(psi, bp);
            double dev = 0.0;
            for (double e : ev) dev = std::max(dev, std::abs(e - flat));
            rep["marginals"][name] = {{"min", ev.back()}, {"max", ev.front()},
                                      {"flatness_deviation", dev}};
            ame_state = ame_state && dev < tol;
        }
        rep["pass"] = ame_state;
        rep["verdict"] = ame_state ? "absolutely maximally entangled" : "not AME";
        verdict_code = ame_state ? 0 : 1;
    });

    // ---------------------------------------------------------------------
    const auto t0 = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ame::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    rep["command"] = app.get_subcommands().front()->get_name();
    rep["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (as_json) {
        std::cout << rep.dump(2) << "\n";
    } else {
        print_text(rep, "", std::cout);
    }
    return verdict_code;
}
