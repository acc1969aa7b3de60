// Acceptance harness: one numbered pass/fail line per criterion.
//
// Each criterion is self-contained, timed, and judged against the pinned
// tolerance and runtime budget.  Exit status is 0 iff every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <ame/ame.hpp>

namespace {

using ame::BipartiteOperator;
using ame::cxd;
using ame::Mat;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
    void info(const std::string& what) { notes.push_back(what); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Mat random_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Mat m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = cxd(g(rng), g(rng));
    return m;
}

BipartiteOperator swap_operator(int d) {
    BipartiteOperator s(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s.at(i, j, j, i) = 1.0;
    return s;
}

// Order-16 permutation gate from the diagonal d=4 pair, with one entry
// (domain cell (0,0)) carrying the phase e^{i theta}.
BipartiteOperator p16_enphased(double theta) {
    ame::OlsPair pair = ame::odls4();
    ame::PermutationGate g = ame::gate_from_ols(pair.K, pair.L);
    return ame::enphase(g, {{{0, 0}, std::polar(1.0, theta)}});
}

BipartiteOperator dress_local(const BipartiteOperator& u, std::uint64_t seed) {
    const int d = u.d;
    Mat a = ame::random_unitary(d, seed * 4 + 1);
    Mat b = ame::random_unitary(d, seed * 4 + 2);
    Mat c = ame::random_unitary(d, seed * 4 + 3);
    Mat e = ame::random_unitary(d, seed * 4 + 4);
    return {d, ame::kron(a, b) * u.m * ame::kron(c, e)};
}

// ---- criteria ----

// 1. P9: 2-unitary to 1e-12, nine state amplitudes 1/3, flat marginals 1/9.
Outcome criterion1() {
    Outcome out;
    BipartiteOperator p = ame::p9().to_operator();
    ame::UnitarityReport rep = ame::classify(p, 1e-12);
    out.require(rep.deficit_u < 1e-12, "U deficit " + fmt(rep.deficit_u));
    out.require(rep.deficit_r < 1e-12, "R deficit " + fmt(rep.deficit_r));
    out.require(rep.deficit_g < 1e-12, "Gamma deficit " + fmt(rep.deficit_g));

    ame::StateVector psi = ame::vectorize(p);
    int support = 0;
    double amp_err = 0.0;
    for (int t = 0; t < psi.amps.size(); ++t) {
        const double a = std::abs(psi.amps(t));
        if (a > 1e-14) {
            ++support;
            amp_err = std::max(amp_err, std::abs(psi.amps(t) - cxd(1.0 / 3.0)));
        }
    }
    out.require(support == 9, "state support " + std::to_string(support) + " != 9");
    out.require(amp_err < 1e-12, "amplitude deviation from 1/3: " + fmt(amp_err));

    for (ame::Bipartition bp :
         {ame::Bipartition::AB_CD, ame::Bipartition::AC_BD, ame::Bipartition::AD_BC}) {
        for (double ev : ame::marginal_spectrum(psi, bp))
            out.require(std::abs(ev - 1.0 / 9.0) < 1e-12,
                        "marginal eigenvalue " + fmt(ev) + " != 1/9");
    }
    return out;
}

// 2. Invariant of the enphased order-16 gate equals 8(29+3cos t).
Outcome criterion2() {
    Outcome out;
    ame::PermTuple tup = ame::canonical_n4_tuple();
    for (double theta : {0.0, ame::pi / 2.0, ame::pi, 1.0}) {
        BipartiteOperator p = p16_enphased(theta);
        const cxd val = ame::contract_invariant(p, tup);
        const double want = 8.0 * (29.0 + 3.0 * std::cos(theta));
        out.require(std::abs(val - cxd(want)) <= 1e-8 * std::abs(want),
                    "invariant(theta=" + fmt(theta) + ") = " + fmt(val.real()) +
                        " expected " + fmt(want));
        const cxd m2 = ame::moment(p, 2);
        out.require(std::abs(val - m2) <= 1e-8 * std::max(1.0, std::abs(m2)),
                    "invariant vs moment(.,2) mismatch at theta=" + fmt(theta) + ": " +
                        fmt(std::abs(val - m2)));
    }
    return out;
}

// 3. Golden order-36 operator: 112 nonzeros, 2-unitary, invariant C0 + 6cos t.
Outcome criterion3() {
    Outcome out;
    BipartiteOperator u;
    try {
        u = ame::load_u36();
    } catch (const std::exception& ex) {
        out.require(false, std::string("load_u36: ") + ex.what());
        return out;
    }
    out.require(u.nonzeros(1e-14).size() == 112, "nonzero count != 112");
    ame::UnitarityReport rep = ame::classify(u, 1e-10);
    const double worst = std::max({rep.deficit_u, rep.deficit_r, rep.deficit_g});
    out.require(worst < 1e-10, "max deficit " + fmt(worst));

    const double c0 =
        3.0 * (202.0 + std::sqrt(5.0) + 2.0 * std::sqrt(5.0 - 2.0 * std::sqrt(5.0))) / 4.0;
    ame::PermTuple tup = ame::canonical_n4_tuple();
    for (double theta : {0.0, ame::pi / 2.0, ame::pi}) {
        const cxd val = ame::contract_invariant(ame::u36_theta(theta), tup);
        const double want = c0 + 6.0 * std::cos(theta);
        out.require(std::abs(val - cxd(want)) <= 1e-6 * std::abs(want),
                    "invariant(theta=" + fmt(theta) + ") = " + fmt(val.real()) +
                        " expected " + fmt(want));
    }
    return out;
}

// 4. Phase system of the golden operator: (75, 87, 84) equations, exact rank
// 87, nullity 25, and random kernel points stay 2-unitary.
Outcome criterion4() {
    Outcome out;
    BipartiteOperator u;
    try {
        u = ame::load_u36();
    } catch (const std::exception& ex) {
        out.require(false, std::string("load_u36: ") + ex.what());
        return out;
    }
    ame::PhaseSystem sys = ame::build_phase_system(u);
    out.require((int)sys.rows.size() == 246,
                "equation count " + std::to_string(sys.rows.size()) + " != 246");
    const int nu = sys.equations_for('U'), ng = sys.equations_for('G'),
              nr = sys.equations_for('R');
    out.require(nu == 75, "U-frame equations " + std::to_string(nu) + " != 75");
    out.require(ng == 87, "Gamma-frame equations " + std::to_string(ng) + " != 87");
    out.require(nr == 84, "R-frame equations " + std::to_string(nr) + " != 84");
    const int rank = ame::exact_rank(sys);
    out.require(rank == 87, "exact rank " + std::to_string(rank) + " != 87");
    auto basis = ame::nullspace_basis(sys);
    out.require((int)sys.support.size() - rank == 25, "nullity != 25");
    out.require((int)basis.size() == 25,
                "kernel basis size " + std::to_string(basis.size()) + " != 25");
    if (!out.pass) return out;

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ang(-ame::pi, ame::pi);
    for (int pt = 0; pt < 5; ++pt) {
        std::vector<double> coeffs(basis.size());
        for (double& c : coeffs) c = ang(rng);
        BipartiteOperator v = ame::enphase_solution(u, coeffs);
        ame::UnitarityReport rep = ame::classify(v, 1e-10);
        out.require(rep.is_two_unitary,
                    "family point " + std::to_string(pt) + " max deficit " +
                        fmt(std::max({rep.deficit_u, rep.deficit_r, rep.deficit_g})));
    }
    return out;
}

// 5. Reduction pipeline on dressed copies of P9 and on converged d=3 searches.
Outcome criterion5() {
    Outcome out;
    BipartiteOperator p = ame::p9().to_operator();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        BipartiteOperator u = dress_local(p, 7000 + seed);
        try {
            ame::LuFactorization f = ame::reduce_to_p9(u, seed);
            out.require(f.residual < 1e-8,
                        "dressing " + std::to_string(seed) + " residual " + fmt(f.residual));
            out.require(ame::verify_factorization(u, f),
                        "dressing " + std::to_string(seed) + " factor check failed");
        } catch (const std::exception& ex) {
            out.require(false, "dressing " + std::to_string(seed) + ": " + ex.what());
        }
    }
    int converged = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ame::SearchResult r = ame::search_two_unitary(3, seed);
        if (!r.converged) continue;
        ++converged;
        try {
            ame::LuFactorization f = ame::reduce_to_p9(r.U, seed);
            out.require(f.residual < 1e-8,
                        "search seed " + std::to_string(seed) + " residual " + fmt(f.residual));
            out.require(ame::verify_factorization(r.U, f),
                        "search seed " + std::to_string(seed) + " factor check failed");
        } catch (const std::exception& ex) {
            out.require(false, "search seed " + std::to_string(seed) + ": " + ex.what());
        }
    }
    out.require(converged > 0, "no qutrit search converged");
    out.info("qutrit searches converged: " + std::to_string(converged) + "/20");
    return out;
}

// 6. First moment law: d^2 on dual-family operators, Tr (RR+)^2 in general.
Outcome criterion6() {
    Outcome out;
    auto check_d2 = [&](const BipartiteOperator& u, const std::string& name) {
        const double want = double(u.d) * double(u.d);
        const cxd m1 = ame::moment(u, 1);
        out.require(std::abs(m1 - cxd(want)) < 1e-9,
                    name + ": moment 1 = " + fmt(m1.real()) + " expected " + fmt(want));
    };
    check_d2(swap_operator(2), "swap d=2");
    check_d2(swap_operator(3), "swap d=3");
    check_d2(ame::p9().to_operator(), "order-9 gate");
    check_d2(p16_enphased(0.0), "order-16 gate");
    try {
        check_d2(ame::load_u36(), "order-36 golden");
    } catch (const std::exception& ex) {
        out.require(false, std::string("load_u36: ") + ex.what());
    }

    for (int t = 0; t < 10; ++t) {
        const int d = 2 + t % 2;
        BipartiteOperator u(d, ame::random_unitary(d * d, 9000 + t));
        const cxd m1 = ame::moment(u, 1);
        const Mat rr = ame::realign(u).m;
        const Mat h = rr * rr.adjoint();
        const double want = h.squaredNorm();  // Tr (RR+)^2, H Hermitian
        out.require(std::abs(m1 - cxd(want)) <= 1e-8 * std::max(1.0, want),
                    "random " + std::to_string(t) + ": moment 1 = " + fmt(m1.real()) +
                        " expected " + fmt(want));
    }
    return out;
}

// 7. ODLS multisets for d=4 and the class-separation witness.
Outcome criterion7() {
    Outcome out;
    ame::OlsPair pair = ame::odls4();
    ame::OdlsMultisets ms = ame::multisets_from_odls(pair);

    const std::map<std::array<int, 4>, int> x_want = {
        {{1, 1, 1, 2}, 1}, {{2, 2, 2, 1}, 1}, {{3, 3, 3, 4}, 1}, {{4, 4, 4, 3}, 1}};
    const std::map<std::array<int, 4>, int> y_want = {
        {{1, 4, 2, 4}, 1}, {{2, 3, 1, 3}, 1}, {{3, 2, 4, 2}, 1}, {{4, 1, 3, 1}, 1}};
    out.require(ms.X.counts == x_want, "multiset X mismatch");
    out.require(ms.Y.counts == y_want, "multiset Y mismatch");
    for (const ame::MultiSubset* s : {&ms.X, &ms.Y})
        for (int comp = 0; comp < 4; ++comp)
            for (int f : s->marginal(comp))
                out.require(f == 1, "counting function value " + std::to_string(f) + " != 1");

    const cxd v0 = ame::odls_invariant(p16_enphased(0.0), pair);
    const cxd vpi = ame::odls_invariant(p16_enphased(ame::pi), pair);
    out.require(std::abs(v0 - vpi) > 1e-6,
                "no separation: |" + fmt(v0.real()) + " - " + fmt(vpi.real()) + "| <= 1e-6");
    out.info("witness values " + fmt(v0.real()) + " vs " + fmt(vpi.real()));
    return out;
}

// 8. Negative controls: unsupported ODLS orders, and no qubit 2-unitary.
Outcome criterion8() {
    Outcome out;
    for (int d : {2, 3, 6}) {
        bool threw = false;
        try {
            ame::construct_odls(d);
        } catch (const std::domain_error&) {
            threw = true;
        }
        out.require(threw, "construct_odls(" + std::to_string(d) + ") did not reject");
    }
    double floor = 1e300;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        ame::SearchOptions opt;
        opt.max_iter = 2000;
        ame::SearchResult r = ame::search_two_unitary(2, seed, opt);
        for (const ame::DeficitTriple& t : r.deficits) floor = std::min(floor, t.max());
        out.require(!r.converged, "qubit search converged at seed " + std::to_string(seed));
    }
    out.require(floor >= 0.1, "qubit deficit floor " + fmt(floor) + " < 0.1");
    out.info("qubit deficit floor over 100 seeds: " + fmt(floor));
    return out;
}

// 9. Sparse contraction vs dense oracle, and local-unitary invariance.
Outcome criterion9() {
    Outcome out;
    std::mt19937_64 rng(31);
    auto random_perm = [&](int n) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    };
    for (int t = 0; t < 10; ++t) {
        const int n = 2 + t % 3;
        ame::PermTuple tup{n, random_perm(n), random_perm(n), random_perm(n), random_perm(n)};
        BipartiteOperator a(2, random_matrix(4, 500 + t));
        const cxd sparse = ame::contract_invariant(a, tup);
        const cxd dense = ame::contract_invariant_dense(a, tup);
        out.require(std::abs(sparse - dense) <= 1e-10 * std::max(1.0, std::abs(dense)),
                    "case " + std::to_string(t) + " (n=" + std::to_string(n) +
                        "): sparse/dense gap " + fmt(std::abs(sparse - dense)));
    }
    ame::PermTuple tup = ame::canonical_n4_tuple();
    for (int t = 0; t < 10; ++t) {
        BipartiteOperator a(2, random_matrix(4, 600 + t));
        const cxd base = ame::contract_invariant(a, tup);
        const cxd dressed = ame::contract_invariant(dress_local(a, 700 + t), tup);
        out.require(std::abs(base - dressed) <= 1e-8 * std::max(1.0, std::abs(base)),
                    "dressing case " + std::to_string(t) + ": gap " +
                        fmt(std::abs(base - dressed)));
    }
    return out;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        Outcome (*run)();
        double budget;  // seconds
    };
    const Entry entries[] = {
        {1, "canonical order-9 gate and its state", criterion1, 1.0},
        {2, "closed-form invariant of the enphased order-16 gate", criterion2, 5.0},
        {3, "golden order-36 operator and its theta family", criterion3, 60.0},
        {4, "phase-difference system rank and kernel family", criterion4, 30.0},
        {5, "reduction pipeline on dressed and searched inputs", criterion5, 120.0},
        {6, "first moment law", criterion6, 60.0},
        {7, "diagonal-pair multisets and separation witness", criterion7, 10.0},
        {8, "negative controls", criterion8, 120.0},
        {9, "sparse/dense contraction agreement and LU invariance", criterion9, 60.0},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = e.run();
        } catch (const std::exception& ex) {
            out.pass = false;
            out.notes.push_back(std::string("unexpected exception: ") + ex.what());
        }
        const double dt = seconds_since(t0);
        if (dt > e.budget) {
            out.pass = false;
            out.notes.push_back("runtime " + fmt(dt) + " s exceeds budget " + fmt(e.budget) +
                                " s");
        }
        if (!out.pass) ++failures;
        std::printf("criterion %d: %-55s %s  (%.2f s)\n", e.id, e.name,
                    out.pass ? "PASS" : "FAIL", dt);
        for (const std::string& n : out.notes) std::printf("    - %s\n", n.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
