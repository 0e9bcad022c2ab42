// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via ctest (target `acceptance`) or directly from the build
// tree.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rabi/analytic.hpp"
#include "rabi/errors.hpp"
#include "rabi/exact.hpp"
#include "rabi/sweep.hpp"

using namespace rabi;

namespace {

int failures = 0;

void report(int id, const std::string& desc, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id,
                desc.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

double overlap2(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        dot += a[i] * b[i];
    return dot * dot;
}

const std::vector<double> kGridOmega = {0.5, 1.0, 1.5};
std::vector<double> grid_g() {
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i) g.push_back(0.05 * i);
    return g;
}

// --- criterion 1: Bloch-Siegert shift at the circuit-QED point -------------

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const ModelParams p{8.13, 4.25, 0.813};
    const double bs_an = bloch_siegert_shift(p);
    const ExactSpectrum ex = exact_spectrum(p, 2, -1.0, false);
    const JCReference jc = jc_energies(p, 1);
    const double bs_ex = (ex.eigenvalues[1] - ex.eigenvalues[0]) -
                         (jc.doublets[0].first - jc.ground_energy);
    const double elapsed = seconds_since(t0);

    const bool ok_an = std::abs(bs_an - 0.050) <= 0.005;
    const bool ok_ex = std::abs(bs_ex - bs_an) <= 0.10 * std::abs(bs_an);
    const bool ok_time = elapsed < 1.0;
    report(1, "Bloch-Siegert shift 50 MHz at g = 0.1 omega",
           ok_an && ok_ex && ok_time,
           "analytic " + fmt(bs_an * 1e3) + " MHz, exact " + fmt(bs_ex * 1e3) +
               " MHz, " + fmt(elapsed) + " s");
}

// --- criterion 2: decoupled-limit exactness ---------------------------------

void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double Omega : kGridOmega) {
        const ModelParams p{1.0, Omega, 0.0};
        std::vector<double> expected = {-0.5 * Omega};
        for (int n = 0; n < 12; ++n) {
            expected.push_back(n + 0.5 * Omega);
            expected.push_back(n + 1.0 - 0.5 * Omega);
        }
        std::sort(expected.begin(), expected.end());

        const AnalyticSpectrum an = analytic_spectrum(p, 8);
        const ExactSpectrum ex = exact_spectrum(p, 10, -1.0, false);
        for (int k = 0; k < 10; ++k) {
            worst = std::max(worst, std::abs(an.sorted_energies[k] - expected[k]));
            worst = std::max(worst, std::abs(ex.eigenvalues[k] - expected[k]));
        }
    }
    const double elapsed = seconds_since(t0);
    report(2, "decoupled limit exact to 1e-12", worst <= 1e-12 && elapsed < 1.0,
           "max deviation " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

// --- criterion 3: zero-resonance exactness ----------------------------------

void criterion3() {
    double worst = 0.0;
    for (double g : {0.1, 0.3, 0.5}) {
        const ModelParams p{1.0, 0.0, g};
        const double eg = ground_energy(p, lambda_root(p));
        const ExactSpectrum ex = exact_spectrum(p, 1, -1.0, false);
        worst = std::max(worst, std::abs(eg - (-g * g)));
        worst = std::max(worst, std::abs(ex.eigenvalues[0] - (-g * g)));
    }
    report(3, "Omega = 0 ground energy equals -g^2/omega", worst <= 1e-9,
           "max deviation " + fmt(worst));
}

// --- criterion 4: figure 1/2 agreement envelope -----------------------------

void criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_loose = 0.0, worst_tight = 0.0;
    bool ok = true;
    for (double Omega : kGridOmega) {
        for (double g : grid_g()) {
            const ModelParams p{1.0, Omega, g};
            const AnalyticSpectrum an = analytic_spectrum(p, 6);
            const ExactSpectrum ex = exact_spectrum(p, 6, -1.0, false);
            double err = 0.0;
            for (int k = 0; k < 6; ++k)
                err = std::max(err,
                               std::abs(an.sorted_energies[k] - ex.eigenvalues[k]));
            const double bound = g <= 0.2 + 1e-12 ? 0.02 : 0.1;
            if (err > bound) ok = false;
            if (g <= 0.2 + 1e-12)
                worst_tight = std::max(worst_tight, err);
            else
                worst_loose = std::max(worst_loose, err);
        }
    }
    const double elapsed = seconds_since(t0);
    report(4, "rank-matched lowest-6 envelope (0.02/0.1 omega)",
           ok && elapsed < 30.0,
           "max err " + fmt(worst_tight) + " (g<=0.2), " + fmt(worst_loose) +
               " (g<=0.5), " + fmt(elapsed) + " s");
}

// --- criterion 5: figure 4 mean photon numbers ------------------------------

void criterion5() {
    const SweepSpec spec = preset("fig4");
    const SweepTable t = run_sweep(spec);
    const auto col = [&t](const std::string& name) {
        return static_cast<std::size_t>(
            std::find(t.columns.begin(), t.columns.end(), name) -
            t.columns.begin());
    };
    double worst = 0.0, worst_ground = 0.0;
    for (const auto& row : t.rows) {
        for (int k = 0; k < 5; ++k)
            worst = std::max(worst, row[col("err_nph_" + std::to_string(k))]);
        const ModelParams p{row[col("omega")], row[col("Omega")], row[col("g")]};
        const LambdaSolution lam = lambda_closed_form(p);
        worst_ground =
            std::max(worst_ground, std::abs(row[col("nph_analytic_0")] -
                                            lam.lambda * lam.lambda));
    }
    report(5, "mean photon numbers within 0.05 of the oracle",
           worst <= 0.05 && worst_ground == 0.0,
           "max err " + fmt(worst) + ", ground defect " + fmt(worst_ground));
}

// --- criterion 6: oracle integrity -------------------------------------------

void criterion6() {
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_int_distribution<int> dim_dist(2, 200);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);

    double worst_res = 0.0, worst_orth = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int dim = dim_dist(rng);
        DenseSymMatrix h(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j <= i; ++j) h.set(i, j, entry(rng));
        const ExactSpectrum s = eigen_decompose(h, true);
        const double hnorm = h.frobenius_norm();
        for (int k = 0; k < dim; ++k) {
            const auto hv = h.apply(s.eigenvectors[k]);
            double acc = 0.0;
            for (int i = 0; i < dim; ++i) {
                const double r = hv[i] - s.eigenvalues[k] * s.eigenvectors[k][i];
                acc += r * r;
            }
            worst_res = std::max(worst_res, std::sqrt(acc) / hnorm);
        }
        for (int a = 0; a < dim; ++a)
            for (int b = a; b < dim; ++b) {
                double dot = 0.0;
                for (int i = 0; i < dim; ++i)
                    dot += s.eigenvectors[a][i] * s.eigenvectors[b][i];
                worst_orth =
                    std::max(worst_orth, std::abs(dot - (a == b ? 1.0 : 0.0)));
            }
    }

    double worst_defect = 0.0;
    for (double Omega : kGridOmega)
        for (double g : grid_g()) {
            const ModelParams p{1.0, Omega, g};
            const auto e60 = eigen_decompose(build_hamiltonian(p, 60), false);
            const auto e120 = eigen_decompose(build_hamiltonian(p, 120), false);
            for (int k = 0; k < 10; ++k)
                worst_defect = std::max(
                    worst_defect, std::abs(e60.eigenvalues[k] - e120.eigenvalues[k]));
        }

    report(6, "eigensolver contract and truncation stability",
           worst_res <= 1e-10 && worst_orth <= 1e-10 && worst_defect < 1e-10,
           "residual " + fmt(worst_res) + ", orthonormality " + fmt(worst_orth) +
               ", doubling defect " + fmt(worst_defect));
}

// --- criterion 7: parity conservation ----------------------------------------

void criterion7() {
    double worst = 1.0;
    for (double Omega : kGridOmega)
        for (double g : grid_g()) {
            const ModelParams p{1.0, Omega, g};
            const ExactSpectrum s = exact_spectrum(p, 10);
            for (std::size_t k = 0; k < s.eigenvectors.size(); ++k) {
                const bool degenerate =
                    (k > 0 &&
                     std::abs(s.eigenvalues[k] - s.eigenvalues[k - 1]) < 1e-9) ||
                    (k + 1 < s.eigenvalues.size() &&
                     std::abs(s.eigenvalues[k + 1] - s.eigenvalues[k]) < 1e-9);
                if (degenerate) continue;
                worst = std::min(worst,
                                 std::abs(parity_expectation(s.eigenvectors[k])));
            }
        }
    report(7, "parity |<Pi>| >= 1 - 1e-8 for every eigenvector",
           worst >= 1.0 - 1e-8, "min |<Pi>| - 1 = " + fmt(worst - 1.0));
}

// --- criterion 8: wavefunction fidelity --------------------------------------

void criterion8() {
    const ModelParams p{1.0, 1.0, 0.1};
    const ExactSpectrum ex = exact_spectrum(p, 3);
    const LambdaSolution lam = lambda_closed_form(p);
    const double f0 =
        overlap2(ground_state(p, lam, ex.n_max).amplitudes, ex.eigenvectors[0]);
    const double f1 =
        overlap2(excited_state(p, lam, 1, ex.n_max).amplitudes, ex.eigenvectors[1]);
    const double f2 =
        overlap2(excited_state(p, lam, 2, ex.n_max).amplitudes, ex.eigenvectors[2]);
    report(8, "state fidelities (ground 0.999, excited 0.99)",
           f0 >= 0.999 && f1 >= 0.99 && f2 >= 0.99,
           "F0 " + fmt(f0) + ", F1 " + fmt(f1) + ", F2 " + fmt(f2));
}

// --- criterion 9: lambda solver ------------------------------------------------

void criterion9() {
    double worst_res = 0.0, worst_rel = 0.0, worst_weak = 0.0;
    for (double Omega : {0.1, 0.5, 1.0, 1.5, 2.0})
        for (double g : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
            const ModelParams p{1.0, Omega, g};
            const LambdaSolution root = lambda_root(p);
            worst_res = std::max(worst_res, std::abs(root.residual));
            const double cf = lambda_closed_form(p).lambda;
            worst_rel =
                std::max(worst_rel, std::abs(cf - root.lambda) / std::abs(root.lambda));
        }
    for (double Omega : {0.5, 1.0, 2.0}) {
        const ModelParams p{1.0, Omega, 1e-4};
        const double limit = -p.g / (p.omega + p.Omega_r);
        worst_weak = std::max(worst_weak,
                              std::abs(lambda_root(p).lambda / limit - 1.0));
    }
    report(9, "lambda solver residual, closed-form agreement, weak limit",
           worst_res <= 1e-12 && worst_rel <= 0.05 && worst_weak <= 1e-3,
           "residual " + fmt(worst_res) + ", rel " + fmt(worst_rel) + ", weak " +
               fmt(worst_weak));
}

// --- criterion 10: CLI determinism and JSON round trip -------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion10() {
    const std::string cli = RABI_CLI_PATH;
    bool ok = true;
    std::string detail;

    auto run_preset = [&cli](const std::string& args, const std::string& out) {
        const std::string cmd =
            "'" + cli + "' " + args + " --out " + out + " 2>/dev/null";
        return std::system(cmd.c_str()) == 0;
    };

    if (!run_preset("preset fig1a", "acc_fig1a_1.csv") ||
        !run_preset("preset fig1a", "acc_fig1a_2.csv")) {
        ok = false;
        detail = "CLI invocation failed";
    } else {
        const std::string a = slurp("acc_fig1a_1.csv");
        const std::string b = slurp("acc_fig1a_2.csv");
        if (a.empty() || a != b) {
            ok = false;
            detail = "fig1a CSV runs differ";
        }
    }
    if (ok && (!run_preset("preset fig4 --format json", "acc_fig4_1.json") ||
               !run_preset("preset fig4 --format json", "acc_fig4_2.json"))) {
        ok = false;
        detail = "CLI invocation failed";
    }
    if (ok) {
        const std::string a = slurp("acc_fig4_1.json");
        const std::string b = slurp("acc_fig4_2.json");
        if (a.empty() || a != b) {
            ok = false;
            detail = "fig4 JSON runs differ";
        } else {
            const SweepTable parsed = from_json(a);
            if (to_json(parsed) != a) {
                ok = false;
                detail = "JSON round trip not exact";
            }
        }
    }
    for (const char* f :
         {"acc_fig1a_1.csv", "acc_fig1a_2.csv", "acc_fig4_1.json", "acc_fig4_2.json"})
        std::remove(f);
    report(10, "CLI byte determinism and JSON round trip", ok, detail);
}

}  // namespace

int main() {
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
        criterion9();
        criterion10();
    } catch (const std::exception& e) {
        std::printf("FAIL suite aborted: %s\n", e.what());
        return 99;
    }
    return failures;
}
