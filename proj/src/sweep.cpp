#include "rabi/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rabi/errors.hpp"
#include "rabi/exact.hpp"
#include "rabi/version.hpp"

namespace rabi {

namespace {

std::string fmt_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string methods_name(Methods m) {
    switch (m) {
        case Methods::analytic: return "analytic";
        case Methods::exact: return "exact";
        default: return "both";
    }
}

std::string observables_name(const ObservableSet& o) {
    std::string s;
    auto append = [&s](const char* name) {
        if (!s.empty()) s += ',';
        s += name;
    };
    if (o.energy) append("energy");
    if (o.mean_photon) append("mean_photon");
    if (o.bs_shift) append("bs_shift");
    if (o.theta) append("theta");
    if (o.lambda) append("lambda");
    return s;
}

bool want_analytic(Methods m) { return m != Methods::exact; }
bool want_exact(Methods m) { return m != Methods::analytic; }

std::vector<std::string> build_columns(const SweepSpec& spec) {
    std::vector<std::string> cols = {"omega", "Omega", "g"};
    const bool an = want_analytic(spec.methods);
    const bool ex = want_exact(spec.methods);
    if (spec.observables.lambda) {
        cols.push_back("lambda");
        cols.push_back("lambda_residual");
    }
    if (spec.observables.energy) {
        for (int k = 0; k < spec.levels; ++k) {
            const std::string s = std::to_string(k);
            if (an) cols.push_back("E_analytic_" + s);
            if (ex) cols.push_back("E_exact_" + s);
            if (an && ex) cols.push_back("err_E_" + s);
        }
    }
    if (spec.observables.mean_photon) {
        for (int k = 0; k < spec.levels; ++k) {
            const std::string s = std::to_string(k);
            if (an) {
                cols.push_back("nph_analytic_" + s);
                cols.push_back("nph_alt_" + s);
            }
            if (ex) cols.push_back("nph_exact_" + s);
            if (an && ex) cols.push_back("err_nph_" + s);
        }
    }
    if (spec.observables.bs_shift) {
        if (an) cols.push_back("bs_analytic");
        if (ex) cols.push_back("bs_exact");
        if (an && ex) cols.push_back("err_bs");
    }
    if (spec.observables.theta) {
        for (int k = 0; k < spec.levels; ++k)
            cols.push_back("theta_" + std::to_string(k));
    }
    return cols;
}

// Analytic levels ordered by energy: state label 0 is the ground state,
// m >= 1 the m-th excited state (odd = lower branch, even = upper branch).
struct RankedLevel {
    double energy = 0.0;
    int m = 0;
};

std::vector<RankedLevel> ranked_levels(const ModelParams& p,
                                       const LambdaSolution& lam, int count) {
    const int n_blocks = std::max(count, 1);
    std::vector<RankedLevel> all;
    all.reserve(1 + 2 * static_cast<std::size_t>(n_blocks));
    all.push_back({ground_energy(p, lam), 0});
    for (int n = 0; n < n_blocks; ++n) {
        const auto [lo, hi] = excited_energies(p, lam, n);
        all.push_back({lo, 2 * n + 1});
        all.push_back({hi, 2 * n + 2});
    }
    std::sort(all.begin(), all.end(), [](const RankedLevel& a, const RankedLevel& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.m < b.m;
    });
    all.resize(static_cast<std::size_t>(count));
    return all;
}

double analytic_mean_photon_of(const ModelParams& p, const LambdaSolution& lam,
                               int m) {
    return m == 0 ? mean_photon_ground(lam) : mean_photon_excited(p, lam, m);
}

double alt_mean_photon_of(const ModelParams& p, const LambdaSolution& lam, int m) {
    return m == 0 ? mean_photon_ground(lam) : mean_photon_excited_alt(p, lam, m);
}

std::vector<double> eval_point(const ModelParams& p, const SweepSpec& spec) {
    validate_params(p);
    const bool an = want_analytic(spec.methods);
    const bool ex = want_exact(spec.methods);

    const LambdaSolution lam = (spec.lambda_method == LambdaMethod::closed_form)
                                   ? lambda_closed_form(p)
                                   : lambda_root(p);

    std::vector<RankedLevel> levels;
    if (an && (spec.observables.energy || spec.observables.mean_photon))
        levels = ranked_levels(p, lam, spec.levels);

    ExactSpectrum exact;
    if (ex && (spec.observables.energy || spec.observables.mean_photon ||
               spec.observables.bs_shift)) {
        int k_needed = 1;
        if (spec.observables.energy || spec.observables.mean_photon)
            k_needed = std::max(k_needed, spec.levels);
        if (spec.observables.bs_shift) k_needed = std::max(k_needed, 2);
        exact = exact_spectrum(p, k_needed, -1.0, spec.observables.mean_photon,
                               spec.n_max);
    }

    std::vector<double> row = {p.omega, p.Omega_r, p.g};
    if (spec.observables.lambda) {
        row.push_back(lam.lambda);
        row.push_back(lam.residual);
    }
    if (spec.observables.energy) {
        for (int k = 0; k < spec.levels; ++k) {
            if (an) row.push_back(levels[k].energy);
            if (ex) row.push_back(exact.eigenvalues[k]);
            if (an && ex)
                row.push_back(std::abs(levels[k].energy - exact.eigenvalues[k]));
        }
    }
    if (spec.observables.mean_photon) {
        for (int k = 0; k < spec.levels; ++k) {
            double nph_an = 0.0;
            if (an) {
                nph_an = analytic_mean_photon_of(p, lam, levels[k].m);
                row.push_back(nph_an);
                row.push_back(alt_mean_photon_of(p, lam, levels[k].m));
            }
            if (ex) {
                const double nph_ex = mean_photon(exact.eigenvectors[k]);
                row.push_back(nph_ex);
                if (an) row.push_back(std::abs(nph_an - nph_ex));
            }
        }
    }
    if (spec.observables.bs_shift) {
        const JCReference jc = jc_energies(p, 1);
        const double jc_transition = jc.doublets[0].first - jc.ground_energy;
        double bs_an = 0.0;
        if (an) {
            bs_an = (excited_energies(p, lam, 0).first - ground_energy(p, lam)) -
                    jc_transition;
            row.push_back(bs_an);
        }
        if (ex) {
            const double bs_ex =
                (exact.eigenvalues[1] - exact.eigenvalues[0]) - jc_transition;
            row.push_back(bs_ex);
            if (an) row.push_back(std::abs(bs_an - bs_ex));
        }
    }
    if (spec.observables.theta) {
        for (int k = 0; k < spec.levels; ++k)
            row.push_back(mixing_angle(p, lam, k));
    }
    return row;
}

void push_common_metadata(SweepTable& table, const SweepSpec& spec) {
    table.metadata.emplace_back("tool", kToolName);
    table.metadata.emplace_back("version", kVersion);
    if (!spec.preset_name.empty())
        table.metadata.emplace_back("preset", spec.preset_name);
    table.metadata.emplace_back("unit", spec.unit);
    table.metadata.emplace_back(
        "lambda_method",
        spec.lambda_method == LambdaMethod::closed_form ? "closed" : "root");
    table.metadata.emplace_back("n_max", std::to_string(spec.n_max));
    table.metadata.emplace_back("levels", std::to_string(spec.levels));
    table.metadata.emplace_back("methods", methods_name(spec.methods));
    table.metadata.emplace_back("observables", observables_name(spec.observables));
}

ModelParams grid_point(const SweepSpec& spec, double value) {
    ModelParams p = spec.fixed;
    if (spec.swept == SweptParam::g)
        p.g = value;
    else
        p.Omega_r = value;
    return p;
}

double grid_value(const SweepSpec& spec, int i) {
    return spec.from + (spec.to - spec.from) * i / (spec.steps - 1);
}

[[noreturn]] void rethrow_tagged(std::exception_ptr ep, const std::string& ctx) {
    try {
        std::rethrow_exception(ep);
    } catch (const NoConvergence& e) {
        throw NoConvergence(ctx + e.what());
    } catch (const NoBracket& e) {
        throw NoBracket(ctx + e.what());
    } catch (const TruncationTooSmall& e) {
        throw TruncationTooSmall(ctx + e.what());
    } catch (const DimensionOverflow& e) {
        throw DimensionOverflow(ctx + e.what());
    } catch (const IoError& e) {
        throw IoError(ctx + e.what());
    } catch (const Error& e) {
        throw Error(ctx + e.what());
    }
}

}  // namespace

void validate_spec(const SweepSpec& spec) {
    if (!spec.observables.any()) throw InvalidSpec("no observables requested");
    if (spec.levels < 1) throw InvalidSpec("levels must be >= 1");
    if (spec.n_max < 1) throw InvalidSpec("n_max must be >= 1");
    if (spec.steps < 2) throw InvalidSpec("steps must be >= 2");
    if (!(spec.from < spec.to)) throw InvalidSpec("sweep requires from < to");
    try {
        validate_params(grid_point(spec, spec.from));
        validate_params(grid_point(spec, spec.to));
    } catch (const Error& e) {
        throw InvalidSpec(std::string("grid produces invalid parameters: ") +
                          e.what());
    }
}

SweepTable run_point(const ModelParams& p, const SweepSpec& spec) {
    if (!spec.observables.any()) throw InvalidSpec("no observables requested");
    if (spec.levels < 1) throw InvalidSpec("levels must be >= 1");
    if (spec.n_max < 1) throw InvalidSpec("n_max must be >= 1");
    try {
        validate_params(p);
    } catch (const Error& e) {
        throw InvalidSpec(std::string("invalid parameters: ") + e.what());
    }

    const auto start = std::chrono::steady_clock::now();
    SweepTable table;
    table.columns = build_columns(spec);
    table.rows.push_back(eval_point(p, spec));
    push_common_metadata(table, spec);
    table.metadata.emplace_back("omega", fmt_value(p.omega));
    table.metadata.emplace_back("Omega", fmt_value(p.Omega_r));
    table.metadata.emplace_back("g", fmt_value(p.g));
    table.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return table;
}

SweepTable run_sweep(const SweepSpec& spec) {
    validate_spec(spec);
    const auto start = std::chrono::steady_clock::now();

    SweepTable table;
    table.columns = build_columns(spec);
    table.rows.assign(static_cast<std::size_t>(spec.steps), {});

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const int workers = std::min({spec.steps, static_cast<int>(hw), 8});

    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    int first_error_index = -1;

    auto work = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= spec.steps) return;
            try {
                table.rows[static_cast<std::size_t>(i)] =
                    eval_point(grid_point(spec, grid_value(spec, i)), spec);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (first_error_index < 0 || i < first_error_index) {
                    first_error = std::current_exception();
                    first_error_index = i;
                }
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    if (first_error) {
        const double v = grid_value(spec, first_error_index);
        rethrow_tagged(first_error,
                       "grid point " + std::to_string(first_error_index) + " (" +
                           (spec.swept == SweptParam::g ? "g=" : "Omega=") +
                           fmt_value(v) + "): ");
    }

    push_common_metadata(table, spec);
    table.metadata.emplace_back("swept",
                                spec.swept == SweptParam::g ? "g" : "Omega");
    table.metadata.emplace_back("from", fmt_value(spec.from));
    table.metadata.emplace_back("to", fmt_value(spec.to));
    table.metadata.emplace_back("steps", std::to_string(spec.steps));
    table.metadata.emplace_back("omega", fmt_value(spec.fixed.omega));
    if (spec.swept == SweptParam::g)
        table.metadata.emplace_back("Omega", fmt_value(spec.fixed.Omega_r));
    else
        table.metadata.emplace_back("g", fmt_value(spec.fixed.g));
    table.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return table;
}

namespace {

void check_table(const SweepTable& table) {
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r].size() != table.columns.size())
            throw InvalidSpec("row " + std::to_string(r) +
                              " does not match the column count");
        for (double v : table.rows[r])
            if (!std::isfinite(v))
                throw InvalidSpec("non-finite value in row " + std::to_string(r));
    }
}

}  // namespace

std::string to_csv(const SweepTable& table) {
    check_table(table);
    std::string out;
    for (const auto& [key, value] : table.metadata)
        out += "# " + key + ": " + value + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    char buf[32];
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            std::snprintf(buf, sizeof(buf), "%.11e", row[c]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const SweepTable& table) {
    check_table(table);
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta;
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    j["metadata"] = std::move(meta);
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    return j.dump(2) + "\n";
}

SweepTable from_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("cannot parse table JSON: ") + e.what());
    }
    SweepTable table;
    if (j.contains("metadata"))
        for (const auto& [key, value] : j["metadata"].items())
            table.metadata.emplace_back(key, value.get<std::string>());
    table.columns = j.at("columns").get<std::vector<std::string>>();
    table.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    return table;
}

std::size_t emit(const SweepTable& table, OutputFormat format,
                 const std::string& destination) {
    const std::string payload =
        format == OutputFormat::csv ? to_csv(table) : to_json(table);
    if (destination.empty() || destination == "-") {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        std::fflush(stdout);
        return payload.size();
    }
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + destination + "' for writing");
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.flush();
    if (!out) throw IoError("write to '" + destination + "' failed");
    return payload.size();
}

SweepSpec preset(const std::string& name) {
    SweepSpec s;
    s.preset_name = name;
    if (name == "fig1a" || name == "fig1b" || name == "fig1c") {
        s.swept = SweptParam::g;
        s.from = 0.0;
        s.to = 0.5;
        s.steps = 51;
        s.fixed = {1.0, name == "fig1a" ? 0.5 : (name == "fig1b" ? 1.0 : 1.5), 0.0};
        s.levels = 8;
        s.observables.energy = true;
    } else if (name == "fig2a" || name == "fig2b") {
        s.swept = SweptParam::Omega_r;
        s.from = 0.1;
        s.to = 2.0;
        s.steps = 39;
        s.fixed = {1.0, 0.0, name == "fig2a" ? 0.1 : 0.3};
        s.levels = 8;
        s.observables.energy = true;
    } else if (name == "fig3") {
        s.swept = SweptParam::g;
        s.from = 0.0;
        s.to = 0.3 * 8.13;
        s.steps = 31;
        s.fixed = {8.13, 4.25, 0.0};
        s.levels = 2;
        s.observables.bs_shift = true;
        s.unit = "ghz";
    } else if (name == "fig4") {
        s.swept = SweptParam::Omega_r;
        s.from = 0.1;
        s.to = 2.0;
        s.steps = 20;
        s.fixed = {1.0, 0.0, 0.1};
        s.levels = 5;
        s.observables.mean_photon = true;
    } else {
        throw InvalidSpec("unknown preset '" + name + "'");
    }
    return s;
}

std::vector<std::string> preset_names() {
    return {"fig1a", "fig1b", "fig1c", "fig2a", "fig2b", "fig3", "fig4"};
}

}  // namespace rabi
