#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "rabi/errors.hpp"
#include "rabi/sweep.hpp"
#include "rabi/version.hpp"

namespace {

rabi::ObservableSet parse_observables(const std::string& list) {
    rabi::ObservableSet set;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = list.find(',', pos);
        const std::string name =
            list.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (name == "energy")
            set.energy = true;
        else if (name == "mean_photon")
            set.mean_photon = true;
        else if (name == "bs_shift")
            set.bs_shift = true;
        else if (name == "theta")
            set.theta = true;
        else if (name == "lambda")
            set.lambda = true;
        else if (!name.empty())
            throw rabi::InvalidSpec("unknown observable '" + name + "'");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return set;
}

rabi::Methods parse_methods(const std::string& name) {
    if (name == "analytic") return rabi::Methods::analytic;
    if (name == "exact") return rabi::Methods::exact;
    if (name == "both") return rabi::Methods::both;
    throw rabi::InvalidSpec("unknown methods '" + name + "'");
}

struct CliOptions {
    double omega = 1.0;
    double Omega = 1.0;
    double g = 0.0;
    int levels = 8;
    int n_max = 60;
    std::string lambda_method = "closed";
    std::string unit = "omega";
    std::string format = "csv";
    std::string out;
    std::string methods = "both";
    std::string observables = "energy";

    std::string swept = "g";
    double from = 0.0;
    double to = 0.5;
    int steps = 51;

    std::string preset_name;
};

void add_solver_options(CLI::App* sub, CliOptions& o) {
    sub->add_option("--levels", o.levels, "number of energies to report");
    sub->add_option("--n-max", o.n_max, "starting Fock truncation of the exact solver");
    sub->add_option("--lambda-method", o.lambda_method, "closed|root")
        ->check(CLI::IsMember({"closed", "root"}));
    sub->add_option("--unit", o.unit, "omega|ghz (label only, no conversion)")
        ->check(CLI::IsMember({"omega", "ghz"}));
    sub->add_option("--methods", o.methods, "analytic|exact|both")
        ->check(CLI::IsMember({"analytic", "exact", "both"}));
}

void add_output_options(CLI::App* sub, CliOptions& o) {
    sub->add_option("--format", o.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "output path (default stdout)");
}

void add_param_options(CLI::App* sub, CliOptions& o) {
    sub->add_option("--omega", o.omega, "oscillator frequency");
    sub->add_option("--Omega", o.Omega, "two-level resonant frequency");
    sub->add_option("--g", o.g, "interaction strength");
}

rabi::SweepSpec spec_from_options(const CliOptions& o) {
    rabi::SweepSpec spec;
    spec.fixed = {o.omega, o.Omega, o.g};
    spec.levels = o.levels;
    spec.n_max = o.n_max;
    spec.lambda_method = o.lambda_method == "closed"
                             ? rabi::LambdaMethod::closed_form
                             : rabi::LambdaMethod::root_n_independent;
    spec.unit = o.unit;
    spec.methods = parse_methods(o.methods);
    spec.observables = parse_observables(o.observables);
    return spec;
}

void write_table(const rabi::SweepTable& table, const CliOptions& o) {
    const auto format = o.format == "csv" ? rabi::OutputFormat::csv
                                          : rabi::OutputFormat::json;
    rabi::emit(table, format, o.out);
    std::fprintf(stderr, "# wall_seconds: %.3f\n", table.wall_seconds);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum Rabi model spectrum engine"};
    app.set_version_flag("--cli-version", rabi::kVersion);
    app.require_subcommand(1);
    CliOptions o;

    CLI::App* point = app.add_subcommand("point", "solve a single parameter point");
    add_param_options(point, o);
    add_solver_options(point, o);
    add_output_options(point, o);
    point->add_option("--observables", o.observables,
                      "comma list of energy,mean_photon,bs_shift,theta,lambda");

    CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter on a grid");
    add_param_options(sweep, o);
    add_solver_options(sweep, o);
    add_output_options(sweep, o);
    sweep->add_option("--observables", o.observables,
                      "comma list of energy,mean_photon,bs_shift,theta,lambda");
    sweep->add_option("--sweep", o.swept, "swept parameter: g|Omega")
        ->check(CLI::IsMember({"g", "Omega"}));
    sweep->add_option("--from", o.from, "sweep start")->required();
    sweep->add_option("--to", o.to, "sweep end")->required();
    sweep->add_option("--steps", o.steps, "grid points (>= 2)");

    CLI::App* bs = app.add_subcommand(
        "bs-shift", "Bloch-Siegert shift of the lowest transition");
    add_param_options(bs, o);
    add_solver_options(bs, o);
    add_output_options(bs, o);

    CLI::App* pre = app.add_subcommand("preset", "run a canned parameter scan");
    std::string names;
    for (const auto& n : rabi::preset_names()) names += n + " ";
    pre->add_option("name", o.preset_name, "one of: " + names)->required();
    add_output_options(pre, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(point)) {
            write_table(rabi::run_point({o.omega, o.Omega, o.g},
                                        spec_from_options(o)), o);
        } else if (app.got_subcommand(sweep)) {
            rabi::SweepSpec spec = spec_from_options(o);
            spec.swept = o.swept == "g" ? rabi::SweptParam::g
                                        : rabi::SweptParam::Omega_r;
            spec.from = o.from;
            spec.to = o.to;
            spec.steps = o.steps;
            write_table(rabi::run_sweep(spec), o);
        } else if (app.got_subcommand(bs)) {
            rabi::SweepSpec spec = spec_from_options(o);
            spec.observables = rabi::ObservableSet{};
            spec.observables.bs_shift = true;
            spec.levels = 2;
            write_table(rabi::run_point({o.omega, o.Omega, o.g}, spec), o);
        } else if (app.got_subcommand(pre)) {
            write_table(rabi::run_sweep(rabi::preset(o.preset_name)), o);
        }
    } catch (const rabi::InvalidSpec& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const rabi::NoConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const rabi::NoBracket& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const rabi::TruncationTooSmall& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const rabi::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
