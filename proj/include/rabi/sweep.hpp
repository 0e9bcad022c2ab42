#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rabi/analytic.hpp"
#include "rabi/model.hpp"

namespace rabi {

enum class SweptParam { g, Omega_r };
enum class Methods { analytic, exact, both };
enum class OutputFormat { csv, json };

struct ObservableSet {
    bool energy = false;
    bool mean_photon = false;
    bool bs_shift = false;
    bool theta = false;
    bool lambda = false;

    bool any() const { return energy || mean_photon || bs_shift || theta || lambda; }
};

struct SweepSpec {
    SweptParam swept = SweptParam::g;
    double from = 0.0;
    double to = 1.0;
    int steps = 2;
    ModelParams fixed;  // the swept field of `fixed` is ignored
    int levels = 8;
    ObservableSet observables;
    Methods methods = Methods::both;
    LambdaMethod lambda_method = LambdaMethod::closed_form;
    int n_max = 60;  // starting truncation of the exact solver
    std::string unit = "omega";
    std::string preset_name;  // empty unless built by preset()
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    // Ordered, deterministic key/value pairs; emitted verbatim.
    std::vector<std::pair<std::string, std::string>> metadata;
    // Not emitted (kept out of the byte-deterministic output).
    double wall_seconds = 0.0;
};

/// Throws InvalidSpec on an inconsistent grid, empty observables, or any
/// grid point with invalid parameters.
void validate_spec(const SweepSpec& spec);

/// All requested quantities at a single parameter point, as a one-row table.
/// levels/observables/methods and solver knobs come from `spec`; the grid
/// fields of `spec` are ignored.
SweepTable run_point(const ModelParams& p, const SweepSpec& spec);

/// One row per grid point, ordered by swept value. Points are evaluated by a
/// bounded worker pool; output is independent of scheduling. Solver errors
/// are rethrown tagged with the failing grid point.
SweepTable run_sweep(const SweepSpec& spec);

std::string to_csv(const SweepTable& table);
std::string to_json(const SweepTable& table);
SweepTable from_json(const std::string& text);

/// Serializes to `destination` ("" or "-" for stdout); returns bytes
/// written. Throws IoError with path context.
std::size_t emit(const SweepTable& table, OutputFormat format,
                 const std::string& destination);

/// Canned parameter scans: fig1a, fig1b, fig1c, fig2a, fig2b, fig3, fig4.
/// Throws InvalidSpec for unknown names.
SweepSpec preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace rabi
