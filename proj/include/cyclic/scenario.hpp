// scenario.hpp - declarative runs: a JSON scenario names a model, an initial
// state, what to compute and where to write it.
//
//   model:   {g_N, omega, phi} | {limit: "strong_positive"|"strong_negative", rate}
//            | {theta, eps1, eps3} | {schedule: {...}}
//   initial: {type: "fock", m, n} | {type: "fock4", occupation: [4]}
//            | {type: "coherent", amplitudes: [[re, im] x 4]}
//            | {type: "cat", mode, alpha: [re, im], parity: "even"|"odd"}
//   run:     {type: "evolve" | "entanglement_scan" | "resonance_times" | "adiabatic"
//                  | "inverse_adiabatic" | "bosonization" | "oracle_compare" | "spectrum", ...}
//   output:  {path, format: "csv"|"json"}
//   jobs:    worker threads for grid scans (1 = serial, 0 = all)
//
// Time grids are either an explicit ascending array or {start, stop, points}.
// Schedules without phase_tuning or hold_tail default to phase_tuning "both".

#pragma once

#include "cyclic/json_io.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cyclic {

enum class OutputFormat { csv, json };

// One table per run: CSV renders it directly, JSON wraps it together with the
// resolved scenario and any run-specific extras.
struct ScenarioResult {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    json extras = json::object();
    std::string summary;  // short human-readable digest
};

class Scenario {
public:
    // Validates the whole scenario up front; relative output paths are taken
    // against base_dir. Throws InvalidArgument (or a more specific validation
    // error) with a message naming the offending field.
    static Scenario parse(const json& document, const std::filesystem::path& base_dir);
    static Scenario load(const std::filesystem::path& file);

    const json& resolved() const noexcept { return resolved_; }
    std::optional<std::filesystem::path> output_path() const { return output_path_; }
    OutputFormat format() const noexcept { return format_; }
    int jobs() const noexcept { return jobs_; }
    void set_jobs(int jobs);

    ScenarioResult execute() const;
    std::string render(const ScenarioResult& result) const;

    struct Plan;  // parsed form, defined in scenario.cpp

private:
    Scenario() = default;

    std::shared_ptr<const Plan> plan_;
    json resolved_;
    std::optional<std::filesystem::path> output_path_;
    OutputFormat format_ = OutputFormat::csv;
    int jobs_ = 1;
};

// Executes and writes the artifact (to the output path, or to `out` when the
// scenario has none); the summary and all diagnostics go to `err`.
// Returns 0 on success, 2 on validation errors, 3 on numerical failures.
int run_scenario(const Scenario& scenario, std::ostream& out, std::ostream& err);
int run_scenario_file(const std::filesystem::path& file, std::ostream& out, std::ostream& err,
                      std::optional<int> jobs = std::nullopt);

// Text of a CSV file: header row, then one line per row, doubles as %.17g.
std::string render_csv(const ScenarioResult& result);

}  // namespace cyclic
