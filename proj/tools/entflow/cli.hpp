// cli.hpp: configuration, execution and serialization behind the entflow tool.
//
// Rates are read in units of kappa and times in units of 1/kappa; every
// emitted time column is in units of 1/kappa.

#pragma once

#include "entflow/events.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace entflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;

struct RunConfig {
    std::string command;
    std::optional<int> figure;

    std::optional<double> geff;
    std::optional<double> g;
    std::optional<double> omega;
    std::optional<double> delta_detuning;
    std::optional<double> kappa;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> ratio;
    std::optional<double> t_max;
    std::optional<int> steps;
    std::optional<std::vector<std::string>> pairs;
    std::optional<std::string> regime;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<int> n_modes;
    std::optional<double> bandwidth;
    std::optional<int> seed;
    std::optional<std::string> gamma_grid;
    std::optional<std::string> ratio_grid;
    std::optional<std::string> criterion;
};

/// Keys mirror the flag names ("t-max", "delta-detuning", ...). Throws
/// ConfigError on unknown keys or wrongly typed values.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);

/// Fields set in `overrides` replace those in `base`.
RunConfig merge(RunConfig base, const RunConfig& overrides);

/// Apply the preset of `figure` N (3..10) underneath explicit settings.
RunConfig with_figure_preset(const RunConfig& c);

using Cell = std::variant<double, std::string>;

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// False when a `validate` threshold was missed.
    bool passed = true;
};

/// Run one command. Throws ValidationError / ConfigError on bad input.
Report execute(const RunConfig& c);

/// Header plus rows, floats as %.12g, LF line endings.
std::string render_csv(const Report& r);
/// {"config": ..., "columns": [...], "records": [{column: value}, ...]}.
nlohmann::json render_json(const RunConfig& c, const Report& r);
/// Inverse of render_json for the records.
Report parse_report(const nlohmann::json& j);

/// Typed views of a report.
std::vector<EventRecord> event_records(const Report& r);
PhaseDiagram phase_diagram_from(const Report& r);

/// Write through a temporary file in the same directory and rename it into
/// place. Throws ConfigError on I/O failure.
void write_atomic(const std::string& path, const std::string& content);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entflow::cli
