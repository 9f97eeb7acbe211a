#ifndef FWM_TOOLS_COMMANDS_HPP
#define FWM_TOOLS_COMMANDS_HPP

// Subcommand bodies of the fwm executable, separated from argument parsing so
// they can be driven directly. Each command writes human-readable key = value
// lines (or CSV files) and returns 0; failures are reported by exception and
// mapped to the process exit code by run_guarded.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace fwm::cli {

struct CommandOptions {
    std::string config_path;
    std::string out_path;     // output file; output directory for reproduce-figure
    std::string trace_path;   // recorded trace CSV for fit
    std::string figure;       // fig2 | fig3a | fig3b | fig4 | fig5
    bool analytic = false;
    bool serial = false;
    double grid_scale = 1.0;
};

struct ConvertOptions {
    std::optional<double> rabi;          // Gamma units
    std::optional<double> intensity;     // mW/cm^2
    std::optional<double> duration_us;
};

int cmd_steady(const CommandOptions& opts, std::ostream& out);
int cmd_propagate(const CommandOptions& opts, std::ostream& out);
int cmd_sweep(const CommandOptions& opts, std::ostream& out);
int cmd_fit(const CommandOptions& opts, std::ostream& out);
int cmd_harris_hau(const CommandOptions& opts, std::ostream& out);
int cmd_reproduce_figure(const CommandOptions& opts, std::ostream& out);
int cmd_convert_units(const ConvertOptions& opts, std::ostream& out);

// Runs a command body, prints any error to err, and maps exceptions to exit
// codes: 0 success, 2 configuration or usage, 3 numerical failure, 4 I/O.
int run_guarded(const std::function<int()>& body, std::ostream& err);

} // namespace fwm::cli

#endif
