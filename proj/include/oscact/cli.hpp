#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oscact/darboux.hpp"
#include "oscact/noise.hpp"
#include "oscact/verify.hpp"

namespace oscact::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;        // argument / parse errors
inline constexpr int kExitValidation = 2;   // lambda / domain validation failures
inline constexpr int kExitVerifyFailed = 3; // verification suite failure

enum class Command { action, family, verify, spectrum };
enum class OutputFormat { csv, json };

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log = false;
  std::vector<double> points;  // explicit list; overrides the range form
};

struct RunConfig {
  Command command = Command::verify;
  double hbar = 1.0;
  GridSpec grid;
  std::vector<Lambda> lambdas;
  Family seed = Family::planck;
  double A = 0.0, B = 0.0;
  bool include_seed = false;
  ResistanceModel resistance = ResistanceModel::constant(1.0);
  double beta = 1.0;
  std::optional<double> omega;  // action command: adds the U column
  OutputFormat output_format = OutputFormat::csv;
  std::string output_path;  // empty = standard output
  double tolerance = 1e-8;
  bool strict = true;  // singular grid rows abort; lambda must be > 0
  bool allow_negative_x = false;
  Suite suite = Suite::all;
};

/// start:stop:count range syntax.
GridSpec parse_grid(const std::string& text);

/// Comma-separated explicit points.
GridSpec parse_points(const std::string& text);

std::vector<double> make_grid(const GridSpec& spec);

/// Comma-separated lambda list; "inf" selects the seed member.
std::vector<Lambda> parse_lambda_list(const std::string& text);

/// "50", "constant:50" or "rlc:R=100,L=1,C=0.01".
ResistanceModel parse_resistance(const std::string& text);

/// Round-trip exact decimal rendering (up to 17 significant digits),
/// locale independent.
std::string format_double(double v);

/// Prefix relative output paths with $OSCACT_OUTPUT_DIR when set.
std::string resolve_output_path(const std::string& path);

/// Executes the configured command, writing the table to config.output_path
/// (or `out`) and diagnostics to `err`. Returns one of the kExit* codes.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace oscact::cli
