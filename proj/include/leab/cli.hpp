#pragma once

#include "leab/mesh.hpp"
#include "leab/shape_space.hpp"
#include "leab/svg.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leab::cli {

enum class Command { Refine, Orbit, Verify, Plot };

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kDegeneracy = 3,
};

inline constexpr int kMaxSteps = 24;
inline constexpr std::size_t kMaxElements = std::size_t{1} << 24;

struct RunConfig {
  Command command = Command::Refine;
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path points;
  int steps = 0;
  Method method = Method::LEAB;
  /// Hanging-node distance for refine, relative bound slack for verify.
  std::optional<double> tol;
  std::string z;
  std::string word;
};

/// Parses "a+bi" / "a-bi" with decimal literals and no whitespace.
Complex parse_complex(std::string_view text);

/// One point per line: "a+bi" optionally followed by whitespace and a label.
/// Blank lines and lines starting with '#' are skipped.
std::vector<svg::LabeledPoint> parse_points(std::string_view text);

int cmd_refine(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_orbit(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_plot(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line, dispatches, and maps errors to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace leab::cli
