#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/run_config.hpp"

namespace nanograting::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_config = 2,
  exit_numerical = 3,
};

struct Invocation {
  std::string command;
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> settings;  // "key=value", applied last

  std::optional<std::string> measured;  // fit-seff
  std::optional<std::string> image;     // fit-velocity, render
  std::vector<double> y2_um;            // fit-velocity without an image
  std::optional<double> stretch;        // synth-image, render
  bool csv = false;                     // limits
};

RunConfig load_config(const Invocation& inv);

int execute(const Invocation& inv, std::ostream& out, std::ostream& err);

/// Parses argv and runs the command, mapping exceptions to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nanograting::cli
