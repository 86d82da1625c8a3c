#pragma once
#include <optional>
#include <string>
#include <vector>

#include "affrep/io.hpp"

namespace affrep::cli {

/// Parameters shared by all subcommands; unset values fall back to per-command defaults.
struct Options {
  unsigned long seed = 1;
  std::optional<long> window, depth, modes, samples, layer, bound, tmin, tmax;
  std::string algebra = "sl2";
  std::optional<long> level;
  std::optional<std::string> lam, mu, nu;
  std::optional<std::string> module, other, eval;
  std::string z = "1";
  bool weyl = false;
};

struct CommandInfo {
  std::string name;
  std::string description;
};

const std::vector<CommandInfo>& command_table();

struct CommandResult {
  io::Json report;
  bool passed = true;
};

/// Runs one subcommand. Throws affrep::Error for invalid input.
CommandResult run_command(const std::string& name, const Options& opt);

}  // namespace affrep::cli
