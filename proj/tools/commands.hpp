#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "entmono/linalg.hpp"

namespace entmono::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitClaimsNotConfirmed = 1,
  kExitNumeric = 2,
  kExitUsage = 64,
  kExitData = 65,
};

enum class OutputFormat { Table, Csv, Json };

struct RunConfig {
  std::string command;
  std::uint64_t seed = 42;
  int restarts = 32;
  double tol = 1e-10;
  OutputFormat format = OutputFormat::Table;
  std::optional<std::filesystem::path> output_path;
};

/// Gamma grid of `reproduce-paper`.
const std::vector<double>& reproduce_grid();

int cmd_reproduce_paper(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, double gamma_min, double gamma_max, int steps,
              std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& cfg, int qubits, int trials, std::ostream& out,
              std::ostream& err);
int cmd_fef(const RunConfig& cfg, const std::filesystem::path& state_file,
            const std::optional<Dims>& dims, std::ostream& out, std::ostream& err);
int cmd_telesim(const RunConfig& cfg, double gamma, long long samples, std::ostream& out,
                std::ostream& err);

/// Parses "2,4" style lists. Throws std::invalid_argument.
Dims parse_dims_list(const std::string& text);

/// Full command line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace entmono::cli
