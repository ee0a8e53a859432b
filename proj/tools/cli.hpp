#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semiq/oracle.hpp"
#include "semiq/spectrum.hpp"

namespace semiq::cli {

enum class Command { catalog, spectrum, compare, scan_delta1, oracle };
enum class OutputFormat { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNotConverged = 3;

struct RunRequest {
  Command command = Command::catalog;
  std::string potential;
  std::map<std::string, double> params;
  std::optional<std::filesystem::path> file;
  double beta = 0;
  double shift = 0;
  std::vector<SolverOrder> orders;
  std::optional<int> n_max;
  OutputFormat format = OutputFormat::csv;
  ReferenceKind reference = ReferenceKind::analytic;
  /// scan-delta1: number of energies and the window for confining wells.
  int points = 20;
  std::optional<double> e_max;
  SolverConfig solver;
  GridConfig grid;
};

/// Executes the request and writes the report to `out`. Returns the exit code.
int run(const RunRequest& request, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// `%.12g` rendering used for every emitted number.
std::string format_number(double value);

}  // namespace semiq::cli
