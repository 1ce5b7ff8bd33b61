#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ptspec/model.hpp"

namespace ptspec::cli {

enum class Command { Spectrum, Perturb, Pade, Sweep, Figures, Convergence };

/// Exit codes of `run`.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kPerturbFailure = 3,
  kPadeFailure = 4,
  kEigenFailure = 5,
  kUnconverged = 6,
  kIoFailure = 7,
  kSampleFailure = 8,
};

struct RunConfig {
  Command command = Command::Spectrum;
  std::optional<Model> model;  // figures default to the model of the figure

  // spectrum, convergence
  double g = 0.0;
  int nMax = 50;
  int levels = 6;
  bool checkConvergence = false;
  double tolerance = 1e-8;
  std::vector<int> truncations;  // convergence; empty = 20, 30, .. nMax

  // perturb, pade
  int level = 0;
  int order = 8;
  bool floatFallback = false;
  int L = 20;
  int M = 20;
  std::vector<double> eval;
  std::optional<std::pair<double, double>> poles;

  // sweep, figures
  std::optional<double> gMin;
  std::optional<double> gMax;
  std::optional<double> step;
  int maxLevel = 6;
  double overlapThreshold = 0.7;
  int maxRefinements = 8;
  std::string report = "crossings";  // crossings | branches
  int figure = 0;
  int padeOrder = 40;  // figures; 0 disables the approximant curves
  unsigned threads = 0;

  std::optional<std::filesystem::path> outDir;
  std::vector<std::string> formats;  // empty = command default
};

Command parse_command(const std::string& name);
std::string command_name(Command c);

/// Validates `cfg`, runs it, writes results to `out` (or to files under
/// outDir) and diagnostics to `err`. Returns an ExitCode.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ptspec::cli
