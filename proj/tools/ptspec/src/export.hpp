#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ptspec/pade.hpp"
#include "ptspec/perturb.hpp"
#include "ptspec/sweep.hpp"

namespace ptspec::cli {

/// Ordered key/value record of a run configuration.
using ConfigRecord = std::vector<std::pair<std::string, std::string>>;

/// 17 significant digits, shortest exponent form.
std::string format_double(double x);

/// "# key=value" lines.
void write_config_header(const ConfigRecord& config, std::ostream& out);

/// CSV with columns g, parity, label_n, label_k, re_E, im_E.
void write_branches_csv(const std::vector<Branch>& branches, const ConfigRecord& config, std::ostream& out);

struct PadeCurve {
  LevelLabel label;
  std::vector<double> g;
  std::vector<PadeValue> values;
};

/// CSV with columns g, parity, label_n, label_k, pade_E, near_pole.
void write_pade_csv(const std::vector<PadeCurve>& curves, const ConfigRecord& config, std::ostream& out);

/// Eigenvalue table: rank, parity, re_E, im_E.
struct SpectrumRow {
  int rank = 0;
  Parity parity = Parity::Even;
  Complex value;
};
void write_spectrum_csv(const std::vector<SpectrumRow>& rows, const ConfigRecord& config, std::ostream& out);

std::string series_json(const std::vector<EnergySeries>& series, const ConfigRecord& config);

struct PadeReport {
  EnergySeries series;
  PadeApprox approx;
  std::vector<std::pair<double, PadeValue>> evaluations;
  std::vector<double> poles;
  std::pair<double, double> poleInterval{0.0, 0.0};
};
std::string pade_json(const std::vector<PadeReport>& reports, const ConfigRecord& config);

std::string crossings_json(const std::vector<CrossingEvent>& events, const ConfigRecord& config);

std::string convergence_json(const ConvergenceTable& table, const ConfigRecord& config);
void write_convergence_csv(const ConvergenceTable& table, const ConfigRecord& config, std::ostream& out);

/// Run metadata: the configuration, the label-mapping table, and a UTC
/// timestamp. Kept apart from the data files so those stay byte-stable.
std::string metadata_json(const ConfigRecord& config, Model which, const std::string& timestamp);

std::string to_string(CrossingKind kind);
std::string parity_name(Parity p);

}  // namespace ptspec::cli
