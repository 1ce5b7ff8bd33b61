#include "commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "export.hpp"
#include "ptspec/eigen.hpp"
#include "ptspec/hamiltonian.hpp"
#include "ptspec/pade.hpp"
#include "ptspec/perturb.hpp"
#include "ptspec/sweep.hpp"
#include "svg.hpp"

namespace ptspec::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};
class IoError : public Error {
 public:
  using Error::Error;
};
class UnconvergedError : public Error {
 public:
  using Error::Error;
};

constexpr int kFigureSamples = 600;

struct Output {
  const RunConfig& cfg;
  std::ostream& out;
  Model model;
  ConfigRecord record;

  bool to_files() const { return cfg.outDir.has_value(); }

  void write(const std::string& name, const std::string& contents) const {
    if (!to_files()) {
      out << contents;
      return;
    }
    std::filesystem::path path = *cfg.outDir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string());
    f << contents;
    if (!f.flush()) throw IoError("cannot write " + path.string());
  }

  void write_metadata() const {
    if (!to_files()) return;
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    write("metadata.json", metadata_json(record, model, stamp));
  }
};

bool has_format(const RunConfig& cfg, const std::string& f, std::initializer_list<const char*> defaults) {
  if (cfg.formats.empty()) return std::find(defaults.begin(), defaults.end(), f) != defaults.end();
  return std::find(cfg.formats.begin(), cfg.formats.end(), f) != cfg.formats.end();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

Model figure_model(int figure) { return figure <= 2 ? Model::Cubic12 : Model::HenonHeiles; }

double default_g_max(const RunConfig& cfg, Model m) {
  if (cfg.gMax) return *cfg.gMax;
  if (cfg.command == Command::Figures) return m == Model::Cubic12 ? 6.0 : 3.0;
  return 6.0;
}

double default_step(const RunConfig& cfg) {
  if (cfg.step) return *cfg.step;
  return cfg.command == Command::Figures ? 0.05 : 0.02;
}

int series_order(const RunConfig& cfg) {
  int order = cfg.L + cfg.M;
  order += order % 2;
  return std::max(order, 2);
}

Model resolve_model(const RunConfig& cfg) {
  if (cfg.command == Command::Figures) {
    require(cfg.figure >= 1 && cfg.figure <= 4, "--figure must be 1, 2, 3 or 4");
    Model m = figure_model(cfg.figure);
    require(!cfg.model || *cfg.model == m,
            fmt::format("figure {} belongs to model {}", cfg.figure, std::string(to_string(m))));
    return m;
  }
  return cfg.model.value_or(Model::Cubic12);
}

void validate(const RunConfig& cfg, Model m) {
  auto allowed = [&](std::initializer_list<const char*> ok) {
    for (const auto& f : cfg.formats)
      require(std::find_if(ok.begin(), ok.end(), [&](const char* s) { return f == s; }) != ok.end(),
              fmt::format("format '{}' is not available for {}", f, command_name(cfg.command)));
  };
  require(cfg.nMax >= 1, "--n-max must be positive");
  require(cfg.threads <= 1024, "--threads is out of range");
  switch (cfg.command) {
    case Command::Spectrum: {
      allowed({"csv"});
      require(std::isfinite(cfg.g), "--g must be finite");
      require(cfg.levels >= 1, "--levels must be positive");
      const long states = static_cast<long>(cfg.nMax + 1) * (cfg.nMax + 2) / 2;
      require(cfg.levels <= states, fmt::format("--n-max {} holds only {} states", cfg.nMax, states));
      require(!cfg.checkConvergence || cfg.nMax >= 8, "--check-convergence needs --n-max >= 8");
      require(cfg.tolerance > 0, "--tol must be positive");
      break;
    }
    case Command::Perturb:
      allowed({"json"});
      require(cfg.level >= 0, "--level must be non-negative");
      require(cfg.order >= 2 && cfg.order % 2 == 0, "--order must be even and at least 2");
      break;
    case Command::Pade:
      allowed({"json"});
      require(cfg.level >= 0, "--level must be non-negative");
      require(cfg.L >= 0 && cfg.M >= 0, "--L and --M must be non-negative");
      for (double g : cfg.eval) require(std::isfinite(g), "--eval values must be finite");
      require(!cfg.poles || (std::isfinite(cfg.poles->first) && std::isfinite(cfg.poles->second) &&
                             cfg.poles->first < cfg.poles->second),
              "--poles needs a < b");
      break;
    case Command::Sweep:
    case Command::Figures: {
      allowed(cfg.command == Command::Sweep ? std::initializer_list<const char*>{"csv", "json"}
                                            : std::initializer_list<const char*>{"csv", "svg"});
      const double gMin = cfg.gMin.value_or(0.0), gMax = default_g_max(cfg, m);
      require(std::isfinite(gMin) && gMin >= 0, "--g-min must be non-negative");
      require(std::isfinite(gMax) && gMax > gMin, "--g-max must exceed --g-min");
      require(default_step(cfg) > 0 && std::isfinite(default_step(cfg)), "--step must be positive");
      require(cfg.maxLevel >= 0 && cfg.maxLevel < cfg.nMax, "--max-level must lie in [0, n-max)");
      require(cfg.overlapThreshold > 0 && cfg.overlapThreshold <= 1, "--overlap must lie in (0, 1]");
      require(cfg.maxRefinements >= 0, "--max-refinements must be non-negative");
      require(cfg.report == "crossings" || cfg.report == "branches", "--report must be crossings or branches");
      require(cfg.padeOrder >= 0 && cfg.padeOrder % 2 == 0, "--pade-order must be even");
      require(cfg.command != Command::Figures || !has_format(cfg, "svg", {"csv", "svg"}) || cfg.outDir,
              "svg output needs --out");
      break;
    }
    case Command::Convergence: {
      allowed({"csv", "json"});
      require(std::isfinite(cfg.g), "--g must be finite");
      require(cfg.levels >= 1, "--levels must be positive");
      require(cfg.tolerance > 0, "--tol must be positive");
      for (std::size_t i = 0; i < cfg.truncations.size(); ++i) {
        require(cfg.truncations[i] >= 1, "--truncations must be positive");
        require(i == 0 || cfg.truncations[i] > cfg.truncations[i - 1], "--truncations must increase");
      }
      break;
    }
  }
}

ConfigRecord make_record(const RunConfig& cfg, Model m) {
  ConfigRecord r{{"command", command_name(cfg.command)}, {"model", std::string(to_string(m))}};
  auto add = [&](const char* k, auto v) {
    if constexpr (std::is_same_v<decltype(v), double>)
      r.emplace_back(k, format_double(v));
    else if constexpr (std::is_same_v<decltype(v), bool>)
      r.emplace_back(k, v ? "true" : "false");
    else if constexpr (std::is_convertible_v<decltype(v), std::string>)
      r.emplace_back(k, std::string(v));
    else
      r.emplace_back(k, std::to_string(v));
  };
  switch (cfg.command) {
    case Command::Spectrum:
      add("g", cfg.g);
      add("n_max", cfg.nMax);
      add("levels", cfg.levels);
      add("check_convergence", cfg.checkConvergence);
      add("tolerance", cfg.tolerance);
      break;
    case Command::Perturb:
      add("level", cfg.level);
      add("order", cfg.order);
      add("float_fallback", cfg.floatFallback);
      break;
    case Command::Pade:
      add("level", cfg.level);
      add("L", cfg.L);
      add("M", cfg.M);
      add("series_order", series_order(cfg));
      add("float_fallback", cfg.floatFallback);
      break;
    case Command::Sweep:
    case Command::Figures:
      if (cfg.command == Command::Figures) add("figure", cfg.figure);
      add("n_max", cfg.nMax);
      add("g_min", cfg.gMin.value_or(0.0));
      add("g_max", default_g_max(cfg, m));
      add("step", default_step(cfg));
      add("max_level", cfg.maxLevel);
      add("overlap_threshold", cfg.overlapThreshold);
      add("max_refinements", cfg.maxRefinements);
      if (cfg.command == Command::Figures) add("pade_order", cfg.padeOrder);
      break;
    case Command::Convergence: {
      add("g", cfg.g);
      add("levels", cfg.levels);
      add("tolerance", cfg.tolerance);
      std::string t;
      for (int n : cfg.truncations) t += (t.empty() ? "" : " ") + std::to_string(n);
      add("truncations", t);
      break;
    }
  }
  return r;
}

std::vector<int> default_truncations(int nMax) {
  std::vector<int> t;
  for (int n = 20; n < nMax; n += 10) t.push_back(n);
  t.push_back(nMax);
  return t;
}

int cmd_spectrum(const RunConfig& cfg, const Output& o, std::ostream& err) {
  std::vector<SpectrumRow> rows;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    SparseComplexMatrix block = build_block(ModelSpec{o.model, cfg.g, p, TruncationScheme{cfg.nMax}});
    for (const Complex& v : eigenvalues(block, false).values) rows.push_back({0, p, v});
  }
  std::sort(rows.begin(), rows.end(), [](const SpectrumRow& a, const SpectrumRow& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  rows.resize(static_cast<std::size_t>(cfg.levels));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<int>(i) + 1;

  std::ostringstream csv;
  write_spectrum_csv(rows, o.record, csv);
  o.write("spectrum.csv", csv.str());
  o.write_metadata();

  if (cfg.checkConvergence) {
    ConvergenceTable t = convergence_study(o.model, cfg.g, static_cast<std::size_t>(cfg.levels),
                                           {cfg.nMax - 4, cfg.nMax}, cfg.tolerance);
    if (!t.convergedAt) {
      err << fmt::format("not converged: lowest {} levels move by {:.3g} between n-max {} and {}\n", cfg.levels,
                         t.rows.back().change.value_or(0.0), cfg.nMax - 4, cfg.nMax);
      return kUnconverged;
    }
  }
  return kOk;
}

int cmd_perturb(const RunConfig& cfg, const Output& o) {
  SeriesOptions opts;
  opts.floatFallback = cfg.floatFallback;
  o.write("series.json", series_json(effective_series(o.model, cfg.level, cfg.order, opts), o.record));
  o.write_metadata();
  return kOk;
}

int cmd_pade(const RunConfig& cfg, const Output& o) {
  SeriesOptions opts;
  opts.floatFallback = cfg.floatFallback;
  std::vector<PadeReport> reports;
  for (auto& s : effective_series(o.model, cfg.level, series_order(cfg), opts)) {
    PadeReport r{s, build_pade(s, cfg.L, cfg.M), {}, {}, {}};
    for (double g : cfg.eval) r.evaluations.emplace_back(g, evaluate(r.approx, g));
    if (cfg.poles) {
      r.poleInterval = *cfg.poles;
      r.poles = real_poles(r.approx, cfg.poles->first, cfg.poles->second);
    }
    reports.push_back(std::move(r));
  }
  o.write("approximants.json", pade_json(reports, o.record));
  o.write_metadata();
  return kOk;
}

SweepConfig sweep_config(const RunConfig& cfg, Model m) {
  SweepConfig s;
  s.which = m;
  s.gMin = cfg.gMin.value_or(0.0);
  s.gMax = default_g_max(cfg, m);
  s.initialStep = default_step(cfg);
  s.trunc = TruncationScheme{cfg.nMax};
  s.overlapThreshold = cfg.overlapThreshold;
  s.maxLevel = cfg.maxLevel;
  s.maxRefinements = cfg.maxRefinements;
  s.threads = cfg.threads;
  return s;
}

int report_broken(const SweepResult& r, std::ostream& err) {
  if (r.brokenSamples == 0) return kOk;
  err << fmt::format("{} samples could not be matched to a branch\n", r.brokenSamples);
  return kSampleFailure;
}

int cmd_sweep(const RunConfig& cfg, const Output& o, std::ostream& err) {
  SweepResult result = run_sweep(sweep_config(cfg, o.model));
  const bool files = o.to_files();
  if (files ? has_format(cfg, "csv", {"csv", "json"}) : cfg.report == "branches") {
    std::ostringstream csv;
    write_branches_csv(result.branches, o.record, csv);
    o.write("branches.csv", csv.str());
  }
  if (files ? has_format(cfg, "json", {"csv", "json"}) : cfg.report == "crossings")
    o.write("crossings.json", crossings_json(detect_crossings(result), o.record));
  o.write_metadata();
  return report_broken(result, err);
}

std::vector<PadeCurve> figure_pade_curves(const RunConfig& cfg, Model m, double gMax, std::ostream& err) {
  std::vector<PadeCurve> curves;
  if (cfg.padeOrder == 0) return curves;
  SeriesOptions opts;
  opts.floatFallback = true;
  const int half = cfg.padeOrder / 2;
  for (int n = 0; n <= cfg.maxLevel; ++n) {
    for (auto& s : effective_series(m, n, cfg.padeOrder, opts)) {
      PadeCurve c;
      c.label = s.label;
      try {
        PadeApprox p = build_pade(s, half, half);
        for (int i = 0; i <= kFigureSamples; ++i) {
          double g = gMax * i / kFigureSamples;
          c.g.push_back(g);
          c.values.push_back(evaluate(p, g));
        }
      } catch (const PadeError& e) {
        err << fmt::format("warning: no [{}/{}] approximant for {}: {}\n", half, half, to_string(s.label), e.what());
        continue;
      }
      curves.push_back(std::move(c));
    }
  }
  return curves;
}

int cmd_figures(const RunConfig& cfg, const Output& o, std::ostream& err) {
  const bool realPart = cfg.figure % 2 == 1;
  SweepConfig sc = sweep_config(cfg, o.model);
  SweepResult result = run_sweep(sc);

  std::ostringstream csv;
  write_branches_csv(result.branches, o.record, csv);
  const std::string stem = fmt::format("figure{}", cfg.figure);
  if (has_format(cfg, "csv", {"csv", "svg"})) o.write(stem + ".csv", csv.str());

  std::vector<PadeCurve> curves;
  if (realPart) {
    curves = figure_pade_curves(cfg, o.model, sc.gMax, err);
    if (!curves.empty() && has_format(cfg, "csv", {"csv", "svg"}) && o.to_files()) {
      std::ostringstream pc;
      write_pade_csv(curves, o.record, pc);
      o.write(stem + "_pade.csv", pc.str());
    }
  }

  if (has_format(cfg, "svg", {"csv", "svg"})) {
    Plot plot;
    plot.title = fmt::format("{}: {} part of the energies", std::string(to_string(o.model)), realPart ? "real" : "imaginary");
    plot.xLabel = "g";
    plot.yLabel = realPart ? "Re E" : "Im E";
    plot.xMin = sc.gMin;
    plot.xMax = sc.gMax;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& b : result.branches)
      for (const auto& s : b.samples) {
        if (s.g < sc.gMin) continue;
        const double y = realPart ? s.value.real() : s.value.imag();
        plot.points.push_back({s.g, y, b.parity()});
        lo = first ? y : std::min(lo, y);
        hi = first ? y : std::max(hi, y);
        first = false;
      }
    const double pad = std::max(0.05 * (hi - lo), 0.5);
    plot.yMin = std::floor(lo - pad);
    plot.yMax = std::ceil(hi + pad);
    for (const auto& c : curves) {
      PlotLine line;
      for (std::size_t i = 0; i < c.g.size(); ++i) {
        line.x.push_back(c.g[i]);
        line.y.push_back(c.values[i].nearPole ? std::nan("") : c.values[i].value);
      }
      plot.lines.push_back(std::move(line));
    }
    o.write(stem + ".svg", render_svg(plot));
  }
  o.write_metadata();
  return report_broken(result, err);
}

int cmd_convergence(const RunConfig& cfg, const Output& o, std::ostream& err) {
  ConvergenceTable t = convergence_study(o.model, cfg.g, static_cast<std::size_t>(cfg.levels), cfg.truncations.empty() ? default_truncations(cfg.nMax) : cfg.truncations, cfg.tolerance);
  if (has_format(cfg, "json", {"json"})) o.write("convergence.json", convergence_json(t, o.record));
  if (has_format(cfg, "csv", {"json"})) {
    std::ostringstream csv;
    write_convergence_csv(t, o.record, csv);
    o.write("convergence.csv", csv.str());
  }
  o.write_metadata();
  if (!t.convergedAt) {
    err << "not converged within the requested truncations\n";
    return kUnconverged;
  }
  return kOk;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "spectrum") return Command::Spectrum;
  if (name == "perturb") return Command::Perturb;
  if (name == "pade") return Command::Pade;
  if (name == "sweep") return Command::Sweep;
  if (name == "figures") return Command::Figures;
  if (name == "convergence") return Command::Convergence;
  throw InvalidArgument("unknown command: " + name);
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Perturb: return "perturb";
    case Command::Pade: return "pade";
    case Command::Sweep: return "sweep";
    case Command::Figures: return "figures";
    case Command::Convergence: return "convergence";
  }
  return "unknown";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Model m = resolve_model(cfg);
    validate(cfg, m);
    RunConfig effective = cfg;
    if (effective.command == Command::Convergence && effective.truncations.empty())
      effective.truncations = default_truncations(cfg.nMax);
    Output o{effective, out, m, make_record(effective, m)};
    if (o.to_files()) {
      std::error_code ec;
      std::filesystem::create_directories(*cfg.outDir, ec);
      if (ec) throw IoError("cannot create " + cfg.outDir->string() + ": " + ec.message());
    }
    switch (cfg.command) {
      case Command::Spectrum: return cmd_spectrum(effective, o, err);
      case Command::Perturb: return cmd_perturb(effective, o);
      case Command::Pade: return cmd_pade(effective, o);
      case Command::Sweep: return cmd_sweep(effective, o, err);
      case Command::Figures: return cmd_figures(effective, o, err);
      case Command::Convergence: return cmd_convergence(effective, o, err);
    }
    return kFailure;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PerturbError& e) {
    err << "perturbation series failed: " << e.what() << '\n';
    if (e.kind() == PerturbError::Kind::UnsupportedField) err << "hint: rerun with --float-fallback\n";
    return kPerturbFailure;
  } catch (const PadeError& e) {
    err << "Pade approximant failed: " << e.what() << " (rank defect " << e.rankDefect() << ")\n";
    return kPadeFailure;
  } catch (const EigenError& e) {
    err << "diagonalization failed: " << e.what() << '\n';
    return kEigenFailure;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace ptspec::cli
