#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace ptspec::cli;
  CLI::App app{"Spectra of two-dimensional PT-symmetric oscillators"};
  app.set_config("--config", "", "key=value file supplying defaults; flags override it");

  RunConfig cfg;
  std::string command, model, outDir, poles;
  app.add_option("command", command, "spectrum | perturb | pade | sweep | figures | convergence")
      ->required()
      ->check(CLI::IsMember({"spectrum", "perturb", "pade", "sweep", "figures", "convergence"}));
  app.add_option("--model", model, "cubic12 | henonHeiles");
  app.add_option("--g", cfg.g, "coupling constant");
  app.add_option("--n-max", cfg.nMax, "basis truncation: nx + ny <= n-max");
  app.add_option("--levels", cfg.levels, "number of eigenvalues");
  app.add_flag("--check-convergence", cfg.checkConvergence, "fail when n-max - 4 and n-max disagree");
  app.add_option("--tol", cfg.tolerance, "convergence tolerance");
  app.add_option("--truncations", cfg.truncations, "truncations for the convergence study")->delimiter(',');
  app.add_option("--level", cfg.level, "unperturbed level n");
  app.add_option("--order", cfg.order, "highest power of g");
  app.add_flag("--float-fallback", cfg.floatFallback, "use high-precision floats when exact arithmetic is impossible");
  app.add_option("--L", cfg.L, "numerator degree");
  app.add_option("--M", cfg.M, "denominator degree");
  app.add_option("--eval", cfg.eval, "points at which to evaluate the approximant")->delimiter(',');
  app.add_option("--poles", poles, "interval a,b in which to list real poles");
  app.add_option("--g-min", cfg.gMin, "start of the reported g range");
  app.add_option("--g-max", cfg.gMax, "end of the g range");
  app.add_option("--step", cfg.step, "initial g step");
  app.add_option("--max-level", cfg.maxLevel, "track every branch of levels 0..max-level");
  app.add_option("--overlap", cfg.overlapThreshold, "minimum eigenvector overlap before refining");
  app.add_option("--max-refinements", cfg.maxRefinements, "step halvings per interval");
  app.add_option("--report", cfg.report, "crossings | branches (stdout output of sweep)");
  app.add_option("--figure", cfg.figure, "figure id 1-4");
  app.add_option("--pade-order", cfg.padeOrder, "series order behind the figure approximants; 0 disables");
  app.add_option("--threads", cfg.threads, "worker threads (default: PTSPEC_THREADS or all cores)");
  app.add_option("--out", outDir, "output directory; results go to stdout when omitted");
  app.add_option("--format", cfg.formats, "output formats: csv, json, svg")->delimiter(',');

  try {
    app.parse(argc, argv);
    cfg.command = parse_command(command);
    if (!model.empty()) cfg.model = ptspec::parse_model(model);
    if (!outDir.empty()) cfg.outDir = outDir;
    if (!poles.empty()) {
      auto comma = poles.find(',');
      if (comma == std::string::npos) throw CLI::ValidationError("--poles", "expected a,b");
      cfg.poles = std::pair{std::stod(poles.substr(0, comma)), std::stod(poles.substr(comma + 1))};
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return run(cfg, std::cout, std::cerr);
}
