#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "export.hpp"
#include "svg.hpp"

using namespace ptspec;
using namespace ptspec::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cfg(const RunConfig& cfg) {
  std::ostringstream out, err;
  int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

RunConfig figure_config(int figure, int n, int maxLevel, double gMax) {
  RunConfig c;
  c.command = Command::Figures;
  c.figure = figure;
  c.nMax = n;
  c.maxLevel = maxLevel;
  c.gMax = gMax;
  c.padeOrder = 12;
  return c;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("unperturbed spectrum") {
    RunConfig c;
    c.command = Command::Spectrum;
    c.g = 0;
    c.nMax = 20;
    c.levels = 6;
    Result r = run_cfg(c);
    REQUIRE(r.code == kOk);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 6);
    const char* expected[] = {"2", "4", "4", "6", "6", "6"};
    for (int i = 0; i < 6; ++i) CHECK(rows[i][2] == expected[i]);
    CHECK(r.out.find("# n_max=20") != std::string::npos);
  }

  TEST_CASE("ground state at small coupling") {
    RunConfig c;
    c.command = Command::Spectrum;
    c.g = 0.1;
    c.nMax = 40;
    c.levels = 1;
    c.checkConvergence = true;
    Result r = run_cfg(c);
    REQUIRE(r.code == kOk);
    CHECK(std::stod(csv_rows(r.out)[0][2]) == doctest::Approx(2 + 5.0 / 48 * 0.01).epsilon(1e-5));
  }

  TEST_CASE("series export keeps exact strings") {
    RunConfig c;
    c.command = Command::Perturb;
    c.level = 0;
    c.order = 8;
    Result r = run_cfg(c);
    REQUIRE(r.code == kOk);
    CHECK(r.out.find("\"5/48\"") != std::string::npos);
    CHECK(r.out.find("\"-223/6912\"") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    RunConfig c;
    c.command = Command::Perturb;
    c.model = Model::Cubic12;
    c.level = 4;
    c.order = 4;
    CHECK(run_cfg(c).code == kPerturbFailure);
    c.floatFallback = true;
    CHECK(run_cfg(c).code == kOk);

    RunConfig bad;
    bad.command = Command::Spectrum;
    bad.levels = 0;
    CHECK(run_cfg(bad).code == kUsage);

    RunConfig fig = figure_config(3, 10, 2, 1.0);
    fig.model = Model::Cubic12;
    CHECK(run_cfg(fig).code == kUsage);

    RunConfig pade;
    pade.command = Command::Pade;
    pade.L = 1;
    pade.M = 3;
    pade.level = 0;
    CHECK(run_cfg(pade).code == kPadeFailure);

    RunConfig conv;
    conv.command = Command::Convergence;
    conv.g = 2.0;
    conv.levels = 10;
    conv.truncations = {6, 8};
    CHECK(run_cfg(conv).code == kUnconverged);

    RunConfig io;
    io.command = Command::Spectrum;
    io.outDir = "/proc/ptspec-cannot-exist";
    CHECK(run_cfg(io).code == kIoFailure);
  }

  TEST_CASE("pade evaluation") {
    RunConfig c;
    c.command = Command::Pade;
    c.level = 0;
    c.L = 8;
    c.M = 8;
    c.eval = {1.0};
    c.poles = std::pair{0.0, 6.0};
    Result r = run_cfg(c);
    REQUIRE(r.code == kOk);
    CHECK(r.out.find("\"near_pole\": false") != std::string::npos);
    CHECK(r.out.find("\"real_poles\"") != std::string::npos);
  }

  TEST_CASE("figure output is byte-stable and consistent") {
    auto dir = std::filesystem::temp_directory_path() / "ptspec_cli_test";
    std::filesystem::remove_all(dir);
    for (const char* sub : {"a", "b"}) {
      RunConfig c = figure_config(1, 16, 2, 1.0);
      c.outDir = dir / sub;
      REQUIRE(run_cfg(c).code == kOk);
    }
    for (const char* f : {"figure1.csv", "figure1.svg", "figure1_pade.csv"})
      CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    CHECK(std::filesystem::exists(dir / "a" / "metadata.json"));

    auto rows = csv_rows(slurp(dir / "a" / "figure1.csv"));
    std::vector<double> atZero;
    for (const auto& r : rows)
      if (std::stod(r[0]) == 0.0) atZero.push_back(std::stod(r[4]));
    std::sort(atZero.begin(), atZero.end());
    CHECK(atZero == std::vector<double>{2, 4, 4, 6, 6, 6});
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("imaginary parts vanish below the first exceptional point") {
    // Level 3 holds the partner of the first level-2 branch that turns complex.
    RunConfig c = figure_config(2, 20, 3, 2.0);
    c.formats = {"csv"};
    Result r = run_cfg(c);
    REQUIRE(r.code == kOk);
    RunConfig s;
    s.command = Command::Sweep;
    s.nMax = 20;
    s.maxLevel = 3;
    s.gMax = 2.0;
    s.step = 0.05;
    Result cr = run_cfg(s);
    REQUIRE(cr.code == kOk);
    auto pos = cr.out.find("\"exceptional_point\"");
    REQUIRE(pos != std::string::npos);
    const double first = std::stod(cr.out.substr(cr.out.find("\"g\": \"", pos) + 6));
    CHECK(first > 1.0);
    // Levels above 2 may pair with untracked level-4 branches earlier.
    for (const auto& row : csv_rows(r.out))
      if (std::stoi(row[2]) <= 2 && std::stod(row[0]) < first) CHECK(std::stod(row[5]) == 0.0);
  }

  TEST_CASE("degenerate Henon-Heiles pairs share their curves") {
    RunConfig c = figure_config(3, 24, 3, 0.4);
    c.formats = {"csv"};
    Result r = run_cfg(c);
    REQUIRE(r.code == kOk);
    std::map<std::pair<std::string, std::string>, double> value;  // (g, label) -> Re E
    for (const auto& row : csv_rows(r.out)) value[{row[0], row[2] + row[3]}] = std::stod(row[4]);
    for (const auto& [key, v] : value) {
      if (key.second == "11") CHECK(std::abs(v - value.at({key.first, "10"})) < 1e-8);
      if (key.second == "22") CHECK(std::abs(v - value.at({key.first, "21"})) < 1e-8);
      if (key.second == "31") CHECK(std::abs(v - value.at({key.first, "30"})) < 1e-8);
    }
  }

  TEST_CASE("svg rendering") {
    Plot p;
    p.title = "a < b";
    p.xMax = 2;
    p.yMax = 3;
    p.points = {{1, 1, Parity::Even}, {1, 2, Parity::Odd}, {5, 5, Parity::Odd}};
    p.lines = {{{0, 1, 2}, {0, std::nan(""), 2}}};
    std::string s = render_svg(p);
    CHECK(s == render_svg(p));
    CHECK(s.find("a &lt; b") != std::string::npos);
    CHECK(s.find("crimson") != std::string::npos);
    CHECK(s.find("<polyline") != std::string::npos);
    CHECK(s.rfind("</svg>\n") == s.size() - 7);
  }

  TEST_CASE("number formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(2) == "2");
    CHECK(format_double(-1e-20) == "-9.9999999999999995e-21");
  }
}
