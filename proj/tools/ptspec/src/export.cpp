#include "export.hpp"

#include <fmt/format.h>

#include <ostream>

#include "json.hpp"

namespace ptspec::cli {

using Json = nlohmann::ordered_json;

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::string parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

std::string to_string(CrossingKind kind) {
  switch (kind) {
    case CrossingKind::RealCrossing: return "real_crossing";
    case CrossingKind::ExceptionalPoint: return "exceptional_point";
    case CrossingKind::MultiBranch: return "multi_branch";
  }
  return "unknown";
}

namespace {

Json config_json(const ConfigRecord& config) {
  Json j = Json::object();
  for (const auto& [k, v] : config) j[k] = v;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int parity_int(Parity p) { return p == Parity::Even ? 1 : -1; }

}  // namespace

void write_config_header(const ConfigRecord& config, std::ostream& out) {
  for (const auto& [k, v] : config) out << "# " << k << '=' << v << '\n';
}

void write_branches_csv(const std::vector<Branch>& branches, const ConfigRecord& config, std::ostream& out) {
  write_config_header(config, out);
  out << "g,parity,label_n,label_k,re_E,im_E\n";
  for (const auto& b : branches)
    for (const auto& s : b.samples)
      out << format_double(s.g) << ',' << parity_int(b.parity()) << ',' << b.label.n << ',' << b.label.k << ','
          << format_double(s.value.real()) << ',' << format_double(s.value.imag()) << '\n';
}

void write_pade_csv(const std::vector<PadeCurve>& curves, const ConfigRecord& config, std::ostream& out) {
  write_config_header(config, out);
  out << "g,parity,label_n,label_k,pade_E,near_pole\n";
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.g.size(); ++i)
      out << format_double(c.g[i]) << ',' << parity_int(c.label.parity) << ',' << c.label.n << ',' << c.label.k << ','
          << format_double(c.values[i].value) << ',' << (c.values[i].nearPole ? 1 : 0) << '\n';
}

void write_spectrum_csv(const std::vector<SpectrumRow>& rows, const ConfigRecord& config, std::ostream& out) {
  write_config_header(config, out);
  out << "rank,parity,re_E,im_E\n";
  for (const auto& r : rows)
    out << r.rank << ',' << parity_int(r.parity) << ',' << format_double(r.value.real()) << ','
        << format_double(r.value.imag()) << '\n';
}

std::string series_json(const std::vector<EnergySeries>& series, const ConfigRecord& config) {
  Json root;
  root["config"] = config_json(config);
  Json list = Json::array();
  for (const auto& s : series) {
    Json b;
    b["label"] = ptspec::to_string(s.label);
    b["n"] = s.label.n;
    b["k"] = s.label.k;
    b["parity"] = parity_name(s.label.parity);
    b["exact"] = s.exact;
    b["field_radicand"] = s.fieldRadicand.get_str();
    b["shared_tail"] = s.sharedTail;
    b["max_order"] = s.maxOrder;
    Json coeffs = Json::array();
    for (std::size_t j = 0; j < s.size(); ++j) {
      Json c;
      c["power"] = 2 * j;
      c["value"] = s.exact ? s.coeffs[j].to_string() : s.floatCoeffs[j].to_string(60);
      coeffs.push_back(c);
    }
    b["coefficients"] = coeffs;
    list.push_back(b);
  }
  root["branches"] = list;
  return dump(root);
}

std::string pade_json(const std::vector<PadeReport>& reports, const ConfigRecord& config) {
  Json root;
  root["config"] = config_json(config);
  root["variable"] = "g";
  Json list = Json::array();
  for (const auto& r : reports) {
    Json a;
    a["label"] = ptspec::to_string(r.series.label);
    a["L"] = r.approx.L;
    a["M"] = r.approx.M;
    a["exact_solve"] = r.approx.exactSolve;
    Json num = Json::array(), den = Json::array();
    for (const auto& x : r.approx.num) num.push_back(x.to_string(40));
    for (const auto& x : r.approx.den) den.push_back(x.to_string(40));
    a["numerator"] = num;
    a["denominator"] = den;
    Json evals = Json::array();
    for (const auto& [g, v] : r.evaluations) {
      Json e;
      e["g"] = format_double(g);
      e["value"] = format_double(v.value);
      e["near_pole"] = v.nearPole;
      evals.push_back(e);
    }
    a["evaluations"] = evals;
    Json poles = Json::array();
    for (double p : r.poles) poles.push_back(format_double(p));
    a["pole_interval"] = {format_double(r.poleInterval.first), format_double(r.poleInterval.second)};
    a["real_poles"] = poles;
    list.push_back(a);
  }
  root["approximants"] = list;
  return dump(root);
}

std::string crossings_json(const std::vector<CrossingEvent>& events, const ConfigRecord& config) {
  Json root;
  root["config"] = config_json(config);
  Json list = Json::array();
  for (const auto& e : events) {
    Json j;
    j["kind"] = to_string(e.kind);
    j["g"] = format_double(e.g);
    j["half_width"] = format_double(e.halfWidth);
    j["branch_a"] = ptspec::to_string(e.a);
    j["branch_b"] = ptspec::to_string(e.b);
    j["parities"] = {parity_name(e.a.parity), parity_name(e.b.parity)};
    j["ranks"] = {e.rankA, e.rankB};
    if (e.kind != CrossingKind::RealCrossing) j["entering"] = e.entering;
    if (e.kind == CrossingKind::ExceptionalPoint) j["sqrt_coefficient"] = format_double(e.sqrtCoefficient);
    if (e.kind == CrossingKind::MultiBranch) {
      Json m = Json::array();
      for (const auto& l : e.members) m.push_back(ptspec::to_string(l));
      j["members"] = m;
    }
    list.push_back(j);
  }
  root["events"] = list;
  return dump(root);
}

std::string convergence_json(const ConvergenceTable& table, const ConfigRecord& config) {
  Json root;
  root["config"] = config_json(config);
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    Json j;
    j["truncation"] = r.truncation;
    Json vals = Json::array();
    for (const auto& v : r.values) vals.push_back({format_double(v.real()), format_double(v.imag())});
    j["values"] = vals;
    j["change"] = r.change ? Json(format_double(*r.change)) : Json(nullptr);
    rows.push_back(j);
  }
  root["rows"] = rows;
  root["converged_at"] = table.convergedAt ? Json(*table.convergedAt) : Json(nullptr);
  return dump(root);
}

void write_convergence_csv(const ConvergenceTable& table, const ConfigRecord& config, std::ostream& out) {
  write_config_header(config, out);
  out << "truncation,level,re_E,im_E,change\n";
  for (const auto& r : table.rows)
    for (std::size_t i = 0; i < r.values.size(); ++i)
      out << r.truncation << ',' << i << ',' << format_double(r.values[i].real()) << ','
          << format_double(r.values[i].imag()) << ',' << (r.change ? format_double(*r.change) : "") << '\n';
}

std::string metadata_json(const ConfigRecord& config, Model which, const std::string& timestamp) {
  Json root;
  root["config"] = config_json(config);
  Json map = Json::array();
  for (const auto& [ours, conventional] : conventional_label_map(which))
    map.push_back({{"label", ours}, {"conventional_label", conventional}});
  root["label_map"] = map;
  root["timestamp"] = timestamp;
  return dump(root);
}

}  // namespace ptspec::cli
