#include "optdesign/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "optdesign/errors.hpp"

namespace optdesign {

namespace {

using nlohmann::json;

json design_json(const Design& design) {
  json points = json::array();
  for (const SupportPoint& p : design.points()) points.push_back({{"x", p.x}, {"w", p.w}});
  return {{"points", std::move(points)},
          {"space", {{"lo", design.space().lo()}, {"hi", design.space().hi()}}}};
}

json report_json(const DerivativeReport& report) {
  return {{"min_dd", report.min_dd},
          {"argmin_x", report.argmin_x},
          {"x_grid", report.x_grid},
          {"dd_values", report.dd_values}};
}

std::string cell(const std::optional<double>& v, int decimals) {
  return v ? format_fixed(*v, decimals) : std::string();
}

// Shortest round-trip representation.
std::string full(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string design_to_json(const Design& design) { return design_json(design).dump(2); }

Design design_from_json(std::string_view text, const DesignSpace* fallback) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("design JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("design")) doc = doc["design"];
  try {
    if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
      throw InvalidArgument("design JSON: expected an object with a \"points\" array");
    }
    std::optional<DesignSpace> space;
    if (doc.contains("space")) {
      space.emplace(doc["space"].at("lo").get<double>(), doc["space"].at("hi").get<double>());
    } else if (fallback) {
      space = *fallback;
    } else {
      throw InvalidArgument("design JSON: missing \"space\"");
    }
    std::vector<SupportPoint> points;
    for (const json& p : doc["points"]) {
      points.push_back({p.at("x").get<double>(), p.at("w").get<double>()});
    }
    return make_design(points, *space);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("design JSON: ") + e.what());
  }
}

std::string result_to_json(const OptimizeResult& result, const Model& model,
                           const CriterionSpec& criterion) {
  json doc;
  doc["model"] = model.name();
  doc["criterion"] = std::string(criterion.name());
  doc["design"] = design_json(result.design);
  doc["criterion_value"] = result.criterion_value;
  doc["converged"] = result.converged;
  doc["status"] = result.converged ? "certified" : "best-found";
  doc["collapsed"] = result.collapsed;
  doc["iterations"] = result.iterations;
  doc["a"] = result.design.lowest().x / model.unit();
  doc["p"] = result.design.lowest().w;
  if (result.derivative_report) {
    doc["derivative_report"] = {{"min_dd", result.derivative_report->min_dd},
                                {"argmin_x", result.derivative_report->argmin_x}};
  }
  return doc.dump(2);
}

std::string derivative_report_to_json(const DerivativeReport& report,
                                      const CriterionSpec& criterion, double criterion_value,
                                      bool certified) {
  json doc = report_json(report);
  doc["criterion"] = std::string(criterion.name());
  doc["criterion_value"] = criterion_value;
  doc["certified"] = certified;
  return doc.dump(2);
}

std::string efficiency_report_to_json(const EfficiencyReport& report) {
  json entries = json::array();
  for (const EfficiencyEntry& e : report.entries) {
    json entry = {{"label", e.label}, {"phi_d", e.phi_d}, {"phi_r", e.phi_r},
                  {"eff_d", e.eff_d}, {"eff_r", e.eff_r}};
    entry["correlation"] = e.correlation ? json(*e.correlation) : json(nullptr);
    entries.push_back(std::move(entry));
  }
  return json{{"phi_d_star", report.phi_d_star},
              {"phi_r_star", report.phi_r_star},
              {"entries", std::move(entries)}}
      .dump(2);
}

std::string slr_table_csv(std::span<const SlrTableRow> rows) {
  std::string out = "a,p_R,p_r2,eff_d_r,eff_d_r2,eff_r_d,eff_r_r2,corr_d,corr_r,corr_r2\n";
  for (const SlrTableRow& r : rows) {
    out += full(r.a) + ',' + format_fixed(r.p_r, 3) + ',' + cell(r.p_r2, 3) + ',' +
           format_fixed(r.eff_d_r, 3) + ',' + format_fixed(r.eff_d_r2, 3) + ',' +
           format_fixed(r.eff_r_d, 3) + ',' + format_fixed(r.eff_r_r2, 3) + ',' +
           format_fixed(r.corr_d, 3) + ',' + format_fixed(r.corr_r, 3) + ',' +
           cell(r.corr_r2, 3) + '\n';
  }
  return out;
}

std::string mm_designs_csv(std::span<const MmDesignRow> rows) {
  std::string out = "eps,criterion,a,p\n";
  for (const MmDesignRow& r : rows) {
    out += full(r.eps) + ',' + std::string(to_string(r.criterion)) + ',' + format_fixed(r.a, 2) +
           ',' + format_fixed(r.p, 2) + '\n';
  }
  return out;
}

std::string mm_efficiencies_csv(std::span<const MmEfficiencyRow> rows) {
  std::string out = "eps,criterion,eff_d,eff_sa,eff_r,eff_em,eff_r2,r2\n";
  for (const MmEfficiencyRow& r : rows) {
    out += full(r.eps) + ',' + std::string(to_string(r.criterion)) + ',' + cell(r.eff_d, 2) +
           ',' + cell(r.eff_sa, 2) + ',' + cell(r.eff_r, 2) + ',' + cell(r.eff_em, 2) + ',' +
           cell(r.eff_r2, 2) + ',' + cell(r.r2, 2) + '\n';
  }
  return out;
}

std::string front_csv(std::span<const FrontPoint> points, double unit) {
  std::string out = "eff_d,eff_r,p,a,r2\n";
  for (const FrontPoint& f : points) {
    out += format_fixed(f.eff_d, 6) + ',' + format_fixed(f.eff_r, 6) + ',' +
           format_fixed(f.design.highest().w, 6) + ',' +
           format_fixed(f.design.lowest().x / unit, 6) + ',' + format_fixed(f.r2, 6) + '\n';
  }
  return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "p,phi_d,phi_r,phi_r2,corr\n";
  for (const SweepRow& r : rows) {
    out += full(r.p) + ',' + full(r.phi_d) + ',' + full(r.phi_r) + ',' + full(r.phi_r2) + ',' +
           full(r.corr) + '\n';
  }
  return out;
}

std::string compound_sweep_csv(std::span<const CompoundRow> rows, double unit) {
  std::string out = "lambda,a,p,value,eff_d,eff_r,corr,converged\n";
  for (const CompoundRow& r : rows) {
    out += full(r.lambda) + ',' + full(r.design.lowest().x / unit) + ',' +
           full(r.design.lowest().w) + ',' + full(r.value) + ',' + full(r.eff_d) + ',' +
           full(r.eff_r) + ',' + full(r.correlation) + ',' + (r.converged ? "1" : "0") + '\n';
  }
  return out;
}

std::string derivative_report_csv(const DerivativeReport& report) {
  std::string out = "x,dd\n";
  for (std::size_t i = 0; i < report.x_grid.size(); ++i) {
    out += full(report.x_grid[i]) + ',' + full(report.dd_values[i]) + '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace optdesign
