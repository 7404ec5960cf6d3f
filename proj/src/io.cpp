#include "dipolar/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dipolar::io {

using nlohmann::json;

json config_to_json(const geometry::ShapeConfig& config) {
  json comps = json::array();
  for (const auto& c : config.components) {
    json jc;
    jc["cos_x"] = c.curve.cos_x;
    jc["sin_x"] = c.curve.sin_x;
    jc["cos_y"] = c.curve.cos_y;
    jc["sin_y"] = c.curve.sin_y;
    if (c.placement.is_far())
      jc["placement"] = "far";
    else
      jc["placement"] = {c.placement.offset.x, c.placement.offset.y};
    comps.push_back(std::move(jc));
  }
  return json{{"components", comps}};
}

geometry::ShapeConfig config_from_json(const json& j) {
  geometry::ShapeConfig config;
  for (const auto& jc : j.at("components")) {
    geometry::Component c;
    c.curve.cos_x = jc.at("cos_x").get<std::vector<double>>();
    c.curve.sin_x = jc.at("sin_x").get<std::vector<double>>();
    c.curve.cos_y = jc.at("cos_y").get<std::vector<double>>();
    c.curve.sin_y = jc.at("sin_y").get<std::vector<double>>();
    const auto& jp = jc.at("placement");
    if (jp.is_string() && jp.get<std::string>() == "far")
      c.placement = geometry::Placement::far();
    else
      c.placement = geometry::Placement::at({jp.at(0).get<double>(), jp.at(1).get<double>()});
    config.components.push_back(std::move(c));
  }
  return config;
}

geometry::ShapeConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open curve file: " + path);
  json j;
  in >> j;
  return config_from_json(j);
}

void save_config(const geometry::ShapeConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write curve file: " + path);
  out << config_to_json(config).dump(2) << "\n";
}

json ell_to_json(const kernels::LayerSep& ell) {
  if (ell.is_finite()) return ell.value();
  return "inf";
}

json breakdown_to_json(const energy::EnergyBreakdown& breakdown,
                       const std::optional<kernels::KernelParams>& params) {
  json j;
  j["perimeter"] = breakdown.perimeter_term;
  j["nonlocal"] = breakdown.nonlocal_term;
  j["total"] = breakdown.total;
  j["evaluator"] = energy::evaluator_name(breakdown.evaluator);
  if (params) {
    j["params"] = {{"lambda", params->lambda},
                   {"delta", params->delta},
                   {"ell", ell_to_json(params->ell)}};
  }
  return j;
}

json ansatz_to_json(const ansatz::AnsatzResult& r) {
  json j;
  if (r.shape == ansatz::AnsatzResult::Shape::Disk) {
    j["shape"] = "disk";
    j["r"] = r.r;
  } else {
    j["shape"] = "stripe";
    j["a"] = r.a;
    j["m"] = r.m;
  }
  j["ell"] = ell_to_json(r.ell);
  j["energy"] = r.energy;
  j["energy_per_mass"] = r.energy_per_mass;
  return j;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

}  // namespace

CsvWriter::CsvWriter(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot write csv file: " + path);
  stream_ = f;
}

CsvWriter::~CsvWriter() { std::fclose(static_cast<FILE*>(stream_)); }

void CsvWriter::row(const std::vector<std::string>& fields) {
  FILE* f = static_cast<FILE*>(stream_);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) std::fputc(',', f);
    const std::string q = csv_quote(fields[i]);
    std::fwrite(q.data(), 1, q.size(), f);
  }
  std::fputs("\r\n", f);
}

std::string winner_name(phase::PhasePoint::Winner w) {
  switch (w) {
    case phase::PhasePoint::Winner::Disk: return "DISK";
    case phase::PhasePoint::Winner::Stripe: return "STRIPE";
    default: return "DEGENERATE";
  }
}

void write_phase_csv(const std::string& path, const std::vector<phase::PhasePoint>& rows) {
  CsvWriter csv(path);
  csv.row({"ell", "a_opt", "f_disk_min", "f_stripe", "winner", "M_est"});
  for (const auto& p : rows) {
    csv.row({format_double(p.ell), format_double(p.a_opt), format_double(p.f_disk_min),
             format_double(p.f_stripe_at_a_opt), winner_name(p.winner),
             p.mass_estimate ? format_double(*p.mass_estimate) : ""});
  }
}

namespace {

struct Box {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  void add(double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

void svg_curves(const std::string& path, const std::vector<std::vector<geometry::Vec2>>& curves,
                const std::vector<std::string>& colors) {
  Box box;
  for (const auto& c : curves)
    for (const auto& p : c) box.add(p.x, p.y);
  const double span = std::max(box.x1 - box.x0, box.y1 - box.y0);
  const double pad = 0.05 * (span > 0 ? span : 1.0);
  const double scale = 560.0 / (span + 2 * pad);
  auto X = [&](double x) { return (x - box.x0 + pad) * scale + 20.0; };
  auto Y = [&](double y) { return 580.0 - ((y - box.y0 + pad) * scale + 20.0); };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svg file: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const std::string color =
        i < colors.size() ? colors[i] : kPalette[i % (sizeof kPalette / sizeof *kPalette)];
    out << "<polygon fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : curves[i]) out << X(p.x) << "," << Y(p.y) << " ";
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

void svg_chart(const std::string& path, const std::vector<Series>& series,
               const std::string& x_label, const std::string& y_label) {
  Box box;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) box.add(s.x[i], s.y[i]);
  if (box.x1 <= box.x0) box.x1 = box.x0 + 1;
  if (box.y1 <= box.y0) box.y1 = box.y0 + 1;
  const double W = 640, H = 480, ml = 70, mr = 20, mt = 20, mb = 50;
  auto X = [&](double x) { return ml + (x - box.x0) / (box.x1 - box.x0) * (W - ml - mr); };
  auto Y = [&](double y) { return H - mb - (y - box.y0) / (box.y1 - box.y0) * (H - mt - mb); };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svg file: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
      << "\" height=\"" << H << "\">\n";
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
      << H - mt - mb << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = box.x0 + k * (box.x1 - box.x0) / 4;
    const double yv = box.y0 + k * (box.y1 - box.y0) / 4;
    out << "<text x=\"" << X(xv) << "\" y=\"" << H - mb + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << format_double(xv).substr(0, 8)
        << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << Y(yv) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << format_double(yv).substr(0, 8)
        << "</text>\n";
  }
  out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (mt + H - mb) / 2 << ")\">" << y_label << "</text>\n";
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const std::string color =
        !s.color.empty() ? s.color : kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) out << X(s.x[i]) << "," << Y(s.y[i]) << " ";
    out << "\"/>\n";
    out << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 + 16 * si
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color << "\">" << s.label
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace dipolar::io
