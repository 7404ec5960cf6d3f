#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dipolar/ansatz.hpp"
#include "dipolar/energy.hpp"
#include "dipolar/geometry.hpp"
#include "dipolar/phase.hpp"

namespace dipolar::io {

// Curve exchange format:
// {"components": [{"cos_x": [...], "sin_x": [...], "cos_y": [...],
//                  "sin_y": [...], "placement": [x, y] | "far"}]}
nlohmann::json config_to_json(const geometry::ShapeConfig& config);
geometry::ShapeConfig config_from_json(const nlohmann::json& j);
geometry::ShapeConfig load_config(const std::string& path);
void save_config(const geometry::ShapeConfig& config, const std::string& path);

nlohmann::json breakdown_to_json(const energy::EnergyBreakdown& breakdown,
                                 const std::optional<kernels::KernelParams>& params);
nlohmann::json ansatz_to_json(const ansatz::AnsatzResult& result);
nlohmann::json ell_to_json(const kernels::LayerSep& ell);

// RFC 4180 CSV: fields with commas, quotes or newlines are quoted, embedded
// quotes doubled.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  void row(const std::vector<std::string>& fields);

 private:
  void* stream_;
};

std::string format_double(double v);

std::string winner_name(phase::PhasePoint::Winner w);

void write_phase_csv(const std::string& path, const std::vector<phase::PhasePoint>& rows);

// --- minimal SVG 1.1 emitters ---

struct Series {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<double> x, y;
};

// Polyline plot of closed curves (data units, equal axes).
void svg_curves(const std::string& path, const std::vector<std::vector<geometry::Vec2>>& curves,
                const std::vector<std::string>& colors = {});

// Line chart with axes and per-series legend.
void svg_chart(const std::string& path, const std::vector<Series>& series,
               const std::string& x_label, const std::string& y_label);

}  // namespace dipolar::io
