#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "output.hpp"

namespace catalynet::app {

// One plotted panel. `x` names the abscissa column, `group` (optional) the
// column that separates curves, `y` the plotted ordinates. Surface panels
// use x and group as the two axes.
struct Panel {
  std::string name;  // e.g. "a"
  Table table;
  std::string x;
  std::string group;
  std::vector<std::string> y;
  bool surface = false;
};

struct FigureData {
  std::string id;
  std::string description;
  std::vector<Panel> panels;
  nlohmann::json fixed = nlohmann::json::object();
  // "solver" or "solver+quoted" (adjacent _solver/_quoted columns).
  std::string amplitude_mapping = "solver";
  nlohmann::json annotations = nlohmann::json::object();
};

const std::vector<std::string>& figure_ids();

// Computes every panel without touching the file system. Throws
// std::invalid_argument for an unknown id.
FigureData build_figure(const std::string& id);

// Writes <out_dir>/<id><panel>.csv per panel, <id>.json and <id>.gp.
// Returns the written paths.
std::vector<std::string> write_figure(const FigureData& fig, const std::string& out_dir);

nlohmann::json sidecar(const FigureData& fig, const std::vector<std::string>& csv_files);
std::string gnuplot_script(const FigureData& fig);

// Grids shared by the figure datasets.
namespace grids {
std::vector<double> theta();         // 0 .. 1.55, step 0.01
std::vector<double> theta_coop();    // 1.0 .. 1.55, step 0.005
std::vector<double> n_resource();    // 0.01 .. 10, 121 log-spaced points
std::vector<double> n_surface();     // 0.05 .. 3, 60 log-spaced points
std::vector<double> theta_surface(); // 0 .. 1.5, step 0.05
std::vector<double> eta();           // 0 .. 1, step 0.001
std::vector<double> eta_map();       // 0 .. 1, step 0.01
std::vector<double> phi();           // 0 .. 2 pi, 721 points
}  // namespace grids

}  // namespace catalynet::app
