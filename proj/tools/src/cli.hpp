#pragma once

// Scenario configs and the four batch commands behind the wplab executable.
// Commands return a JSON body plus optional plot series; the executable adds
// the timing block and writes files.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "wplab/bounds.hpp"
#include "wplab/geometry.hpp"
#include "wplab/verify.hpp"

namespace wplab::cli {

enum class FieldSource
{
  Computed,  ///< Dirichlet eigenfield from the solver
  Analytic   ///< e^{-a t} with a = (log J)'/p on a warped line of constant drift
};

struct ScenarioConfig
{
  std::string name = "custom";
  ModelSpace space;
  double p = 2.0;
  /// Radius of the coordinate ball used by eigen and verify.
  double radius = 8.0;
  /// Explicit solve interval; overrides `radius` for eigen.
  std::optional<std::pair<double, double>> interval;
  /// Sweep radii, strictly increasing.
  std::vector<double> radii{2.0, 4.0, 8.0, 16.0};
  std::size_t npoints = 4001;
  std::optional<double> eps;
  double tol_rel = 1e-9;
  std::size_t max_iters = 20000;

  std::vector<std::string> checks;
  FieldSource field = FieldSource::Computed;
  std::vector<double> calibration_radii{4.0, 8.0, 16.0};
  std::vector<double> moser_radii{2.0, 4.0, 8.0};
  double moser_C_b0 = 1.0;
  std::size_t moser_kmax = 8;
  std::vector<double> liouville_radii{4.0, 8.0, 16.0, 32.0};
  LiouvilleOptions liouville;
  /// a, lambda, kappa for bound evaluation; p, n, m follow the scenario.
  BoundInputs bounds;

  /// Throws InvalidArgument, or OutOfRange for a lambda above ((m-1)/p)^p.
  void validate() const;
  SolverOptions solver_options() const;
  BoundInputs bound_inputs() const;
};

const std::vector<std::string>& check_names();
const std::vector<std::string>& builtin_scenario_names();
/// Throws InvalidArgument for an unknown name.
ScenarioConfig builtin_scenario(const std::string& name);

/// Fields absent from `j` keep the values of `base`.
ScenarioConfig config_from_json(const nlohmann::json& j, ScenarioConfig base = {});
nlohmann::json config_to_json(const ScenarioConfig& config);

struct PlotSeries
{
  std::string file;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> rows;
};

struct RunReport
{
  nlohmann::json body;
  int exit_code = 0;
  std::vector<PlotSeries> plots;
};

RunReport cmd_eigen(const ScenarioConfig& config);
RunReport cmd_sweep(const ScenarioConfig& config);
/// Throws OutOfRange when lambda exceeds ((m-1)/p)^p.
RunReport cmd_bounds(const BoundInputs& inputs);
RunReport cmd_verify(const ScenarioConfig& config);

/// Two-column TSV files with a '#' header line, one per series.
void write_plot_data(const RunReport& report, const std::filesystem::path& dir);

}  // namespace wplab::cli
