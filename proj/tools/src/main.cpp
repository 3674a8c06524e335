#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"
#include "wplab/errors.hpp"
#include "wplab/serialize.hpp"

namespace {

struct Options
{
  std::string config_path;
  std::string scenario;
  std::string plot_dir;
  std::string out_path;
  std::optional<std::size_t> npoints;
  std::optional<double> p;
  std::optional<int> n;
  std::optional<double> m;
  std::optional<double> a;
  std::optional<double> lambda;
  std::optional<double> kappa;
};

void add_scenario_flags(CLI::App* cmd, Options& o)
{
  cmd->add_option("--config", o.config_path, "JSON scenario config")->check(CLI::ExistingFile);
  cmd->add_option("--scenario", o.scenario, "builtin scenario name");
  cmd->add_option("--plot-data", o.plot_dir, "directory for TSV plot data");
  cmd->add_option("--npoints", o.npoints, "grid nodes per solve");
  cmd->add_option("--p", o.p, "p-Laplacian exponent");
  cmd->add_option("--out", o.out_path, "report path (default: stdout)");
}

wplab::cli::ScenarioConfig load_config(const Options& o)
{
  wplab::cli::ScenarioConfig config;
  if (!o.scenario.empty())
    config = wplab::cli::builtin_scenario(o.scenario);
  if (!o.config_path.empty()) {
    std::ifstream is(o.config_path);
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::exception& e) {
      throw wplab::InvalidArgument(o.config_path + ": " + e.what());
    }
    config = wplab::cli::config_from_json(j, std::move(config));
  }
  if (o.npoints)
    config.npoints = *o.npoints;
  if (o.p)
    config.p = *o.p;
  return config;
}

wplab::BoundInputs bound_inputs(const Options& o)
{
  wplab::BoundInputs in;
  if (!o.scenario.empty() || !o.config_path.empty())
    in = load_config(o).bound_inputs();
  if (o.p)
    in.p = *o.p;
  if (o.n)
    in.n = *o.n;
  if (o.m)
    in.m = *o.m;
  if (o.a)
    in.a = *o.a;
  if (o.lambda)
    in.lambda = *o.lambda;
  if (o.kappa)
    in.kappa = *o.kappa;
  return in;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Weighted p-Laplacian eigenvalue and gradient-estimate lab"};
  app.set_version_flag("--version", WPLAB_VERSION);
  app.require_subcommand(1);
  Options o;

  auto* eigen = app.add_subcommand("eigen", "first Dirichlet eigenpair on one ball");
  auto* sweep = app.add_subcommand("sweep", "eigenvalue against radius");
  auto* verify = app.add_subcommand("verify", "run the scenario's checks");
  auto* bounds = app.add_subcommand("bounds", "evaluate the closed-form bounds");
  for (auto* cmd : {eigen, sweep, verify, bounds})
    add_scenario_flags(cmd, o);
  bounds->add_option("--n", o.n, "topological dimension");
  bounds->add_option("--m", o.m, "Bakry-Emery dimension");
  bounds->add_option("--a", o.a, "linear growth rate of f");
  bounds->add_option("--lambda", o.lambda, "eigenvalue");
  bounds->add_option("--kappa", o.kappa, "curvature scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const auto start = std::chrono::steady_clock::now();
  wplab::cli::RunReport report;
  try {
    if (eigen->parsed())
      report = wplab::cli::cmd_eigen(load_config(o));
    else if (sweep->parsed())
      report = wplab::cli::cmd_sweep(load_config(o));
    else if (verify->parsed())
      report = wplab::cli::cmd_verify(load_config(o));
    else
      report = wplab::cli::cmd_bounds(bound_inputs(o));
  } catch (const wplab::InvalidArgument& e) {
    std::cerr << "wplab: " << e.what() << '\n';
    return 1;
  } catch (const wplab::OutOfRange& e) {
    std::cerr << "wplab: " << e.what() << '\n';
    return 1;
  } catch (const wplab::Error& e) {
    std::cerr << "wplab: " << e.what() << '\n';
    return 2;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report.body["timing"] = {{"seconds", elapsed.count()}};

  try {
    if (!o.plot_dir.empty())
      wplab::cli::write_plot_data(report, o.plot_dir);
    const std::string text = report.body.dump(2) + "\n";
    if (o.out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream os(o.out_path);
      if (!(os << text))
        throw wplab::InvalidArgument("cannot write " + o.out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "wplab: " << e.what() << '\n';
    return 1;
  }
  if (report.exit_code != 0)
    std::cerr << "wplab: " << report.body.value("status", std::string("fail")) << '\n';
  return report.exit_code;
}
