#include "wplab/serialize.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "wplab/errors.hpp"

namespace wplab {

using nlohmann::json;

json json_number(double x)
{
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0.0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const json& j)
{
  if (j.is_number())
    return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf")
      return std::numeric_limits<double>::infinity();
    if (s == "-inf")
      return -std::numeric_limits<double>::infinity();
    if (s == "nan")
      return std::numeric_limits<double>::quiet_NaN();
  }
  throw InvalidArgument("expected a number, got " + j.dump());
}

namespace {

json number_list(const std::vector<double>& xs)
{
  json out = json::array();
  for (double x : xs)
    out.push_back(json_number(x));
  return out;
}

}  // namespace

void to_json(json& j, const CheckReport& r)
{
  json details = json::object();
  for (const auto& [key, value] : r.details)
    details[key] = json_number(value);
  j = json{{"name", r.name},
           {"status", r.status()},
           {"passed", r.passed},
           {"hypothesis_ok", r.hypothesis_ok},
           {"measured", json_number(r.measured)},
           {"bound", json_number(r.bound)},
           {"margin", json_number(r.margin)},
           {"details", details}};
  if (!r.notes.empty())
    j["notes"] = r.notes;
}

void to_json(json& j, const MoserTrace& t)
{
  j = json{{"b0", json_number(t.b0)},
           {"b_sequence", number_list(t.b_sequence)},
           {"ball_radii", number_list(t.ball_radii)},
           {"norms", number_list(t.norms)},
           {"ball_sups", number_list(t.ball_sups)},
           {"volumes", number_list(t.volumes)},
           {"sup_inner", json_number(t.sup_inner)},
           {"d_fit", json_number(t.d_fit)}};
}

void to_json(json& j, const BoundInputs& in)
{
  j = json{{"p", json_number(in.p)},         {"n", in.n},
           {"m", json_number(in.m)},         {"a", json_number(in.a)},
           {"lambda", json_number(in.lambda)}, {"kappa", json_number(in.kappa)}};
  if (in.grad_f_min)
    j["grad_f_min"] = json_number(*in.grad_f_min);
}

void from_json(const json& j, BoundInputs& in)
{
  if (j.contains("p"))
    in.p = number_from_json(j.at("p"));
  if (j.contains("n"))
    in.n = j.at("n").get<int>();
  if (j.contains("m"))
    in.m = number_from_json(j.at("m"));
  if (j.contains("a"))
    in.a = number_from_json(j.at("a"));
  if (j.contains("lambda"))
    in.lambda = number_from_json(j.at("lambda"));
  if (j.contains("kappa"))
    in.kappa = number_from_json(j.at("kappa"));
  if (j.contains("grad_f_min"))
    in.grad_f_min = number_from_json(j.at("grad_f_min"));
}

void to_json(json& j, const BoundSet& b)
{
  j = json{{"inputs", b.inputs},
           {"lambda_max", json_number(b.lambda_max)},
           {"p_harmonic_bound", json_number(b.p_harmonic_bound)},
           {"sharp_y", json_number(b.sharp_y)},
           {"sharp_x", json_number(b.sharp_x)},
           {"lambda_upper_lin", json_number(b.lambda_upper_lin)},
           {"lambda_upper_neg", json_number(b.lambda_upper_neg)},
           {"model_lambda", json_number(b.model_lambda)},
           {"model_rate_in_range", b.model_rate_in_range},
           {"soliton_lambda", json_number(b.soliton_lambda)},
           {"soliton_valid", b.soliton_valid},
           {"warnings", b.warnings}};
}

void to_json(json& j, const ProfileSpec& profile)
{
  if (profile.tag() == ProfileSpec::Tag::Tabulated) {
    const auto& table = *profile.table();
    j = json{{"tag", to_string(profile.tag())},
             {"lo", table.grid().lo()},
             {"hi", table.grid().hi()},
             {"values", std::vector<double>(table.values().begin(), table.values().end())}};
    return;
  }
  j = json{{"tag", to_string(profile.tag())}, {"params", number_list(profile.params())}};
}

ProfileSpec profile_from_json(const json& j)
{
  if (!j.is_object() || !j.contains("tag"))
    throw InvalidArgument("profile must be an object with a \"tag\"");
  const auto tag = profile_tag_from_string(j.at("tag").get<std::string>());
  if (tag == ProfileSpec::Tag::Tabulated) {
    const auto values = j.at("values").get<std::vector<double>>();
    const RadialGrid grid(number_from_json(j.at("lo")), number_from_json(j.at("hi")),
                          values.size());
    return ProfileSpec::tabulated(RadialField(grid, values));
  }
  std::vector<double> params;
  for (const auto& x : j.at("params"))
    params.push_back(number_from_json(x));
  return ProfileSpec::from_params(tag, params);
}

void to_json(json& j, const ModelSpace& space)
{
  j = json{{"kind", to_string(space.kind)},
           {"n", space.n},
           {"m", json_number(space.m)},
           {"kappa", json_number(space.kappa)},
           {"warp", space.warp},
           {"weight", space.weight}};
}

void from_json(const json& j, ModelSpace& space)
{
  if (!j.is_object())
    throw InvalidArgument("space must be a JSON object");
  try {
    if (j.contains("kind"))
      space.kind = space_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("n"))
      space.n = j.at("n").get<int>();
    if (j.contains("m"))
      space.m = number_from_json(j.at("m"));
    if (j.contains("kappa"))
      space.kappa = number_from_json(j.at("kappa"));
    if (j.contains("warp"))
      space.warp = profile_from_json(j.at("warp"));
    if (j.contains("weight"))
      space.weight = profile_from_json(j.at("weight"));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed space: ") + e.what());
  }
  space.validate();
}

json eigen_summary(const EigenResult& r)
{
  const auto& g = r.eigenfield.grid();
  return json{{"lambda", json_number(r.lambda)},
              {"iterations", r.iterations},
              {"residual", json_number(r.residual)},
              {"converged", r.converged},
              {"eps", json_number(r.eps)},
              {"interval", {g.lo(), g.hi()}},
              {"npoints", g.size()},
              {"accepted_steps", r.history.empty() ? 0 : r.history.size() - 1}};
}

}  // namespace wplab
