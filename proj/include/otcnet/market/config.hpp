#pragma once

#include <json.hpp>

#include "otcnet/market/generate.hpp"

namespace otcnet {

/// Reads the generation section of a config document:
/// dims.{dealers,assets,days}, topology.{kind,...}, noise.{sigma_c,sigma_pi,sigma_u},
/// true_params.{beta_x,beta_y,eta}, seed, plus optional features.{x,y,e} and mu_u.
/// Missing keys keep their defaults; wrong types or values throw ConfigError.
GenConfig gen_config_from_json(const nlohmann::json& j, const GenConfig& defaults = {});
nlohmann::json gen_config_to_json(const GenConfig& config);

}  // namespace otcnet
