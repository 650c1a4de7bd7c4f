#pragma once

#include <json.hpp>

#include "quantcast/neural/net.hpp"

namespace quantcast::neural {

nlohmann::json to_json(const MlpConfig& config);
nlohmann::json to_json(const LstmConfig& config);
/// Missing keys keep their defaults.
MlpConfig mlp_config_from_json(const nlohmann::json& j);
LstmConfig lstm_config_from_json(const nlohmann::json& j);

/// Config, normaliser bounds, row-major flattened weights with shapes, seed and history.
nlohmann::json to_json(const TrainedNet& net);
TrainedNet net_from_json(const nlohmann::json& j);

}  // namespace quantcast::neural
