#include "quantcast/neural/serialize.hpp"

#include "quantcast/error.hpp"

namespace quantcast::neural {

using nlohmann::json;

json to_json(const MlpConfig& c) {
    return {{"hidden_layers", c.hidden_layers}, {"hidden_units", c.hidden_units},
            {"activation", to_string(c.activation)}, {"look_back", c.look_back},
            {"epochs", c.epochs}, {"batch_size", c.batch_size},
            {"learning_rate", c.learning_rate}, {"seed", c.seed}};
}

json to_json(const LstmConfig& c) {
    return {{"hidden_units", c.hidden_units}, {"cell_activation", to_string(c.cell_activation)},
            {"gate_activation", to_string(c.gate_activation)}, {"look_back", c.look_back},
            {"epochs", c.epochs}, {"batch_size", c.batch_size},
            {"learning_rate", c.learning_rate}, {"seed", c.seed}};
}

MlpConfig mlp_config_from_json(const json& j) {
    MlpConfig c;
    c.hidden_layers = j.value("hidden_layers", c.hidden_layers);
    c.hidden_units = j.value("hidden_units", c.hidden_units);
    c.activation = activation_from_string(j.value("activation", to_string(c.activation)));
    c.look_back = j.value("look_back", c.look_back);
    c.epochs = j.value("epochs", c.epochs);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
}

LstmConfig lstm_config_from_json(const json& j) {
    LstmConfig c;
    c.hidden_units = j.value("hidden_units", c.hidden_units);
    c.cell_activation = activation_from_string(j.value("cell_activation", to_string(c.cell_activation)));
    c.gate_activation = activation_from_string(j.value("gate_activation", to_string(c.gate_activation)));
    c.look_back = j.value("look_back", c.look_back);
    c.epochs = j.value("epochs", c.epochs);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
}

json to_json(const TrainedNet& net) {
    json j;
    j["kind"] = to_string(net.kind);
    j["config"] = std::visit([](const auto& c) { return to_json(c); }, net.config);
    j["seed"] = net.seed;
    if (net.normalizer) {
        j["normalizer"] = {{"fitted_min", net.normalizer->fitted_min()}, {"fitted_max", net.normalizer->fitted_max()}};
    } else {
        j["normalizer"] = nullptr;
    }
    json weights = json::array();
    for (const auto& p : net.weights) {
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(p.value.size()));
        for (Eigen::Index r = 0; r < p.value.rows(); ++r) {
            for (Eigen::Index c = 0; c < p.value.cols(); ++c) flat.push_back(p.value(r, c));
        }
        weights.push_back({{"name", p.name}, {"shape", {p.value.rows(), p.value.cols()}}, {"data", flat}});
    }
    j["weights"] = std::move(weights);
    j["layout"] = "row-major";
    json history = json::array();
    for (const auto& e : net.history) {
        history.push_back({{"train", e.train},
                           {"validation", e.validation ? json(*e.validation) : json(nullptr)}});
    }
    j["training_history"] = std::move(history);
    return j;
}

TrainedNet net_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    NetConfig config;
    if (kind == "mlp") {
        config = mlp_config_from_json(j.at("config"));
    } else if (kind == "lstm") {
        config = lstm_config_from_json(j.at("config"));
    } else {
        throw ParseError("net_from_json: unknown kind " + kind);
    }
    const auto seed = j.at("seed").get<std::uint64_t>();
    TrainedNet net = init_weights(config, seed);

    const auto& weights = j.at("weights");
    if (weights.size() != net.weights.size()) throw ParseError("net_from_json: parameter count mismatch");
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const auto& w = weights[k];
        auto& p = net.weights[k];
        const auto shape = w.at("shape").get<std::vector<Eigen::Index>>();
        if (w.at("name").get<std::string>() != p.name || shape.size() != 2 || shape[0] != p.value.rows() ||
            shape[1] != p.value.cols()) {
            throw ShapeError("net_from_json: parameter " + p.name + " has unexpected name or shape");
        }
        const auto data = w.at("data").get<std::vector<double>>();
        if (static_cast<Eigen::Index>(data.size()) != p.value.size()) throw ShapeError("net_from_json: bad data length");
        std::size_t i = 0;
        for (Eigen::Index r = 0; r < p.value.rows(); ++r) {
            for (Eigen::Index c = 0; c < p.value.cols(); ++c) p.value(r, c) = data[i++];
        }
    }
    if (!j.at("normalizer").is_null()) {
        net.normalizer.emplace(j["normalizer"].at("fitted_min").get<double>(),
                               j["normalizer"].at("fitted_max").get<double>());
    }
    for (const auto& e : j.value("training_history", json::array())) {
        EpochLoss loss;
        loss.train = e.at("train").get<double>();
        if (!e.at("validation").is_null()) loss.validation = e["validation"].get<double>();
        net.history.push_back(loss);
    }
    return net;
}

}  // namespace quantcast::neural
