#include "quantcast/neural/net.hpp"

#include <cmath>
#include <random>

#include "detail.hpp"
#include "quantcast/error.hpp"

namespace quantcast::neural {

std::string to_string(NetKind kind) { return kind == NetKind::mlp ? "mlp" : "lstm"; }

int TrainedNet::look_back() const {
    return std::visit([](const auto& c) { return c.look_back; }, config);
}

const Eigen::MatrixXd& TrainedNet::weight(std::string_view name) const {
    for (const auto& p : weights) {
        if (p.name == name) return p.value;
    }
    throw InvalidArgument("TrainedNet: no parameter named " + std::string(name));
}

Eigen::MatrixXd& TrainedNet::weight(std::string_view name) {
    return const_cast<Eigen::MatrixXd&>(std::as_const(*this).weight(name));
}

TrainedNet init_weights(const NetConfig& config, std::uint64_t seed) {
    std::visit([](const auto& c) { c.validate(); }, config);
    TrainedNet net;
    net.config = config;
    net.seed = seed;
    net.kind = std::holds_alternative<MlpConfig>(config) ? NetKind::mlp : NetKind::lstm;
    const auto layout = net.kind == NetKind::mlp ? detail::mlp_layout(std::get<MlpConfig>(config))
                                                 : detail::lstm_layout(std::get<LstmConfig>(config));

    std::mt19937_64 rng(seed);
    for (const auto& shape : layout) {
        Parameter p{shape.name, Eigen::MatrixXd::Zero(shape.rows, shape.cols)};
        if (!shape.bias) {
            const double limit = std::sqrt(6.0 / static_cast<double>(shape.rows + shape.cols));
            std::uniform_real_distribution<double> dist(-limit, limit);
            for (Eigen::Index c = 0; c < shape.cols; ++c) {
                for (Eigen::Index r = 0; r < shape.rows; ++r) p.value(r, c) = dist(rng);
            }
        }
        net.weights.push_back(std::move(p));
    }
    return net;
}

Eigen::RowVectorXd forward_batch(const TrainedNet& net, const Eigen::MatrixXd& inputs) {
    if (inputs.rows() != net.look_back()) {
        throw ShapeError("forward: window length " + std::to_string(inputs.rows()) + " != look_back " +
                         std::to_string(net.look_back()));
    }
    if (net.kind == NetKind::mlp) return detail::mlp_forward(net, std::get<MlpConfig>(net.config), inputs);
    return detail::lstm_forward(net, std::get<LstmConfig>(net.config), inputs);
}

double forward(const TrainedNet& net, std::span<const double> window) {
    const Eigen::Map<const Eigen::VectorXd> col(window.data(), static_cast<Eigen::Index>(window.size()));
    return forward_batch(net, col)(0);
}

LossAndGradients loss_and_gradients(const TrainedNet& net, const Eigen::MatrixXd& inputs,
                                    const Eigen::RowVectorXd& targets) {
    if (inputs.cols() == 0) throw InvalidArgument("loss_and_gradients: empty batch");
    if (inputs.cols() != targets.cols()) throw ShapeError("loss_and_gradients: inputs/targets batch mismatch");
    if (inputs.rows() != net.look_back()) throw ShapeError("loss_and_gradients: window length != look_back");
    if (net.kind == NetKind::mlp) {
        return detail::mlp_loss_and_gradients(net, std::get<MlpConfig>(net.config), inputs, targets);
    }
    return detail::lstm_loss_and_gradients(net, std::get<LstmConfig>(net.config), inputs, targets);
}

void MlpConfig::validate() const {
    if (hidden_layers < 1 || hidden_units < 1 || look_back < 1 || epochs < 1 || batch_size < 1) {
        throw InvalidArgument("MlpConfig: layer, unit, look_back, epoch and batch counts must be positive");
    }
    if (!(learning_rate > 0.0)) throw InvalidArgument("MlpConfig: learning_rate must be positive");
}

void LstmConfig::validate() const {
    if (hidden_units < 1 || look_back < 1 || epochs < 1 || batch_size < 1) {
        throw InvalidArgument("LstmConfig: unit, look_back, epoch and batch counts must be positive");
    }
    if (!(learning_rate > 0.0)) throw InvalidArgument("LstmConfig: learning_rate must be positive");
}

}  // namespace quantcast::neural
