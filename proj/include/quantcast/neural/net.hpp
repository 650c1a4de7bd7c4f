#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quantcast/neural/config.hpp"
#include "quantcast/series/transforms.hpp"

namespace quantcast::neural {

enum class NetKind { mlp, lstm };

std::string to_string(NetKind kind);

struct Parameter {
    std::string name;
    Eigen::MatrixXd value;
};

struct EpochLoss {
    double train = 0.0;
    std::optional<double> validation;
};

/// Weights plus everything needed to reproduce predictions in price units.
///
/// MLP parameters: W_1, b_1, ..., W_L, b_L, W_out, b_out with W_l of shape
/// (units x fan_in). LSTM parameters: W_f, b_f, W_i, b_i, W_C, b_C, W_o, b_o, W_out,
/// b_out, where each gate matrix is (H x (H + 1)) acting on [h_{t-1}, x_t].
struct TrainedNet {
    NetKind kind = NetKind::mlp;
    NetConfig config;
    std::vector<Parameter> weights;
    std::optional<series::MinMaxNormalizer> normalizer;
    std::vector<EpochLoss> history;
    std::uint64_t seed = 0;

    int look_back() const;
    const Eigen::MatrixXd& weight(std::string_view name) const;
    Eigen::MatrixXd& weight(std::string_view name);
};

/// Glorot-uniform weights (limit sqrt(6 / (fan_in + fan_out))), zero biases.
TrainedNet init_weights(const NetConfig& config, std::uint64_t seed);

/// Prediction in normalised space for one window of look_back values.
double forward(const TrainedNet& net, std::span<const double> window);

/// Batched forward pass; `inputs` is (look_back x batch), one window per column.
Eigen::RowVectorXd forward_batch(const TrainedNet& net, const Eigen::MatrixXd& inputs);

struct LossAndGradients {
    double loss = 0.0;
    std::vector<Eigen::MatrixXd> gradients;  // aligned with TrainedNet::weights
};

/// Mean squared error over the batch and its exact gradient (backpropagation, through
/// time for the LSTM).
LossAndGradients loss_and_gradients(const TrainedNet& net, const Eigen::MatrixXd& inputs,
                                    const Eigen::RowVectorXd& targets);

struct LstmState {
    Eigen::VectorXd cell;
    Eigen::VectorXd hidden;
};

struct LstmWeights {
    Eigen::MatrixXd W_f, W_i, W_C, W_o;  // H x (H + 1)
    Eigen::VectorXd b_f, b_i, b_C, b_o;
    Activation cell_activation = Activation::elu;
    Activation gate_activation = Activation::sigmoid;

    static LstmWeights from(const TrainedNet& net);
};

/// One cell update:
///   f = g(W_f [h, x] + b_f), i = g(W_i [h, x] + b_i), C~ = act(W_C [h, x] + b_C),
///   C' = f * C + i * C~, o = g(W_o [h, x] + b_o), h' = o * act(C').
LstmState lstm_step(const LstmState& state, double x, const LstmWeights& weights);

}  // namespace quantcast::neural
