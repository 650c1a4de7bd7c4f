#pragma once

#include <vector>

#include "quantcast/neural/net.hpp"

namespace quantcast::neural::detail {

struct Shape {
    std::string name;
    Eigen::Index rows;
    Eigen::Index cols;
    bool bias;
};

std::vector<Shape> mlp_layout(const MlpConfig& config);
std::vector<Shape> lstm_layout(const LstmConfig& config);

Eigen::RowVectorXd mlp_forward(const TrainedNet& net, const MlpConfig& config, const Eigen::MatrixXd& inputs);
LossAndGradients mlp_loss_and_gradients(const TrainedNet& net, const MlpConfig& config,
                                        const Eigen::MatrixXd& inputs, const Eigen::RowVectorXd& targets);

Eigen::RowVectorXd lstm_forward(const TrainedNet& net, const LstmConfig& config, const Eigen::MatrixXd& inputs);
LossAndGradients lstm_loss_and_gradients(const TrainedNet& net, const LstmConfig& config,
                                         const Eigen::MatrixXd& inputs, const Eigen::RowVectorXd& targets);

}  // namespace quantcast::neural::detail
