#include "detail.hpp"
#include "quantcast/neural/activation.hpp"

namespace quantcast::neural::detail {

std::vector<Shape> mlp_layout(const MlpConfig& config) {
    std::vector<Shape> out;
    Eigen::Index fan_in = config.look_back;
    for (int l = 1; l <= config.hidden_layers; ++l) {
        out.push_back({"W_" + std::to_string(l), config.hidden_units, fan_in, false});
        out.push_back({"b_" + std::to_string(l), config.hidden_units, 1, true});
        fan_in = config.hidden_units;
    }
    out.push_back({"W_out", 1, fan_in, false});
    out.push_back({"b_out", 1, 1, true});
    return out;
}

namespace {

// weights = [W_1, b_1, ..., W_L, b_L, W_out, b_out]
struct MlpPass {
    std::vector<Eigen::ArrayXXd> pre;   // z_l
    std::vector<Eigen::MatrixXd> post;  // a_0 = inputs, a_l = act(z_l)
    Eigen::RowVectorXd output;
};

MlpPass run_forward(const TrainedNet& net, const MlpConfig& config, const Eigen::MatrixXd& inputs) {
    MlpPass pass;
    pass.post.push_back(inputs);
    for (int l = 0; l < config.hidden_layers; ++l) {
        const auto& W = net.weights[static_cast<std::size_t>(2 * l)].value;
        const auto& b = net.weights[static_cast<std::size_t>(2 * l + 1)].value;
        Eigen::MatrixXd z = W * pass.post.back();
        z.colwise() += b.col(0);
        pass.pre.push_back(z.array());
        pass.post.push_back(activate(config.activation, pass.pre.back()).matrix());
    }
    const auto& W_out = net.weights[static_cast<std::size_t>(2 * config.hidden_layers)].value;
    const double b_out = net.weights[static_cast<std::size_t>(2 * config.hidden_layers + 1)].value(0, 0);
    pass.output = (W_out * pass.post.back()).array() + b_out;
    return pass;
}

}  // namespace

Eigen::RowVectorXd mlp_forward(const TrainedNet& net, const MlpConfig& config, const Eigen::MatrixXd& inputs) {
    return run_forward(net, config, inputs).output;
}

LossAndGradients mlp_loss_and_gradients(const TrainedNet& net, const MlpConfig& config,
                                        const Eigen::MatrixXd& inputs, const Eigen::RowVectorXd& targets) {
    const MlpPass pass = run_forward(net, config, inputs);
    const double batch = static_cast<double>(inputs.cols());
    const Eigen::RowVectorXd err = pass.output - targets;

    LossAndGradients out;
    out.loss = err.squaredNorm() / batch;
    out.gradients.resize(net.weights.size());

    const auto L = static_cast<std::size_t>(config.hidden_layers);
    Eigen::MatrixXd delta = (2.0 / batch) * err;  // dLoss/d output, 1 x B
    out.gradients[2 * L] = delta * pass.post[L].transpose();
    out.gradients[2 * L + 1] = Eigen::MatrixXd::Constant(1, 1, delta.sum());
    Eigen::MatrixXd upstream = net.weights[2 * L].value.transpose() * delta;

    for (std::size_t l = L; l-- > 0;) {
        const Eigen::ArrayXXd dz =
            upstream.array() * activation_derivative(config.activation, pass.pre[l], pass.post[l + 1].array());
        out.gradients[2 * l] = dz.matrix() * pass.post[l].transpose();
        out.gradients[2 * l + 1] = dz.rowwise().sum().matrix();
        if (l > 0) upstream = net.weights[2 * l].value.transpose() * dz.matrix();
    }
    return out;
}

}  // namespace quantcast::neural::detail
