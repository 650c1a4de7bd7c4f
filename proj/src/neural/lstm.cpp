#include "detail.hpp"
#include "quantcast/error.hpp"
#include "quantcast/neural/activation.hpp"

namespace quantcast::neural {

namespace detail {

std::vector<Shape> lstm_layout(const LstmConfig& config) {
    const Eigen::Index H = config.hidden_units;
    std::vector<Shape> out;
    for (const char* gate : {"f", "i", "C", "o"}) {
        out.push_back({std::string("W_") + gate, H, H + 1, false});
        out.push_back({std::string("b_") + gate, H, 1, true});
    }
    out.push_back({"W_out", 1, H, false});
    out.push_back({"b_out", 1, 1, true});
    return out;
}

namespace {

// Gate order in TrainedNet::weights: f, i, C, o (weight at 2k, bias at 2k + 1).
constexpr int kForget = 0;
constexpr int kInput = 1;
constexpr int kCandidate = 2;
constexpr int kOutput = 3;

struct StepCache {
    Eigen::ArrayXXd z[4];
    Eigen::ArrayXXd a[4];  // f, i, C~, o
    Eigen::ArrayXXd cell;
    Eigen::ArrayXXd cell_act;
    Eigen::MatrixXd h_prev;
};

struct LstmPass {
    std::vector<StepCache> steps;
    Eigen::MatrixXd h_last;
    Eigen::RowVectorXd output;
};

LstmPass run_forward(const TrainedNet& net, const LstmConfig& config, const Eigen::MatrixXd& inputs) {
    const Eigen::Index H = config.hidden_units;
    const Eigen::Index B = inputs.cols();
    LstmPass pass;
    pass.steps.reserve(static_cast<std::size_t>(inputs.rows()));

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(H, B);
    Eigen::ArrayXXd c = Eigen::ArrayXXd::Zero(H, B);
    Eigen::MatrixXd z(H, B);
    for (Eigen::Index t = 0; t < inputs.rows(); ++t) {
        StepCache s;
        s.h_prev = h;
        for (int k = 0; k < 4; ++k) {
            const auto& W = net.weights[static_cast<std::size_t>(2 * k)].value;
            const auto& b = net.weights[static_cast<std::size_t>(2 * k + 1)].value;
            z.noalias() = W.leftCols(H) * h;
            z.noalias() += W.col(H) * inputs.row(t);
            z.colwise() += b.col(0);
            s.z[k] = z.array();
            s.a[k] = activate(k == kCandidate ? config.cell_activation : config.gate_activation, s.z[k]);
        }
        c = s.a[kForget] * c + s.a[kInput] * s.a[kCandidate];
        s.cell = c;
        s.cell_act = activate(config.cell_activation, c);
        h = (s.a[kOutput] * s.cell_act).matrix();
        pass.steps.push_back(std::move(s));
    }
    const auto& W_out = net.weights[8].value;
    const double b_out = net.weights[9].value(0, 0);
    pass.output = (W_out * h).array() + b_out;
    pass.h_last = std::move(h);
    return pass;
}

}  // namespace

Eigen::RowVectorXd lstm_forward(const TrainedNet& net, const LstmConfig& config, const Eigen::MatrixXd& inputs) {
    return run_forward(net, config, inputs).output;
}

LossAndGradients lstm_loss_and_gradients(const TrainedNet& net, const LstmConfig& config,
                                         const Eigen::MatrixXd& inputs, const Eigen::RowVectorXd& targets) {
    const Eigen::Index H = config.hidden_units;
    const Eigen::Index B = inputs.cols();
    const LstmPass pass = run_forward(net, config, inputs);
    const Eigen::RowVectorXd err = pass.output - targets;

    LossAndGradients out;
    out.loss = err.squaredNorm() / static_cast<double>(B);
    out.gradients.resize(net.weights.size());
    for (std::size_t k = 0; k < net.weights.size(); ++k) {
        out.gradients[k] = Eigen::MatrixXd::Zero(net.weights[k].value.rows(), net.weights[k].value.cols());
    }

    const Eigen::RowVectorXd dy = (2.0 / static_cast<double>(B)) * err;
    out.gradients[8].noalias() = dy * pass.h_last.transpose();
    out.gradients[9](0, 0) = dy.sum();

    Eigen::MatrixXd dh = net.weights[8].value.transpose() * dy;
    Eigen::ArrayXXd dc = Eigen::ArrayXXd::Zero(H, B);
    Eigen::MatrixXd dz[4];

    for (std::size_t t = pass.steps.size(); t-- > 0;) {
        const StepCache& s = pass.steps[t];
        const Eigen::ArrayXXd dh_a = dh.array();
        dc += dh_a * s.a[kOutput] * activation_derivative(config.cell_activation, s.cell, s.cell_act);

        const Eigen::ArrayXXd d_out = dh_a * s.cell_act;
        const Eigen::ArrayXXd d_forget =
            t > 0 ? Eigen::ArrayXXd(dc * pass.steps[t - 1].cell) : Eigen::ArrayXXd::Zero(H, B);
        const Eigen::ArrayXXd d_input = dc * s.a[kCandidate];
        const Eigen::ArrayXXd d_cand = dc * s.a[kInput];
        dc *= s.a[kForget];

        dz[kForget] = (d_forget * activation_derivative(config.gate_activation, s.z[kForget], s.a[kForget])).matrix();
        dz[kInput] = (d_input * activation_derivative(config.gate_activation, s.z[kInput], s.a[kInput])).matrix();
        dz[kCandidate] =
            (d_cand * activation_derivative(config.cell_activation, s.z[kCandidate], s.a[kCandidate])).matrix();
        dz[kOutput] = (d_out * activation_derivative(config.gate_activation, s.z[kOutput], s.a[kOutput])).matrix();

        const auto x = inputs.row(static_cast<Eigen::Index>(t));
        dh.setZero();
        for (int k = 0; k < 4; ++k) {
            auto& gW = out.gradients[static_cast<std::size_t>(2 * k)];
            const auto& W = net.weights[static_cast<std::size_t>(2 * k)].value;
            gW.leftCols(H).noalias() += dz[k] * s.h_prev.transpose();
            gW.col(H).noalias() += dz[k] * x.transpose();
            out.gradients[static_cast<std::size_t>(2 * k + 1)] += dz[k].rowwise().sum();
            dh.noalias() += W.leftCols(H).transpose() * dz[k];
        }
    }
    return out;
}

}  // namespace detail

LstmWeights LstmWeights::from(const TrainedNet& net) {
    if (net.kind != NetKind::lstm) throw InvalidArgument("LstmWeights::from: not an LSTM");
    const auto& config = std::get<LstmConfig>(net.config);
    LstmWeights w;
    w.W_f = net.weight("W_f");
    w.W_i = net.weight("W_i");
    w.W_C = net.weight("W_C");
    w.W_o = net.weight("W_o");
    w.b_f = net.weight("b_f").col(0);
    w.b_i = net.weight("b_i").col(0);
    w.b_C = net.weight("b_C").col(0);
    w.b_o = net.weight("b_o").col(0);
    w.cell_activation = config.cell_activation;
    w.gate_activation = config.gate_activation;
    return w;
}

LstmState lstm_step(const LstmState& state, double x, const LstmWeights& w) {
    const Eigen::Index H = state.hidden.size();
    const Eigen::MatrixXd* mats[4] = {&w.W_f, &w.W_i, &w.W_C, &w.W_o};
    const Eigen::VectorXd* biases[4] = {&w.b_f, &w.b_i, &w.b_C, &w.b_o};
    if (state.cell.size() != H) throw ShapeError("lstm_step: cell and hidden sizes differ");
    for (int k = 0; k < 4; ++k) {
        if (mats[k]->rows() != H || mats[k]->cols() != H + 1 || biases[k]->size() != H) {
            throw ShapeError("lstm_step: weight shapes inconsistent with state size");
        }
    }

    Eigen::VectorXd concat(H + 1);
    concat.head(H) = state.hidden;
    concat(H) = x;

    Eigen::ArrayXd gate[4];
    for (int k = 0; k < 4; ++k) {
        const Eigen::ArrayXXd z = (*mats[k] * concat + *biases[k]).array();
        gate[k] = activate(k == 2 ? w.cell_activation : w.gate_activation, z).col(0);
    }
    LstmState next;
    next.cell = (gate[0] * state.cell.array() + gate[1] * gate[2]).matrix();
    next.hidden = (gate[3] * activate(w.cell_activation, Eigen::ArrayXXd(next.cell.array())).col(0)).matrix();
    return next;
}

}  // namespace quantcast::neural
