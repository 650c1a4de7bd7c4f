#include "quantcast/neural/trainer.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "quantcast/error.hpp"
#include "quantcast/neural/adam.hpp"

namespace quantcast::neural {

namespace {

struct WindowMatrix {
    Eigen::MatrixXd inputs;      // look_back x N
    Eigen::RowVectorXd targets;  // 1 x N
};

WindowMatrix to_matrix(const series::SupervisedWindowSet& set) {
    const auto n = static_cast<Eigen::Index>(set.targets.size());
    const auto L = static_cast<Eigen::Index>(set.look_back);
    WindowMatrix wm{Eigen::MatrixXd(L, n), Eigen::RowVectorXd(n)};
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& in = set.inputs[static_cast<std::size_t>(j)];
        for (Eigen::Index r = 0; r < L; ++r) wm.inputs(r, j) = in[static_cast<std::size_t>(r)];
        wm.targets(j) = set.targets[static_cast<std::size_t>(j)];
    }
    return wm;
}

std::uint64_t shuffle_seed(std::uint64_t seed) { return seed ^ 0x9E3779B97F4A7C15ULL; }

}  // namespace

TrainedNet train(const NetConfig& config, std::span<const double> train_values,
                 std::span<const double> validation_values, const EpochCallback& on_epoch) {
    const auto seed = std::visit([](const auto& c) { return c.seed; }, config);
    TrainedNet net = init_weights(config, seed);
    const auto look_back = static_cast<std::size_t>(net.look_back());
    const int epochs = std::visit([](const auto& c) { return c.epochs; }, config);
    const int batch_size = std::visit([](const auto& c) { return c.batch_size; }, config);
    const double lr = std::visit([](const auto& c) { return c.learning_rate; }, config);

    if (train_values.size() <= look_back) {
        throw InsufficientData("train: need more than look_back training values");
    }
    net.normalizer = series::MinMaxNormalizer::fit(train_values);
    const auto scaled_train = net.normalizer->transform(train_values);
    const WindowMatrix train_set = to_matrix(series::make_windows(scaled_train, look_back));

    std::optional<WindowMatrix> val_set;
    if (!validation_values.empty()) {
        std::vector<double> context(train_values.end() - static_cast<std::ptrdiff_t>(look_back), train_values.end());
        context.insert(context.end(), validation_values.begin(), validation_values.end());
        val_set = to_matrix(series::make_windows(net.normalizer->transform(context), look_back));
    }

    const Eigen::Index n = train_set.inputs.cols();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::mt19937_64 rng(shuffle_seed(seed));
    AdamMoments moments = AdamMoments::zeros_like(net.weights);
    long long step = 0;

    Eigen::MatrixXd batch_in;
    Eigen::RowVectorXd batch_out;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double loss_sum = 0.0;
        for (Eigen::Index start = 0; start < n; start += batch_size) {
            const Eigen::Index size = std::min<Eigen::Index>(batch_size, n - start);
            batch_in.resize(train_set.inputs.rows(), size);
            batch_out.resize(size);
            for (Eigen::Index j = 0; j < size; ++j) {
                const Eigen::Index src = order[static_cast<std::size_t>(start + j)];
                batch_in.col(j) = train_set.inputs.col(src);
                batch_out(j) = train_set.targets(src);
            }
            const LossAndGradients lg = loss_and_gradients(net, batch_in, batch_out);
            adam_step(net.weights, lg.gradients, moments, ++step, lr);
            loss_sum += lg.loss * static_cast<double>(size);
        }

        EpochLoss record;
        record.train = loss_sum / static_cast<double>(n);
        if (val_set) {
            const Eigen::RowVectorXd pred = forward_batch(net, val_set->inputs);
            record.validation = (pred - val_set->targets).squaredNorm() / static_cast<double>(pred.size());
        }
        net.history.push_back(record);
        if (on_epoch) on_epoch(epoch, record);
    }
    return net;
}

std::vector<double> predict_test(const TrainedNet& net, std::span<const double> full_values,
                                 std::size_t test_start_index) {
    if (!net.normalizer) throw InvalidState("predict_test: network has no fitted normaliser");
    const auto look_back = static_cast<std::size_t>(net.look_back());
    if (test_start_index < look_back || test_start_index > full_values.size()) {
        throw InvalidArgument("predict_test: test_start_index out of range");
    }
    const auto count = static_cast<Eigen::Index>(full_values.size() - test_start_index);
    if (count == 0) return {};
    Eigen::MatrixXd inputs(static_cast<Eigen::Index>(look_back), count);
    for (Eigen::Index j = 0; j < count; ++j) {
        const std::size_t t = test_start_index + static_cast<std::size_t>(j);
        for (std::size_t r = 0; r < look_back; ++r) {
            inputs(static_cast<Eigen::Index>(r), j) = net.normalizer->transform(full_values[t - look_back + r]);
        }
    }
    const Eigen::RowVectorXd scaled = forward_batch(net, inputs);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (Eigen::Index j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = net.normalizer->inverse_transform(scaled(j));
    return out;
}

}  // namespace quantcast::neural
