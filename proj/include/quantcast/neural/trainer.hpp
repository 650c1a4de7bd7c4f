#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "quantcast/neural/net.hpp"

namespace quantcast::neural {

/// Called after every epoch with (epoch index from 0, losses).
using EpochCallback = std::function<void(int, const EpochLoss&)>;

/// Mini-batch Adam on MSE in normalised space.
///
/// The normaliser is fit on `train_values` only. Window order is reshuffled every epoch
/// with a generator seeded from the config seed; the last partial batch is kept. Runs
/// exactly config.epochs epochs. Validation windows use the tail of the training values
/// as context so every validation value is a target.
TrainedNet train(const NetConfig& config, std::span<const double> train_values,
                 std::span<const double> validation_values = {}, const EpochCallback& on_epoch = {});

/// One-step forecasts for every index in [test_start_index, full_values.size()) using
/// the observed values at t - look_back .. t - 1, returned in price units.
std::vector<double> predict_test(const TrainedNet& net, std::span<const double> full_values,
                                 std::size_t test_start_index);

}  // namespace quantcast::neural
