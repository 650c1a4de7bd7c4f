#pragma once

#include <Eigen/Dense>
#include <vector>

#include "quantcast/neural/net.hpp"

namespace quantcast::neural {

struct AdamMoments {
    std::vector<Eigen::MatrixXd> first;
    std::vector<Eigen::MatrixXd> second;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    /// Zero moments shaped like `weights`.
    static AdamMoments zeros_like(const std::vector<Parameter>& weights);
};

/// Bias-corrected Adam update for step t >= 1 (1-based).
void adam_step(std::vector<Parameter>& weights, const std::vector<Eigen::MatrixXd>& gradients,
               AdamMoments& moments, long long t, double learning_rate);

}  // namespace quantcast::neural
