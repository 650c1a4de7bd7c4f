#include "quantcast/neural/adam.hpp"

#include <cmath>

#include "quantcast/error.hpp"

namespace quantcast::neural {

AdamMoments AdamMoments::zeros_like(const std::vector<Parameter>& weights) {
    AdamMoments m;
    for (const auto& p : weights) {
        m.first.push_back(Eigen::MatrixXd::Zero(p.value.rows(), p.value.cols()));
        m.second.push_back(Eigen::MatrixXd::Zero(p.value.rows(), p.value.cols()));
    }
    return m;
}

void adam_step(std::vector<Parameter>& weights, const std::vector<Eigen::MatrixXd>& gradients,
               AdamMoments& moments, long long t, double learning_rate) {
    if (t < 1) throw InvalidArgument("adam_step: step index must be >= 1");
    if (gradients.size() != weights.size() || moments.first.size() != weights.size()) {
        throw ShapeError("adam_step: weights, gradients and moments differ in count");
    }
    const double c1 = 1.0 - std::pow(moments.beta1, static_cast<double>(t));
    const double c2 = 1.0 - std::pow(moments.beta2, static_cast<double>(t));
    for (std::size_t k = 0; k < weights.size(); ++k) {
        auto& m = moments.first[k];
        auto& v = moments.second[k];
        const auto& g = gradients[k];
        m = moments.beta1 * m + (1.0 - moments.beta1) * g;
        v = moments.beta2 * v + (1.0 - moments.beta2) * g.cwiseProduct(g);
        weights[k].value.array() -=
            learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + moments.epsilon);
    }
}

}  // namespace quantcast::neural
