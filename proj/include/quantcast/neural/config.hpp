#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace quantcast::neural {

enum class Activation { identity, relu, elu, tanh, sigmoid };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

/// Feed-forward regressor: look_back inputs -> hidden_layers x hidden_units -> 1 linear output.
struct MlpConfig {
    int hidden_layers = 3;
    int hidden_units = 83;
    Activation activation = Activation::relu;
    int look_back = 3;
    int epochs = 82;
    int batch_size = 9;
    double learning_rate = 0.001;
    std::uint64_t seed = 42;

    void validate() const;
};

/// Single LSTM layer over the look-back window, linear output on the final hidden state.
/// `cell_activation` is used for the candidate state and for squashing C_t.
struct LstmConfig {
    int hidden_units = 297;
    Activation cell_activation = Activation::elu;
    Activation gate_activation = Activation::sigmoid;
    int look_back = 8;
    int epochs = 500;
    int batch_size = 64;
    double learning_rate = 0.0044589;
    std::uint64_t seed = 42;

    void validate() const;
};

using NetConfig = std::variant<MlpConfig, LstmConfig>;

}  // namespace quantcast::neural
