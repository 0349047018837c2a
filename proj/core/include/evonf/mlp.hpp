#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evonf/dataset.hpp"

namespace evonf {

/// One-hidden-layer perceptron for scalar regression: sigmoid hidden units,
/// linear output. The comparison baseline trained by plain backpropagation.
struct MLP {
    std::size_t n_in = 0;
    std::size_t n_hidden = 0;
    std::vector<double> w1; ///< [hidden][input], row-major
    std::vector<double> b1; ///< [hidden]
    std::vector<double> w2; ///< [hidden]
    double b2 = 0.0;
};

/// Weights drawn uniformly from [-0.5, 0.5], in the order w1 (row-major),
/// b1, w2, b2. Deterministic in the seed.
MLP make_mlp(std::size_t n_in, std::size_t n_hidden, std::uint64_t seed);

double mlp_forward(const MLP& net, std::span<const double> x);

/// Flat parameter order [w1][b1][w2][b2]; shared by the gradient.
std::size_t mlp_param_count(const MLP& net);
void get_mlp_params(const MLP& net, std::span<double> out);
void set_mlp_params(MLP& net, std::span<const double> params);

double mlp_mse(const MLP& net, const Dataset& data);
double mlp_loss(const MLP& net, const Dataset& data); ///< RMSE

/// Full-batch gradient of mlp_mse by backpropagation.
std::vector<double> mlp_gradient(const MLP& net, const Dataset& data);

/// Training RMSE after each epoch.
struct MLPTrainResult {
    std::vector<double> curve;
};

/// Full-batch backpropagation with heavy-ball momentum:
/// v = momentum * v - rate * grad; params += v. Throws Divergence when the
/// epoch loss stops being finite.
MLPTrainResult mlp_train(MLP& net, const Dataset& data, double rate, double momentum,
                         std::size_t epochs);

} // namespace evonf
