#include "evonf/mlp.hpp"

#include <cmath>
#include <string>

#include "evonf/errors.hpp"
#include "evonf/rng.hpp"

namespace evonf {

namespace {

constexpr std::uint64_t kMlpInitSalt = 0x4d4c5049; // "MLPI"

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_data(const MLP& net, const Dataset& data) {
    if (data.empty()) throw DatasetEmpty("no rows to evaluate");
    if (data.n_inputs != net.n_in)
        throw DimensionMismatch("dataset has " + std::to_string(data.n_inputs) +
                                " inputs, network expects " + std::to_string(net.n_in));
}

} // namespace

MLP make_mlp(std::size_t n_in, std::size_t n_hidden, std::uint64_t seed) {
    if (n_in == 0 || n_hidden == 0) throw InvalidParameter("network needs inputs and hidden units");
    MLP net;
    net.n_in = n_in;
    net.n_hidden = n_hidden;
    net.w1.resize(n_hidden * n_in);
    net.b1.resize(n_hidden);
    net.w2.resize(n_hidden);
    Rng rng(Rng::derive(seed, kMlpInitSalt));
    for (double& w : net.w1) w = rng.uniform(-0.5, 0.5);
    for (double& b : net.b1) b = rng.uniform(-0.5, 0.5);
    for (double& w : net.w2) w = rng.uniform(-0.5, 0.5);
    net.b2 = rng.uniform(-0.5, 0.5);
    return net;
}

double mlp_forward(const MLP& net, std::span<const double> x) {
    if (x.size() != net.n_in)
        throw DimensionMismatch("input has " + std::to_string(x.size()) + " values, network expects " +
                                std::to_string(net.n_in));
    double out = net.b2;
    for (std::size_t h = 0; h < net.n_hidden; ++h) {
        double z = net.b1[h];
        const double* row = net.w1.data() + h * net.n_in;
        for (std::size_t i = 0; i < net.n_in; ++i) z += row[i] * x[i];
        out += net.w2[h] * sigmoid(z);
    }
    return out;
}

std::size_t mlp_param_count(const MLP& net) {
    return net.w1.size() + net.b1.size() + net.w2.size() + 1;
}

void get_mlp_params(const MLP& net, std::span<double> out) {
    if (out.size() != mlp_param_count(net))
        throw DimensionMismatch("parameter buffer holds " + std::to_string(out.size()) +
                                ", network has " + std::to_string(mlp_param_count(net)));
    std::size_t pos = 0;
    for (double w : net.w1) out[pos++] = w;
    for (double b : net.b1) out[pos++] = b;
    for (double w : net.w2) out[pos++] = w;
    out[pos] = net.b2;
}

void set_mlp_params(MLP& net, std::span<const double> params) {
    if (params.size() != mlp_param_count(net))
        throw DimensionMismatch("parameter buffer holds " + std::to_string(params.size()) +
                                ", network has " + std::to_string(mlp_param_count(net)));
    std::size_t pos = 0;
    for (double& w : net.w1) w = params[pos++];
    for (double& b : net.b1) b = params[pos++];
    for (double& w : net.w2) w = params[pos++];
    net.b2 = params[pos];
}

double mlp_mse(const MLP& net, const Dataset& data) {
    check_data(net, data);
    double se = 0.0;
    for (std::size_t s = 0; s < data.size(); ++s) {
        double e = mlp_forward(net, data.row(s)) - data.y[s];
        se += e * e;
    }
    return se / static_cast<double>(data.size());
}

double mlp_loss(const MLP& net, const Dataset& data) { return std::sqrt(mlp_mse(net, data)); }

std::vector<double> mlp_gradient(const MLP& net, const Dataset& data) {
    check_data(net, data);
    const std::size_t nw1 = net.w1.size();
    const std::size_t nh = net.n_hidden;
    std::vector<double> grads(mlp_param_count(net), 0.0);
    std::vector<double> hidden(nh);
    const double inv_n = 1.0 / static_cast<double>(data.size());

    for (std::size_t s = 0; s < data.size(); ++s) {
        auto x = data.row(s);
        double out = net.b2;
        for (std::size_t h = 0; h < nh; ++h) {
            double z = net.b1[h];
            const double* row = net.w1.data() + h * net.n_in;
            for (std::size_t i = 0; i < net.n_in; ++i) z += row[i] * x[i];
            hidden[h] = sigmoid(z);
            out += net.w2[h] * hidden[h];
        }
        double dLdy = 2.0 * (out - data.y[s]) * inv_n;
        grads.back() += dLdy;
        for (std::size_t h = 0; h < nh; ++h) {
            grads[nw1 + nh + h] += dLdy * hidden[h];
            double dz = dLdy * net.w2[h] * hidden[h] * (1.0 - hidden[h]);
            grads[nw1 + h] += dz;
            for (std::size_t i = 0; i < net.n_in; ++i) grads[h * net.n_in + i] += dz * x[i];
        }
    }
    return grads;
}

MLPTrainResult mlp_train(MLP& net, const Dataset& data, double rate, double momentum,
                         std::size_t epochs) {
    if (!(rate >= 0.0)) throw InvalidParameter("learning rate must be non-negative");
    if (momentum < 0.0 || momentum >= 1.0) throw InvalidParameter("momentum must lie in [0, 1)");
    check_data(net, data);

    MLPTrainResult result;
    result.curve.reserve(epochs);
    std::vector<double> velocity(mlp_param_count(net), 0.0);
    std::vector<double> params(mlp_param_count(net));
    for (std::size_t e = 0; e < epochs; ++e) {
        std::vector<double> grads = mlp_gradient(net, data);
        get_mlp_params(net, params);
        for (std::size_t i = 0; i < params.size(); ++i) {
            velocity[i] = momentum * velocity[i] - rate * grads[i];
            params[i] += velocity[i];
        }
        set_mlp_params(net, params);
        double rmse = mlp_loss(net, data);
        if (!std::isfinite(rmse))
            throw Divergence("training loss is not finite at epoch " + std::to_string(e + 1));
        result.curve.push_back(rmse);
    }
    return result;
}

} // namespace evonf
