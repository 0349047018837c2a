#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "evonf/dataset.hpp"
#include "evonf/model.hpp"

namespace evonf {

/// Gradient-descent hyperparameters. In the evolutionary setting both are
/// genes; standalone callers set them directly. rate must be positive,
/// momentum non-negative and below 1.
struct LearnParams {
    double rate = 0.1;
    double momentum = 0.0;
};

/// Selects which parameter groups gradient descent touches. Rule selection
/// bits are discrete and never tuned here.
struct GdOptions {
    bool tune_mf = true;
    bool tune_consequents = true;
    bool tune_tnorm = true;
};

/// Heavy-ball velocity, carried across gd_step calls. Starts empty; the
/// first step sizes it to the model's parameter count.
struct GdState {
    std::vector<double> velocity;
};

/// Widths (and the bell exponent) are clamped to at least this after every
/// descent step so memberships stay defined.
inline constexpr double kWidthFloor = 1e-6;

/// Number of tunable parameters, in the flat order
/// [MF params per input/label] [consequents per rule] [T-norm exponent].
std::size_t model_param_count(const TSKModel& model);

/// Copies the tunable parameters into `out` (size model_param_count).
void get_model_params(const TSKModel& model, std::span<double> out);

/// Writes parameters back, clamping widths to kWidthFloor and the T-norm
/// exponent into [kTNormParamMin, kTNormParamMax].
void set_model_params(TSKModel& model, std::span<const double> params);

/// Mean squared error of infer() over the dataset. The gradient below is the
/// exact gradient of this quantity.
double mean_squared_error(const TSKModel& model, const Dataset& data);

/// Root mean squared error; the fitness and reporting metric.
double loss(const TSKModel& model, const Dataset& data);

/// Analytic gradient of mean_squared_error with respect to the flat
/// parameter vector. Groups disabled in `opts` come back zero. Inactive
/// rules contribute nothing. Throws DatasetEmpty / DimensionMismatch.
std::vector<double> gradient(const TSKModel& model, const Dataset& data, const GdOptions& opts = {});

/// One full-batch heavy-ball step: v = momentum * v - rate * grad;
/// params += v; then the set_model_params clamps apply.
void gd_step(TSKModel& model, const Dataset& data, const LearnParams& learn, GdState& state,
             const GdOptions& opts = {});

} // namespace evonf
