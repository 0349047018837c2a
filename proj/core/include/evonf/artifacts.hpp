#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "evonf/evolution.hpp"

namespace evonf {

/// CSV renderers shared by every writer of run artifacts, so identical
/// results always serialize to identical bytes. All numbers use the
/// shortest round-trip decimal form.

/// Header: generation,best_train_rmse,mean_train_rmse,best_test_rmse,active_rules
std::string generation_log_csv(std::span<const GenerationLog> log);

/// One training run's headline numbers. active_rules only applies to fuzzy
/// systems; baselines drop the column.
struct SeedMetrics {
    std::uint64_t seed = 0;
    double train_rmse = 0.0;
    double train_cc = 0.0;
    double test_rmse = 0.0;
    double test_cc = 0.0;
    std::size_t active_rules = 0;
};

/// Header: seed,train_rmse,train_cc,test_rmse,test_cc[,active_rules]. A
/// final row labeled "mean" averages every column.
std::string metrics_csv(std::span<const SeedMetrics> rows, bool with_active_rules = true);

/// Header: index,target,prediction. Indices are 1-based sample positions.
std::string predictions_csv(std::span<const double> targets, std::span<const double> predictions);

/// One paradigm's seed-averaged numbers in a side-by-side comparison.
struct ParadigmSummary {
    std::string name;
    double train_rmse = 0.0;
    double test_rmse = 0.0;
    double test_cc = 0.0;
};

/// Header: paradigm,train_rmse,test_rmse,test_cc
std::string comparison_csv(std::span<const ParadigmSummary> rows);

/// Header: epoch,train_rmse. Epochs are 1-based.
std::string curve_csv(std::span<const double> rmse_per_epoch);

} // namespace evonf
