#include "evonf/artifacts.hpp"

#include "evonf/errors.hpp"
#include "evonf/text.hpp"

namespace evonf {

std::string generation_log_csv(std::span<const GenerationLog> log) {
    std::string out = "generation,best_train_rmse,mean_train_rmse,best_test_rmse,active_rules\n";
    for (const GenerationLog& row : log) {
        out += std::to_string(row.generation);
        out += ',';
        append_double(out, row.best_train_rmse);
        out += ',';
        append_double(out, row.mean_train_rmse);
        out += ',';
        append_double(out, row.best_test_rmse);
        out += ',';
        out += std::to_string(row.active_rules);
        out += '\n';
    }
    return out;
}

std::string metrics_csv(std::span<const SeedMetrics> rows, bool with_active_rules) {
    std::string out = with_active_rules ? "seed,train_rmse,train_cc,test_rmse,test_cc,active_rules\n"
                                        : "seed,train_rmse,train_cc,test_rmse,test_cc\n";
    double train = 0.0, train_cc = 0.0, test = 0.0, cc = 0.0, active = 0.0;
    for (const SeedMetrics& r : rows) {
        out += std::to_string(r.seed);
        out += ',';
        append_double(out, r.train_rmse);
        out += ',';
        append_double(out, r.train_cc);
        out += ',';
        append_double(out, r.test_rmse);
        out += ',';
        append_double(out, r.test_cc);
        if (with_active_rules) {
            out += ',';
            out += std::to_string(r.active_rules);
        }
        out += '\n';
        train += r.train_rmse;
        train_cc += r.train_cc;
        test += r.test_rmse;
        cc += r.test_cc;
        active += static_cast<double>(r.active_rules);
    }
    if (!rows.empty()) {
        auto n = static_cast<double>(rows.size());
        out += "mean,";
        append_double(out, train / n);
        out += ',';
        append_double(out, train_cc / n);
        out += ',';
        append_double(out, test / n);
        out += ',';
        append_double(out, cc / n);
        if (with_active_rules) {
            out += ',';
            append_double(out, active / n);
        }
        out += '\n';
    }
    return out;
}

std::string predictions_csv(std::span<const double> targets, std::span<const double> predictions) {
    if (targets.size() != predictions.size())
        throw DimensionMismatch(std::to_string(predictions.size()) + " predictions against " +
                                std::to_string(targets.size()) + " targets");
    std::string out = "index,target,prediction\n";
    for (std::size_t i = 0; i < targets.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        append_double(out, targets[i]);
        out += ',';
        append_double(out, predictions[i]);
        out += '\n';
    }
    return out;
}

std::string comparison_csv(std::span<const ParadigmSummary> rows) {
    std::string out = "paradigm,train_rmse,test_rmse,test_cc\n";
    for (const ParadigmSummary& r : rows) {
        out += r.name;
        out += ',';
        append_double(out, r.train_rmse);
        out += ',';
        append_double(out, r.test_rmse);
        out += ',';
        append_double(out, r.test_cc);
        out += '\n';
    }
    return out;
}

std::string curve_csv(std::span<const double> rmse_per_epoch) {
    std::string out = "epoch,train_rmse\n";
    for (std::size_t e = 0; e < rmse_per_epoch.size(); ++e) {
        out += std::to_string(e + 1);
        out += ',';
        append_double(out, rmse_per_epoch[e]);
        out += '\n';
    }
    return out;
}

} // namespace evonf
