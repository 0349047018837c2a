#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace evonf {

/// One input column of the export-intensity survey: name plus the ordinal
/// range its answers may take.
struct SchemaField {
    std::string_view name;
    double lo;
    double hi;
};

/// Fixed input schema of the export-intensity task. CSV files carry these
/// columns, in this order, followed by the target column.
inline constexpr std::array<SchemaField, 7> kExportInputs{{
    {"product_manufactured", 1.0, 5.0},
    {"resources", 1.0, 5.0},
    {"tax_protection", 1.0, 5.0},
    {"customers_market", 1.0, 4.0},
    {"involvement_strategy", 1.0, 4.0},
    {"financial_independence", 1.0, 5.0},
    {"suppliers_relationship", 1.0, 5.0},
}};

inline constexpr std::string_view kExportTarget = "export_intensity";

/// Bumped whenever the synthetic generator's output changes for a fixed
/// (n, seed, noise_sd). Artifacts record it so runs stay comparable.
inline constexpr int kSynthVersion = 1;

/// Per-column min/max captured by scale(); applied verbatim to held-out data
/// so train and test live in the same coordinates.
struct ScalingRecord {
    std::vector<double> x_min;
    std::vector<double> x_max;
    double y_min = 0.0;
    double y_max = 1.0;
};

/// In-memory tabular regression data, rows stored contiguously.
struct Dataset {
    std::size_t n_inputs = 0;
    std::vector<double> x; ///< row-major, size() * n_inputs
    std::vector<double> y;
    std::optional<ScalingRecord> scaling; ///< set on datasets produced by scale()

    std::size_t size() const { return y.size(); }
    bool empty() const { return y.empty(); }
    std::span<const double> row(std::size_t i) const {
        return {x.data() + i * n_inputs, n_inputs};
    }
    void add_row(std::span<const double> inputs, double target);
};

/// Regression quality summary. cc is the Pearson correlation between
/// prediction and target.
struct Metrics {
    double rmse = 0.0;
    double cc = 0.0;
};

/// Reads an export-intensity CSV. The header must match the schema exactly;
/// inputs are range-checked against it. Throws IoError, ParseError,
/// RangeViolation, or DatasetEmpty (header-only file).
Dataset load_csv(const std::filesystem::path& path);

/// Writes a dataset in the export schema. Values are printed in shortest
/// round-trip form, so load_csv(write_csv(d)) reproduces d bit for bit.
void write_csv(const Dataset& data, const std::filesystem::path& path);

/// Shuffles rows with the given seed and cuts at round(train_fraction * n).
/// Throws DatasetTooSmall below 2 rows, ConfigInvalid when either side
/// would be empty.
std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction, std::uint64_t seed);

/// Min-max scales every column (inputs and target) to [0, 1] and returns the
/// stats used. A constant column throws ZeroRange.
std::pair<Dataset, ScalingRecord> scale(const Dataset& data);

/// Applies a previously captured scaling. Values outside the recorded ranges
/// map outside [0, 1]; that is expected for held-out data.
Dataset scale_with(const Dataset& data, const ScalingRecord& record);

/// Inverts scale_with, mapping a scaled dataset back to original
/// coordinates.
Dataset unscale(const Dataset& data, const ScalingRecord& record);

/// RMSE and Pearson correlation of predictions against targets. Requires
/// equal lengths (DimensionMismatch) and at least 2 points (DatasetTooSmall);
/// a constant side throws ZeroVariance.
Metrics compute_metrics(std::span<const double> predictions, std::span<const double> targets);

/// Draws a synthetic export-intensity survey: each input uniform over its
/// ordinal range, target from a smooth nonlinear response plus Gaussian
/// noise of the given standard deviation. Deterministic in (n, seed,
/// noise_sd) for a fixed kSynthVersion.
Dataset synth_generate(std::size_t n, std::uint64_t seed, double noise_sd);

} // namespace evonf
