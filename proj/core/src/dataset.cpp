#include "evonf/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "evonf/errors.hpp"
#include "evonf/rng.hpp"
#include "evonf/text.hpp"

namespace evonf {

namespace {

constexpr std::uint64_t kSplitSalt = 0x53504c49; // "SPLI"
constexpr std::uint64_t kSynthSalt = 0x53594e54; // "SYNT"

std::string schema_header() {
    std::string h;
    for (const auto& f : kExportInputs) {
        h += f.name;
        h += ',';
    }
    h += kExportTarget;
    return h;
}

// Splits one CSV line on commas; no quoting, fields are bare numbers.
std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

void Dataset::add_row(std::span<const double> inputs, double target) {
    if (n_inputs == 0) n_inputs = inputs.size();
    if (inputs.size() != n_inputs)
        throw DimensionMismatch("row has " + std::to_string(inputs.size()) + " inputs, dataset has " +
                                std::to_string(n_inputs));
    x.insert(x.end(), inputs.begin(), inputs.end());
    y.push_back(target);
}

Dataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string content = buffer.str();

    const std::size_t n_cols = kExportInputs.size() + 1;
    Dataset data;
    data.n_inputs = kExportInputs.size();

    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos <= content.size()) {
        std::size_t eol = content.find('\n', pos);
        std::string_view line(content.data() + pos,
                              (eol == std::string::npos ? content.size() : eol) - pos);
        pos = (eol == std::string::npos) ? content.size() + 1 : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (line.empty()) {
            if (pos > content.size()) break; // trailing newline
            throw ParseError(line_no, 1, "blank line");
        }

        auto fields = split_fields(line);
        if (!saw_header) {
            const std::string header = schema_header();
            auto expected = split_fields(header);
            if (fields.size() != expected.size())
                throw ParseError(line_no, fields.size(),
                                 "header has " + std::to_string(fields.size()) + " columns, expected " +
                                     std::to_string(expected.size()));
            for (std::size_t c = 0; c < fields.size(); ++c)
                if (fields[c] != expected[c])
                    throw ParseError(line_no, c + 1,
                                     "header column is '" + std::string(fields[c]) + "', expected '" +
                                         std::string(expected[c]) + "'");
            saw_header = true;
            continue;
        }

        if (fields.size() != n_cols)
            throw ParseError(line_no, fields.size(),
                             "row has " + std::to_string(fields.size()) + " columns, expected " +
                                 std::to_string(n_cols));
        double row[kExportInputs.size() + 1];
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (!parse_double(fields[c], row[c]))
                throw ParseError(line_no, c + 1, "'" + std::string(fields[c]) + "' is not a number");
            if (!std::isfinite(row[c]))
                throw ParseError(line_no, c + 1, "value is not finite");
        }
        for (std::size_t c = 0; c < kExportInputs.size(); ++c) {
            if (row[c] < kExportInputs[c].lo || row[c] > kExportInputs[c].hi)
                throw RangeViolation(line_no, c + 1,
                                     std::string(kExportInputs[c].name) + " = " + format_double(row[c]) +
                                         " outside [" + format_double(kExportInputs[c].lo) + ", " +
                                         format_double(kExportInputs[c].hi) + "]");
        }
        data.add_row(std::span<const double>(row, kExportInputs.size()), row[kExportInputs.size()]);
    }

    if (!saw_header) throw DatasetEmpty(path.string() + " has no header");
    if (data.empty()) throw DatasetEmpty(path.string() + " has no data rows");
    return data;
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
    if (data.n_inputs != kExportInputs.size())
        throw DimensionMismatch("dataset has " + std::to_string(data.n_inputs) +
                                " inputs, export schema has " + std::to_string(kExportInputs.size()));
    std::string out = schema_header();
    out += '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto row = data.row(i);
        for (double v : row) {
            append_double(out, v);
            out += ',';
        }
        append_double(out, data.y[i]);
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << out;
    if (!f) throw IoError("short write to " + path.string());
}

std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction, std::uint64_t seed) {
    if (data.size() < 2) throw DatasetTooSmall("need at least 2 rows to split");
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0))
        throw ConfigInvalid("train fraction must lie strictly between 0 and 1");
    const std::size_t n = data.size();
    auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train == n)
        throw ConfigInvalid("split of " + std::to_string(n) + " rows at fraction " +
                            format_double(train_fraction) + " leaves one side empty");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(Rng::derive(seed, kSplitSalt));
    for (std::size_t i = n - 1; i > 0; --i) {
        std::size_t j = rng.index(i + 1);
        std::swap(order[i], order[j]);
    }

    Dataset train, test;
    train.n_inputs = test.n_inputs = data.n_inputs;
    for (std::size_t i = 0; i < n; ++i) {
        Dataset& side = (i < n_train) ? train : test;
        side.add_row(data.row(order[i]), data.y[order[i]]);
    }
    return {std::move(train), std::move(test)};
}

std::pair<Dataset, ScalingRecord> scale(const Dataset& data) {
    if (data.empty()) throw DatasetEmpty("nothing to scale");
    ScalingRecord rec;
    rec.x_min.assign(data.n_inputs, 0.0);
    rec.x_max.assign(data.n_inputs, 0.0);
    for (std::size_t j = 0; j < data.n_inputs; ++j) {
        double lo = data.x[j], hi = data.x[j];
        for (std::size_t i = 1; i < data.size(); ++i) {
            double v = data.x[i * data.n_inputs + j];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo == hi) throw ZeroRange("input column " + std::to_string(j + 1) + " is constant");
        rec.x_min[j] = lo;
        rec.x_max[j] = hi;
    }
    auto [ymin, ymax] = std::minmax_element(data.y.begin(), data.y.end());
    if (*ymin == *ymax) throw ZeroRange("target column is constant");
    rec.y_min = *ymin;
    rec.y_max = *ymax;
    return {scale_with(data, rec), rec};
}

Dataset scale_with(const Dataset& data, const ScalingRecord& record) {
    if (record.x_min.size() != data.n_inputs || record.x_max.size() != data.n_inputs)
        throw DimensionMismatch("scaling record covers " + std::to_string(record.x_min.size()) +
                                " inputs, dataset has " + std::to_string(data.n_inputs));
    Dataset out;
    out.n_inputs = data.n_inputs;
    out.x.resize(data.x.size());
    out.y.resize(data.y.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = 0; j < data.n_inputs; ++j) {
            double v = data.x[i * data.n_inputs + j];
            out.x[i * data.n_inputs + j] =
                (v - record.x_min[j]) / (record.x_max[j] - record.x_min[j]);
        }
        out.y[i] = (data.y[i] - record.y_min) / (record.y_max - record.y_min);
    }
    out.scaling = record;
    return out;
}

Dataset unscale(const Dataset& data, const ScalingRecord& record) {
    if (record.x_min.size() != data.n_inputs || record.x_max.size() != data.n_inputs)
        throw DimensionMismatch("scaling record covers " + std::to_string(record.x_min.size()) +
                                " inputs, dataset has " + std::to_string(data.n_inputs));
    Dataset out;
    out.n_inputs = data.n_inputs;
    out.x.resize(data.x.size());
    out.y.resize(data.y.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = 0; j < data.n_inputs; ++j) {
            double v = data.x[i * data.n_inputs + j];
            out.x[i * data.n_inputs + j] = v * (record.x_max[j] - record.x_min[j]) + record.x_min[j];
        }
        out.y[i] = data.y[i] * (record.y_max - record.y_min) + record.y_min;
    }
    return out;
}

Metrics compute_metrics(std::span<const double> predictions, std::span<const double> targets) {
    if (predictions.size() != targets.size())
        throw DimensionMismatch(std::to_string(predictions.size()) + " predictions against " +
                                std::to_string(targets.size()) + " targets");
    const std::size_t n = targets.size();
    if (n < 2) throw DatasetTooSmall("need at least 2 points for metrics");

    double se = 0.0, p_mean = 0.0, t_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = predictions[i] - targets[i];
        se += e * e;
        p_mean += predictions[i];
        t_mean += targets[i];
    }
    p_mean /= static_cast<double>(n);
    t_mean /= static_cast<double>(n);

    double spp = 0.0, stt = 0.0, spt = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dp = predictions[i] - p_mean;
        double dt = targets[i] - t_mean;
        spp += dp * dp;
        stt += dt * dt;
        spt += dp * dt;
    }
    if (spp == 0.0) throw ZeroVariance("predictions are constant");
    if (stt == 0.0) throw ZeroVariance("targets are constant");

    Metrics m;
    m.rmse = std::sqrt(se / static_cast<double>(n));
    m.cc = spt / std::sqrt(spp * stt);
    return m;
}

Dataset synth_generate(std::size_t n, std::uint64_t seed, double noise_sd) {
    if (n == 0) throw InvalidParameter("cannot draw an empty dataset");
    if (noise_sd < 0.0) throw InvalidParameter("noise standard deviation must be non-negative");

    Rng rng(Rng::derive(seed, kSynthSalt));
    Dataset data;
    data.n_inputs = kExportInputs.size();
    double row[kExportInputs.size()];
    double u[kExportInputs.size()];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < kExportInputs.size(); ++j) {
            const auto& f = kExportInputs[j];
            row[j] = static_cast<double>(
                rng.uniform_int(static_cast<long>(f.lo), static_cast<long>(f.hi)));
            u[j] = (row[j] - f.lo) / (f.hi - f.lo);
        }
        // Smooth nonlinear response on the normalized ordinals: an interaction
        // of financial independence with strategic involvement, a saturating
        // contrast of resources against tax protection, and two minor terms,
        // squashed through a logistic so the target lives in (0, 1).
        double z = 3.0 * u[5] * u[4] + 1.5 * std::tanh(2.0 * (u[1] - u[2])) + 1.0 * u[0] +
                   0.8 * u[3] * u[6] - 2.0;
        double target = 1.0 / (1.0 + std::exp(-z)) + noise_sd * rng.gaussian();
        data.add_row(std::span<const double>(row, kExportInputs.size()), target);
    }
    return data;
}

} // namespace evonf
