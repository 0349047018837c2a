// Command-line front end: train EvoNF or the MLP baseline on CSV or
// synthetic data, compare finished runs, and draw synthetic datasets.
// Artifacts are deterministic under fixed seeds; wall-clock timestamps are
// confined to meta.json.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "evonf/artifacts.hpp"
#include "evonf/dataset.hpp"
#include "evonf/errors.hpp"
#include "evonf/evolution.hpp"
#include "evonf/mlp.hpp"
#include "evonf/serialize.hpp"
#include "evonf/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string now_utc() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string single_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw evonf::IoError("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw evonf::IoError("short write to " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw evonf::MissingArtifact(path.string() + " does not exist");
    std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return s;
}

// Shared data source flags: a CSV file or the synthetic generator.
struct DataOptions {
    std::string data_path;
    bool use_synth = false;
    std::size_t synth_n = 69;
    std::uint64_t synth_seed = 7;
    double synth_noise = 0.05;
    double train_fraction = 0.9;
    std::uint64_t split_seed = 7;
};

void add_data_options(CLI::App* cmd, DataOptions& opt) {
    cmd->add_option("--data", opt.data_path, "CSV file in the export-intensity schema");
    cmd->add_flag("--synth", opt.use_synth, "Draw a synthetic dataset instead of reading a file");
    cmd->add_option("--synth-n", opt.synth_n, "Synthetic row count")->capture_default_str();
    cmd->add_option("--synth-seed", opt.synth_seed, "Synthetic generator seed")->capture_default_str();
    cmd->add_option("--synth-noise", opt.synth_noise, "Synthetic target noise standard deviation")
        ->capture_default_str();
    cmd->add_option("--train-fraction", opt.train_fraction, "Fraction of rows used for training")
        ->capture_default_str();
    cmd->add_option("--split-seed", opt.split_seed, "Shuffle seed of the train/test split")
        ->capture_default_str();
}

evonf::Dataset resolve_data(const DataOptions& opt) {
    if (!opt.data_path.empty() && opt.use_synth)
        throw evonf::ConfigInvalid("--data and --synth are mutually exclusive");
    if (opt.data_path.empty() && !opt.use_synth)
        throw evonf::ConfigInvalid("either --data or --synth is required");
    if (opt.use_synth) return evonf::synth_generate(opt.synth_n, opt.synth_seed, opt.synth_noise);
    return evonf::load_csv(opt.data_path);
}

json data_meta(const DataOptions& opt, std::size_t rows, std::size_t train_rows,
               std::size_t test_rows) {
    json j;
    j["source"] = opt.use_synth ? "synth" : opt.data_path;
    if (opt.use_synth)
        j["synth"] = {{"n", opt.synth_n},
                      {"seed", opt.synth_seed},
                      {"noise_sd", opt.synth_noise},
                      {"version", evonf::kSynthVersion}};
    j["rows"] = rows;
    j["train_rows"] = train_rows;
    j["test_rows"] = test_rows;
    j["train_fraction"] = opt.train_fraction;
    j["split_seed"] = opt.split_seed;
    return j;
}

std::vector<double> predict_all(const evonf::TSKModel& model, const evonf::Dataset& data) {
    std::vector<double> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = evonf::infer(model, data.row(i));
    return out;
}

std::vector<double> predict_all(const evonf::MLP& net, const evonf::Dataset& data) {
    std::vector<double> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = evonf::mlp_forward(net, data.row(i));
    return out;
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
    std::size_t n = 69;
    std::uint64_t seed = 7;
    double noise = 0.05;
    std::string out_dir;
};

void run_synth(const SynthArgs& a) {
    evonf::Dataset data = evonf::synth_generate(a.n, a.seed, a.noise);
    fs::create_directories(a.out_dir);
    evonf::write_csv(data, fs::path(a.out_dir) / "dataset.csv");
    json meta;
    meta["command"] = "synth";
    meta["created"] = now_utc();
    meta["synth"] = {{"n", a.n}, {"seed", a.seed}, {"noise_sd", a.noise},
                     {"version", evonf::kSynthVersion}};
    write_text(fs::path(a.out_dir) / "meta.json", meta.dump(2) + "\n");
    std::cout << "wrote " << (fs::path(a.out_dir) / "dataset.csv").string() << " (" << data.size()
              << " rows)\n";
}

// ---- train-evonf ----------------------------------------------------------

struct TrainEvonfArgs {
    DataOptions data;
    std::vector<std::uint64_t> seeds{1};
    std::string out_dir;
    std::string mf_kind = "gaussian";
    evonf::EvolutionConfig config;
};

void run_train_evonf(const TrainEvonfArgs& a) {
    evonf::EvolutionConfig cfg = a.config;
    if (a.mf_kind == "gaussian")
        cfg.mf_kind = evonf::MFKind::gaussian;
    else if (a.mf_kind == "bell")
        cfg.mf_kind = evonf::MFKind::bell;
    else
        throw evonf::ConfigInvalid("--mf-kind must be 'gaussian' or 'bell'");
    if (a.seeds.empty()) throw evonf::ConfigInvalid("at least one seed is required");

    evonf::Dataset raw = resolve_data(a.data);
    auto [train_raw, test_raw] = evonf::split(raw, a.data.train_fraction, a.data.split_seed);
    auto [train, rec] = evonf::scale(train_raw);
    evonf::Dataset test = evonf::scale_with(test_raw, rec);

    fs::create_directories(a.out_dir);
    std::vector<evonf::SeedMetrics> rows;
    for (std::uint64_t seed : a.seeds) {
        cfg.rng_seed = seed;
        evonf::EvolveResult res = evonf::evolve(cfg, train, test);

        std::vector<double> pred_train = predict_all(res.best.model, train);
        std::vector<double> pred_test = predict_all(res.best.model, test);
        evonf::Metrics mtr = evonf::compute_metrics(pred_train, train.y);
        evonf::Metrics mte = evonf::compute_metrics(pred_test, test.y);
        rows.push_back({seed, mtr.rmse, mtr.cc, mte.rmse, mte.cc,
                        evonf::count_active(res.best.model.rulebase)});

        std::string tag = "_seed" + std::to_string(seed);
        write_text(fs::path(a.out_dir) / ("generation_log" + tag + ".csv"),
                   evonf::generation_log_csv(res.log));
        write_text(fs::path(a.out_dir) / ("predictions" + tag + ".csv"),
                   evonf::predictions_csv(test.y, pred_test));
        write_text(fs::path(a.out_dir) / ("rulebase" + tag + ".txt"),
                   evonf::rulebase_to_text(res.best.model));
        evonf::ModelBundle bundle{res.best.model, res.best.learn, rec};
        write_text(fs::path(a.out_dir) / ("model" + tag + ".json"), evonf::bundle_to_json(bundle));
    }
    write_text(fs::path(a.out_dir) / "metrics.csv", evonf::metrics_csv(rows, true));

    json meta;
    meta["command"] = "train-evonf";
    meta["created"] = now_utc();
    meta["data"] = data_meta(a.data, raw.size(), train.size(), test.size());
    meta["seeds"] = a.seeds;
    meta["config"] = {{"population", cfg.population_size},
                      {"generations", cfg.max_generations},
                      {"selection_pressure", cfg.selection_pressure},
                      {"elitism", cfg.elitism_fraction},
                      {"mutation_rate_start", cfg.mutation_rate_start},
                      {"mutation_rate_end", cfg.mutation_rate_end},
                      {"mutation_shape_b", cfg.mutation_shape_b},
                      {"gd_epochs", cfg.gd_epochs_per_eval},
                      {"mf_per_input", cfg.mf_per_input},
                      {"mf_kind", a.mf_kind},
                      {"early_stop_rmse", cfg.early_stop_rmse}};
    write_text(fs::path(a.out_dir) / "meta.json", meta.dump(2) + "\n");
    std::cout << "wrote metrics for " << a.seeds.size() << " seed(s) to " << a.out_dir << "\n";
}

// ---- train-mlp ------------------------------------------------------------

struct TrainMlpArgs {
    DataOptions data;
    std::vector<std::uint64_t> seeds{1};
    std::string out_dir;
    std::size_t hidden = 12;
    double rate = 0.05;
    double momentum = 0.2;
    std::size_t epochs = 10000;
};

void run_train_mlp(const TrainMlpArgs& a) {
    if (a.seeds.empty()) throw evonf::ConfigInvalid("at least one seed is required");
    evonf::Dataset raw = resolve_data(a.data);
    auto [train_raw, test_raw] = evonf::split(raw, a.data.train_fraction, a.data.split_seed);
    auto [train, rec] = evonf::scale(train_raw);
    evonf::Dataset test = evonf::scale_with(test_raw, rec);

    fs::create_directories(a.out_dir);
    std::vector<evonf::SeedMetrics> rows;
    for (std::uint64_t seed : a.seeds) {
        evonf::MLP net = evonf::make_mlp(train.n_inputs, a.hidden, seed);
        evonf::MLPTrainResult res = evonf::mlp_train(net, train, a.rate, a.momentum, a.epochs);

        std::vector<double> pred_train = predict_all(net, train);
        std::vector<double> pred_test = predict_all(net, test);
        evonf::Metrics mtr = evonf::compute_metrics(pred_train, train.y);
        evonf::Metrics mte = evonf::compute_metrics(pred_test, test.y);
        rows.push_back({seed, mtr.rmse, mtr.cc, mte.rmse, mte.cc, 0});

        std::string tag = "_seed" + std::to_string(seed);
        write_text(fs::path(a.out_dir) / ("curve" + tag + ".csv"), evonf::curve_csv(res.curve));
        write_text(fs::path(a.out_dir) / ("predictions" + tag + ".csv"),
                   evonf::predictions_csv(test.y, pred_test));
    }
    write_text(fs::path(a.out_dir) / "metrics.csv", evonf::metrics_csv(rows, false));

    json meta;
    meta["command"] = "train-mlp";
    meta["created"] = now_utc();
    meta["data"] = data_meta(a.data, raw.size(), train.size(), test.size());
    meta["seeds"] = a.seeds;
    meta["config"] = {{"hidden", a.hidden},
                      {"rate", a.rate},
                      {"momentum", a.momentum},
                      {"epochs", a.epochs}};
    write_text(fs::path(a.out_dir) / "meta.json", meta.dump(2) + "\n");
    std::cout << "wrote metrics for " << a.seeds.size() << " seed(s) to " << a.out_dir << "\n";
}

// ---- compare --------------------------------------------------------------

struct CompareArgs {
    std::string evonf_dir;
    std::string mlp_dir;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
};

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<std::vector<std::string>> read_csv_rows(const fs::path& path) {
    std::string text = read_text(path);
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, (eol == std::string::npos ? text.size() : eol) - pos);
        pos = (eol == std::string::npos) ? text.size() : eol + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) rows.push_back(split_line(line));
    }
    if (rows.size() < 2) throw evonf::FormatError(path.string() + " has no data rows");
    return rows;
}

double field_as_double(const std::string& field, const fs::path& path) {
    double v = 0.0;
    if (!evonf::parse_double(field, v))
        throw evonf::FormatError("'" + field + "' in " + path.string() + " is not a number");
    return v;
}

// Pulls the mean row of a metrics.csv along with the first seed listed.
struct MetricsSummary {
    double train_rmse = 0.0;
    double test_rmse = 0.0;
    double test_cc = 0.0;
    std::uint64_t first_seed = 0;
};

MetricsSummary read_metrics(const fs::path& path) {
    auto rows = read_csv_rows(path);
    const auto& header = rows.front();
    auto col = [&](const std::string& name) {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == name) return c;
        throw evonf::FormatError(path.string() + " lacks column '" + name + "'");
    };
    std::size_t c_train = col("train_rmse"), c_test = col("test_rmse"), c_cc = col("test_cc");
    MetricsSummary out;
    bool saw_mean = false, saw_seed = false;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r][0] == "mean") {
            out.train_rmse = field_as_double(rows[r][c_train], path);
            out.test_rmse = field_as_double(rows[r][c_test], path);
            out.test_cc = field_as_double(rows[r][c_cc], path);
            saw_mean = true;
        } else if (!saw_seed) {
            out.first_seed = static_cast<std::uint64_t>(field_as_double(rows[r][0], path));
            saw_seed = true;
        }
    }
    if (!saw_mean || !saw_seed)
        throw evonf::FormatError(path.string() + " lacks a mean or seed row");
    return out;
}

void run_compare(const CompareArgs& a) {
    MetricsSummary ev = read_metrics(fs::path(a.evonf_dir) / "metrics.csv");
    MetricsSummary ml = read_metrics(fs::path(a.mlp_dir) / "metrics.csv");

    std::uint64_t seed = a.seed.value_or(ev.first_seed);
    std::string pred_name = "predictions_seed" + std::to_string(seed) + ".csv";
    auto ev_rows = read_csv_rows(fs::path(a.evonf_dir) / pred_name);
    auto ml_rows = read_csv_rows(fs::path(a.mlp_dir) / pred_name);
    if (ev_rows.size() != ml_rows.size())
        throw evonf::DimensionMismatch("prediction files disagree on row count");

    std::string joined = "index,target,evonf,mlp\n";
    for (std::size_t r = 1; r < ev_rows.size(); ++r) {
        const fs::path ep = fs::path(a.evonf_dir) / pred_name;
        const fs::path mp = fs::path(a.mlp_dir) / pred_name;
        double t_e = field_as_double(ev_rows[r][1], ep);
        double t_m = field_as_double(ml_rows[r][1], mp);
        if (t_e != t_m)
            throw evonf::ConfigInvalid("prediction targets differ between artifact sets; were the "
                                       "runs made on the same data and split?");
        joined += ev_rows[r][0];
        joined += ',';
        evonf::append_double(joined, t_e);
        joined += ',';
        evonf::append_double(joined, field_as_double(ev_rows[r][2], ep));
        joined += ',';
        evonf::append_double(joined, field_as_double(ml_rows[r][2], mp));
        joined += '\n';
    }

    std::vector<evonf::ParadigmSummary> table{
        {"evonf", ev.train_rmse, ev.test_rmse, ev.test_cc},
        {"mlp", ml.train_rmse, ml.test_rmse, ml.test_cc},
    };
    fs::create_directories(a.out_dir);
    write_text(fs::path(a.out_dir) / "comparison.csv", evonf::comparison_csv(table));
    write_text(fs::path(a.out_dir) / "predictions_compare.csv", joined);

    json meta;
    meta["command"] = "compare";
    meta["created"] = now_utc();
    meta["evonf_dir"] = a.evonf_dir;
    meta["mlp_dir"] = a.mlp_dir;
    meta["prediction_seed"] = seed;
    write_text(fs::path(a.out_dir) / "meta.json", meta.dump(2) + "\n");
    std::cout << evonf::comparison_csv(table);
}

void add_out_dir(CLI::App* cmd, std::string& out_dir) {
    cmd->add_option("--out-dir", out_dir, "Artifact directory (env EVONF_OUT_DIR)")
        ->envname("EVONF_OUT_DIR")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"EvoNF: evolutionary optimization of Takagi-Sugeno fuzzy systems, with an MLP "
                 "baseline"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI-style key=value file");

    SynthArgs synth;
    synth.out_dir = "evonf_out";
    auto* sc_synth = app.add_subcommand("synth", "Draw a synthetic export-intensity dataset");
    sc_synth->add_option("--n", synth.n, "Row count")->capture_default_str();
    sc_synth->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
    sc_synth->add_option("--noise", synth.noise, "Target noise standard deviation")
        ->capture_default_str();
    add_out_dir(sc_synth, synth.out_dir);
    sc_synth->callback([&] { run_synth(synth); });

    TrainEvonfArgs te;
    te.out_dir = "evonf_out";
    auto* sc_te = app.add_subcommand("train-evonf", "Evolve a Takagi-Sugeno fuzzy system");
    add_data_options(sc_te, te.data);
    sc_te->add_option("--seeds", te.seeds, "Run seeds (comma-separated)")
        ->delimiter(',')
        ->capture_default_str();
    add_out_dir(sc_te, te.out_dir);
    sc_te->add_option("--population", te.config.population_size, "Population size")
        ->capture_default_str();
    sc_te->add_option("--generations", te.config.max_generations, "Generation count")
        ->capture_default_str();
    sc_te->add_option("--selection-pressure", te.config.selection_pressure,
                      "Rank weight of the worst individual (0..1)")
        ->capture_default_str();
    sc_te->add_option("--elitism", te.config.elitism_fraction, "Elite fraction")
        ->capture_default_str();
    sc_te->add_option("--mutation-start", te.config.mutation_rate_start,
                      "Initial per-gene mutation rate")
        ->capture_default_str();
    sc_te->add_option("--mutation-end", te.config.mutation_rate_end, "Final per-gene mutation rate")
        ->capture_default_str();
    sc_te->add_option("--mutation-b", te.config.mutation_shape_b, "Non-uniform mutation decay b")
        ->capture_default_str();
    sc_te->add_option("--gd-epochs", te.config.gd_epochs_per_eval,
                      "Gradient epochs inside each fitness evaluation")
        ->capture_default_str();
    sc_te->add_option("--mf-per-input", te.config.mf_per_input, "Fuzzy labels per input")
        ->capture_default_str();
    sc_te->add_option("--mf-kind", te.mf_kind, "Membership family: gaussian or bell")
        ->capture_default_str();
    sc_te->add_option("--early-stop", te.config.early_stop_rmse,
                      "Stop when best training RMSE reaches this (0 disables)")
        ->capture_default_str();
    sc_te->callback([&] { run_train_evonf(te); });

    TrainMlpArgs tm;
    tm.out_dir = "evonf_out";
    auto* sc_tm = app.add_subcommand("train-mlp", "Train the backpropagation MLP baseline");
    add_data_options(sc_tm, tm.data);
    sc_tm->add_option("--seeds", tm.seeds, "Run seeds (comma-separated)")
        ->delimiter(',')
        ->capture_default_str();
    add_out_dir(sc_tm, tm.out_dir);
    sc_tm->add_option("--hidden", tm.hidden, "Hidden units")->capture_default_str();
    sc_tm->add_option("--rate", tm.rate, "Learning rate")->capture_default_str();
    sc_tm->add_option("--momentum", tm.momentum, "Momentum")->capture_default_str();
    sc_tm->add_option("--epochs", tm.epochs, "Training epochs")->capture_default_str();
    sc_tm->callback([&] { run_train_mlp(tm); });

    CompareArgs cs;
    cs.out_dir = "evonf_out";
    auto* sc_cmp = app.add_subcommand("compare", "Tabulate finished runs side by side");
    sc_cmp->add_option("--evonf", cs.evonf_dir, "Artifact directory of a train-evonf run")
        ->required();
    sc_cmp->add_option("--mlp", cs.mlp_dir, "Artifact directory of a train-mlp run")->required();
    std::uint64_t cmp_seed = 0;
    auto* seed_opt = sc_cmp->add_option("--seed", cmp_seed,
                                        "Seed whose predictions to join (default: first listed)");
    add_out_dir(sc_cmp, cs.out_dir);
    sc_cmp->callback([&] {
        if (*seed_opt) cs.seed = cmp_seed;
        run_compare(cs);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << "evonf: error: " << single_line(e.what()) << "\n";
        return e.get_exit_code();
    } catch (const std::exception& e) {
        std::cerr << "evonf: error: " << single_line(e.what()) << "\n";
        return 1;
    }
    return 0;
}
