// Microbenchmarks for the hot paths: the intersection operator, rule firing,
// whole-system inference, one gradient epoch, and one baseline epoch.

#include <benchmark/benchmark.h>

#include <vector>

#include "evonf/dataset.hpp"
#include "evonf/genome.hpp"
#include "evonf/local_search.hpp"
#include "evonf/mlp.hpp"
#include "evonf/model.hpp"
#include "evonf/rng.hpp"
#include "evonf/tnorm.hpp"

using namespace evonf;

namespace {

// The reference-scale system: 7 inputs, 2 Gaussian labels each, 128 rules.
TSKModel reference_model() {
    const ChromosomeLayout layout = make_grid_layout(7, 2, MFKind::gaussian);
    const std::vector<double> x_min(7, 0.0), x_max(7, 1.0);
    Rng rng(1);
    const Chromosome chrom = random_chromosome(layout, default_gene_bounds(layout, x_min, x_max), rng);
    return decode(chrom, layout).model;
}

Dataset scaled_synth(std::size_t n) {
    Dataset raw = synth_generate(n, 7, 0.05);
    return scale(raw).first;
}

void bench_tnorm(benchmark::State& state) {
    Rng rng(2);
    std::vector<double> a(1024), b(1024), p(1024);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.uniform(0.01, 1.0);
        b[i] = rng.uniform(0.01, 1.0);
        p[i] = rng.uniform(0.1, 10.0);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tnorm_ss(a[i], b[i], {p[i]}));
        i = (i + 1) & 1023;
    }
}
BENCHMARK(bench_tnorm);

void bench_firing(benchmark::State& state) {
    const TSKModel model = reference_model();
    const Dataset data = scaled_synth(69);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(firing_strength(model, model.rulebase.rules[i & 127], data.row(i % data.size())));
        ++i;
    }
}
BENCHMARK(bench_firing);

void bench_infer(benchmark::State& state) {
    const TSKModel model = reference_model();
    const Dataset data = scaled_synth(69);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(infer(model, data.row(i % data.size())));
        ++i;
    }
}
BENCHMARK(bench_infer);

void bench_gradient_epoch(benchmark::State& state) {
    const TSKModel model = reference_model();
    const Dataset data = scaled_synth(69);
    for (auto _ : state) benchmark::DoNotOptimize(gradient(model, data));
}
BENCHMARK(bench_gradient_epoch);

void bench_gd_step(benchmark::State& state) {
    TSKModel model = reference_model();
    const Dataset data = scaled_synth(69);
    GdState gd;
    for (auto _ : state) gd_step(model, data, {0.01, 0.5}, gd);
}
BENCHMARK(bench_gd_step);

void bench_mlp_epoch(benchmark::State& state) {
    MLP net = make_mlp(7, 12, 1);
    const Dataset data = scaled_synth(69);
    for (auto _ : state) (void)mlp_train(net, data, 0.05, 0.2, 1);
}
BENCHMARK(bench_mlp_epoch);

} // namespace

BENCHMARK_MAIN();
