#include "evonf/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "evonf/errors.hpp"

namespace evonf {

namespace {

constexpr std::uint64_t kInitSalt = 0x494e4954; // "INIT"
constexpr std::uint64_t kGenSalt = 0x47454e00;  // "GEN" + generation

struct Individual {
    Chromosome chrom;
    double fitness = 0.0;
};

void check_config(const EvolutionConfig& c) {
    if (c.population_size < 2) throw ConfigInvalid("population needs at least 2 individuals");
    if (c.selection_pressure < 0.0 || c.selection_pressure > 1.0)
        throw ConfigInvalid("selection pressure must lie in [0, 1]");
    if (c.elitism_fraction <= 0.0 || c.elitism_fraction >= 1.0)
        throw ConfigInvalid("elitism fraction must lie in (0, 1)");
    if (c.mutation_rate_start <= 0.0 || c.mutation_rate_start > 1.0 || c.mutation_rate_end < 0.0 ||
        c.mutation_rate_end > 1.0)
        throw ConfigInvalid("mutation rates must lie in (0, 1]");
    if (c.mutation_rate_end > c.mutation_rate_start)
        throw ConfigInvalid("mutation rate must not anneal upward");
    if (!(c.mutation_shape_b > 0.0)) throw ConfigInvalid("mutation shape b must be positive");
    if (c.mf_per_input == 0) throw ConfigInvalid("need at least one label per input");
}

std::size_t elite_count(const EvolutionConfig& c) {
    auto n = static_cast<std::size_t>(
        std::ceil(c.elitism_fraction * static_cast<double>(c.population_size)));
    if (n >= c.population_size)
        throw ConfigInvalid("elitism keeps the whole population, nothing would evolve");
    return n;
}

std::vector<std::size_t> fitness_order(const std::vector<Individual>& pop) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pop[a].fitness < pop[b].fitness; });
    return order;
}

GenerationLog log_generation(std::size_t t, const std::vector<Individual>& pop,
                             const ChromosomeLayout& layout, const Dataset& test) {
    std::size_t best = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        sum += pop[i].fitness;
        if (pop[i].fitness < pop[best].fitness) best = i;
    }
    EvoNFCandidate cand = decode(pop[best].chrom, layout);
    GenerationLog row;
    row.generation = t;
    row.best_train_rmse = pop[best].fitness;
    row.mean_train_rmse = sum / static_cast<double>(pop.size());
    row.best_test_rmse = loss(cand.model, test);
    row.active_rules = count_active(cand.model.rulebase);
    return row;
}

} // namespace

double nonuniform_mutate(double gene, GeneBounds bounds, const MutationSchedule& sched, Rng& rng) {
    if (sched.t_max == 0) throw InvalidParameter("mutation schedule needs t_max >= 1");
    bool down = rng.coin();
    double gamma = rng.uniform01();
    double progress = 1.0 - static_cast<double>(sched.t) / static_cast<double>(sched.t_max);
    double shrink = 1.0 - std::pow(gamma, std::pow(progress, sched.b));
    double span = down ? gene - bounds.lo : bounds.hi - gene;
    double mutated = down ? gene - span * shrink : gene + span * shrink;
    return std::clamp(mutated, bounds.lo, bounds.hi);
}

std::size_t rank_select(std::span<const double> fitness, double pressure, Rng& rng) {
    const std::size_t n = fitness.size();
    if (n == 0) throw InvalidParameter("cannot select from an empty population");
    if (n == 1) return 0;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
    // ties share a rank range; shuffle each tied run so no index is favored
    std::size_t run = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i < n && fitness[order[i]] == fitness[order[run]]) continue;
        for (std::size_t j = i - 1; j > run; --j) std::swap(order[j], order[run + rng.index(j - run + 1)]);
        run = i;
    }

    // linear rank weights: best 2 - pressure, worst pressure, mean 1
    double u = rng.uniform01() * static_cast<double>(n);
    double cum = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double weight = (2.0 - pressure) -
                        (2.0 - 2.0 * pressure) * (static_cast<double>(r) / static_cast<double>(n - 1));
        cum += weight;
        if (u < cum) return order[r];
    }
    return order[n - 1];
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, Rng& rng) {
    if (a.reals.size() != b.reals.size() || a.rule_bits.size() != b.rule_bits.size())
        throw LayoutMismatch("parents have different gene counts");
    Chromosome c1 = a, c2 = a;
    double lambda = rng.uniform01();
    for (std::size_t g = 0; g < a.reals.size(); ++g) {
        c1.reals[g] = lambda * a.reals[g] + (1.0 - lambda) * b.reals[g];
        c2.reals[g] = (1.0 - lambda) * a.reals[g] + lambda * b.reals[g];
    }
    for (std::size_t k = 0; k < a.rule_bits.size(); ++k) {
        bool from_a = rng.coin();
        c1.rule_bits[k] = from_a ? a.rule_bits[k] : b.rule_bits[k];
        c2.rule_bits[k] = from_a ? b.rule_bits[k] : a.rule_bits[k];
    }
    return {std::move(c1), std::move(c2)};
}

void mutate_chromosome(Chromosome& chrom, const MutationSchedule& sched, double rate, Rng& rng) {
    for (std::size_t g = 0; g < chrom.reals.size(); ++g)
        if (rng.uniform01() < rate)
            chrom.reals[g] = nonuniform_mutate(chrom.reals[g], chrom.bounds[g], sched, rng);
    bool any = false;
    for (auto& bit : chrom.rule_bits) {
        if (rng.uniform01() < rate) bit ^= 1;
        any |= bit != 0;
    }
    if (!any) chrom.rule_bits.back() = 1;
}

FitnessResult evaluate_fitness(const Chromosome& chrom, const ChromosomeLayout& layout,
                               const Dataset& train, std::size_t gd_epochs, const GdOptions& opts) {
    EvoNFCandidate cand = decode(chrom, layout);
    GdState state;
    for (std::size_t e = 0; e < gd_epochs; ++e) gd_step(cand.model, train, cand.learn, state, opts);

    // Divergence guard: finite genes always decode to a finite-loss model,
    // so checking the tuned parameters suffices.
    std::vector<double> params(model_param_count(cand.model));
    get_model_params(cand.model, params);
    bool finite = std::all_of(params.begin(), params.end(),
                              [](double v) { return std::isfinite(v); });
    if (!finite) cand = decode(chrom, layout);

    FitnessResult out;
    out.refined = encode(cand, layout, chrom.bounds);
    out.fitness = loss(decode(out.refined, layout).model, train);
    return out;
}

EvolveResult evolve(const EvolutionConfig& config, const Dataset& train, const Dataset& test) {
    check_config(config);
    if (train.empty()) throw DatasetEmpty("training set is empty");
    if (test.empty()) throw DatasetEmpty("test set is empty");
    if (test.n_inputs != train.n_inputs)
        throw DimensionMismatch("test set has " + std::to_string(test.n_inputs) +
                                " inputs, training set has " + std::to_string(train.n_inputs));
    const std::size_t n_elite = elite_count(config);
    const std::size_t pop_size = config.population_size;

    ChromosomeLayout layout = make_grid_layout(train.n_inputs, config.mf_per_input, config.mf_kind);
    std::vector<double> x_min(train.n_inputs), x_max(train.n_inputs);
    for (std::size_t j = 0; j < train.n_inputs; ++j) {
        double lo = train.x[j], hi = train.x[j];
        for (std::size_t i = 1; i < train.size(); ++i) {
            double v = train.x[i * train.n_inputs + j];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        x_min[j] = lo;
        x_max[j] = hi;
    }
    std::vector<GeneBounds> bounds = default_gene_bounds(layout, x_min, x_max);

    std::vector<Individual> pop;
    pop.reserve(pop_size);
    {
        Rng init_rng(Rng::derive(config.rng_seed, kInitSalt));
        for (std::size_t i = 0; i < pop_size; ++i) {
            Chromosome c = random_chromosome(layout, bounds, init_rng);
            FitnessResult r =
                evaluate_fitness(c, layout, train, config.gd_epochs_per_eval, config.gd_options);
            pop.push_back({std::move(r.refined), r.fitness});
        }
    }

    EvolveResult result;
    result.log.push_back(log_generation(0, pop, layout, test));

    for (std::size_t t = 1; t <= config.max_generations; ++t) {
        Rng rng(Rng::derive(config.rng_seed, kGenSalt + t));
        std::vector<std::size_t> order = fitness_order(pop);

        std::vector<Individual> next;
        next.reserve(pop_size);
        for (std::size_t e = 0; e < n_elite; ++e) next.push_back(pop[order[e]]);

        double frac = static_cast<double>(t) / static_cast<double>(config.max_generations);
        double rate = config.mutation_rate_start +
                      (config.mutation_rate_end - config.mutation_rate_start) * frac;
        MutationSchedule sched{t, config.max_generations, config.mutation_shape_b};

        std::vector<double> fitness(pop_size);
        for (std::size_t i = 0; i < pop_size; ++i) fitness[i] = pop[i].fitness;

        while (next.size() < pop_size) {
            std::size_t ia = rank_select(fitness, config.selection_pressure, rng);
            std::size_t ib = rank_select(fitness, config.selection_pressure, rng);
            auto [c1, c2] = crossover(pop[ia].chrom, pop[ib].chrom, rng);
            for (Chromosome* child : {&c1, &c2}) {
                if (next.size() >= pop_size) break;
                mutate_chromosome(*child, sched, rate, rng);
                validate_chromosome(*child, layout);
                FitnessResult r = evaluate_fitness(*child, layout, train, config.gd_epochs_per_eval,
                                                   config.gd_options);
                next.push_back({std::move(r.refined), r.fitness});
            }
        }
        pop = std::move(next);
        result.log.push_back(log_generation(t, pop, layout, test));
        if (config.early_stop_rmse > 0.0 &&
            result.log.back().best_train_rmse <= config.early_stop_rmse)
            break;
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (pop[i].fitness < pop[best].fitness) best = i;
    result.best = decode(pop[best].chrom, layout);
    result.best_chromosome = pop[best].chrom;
    result.best_fitness = pop[best].fitness;
    return result;
}

} // namespace evonf
