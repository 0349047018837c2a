#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "evonf/errors.hpp"
#include "evonf/genome.hpp"
#include "evonf/model.hpp"
#include "evonf/rng.hpp"
#include "oracles.hpp"

using namespace evonf;

TEST_CASE("genome: angular coding hand values") {
    CHECK(angular_encode(0.0) == 0.0);
    CHECK(angular_encode(1.0) == doctest::Approx(45.0).epsilon(1e-14));
    CHECK(angular_encode(10.0) == doctest::Approx(84.2894068625).epsilon(1e-10));
    CHECK(angular_decode(0.0) == 0.0);
    CHECK(angular_decode(-60.0) == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
    CHECK(angular_decode(45.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("genome: angular round trip across twelve decades") {
    for (double mag = 1e-6; mag <= 1.0000001e6; mag *= 10.0) {
        for (double sign : {-1.0, 1.0}) {
            const double x = sign * mag;
            const double back = angular_decode(angular_encode(x));
            CHECK(oracle::rel_err(back, x, 1e-300) <= 1e-9);
        }
    }
    Rng rng(401);
    for (int i = 0; i < 1000; ++i) {
        const double x = rng.uniform(-1e6, 1e6);
        const double back = angular_decode(angular_encode(x));
        CHECK(oracle::rel_err(back, x, 1e-12) <= 1e-9);
    }
}

TEST_CASE("genome: angular coding stays inside (-90, 90) and rejects the poles") {
    CHECK(std::abs(angular_encode(1e300)) < 90.0);
    CHECK(std::abs(angular_encode(-1e300)) < 90.0);
    CHECK_THROWS_AS((void)angular_decode(90.0), OutOfRange);
    CHECK_THROWS_AS((void)angular_decode(-90.0), OutOfRange);
    CHECK_THROWS_AS((void)angular_decode(135.0), OutOfRange);
}

TEST_CASE("genome: reference grid layout sizes") {
    const ChromosomeLayout layout = make_grid_layout(7, 2, MFKind::gaussian);
    CHECK(layout.rule_count() == 128);
    CHECK(layout.mf_gene_count() == 28);            // 14 MFs, 2 parameters each
    CHECK(layout.consequent_gene_count() == 1024);  // 128 rules, 8 coefficients each
    CHECK(layout.mf_gene_count() + layout.consequent_gene_count() == 1052);
    CHECK(layout.real_gene_count() == 1055);        // plus T-norm, rate, momentum
}

TEST_CASE("genome: minimal layout sizes") {
    const ChromosomeLayout layout = make_grid_layout(1, 1, MFKind::gaussian);
    CHECK(layout.rule_count() == 1);
    CHECK(layout.mf_gene_count() == 2);
    CHECK(layout.consequent_gene_count() == 2);
    CHECK(layout.real_gene_count() == 7);
    const ChromosomeLayout bell = make_grid_layout(2, 2, MFKind::bell);
    CHECK(bell.mf_gene_count() == 12); // 3 parameters per bell MF
    CHECK(bell.consequent_gene_count() == 12);
}

TEST_CASE("genome: gene index helpers tile the real vector without gaps") {
    const ChromosomeLayout layout = make_grid_layout(2, 3, MFKind::gaussian);
    std::vector<int> hits(layout.real_gene_count(), 0);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t l = 0; l < 3; ++l)
            for (std::size_t p = 0; p < 2; ++p) ++hits[layout.mf_gene_index(i, l, p)];
    for (std::size_t k = 0; k < layout.rule_count(); ++k)
        for (std::size_t c = 0; c < 3; ++c) ++hits[layout.consequent_gene_index(k, c)];
    ++hits[layout.tnorm_gene_index()];
    ++hits[layout.rate_gene_index()];
    ++hits[layout.momentum_gene_index()];
    for (int h : hits) CHECK(h == 1);
}

TEST_CASE("genome: layout_of reconstructs a grid model's frame") {
    Rng rng(409);
    const TSKModel model = oracle::random_smooth_model(rng, 2, 2);
    const ChromosomeLayout layout = layout_of(model);
    CHECK(layout.n_inputs == 2);
    CHECK(layout.mf_per_input == 2);
    CHECK(layout.kind == MFKind::gaussian);
    REQUIRE(layout.rule_count() == 4);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(layout.antecedents[k] == model.rulebase.rules[k].antecedent);
}

TEST_CASE("genome: layout_of rejects non-uniform models") {
    TSKModel model;
    model.partitions = {{GaussianMF{0.0, 1.0}, GaussianMF{1.0, 1.0}}, {GaussianMF{0.0, 1.0}}};
    model.rulebase = grid_partition_init(2, 1);
    CHECK_THROWS_AS((void)layout_of(model), LayoutMismatch);

    TSKModel mixed;
    mixed.partitions = {{GaussianMF{0.0, 1.0}, BellMF{1.0, 1.0, 0.0}}};
    mixed.rulebase = grid_partition_init(1, 2);
    CHECK_THROWS_AS((void)layout_of(mixed), LayoutMismatch);
}

TEST_CASE("genome: default bounds cover the documented ranges") {
    const ChromosomeLayout layout = make_grid_layout(2, 2, MFKind::gaussian);
    const std::vector<double> x_min{0.0, 10.0};
    const std::vector<double> x_max{1.0, 30.0};
    const auto bounds = default_gene_bounds(layout, x_min, x_max);
    REQUIRE(bounds.size() == layout.real_gene_count());
    // Input 2 has range 20: centers [10-10, 30+10], spreads [1, 20].
    const auto center = bounds[layout.mf_gene_index(1, 0, 0)];
    CHECK(center.lo == 0.0);
    CHECK(center.hi == 40.0);
    const auto spread = bounds[layout.mf_gene_index(1, 0, 1)];
    CHECK(spread.lo == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spread.hi == doctest::Approx(20.0).epsilon(1e-12));
    const auto cons = bounds[layout.consequent_gene_index(0, 0)];
    CHECK(cons.lo == -kAngularBoundDeg);
    CHECK(cons.hi == kAngularBoundDeg);
    CHECK(bounds[layout.tnorm_gene_index()].lo == kTNormParamMin);
    CHECK(bounds[layout.tnorm_gene_index()].hi == kTNormParamMax);
    CHECK(bounds[layout.rate_gene_index()].lo == kRateMin);
    CHECK(bounds[layout.rate_gene_index()].hi == kRateMax);
    CHECK(bounds[layout.momentum_gene_index()].lo == kMomentumMin);
    CHECK(bounds[layout.momentum_gene_index()].hi == kMomentumMax);

    const ChromosomeLayout bell = make_grid_layout(1, 1, MFKind::bell);
    const std::vector<double> bmin{0.0};
    const std::vector<double> bmax{1.0};
    const auto bb = default_gene_bounds(bell, bmin, bmax);
    CHECK(bb[bell.mf_gene_index(0, 0, 1)].lo == kBellExponentMin);
    CHECK(bb[bell.mf_gene_index(0, 0, 1)].hi == kBellExponentMax);

    const std::vector<double> flat_min{0.5};
    const std::vector<double> flat_max{0.5};
    const ChromosomeLayout g1 = make_grid_layout(1, 1, MFKind::gaussian);
    CHECK_THROWS_AS((void)default_gene_bounds(g1, flat_min, flat_max), ZeroRange);
}

TEST_CASE("genome: random chromosomes are valid") {
    const ChromosomeLayout layout = make_grid_layout(2, 2, MFKind::gaussian);
    const std::vector<double> x_min{0.0, 0.0};
    const std::vector<double> x_max{1.0, 1.0};
    Rng rng(419);
    for (int i = 0; i < 100; ++i) {
        const Chromosome c = random_chromosome(layout, default_gene_bounds(layout, x_min, x_max), rng);
        CHECK_NOTHROW(validate_chromosome(c, layout));
        bool any = false;
        for (auto bit : c.rule_bits) any |= bit != 0;
        CHECK(any);
    }
}

TEST_CASE("genome: decode reads the trailing hyperparameter genes verbatim") {
    const ChromosomeLayout layout = make_grid_layout(1, 2, MFKind::gaussian);
    const std::vector<double> x_min{0.0};
    const std::vector<double> x_max{1.0};
    Rng rng(421);
    Chromosome c = random_chromosome(layout, default_gene_bounds(layout, x_min, x_max), rng);
    c.reals[layout.tnorm_gene_index()] = 2.5;
    c.reals[layout.rate_gene_index()] = 0.125;
    c.reals[layout.momentum_gene_index()] = 0.5;
    const EvoNFCandidate cand = decode(c, layout);
    CHECK(cand.model.tnorm.p == 2.5);
    CHECK(cand.learn.rate == 0.125);
    CHECK(cand.learn.momentum == 0.5);
    // MF genes land verbatim too.
    CHECK(mf_param(cand.model.partitions[0][1], 0) == c.reals[layout.mf_gene_index(0, 1, 0)]);
    CHECK(mf_param(cand.model.partitions[0][1], 1) == c.reals[layout.mf_gene_index(0, 1, 1)]);
    // Consequents decode through the angular map.
    CHECK(cand.model.rulebase.rules[0].consequent[0] ==
          angular_decode(c.reals[layout.consequent_gene_index(0, 0)]));
}

TEST_CASE("genome: decode repairs an all-zero selection vector") {
    const ChromosomeLayout layout = make_grid_layout(2, 2, MFKind::gaussian);
    const std::vector<double> x_min{0.0, 0.0};
    const std::vector<double> x_max{1.0, 1.0};
    Rng rng(431);
    Chromosome c = random_chromosome(layout, default_gene_bounds(layout, x_min, x_max), rng);
    std::fill(c.rule_bits.begin(), c.rule_bits.end(), std::uint8_t{0});
    const EvoNFCandidate cand = decode(c, layout);
    CHECK(count_active(cand.model.rulebase) == 1);
    CHECK(cand.model.rulebase.active.back() == 1);
}

TEST_CASE("genome: decoded models pass validation") {
    const ChromosomeLayout layout = make_grid_layout(3, 2, MFKind::bell);
    const std::vector<double> x_min{0.0, 0.0, 0.0};
    const std::vector<double> x_max{1.0, 1.0, 1.0};
    Rng rng(433);
    for (int i = 0; i < 50; ++i) {
        const Chromosome c = random_chromosome(layout, default_gene_bounds(layout, x_min, x_max), rng);
        CHECK_NOTHROW(validate_model(decode(c, layout).model));
    }
}

TEST_CASE("genome: encode inverts decode") {
    const ChromosomeLayout layout = make_grid_layout(2, 2, MFKind::gaussian);
    const std::vector<double> x_min{0.0, 0.0};
    const std::vector<double> x_max{1.0, 1.0};
    Rng rng(439);
    for (int i = 0; i < 1000; ++i) {
        const auto bounds = default_gene_bounds(layout, x_min, x_max);
        const Chromosome c = random_chromosome(layout, bounds, rng);
        const EvoNFCandidate cand = decode(c, layout);
        const Chromosome back = encode(cand, layout, bounds);
        REQUIRE(back.reals.size() == c.reals.size());
        CHECK(back.rule_bits == c.rule_bits);
        for (std::size_t g = 0; g < c.reals.size(); ++g) {
            const bool angular = g >= layout.mf_gene_count() && g < layout.tnorm_gene_index();
            if (angular)
                CHECK(std::abs(back.reals[g] - c.reals[g]) <= 1e-10);
            else
                CHECK(back.reals[g] == c.reals[g]); // pure clamp, in-bounds genes pass through
        }
        // Candidate-level round trip: parameters identical to 1e-10 relative.
        const EvoNFCandidate again = decode(back, layout);
        for (std::size_t k = 0; k < cand.model.rulebase.rules.size(); ++k)
            for (std::size_t j = 0; j < cand.model.rulebase.rules[k].consequent.size(); ++j)
                CHECK(oracle::rel_err(again.model.rulebase.rules[k].consequent[j],
                                      cand.model.rulebase.rules[k].consequent[j],
                                      1e-12) <= 1e-10);
    }
}

TEST_CASE("genome: encode clamps parameters that drifted out of bounds") {
    const ChromosomeLayout layout = make_grid_layout(1, 1, MFKind::gaussian);
    const std::vector<double> x_min{0.0};
    const std::vector<double> x_max{1.0};
    const auto bounds = default_gene_bounds(layout, x_min, x_max);
    Rng rng(443);
    Chromosome c = random_chromosome(layout, bounds, rng);
    EvoNFCandidate cand = decode(c, layout);
    cand.model.partitions[0][0] = GaussianMF{99.0, 99.0}; // far outside the gene bounds
    cand.model.rulebase.rules[0].consequent[0] = 1e9;     // angle would exceed 89.9 degrees
    const Chromosome back = encode(cand, layout, bounds);
    CHECK_NOTHROW(validate_chromosome(back, layout));
    CHECK(back.reals[layout.mf_gene_index(0, 0, 0)] == bounds[layout.mf_gene_index(0, 0, 0)].hi);
    CHECK(back.reals[layout.consequent_gene_index(0, 0)] == kAngularBoundDeg);
    const EvoNFCandidate clamped = decode(back, layout);
    CHECK(clamped.model.rulebase.rules[0].consequent[0] ==
          doctest::Approx(std::tan(kAngularBoundDeg * std::numbers::pi / 180.0)).epsilon(1e-9));
}

TEST_CASE("genome: encode rejects a model that does not fit the layout") {
    const ChromosomeLayout layout = make_grid_layout(2, 2, MFKind::gaussian);
    const std::vector<double> x_min{0.0, 0.0};
    const std::vector<double> x_max{1.0, 1.0};
    const auto bounds = default_gene_bounds(layout, x_min, x_max);
    Rng rng(449);
    EvoNFCandidate cand = decode(random_chromosome(layout, bounds, rng), layout);
    cand.model.rulebase.rules[0].antecedent = {2u, 2u}; // grid rule 0 is (1, 1)
    CHECK_THROWS_AS((void)encode(cand, layout, bounds), LayoutMismatch);
}

TEST_CASE("genome: validate_chromosome failure modes") {
    const ChromosomeLayout layout = make_grid_layout(1, 2, MFKind::gaussian);
    const std::vector<double> x_min{0.0};
    const std::vector<double> x_max{1.0};
    const auto bounds = default_gene_bounds(layout, x_min, x_max);
    Rng rng(457);
    const Chromosome good = random_chromosome(layout, bounds, rng);

    Chromosome bad = good;
    bad.reals.pop_back();
    CHECK_THROWS_AS(validate_chromosome(bad, layout), LayoutMismatch);

    bad = good;
    bad.rule_bits.push_back(1);
    CHECK_THROWS_AS(validate_chromosome(bad, layout), LayoutMismatch);

    bad = good;
    bad.bounds.pop_back();
    CHECK_THROWS_AS(validate_chromosome(bad, layout), LayoutMismatch);

    bad = good;
    bad.reals[0] = bad.bounds[0].hi + 1.0;
    CHECK_THROWS_AS(validate_chromosome(bad, layout), OutOfRange);

    bad = good;
    bad.rule_bits[0] = 2;
    CHECK_THROWS_AS(validate_chromosome(bad, layout), OutOfRange);

    bad = good;
    std::fill(bad.rule_bits.begin(), bad.rule_bits.end(), std::uint8_t{0});
    CHECK_THROWS_AS(validate_chromosome(bad, layout), OutOfRange);
}
