#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "bondscape/config.hpp"
#include "bondscape/landscape.hpp"
#include "bondscape/rng.hpp"

using namespace bondscape;

namespace {

// Independent recomputation of one cell, straight from the mound formula.
Resources expected_cell(const ModelConfig& config, GridPos p) {
    Resources r;
    for (const MoundSpec& m : config.mounds) {
        const int d = chebyshev(m.center, p);
        const double v = std::max(0.0, m.peak - m.peak * d / m.radius);
        if (m.kind == ResourceKind::bond)
            r.bonds = std::max(r.bonds, v);
        else
            r.cash = std::max(r.cash, v);
    }
    r.bonds = std::floor(r.bonds + 0.5);
    r.cash = std::floor(r.cash + 0.5);
    return r;
}

}  // namespace

TEST_CASE("default landscape matches the per-cell formula everywhere") {
    const ModelConfig config;
    const Landscape land = generate_landscape(config);
    for (int y = 0; y < land.height(); ++y)
        for (int x = 0; x < land.width(); ++x)
            REQUIRE(land.cell(GridPos{x, y}) == expected_cell(config, GridPos{x, y}));
}

TEST_CASE("default landscape totals are frozen") {
    // Direct summation over all 2500 cells, computed once and pinned.
    const Landscape land = generate_landscape(ModelConfig{});
    const Resources t = land.totals();
    CHECK(t.bonds == 5225.0);
    CHECK(t.cash == 5225.0);
}

TEST_CASE("default hub profile has the right peak and terraces") {
    const Landscape land = generate_landscape(ModelConfig{});
    // Hubs hold both resources; (4, 4) is the nearest lattice site to origin.
    CHECK(land.cell(GridPos{4, 4}).bonds == 3.0);
    CHECK(land.cell(GridPos{4, 4}).cash == 3.0);
    CHECK(land.cell(GridPos{5, 4}).bonds == 3.0);   // 3 * 9/10 rounds up
    CHECK(land.cell(GridPos{6, 4}).bonds == 2.0);   // 3 * 8/10 rounds down
    // (9, 9) is a worst-case cell, Chebyshev 5 from four surrounding hubs.
    CHECK(land.cell(GridPos{9, 9}).bonds == 2.0);   // 3 * 5/10 rounds up
    CHECK(land.cell(GridPos{9, 9}).cash == 2.0);
    // The lattice leaves no dead ground: every cell is within 5 of a hub.
    for (int y = 0; y < land.height(); ++y)
        for (int x = 0; x < land.width(); ++x)
            REQUIRE(land.cell(GridPos{x, y}).bonds >= 2.0);
}

TEST_CASE("an isolated mound decays linearly and rounds away to nothing") {
    ModelConfig config;
    config.mounds = {MoundSpec{{25, 25}, 3.0, 10, ResourceKind::bond}};
    const Landscape land = generate_landscape(config);
    CHECK(land.cell(GridPos{25, 25}).bonds == 3.0);
    CHECK(land.cell(GridPos{30, 25}).bonds == 2.0);  // 3 * 5/10 rounds up
    CHECK(land.cell(GridPos{33, 25}).bonds == 1.0);  // 3 * 2/10 rounds up
    CHECK(land.cell(GridPos{34, 25}).bonds == 0.0);  // 3 * 1/10 rounds down
    CHECK(land.cell(GridPos{35, 25}).bonds == 0.0);  // at the radius exactly
    CHECK(land.cell(GridPos{25, 25}).cash == 0.0);
    CHECK(land.cell(GridPos{0, 0}).bonds == 0.0);
}

TEST_CASE("overlapping mounds keep the larger value") {
    ModelConfig config;
    config.mounds = {MoundSpec{{10, 10}, 8.0, 4, ResourceKind::bond},
                     MoundSpec{{12, 10}, 8.0, 4, ResourceKind::bond}};
    const Landscape land = generate_landscape(config);
    // Halfway between the centers both mounds offer 8 * (1 - 1/4) = 6.
    CHECK(land.cell(GridPos{11, 10}).bonds == 6.0);
    // On one center the other mound offers only 4; the peak wins.
    CHECK(land.cell(GridPos{10, 10}).bonds == 8.0);
}

TEST_CASE("harvest empties the cell and returns its contents") {
    Landscape land = generate_landscape(ModelConfig{});
    const GridPos hub{4, 4};
    const Resources before = land.totals();
    const Resources taken = land.harvest(hub);
    CHECK(taken == Resources{3.0, 3.0});
    CHECK(land.cell(hub) == Resources{});
    const Resources again = land.harvest(hub);
    CHECK(again == Resources{});
    const Resources after = land.totals();
    CHECK(after.bonds == before.bonds - 3.0);
    CHECK(after.cash == before.cash - 3.0);
}

TEST_CASE("totals never increase under any harvest sequence") {
    Landscape land = generate_landscape(ModelConfig{});
    Rng rng(2024);
    Resources prev = land.totals();
    for (int i = 0; i < 500; ++i) {
        const GridPos p{static_cast<int>(rng.uniform_index(50)),
                        static_cast<int>(rng.uniform_index(50))};
        land.harvest(p);
        const Resources now = land.totals();
        REQUIRE(now.bonds <= prev.bonds);
        REQUIRE(now.cash <= prev.cash);
        prev = now;
    }
}

TEST_CASE("out-of-range access throws") {
    Landscape land = generate_landscape(ModelConfig{});
    CHECK_THROWS_AS(land.cell(GridPos{-1, 0}), std::out_of_range);
    CHECK_THROWS_AS(land.cell(GridPos{0, 50}), std::out_of_range);
    CHECK_THROWS_AS(land.harvest(GridPos{50, 0}), std::out_of_range);
}

TEST_CASE("config validation rejects bad setups") {
    ModelConfig config;
    config.n_agents = -1;
    CHECK_THROWS_AS(generate_landscape(config), std::invalid_argument);

    config = ModelConfig{};
    config.mounds[0].center = GridPos{99, 0};
    CHECK_THROWS_AS(generate_landscape(config), std::invalid_argument);

    config = ModelConfig{};
    config.mounds[0].peak = 0.0;
    CHECK_THROWS_AS(generate_landscape(config), std::invalid_argument);

    config = ModelConfig{};
    config.grid.width = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = ModelConfig{};
    config.n_agents = 2501;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("csv export is raster ordered with a header") {
    ModelConfig config;
    config.grid = GridDims{3, 2};
    config.mounds = {MoundSpec{{0, 0}, 2.0, 2, ResourceKind::bond}};
    std::ostringstream os;
    generate_landscape(config).write_csv(os);
    CHECK(os.str() ==
          "x,y,bonds,cash\n"
          "0,0,2,0\n"
          "1,0,1,0\n"
          "2,0,0,0\n"
          "0,1,1,0\n"
          "1,1,1,0\n"
          "2,1,0,0\n");
}
