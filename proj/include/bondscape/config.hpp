#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bondscape {

inline constexpr const char* kVersion = "0.1.0";

struct GridPos {
    int x = 0;
    int y = 0;
    bool operator==(const GridPos&) const = default;
};

inline int chebyshev(GridPos a, GridPos b) {
    const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx > dy ? dx : dy;
}

struct GridDims {
    int width = 50;
    int height = 50;
    bool operator==(const GridDims&) const = default;

    long long cell_count() const {
        return static_cast<long long>(width) * height;
    }
    bool contains(GridPos p) const {
        return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
    }
};

enum class ResourceKind { bond, cash };

// One resource mound: value `peak` at the center, decaying linearly to zero
// at Chebyshev distance `radius`. Cell values are rounded half-up, and where
// mounds of the same kind overlap the larger value wins.
struct MoundSpec {
    GridPos center;
    double peak = 3.0;
    int radius = 10;
    ResourceKind kind = ResourceKind::bond;
};

// Inclusive integer range, used for the spawn draws.
struct IntRange {
    int lo = 1;
    int hi = 1;
    bool operator==(const IntRange&) const = default;
};

struct AgentInitRanges {
    IntRange vision{1, 49};
    IntRange bond_cost{1, 5};
    IntRange cash_cost{1, 5};
    IntRange bond_accumulation{35, 55};
    IntRange cash_accumulation{35, 55};
    bool operator==(const AgentInitRanges&) const = default;
};

// What counts as one client service event: every agent-step, or only steps
// where the harvested cell actually held resources.
enum class ServiceCounting { every_step, nonzero_harvest };

// What counts as one market-maker trade event: an executed lot, or a pair
// encounter that produced at least one lot.
enum class TradeCounting { per_lot, per_encounter };

// Client hubs sit on a 5x5 lattice, each holding bonds and cash side by side.
// Spreading the stock over 25 shallow sites instead of a few tall mounds keeps
// total resources high enough for long lifespans while leaving desks with a
// short client range likely to work disjoint hubs and never meet.
inline std::vector<MoundSpec> default_mounds(double peak = 3.0, int radius = 10) {
    std::vector<MoundSpec> mounds;
    mounds.reserve(50);
    for (int cx = 4; cx < 50; cx += 10) {
        for (int cy = 4; cy < 50; cy += 10) {
            mounds.push_back({{cx, cy}, peak, radius, ResourceKind::bond});
            mounds.push_back({{cx, cy}, peak, radius, ResourceKind::cash});
        }
    }
    return mounds;
}

struct ModelConfig {
    int n_agents = 4;
    GridDims grid{};
    std::vector<MoundSpec> mounds = default_mounds();
    AgentInitRanges init{};
    int max_steps = 1500;
    std::uint64_t seed = 42;
    ServiceCounting service_counting = ServiceCounting::every_step;
    TradeCounting trade_counting = TradeCounting::per_encounter;
    bool record_trace = false;

    // Throws std::invalid_argument on the first problem found.
    void validate() const {
        if (grid.width < 1 || grid.height < 1)
            throw std::invalid_argument("grid dimensions must be positive");
        if (n_agents < 0)
            throw std::invalid_argument("n_agents must be nonnegative");
        if (n_agents > grid.cell_count())
            throw std::invalid_argument("more agents than grid cells");
        if (max_steps < 1)
            throw std::invalid_argument("max_steps must be at least 1");
        auto check_range = [](const IntRange& r, const std::string& name) {
            if (r.lo < 1 || r.lo > r.hi)
                throw std::invalid_argument(name + " range must satisfy 1 <= lo <= hi");
        };
        check_range(init.vision, "vision");
        check_range(init.bond_cost, "bond_cost");
        check_range(init.cash_cost, "cash_cost");
        check_range(init.bond_accumulation, "bond_accumulation");
        check_range(init.cash_accumulation, "cash_accumulation");
        for (const MoundSpec& m : mounds) {
            if (!grid.contains(m.center))
                throw std::invalid_argument("mound center outside the grid");
            if (m.peak <= 0.0)
                throw std::invalid_argument("mound peak must be positive");
            if (m.radius < 1)
                throw std::invalid_argument("mound radius must be at least 1");
        }
    }
};

}  // namespace bondscape
