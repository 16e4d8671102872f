#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bondscape/config.hpp"
#include "bondscape/landscape.hpp"
#include "bondscape/rng.hpp"

namespace bondscape {

// A market maker desk. Holds accumulated bond and cash inventory, pays fixed
// integer running costs in both each step, and dies when either inventory is
// exhausted. Dead agents keep their final (frozen) accumulations; those
// residuals never return to the landscape or to trading.
struct MarketMaker {
    int id = 0;
    GridPos pos{};
    double bonds_acc = 0.0;
    double cash_acc = 0.0;
    int bond_cost = 1;
    int cash_cost = 1;
    int vision = 1;
    bool alive = true;
    std::optional<int> death_step;
};

// Cobb-Douglas welfare with cost-share exponents:
//   bonds^(mb/(mb+mc)) * cash^(mc/(mb+mc))
inline double welfare(double bonds_acc, double cash_acc, int bond_cost, int cash_cost) {
    const double total = bond_cost + cash_cost;
    const double alpha = bond_cost / total;
    return std::pow(bonds_acc, alpha) * std::pow(cash_acc, 1.0 - alpha);
}

inline double welfare(const MarketMaker& a) {
    return welfare(a.bonds_acc, a.cash_acc, a.bond_cost, a.cash_cost);
}

// Marginal rate of substitution: cash runway over bond runway. Above 1 the
// desk is relatively cash-rich and wants bonds. Throws std::domain_error
// when either accumulation is nonpositive (the ratio is meaningless there).
inline double mrs(double bonds_acc, double cash_acc, int bond_cost, int cash_cost) {
    if (bonds_acc <= 0.0 || cash_acc <= 0.0)
        throw std::domain_error("mrs requires positive accumulations");
    return (cash_acc / cash_cost) / (bonds_acc / bond_cost);
}

inline double mrs(const MarketMaker& a) {
    return mrs(a.bonds_acc, a.cash_acc, a.bond_cost, a.cash_cost);
}

// All grid cells within Chebyshev distance `vision` of `pos`, own cell
// included, clipped at the grid edge (no wrapping). Scan order is y rows
// outermost, x within a row.
inline std::vector<GridPos> visible_cells(GridPos pos, int vision, GridDims dims) {
    if (!dims.contains(pos))
        throw std::out_of_range("position outside the grid");
    const int x0 = std::max(0, pos.x - vision);
    const int x1 = std::min(dims.width - 1, pos.x + vision);
    const int y0 = std::max(0, pos.y - vision);
    const int y1 = std::min(dims.height - 1, pos.y + vision);
    std::vector<GridPos> out;
    out.reserve(static_cast<std::size_t>(x1 - x0 + 1) * (y1 - y0 + 1));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            out.push_back(GridPos{x, y});
    return out;
}

// Which cell holds which agent. Tracks living agents only: a desk that dies
// vacates its cell immediately.
class OccupancyGrid {
public:
    explicit OccupancyGrid(GridDims dims)
        : dims_(dims), slot_(static_cast<std::size_t>(dims.cell_count()), kEmpty) {}

    static constexpr int kEmpty = -1;

    bool empty(GridPos p) const { return slot_[index(p)] == kEmpty; }
    int occupant(GridPos p) const { return slot_[index(p)]; }

    void place(int id, GridPos p) {
        if (slot_[index(p)] != kEmpty)
            throw std::invalid_argument("cell already occupied");
        slot_[index(p)] = id;
    }
    void move(GridPos from, GridPos to) {
        if (from == to) return;
        slot_[index(to)] = slot_[index(from)];
        slot_[index(from)] = kEmpty;
    }
    void remove(GridPos p) { slot_[index(p)] = kEmpty; }

    GridDims dims() const { return dims_; }

private:
    std::size_t index(GridPos p) const {
        if (!dims_.contains(p))
            throw std::out_of_range("position outside the grid");
        return static_cast<std::size_t>(p.y) * dims_.width + p.x;
    }

    GridDims dims_;
    std::vector<int> slot_;
};

// Draws the initial population. Per agent, in this order: position (index
// into the free cells, counted in raster order), vision, bond cost, cash
// cost, bond accumulation, cash accumulation. All integer draws, inclusive
// ranges.
inline std::vector<MarketMaker> spawn_agents(const ModelConfig& config, Rng& rng) {
    config.validate();
    std::vector<MarketMaker> agents;
    agents.reserve(static_cast<std::size_t>(config.n_agents));
    std::vector<bool> taken(static_cast<std::size_t>(config.grid.cell_count()), false);
    long long free_cells = config.grid.cell_count();
    for (int id = 0; id < config.n_agents; ++id) {
        std::uint64_t k = rng.uniform_index(static_cast<std::uint64_t>(free_cells));
        // Walk to the k-th free cell in raster order.
        std::size_t idx = 0;
        for (;; ++idx) {
            if (taken[idx]) continue;
            if (k == 0) break;
            --k;
        }
        taken[idx] = true;
        --free_cells;
        MarketMaker a;
        a.id = id;
        a.pos = GridPos{static_cast<int>(idx % config.grid.width),
                        static_cast<int>(idx / config.grid.width)};
        a.vision = rng.uniform_int(config.init.vision.lo, config.init.vision.hi);
        a.bond_cost = rng.uniform_int(config.init.bond_cost.lo, config.init.bond_cost.hi);
        a.cash_cost = rng.uniform_int(config.init.cash_cost.lo, config.init.cash_cost.hi);
        a.bonds_acc = rng.uniform_int(config.init.bond_accumulation.lo,
                                      config.init.bond_accumulation.hi);
        a.cash_acc = rng.uniform_int(config.init.cash_accumulation.lo,
                                     config.init.cash_accumulation.hi);
        agents.push_back(a);
    }
    return agents;
}

// Picks the relocation target: among visible cells that are not blocked by
// another living agent, the one whose contents maximize welfare(acc + cell).
// Ties on the exact score prefer the smaller Chebyshev distance; remaining
// ties are broken by one uniform draw. The draw happens only when two or
// more cells are still tied, so the caller can rely on the draw count.
inline GridPos choose_move(const MarketMaker& agent, const Landscape& landscape,
                           const OccupancyGrid& occupancy, Rng& rng) {
    const GridDims dims = landscape.dims();
    const int x0 = std::max(0, agent.pos.x - agent.vision);
    const int x1 = std::min(dims.width - 1, agent.pos.x + agent.vision);
    const int y0 = std::max(0, agent.pos.y - agent.vision);
    const int y1 = std::min(dims.height - 1, agent.pos.y + agent.vision);

    // Every empty cell scores the same, so compute that base once.
    const double empty_score =
        welfare(agent.bonds_acc, agent.cash_acc, agent.bond_cost, agent.cash_cost);

    double best_score = -1.0;
    int best_dist = 0;
    std::vector<GridPos> tied;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const GridPos p{x, y};
            const int occ = occupancy.occupant(p);
            if (occ != OccupancyGrid::kEmpty && occ != agent.id) continue;
            const Resources& c = landscape.cell(p);
            const double score =
                (c.bonds == 0.0 && c.cash == 0.0)
                    ? empty_score
                    : welfare(agent.bonds_acc + c.bonds, agent.cash_acc + c.cash,
                              agent.bond_cost, agent.cash_cost);
            const int dist = chebyshev(agent.pos, p);
            if (score > best_score || (score == best_score && dist < best_dist)) {
                best_score = score;
                best_dist = dist;
                tied.clear();
                tied.push_back(p);
            } else if (score == best_score && dist == best_dist) {
                tied.push_back(p);
            }
        }
    }
    if (tied.size() == 1) return tied.front();
    return tied[rng.uniform_index(tied.size())];
}

// Applies one step of running costs after a harvest. Accumulations floor at
// zero, and hitting zero in either resource is fatal.
inline void metabolize(MarketMaker& agent, Resources harvested, int step) {
    agent.bonds_acc = std::max(0.0, agent.bonds_acc + harvested.bonds - agent.bond_cost);
    agent.cash_acc = std::max(0.0, agent.cash_acc + harvested.cash - agent.cash_cost);
    if (agent.bonds_acc == 0.0 || agent.cash_acc == 0.0) {
        agent.alive = false;
        agent.death_step = step;
    }
}

}  // namespace bondscape
