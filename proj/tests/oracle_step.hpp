#pragma once

// Brute-force one-step replay of the engine's update rule, used to
// cross-check the optimized engine. It shares the welfare primitive, the
// RNG and the plain state containers, but re-derives movement scoring, tie
// handling, lot sizing and all bookkeeping from scratch: the grid is
// scanned exhaustively instead of by clipped window, and the bargaining
// arithmetic is written out inline.

#include <cmath>
#include <vector>

#include "bondscape/engine.hpp"

namespace oracle {

using bondscape::GridPos;
using bondscape::Landscape;
using bondscape::MarketMaker;
using bondscape::OccupancyGrid;
using bondscape::Resources;
using bondscape::Rng;
using bondscape::Simulation;
using bondscape::TradeRecord;

struct State {
    std::vector<MarketMaker> agents;
    Landscape landscape;
    OccupancyGrid occupancy;
    Rng rng;
    int step = 0;
};

inline State capture(const Simulation& sim) {
    return State{sim.agents(), sim.landscape(), sim.occupancy(), sim.rng(),
                 sim.current_step()};
}

struct StepOutcome {
    std::vector<GridPos> moves;  // indexed by agent id; the dead stay put
    std::vector<TradeRecord> lots;
};

namespace detail {

inline double runway_ratio(const MarketMaker& a) {
    return (a.cash_acc / a.cash_cost) / (a.bonds_acc / a.bond_cost);
}

inline double runway_ratio_after(const MarketMaker& a, double db, double dc) {
    return ((a.cash_acc + dc) / a.cash_cost) / ((a.bonds_acc + db) / a.bond_cost);
}

inline double snap(double x) {
    return std::floor(x * 4096.0 + 0.5) / 4096.0;
}

// The full bargaining loop for one pair, re-derived from the contract.
inline void bargain(MarketMaker& actor, MarketMaker& partner, int step,
                    std::vector<TradeRecord>& lots) {
    for (int round = 0; round < 1000; ++round) {
        const double ra = runway_ratio(actor);
        const double rp = runway_ratio(partner);
        if (ra == rp) return;
        MarketMaker& buyer = ra > rp ? actor : partner;
        MarketMaker& seller = ra > rp ? partner : actor;
        const double lo = ra < rp ? ra : rp;
        const double hi = ra < rp ? rp : ra;

        const double p = std::sqrt(ra * rp);
        const double base_bonds = p > 1.0 ? 1.0 : 1.0 / p;
        const double base_cash = p > 1.0 ? p : 1.0;

        double bonds = snap(base_bonds);
        double cash = snap(base_cash);
        bool final_lot = false;
        if (runway_ratio_after(buyer, bonds, -cash) <
            runway_ratio_after(seller, -bonds, cash)) {
            final_lot = true;
            double scale = 1.0;
            bool fits = false;
            for (int h = 1; h <= 20; ++h) {
                scale *= 0.5;
                bonds = snap(base_bonds * scale);
                cash = snap(base_cash * scale);
                if (bonds <= 0.0 || cash <= 0.0) break;
                if (!(runway_ratio_after(buyer, bonds, -cash) <
                      runway_ratio_after(seller, -bonds, cash))) {
                    fits = true;
                    break;
                }
            }
            if (!fits) return;
        }

        if (bonds <= 0.0 || cash <= 0.0) return;
        if (!(seller.bonds_acc - bonds > 0.0)) return;
        if (!(buyer.cash_acc - cash > 0.0)) return;
        const double price = cash / bonds;
        if (!(lo < price && price < hi)) return;
        const double wb = bondscape::welfare(buyer);
        const double ws = bondscape::welfare(seller);
        if (!(bondscape::welfare(buyer.bonds_acc + bonds, buyer.cash_acc - cash,
                                 buyer.bond_cost, buyer.cash_cost) > wb))
            return;
        if (!(bondscape::welfare(seller.bonds_acc - bonds, seller.cash_acc + cash,
                                 seller.bond_cost, seller.cash_cost) > ws))
            return;

        buyer.bonds_acc += bonds;
        buyer.cash_acc -= cash;
        seller.bonds_acc -= bonds;
        seller.cash_acc += cash;
        lots.push_back(TradeRecord{step, buyer.id, seller.id, bonds, cash, price});
        if (final_lot) return;
    }
}

}  // namespace detail

inline StepOutcome advance(State& s) {
    ++s.step;
    StepOutcome out;
    out.moves.resize(s.agents.size());
    for (const MarketMaker& a : s.agents) out.moves[static_cast<std::size_t>(a.id)] = a.pos;

    std::vector<int> order;
    for (const MarketMaker& a : s.agents)
        if (a.alive) order.push_back(a.id);
    s.rng.shuffle(order);

    // Service phase: exhaustive scan of the whole grid for every candidate.
    for (int id : order) {
        MarketMaker& a = s.agents[static_cast<std::size_t>(id)];

        std::vector<GridPos> tied;
        double best_score = -1.0;
        int best_dist = 0;
        for (int y = 0; y < s.landscape.height(); ++y) {
            for (int x = 0; x < s.landscape.width(); ++x) {
                const GridPos p{x, y};
                if (bondscape::chebyshev(a.pos, p) > a.vision) continue;
                const int occ = s.occupancy.occupant(p);
                if (occ != OccupancyGrid::kEmpty && occ != a.id) continue;
                const Resources& c = s.landscape.cell(p);
                const double score =
                    bondscape::welfare(a.bonds_acc + c.bonds, a.cash_acc + c.cash,
                                       a.bond_cost, a.cash_cost);
                const int dist = bondscape::chebyshev(a.pos, p);
                if (score > best_score || (score == best_score && dist < best_dist)) {
                    best_score = score;
                    best_dist = dist;
                    tied.assign(1, p);
                } else if (score == best_score && dist == best_dist) {
                    tied.push_back(p);
                }
            }
        }
        const GridPos target =
            tied.size() == 1 ? tied.front() : tied[s.rng.uniform_index(tied.size())];
        out.moves[static_cast<std::size_t>(id)] = target;
        s.occupancy.move(a.pos, target);
        a.pos = target;

        const Resources h = s.landscape.harvest(target);
        double nb = a.bonds_acc + h.bonds - a.bond_cost;
        double nc = a.cash_acc + h.cash - a.cash_cost;
        if (nb < 0.0) nb = 0.0;
        if (nc < 0.0) nc = 0.0;
        a.bonds_acc = nb;
        a.cash_acc = nc;
        if (nb == 0.0 || nc == 0.0) {
            a.alive = false;
            a.death_step = s.step;
            s.occupancy.remove(a.pos);
        }
    }

    // Trade phase over the same order.
    std::vector<int> partners;
    for (int id : order) {
        MarketMaker& actor = s.agents[static_cast<std::size_t>(id)];
        if (!actor.alive) continue;
        partners.clear();
        for (const MarketMaker& other : s.agents) {
            if (other.id == id || !other.alive) continue;
            if (bondscape::chebyshev(actor.pos, other.pos) <= actor.vision)
                partners.push_back(other.id);
        }
        s.rng.shuffle(partners);
        for (int j : partners)
            detail::bargain(actor, s.agents[static_cast<std::size_t>(j)], s.step, out.lots);
    }
    return out;
}

}  // namespace oracle
