#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bondscape/agent.hpp"
#include "bondscape/config.hpp"
#include "bondscape/rng.hpp"

namespace bondscape {

// One executed lot. bond_buyer received bonds_moved and paid cash_moved;
// price is cash_moved / bonds_moved exactly.
struct TradeRecord {
    int step = 0;
    int bond_buyer = 0;
    int bond_seller = 0;
    double bonds_moved = 0.0;
    double cash_moved = 0.0;
    double price = 0.0;
};

// Lot sizes are snapped to this grid. Initial accumulations, harvests and
// costs are integers, so every accumulation stays a multiple of the quantum
// and (well below 2^52 of them) double arithmetic on accumulations is exact:
// transfers conserve totals bit-for-bit. The grid also bounds how finely two
// desks can keep splitting hairs: a candidate price must land strictly inside
// the pre-lot MRS interval, so once rates converge to within a quantum the
// encounter ends instead of degenerating into dust lots.
inline constexpr double kLotQuantum = 1.0 / (1 << 12);
inline constexpr int kBisectionLimit = 20;
inline constexpr int kMaxLotsPerEncounter = 1000;

inline double quantize_lot(double x) {
    return std::floor(x / kLotQuantum + 0.5) * kLotQuantum;
}

// Geometric mean of the two MRS values; strictly between them whenever they
// differ (up to rounding, which the caller gates on).
inline double trade_price(double mrs_a, double mrs_b) {
    if (mrs_a <= 0.0 || mrs_b <= 0.0)
        throw std::domain_error("trade_price requires positive MRS values");
    return std::sqrt(mrs_a * mrs_b);
}

// Strict welfare gain after receiving d_bonds and d_cash (either may be
// negative). Callers must keep post-trade accumulations positive.
inline bool welfare_improves(const MarketMaker& a, double d_bonds, double d_cash) {
    return welfare(a.bonds_acc + d_bonds, a.cash_acc + d_cash, a.bond_cost, a.cash_cost) >
           welfare(a);
}

namespace detail {

// MRS without the domain guard, for probing hypothetical post-trade states.
inline double mrs_raw(double bonds_acc, double cash_acc, int bond_cost, int cash_cost) {
    return (cash_acc / cash_cost) / (bonds_acc / bond_cost);
}

// Would this lot push the buyer's MRS strictly below the seller's?
inline bool lot_flips_ordering(const MarketMaker& buyer, const MarketMaker& seller,
                               double bonds, double cash) {
    const double buyer_after = mrs_raw(buyer.bonds_acc + bonds, buyer.cash_acc - cash,
                                       buyer.bond_cost, buyer.cash_cost);
    const double seller_after = mrs_raw(seller.bonds_acc - bonds, seller.cash_acc + cash,
                                        seller.bond_cost, seller.cash_cost);
    return buyer_after < seller_after;
}

}  // namespace detail

// Runs the bilateral bargaining loop until the desks agree, a candidate lot
// fails its checks, or the safety cap is hit. Per round: the higher-MRS desk
// buys bonds at the geometric-mean price p, one bond for p cash when p > 1,
// otherwise 1/p bonds for one cash. A lot that would flip the MRS ordering
// is halved (up to kBisectionLimit times) until it no longer flips, and
// after such a scaled lot the loop stops. Every candidate must leave the
// seller bonds and the buyer cash, strictly improve both welfares, and trade
// at a price strictly inside the pre-lot MRS interval; the first candidate
// that fails ends the encounter.
inline std::vector<TradeRecord> attempt_trade_pair(MarketMaker& a, MarketMaker& b, int step) {
    std::vector<TradeRecord> lots;
    for (int round = 0; round < kMaxLotsPerEncounter; ++round) {
        const double mrs_a = mrs(a);
        const double mrs_b = mrs(b);
        if (mrs_a == mrs_b) break;

        MarketMaker& buyer = mrs_a > mrs_b ? a : b;
        MarketMaker& seller = mrs_a > mrs_b ? b : a;
        const double lo = mrs_a < mrs_b ? mrs_a : mrs_b;
        const double hi = mrs_a < mrs_b ? mrs_b : mrs_a;

        const double p = trade_price(mrs_a, mrs_b);
        double bonds = p > 1.0 ? 1.0 : 1.0 / p;
        double cash = p > 1.0 ? p : 1.0;

        bool last_lot = false;
        double lot_bonds = quantize_lot(bonds);
        double lot_cash = quantize_lot(cash);
        if (detail::lot_flips_ordering(buyer, seller, lot_bonds, lot_cash)) {
            last_lot = true;
            bool fits = false;
            for (int h = 1; h <= kBisectionLimit; ++h) {
                lot_bonds = quantize_lot(std::ldexp(bonds, -h));
                lot_cash = quantize_lot(std::ldexp(cash, -h));
                if (lot_bonds <= 0.0 || lot_cash <= 0.0) break;
                if (!detail::lot_flips_ordering(buyer, seller, lot_bonds, lot_cash)) {
                    fits = true;
                    break;
                }
            }
            if (!fits) break;
        }

        if (lot_bonds <= 0.0 || lot_cash <= 0.0) break;
        if (!(seller.bonds_acc - lot_bonds > 0.0)) break;
        if (!(buyer.cash_acc - lot_cash > 0.0)) break;
        const double lot_price = lot_cash / lot_bonds;
        if (!(lo < lot_price && lot_price < hi)) break;
        if (!welfare_improves(buyer, lot_bonds, -lot_cash)) break;
        if (!welfare_improves(seller, -lot_bonds, lot_cash)) break;

        buyer.bonds_acc += lot_bonds;
        buyer.cash_acc -= lot_cash;
        seller.bonds_acc -= lot_bonds;
        seller.cash_acc += lot_cash;
        lots.push_back(TradeRecord{step, buyer.id, seller.id, lot_bonds, lot_cash, lot_price});

        if (last_lot) break;
    }
    return lots;
}

struct TradeSessionResult {
    std::vector<TradeRecord> records;
    long long encounters_with_lots = 0;
};

// One trading phase. Follows the step's activation order; each active desk
// lists the living desks inside its own vision (ascending id), shuffles that
// list, and bargains with each in turn. Dead desks neither act nor appear as
// partners.
inline TradeSessionResult trade_session(std::vector<MarketMaker>& agents,
                                        const std::vector<int>& order, int step, Rng& rng) {
    TradeSessionResult result;
    std::vector<int> partners;
    for (int i : order) {
        MarketMaker& actor = agents[static_cast<std::size_t>(i)];
        if (!actor.alive) continue;
        partners.clear();
        for (const MarketMaker& other : agents) {
            if (other.id == actor.id || !other.alive) continue;
            if (chebyshev(actor.pos, other.pos) <= actor.vision) partners.push_back(other.id);
        }
        rng.shuffle(partners);
        for (int j : partners) {
            MarketMaker& partner = agents[static_cast<std::size_t>(j)];
            std::vector<TradeRecord> lots = attempt_trade_pair(actor, partner, step);
            if (!lots.empty()) {
                ++result.encounters_with_lots;
                result.records.insert(result.records.end(), lots.begin(), lots.end());
            }
        }
    }
    return result;
}

}  // namespace bondscape
