#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "bondscape/agent.hpp"
#include "bondscape/config.hpp"
#include "bondscape/landscape.hpp"
#include "bondscape/rng.hpp"
#include "bondscape/trading.hpp"

namespace bondscape {

// One agent snapshot, recorded per step when tracing is on.
struct TraceRow {
    int step = 0;
    int agent_id = 0;
    GridPos pos{};
    double bonds_acc = 0.0;
    double cash_acc = 0.0;
    bool alive = true;
};

struct EpochResult {
    int epoch_index = 0;
    int end_step = 0;
    long long n_trade_events = 0;
    long long n_service_events = 0;
    long long n_trade_encounters = 0;
    std::vector<TradeRecord> trade_records;
    std::vector<int> lifespans;  // indexed by agent id
    int survivors_at_horizon = 0;
    Resources final_landscape_totals;
    std::vector<TraceRow> trace;  // empty unless config.record_trace
};

inline std::pair<long long, long long> step_event_counts(const EpochResult& r) {
    return {r.n_trade_events, r.n_service_events};
}

// One epoch of the market. Step t runs two phases over the same shuffled
// activation order (living agents only, drawn fresh each step):
//
//   service phase  per agent: choose_move, relocate, harvest the target
//                  cell, metabolize, die if either accumulation hit zero
//   trade phase    per agent: bargain with every living desk in vision
//                  (see trade_session)
//
// Deaths free the cell at once, so a desk activated later the same step can
// move onto it. The epoch ends at max_steps or when nobody is left.
class Simulation {
public:
    Simulation(const ModelConfig& config, int epoch_index)
        : config_(config),
          epoch_index_(epoch_index),
          rng_(Rng::for_epoch(config.seed, static_cast<std::uint64_t>(epoch_index))),
          landscape_(generate_landscape(config)),
          occupancy_(config.grid) {
        agents_ = spawn_agents(config_, rng_);
        for (const MarketMaker& a : agents_) occupancy_.place(a.id, a.pos);
        if (config_.record_trace) record_trace_rows();
    }

    bool step() {
        ++step_;
        std::vector<int> order = alive_ids();
        rng_.shuffle(order);

        // Service phase.
        for (int id : order) {
            MarketMaker& a = agents_[static_cast<std::size_t>(id)];
            const GridPos target = choose_move(a, landscape_, occupancy_, rng_);
            occupancy_.move(a.pos, target);
            a.pos = target;
            const Resources harvested = landscape_.harvest(target);
            if (config_.service_counting == ServiceCounting::every_step ||
                harvested.bonds > 0.0 || harvested.cash > 0.0) {
                ++n_service_events_;
            }
            metabolize(a, harvested, step_);
            if (!a.alive) occupancy_.remove(a.pos);
        }

        // Trade phase, same order, skipping the newly dead.
        TradeSessionResult session = trade_session(agents_, order, step_, rng_);
        n_trade_encounters_ += session.encounters_with_lots;
        n_trade_events_ += config_.trade_counting == TradeCounting::per_lot
                               ? static_cast<long long>(session.records.size())
                               : session.encounters_with_lots;
        trade_records_.insert(trade_records_.end(), session.records.begin(),
                              session.records.end());

        if (config_.record_trace) record_trace_rows();
        return alive_count() > 0;
    }

    int current_step() const { return step_; }
    int alive_count() const {
        int n = 0;
        for (const MarketMaker& a : agents_)
            if (a.alive) ++n;
        return n;
    }

    const std::vector<MarketMaker>& agents() const { return agents_; }
    const Landscape& landscape() const { return landscape_; }
    const OccupancyGrid& occupancy() const { return occupancy_; }
    const Rng& rng() const { return rng_; }
    const ModelConfig& config() const { return config_; }
    const std::vector<TradeRecord>& trade_records() const { return trade_records_; }

    EpochResult finish() {
        EpochResult r;
        r.epoch_index = epoch_index_;
        r.end_step = step_;
        r.n_trade_events = n_trade_events_;
        r.n_service_events = n_service_events_;
        r.n_trade_encounters = n_trade_encounters_;
        r.trade_records = std::move(trade_records_);
        r.lifespans.reserve(agents_.size());
        for (const MarketMaker& a : agents_)
            r.lifespans.push_back(a.death_step.value_or(step_));
        r.survivors_at_horizon = step_ == config_.max_steps ? alive_count() : 0;
        r.final_landscape_totals = landscape_.totals();
        r.trace = std::move(trace_);
        return r;
    }

private:
    std::vector<int> alive_ids() const {
        std::vector<int> ids;
        ids.reserve(agents_.size());
        for (const MarketMaker& a : agents_)
            if (a.alive) ids.push_back(a.id);
        return ids;
    }

    void record_trace_rows() {
        for (const MarketMaker& a : agents_)
            trace_.push_back(TraceRow{step_, a.id, a.pos, a.bonds_acc, a.cash_acc, a.alive});
    }

    ModelConfig config_;
    int epoch_index_;
    Rng rng_;
    Landscape landscape_;
    OccupancyGrid occupancy_;
    std::vector<MarketMaker> agents_;
    int step_ = 0;
    long long n_trade_events_ = 0;
    long long n_service_events_ = 0;
    long long n_trade_encounters_ = 0;
    std::vector<TradeRecord> trade_records_;
    std::vector<TraceRow> trace_;
};

inline EpochResult run_epoch(const ModelConfig& config, int epoch_index) {
    Simulation sim(config, epoch_index);
    while (sim.current_step() < config.max_steps && sim.alive_count() > 0) sim.step();
    return sim.finish();
}

}  // namespace bondscape
