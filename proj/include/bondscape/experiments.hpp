#pragma once

#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bondscape/config_io.hpp"
#include "bondscape/engine.hpp"
#include "bondscape/io.hpp"
#include "bondscape/metrics.hpp"

namespace bondscape {

// The four standard campaigns. hp1 is the base market; hp2 restricts vision;
// hp3 crowds the grid with four times the desks under restricted vision;
// hp4 raises running costs into the unsustainable range.
enum class Preset { hp1, hp2, hp3, hp4 };

inline const char* to_string(Preset p) {
    switch (p) {
        case Preset::hp1: return "hp1";
        case Preset::hp2: return "hp2";
        case Preset::hp3: return "hp3";
        case Preset::hp4: return "hp4";
    }
    throw std::invalid_argument("unknown preset");
}

inline Preset preset_from_string(const std::string& s) {
    if (s == "hp1") return Preset::hp1;
    if (s == "hp2") return Preset::hp2;
    if (s == "hp3") return Preset::hp3;
    if (s == "hp4") return Preset::hp4;
    throw std::invalid_argument("unknown preset: " + s);
}

inline ModelConfig preset_config(Preset p) {
    ModelConfig c;
    switch (p) {
        case Preset::hp1:
            break;
        case Preset::hp2:
            c.init.vision = IntRange{1, 5};
            break;
        case Preset::hp3:
            c.n_agents = 16;
            c.init.vision = IntRange{1, 5};
            break;
        case Preset::hp4:
            c.init.bond_cost = IntRange{5, 10};
            c.init.cash_cost = IntRange{5, 10};
            break;
    }
    return c;
}

// One line of epochs.csv.
struct EpochRow {
    int epoch = 0;
    int end_step = 0;
    long long trades = 0;
    long long services = 0;
    double trade_pct = 0.0;
    int max_lifespan = 0;
    double mean_lifespan = 0.0;
    int survivors = 0;
};

struct ExperimentResult {
    std::string preset_name;
    ModelConfig config;
    int n_epochs = 0;
    std::uint64_t master_seed = 0;
    int jobs = 1;
    std::vector<EpochResult> epochs;  // ordered by epoch index
    std::vector<EpochRow> rows;
    SummaryStats trade_pct_stats;
    SummaryStats lifespan_stats;
    double zero_trade_share = 0.0;
    double survivor_share_at_horizon = 0.0;
};

namespace detail {

inline EpochRow make_row(const EpochResult& r) {
    EpochRow row;
    row.epoch = r.epoch_index;
    row.end_step = r.end_step;
    row.trades = r.n_trade_events;
    row.services = r.n_service_events;
    row.trade_pct = trade_fraction(r);
    for (int l : r.lifespans) {
        if (l > row.max_lifespan) row.max_lifespan = l;
        row.mean_lifespan += l;
    }
    if (!r.lifespans.empty())
        row.mean_lifespan /= static_cast<double>(r.lifespans.size());
    row.survivors = r.survivors_at_horizon;
    return row;
}

}  // namespace detail

// Runs n_epochs independent epochs of `config` and aggregates them. Epochs
// are dealt to `jobs` worker threads; every epoch derives its own stream
// from (master_seed, epoch index), so the outcome does not depend on the
// thread count or scheduling.
inline ExperimentResult run_experiment(const ModelConfig& base_config,
                                       const std::string& preset_name, int n_epochs,
                                       std::uint64_t master_seed, int jobs) {
    if (n_epochs < 1) throw std::invalid_argument("n_epochs must be at least 1");
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");

    ExperimentResult result;
    result.preset_name = preset_name;
    result.config = base_config;
    result.config.seed = master_seed;
    result.config.validate();
    result.n_epochs = n_epochs;
    result.master_seed = master_seed;
    result.jobs = jobs;
    result.epochs.resize(static_cast<std::size_t>(n_epochs));

    const ModelConfig& config = result.config;
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_epochs) return;
            try {
                result.epochs[static_cast<std::size_t>(i)] = run_epoch(config, i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    const int n_workers = jobs < n_epochs ? jobs : n_epochs;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    std::vector<double> trade_pcts;
    std::vector<double> lifespans;
    std::size_t epochs_with_survivors = 0;
    for (const EpochResult& r : result.epochs) {
        result.rows.push_back(detail::make_row(r));
        trade_pcts.push_back(result.rows.back().trade_pct);
        for (int l : r.lifespans) lifespans.push_back(static_cast<double>(l));
        if (r.survivors_at_horizon > 0) ++epochs_with_survivors;
    }
    result.trade_pct_stats = summary_stats(trade_pcts);
    result.lifespan_stats = lifespans.empty() ? SummaryStats{} : summary_stats(lifespans);
    result.zero_trade_share = zero_trade_epoch_share(result.epochs);
    result.survivor_share_at_horizon =
        100.0 * static_cast<double>(epochs_with_survivors) / static_cast<double>(n_epochs);
    return result;
}

inline ExperimentResult run_experiment(Preset preset, int n_epochs, std::uint64_t master_seed,
                                       int jobs) {
    return run_experiment(preset_config(preset), to_string(preset), n_epochs, master_seed, jobs);
}

// ---- campaign output files ------------------------------------------------

inline void write_epochs_csv(std::ostream& os, const ExperimentResult& r) {
    os << "epoch,end_step,trades,services,trade_pct,max_lifespan,mean_lifespan,survivors\n";
    for (const EpochRow& row : r.rows) {
        os << row.epoch << ',' << row.end_step << ',' << row.trades << ',' << row.services
           << ',' << format_double(row.trade_pct) << ',' << row.max_lifespan << ','
           << format_double(row.mean_lifespan) << ',' << row.survivors << '\n';
    }
}

inline void write_trades_csv(std::ostream& os, const ExperimentResult& r) {
    os << "epoch,step,buyer_id,seller_id,bonds_moved,cash_moved,price\n";
    for (const EpochResult& epoch : r.epochs) {
        for (const TradeRecord& t : epoch.trade_records) {
            os << epoch.epoch_index << ',' << t.step << ',' << t.bond_buyer << ','
               << t.bond_seller << ',' << format_double(t.bonds_moved) << ','
               << format_double(t.cash_moved) << ',' << format_double(t.price) << '\n';
        }
    }
}

inline void write_trace_csv(std::ostream& os, const ExperimentResult& r) {
    os << "epoch,step,agent_id,x,y,bonds_acc,cash_acc,alive\n";
    for (const EpochResult& epoch : r.epochs) {
        for (const TraceRow& row : epoch.trace) {
            os << epoch.epoch_index << ',' << row.step << ',' << row.agent_id << ','
               << row.pos.x << ',' << row.pos.y << ',' << format_double(row.bonds_acc) << ','
               << format_double(row.cash_acc) << ',' << (row.alive ? 1 : 0) << '\n';
        }
    }
}

inline json to_json(const SummaryStats& s) {
    json j;
    j["mean"] = s.mean;
    j["median"] = s.median;
    j["std"] = s.stddev;
    j["min"] = s.min;
    j["max"] = s.max;
    j["q1"] = s.q1;
    j["q3"] = s.q3;
    j["iqr"] = s.iqr;
    j["n"] = s.n;
    return j;
}

inline void write_stats_json(std::ostream& os, const ExperimentResult& r) {
    json j;
    j["trade_pct"] = to_json(r.trade_pct_stats);
    j["lifespan"] = to_json(r.lifespan_stats);
    j["zero_trade_epoch_share"] = r.zero_trade_share;
    j["survivor_share_at_horizon"] = r.survivor_share_at_horizon;
    os << j.dump(2) << '\n';
}

inline void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins) {
    os << "bin_lower,count,cumulative_pct\n";
    for (const HistogramBin& b : bins) {
        os << format_double(b.lower) << ',' << b.count << ','
           << format_double(b.cumulative_pct) << '\n';
    }
}

inline void write_manifest_json(std::ostream& os, const ExperimentResult& r,
                                const std::vector<std::string>& outputs, int histogram_bins) {
    json j;
    j["tool"] = "bondscape";
    j["version"] = kVersion;
    j["rng_family"] = Rng::family();
    j["preset"] = r.preset_name;
    j["n_epochs"] = r.n_epochs;
    j["master_seed"] = r.master_seed;
    j["jobs"] = r.jobs;
    j["histogram_bins"] = histogram_bins;
    j["config"] = to_json(r.config);
    j["outputs"] = outputs;
    os << j.dump(2) << '\n';
}

// Writes the full campaign file set into `dir` (created if needed):
// epochs.csv, trades.csv, stats.json, histogram.csv, manifest.json, plus
// trace.csv when the config recorded traces.
inline void write_outputs(const ExperimentResult& r, const std::filesystem::path& dir,
                          int histogram_bins = 10) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream os(dir / name);
        if (!os) throw std::runtime_error(std::string("cannot write ") + name);
        return os;
    };
    std::vector<std::string> outputs = {"epochs.csv", "trades.csv", "stats.json",
                                        "histogram.csv", "manifest.json"};
    {
        auto os = open("epochs.csv");
        write_epochs_csv(os, r);
    }
    {
        auto os = open("trades.csv");
        write_trades_csv(os, r);
    }
    {
        auto os = open("stats.json");
        write_stats_json(os, r);
    }
    {
        std::vector<double> pcts;
        for (const EpochRow& row : r.rows) pcts.push_back(row.trade_pct);
        auto os = open("histogram.csv");
        write_histogram_csv(os, histogram(pcts, histogram_bins));
    }
    if (r.config.record_trace) {
        outputs.push_back("trace.csv");
        auto os = open("trace.csv");
        write_trace_csv(os, r);
    }
    {
        auto os = open("manifest.json");
        write_manifest_json(os, r, outputs, histogram_bins);
    }
}

}  // namespace bondscape
