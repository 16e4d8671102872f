// Smallest useful program: run one hp1 epoch and print what happened.

#include <iostream>

#include "bondscape/bondscape.hpp"

int main() {
    using namespace bondscape;

    ModelConfig config = preset_config(Preset::hp1);
    config.seed = 42;

    const EpochResult epoch = run_epoch(config, 0);
    const auto [trades, services] = step_event_counts(epoch);

    std::cout << "epoch ran " << epoch.end_step << " steps\n"
              << "trade events:   " << trades << "\n"
              << "service events: " << services << "\n"
              << "trade fraction: " << format_double(trade_fraction(epoch)) << "%\n"
              << "lots executed:  " << epoch.trade_records.size() << "\n"
              << "survivors:      " << epoch.survivors_at_horizon << "\n";
    for (std::size_t id = 0; id < epoch.lifespans.size(); ++id)
        std::cout << "agent " << id << " lived " << epoch.lifespans[id] << " steps\n";
    return 0;
}
