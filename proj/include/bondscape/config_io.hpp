#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bondscape/config.hpp"

namespace bondscape {

using json = nlohmann::ordered_json;

inline std::string to_string(ResourceKind k) {
    return k == ResourceKind::bond ? "bond" : "cash";
}
inline std::string to_string(ServiceCounting c) {
    return c == ServiceCounting::every_step ? "every_step" : "nonzero_harvest";
}
inline std::string to_string(TradeCounting c) {
    return c == TradeCounting::per_lot ? "per_lot" : "per_encounter";
}

inline json to_json(const IntRange& r) { return json::array({r.lo, r.hi}); }

inline json to_json(const ModelConfig& c) {
    json j;
    j["n_agents"] = c.n_agents;
    j["grid"] = {{"width", c.grid.width}, {"height", c.grid.height}};
    json mounds = json::array();
    for (const MoundSpec& m : c.mounds) {
        mounds.push_back({{"center", json::array({m.center.x, m.center.y})},
                          {"peak", m.peak},
                          {"radius", m.radius},
                          {"kind", to_string(m.kind)}});
    }
    j["mounds"] = mounds;
    j["init"] = {{"vision", to_json(c.init.vision)},
                 {"bond_cost", to_json(c.init.bond_cost)},
                 {"cash_cost", to_json(c.init.cash_cost)},
                 {"bond_accumulation", to_json(c.init.bond_accumulation)},
                 {"cash_accumulation", to_json(c.init.cash_accumulation)}};
    j["max_steps"] = c.max_steps;
    j["seed"] = c.seed;
    j["service_counting"] = to_string(c.service_counting);
    j["trade_counting"] = to_string(c.trade_counting);
    j["record_trace"] = c.record_trace;
    return j;
}

namespace detail {

inline IntRange range_from_json(const json& j, const std::string& name) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument(name + " must be a two-element [lo, hi] array");
    return IntRange{j[0].get<int>(), j[1].get<int>()};
}

}  // namespace detail

// Applies the keys present in `j` on top of `base`; anything absent keeps
// its current value. The result is validated before it is returned.
inline ModelConfig apply_overrides(ModelConfig base, const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config overrides must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "n_agents") {
            base.n_agents = value.get<int>();
        } else if (key == "grid") {
            base.grid.width = value.at("width").get<int>();
            base.grid.height = value.at("height").get<int>();
        } else if (key == "mounds") {
            base.mounds.clear();
            for (const json& mj : value) {
                MoundSpec m;
                const json& center = mj.at("center");
                m.center = GridPos{center.at(0).get<int>(), center.at(1).get<int>()};
                m.peak = mj.at("peak").get<double>();
                m.radius = mj.at("radius").get<int>();
                const std::string kind = mj.at("kind").get<std::string>();
                if (kind == "bond") {
                    m.kind = ResourceKind::bond;
                } else if (kind == "cash") {
                    m.kind = ResourceKind::cash;
                } else {
                    throw std::invalid_argument("mound kind must be \"bond\" or \"cash\"");
                }
                base.mounds.push_back(m);
            }
        } else if (key == "init") {
            for (const auto& [rkey, rvalue] : value.items()) {
                if (rkey == "vision") {
                    base.init.vision = detail::range_from_json(rvalue, rkey);
                } else if (rkey == "bond_cost") {
                    base.init.bond_cost = detail::range_from_json(rvalue, rkey);
                } else if (rkey == "cash_cost") {
                    base.init.cash_cost = detail::range_from_json(rvalue, rkey);
                } else if (rkey == "bond_accumulation") {
                    base.init.bond_accumulation = detail::range_from_json(rvalue, rkey);
                } else if (rkey == "cash_accumulation") {
                    base.init.cash_accumulation = detail::range_from_json(rvalue, rkey);
                } else {
                    throw std::invalid_argument("unknown init range: " + rkey);
                }
            }
        } else if (key == "max_steps") {
            base.max_steps = value.get<int>();
        } else if (key == "seed") {
            base.seed = value.get<std::uint64_t>();
        } else if (key == "service_counting") {
            const std::string s = value.get<std::string>();
            if (s == "every_step") {
                base.service_counting = ServiceCounting::every_step;
            } else if (s == "nonzero_harvest") {
                base.service_counting = ServiceCounting::nonzero_harvest;
            } else {
                throw std::invalid_argument("unknown service_counting: " + s);
            }
        } else if (key == "trade_counting") {
            const std::string s = value.get<std::string>();
            if (s == "per_lot") {
                base.trade_counting = TradeCounting::per_lot;
            } else if (s == "per_encounter") {
                base.trade_counting = TradeCounting::per_encounter;
            } else {
                throw std::invalid_argument("unknown trade_counting: " + s);
            }
        } else if (key == "record_trace") {
            base.record_trace = value.get<bool>();
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
    base.validate();
    return base;
}

inline ModelConfig load_config_overrides(ModelConfig base, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    in >> j;
    return apply_overrides(std::move(base), j);
}

}  // namespace bondscape
