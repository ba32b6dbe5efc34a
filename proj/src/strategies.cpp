#include "fairim/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "fairim/errors.hpp"
#include "fairim/rng.hpp"

namespace fairim {

namespace {
constexpr double kFeasibilityTol = 1e-9;
}

double NodeStrategy::mass() const {
    return std::accumulate(x.begin(), x.end(), 0.0);
}

void NodeStrategy::validate() const {
    if (k < 0) throw ParameterError("node strategy: k must be non-negative");
    for (double xi : x)
        if (!(xi >= 0.0 && xi <= 1.0))
            throw ParameterError("node strategy: components must lie in [0,1]");
    if (mass() > k + kFeasibilityTol)
        throw ParameterError("node strategy: total mass exceeds budget k");
}

double SetStrategy::expected_size() const {
    double s = 0.0;
    for (const auto& e : support) s += e.probability * e.set.size();
    return s;
}

double SetStrategy::probability_mass() const {
    double s = 0.0;
    for (const auto& e : support) s += e.probability;
    return s;
}

void SetStrategy::validate() const {
    if (support.empty()) throw ParameterError("set strategy: support must be non-empty");
    if (k < 0) throw ParameterError("set strategy: k must be non-negative");
    for (const auto& e : support) {
        if (e.probability <= 0.0)
            throw ParameterError("set strategy: probabilities must be positive");
        if (!std::is_sorted(e.set.begin(), e.set.end()) ||
            std::adjacent_find(e.set.begin(), e.set.end()) != e.set.end())
            throw ParameterError("set strategy: support sets must be sorted and unique");
    }
    if (std::abs(probability_mass() - 1.0) > kFeasibilityTol)
        throw ParameterError("set strategy: probabilities must sum to 1");
    if (expected_size() > k + kFeasibilityTol)
        throw ParameterError("set strategy: expected size exceeds budget k");
}

std::vector<double> SetStrategy::marginals(int n) const {
    std::vector<double> y(n, 0.0);
    for (const auto& e : support)
        for (int v : e.set) y.at(v) += e.probability;
    return y;
}

NodeStrategy uniform_node_strategy(int n, int k) {
    if (k < 0 || k > n) throw ParameterError("uniform strategy requires 0 <= k <= n");
    NodeStrategy s;
    s.k = k;
    s.x.assign(n, static_cast<double>(k) / n);
    return s;
}

std::vector<int> sample_from_node_strategy(const NodeStrategy& strategy,
                                           std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    std::vector<int> set;
    for (int i = 0; i < strategy.n(); ++i)
        if (rng.next_double() < strategy.x[i]) set.push_back(i);
    return set;
}

std::vector<int> sample_from_set_strategy(const SetStrategy& strategy,
                                          std::uint64_t rng_seed) {
    strategy.validate();
    Rng rng(rng_seed);
    double r = rng.next_double() * strategy.probability_mass();
    double cum = 0.0;
    for (const auto& e : strategy.support) {
        cum += e.probability;
        if (r < cum) return e.set;
    }
    return strategy.support.back().set;
}

std::string strategy_to_json(const Strategy& strategy) {
    nlohmann::json j;
    if (const auto* node = std::get_if<NodeStrategy>(&strategy)) {
        j["kind"] = "node";
        j["k"] = node->k;
        j["x"] = node->x;
    } else {
        const auto& set = std::get<SetStrategy>(strategy);
        j["kind"] = "set";
        j["k"] = set.k;
        auto& arr = j["support"] = nlohmann::json::array();
        for (const auto& e : set.support)
            arr.push_back({{"set", e.set}, {"p", e.probability}});
    }
    return j.dump();
}

Strategy strategy_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "node") {
        NodeStrategy s;
        s.k = j.at("k").get<int>();
        s.x = j.at("x").get<std::vector<double>>();
        s.validate();
        return s;
    }
    if (kind == "set") {
        SetStrategy s;
        s.k = j.at("k").get<int>();
        for (const auto& e : j.at("support")) {
            SetStrategy::Entry entry;
            entry.set = e.at("set").get<std::vector<int>>();
            entry.probability = e.at("p").get<double>();
            s.support.push_back(std::move(entry));
        }
        s.validate();
        return s;
    }
    throw ParseError("unknown strategy kind: " + kind);
}

} // namespace fairim
