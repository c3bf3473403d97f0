#ifndef IVMC_TARGET_CONFIG_HPP
#define IVMC_TARGET_CONFIG_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ivmc/errors.hpp"
#include "ivmc/targets.hpp"

namespace ivmc::targets {

using target_spec = std::variant<gaussian_mixture_spec, levy_spec, needle_spec,
                                 rosenbrock_spec, witchs_hat_spec>;

inline const box& domain_of(const target_spec& s) {
    return std::visit([](const auto& v) -> const box& { return v.domain; }, s);
}

inline std::vector<double> true_mean_of(const target_spec& s, std::size_t n_grid) {
    return std::visit([&](const auto& v) { return true_mean_oracle(v, n_grid); }, s);
}

inline target_spec builtin_target(std::string_view name) {
    if (name == "g1") return g1();
    if (name == "g2") return g2();
    if (name == "g5") return g5();
    if (name == "g5p") return g5p();
    if (name == "g5pp") return g5pp();
    if (name == "g5hat") return g5hat();
    if (name == "levy") return levy_spec{};
    if (name == "needle") return needle_spec{};
    if (name == "rosenbrock") return rosenbrock_spec{};
    if (name == "witchs_hat") return witchs_hat_spec{};
    throw invalid_spec("unknown builtin target '" + std::string(name) +
                       "' (try g1, g2, g5, g5p, g5pp, g5hat, levy, needle, rosenbrock, "
                       "witchs_hat)");
}

namespace detail {

inline box parse_domain_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty())
        throw invalid_spec("domain must be a nonempty array of [lo, hi] pairs");
    std::vector<interval> sides;
    for (const auto& side : j) {
        if (!side.is_array() || side.size() != 2)
            throw invalid_spec("each domain side must be a [lo, hi] pair");
        sides.emplace_back(side[0].get<double>(), side[1].get<double>());
    }
    return box(std::move(sides));
}

} // namespace detail

/// Loads a target spec from JSON: a `name` (builtin names work too) plus
/// per-target parameters and optional `domain` bounds.
inline target_spec load_target_spec(const nlohmann::json& j) {
    const std::string name = j.value("name", std::string());
    if (name.empty()) throw invalid_spec("target spec needs a 'name'");

    if (name == "gaussian_mixture") {
        if (!j.contains("components")) throw invalid_spec("gaussian_mixture needs 'components'");
        gaussian_mixture_spec s{{}, detail::parse_domain_json(j.at("domain"))};
        for (const auto& c : j.at("components")) {
            gaussian_component gc;
            gc.weight = c.at("weight").get<double>();
            gc.mean = c.at("mean").get<std::vector<double>>();
            gc.stdev = c.at("stdev").get<std::vector<double>>();
            s.components.push_back(std::move(gc));
        }
        validate(s);
        return s;
    }

    target_spec s = builtin_target(name);
    if (j.contains("domain")) {
        const box d = detail::parse_domain_json(j.at("domain"));
        std::visit([&](auto& v) { v.domain = d; }, s);
    }
    std::visit(
        [&](auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, levy_spec>) {
                v.temperature = j.value("temperature", v.temperature);
            } else if constexpr (std::is_same_v<T, needle_spec>) {
                v.stdev1 = j.value("stdev1", v.stdev1);
                v.stdev2 = j.value("stdev2", v.stdev2);
                if (j.contains("mean1")) {
                    const auto m = j.at("mean1").get<std::vector<double>>();
                    if (m.size() != 3) throw invalid_spec("mean1 must have 3 entries");
                    std::copy(m.begin(), m.end(), v.mean1.begin());
                }
                if (j.contains("mean2")) {
                    const auto m = j.at("mean2").get<std::vector<double>>();
                    if (m.size() != 3) throw invalid_spec("mean2 must have 3 entries");
                    std::copy(m.begin(), m.end(), v.mean2.begin());
                }
            } else if constexpr (std::is_same_v<T, rosenbrock_spec>) {
                v.dimension = j.value("dimension", v.dimension);
                if (!j.contains("domain"))
                    v.domain = box(interval(-10.0, 10.0), v.dimension);
            } else if constexpr (std::is_same_v<T, witchs_hat_spec>) {
                v.dimension = j.value("dimension", v.dimension);
                v.radius_exponent = j.value("radius_exponent", v.radius_exponent);
                v.mixing = j.value("mixing", v.mixing);
                if (j.contains("center")) v.center = j.at("center").get<std::vector<double>>();
                if (!j.contains("domain")) v.domain = box(interval(-10.0, 10.0), v.dimension);
                if (!j.contains("center")) v.center.assign(v.dimension, 2.0);
            }
            validate(v);
        },
        s);
    return s;
}

} // namespace ivmc::targets

#endif
