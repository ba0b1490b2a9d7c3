#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

#include "orlicz/errors.hpp"

namespace orlicz {

/// Shared numeric policy for all integral evaluations. NaN window edges and a
/// zero truncation radius mean "auto-size from analytic tail bounds".
struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;
    double log_radius_lo = std::numeric_limits<double>::quiet_NaN();  // tau_-
    double log_radius_hi = std::numeric_limits<double>::quiet_NaN();  // tau_+
    double outer_truncation = 0.0;                                    // R, 0 = auto
    long long mc_samples = 1'000'000;
    std::uint64_t rng_seed = 42;

    bool window_is_auto() const {
        return std::isnan(log_radius_lo) || std::isnan(log_radius_hi);
    }

    void validate() const {
        require(rel_tol > 0.0 && abs_tol > 0.0, errc::invalid_parameter,
                "QuadratureConfig: tolerances must be positive");
        require(max_subdivisions > 0, errc::invalid_parameter,
                "QuadratureConfig: max_subdivisions must be positive");
        if (!window_is_auto())
            require(log_radius_lo < log_radius_hi, errc::invalid_parameter,
                    "QuadratureConfig: log radius window requires tau_- < tau_+");
    }

    void validate_mc() const {
        validate();
        require(mc_samples >= 10'000, errc::invalid_parameter,
                "QuadratureConfig: Monte Carlo requires mc_samples >= 10^4");
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"rel_tol", rel_tol},
                         {"abs_tol", abs_tol},
                         {"max_subdivisions", max_subdivisions},
                         {"outer_truncation", outer_truncation},
                         {"mc_samples", mc_samples},
                         {"rng_seed", rng_seed}};
        if (!window_is_auto()) {
            j["log_radius_lo"] = log_radius_lo;
            j["log_radius_hi"] = log_radius_hi;
        }
        return j;
    }
};

enum class Method { deterministic, monte_carlo };

inline const char* method_name(Method m) {
    return m == Method::deterministic ? "Deterministic" : "MonteCarlo";
}

/// A computed integral value with its error diagnostics.
struct ModularResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    double truncation_radius = 0.0;
    long long evaluations = 0;
    Method method = Method::deterministic;
    std::optional<double> standard_error;  // present for Monte Carlo results
    std::optional<std::string> warning;

    nlohmann::json to_json() const {
        nlohmann::json j{{"value", value},
                         {"abs_error_estimate", abs_error_estimate},
                         {"truncation_radius", truncation_radius},
                         {"evaluations", evaluations},
                         {"method", method_name(method)}};
        if (standard_error) j["standard_error"] = *standard_error;
        if (warning) j["warning"] = *warning;
        return j;
    }
};

} // namespace orlicz
