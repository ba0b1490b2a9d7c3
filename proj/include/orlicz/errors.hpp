#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

enum class errc {
    invalid_parameter,
    degenerate_input,
    numeric_failure,
    unbounded_norm,
    construction_failure,
    study_failure,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_parameter:   return "invalid-parameter";
        case errc::degenerate_input:    return "degenerate-input";
        case errc::numeric_failure:     return "numeric-failure";
        case errc::unbounded_norm:      return "unbounded-norm";
        case errc::construction_failure: return "construction-failure";
        case errc::study_failure:       return "study-failure";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

/// Carries the partial value and the last tail bound of a computation that
/// could not be completed within the configured truncation policy.
class numeric_failure : public error {
public:
    numeric_failure(const std::string& what, double partial_value, double error_bound)
        : error(errc::numeric_failure, what),
          partial_value_(partial_value), error_bound_(error_bound) {}
    double partial_value() const noexcept { return partial_value_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double partial_value_;
    double error_bound_;
};

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) throw error(code, what);
}

} // namespace orlicz
