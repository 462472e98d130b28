#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace botdrift {

/// Failure categories raised by the analysis core. The CLI maps these onto exit codes.
enum class ErrorCode {
    io,
    corpus_rejected,
    config,
    precondition,
    series_too_short,
    degenerate_series,
    degenerate_regressor,
    domain,
    undefined_test,
    undefined_correlation,
    empty_population,
    missing_pairs,
    infeasible_spec,
    schema,
    internal,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace botdrift
