#include "botdrift/error.hpp"

namespace botdrift {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::io: return "io";
        case ErrorCode::corpus_rejected: return "corpus-rejected";
        case ErrorCode::config: return "config";
        case ErrorCode::precondition: return "precondition";
        case ErrorCode::series_too_short: return "series-too-short";
        case ErrorCode::degenerate_series: return "degenerate-series";
        case ErrorCode::degenerate_regressor: return "degenerate-regressor";
        case ErrorCode::domain: return "domain";
        case ErrorCode::undefined_test: return "undefined-test";
        case ErrorCode::undefined_correlation: return "undefined-correlation";
        case ErrorCode::empty_population: return "empty-population";
        case ErrorCode::missing_pairs: return "missing-pairs";
        case ErrorCode::infeasible_spec: return "infeasible-spec";
        case ErrorCode::schema: return "schema";
        case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

}  // namespace botdrift
