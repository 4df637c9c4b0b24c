// SPDX-License-Identifier: Apache-2.0
#include "tl6g/error.hpp"

namespace tl6g {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::NoPath: return "NoPath";
    case ErrorCode::MissingHierarchy: return "MissingHierarchy";
    case ErrorCode::EmptyAgentList: return "EmptyAgentList";
    case ErrorCode::UnclassifiablePair: return "UnclassifiablePair";
    case ErrorCode::SignatureLengthMismatch: return "SignatureLengthMismatch";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NonPositiveBandwidth: return "NonPositiveBandwidth";
    case ErrorCode::NonPositiveDelay: return "NonPositiveDelay";
    case ErrorCode::ZeroBaselinePerformance: return "ZeroBaselinePerformance";
    case ErrorCode::ZeroTrainingTime: return "ZeroTrainingTime";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::NoFutureWindow: return "NoFutureWindow";
    case ErrorCode::WrongClass: return "WrongClass";
    case ErrorCode::DuplicateIdWithDifferentContent: return "DuplicateIdWithDifferentContent";
    case ErrorCode::UnknownScheme: return "UnknownScheme";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace tl6g
