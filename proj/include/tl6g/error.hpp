// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tl6g {

/// Error categories raised by the simulator library.
enum class ErrorCode {
    UnknownNode,
    NoPath,
    MissingHierarchy,
    EmptyAgentList,
    UnclassifiablePair,
    SignatureLengthMismatch,
    EmptyDomain,
    InvalidParams,
    NonPositiveBandwidth,
    NonPositiveDelay,
    ZeroBaselinePerformance,
    ZeroTrainingTime,
    UnknownAgent,
    NoFutureWindow,
    WrongClass,
    DuplicateIdWithDifferentContent,
    UnknownScheme,
    ValidationError,
    ParseError,
    FileNotFound,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace tl6g
