#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tpc {

/// Failure categories raised by the model layer.
enum class ErrorKind {
    InvalidArgument,
    Overdamped,
    DepthOutOfRange,
    ResolutionTooCoarse,
    ZeroFrequency,
    UnstableStep,
    PatternTooShort,
    GridMismatch,
    IndivisibleDecimation,
    TooManyBits,
    DegenerateTopology,
    RepeatedPoles,
    UnstablePole,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Overdamped: return "Overdamped";
        case ErrorKind::DepthOutOfRange: return "DepthOutOfRange";
        case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
        case ErrorKind::ZeroFrequency: return "ZeroFrequency";
        case ErrorKind::UnstableStep: return "UnstableStep";
        case ErrorKind::PatternTooShort: return "PatternTooShort";
        case ErrorKind::GridMismatch: return "GridMismatch";
        case ErrorKind::IndivisibleDecimation: return "IndivisibleDecimation";
        case ErrorKind::TooManyBits: return "TooManyBits";
        case ErrorKind::DegenerateTopology: return "DegenerateTopology";
        case ErrorKind::RepeatedPoles: return "RepeatedPoles";
        case ErrorKind::UnstablePole: return "UnstablePole";
    }
    return "Unknown";
}

/// Exception carrying an ErrorKind; every model-level failure is one of these.
class ModelError : public std::runtime_error {
public:
    ModelError(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace tpc
