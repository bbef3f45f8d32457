#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace omegacloud {

enum class ErrorCode {
    TooFewVertices,
    DuplicateVertices,
    NotConvex,
    DegeneratePolygon,
    DegenerateChord,
    InvalidWedge,
    InvalidArc,
    ApexNotOnCircle,
    ArmMissesCircle,
    CoCircular,
    PointNotShared,
    NonClosingCloud,
    TurnOutOfRange,
    IdentityViolated,
    InvalidCloud,
    NonClosing,
    SingleCircleAmbiguous,
    StrictNarrowEncountered,
    ContactOffCircle,
    CertificationFailed,
    NotASegment,
    AmbiguousOmega,
    GenerationFailed,
    OmegaOutOfRange,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above, so
/// callers (the CLI in particular) can map failures to exit codes without
/// parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace omegacloud
