#include "omegacloud/tolerance.hpp"
#include "omegacloud/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace omegacloud {

double base_epsilon() {
    static const double eps = [] {
        const char* env = std::getenv("OMEGA_CLOUD_EPS");
        if (env == nullptr || *env == '\0') return 1e-9;
        char* end = nullptr;
        const double value = std::strtod(env, &end);
        if (end == env || !std::isfinite(value) || value <= 0.0) return 1e-9;
        return value;
    }();
    return eps;
}

Tolerance Tolerance::for_scale(double diameter) {
    const double eps = base_epsilon();
    const double scale = diameter > 0.0 && std::isfinite(diameter) ? diameter : 1.0;
    return Tolerance{eps * scale, eps, eps * 1e-3};
}

Tolerance Tolerance::widened_for_omega(double omega, double delta, double diameter) const {
    if (delta <= 0.0) return *this;
    const double s = std::sin(omega);
    Tolerance out = *this;
    out.ang += 4.0 * delta;
    out.pos += 4.0 * delta * diameter / std::max(s * s, 1e-6);
    return out;
}

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::TooFewVertices: return "TooFewVertices";
        case ErrorCode::DuplicateVertices: return "DuplicateVertices";
        case ErrorCode::NotConvex: return "NotConvex";
        case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
        case ErrorCode::DegenerateChord: return "DegenerateChord";
        case ErrorCode::InvalidWedge: return "InvalidWedge";
        case ErrorCode::InvalidArc: return "InvalidArc";
        case ErrorCode::ApexNotOnCircle: return "ApexNotOnCircle";
        case ErrorCode::ArmMissesCircle: return "ArmMissesCircle";
        case ErrorCode::CoCircular: return "CoCircular";
        case ErrorCode::PointNotShared: return "PointNotShared";
        case ErrorCode::NonClosingCloud: return "NonClosingCloud";
        case ErrorCode::TurnOutOfRange: return "TurnOutOfRange";
        case ErrorCode::IdentityViolated: return "IdentityViolated";
        case ErrorCode::InvalidCloud: return "InvalidCloud";
        case ErrorCode::NonClosing: return "NonClosing";
        case ErrorCode::SingleCircleAmbiguous: return "SingleCircleAmbiguous";
        case ErrorCode::StrictNarrowEncountered: return "StrictNarrowEncountered";
        case ErrorCode::ContactOffCircle: return "ContactOffCircle";
        case ErrorCode::CertificationFailed: return "CertificationFailed";
        case ErrorCode::NotASegment: return "NotASegment";
        case ErrorCode::AmbiguousOmega: return "AmbiguousOmega";
        case ErrorCode::GenerationFailed: return "GenerationFailed";
        case ErrorCode::OmegaOutOfRange: return "OmegaOutOfRange";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace omegacloud
