#pragma once

namespace omegacloud {

/// Relative epsilon, 1e-9 unless OMEGA_CLOUD_EPS overrides it.
double base_epsilon();

/// Comparison thresholds for one input.
///
/// `pos` is a length (point coincidence, on-circle tests) scaled by the
/// input's bounding-box diameter; `ang` is in radians (measure and angle
/// comparisons, co-circularity of arcs). `snap` is the much finer threshold
/// used when a walked turn lands on an arc boundary: it only has to absorb
/// summation round-off, and must stay below the shortest genuine arc.
struct Tolerance {
    double pos = 1e-9;
    double ang = 1e-9;
    double snap = 1e-12;

    /// Tolerance for an input whose bounding box has the given diameter.
    static Tolerance for_scale(double diameter);

    /// Widen for an omega that is only known to +-delta (e.g. typed with a
    /// few decimals). Turns scale as 2*delta per multiple of 2(pi - omega);
    /// inscribed-circle centres move by about 2*delta/sin^2(omega) per
    /// unit chord.
    [[nodiscard]] Tolerance widened_for_omega(double omega, double delta, double diameter) const;
};

}  // namespace omegacloud
