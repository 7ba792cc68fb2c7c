#pragma once

namespace maslov {

/// Numerical policy shared by every operation. Each field can be overridden
/// per call site (the CLI exposes them as --tol-* flags and records the
/// values used in every result record).
struct Tolerances {
    /// Relative singular-value cutoff for rank/kernel decisions:
    /// sigma_i <= rank_rel * sigma_max counts as zero.
    double rank_rel = 1e-9;

    /// Subspace equality threshold on the largest principal angle
    /// (measured through its sine).
    double subspace_angle = 1e-8;

    /// Looser angle bound used when checking that a map carries one
    /// subspace onto another (lifted paths drift up to ~1e-7).
    double preserved_angle = 1e-6;

    /// Elementwise bound for "is symplectic" checks.
    double symplectic_defect = 1e-8;

    /// Eigenvalue classification band: |.|-distance from the unit circle,
    /// from +1 and from -1, and |Im| for the negative real axis.
    double eps_circle = 1e-7;

    /// Absolute eigenvalue clustering scale. Eigenvalues closer than
    /// eps_cluster/10 merge; distinct clusters closer than eps_cluster
    /// raise ClusterAmbiguity.
    double eps_cluster = 1e-7;

    /// Winding lifts require consecutive angular gaps < pi - gap_margin.
    double gap_margin = 0.1;

    /// Elementwise bound on consecutive samples of a symplectic path.
    double path_step = 0.5;

    /// Bound on |C_k - Id|_inf for each incremental lift correction.
    double lift_step = 0.5;

    /// Loop closure threshold (samples and subspaces).
    double loop_closure = 1e-8;

    /// How close a loop index must be to an integer before rounding.
    double near_integer = 1e-6;
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

} // namespace maslov
