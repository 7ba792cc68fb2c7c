#pragma once

#include <complex>
#include <vector>

#include "maslovkit/core.hpp"
#include "maslovkit/rho.hpp"

namespace maslov {

/// Sampled circle-valued path over a strictly increasing grid on [0, 1].
struct UnitCirclePath {
    std::vector<double> grid;
    std::vector<std::complex<double>> samples;

    static UnitCirclePath make(std::vector<double> grid,
                               std::vector<std::complex<double>> samples,
                               const Tolerances& tol = default_tolerances());
};

/// Sampled path of symplectic matrices. A circle transport is represented by
/// its monodromy path: samples starting at the identity; the transport is
/// regular iff the final sample is the identity again.
struct SymplecticPath {
    SymplecticSpace space;
    std::vector<double> grid;
    std::vector<Mat> samples;

    static SymplecticPath make(SymplecticSpace space, std::vector<double> grid,
                               std::vector<Mat> samples,
                               const Tolerances& tol = default_tolerances());
    std::size_t size() const { return samples.size(); }
    bool starts_at_identity(double eps = 1e-8) const;
    bool regular(double eps = 1e-8) const;
    bool closes(double eps = 1e-8) const;
};

std::vector<double> uniform_grid(int samples);

/// Total angular displacement in full turns, from the sum of principal
/// arguments of consecutive ratios. Exact for the endpoint lift difference
/// whenever every gap stays below pi - gap_margin.
double winding(const UnitCirclePath& p, const Tolerances& tol = default_tolerances());

/// 2 * winding of rho along the path.
double maslov_path(const SymplecticPath& path, ConditionFlags* flags = nullptr,
                   const Tolerances& tol = default_tolerances());

/// Index of a pair of circle transports (monodromy paths from the identity):
/// the path index of t -> Phi'(t)^{-1} Phi(t). When neither transport is
/// regular the value is base-point dependent and flags->base_dependent is
/// set.
double maslov_pair(const SymplecticPath& transport, const SymplecticPath& reference,
                   ConditionFlags* flags = nullptr,
                   const Tolerances& tol = default_tolerances());

/// Integer index of a closed loop: maslov_path / 2 rounded, with a
/// near-integer assertion.
long m0(const SymplecticPath& loop, ConditionFlags* flags = nullptr,
        const Tolerances& tol = default_tolerances());

/// The same transport based at sample index k (grid rotated through the
/// wrap, samples conjugated by the partial monodromy).
SymplecticPath rebase(const SymplecticPath& transport, std::size_t k,
                      const Tolerances& tol = default_tolerances());

/// Orientation reversal: runs the monodromy loop backwards.
SymplecticPath reverse_orientation(const SymplecticPath& transport,
                                   const Tolerances& tol = default_tolerances());

/// Pointwise product path t -> A(t) B(t).
SymplecticPath pointwise_product(const SymplecticPath& A, const SymplecticPath& B,
                                 const Tolerances& tol = default_tolerances());

SymplecticPath identity_transport(const SymplecticSpace& space,
                                  const std::vector<double>& grid);

/// Loop of rotations t -> R(2 pi k t) acting diagonally on C^n.
SymplecticPath rotation_loop(int n, int k, int samples);

} // namespace maslov
