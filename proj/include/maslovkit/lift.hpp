#pragma once

#include "maslovkit/core.hpp"
#include "maslovkit/paths.hpp"

namespace maslov {

/// Point of the framed coisotropic Grassmannian: a coisotropic subspace
/// together with a symplectic identification of the model quotient with its
/// quotient, written in the deterministic representative bases.
struct FramedPoint {
    CoisotropicSubspace W;
    Mat frame;  // 2m x 2m, from (W0)_omega to W_omega
};

struct FramedLoop {
    SymplecticSpace space;
    std::vector<double> grid;
    std::vector<FramedPoint> samples;

    const CoisotropicSubspace& base() const { return samples.front().W; }
    static FramedLoop make(SymplecticSpace space, std::vector<double> grid,
                           std::vector<FramedPoint> samples,
                           const Tolerances& tol = default_tolerances());
};

/// Symplectic automorphism carrying span(W0) onto span(target.W) whose
/// induced quotient map equals target.frame.
SymplecticMap transitive_frame(const CoisotropicSubspace& W0, const FramedPoint& target,
                               const Tolerances& tol = default_tolerances());

/// Automorphism preserving span(W) whose induced quotient map (in the
/// representative basis) is the given quotient-symplectic matrix D.
SymplecticMap quotient_gauge(const CoisotropicSubspace& W, const Mat& D,
                             const Tolerances& tol = default_tolerances());

/// Deterministic incremental lift: Psi(t_0) is the transitive frame at the
/// base, and Psi(t_{k+1}) = C_k Psi(t_k) with C_k the geometric carry of the
/// adapted Darboux frame composed with the quotient correction. A nonzero
/// seed right-multiplies the lift by a gauge path in the identity component
/// of the stabilizer, producing a second admissible lift.
SymplecticPath lift_framed_loop(const FramedLoop& loop, std::uint64_t seed = 0,
                                ConditionFlags* flags = nullptr,
                                const Tolerances& tol = default_tolerances());

/// Path index of a lift (lift independent).
double maslov_framed_loop(const FramedLoop& loop, std::uint64_t seed = 0,
                          ConditionFlags* flags = nullptr,
                          const Tolerances& tol = default_tolerances());

/// Integer index of a sampled loop of Lagrangian subspaces: the winding of
/// t -> det(Z(t))^2 / |det(Z(t))|^2, where Z(t) is a complex matrix carrying
/// the base Lagrangian to W(t) in a fixed compatible complex structure.
long lagrangian_loop_index(const SymplecticSpace& space, const std::vector<double>& grid,
                           const std::vector<Mat>& lagrangian_bases,
                           const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Loop builders
// ---------------------------------------------------------------------------

/// Framed loop swept by a path of automorphisms: W(t) = Psi(t) W0 with the
/// induced frames. The generating path itself is then one admissible lift
/// whenever Psi(0) = Id.
FramedLoop framed_loop_from_path(const SymplecticPath& gen, const CoisotropicSubspace& W0,
                                 const Tolerances& tol = default_tolerances());

/// Random framed loop in the standard R^{2n} built from a closed generator
/// loop composed of rotations conjugated into random position; its frame
/// monodromy is the identity. The generator is itself an admissible lift.
struct GeneratedLoop {
    FramedLoop loop;
    SymplecticPath generator;
};
GeneratedLoop random_framed_loop(Rng& rng, int n, int k, int samples,
                                 const Tolerances& tol = default_tolerances());

/// The half-turn Lagrangian line loop t -> e^{i pi t} R in C (index 1),
/// optionally direct-summed with identity factors in C^{n-1}.
FramedLoop half_turn_line_loop(int n, int samples);

/// Direct sum of two framed loops on matching grids.
FramedLoop direct_sum(const FramedLoop& a, const FramedLoop& b,
                      const Tolerances& tol = default_tolerances());

/// Conjugates every subspace and frame by a fixed symplectic isomorphism
/// S : (V, omega) -> (V', omega').
FramedLoop conjugate_loop(const FramedLoop& loop, const SymplecticSpace& target,
                          const Mat& S, const Tolerances& tol = default_tolerances());

} // namespace maslov
