#pragma once

#include <complex>
#include <vector>

#include "maslovkit/core.hpp"

namespace maslov {

/// One generalized eigenspace: representative eigenvalue, algebraic
/// multiplicity, and an orthonormal complex basis of the invariant subspace.
struct EigenCluster {
    std::complex<double> lambda;
    int multiplicity = 0;
    CMat basis;  // 2n x multiplicity, orthonormal columns
};

struct SpectralData {
    std::vector<EigenCluster> clusters;
    int dim = 0;
};

/// Clustered generalized eigenspaces of a symplectic matrix, computed through
/// a complex Schur reduction with eigenvalue reordering. Eigenvalues closer
/// than eps_cluster/10 merge; clusters separated by less than eps_cluster
/// raise ClusterAmbiguity.
SpectralData generalized_eigenspaces(const SymplecticMap& Psi,
                                     const Tolerances& tol = default_tolerances());

/// Krein positive index of a unit-circle cluster (lambda != +-1): the number
/// of positive eigenvalues of the Hermitian form i * B^* Omega B on the
/// generalized eigenspace.
int krein_positive_index(const SymplecticSpace& space, const EigenCluster& cluster,
                         const Tolerances& tol = default_tolerances());

/// Half the total multiplicity of clusters on the negative real axis
/// (including -1). Throws IntegralityViolation when the sum is odd.
int m_minus(const SymplecticMap& Psi, const Tolerances& tol = default_tolerances());
int m_minus(const SpectralData& spec, const Tolerances& tol = default_tolerances());

/// The circle-valued spectral invariant (Salamon-Zehnder map):
/// rho = (-1)^{m_-} prod_{|lambda|=1, lambda != +-1} lambda^{m_+(lambda)},
/// normalized to unit modulus. Sets flags->eigenvalue_band when the spectrum
/// sits near a classification boundary.
std::complex<double> rho(const SymplecticMap& Psi, ConditionFlags* flags = nullptr,
                         const Tolerances& tol = default_tolerances());

/// Block deformation of a W-preserving automorphism through the splitting
/// V = (W cap W') + W^omega + W'^omega:
///   Psi^t = [[P00, 0, t P02], [t P10, P11, t^2 P12], [0, 0, P22]].
/// Psi^1 reconstructs Psi; rho(Psi^t) is constant in t.
SymplecticMap deform_invariant_automorphism(const CoisotropicSubspace& W,
                                            const SymplecticMap& Psi,
                                            const CoisotropicSubspace& Waux, double t,
                                            const Tolerances& tol = default_tolerances());

} // namespace maslov
