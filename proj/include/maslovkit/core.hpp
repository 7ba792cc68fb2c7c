#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "maslovkit/errors.hpp"
#include "maslovkit/tolerances.hpp"

namespace maslov {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Basic linear algebra helpers (tolerant rank decisions via SVD)
// ---------------------------------------------------------------------------

/// Orthonormal basis of the column space of A. Rank cut at
/// tol.rank_rel * max(sigma_max, scale); pass the natural scale of the data
/// when A itself may be a near-zero residual.
Mat column_space(const Mat& A, const Tolerances& tol = default_tolerances(),
                 double scale = 0.0);

/// Orthonormal basis of ker(A) (right null space), same rank cut.
Mat kernel_space(const Mat& A, const Tolerances& tol = default_tolerances(),
                 double scale = 0.0);

/// Sine of the largest principal angle between the spans of A and B.
/// Returns 1 when the dimensions differ.
double subspace_gap(const Mat& A, const Mat& B,
                    const Tolerances& tol = default_tolerances());

/// True iff v lies in span(B) up to tol.subspace_angle.
bool in_span(const Mat& B, const Vec& v,
             const Tolerances& tol = default_tolerances());

/// Standard symplectic form on R^{2n} in (x_1..x_n, y_1..y_n) coordinates:
/// omega(e_i, f_j) = delta_ij, i.e. [[0, I], [-I, 0]].
Mat standard_form(int two_n);

/// Real 2n x 2n matrix of the complex linear map U = X + iY acting on
/// C^n = R^{2n}: [[X, -Y], [Y, X]].
Mat embed_unitary(const CMat& U);

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Even-dimensional real vector space with a nondegenerate skew form.
struct SymplecticSpace {
    int dim = 0;  // 2n
    Mat form;     // Omega, dim x dim

    static SymplecticSpace standard(int n);
    /// Validating constructor-equivalent: checks skewness, nondegeneracy and
    /// even dimension.
    static SymplecticSpace make(Mat form, const Tolerances& tol = default_tolerances());

    int n() const { return dim / 2; }
    double omega(const Vec& a, const Vec& b) const { return a.dot(form * b); }
    SymplecticSpace negated() const { return SymplecticSpace{dim, -form}; }
};

/// A matrix preserving the form of its space.
struct SymplecticMap {
    SymplecticSpace space;
    Mat matrix;

    static SymplecticMap make(const SymplecticSpace& sp, Mat m,
                              const Tolerances& tol = default_tolerances());
    static SymplecticMap identity(const SymplecticSpace& sp);

    /// Symplectic inverse Omega^{-1} Psi^T Omega (cheap and structure-exact).
    Mat inverse_matrix() const;
    double symplectic_defect() const;
};

struct Subspace {
    SymplecticSpace space;
    Mat basis;  // 2n x k, full column rank

    static Subspace make(const SymplecticSpace& sp, Mat basis,
                         const Tolerances& tol = default_tolerances());
    int rank() const { return static_cast<int>(basis.cols()); }
};

struct CoisotropicSubspace {
    SymplecticSpace space;
    Mat basis;       // 2n x k
    Mat complement;  // 2n x (2n - k), basis of W^omega, orthonormal

    static CoisotropicSubspace make(const SymplecticSpace& sp, const Mat& basis,
                                    const Tolerances& tol = default_tolerances());
    int rank() const { return static_cast<int>(basis.cols()); }
    int corank() const { return static_cast<int>(complement.cols()); }
    int quotient_dim() const { return rank() - corank(); }
    bool lagrangian() const { return quotient_dim() == 0; }
};

/// W / W^omega presented by explicit representatives.
struct QuotientSpace {
    CoisotropicSubspace parent;
    Mat representatives;  // 2n x 2m, orthonormal, spanning W cap (W^omega)^perp
    Mat form;             // 2m x 2m, rep_i^T Omega rep_j

    SymplecticSpace as_space() const {
        return SymplecticSpace{static_cast<int>(form.rows()), form};
    }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Basis of {v : omega(v, w) = 0 for all w in span(W)}.
Subspace symplectic_complement(const SymplecticSpace& space, const Subspace& W,
                               const Tolerances& tol = default_tolerances());

bool is_coisotropic(const SymplecticSpace& space, const Subspace& W,
                    const Tolerances& tol = default_tolerances());

QuotientSpace linear_quotient(const CoisotropicSubspace& W,
                              const Tolerances& tol = default_tolerances());

/// Matrix of the induced quotient map W_omega -> W'_omega in the
/// deterministic representative bases of linear_quotient. Throws
/// SubspaceNotPreserved unless Psi carries span(W) onto span(W').
Mat induced_map(const SymplecticMap& Psi, const CoisotropicSubspace& W,
                const CoisotropicSubspace& Wp,
                const Tolerances& tol = default_tolerances());

/// Same computation for a plain matrix S, possibly mapping between different
/// spaces of equal dimension (S carries span(W) onto span(Wp)).
Mat induced_quotient_matrix(const Mat& S, const CoisotropicSubspace& W,
                            const CoisotropicSubspace& Wp,
                            const Tolerances& tol = default_tolerances());

/// Model coisotropic of dimension k in the standard R^{2n}:
/// span{e_1..e_n, f_1..f_{k-n}}; its complement is span{e_{k-n+1}..e_n}.
Mat model_coisotropic_basis(int n, int k);

/// Darboux frame adapted to a coisotropic subspace: columns
/// (u_1..u_m, g_1..g_c | v_1..v_m, h_1..h_c) with the standard pairings,
/// where span{u, v} represents the quotient and span{g} = W^omega.
struct AdaptedBasis {
    Mat U, V;  // 2n x m each, symplectic pairs spanning the representatives
    Mat G, H;  // 2n x c each, W^omega and a dual Lagrangian complement

    /// Assembled 2n x 2n matrix [U G V H]; symplectic from (R^{2n}, Omega0)
    /// to the ambient space, carrying the model coisotropic onto W.
    Mat assemble() const;
};

/// Deterministic cold-start construction (SVD-seeded symplectic
/// Gram-Schmidt).
AdaptedBasis adapted_basis(const CoisotropicSubspace& W,
                           const Tolerances& tol = default_tolerances());

/// Warm-started construction: projects the previous frame onto the new
/// subspace configuration and re-runs symplectic Gram-Schmidt. Exactly the
/// identity update when the subspace has not moved; continuous in the input.
AdaptedBasis adapted_basis_step(const CoisotropicSubspace& W_new,
                                const AdaptedBasis& prev,
                                const Tolerances& tol = default_tolerances());

/// Symplectic map taking the standard model coisotropic onto W (and the
/// model complement onto W^omega).
SymplecticMap adapted_darboux_basis(const CoisotropicSubspace& W,
                                    const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Random generators (deterministic in the seed)
// ---------------------------------------------------------------------------

/// Product of exponentials of Hamiltonian matrices; exactly symplectic up to
/// integrator error. magnitude 0 gives the identity.
SymplecticMap random_symplectic(std::uint64_t seed, int n, double magnitude);
SymplecticMap random_symplectic_in(const SymplecticSpace& space, Rng& rng,
                                   double magnitude);

/// Random unitary embedded as an orthogonal-symplectic matrix.
SymplecticMap random_unitary_symplectic(Rng& rng, int n);

/// Random coisotropic subspace of dimension k in the standard R^{2n}.
CoisotropicSubspace random_coisotropic(Rng& rng, int n, int k, double magnitude = 0.8);

/// Random symplectic map preserving span(W). When `positive_on_w` is false
/// the result is composed with a reflection making det(Psi|_W) < 0
/// (requires W != V).
SymplecticMap random_invariant_symplectic(Rng& rng, const CoisotropicSubspace& W,
                                          double magnitude, bool positive_on_w = true);

/// Random element of the stabilizer of (W, identity frame): preserves
/// span(W) and induces the identity on the quotient. Lies in the identity
/// component.
SymplecticMap random_stabilizer_gauge(Rng& rng, const CoisotropicSubspace& W,
                                      double magnitude);

/// Determinant of Psi restricted to span(W) (coordinates in W's basis).
double restricted_determinant(const SymplecticMap& Psi, const Subspace& W);

} // namespace maslov
