#include "maslovkit/rho.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace maslov {

namespace {

using Cplx = std::complex<double>;

/// Swap the diagonal entries T(k,k) and T(k+1,k+1) of an upper triangular
/// complex Schur form by a unitary similarity, updating U accordingly.
void swap_adjacent(CMat& T, CMat& U, int k) {
    const Cplx a = T(k, k);
    const Cplx b = T(k, k + 1);
    const Cplx c = T(k + 1, k + 1);
    // Eigenvector of [[a, b], [0, c]] for eigenvalue c.
    Cplx x1 = b;
    Cplx x2 = c - a;
    const double nrm = std::sqrt(std::norm(x1) + std::norm(x2));
    if (nrm == 0.0) return;  // equal eigenvalues, nothing to reorder
    x1 /= nrm;
    x2 /= nrm;
    CMat G(2, 2);
    G << std::conj(x1), std::conj(x2), -x2, x1;
    T.block(k, 0, 2, T.cols()) = G * T.block(k, 0, 2, T.cols());
    T.block(0, k, T.rows(), 2) = T.block(0, k, T.rows(), 2) * G.adjoint();
    U.block(0, k, U.rows(), 2) = U.block(0, k, U.rows(), 2) * G.adjoint();
    T(k + 1, k) = 0.0;
}

struct Clustering {
    std::vector<int> label;          // per Schur position
    std::vector<Cplx> representative;
    std::vector<int> multiplicity;
};

Clustering cluster_eigenvalues(const CVec& eigs, const Tolerances& tol) {
    const int d = static_cast<int>(eigs.size());
    const double merge = tol.eps_cluster / 10.0;
    std::vector<int> label(d, -1);
    int next = 0;
    // Single linkage at the merge radius.
    for (int i = 0; i < d; ++i) {
        if (label[i] >= 0) continue;
        label[i] = next;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int j = 0; j < d; ++j) {
                if (label[j] >= 0) continue;
                for (int l = 0; l < d; ++l) {
                    if (label[l] == next && std::abs(eigs(j) - eigs(l)) <= merge) {
                        label[j] = next;
                        grew = true;
                        break;
                    }
                }
            }
        }
        ++next;
    }
    // Ambiguity check: distinct clusters must be separated by eps_cluster.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (label[i] != label[j] && std::abs(eigs(i) - eigs(j)) < tol.eps_cluster)
                throw NumericError(ErrorCode::ClusterAmbiguity,
                                   "eigenvalue clusters are separated by less than the "
                                   "clustering tolerance");
    Clustering out;
    out.label = label;
    out.representative.assign(next, Cplx(0, 0));
    out.multiplicity.assign(next, 0);
    for (int i = 0; i < d; ++i) {
        out.representative[label[i]] += eigs(i);
        out.multiplicity[label[i]] += 1;
    }
    for (int c = 0; c < next; ++c) out.representative[c] /= double(out.multiplicity[c]);
    return out;
}

} // namespace

SpectralData generalized_eigenspaces(const SymplecticMap& Psi, const Tolerances& tol) {
    const int d = Psi.space.dim;
    SpectralData out;
    out.dim = d;
    if (d == 0) return out;

    Eigen::ComplexSchur<CMat> schur(Psi.matrix.cast<Cplx>(), true);
    if (schur.info() != Eigen::Success)
        throw NumericError(ErrorCode::EigenvalueNotAdmissible, "Schur reduction failed");
    const CMat T0 = schur.matrixT();
    const CMat U0 = schur.matrixU();
    const CVec eigs = T0.diagonal();
    const Clustering cl = cluster_eigenvalues(eigs, tol);

    const int nclusters = static_cast<int>(cl.representative.size());
    for (int c = 0; c < nclusters; ++c) {
        CMat T = T0;
        CMat U = U0;
        std::vector<int> label = cl.label;
        // Bubble every member of cluster c to the leading block, preserving
        // the relative order of everything else.
        int front = 0;
        for (int pos = 0; pos < static_cast<int>(label.size()); ++pos) {
            if (label[pos] != c) continue;
            for (int k = pos; k > front; --k) {
                swap_adjacent(T, U, k - 1);
                std::swap(label[k - 1], label[k]);
            }
            ++front;
        }
        EigenCluster cluster;
        cluster.lambda = cl.representative[c];
        cluster.multiplicity = cl.multiplicity[c];
        cluster.basis = U.leftCols(cluster.multiplicity);
        out.clusters.push_back(std::move(cluster));
    }
    // Deterministic order: by argument then modulus of the representative.
    std::sort(out.clusters.begin(), out.clusters.end(),
              [](const EigenCluster& a, const EigenCluster& b) {
                  const double ra = std::arg(a.lambda), rb = std::arg(b.lambda);
                  if (ra != rb) return ra < rb;
                  return std::abs(a.lambda) < std::abs(b.lambda);
              });
    return out;
}

namespace {

enum class Band { One, MinusOne, Circle, NegativeReal, Other };

Band classify(const Cplx& lambda, const Tolerances& tol) {
    if (std::abs(lambda - 1.0) < tol.eps_circle) return Band::One;
    if (std::abs(lambda + 1.0) < tol.eps_circle) return Band::MinusOne;
    if (std::abs(std::abs(lambda) - 1.0) < tol.eps_circle) return Band::Circle;
    if (std::abs(lambda.imag()) < tol.eps_circle && lambda.real() < 0.0)
        return Band::NegativeReal;
    return Band::Other;
}

bool near_band_boundary(const Cplx& lambda, const Tolerances& tol) {
    const double eps = tol.eps_circle;
    const double guard = 10.0 * eps;
    const double d_circle = std::abs(std::abs(std::abs(lambda) - 1.0) - eps);
    const double d_one = std::abs(std::abs(lambda - 1.0) - eps);
    const double d_mone = std::abs(std::abs(lambda + 1.0) - eps);
    double d_neg = std::numeric_limits<double>::infinity();
    if (lambda.real() < 0.0) d_neg = std::abs(std::abs(lambda.imag()) - eps);
    return std::min(std::min(d_circle, d_one), std::min(d_mone, d_neg)) < guard;
}

} // namespace

int krein_positive_index(const SymplecticSpace& space, const EigenCluster& cluster,
                         const Tolerances& tol) {
    const Band band = classify(cluster.lambda, tol);
    if (band != Band::Circle)
        throw ValidationError(ErrorCode::EigenvalueNotAdmissible,
                              "Krein index requires a unit-circle eigenvalue distinct from +-1");
    const CMat& B = cluster.basis;
    // Hermitian Krein form on the generalized eigenspace. The sign is fixed by
    // the determinant normalization of rho (see the start-up self-check).
    const CMat K = Cplx(0, 1) * (B.adjoint() * space.form.cast<Cplx>() * B);
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (K + K.adjoint()));
    int positive = 0;
    const double cut = 1e-10 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > cut) ++positive;
    return positive;
}

int m_minus(const SpectralData& spec, const Tolerances& tol) {
    int total = 0;
    for (const auto& c : spec.clusters) {
        const Band band = classify(c.lambda, tol);
        if (band == Band::NegativeReal || band == Band::MinusOne) total += c.multiplicity;
    }
    if (total % 2 != 0)
        throw NumericError(ErrorCode::IntegralityViolation,
                           "odd total multiplicity on the negative real axis");
    return total / 2;
}

int m_minus(const SymplecticMap& Psi, const Tolerances& tol) {
    return m_minus(generalized_eigenspaces(Psi, tol), tol);
}

namespace {

Cplx rho_from_spectrum(const SymplecticSpace& space, const SpectralData& spec,
                       ConditionFlags* flags, const Tolerances& tol) {
    Cplx value(1.0, 0.0);
    int negative_total = 0;
    for (const auto& c : spec.clusters) {
        if (flags && near_band_boundary(c.lambda, tol)) flags->eigenvalue_band = true;
        switch (classify(c.lambda, tol)) {
            case Band::Circle: {
                const int mp = krein_positive_index(space, c, tol);
                const Cplx unit = c.lambda / std::abs(c.lambda);
                value *= std::pow(unit, mp);
                break;
            }
            case Band::NegativeReal:
            case Band::MinusOne:
                negative_total += c.multiplicity;
                break;
            default:
                break;
        }
    }
    if (negative_total % 2 != 0)
        throw NumericError(ErrorCode::IntegralityViolation,
                           "odd total multiplicity on the negative real axis");
    if ((negative_total / 2) % 2 != 0) value = -value;
    return value / std::abs(value);
}

/// One-time check that the implemented Krein sign convention reproduces the
/// determinant normalization rho(R(theta)) = e^{i theta} on rotations.
bool convention_self_check() {
    const SymplecticSpace sp = SymplecticSpace::standard(1);
    for (double theta : {0.4, 1.1, 2.5}) {
        Mat R(2, 2);
        R << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        const SymplecticMap Psi{sp, R};
        const SpectralData spec = generalized_eigenspaces(Psi);
        const Cplx got = rho_from_spectrum(sp, spec, nullptr, default_tolerances());
        if (std::abs(got - std::polar(1.0, theta)) > 1e-9) return false;
        // Both stated sign conventions must classify the same eigenvector:
        // Im omega(conj v, v) > 0 iff i omega(conj v, v) < 0.
        for (const auto& c : spec.clusters) {
            const CVec v = c.basis.col(0);
            const Cplx w = (v.conjugate().transpose() * sp.form.cast<Cplx>() * v)(0);
            if ((w.imag() > 0) != ((Cplx(0, 1) * w).real() < 0)) return false;
        }
    }
    return true;
}

} // namespace

std::complex<double> rho(const SymplecticMap& Psi, ConditionFlags* flags,
                         const Tolerances& tol) {
    static const bool convention_ok = convention_self_check();
    if (!convention_ok)
        throw NumericError(ErrorCode::EigenvalueNotAdmissible,
                           "Krein sign convention self-check failed");
    if (Psi.space.dim == 0) return Cplx(1.0, 0.0);
    const SpectralData spec = generalized_eigenspaces(Psi, tol);
    return rho_from_spectrum(Psi.space, spec, flags, tol);
}

SymplecticMap deform_invariant_automorphism(const CoisotropicSubspace& W,
                                            const SymplecticMap& Psi,
                                            const CoisotropicSubspace& Waux, double t,
                                            const Tolerances& tol) {
    const int d = W.space.dim;
    if (Waux.rank() != W.rank())
        throw ValidationError(ErrorCode::DimensionMismatch,
                              "auxiliary coisotropic must have the same dimension");
    if (subspace_gap(Psi.matrix * W.basis, W.basis, tol) > tol.preserved_angle)
        throw ValidationError(ErrorCode::SubspaceNotPreserved, "map does not preserve W");

    // V0 = W cap Waux, V1 = W^omega, V2 = Waux^omega. The intersection is the
    // kernel of the stacked orthogonal complements.
    const Mat QW = column_space(W.basis, tol);
    const Mat QA = column_space(Waux.basis, tol);
    const Mat PW = Mat::Identity(d, d) - QW * QW.transpose();
    const Mat PA = Mat::Identity(d, d) - QA * QA.transpose();
    Mat stack(2 * d, d);
    stack.topRows(d) = PW;
    stack.bottomRows(d) = PA;
    // The stacked projectors have unit natural scale; a near-zero stack means
    // the intersection is everything.
    const Mat B0 = kernel_space(stack, tol, 1.0);
    const Mat B1 = W.complement;
    const Mat B2 = Waux.complement;
    if (B0.cols() + B1.cols() + B2.cols() != d)
        throw ValidationError(ErrorCode::TransversalityFailure,
                              "W cap Waux, W^omega, Waux^omega do not span the space");
    Mat T(d, d);
    T.leftCols(B0.cols()) = B0;
    T.middleCols(B0.cols(), B1.cols()) = B1;
    T.rightCols(B2.cols()) = B2;
    const auto lu = T.partialPivLu();
    if (std::abs(lu.determinant()) < 1e-12)
        throw ValidationError(ErrorCode::TransversalityFailure,
                              "splitting basis is numerically singular");
    Mat blocks = lu.solve(Psi.matrix * T);

    const int n0 = static_cast<int>(B0.cols());
    const int n1 = static_cast<int>(B1.cols());
    const int n2 = static_cast<int>(B2.cols());
    // Structural zeros of a W- and W^omega-preserving map.
    blocks.block(0, n0, n0, n1).setZero();
    blocks.block(n0 + n1, 0, n2, n0).setZero();
    blocks.block(n0 + n1, n0, n2, n1).setZero();
    Mat scaled = blocks;
    scaled.block(0, n0 + n1, n0, n2) *= t;
    scaled.block(n0, 0, n1, n0) *= t;
    scaled.block(n0, n0 + n1, n1, n2) *= t * t;
    return SymplecticMap{W.space, T * scaled * lu.solve(Mat::Identity(d, d))};
}

} // namespace maslov
