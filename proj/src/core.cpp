#include "maslovkit/core.hpp"

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace maslov {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::RankDeficientInput: return "RankDeficientInput";
        case ErrorCode::NotCoisotropic: return "NotCoisotropic";
        case ErrorCode::NotLagrangian: return "NotLagrangian";
        case ErrorCode::SubspaceNotPreserved: return "SubspaceNotPreserved";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::TransversalityFailure: return "TransversalityFailure";
        case ErrorCode::ClusterAmbiguity: return "ClusterAmbiguity";
        case ErrorCode::EigenvalueNotAdmissible: return "EigenvalueNotAdmissible";
        case ErrorCode::IntegralityViolation: return "IntegralityViolation";
        case ErrorCode::GapTooLarge: return "GapTooLarge";
        case ErrorCode::NonUnitSample: return "NonUnitSample";
        case ErrorCode::NotALoop: return "NotALoop";
        case ErrorCode::NonIntegerIndex: return "NonIntegerIndex";
        case ErrorCode::StepTooCoarse: return "StepTooCoarse";
        case ErrorCode::DegenerateTriangulation: return "DegenerateTriangulation";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::UnknownKind: return "UnknownKind";
    }
    return "UnknownError";
}

namespace {

Eigen::JacobiSVD<Mat> svd_of(const Mat& A, unsigned options) {
    return Eigen::JacobiSVD<Mat>(A, options);
}

int tolerant_rank(const Eigen::JacobiSVD<Mat>& svd, double rank_rel, double scale) {
    if (svd.singularValues().size() == 0) return 0;
    const double cut = rank_rel * std::max(svd.singularValues()(0), scale);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > cut) ++r;
    return r;
}

} // namespace

Mat column_space(const Mat& A, const Tolerances& tol, double scale) {
    if (A.cols() == 0 || A.rows() == 0) return Mat(A.rows(), 0);
    auto svd = svd_of(A, Eigen::ComputeThinU);
    const int r = tolerant_rank(svd, tol.rank_rel, scale);
    return svd.matrixU().leftCols(r);
}

Mat kernel_space(const Mat& A, const Tolerances& tol, double scale) {
    if (A.rows() == 0) return Mat::Identity(A.cols(), A.cols());
    if (A.cols() == 0) return Mat(0, 0);
    auto svd = svd_of(A, Eigen::ComputeFullV);
    const int r = tolerant_rank(svd, tol.rank_rel, scale);
    return svd.matrixV().rightCols(A.cols() - r);
}

double subspace_gap(const Mat& A, const Mat& B, const Tolerances& tol) {
    const Mat QA = column_space(A, tol);
    const Mat QB = column_space(B, tol);
    if (QA.cols() != QB.cols()) return 1.0;
    if (QA.cols() == 0) return 0.0;
    const Mat R = QB - QA * (QA.transpose() * QB);
    return R.norm() > 0 ? svd_of(R, 0).singularValues()(0) : 0.0;
}

bool in_span(const Mat& B, const Vec& v, const Tolerances& tol) {
    const double nv = v.norm();
    if (nv == 0) return true;
    const Mat Q = column_space(B, tol);
    const Vec r = v - Q * (Q.transpose() * v);
    return r.norm() <= tol.subspace_angle * nv;
}

Mat standard_form(int two_n) {
    const int n = two_n / 2;
    Mat J = Mat::Zero(two_n, two_n);
    J.topRightCorner(n, n) = Mat::Identity(n, n);
    J.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return J;
}

Mat embed_unitary(const CMat& U) {
    const int n = static_cast<int>(U.rows());
    Mat M(2 * n, 2 * n);
    M.topLeftCorner(n, n) = U.real();
    M.topRightCorner(n, n) = -U.imag();
    M.bottomLeftCorner(n, n) = U.imag();
    M.bottomRightCorner(n, n) = U.real();
    return M;
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

SymplecticSpace SymplecticSpace::standard(int n) {
    return SymplecticSpace{2 * n, standard_form(2 * n)};
}

SymplecticSpace SymplecticSpace::make(Mat form, const Tolerances& tol) {
    const int d = static_cast<int>(form.rows());
    if (d == 0 || d % 2 != 0 || form.cols() != d)
        throw ValidationError(ErrorCode::DimensionMismatch,
                              "form must be square of even positive dimension");
    const double skew = (form + form.transpose()).cwiseAbs().maxCoeff();
    if (skew > tol.symplectic_defect)
        throw ValidationError(ErrorCode::ValidationError, "form is not skew-symmetric");
    auto svd = svd_of(form, 0);
    const double smin = svd.singularValues()(d - 1);
    if (smin <= tol.rank_rel * svd.singularValues()(0))
        throw ValidationError(ErrorCode::RankDeficientInput, "form is degenerate");
    return SymplecticSpace{d, std::move(form)};
}

SymplecticMap SymplecticMap::make(const SymplecticSpace& sp, Mat m, const Tolerances& tol) {
    if (m.rows() != sp.dim || m.cols() != sp.dim)
        throw ValidationError(ErrorCode::DimensionMismatch, "matrix size does not match space");
    SymplecticMap psi{sp, std::move(m)};
    if (psi.symplectic_defect() > tol.symplectic_defect)
        throw ValidationError(ErrorCode::ValidationError, "matrix does not preserve the form");
    return psi;
}

SymplecticMap SymplecticMap::identity(const SymplecticSpace& sp) {
    return SymplecticMap{sp, Mat::Identity(sp.dim, sp.dim)};
}

Mat SymplecticMap::inverse_matrix() const {
    return space.form.partialPivLu().solve(matrix.transpose() * space.form);
}

double SymplecticMap::symplectic_defect() const {
    return (matrix.transpose() * space.form * matrix - space.form).cwiseAbs().maxCoeff();
}

Subspace Subspace::make(const SymplecticSpace& sp, Mat basis, const Tolerances& tol) {
    if (basis.rows() != sp.dim)
        throw ValidationError(ErrorCode::DimensionMismatch, "basis rows must equal space dim");
    if (basis.cols() > 0) {
        auto svd = svd_of(basis, 0);
        if (tolerant_rank(svd, tol.rank_rel, 0.0) < basis.cols())
            throw ValidationError(ErrorCode::RankDeficientInput,
                                  "basis columns are not independent");
    }
    return Subspace{sp, std::move(basis)};
}

CoisotropicSubspace CoisotropicSubspace::make(const SymplecticSpace& sp, const Mat& basis,
                                              const Tolerances& tol) {
    Subspace W = Subspace::make(sp, basis, tol);
    if (!is_coisotropic(sp, W, tol))
        throw ValidationError(ErrorCode::NotCoisotropic,
                              "subspace does not contain its symplectic complement");
    Subspace C = symplectic_complement(sp, W, tol);
    return CoisotropicSubspace{sp, W.basis, C.basis};
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

Subspace symplectic_complement(const SymplecticSpace& space, const Subspace& W,
                               const Tolerances& tol) {
    if (W.basis.cols() > 0) {
        auto svd = svd_of(W.basis, 0);
        if (tolerant_rank(svd, tol.rank_rel, 0.0) < W.basis.cols())
            throw ValidationError(ErrorCode::RankDeficientInput, "rank-deficient subspace basis");
    }
    const Mat K = kernel_space(W.basis.transpose() * space.form, tol);
    return Subspace{space, K};
}

bool is_coisotropic(const SymplecticSpace& space, const Subspace& W, const Tolerances& tol) {
    const Subspace C = symplectic_complement(space, W, tol);
    for (int j = 0; j < C.basis.cols(); ++j)
        if (!in_span(W.basis, C.basis.col(j), tol)) return false;
    return true;
}

namespace {

/// Orthonormal basis of span(W) cap (span(C))^perp, of prescribed rank. The
/// rank cut is taken relative to the scale of W itself, so a projection that
/// should vanish entirely yields the empty basis instead of noise.
Mat orthogonal_slice(const Mat& W, const Mat& C, int want, const Tolerances& tol) {
    if (want == 0) return Mat(W.rows(), 0);
    Mat P = W;
    if (C.cols() > 0) P -= C * (C.transpose() * W);  // C orthonormal
    Eigen::JacobiSVD<Mat> svd(P, Eigen::ComputeThinU);
    const double scale = svd_of(W, 0).singularValues()(0);
    const double cut = tol.rank_rel * scale;
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > cut) ++r;
    if (r != want)
        throw NumericError(ErrorCode::RankDeficientInput,
                           "unexpected rank while splitting off the isotropic directions");
    return svd.matrixU().leftCols(want);
}

} // namespace

QuotientSpace linear_quotient(const CoisotropicSubspace& W, const Tolerances& tol) {
    const int q = W.quotient_dim();
    const Mat R = orthogonal_slice(W.basis, W.complement, q, tol);
    const Mat form = R.transpose() * W.space.form * R;
    if (q > 0) {
        auto svd = Eigen::JacobiSVD<Mat>(form);
        if (svd.singularValues()(q - 1) <= tol.rank_rel * std::max(1.0, svd.singularValues()(0)))
            throw NumericError(ErrorCode::RankDeficientInput, "degenerate quotient form");
    }
    return QuotientSpace{W, R, form};
}

Mat induced_quotient_matrix(const Mat& S, const CoisotropicSubspace& W,
                            const CoisotropicSubspace& Wp, const Tolerances& tol) {
    if (W.rank() != Wp.rank())
        throw ValidationError(ErrorCode::DimensionMismatch, "coisotropic ranks differ");
    if (subspace_gap(S * W.basis, Wp.basis, tol) > tol.preserved_angle)
        throw ValidationError(ErrorCode::SubspaceNotPreserved,
                              "map does not carry the subspace onto the target");
    const QuotientSpace src = linear_quotient(W, tol);
    const QuotientSpace dst = linear_quotient(Wp, tol);
    const int q = W.quotient_dim();
    if (q == 0) return Mat(0, 0);

    // [R' G'] a = S r, quotient coordinate is a's R'-part.
    Mat frame(Wp.space.dim, q + Wp.corank());
    frame.leftCols(q) = dst.representatives;
    frame.rightCols(Wp.corank()) = Wp.complement;
    const auto qr = frame.colPivHouseholderQr();
    Mat out(q, q);
    for (int j = 0; j < q; ++j) {
        const Vec image = S * src.representatives.col(j);
        out.col(j) = qr.solve(image).head(q);
    }
    return out;
}

Mat induced_map(const SymplecticMap& Psi, const CoisotropicSubspace& W,
                const CoisotropicSubspace& Wp, const Tolerances& tol) {
    return induced_quotient_matrix(Psi.matrix, W, Wp, tol);
}

Mat model_coisotropic_basis(int n, int k) {
    const int m = k - n;
    Mat B = Mat::Zero(2 * n, k);
    for (int i = 0; i < n; ++i) B(i, i) = 1.0;           // e_1..e_n
    for (int j = 0; j < m; ++j) B(n + j, n + j) = 1.0;   // f_1..f_{k-n}
    return B;
}

// ---------------------------------------------------------------------------
// Adapted Darboux frames
// ---------------------------------------------------------------------------

Mat AdaptedBasis::assemble() const {
    const int two_n = static_cast<int>(U.rows());
    const int m = static_cast<int>(U.cols());
    const int c = static_cast<int>(G.cols());
    Mat A(two_n, two_n);
    A.leftCols(m) = U;
    A.middleCols(m, c) = G;
    A.middleCols(m + c, m) = V;
    A.rightCols(c) = H;
    return A;
}

namespace {

/// Symplectic Gram-Schmidt on m (u, v) pairs inside the span of the columns.
/// Exactly a no-op when the input already satisfies the Darboux relations.
void darboux_pairs(const Mat& Omega, Mat& U, Mat& V) {
    const int m = static_cast<int>(U.cols());
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j) {
            const double a = U.col(j).dot(Omega * U.col(i));  // omega(u_j, u_i)
            const double b = V.col(j).dot(Omega * U.col(i));  // omega(v_j, u_i)
            U.col(i) += b * U.col(j) - a * V.col(j);
            const double c = U.col(j).dot(Omega * V.col(i));
            const double d = V.col(j).dot(Omega * V.col(i));
            V.col(i) += d * U.col(j) - c * V.col(j);
        }
        const double p = U.col(i).dot(Omega * V.col(i));
        if (std::abs(p) < 1e-13)
            throw NumericError(ErrorCode::RankDeficientInput,
                               "degenerate pairing in symplectic Gram-Schmidt");
        V.col(i) /= p;
    }
}

/// Completes (U, V, G, seed H) to a full Darboux frame: cleans H of U/V
/// components, solves the G-pairing, and removes the skew self-pairing.
/// Every step is exactly the identity on an already-valid frame.
void complete_dual_block(const Mat& Omega, const Mat& U, const Mat& V, const Mat& G, Mat& H) {
    const int m = static_cast<int>(U.cols());
    const int c = static_cast<int>(G.cols());
    if (c == 0) return;
    for (int i = 0; i < c; ++i) {
        for (int j = 0; j < m; ++j) {
            const double a = U.col(j).dot(Omega * H.col(i));
            const double b = V.col(j).dot(Omega * H.col(i));
            H.col(i) += b * U.col(j) - a * V.col(j);
        }
    }
    const Mat M = G.transpose() * Omega * H;  // want identity
    H = H * M.partialPivLu().solve(Mat::Identity(c, c)).eval();
    const Mat S = H.transpose() * Omega * H;  // skew residual
    H += G * (0.5 * S);
}

} // namespace

AdaptedBasis adapted_basis(const CoisotropicSubspace& W, const Tolerances& tol) {
    const Mat& Omega = W.space.form;
    const int two_n = W.space.dim;
    const int c = W.corank();
    const int q = W.quotient_dim();
    const int m = q / 2;

    const Mat R = orthogonal_slice(W.basis, W.complement, q, tol);
    Mat U(two_n, m), V(two_n, m);
    {
        // Greedy pairing of the representative directions.
        Mat pool = R;
        for (int i = 0; i < m; ++i) {
            const Vec u = pool.col(0);
            int best = 1;
            double bestv = 0;
            for (int j = 1; j < pool.cols(); ++j) {
                const double w = std::abs(u.dot(Omega * pool.col(j)));
                if (w > bestv) { bestv = w; best = j; }
            }
            const Vec v = pool.col(best);
            U.col(i) = u;
            V.col(i) = v;
            // Shrink the pool to the symplectic orthogonal of (u, v).
            Mat rest(two_n, pool.cols() - 2);
            int idx = 0;
            for (int j = 1; j < pool.cols(); ++j)
                if (j != best) rest.col(idx++) = pool.col(j);
            const double p = u.dot(Omega * v);
            for (int j = 0; j < rest.cols(); ++j) {
                Vec w = rest.col(j);
                w += (v.dot(Omega * w) / p) * u - (u.dot(Omega * w) / p) * v;
                rest.col(j) = w;
            }
            pool = rest.cols() > 0 ? column_space(rest, tol) : rest;
            if (pool.cols() != rest.cols())
                throw NumericError(ErrorCode::RankDeficientInput,
                                   "lost rank during symplectic pairing");
        }
        darboux_pairs(Omega, U, V);
    }

    const Mat G = W.complement;
    Mat H;
    if (c > 0) {
        // Euclidean complement of W pairs nondegenerately with W^omega.
        const Mat Worth = column_space(W.basis, tol);
        Mat P = Mat::Identity(two_n, two_n) - Worth * Worth.transpose();
        H = column_space(P, tol);
        if (H.cols() != c)
            throw NumericError(ErrorCode::RankDeficientInput, "complement rank mismatch");
        complete_dual_block(Omega, U, V, G, H);
    } else {
        H = Mat(two_n, 0);
    }
    return AdaptedBasis{U, V, G, H};
}

namespace {

/// Loewdin orthonormalization: the closest orthonormal frame to A; exactly
/// the identity on an already orthonormal input.
Mat loewdin(const Mat& A) {
    Eigen::SelfAdjointEigenSolver<Mat> es(A.transpose() * A);
    const Mat inv_sqrt = es.eigenvectors() *
                         es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                         es.eigenvectors().transpose();
    return A * inv_sqrt;
}

void check_shrinkage(const Mat& before, const Mat& after) {
    for (int j = 0; j < before.cols(); ++j)
        if (after.col(j).norm() < 0.5 * before.col(j).norm())
            throw NumericError(ErrorCode::StepTooCoarse,
                               "adapted frame moved too far in one step; refine the sampling");
}

} // namespace

AdaptedBasis adapted_basis_step(const CoisotropicSubspace& W_new, const AdaptedBasis& prev,
                                const Tolerances& tol) {
    const Mat& Omega = W_new.space.form;
    const int q = W_new.quotient_dim();
    const int c = W_new.corank();
    if (prev.U.cols() * 2 != q || prev.G.cols() != c)
        throw ValidationError(ErrorCode::DimensionMismatch,
                              "adapted frame does not match the new subspace type");

    AdaptedBasis next = prev;
    if (q > 0) {
        const Mat R = orthogonal_slice(W_new.basis, W_new.complement, q, tol);
        next.U = R * (R.transpose() * prev.U);
        next.V = R * (R.transpose() * prev.V);
        check_shrinkage(prev.U, next.U);
        check_shrinkage(prev.V, next.V);
        // Unit u-columns keep the pair norms from drifting around the loop.
        for (int j = 0; j < next.U.cols(); ++j) next.U.col(j) /= next.U.col(j).norm();
        darboux_pairs(Omega, next.U, next.V);
    }
    if (c > 0) {
        const Mat G_raw = W_new.complement * (W_new.complement.transpose() * prev.G);
        check_shrinkage(prev.G, G_raw);
        next.G = loewdin(G_raw);
        // Carry H inside the Euclidean complement of the new subspace; the
        // dropped components lie in W, are omega-orthogonal to G, and are
        // restored by the completion.
        const Mat Worth = column_space(W_new.basis, tol);
        const Mat H_raw = prev.H - Worth * (Worth.transpose() * prev.H);
        const Mat pairing = next.G.transpose() * Omega * H_raw;  // identity on a no-op
        Eigen::JacobiSVD<Mat> psvd(pairing);
        if (psvd.singularValues()(c - 1) < 0.5 || psvd.singularValues()(0) > 2.0)
            throw NumericError(ErrorCode::StepTooCoarse,
                               "dual frame moved too far in one step; refine the sampling");
        next.H = H_raw;
        complete_dual_block(Omega, next.U, next.V, next.G, next.H);
    }
    return next;
}

SymplecticMap adapted_darboux_basis(const CoisotropicSubspace& W, const Tolerances& tol) {
    const Mat A = adapted_basis(W, tol).assemble();
    SymplecticMap out{SymplecticSpace{W.space.dim, W.space.form}, A};
    // A maps (R^{2n}, Omega0) onto (V, Omega): A^T Omega A = Omega0.
    const Mat defect = A.transpose() * W.space.form * A - standard_form(W.space.dim);
    if (defect.cwiseAbs().maxCoeff() > tol.symplectic_defect)
        throw NumericError(ErrorCode::RankDeficientInput,
                           "adapted frame failed to satisfy the Darboux relations");
    return out;
}

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

namespace {

Mat random_symmetric(Rng& rng, int d, double magnitude) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat S(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) S(i, j) = S(j, i) = magnitude * g(rng);
    return S;
}

} // namespace

SymplecticMap random_symplectic_in(const SymplecticSpace& space, Rng& rng, double magnitude) {
    const int d = space.dim;
    Mat M = Mat::Identity(d, d);
    if (magnitude != 0.0) {
        const Eigen::PartialPivLU<Mat> lu(space.form);
        for (int rep = 0; rep < 2; ++rep) {
            const Mat S = random_symmetric(rng, d, magnitude / 2);
            const Mat A = lu.solve(S);  // Omega A = S, so A is Hamiltonian
            M = M * A.exp();
        }
    }
    return SymplecticMap{space, M};
}

SymplecticMap random_symplectic(std::uint64_t seed, int n, double magnitude) {
    Rng rng(seed);
    return random_symplectic_in(SymplecticSpace::standard(n), rng, magnitude);
}

SymplecticMap random_unitary_symplectic(Rng& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMat Z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Z(i, j) = std::complex<double>(g(rng), g(rng));
    const Eigen::HouseholderQR<CMat> qr(Z);
    CMat Q = qr.householderQ();
    const CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const auto d = R(j, j);
        if (std::abs(d) > 0) Q.col(j) *= d / std::abs(d);
    }
    return SymplecticMap{SymplecticSpace::standard(n), embed_unitary(Q)};
}

CoisotropicSubspace random_coisotropic(Rng& rng, int n, int k, double magnitude) {
    const SymplecticSpace sp = SymplecticSpace::standard(n);
    const SymplecticMap Psi = random_symplectic_in(sp, rng, magnitude);
    return CoisotropicSubspace::make(sp, Psi.matrix * model_coisotropic_basis(n, k));
}

namespace {

/// Hamiltonian generator in model coordinates for maps preserving the model
/// coisotropic: X = Omega0^{-1} S with S symmetric and S W^omega subset
/// W^perp. quotient_trivial additionally kills the induced quotient action
/// (S vanishes on W x W).
Mat invariant_generator(Rng& rng, const Mat& Omega0, int m, int c,
                        double magnitude, bool quotient_trivial) {
    const int d = static_cast<int>(Omega0.rows());
    Mat S = random_symmetric(rng, d, magnitude);
    // model column order: [u(0..m) g(m..m+c) v(m+c..2m+c) h(2m+c..)]
    const auto is_g = [&](int i) { return i >= m && i < m + c; };
    const auto is_h = [&](int i) { return i >= 2 * m + c; };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (is_g(j) && !is_h(i)) S(i, j) = S(j, i) = 0.0;
            if (quotient_trivial && !is_h(i) && !is_h(j)) S(i, j) = 0.0;
        }
    return Omega0.partialPivLu().solve(S);
}

} // namespace

SymplecticMap random_invariant_symplectic(Rng& rng, const CoisotropicSubspace& W,
                                          double magnitude, bool positive_on_w) {
    const Mat F = adapted_basis(W).assemble();
    const Mat Finv = standard_form(W.space.dim).partialPivLu().solve(
        F.transpose() * W.space.form);  // symplectic inverse of the frame
    const int m = W.quotient_dim() / 2;
    const int c = W.corank();
    const Mat Omega0 = standard_form(W.space.dim);
    Mat X = invariant_generator(rng, Omega0, m, c, magnitude, false);
    Mat Mmodel = X.exp();
    if (!positive_on_w) {
        if (c == 0)
            throw ValidationError(ErrorCode::ValidationError,
                                  "det < 0 on W is impossible for the full space");
        Mat refl = Mat::Identity(W.space.dim, W.space.dim);
        refl(m, m) = -1.0;                          // g_1
        refl(2 * m + c, 2 * m + c) = -1.0;          // h_1
        Mmodel = Mmodel * refl;
    }
    return SymplecticMap{W.space, F * Mmodel * Finv};
}

SymplecticMap random_stabilizer_gauge(Rng& rng, const CoisotropicSubspace& W, double magnitude) {
    const Mat F = adapted_basis(W).assemble();
    const Mat Finv = standard_form(W.space.dim).partialPivLu().solve(
        F.transpose() * W.space.form);
    const int m = W.quotient_dim() / 2;
    const int c = W.corank();
    const Mat Omega0 = standard_form(W.space.dim);
    const Mat X = invariant_generator(rng, Omega0, m, c, magnitude, true);
    return SymplecticMap{W.space, F * X.exp() * Finv};
}

double restricted_determinant(const SymplecticMap& Psi, const Subspace& W) {
    if (W.basis.cols() == 0) return 1.0;
    const auto qr = W.basis.colPivHouseholderQr();
    const Mat coords = qr.solve(Psi.matrix * W.basis);
    return coords.determinant();
}

} // namespace maslov
