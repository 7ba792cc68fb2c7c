#include "maslovkit/lift.hpp"

#include <cmath>
#include <numbers>

namespace maslov {

namespace {

constexpr double kPi = std::numbers::pi;

void check_frame(const QuotientSpace& base_q, const FramedPoint& p, const Tolerances& tol) {
    const int q = base_q.parent.quotient_dim();
    if (p.W.quotient_dim() != q || p.frame.rows() != q || p.frame.cols() != q)
        throw ValidationError(ErrorCode::DimensionMismatch, "frame size mismatch");
    if (q == 0) return;
    const QuotientSpace target_q = linear_quotient(p.W, tol);
    const Mat defect = p.frame.transpose() * target_q.form * p.frame - base_q.form;
    if (defect.cwiseAbs().maxCoeff() > 1e-6)
        throw ValidationError(ErrorCode::ValidationError,
                              "frame is not symplectic for the quotient forms");
}

} // namespace

FramedLoop FramedLoop::make(SymplecticSpace space, std::vector<double> grid,
                            std::vector<FramedPoint> samples, const Tolerances& tol) {
    if (grid.size() != samples.size() || grid.size() < 2)
        throw ValidationError(ErrorCode::DimensionMismatch, "grid and samples differ");
    const QuotientSpace base_q = linear_quotient(samples.front().W, tol);
    for (const auto& p : samples) check_frame(base_q, p, tol);
    if (subspace_gap(samples.front().W.basis, samples.back().W.basis, tol) > tol.loop_closure)
        throw ValidationError(ErrorCode::NotALoop, "subspace loop does not close");
    return FramedLoop{std::move(space), std::move(grid), std::move(samples)};
}

SymplecticMap quotient_gauge(const CoisotropicSubspace& W, const Mat& D,
                             const Tolerances& tol) {
    const int d = W.space.dim;
    const int q = W.quotient_dim();
    if (D.rows() != q || D.cols() != q)
        throw ValidationError(ErrorCode::DimensionMismatch, "quotient gauge size mismatch");
    if (q == 0) return SymplecticMap::identity(W.space);
    const QuotientSpace quot = linear_quotient(W, tol);
    // The span of the representatives is a maximal symplectic subspace of W;
    // act by D on it and by the identity on its symplectic complement.
    const Mat K = kernel_space(quot.representatives.transpose() * W.space.form, tol);
    if (K.cols() + q != d)
        throw NumericError(ErrorCode::RankDeficientInput, "symplectic splitting failed");
    Mat Xi(d, d);
    Xi.leftCols(q) = quot.representatives;
    Xi.rightCols(K.cols()) = K;
    Mat block = Mat::Identity(d, d);
    block.topLeftCorner(q, q) = D;
    const auto lu = Xi.partialPivLu();
    return SymplecticMap{W.space, Xi * block * lu.solve(Mat::Identity(d, d))};
}

SymplecticMap transitive_frame(const CoisotropicSubspace& W0, const FramedPoint& target,
                               const Tolerances& tol) {
    if (target.W.rank() != W0.rank())
        throw ValidationError(ErrorCode::DimensionMismatch, "coisotropic dimensions differ");
    if (W0.quotient_dim() > 0) {
        const Mat f0 = linear_quotient(W0, tol).form;
        const Mat f1 = linear_quotient(target.W, tol).form;
        if ((target.frame.transpose() * f1 * target.frame - f0).cwiseAbs().maxCoeff() > 1e-6)
            throw ValidationError(ErrorCode::ValidationError,
                                  "frame is not symplectic for the quotient forms");
    }
    const Mat A0 = adapted_basis(W0, tol).assemble();
    const Mat A1 = adapted_basis(target.W, tol).assemble();
    const Mat A0_inv =
        standard_form(W0.space.dim).partialPivLu().solve(A0.transpose() * W0.space.form);
    const SymplecticMap carry{W0.space, A1 * A0_inv};

    if (W0.quotient_dim() == 0) return carry;
    const Mat Q = induced_map(carry, W0, target.W, tol);
    const Mat D = Q.partialPivLu().solve(target.frame);
    const SymplecticMap gauge = quotient_gauge(W0, D, tol);
    return SymplecticMap{W0.space, carry.matrix * gauge.matrix};
}

namespace {

/// Gauge path in the identity component of the stabilizer of (W0, id frame).
/// Linear in the magnitude, so scaling the generators along the grid yields a
/// continuous path through the identity at t = 0.
std::vector<Mat> seeded_gauge_path(const CoisotropicSubspace& W0, std::uint64_t seed,
                                   const std::vector<double>& grid) {
    std::vector<Mat> out(grid.size(), Mat::Identity(W0.space.dim, W0.space.dim));
    if (seed == 0) return out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Rng local(seed);
        const SymplecticMap h1 = random_stabilizer_gauge(local, W0, 0.4 * std::sin(kPi * grid[i]));
        const SymplecticMap h2 = random_stabilizer_gauge(local, W0, 0.3 * grid[i]);
        out[i] = h1.matrix * h2.matrix;
    }
    return out;
}

} // namespace

SymplecticPath lift_framed_loop(const FramedLoop& loop, std::uint64_t seed,
                                ConditionFlags* flags, const Tolerances& tol) {
    const CoisotropicSubspace& W0 = loop.base();
    const std::size_t m = loop.samples.size();
    std::vector<Mat> lift(m);

    AdaptedBasis frame = adapted_basis(W0, tol);
    Mat A_prev = frame.assemble();
    lift[0] = transitive_frame(W0, loop.samples.front(), tol).matrix;

    const Mat Omega0 = standard_form(loop.space.dim);
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const CoisotropicSubspace& W_next = loop.samples[k + 1].W;
        const AdaptedBasis next = adapted_basis_step(W_next, frame, tol);
        const Mat A_next = next.assemble();
        const Mat A_prev_inv =
            Omega0.partialPivLu().solve(A_prev.transpose() * loop.space.form);
        const SymplecticMap carry{loop.space, A_next * A_prev_inv};

        Mat C = carry.matrix;
        if (W0.quotient_dim() > 0) {
            const Mat Q = induced_map(carry, loop.samples[k].W, W_next, tol);
            const int q = static_cast<int>(Q.rows());
            const Mat Qinv = Q.partialPivLu().solve(Mat::Identity(q, q));
            const Mat frame_k_inv =
                loop.samples[k].frame.partialPivLu().solve(Mat::Identity(q, q));
            const Mat D = loop.samples[k + 1].frame * frame_k_inv * Qinv;
            C = quotient_gauge(W_next, D, tol).matrix * C;
        }
        const double step = (C - Mat::Identity(C.rows(), C.cols())).cwiseAbs().maxCoeff();
        if (step >= tol.lift_step)
            throw NumericError(ErrorCode::StepTooCoarse,
                               "incremental lift correction exceeds the step bound; "
                               "refine the sampling");
        if (flags && step > 0.5 * tol.lift_step) flags->step_margin = true;
        lift[k + 1] = C * lift[k];
        frame = next;
        A_prev = A_next;
    }

    if (seed != 0) {
        const std::vector<Mat> gauge = seeded_gauge_path(W0, seed, loop.grid);
        for (std::size_t k = 0; k < m; ++k) lift[k] = lift[k] * gauge[k];
    }
    return SymplecticPath{loop.space, loop.grid, std::move(lift)};
}

double maslov_framed_loop(const FramedLoop& loop, std::uint64_t seed, ConditionFlags* flags,
                          const Tolerances& tol) {
    const SymplecticPath lift = lift_framed_loop(loop, seed, flags, tol);
    const CoisotropicSubspace& W0 = loop.base();
    for (std::size_t k = 0; k < lift.size(); ++k)
        if (subspace_gap(lift.samples[k] * W0.basis, loop.samples[k].W.basis, tol) > 1e-7)
            throw NumericError(ErrorCode::StepTooCoarse, "lift drifted off the subspace loop");
    return maslov_path(lift, flags, tol);
}

long lagrangian_loop_index(const SymplecticSpace& space, const std::vector<double>& grid,
                           const std::vector<Mat>& lagrangian_bases, const Tolerances& tol) {
    if (grid.size() != lagrangian_bases.size() || grid.size() < 2)
        throw ValidationError(ErrorCode::DimensionMismatch, "grid and samples differ");
    const int n = space.n();
    // Fixed compatible complex structure: normalize the space by a Darboux
    // basis, then use the standard identification R^{2n} = C^n.
    const CoisotropicSubspace full =
        CoisotropicSubspace::make(space, Mat::Identity(space.dim, space.dim), tol);
    const Mat A = adapted_basis(full, tol).assemble();
    const Mat A_inv =
        standard_form(space.dim).partialPivLu().solve(A.transpose() * space.form);

    std::vector<std::complex<double>> dets(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Mat& B = lagrangian_bases[k];
        if (B.rows() != space.dim || B.cols() != n)
            throw ValidationError(ErrorCode::NotLagrangian, "Lagrangian basis must be 2n x n");
        const Mat iso = B.transpose() * space.form * B;
        if (iso.cwiseAbs().maxCoeff() > 1e-7 * std::max(1.0, B.squaredNorm()))
            throw ValidationError(ErrorCode::NotLagrangian, "subspace is not Lagrangian");
        Mat Bm = A_inv * B;
        for (int j = 0; j < n; ++j) Bm.col(j) /= Bm.col(j).norm();
        const CMat Z = Bm.topRows(n).cast<std::complex<double>>() +
                       std::complex<double>(0, 1) * Bm.bottomRows(n).cast<std::complex<double>>();
        const std::complex<double> det = Z.determinant();
        if (std::abs(det) < 1e-10)
            throw NumericError(ErrorCode::NotLagrangian,
                               "degenerate complex frame for a Lagrangian sample");
        dets[k] = (det * det) / std::norm(det);
    }
    if (std::abs(dets.back() - dets.front()) > 1e-6)
        throw ValidationError(ErrorCode::NotALoop, "Lagrangian loop does not close");
    const UnitCirclePath circle{grid, std::move(dets)};
    const double w = winding(circle, tol);
    const double rounded = std::round(w);
    if (std::abs(w - rounded) > tol.near_integer)
        throw NumericError(ErrorCode::NonIntegerIndex, "det^2 winding is not integral");
    return static_cast<long>(rounded);
}

// ---------------------------------------------------------------------------
// Loop builders
// ---------------------------------------------------------------------------

FramedLoop framed_loop_from_path(const SymplecticPath& gen, const CoisotropicSubspace& W0,
                                 const Tolerances& tol) {
    // Frames are stored relative to the loop's own base sample, so transports
    // are taken from the first sample rather than from W0 itself; otherwise
    // the two deterministic representative bases need not agree.
    std::vector<CoisotropicSubspace> subs;
    subs.reserve(gen.size());
    for (std::size_t k = 0; k < gen.size(); ++k)
        subs.push_back(CoisotropicSubspace::make(gen.space, gen.samples[k] * W0.basis, tol));
    const Mat start_inv = SymplecticMap{gen.space, gen.samples.front()}.inverse_matrix();
    const CoisotropicSubspace base = subs.front();

    std::vector<FramedPoint> samples;
    samples.reserve(gen.size());
    for (std::size_t k = 0; k < gen.size(); ++k) {
        Mat frame = induced_quotient_matrix(gen.samples[k] * start_inv, base, subs[k], tol);
        samples.push_back(FramedPoint{std::move(subs[k]), std::move(frame)});
    }
    return FramedLoop::make(gen.space, gen.grid, std::move(samples), tol);
}

GeneratedLoop random_framed_loop(Rng& rng, int n, int k, int samples, const Tolerances& tol) {
    const SymplecticSpace sp = SymplecticSpace::standard(n);
    const CoisotropicSubspace W0 = random_coisotropic(rng, n, k, 0.6);
    const SymplecticMap conj = random_symplectic_in(sp, rng, 0.5);
    const Mat conj_inv = conj.inverse_matrix();
    std::uniform_int_distribution<int> winding_dist(-2, 2);
    const int w = winding_dist(rng);
    const std::uint64_t bump_seed = rng();

    std::vector<double> grid = uniform_grid(samples);
    std::vector<Mat> gen(samples);
    for (int i = 0; i < samples; ++i) {
        const double t = grid[i];
        CMat U = CMat::Identity(n, n);
        U(0, 0) = std::polar(1.0, 2.0 * kPi * w * t);
        const Mat loop_part = conj.matrix * embed_unitary(U) * conj_inv;
        Rng local(bump_seed);
        const SymplecticMap bump = random_symplectic_in(sp, local, 0.35 * std::sin(kPi * t));
        gen[i] = bump.matrix * loop_part;
    }
    gen.back() = gen.front();
    SymplecticPath path{sp, std::move(grid), std::move(gen)};
    FramedLoop loop = framed_loop_from_path(path, W0, tol);
    return GeneratedLoop{std::move(loop), std::move(path)};
}

FramedLoop half_turn_line_loop(int n, int samples) {
    const SymplecticSpace sp = SymplecticSpace::standard(n);
    std::vector<double> grid = uniform_grid(samples);
    std::vector<FramedPoint> pts;
    pts.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double th = kPi * grid[i];
        Mat B = Mat::Zero(2 * n, n);
        B(0, 0) = std::cos(th);
        B(n, 0) = std::sin(th);
        for (int j = 1; j < n; ++j) B(j, j) = 1.0;
        CoisotropicSubspace W = CoisotropicSubspace::make(sp, B);
        pts.push_back(FramedPoint{std::move(W), Mat(0, 0)});
    }
    return FramedLoop::make(sp, std::move(grid), std::move(pts));
}

namespace {

/// Coordinates of the deterministic representatives of the sum subspace in
/// the block-diagonal factor representatives (modulo the complement).
Mat sum_rep_change(const CoisotropicSubspace& Wsum, const QuotientSpace& qsum,
                   const QuotientSpace& qa, const QuotientSpace& qb, int da, int db) {
    const int q = static_cast<int>(qsum.representatives.cols());
    const int ka = static_cast<int>(qa.representatives.cols());
    const int kb = static_cast<int>(qb.representatives.cols());
    Mat factor_reps = Mat::Zero(da + db, ka + kb);
    factor_reps.topLeftCorner(da, ka) = qa.representatives;
    factor_reps.bottomRightCorner(db, kb) = qb.representatives;
    Mat big(da + db, ka + kb + Wsum.corank());
    big.leftCols(ka + kb) = factor_reps;
    big.rightCols(Wsum.corank()) = Wsum.complement;
    const auto qr = big.colPivHouseholderQr();
    Mat chg(ka + kb, q);
    for (int j = 0; j < q; ++j)
        chg.col(j) = qr.solve(qsum.representatives.col(j)).head(ka + kb);
    return chg;
}

} // namespace

FramedLoop direct_sum(const FramedLoop& a, const FramedLoop& b, const Tolerances& tol) {
    if (a.grid.size() != b.grid.size())
        throw ValidationError(ErrorCode::DimensionMismatch, "loops sampled differently");
    const int da = a.space.dim, db = b.space.dim;
    Mat form = Mat::Zero(da + db, da + db);
    form.topLeftCorner(da, da) = a.space.form;
    form.bottomRightCorner(db, db) = b.space.form;
    const SymplecticSpace sp = SymplecticSpace::make(form, tol);

    std::vector<FramedPoint> pts;
    pts.reserve(a.samples.size());
    Mat chg0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const auto& pa = a.samples[i];
        const auto& pb = b.samples[i];
        Mat basis = Mat::Zero(da + db, pa.W.rank() + pb.W.rank());
        basis.topLeftCorner(da, pa.W.rank()) = pa.W.basis;
        basis.bottomRightCorner(db, pb.W.rank()) = pb.W.basis;
        CoisotropicSubspace W = CoisotropicSubspace::make(sp, basis, tol);

        const int qa = pa.W.quotient_dim(), qb = pb.W.quotient_dim();
        Mat frame(qa + qb, qa + qb);
        if (qa + qb > 0) {
            const QuotientSpace qsum = linear_quotient(W, tol);
            const QuotientSpace qA = linear_quotient(pa.W, tol);
            const QuotientSpace qB = linear_quotient(pb.W, tol);
            const Mat chg = sum_rep_change(W, qsum, qA, qB, da, db);
            if (i == 0) chg0 = chg;
            Mat block = Mat::Zero(qa + qb, qa + qb);
            block.topLeftCorner(qa, qa) = pa.frame;
            block.bottomRightCorner(qb, qb) = pb.frame;
            // Sum frame in the deterministic bases: chg(t)^{-1} block chg(0).
            frame = chg.partialPivLu().solve(block * chg0);
        } else {
            frame = Mat(0, 0);
        }
        pts.push_back(FramedPoint{std::move(W), std::move(frame)});
    }
    return FramedLoop::make(sp, a.grid, std::move(pts), tol);
}

FramedLoop conjugate_loop(const FramedLoop& loop, const SymplecticSpace& target, const Mat& S,
                          const Tolerances& tol) {
    const Mat defect = S.transpose() * target.form * S - loop.space.form;
    if (defect.cwiseAbs().maxCoeff() > 1e-7)
        throw ValidationError(ErrorCode::ValidationError,
                              "conjugation is not a symplectic isomorphism");
    const CoisotropicSubspace& W0 = loop.base();
    const CoisotropicSubspace W0p = CoisotropicSubspace::make(target, S * W0.basis, tol);

    std::vector<FramedPoint> pts;
    pts.reserve(loop.samples.size());
    for (const auto& p : loop.samples) {
        CoisotropicSubspace Wp = CoisotropicSubspace::make(target, S * p.W.basis, tol);
        Mat frame;
        if (W0.quotient_dim() > 0) {
            const Mat st = induced_quotient_matrix(S, p.W, Wp, tol);
            const Mat s0 = induced_quotient_matrix(S, W0, W0p, tol);
            frame = st * p.frame *
                    s0.partialPivLu().solve(Mat::Identity(s0.rows(), s0.cols()));
        } else {
            frame = Mat(0, 0);
        }
        pts.push_back(FramedPoint{std::move(Wp), std::move(frame)});
    }
    return FramedLoop::make(target, loop.grid, std::move(pts), tol);
}

} // namespace maslov
