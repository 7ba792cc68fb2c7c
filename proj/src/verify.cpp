#include "maslovkit/verify.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "maslovkit/lift.hpp"
#include "maslovkit/paths.hpp"
#include "maslovkit/rho.hpp"
#include "maslovkit/scenarios.hpp"

namespace maslov {

namespace {

constexpr double kPi = std::numbers::pi;
using Cplx = std::complex<double>;

struct Gauge {
    PropertyResult result;
    explicit Gauge(std::string name, double tolerance) {
        result.name = std::move(name);
        result.tolerance = tolerance;
    }
    void observe(double dev) {
        result.max_deviation = std::max(result.max_deviation, std::abs(dev));
        result.trials += 1;
    }
    void require(bool ok, const std::string& note) {
        result.trials += 1;
        if (!ok) {
            result.pass = false;
            if (result.note.empty()) result.note = note;
        }
    }
    PropertyResult finish() {
        if (result.max_deviation > result.tolerance) result.pass = false;
        return result;
    }
};

int dim_for_trial(const VerifyConfig& cfg, int trial) {
    const int lo = std::max(1, cfg.min_dim / 2);
    const int hi = std::max(lo, cfg.max_dim / 2);
    return lo + trial % (hi - lo + 1);
}

int coisotropic_rank(Rng& rng, int n) {
    std::uniform_int_distribution<int> d(n, 2 * n);
    return d(rng);
}

/// Closed loop of symplectic matrices based at the identity.
SymplecticPath random_closed_loop(Rng& rng, int n, int samples) {
    const SymplecticSpace sp = SymplecticSpace::standard(n);
    const SymplecticMap conj = random_symplectic_in(sp, rng, 0.5);
    const Mat conj_inv = conj.inverse_matrix();
    std::uniform_int_distribution<int> wd(-2, 2);
    const int w = wd(rng);
    const std::uint64_t bump_seed = rng();
    std::vector<double> grid = uniform_grid(samples);
    std::vector<Mat> mats(samples);
    for (int i = 0; i < samples; ++i) {
        CMat U = CMat::Identity(n, n);
        U(0, 0) = std::polar(1.0, 2.0 * kPi * w * grid[i]);
        Rng local(bump_seed);
        const SymplecticMap bump =
            random_symplectic_in(sp, local, 0.3 * std::sin(kPi * grid[i]));
        mats[i] = bump.matrix * conj.matrix * embed_unitary(U) * conj_inv;
    }
    // Exact closure at the identity.
    const Mat start = mats.front();
    const Mat start_inv = SymplecticMap{sp, start}.inverse_matrix();
    for (auto& m : mats) m = m * start_inv;
    mats.back() = mats.front();
    return SymplecticPath{sp, std::move(grid), std::move(mats)};
}

/// Runs a randomized trial body at increasing sampling density until no
/// StepTooCoarse/GapTooLarge refinement advice is raised. Every random draw
/// is independent of the density, so retries replay identical data.
template <typename Body>
void run_refined(Rng& rng, int base_samples, Body&& body) {
    constexpr int kMaxSamples = 4096;
    for (int s = base_samples; s <= kMaxSamples; s *= 2) {
        Rng probe = rng;
        try {
            body(probe, s);
            rng = probe;
            return;
        } catch (const NumericError&) {
            if (2 * s > kMaxSamples) throw;
        }
    }
}

/// Draws a random framed loop, refining the sampling (with the same random
/// data) until the deterministic lift accepts every incremental step.
GeneratedLoop refined_random_loop(Rng& rng, int n, int k, int samples,
                                  const Tolerances& tol) {
    GeneratedLoop out;
    run_refined(rng, samples, [&](Rng& probe, int s) {
        GeneratedLoop gl = random_framed_loop(probe, n, k, s, tol);
        lift_framed_loop(gl.loop, 0, nullptr, tol);
        out = std::move(gl);
    });
    return out;
}

/// Open monodromy path from the identity (generic non-regular transport).
SymplecticPath random_open_transport(Rng& rng, int n, int samples) {
    const SymplecticSpace sp = SymplecticSpace::standard(n);
    const std::uint64_t s1 = rng(), s2 = rng();
    std::vector<double> grid = uniform_grid(samples);
    std::vector<Mat> mats(samples);
    for (int i = 0; i < samples; ++i) {
        const double t = grid[i];
        Rng a(s1), b(s2);
        const SymplecticMap m1 = random_symplectic_in(sp, a, 0.6 * t);
        const SymplecticMap m2 = random_symplectic_in(sp, b, 0.4 * t * t);
        mats[i] = m1.matrix * m2.matrix;
    }
    return SymplecticPath{sp, std::move(grid), std::move(mats)};
}

} // namespace

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_core(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 7919 + 1);
    Gauge gen_defect("core/generator-symplectic-defect", 1e-10);
    Gauge gen_det("core/generator-determinant", 1e-8);
    Gauge involution("core/complement-involution", 1e-8);
    Gauge well_defined("core/quotient-well-defined", 1e-10);
    Gauge induced_symp("core/induced-map-symplectic", 1e-8);
    Gauge functorial("core/induced-map-functorial", 1e-8);

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const int n = dim_for_trial(cfg, trial);
        const SymplecticSpace sp = SymplecticSpace::standard(n);
        const SymplecticMap Psi = random_symplectic_in(sp, rng, 0.9);
        gen_defect.observe(Psi.symplectic_defect());
        gen_det.observe(Psi.matrix.determinant() - 1.0);

        const int k = coisotropic_rank(rng, std::min(n, 5));
        const int nn = std::min(n, 5);
        const CoisotropicSubspace W = random_coisotropic(rng, nn, k, 0.7);
        const SymplecticSpace spw = W.space;
        const Subspace Wsub{spw, W.basis};
        const Subspace comp = symplectic_complement(spw, Wsub);
        const Subspace comp2 = symplectic_complement(spw, comp);
        involution.observe(subspace_gap(comp2.basis, W.basis));

        std::normal_distribution<double> g(0.0, 1.0);
        const auto rand_combo = [&](const Mat& B) {
            Vec c(B.cols());
            for (int i = 0; i < c.size(); ++i) c(i) = g(rng);
            return Vec(B * c);
        };
        const Vec w1 = rand_combo(W.basis), w2 = rand_combo(W.basis);
        if (W.corank() > 0) {
            const Vec k1 = rand_combo(W.complement), k2 = rand_combo(W.complement);
            well_defined.observe(spw.omega(w1 + k1, w2 + k2) - spw.omega(w1, w2));
        } else {
            well_defined.observe(0.0);
        }

        const SymplecticMap Phi = random_symplectic_in(spw, rng, 0.6);
        const SymplecticMap Psi2 = random_symplectic_in(spw, rng, 0.6);
        const CoisotropicSubspace PhiW =
            CoisotropicSubspace::make(spw, Phi.matrix * W.basis);
        const Mat phi_w = induced_map(Phi, W, PhiW);
        if (W.quotient_dim() > 0) {
            const Mat fw = linear_quotient(W).form;
            const Mat fpw = linear_quotient(PhiW).form;
            induced_symp.observe(
                (phi_w.transpose() * fpw * phi_w - fw).cwiseAbs().maxCoeff());
            const SymplecticMap prod{spw, Psi2.matrix * Phi.matrix};
            const CoisotropicSubspace prodW =
                CoisotropicSubspace::make(spw, prod.matrix * W.basis);
            const Mat lhs = induced_map(prod, W, prodW);
            const Mat rhs = induced_quotient_matrix(Psi2.matrix, PhiW, prodW) * phi_w;
            functorial.observe((lhs - rhs).cwiseAbs().maxCoeff());
        } else {
            induced_symp.observe(0.0);
            functorial.observe(0.0);
        }
    }
    return {gen_defect.finish(), gen_det.finish(),    involution.finish(),
            well_defined.finish(), induced_symp.finish(), functorial.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_rho_axioms(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 7919 + 2);
    Gauge naturality("rho/naturality", 1e-7);
    Gauge direct_sum_g("rho/direct-sum", 1e-7);
    Gauge determinant("rho/determinant", 1e-7);
    Gauge normalization("rho/normalization", 1e-8);
    Gauge conjugation("rho/conjugation", 1e-7);
    std::normal_distribution<double> g(0.0, 1.0);

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const int n = dim_for_trial(cfg, trial);
        const SymplecticSpace sp = SymplecticSpace::standard(n);
        const SymplecticMap Psi = random_symplectic_in(sp, rng, 0.8);
        const Cplx r = rho(Psi);

        // Naturality against a non-symplectic change of coordinates.
        Mat T;
        double cond = 1e9;
        do {
            T = Mat::Identity(2 * n, 2 * n);
            for (int i = 0; i < 2 * n; ++i)
                for (int j = 0; j < 2 * n; ++j) T(i, j) += 0.4 * g(rng);
            Eigen::JacobiSVD<Mat> svd(T);
            cond = svd.singularValues()(0) / svd.singularValues()(2 * n - 1);
        } while (cond > 50.0);
        const Mat Tinv = T.partialPivLu().solve(Mat::Identity(2 * n, 2 * n));
        const Mat form2 = Tinv.transpose() * sp.form * Tinv;
        const SymplecticSpace sp2 = SymplecticSpace::make(form2);
        const SymplecticMap Psi2{sp2, T * Psi.matrix * Tinv};
        naturality.observe(std::abs(rho(Psi2) - r));

        // Direct sum.
        const int n_b = dim_for_trial(cfg, trial + 1);
        const SymplecticSpace spb = SymplecticSpace::standard(n_b);
        const SymplecticMap Psib = random_symplectic_in(spb, rng, 0.8);
        Mat big = Mat::Zero(2 * (n + n_b), 2 * (n + n_b));
        big.topLeftCorner(2 * n, 2 * n) = Psi.matrix;
        big.bottomRightCorner(2 * n_b, 2 * n_b) = Psib.matrix;
        Mat bigform = Mat::Zero(2 * (n + n_b), 2 * (n + n_b));
        bigform.topLeftCorner(2 * n, 2 * n) = sp.form;
        bigform.bottomRightCorner(2 * n_b, 2 * n_b) = spb.form;
        const SymplecticMap PsiSum{SymplecticSpace{2 * (n + n_b), bigform}, big};
        direct_sum_g.observe(std::abs(rho(PsiSum) - r * rho(Psib)));

        // Determinant on the unitary part.
        const SymplecticMap Uemb = random_unitary_symplectic(rng, n);
        const CMat U = Uemb.matrix.topLeftCorner(n, n).cast<Cplx>() +
                       Cplx(0, 1) * Uemb.matrix.bottomLeftCorner(n, n).cast<Cplx>();
        determinant.observe(std::abs(rho(Uemb) - U.determinant()));

        // Normalization on hyperbolic maps.
        Mat D = Mat::Zero(2 * n, 2 * n);
        std::uniform_real_distribution<double> mag(1.3, 2.5);
        std::bernoulli_distribution flip(0.4);
        for (int i = 0; i < n; ++i) {
            double lam = mag(rng);
            if (flip(rng)) lam = -lam;
            D(i, i) = lam;
            D(n + i, n + i) = 1.0 / lam;
        }
        const SymplecticMap S = random_symplectic_in(sp, rng, 0.5);
        const SymplecticMap hyper{sp, S.matrix * D * S.inverse_matrix()};
        const Cplx rh = rho(hyper);
        normalization.observe(std::abs(rh.imag()));
        normalization.observe(std::abs(std::abs(rh) - 1.0));

        // Conjugation under sign reversal of the form.
        const SymplecticMap neg{sp.negated(), Psi.matrix};
        conjugation.observe(std::abs(rho(neg) - std::conj(r)));
    }
    return {naturality.finish(), direct_sum_g.finish(), determinant.finish(),
            normalization.finish(), conjugation.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_quotient_identity(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 7919 + 3);
    Gauge positive("quotient/identity-det-positive", 1e-6);
    Gauge general("quotient/identity-two-valued", 1e-6);
    Gauge deform_symp("quotient/deformation-symplectic-defect", 1e-8);
    Gauge deform_rho("quotient/deformation-rho-constant", 1e-6);
    Gauge reconstruct("quotient/deformation-reconstructs-at-1", 1e-10);

    const int trials = std::max(cfg.loop_trials, 1);
    for (int trial = 0; trial < trials; ++trial) {
        const int n = 2 + trial % 3;  // dims 4..8
        const int k = coisotropic_rank(rng, n);
        const CoisotropicSubspace W = random_coisotropic(rng, n, k, 0.6);
        const SymplecticMap Psi = random_invariant_symplectic(rng, W, 0.6, true);
        if (restricted_determinant(Psi, Subspace{W.space, W.basis}) <= 0)
            throw NumericError(ErrorCode::ValidationError,
                               "generator produced det <= 0 on W");
        const Cplx r = rho(Psi);
        Cplx rq(1.0, 0.0);
        if (W.quotient_dim() > 0) {
            const QuotientSpace q = linear_quotient(W);
            const Mat m = induced_map(Psi, W, W);
            rq = rho(SymplecticMap{q.as_space(), m});
        }
        positive.observe(std::abs(r - rq));

        if (k < 2 * n) {
            const SymplecticMap Psineg = random_invariant_symplectic(rng, W, 0.6, false);
            const Cplx rn = rho(Psineg);
            Cplx rqn(1.0, 0.0);
            if (W.quotient_dim() > 0) {
                const QuotientSpace q = linear_quotient(W);
                rqn = rho(SymplecticMap{q.as_space(), induced_map(Psineg, W, W)});
            }
            general.observe(std::min(std::abs(rn - rqn), std::abs(rn + rqn)));
        }

        // Deformation through the three-block splitting.
        CoisotropicSubspace Waux = W;
        bool ok = false;
        for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
            const SymplecticMap S = random_symplectic_in(W.space, rng, 0.45);
            Waux = CoisotropicSubspace::make(W.space, S.matrix * W.basis);
            Mat span(W.space.dim, W.rank() + Waux.corank());
            span.leftCols(W.rank()) = W.basis;
            span.rightCols(Waux.corank()) = Waux.complement;
            Eigen::JacobiSVD<Mat> svd(span);
            const int least = static_cast<int>(std::min(span.rows(), span.cols())) - 1;
            ok = span.cols() >= W.space.dim && svd.singularValues()(least) > 1e-4;
        }
        if (!ok) continue;
        const Cplx rho0 = rho(deform_invariant_automorphism(W, Psi, Waux, 0.0));
        for (int i = 0; i <= 31; ++i) {
            const double t = double(i) / 31.0;
            const SymplecticMap Pt = deform_invariant_automorphism(W, Psi, Waux, t);
            deform_symp.observe(Pt.symplectic_defect());
            deform_rho.observe(std::abs(rho(Pt) - rho0));
        }
        const SymplecticMap P1 = deform_invariant_automorphism(W, Psi, Waux, 1.0);
        reconstruct.observe((P1.matrix - Psi.matrix).cwiseAbs().maxCoeff());
    }
    return {positive.finish(), general.finish(), deform_symp.finish(), deform_rho.finish(),
            reconstruct.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_winding(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 7919 + 4);
    Gauge exact("winding/integer-loops", 1e-12);
    Gauge refine("winding/refinement-stability", 1e-9);
    Gauge reparam("winding/reparametrization", 1e-12);
    Gauge concat("winding/concatenation", 1e-12);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    for (int k = -5; k <= 5; ++k) {
        const auto build = [&](int m) {
            std::vector<double> grid = uniform_grid(m);
            std::vector<Cplx> z(m);
            for (int i = 0; i < m; ++i) z[i] = std::polar(1.0, 2.0 * kPi * k * grid[i]);
            return UnitCirclePath{std::move(grid), std::move(z)};
        };
        const double w1 = winding(build(128), cfg.tol);
        const double w2 = winding(build(256), cfg.tol);
        exact.observe(w1 - k);
        refine.observe(w2 - w1);
    }
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const double a = 2.0 * u(rng) - 1.0, b = 3.0 * (2.0 * u(rng) - 1.0);
        const auto phase = [&](double t) { return a * std::sin(2.0 * kPi * t) + b * t; };
        const auto build = [&](int m) {
            std::vector<double> grid = uniform_grid(m);
            std::vector<Cplx> z(m);
            for (int i = 0; i < m; ++i) z[i] = std::polar(1.0, 2.0 * kPi * phase(grid[i]));
            return UnitCirclePath{std::move(grid), std::move(z)};
        };
        const UnitCirclePath base = build(96);
        refine.observe(winding(build(192), cfg.tol) - winding(base, cfg.tol));

        // Monotone regridding of the same samples.
        std::vector<double> warped(base.grid.size());
        double run = 0;
        for (std::size_t i = 0; i < warped.size(); ++i) warped[i] = (run += 0.1 + u(rng));
        const double lo = warped.front(), hi = warped.back();
        for (auto& x : warped) x = (x - lo) / (hi - lo);
        reparam.observe(winding(UnitCirclePath{warped, base.samples}, cfg.tol) -
                        winding(base, cfg.tol));

        // Concatenation.
        const std::size_t mid = base.samples.size() / 2;
        std::vector<double> g1(base.grid.begin(), base.grid.begin() + mid + 1);
        std::vector<Cplx> z1(base.samples.begin(), base.samples.begin() + mid + 1);
        std::vector<double> g2(base.grid.begin() + mid, base.grid.end());
        std::vector<Cplx> z2(base.samples.begin() + mid, base.samples.end());
        const auto rescale = [](std::vector<double>& v) {
            const double lo = v.front(), hi = v.back();
            for (auto& x : v) x = (x - lo) / (hi - lo);
        };
        rescale(g1);
        rescale(g2);
        concat.observe(winding(UnitCirclePath{g1, z1}, cfg.tol) +
                       winding(UnitCirclePath{g2, z2}, cfg.tol) -
                       winding(base, cfg.tol));
    }
    return {exact.finish(), refine.finish(), reparam.finish(), concat.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_pair_index(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 7919 + 5);
    Gauge rebase_g("pair/base-independence", 1e-8);
    Gauge additivity("pair/additivity", 1e-8);
    Gauge reversal("pair/orientation-reversal", 1e-8);

    const int trials = std::max(cfg.family_trials, 1);
    for (int trial = 0; trial < trials; ++trial) {
        const int n = 1 + trial % 3;
        const int m = 128;
        const SymplecticPath regular = random_closed_loop(rng, n, m);
        const SymplecticPath other = random_open_transport(rng, n, m);
        const double base_value = maslov_pair(regular, other, nullptr, cfg.tol);
        for (std::size_t idx = 4; idx + 1 < regular.size(); idx += 11) {
            const SymplecticPath r1 = rebase(regular, idx);
            const SymplecticPath r2 = rebase(other, idx);
            rebase_g.observe(maslov_pair(r1, r2, nullptr, cfg.tol) - base_value);
        }

        // Additivity with a closed factor.
        const SymplecticPath open_path = random_open_transport(rng, n, m);
        const SymplecticPath prod = pointwise_product(regular, open_path);
        const SymplecticPath id = identity_transport(regular.space, regular.grid);
        additivity.observe(maslov_pair(prod, id, nullptr, cfg.tol) -
                           maslov_pair(regular, id, nullptr, cfg.tol) -
                           maslov_pair(open_path, id, nullptr, cfg.tol));

        // Reversal negates the pair index.
        reversal.observe(maslov_pair(reverse_orientation(other), reverse_orientation(regular),
                                     nullptr, cfg.tol) +
                         maslov_pair(other, regular, nullptr, cfg.tol));
    }
    return {rebase_g.finish(), additivity.finish(), reversal.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_lift_independence(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 7919 + 6);
    Gauge seeds("lift/independence-two-seeds", 1e-6);
    Gauge oracle("lift/matches-generating-path", 1e-6);
    Gauge post_subspace("lift/postcondition-subspace", 1e-7);
    Gauge post_frame("lift/postcondition-frame", 1e-7);

    for (int trial = 0; trial < cfg.loop_trials; ++trial) {
        const int n = 2 + trial % 3;  // dims 4..8
        const int k = coisotropic_rank(rng, n);
        const GeneratedLoop gl = refined_random_loop(rng, n, k, 256, cfg.tol);
        const double m_canonical = maslov_framed_loop(gl.loop, 0, nullptr, cfg.tol);
        const double m_seeded = maslov_framed_loop(gl.loop, 1000 + trial, nullptr, cfg.tol);
        seeds.observe(m_canonical - m_seeded);
        oracle.observe(m_canonical - maslov_path(gl.generator, nullptr, cfg.tol));

        const SymplecticPath lift = lift_framed_loop(gl.loop, 0, nullptr, cfg.tol);
        const CoisotropicSubspace& W0 = gl.loop.base();
        for (std::size_t i = 0; i < lift.size(); i += 7) {
            post_subspace.observe(
                subspace_gap(lift.samples[i] * W0.basis, gl.loop.samples[i].W.basis));
            if (W0.quotient_dim() > 0) {
                const Mat got = induced_quotient_matrix(lift.samples[i], W0,
                                                        gl.loop.samples[i].W);
                post_frame.observe(
                    (got - gl.loop.samples[i].frame).cwiseAbs().maxCoeff());
            }
        }
    }
    return {seeds.finish(), oracle.finish(), post_subspace.finish(), post_frame.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_lagrangian_agreement(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 7919 + 7);
    Gauge agree("lagrangian/framed-equals-det2", 0.0);
    Gauge halfturn("lagrangian/half-turn-line", 0.0);
    Gauge expected("lagrangian/det2-matches-phase-sum", 0.0);

    for (int trial = 0; trial < cfg.loop_trials; ++trial) {
        const int n = 1 + trial % 3;  // dims 2..6
        const int m = 192;
        const SymplecticSpace sp = SymplecticSpace::standard(n);

        // Random Lagrangian loop with known winding: W(t) = S V diag(e^{i pi m_j t}) V^T R^n.
        std::vector<int> phases(n);
        std::uniform_int_distribution<int> pd(-2, 2);
        int sum = 0;
        for (auto& p : phases) sum += (p = pd(rng));
        Mat Vr;
        {
            std::normal_distribution<double> g(0.0, 1.0);
            Mat X(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) X(i, j) = g(rng);
            Eigen::HouseholderQR<Mat> qr(X);
            Vr = qr.householderQ();
        }
        const SymplecticMap S = random_symplectic_in(sp, rng, 0.5);
        std::vector<double> grid = uniform_grid(m);
        std::vector<Mat> bases(m);
        for (int i = 0; i < m; ++i) {
            CMat D = CMat::Zero(n, n);
            for (int j = 0; j < n; ++j) D(j, j) = std::polar(1.0, kPi * phases[j] * grid[i]);
            const CMat U = Vr.cast<Cplx>() * D * Vr.transpose().cast<Cplx>();
            bases[i] = S.matrix * embed_unitary(U).leftCols(n);
        }
        bases.back() = bases.front();

        const long det2 = lagrangian_loop_index(sp, grid, bases, cfg.tol);
        expected.require(det2 == sum, "det2 winding disagrees with the phase sum");

        std::vector<FramedPoint> pts;
        pts.reserve(m);
        for (int i = 0; i < m; ++i)
            pts.push_back(FramedPoint{CoisotropicSubspace::make(sp, bases[i]), Mat(0, 0)});
        FramedLoop loop = FramedLoop::make(sp, grid, std::move(pts), cfg.tol);
        const double framed = maslov_framed_loop(loop, 0, nullptr, cfg.tol);
        const long framed_int = std::lround(framed);
        agree.require(std::abs(framed - framed_int) <= cfg.tol.near_integer &&
                          framed_int == det2,
                      "framed index disagrees with the det2 index");
    }

    const FramedLoop half = half_turn_line_loop(1, 64);
    const double m_half = maslov_framed_loop(half, 0, nullptr, cfg.tol);
    halfturn.require(std::abs(m_half - 1.0) <= cfg.tol.near_integer,
                     "half-turn line index is not 1");
    std::vector<Mat> line_bases;
    std::vector<double> grid = uniform_grid(64);
    for (double t : grid) {
        Mat B(2, 1);
        B << std::cos(kPi * t), std::sin(kPi * t);
        line_bases.push_back(B);
    }
    halfturn.require(
        lagrangian_loop_index(SymplecticSpace::standard(1), grid, line_bases, cfg.tol) == 1,
        "half-turn det2 index is not 1");
    return {agree.finish(), halfturn.finish(), expected.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_homotopy_invariance(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 7919 + 8);
    Gauge invariance("homotopy/index-constant-in-s", 1e-6);

    for (int trial = 0; trial < cfg.family_trials; ++trial) {
        const int n = 2 + trial % 2;
        const int k = coisotropic_rank(rng, n);
        const GeneratedLoop gl = refined_random_loop(rng, n, k, 160, cfg.tol);
        const SymplecticPath lift = lift_framed_loop(gl.loop, 0, nullptr, cfg.tol);
        const CoisotropicSubspace& W0 = gl.loop.base();
        const std::uint64_t gauge_seed = rng();
        const double m0v = maslov_path(lift, nullptr, cfg.tol);
        for (int si = 1; si <= 6; ++si) {
            const double s = double(si) / 6.0;
            std::vector<Mat> gauged(lift.size());
            for (std::size_t i = 0; i < lift.size(); ++i) {
                Rng local(gauge_seed);
                const double t = lift.grid[i];
                const SymplecticMap h1 =
                    random_stabilizer_gauge(local, W0, 0.5 * s * std::sin(kPi * t));
                const SymplecticMap h2 = random_stabilizer_gauge(local, W0, 0.35 * s * t);
                gauged[i] = lift.samples[i] * h1.matrix * h2.matrix;
            }
            const SymplecticPath family{lift.space, lift.grid, std::move(gauged)};
            invariance.observe(maslov_path(family, nullptr, cfg.tol) - m0v);
        }
    }
    return {invariance.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_gs_agreement(const VerifyConfig& cfg) {
    Gauge agree("scenario/gaio-salamon-vs-framed", 1e-6);
    Gauge pinned("scenario/disk-on-circle-is-2", 1e-6);
    for (int n = 1; n <= 4; ++n) {
        const DiskScenario disk = sphere_scenario(n, 160);
        const double framed = disk_maslov(disk, nullptr, cfg.tol);
        GroupActionScenario ga;
        ga.n = n;
        ga.weights.assign(n, 1);
        ga.grid = uniform_grid(160);
        ga.group_loop.resize(160);
        for (int i = 0; i < 160; ++i) ga.group_loop[i] = std::polar(1.0, 2.0 * kPi * ga.grid[i]);
        ga.group_loop.back() = ga.group_loop.front();
        const double gs = gaio_salamon_index(ga, nullptr, cfg.tol);
        agree.observe(framed - gs);
        if (n == 1) pinned.observe(framed - 2.0);
    }
    return {agree.finish(), pinned.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_clutching(const VerifyConfig& cfg) {
    Gauge exact("clutching/zk-gives-k", 0.0);
    Gauge defect("clutching/near-integer-defect", 1e-9);
    for (int k = -3; k <= 3; ++k) {
        const ClutchingScenario sc{rotation_loop(1, k, 128)};
        const long got = chern_from_clutching(sc, nullptr, cfg.tol);
        exact.require(got == k, "clutching index mismatch");
        defect.observe(maslov_path(sc.loop, nullptr, cfg.tol) / 2.0 - k);
        exact.require(closed_surface_maslov(got) == 2 * k, "closed surface value mismatch");
    }
    return {exact.finish(), defect.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_splitting(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 7919 + 9);
    Gauge split("splitting/whole-equals-pieces", 1e-6);

    {
        const DiskScenario disk = sphere_scenario(1, 128);
        for (int kcut : {0, 1, -2}) {
            const auto [whole, pieces] =
                split_check(disk, rotation_loop(1, kcut, 128), nullptr, cfg.tol);
            split.observe(whole - pieces);
            split.observe(whole - 2.0);
        }
    }
    for (int trial = 0; trial < cfg.family_trials; ++trial) {
        const int n = 2 + trial % 2;
        const int k = coisotropic_rank(rng, n);
        run_refined(rng, 160, [&](Rng& probe, int s) {
            const GeneratedLoop gl = random_framed_loop(probe, n, k, s, cfg.tol);
            const DiskScenario disk{gl.loop, {}, std::nullopt};
            const SymplecticPath cut = (trial % 2 == 0)
                                           ? rotation_loop(n, 1 + trial % 2, s)
                                           : random_closed_loop(probe, n, s);
            const auto [whole, pieces] = split_check(disk, cut, nullptr, cfg.tol);
            split.observe(whole - pieces);
        });
    }
    return {split.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_regular_parity(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 7919 + 10);
    Gauge integral("regular/index-is-integer", 1e-6);
    Gauge even("regular/orientable-index-is-even", 0.0);
    Gauge odd_witness("regular/half-turn-is-odd", 0.0);

    for (int trial = 0; trial < cfg.loop_trials; ++trial) {
        const int n = 2 + trial % 3;
        const int k = coisotropic_rank(rng, n);
        const GeneratedLoop gl = refined_random_loop(rng, n, k, 256, cfg.tol);
        const double m = maslov_framed_loop(gl.loop, 0, nullptr, cfg.tol);
        const long r = std::lround(m);
        integral.observe(m - r);
        even.require(r % 2 == 0, "orientation-consistent loop gave an odd index");
    }
    const double m_half = maslov_framed_loop(half_turn_line_loop(2, 96), 0, nullptr, cfg.tol);
    odd_witness.require(std::abs(m_half - std::lround(m_half)) <= cfg.tol.near_integer &&
                            std::lround(m_half) % 2 != 0,
                        "half-turn loop lost its odd integer index");
    return {integral.finish(), even.finish(), odd_witness.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_scenario_laws(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 7919 + 11);
    Gauge naturality("scenario/naturality-conjugation", 1e-6);
    Gauge additivity("scenario/direct-sum-additivity", 1e-6);
    Gauge embedding("scenario/lagrangian-embedding", 1e-6);
    Gauge fullcase("scenario/full-case-collapse", 1e-6);
    Gauge planar("scenario/planar-boundary-sums", 1e-8);

    for (int trial = 0; trial < cfg.family_trials; ++trial) {
        const int n = 2 + trial % 2;
        const int k = coisotropic_rank(rng, n);
        double d_nat = 0.0, d_sum = 0.0;
        std::optional<double> d_emb;
        run_refined(rng, 192, [&](Rng& probe, int s) {
            const GeneratedLoop gl = random_framed_loop(probe, n, k, s, cfg.tol);
            const double base = maslov_framed_loop(gl.loop, 0, nullptr, cfg.tol);

            // Naturality: push everything through a symplectic isomorphism
            // onto a non-standard form.
            std::normal_distribution<double> g(0.0, 1.0);
            Mat T;
            double cond = 1e9;
            do {
                T = Mat::Identity(2 * n, 2 * n);
                for (int i = 0; i < 2 * n; ++i)
                    for (int j = 0; j < 2 * n; ++j) T(i, j) += 0.3 * g(probe);
                Eigen::JacobiSVD<Mat> svd(T);
                cond = svd.singularValues()(0) / svd.singularValues()(2 * n - 1);
            } while (cond > 12.0);
            const Mat Tinv = T.partialPivLu().solve(Mat::Identity(2 * n, 2 * n));
            const SymplecticSpace target =
                SymplecticSpace::make(Tinv.transpose() * gl.loop.space.form * Tinv);
            const FramedLoop pushed = conjugate_loop(gl.loop, target, T, cfg.tol);
            d_nat = maslov_framed_loop(pushed, 0, nullptr, cfg.tol) - base;

            // Direct sum.
            const int n2 = 1 + trial % 2;
            const GeneratedLoop gl2 =
                random_framed_loop(probe, n2, coisotropic_rank(probe, n2), s, cfg.tol);
            const double base2 = maslov_framed_loop(gl2.loop, 0, nullptr, cfg.tol);
            const FramedLoop sum = direct_sum(gl.loop, gl2.loop, cfg.tol);
            d_sum = maslov_framed_loop(sum, 0, nullptr, cfg.tol) - base - base2;

            // Lagrangian embedding: graph of the quotient-trivializing map.
            const CoisotropicSubspace& W0 = gl.loop.base();
            const int q = W0.quotient_dim();
            d_emb.reset();
            if (q > 0) {
                const QuotientSpace quot = linear_quotient(W0);
                Mat coords(q, W0.rank());
                {
                    Mat big(2 * n, q + W0.corank());
                    big.leftCols(q) = quot.representatives;
                    big.rightCols(W0.corank()) = W0.complement;
                    const auto qr = big.colPivHouseholderQr();
                    for (int j = 0; j < W0.rank(); ++j)
                        coords.col(j) = qr.solve(W0.basis.col(j)).head(q);
                }
                Mat doubled_form = Mat::Zero(2 * n + q, 2 * n + q);
                doubled_form.topLeftCorner(2 * n, 2 * n) = gl.loop.space.form;
                doubled_form.bottomRightCorner(q, q) = -quot.form;
                const SymplecticSpace doubled = SymplecticSpace::make(doubled_form);
                std::vector<Mat> graph_bases(gl.generator.size());
                for (std::size_t i = 0; i < gl.generator.size(); ++i) {
                    Mat B = Mat::Zero(2 * n + q, W0.rank());
                    B.topRows(2 * n) = gl.generator.samples[i] * W0.basis;
                    B.bottomRows(q) = coords;
                    graph_bases[i] = B;
                }
                const long emb =
                    lagrangian_loop_index(doubled, gl.generator.grid, graph_bases, cfg.tol);
                d_emb = base - double(emb);
            }
        });
        naturality.observe(d_nat);
        additivity.observe(d_sum);
        if (d_emb) embedding.observe(*d_emb);
    }

    // Full case: a full-space framed loop collapses to the closed-surface
    // value of its clutching loop.
    for (int n = 1; n <= 2; ++n) {
        const SymplecticPath loop = random_closed_loop(rng, n, 128);
        const CoisotropicSubspace full = CoisotropicSubspace::make(
            SymplecticSpace::standard(n), Mat::Identity(2 * n, 2 * n));
        const FramedLoop floop = framed_loop_from_path(loop, full, cfg.tol);
        const double framed = maslov_framed_loop(floop, 0, nullptr, cfg.tol);
        const long c1 = m0(loop, nullptr, cfg.tol);
        fullcase.observe(framed - double(closed_surface_maslov(c1)));
        // Planar surfaces with identity transports and opposite orientations.
        const std::vector<double> grid = uniform_grid(64);
        const SymplecticSpace sp = SymplecticSpace::standard(n);
        planar.observe(planar_surface_maslov({identity_transport(sp, grid),
                                              identity_transport(sp, grid)},
                                             nullptr, cfg.tol));
        planar.observe(planar_surface_maslov({loop, reverse_orientation(loop)}, nullptr,
                                             cfg.tol));
    }
    return {naturality.finish(), additivity.finish(), embedding.finish(), fullcase.finish(),
            planar.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> verify_area(const VerifyConfig& cfg) {
    Gauge area("area/flat-disk-pi", 1e-3);
    Gauge ratio("area/monotonicity-ratio", 1e-3);
    Gauge constant("area/constant-map-zero", 1e-12);

    const DiskScenario disk = sphere_scenario(1, 128, true, 7, 160);
    const double a = disk_symplectic_area(disk.loop.space, *disk.disk_map);
    area.observe(a - kPi);
    const double index = disk_maslov(disk, nullptr, cfg.tol);
    ratio.observe(monotonicity_ratio(index, a) - 2.0 / kPi);

    DiskMapSample flat = disk_triangulation(7, 160);
    flat.values = Mat::Zero(flat.vertices.rows(), 2);
    constant.observe(disk_symplectic_area(SymplecticSpace::standard(1), flat));
    return {area.finish(), ratio.finish(), constant.finish()};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> run_all_suites(const VerifyConfig& cfg) {
    std::vector<PropertyResult> all;
    if (cfg.trials <= 0 && cfg.loop_trials <= 0 && cfg.family_trials <= 0) return all;
    const auto append = [&all](std::vector<PropertyResult> v) {
        for (auto& r : v) all.push_back(std::move(r));
    };
    append(verify_core(cfg));
    append(verify_rho_axioms(cfg));
    append(verify_quotient_identity(cfg));
    append(verify_winding(cfg));
    append(verify_pair_index(cfg));
    append(verify_lift_independence(cfg));
    append(verify_lagrangian_agreement(cfg));
    append(verify_homotopy_invariance(cfg));
    append(verify_gs_agreement(cfg));
    append(verify_clutching(cfg));
    append(verify_splitting(cfg));
    append(verify_regular_parity(cfg));
    append(verify_scenario_laws(cfg));
    append(verify_area(cfg));
    return all;
}

} // namespace maslov
