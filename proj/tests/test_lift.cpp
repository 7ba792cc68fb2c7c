#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maslovkit/lift.hpp"

using namespace maslov;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("transitive frame") {
    Rng rng(17);
    SUBCASE("identity target gives the identity") {
        const CoisotropicSubspace W0 = random_coisotropic(rng, 2, 3, 0.5);
        const Mat id_frame = Mat::Identity(2, 2);
        const SymplecticMap Psi = transitive_frame(W0, FramedPoint{W0, id_frame});
        CHECK((Psi.matrix - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("Lagrangian targets need no frame data") {
        const SymplecticSpace sp = SymplecticSpace::standard(2);
        const CoisotropicSubspace L0 = random_coisotropic(rng, 2, 2, 0.4);
        const CoisotropicSubspace L1 = random_coisotropic(rng, 2, 2, 0.7);
        const SymplecticMap Psi = transitive_frame(L0, FramedPoint{L1, Mat(0, 0)});
        CHECK(Psi.symplectic_defect() < 1e-9);
        CHECK(subspace_gap(Psi.matrix * L0.basis, L1.basis) < 1e-8);
        (void)sp;
    }
    SUBCASE("random pairs in dimension 6 satisfy both postconditions") {
        for (int trial = 0; trial < 10; ++trial) {
            const int k = 4 + trial % 2;
            const CoisotropicSubspace W0 = random_coisotropic(rng, 3, k, 0.6);
            const CoisotropicSubspace W1 = random_coisotropic(rng, 3, k, 0.6);
            // A valid symplectic frame between the quotients: the induced map
            // of any transport carrying W0 to W1, twisted by a gauge of W1.
            const Mat T = adapted_darboux_basis(W1).matrix *
                          adapted_darboux_basis(W0).inverse_matrix();
            const SymplecticMap gauge = random_invariant_symplectic(rng, W1, 0.5, true);
            const Mat frame = induced_map(gauge, W1, W1) *
                              induced_quotient_matrix(T, W0, W1);
            const SymplecticMap Psi = transitive_frame(W0, FramedPoint{W1, frame});
            CHECK(Psi.symplectic_defect() < 1e-8);
            CHECK(subspace_gap(Psi.matrix * W0.basis, W1.basis) < 1e-8);
            const Mat got = induced_map(Psi, W0, W1);
            CHECK((got - frame).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
    SUBCASE("dimension mismatch is rejected") {
        const CoisotropicSubspace W0 = random_coisotropic(rng, 2, 3, 0.5);
        const CoisotropicSubspace W1 = random_coisotropic(rng, 2, 4, 0.5);
        CHECK_THROWS_AS(transitive_frame(W0, FramedPoint{W1, Mat::Identity(2, 2)}),
                        ValidationError);
    }
}

TEST_CASE("lifting framed loops") {
    SUBCASE("constant loop lifts to the constant identity path") {
        Rng rng(5);
        const CoisotropicSubspace W0 = random_coisotropic(rng, 2, 3, 0.5);
        const int m = 16;
        std::vector<FramedPoint> pts(m, FramedPoint{W0, Mat::Identity(2, 2)});
        const FramedLoop loop = FramedLoop::make(W0.space, uniform_grid(m), pts);
        const SymplecticPath lift = lift_framed_loop(loop);
        for (const auto& s : lift.samples)
            CHECK((s - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(maslov_framed_loop(loop) == doctest::Approx(0.0).epsilon(1e-10));
    }
    SUBCASE("half-turn line: lift is homotopic to the rotation by pi t") {
        const FramedLoop loop = half_turn_line_loop(1, 64);
        const SymplecticPath lift = lift_framed_loop(loop);
        const CoisotropicSubspace& W0 = loop.base();
        for (std::size_t i = 0; i < lift.size(); ++i) {
            CHECK(subspace_gap(lift.samples[i] * W0.basis, loop.samples[i].W.basis) < 1e-9);
            // Compare against the explicit rotation up to the line stabilizer:
            // the lifted line equals the rotated line.
            Mat R(2, 2);
            const double th = kPi * loop.grid[i];
            R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
            CHECK(subspace_gap(lift.samples[i] * W0.basis, R * W0.basis) < 1e-9);
        }
        CHECK(maslov_framed_loop(loop) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("undersampled loops are detected") {
        const FramedLoop coarse = half_turn_line_loop(1, 3);
        CHECK_THROWS_AS(lift_framed_loop(coarse), NumericError);
    }
    SUBCASE("two seeds and the generating path agree") {
        Rng rng(29);
        for (int trial = 0; trial < 6; ++trial) {
            const int n = 2 + trial % 2;
            std::uniform_int_distribution<int> kd(n, 2 * n);
            const GeneratedLoop gl = random_framed_loop(rng, n, kd(rng), 96);
            const double m_a = maslov_framed_loop(gl.loop, 0);
            const double m_b = maslov_framed_loop(gl.loop, 123 + trial);
            const double m_gen = maslov_path(gl.generator);
            CHECK(m_a == doctest::Approx(m_b).epsilon(1e-8));
            CHECK(m_a == doctest::Approx(m_gen).epsilon(1e-8));
        }
    }
}

TEST_CASE("Lagrangian det^2 loop index") {
    const SymplecticSpace sp = SymplecticSpace::standard(1);
    SUBCASE("constant Lagrangian") {
        std::vector<Mat> bases(16, Mat::Identity(2, 2).leftCols(1));
        CHECK(lagrangian_loop_index(sp, uniform_grid(16), bases) == 0);
    }
    SUBCASE("half-turn line in C") {
        const int m = 64;
        std::vector<double> grid = uniform_grid(m);
        std::vector<Mat> bases(m);
        for (int i = 0; i < m; ++i) {
            Mat B(2, 1);
            B << std::cos(kPi * grid[i]), std::sin(kPi * grid[i]);
            bases[i] = B;
        }
        CHECK(lagrangian_loop_index(sp, grid, bases) == 1);
    }
    SUBCASE("half-turn in the first factor of C^2") {
        const SymplecticSpace sp2 = SymplecticSpace::standard(2);
        const int m = 64;
        std::vector<double> grid = uniform_grid(m);
        std::vector<Mat> bases(m);
        for (int i = 0; i < m; ++i) {
            Mat B = Mat::Zero(4, 2);
            B(0, 0) = std::cos(kPi * grid[i]);
            B(2, 0) = std::sin(kPi * grid[i]);
            B(1, 1) = 1.0;
            bases[i] = B;
        }
        CHECK(lagrangian_loop_index(sp2, grid, bases) == 1);
    }
    SUBCASE("non-Lagrangian input is rejected") {
        const SymplecticSpace sp2 = SymplecticSpace::standard(2);
        Mat B = Mat::Zero(4, 2);
        B(0, 0) = 1.0;
        B(2, 1) = 1.0;  // span(e1, f1) is symplectic
        std::vector<Mat> bases(8, B);
        CHECK_THROWS_AS(lagrangian_loop_index(sp2, uniform_grid(8), bases), ValidationError);
    }
}

TEST_CASE("framed loop direct sums and conjugation") {
    Rng rng(41);
    const GeneratedLoop a = random_framed_loop(rng, 2, 3, 192);
    const GeneratedLoop b = random_framed_loop(rng, 1, 2, 192);
    const double ma = maslov_framed_loop(a.loop);
    const double mb = maslov_framed_loop(b.loop);

    const FramedLoop sum = direct_sum(a.loop, b.loop);
    CHECK(maslov_framed_loop(sum) == doctest::Approx(ma + mb).epsilon(1e-7));

    // Conjugating all data by a symplectic automorphism preserves the index.
    const SymplecticMap S = random_symplectic_in(a.loop.space, rng, 0.4);
    const FramedLoop pushed = conjugate_loop(a.loop, a.loop.space, S.matrix);
    CHECK(maslov_framed_loop(pushed) == doctest::Approx(ma).epsilon(1e-7));
}
