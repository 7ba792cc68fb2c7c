#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maslovkit/paths.hpp"

using namespace maslov;
using Cplx = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;

UnitCirclePath phase_loop(int k, int samples) {
    std::vector<double> grid = uniform_grid(samples);
    std::vector<Cplx> z(samples);
    for (int i = 0; i < samples; ++i) z[i] = std::polar(1.0, 2.0 * kPi * k * grid[i]);
    return UnitCirclePath{std::move(grid), std::move(z)};
}
} // namespace

TEST_CASE("winding: frozen examples and the refinement oracle") {
    const UnitCirclePath constant{uniform_grid(16), std::vector<Cplx>(16, Cplx(1.0, 0.0))};
    CHECK(winding(constant) == 0.0);

    CHECK(winding(phase_loop(1, 64)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(winding(phase_loop(1, 640)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(winding(phase_loop(-2, 64)) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(winding(phase_loop(-2, 640)) == doctest::Approx(-2.0).epsilon(1e-12));
    for (int k = -5; k <= 5; ++k) {
        const double w1 = winding(phase_loop(k, 128));
        const double w2 = winding(phase_loop(k, 256));
        CHECK(std::abs(w1 - k) < 1e-12);
        CHECK(std::abs(w2 - w1) < 1e-9);
    }
}

TEST_CASE("winding error paths") {
    // A half-turn per step lands in the guard band below pi.
    CHECK_THROWS_AS(winding(phase_loop(1, 3)), NumericError);
    std::vector<Cplx> bad(16, Cplx(1.0, 0.0));
    bad[3] = Cplx(0.5, 0.0);
    CHECK_THROWS_AS(UnitCirclePath::make(uniform_grid(16), bad), ValidationError);
    CHECK_THROWS_AS(UnitCirclePath::make({0.0, 0.5, 0.4, 1.0},
                                         std::vector<Cplx>(4, Cplx(1.0, 0.0))),
                    ValidationError);
}

TEST_CASE("maslov_path on rotation loops") {
    const SymplecticSpace sp = SymplecticSpace::standard(1);
    const SymplecticPath constant = identity_transport(sp, uniform_grid(16));
    CHECK(maslov_path(constant) == 0.0);

    CHECK(maslov_path(rotation_loop(1, 1, 64)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(maslov_path(rotation_loop(2, 1, 64)) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("maslov_pair") {
    const SymplecticPath rot = rotation_loop(1, 1, 64);
    const SymplecticPath id = identity_transport(rot.space, rot.grid);
    CHECK(maslov_pair(rot, rot) == doctest::Approx(0.0));
    CHECK(maslov_pair(rot, id) == doctest::Approx(2.0).epsilon(1e-12));

    SUBCASE("additivity for a loop factor") {
        const SymplecticPath rot2 = rotation_loop(1, 2, 64);
        const SymplecticPath prod = pointwise_product(rot, rot2);
        CHECK(maslov_pair(prod, id) ==
              doctest::Approx(maslov_pair(rot, id) + maslov_pair(rot2, id)).epsilon(1e-12));
    }
    SUBCASE("neither transport regular sets the flag") {
        // Open path: rotation by pi t (monodromy -I, not regular).
        const int m = 64;
        std::vector<double> grid = uniform_grid(m);
        std::vector<Mat> mats(m);
        for (int i = 0; i < m; ++i) {
            CMat U = CMat::Identity(1, 1);
            U(0, 0) = std::polar(1.0, kPi * grid[i]);
            mats[i] = embed_unitary(U);
        }
        const SymplecticPath open{rotation_loop(1, 1, m).space, grid, mats};
        ConditionFlags flags;
        maslov_pair(open, open, &flags);
        CHECK(flags.base_dependent);
        ConditionFlags flags2;
        maslov_pair(rot, id, &flags2);
        CHECK_FALSE(flags2.base_dependent);
    }
    SUBCASE("base independence under rebasing") {
        const SymplecticPath reg = rotation_loop(1, 2, 96);
        const SymplecticPath other = rotation_loop(1, -1, 96);
        const double base = maslov_pair(reg, other);
        for (std::size_t idx : {5, 31, 60}) {
            CHECK(maslov_pair(rebase(reg, idx), rebase(other, idx)) ==
                  doctest::Approx(base).epsilon(1e-12));
        }
    }
    SUBCASE("orientation reversal negates") {
        const SymplecticPath reg = rotation_loop(1, 1, 96);
        const SymplecticPath id96 = identity_transport(reg.space, reg.grid);
        CHECK(maslov_pair(reverse_orientation(reg), id96) ==
              doctest::Approx(-maslov_pair(reg, id96)).epsilon(1e-12));
    }
}

TEST_CASE("m0 on unitary loops") {
    CHECK(m0(identity_transport(SymplecticSpace::standard(1), uniform_grid(16))) == 0);
    CHECK(m0(rotation_loop(1, 1, 64)) == 1);
    CHECK(m0(rotation_loop(2, 1, 64)) == 2);

    SUBCASE("a path that does not close is rejected") {
        const int m = 32;
        std::vector<double> grid = uniform_grid(m);
        std::vector<Mat> mats(m);
        for (int i = 0; i < m; ++i) {
            CMat U = CMat::Identity(1, 1);
            U(0, 0) = std::polar(1.0, kPi * grid[i]);
            mats[i] = embed_unitary(U);
        }
        const SymplecticPath half{SymplecticSpace::standard(1), grid, mats};
        CHECK_THROWS_AS(m0(half), ValidationError);
        // Forcing closure through a huge tolerance exposes the non-integer index.
        Tolerances loose;
        loose.loop_closure = 10.0;
        CHECK_THROWS_AS(m0(half, nullptr, loose), NumericError);
    }
}

TEST_CASE("declared step contract on symplectic paths") {
    const SymplecticSpace sp = SymplecticSpace::standard(1);
    std::vector<double> grid = uniform_grid(4);
    std::vector<Mat> mats(4, Mat::Identity(2, 2));
    CMat U = CMat::Identity(1, 1);
    U(0, 0) = std::polar(1.0, 2.5);  // one violent jump
    mats[2] = embed_unitary(U);
    CHECK_THROWS_AS(SymplecticPath::make(sp, grid, mats), ValidationError);
}
