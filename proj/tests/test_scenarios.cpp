#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maslovkit/scenarios.hpp"

using namespace maslov;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sphere scenario structure") {
    SUBCASE("n = 1: Lagrangian tangent lines, vacuous framing") {
        const DiskScenario s = sphere_scenario(1, 64);
        CHECK(s.loop.base().lagrangian());
        CHECK(s.loop.samples.front().frame.rows() == 0);
        CHECK(subspace_gap(s.loop.samples.front().W.basis,
                           s.loop.samples.back().W.basis) < 1e-12);
    }
    SUBCASE("n = 2: 3-dimensional coisotropic with rotation frames") {
        const DiskScenario s = sphere_scenario(2, 96);
        CHECK(s.loop.base().rank() == 3);
        CHECK(s.loop.base().quotient_dim() == 2);
        // The frame at time t is a rotation by 2 pi t on the quotient.
        for (std::size_t i = 0; i < s.loop.samples.size(); i += 9) {
            const Mat& f = s.loop.samples[i].frame;
            const double th = 2.0 * kPi * s.loop.grid[i];
            CHECK(f.trace() == doctest::Approx(2.0 * std::cos(th)).epsilon(1e-8));
            CHECK(f.determinant() == doctest::Approx(1.0).epsilon(1e-8));
        }
        // Closure: the last frame is the identity again.
        const Mat& last = s.loop.samples.back().frame;
        CHECK((last - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("disk index values") {
    CHECK(disk_maslov(sphere_scenario(1, 128)) == doctest::Approx(2.0).epsilon(1e-9));

    SUBCASE("constant scenario") {
        Rng rng(3);
        const CoisotropicSubspace W0 = random_coisotropic(rng, 2, 3, 0.5);
        std::vector<FramedPoint> pts(32, FramedPoint{W0, Mat::Identity(2, 2)});
        const DiskScenario s{FramedLoop::make(W0.space, uniform_grid(32), pts), {}, {}};
        CHECK(disk_maslov(s) == doctest::Approx(0.0).epsilon(1e-10));
    }
    SUBCASE("product with a Lagrangian factor reduces to its loop index") {
        // Half-turn Lagrangian factor in C direct-summed with a constant
        // framed factor.
        const FramedLoop half = half_turn_line_loop(1, 96);
        Rng rng(9);
        const CoisotropicSubspace W0 = random_coisotropic(rng, 2, 3, 0.4);
        std::vector<FramedPoint> pts(96, FramedPoint{W0, Mat::Identity(2, 2)});
        const FramedLoop constant = FramedLoop::make(W0.space, uniform_grid(96), pts);
        const FramedLoop sum = direct_sum(half, constant);
        CHECK(maslov_framed_loop(sum) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("group action indices") {
    GroupActionScenario s;
    s.n = 1;
    s.weights = {1};
    s.grid = uniform_grid(64);
    s.group_loop.assign(64, {1.0, 0.0});
    CHECK(gaio_salamon_index(s) == doctest::Approx(0.0));

    for (int i = 0; i < 64; ++i) s.group_loop[i] = std::polar(1.0, 2.0 * kPi * s.grid[i]);
    s.group_loop.back() = s.group_loop.front();
    CHECK(gaio_salamon_index(s) == doctest::Approx(2.0).epsilon(1e-12));

    GroupActionScenario s2;
    s2.n = 2;
    s2.weights = {1, 1};
    s2.grid = s.grid;
    s2.group_loop = s.group_loop;
    CHECK(gaio_salamon_index(s2) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("clutching and closed surfaces") {
    CHECK(chern_from_clutching(ClutchingScenario{rotation_loop(1, 0, 32)}) == 0);
    CHECK(chern_from_clutching(ClutchingScenario{rotation_loop(1, 2, 64)}) == 2);
    for (int k = -3; k <= 3; ++k)
        CHECK(chern_from_clutching(ClutchingScenario{rotation_loop(1, k, 128)}) == k);
    CHECK(closed_surface_maslov(0) == 0);
    CHECK(closed_surface_maslov(2) == 4);
    CHECK(closed_surface_maslov(-1) == -2);
}

TEST_CASE("planar surfaces") {
    const SymplecticPath rot = rotation_loop(1, 1, 64);
    CHECK(planar_surface_maslov({rot}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(planar_surface_maslov({rot, reverse_orientation(rot)}) ==
          doctest::Approx(0.0).epsilon(1e-12));
    const SymplecticPath id = identity_transport(rot.space, rot.grid);
    CHECK(planar_surface_maslov({id, id, id}) == doctest::Approx(0.0));
}

TEST_CASE("splitting a disk along a concentric circle") {
    const DiskScenario disk = sphere_scenario(1, 128);
    SUBCASE("identity cut") {
        const auto [whole, pieces] =
            split_check(disk, identity_transport(SymplecticSpace::standard(1),
                                                 uniform_grid(128)));
        CHECK(whole == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(pieces == doctest::Approx(whole).epsilon(1e-9));
    }
    SUBCASE("rotation cut transports cancel across the two copies") {
        const auto [whole, pieces] = split_check(disk, rotation_loop(1, 1, 128));
        CHECK(whole == doctest::Approx(pieces).epsilon(1e-9));
        CHECK(whole == doctest::Approx(2.0).epsilon(1e-9));
    }
}

TEST_CASE("disk area quadrature") {
    const SymplecticSpace r2 = SymplecticSpace::standard(1);
    SUBCASE("flat unit disk has area pi") {
        DiskMapSample map = disk_triangulation(7, 160);
        map.values = map.vertices;  // identity embedding into R^2
        const double a = disk_symplectic_area(r2, map);
        CHECK(std::abs(a - kPi) < 1e-3);
        CHECK(map.triangles.size() >= 2048);
    }
    SUBCASE("constant maps have zero area") {
        DiskMapSample map = disk_triangulation(3, 24);
        map.values = Mat::Ones(map.vertices.rows(), 2);
        CHECK(disk_symplectic_area(r2, map) == doctest::Approx(0.0));
    }
    SUBCASE("sphere scenario ratio") {
        const DiskScenario disk = sphere_scenario(1, 128, true, 7, 160);
        REQUIRE(disk.disk_map.has_value());
        const double area = disk_symplectic_area(disk.loop.space, *disk.disk_map);
        const double index = disk_maslov(disk);
        CHECK(std::abs(area - kPi) < 1e-3);
        CHECK(std::abs(monotonicity_ratio(index, area) - 2.0 / kPi) < 1e-3);
    }
    SUBCASE("degenerate triangles are rejected") {
        DiskMapSample map = disk_triangulation(2, 12);
        map.values = map.vertices;
        map.triangles.push_back({0, 0, 1});
        CHECK_THROWS_AS(disk_symplectic_area(r2, map), ValidationError);
    }
}

TEST_CASE("full-space boundary collapses to the clutching value") {
    for (int k : {-1, 0, 2}) {
        const SymplecticPath loop = rotation_loop(1, k, 96);
        const CoisotropicSubspace full =
            CoisotropicSubspace::make(loop.space, Mat::Identity(2, 2));
        const FramedLoop floop = framed_loop_from_path(loop, full);
        CHECK(maslov_framed_loop(floop) ==
              doctest::Approx(2.0 * chern_from_clutching(ClutchingScenario{loop}))
                  .epsilon(1e-9));
    }
}
