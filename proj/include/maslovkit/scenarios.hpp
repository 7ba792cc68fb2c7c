#pragma once

#include <array>
#include <complex>
#include <optional>
#include <utility>

#include "maslovkit/lift.hpp"
#include "maslovkit/paths.hpp"

namespace maslov {

/// Triangulated sample of a map from the unit disk into R^{2n}.
struct DiskMapSample {
    Mat vertices;                           // #V x 2 parameters in the disk
    std::vector<std::array<int, 3>> triangles;
    Mat values;                             // #V x 2n images
};

/// Vertices on concentric rings; m(2R - 1) positively oriented triangles.
DiskMapSample disk_triangulation(int rings, int sectors);

struct DiskScenario {
    FramedLoop loop;
    std::vector<Vec> boundary_points;        // optional, may be empty
    std::optional<DiskMapSample> disk_map;   // optional, for area computations
};

/// Circle action on C^n with integer weights, sampled along a group loop.
struct GroupActionScenario {
    int n = 1;
    std::vector<int> weights;
    std::vector<double> grid;
    std::vector<std::complex<double>> group_loop;
};

struct ClutchingScenario {
    SymplecticPath loop;
};

/// Flat disk spanning the unit circle inside the sphere S^{2n-1}: boundary
/// x(s) = e^{2 pi i s} e_1, W(s) the sphere tangent space, frames the
/// quotient action of the diagonal rotation.
DiskScenario sphere_scenario(int n, int samples, bool with_disk_map = false,
                             int rings = 7, int sectors = 160);

double disk_maslov(const DiskScenario& s, ConditionFlags* flags = nullptr,
                   const Tolerances& tol = default_tolerances());

/// Path index of the linearized action t -> diag(g(t)^{w_1}, ..., g(t)^{w_n})
/// in the constant trivialization.
double gaio_salamon_index(const GroupActionScenario& s, ConditionFlags* flags = nullptr,
                          const Tolerances& tol = default_tolerances());

long chern_from_clutching(const ClutchingScenario& s, ConditionFlags* flags = nullptr,
                          const Tolerances& tol = default_tolerances());

long closed_surface_maslov(long c1);

/// Trivial-bundle planar surface: sum over boundary circles of the pair
/// index against the identity transport.
double planar_surface_maslov(const std::vector<SymplecticPath>& boundaries,
                             ConditionFlags* flags = nullptr,
                             const Tolerances& tol = default_tolerances());

/// Cuts the disk along an interior concentric circle carrying the given
/// transport; returns (index of the whole disk, sum of the two pieces).
std::pair<double, double> split_check(const DiskScenario& disk, const SymplecticPath& cut,
                                      ConditionFlags* flags = nullptr,
                                      const Tolerances& tol = default_tolerances());

/// Second-order quadrature of the pulled-back form over the triangulation.
double disk_symplectic_area(const SymplecticSpace& space, const DiskMapSample& map);

double monotonicity_ratio(double index, double area);

} // namespace maslov
