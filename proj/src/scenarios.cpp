#include "maslovkit/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace maslov {

namespace {
constexpr double kPi = std::numbers::pi;
}

DiskMapSample disk_triangulation(int rings, int sectors) {
    if (rings < 1 || sectors < 3)
        throw ValidationError(ErrorCode::DegenerateTriangulation,
                              "need at least one ring and three sectors");
    DiskMapSample out;
    const int nv = 1 + rings * sectors;
    out.vertices.resize(nv, 2);
    out.vertices.row(0) << 0.0, 0.0;
    for (int i = 1; i <= rings; ++i) {
        const double r = double(i) / rings;
        for (int j = 0; j < sectors; ++j) {
            const double th = 2.0 * kPi * j / sectors;
            out.vertices.row(1 + (i - 1) * sectors + j) << r * std::cos(th), r * std::sin(th);
        }
    }
    const auto at = [&](int ring, int j) { return 1 + (ring - 1) * sectors + (j % sectors); };
    for (int j = 0; j < sectors; ++j)
        out.triangles.push_back({0, at(1, j), at(1, j + 1)});
    for (int i = 1; i < rings; ++i)
        for (int j = 0; j < sectors; ++j) {
            out.triangles.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
            out.triangles.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
        }
    return out;
}

DiskScenario sphere_scenario(int n, int samples, bool with_disk_map, int rings, int sectors) {
    if (n < 1) throw ValidationError(ErrorCode::ValidationError, "n must be positive");
    const SymplecticSpace sp = SymplecticSpace::standard(n);
    std::vector<double> grid = uniform_grid(samples);

    std::vector<Vec> points(samples);
    std::vector<CoisotropicSubspace> subspaces;
    subspaces.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        Vec x = Vec::Zero(2 * n);
        x(0) = std::cos(2.0 * kPi * grid[i]);
        x(n) = std::sin(2.0 * kPi * grid[i]);
        points[i] = x;
        const Mat tangent = kernel_space(x.transpose());
        subspaces.push_back(CoisotropicSubspace::make(sp, tangent));
    }
    // Exact closure.
    points.back() = points.front();
    subspaces.back() = subspaces.front();

    std::vector<FramedPoint> pts;
    pts.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        Mat frame;
        if (n > 1) {
            CMat U = CMat::Identity(n, n);
            for (int j = 0; j < n; ++j) U(j, j) = std::polar(1.0, 2.0 * kPi * grid[i]);
            if (i + 1 == samples) U = CMat::Identity(n, n);
            frame = induced_quotient_matrix(embed_unitary(U), subspaces.front(), subspaces[i]);
        } else {
            frame = Mat(0, 0);
        }
        pts.push_back(FramedPoint{subspaces[i], std::move(frame)});
    }
    DiskScenario out{FramedLoop::make(sp, std::move(grid), std::move(pts)),
                     std::move(points), std::nullopt};
    if (with_disk_map) {
        DiskMapSample map = disk_triangulation(rings, sectors);
        map.values = Mat::Zero(map.vertices.rows(), 2 * n);
        map.values.col(0) = map.vertices.col(0);
        map.values.col(n) = map.vertices.col(1);
        out.disk_map = std::move(map);
    }
    return out;
}

double disk_maslov(const DiskScenario& s, ConditionFlags* flags, const Tolerances& tol) {
    return maslov_framed_loop(s.loop, 0, flags, tol);
}

double gaio_salamon_index(const GroupActionScenario& s, ConditionFlags* flags,
                          const Tolerances& tol) {
    if (static_cast<int>(s.weights.size()) != s.n)
        throw ValidationError(ErrorCode::DimensionMismatch, "need one weight per factor");
    if (s.grid.size() != s.group_loop.size())
        throw ValidationError(ErrorCode::DimensionMismatch, "grid and group loop differ");
    for (const auto& g : s.group_loop)
        if (std::abs(std::abs(g) - 1.0) > 1e-9)
            throw ValidationError(ErrorCode::NonUnitSample, "group samples must be unit complex");
    if (std::abs(s.group_loop.back() - s.group_loop.front()) > tol.loop_closure)
        throw ValidationError(ErrorCode::NotALoop, "group loop does not close");

    const SymplecticSpace sp = SymplecticSpace::standard(s.n);
    std::vector<Mat> mats(s.grid.size());
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        CMat U = CMat::Identity(s.n, s.n);
        for (int j = 0; j < s.n; ++j) U(j, j) = std::pow(s.group_loop[i], s.weights[j]);
        mats[i] = embed_unitary(U);
    }
    const SymplecticPath path{sp, s.grid, std::move(mats)};
    return maslov_path(path, flags, tol);
}

long chern_from_clutching(const ClutchingScenario& s, ConditionFlags* flags,
                          const Tolerances& tol) {
    return m0(s.loop, flags, tol);
}

long closed_surface_maslov(long c1) { return 2 * c1; }

double planar_surface_maslov(const std::vector<SymplecticPath>& boundaries,
                             ConditionFlags* flags, const Tolerances& tol) {
    double total = 0.0;
    for (const auto& b : boundaries) {
        const SymplecticPath id = identity_transport(b.space, b.grid);
        total += maslov_pair(b, id, flags, tol);
    }
    return total;
}

std::pair<double, double> split_check(const DiskScenario& disk, const SymplecticPath& cut,
                                      ConditionFlags* flags, const Tolerances& tol) {
    if (cut.space.dim != disk.loop.space.dim)
        throw ValidationError(ErrorCode::DimensionMismatch, "cut transport dimension mismatch");
    if (!cut.starts_at_identity() || !cut.closes(tol.loop_closure))
        throw ValidationError(ErrorCode::NotALoop,
                              "cut transport must be a loop based at the identity");
    const double whole = disk_maslov(disk, flags, tol);

    // Inner disk: full-space boundary carrying the cut transport.
    const SymplecticPath id = identity_transport(cut.space, cut.grid);
    const double inner = maslov_pair(cut, id, flags, tol);
    // Annulus: original outer boundary plus the orientation-reversed cut.
    const SymplecticPath lifted = lift_framed_loop(disk.loop, 0, flags, tol);
    std::vector<Mat> rel(lifted.size());
    const Mat base_inv = SymplecticMap{lifted.space, lifted.samples.front()}.inverse_matrix();
    for (std::size_t i = 0; i < lifted.size(); ++i) rel[i] = lifted.samples[i] * base_inv;
    const SymplecticPath outer{lifted.space, lifted.grid, std::move(rel)};
    const SymplecticPath id_outer = identity_transport(outer.space, outer.grid);
    const SymplecticPath reversed = reverse_orientation(cut, tol);
    const SymplecticPath id_cut = identity_transport(reversed.space, reversed.grid);
    const double annulus = maslov_pair(outer, id_outer, flags, tol) +
                           maslov_pair(reversed, id_cut, flags, tol);
    return {whole, inner + annulus};
}

double disk_symplectic_area(const SymplecticSpace& space, const DiskMapSample& map) {
    if (map.values.rows() != map.vertices.rows() || map.values.cols() != space.dim)
        throw ValidationError(ErrorCode::DimensionMismatch,
                              "disk map values do not match the triangulation");
    double area = 0.0;
    for (const auto& t : map.triangles) {
        const Eigen::Vector2d pa = map.vertices.row(t[0]);
        const Eigen::Vector2d pb = map.vertices.row(t[1]);
        const Eigen::Vector2d pc = map.vertices.row(t[2]);
        const double param_det = (pb - pa).x() * (pc - pa).y() - (pb - pa).y() * (pc - pa).x();
        if (param_det <= 0.0)
            throw ValidationError(ErrorCode::DegenerateTriangulation,
                                  "triangle is degenerate or negatively oriented");
        const Vec ua = map.values.row(t[0]);
        const Vec ub = map.values.row(t[1]);
        const Vec uc = map.values.row(t[2]);
        area += 0.5 * (ub - ua).dot(space.form * (uc - ua));
    }
    return area;
}

double monotonicity_ratio(double index, double area) {
    if (area == 0.0)
        throw ValidationError(ErrorCode::ValidationError, "zero area in monotonicity ratio");
    return index / area;
}

} // namespace maslov
