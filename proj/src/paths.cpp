#include "maslovkit/paths.hpp"

#include <cmath>
#include <numbers>

namespace maslov {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(const std::vector<double>& grid, std::size_t n_samples) {
    if (grid.size() != n_samples)
        throw ValidationError(ErrorCode::DimensionMismatch, "grid and samples differ in length");
    if (grid.size() < 2)
        throw ValidationError(ErrorCode::ValidationError, "need at least two samples");
    if (std::abs(grid.front()) > 1e-12 || std::abs(grid.back() - 1.0) > 1e-12)
        throw ValidationError(ErrorCode::ValidationError, "grid must run from 0 to 1");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw ValidationError(ErrorCode::ValidationError, "grid must be strictly increasing");
}

} // namespace

UnitCirclePath UnitCirclePath::make(std::vector<double> grid,
                                    std::vector<std::complex<double>> samples,
                                    const Tolerances& tol) {
    check_grid(grid, samples.size());
    for (const auto& z : samples)
        if (std::abs(std::abs(z) - 1.0) > 1e-9)
            throw ValidationError(ErrorCode::NonUnitSample, "sample is not on the unit circle");
    UnitCirclePath p{std::move(grid), std::move(samples)};
    // The gap condition is enforced where the lift is actually taken.
    (void)tol;
    return p;
}

SymplecticPath SymplecticPath::make(SymplecticSpace space, std::vector<double> grid,
                                    std::vector<Mat> samples, const Tolerances& tol) {
    check_grid(grid, samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const SymplecticMap m{space, samples[i]};
        if (samples[i].rows() != space.dim || samples[i].cols() != space.dim)
            throw ValidationError(ErrorCode::DimensionMismatch, "sample size mismatch");
        if (m.symplectic_defect() > tol.symplectic_defect)
            throw ValidationError(ErrorCode::ValidationError,
                                  "path sample is not symplectic");
        if (i > 0 && (samples[i] - samples[i - 1]).cwiseAbs().maxCoeff() > tol.path_step)
            throw ValidationError(ErrorCode::StepTooCoarse,
                                  "consecutive samples violate the declared step bound");
    }
    return SymplecticPath{std::move(space), std::move(grid), std::move(samples)};
}

bool SymplecticPath::starts_at_identity(double eps) const {
    return (samples.front() - Mat::Identity(space.dim, space.dim)).cwiseAbs().maxCoeff() <= eps;
}

bool SymplecticPath::regular(double eps) const {
    return (samples.back() - Mat::Identity(space.dim, space.dim)).cwiseAbs().maxCoeff() <= eps;
}

bool SymplecticPath::closes(double eps) const {
    return (samples.back() - samples.front()).cwiseAbs().maxCoeff() <= eps;
}

std::vector<double> uniform_grid(int samples) {
    std::vector<double> g(samples);
    for (int i = 0; i < samples; ++i) g[i] = double(i) / double(samples - 1);
    return g;
}

double winding(const UnitCirclePath& p, const Tolerances& tol) {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < p.samples.size(); ++k) {
        const auto ratio = p.samples[k + 1] / p.samples[k];
        const double gap = std::arg(ratio);
        if (std::abs(gap) >= kPi - tol.gap_margin)
            throw NumericError(ErrorCode::GapTooLarge,
                               "consecutive angular gap too close to pi; refine the sampling");
        total += gap;
    }
    return total / (2.0 * kPi);
}

double maslov_path(const SymplecticPath& path, ConditionFlags* flags, const Tolerances& tol) {
    std::vector<std::complex<double>> values(path.size());
    for (std::size_t k = 0; k < path.size(); ++k)
        values[k] = rho(SymplecticMap{path.space, path.samples[k]}, flags, tol);
    const UnitCirclePath circle{path.grid, std::move(values)};
    return 2.0 * winding(circle, tol);
}

double maslov_pair(const SymplecticPath& transport, const SymplecticPath& reference,
                   ConditionFlags* flags, const Tolerances& tol) {
    if (transport.space.dim != reference.space.dim ||
        transport.size() != reference.size())
        throw ValidationError(ErrorCode::DimensionMismatch,
                              "pair index needs transports of equal shape");
    if (!transport.starts_at_identity() || !reference.starts_at_identity())
        throw ValidationError(ErrorCode::ValidationError,
                              "monodromy paths must start at the identity");
    if (!transport.regular() && !reference.regular() && flags) flags->base_dependent = true;

    std::vector<Mat> prod(transport.size());
    for (std::size_t k = 0; k < transport.size(); ++k) {
        const SymplecticMap ref{reference.space, reference.samples[k]};
        prod[k] = ref.inverse_matrix() * transport.samples[k];
    }
    const SymplecticPath path{transport.space, transport.grid, std::move(prod)};
    return maslov_path(path, flags, tol);
}

long m0(const SymplecticPath& loop, ConditionFlags* flags, const Tolerances& tol) {
    if (!loop.closes(tol.loop_closure))
        throw ValidationError(ErrorCode::NotALoop, "path does not close");
    const double half = maslov_path(loop, flags, tol) / 2.0;
    const double rounded = std::round(half);
    if (std::abs(half - rounded) > tol.near_integer)
        throw NumericError(ErrorCode::NonIntegerIndex,
                           "loop index is not integral within tolerance");
    return static_cast<long>(rounded);
}

SymplecticPath rebase(const SymplecticPath& transport, std::size_t k, const Tolerances& tol) {
    const std::size_t m = transport.size();
    if (k >= m)
        throw ValidationError(ErrorCode::ValidationError, "rebase index out of range");
    if (k == 0) return transport;
    if (!transport.starts_at_identity())
        throw ValidationError(ErrorCode::ValidationError,
                              "monodromy path must start at the identity");
    // Closed sample (last == monodromy) is the same circle point as index 0.
    const Mat M = transport.samples.back();
    const SymplecticMap at_k{transport.space, transport.samples[k]};
    const Mat inv_k = at_k.inverse_matrix();

    std::vector<double> grid;
    std::vector<Mat> samples;
    const double t_k = transport.grid[k];
    for (std::size_t j = k; j < m; ++j) {
        grid.push_back(transport.grid[j] - t_k);
        samples.push_back(transport.samples[j] * inv_k);
    }
    for (std::size_t j = 1; j <= k; ++j) {
        grid.push_back(1.0 - t_k + transport.grid[j]);
        samples.push_back(transport.samples[j] * M * inv_k);
    }
    grid.back() = 1.0;
    (void)tol;
    return SymplecticPath{transport.space, std::move(grid), std::move(samples)};
}

SymplecticPath reverse_orientation(const SymplecticPath& transport, const Tolerances& tol) {
    const std::size_t m = transport.size();
    const SymplecticMap last{transport.space, transport.samples.back()};
    const Mat inv_last = last.inverse_matrix();
    std::vector<double> grid(m);
    std::vector<Mat> samples(m);
    for (std::size_t j = 0; j < m; ++j) {
        grid[j] = 1.0 - transport.grid[m - 1 - j];
        // Transport from the far end backwards.
        samples[j] = transport.samples[m - 1 - j] * inv_last;
    }
    grid.front() = 0.0;
    grid.back() = 1.0;
    (void)tol;
    return SymplecticPath{transport.space, std::move(grid), std::move(samples)};
}

SymplecticPath pointwise_product(const SymplecticPath& A, const SymplecticPath& B,
                                 const Tolerances& tol) {
    if (A.space.dim != B.space.dim || A.size() != B.size())
        throw ValidationError(ErrorCode::DimensionMismatch, "paths of different shapes");
    (void)tol;
    std::vector<Mat> samples(A.size());
    for (std::size_t k = 0; k < A.size(); ++k) samples[k] = A.samples[k] * B.samples[k];
    return SymplecticPath{A.space, A.grid, std::move(samples)};
}

SymplecticPath identity_transport(const SymplecticSpace& space,
                                  const std::vector<double>& grid) {
    std::vector<Mat> samples(grid.size(), Mat::Identity(space.dim, space.dim));
    return SymplecticPath{space, grid, std::move(samples)};
}

SymplecticPath rotation_loop(int n, int k, int samples) {
    const SymplecticSpace sp = SymplecticSpace::standard(n);
    std::vector<double> grid = uniform_grid(samples);
    std::vector<Mat> mats(samples);
    for (int i = 0; i < samples; ++i) {
        const double theta = 2.0 * kPi * k * grid[i];
        CMat U = CMat::Identity(n, n);
        for (int j = 0; j < n; ++j) U(j, j) = std::polar(1.0, theta);
        mats[i] = embed_unitary(U);
    }
    return SymplecticPath{sp, std::move(grid), std::move(mats)};
}

} // namespace maslov
