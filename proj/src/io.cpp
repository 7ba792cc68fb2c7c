#include "maslovkit/io.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>

namespace maslov {

namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(ErrorCode::ParseError, path + ": " + what);
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

Mat mat_from_rowmajor(const json& j, int rows, int cols, const std::string& path) {
    if (!j.is_array()) fail(path, "expected a row-major array");
    if (static_cast<int>(j.size()) != rows * cols)
        fail(path, "expected " + std::to_string(rows * cols) + " entries, got " +
                       std::to_string(j.size()));
    Mat out(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out(r, c) = number_at(j[r * cols + c], path + "[" + std::to_string(r * cols + c) + "]");
    return out;
}

json mat_to_rowmajor(const Mat& m) {
    json out = json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
    return out;
}

std::vector<double> grid_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() < 2) fail(path, "expected a grid with at least two points");
    std::vector<double> grid(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        grid[i] = number_at(j[i], path + "[" + std::to_string(i) + "]");
    if (std::abs(grid.front()) > 1e-12 || std::abs(grid.back() - 1.0) > 1e-12)
        fail(path, "grid must run from 0 to 1");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) fail(path, "grid must be strictly increasing");
    return grid;
}

struct TolField {
    const char* name;
    double Tolerances::*member;
};

constexpr TolField kTolFields[] = {
    {"rank_rel", &Tolerances::rank_rel},
    {"subspace_angle", &Tolerances::subspace_angle},
    {"preserved_angle", &Tolerances::preserved_angle},
    {"symplectic_defect", &Tolerances::symplectic_defect},
    {"eps_circle", &Tolerances::eps_circle},
    {"eps_cluster", &Tolerances::eps_cluster},
    {"gap_margin", &Tolerances::gap_margin},
    {"path_step", &Tolerances::path_step},
    {"lift_step", &Tolerances::lift_step},
    {"loop_closure", &Tolerances::loop_closure},
    {"near_integer", &Tolerances::near_integer},
};

} // namespace

json tolerances_to_json(const Tolerances& tol) {
    json out = json::object();
    for (const auto& f : kTolFields) out[f.name] = tol.*(f.member);
    return out;
}

Tolerances tolerances_from_json(const json& j, Tolerances base) {
    if (j.is_null()) return base;
    if (!j.is_object()) fail("options.tolerances", "expected an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const auto& f : kTolFields)
            if (key == f.name) {
                base.*(f.member) = number_at(value, "options.tolerances." + key);
                known = true;
            }
        if (!known) fail("options.tolerances." + key, "unknown tolerance");
    }
    return base;
}

namespace {

FramedLoop framed_loop_from_json(const json& j, const SymplecticSpace& sp,
                                 const std::vector<double>& grid, const Tolerances& tol) {
    if (!j.contains("subspace_cols")) fail("subspace_cols", "missing");
    const int k = j.at("subspace_cols").get<int>();
    if (k < sp.n() || k > sp.dim) fail("subspace_cols", "coisotropic rank out of range");
    const auto& subs = j.at("subspaces");
    if (!subs.is_array() || subs.size() != grid.size())
        fail("subspaces", "expected one basis per grid point");
    const int q = 2 * k - sp.dim;
    const bool need_frames = q > 0;
    if (need_frames && (!j.contains("frames") || j.at("frames").size() != grid.size()))
        fail("frames", "expected one frame per grid point");

    std::vector<FramedPoint> pts;
    pts.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::string at = "subspaces[" + std::to_string(i) + "]";
        Mat basis = mat_from_rowmajor(subs[i], sp.dim, k, at);
        CoisotropicSubspace W = [&] {
            try {
                return CoisotropicSubspace::make(sp, basis, tol);
            } catch (const ValidationError& e) {
                fail(at, e.what());
            }
        }();
        Mat frame(0, 0);
        if (need_frames)
            frame = mat_from_rowmajor(j.at("frames")[i], q, q,
                                      "frames[" + std::to_string(i) + "]");
        pts.push_back(FramedPoint{std::move(W), std::move(frame)});
    }
    return FramedLoop::make(sp, grid, std::move(pts), tol);
}

json framed_loop_to_json(const FramedLoop& loop) {
    json out = json::object();
    out["subspace_cols"] = loop.base().rank();
    json subs = json::array();
    json frames = json::array();
    for (const auto& p : loop.samples) {
        subs.push_back(mat_to_rowmajor(p.W.basis));
        if (loop.base().quotient_dim() > 0) frames.push_back(mat_to_rowmajor(p.frame));
    }
    out["subspaces"] = std::move(subs);
    if (loop.base().quotient_dim() > 0) out["frames"] = std::move(frames);
    return out;
}

SymplecticPath path_from_json(const json& j, const SymplecticSpace& sp,
                              const std::vector<double>& grid, const std::string& at,
                              const Tolerances& tol) {
    if (!j.is_array() || j.size() != grid.size())
        fail(at, "expected one matrix per grid point");
    std::vector<Mat> mats(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        mats[i] = mat_from_rowmajor(j[i], sp.dim, sp.dim, at + "[" + std::to_string(i) + "]");
    try {
        return SymplecticPath::make(sp, grid, std::move(mats), tol);
    } catch (const ValidationError& e) {
        fail(at, e.what());
    }
}

json path_to_json(const SymplecticPath& p) {
    json mats = json::array();
    for (const auto& m : p.samples) mats.push_back(mat_to_rowmajor(m));
    return mats;
}

} // namespace

ScenarioFile parse_scenario(const json& j, const Tolerances& base_tol) {
    if (!j.is_object()) fail("$", "scenario must be a JSON object");
    ScenarioFile out;
    if (!j.contains("kind") || !j.at("kind").is_string()) fail("kind", "missing or not a string");
    out.kind = j.at("kind").get<std::string>();
    out.id = j.value("id", std::string("scenario"));
    if (!j.contains("dimension") || !j.at("dimension").is_number_integer())
        fail("dimension", "missing or not an integer");
    out.dimension = j.at("dimension").get<int>();
    if (out.dimension <= 0 || out.dimension % 2 != 0)
        fail("dimension", "must be a positive even integer");
    out.tol = base_tol;
    if (j.contains("options")) {
        const auto& opt = j.at("options");
        out.seed = opt.value("seed", std::uint64_t{0});
        if (opt.contains("tolerances"))
            out.tol = tolerances_from_json(opt.at("tolerances"), base_tol);
    }
    const SymplecticSpace sp = SymplecticSpace::standard(out.dimension / 2);

    if (out.kind == "disk" || out.kind == "framed-loop") {
        const auto grid = grid_from_json(j.at("grid"), "grid");
        DiskScenario disk{framed_loop_from_json(j, sp, grid, out.tol), {}, std::nullopt};
        if (j.contains("boundary_points")) {
            const auto& bp = j.at("boundary_points");
            if (!bp.is_array() || bp.size() != grid.size())
                fail("boundary_points", "expected one point per grid point");
            for (std::size_t i = 0; i < bp.size(); ++i)
                disk.boundary_points.push_back(
                    mat_from_rowmajor(bp[i], out.dimension, 1,
                                      "boundary_points[" + std::to_string(i) + "]"));
        }
        if (j.contains("disk_map")) {
            const auto& dm = j.at("disk_map");
            DiskMapSample map;
            const auto& verts = dm.at("vertices");
            map.vertices.resize(verts.size(), 2);
            for (std::size_t i = 0; i < verts.size(); ++i) {
                const auto row = mat_from_rowmajor(verts[i], 1, 2,
                                                   "disk_map.vertices[" + std::to_string(i) + "]");
                map.vertices.row(i) = row;
            }
            for (const auto& t : dm.at("triangles")) {
                if (!t.is_array() || t.size() != 3) fail("disk_map.triangles", "expected triples");
                map.triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
                for (int v : map.triangles.back())
                    if (v < 0 || v >= map.vertices.rows())
                        fail("disk_map.triangles", "vertex index out of range");
            }
            const auto& vals = dm.at("values");
            if (vals.size() != verts.size()) fail("disk_map.values", "one value row per vertex");
            map.values.resize(vals.size(), out.dimension);
            for (std::size_t i = 0; i < vals.size(); ++i)
                map.values.row(i) =
                    mat_from_rowmajor(vals[i], 1, out.dimension,
                                      "disk_map.values[" + std::to_string(i) + "]");
            disk.disk_map = std::move(map);
        }
        out.payload = std::move(disk);
    } else if (out.kind == "group-action") {
        GroupActionScenario ga;
        ga.n = out.dimension / 2;
        ga.grid = grid_from_json(j.at("grid"), "grid");
        if (!j.contains("weights") || !j.at("weights").is_array() ||
            static_cast<int>(j.at("weights").size()) != ga.n)
            fail("weights", "expected one integer weight per complex factor");
        for (const auto& w : j.at("weights")) ga.weights.push_back(w.get<int>());
        const auto& gl = j.at("group_loop");
        if (!gl.is_array() || gl.size() != ga.grid.size())
            fail("group_loop", "expected one [re, im] pair per grid point");
        for (std::size_t i = 0; i < gl.size(); ++i) {
            if (!gl[i].is_array() || gl[i].size() != 2)
                fail("group_loop[" + std::to_string(i) + "]", "expected [re, im]");
            ga.group_loop.emplace_back(number_at(gl[i][0], "group_loop.re"),
                                       number_at(gl[i][1], "group_loop.im"));
        }
        out.payload = std::move(ga);
    } else if (out.kind == "clutching") {
        const auto grid = grid_from_json(j.at("grid"), "grid");
        out.payload =
            ClutchingScenario{path_from_json(j.at("loop"), sp, grid, "loop", out.tol)};
    } else if (out.kind == "planar") {
        PlanarScenario pl;
        if (!j.contains("boundaries") || !j.at("boundaries").is_array() ||
            j.at("boundaries").empty())
            fail("boundaries", "expected a non-empty array");
        int bi = 0;
        for (const auto& b : j.at("boundaries")) {
            const std::string at = "boundaries[" + std::to_string(bi++) + "]";
            const auto grid = grid_from_json(b.at("grid"), at + ".grid");
            pl.boundaries.push_back(
                path_from_json(b.at("loop"), sp, grid, at + ".loop", out.tol));
        }
        out.payload = std::move(pl);
    } else if (out.kind == "lagrangian-loop") {
        LagrangianLoopScenario ll;
        ll.space = sp;
        ll.grid = grid_from_json(j.at("grid"), "grid");
        const auto& subs = j.at("subspaces");
        if (!subs.is_array() || subs.size() != ll.grid.size())
            fail("subspaces", "expected one basis per grid point");
        for (std::size_t i = 0; i < subs.size(); ++i)
            ll.bases.push_back(mat_from_rowmajor(subs[i], sp.dim, sp.n(),
                                                 "subspaces[" + std::to_string(i) + "]"));
        out.payload = std::move(ll);
    } else {
        throw ValidationError(ErrorCode::UnknownKind, "unknown scenario kind '" + out.kind + "'");
    }
    return out;
}

ScenarioFile load_scenario(const std::string& path, const Tolerances& base_tol) {
    std::ifstream in(path);
    if (!in) throw ValidationError(ErrorCode::ParseError, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return parse_scenario(j, base_tol);
}

json scenario_to_json(const ScenarioFile& s) {
    json out;
    out["kind"] = s.kind;
    out["id"] = s.id;
    out["dimension"] = s.dimension;
    out["options"] = {{"seed", s.seed}, {"tolerances", tolerances_to_json(s.tol)}};

    if (const auto* disk = std::get_if<DiskScenario>(&s.payload)) {
        out["grid"] = disk->loop.grid;
        json fl = framed_loop_to_json(disk->loop);
        out.update(fl);
        if (!disk->boundary_points.empty()) {
            json bp = json::array();
            for (const auto& p : disk->boundary_points) bp.push_back(mat_to_rowmajor(p));
            out["boundary_points"] = std::move(bp);
        }
        if (disk->disk_map) {
            json dm;
            json verts = json::array();
            for (int i = 0; i < disk->disk_map->vertices.rows(); ++i)
                verts.push_back(mat_to_rowmajor(disk->disk_map->vertices.row(i)));
            dm["vertices"] = std::move(verts);
            json tris = json::array();
            for (const auto& t : disk->disk_map->triangles) tris.push_back({t[0], t[1], t[2]});
            dm["triangles"] = std::move(tris);
            json vals = json::array();
            for (int i = 0; i < disk->disk_map->values.rows(); ++i)
                vals.push_back(mat_to_rowmajor(disk->disk_map->values.row(i)));
            dm["values"] = std::move(vals);
            out["disk_map"] = std::move(dm);
        }
    } else if (const auto* ga = std::get_if<GroupActionScenario>(&s.payload)) {
        out["grid"] = ga->grid;
        out["weights"] = ga->weights;
        json gl = json::array();
        for (const auto& z : ga->group_loop) gl.push_back({z.real(), z.imag()});
        out["group_loop"] = std::move(gl);
    } else if (const auto* cl = std::get_if<ClutchingScenario>(&s.payload)) {
        out["grid"] = cl->loop.grid;
        out["loop"] = path_to_json(cl->loop);
    } else if (const auto* pl = std::get_if<PlanarScenario>(&s.payload)) {
        json bs = json::array();
        for (const auto& b : pl->boundaries)
            bs.push_back({{"grid", b.grid}, {"loop", path_to_json(b)}});
        out["boundaries"] = std::move(bs);
    } else if (const auto* ll = std::get_if<LagrangianLoopScenario>(&s.payload)) {
        out["grid"] = ll->grid;
        json subs = json::array();
        for (const auto& b : ll->bases) subs.push_back(mat_to_rowmajor(b));
        out["subspaces"] = std::move(subs);
    }
    return out;
}

ResultRecord compute_scenario(const ScenarioFile& s) {
    ResultRecord rec;
    rec.id = s.id;
    rec.kind = s.kind;
    rec.tol = s.tol;
    ConditionFlags flags;
    const auto t0 = std::chrono::steady_clock::now();

    if (const auto* disk = std::get_if<DiskScenario>(&s.payload)) {
        rec.value = disk_maslov(*disk, &flags, s.tol);
        if (disk->disk_map) {
            rec.area = disk_symplectic_area(disk->loop.space, *disk->disk_map);
            rec.ratio = monotonicity_ratio(rec.value, *rec.area);
        }
    } else if (const auto* ga = std::get_if<GroupActionScenario>(&s.payload)) {
        rec.value = gaio_salamon_index(*ga, &flags, s.tol);
    } else if (const auto* cl = std::get_if<ClutchingScenario>(&s.payload)) {
        rec.value = maslov_path(cl->loop, &flags, s.tol) / 2.0;
        rec.rounded = m0(cl->loop, &flags, s.tol);
        rec.is_integer = true;
    } else if (const auto* pl = std::get_if<PlanarScenario>(&s.payload)) {
        rec.value = planar_surface_maslov(pl->boundaries, &flags, s.tol);
    } else if (const auto* ll = std::get_if<LagrangianLoopScenario>(&s.payload)) {
        rec.rounded = lagrangian_loop_index(ll->space, ll->grid, ll->bases, s.tol);
        rec.value = double(rec.rounded);
        rec.is_integer = true;
    }

    if (!rec.is_integer) {
        const double r = std::round(rec.value);
        if (std::abs(rec.value - r) <= s.tol.near_integer) {
            rec.is_integer = true;
            rec.rounded = static_cast<long>(r);
        }
    }
    rec.warnings = flags.labels();
    rec.timing_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    return rec;
}

json record_to_json(const ResultRecord& r) {
    json out;
    out["id"] = r.id;
    out["kind"] = r.kind;
    out["value"] = r.value;
    out["integer"] = r.is_integer;
    if (r.is_integer) out["rounded"] = r.rounded;
    out["warnings"] = r.warnings;
    out["timing_ms"] = r.timing_ms;
    out["tolerances"] = tolerances_to_json(r.tol);
    if (r.area) out["area"] = *r.area;
    if (r.ratio) out["ratio"] = *r.ratio;
    return out;
}

ScenarioFile generate_scenario(const std::string& kind, int n, int k, int samples,
                               std::uint64_t seed, const Tolerances& tol) {
    ScenarioFile out;
    out.seed = seed;
    out.tol = tol;
    if (samples < 8) samples = 8;

    if (kind == "sphere") {
        out.kind = "disk";
        out.id = "sphere-n" + std::to_string(n);
        out.dimension = 2 * n;
        out.payload = sphere_scenario(n, samples, true);
    } else if (kind == "lagrangian-half-turn") {
        out.kind = "lagrangian-loop";
        out.id = "half-turn-n" + std::to_string(n);
        out.dimension = 2 * n;
        LagrangianLoopScenario ll;
        ll.space = SymplecticSpace::standard(n);
        ll.grid = uniform_grid(samples);
        for (double t : ll.grid) {
            Mat B = Mat::Zero(2 * n, n);
            B(0, 0) = std::cos(kPi * t);
            B(n, 0) = std::sin(kPi * t);
            for (int j = 1; j < n; ++j) B(j, j) = 1.0;
            ll.bases.push_back(std::move(B));
        }
        out.payload = std::move(ll);
    } else if (kind == "clutching") {
        out.kind = "clutching";
        out.id = "clutching-z" + std::to_string(k);
        out.dimension = 2 * n;
        out.payload = ClutchingScenario{rotation_loop(n, k, samples)};
    } else if (kind == "group-action") {
        out.kind = "group-action";
        out.id = "circle-action-n" + std::to_string(n) + "-k" + std::to_string(k);
        out.dimension = 2 * n;
        GroupActionScenario ga;
        ga.n = n;
        ga.weights.assign(n, 1);
        ga.grid = uniform_grid(samples);
        for (double t : ga.grid) ga.group_loop.push_back(std::polar(1.0, 2.0 * kPi * k * t));
        ga.group_loop.back() = ga.group_loop.front();
        out.payload = std::move(ga);
    } else if (kind == "planar") {
        out.kind = "planar";
        out.id = "planar-rotation-k" + std::to_string(k);
        out.dimension = 2 * n;
        PlanarScenario pl;
        pl.boundaries.push_back(rotation_loop(n, k, samples));
        out.payload = std::move(pl);
    } else if (kind == "framed-loop") {
        out.kind = "framed-loop";
        out.id = "random-framed-n" + std::to_string(n) + "-k" + std::to_string(k);
        out.dimension = 2 * n;
        Rng rng(seed == 0 ? 1 : seed);
        if (k < n || k > 2 * n) k = n + 1 > 2 * n ? n : n + 1;
        GeneratedLoop gl = random_framed_loop(rng, n, k, samples, tol);
        out.payload = DiskScenario{std::move(gl.loop), {}, std::nullopt};
    } else {
        throw ValidationError(ErrorCode::UnknownKind, "unknown generator kind '" + kind + "'");
    }
    return out;
}

json verify_report(const std::vector<PropertyResult>& results, const VerifyConfig& cfg) {
    json props = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        json p;
        p["name"] = r.name;
        p["trials"] = r.trials;
        p["max_deviation"] = r.max_deviation;
        p["tolerance"] = r.tolerance;
        p["pass"] = r.pass;
        if (!r.note.empty()) p["note"] = r.note;
        props.push_back(std::move(p));
        all_pass = all_pass && r.pass;
    }
    json out;
    out["seed"] = cfg.seed;
    out["trials"] = cfg.trials;
    out["dims"] = {cfg.min_dim, cfg.max_dim};
    out["tolerances"] = tolerances_to_json(cfg.tol);
    out["properties"] = std::move(props);
    out["all_pass"] = all_pass;
    return out;
}

} // namespace maslov
