#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "maslovkit/io.hpp"

namespace {

using namespace maslov;

std::uint64_t env_seed_fallback(std::uint64_t cli_seed, bool seed_given) {
    if (seed_given) return cli_seed;
    if (const char* env = std::getenv("MASLOVKIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw ValidationError(ErrorCode::ValidationError,
                                  "MASLOVKIT_SEED is not an unsigned integer");
        }
    }
    return cli_seed;
}

void add_tolerance_flags(CLI::App* cmd, Tolerances& tol) {
    cmd->add_option("--tol-rank-rel", tol.rank_rel, "relative singular value cutoff");
    cmd->add_option("--tol-subspace-angle", tol.subspace_angle, "subspace equality threshold");
    cmd->add_option("--tol-preserved-angle", tol.preserved_angle,
                    "subspace preservation threshold");
    cmd->add_option("--tol-symplectic-defect", tol.symplectic_defect,
                    "elementwise symplecticity bound");
    cmd->add_option("--tol-eps-circle", tol.eps_circle, "unit circle classification band");
    cmd->add_option("--tol-eps-cluster", tol.eps_cluster, "eigenvalue clustering scale");
    cmd->add_option("--tol-gap-margin", tol.gap_margin, "winding gap margin below pi");
    cmd->add_option("--tol-path-step", tol.path_step, "declared path sampling bound");
    cmd->add_option("--tol-lift-step", tol.lift_step, "lift correction step bound");
    cmd->add_option("--tol-loop-closure", tol.loop_closure, "loop closure threshold");
    cmd->add_option("--tol-near-integer", tol.near_integer, "integer rounding tolerance");
}

void emit(const nlohmann::json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw ValidationError(ErrorCode::ValidationError, "cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"maslovkit: Maslov indices of discretized symplectic boundary data"};
    app.require_subcommand(1);

    // ---- compute ----
    std::string compute_file, compute_out, compute_gen_kind;
    int c_n = 1, c_k = 1, c_samples = 128;
    std::uint64_t c_seed = 0;
    bool c_seed_given = false;
    Tolerances c_tol{};
    auto* compute = app.add_subcommand("compute", "evaluate a scenario file");
    compute->add_option("file", compute_file, "scenario JSON file");
    compute->add_option("--generate", compute_gen_kind,
                        "compute a built-in scenario instead of a file "
                        "(sphere, lagrangian-half-turn, clutching, group-action, planar, "
                        "framed-loop)");
    compute->add_option("--n", c_n, "complex dimension for built-in scenarios");
    compute->add_option("--k", c_k, "winding / coisotropic rank for built-in scenarios");
    compute->add_option("--samples", c_samples, "boundary sample count");
    compute->add_option("--seed", c_seed, "random seed")->each([&](const std::string&) {
        c_seed_given = true;
    });
    compute->add_option("--out", compute_out, "write the result record to a file");
    add_tolerance_flags(compute, c_tol);

    // ---- verify ----
    VerifyConfig vcfg;
    std::uint64_t v_seed = 1;
    bool v_seed_given = false;
    std::string verify_out;
    auto* verify = app.add_subcommand("verify", "run the randomized property suites");
    verify->add_option("--dim", vcfg.max_dim, "largest space dimension 2n");
    verify->add_option("--min-dim", vcfg.min_dim, "smallest space dimension 2n");
    verify->add_option("--trials", vcfg.trials, "instances per scalar property");
    verify->add_option("--loop-trials", vcfg.loop_trials, "instances per loop property");
    verify->add_option("--family-trials", vcfg.family_trials, "two-parameter families");
    verify->add_option("--seed", v_seed, "random seed")->each([&](const std::string&) {
        v_seed_given = true;
    });
    verify->add_option("--out", verify_out, "write the report to a file");
    add_tolerance_flags(verify, vcfg.tol);

    // ---- generate ----
    std::string gen_kind, gen_out;
    int g_n = 1, g_k = 1, g_samples = 128;
    std::uint64_t g_seed = 0;
    bool g_seed_given = false;
    Tolerances g_tol{};
    auto* generate = app.add_subcommand("generate", "emit a scenario file");
    generate->add_option("kind", gen_kind, "sphere | lagrangian-half-turn | clutching | "
                                           "group-action | planar | framed-loop")
        ->required();
    generate->add_option("--n", g_n, "complex dimension");
    generate->add_option("--k", g_k, "winding / coisotropic rank parameter");
    generate->add_option("--samples", g_samples, "boundary sample count");
    generate->add_option("--seed", g_seed, "random seed")->each([&](const std::string&) {
        g_seed_given = true;
    });
    generate->add_option("--out", gen_out, "output file (stdout when omitted)");
    add_tolerance_flags(generate, g_tol);

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) {
            ScenarioFile scenario;
            if (!compute_gen_kind.empty()) {
                scenario = generate_scenario(compute_gen_kind, c_n, c_k, c_samples,
                                             env_seed_fallback(c_seed, c_seed_given), c_tol);
            } else if (!compute_file.empty()) {
                scenario = load_scenario(compute_file, c_tol);
            } else {
                std::cerr << "compute: need a scenario file or --generate\n";
                return 2;
            }
            const ResultRecord rec = compute_scenario(scenario);
            emit(record_to_json(rec), compute_out);
            return 0;
        }
        if (verify->parsed()) {
            vcfg.seed = env_seed_fallback(v_seed, v_seed_given);
            if (vcfg.seed == 0) vcfg.seed = 1;
            if (vcfg.trials == 0) {
                if (verify->count("--loop-trials") == 0) vcfg.loop_trials = 0;
                if (verify->count("--family-trials") == 0) vcfg.family_trials = 0;
            }
            const auto results = run_all_suites(vcfg);
            const nlohmann::json report = verify_report(results, vcfg);
            emit(report, verify_out);
            return report.at("all_pass").get<bool>() ? 0 : 1;
        }
        if (generate->parsed()) {
            const ScenarioFile scenario = generate_scenario(
                gen_kind, g_n, g_k, g_samples, env_seed_fallback(g_seed, g_seed_given), g_tol);
            emit(scenario_to_json(scenario), gen_out);
            return 0;
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
