// Acceptance suite: each criterion prints one PASS/FAIL line with its
// measured deviation, pinned tolerance and runtime. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "maslovkit/io.hpp"
#include "maslovkit/scenarios.hpp"
#include "maslovkit/verify.hpp"

using namespace maslov;

namespace {

struct Criterion {
    int number;
    std::string label;
    bool pass = true;
    double max_dev = 0.0;
    double tol = 0.0;
    double seconds = 0.0;
    std::string note;
};

class Runner {
  public:
    template <typename F>
    void run(int number, const std::string& label, F&& body) {
        Criterion c;
        c.number = number;
        c.label = label;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body(c);
        } catch (const std::exception& e) {
            c.pass = false;
            c.note = e.what();
        }
        c.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.max_dev > c.tol && c.tol > 0.0) c.pass = false;
        std::printf("[%2d] %s %-58s dev %.3e tol %.0e (%.2f s)%s%s\n", c.number,
                    c.pass ? "PASS" : "FAIL", c.label.c_str(), c.max_dev, c.tol, c.seconds,
                    c.note.empty() ? "" : "  -- ", c.note.c_str());
        std::fflush(stdout);
        results.push_back(std::move(c));
    }

    void absorb(Criterion& c, const std::vector<PropertyResult>& props,
                std::initializer_list<const char*> names) {
        for (const auto& p : props) {
            bool wanted = false;
            for (const char* n : names)
                if (p.name.find(n) != std::string::npos) wanted = true;
            if (!wanted) continue;
            c.max_dev = std::max(c.max_dev, p.max_deviation);
            if (!p.pass) {
                c.pass = false;
                if (c.note.empty()) c.note = p.name + (p.note.empty() ? "" : ": " + p.note);
            }
        }
    }

    int summary(double total_seconds) const {
        int passed = 0;
        for (const auto& c : results)
            if (c.pass) ++passed;
        std::printf("ACCEPTANCE: %d/%zu criteria passed in %.1f s\n", passed, results.size(),
                    total_seconds);
        return passed == static_cast<int>(results.size()) ? 0 : 1;
    }

  private:
    std::vector<Criterion> results;
};

} // namespace

int main() {
    const auto t_start = std::chrono::steady_clock::now();
    Runner runner;

    VerifyConfig cfg;
    cfg.trials = 100;
    cfg.loop_trials = 50;
    cfg.family_trials = 10;
    cfg.min_dim = 2;
    cfg.max_dim = 8;
    cfg.seed = 20240601;

    runner.run(1, "disk on the circle: index 2 in under a second", [&](Criterion& c) {
        c.tol = 1e-6;
        const double v = disk_maslov(sphere_scenario(1, 128));
        c.max_dev = std::abs(v - 2.0);
        if (c.seconds > 1.0) c.pass = false;
    });

    std::vector<PropertyResult> rho_props;
    runner.run(2, "rho axioms: naturality, sum, determinant, normalization",
               [&](Criterion& c) {
                   c.tol = 1e-7;
                   rho_props = verify_rho_axioms(cfg);
                   runner.absorb(c, rho_props,
                                 {"naturality", "direct-sum", "determinant", "normalization"});
                   if (c.seconds > 10.0) {
                       c.pass = false;
                       c.note = "exceeded the 10 s budget";
                   }
               });

    runner.run(3, "conjugation identity rho_{-omega} = conj rho_omega", [&](Criterion& c) {
        c.tol = 1e-7;
        runner.absorb(c, rho_props, {"conjugation"});
    });

    runner.run(4, "quotient identity and the block deformation", [&](Criterion& c) {
        c.tol = 1e-6;
        const auto props = verify_quotient_identity(cfg);
        runner.absorb(c, props, {"identity-det-positive", "identity-two-valued",
                                 "deformation-rho-constant"});
        for (const auto& p : props) {
            if (p.name.find("deformation-symplectic") != std::string::npos &&
                p.max_deviation > 1e-8) {
                c.pass = false;
                c.note = "symplectic defect above 1e-8";
            }
            if (p.name.find("reconstructs") != std::string::npos && p.max_deviation > 1e-10) {
                c.pass = false;
                c.note = "t = 1 reconstruction above 1e-10";
            }
        }
    });

    runner.run(5, "lift independence across seeds", [&](Criterion& c) {
        c.tol = 1e-6;
        runner.absorb(c, verify_lift_independence(cfg),
                      {"independence-two-seeds", "matches-generating-path"});
    });

    runner.run(6, "Lagrangian agreement: framed index = det^2 winding", [&](Criterion& c) {
        c.tol = 1e-6;
        runner.absorb(c, verify_lagrangian_agreement(cfg),
                      {"framed-equals-det2", "half-turn-line", "det2-matches-phase-sum"});
    });

    runner.run(7, "group-action index matches the framed pipeline, n = 1..4",
               [&](Criterion& c) {
                   c.tol = 1e-6;
                   runner.absorb(c, verify_gs_agreement(cfg),
                                 {"gaio-salamon-vs-framed", "disk-on-circle"});
               });

    runner.run(8, "clutching loops z^k give m0 = k, defect below 1e-9", [&](Criterion& c) {
        c.tol = 1e-9;
        runner.absorb(c, verify_clutching(cfg), {"zk-gives-k", "near-integer-defect"});
    });

    runner.run(9, "winding: refinement stability and exact integers", [&](Criterion& c) {
        c.tol = 1e-9;
        runner.absorb(c, verify_winding(cfg),
                      {"integer-loops", "refinement-stability", "reparametrization"});
    });

    runner.run(10, "pair index: base independence and additivity", [&](Criterion& c) {
        c.tol = 1e-8;
        VerifyConfig pcfg = cfg;
        pcfg.family_trials = 12;
        runner.absorb(c, verify_pair_index(pcfg),
                      {"base-independence", "additivity", "orientation-reversal"});
    });

    runner.run(11, "homotopy invariance over two-parameter families", [&](Criterion& c) {
        c.tol = 1e-6;
        runner.absorb(c, verify_homotopy_invariance(cfg), {"index-constant-in-s"});
    });

    runner.run(12, "splitting along a concentric cut circle", [&](Criterion& c) {
        c.tol = 1e-6;
        runner.absorb(c, verify_splitting(cfg), {"whole-equals-pieces"});
    });

    runner.run(13, "regular loops: integer index, even when orientable", [&](Criterion& c) {
        c.tol = 1e-6;
        runner.absorb(c, verify_regular_parity(cfg),
                      {"index-is-integer", "orientable-index-is-even", "half-turn-is-odd"});
    });

    runner.run(14, "flat disk area pi and monotonicity ratio 2/pi", [&](Criterion& c) {
        c.tol = 1e-3;
        runner.absorb(c, verify_area(cfg), {"flat-disk-pi", "monotonicity-ratio"});
    });

    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return runner.summary(total);
}
