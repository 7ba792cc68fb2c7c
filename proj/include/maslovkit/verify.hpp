#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maslovkit/tolerances.hpp"

namespace maslov {

struct PropertyResult {
    std::string name;
    int trials = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string note;
};

struct VerifyConfig {
    int trials = 100;        // randomized instances per property
    int loop_trials = 50;    // lifted-loop properties
    int family_trials = 10;  // two-parameter families / splittings
    int min_dim = 2;         // 2n lower bound
    int max_dim = 8;         // 2n upper bound
    std::uint64_t seed = 1;
    Tolerances tol{};
};

// Each suite returns one or more property results; deterministic in the seed.
std::vector<PropertyResult> verify_core(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_rho_axioms(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_quotient_identity(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_winding(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_pair_index(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_lift_independence(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_lagrangian_agreement(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_homotopy_invariance(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_gs_agreement(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_clutching(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_splitting(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_regular_parity(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_scenario_laws(const VerifyConfig& cfg);
std::vector<PropertyResult> verify_area(const VerifyConfig& cfg);

/// All suites in a fixed order.
std::vector<PropertyResult> run_all_suites(const VerifyConfig& cfg);

} // namespace maslov
