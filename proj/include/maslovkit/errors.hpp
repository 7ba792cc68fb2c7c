#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace maslov {

enum class ErrorCode {
    RankDeficientInput,
    NotCoisotropic,
    NotLagrangian,
    SubspaceNotPreserved,
    DimensionMismatch,
    TransversalityFailure,
    ClusterAmbiguity,
    EigenvalueNotAdmissible,
    IntegralityViolation,
    GapTooLarge,
    NonUnitSample,
    NotALoop,
    NonIntegerIndex,
    StepTooCoarse,
    DegenerateTriangulation,
    ParseError,
    ValidationError,
    UnknownKind,
};

const char* error_code_name(ErrorCode code);

/// Input data fails a structural precondition (exit code 2 in the CLI).
struct ValidationError : std::runtime_error {
    ErrorCode code;
    ValidationError(ErrorCode c, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(c)) + ": " + msg), code(c) {}
};

/// Numerically well-formed input on which the computation cannot proceed
/// (aliasing, ambiguous spectra, coarse sampling; exit code 3 in the CLI).
struct NumericError : std::runtime_error {
    ErrorCode code;
    NumericError(ErrorCode c, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(c)) + ": " + msg), code(c) {}
};

/// Warning-level conditions carried alongside results instead of thrown.
struct ConditionFlags {
    bool eigenvalue_band = false;  // spectrum near a classification boundary
    bool step_margin = false;      // lift correction used > half its budget
    bool base_dependent = false;   // pair index computed with no regular factor

    void merge(const ConditionFlags& o) {
        eigenvalue_band |= o.eigenvalue_band;
        step_margin |= o.step_margin;
        base_dependent |= o.base_dependent;
    }
    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        if (eigenvalue_band) out.push_back("eigenvalue-band-proximity");
        if (step_margin) out.push_back("step-bound-usage");
        if (base_dependent) out.push_back("base-dependent");
        return out;
    }
};

} // namespace maslov
