#pragma once

#include "numeric_verify.hpp"
#include "stack_invariants.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace toric {

inline constexpr const char* kToolName = "toricstack";
inline constexpr const char* kToolVersion = "0.1.0";

/// Process exit codes shared by the CLI and the C API.
enum ExitCode : int {
    kExitOk = 0,
    kExitIrregular = 2,
    kExitInvalid = 3,
    kExitEmpty = 4,
    kExitStagesInconsistent = 5,
    kExitNumericDisagreement = 6,
};

struct StagesSpec {
    IntegerMatrix B_inner;
    std::optional<RationalVector> level_shift;
};

struct InputSpec {
    std::size_t N = 0;
    IntegerMatrix lattice_hat;
    IntegerMatrix B;
    RationalVector a_lift;
    std::optional<StagesSpec> stages;

    ToricStackData to_data() const { return make_stack_data(N, lattice_hat, B, a_lift); }
};

/// Throws InputError naming the offending field.
InputSpec parse_input(const nlohmann::json& j);
InputSpec parse_input_text(const std::string& text);
nlohmann::json to_json(const InputSpec& spec);

struct AnalysisOptions {
    std::optional<numeric::VerifyOptions> verify;
};

struct AnalysisReport {
    InputSpec input;
    FiniteAbelianGroup gamma;
    RegularityVerdict regularity;
    StackSummary summary;
    MomentPolytope polytope;
    std::vector<InertiaRecord> inertia;
    std::optional<numeric::NumericReport> numeric;
    double timing_ms = 0.0;
    int exit_code = kExitOk;
};

AnalysisReport run_analysis(const InputSpec& spec, const AnalysisOptions& options = {});

nlohmann::json to_json(const AnalysisReport& report);
AnalysisReport analysis_report_from_json(const nlohmann::json& j);
std::string to_text(const AnalysisReport& report);

/// OFF-style vertex dump: "OFF", "<vertices> 0 0", one row per vertex with
/// coordinates rounded to 12 decimal places.
std::string polytope_off(const MomentPolytope& polytope);

struct StagesOutcome {
    InputSpec input;
    StagesReport report;
    double timing_ms = 0.0;
    int exit_code = kExitOk;
};

/// Throws InputError when the input has no stages block.
StagesOutcome run_stages(const InputSpec& spec);

nlohmann::json to_json(const StagesOutcome& outcome);
std::string to_text(const StagesOutcome& outcome);

}  // namespace toric
