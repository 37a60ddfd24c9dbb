#pragma once

// High-level command implementations backing the CLI subcommands.  Each
// cmd_* function produces a structured result; the render_* helpers turn
// those results into csv / json / svg text so the CLI layer stays thin.

#include <optional>
#include <string>
#include <vector>

#include "cvtelefid/analytics.hpp"
#include "cvtelefid/config.hpp"

namespace cvtelefid {

// One sample of the fidelity-vs-noise curve.  The brute-force column is
// only populated when the working cutoff can represent the requested
// amplitude, otherwise it stays empty in the rendered output.
struct CurvePoint {
    double sigma = 0.0;
    double fe_coherent = 0.0;
    double fe_ecs_closed = 0.0;
    double fe_ecs_exact = 0.0;
    std::optional<double> fe_ecs_brute;
    double est_error = 0.0;
};

struct CurveResult {
    double alpha = 0.0;
    std::vector<CurvePoint> points;
};

// Entanglement-fidelity curve for |alpha> and the odd ECS (alpha, -alpha)
// over sigma in [0, sigma_max], inclusive, with `steps` samples.
CurveResult cmd_fig1(double alpha, double sigma_max, int steps,
                     const RunConfig& config);

std::string render_curve_csv(const CurveResult& result);
std::string render_curve_json(const CurveResult& result);
std::string render_curve_svg(const CurveResult& result);

struct NoiseBudgetResult {
    NoiseBudget budget;          // converted variance components
    double eta = 0.0;            // raw inputs echoed back
    double nu = 1.0;
    double total = 0.0;
    double fe_coherent = 0.0;
    bool passes_half = false;        // F_e > 1/2 requires total < 1 (strict)
    bool passes_two_thirds = false;  // F_e > 2/3 requires total < 1/2 (strict)
    double squeezing_db = 0.0;       // finite-squeezing component in dB
    std::string note;
};

// Assemble the additive variance budget from raw experiment parameters
// (squeezing eta, detector efficiency nu, opaque gain/residual terms) and
// evaluate it against both fidelity thresholds.
NoiseBudgetResult cmd_noise_budget(double sigma_G, double eta, double nu,
                                   double sigma_other);

std::string render_budget_csv(const NoiseBudgetResult& result);
std::string render_budget_json(const NoiseBudgetResult& result);

struct CheckResult {
    std::string name;
    bool passed = false;
    double deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyResult {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

// Internal-consistency suite: channel trace preservation and Hermiticity,
// displacement covariance, the semigroup composition law, purification
// independence of the entanglement fidelity, and inversion of a published
// average-fidelity benchmark.  Exceptions inside a check count as failure.
VerifyResult cmd_verify(const RunConfig& config);

std::string render_verify_text(const VerifyResult& result);
std::string render_verify_json(const VerifyResult& result);

struct RequiredSqueezingResult {
    double alpha = 0.0;
    double target = 0.0;
    double sigma = 0.0;
    double db = 0.0;
    std::string note;
};

// Smallest noise variance at which the odd ECS (alpha, -alpha) still
// reaches the target entanglement fidelity, plus the matching squeezing.
RequiredSqueezingResult cmd_required_squeezing(double alpha, double target);

std::string render_squeezing_csv(const RequiredSqueezingResult& result);
std::string render_squeezing_json(const RequiredSqueezingResult& result);

}  // namespace cvtelefid
